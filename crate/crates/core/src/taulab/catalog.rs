//! The tau catalog: `kind:param` strings, construction, expansion point and
//! the Hirota check.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::exppoly::ExpPoly;
use super::LogDerivs;
use crate::algebra::{int, parse_rational, Rational, TSpace};
use crate::diffalg::Hierarchy;
use crate::error::{Error, Result};

/// A catalog entry as addressed from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauSpec {
    Constant,
    Linear,
    /// One soliton with `κ₁ = 2p`; `naive` replaces the derived dispersion by
    /// `κⱼ = κ₁ʲ` (a negative control).
    Soliton {
        p: Rational,
        naive: bool,
    },
    AdlerMoser {
        k: u32,
    },
}

impl TauSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TauSpec::Constant => "constant",
            TauSpec::Linear => "linear",
            TauSpec::Soliton { .. } => "soliton",
            TauSpec::AdlerMoser { .. } => "adler-moser",
        }
    }

    /// The four taus of the default suite.
    pub fn default_suite() -> Vec<TauSpec> {
        vec![
            TauSpec::Constant,
            TauSpec::Linear,
            TauSpec::Soliton {
                p: int(1),
                naive: false,
            },
            TauSpec::Soliton {
                p: Rational::new(1.into(), 2.into()),
                naive: false,
            },
        ]
    }
}

impl fmt::Display for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauSpec::Constant | TauSpec::Linear => write!(f, "{}", self.kind()),
            TauSpec::Soliton { p, naive } => {
                write!(f, "soliton:p={}", p)?;
                if *naive {
                    write!(f, ",dispersion=naive")?;
                }
                Ok(())
            }
            TauSpec::AdlerMoser { k } => write!(f, "adler-moser:k={k}"),
        }
    }
}

impl FromStr for TauSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<TauSpec> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Vec::new();
        for item in rest.split(',').filter(|x| !x.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {item:?}")))?;
            params.push((k.trim().to_string(), v.trim().to_string()));
        }
        let take = |name: &str| {
            params
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| v.clone())
        };
        let unknown = |allowed: &[&str]| {
            params
                .iter()
                .find(|(k, _)| !allowed.contains(&k.as_str()))
                .map(|(k, _)| Error::Parse(format!("unknown parameter {k:?} for {kind}")))
        };
        match kind {
            "constant" | "linear" => {
                if let Some(e) = unknown(&[]) {
                    return Err(e);
                }
                Ok(if kind == "constant" {
                    TauSpec::Constant
                } else {
                    TauSpec::Linear
                })
            }
            "soliton" => {
                if let Some(e) = unknown(&["p", "dispersion"]) {
                    return Err(e);
                }
                let p = parse_rational(&take("p").unwrap_or_else(|| "1".into()))?;
                if p.is_zero() {
                    return Err(Error::Parse("soliton parameter p must be nonzero".into()));
                }
                let naive = match take("dispersion").as_deref() {
                    None | Some("derived") => false,
                    Some("naive") => true,
                    Some(other) => {
                        return Err(Error::Parse(format!("unknown dispersion {other:?}")))
                    }
                };
                Ok(TauSpec::Soliton { p, naive })
            }
            "adler-moser" => {
                if let Some(e) = unknown(&["k"]) {
                    return Err(e);
                }
                let k: u32 = take("k")
                    .unwrap_or_else(|| "2".into())
                    .parse()
                    .map_err(|_| Error::Parse("k must be a positive integer".into()))?;
                if !(1..=2).contains(&k) {
                    return Err(Error::Parse(format!(
                        "adler-moser:k={k} is not in the catalog (k ≤ 2)"
                    )));
                }
                Ok(TauSpec::AdlerMoser { k })
            }
            _ => Err(Error::Parse(format!("unknown tau kind {kind:?}"))),
        }
    }
}

/// A catalog tau, already moved to its expansion point.
#[derive(Clone, Debug)]
pub struct TauFunction {
    spec: TauSpec,
    /// `τ(t₁ + shift, t₃, …)` so that the expansion is always about `t = 0`.
    tau: ExpPoly,
    shift: Rational,
    /// Soliton rates `κ₁, κ₃, …` when applicable.
    dispersion: Vec<Rational>,
}

impl TauFunction {
    pub fn spec(&self) -> &TauSpec {
        &self.spec
    }

    pub fn exp_poly(&self) -> &ExpPoly {
        &self.tau
    }

    /// The `t₁` value about which the tau is expanded.
    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn dispersion(&self) -> &[Rational] {
        &self.dispersion
    }

    pub fn ntimes(&self) -> usize {
        self.tau.ntimes()
    }

    /// A short description of the expansion point, for reports.
    pub fn expansion_point(&self) -> String {
        if self.shift.is_zero() {
            "t = 0".into()
        } else {
            format!("t₁ = {}, other times 0", self.shift)
        }
    }
}

/// `(D₁⁴ − 4D₁D₃)τ·τ / 2`, computed exactly.
pub fn hirota_expression(tau: &ExpPoly) -> ExpPoly {
    let t1 = tau.deriv(1);
    let t11 = t1.deriv(1);
    let t111 = t11.deriv(1);
    let t1111 = t111.deriv(1);
    let t3 = tau.deriv(3);
    let t13 = t3.deriv(1);
    tau.mul(&t1111)
        .sub(&t1.mul(&t111).scale(&int(4)))
        .add(&t11.mul(&t11).scale(&int(3)))
        .sub(&tau.mul(&t13).scale(&int(4)))
        .add(&t1.mul(&t3).scale(&int(4)))
}

/// Whether the KdV bilinear identity holds; exact in all times, hence in
/// particular to any truncation order.
pub fn hirota_check(tau: &TauFunction) -> bool {
    hirota_expression(&tau.tau).is_zero()
}

fn moved(spec: TauSpec, tau: ExpPoly, dispersion: Vec<Rational>) -> Result<TauFunction> {
    let (tau, shift) = if tau.value_at_origin().is_zero() {
        let shifted = tau
            .shift_time(1, &int(1))
            .ok_or_else(|| Error::TauRejected(format!("{spec}: no rational expansion point")))?;
        if shifted.value_at_origin().is_zero() {
            return Err(Error::TauRejected(format!(
                "{spec}: vanishes at t₁ = 0 and t₁ = 1"
            )));
        }
        (shifted, int(1))
    } else {
        (tau, Rational::zero())
    };
    Ok(TauFunction {
        spec,
        tau,
        shift,
        dispersion,
    })
}

/// Builds a catalog entry without the Hirota gate, for negative controls.
pub fn tau_unchecked(spec: &TauSpec, ntimes: usize) -> Result<TauFunction> {
    let ntimes = ntimes.max(2);
    match spec {
        TauSpec::Constant => moved(spec.clone(), ExpPoly::one(ntimes), vec![]),
        TauSpec::Linear | TauSpec::AdlerMoser { k: 1 } => {
            moved(spec.clone(), ExpPoly::time(ntimes, 1), vec![])
        }
        TauSpec::AdlerMoser { .. } => {
            let t1 = ExpPoly::time(ntimes, 1);
            let cube = t1.mul(&t1).mul(&t1);
            let c = solve_linear_coefficient(&cube, &ExpPoly::time(ntimes, 3))?;
            moved(
                spec.clone(),
                cube.add(&ExpPoly::time(ntimes, 3).scale(&c)),
                vec![],
            )
        }
        TauSpec::Soliton { p, naive } => {
            let kappa = if *naive {
                let k1 = int(2) * p;
                (0..ntimes)
                    .map(|v| (0..2 * v + 1).fold(Rational::one(), |acc, _| acc * &k1))
                    .collect()
            } else {
                soliton_dispersion(p, ntimes)?
            };
            let tau = ExpPoly::one(ntimes).add(&ExpPoly::exp(kappa.clone()));
            moved(spec.clone(), tau, kappa)
        }
    }
}

/// Catalog constructor: builds the tau and rejects it unless the Hirota
/// identity holds.
pub fn tau_catalog(spec: &TauSpec, ntimes: usize) -> Result<TauFunction> {
    let tau = tau_unchecked(spec, ntimes)?;
    if !hirota_check(&tau) {
        return Err(Error::TauRejected(format!(
            "{spec} fails the Hirota identity"
        )));
    }
    Ok(tau)
}

/// Finds `c` with `Hirota(base + c·extra) = 0`, treating the expression as a
/// polynomial in `c` of degree at most two.
fn solve_linear_coefficient(base: &ExpPoly, extra: &ExpPoly) -> Result<Rational> {
    let h = |c: i64| hirota_expression(&base.add(&extra.scale(&int(c))));
    let (h0, hp, hm) = (h(0), h(1), h(-1));
    let half = Rational::new(1.into(), 2.into());
    let lin = hp.sub(&hm).scale(&half);
    let quad = hp.add(&hm).scale(&half).sub(&h0);
    if !quad.is_zero() {
        return Err(Error::TauRejected(
            "Hirota condition is not linear in the coefficient".into(),
        ));
    }
    let (l, e, b) = lin.first_term().ok_or_else(|| {
        Error::TauRejected("coefficient does not enter the Hirota condition".into())
    })?;
    let c = -h0.coeff(l, e) / b;
    if !h0.add(&lin.scale(&c)).is_zero() {
        return Err(Error::TauRejected(
            "no coefficient satisfies the Hirota condition".into(),
        ));
    }
    Ok(c)
}

/// `κ₁ = 2p`; `κ₃` is the root of the Hirota dispersion `κ₁⁴ − 4κ₁κ₃ = 0`;
/// the higher rates are read off from the calibrated hierarchy flows,
/// `∂ⱼu = (κⱼ/κ₁)·∂₁u` on a one-soliton profile.
pub fn soliton_dispersion(p: &Rational, ntimes: usize) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Parse("soliton parameter p must be nonzero".into()));
    }
    let k1 = int(2) * p;
    let k3 = k1.clone() * &k1 * &k1 / int(4);
    let mut kappa = vec![k1.clone(), k3.clone()];
    if ntimes <= 2 {
        kappa.truncate(ntimes);
        return Ok(kappa);
    }
    let jmax = 2 * ntimes as u32 - 1;
    let hierarchy = Hierarchy::new(jmax + 1)?;
    let space = TSpace::new(1, 6);
    let mut profile_rates = vec![Rational::zero(); ntimes];
    profile_rates[0] = k1.clone();
    let profile = ExpPoly::one(ntimes).add(&ExpPoly::exp(profile_rates));
    let logs = LogDerivs::new(&profile, Arc::clone(&space))?;
    let jets = logs.u_jets(jmax + 1);
    let du = &jets[1];
    let (at, du0) = du
        .first_nonzero()
        .ok_or_else(|| Error::TauRejected("flat soliton profile".into()))?;
    for j in (3..=jmax).step_by(2) {
        let image = super::eval_jet(&hierarchy.flow_image(j, 0)?, &jets, &space);
        let ratio = image.coeff(&at) / &du0;
        if !image.agrees_with(&du.scale(&ratio)) {
            return Err(Error::TauRejected(format!(
                "∂{j} is not a translation on the soliton profile"
            )));
        }
        let kj = ratio * &k1;
        if j == 3 && kj != k3 {
            return Err(Error::NoConsistentCalibration(format!(
                "flow gives κ₃ = {}, Hirota gives {}",
                kj, k3
            )));
        }
        if j > 3 {
            kappa.push(kj);
        }
    }
    Ok(kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn parsing_round_trips() {
        for s in [
            "constant",
            "linear",
            "soliton:p=1/2",
            "soliton:p=1,dispersion=naive",
            "adler-moser:k=2",
        ] {
            let spec: TauSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("soliton:q=1".parse::<TauSpec>().is_err());
        assert!("soliton:p=0".parse::<TauSpec>().is_err());
        assert!("adler-moser:k=5".parse::<TauSpec>().is_err());
        assert!("breather".parse::<TauSpec>().is_err());
    }

    #[test]
    fn hirota_examples() {
        assert!(hirota_check(&tau_catalog(&TauSpec::Constant, 3).unwrap()));
        let s = tau_catalog(
            &TauSpec::Soliton {
                p: int(1),
                naive: false,
            },
            3,
        )
        .unwrap();
        assert!(hirota_check(&s));
        assert_eq!(s.dispersion()[1].clone() / (int(8)), rat(1, 4));
        // κ = (p, p³) gives P = −3p⁴
        let bad = ExpPoly::one(3).add(&ExpPoly::exp(vec![int(1), int(1), int(0)]));
        assert!(!hirota_expression(&bad).is_zero());
        let naive = TauSpec::Soliton {
            p: int(1),
            naive: true,
        };
        assert!(matches!(tau_catalog(&naive, 3), Err(Error::TauRejected(_))));
        assert!(!hirota_check(&tau_unchecked(&naive, 3).unwrap()));
    }

    #[test]
    fn soliton_rates_follow_powers() {
        let p = rat(1, 2);
        let kappa = soliton_dispersion(&p, 5).unwrap();
        for (v, k) in kappa.iter().enumerate() {
            let pow = (0..2 * v + 1).fold(Rational::one(), |acc, _| acc * &p);
            assert_eq!(*k, int(2) * pow, "κ_{}", 2 * v + 1);
        }
    }

    #[test]
    fn polynomial_taus_are_shifted() {
        let lin = tau_catalog(&TauSpec::Linear, 3).unwrap();
        assert_eq!(lin.shift(), &int(1));
        assert_eq!(lin.exp_poly().value_at_origin(), int(1));
        let am = tau_catalog(&TauSpec::AdlerMoser { k: 2 }, 3).unwrap();
        // (t₁ + 1)³ − 3t₃
        assert_eq!(
            am.exp_poly().coeff(&[int(0), int(0), int(0)], &[0, 1, 0]),
            int(-3)
        );
        assert_eq!(
            tau_catalog(&TauSpec::Constant, 3)
                .unwrap()
                .expansion_point(),
            "t = 0"
        );
    }
}
