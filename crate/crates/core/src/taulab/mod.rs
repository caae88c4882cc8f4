//! Explicit tau functions and the series identities they satisfy: Miwa
//! shifts, `S(z)`, `X(z)`, `η(z)`, the `∇`-lemmas and the dictionary between
//! tau-side log-derivatives and the differential polynomials of [`crate::diffalg`].
//!
//! Everything is expanded about `t = 0` (after the catalog shift) as a
//! power series in the live times `t₁, t₃, t₅`, truncated by total degree,
//! and in `z⁻¹` to a fixed order. Derivatives in any time are taken on the
//! exact [`ExpPoly`] before expansion, so no order is lost to differentiation.

pub mod catalog;
pub mod exppoly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::Serialize;

use crate::algebra::{int, Rational, TSeries, TSpace, ZSeries};
use crate::diffalg::{DiffPoly, Hierarchy, C_FLOW};
use crate::error::{Error, Result};
use crate::exec::Strategy;

pub use catalog::{
    hirota_check, hirota_expression, soliton_dispersion, tau_catalog, tau_unchecked, TauFunction,
    TauSpec,
};
pub use exppoly::ExpPoly;

/// Number of live times `t₁, t₃, t₅`.
pub const LIVE_TIMES: usize = 3;

/// Evaluates a jet polynomial on series `jets[k] = u^(k)`.
pub fn eval_jet(p: &DiffPoly, jets: &[TSeries], space: &Arc<TSpace>) -> TSeries {
    let mut out = TSeries::zero(space);
    let mut powers: HashMap<(u32, u32), TSeries> = HashMap::new();
    for (m, c) in p.terms() {
        let mut term = TSeries::constant(space, c.clone());
        for &(k, e) in m.exps() {
            let pw = powers.entry((k, e)).or_insert_with(|| {
                (1..e).fold(jets[k as usize].clone(), |acc, _| {
                    acc.mul(&jets[k as usize])
                })
            });
            term = term.mul(pw);
        }
        out = out.add(&term);
    }
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Moments `∂^c τ / τ` and cumulants `∂^c log τ` of a tau, as series.
/// Multi-indices count derivatives per slot, slot `v` being `t_{2v+1}`.
pub(crate) struct LogDerivs {
    tau: ExpPoly,
    space: Arc<TSpace>,
    tau_inv: TSeries,
    moments: Mutex<HashMap<Vec<u32>, TSeries>>,
    cumulants: Mutex<HashMap<Vec<u32>, TSeries>>,
}

impl LogDerivs {
    pub(crate) fn new(tau: &ExpPoly, space: Arc<TSpace>) -> Result<LogDerivs> {
        let tau_inv = tau.expand(&space).inv()?;
        Ok(LogDerivs {
            tau: tau.clone(),
            space,
            tau_inv,
            moments: Mutex::new(HashMap::new()),
            cumulants: Mutex::new(HashMap::new()),
        })
    }

    fn ntimes(&self) -> usize {
        self.tau.ntimes()
    }

    fn unit(&self, v: usize) -> Vec<u32> {
        let mut c = vec![0; self.ntimes()];
        c[v] = 1;
        c
    }

    pub(crate) fn moment(&self, c: &[u32]) -> TSeries {
        if let Some(m) = self.moments.lock().unwrap().get(c) {
            return m.clone();
        }
        let m = self
            .tau
            .deriv_multi(c)
            .expand(&self.space)
            .mul(&self.tau_inv);
        self.moments.lock().unwrap().insert(c.to_vec(), m.clone());
        m
    }

    /// `∂^c log τ` for `c ≠ 0`, by the moment–cumulant recursion
    /// `m(c) = Σ_b C(c_v−1, b_v−1)·Π_{j≠v} C(c_j, b_j)·κ(b)·m(c−b)`.
    pub(crate) fn cumulant(&self, c: &[u32]) -> TSeries {
        if let Some(k) = self.cumulants.lock().unwrap().get(c) {
            return k.clone();
        }
        let v = c
            .iter()
            .position(|&x| x > 0)
            .expect("cumulant of the empty multi-index");
        let mut acc = self.moment(c);
        let mut b = vec![0u32; c.len()];
        b[v] = 1;
        loop {
            if b.as_slice() != c {
                let mut weight = Rational::one();
                for (j, (&cj, &bj)) in c.iter().zip(&b).enumerate() {
                    let (n, k) = if j == v { (cj - 1, bj - 1) } else { (cj, bj) };
                    weight *= factorial(n) / (factorial(k) * factorial(n - k));
                }
                let rest: Vec<u32> = c.iter().zip(&b).map(|(x, y)| x - y).collect();
                acc = acc.sub(&self.cumulant(&b).mul(&self.moment(&rest)).scale(&weight));
            }
            // next b ≤ c with b_v ≥ 1
            let mut i = 0;
            loop {
                if i == c.len() {
                    self.cumulants
                        .lock()
                        .unwrap()
                        .insert(c.to_vec(), acc.clone());
                    return acc;
                }
                let floor = if i == v { 1 } else { 0 };
                if b[i] < c[i] {
                    b[i] += 1;
                    break;
                }
                b[i] = floor;
                i += 1;
            }
        }
    }

    /// `∂ᵢ∂ⱼ log τ` for odd times.
    pub(crate) fn log_deriv2(&self, i: u32, j: u32) -> TSeries {
        let mut c = self.unit((i as usize - 1) / 2);
        c[(j as usize - 1) / 2] += 1;
        self.cumulant(&c)
    }

    /// `u^(k) = −2∂₁^{k+2} log τ` for `k ≤ kmax`.
    pub(crate) fn u_jets(&self, kmax: u32) -> Vec<TSeries> {
        (0..=kmax)
            .map(|k| {
                let mut c = vec![0; self.ntimes()];
                c[0] = k + 2;
                self.cumulant(&c).scale(&int(-2))
            })
            .collect()
    }
}

/// Sign of the Miwa shift `t ∓ [z⁻¹]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiwaSign {
    Minus,
    Plus,
}

impl MiwaSign {
    fn factor(self) -> Rational {
        match self {
            MiwaSign::Minus => int(-1),
            MiwaSign::Plus => int(1),
        }
    }

    fn flip(self) -> MiwaSign {
        match self {
            MiwaSign::Minus => MiwaSign::Plus,
            MiwaSign::Plus => MiwaSign::Minus,
        }
    }
}

/// Truncations and conventions of a tau run.
#[derive(Clone, Debug, Serialize)]
pub struct TauConfig {
    pub t_degree: u32,
    pub z_order: u32,
    /// `w`-order of the `∇` checks; flows `∂_{2m−1}` with `2m ≤ w_order`.
    pub w_order: u32,
    /// Dictionary checks cover `S_{2n}`, `ζᵢⱼ`, `ω`, `a` with indices `n ≤ dict_max`.
    #[serde(serialize_with = "ser_rational")]
    pub c_flow: Rational,
    pub dict_max: u32,
    /// Swaps the two Miwa shifts everywhere; a negative control.
    pub flip_miwa: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Default for TauConfig {
    fn default() -> Self {
        TauConfig {
            t_degree: 8,
            z_order: 10,
            w_order: 6,
            c_flow: int(C_FLOW),
            dict_max: 4,
            flip_miwa: false,
        }
    }
}

/// One named identity and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Orders to which the identity was compared.
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauReport {
    pub tau: String,
    pub expansion_point: String,
    pub config: TauConfig,
    pub checks: Vec<CheckOutcome>,
}

impl TauReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// A tau together with its series machinery at fixed truncation.
pub struct TauLab {
    tau: TauFunction,
    config: TauConfig,
    space: Arc<TSpace>,
    logs: LogDerivs,
    hierarchy: Hierarchy,
}

impl TauLab {
    /// Times needed for a given `z`-order: Miwa shifts reach `t_{zorder}`,
    /// `S_{2n}` needs `∂_{2n−1}` for `2n ≤ zorder`.
    pub fn ntimes_for(z_order: u32) -> usize {
        z_order as usize / 2 + 2
    }

    pub fn new(tau: TauFunction, config: TauConfig) -> Result<TauLab> {
        if config.t_degree < 4 {
            return Err(Error::InsufficientDepth {
                needed: 4,
                available: config.t_degree,
            });
        }
        let needed = Self::ntimes_for(config.z_order);
        if tau.ntimes() < needed {
            return Err(Error::InsufficientDepth {
                needed: needed as u32,
                available: tau.ntimes() as u32,
            });
        }
        let space = TSpace::new(LIVE_TIMES, config.t_degree);
        let logs = LogDerivs::new(tau.exp_poly(), Arc::clone(&space))?;
        let hierarchy = Hierarchy::with_flow_constant(2 * config.dict_max, config.c_flow.clone())?;
        Ok(TauLab {
            tau,
            config,
            space,
            logs,
            hierarchy,
        })
    }

    /// Parses a catalog string and builds the lab, rejecting non-Hirota taus.
    pub fn from_spec(spec: &str, config: TauConfig) -> Result<TauLab> {
        let spec: TauSpec = spec.parse()?;
        let tau = tau_catalog(&spec, Self::ntimes_for(config.z_order))?;
        Self::new(tau, config)
    }

    pub fn tau(&self) -> &TauFunction {
        &self.tau
    }

    pub fn config(&self) -> &TauConfig {
        &self.config
    }

    pub fn space(&self) -> &Arc<TSpace> {
        &self.space
    }

    /// `∂ᵢ∂ⱼ log τ`.
    pub fn log_deriv2(&self, i: u32, j: u32) -> TSeries {
        self.logs.log_deriv2(i, j)
    }

    /// `ζⱼ = ∂ⱼ log τ`.
    pub fn log_deriv(&self, j: u32) -> TSeries {
        self.logs.cumulant(&self.logs.unit((j as usize - 1) / 2))
    }

    /// `u_A = −2∂₁²log τ` and its `t₁`-derivatives up to order `kmax`.
    pub fn u_jets(&self, kmax: u32) -> Vec<TSeries> {
        self.logs.u_jets(kmax)
    }

    /// A jet polynomial evaluated at `u_A`.
    pub fn at_u(&self, p: &DiffPoly) -> TSeries {
        let kmax = p
            .terms()
            .flat_map(|(m, _)| m.exps().iter().map(|&(k, _)| k))
            .max()
            .unwrap_or(0);
        eval_jet(p, &self.u_jets(kmax), &self.space)
    }

    fn sign(&self, s: MiwaSign) -> MiwaSign {
        if self.config.flip_miwa {
            s.flip()
        } else {
            s
        }
    }

    /// `Σ_α m(α + extra)·Π_v (∓z^{−(2v+1)}/(2v+1))^{α_v}/α_v!`, i.e. the
    /// Miwa-shifted `(∂_extra τ)` divided by the unshifted `τ`.
    fn miwa_ratio(&self, sign: MiwaSign, extra: Option<u32>) -> ZSeries {
        let zo = self.config.z_order as i32;
        let ntimes = self.tau.ntimes();
        let s = sign.factor();
        let mut out = ZSeries::zero(&self.space, -zo, 0);
        let mut alpha = vec![0u32; ntimes];
        let mut by_power: Vec<TSeries> = vec![TSeries::zero(&self.space); zo as usize + 1];
        fn walk(
            v: usize,
            weight: u32,
            limit: u32,
            alpha: &mut Vec<u32>,
            visit: &mut dyn FnMut(&[u32], u32),
        ) {
            if v == alpha.len() || (2 * v as u32 + 1) > limit - weight {
                visit(alpha, weight);
                return;
            }
            let j = 2 * v as u32 + 1;
            let mut k = 0;
            while weight + k * j <= limit {
                alpha[v] = k;
                walk(v + 1, weight + k * j, limit, alpha, visit);
                k += 1;
            }
            alpha[v] = 0;
        }
        walk(0, 0, zo as u32, &mut alpha, &mut |a, wt| {
            let mut idx = a.to_vec();
            if let Some(j) = extra {
                idx[(j as usize - 1) / 2] += 1;
            }
            let mut coef = Rational::one();
            for (v, &k) in a.iter().enumerate() {
                if k > 0 {
                    let base = s.clone() / int(2 * v as i64 + 1);
                    coef *= (0..k).fold(Rational::one(), |acc, _| acc * &base) / factorial(k);
                }
            }
            let term = self.logs.moment(&idx).scale(&coef);
            by_power[wt as usize] = by_power[wt as usize].add(&term);
        });
        for (k, c) in by_power.into_iter().enumerate() {
            out.set(-(k as i32), c);
        }
        out
    }

    /// `r∓(z) = τ(t ∓ [z⁻¹])/τ(t)`.
    pub fn miwa_quotient(&self, sign: MiwaSign) -> ZSeries {
        self.miwa_ratio(self.sign(sign), None)
    }

    /// `τ(t ∓ [z⁻¹])`.
    pub fn miwa_shift(&self, sign: MiwaSign) -> ZSeries {
        self.miwa_quotient(sign)
            .mul_t(&self.tau.exp_poly().expand(&self.space))
    }

    /// `S(z) = τ(t−[z⁻¹])τ(t+[z⁻¹])/τ(t)²`; odd powers of `z` are an error.
    pub fn s_series(&self) -> Result<ZSeries> {
        let s = self
            .miwa_quotient(MiwaSign::Minus)
            .mul(&self.miwa_quotient(MiwaSign::Plus));
        let odd = s.nonzero_powers(|p| p % 2 != 0);
        if !odd.is_empty() {
            return Err(Error::OddPowers(format!("S(z) at powers {odd:?}")));
        }
        Ok(s)
    }

    /// `log r₋ − log r₊ = log τ(t−[z⁻¹]) − log τ(t+[z⁻¹])`.
    fn log_difference(&self) -> Result<ZSeries> {
        let lm = self.miwa_quotient(MiwaSign::Minus).log()?;
        let lp = self.miwa_quotient(MiwaSign::Plus).log()?;
        Ok(lm.sub(&lp))
    }

    /// `∂ⱼ(log r₋ − log r₊)`, from Miwa shifts of `∂ⱼτ` without differentiating series.
    fn log_difference_deriv(&self, j: u32) -> Result<ZSeries> {
        let minus = self.sign(MiwaSign::Minus);
        let plus = self.sign(MiwaSign::Plus);
        let a = self
            .miwa_ratio(minus, Some(j))
            .div(&self.miwa_ratio(minus, None))?;
        let b = self
            .miwa_ratio(plus, Some(j))
            .div(&self.miwa_ratio(plus, None))?;
        Ok(a.sub(&b))
    }

    /// `(X(z) − ξ(t,z), η(z))`: `X − ξ = ½(log τ(t−[z⁻¹]) − log τ(t+[z⁻¹]))`
    /// and `η = z⁻¹(ξ − X)`. The free part `ξ = Σ tⱼzʲ` is kept symbolic.
    pub fn x_eta_series(&self) -> Result<(ZSeries, ZSeries)> {
        let half = Rational::new(1.into(), 2.into());
        let x = self.log_difference()?.scale(&half);
        let eta = x.scale(&-Rational::one()).shift(-1);
        let odd = eta.nonzero_powers(|p| p % 2 != 0);
        if !odd.is_empty() {
            return Err(Error::OddPowers(format!("η(z) at powers {odd:?}")));
        }
        Ok((x, eta))
    }

    /// `η_{2n−1}` for `n = 1..`, read off at `z^{−2n}`.
    pub fn eta_coefficients(&self) -> Result<Vec<TSeries>> {
        let (_, eta) = self.x_eta_series()?;
        Ok((1..)
            .map(|n| 2 * n)
            .take_while(|&p| p <= -eta.lo())
            .map(|p| eta.get(-p).unwrap())
            .collect())
    }

    /// `∂ⱼη(z)`.
    pub fn eta_derivative(&self, j: u32) -> Result<ZSeries> {
        let half = Rational::new(1.into(), 2.into());
        Ok(self.log_difference_deriv(j)?.scale(&-half).shift(-1))
    }

    /// The `∇X` lemma at `w^{−2m}` for `2m ≤ w_order`: `∂_{2m−1}X(z)` equals
    /// `Σ_{k<m} S_{2(m−1−k)} z^{2k+1} / S(z)`, with `∂_{2m−1}ξ = z^{2m−1}`.
    pub fn check_nabla_x(&self) -> Result<Option<String>> {
        let s = self.s_series()?;
        let r = s.inv()?;
        let half = Rational::new(1.into(), 2.into());
        for m in 1..=(self.config.w_order / 2) as i32 {
            let mut lhs = self.log_difference_deriv(2 * m as u32 - 1)?.scale(&half);
            lhs.set(2 * m - 1, TSeries::one(&self.space));
            let mut rhs: Option<ZSeries> = None;
            for k in 0..m {
                let term = r.shift(2 * k + 1).mul_t(&s.get(-2 * (m - 1 - k)).unwrap());
                rhs = Some(match rhs {
                    None => term,
                    Some(acc) => acc.add(&term),
                });
            }
            let rhs = rhs.expect("m ≥ 1");
            if !lhs.agrees_with(&rhs) {
                return Ok(Some(format!("coefficient of w^{}", -2 * m)));
            }
        }
        Ok(None)
    }

    /// Coefficients of `(S(w)/S(z) − 1)/(z² − w²)` in `x = z⁻²`, `y = w⁻²`,
    /// expanded for `|z| > |w|` (`first`) and `|w| > |z|` (`second`), over
    /// the box where both are determined. Regularity at `z² = w²` means both
    /// expansions agree and neither has negative powers.
    fn nabla_eta_expansions(
        &self,
        s: &ZSeries,
        r: &ZSeries,
    ) -> (HashMap<(i32, i32), TSeries>, HashMap<(i32, i32), TSeries>) {
        let kmax = self.config.z_order as i32 / 2;
        let zero = TSeries::zero(&self.space);
        let f = |n: i32, j: i32| -> TSeries {
            let mut v = r.get(-2 * n).unwrap().mul(&s.get(-2 * j).unwrap());
            if n == 0 && j == 0 {
                v = v.sub(&TSeries::one(&self.space));
            }
            v
        };
        let mut first = HashMap::new();
        let mut second = HashMap::new();
        // first(a, b) = Σ_{k ≥ 0} F(a−1−k, b+k); second(a, b) = −Σ_{k ≥ 0} F(a+k, b−1−k)
        for a in -kmax..=kmax + 1 {
            for b in -kmax..=kmax + 1 {
                if a + b > kmax + 1 || a + b < 1 - kmax {
                    continue;
                }
                let mut g1 = zero.clone();
                let mut g2 = zero.clone();
                for k in 0..=2 * kmax + 2 {
                    let (n, j) = (a - 1 - k, b + k);
                    if n >= 0 && j >= 0 && n <= kmax && j <= kmax {
                        g1 = g1.add(&f(n, j));
                    }
                    let (n, j) = (a + k, b - 1 - k);
                    if n >= 0 && j >= 0 && n <= kmax && j <= kmax {
                        g2 = g2.sub(&f(n, j));
                    }
                }
                first.insert((a, b), g1);
                second.insert((a, b), g2);
            }
        }
        (first, second)
    }

    /// Runs every identity and returns the report.
    pub fn verify(&self) -> TauReport {
        let mut checks = Vec::new();
        let orders = format!(
            "t-degree {}, z-order {}",
            self.config.t_degree, self.config.z_order
        );
        let mut push = |name: &str, order: &str, failure: Option<String>| {
            checks.push(CheckOutcome {
                name: name.to_string(),
                passed: failure.is_none(),
                order: order.to_string(),
                failure,
            });
        };
        let exact = "exact in all times";
        push(
            "hirota",
            exact,
            (!hirota_check(&self.tau)).then(|| "(D₁⁴ − 4D₁D₃)τ·τ ≠ 0".to_string()),
        );
        let outcome = self.series_checks();
        match outcome {
            Ok(list) => {
                for (name, order, failure) in list {
                    push(
                        name,
                        if order.is_empty() { &orders } else { &order },
                        failure,
                    );
                }
            }
            Err(e) => push("series", &orders, Some(e.to_string())),
        }
        TauReport {
            tau: self.tau.spec().to_string(),
            expansion_point: self.tau.expansion_point(),
            config: self.config.clone(),
            checks,
        }
    }

    fn series_checks(&self) -> Result<Vec<(&'static str, String, Option<String>)>> {
        let mut out = Vec::new();
        let kmax = self.config.z_order / 2;
        let dict = self.config.dict_max;
        let h = &self.hierarchy;

        let s = self
            .miwa_quotient(MiwaSign::Minus)
            .mul(&self.miwa_quotient(MiwaSign::Plus));
        let odd = s.nonzero_powers(|p| p % 2 != 0);
        out.push((
            "s-even",
            String::new(),
            (!odd.is_empty()).then(|| format!("odd powers {odd:?}")),
        ));
        let r = s.inv()?;

        let (x, eta) = self.x_eta_series()?;
        let odd = eta.nonzero_powers(|p| p % 2 != 0);
        out.push((
            "eta-even",
            String::new(),
            (!odd.is_empty()).then(|| format!("odd powers {odd:?}")),
        ));

        let fail = (1..=kmax).find(|&n| {
            !s.get(-2 * n as i32)
                .unwrap()
                .agrees_with(&self.log_deriv2(1, 2 * n - 1))
        });
        out.push((
            "s-tau",
            String::new(),
            fail.map(|n| format!("S_{} ≠ ∂₁∂_{}log τ", 2 * n, 2 * n - 1)),
        ));

        // X − ξ = −½ log S + log Ψ − ξ, with log Ψ − ξ = log r₋
        let wave = s
            .log()?
            .scale(&Rational::new((-1).into(), 2.into()))
            .add(&self.miwa_quotient(MiwaSign::Minus).log()?);
        out.push((
            "x-tau",
            String::new(),
            (!wave.agrees_with(&x)).then(|| "X ≠ −½log S + log Ψ".to_string()),
        ));

        let nabla_order = format!(
            "t-degree {}, z-order {}, w-order {}",
            self.config.t_degree, self.config.z_order, self.config.w_order
        );
        out.push(("nabla-x", nabla_order.clone(), self.check_nabla_x()?));

        let (first, second) = self.nabla_eta_expansions(&s, &r);
        let mut failure = None;
        for (&(a, b), g1) in &first {
            let g2 = &second[&(a, b)];
            if (a < 0 || b < 0) && (!g1.is_zero() || !g2.is_zero()) {
                failure = Some(format!("negative power x^{a} y^{b}"));
                break;
            }
            if !g1.agrees_with(g2) {
                failure = Some(format!("regimes differ at x^{a} y^{b}"));
                break;
            }
        }
        out.push(("nabla-eta-regimes", String::new(), failure));

        let dict_order = format!("t-degree {}, indices ≤ {}", self.config.t_degree, dict);
        let fail = (1..=dict.min(kmax)).find(|&n| {
            h.s(n as usize)
                .map(|p| !self.at_u(p).agrees_with(&s.get(-2 * n as i32).unwrap()))
                .unwrap_or(true)
        });
        out.push((
            "s-dictionary",
            dict_order.clone(),
            fail.map(|n| format!("S_{}(u_A)", 2 * n)),
        ));

        let mut failure = None;
        'zeta: for i in (1..2 * dict).step_by(2) {
            for j in (i..2 * dict).step_by(2) {
                let z = h.zeta(i, j)?;
                if !self.at_u(&z).agrees_with(&self.log_deriv2(i, j)) {
                    failure = Some(format!("ζ_{i},{j}(u_A) ≠ ∂{i}∂{j}log τ"));
                    break 'zeta;
                }
            }
        }
        out.push(("zeta-dictionary", dict_order.clone(), failure));

        let mut failure = None;
        'omega: for n in 1..=dict.min(kmax) {
            for m in 1..=dict.min(kmax) {
                if n + m > kmax + 1 {
                    continue;
                }
                let w = h.omega(2 * n - 1, 2 * m - 1)?;
                if !self.at_u(&w).agrees_with(&first[&(n as i32, m as i32)]) {
                    failure = Some(format!("ω_{},{}(u_A)", 2 * n - 1, 2 * m - 1));
                    break 'omega;
                }
            }
        }
        out.push(("omega-dictionary", dict_order.clone(), failure));

        let mut failure = None;
        let etas = self.eta_coefficients()?;
        for n in 1..=dict.min(kmax) {
            let j = 2 * n - 1;
            let a = h.eta_a(j)?;
            let lhs = etas[n as usize - 1].sub(
                &self
                    .log_deriv(j)
                    .scale(&Rational::new(1.into(), (j as i64).into())),
            );
            if !self.at_u(&a).agrees_with(&lhs) {
                failure = Some(format!("η_{j} − ζ_{j}/{j} ≠ a_{j}(u_A)"));
                break;
            }
        }
        out.push(("eta-a-dictionary", dict_order, failure));

        let mut failure = None;
        let nm = (self.config.w_order / 2).min(kmax);
        'deta: for m in 1..=nm {
            let d = self.eta_derivative(2 * m - 1)?;
            for n in 1..=nm {
                let w = h.omega(2 * n - 1, 2 * m - 1)?;
                if !d.get(-2 * n as i32).unwrap().agrees_with(&self.at_u(&w)) {
                    failure = Some(format!(
                        "∂{}η_{} ≠ ω_{},{}",
                        2 * m - 1,
                        2 * n - 1,
                        2 * n - 1,
                        2 * m - 1
                    ));
                    break 'deta;
                }
            }
        }
        out.push((
            "d-eta-omega",
            format!("t-degree {}, n, m ≤ {}", self.config.t_degree, nm),
            failure,
        ));
        Ok(out)
    }
}

/// Verifies several catalog taus, independently and under `strategy`.
pub fn run_suite(
    specs: &[TauSpec],
    config: &TauConfig,
    strategy: Strategy,
) -> Result<Vec<TauReport>> {
    let ntimes = TauLab::ntimes_for(config.z_order);
    let taus = specs
        .iter()
        .map(|s| tau_catalog(s, ntimes))
        .collect::<Result<Vec<_>>>()?;
    strategy
        .map(&taus, |tau| {
            TauLab::new(tau.clone(), config.clone()).map(|lab| lab.verify())
        })
        .into_iter()
        .collect()
}

/// Negative controls: each must break at least one check.
pub fn negative_controls(config: &TauConfig) -> Result<Vec<(String, TauReport)>> {
    let ntimes = TauLab::ntimes_for(config.z_order);
    let soliton = TauSpec::Soliton {
        p: int(1),
        naive: false,
    };
    let naive = TauSpec::Soliton {
        p: int(1),
        naive: true,
    };
    let mut out = Vec::new();
    let lab = TauLab::new(tau_unchecked(&naive, ntimes)?, config.clone())?;
    out.push(("wrong dispersion".to_string(), lab.verify()));
    let wrong_flow = TauConfig {
        c_flow: int(1),
        ..config.clone()
    };
    let lab = TauLab::new(tau_catalog(&soliton, ntimes)?, wrong_flow)?;
    out.push(("wrong c_flow".to_string(), lab.verify()));
    let flipped = TauConfig {
        flip_miwa: true,
        ..config.clone()
    };
    let lab = TauLab::new(tau_catalog(&soliton, ntimes)?, flipped)?;
    out.push(("wrong Miwa sign".to_string(), lab.verify()));
    Ok(out)
}
