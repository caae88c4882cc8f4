//! The differential algebra `A = Q[u, u′, u″, …]` with `deg u^(k) = k + 2`.
//!
//! [`Hierarchy`] owns the `S`-polynomials and the flow images `∂ₙu^(k)` up to
//! a degree bound, and derives `ζ`, `ω` and the `a`-polynomials of the `η`
//! decomposition from them.

use num_traits::Zero;

use crate::algebra::{int, monomials_of_degree, Catalog, GradedPoly, Monomial, Rational};
use crate::error::{Error, Result};

pub type DiffPoly = GradedPoly;

/// Flow normalization: `∂ₙ(u^(k)) = C_FLOW · S_{n+1}^(k+1)`.
pub const C_FLOW: i64 = -2;

/// `u^(k)`.
pub fn u(k: u32) -> DiffPoly {
    GradedPoly::var(Catalog::Jet, k)
}

/// The derivation `′` (identified with `∂₁`): `u^(m) ↦ u^(m+1)`.
pub fn d1(p: &DiffPoly) -> DiffPoly {
    p.derive(&mut |k| u(k + 1))
}

pub fn d1_pow(p: &DiffPoly, n: u32) -> DiffPoly {
    (0..n).fold(p.clone(), |q, _| d1(&q))
}

fn max_order(p: &DiffPoly) -> Option<u32> {
    p.generators().last().copied()
}

/// Euler operator `Σₘ (−1)^m (d1)^m ∂p/∂u^(m)`; vanishes exactly on total derivatives plus constants.
pub fn variational_derivative(p: &DiffPoly) -> DiffPoly {
    let mut out = GradedPoly::zero(Catalog::Jet);
    for m in p.generators() {
        let term = d1_pow(&p.partial(m), m);
        if m % 2 == 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    out
}

/// Antiderivative in one generator: `u^(k)^e ↦ u^(k)^{e+1}/(e+1)`.
fn antiderivative(p: &DiffPoly, k: u32) -> DiffPoly {
    GradedPoly::from_terms(
        Catalog::Jet,
        p.terms().map(|(m, c)| {
            let e = m.exponent(k);
            (
                m.mul(&Monomial::var(Catalog::Jet, k)),
                c / int(e as i64 + 1),
            )
        }),
    )
}

/// The unique `q` without constant term with `q′ = p`.
pub fn integrate_d1(p: &DiffPoly) -> Result<DiffPoly> {
    if !p.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    let vd = variational_derivative(p);
    if !vd.is_zero() {
        return Err(Error::NotExact {
            residue: vd.to_string(),
        });
    }
    let mut rest = p.clone();
    let mut q = GradedPoly::zero(Catalog::Jet);
    while let Some(n) = max_order(&rest) {
        // an exact polynomial is affine in its top jet variable
        let top = rest.partial(n);
        if n == 0 || top.generators().contains(&n) {
            return Err(Error::NotExact {
                residue: rest.to_string(),
            });
        }
        let f = antiderivative(&top, n - 1);
        rest -= &d1(&f);
        q += &f;
    }
    Ok(q)
}

/// Number of partitions of `d` into parts `≥ 2`, i.e. `dim A_d`.
pub fn dim_a(d: u32) -> usize {
    monomials_of_degree(Catalog::Jet, d).len()
}

/// Monomial basis of `A_d` in descending canonical order.
pub fn basis(d: u32) -> Vec<Monomial> {
    let mut b = monomials_of_degree(Catalog::Jet, d);
    b.reverse();
    b
}

/// Coordinates of a homogeneous polynomial in a given monomial basis.
pub fn coordinates(p: &DiffPoly, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

fn check_odd(n: u32) -> Result<()> {
    if n % 2 == 1 {
        Ok(())
    } else {
        Err(Error::BadIndex(n as i64))
    }
}

/// `S₂, S₄, …, S_{nmax}` from `S₂ = −u/2` and
/// `S′_{n+2} = ¼S‴_n − uS′_n − ½u′S_n`.
pub fn gen_s(nmax: u32) -> Result<Vec<DiffPoly>> {
    if nmax < 2 || nmax % 2 == 1 {
        return Err(Error::BadIndex(nmax as i64));
    }
    let mut table = vec![u(0).scale(&Rational::new((-1).into(), 2.into()))];
    while 2 * (table.len() as u32) < nmax {
        let s = table.last().unwrap();
        let s1 = d1(s);
        let rhs = &(&d1_pow(&s1, 2).scale(&Rational::new(1.into(), 4.into())) - &(&u(0) * &s1))
            - &(&u(1) * s).scale(&Rational::new(1.into(), 2.into()));
        table.push(integrate_d1(&rhs)?);
    }
    Ok(table)
}

/// The S-table, flow images and derived families up to a degree bound.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    c_flow: Rational,
    depth: u32,
    /// `s[n] = S_{2n}`, `s[0] = 1`.
    s: Vec<DiffPoly>,
    /// `r[n]` is the `z^{−2n}` coefficient of `1/S(z)`.
    r: Vec<DiffPoly>,
    /// `images[(n−1)/2][k] = ∂ₙ(u^(k))`.
    images: Vec<Vec<DiffPoly>>,
}

impl Hierarchy {
    /// Tables sufficient for flows `∂ₙ` with `n ≤ depth` acting on `A_{≤ depth}`.
    pub fn new(depth: u32) -> Result<Hierarchy> {
        Self::with_flow_constant(depth, int(C_FLOW))
    }

    pub fn with_flow_constant(depth: u32, c_flow: Rational) -> Result<Hierarchy> {
        let depth = depth.max(2);
        let smax = 2 * depth.div_ceil(2) + 2;
        let mut s = vec![GradedPoly::one(Catalog::Jet)];
        s.extend(gen_s(smax)?);
        let mut r = vec![GradedPoly::one(Catalog::Jet)];
        for n in 1..s.len() {
            let mut acc = GradedPoly::zero(Catalog::Jet);
            for j in 1..=n {
                acc -= &(&s[j] * &r[n - j]);
            }
            r.push(acc);
        }
        let kmax = depth.saturating_sub(2);
        let images = (0..=(depth.saturating_sub(1)) / 2)
            .map(|i| {
                let sn = &s[i as usize + 1];
                let mut row = Vec::new();
                let mut cur = d1(sn).scale(&c_flow);
                for _ in 0..=kmax {
                    let next = d1(&cur);
                    row.push(cur);
                    cur = next;
                }
                row
            })
            .collect();
        Ok(Hierarchy {
            c_flow,
            depth,
            s,
            r,
            images,
        })
    }

    pub fn c_flow(&self) -> &Rational {
        &self.c_flow
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `S_{2n}` (`S₀ = 1`).
    pub fn s(&self, n: usize) -> Result<&DiffPoly> {
        self.s.get(n).ok_or(Error::InsufficientDepth {
            needed: 2 * n as u32,
            available: 2 * (self.s.len() as u32 - 1),
        })
    }

    /// `S₂ … S_{2n}` as stored.
    pub fn s_table(&self) -> &[DiffPoly] {
        &self.s[1..]
    }

    /// Coefficient of `z^{−2n}` in `1/S(z)`.
    pub fn r(&self, n: usize) -> Result<&DiffPoly> {
        self.r.get(n).ok_or(Error::InsufficientDepth {
            needed: 2 * n as u32,
            available: 2 * (self.r.len() as u32 - 1),
        })
    }

    /// `∂ₙ(u^(k))`.
    pub fn flow_image(&self, n: u32, k: u32) -> Result<DiffPoly> {
        check_odd(n)?;
        let i = (n as usize - 1) / 2;
        if let Some(p) = self.images.get(i).and_then(|row| row.get(k as usize)) {
            return Ok(p.clone());
        }
        let sn = self.s(i + 1)?;
        Ok(d1_pow(sn, k + 1).scale(&self.c_flow))
    }

    /// The hierarchy flow `∂ₙ`, extended by Leibniz.
    pub fn flow(&self, n: u32, p: &DiffPoly) -> Result<DiffPoly> {
        check_odd(n)?;
        let needed = (n as usize).div_ceil(2);
        if needed >= self.s.len() {
            return Err(Error::InsufficientDepth {
                needed: n + 1,
                available: 2 * (self.s.len() as u32 - 1),
            });
        }
        let mut err = None;
        let out = p.derive(&mut |k| match self.flow_image(n, k) {
            Ok(q) => q,
            Err(e) => {
                err = Some(e);
                GradedPoly::zero(Catalog::Jet)
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Applies a polynomial in the flows (a `Flow`-catalog polynomial).
    pub fn apply_dop(&self, op: &GradedPoly, p: &DiffPoly) -> Result<DiffPoly> {
        let mut out = GradedPoly::zero(Catalog::Jet);
        for (m, c) in op.terms() {
            let mut q = p.clone();
            for &(i, e) in m.exps() {
                for _ in 0..e {
                    if q.is_zero() {
                        break;
                    }
                    q = self.flow(i, &q)?;
                }
            }
            out += &q.scale(c);
        }
        Ok(out)
    }

    /// `ζᵢⱼ`, computed as `∫(∂ᵢ S_{j+1}) dt₁` with `i ≤ j`.
    pub fn zeta(&self, i: u32, j: u32) -> Result<DiffPoly> {
        check_odd(i)?;
        check_odd(j)?;
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.zeta_ordered(a, b)
    }

    /// `ζᵢⱼ` through `∂ᵢ S_{j+1}` without reordering; used to test symmetry.
    pub fn zeta_ordered(&self, i: u32, j: u32) -> Result<DiffPoly> {
        check_odd(i)?;
        check_odd(j)?;
        let sj = self.s((j as usize).div_ceil(2))?;
        if i == 1 {
            return Ok(sj.clone());
        }
        integrate_d1(&self.flow(i, sj)?)
    }

    /// `ω_{n,m} = Σ_{k<N} S_{2(M+k)} R_{2(N−1−k)}` with `n = 2N−1`, `m = 2M−1`.
    pub fn omega(&self, n: u32, m: u32) -> Result<DiffPoly> {
        check_odd(n)?;
        check_odd(m)?;
        let (nn, mm) = ((n as usize).div_ceil(2), (m as usize).div_ceil(2));
        let mut out = GradedPoly::zero(Catalog::Jet);
        for k in 0..nn {
            out += &(self.s(mm + k)? * self.r(nn - 1 - k)?);
        }
        Ok(out)
    }

    /// `∂_{m2} ω_{n,m1} − ∂_{m1} ω_{n,m2} = 0`.
    pub fn check_omega_closed(&self, n: u32, m1: u32, m2: u32) -> Result<bool> {
        let a = self.flow(m2, &self.omega(n, m1)?)?;
        let b = self.flow(m1, &self.omega(n, m2)?)?;
        Ok((&a - &b).is_zero())
    }

    /// `ω_{n,m} − ζ_{n,m}/n`.
    pub fn eta_defect(&self, n: u32, m: u32) -> Result<DiffPoly> {
        Ok(&self.omega(n, m)?
            - &self
                .zeta(n, m)?
                .scale(&Rational::new(1.into(), (n as i64).into())))
    }

    /// `a_n = ∫(ω_{n,1} − ζ_{n,1}/n) dt₁`.
    pub fn eta_a(&self, n: u32) -> Result<DiffPoly> {
        integrate_d1(&self.eta_defect(n, 1)?)
    }

    /// `∂ₘ a_n − (ω_{n,m} − ζ_{n,m}/n)`; zero when a single `a_n` serves every flow.
    pub fn eta_residual(&self, n: u32, m: u32, a: &DiffPoly) -> Result<DiffPoly> {
        Ok(&self.flow(m, a)? - &self.eta_defect(n, m)?)
    }

    /// `[∂ₘ, ∂ₙ](u^(k))`.
    pub fn flow_commutator(&self, m: u32, n: u32, k: u32) -> Result<DiffPoly> {
        let x = u(k);
        Ok(&self.flow(m, &self.flow(n, &x)?)? - &self.flow(n, &self.flow(m, &x)?)?)
    }

    /// `∂_{2a−1}S_{2b} − ∂_{2b−1}S_{2a}`.
    pub fn symmetric_defect(&self, a: u32, b: u32) -> Result<DiffPoly> {
        let x = self.flow(2 * a - 1, self.s(b as usize)?)?;
        let y = self.flow(2 * b - 1, self.s(a as usize)?)?;
        Ok(&x - &y)
    }

    /// The two classical relations `∂₃S₂ − ∂₁S₄` and `∂₁²S₂ − 4S₄ + 6S₂²`.
    pub fn null_vectors(&self) -> Result<[DiffPoly; 2]> {
        let s2 = self.s(1)?;
        let s4 = self.s(2)?;
        let nv1 = &self.flow(3, s2)? - &self.flow(1, s4)?;
        let nv2 =
            &(&self.flow(1, &self.flow(1, s2)?)? - &s4.scale(&int(4))) + &(s2 * s2).scale(&int(6));
        Ok([nv1, nv2])
    }
}

impl Default for Hierarchy {
    fn default() -> Self {
        Hierarchy::new(16).expect("default tables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    fn s4_expected() -> DiffPoly {
        &u(2).scale(&q(-1, 8)) + &(&u(0) * &u(0)).scale(&q(3, 8))
    }

    #[test]
    fn d1_examples() {
        assert_eq!(d1(&u(0)), u(1));
        assert_eq!(d1(&(&u(0) * &u(0))), (&u(0) * &u(1)).scale(&int(2)));
        let expect = &u(3).scale(&q(-1, 8)) + &(&u(0) * &u(1)).scale(&q(3, 4));
        assert_eq!(d1(&s4_expected()), expect);
    }

    #[test]
    fn variational_derivative_examples() {
        assert!(variational_derivative(&(&u(1) * &u(2))).is_zero());
        assert_eq!(
            variational_derivative(&(&u(0) * &u(0))),
            u(0).scale(&int(2))
        );
        assert_eq!(
            variational_derivative(&(&u(0) * &u(2))),
            u(2).scale(&int(2))
        );
    }

    #[test]
    fn integration_examples() {
        assert_eq!(
            integrate_d1(&(&u(0) * &u(1))).unwrap(),
            (&u(0) * &u(0)).scale(&q(1, 2))
        );
        assert_eq!(integrate_d1(&d1(&s4_expected())).unwrap(), s4_expected());
        assert!(matches!(
            integrate_d1(&(&u(0) * &u(0))),
            Err(Error::NotExact { .. })
        ));
        assert_eq!(
            integrate_d1(&GradedPoly::one(Catalog::Jet)),
            Err(Error::ConstantTerm)
        );
    }

    #[test]
    fn s_polynomials() {
        let s = gen_s(6).unwrap();
        assert_eq!(s[0], u(0).scale(&q(-1, 2)));
        assert_eq!(s[1], s4_expected());
        let s6 = &(&(&u(4).scale(&q(-1, 32)) + &(&u(0) * &u(2)).scale(&q(5, 16)))
            + &(&u(1) * &u(1)).scale(&q(5, 32)))
            - &u(0).pow(3).scale(&q(5, 16));
        assert_eq!(s[2], s6);
        assert_eq!(s[2].homogeneous_degree(), Some(6));
    }

    #[test]
    fn flow_examples() {
        let h = Hierarchy::new(8).unwrap();
        assert_eq!(h.flow(1, &u(0)).unwrap(), u(1));
        let d3u = &u(3).scale(&q(1, 4)) - &(&u(0) * &u(1)).scale(&q(3, 2));
        assert_eq!(h.flow(3, &u(0)).unwrap(), d3u);
        let [a, b] = h.null_vectors().unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn zeta_examples() {
        let h = Hierarchy::new(8).unwrap();
        assert_eq!(h.zeta(1, 1).unwrap(), u(0).scale(&q(-1, 2)));
        assert_eq!(h.zeta(1, 3).unwrap(), s4_expected());
        let z33 = &(&(&u(4).scale(&q(-1, 32)) + &(&u(0) * &u(2)).scale(&q(3, 8)))
            + &(&u(1) * &u(1)).scale(&q(3, 32)))
            - &u(0).pow(3).scale(&q(3, 8));
        assert_eq!(h.zeta(3, 3).unwrap(), z33);
        assert_eq!(h.zeta_ordered(5, 3).unwrap(), h.zeta_ordered(3, 5).unwrap());
    }

    #[test]
    fn omega_examples() {
        let h = Hierarchy::new(8).unwrap();
        let s2 = h.s(1).unwrap().clone();
        let s4 = h.s(2).unwrap().clone();
        assert_eq!(h.omega(1, 1).unwrap(), s2);
        assert_eq!(h.omega(1, 3).unwrap(), s4);
        assert_eq!(h.omega(3, 1).unwrap(), &s4 - &(&s2 * &s2));
        assert!(h.check_omega_closed(1, 1, 3).unwrap());
        assert!(h.check_omega_closed(3, 1, 3).unwrap());
        assert!(h.check_omega_closed(1, 3, 3).unwrap());
    }

    #[test]
    fn eta_examples() {
        let h = Hierarchy::new(10).unwrap();
        assert!(h.eta_a(1).unwrap().is_zero());
        assert_eq!(h.eta_a(3).unwrap(), u(1).scale(&q(-1, 12)));
        let a5 = h.eta_a(5).unwrap();
        assert_eq!(a5.homogeneous_degree(), Some(5));
        assert!(h.eta_residual(5, 3, &a5).unwrap().is_zero());
    }

    #[test]
    fn literal_flow_breaks_the_second_relation() {
        let h = Hierarchy::with_flow_constant(8, int(1)).unwrap();
        let [a, b] = h.null_vectors().unwrap();
        assert!(a.is_zero());
        assert!(!b.is_zero());
    }

    #[test]
    fn missing_depth_is_reported() {
        let h = Hierarchy::new(4).unwrap();
        assert!(matches!(
            h.flow(15, &u(0)),
            Err(Error::InsufficientDepth { .. })
        ));
        assert_eq!(h.flow(2, &u(0)), Err(Error::BadIndex(2)));
    }
}
