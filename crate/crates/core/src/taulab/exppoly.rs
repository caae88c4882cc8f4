//! Finite sums `Σ P_r(t)·e^{L_r·t}` over the odd times, exact in every time.
//!
//! Tau functions in the catalog are of this form, so derivatives in any time
//! (live or not) and the Hirota expression are computed without truncation.
//! Expansion into a [`TSeries`] happens only at the end, at `t = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{int, Rational, TSeries, TSpace};

type Exps = Vec<u32>;
type TimePoly = BTreeMap<Exps, Rational>;

/// `Σ P_r(t) e^{L_r·t}`; slot `v` stands for the time `t_{2v+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExpPoly {
    ntimes: usize,
    terms: BTreeMap<Vec<Rational>, TimePoly>,
}

fn add_into(p: &mut TimePoly, e: Exps, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(e).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        let key: Vec<Exps> = p
            .iter()
            .filter(|(_, c)| c.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in key {
            p.remove(&k);
        }
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

impl ExpPoly {
    pub fn zero(ntimes: usize) -> ExpPoly {
        ExpPoly {
            ntimes,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ntimes: usize, c: Rational) -> ExpPoly {
        let mut p = Self::zero(ntimes);
        p.push(vec![Rational::zero(); ntimes], vec![0; ntimes], c);
        p
    }

    pub fn one(ntimes: usize) -> ExpPoly {
        Self::constant(ntimes, int(1))
    }

    /// The time `t_j` (odd `j`).
    pub fn time(ntimes: usize, j: u32) -> ExpPoly {
        let mut e = vec![0; ntimes];
        e[(j as usize - 1) / 2] = 1;
        let mut p = Self::zero(ntimes);
        p.push(vec![Rational::zero(); ntimes], e, int(1));
        p
    }

    /// `e^{Σ_v L_v t_{2v+1}}`.
    pub fn exp(l: Vec<Rational>) -> ExpPoly {
        let n = l.len();
        let mut p = Self::zero(n);
        p.push(l, vec![0; n], int(1));
        p
    }

    pub fn ntimes(&self) -> usize {
        self.ntimes
    }

    fn push(&mut self, l: Vec<Rational>, e: Exps, c: Rational) {
        let poly = self.terms.entry(l.clone()).or_default();
        add_into(poly, e, c);
        if poly.is_empty() {
            self.terms.remove(&l);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The first stored term `(L, exponents, coefficient)`.
    pub fn first_term(&self) -> Option<(&[Rational], &[u32], &Rational)> {
        let (l, p) = self.terms.iter().next()?;
        let (e, c) = p.iter().next()?;
        Some((l, e, c))
    }

    pub fn coeff(&self, l: &[Rational], e: &[u32]) -> Rational {
        self.terms
            .get(l)
            .and_then(|p| p.get(e))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Value at `t = 0` (exact).
    pub fn value_at_origin(&self) -> Rational {
        let zero = vec![0; self.ntimes];
        self.terms.values().filter_map(|p| p.get(&zero)).sum()
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (l, p) in &other.terms {
            for (e, c) in p {
                out.push(l.clone(), e.clone(), c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        let mut out = Self::zero(self.ntimes);
        for (l, p) in &self.terms {
            for (e, x) in p {
                out.push(l.clone(), e.clone(), x * c);
            }
        }
        out
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = Self::zero(self.ntimes);
        for (l1, p1) in &self.terms {
            for (l2, p2) in &other.terms {
                let l: Vec<Rational> = l1.iter().zip(l2).map(|(a, b)| a + b).collect();
                for (e1, c1) in p1 {
                    for (e2, c2) in p2 {
                        let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                        out.push(l.clone(), e, c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// `∂/∂t_j`; zero for times beyond the represented slots.
    pub fn deriv(&self, j: u32) -> ExpPoly {
        let v = (j as usize - 1) / 2;
        let mut out = Self::zero(self.ntimes);
        if v >= self.ntimes {
            return out;
        }
        for (l, p) in &self.terms {
            for (e, c) in p {
                if !l[v].is_zero() {
                    out.push(l.clone(), e.clone(), c * &l[v]);
                }
                if e[v] > 0 {
                    let mut f = e.clone();
                    f[v] -= 1;
                    out.push(l.clone(), f, c * int(e[v] as i64));
                }
            }
        }
        out
    }

    /// `∂^c` with `c[v]` derivatives in `t_{2v+1}`.
    pub fn deriv_multi(&self, c: &[u32]) -> ExpPoly {
        let mut out = self.clone();
        for (v, &k) in c.iter().enumerate() {
            for _ in 0..k {
                out = out.deriv(2 * v as u32 + 1);
            }
        }
        out
    }

    /// Replaces `t_j` by `t_j + shift`, exactly; the exponential prefactor
    /// `e^{L_j·shift}` must be rational, so only polynomial terms may move.
    pub fn shift_time(&self, j: u32, shift: &Rational) -> Option<ExpPoly> {
        let v = (j as usize - 1) / 2;
        let mut out = Self::zero(self.ntimes);
        for (l, p) in &self.terms {
            if !l[v].is_zero() && !shift.is_zero() {
                return None;
            }
            for (e, c) in p {
                // (t + s)^k = Σ C(k, i) t^i s^{k−i}
                let k = e[v];
                for i in 0..=k {
                    let mut f = e.clone();
                    f[v] = i;
                    let binom = factorial(k) / (factorial(i) * factorial(k - i));
                    let pow = (0..k - i).fold(Rational::one(), |acc, _| acc * shift);
                    out.push(l.clone(), f, c * binom * pow);
                }
            }
        }
        Some(out)
    }

    /// Taylor expansion at `t = 0` in the live times of `space`; the other
    /// times are set to zero.
    pub fn expand(&self, space: &Arc<TSpace>) -> TSeries {
        let nv = space.nvars();
        let mut out = TSeries::zero(space);
        for (l, p) in &self.terms {
            let ex = TSeries::from_fn(space, |e| {
                let mut c = Rational::one();
                for (v, &k) in e.iter().enumerate() {
                    if k > 0 {
                        let lv = l.get(v).cloned().unwrap_or_else(Rational::zero);
                        let pow = (0..k).fold(Rational::one(), |acc, _| acc * &lv);
                        c *= pow / factorial(k);
                    }
                }
                c
            });
            let poly = TSeries::from_fn(space, |e| {
                let mut full = vec![0; self.ntimes];
                let k = nv.min(self.ntimes);
                full[..k].copy_from_slice(&e[..k]);
                if e.iter().skip(self.ntimes).any(|&k| k > 0) {
                    return Rational::zero();
                }
                p.get(&full).cloned().unwrap_or_else(Rational::zero)
            });
            out = out.add(&ex.mul(&poly));
        }
        out
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let poly: Vec<String> = p
                .iter()
                .map(|(e, c)| {
                    let mut s = c.to_string();
                    for (v, &k) in e.iter().enumerate() {
                        if k > 0 {
                            s.push_str(&format!("·t{}^{}", 2 * v + 1, k));
                        }
                    }
                    s
                })
                .collect();
            write!(f, "({})", poly.join(" + "))?;
            let ex: Vec<String> = l
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(v, x)| format!("{x}·t{}", 2 * v + 1))
                .collect();
            if !ex.is_empty() {
                write!(f, "·exp({})", ex.join(" + "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn derivatives_and_products() {
        let n = 3;
        let e = ExpPoly::exp(vec![int(2), int(2), int(2)]);
        let t1 = ExpPoly::time(n, 1);
        let f = t1.mul(&e);
        // ∂₁(t₁ e^{2t₁+…}) = e + 2t₁e
        assert_eq!(f.deriv(1), e.add(&f.scale(&int(2))));
        assert!(f.deriv(7).is_zero());
        let g = e.mul(&e);
        assert_eq!(g, ExpPoly::exp(vec![int(4), int(4), int(4)]));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn shifting_and_expanding() {
        let n = 2;
        let t1 = ExpPoly::time(n, 1);
        let cube = t1.mul(&t1).mul(&t1);
        let shifted = cube.shift_time(1, &int(1)).unwrap();
        let sp = TSpace::new(2, 4);
        let s = shifted.expand(&sp);
        assert_eq!(s.coeff(&[0, 0]), int(1));
        assert_eq!(s.coeff(&[1, 0]), int(3));
        assert_eq!(s.coeff(&[3, 0]), int(1));
        let e = ExpPoly::exp(vec![rat(1, 2), int(3)]).expand(&sp);
        assert_eq!(e.coeff(&[2, 1]), rat(1, 8) * int(3));
        assert!(ExpPoly::exp(vec![int(1), int(0)])
            .shift_time(1, &int(1))
            .is_none());
    }
}
