//! Truncated multivariate series in the odd times and Laurent series in `z`
//! with such coefficients.
//!
//! A [`TSeries`] is dense in a fixed [`TSpace`]: all monomials in the live
//! times `t₁, t₃, …` of total degree at most the space degree. Each series
//! also records the order to which it is known; arithmetic never reports
//! more than it can justify.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Monomial layout and product table shared by all series of one shape.
#[derive(Debug)]
pub struct TSpace {
    nvars: usize,
    degree: u32,
    exps: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
    /// `products[i]` lists `(j, k)` with `mono_i · mono_j = mono_k` inside the space.
    products: Vec<Vec<(usize, usize)>>,
    /// `factors[k]` lists `(i, j)` with `mono_i · mono_j = mono_k`.
    factors: Vec<Vec<(usize, usize)>>,
}

impl TSpace {
    /// Space of series in `nvars` live times (`t₁, t₃, …, t_{2·nvars−1}`)
    /// truncated at total polynomial degree `degree`.
    pub fn new(nvars: usize, degree: u32) -> Arc<TSpace> {
        let mut exps: Vec<Vec<u32>> = Vec::new();
        for d in 0..=degree {
            let mut level = Vec::new();
            compositions(d, nvars, &mut Vec::new(), &mut level);
            level.sort_unstable_by(|a, b| b.cmp(a));
            exps.extend(level);
        }
        let degrees: Vec<u32> = exps.iter().map(|e| e.iter().sum()).collect();
        let index: HashMap<Vec<u32>, usize> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let products = exps
            .iter()
            .map(|a| {
                exps.iter()
                    .enumerate()
                    .filter_map(|(j, b)| {
                        let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index.get(&c).map(|&k| (j, k))
                    })
                    .collect()
            })
            .collect::<Vec<Vec<(usize, usize)>>>();
        let mut factors = vec![Vec::new(); exps.len()];
        for (i, row) in products.iter().enumerate() {
            for &(j, k) in row {
                factors[k].push((i, j));
            }
        }
        Arc::new(TSpace {
            nvars,
            degree,
            exps,
            degrees,
            index,
            products,
            factors,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Odd time index of live variable `v` (0 ↦ 1, 1 ↦ 3, …).
    pub fn time_of(&self, v: usize) -> u32 {
        2 * v as u32 + 1
    }

    /// Live variable for odd time `t_j`, if `j` is live.
    pub fn var_of_time(&self, j: u32) -> Option<usize> {
        let v = (j as usize).checked_sub(1)? / 2;
        (j % 2 == 1 && v < self.nvars).then_some(v)
    }
}

fn compositions(d: u32, parts: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if d == 0 {
            out.push(acc.clone());
        }
        return;
    }
    if parts == 1 {
        acc.push(d);
        out.push(acc.clone());
        acc.pop();
        return;
    }
    for k in 0..=d {
        acc.push(k);
        compositions(d - k, parts - 1, acc, out);
        acc.pop();
    }
}

/// Truncated power series in the live times with exact coefficients.
#[derive(Clone)]
pub struct TSeries {
    space: Arc<TSpace>,
    order: u32,
    coeffs: Vec<Rational>,
}

impl PartialEq for TSeries {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space)
            && self.order == other.order
            && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries(order {}; ", self.order)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, &e) in self.space.exps[i].iter().enumerate() {
                if e > 0 {
                    write!(f, "·t{}^{}", self.space.time_of(v), e)?;
                }
            }
        }
        write!(f, ")")
    }
}

impl TSeries {
    pub fn zero(space: &Arc<TSpace>) -> Self {
        TSeries {
            space: space.clone(),
            order: space.degree,
            coeffs: vec![Rational::zero(); space.len()],
        }
    }

    pub fn constant(space: &Arc<TSpace>, c: Rational) -> Self {
        let mut s = Self::zero(space);
        s.coeffs[0] = c;
        s
    }

    pub fn one(space: &Arc<TSpace>) -> Self {
        Self::constant(space, int(1))
    }

    /// The live time with index `v` (`t_{2v+1}`).
    pub fn var(space: &Arc<TSpace>, v: usize) -> Self {
        let mut e = vec![0; space.nvars];
        e[v] = 1;
        let mut s = Self::zero(space);
        if let Some(i) = space.index_of(&e) {
            s.coeffs[i] = int(1);
        }
        s
    }

    pub fn space(&self) -> &Arc<TSpace> {
        &self.space
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.space
            .index_of(exps)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn set_coeff(&mut self, exps: &[u32], c: Rational) {
        let i = self
            .space
            .index_of(exps)
            .expect("monomial inside the space");
        if self.space.degrees[i] <= self.order {
            self.coeffs[i] = c;
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Lowers the recorded order, zeroing coefficients above it.
    pub fn with_order(mut self, order: u32) -> Self {
        let order = order.min(self.order);
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            if self.space.degrees[i] > order {
                *c = Rational::zero();
            }
        }
        self.order = order;
        self
    }

    /// Builds a series from a coefficient function on exponent vectors.
    pub fn from_fn(space: &Arc<TSpace>, mut f: impl FnMut(&[u32]) -> Rational) -> Self {
        TSeries {
            space: space.clone(),
            order: space.degree,
            coeffs: space.exps.iter().map(|e| f(e)).collect(),
        }
    }

    fn same_space(&self, other: &TSeries) {
        assert!(
            Arc::ptr_eq(&self.space, &other.space),
            "series from different spaces"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        self.same_space(other);
        let s = TSeries {
            space: self.space.clone(),
            order: self.order.min(other.order),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        };
        s.with_order(self.order.min(other.order))
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.same_space(other);
        let s = TSeries {
            space: self.space.clone(),
            order: self.order.min(other.order),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        };
        s.with_order(self.order.min(other.order))
    }

    pub fn scale(&self, c: &Rational) -> TSeries {
        TSeries {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> TSeries {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        self.same_space(other);
        let order = self.order.min(other.order);
        let mut out = vec![Rational::zero(); self.space.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || self.space.degrees[i] > order {
                continue;
            }
            for &(j, k) in &self.space.products[i] {
                let b = &other.coeffs[j];
                if !b.is_zero() && self.space.degrees[k] <= order {
                    out[k] += a * b;
                }
            }
        }
        TSeries {
            space: self.space.clone(),
            order,
            coeffs: out,
        }
    }

    /// `1/self`; the constant term must be nonzero.
    pub fn inv(&self) -> Result<TSeries> {
        self.div_into(&TSeries::one(&self.space))
    }

    /// `num / self`, solved degree by degree.
    pub fn div_into(&self, num: &TSeries) -> Result<TSeries> {
        self.same_space(num);
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order.min(num.order);
        let sp = &self.space;
        let mut out = vec![Rational::zero(); sp.len()];
        // monomials are stored by ascending degree, so every proper factor comes first
        for k in 0..sp.len() {
            if sp.degrees[k] > order {
                break;
            }
            let mut acc = num.coeffs[k].clone();
            for &(i, j) in &sp.factors[k] {
                if i != 0 && !self.coeffs[i].is_zero() && !out[j].is_zero() {
                    acc -= &self.coeffs[i] * &out[j];
                }
            }
            out[k] = acc / &c0;
        }
        Ok(TSeries {
            space: sp.clone(),
            order,
            coeffs: out,
        })
    }

    pub fn div(&self, den: &TSeries) -> Result<TSeries> {
        den.div_into(self)
    }

    /// `∂/∂t_{2v+1}`; the valid order drops by one.
    pub fn deriv(&self, v: usize) -> TSeries {
        let sp = &self.space;
        let mut out = vec![Rational::zero(); sp.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = sp.exps[i][v];
            if e == 0 || c.is_zero() {
                continue;
            }
            let mut lower = sp.exps[i].clone();
            lower[v] -= 1;
            out[sp.index[&lower]] = c * int(e as i64);
        }
        TSeries {
            space: sp.clone(),
            order: self.order.saturating_sub(1),
            coeffs: out,
        }
        .with_order(self.order.saturating_sub(1))
    }

    /// Compares coefficients up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &TSeries) -> bool {
        self.same_space(other);
        let order = self.order.min(other.order);
        (0..self.space.len())
            .filter(|&i| self.space.degrees[i] <= order)
            .all(|i| self.coeffs[i] == other.coeffs[i])
    }

    /// The lowest-degree nonzero coefficient, with its exponents, if any.
    pub fn first_nonzero(&self) -> Option<(Vec<u32>, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(i, c)| !c.is_zero() && self.space.degrees[*i] <= self.order)
            .map(|(i, c)| (self.space.exps[i].clone(), c.clone()))
    }
}

/// Laurent series in `z` with [`TSeries`] coefficients.
///
/// Powers `lo..=hi` are stored; everything below `lo` is unknown.
#[derive(Clone, Debug)]
pub struct ZSeries {
    space: Arc<TSpace>,
    lo: i32,
    coeffs: Vec<TSeries>,
}

impl PartialEq for ZSeries {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.lo == other.lo && self.coeffs == other.coeffs
    }
}

impl ZSeries {
    /// Zero known for powers `lo..=hi`.
    pub fn zero(space: &Arc<TSpace>, lo: i32, hi: i32) -> Self {
        assert!(lo <= hi);
        ZSeries {
            space: space.clone(),
            lo,
            coeffs: vec![TSeries::zero(space); (hi - lo + 1) as usize],
        }
    }

    pub fn constant(c: TSeries, lo: i32) -> Self {
        let mut s = Self::zero(c.space(), lo.min(0), 0);
        s.set(0, c);
        s
    }

    pub fn space(&self) -> &Arc<TSpace> {
        &self.space
    }

    /// Lowest known power.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `z^p`; `None` below the known range.
    pub fn get(&self, p: i32) -> Option<TSeries> {
        if p < self.lo {
            None
        } else if p > self.hi() {
            Some(TSeries::zero(&self.space))
        } else {
            Some(self.coeffs[(p - self.lo) as usize].clone())
        }
    }

    fn get_ref(&self, p: i32) -> Option<&TSeries> {
        if p < self.lo || p > self.hi() {
            None
        } else {
            Some(&self.coeffs[(p - self.lo) as usize])
        }
    }

    pub fn set(&mut self, p: i32, c: TSeries) {
        if p < self.lo {
            return;
        }
        while p > self.hi() {
            self.coeffs.push(TSeries::zero(&self.space));
        }
        self.coeffs[(p - self.lo) as usize] = c;
    }

    pub fn truncate_below(&self, lo: i32) -> ZSeries {
        let lo = lo.max(self.lo);
        let mut out = ZSeries::zero(&self.space, lo, self.hi().max(lo));
        for p in lo..=self.hi() {
            out.set(p, self.get(p).unwrap());
        }
        out
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().max(other.hi());
        let mut out = ZSeries::zero(&self.space, lo, hi);
        for p in lo..=hi {
            out.set(p, self.get(p).unwrap().add(&other.get(p).unwrap()));
        }
        out
    }

    pub fn sub(&self, other: &ZSeries) -> ZSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ZSeries {
        ZSeries {
            space: self.space.clone(),
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn mul_t(&self, c: &TSeries) -> ZSeries {
        ZSeries {
            space: self.space.clone(),
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|s| s.mul(c)).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i32) -> ZSeries {
        ZSeries {
            space: self.space.clone(),
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        let lo = (self.lo + other.hi()).max(other.lo + self.hi());
        let hi = self.hi() + other.hi();
        let mut out = ZSeries::zero(&self.space, lo, hi);
        for p in lo..=hi {
            let mut acc = TSeries::zero(&self.space);
            for (i, a) in self.coeffs.iter().enumerate() {
                let pa = self.lo + i as i32;
                if let Some(b) = other.get_ref(p - pa) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
            }
            out.set(p, acc);
        }
        out
    }

    /// Inverse of a series `c₀ + c₋₁z⁻¹ + …` with invertible `c₀` and no positive powers.
    pub fn inv(&self) -> Result<ZSeries> {
        if self.hi() > 0 && (1..=self.hi()).any(|p| !self.get(p).unwrap().is_zero()) {
            return Err(Error::OddPowers(
                "positive powers in an inverted z-series".into(),
            ));
        }
        let c0 = self.get(0).ok_or(Error::ZeroConstantTerm)?;
        let c0inv = c0.inv()?;
        let mut out = ZSeries::zero(&self.space, self.lo, 0);
        out.set(0, c0inv.clone());
        for k in 1..=(-self.lo) {
            let mut acc = TSeries::zero(&self.space);
            for j in 1..=k {
                let a = self.get(-j).unwrap();
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&out.get(j - k).unwrap()));
                }
            }
            out.set(-k, acc.mul(&c0inv).neg());
        }
        Ok(out)
    }

    pub fn div(&self, den: &ZSeries) -> Result<ZSeries> {
        Ok(self.mul(&den.inv()?))
    }

    /// `log(self)` for `self = 1 + c₋₁z⁻¹ + …` with exact constant `1`.
    pub fn log(&self) -> Result<ZSeries> {
        let one = TSeries::one(&self.space);
        let c0 = self.get(0).ok_or(Error::ZeroConstantTerm)?;
        if !c0.agrees_with(&one) || (1..=self.hi()).any(|p| !self.get(p).unwrap().is_zero()) {
            return Err(Error::Parse(
                "log needs a series of the form 1 + O(1/z)".into(),
            ));
        }
        // n·L_n = n·X_n − Σ_{k<n} k·L_k·X_{n−k}, indexing z^{−n}
        let mut out = ZSeries::zero(&self.space, self.lo, 0);
        for n in 1..=(-self.lo) {
            let mut acc = self.get(-n).unwrap().scale(&int(n as i64));
            for k in 1..n {
                let l = out.get(-k).unwrap();
                let x = self.get(k - n).unwrap();
                if !l.is_zero() && !x.is_zero() {
                    acc = acc.sub(&l.mul(&x).scale(&int(k as i64)));
                }
            }
            out.set(-n, acc.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(out)
    }

    /// `∂/∂t_{2v+1}` applied coefficientwise.
    pub fn deriv_t(&self, v: usize) -> ZSeries {
        ZSeries {
            space: self.space.clone(),
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|s| s.deriv(v)).collect(),
        }
    }

    /// Smallest coefficient order among the known powers.
    pub fn t_order(&self) -> u32 {
        self.coeffs.iter().map(TSeries::order).min().unwrap_or(0)
    }

    /// Powers with nonzero coefficient satisfying `pred`.
    pub fn nonzero_powers(&self, pred: impl Fn(i32) -> bool) -> Vec<i32> {
        (self.lo..=self.hi())
            .filter(|&p| pred(p) && !self.get(p).unwrap().is_zero())
            .collect()
    }

    /// Compares on the common known range of powers and orders.
    pub fn agrees_with(&self, other: &ZSeries) -> bool {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).all(|p| self.get(p).unwrap().agrees_with(&other.get(p).unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn space_counts_monomials() {
        let sp = TSpace::new(3, 8);
        assert_eq!(sp.len(), 165);
        assert_eq!(sp.exponents(0), &[0, 0, 0]);
    }

    #[test]
    fn inverse_of_one_plus_t() {
        let sp = TSpace::new(2, 6);
        let t1 = TSeries::var(&sp, 0);
        let a = TSeries::one(&sp).add(&t1);
        let inv = a.inv().unwrap();
        for k in 0..=6u32 {
            let expect = if k % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(inv.coeff(&[k, 0]), expect);
        }
        assert!(a.mul(&inv).agrees_with(&TSeries::one(&sp)));
    }

    #[test]
    fn division_round_trip() {
        let sp = TSpace::new(3, 5);
        let a = TSeries::from_fn(&sp, |e| {
            rat(e[0] as i64 + 1, e[1] as i64 + 2 * e[2] as i64 + 1)
        });
        let b = TSeries::from_fn(&sp, |e| rat(3 - e[2] as i64, 1 + e[0] as i64));
        let q = a.div(&b).unwrap();
        assert!(q.mul(&b).agrees_with(&a));
        assert!(TSeries::zero(&sp).inv().is_err());
    }

    #[test]
    fn derivative_drops_order() {
        let sp = TSpace::new(2, 4);
        let t3 = TSeries::var(&sp, 1);
        let p = t3.mul(&t3).mul(&t3);
        let d = p.deriv(1);
        assert_eq!(d.order(), 3);
        assert_eq!(d.coeff(&[0, 2]), int(3));
    }

    #[test]
    fn z_series_log_of_geometric() {
        // log(1 − a/z) = −Σ aⁿ/(n zⁿ)
        let sp = TSpace::new(1, 4);
        let a = TSeries::var(&sp, 0);
        let mut s = ZSeries::zero(&sp, -6, 0);
        s.set(0, TSeries::one(&sp));
        s.set(-1, a.neg());
        let l = s.log().unwrap();
        let mut pow = TSeries::one(&sp);
        for n in 1..=6 {
            pow = pow.mul(&a);
            assert!(l
                .get(-n)
                .unwrap()
                .agrees_with(&pow.scale(&rat(-1, n as i64))));
        }
        let prod = s.mul(&s.inv().unwrap());
        assert!(prod.agrees_with(&ZSeries::constant(TSeries::one(&sp), -6)));
    }

    #[test]
    fn product_tracks_known_range() {
        let sp = TSpace::new(1, 2);
        let mut a = ZSeries::zero(&sp, -4, 1);
        a.set(1, TSeries::one(&sp));
        let b = ZSeries::constant(TSeries::one(&sp), -4);
        assert_eq!(a.mul(&b).lo(), -3);
    }
}
