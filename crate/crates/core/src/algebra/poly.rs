//! Sparse graded polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{coefficient_prefix, format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// Generator families. Each fixes which ids are legal and how they are graded.
///
/// Ids are chosen so that embeddings between families are the identity on ids:
/// `Jet` uses `k` for `u^(k)`, every other family uses the grade itself
/// (`∂ᵢ` is id `i`, `J₂ₖ` and `S̄₂ₖ` are id `2k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Catalog {
    /// `u^(k)`, grade `k + 2`.
    Jet,
    /// `∂ᵢ`, `i` odd, grade `i`.
    Flow,
    /// `J₂ₖ`, grade `2k`.
    Boson,
    /// `S̄₂ₖ`, grade `2k`.
    BarS,
    /// `∂ᵢ` on odd ids together with `S̄₂ₖ` on even ids; the ring `D ⊗ Q[S̄]`.
    FlowBarS,
}

impl Catalog {
    pub fn grade(self, id: u32) -> u32 {
        match self {
            Catalog::Jet => id + 2,
            _ => id,
        }
    }

    pub fn is_valid(self, id: u32) -> bool {
        match self {
            Catalog::Jet => true,
            Catalog::Flow => id % 2 == 1,
            Catalog::Boson | Catalog::BarS => id > 0 && id.is_multiple_of(2),
            Catalog::FlowBarS => id > 0,
        }
    }

    pub fn name(self, id: u32) -> String {
        match self {
            Catalog::Jet => match id {
                0 => "u".into(),
                1 => "u′".into(),
                2 => "u″".into(),
                3 => "u‴".into(),
                4 => "u⁗".into(),
                k => format!("u⁽{}⁾", superscript(k)),
            },
            Catalog::Flow => format!("∂{}", subscript(id)),
            Catalog::Boson => format!("J{}", subscript(id)),
            Catalog::BarS => format!("S̄{}", subscript(id)),
            Catalog::FlowBarS if id % 2 == 1 => format!("∂{}", subscript(id)),
            Catalog::FlowBarS => format!("S{}", subscript(id)),
        }
    }
}

fn map_digits(n: u32, table: &[char; 10]) -> String {
    n.to_string()
        .chars()
        .map(|c| table[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn subscript(n: u32) -> String {
    map_digits(n, &['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'])
}

pub(crate) fn superscript(n: u32) -> String {
    map_digits(n, &['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'])
}

/// A power product. Ordered by total degree, then lexicographically on the
/// sorted `(id, exponent)` list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            degree: 0,
            exps: Vec::new(),
        }
    }

    pub fn var(catalog: Catalog, id: u32) -> Self {
        Self::from_exps(catalog, [(id, 1)])
    }

    /// Builds a monomial from arbitrary `(id, exponent)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_exps(catalog: Catalog, exps: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut merged: BTreeMap<u32, u32> = BTreeMap::new();
        for (id, e) in exps {
            assert!(catalog.is_valid(id), "generator {id} not in {catalog:?}");
            *merged.entry(id).or_default() += e;
        }
        let exps: Vec<(u32, u32)> = merged.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = exps.iter().map(|&(id, e)| catalog.grade(id) * e).sum();
        Monomial { degree, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, id: u32) -> u32 {
        self.exps
            .binary_search_by_key(&id, |&(i, _)| i)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    /// Lowers the exponent of `id` by one. `None` if `id` is absent.
    pub fn lower(&self, catalog: Catalog, id: u32) -> Option<Monomial> {
        let k = self.exps.binary_search_by_key(&id, |&(i, _)| i).ok()?;
        let mut exps = self.exps.clone();
        if exps[k].1 == 1 {
            exps.remove(k);
        } else {
            exps[k].1 -= 1;
        }
        Some(Monomial {
            degree: self.degree - catalog.grade(id),
            exps,
        })
    }

    /// Splits off generators satisfying `pred`: `(matching, rest)`.
    pub fn split(&self, catalog: Catalog, pred: impl Fn(u32) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.exps.iter().partition(|&&(id, _)| pred(id));
        (
            Monomial::from_exps(catalog, a),
            Monomial::from_exps(catalog, b),
        )
    }

    pub fn render(&self, catalog: Catalog) -> String {
        let mut s = String::new();
        for &(id, e) in &self.exps {
            s.push_str(&catalog.name(id));
            if e > 1 {
                s.push_str(&superscript(e));
            }
        }
        s
    }
}

/// Element of a polynomial ring over one generator [`Catalog`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    catalog: Catalog,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(catalog: Catalog) -> Self {
        GradedPoly {
            catalog,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(catalog: Catalog) -> Self {
        Self::constant(catalog, int(1))
    }

    pub fn constant(catalog: Catalog, c: Rational) -> Self {
        Self::monomial(catalog, Monomial::one(), c)
    }

    pub fn var(catalog: Catalog, id: u32) -> Self {
        Self::monomial(catalog, Monomial::var(catalog, id), int(1))
    }

    pub fn monomial(catalog: Catalog, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(catalog);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        catalog: Catalog,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(catalog);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn catalog(&self) -> Catalog {
        self.catalog
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &GradedPoly) -> Result<()> {
        if self.catalog == other.catalog {
            Ok(())
        } else {
            Err(Error::CatalogMismatch {
                left: self.catalog,
                right: other.catalog,
            })
        }
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check(other)?;
        let mut out = GradedPoly::zero(self.catalog);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(self.catalog);
        }
        GradedPoly {
            catalog: self.catalog,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(self.catalog);
        }
        GradedPoly {
            catalog: self.catalog,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut out = GradedPoly::one(self.catalog);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The sum of the terms of exact degree `d`.
    pub fn grade_component(&self, d: u32) -> GradedPoly {
        GradedPoly {
            catalog: self.catalog,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(d)` if every term has degree `d` (the zero polynomial yields `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.keys().next()?.degree();
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Substitutes every generator by a polynomial in `target`.
    pub fn substitute(
        &self,
        target: Catalog,
        image: &mut dyn FnMut(u32) -> GradedPoly,
    ) -> GradedPoly {
        let mut cache: BTreeMap<(u32, u32), GradedPoly> = BTreeMap::new();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(target, c.clone());
            for &(id, e) in m.exps() {
                let p = match cache.get(&(id, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = image(id).pow(e);
                        cache.insert((id, e), p.clone());
                        p
                    }
                };
                t = &t * &p;
            }
            out += &t;
        }
        out
    }

    /// Applies the derivation sending each generator `x` to `image(x)`.
    pub fn derive(&self, image: &mut dyn FnMut(u32) -> GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero(self.catalog);
        let mut cache: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            for &(id, e) in m.exps() {
                let dx = cache.entry(id).or_insert_with(|| image(id));
                if dx.is_zero() {
                    continue;
                }
                let rest = m.lower(self.catalog, id).expect("generator present");
                out += &dx.mul_monomial(&rest, &(c * int(e as i64)));
            }
        }
        out
    }

    /// Partial derivative with respect to generator `id`.
    pub fn partial(&self, id: u32) -> GradedPoly {
        let mut out = GradedPoly::zero(self.catalog);
        for (m, c) in &self.terms {
            let e = m.exponent(id);
            if e > 0 {
                out.add_term(m.lower(self.catalog, id).unwrap(), c * int(e as i64));
            }
        }
        out
    }

    /// Generators that occur in some term.
    pub fn generators(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.exps().iter().map(|&(i, _)| i))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Relabels into another catalog with identical ids (e.g. `Flow` into `FlowBarS`).
    pub fn embed(&self, target: Catalog) -> GradedPoly {
        GradedPoly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                (
                    Monomial::from_exps(target, m.exps().iter().copied()),
                    c.clone(),
                )
            }),
        )
    }

    pub fn to_canonical(&self) -> CanonicalPoly {
        CanonicalPoly {
            catalog: self.catalog,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| CanonicalTerm {
                    monomial: m.exps().iter().map(|&(i, e)| [i, e]).collect(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_canonical(c: &CanonicalPoly) -> Result<GradedPoly> {
        let mut p = GradedPoly::zero(c.catalog);
        for t in &c.terms {
            for &[id, e] in &t.monomial {
                if e == 0 || !c.catalog.is_valid(id) {
                    return Err(Error::Parse(format!("bad generator [{id}, {e}]")));
                }
            }
            let coeff = parse_rational(&t.coeff)?;
            if coeff.is_zero() {
                return Err(Error::Parse("zero coefficient stored".into()));
            }
            p.add_term(
                Monomial::from_exps(c.catalog, t.monomial.iter().map(|&[i, e]| (i, e))),
                coeff,
            );
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_canonical()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<GradedPoly> {
        let c: CanonicalPoly = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_canonical(&c)
    }
}

/// All monomials of exact degree `d` in `catalog`, ascending canonical order.
pub fn monomials_of_degree(catalog: Catalog, d: u32) -> Vec<Monomial> {
    let ids: Vec<u32> = (0..=d)
        .filter(|&id| catalog.is_valid(id) && catalog.grade(id) <= d && catalog.grade(id) > 0)
        .collect();
    let mut out = Vec::new();
    fn rec(
        catalog: Catalog,
        ids: &[u32],
        rem: u32,
        acc: &mut Vec<(u32, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if rem == 0 {
            out.push(Monomial::from_exps(catalog, acc.iter().copied()));
            return;
        }
        let Some((&id, rest)) = ids.split_first() else {
            return;
        };
        let g = catalog.grade(id);
        let mut e = 0;
        loop {
            if e > 0 {
                acc.push((id, e));
            }
            rec(catalog, rest, rem - e * g, acc, out);
            if e > 0 {
                acc.pop();
            }
            e += 1;
            if e * g > rem {
                break;
            }
        }
    }
    rec(catalog, &ids, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Determinant by cofactor expansion along the first row; meant for the
/// small matrices of Wick and ζ minors. The empty determinant is 1.
pub fn determinant(catalog: Catalog, m: &[Vec<GradedPoly>]) -> GradedPoly {
    let n = m.len();
    match n {
        0 => GradedPoly::one(catalog),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = GradedPoly::zero(catalog);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<GradedPoly>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(catalog, &minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// Serialized form: terms in canonical order, coefficients as `num/den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPoly {
    pub catalog: Catalog,
    pub terms: Vec<CanonicalTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalTerm {
    pub monomial: Vec<[u32; 2]>,
    pub coeff: String,
}

impl fmt::Display for GradedPoly {
    /// Highest terms first, e.g. `−(1/8)u″ + (3/8)u²`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = m.render(self.catalog);
            let prefix = coefficient_prefix(&c.abs(), !m.is_one());
            if k == 0 {
                if c.is_negative() {
                    write!(f, "−")?;
                }
            } else if c.is_negative() {
                write!(f, " − ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{prefix}{body}")?;
        }
        Ok(())
    }
}

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        self.check(rhs).expect("catalog mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &GradedPoly) {
        self.check(rhs).expect("catalog mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("catalog mismatch")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("catalog mismatch")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(mut self, rhs: GradedPoly) -> GradedPoly {
        self += &rhs;
        self
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(mut self, rhs: GradedPoly) -> GradedPoly {
        self -= &rhs;
        self
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use proptest::prelude::*;

    fn u(k: u32) -> GradedPoly {
        GradedPoly::var(Catalog::Jet, k)
    }

    #[test]
    fn grading_is_additive() {
        let p = &u(0) * &u(0);
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert_eq!(p.to_string(), "u²");
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = &u(2) + &u(0).scale(&int(3));
        assert_eq!(&p + &GradedPoly::zero(Catalog::Jet), p);
    }

    #[test]
    fn square_of_half_u() {
        let p = u(0).scale(&rat(-1, 2));
        assert_eq!(p.pow(2), (&u(0) * &u(0)).scale(&rat(1, 4)));
    }

    #[test]
    fn catalog_mismatch_is_an_error() {
        let a = u(0);
        let b = GradedPoly::var(Catalog::Flow, 1);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::CatalogMismatch { .. })
        ));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn grade_component_projects() {
        let p = &(&u(0) * &u(0)) + &u(2);
        assert_eq!(p.grade_component(4), p);
        assert!(u(0).grade_component(3).is_zero());
        let mixed = &p + &u(1);
        assert_eq!(&mixed.grade_component(4) + &mixed.grade_component(3), mixed);
    }

    #[test]
    fn display_orders_high_terms_first() {
        let s4 = &u(2).scale(&rat(-1, 8)) + &(&u(0) * &u(0)).scale(&rat(3, 8));
        assert_eq!(s4.to_string(), "−(1/8)u″ + (3/8)u²");
        let c = GradedPoly::constant(Catalog::Flow, rat(-3, 2));
        assert_eq!(c.to_string(), "−3/2");
    }

    #[test]
    fn monomial_counts_are_partition_numbers() {
        // parts ≥ 2, odd parts, even parts, all parts
        let count = |c, d| monomials_of_degree(c, d).len();
        assert_eq!(
            (0..=6).map(|d| count(Catalog::Jet, d)).collect::<Vec<_>>(),
            [1, 0, 1, 1, 2, 2, 4]
        );
        assert_eq!(
            (0..=6).map(|d| count(Catalog::Flow, d)).collect::<Vec<_>>(),
            [1, 1, 1, 2, 2, 3, 4]
        );
        assert_eq!(count(Catalog::BarS, 8), 5);
        assert_eq!(count(Catalog::FlowBarS, 12), 77);
        let ms = monomials_of_degree(Catalog::Jet, 6);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_json_shape() {
        let p = u(0).scale(&rat(-1, 2));
        assert_eq!(
            p.to_json(),
            r#"{"catalog":"jet","terms":[{"monomial":[[0,1]],"coeff":"-1/2"}]}"#
        );
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        prop::collection::vec(
            (
                prop::collection::vec((0u32..4, 1u32..3), 0..3),
                -5i64..6,
                1i64..4,
            ),
            0..5,
        )
        .prop_map(|ts| {
            GradedPoly::from_terms(
                Catalog::Jet,
                ts.into_iter()
                    .map(|(e, n, d)| (Monomial::from_exps(Catalog::Jet, e), rat(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&(&a + &b) - &b - a.clone()).is_zero());
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let back = GradedPoly::from_json(&a.to_json()).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_json(), a.to_json());
        }

        #[test]
        fn products_of_homogeneous_are_homogeneous(a in arb_poly(), b in arb_poly()) {
            if let (Some(d1), Some(d2)) = (a.homogeneous_degree(), b.homogeneous_degree()) {
                let p = &a * &b;
                prop_assert!(p.is_zero() || p.homogeneous_degree() == Some(d1 + d2));
            }
            let total: GradedPoly = (0..=40).map(|d| a.grade_component(d))
                .fold(GradedPoly::zero(Catalog::Jet), |s, x| s + x);
            prop_assert_eq!(total, a);
        }
    }
}
