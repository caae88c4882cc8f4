//! Boson–fermion correspondence on the charge `−1` sector.
//!
//! `S̄(z) = exp(−Σ J₂ₖ z^{−2k}/k)` gives the triangular change of variables
//! `Q[J] ≅ Q[S̄]`. Matrix elements `⟨−1|w T|−1⟩` are computed two ways: as
//! Wick determinants of the two-point coefficients `ω̄`, and by brute-force
//! expansion of `T = exp(−Σ J₂ₖ h₋₂ₖ/k)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::word::{DualWord, Mode};
use crate::algebra::{determinant, int, Catalog, GradedPoly, Rational};
use crate::error::{Error, Result};

/// `S̄₂ₙ` as polynomials in `J` for `n = 0..=nmax` (index `n`, degree `2n`).
pub fn bar_s_series(nmax: usize) -> Vec<GradedPoly> {
    let j = |k: usize| GradedPoly::var(Catalog::Boson, 2 * k as u32);
    let mut s = vec![GradedPoly::one(Catalog::Boson)];
    // n·S̄ₙ = −Σ_{k=1}^{n} J_k S̄_{n−k}  (indices in z^{−2})
    for n in 1..=nmax {
        let mut acc = GradedPoly::zero(Catalog::Boson);
        for k in 1..=n {
            acc -= &(&j(k) * &s[n - k]);
        }
        s.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
    }
    s
}

/// `J₂ₙ` as polynomials in `S̄` for `n = 0..=nmax` (entry `0` is unused and zero).
pub fn j_in_bar_s(nmax: usize) -> Vec<GradedPoly> {
    let sb = |k: usize| GradedPoly::var(Catalog::BarS, 2 * k as u32);
    let mut j = vec![GradedPoly::zero(Catalog::BarS)];
    // Jₙ = −n S̄ₙ − Σ_{k=1}^{n−1} J_k S̄_{n−k}
    for n in 1..=nmax {
        let mut acc = sb(n).scale(&int(-(n as i64)));
        for k in 1..n {
            acc -= &(&j[k] * &sb(n - k));
        }
        j.push(acc);
    }
    j
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    JToBarS,
    BarSToJ,
}

/// Exact triangular substitution between the `J` and `S̄` presentations.
pub fn j_bar_s_convert(p: &GradedPoly, direction: Direction) -> Result<GradedPoly> {
    let (from, to) = match direction {
        Direction::JToBarS => (Catalog::Boson, Catalog::BarS),
        Direction::BarSToJ => (Catalog::BarS, Catalog::Boson),
    };
    if p.catalog() != from {
        return Err(Error::CatalogMismatch {
            left: p.catalog(),
            right: from,
        });
    }
    let nmax = p.generators().last().map_or(0, |&g| g as usize / 2);
    let table = match direction {
        Direction::JToBarS => j_in_bar_s(nmax),
        Direction::BarSToJ => bar_s_series(nmax),
    };
    Ok(p.substitute(to, &mut |id| table[id as usize / 2].clone()))
}

/// `ω̄` coefficients, `1/S̄` coefficients and `S̄` in `J`, up to a degree bound.
#[derive(Clone, Debug)]
pub struct FockTables {
    max_degree: u32,
    /// `rbar[n]`: coefficient of `z^{−2n}` in `1/S̄(z)`, in `S̄` variables.
    rbar: Vec<GradedPoly>,
    bar_s_in_j: Vec<GradedPoly>,
    /// `omega[(i, j)] = ω̄_{i,j}` for odd `i, j ≥ 1` with `i + j ≤ max_degree`.
    omega: BTreeMap<(u32, u32), GradedPoly>,
}

impl FockTables {
    pub fn new(max_degree: u32) -> FockTables {
        let nmax = max_degree as usize / 2 + 1;
        let sb = |k: usize| {
            if k == 0 {
                GradedPoly::one(Catalog::BarS)
            } else {
                GradedPoly::var(Catalog::BarS, 2 * k as u32)
            }
        };
        let mut rbar = vec![GradedPoly::one(Catalog::BarS)];
        for n in 1..=nmax {
            let mut acc = GradedPoly::zero(Catalog::BarS);
            for j in 1..=n {
                acc -= &(&sb(j) * &rbar[n - j]);
            }
            rbar.push(acc);
        }
        let mut omega = BTreeMap::new();
        for i in (1..max_degree).step_by(2) {
            for j in (1..=max_degree - i).step_by(2) {
                let (nn, mm) = ((i as usize).div_ceil(2), (j as usize).div_ceil(2));
                let mut acc = GradedPoly::zero(Catalog::BarS);
                for k in 0..nn {
                    acc += &(&sb(mm + k) * &rbar[nn - 1 - k]);
                }
                omega.insert((i, j), acc);
            }
        }
        FockTables {
            max_degree,
            rbar,
            bar_s_in_j: bar_s_series(nmax),
            omega,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn rbar(&self, n: usize) -> Option<&GradedPoly> {
        self.rbar.get(n)
    }

    /// `ω̄_{i,j}`: coefficient of `z^{−i−1}w^{−j−1}` in `(S̄(w)/S̄(z) − 1)/(z² − w²)`.
    pub fn two_point(&self, i: u32, j: u32) -> Result<GradedPoly> {
        if i.is_multiple_of(2) || j.is_multiple_of(2) {
            return Err(Error::BadIndex(
                if i.is_multiple_of(2) { i } else { j } as i64
            ));
        }
        self.omega
            .get(&(i, j))
            .cloned()
            .ok_or(Error::InsufficientDepth {
                needed: i + j,
                available: self.max_degree,
            })
    }

    /// `⟨−1|w T|−1⟩` in `S̄` variables, as `(−1)^{k(k−1)/2} det ω̄(aₚ, −r_q)`.
    pub fn wick_bar_s(&self, w: &DualWord) -> Result<GradedPoly> {
        if w.vac() != -1 || !w.is_canonical() {
            return Err(Error::MalformedIndexSet(format!(
                "Wick evaluation needs a canonical charge −1 word, got {w}"
            )));
        }
        let k = w.parts().len();
        let m: Vec<Vec<GradedPoly>> = w
            .parts()
            .iter()
            .map(|&a| {
                w.holes()
                    .iter()
                    .map(|&r| self.two_point(a as u32, (-r) as u32))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let det = determinant(Catalog::BarS, &m);
        Ok(if (k * (k.saturating_sub(1)) / 2) % 2 == 1 {
            -det
        } else {
            det
        })
    }

    /// `⟨−1|w T|−1⟩` in `J` variables.
    pub fn t_matrix_element(&self, w: &DualWord) -> Result<GradedPoly> {
        let p = self.wick_bar_s(w)?;
        Ok(p.substitute(Catalog::Boson, &mut |id| {
            self.bar_s_in_j[id as usize / 2].clone()
        }))
    }
}

/// Right action of `h₋₂ₖ = Σₙ ψₙψ*ₙ₊₂ₖ` on a charge-neutral word.
fn h_apply(w: &DualWord, k: i32) -> Vec<(i32, DualWord)> {
    let lo = w
        .holes()
        .first()
        .copied()
        .unwrap_or(w.vac())
        .min(w.parts().last().copied().unwrap_or(w.vac() + 2) - 2 * k);
    let hi = w.parts().first().copied().unwrap_or(w.vac() + 2);
    let mut out = Vec::new();
    let mut n = if lo % 2 == 0 { lo - 1 } else { lo };
    while n <= hi {
        if let Some(r) = w.apply_all(&[Mode::psi(n), Mode::psi_star(n + 2 * k)]) {
            out.push(r);
        }
        n += 2;
    }
    out
}

/// Independent evaluation of `⟨−1|w T|−1⟩`: expands the exponential to
/// `J`-degree `jorder` and applies each `h₋₂ₖ` by normal ordering.
pub fn t_matrix_element_oracle(w: &DualWord, jorder: u32) -> GradedPoly {
    assert_eq!(w.vac(), -1, "oracle works on the charge −1 sector");
    let mut total = GradedPoly::zero(Catalog::Boson);
    let mut term: BTreeMap<DualWord, GradedPoly> = BTreeMap::new();
    term.insert(w.clone(), GradedPoly::one(Catalog::Boson));
    let vacuum = DualWord::vacuum(-1);
    for m in 0..=(jorder / 2) {
        if let Some(c) = term.get(&vacuum) {
            total += c;
        }
        // term ← term · X / (m + 1),  X = −Σ J₂ₖ h₋₂ₖ / k
        let mut next: BTreeMap<DualWord, GradedPoly> = BTreeMap::new();
        for (word, c) in &term {
            for k in 1..=(word.degree() / 2) as i32 {
                let coeff = GradedPoly::var(Catalog::Boson, 2 * k as u32).scale(&Rational::new(
                    (-1).into(),
                    (k as i64 * (m as i64 + 1)).into(),
                ));
                for (s, w2) in h_apply(word, k) {
                    let add = (&coeff * c).scale(&int(s as i64));
                    let entry = next
                        .entry(w2)
                        .or_insert_with(|| GradedPoly::zero(Catalog::Boson));
                    *entry += &add;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        term = next;
        if term.is_empty() {
            break;
        }
    }
    total
}

/// Coefficient check used by the character tests: `true` when the
/// polynomial has no terms outside degree `d`.
pub fn is_homogeneous_of(p: &GradedPoly, d: u32) -> bool {
    p.terms().all(|(m, c)| c.is_zero() || m.degree() == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::fock::word::basis_enum;

    fn j(k: u32) -> GradedPoly {
        GradedPoly::var(Catalog::Boson, k)
    }

    fn sb(k: u32) -> GradedPoly {
        GradedPoly::var(Catalog::BarS, k)
    }

    #[test]
    fn bar_s_leading_terms() {
        let s = bar_s_series(3);
        assert_eq!(s[0], GradedPoly::one(Catalog::Boson));
        assert_eq!(s[1], -j(2));
        assert_eq!(
            s[2],
            &(&j(2) * &j(2)).scale(&rat(1, 2)) - &j(4).scale(&rat(1, 2))
        );
        // the coefficient of J₂ₙ in S̄₂ₙ is −1/n
        assert_eq!(
            s[3].coeff(&crate::algebra::Monomial::var(Catalog::Boson, 6)),
            rat(-1, 3)
        );
    }

    #[test]
    fn conversions() {
        assert_eq!(j_bar_s_convert(&j(2), Direction::JToBarS).unwrap(), -sb(2));
        assert_eq!(
            j_bar_s_convert(&(&sb(2) * &sb(2)), Direction::BarSToJ).unwrap(),
            &j(2) * &j(2)
        );
        let p = &(&j(2).pow(3) * &j(4)) - &j(10).scale(&rat(2, 3));
        let there = j_bar_s_convert(&p, Direction::JToBarS).unwrap();
        assert_eq!(j_bar_s_convert(&there, Direction::BarSToJ).unwrap(), p);
        assert!(j_bar_s_convert(&p, Direction::BarSToJ).is_err());
    }

    #[test]
    fn two_point_examples() {
        let t = FockTables::new(8);
        assert_eq!(t.two_point(1, 1).unwrap(), sb(2));
        assert_eq!(t.two_point(1, 3).unwrap(), sb(4));
        assert_eq!(t.two_point(3, 1).unwrap(), &sb(4) - &(&sb(2) * &sb(2)));
        assert!(t.two_point(7, 3).is_err());
    }

    #[test]
    fn matrix_elements() {
        let t = FockTables::new(10);
        let vac = DualWord::vacuum(-1);
        assert_eq!(
            t.t_matrix_element(&vac).unwrap(),
            GradedPoly::one(Catalog::Boson)
        );
        assert_eq!(
            t_matrix_element_oracle(&vac, 0),
            GradedPoly::one(Catalog::Boson)
        );
        let w = &basis_enum(0, 2)[0];
        assert_eq!(t.wick_bar_s(w).unwrap(), sb(2));
        assert_eq!(t_matrix_element_oracle(w, 2), -j(2));
    }

    #[test]
    fn wick_matches_oracle_through_degree_eight() {
        let t = FockTables::new(8);
        for d in 0..=8 {
            for w in basis_enum(0, d) {
                let wick = t.t_matrix_element(&w).unwrap();
                assert_eq!(wick, t_matrix_element_oracle(&w, d as u32), "{w}");
                assert!(is_homogeneous_of(&wick, d as u32));
            }
        }
    }
}
