//! `Q`, `C` and the tilde change of fermions, acting on `D ⊗ H*`.
//!
//! All operator sums are infinite but locally finite: on a word over `⟨v|`
//! only finitely many modes survive, and the bounds below enumerate exactly
//! those.

use std::collections::BTreeMap;
use std::sync::Mutex;

use super::{del, p_nl, DFockVector, DOp};
use crate::algebra::{Catalog, GradedPoly, Rational};
use crate::fock::{DualWord, Mode, ModeKind};

/// `Q`, `C` and the tilde basis for a fixed linear coefficient `c0`.
#[derive(Debug)]
pub struct FockOps {
    c0: Rational,
    /// `inv_rows[a][k] = (D⁻¹)_{a, a−2k}` for `a > 0`, extended on demand.
    inv_rows: Mutex<BTreeMap<i32, Vec<DOp>>>,
}

impl Clone for FockOps {
    fn clone(&self) -> Self {
        FockOps {
            c0: self.c0.clone(),
            inv_rows: Mutex::new(self.inv_rows.lock().expect("poisoned").clone()),
        }
    }
}

/// Smallest mode index that can act on `w` without vanishing as a `ψ`:
/// either a creator above the vacuum or the partner of a hole.
fn lowest_psi(w: &DualWord) -> i32 {
    let v = w.vac() + 2;
    w.holes().first().map_or(v, |&h| h.min(v))
}

/// Largest index that can act on `w` as a `ψ*`.
fn highest_psi_star(w: &DualWord) -> i32 {
    w.parts().first().map_or(w.vac(), |&p| p.max(w.vac()))
}

fn one() -> DOp {
    GradedPoly::one(Catalog::Flow)
}

fn push(map: &mut BTreeMap<DualWord, DOp>, w: DualWord, p: DOp) {
    if p.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(c) => {
            *c += &p;
            if c.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, p);
        }
    }
}

fn signed(p: DOp, s: i32) -> DOp {
    if s < 0 {
        -p
    } else {
        p
    }
}

impl FockOps {
    pub fn new(c0: Rational) -> FockOps {
        FockOps {
            c0,
            inv_rows: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn c0(&self) -> &Rational {
        &self.c0
    }

    /// Entry `d_{ab}` of `ψ̃_a = Σ_b d_{ab} ψ_b`.
    pub fn d_entry(&self, a: i32, b: i32) -> DOp {
        if a < 0 || b > a {
            return if a == b {
                one()
            } else {
                GradedPoly::zero(Catalog::Flow)
            };
        }
        if a == b {
            return GradedPoly::constant(
                Catalog::Flow,
                &self.c0 * Rational::from_integer(a.into()),
            );
        }
        if (a - b) % 2 != 0 {
            return GradedPoly::zero(Catalog::Flow);
        }
        -p_nl(((a + 1) / 2) as u32, ((a - b) / 2) as u32)
    }

    /// Entry `(D⁻¹)_{ab}`, so that `ψ_a = Σ_b (D⁻¹)_{ab} ψ̃_b`.
    pub fn d_inv_entry(&self, a: i32, b: i32) -> DOp {
        if b > a || (a - b) % 2 != 0 {
            return GradedPoly::zero(Catalog::Flow);
        }
        if a < 0 {
            return if a == b {
                one()
            } else {
                GradedPoly::zero(Catalog::Flow)
            };
        }
        let k = ((a - b) / 2) as usize;
        let mut rows = self.inv_rows.lock().expect("poisoned");
        let row = rows.entry(a).or_default();
        while row.len() <= k {
            // Σ_{b ≤ c ≤ a} (D⁻¹)_{ac} d_{cb} = δ_{ab}, solved for the c = b term
            let b = a - 2 * row.len() as i32;
            let dbb = self.d_entry(b, b).constant_term();
            if row.is_empty() {
                row.push(GradedPoly::constant(
                    Catalog::Flow,
                    Rational::from_integer(1.into()) / dbb,
                ));
                continue;
            }
            let mut acc = GradedPoly::zero(Catalog::Flow);
            for (j, x) in row.iter().enumerate() {
                let c = a - 2 * j as i32;
                if c < 0 {
                    continue;
                }
                acc += &(x * &self.d_entry(c, b));
            }
            row.push(acc.scale(&(-Rational::from_integer(1.into()) / dbb)));
        }
        row[k].clone()
    }

    /// `v · Q`, `Q = Σ ∂_{2n−1} ψ_{−(2n−1)}`; the same formula holds in the tilde basis.
    pub fn q_apply(&self, v: &DFockVector) -> DFockVector {
        let mut out = DFockVector::zero(v.is_tilde());
        for (w, p) in v.terms() {
            let mmax = (-w.vac() - 2).max(w.holes().first().map_or(-1, |&h| -h));
            for m in (1..=mmax).step_by(2) {
                if let Some((s, w2)) = w.apply(Mode::psi(-m)) {
                    out.add_rebased(&w2, &signed(p * &del(m as u32), s));
                }
            }
        }
        out
    }

    /// `v · C` in the plain basis,
    /// `C = Σₙ (c0(2n−1)ψ_{2n−1} − Σₗ P_{n,l} ψ_{2n−1−2l}) ψ_{−(2n−1)}`.
    pub fn c_apply(&self, v: &DFockVector) -> DFockVector {
        assert!(!v.is_tilde(), "c_apply works in the plain basis");
        let mut out = DFockVector::zero(false);
        for (w, p) in v.terms() {
            let mmax = (-w.vac() - 2).max(w.holes().first().map_or(-1, |&h| -h));
            let low = lowest_psi(w);
            for m in (1..=mmax).step_by(2) {
                let mut a = m;
                while a >= low {
                    let coeff = self.d_entry(m, a);
                    if !coeff.is_zero() {
                        if let Some((s, w2)) = w.apply_all(&[Mode::psi(a), Mode::psi(-m)]) {
                            out.add_rebased(&w2, &signed(p * &coeff, s));
                        }
                    }
                    a -= 2;
                }
            }
        }
        out
    }

    /// `v · C` in the tilde basis, where `C = Σ ψ̃_{2n−1} ψ̃_{−(2n−1)}`.
    pub fn c_apply_tilde(&self, v: &DFockVector) -> DFockVector {
        assert!(v.is_tilde(), "c_apply_tilde works in the tilde basis");
        let mut out = DFockVector::zero(true);
        for (w, p) in v.terms() {
            let mmax = (-w.vac() - 2).max(w.holes().first().map_or(-1, |&h| -h));
            for m in (1..=mmax).step_by(2) {
                if let Some((s, w2)) = w.apply_all(&[Mode::psi(m), Mode::psi(-m)]) {
                    out.add_rebased(&w2, &signed(p.clone(), s));
                }
            }
        }
        out
    }

    /// Rewrites each word mode by mode through `subst`, which lists the
    /// surviving replacement modes for the current partial word.
    fn expand(
        &self,
        v: &DFockVector,
        tilde_out: bool,
        subst: impl Fn(Mode, &DualWord) -> Vec<(DOp, Mode)>,
    ) -> DFockVector {
        let mut out = DFockVector::zero(tilde_out);
        for (w, p) in v.terms() {
            let mut cur: BTreeMap<DualWord, DOp> = BTreeMap::new();
            cur.insert(DualWord::vacuum(w.vac()), p.clone());
            for mode in w.modes() {
                let mut next = BTreeMap::new();
                for (x, c) in &cur {
                    for (k, m2) in subst(mode, x) {
                        if let Some((s, y)) = x.apply(m2) {
                            push(&mut next, y, signed(c * &k, s));
                        }
                    }
                }
                cur = next;
            }
            for (x, c) in cur {
                out.add_rebased(&x, &c);
            }
        }
        out
    }

    /// Plain words to tilde words: `ψ_a = Σ_b (D⁻¹)_{ab} ψ̃_b`, `ψ*_r = Σ_j d_{jr} ψ̃*_j`.
    pub fn to_tilde(&self, v: &DFockVector) -> DFockVector {
        assert!(!v.is_tilde());
        self.expand(v, true, |mode, x| match mode.kind {
            ModeKind::Psi => (lowest_psi(x)..=mode.index)
                .rev()
                .step_by(2)
                .map(|b| (self.d_inv_entry(mode.index, b), Mode::psi(b)))
                .filter(|(c, _)| !c.is_zero())
                .collect(),
            ModeKind::PsiStar => (mode.index..=highest_psi_star(x))
                .step_by(2)
                .map(|j| (self.d_entry(j, mode.index), Mode::psi_star(j)))
                .filter(|(c, _)| !c.is_zero())
                .collect(),
        })
    }

    /// Tilde words to plain words: `ψ̃_a = Σ_b d_{ab} ψ_b`, `ψ̃*_r = Σ_c (D⁻¹)_{cr} ψ*_c`.
    pub fn from_tilde(&self, v: &DFockVector) -> DFockVector {
        assert!(v.is_tilde());
        self.expand(v, false, |mode, x| match mode.kind {
            ModeKind::Psi => (lowest_psi(x)..=mode.index)
                .rev()
                .step_by(2)
                .map(|b| (self.d_entry(mode.index, b), Mode::psi(b)))
                .filter(|(c, _)| !c.is_zero())
                .collect(),
            ModeKind::PsiStar => (mode.index..=highest_psi_star(x))
                .step_by(2)
                .map(|c| (self.d_inv_entry(c, mode.index), Mode::psi_star(c)))
                .filter(|(c, _)| !c.is_zero())
                .collect(),
        })
    }
}

impl Default for FockOps {
    fn default() -> Self {
        FockOps::new(Rational::from_integer(super::C0.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::fock::basis_enum;

    fn words(n: i32, dmax: i64, tilde: bool) -> Vec<DFockVector> {
        (0..=dmax)
            .flat_map(|d| basis_enum(n, d))
            .map(|w| DFockVector::word(w, tilde))
            .collect()
    }

    #[test]
    fn q_on_vacua() {
        let ops = FockOps::default();
        let v = DFockVector::word(DualWord::vacuum(-3), false);
        let qv = ops.q_apply(&v);
        assert_eq!(qv, DFockVector::term(del(1), DualWord::vacuum(-1), false));
        let v3 = DFockVector::term(del(3), DualWord::vacuum(-3), false);
        assert_eq!(
            ops.q_apply(&v3),
            DFockVector::term(&del(1) * &del(3), DualWord::vacuum(-1), false)
        );
        let v5 = DFockVector::word(DualWord::vacuum(-5), false);
        assert!(ops.q_apply(&ops.q_apply(&v5)).is_zero());
    }

    #[test]
    fn c_on_charge_minus_five_vacuum() {
        let ops = FockOps::default();
        let v = DFockVector::word(DualWord::vacuum(-5), false);
        let cv = ops.c_apply(&v);
        assert_eq!(cv.sector(), Some(-1));
        assert_eq!(cv.degree(), Some(4));
        let degs: std::collections::BTreeSet<u32> = cv
            .terms()
            .flat_map(|(_, p)| p.terms().map(|(m, _)| m.degree()).collect::<Vec<_>>())
            .collect();
        // the ψ₋₁ψ₋₃ term reaches ⟨−1| itself with coefficient ∂₁∂₃
        assert_eq!(degs, [0, 2, 4].into_iter().collect());
        assert_eq!(cv.coeff(&DualWord::vacuum(-1)), Some(&(&del(1) * &del(3))));
    }

    #[test]
    fn operator_identities() {
        let ops = FockOps::default();
        for n in 1..=3 {
            for v in words(n, 10, false) {
                assert!(ops.q_apply(&ops.q_apply(&v)).is_zero(), "Q² on {v}");
                let qc = ops.c_apply(&ops.q_apply(&v));
                let cq = ops.q_apply(&ops.c_apply(&v));
                assert_eq!(qc, cq, "[Q, C] on {v}");
                let cv = ops.c_apply(&v);
                assert!(cv.is_zero() || cv.degree() == v.degree());
            }
        }
    }

    #[test]
    fn d_inverse() {
        let ops = FockOps::new(int(2));
        assert_eq!(
            ops.d_inv_entry(1, 1),
            GradedPoly::constant(Catalog::Flow, rat(1, 2))
        );
        assert_eq!(ops.d_inv_entry(-3, -3), one());
        for a in [-3, -1, 1, 3, 5, 7] {
            for b in (a - 10..=a).step_by(2) {
                let mut acc = GradedPoly::zero(Catalog::Flow);
                for c in (b..=a).step_by(2) {
                    acc += &(&ops.d_inv_entry(a, c) * &ops.d_entry(c, b));
                }
                let expect = if a == b {
                    one()
                } else {
                    GradedPoly::zero(Catalog::Flow)
                };
                assert_eq!(acc, expect, "({a}, {b})");
            }
        }
    }

    #[test]
    fn tilde_single_modes() {
        let ops = FockOps::default();
        // ψ̃₁ = 2ψ₁ on ⟨−1|ψ̃₁ψ̃*₋₁
        let (_, w) = DualWord::from_modes(-1, &[1], &[-1]).unwrap();
        let plain = ops.from_tilde(&DFockVector::word(w.clone(), true));
        assert_eq!(
            plain.coeff(&w),
            Some(&GradedPoly::constant(Catalog::Flow, int(2)))
        );
        // ψ̃₃ = 6ψ₃ − ∂₁²ψ₁ − ∂₁∂₃ψ₋₁ − …, read off on ⟨−3|ψ̃₃ψ̃*₋₃
        let (_, w) = DualWord::from_modes(-3, &[3], &[-3]).unwrap();
        let plain = ops.from_tilde(&DFockVector::word(w, true));
        let (_, w1) = DualWord::from_modes(-3, &[1], &[-3]).unwrap();
        let (_, w3) = DualWord::from_modes(-3, &[3], &[-3]).unwrap();
        assert_eq!(
            plain.coeff(&w3),
            Some(&GradedPoly::constant(Catalog::Flow, int(6)))
        );
        assert_eq!(plain.coeff(&w1), Some(&-(&del(1) * &del(1))));
        // the ψ₋₁ term lands on ⟨−3|ψ₋₁ψ*₋₃ = ⟨−1|ψ*₋₃·(sign)
        let (s, w) = DualWord::from_modes(-3, &[-1], &[-3]).unwrap().1.rebase();
        assert_eq!(plain.coeff(&w), Some(&signed(-(&del(1) * &del(3)), s)));
    }

    #[test]
    fn tilde_round_trip() {
        let ops = FockOps::default();
        for n in 0..=2 {
            for v in words(n, 8, false) {
                let t = ops.to_tilde(&v);
                assert_eq!(t.degree(), v.degree());
                assert_eq!(ops.from_tilde(&t), v, "{v}");
            }
            for v in words(n, 8, true) {
                assert_eq!(ops.to_tilde(&ops.from_tilde(&v)), v, "{v}");
            }
        }
    }

    #[test]
    fn c_is_diagonal_in_tilde_basis() {
        let ops = FockOps::default();
        for n in 2..=3 {
            for v in words(n, 10, false) {
                let lhs = ops.to_tilde(&ops.c_apply(&v));
                let rhs = ops.c_apply_tilde(&ops.to_tilde(&v));
                assert_eq!(lhs, rhs, "{v}");
                let lhs = ops.to_tilde(&ops.q_apply(&v));
                let rhs = ops.q_apply(&ops.to_tilde(&v));
                assert_eq!(lhs, rhs, "{v}");
            }
        }
    }
}
