//! The evaluation maps `ev₁` (plain fermions, through Wick and `S̄ ↦ S`) and
//! `ev₂` (tilde fermions, through `ζ`-determinants).

use std::collections::BTreeMap;

use super::{DFockVector, DOp};
use crate::algebra::{determinant, Catalog, GradedPoly, Monomial};
use crate::diffalg::{DiffPoly, Hierarchy};
use crate::error::{Error, Result};
use crate::fock::{normal_order, DualWord, FockTables, Mode, ModeKind};

/// Tables for evaluating `D ⊗ H*₋₁` into `A` up to a degree bound.
#[derive(Clone, Debug)]
pub struct Evaluator {
    max_degree: u32,
    hierarchy: Hierarchy,
    fock: FockTables,
    /// `ζᵢⱼ` for odd `i ≤ j`, `i + j ≤ max_degree`.
    zeta: BTreeMap<(u32, u32), DiffPoly>,
}

impl Evaluator {
    pub fn new(max_degree: u32) -> Result<Evaluator> {
        Self::with_hierarchy(Hierarchy::new(max_degree)?, max_degree)
    }

    pub fn with_hierarchy(hierarchy: Hierarchy, max_degree: u32) -> Result<Evaluator> {
        let mut zeta = BTreeMap::new();
        for i in (1..max_degree).step_by(2) {
            for j in (i..=max_degree - i).step_by(2) {
                zeta.insert((i, j), hierarchy.zeta(i, j)?);
            }
        }
        Ok(Evaluator {
            max_degree,
            hierarchy,
            fock: FockTables::new(max_degree),
            zeta,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }

    pub fn fock(&self) -> &FockTables {
        &self.fock
    }

    pub fn zeta(&self, i: u32, j: u32) -> Result<&DiffPoly> {
        let key = (i.min(j), i.max(j));
        self.zeta.get(&key).ok_or(Error::InsufficientDepth {
            needed: i + j,
            available: self.max_degree,
        })
    }

    /// The boson–fermion image of a charge `−1` plain vector in
    /// `D ⊗ Q[S̄] = Q[∂, S̄]` (`FlowBarS` catalog).
    pub fn to_flow_bar_s(&self, v: &DFockVector) -> Result<GradedPoly> {
        if v.is_tilde() {
            return Err(Error::MalformedIndexSet("ev₁ needs plain words".into()));
        }
        let mut out = GradedPoly::zero(Catalog::FlowBarS);
        for (w, p) in v.terms() {
            let s = self.fock.wick_bar_s(w)?.embed(Catalog::FlowBarS);
            out += &(&p.embed(Catalog::FlowBarS) * &s);
        }
        Ok(out)
    }

    /// `ev₁` of one monomial `∂^α S̄^β`: `∂^α(S^β)`.
    pub fn ev1_monomial(&self, m: &Monomial) -> Result<DiffPoly> {
        let mut sp = GradedPoly::one(Catalog::Jet);
        let mut op = Vec::new();
        for &(id, e) in m.exps() {
            if id % 2 == 1 {
                op.push((id, e));
            } else {
                sp = &sp * &self.hierarchy.s(id as usize / 2)?.pow(e);
            }
        }
        let op = GradedPoly::monomial(
            Catalog::Flow,
            Monomial::from_exps(Catalog::Flow, op),
            crate::algebra::int(1),
        );
        self.hierarchy.apply_dop(&op, &sp)
    }

    /// `ev₁` on `Q[∂, S̄]`.
    pub fn ev1_flow_bar_s(&self, p: &GradedPoly) -> Result<DiffPoly> {
        let mut out = GradedPoly::zero(Catalog::Jet);
        for (m, c) in p.terms() {
            out += &self.ev1_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// `ev₁ : D ⊗ H*₋₁ → A`.
    pub fn ev1(&self, v: &DFockVector) -> Result<DiffPoly> {
        self.ev1_flow_bar_s(&self.to_flow_bar_s(v)?)
    }

    /// `ev₂` of a filtration word `⟨−2N−1|m₁⋯m_N`, each `mₖ` either
    /// `αᵢ = ψ̃₋ᵢ` (`i ≤ 2N−1`) or `βⱼ = ψ̃ⱼ`: the determinant whose rows, read
    /// from the right end of the word, are `dtᵢ` for `αᵢ` and `dζⱼ = Σₘ ζⱼₘ dtₘ`
    /// for `βⱼ`. The unit rows are eliminated first, leaving
    /// `sgn · det(ζ_{j, l})` over the columns `l` not hit by an `α`.
    pub fn ev2_filtration(&self, n: u32, modes: &[Mode]) -> Result<DiffPoly> {
        let bad = || Error::MalformedIndexSet(format!("level {n}: {modes:?}"));
        if modes.len() != n as usize || modes.iter().any(|m| m.kind != ModeKind::Psi) {
            return Err(bad());
        }
        let rows: Vec<i32> = modes.iter().rev().map(|m| m.index).collect();
        let mut alpha_cols = Vec::new();
        let mut betas = Vec::new();
        let mut beta_first = Vec::new();
        for &r in &rows {
            if r < 0 {
                let i = -r;
                if i > 2 * n as i32 - 1 || alpha_cols.contains(&i) {
                    return Err(bad());
                }
                alpha_cols.push(i);
            } else {
                if betas.contains(&r) {
                    return Ok(GradedPoly::zero(Catalog::Jet));
                }
                betas.push(r);
            }
            beta_first.push(r > 0);
        }
        // rows reordered to (β…, α…) and columns to (L…, α-columns in row order)
        let row_perm: Vec<usize> = {
            let mut idx: Vec<usize> = (0..rows.len()).collect();
            idx.sort_by_key(|&k| (!beta_first[k], k));
            idx
        };
        let cols: Vec<i32> = (1..=2 * n as i32 - 1)
            .step_by(2)
            .filter(|c| !alpha_cols.contains(c))
            .chain(alpha_cols.iter().copied())
            .collect();
        let sign = perm_sign(&row_perm)
            * perm_sign(
                &cols
                    .iter()
                    .map(|&c| (c - 1) as usize / 2)
                    .collect::<Vec<_>>(),
            );
        let matrix: Vec<Vec<GradedPoly>> = betas
            .iter()
            .map(|&j| {
                cols[..betas.len()]
                    .iter()
                    .map(|&l| self.zeta(j as u32, l as u32).cloned())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let det = determinant(Catalog::Jet, &matrix);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Writes a canonical charge `−1` tilde word in filtration form at the
    /// smallest admissible level: `(N, sign, modes)` with `w = sign·⟨−2N−1|modes`.
    pub fn filtration_form(&self, w: &DualWord) -> Result<(u32, i32, Vec<Mode>)> {
        Self::filtration_form_at(w, None)
    }

    /// As [`Evaluator::filtration_form`], at a given level (if large enough).
    pub fn filtration_form_at(w: &DualWord, level: Option<u32>) -> Result<(u32, i32, Vec<Mode>)> {
        if w.vac() != -1 || !w.is_canonical() {
            return Err(Error::MalformedIndexSet(format!(
                "{w} is not a canonical charge −1 word"
            )));
        }
        let k = w.parts().len() as u32;
        let lmax = w.holes().first().map_or(0, |&h| (-h) as u32);
        let nmin = k.max(lmax.div_ceil(2));
        let n = match level {
            Some(l) if l < nmin => {
                return Err(Error::MalformedIndexSet(format!(
                    "{w} does not fit level {l}"
                )))
            }
            Some(l) => l,
            None => nmin,
        };
        let holes: Vec<i32> = w.holes().iter().map(|&h| -h).collect();
        let mut modes: Vec<Mode> = (1..=2 * n as i32 - 1)
            .rev()
            .step_by(2)
            .filter(|i| !holes.contains(i))
            .map(|i| Mode::psi(-i))
            .collect();
        modes.extend(w.parts().iter().rev().map(|&j| Mode::psi(j)));
        let (s, canon) = normal_order(&modes, n as i32)
            .ok_or_else(|| Error::MalformedIndexSet(format!("{w}: filtration word vanished")))?;
        debug_assert_eq!(&canon, w);
        Ok((n, s, modes))
    }

    /// `ev₂` of a canonical charge `−1` tilde word.
    pub fn ev2_word(&self, w: &DualWord) -> Result<DiffPoly> {
        let (n, s, modes) = self.filtration_form(w)?;
        let f = self.ev2_filtration(n, &modes)?;
        Ok(if s < 0 { -f } else { f })
    }

    /// `ev₂ : D ⊗ H̃*₋₁ → A`, `P ⊗ w ↦ P(F_w)`.
    pub fn ev2(&self, v: &DFockVector) -> Result<DiffPoly> {
        if !v.is_tilde() {
            return Err(Error::MalformedIndexSet("ev₂ needs tilde words".into()));
        }
        let mut out = GradedPoly::zero(Catalog::Jet);
        for (w, p) in v.terms() {
            out += &self.apply_dop(p, &self.ev2_word(w)?)?;
        }
        Ok(out)
    }

    pub fn apply_dop(&self, p: &DOp, f: &DiffPoly) -> Result<DiffPoly> {
        self.hierarchy.apply_dop(p, f)
    }
}

/// Sign of the permutation listing `0..n` in the given order.
fn perm_sign(p: &[usize]) -> i32 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
