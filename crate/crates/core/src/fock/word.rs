//! Normal-ordered dual Fock words and the CAR action on them.
//!
//! A dual word `⟨v|ψ_{a₁}…ψ_{a_k}ψ*_{r₁}…ψ*_{r_l}` is stored with its
//! particles `aᵢ > v` descending and its holes `rⱼ ≤ v` ascending. Those are
//! exactly the modes that do not kill `⟨v|`; every other mode either
//! contracts with one of them or annihilates the word. Canonical words sit on
//! their natural vacuum, where the particle and hole counts agree.

use std::fmt;

use serde::Serialize;

use crate::algebra::poly::subscript;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeKind {
    Psi,
    PsiStar,
}

/// `ψₙ` or `ψ*ₙ`, `n` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mode {
    pub kind: ModeKind,
    pub index: i32,
}

impl Mode {
    pub fn psi(index: i32) -> Mode {
        assert!(index % 2 != 0, "mode index {index} must be odd");
        Mode {
            kind: ModeKind::Psi,
            index,
        }
    }

    pub fn psi_star(index: i32) -> Mode {
        assert!(index % 2 != 0, "mode index {index} must be odd");
        Mode {
            kind: ModeKind::PsiStar,
            index,
        }
    }

    /// Whether the mode survives on `⟨v|` (as opposed to contracting or vanishing).
    pub fn creates_on(self, v: i32) -> bool {
        match self.kind {
            ModeKind::Psi => self.index > v,
            ModeKind::PsiStar => self.index <= v,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.kind == ModeKind::PsiStar {
            "*"
        } else {
            ""
        };
        write!(f, "ψ{star}{}", signed_subscript(self.index))
    }
}

pub(crate) fn signed_subscript(n: i32) -> String {
    if n < 0 {
        format!("₋{}", subscript(n.unsigned_abs()))
    } else {
        subscript(n as u32)
    }
}

fn signed(n: i32) -> String {
    if n < 0 {
        format!("−{}", -n)
    } else {
        n.to_string()
    }
}

/// A basis word of a dual Fock space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualWord {
    vac: i32,
    parts: Vec<i32>,
    holes: Vec<i32>,
}

impl DualWord {
    /// `⟨v|` itself.
    pub fn vacuum(v: i32) -> DualWord {
        assert!(v % 2 != 0, "vacuum label {v} must be odd");
        DualWord {
            vac: v,
            parts: Vec::new(),
            holes: Vec::new(),
        }
    }

    /// `⟨−2N−1|`.
    pub fn charged_vacuum(n: i32) -> DualWord {
        Self::vacuum(-2 * n - 1)
    }

    /// A word from explicit particles and holes (any order, must be distinct,
    /// particles above the vacuum, holes at or below it). The sign that
    /// sorting introduces is returned alongside.
    pub fn from_modes(v: i32, parts: &[i32], holes: &[i32]) -> Option<(i32, DualWord)> {
        let mut w = DualWord::vacuum(v);
        let mut sign = 1;
        for &a in parts {
            if a <= v {
                return None;
            }
            let (s, next) = w.apply(Mode::psi(a))?;
            sign *= s;
            w = next;
        }
        for &r in holes {
            if r > v {
                return None;
            }
            let (s, next) = w.apply(Mode::psi_star(r))?;
            sign *= s;
            w = next;
        }
        Some((sign, w))
    }

    pub fn vac(&self) -> i32 {
        self.vac
    }

    /// `N` with `vac = −2N−1`.
    pub fn level(&self) -> i32 {
        (-self.vac - 1) / 2
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    pub fn holes(&self) -> &[i32] {
        &self.holes
    }

    /// Label of the natural vacuum of the charge sector.
    pub fn sector(&self) -> i32 {
        self.vac + 2 * (self.parts.len() as i32 - self.holes.len() as i32)
    }

    pub fn is_canonical(&self) -> bool {
        self.parts.len() == self.holes.len()
    }

    /// `N² + Σ particles − Σ holes`, with `deg ψₙ = n`, `deg ψ*ₙ = −n`.
    pub fn degree(&self) -> i64 {
        let n = self.level() as i64;
        n * n + self.parts.iter().map(|&a| a as i64).sum::<i64>()
            - self.holes.iter().map(|&r| r as i64).sum::<i64>()
    }

    /// Modes of the word, left to right.
    pub fn modes(&self) -> Vec<Mode> {
        self.parts
            .iter()
            .map(|&a| Mode::psi(a))
            .chain(self.holes.iter().map(|&r| Mode::psi_star(r)))
            .collect()
    }

    /// Right action of one mode on the word, keeping the vacuum label.
    /// At most one word survives; the sign counts the anticommutations.
    pub fn apply(&self, mode: Mode) -> Option<(i32, DualWord)> {
        let n = mode.index;
        let len = self.parts.len() + self.holes.len();
        if mode.creates_on(self.vac) {
            let mut w = self.clone();
            match mode.kind {
                ModeKind::Psi => {
                    // descending: insert before the first smaller particle
                    let pos = match self.parts.binary_search_by(|x| n.cmp(x)) {
                        Ok(_) => return None,
                        Err(p) => p,
                    };
                    let passed = (self.parts.len() - pos) + self.holes.len();
                    w.parts.insert(pos, n);
                    Some((parity(passed), w))
                }
                ModeKind::PsiStar => {
                    let pos = match self.holes.binary_search(&n) {
                        Ok(_) => return None,
                        Err(p) => p,
                    };
                    let passed = self.holes.len() - pos;
                    w.holes.insert(pos, n);
                    Some((parity(passed), w))
                }
            }
        } else {
            // contracts with its conjugate partner, if present
            let mut w = self.clone();
            let from_left = match mode.kind {
                ModeKind::Psi => {
                    let k = self.holes.binary_search(&n).ok()?;
                    w.holes.remove(k);
                    self.parts.len() + k
                }
                ModeKind::PsiStar => {
                    let k = self.parts.binary_search_by(|x| n.cmp(x)).ok()?;
                    w.parts.remove(k);
                    k
                }
            };
            Some((parity(len - 1 - from_left), w))
        }
    }

    /// Applies modes left to right.
    pub fn apply_all(&self, modes: &[Mode]) -> Option<(i32, DualWord)> {
        let mut sign = 1;
        let mut w = self.clone();
        for &m in modes {
            let (s, next) = w.apply(m)?;
            sign *= s;
            w = next;
        }
        Some((sign, w))
    }

    /// Re-expresses the word on its natural vacuum using
    /// `⟨m−2|ψₘ = ⟨m|` and `⟨m|ψ*ₘ = ⟨m−2|`.
    pub fn rebase(&self) -> (i32, DualWord) {
        let target = self.sector();
        if target == self.vac {
            return (1, self.clone());
        }
        let bridge: Vec<Mode> = if target > self.vac {
            (self.vac + 2..=target)
                .rev()
                .step_by(2)
                .map(Mode::psi_star)
                .collect()
        } else {
            (target + 2..=self.vac).step_by(2).map(Mode::psi).collect()
        };
        let start = DualWord::vacuum(target);
        let (s1, w) = start
            .apply_all(&bridge)
            .expect("bridge is a product of creators");
        let (s2, w) = w
            .apply_all(&self.modes())
            .expect("modes of a word stay independent after rebasing");
        (s1 * s2, w)
    }

    pub fn display_with(&self, tilde: bool) -> String {
        let mark = if tilde { "\u{303}" } else { "" };
        let mut s = format!("⟨{}|", signed(self.vac));
        for m in self.modes() {
            let star = if m.kind == ModeKind::PsiStar { "*" } else { "" };
            s.push_str(&format!("ψ{mark}{star}{}", signed_subscript(m.index)));
        }
        s
    }
}

impl fmt::Display for DualWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(false))
    }
}

fn parity(n: usize) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Rewrites `⟨−2N−1| m₁ m₂ …` in the canonical basis. The result has at most one term.
pub fn normal_order(modes: &[Mode], n: i32) -> Option<(i32, DualWord)> {
    let (s1, w) = DualWord::charged_vacuum(n).apply_all(modes)?;
    let (s2, w) = w.rebase();
    Some((s1 * s2, w))
}

/// Canonical words on `⟨−2N−1|` of total degree `d`, in sorted order.
pub fn basis_enum(n: i32, d: i64) -> Vec<DualWord> {
    let v = -2 * n - 1;
    let e = d - (n as i64) * (n as i64);
    if e < 0 || e % 2 != 0 {
        return Vec::new();
    }
    let half = (e / 2) as u32;
    let mut out = Vec::new();
    for ea in 0..=half {
        let eb = half - ea;
        // particles at v + 2a (a ≥ 1), holes at v − 2b (b ≥ 0)
        for a in strict_partitions(ea, 1) {
            for b in strict_partitions(eb, 0) {
                if a.len() != b.len() {
                    continue;
                }
                let mut parts: Vec<i32> = a.iter().map(|&x| v + 2 * x as i32).collect();
                let mut holes: Vec<i32> = b.iter().map(|&x| v - 2 * x as i32).collect();
                parts.sort_unstable_by(|x, y| y.cmp(x));
                holes.sort_unstable();
                out.push(DualWord {
                    vac: v,
                    parts,
                    holes,
                });
            }
        }
    }
    out.sort();
    out
}

/// Sets of distinct integers `≥ min` summing to `total`. With `min = 0` the
/// part `0` may be included or not, which doubles every set.
fn strict_partitions(total: u32, min: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(rem: u32, next: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(acc.clone());
        }
        let mut p = next;
        while p <= rem {
            acc.push(p);
            rec(rem - p, p + 1, acc, out);
            acc.pop();
            p += 1;
        }
    }
    rec(total, min.max(1), &mut Vec::new(), &mut out);
    if min == 0 {
        let with_zero: Vec<Vec<u32>> = out
            .iter()
            .map(|s| {
                let mut t = vec![0];
                t.extend(s);
                t
            })
            .collect();
        out.extend(with_zero);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QSeries;

    #[test]
    fn single_anticommutator() {
        // ⟨−1|ψ*₋₁ψ₁ = −⟨−1|ψ₁ψ*₋₁ since the two modes do not contract
        let (s, w) = normal_order(&[Mode::psi_star(-1), Mode::psi(1)], 0).unwrap();
        assert_eq!(s, -1);
        assert_eq!(w.to_string(), "⟨−1|ψ₁ψ*₋₁");
    }

    #[test]
    fn vacuum_relation() {
        let (s, w) = normal_order(&[Mode::psi(-1)], 1).unwrap();
        assert_eq!((s, w), (1, DualWord::vacuum(-1)));
        let (s, w) = normal_order(&[Mode::psi_star(-1)], 0).unwrap();
        assert_eq!((s, w), (1, DualWord::vacuum(-3)));
    }

    #[test]
    fn nilpotence() {
        assert!(normal_order(&[Mode::psi(1), Mode::psi(1)], 0).is_none());
        assert!(normal_order(&[Mode::psi_star(3)], 0).is_none());
        assert!(normal_order(&[Mode::psi(-3)], 0).is_none());
    }

    #[test]
    fn car_relation_on_words() {
        // ⟨w|(XY + YX) = δ·⟨w| checked on every adjacent pair over small words
        let words: Vec<DualWord> = (0..=6).flat_map(|d| basis_enum(0, d)).collect();
        let modes: Vec<Mode> = (-5..=5)
            .step_by(2)
            .flat_map(|i| [Mode::psi(i), Mode::psi_star(i)])
            .collect();
        for w in &words {
            for &x in &modes {
                for &y in &modes {
                    let mut acc: std::collections::BTreeMap<DualWord, i32> = Default::default();
                    for pair in [[x, y], [y, x]] {
                        if let Some((s, r)) = w.apply_all(&pair) {
                            *acc.entry(r).or_default() += s;
                        }
                    }
                    acc.retain(|_, c| *c != 0);
                    let delta = x.index == y.index && x.kind != y.kind;
                    if delta {
                        assert_eq!(acc.len(), 1, "{w} {x} {y}");
                        assert_eq!(acc.get(w), Some(&1));
                    } else {
                        assert!(acc.is_empty(), "{w} {x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_bases() {
        assert_eq!(basis_enum(0, 0), vec![DualWord::vacuum(-1)]);
        let b2: Vec<String> = basis_enum(0, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(b2, ["⟨−1|ψ₁ψ*₋₁"]);
        let mut b4: Vec<String> = basis_enum(0, 4).iter().map(|w| w.to_string()).collect();
        b4.sort();
        assert_eq!(b4, ["⟨−1|ψ₁ψ*₋₃", "⟨−1|ψ₃ψ*₋₁"]);
    }

    #[test]
    fn counts_match_characters() {
        let order = 16;
        let base = QSeries::inverse_euler(2, order);
        for n in 0..=3i32 {
            let ch = base.shift((n * n) as usize);
            for d in 0..=order {
                let count = basis_enum(n, d as i64).len() as i64;
                assert_eq!(ch.coeff(d), &crate::algebra::int(count), "N={n} d={d}");
            }
        }
    }

    #[test]
    fn rebasing_preserves_degree() {
        for d in 0..=8 {
            for w in basis_enum(1, d) {
                // ⟨−3|… = ⟨−1|ψ*₋₁…
                let (_, lifted) = DualWord::vacuum(-1).apply(Mode::psi_star(-1)).unwrap();
                assert_eq!(lifted.rebase().1, DualWord::vacuum(-3));
                let (_, r) = w.rebase();
                assert_eq!(r, w);
                assert_eq!(r.degree(), d);
            }
        }
    }
}
