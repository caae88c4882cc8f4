//! The D-module layer: `D = Q[∂₁, ∂₃, …]` acting on `D ⊗ H*`, the operators
//! `Q` and `C`, the tilde change of fermions, both evaluation maps and the
//! degree-wise linear algebra built on them.

pub mod eval;
pub mod kernel;
pub mod ops;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{int, Catalog, GradedPoly, Monomial, Rational};
use crate::fock::DualWord;

pub use eval::Evaluator;
pub use kernel::{
    calibrate_c0, char_report, ev_equivalence_check, verify_ev2_kernel, CharReport, Generator,
    KernelReport, Provenance, ResolutionSlice,
};
pub use ops::FockOps;

/// Coefficient of the linear term of `C`, fixed by [`calibrate_c0`].
pub const C0: i64 = 2;

/// A `D`-coefficient: polynomial in the `Flow` catalog.
pub type DOp = GradedPoly;

/// `∂ᵢ`.
pub fn del(i: u32) -> DOp {
    GradedPoly::var(Catalog::Flow, i)
}

/// `P_{n,l} = Σ_{i+j=l+1, j<n} ∂_{2i−1}∂_{2j−1}/(n−j)`.
pub fn p_nl(n: u32, l: u32) -> DOp {
    let mut acc = GradedPoly::zero(Catalog::Flow);
    if l == 0 {
        return acc;
    }
    for j in 1..n.min(l + 1) {
        let i = l + 1 - j;
        let m = Monomial::from_exps(Catalog::Flow, [(2 * i - 1, 1), (2 * j - 1, 1)]);
        acc.add_term(m, Rational::new(1.into(), ((n - j) as i64).into()));
    }
    acc
}

/// A finite sum `Σ Pᵥ ⊗ w` over canonical dual words, in either the plain or
/// the tilde fermion basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DFockVector {
    tilde: bool,
    terms: BTreeMap<DualWord, DOp>,
}

impl DFockVector {
    pub fn zero(tilde: bool) -> DFockVector {
        DFockVector {
            tilde,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ w` for a canonical word.
    pub fn word(w: DualWord, tilde: bool) -> DFockVector {
        Self::term(GradedPoly::one(Catalog::Flow), w, tilde)
    }

    pub fn term(p: DOp, w: DualWord, tilde: bool) -> DFockVector {
        let mut v = Self::zero(tilde);
        v.add_term(w, &p);
        v
    }

    pub fn is_tilde(&self) -> bool {
        self.tilde
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

    pub fn terms(&self) -> impl Iterator<Item = (&DualWord, &DOp)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &DualWord) -> Option<&DOp> {
        self.terms.get(w)
    }

    /// Adds `p ⊗ w`; `w` must be canonical.
    pub fn add_term(&mut self, w: DualWord, p: &DOp) {
        debug_assert!(w.is_canonical(), "{w} is not on its natural vacuum");
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(c) => {
                *c += p;
                if c.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, p.clone());
            }
        }
    }

    /// Adds `p ⊗ w` for an arbitrary word, rebasing it first.
    pub fn add_rebased(&mut self, w: &DualWord, p: &DOp) {
        let (s, w) = w.rebase();
        if s < 0 {
            self.add_term(w, &-p);
        } else {
            self.add_term(w, p);
        }
    }

    pub fn add(&self, other: &DFockVector) -> DFockVector {
        assert_eq!(self.tilde, other.tilde, "mixing plain and tilde bases");
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &DFockVector) -> DFockVector {
        self.add(&other.scale_op(&GradedPoly::constant(Catalog::Flow, int(-1))))
    }

    /// Multiplies every coefficient by a `D`-element.
    pub fn scale_op(&self, p: &DOp) -> DFockVector {
        let mut out = Self::zero(self.tilde);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * p));
        }
        out
    }

    /// Charge sector (natural vacuum label) when all words agree.
    pub fn sector(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(DualWord::vac);
        let first = it.next()?;
        it.all(|v| v == first).then_some(first)
    }

    /// Total degree when the vector is homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut out = None;
        for (w, p) in &self.terms {
            for (m, _) in p.terms() {
                let d = w.degree() + m.degree() as i64;
                match out {
                    None => out = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        out
    }
}

impl fmt::Display for DFockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word = w.display_with(self.tilde);
            if p.len() == 1 && p.constant_term() == int(1) {
                write!(f, "{word}")?;
            } else {
                write!(f, "({p})⊗{word}")?;
            }
        }
        Ok(())
    }
}
