//! Execution strategy for the data-parallel sweeps.
//!
//! Every sweep in the engine goes through [`Strategy::map`]. With the
//! `parallel` feature it fans out on the rayon pool, otherwise (or with
//! [`Strategy::Sequential`]) it is a plain loop. Output order is always the
//! input order, so reports do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// The strategy actually used: `Parallel` degrades to `Sequential` without the feature.
    pub fn effective(self) -> Strategy {
        if cfg!(feature = "parallel") {
            self
        } else {
            Strategy::Sequential
        }
    }

    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self.effective() {
            Strategy::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().map(f).collect(),
            #[cfg(not(feature = "parallel"))]
            Strategy::Parallel => unreachable!(),
        }
    }

    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        match self.effective() {
            Strategy::Sequential => items.iter_mut().for_each(f),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter_mut().for_each(f),
            #[cfg(not(feature = "parallel"))]
            Strategy::Parallel => unreachable!(),
        }
    }

    pub fn name(self) -> &'static str {
        match self.effective() {
            Strategy::Sequential => "sequential",
            Strategy::Parallel => "parallel",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = Strategy::Sequential.map(&xs, |x| x * x);
        let par = Strategy::Parallel.map(&xs, |x| x * x);
        assert_eq!(seq, par);
    }
}
