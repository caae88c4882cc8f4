//! Exact linear algebra over the rationals.
//!
//! Rows are cleared to primitive integer vectors and eliminated fraction-free
//! (`r ← a·r − b·p`, then divided by its content). Pivots are always the
//! leftmost available column and the first row carrying it, so results depend
//! only on the input order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_of_denominators, Rational};
use crate::exec::Strategy;

type IntRow = Vec<BigInt>;

fn to_int_row(row: &[Rational]) -> IntRow {
    let l = lcm_of_denominators(row);
    let mut r: IntRow = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    make_primitive(&mut r);
    r
}

fn make_primitive(r: &mut IntRow) {
    let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in r.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn eliminate(row: &mut IntRow, pivot: &IntRow, col: usize) {
    if row[col].is_zero() {
        return;
    }
    let g = pivot[col].gcd(&row[col]);
    let a = &pivot[col] / &g;
    let b = &row[col] / &g;
    for (x, p) in row.iter_mut().zip(pivot) {
        *x = &a * &*x - &b * p;
    }
    make_primitive(row);
}

/// Reduced row echelon form of a set of vectors, in rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize, vectors: &[Vec<Rational>], strategy: Strategy) -> Echelon {
        let rows: Vec<IntRow> = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), ncols, "vector length");
                to_int_row(v)
            })
            .collect();
        let (rows, pivots) = reduce(rows, ncols, ncols, strategy);
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &p)| {
                let lead = Rational::from_integer(r[p].clone());
                r.into_iter()
                    .map(|x| Rational::from_integer(x) / &lead)
                    .collect()
            })
            .collect();
        Echelon {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after reduction by the basis; zero iff `v` lies in the span.
    pub fn residue(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.residue(v).iter().all(Zero::is_zero)
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Same subspace (reduced forms are unique).
    pub fn same_span(&self, other: &Echelon) -> bool {
        self == other
    }

    /// Span of the union.
    pub fn join(&self, other: &Echelon, strategy: Strategy) -> Echelon {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Echelon::new(self.ncols, &all, strategy)
    }
}

/// Fraction-free reduction on the first `search` columns of integer rows of
/// width `ncols`. Returns the reduced nonzero rows and their pivot columns.
fn reduce(
    mut rows: Vec<IntRow>,
    ncols: usize,
    search: usize,
    strategy: Strategy,
) -> (Vec<IntRow>, Vec<usize>) {
    let mut done: Vec<IntRow> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..search.min(ncols) {
        let Some(k) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut pivot = rows.remove(k);
        if pivot[col].is_negative() {
            pivot.iter_mut().for_each(|x| *x = -&*x);
        }
        strategy.for_each_mut(&mut rows, |r| eliminate(r, &pivot, col));
        strategy.for_each_mut(&mut done, |r| eliminate(r, &pivot, col));
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        done.push(pivot);
        pivots.push(col);
    }
    for r in done.iter_mut() {
        let p = r.iter().position(|x| !x.is_zero()).unwrap();
        if r[p].is_negative() {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    if search >= ncols {
        return (done, pivots);
    }
    // keep rows whose searched part vanished, for the caller
    done.extend(rows);
    (done, pivots)
}

/// Kernel of the linear map sending basis vector `i` to `images[i]`
/// (each of length `m`), as a reduced basis in domain coordinates.
pub fn kernel(images: &[Vec<Rational>], m: usize, strategy: Strategy) -> Echelon {
    let n = images.len();
    let rows: Vec<IntRow> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut v = img.clone();
            v.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            to_int_row(&v)
        })
        .collect();
    let (rows, _) = reduce(rows, m + n, m, strategy);
    let kernel_rows: Vec<Vec<Rational>> = rows
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| {
            r[m..]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    Echelon::new(n, &kernel_rows, strategy)
}

/// Rank of a set of rational vectors.
pub fn rank(vectors: &[Vec<Rational>], ncols: usize, strategy: Strategy) -> usize {
    Echelon::new(ncols, vectors, strategy).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3, Strategy::Sequential), 2);
    }

    #[test]
    fn echelon_is_reduced_and_unique() {
        let a = Echelon::new(3, &[v(&[2, 4, 6]), v(&[0, 3, 3])], Strategy::Sequential);
        let b = Echelon::new(3, &[v(&[1, 3, 4]), v(&[0, -1, -1])], Strategy::Parallel);
        assert_eq!(a, b);
        assert_eq!(a.rows()[0], v(&[1, 0, 1]));
        assert!(a.contains(&v(&[3, 5, 8])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn kernel_of_a_projection() {
        // e0 ↦ (1,0), e1 ↦ (0,1), e2 ↦ (1,1)
        let imgs = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let k = kernel(&imgs, 2, Strategy::Sequential);
        assert_eq!(k.rank(), 1);
        assert_eq!(k.rows()[0], v(&[1, 1, -1]));
    }

    #[test]
    fn rational_entries() {
        let rows = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]];
        assert_eq!(rank(&rows, 2, Strategy::Sequential), 1);
    }
}
