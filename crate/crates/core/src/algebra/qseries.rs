//! Truncated univariate q-series with an explicit valid order.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// `Σ_{k ≤ order} c_k q^k`; coefficients above `order` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, int(1))
    }

    /// `c·q^k`, truncated.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a q-series needs at least the constant term"
        );
        QSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        QSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        QSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order().min(other.order());
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !other.coeffs[j].is_zero() {
                    acc -= &other.coeffs[j] * &out[k - j];
                }
            }
            out.push(acc / b0);
        }
        Ok(QSeries { coeffs: out })
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> QSeries {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        QSeries { coeffs: out }
    }

    /// `∏_{i ≥ 1} 1/(1 − q^{step·i})` to `order`.
    pub fn inverse_euler(step: usize, order: usize) -> QSeries {
        Self::partition_series(order, (1..).map(|i| i * step))
    }

    /// Generating function of partitions with parts from `parts` (ascending, may be infinite).
    pub fn partition_series(order: usize, parts: impl IntoIterator<Item = usize>) -> QSeries {
        let mut c = vec![Rational::zero(); order + 1];
        c[0] = Rational::one();
        for p in parts {
            if p == 0 || p > order {
                break;
            }
            for k in p..=order {
                let prev = c[k - p].clone();
                c[k] += prev;
            }
        }
        QSeries { coeffs: c }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            let sep = match (first, neg) {
                (true, true) => "−",
                (true, false) => "",
                (false, true) => " − ",
                (false, false) => " + ",
            };
            let coef = if a.is_one() && k > 0 {
                String::new()
            } else {
                a.to_string()
            };
            let var = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            write!(f, "{sep}{coef}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
