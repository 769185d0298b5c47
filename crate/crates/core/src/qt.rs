//! Bivariate integer polynomials in `q` and `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QTPolynomial {
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl QTPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(a: u32, b: u32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `[n]_{q,t} = q^{n-1} + q^{n-2}t + ... + t^{n-1}`, zero for `n = 0`.
    pub fn qt_integer(n: u32) -> Self {
        let mut p = Self::zero();
        for a in 0..n {
            p.add_term(a, n - 1 - a, 1);
        }
        p
    }

    pub fn from_triples(triples: &[(u32, u32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(a, b, c) in triples {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry((a, b)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> i64 {
        self.coeffs.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.coeffs.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    /// Sorted `[a, b, coeff]` triples.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.terms()
            .map(|(a, b, c)| [a as i64, b as i64, c])
            .collect()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `P(t, q)`.
    pub fn swap_variables(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b), &c)| ((b, a), c))
                .collect(),
        }
    }

    /// Terms with `a + b == total`.
    pub fn total_degree_slice(&self, total: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(a, b), _)| a + b == total)
                .map(|(&k, &c)| (k, c))
                .collect(),
        }
    }
}

impl Add for &QTPolynomial {
    type Output = QTPolynomial;
    fn add(self, rhs: &QTPolynomial) -> QTPolynomial {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Neg for &QTPolynomial {
    type Output = QTPolynomial;
    fn neg(self) -> QTPolynomial {
        QTPolynomial {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

impl Sub for &QTPolynomial {
    type Output = QTPolynomial;
    fn sub(self, rhs: &QTPolynomial) -> QTPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QTPolynomial {
    type Output = QTPolynomial;
    fn mul(self, rhs: &QTPolynomial) -> QTPolynomial {
        let mut out = QTPolynomial::zero();
        for (a, b, c) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                out.add_term(a + a2, b + b2, c * c2);
            }
        }
        out
    }
}

impl fmt::Display for QTPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // graded by total degree, then by q-degree descending
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(a, b, _)| (a + b, std::cmp::Reverse(a)));
        for (idx, (a, b, c)) in terms.into_iter().enumerate() {
            let var = |name: &str, e: u32| match e {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{e}"),
            };
            let vars = format!("{}{}", var("q", a), var("t", b));
            let mag = c.unsigned_abs();
            let body = match (mag, vars.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => vars,
                (_, false) => format!("{mag}{vars}"),
            };
            match (idx, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let one_plus_q = &QTPolynomial::one() + &QTPolynomial::q();
        let sq = &one_plus_q * &one_plus_q;
        assert_eq!(
            sq,
            QTPolynomial::from_triples(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)])
        );
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.eval_at_one(), 4);
        assert_eq!(sq.to_string(), "1 + 2q + q^2");
    }

    #[test]
    fn qt_integers() {
        assert!(QTPolynomial::qt_integer(0).is_zero());
        assert_eq!(QTPolynomial::qt_integer(1), QTPolynomial::one());
        assert_eq!(QTPolynomial::qt_integer(3).to_string(), "q^2 + qt + t^2");
        let p = QTPolynomial::from_triples(&[(2, 0, 1), (0, 1, -3)]);
        assert_eq!(
            p.swap_variables(),
            QTPolynomial::from_triples(&[(0, 2, 1), (1, 0, -3)])
        );
        assert_eq!(p.triples(), vec![[0, 1, -3], [2, 0, 1]]);
    }
}
