//! Dense exact rational matrices.
//!
//! Rank and reduced row echelon form clear denominators row by row and run a
//! fraction-free integer elimination: a row `r` is updated as
//! `p·r − a·pivot` (with `a/p` reduced) and then divided by its content, so
//! entries stay small and rows that are already zero in the pivot column are
//! never touched. The determinant uses classic Bareiss elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::exterior::{format_rational, parse_rational};

/// Below this many entries the row updates are not worth farming out.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    /// Pivot columns in original indexing, in the order they were found.
    pub pivot_columns: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |r, c| {
            if r == c {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_entries(n_rows, cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer matrices.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.as_ref()
                        .iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn transpose(&self) -> ExactMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows `rows` and columns `cols` of `self`, in the given orders.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(Error::DimensionMismatch(
                "vstack column counts differ".into(),
            ));
        }
        let cols = if self.rows == 0 {
            other.cols
        } else {
            self.cols
        };
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self::from_entries(self.rows + other.rows, cols, entries)
    }

    pub fn count_nonzero(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Strategy::default())
    }

    pub fn rank_with(&self, strategy: Strategy) -> usize {
        let mut rows = self.integer_rows();
        let order: Vec<usize> = (0..self.cols).collect();
        eliminate(&mut rows, self.cols, &order, false, strategy).len()
    }

    /// Reduced row echelon form scanning columns in `column_order`.
    pub fn rref(&self, column_order: &[usize]) -> Result<Rref> {
        self.rref_with(column_order, Strategy::default())
    }

    pub fn rref_with(&self, column_order: &[usize], strategy: Strategy) -> Result<Rref> {
        let mut seen = vec![false; self.cols];
        if column_order.len() != self.cols
            || column_order
                .iter()
                .any(|&c| c >= self.cols || std::mem::replace(&mut seen[c], true))
        {
            return Err(Error::InvalidPermutation(self.cols));
        }
        let mut rows = self.integer_rows();
        let pivots = eliminate(&mut rows, self.cols, column_order, true, strategy);
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for (r, row) in rows.iter().enumerate() {
            if r < pivots.len() {
                let p = &row[pivots[r]];
                entries.extend(row.iter().map(|x| BigRational::new(x.clone(), p.clone())));
            } else {
                entries.extend(std::iter::repeat_n(BigRational::zero(), self.cols));
            }
        }
        Ok(Rref {
            matrix: ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                entries,
            },
            pivot_columns: pivots,
        })
    }

    /// Exact determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                scale *= &lcm;
                row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect()
            })
            .collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = (&a[k][k] * &a[r][c] - &a[r][k] * &a[k][c]) / &prev;
                    a[r][c] = v;
                }
                a[r][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = BigRational::new(a[n - 1][n - 1].clone(), scale);
        Ok(if negate { -det } else { det })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One row per line, entries `p/q` (or `p`) separated by commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(format_rational).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<ExactMatrix> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

fn normalize_content(row: &mut [BigInt]) {
    let g = row.iter().fold(
        BigInt::zero(),
        |g, x| if x.is_zero() { g } else { g.gcd(x) },
    );
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

fn reduce_row(row: &mut [BigInt], pivot: &[BigInt], col: usize) {
    if row[col].is_zero() {
        return;
    }
    let g = row[col].gcd(&pivot[col]);
    let a = &row[col] / &g;
    let p = &pivot[col] / &g;
    for (x, y) in row.iter_mut().zip(pivot) {
        let scaled = if p.is_one() { x.clone() } else { &*x * &p };
        *x = if y.is_zero() { scaled } else { scaled - &a * y };
    }
    normalize_content(row);
}

/// Fraction-free elimination in place. Returns pivot columns; afterwards
/// `rows[k]` is the pivot row of `pivots[k]`. With `reduce_above` the pivot
/// columns are also cleared above each pivot.
fn eliminate(
    rows: &mut [Vec<BigInt>],
    cols: usize,
    order: &[usize],
    reduce_above: bool,
    strategy: Strategy,
) -> Vec<usize> {
    let strategy = if rows.len() * cols >= PARALLEL_THRESHOLD {
        strategy
    } else {
        Strategy::Sequential
    };
    for row in rows.iter_mut() {
        normalize_content(row);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        // prefer the sparsest candidate with the smallest pivot
        let Some(best) = (r..rows.len())
            .filter(|&k| !rows[k][c].is_zero())
            .min_by_key(|&k| {
                (
                    rows[k].iter().filter(|x| !x.is_zero()).count(),
                    rows[k][c].abs().bits(),
                )
            })
        else {
            continue;
        };
        rows.swap(r, best);
        let pivot = rows[r].clone();
        let (above, rest) = rows.split_at_mut(r);
        strategy.for_each_mut(&mut rest[1..], |row| reduce_row(row, &pivot, c));
        if reduce_above {
            strategy.for_each_mut(above, |row| reduce_row(row, &pivot, c));
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
