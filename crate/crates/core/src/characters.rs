//! Characters of the symmetric group and graded multiplicities in `DR_n`.
//!
//! Irreducible characters come from the Murnaghan–Nakayama rule on beta
//! sets. Exterior-power characters come from `det(1 + qP) = ∏(1 − (−q)^m)`
//! over the cycles of a permutation `P`; dividing by `1 + q` removes the
//! trivial summand and gives the reflection representation.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::combin::{binomial, factorial};
use crate::error::{Error, Result};
use crate::exterior::Bidegree;
use crate::qt::QTPolynomial;

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The hook `(n − k, 1^k)`.
    pub fn hook(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(Error::OutOfRange(format!(
                "hook (n-k,1^k) needs 0 <= k < n, got n={n}, k={k}"
            )));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `k` (1-based), zero past the end.
    pub fn part(&self, k: usize) -> usize {
        self.0.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition(
            (1..=first)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count())
                .collect(),
        )
    }

    pub fn is_hook(&self) -> bool {
        self.part(2) <= 1
    }

    /// Dimension of the irreducible `S^λ`.
    pub fn dimension(&self) -> i64 {
        character(self, &Partition(vec![1; self.size()]))
    }

    /// Centralizer order `z_λ = ∏ m^{a_m} a_m!`.
    pub fn centralizer_order(&self) -> u64 {
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(m, a)| (m as u64).pow(a as u32) * factorial(a as usize))
            .product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

/// Partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A conjugacy class of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleType {
    pub partition: Partition,
    /// `n! / z_λ`
    pub class_size: u64,
}

impl CycleType {
    pub fn new(partition: Partition) -> Self {
        let class_size = factorial(partition.size()) / partition.centralizer_order();
        CycleType {
            partition,
            class_size,
        }
    }

    pub fn identity(n: usize) -> Self {
        CycleType::new(Partition(vec![1; n]))
    }

    pub fn n(&self) -> usize {
        self.partition.size()
    }

    pub fn cycle_count(&self) -> usize {
        self.partition.len()
    }
}

pub fn cycle_types(n: usize) -> Vec<CycleType> {
    partitions(n).into_iter().map(CycleType::new).collect()
}

/// `χ^λ(μ)` by Murnaghan–Nakayama: strip rim hooks of the sizes of `μ`,
/// encoded as bead moves on a beta set.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .0
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut memo = HashMap::new();
    mn(beta, mu.parts(), &mut memo)
}

fn mn(beta: Vec<usize>, cycles: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let key = (beta.clone(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let v = mn(next, rest, memo);
        total += if between % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

/// Label of the hook irreducible `(n − k, 1^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HookLabel {
    pub n: usize,
    pub k: usize,
}

impl HookLabel {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Partition::hook(n, k)?;
        Ok(HookLabel { n, k })
    }

    pub fn partition(&self) -> Partition {
        Partition::hook(self.n, self.k).expect("validated on construction")
    }
}

pub fn hook_character(h: HookLabel, w: &CycleType) -> i64 {
    character(&h.partition(), &w.partition)
}

/// Coefficients of `∏_{cycles m}(1 − (−q)^m)`: traces of `w` on `∧^k U`
/// for the permutation representation `U`.
pub fn permutation_exterior_traces(w: &CycleType) -> Vec<i64> {
    let mut poly = vec![1i64];
    for &m in w.partition.parts() {
        // multiply by 1 − (−1)^m q^m
        let c = if m % 2 == 0 { -1 } else { 1 };
        let mut next = vec![0i64; poly.len() + m];
        for (e, &a) in poly.iter().enumerate() {
            next[e] += a;
            next[e + m] += c * a;
        }
        poly = next;
    }
    poly
}

/// Traces of `w` on `∧^k V` for the reflection representation `V`: the
/// permutation polynomial divided exactly by `1 + q`.
pub fn reflection_exterior_traces(w: &CycleType) -> Vec<i64> {
    let p = permutation_exterior_traces(w);
    if p.len() <= 1 {
        return p;
    }
    let mut quotient = vec![0i64; p.len() - 1];
    let mut carry = 0;
    for (e, slot) in quotient.iter_mut().enumerate() {
        *slot = p[e] - carry;
        carry = *slot;
    }
    debug_assert_eq!(p[p.len() - 1], carry, "1 + q must divide the cycle product");
    quotient
}

fn coeff(v: &[i64], k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        v.get(k as usize).copied().unwrap_or(0)
    }
}

/// Trace of `w` on `∧^i U ⊗ ∧^j U*` (permutation representation).
pub fn exterior_bidegree_character(d: Bidegree, w: &CycleType) -> i64 {
    let p = permutation_exterior_traces(w);
    coeff(&p, d.i as i64) * coeff(&p, d.j as i64)
}

/// Character of `(DR_n)_{i,j}`:
/// `χ(∧^i V ⊗ ∧^j V) − χ(∧^{i−1} V ⊗ ∧^{j−1} V)` for `i + j < n`, else 0.
pub fn quotient_character(n: usize, d: Bidegree, w: &CycleType) -> i64 {
    if d.i + d.j >= n || w.n() != n {
        return 0;
    }
    let v = reflection_exterior_traces(w);
    let (i, j) = (d.i as i64, d.j as i64);
    coeff(&v, i) * coeff(&v, j) - coeff(&v, i - 1) * coeff(&v, j - 1)
}

/// `⟨f, g⟩ = (1/n!) Σ_w f(w) g(w)`, with exactness checked.
fn class_inner_product(n: usize, values: impl Iterator<Item = (u64, i128)>) -> Result<i64> {
    let total: i128 = values.map(|(size, v)| size as i128 * v).sum();
    let order = factorial(n) as i128;
    if total % order != 0 {
        return Err(Error::OutOfRange(format!(
            "class sum {total} not divisible by {order}"
        )));
    }
    Ok((total / order) as i64)
}

/// Multiplicity of `S^ν` in `S^λ ⊗ S^μ`.
pub fn kronecker_multiplicity(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let n = lambda.size();
    if mu.size() != n || nu.size() != n {
        return Err(Error::PartitionSizeMismatch(vec![n, mu.size(), nu.size()]));
    }
    let v = class_inner_product(
        n,
        cycle_types(n).iter().map(|w| {
            let p = &w.partition;
            (
                w.class_size,
                character(lambda, p) as i128 * character(mu, p) as i128 * character(nu, p) as i128,
            )
        }),
    )?;
    Ok(v as u64)
}

/// Hook Kronecker coefficient
/// `⟨s_{(n−a,1^a)} * s_{(n−b,1^b)}, s_{(n−c,1^c)}⟩` by the indicator formula
/// `χ(|b−a| ≤ c)·χ(c ≤ a+b ≤ 2n−c−2)`, valid for `0 < a, b < n`,
/// `0 < c < n − 1`.
pub fn rosas_hook_kronecker(n: usize, a: usize, b: usize, c: usize) -> Result<u8> {
    if !(0 < a && a < n && 0 < b && b < n && 0 < c && c + 1 < n) {
        return Err(Error::OutOfRange(format!(
            "hook Kronecker formula needs 0<a,b<n and 0<c<n-1; got n={n}, a={a}, b={b}, c={c}"
        )));
    }
    Ok(rosas_indicator(n as i64, a as i64, b as i64, c as i64))
}

/// The indicator product itself, without range checks.
pub fn rosas_indicator(n: i64, a: i64, b: i64, c: i64) -> u8 {
    let first = (b - a).abs() <= c;
    let second = c <= a + b && a + b <= 2 * n - c - 2;
    (first && second) as u8
}

/// `Σ_{i,j} ⟨χ_{(DR_n)_{i,j}}, χ^λ⟩ q^i t^j` for one partition `λ`.
fn graded_multiplicity(
    n: usize,
    lambda: &Partition,
    classes: &[CycleType],
) -> Result<QTPolynomial> {
    let chi: Vec<i64> = classes
        .iter()
        .map(|w| character(lambda, &w.partition))
        .collect();
    let mut p = QTPolynomial::zero();
    for i in 0..n {
        for j in 0..n - i {
            let d = Bidegree::new(i, j);
            let m = class_inner_product(
                n,
                classes.iter().zip(&chi).map(|(w, &x)| {
                    (
                        w.class_size,
                        quotient_character(n, d, w) as i128 * x as i128,
                    )
                }),
            )?;
            p.add_term(i as u32, j as u32, m);
        }
    }
    Ok(p)
}

/// Graded multiplicity of the hook `(n − k, 1^k)` in `DR_n`, from characters.
pub fn graded_hook_multiplicity(n: usize, k: usize) -> Result<QTPolynomial> {
    let h = HookLabel::new(n, k)?;
    graded_multiplicity(n, &h.partition(), &cycle_types(n))
}

/// `1` for the trivial hook, `[n]_{q,t}` for the sign, and
/// `[k+1]_{q,t} + qt·[k]_{q,t}` in between.
pub fn hook_multiplicity_closed_form(n: usize, k: usize) -> Result<QTPolynomial> {
    HookLabel::new(n, k)?;
    Ok(if k == 0 {
        QTPolynomial::one()
    } else if k == n - 1 {
        QTPolynomial::qt_integer(n as u32)
    } else {
        let qt = QTPolynomial::monomial(1, 1, 1);
        &QTPolynomial::qt_integer(k as u32 + 1) + &(&qt * &QTPolynomial::qt_integer(k as u32))
    })
}

/// `grFrob(DR_n; q, t)` expanded in irreducibles, partitions in reverse
/// lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusExpansion {
    pub n: usize,
    pub entries: Vec<(Partition, QTPolynomial)>,
}

impl FrobeniusExpansion {
    pub fn get(&self, lambda: &Partition) -> Option<&QTPolynomial> {
        self.entries
            .iter()
            .find(|(p, _)| p == lambda)
            .map(|(_, q)| q)
    }

    /// Partitions with `λ_3 ≥ 3` carrying a nonzero multiplicity.
    pub fn third_row_violations(&self) -> Vec<Partition> {
        self.entries
            .iter()
            .filter(|(p, q)| p.part(3) >= 3 && !q.is_zero())
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// `Σ_λ dim(λ) · m_λ(1, 1)`.
    pub fn total_dimension(&self) -> i64 {
        self.entries
            .iter()
            .map(|(p, q)| p.dimension() * q.eval_at_one())
            .sum()
    }
}

pub const MAX_FROBENIUS_N: usize = 7;

pub fn full_graded_frobenius(n: usize) -> Result<FrobeniusExpansion> {
    full_graded_frobenius_filtered(n, false)
}

pub fn full_graded_frobenius_filtered(n: usize, hooks_only: bool) -> Result<FrobeniusExpansion> {
    if n == 0 || n > MAX_FROBENIUS_N {
        return Err(Error::OutOfRange(format!(
            "graded Frobenius expansion supports 1 <= n <= {MAX_FROBENIUS_N}, got {n}"
        )));
    }
    let classes = cycle_types(n);
    let entries = partitions(n)
        .into_iter()
        .filter(|p| !hooks_only || p.is_hook())
        .map(|p| Ok((p.clone(), graded_multiplicity(n, &p, &classes)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FrobeniusExpansion { n, entries })
}

/// Expected total `dim DR_n = C(2n−1, n)`.
pub fn expected_dr_dimension(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        binomial(2 * n - 1, n)
    }
}
