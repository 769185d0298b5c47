//! Boolean incidence matrices and the operators `δ_n^r: ∧_{i,j} → ∧_{i+r,j+r}`.
//!
//! Operators are written in the basis `v(A, B)`, where one application of
//! `δ_n` sends `v(A, B)` to `Σ_{c ∉ A∪B} v(A∪c, B∪c)` up to a global sign
//! `-1`. The matrices here drop that sign so all entries are nonnegative;
//! the literal operator is `(-1)^r` times [`delta_power_matrix`].
//!
//! Index order: `(A, B) ↦ colex(A)·C(n, |B|) + colex(B)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combin::{binomial, colex_rank, factorial, subsets_colex};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::exterior::{casimir_power, v_basis_element, Bidegree, Element, MAX_RANK};
use crate::linalg::ExactMatrix;

/// `M_n(r, s)`: rows are `s`-subsets `T`, columns `r`-subsets `S`, entry 1
/// iff `S ⊆ T`. Both index sets are in colex order.
#[derive(Clone, Debug)]
pub struct IncidenceMatrix {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub matrix: ExactMatrix,
}

pub fn incidence_matrix(n: usize, r: usize, s: usize) -> Result<IncidenceMatrix> {
    if r > s || s > n {
        return Err(Error::OrderingViolation { r, s, n });
    }
    if n > MAX_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let rows = subsets_colex(n, s);
    let cols = subsets_colex(n, r);
    let matrix = ExactMatrix::from_fn(rows.len(), cols.len(), |t, c| {
        if cols[c] & !rows[t] == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    Ok(IncidenceMatrix { n, r, s, matrix })
}

#[derive(Clone, Debug, Serialize)]
pub struct HlpRow {
    pub i: usize,
    pub dimension: u64,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HlpReport {
    pub n: usize,
    pub rows: Vec<HlpRow>,
    pub pass: bool,
}

/// Rank of every square `M_n(i, n−i)` with `i ≤ n/2`.
pub fn check_boolean_hlp(n: usize) -> Result<HlpReport> {
    check_boolean_hlp_with(n, Strategy::default())
}

pub fn check_boolean_hlp_with(n: usize, strategy: Strategy) -> Result<HlpReport> {
    let is: Vec<usize> = (0..=n / 2).collect();
    let rows = strategy
        .map(&is, |&i| {
            let m = incidence_matrix(n, i, n - i)?;
            let rank = m.matrix.rank_with(strategy);
            let dimension = binomial(n, i);
            Ok(HlpRow {
                i,
                dimension,
                rank,
                pass: rank as u64 == dimension,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.pass);
    Ok(HlpReport { n, rows, pass })
}

fn pair_index(n: usize, j: usize, a: u32, b: u32) -> usize {
    colex_rank(a) * binomial(n, j) as usize + colex_rank(b)
}

fn check_bidegree(n: usize, i: usize, j: usize) -> Result<()> {
    if n > MAX_RANK {
        return Err(Error::RankTooLarge(n));
    }
    if i > n || j > n {
        return Err(Error::BidegreeOutOfRange { i, j, n });
    }
    Ok(())
}

/// Nonzero entries `(row, col, value)` of the sign-free `δ_n^r` operator,
/// computed by applying the one-step recursion `r` times to each `v(A, B)`.
fn delta_power_entries(n: usize, i: usize, j: usize, r: usize) -> Vec<(usize, usize, u64)> {
    if i + r > n || j + r > n {
        return Vec::new();
    }
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut out = Vec::new();
    for a in subsets_colex(n, i) {
        for b in subsets_colex(n, j) {
            let col = pair_index(n, j, a, b);
            let mut state: HashMap<(u32, u32), u64> = HashMap::from([((a, b), 1)]);
            for _ in 0..r {
                let mut next = HashMap::new();
                for (&(c, d), &cnt) in &state {
                    let mut free = full & !(c | d);
                    while free != 0 {
                        let bit = free & free.wrapping_neg();
                        *next.entry((c | bit, d | bit)).or_insert(0) += cnt;
                        free &= free - 1;
                    }
                }
                state = next;
            }
            for ((c, d), cnt) in state {
                out.push((pair_index(n, j + r, c, d), col, cnt));
            }
        }
    }
    out
}

/// Matrix of `δ_n^r` from `(i, j)` to `(i+r, j+r)` in the `v` basis, with the
/// global sign `(-1)^r` removed. The codomain may be empty.
pub fn delta_power_matrix(n: usize, i: usize, j: usize, r: usize) -> Result<ExactMatrix> {
    check_bidegree(n, i, j)?;
    let cols = (binomial(n, i) * binomial(n, j)) as usize;
    let rows = if i + r > n || j + r > n {
        0
    } else {
        (binomial(n, i + r) * binomial(n, j + r)) as usize
    };
    let mut entries = vec![BigRational::zero(); rows * cols];
    for (row, col, v) in delta_power_entries(n, i, j, r) {
        entries[row * cols + col] = BigRational::from_integer(BigInt::from(v));
    }
    ExactMatrix::from_entries(rows, cols, entries)
}

/// The same operator computed by literal multiplication with `δ_n^r` and
/// read off in the `v` basis, signs included.
pub fn literal_delta_power_matrix(n: usize, i: usize, j: usize, r: usize) -> Result<ExactMatrix> {
    check_bidegree(n, i, j)?;
    let power = casimir_power(n, r);
    let domain: Vec<(u32, u32)> = pairs(n, i, j);
    let codomain: Vec<(u32, u32)> = if i + r > n || j + r > n {
        Vec::new()
    } else {
        pairs(n, i + r, j + r)
    };
    let codomain_v = codomain
        .iter()
        .map(|&(c, d)| v_element(n, c, d))
        .collect::<Result<Vec<_>>>()?;
    let mut m = ExactMatrix::zeros(codomain.len(), domain.len());
    let mut entries = m.entries().to_vec();
    for (col, &(a, b)) in domain.iter().enumerate() {
        let image = power.checked_mul(&v_element(n, a, b)?)?;
        for (row, v) in codomain_v.iter().enumerate() {
            // each v(C, D) is ± one canonical monomial
            let (neg, mono) = v
                .as_signed_monomial()
                .expect("v basis elements are monomials");
            let c = image.coeff(&mono);
            entries[row * domain.len() + col] = if neg { -c } else { c };
        }
    }
    m = ExactMatrix::from_entries(codomain.len(), domain.len(), entries)?;
    Ok(m)
}

fn pairs(n: usize, i: usize, j: usize) -> Vec<(u32, u32)> {
    let bs = subsets_colex(n, j);
    subsets_colex(n, i)
        .into_iter()
        .flat_map(|a| bs.iter().map(move |&b| (a, b)))
        .collect()
}

fn v_element(n: usize, a: u32, b: u32) -> Result<Element> {
    let ia = crate::combin::mask_to_indices(a);
    let ib = crate::combin::mask_to_indices(b);
    v_basis_element(&ia, &ib, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzEntry {
    pub i: usize,
    pub j: usize,
    pub r: usize,
    pub size: u64,
    pub rank: usize,
    pub pass: bool,
}

/// How the operators split along `(I, J) = (A−B, B−A)`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BlockStatistics {
    pub blocks: usize,
    pub largest_block: u64,
    pub nonzero_entries: usize,
    /// Nonzeros not covered by any `(I, J)` block; expected 0.
    pub off_block_entries: usize,
    /// Blocks that differ from `r!·M_{|S'|}(k, k+r)`; expected 0.
    pub mismatched_blocks: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzCertificate {
    pub n: usize,
    pub entries: Vec<LefschetzEntry>,
    pub block_statistics: BlockStatistics,
    pub pass: bool,
}

/// Compresses the bits of `mask` that lie in `support` into a dense mask.
fn compress(mask: u32, support: u32) -> u32 {
    let mut out = 0;
    let mut bit = 0;
    let mut s = support;
    while s != 0 {
        let low = s & s.wrapping_neg();
        if mask & low != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        s &= s - 1;
    }
    out
}

/// Checks the `(I, J)` block structure of one operator.
fn block_statistics(n: usize, i: usize, j: usize, r: usize) -> BlockStatistics {
    let entries = delta_power_entries(n, i, j, r);
    let mut stats = BlockStatistics {
        nonzero_entries: entries.len(),
        ..Default::default()
    };
    if entries.is_empty() {
        return stats;
    }
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let lookup: HashMap<(usize, usize), u64> =
        entries.iter().map(|&(r, c, v)| ((r, c), v)).collect();
    let rf = factorial(r);
    let mut covered = 0;
    for k in 0..=i.min(j) {
        let (ni, nj) = (i - k, j - k);
        for im in subsets_colex(n, ni) {
            for jm in subsets_colex(n, nj) {
                if im & jm != 0 {
                    continue;
                }
                let free = full & !(im | jm);
                let m = free.count_ones() as usize;
                if k + r > m {
                    continue;
                }
                stats.blocks += 1;
                let size = binomial(m, k);
                stats.largest_block = stats.largest_block.max(size);
                let mut ok = true;
                for dom in subsets_colex(n, k).into_iter().filter(|&s| s & !free == 0) {
                    let col = pair_index(n, j, im | dom, jm | dom);
                    let dom_c = compress(dom, free);
                    for cod in subsets_colex(n, k + r)
                        .into_iter()
                        .filter(|&s| s & !free == 0)
                    {
                        let row = pair_index(n, j + r, im | cod, jm | cod);
                        let got = lookup.get(&(row, col)).copied().unwrap_or(0);
                        if got != 0 {
                            covered += 1;
                        }
                        let cod_c = compress(cod, free);
                        let want = if dom_c & !cod_c == 0 { rf } else { 0 };
                        ok &= got == want;
                    }
                }
                if !ok {
                    stats.mismatched_blocks += 1;
                }
            }
        }
    }
    stats.off_block_entries = stats.nonzero_entries - covered;
    stats
}

/// For every `i + j ≤ n` checks that `δ_n^{n−i−j}: ∧_{i,j} → ∧_{n−j,n−i}` is
/// square of size `C(n,i)C(n,j)` with full rank, and that it splits into
/// `(I, J)` blocks each equal to `r!` times a Boolean incidence matrix.
pub fn certify_lefschetz(n: usize) -> Result<LefschetzCertificate> {
    certify_lefschetz_with(n, Strategy::default())
}

pub fn certify_lefschetz_with(n: usize, strategy: Strategy) -> Result<LefschetzCertificate> {
    if n == 0 {
        return Err(Error::OutOfRange(
            "Lefschetz certification needs n >= 1".into(),
        ));
    }
    if n > MAX_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let degrees: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (0..=n - i).map(move |j| (i, j)))
        .collect();
    let results = strategy
        .map(&degrees, |&(i, j)| {
            let r = n - i - j;
            let m = delta_power_matrix(n, i, j, r)?;
            let size = binomial(n, i) * binomial(n, j);
            let rank = m.rank_with(strategy);
            let pass = m.rows() as u64 == size && m.cols() as u64 == size && rank as u64 == size;
            Ok((
                LefschetzEntry {
                    i,
                    j,
                    r,
                    size,
                    rank,
                    pass,
                },
                block_statistics(n, i, j, r),
            ))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(results.len());
    let mut total = BlockStatistics::default();
    for (entry, s) in results {
        entries.push(entry);
        total.blocks += s.blocks;
        total.largest_block = total.largest_block.max(s.largest_block);
        total.nonzero_entries += s.nonzero_entries;
        total.off_block_entries += s.off_block_entries;
        total.mismatched_blocks += s.mismatched_blocks;
    }
    let pass = entries.iter().all(|e| e.pass)
        && total.off_block_entries == 0
        && total.mismatched_blocks == 0;
    Ok(LefschetzCertificate {
        n,
        entries,
        block_statistics: total,
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Injective,
    Surjective,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapClassification {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub expected: MapKind,
    pub domain_dimension: u64,
    pub codomain_dimension: u64,
    pub rank: usize,
    pub cokernel_dimension: u64,
    pub pass: bool,
}

/// Multiplication by `δ_n` from `∧_{i−1,j−1}` to `∧_{i,j}`: expected injective
/// for `i + j ≤ n` and surjective otherwise, confirmed by rank.
pub fn injectivity_surjectivity(n: usize, i: usize, j: usize) -> Result<MapClassification> {
    check_bidegree(n, i, j)?;
    let codomain_dimension = binomial(n, i) * binomial(n, j);
    let (domain_dimension, rank) = if i == 0 || j == 0 {
        (0, 0)
    } else {
        let m = delta_power_matrix(n, i - 1, j - 1, 1)?;
        (m.cols() as u64, m.rank())
    };
    let expected = if i + j <= n {
        MapKind::Injective
    } else {
        MapKind::Surjective
    };
    let pass = match expected {
        MapKind::Injective => rank as u64 == domain_dimension,
        MapKind::Surjective => rank as u64 == codomain_dimension,
    };
    Ok(MapClassification {
        n,
        i,
        j,
        expected,
        domain_dimension,
        codomain_dimension,
        rank,
        cokernel_dimension: codomain_dimension - rank as u64,
        pass,
    })
}

/// Degree pairs `(i, j)` with `i + j ≤ n`, in lexicographic order.
pub fn lefschetz_degrees(n: usize) -> Vec<Bidegree> {
    Bidegree::all(n)
        .into_iter()
        .filter(|d| d.total() <= n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(m: &ExactMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .map(|x| i64::try_from(x.to_integer()).unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn m4_1_3() {
        let m = incidence_matrix(4, 1, 3).unwrap();
        // rows {123},{124},{134},{234}; columns {1},{2},{3},{4}
        assert_eq!(
            int(&m.matrix),
            vec![
                vec![1, 1, 1, 0],
                vec![1, 1, 0, 1],
                vec![1, 0, 1, 1],
                vec![0, 1, 1, 1]
            ]
        );
        assert_eq!(m.matrix.rank(), 4);
    }

    #[test]
    fn incidence_examples() {
        let m = incidence_matrix(5, 0, 2).unwrap();
        assert_eq!(m.matrix.cols(), 1);
        assert!(m.matrix.entries().iter().all(|x| x.is_one()));
        assert_eq!(incidence_matrix(3, 1, 2).unwrap().matrix.rank(), 3);
        assert!(matches!(
            incidence_matrix(3, 2, 1),
            Err(Error::OrderingViolation { .. })
        ));
        assert!(incidence_matrix(3, 1, 4).is_err());
    }

    #[test]
    fn boolean_hlp_small() {
        let r0 = check_boolean_hlp(0).unwrap();
        assert_eq!(r0.rows.len(), 1);
        assert!(r0.pass);
        for n in 1..=8 {
            assert!(check_boolean_hlp(n).unwrap().pass, "n = {n}");
        }
    }

    #[test]
    fn delta_power_examples() {
        assert_eq!(
            delta_power_matrix(3, 1, 2, 0).unwrap(),
            ExactMatrix::identity(9)
        );
        let m = delta_power_matrix(2, 0, 0, 2).unwrap();
        assert_eq!(int(&m), vec![vec![2]]);
        assert_eq!(delta_power_matrix(2, 2, 1, 1).unwrap().rows(), 0);
        assert!(delta_power_matrix(2, 3, 0, 0).is_err());
        let m = delta_power_matrix(4, 1, 1, 2).unwrap();
        assert!(m
            .entries()
            .iter()
            .all(|x| x.is_integer() && *x >= BigRational::zero()));
    }

    #[test]
    fn literal_operator_differs_by_sign() {
        for n in 1..=3 {
            for i in 0..=n {
                for j in 0..=n {
                    for r in 0..=2 {
                        let lit = literal_delta_power_matrix(n, i, j, r).unwrap();
                        let rec = delta_power_matrix(n, i, j, r).unwrap();
                        let sign = if r % 2 == 0 {
                            BigRational::one()
                        } else {
                            -BigRational::one()
                        };
                        let want: Vec<_> = rec.entries().iter().map(|x| x * &sign).collect();
                        assert_eq!(lit.entries(), &want[..], "n={n} ({i},{j}) r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn composition() {
        let n = 4;
        for (i, j, r1, r2) in [(0, 1, 1, 2), (1, 1, 1, 1), (0, 0, 2, 2)] {
            let lhs = delta_power_matrix(n, i, j, r1 + r2).unwrap();
            let a = delta_power_matrix(n, i, j, r1).unwrap();
            let b = delta_power_matrix(n, i + r1, j + r1, r2).unwrap();
            assert_eq!(b.checked_mul(&a).unwrap(), lhs);
        }
    }

    #[test]
    fn certificates() {
        let c1 = certify_lefschetz(1).unwrap();
        assert!(c1.pass);
        let e = c1.entries.iter().find(|e| e.i == 0 && e.j == 0).unwrap();
        assert_eq!((e.r, e.size, e.rank), (1, 1, 1));
        let c4 = certify_lefschetz(4).unwrap();
        assert!(c4.pass);
        assert_eq!(c4.block_statistics.off_block_entries, 0);
        assert_eq!(c4.block_statistics.mismatched_blocks, 0);
        let m = delta_power_matrix(5, 1, 1, 3).unwrap();
        assert_eq!((m.rows(), m.rank()), (25, 25));
        assert!(certify_lefschetz(0).is_err());
    }

    #[test]
    fn single_delta_maps() {
        let a = injectivity_surjectivity(3, 1, 1).unwrap();
        assert_eq!((a.expected, a.rank, a.pass), (MapKind::Injective, 1, true));
        let b = injectivity_surjectivity(3, 2, 2).unwrap();
        assert_eq!((b.expected, b.rank, b.pass), (MapKind::Surjective, 9, true));
        let c = injectivity_surjectivity(2, 1, 1).unwrap();
        assert_eq!((c.rank, c.cokernel_dimension, c.pass), (1, 3, true));
        for n in 1..=4 {
            for i in 0..=n {
                for j in 0..=n {
                    assert!(
                        injectivity_surjectivity(n, i, j).unwrap().pass,
                        "n={n} ({i},{j})"
                    );
                }
            }
        }
    }
}
