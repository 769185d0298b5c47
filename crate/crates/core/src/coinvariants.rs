//! Fermionic diagonal coinvariant rings as explicit quotients.
//!
//! Two models share the ambient ring `∧{Θ_n, Ξ_n}`:
//! * `ReflectionRank(n)`: the ideal is generated by `δ_n` alone; this is
//!   `DR_W` for any reflection group `W` of rank `n` (only `n` matters).
//! * `Permutation(n)`: `S_n` permutes indices diagonally and the ideal is
//!   generated by `Σθ_i`, `Σξ_i` and `δ_n`; this is `DR_n`.
//!
//! All ideals are bihomogeneous, so dimensions are computed one bidegree at a
//! time from the span of `g·m` over generators `g` and monomials `m`.

use serde::Serialize;

use num_rational::BigRational;
use num_traits::Zero;

use crate::characters::{cycle_types, exterior_bidegree_character};
use crate::combin::{binomial, binomial_i, factorial, narayana};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::exterior::{bidegree_basis, casimir, check_enumeration_cap, Bidegree, Element};
use crate::linalg::ExactMatrix;
use crate::paths::{enumerate, Family, Path, Step};

pub use crate::qt::QTPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuotientKind {
    ReflectionRank,
    Permutation,
}

impl std::str::FromStr for QuotientKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reflection" => Ok(QuotientKind::ReflectionRank),
            "permutation" => Ok(QuotientKind::Permutation),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientModel {
    kind: QuotientKind,
    n: usize,
    generators: Vec<Element>,
}

impl QuotientModel {
    pub fn new(kind: QuotientKind, n: usize) -> Self {
        match kind {
            QuotientKind::ReflectionRank => Self::reflection(n),
            QuotientKind::Permutation => Self::permutation(n),
        }
    }

    /// `DR_W` for `W` of rank `n`: the principal ideal `⟨δ_n⟩`.
    pub fn reflection(n: usize) -> Self {
        QuotientModel {
            kind: QuotientKind::ReflectionRank,
            n,
            generators: vec![casimir(n)],
        }
    }

    /// `DR_n`: ideal generated by `θ_1+⋯+θ_n`, `ξ_1+⋯+ξ_n` and `δ_n`.
    pub fn permutation(n: usize) -> Self {
        let mut theta_sum = Element::zero(n);
        let mut xi_sum = Element::zero(n);
        for k in 1..=n {
            theta_sum = &theta_sum + &Element::theta(n, k).expect("index in range");
            xi_sum = &xi_sum + &Element::xi(n, k).expect("index in range");
        }
        QuotientModel {
            kind: QuotientKind::Permutation,
            n,
            generators: vec![theta_sum, xi_sum, casimir(n)],
        }
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Bigraded dimension from the closed formula: `C(r,i)C(r,j) −
    /// C(r,i−1)C(r,j−1)` with `r` the rank of the underlying reflection
    /// representation (`n`, or `n − 1` for the permutation model), and zero
    /// past the vanishing line.
    pub fn closed_form_dimension(&self, d: Bidegree) -> u64 {
        let r = self.reflection_rank();
        let Some(r) = r else {
            return 0;
        };
        if d.i + d.j > r {
            return 0;
        }
        let (i, j) = (d.i as i64, d.j as i64);
        binomial(r, d.i) * binomial(r, d.j) - binomial_i(r, i - 1) * binomial_i(r, j - 1)
    }

    fn reflection_rank(&self) -> Option<usize> {
        match self.kind {
            QuotientKind::ReflectionRank => Some(self.n),
            QuotientKind::Permutation => self.n.checked_sub(1),
        }
    }

    pub fn closed_form_hilbert(&self) -> QTPolynomial {
        let mut p = QTPolynomial::zero();
        for d in Bidegree::all(self.n) {
            p.add_term(d.i as u32, d.j as u32, self.closed_form_dimension(d) as i64);
        }
        p
    }

    pub fn closed_form_total(&self) -> u64 {
        match self.reflection_rank() {
            None => 0,
            Some(r) => binomial(2 * r + 1, r),
        }
    }
}

/// Rows span the bidegree-`d` slice of the ideal, in the monomial basis
/// [`bidegree_basis`]`(n, d)`. One row per generator and monomial multiplier.
pub fn ideal_piece_basis(model: &QuotientModel, d: Bidegree) -> Result<ExactMatrix> {
    let n = model.n;
    if !d.within(n) {
        return Err(Error::BidegreeOutOfRange { i: d.i, j: d.j, n });
    }
    let basis = bidegree_basis(n, d);
    let mut rows = Vec::new();
    for g in &model.generators {
        for gd in g.bidegrees() {
            if gd.i > d.i || gd.j > d.j {
                continue;
            }
            for m in bidegree_basis(n, Bidegree::new(d.i - gd.i, d.j - gd.j)) {
                let prod = g.checked_mul(&Element::from_monomial(m))?;
                rows.push(prod.coordinates(&basis));
            }
        }
    }
    if rows.is_empty() {
        return Ok(ExactMatrix::zeros(0, basis.len()));
    }
    ExactMatrix::from_rows(rows)
}

/// `dim ∧_{i,j} − rank` of the ideal slice.
pub fn quotient_dimension(model: &QuotientModel, d: Bidegree) -> Result<usize> {
    quotient_dimension_with(model, d, Strategy::default())
}

pub fn quotient_dimension_with(
    model: &QuotientModel,
    d: Bidegree,
    strategy: Strategy,
) -> Result<usize> {
    let ideal = ideal_piece_basis(model, d)?;
    Ok(ideal.cols() - ideal.rank_with(strategy))
}

/// Hilbert series computed bidegree by bidegree from the quotient.
pub fn hilbert_series(model: &QuotientModel) -> Result<QTPolynomial> {
    hilbert_series_with(model, Strategy::default())
}

pub fn hilbert_series_with(model: &QuotientModel, strategy: Strategy) -> Result<QTPolynomial> {
    check_enumeration_cap(model.n, None)?;
    let ds = Bidegree::all(model.n);
    let dims = strategy.map(&ds, |&d| quotient_dimension_with(model, d, strategy));
    let mut p = QTPolynomial::zero();
    for (d, dim) in ds.into_iter().zip(dims) {
        p.add_term(d.i as u32, d.j as u32, dim? as i64);
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimsRow {
    pub i: usize,
    pub j: usize,
    pub closed: u64,
    pub oracle: Option<u64>,
    #[serde(rename = "match")]
    pub matched: bool,
}

/// Closed-form dimensions for every bidegree, optionally checked against the
/// quotient computation. Rows are sorted by `(i, j)`.
pub fn dims_table(model: &QuotientModel, oracle: bool, strategy: Strategy) -> Result<Vec<DimsRow>> {
    if oracle {
        check_enumeration_cap(model.n, None)?;
    }
    let ds = Bidegree::all(model.n);
    let rows = strategy.map(&ds, |&d| -> Result<DimsRow> {
        let closed = model.closed_form_dimension(d);
        let oracle = if oracle {
            Some(quotient_dimension_with(model, d, strategy)? as u64)
        } else {
            None
        };
        Ok(DimsRow {
            i: d.i,
            j: d.j,
            closed,
            oracle,
            matched: oracle.is_none_or(|o| o == closed),
        })
    });
    rows.into_iter().collect()
}

/// `[dim (DR_W)_{k, n−k}]` for `k = 0..=n`, from the closed form. These are
/// `Nar(n+1, k+1)`.
pub fn narayana_boundary(n: usize) -> Vec<u64> {
    let model = QuotientModel::reflection(n);
    (0..=n)
        .map(|k| model.closed_form_dimension(Bidegree::new(k, n - k)))
        .collect()
}

/// `[dim (DR_n)_{k−1, n−k}]` for `k = 1..=n`, from the closed form. These are
/// `Nar(n, k)`.
pub fn permutation_narayana_boundary(n: usize) -> Vec<u64> {
    let model = QuotientModel::permutation(n);
    (1..=n)
        .map(|k| model.closed_form_dimension(Bidegree::new(k - 1, n - k)))
        .collect()
}

pub fn narayana_row(n: usize) -> Vec<u64> {
    (1..=n).map(|k| narayana(n, k)).collect()
}

/// Dimension of the `S_n`-invariants of `∧_{i,j}` under the diagonal
/// permutation action, by averaging the trace over conjugacy classes.
pub fn invariant_dimension(n: usize, d: Bidegree) -> u64 {
    let total: i128 = cycle_types(n)
        .iter()
        .map(|w| w.class_size as i128 * exterior_bidegree_character(d, w) as i128)
        .sum();
    let order = factorial(n) as i128;
    debug_assert_eq!(total % order, 0);
    (total / order) as u64
}

/// `ξ'_i = ξ_i + Σ_{j=2}^{n} ξ_j`.
pub fn primed_generator(i: usize, n: usize) -> Result<Element> {
    let mut e = Element::xi(n, i)?;
    for j in 2..=n {
        e = &e + &Element::xi(n, j)?;
    }
    Ok(e)
}

/// Product of step weights in path order with `ξ` replaced by `ξ'`:
/// Up ↦ 1, θ-step ↦ `θ_k`, ξ-step ↦ `ξ'_k`, Down ↦ `θ_k ξ'_k`.
pub fn primed_weight(path: &Path) -> Result<Element> {
    let n = path.len();
    let mut acc = Element::one(n);
    for (idx, step) in path.steps().iter().enumerate() {
        let k = idx + 1;
        let w = match step {
            Step::Up => continue,
            Step::HorizTheta => Element::theta(n, k)?,
            Step::HorizXi => primed_generator(k, n)?,
            Step::Down => &Element::theta(n, k)? * &primed_generator(k, n)?,
        };
        acc = &acc * &w;
    }
    Ok(acc)
}

/// Coefficients of `ξ'_2..ξ'_n` in the basis `ξ_2..ξ_n`: `2` on the diagonal,
/// `1` elsewhere.
pub fn primed_transition_matrix(n: usize) -> ExactMatrix {
    let size = n.saturating_sub(1);
    ExactMatrix::from_fn(size, size, |r, c| {
        BigRational::from_integer(if r == c { 2 } else { 1 }.into())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimedEntry {
    pub i: usize,
    pub j: usize,
    pub count: usize,
    pub quotient_dimension: usize,
    pub independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimedBasisReport {
    pub n: usize,
    pub entries: Vec<PrimedEntry>,
    pub total: usize,
    pub expected_total: u64,
    pub transition_determinant: String,
    pub pass: bool,
}

/// Images of `{wt'(σ) : σ ∈ Π(n)_{>0}}` in `DR_n`: per bidegree, they must
/// be independent modulo the ideal and as many as the quotient dimension.
pub fn primed_basis_check(n: usize) -> Result<PrimedBasisReport> {
    primed_basis_check_with(n, Strategy::default())
}

pub fn primed_basis_check_with(n: usize, strategy: Strategy) -> Result<PrimedBasisReport> {
    check_enumeration_cap(n, None)?;
    let model = QuotientModel::permutation(n);
    let mut grouped: std::collections::BTreeMap<Bidegree, Vec<Path>> = Default::default();
    for p in enumerate(n, Family::StrictlyPositive) {
        grouped.entry(p.bidegree()).or_default().push(p);
    }
    let ds = Bidegree::all(n);
    let entries = strategy.map(&ds, |&d| -> Result<PrimedEntry> {
        let paths = grouped.get(&d).cloned().unwrap_or_default();
        let basis = bidegree_basis(n, d);
        let ideal = ideal_piece_basis(&model, d)?;
        let ideal_rank = ideal.rank_with(strategy);
        let mut vectors = Vec::with_capacity(paths.len());
        for p in &paths {
            let w = primed_weight(p)?;
            if w.bidegrees().iter().any(|&wd| wd != d) {
                return Err(Error::DimensionMismatch(format!(
                    "primed weight of {p} not in {d}"
                )));
            }
            vectors.push(w.coordinates(&basis));
        }
        let independent = if vectors.is_empty() {
            true
        } else {
            let stacked = ideal.vstack(&ExactMatrix::from_rows(vectors)?)?;
            stacked.rank_with(strategy) - ideal_rank == paths.len()
        };
        Ok(PrimedEntry {
            i: d.i,
            j: d.j,
            count: paths.len(),
            quotient_dimension: basis.len() - ideal_rank,
            independent,
        })
    });
    let entries: Vec<PrimedEntry> = entries.into_iter().collect::<Result<_>>()?;
    let total: usize = entries.iter().map(|e| e.count).sum();
    let expected_total = if n == 0 { 1 } else { binomial(2 * n - 1, n) };
    let det = primed_transition_matrix(n).determinant()?;
    let pass = total as u64 == expected_total
        && entries
            .iter()
            .all(|e| e.independent && e.count == e.quotient_dimension)
        && det == BigRational::from_integer((n.max(1) as i64).into())
        && !det.is_zero();
    Ok(PrimedBasisReport {
        n,
        entries,
        total,
        expected_total,
        transition_determinant: crate::exterior::format_rational(&det),
        pass,
    })
}

/// True when the quotient dimension is zero in every bidegree past the
/// vanishing line of the model.
pub fn vanishing_holds(model: &QuotientModel) -> Result<bool> {
    let bound = match model.kind {
        QuotientKind::ReflectionRank => model.n + 1,
        QuotientKind::Permutation => model.n,
    };
    for d in Bidegree::all(model.n) {
        if d.total() >= bound && quotient_dimension(model, d)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
