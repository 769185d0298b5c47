//! Decorated lattice paths and the path order on monomials.
//!
//! A path has `n` steps from {Up, θ-horizontal, ξ-horizontal, Down}; step
//! `k` records whether `θ_k` and `ξ_k` divide the corresponding monomial
//! (see [`Monomial::to_path`]).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coinvariants::{ideal_piece_basis, QuotientModel};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::exterior::{bidegree_basis, Bidegree, Monomial};
use crate::qt::QTPolynomial;

/// Steps in lexicographic order: Up < θ-horizontal < ξ-horizontal < Down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    HorizTheta,
    HorizXi,
    Down,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::Up, Step::HorizTheta, Step::HorizXi, Step::Down];

    pub fn rise(self) -> i32 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
            Step::HorizTheta | Step::HorizXi => 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Step::Up => "U",
            Step::HorizTheta => "Ht",
            Step::HorizXi => "Hx",
            Step::Down => "D",
        }
    }
}

impl FromStr for Step {
    type Err = Error;
    fn from_str(s: &str) -> Result<Step> {
        match s {
            "U" => Ok(Step::Up),
            "Ht" | "Hθ" | "Tθ" => Ok(Step::HorizTheta),
            "Hx" | "Hξ" | "Tξ" => Ok(Step::HorizXi),
            "D" => Ok(Step::Down),
            other => Err(Error::Parse(format!("unknown step {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// every path, `4^n` of them
    All,
    /// never below the axis
    NonNegative,
    /// strictly above the axis after the first step
    StrictlyPositive,
}

impl Family {
    fn floor(self) -> Option<i32> {
        match self {
            Family::All => None,
            Family::NonNegative => Some(0),
            Family::StrictlyPositive => Some(1),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "all" => Ok(Family::All),
            "nonneg" => Ok(Family::NonNegative),
            "strict" => Ok(Family::StrictlyPositive),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Statistics {
    /// minimum height, including the origin (so always `<= 0`)
    pub depth: i32,
    pub total_deg: usize,
    pub theta_deg: usize,
    pub xi_deg: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn new(steps: Vec<Step>) -> Self {
        Path { steps }
    }

    pub fn all_up(n: usize) -> Self {
        Path {
            steps: vec![Step::Up; n],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Heights after each step.
    pub fn heights(&self) -> Vec<i32> {
        self.steps
            .iter()
            .scan(0, |h, s| {
                *h += s.rise();
                Some(*h)
            })
            .collect()
    }

    pub fn end_height(&self) -> i32 {
        self.steps.iter().map(|s| s.rise()).sum()
    }

    pub fn depth(&self) -> i32 {
        self.heights().into_iter().min().unwrap_or(0).min(0)
    }

    pub fn statistics(&self) -> Statistics {
        let count = |s: Step| self.steps.iter().filter(|&&x| x == s).count();
        let down = count(Step::Down);
        let theta_deg = down + count(Step::HorizTheta);
        let xi_deg = down + count(Step::HorizXi);
        Statistics {
            depth: self.depth(),
            total_deg: theta_deg + xi_deg,
            theta_deg,
            xi_deg,
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        let s = self.statistics();
        Bidegree::new(s.theta_deg, s.xi_deg)
    }

    pub fn in_family(&self, family: Family) -> bool {
        match family.floor() {
            None => true,
            Some(floor) => self.heights().into_iter().all(|h| h >= floor),
        }
    }

    /// In `Π(n)_{=0}`: never below the axis and ending on it.
    pub fn ends_on_axis(&self) -> bool {
        self.end_height() == 0 && self.depth() == 0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.steps.iter().map(|s| s.symbol()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Path> {
        Ok(Path::new(
            s.split_whitespace()
                .map(str::parse)
                .collect::<Result<_>>()?,
        ))
    }
}

/// Key realising the path order: total degree ascending, then larger depth
/// first, then lexicographic on steps.
fn order_key(p: &Path) -> (usize, i32, &[Step]) {
    let s = p.statistics();
    (s.total_deg, -s.depth, p.steps())
}

/// Compares two paths of the same length in the path order `≺`.
pub fn compare(a: &Path, b: &Path) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "paths of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(order_key(a).cmp(&order_key(b)))
}

pub fn compare_monomials(a: &Monomial, b: &Monomial) -> Ordering {
    order_key(&a.to_path()).cmp(&order_key(&b.to_path()))
}

/// Lexicographic stream of the paths of a family.
pub struct PathIter {
    family: Family,
    current: Option<Vec<Step>>,
}

impl Iterator for PathIter {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        let out = self.current.clone()?;
        self.current = self.successor(&out);
        Some(Path::new(out))
    }
}

impl PathIter {
    fn successor(&self, steps: &[Step]) -> Option<Vec<Step>> {
        let floor = self.family.floor();
        let mut heights = Vec::with_capacity(steps.len() + 1);
        heights.push(0);
        for s in steps {
            heights.push(heights.last().unwrap() + s.rise());
        }
        for k in (0..steps.len()).rev() {
            let before = heights[k];
            let next = Step::ALL
                .iter()
                .copied()
                .filter(|&s| s > steps[k])
                .find(|s| floor.is_none_or(|f| before + s.rise() >= f));
            if let Some(s) = next {
                let mut out = steps[..k].to_vec();
                out.push(s);
                // Up never violates a floor once the prefix is valid
                out.resize(steps.len(), Step::Up);
                return Some(out);
            }
        }
        None
    }
}

/// Every path of length `n` in `family`, each exactly once, in lex order.
pub fn enumerate(n: usize, family: Family) -> PathIter {
    PathIter {
        family,
        current: Some(vec![Step::Up; n]),
    }
}

/// `Σ q^{deg_θ} t^{deg_ξ}` over the family.
pub fn path_generating(n: usize, family: Family) -> QTPolynomial {
    let mut p = QTPolynomial::zero();
    for path in enumerate(n, family) {
        let s = path.statistics();
        p.add_term(s.theta_deg as u32, s.xi_deg as u32, 1);
    }
    p
}

/// Generating polynomial of the nonnegative paths that end on the axis.
pub fn on_axis_generating(n: usize) -> QTPolynomial {
    let mut p = QTPolynomial::zero();
    for path in enumerate(n, Family::NonNegative).filter(Path::ends_on_axis) {
        let s = path.statistics();
        p.add_term(s.theta_deg as u32, s.xi_deg as u32, 1);
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct TermOrderViolation {
    pub smaller: String,
    pub larger: String,
    pub multiplier: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermOrderReport {
    pub n: usize,
    pub exhaustive: bool,
    pub minimum_is_one: bool,
    pub triples_checked: u64,
    pub violations: u64,
    pub first_violation: Option<TermOrderViolation>,
    pub pass: bool,
}

/// Checks the two term-order axioms on monomials: `1` is the minimum, and
/// `m ≺ m'` implies `m·u ≺ m'·u` whenever `u` shares no θ with `m`, `m'` and
/// no ξ with `m`, `m'`. Exhaustive for `n <= 3`, otherwise `trials` random
/// triples drawn from `seed`.
pub fn term_order_check(n: usize, trials: u64, seed: u64) -> Result<TermOrderReport> {
    if n > 6 {
        return Err(Error::OutOfRange(format!(
            "term order check supports n <= 6, got {n}"
        )));
    }
    let all: Vec<Monomial> = crate::exterior::all_monomials(n, None)?;
    let one = Monomial::one(n);
    let minimum_is_one = all
        .iter()
        .all(|m| m == &one || compare_monomials(&one, m) == Ordering::Less);

    let mut report = TermOrderReport {
        n,
        exhaustive: n <= 3,
        minimum_is_one,
        triples_checked: 0,
        violations: 0,
        first_violation: None,
        pass: false,
    };
    let check = |a: &Monomial, b: &Monomial, u: &Monomial, report: &mut TermOrderReport| {
        if compare_monomials(a, b) != Ordering::Less {
            return;
        }
        let (Some((_, au)), Some((_, bu))) = (a.mul_signed(u), b.mul_signed(u)) else {
            return;
        };
        report.triples_checked += 1;
        if compare_monomials(&au, &bu) != Ordering::Less {
            report.violations += 1;
            report
                .first_violation
                .get_or_insert_with(|| TermOrderViolation {
                    smaller: a.to_path().to_string(),
                    larger: b.to_path().to_string(),
                    multiplier: u.to_path().to_string(),
                });
        }
    };

    let full = (1u32 << n) - 1;
    if report.exhaustive {
        for a in &all {
            for b in &all {
                for u in &all {
                    check(a, b, u, &mut report);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut attempts = 0u64;
        while report.triples_checked < trials && attempts < trials * 100 {
            attempts += 1;
            let a = all[rng.gen_range(0..all.len())];
            let b = all[rng.gen_range(0..all.len())];
            let (a, b) = if compare_monomials(&a, &b) == Ordering::Greater {
                (b, a)
            } else {
                (a, b)
            };
            let free_t = full & !(a.theta_mask() | b.theta_mask());
            let free_x = full & !(a.xi_mask() | b.xi_mask());
            let u = Monomial::new(n, rng.gen::<u32>() & free_t, rng.gen::<u32>() & free_x)?;
            check(&a, &b, &u, &mut report);
        }
    }
    report.pass = report.minimum_is_one && report.violations == 0;
    Ok(report)
}

/// Standard (normal-form) monomials of `DR_W` in bidegree `d`, found by
/// reducing the ideal slice with columns scanned in descending path order:
/// pivots are leading monomials, the remaining columns are standard.
pub fn standard_monomials(model: &QuotientModel, d: Bidegree) -> Result<Vec<Path>> {
    standard_monomials_with(model, d, Strategy::default())
}

pub fn standard_monomials_with(
    model: &QuotientModel,
    d: Bidegree,
    strategy: Strategy,
) -> Result<Vec<Path>> {
    let basis = bidegree_basis(model.n(), d);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let ideal = ideal_piece_basis(model, d)?;
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&x, &y| compare_monomials(&basis[y], &basis[x]));
    let pivots = ideal.rref_with(&order, strategy)?.pivot_columns;
    let mut is_pivot = vec![false; basis.len()];
    for p in pivots {
        is_pivot[p] = true;
    }
    let mut out: Vec<Path> = order
        .into_iter()
        .filter(|&c| !is_pivot[c])
        .map(|c| basis[c].to_path())
        .collect();
    out.reverse();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    pub i: usize,
    pub j: usize,
    pub standard: Vec<String>,
    pub expected_count: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub entries: Vec<BasisEntry>,
    pub total: usize,
    pub pass: bool,
}

/// For every bidegree, compares the computed standard monomials with the
/// nonnegative paths of that bidegree (as supports, signs ignored).
pub fn basis_theorem_check(n: usize) -> Result<BasisReport> {
    basis_theorem_check_with(n, Strategy::default())
}

pub fn basis_theorem_check_with(n: usize, strategy: Strategy) -> Result<BasisReport> {
    crate::exterior::check_enumeration_cap(n, None)?;
    let model = QuotientModel::reflection(n);
    let mut expected: std::collections::BTreeMap<Bidegree, Vec<Path>> = Default::default();
    for p in enumerate(n, Family::NonNegative) {
        expected.entry(p.bidegree()).or_default().push(p);
    }
    let bidegrees = Bidegree::all(n);
    let results = strategy.map(&bidegrees, |&d| {
        standard_monomials_with(&model, d, strategy)
    });
    let mut entries = Vec::new();
    let mut total = 0;
    for (d, found) in bidegrees.into_iter().zip(results) {
        let found = found?;
        let mut want = expected.remove(&d).unwrap_or_default();
        let mut got = found.clone();
        want.sort_by(|a, b| a.steps().cmp(b.steps()));
        got.sort_by(|a, b| a.steps().cmp(b.steps()));
        total += found.len();
        entries.push(BasisEntry {
            i: d.i,
            j: d.j,
            expected_count: want.len(),
            pass: want == got,
            standard: found.iter().map(Path::to_string).collect(),
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(BasisReport {
        n,
        entries,
        total,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionEntry {
    /// the step `m -> m + 1`
    pub m: usize,
    pub path_recursion: bool,
    pub hilbert_recursion: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub n: usize,
    pub entries: Vec<RecursionEntry>,
    pub pass: bool,
}

/// For `m = 0..n`, checks
/// `P_{m+1} = (1 + q + t + qt)·P_m − qt·P'_m` on path enumerations, and the
/// same recursion on the closed-form Hilbert series of `DR_W`, with the
/// subtracted slice being the total-degree-`m` part of rank `m`.
pub fn recursion_check(n: usize) -> Result<RecursionReport> {
    crate::exterior::check_enumeration_cap(n, None)?;
    let factor = QTPolynomial::from_triples(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]);
    let qt = QTPolynomial::monomial(1, 1, 1);
    let mut entries = Vec::new();
    for m in 0..n {
        let lhs = path_generating(m + 1, Family::NonNegative);
        let rhs =
            &(&factor * &path_generating(m, Family::NonNegative)) - &(&qt * &on_axis_generating(m));
        let hilb = |r: usize| QuotientModel::reflection(r).closed_form_hilbert();
        let h_rhs = &(&factor * &hilb(m)) - &(&qt * &hilb(m).total_degree_slice(m as u32));
        entries.push(RecursionEntry {
            m,
            path_recursion: lhs == rhs,
            hilbert_recursion: hilb(m + 1) == h_rhs,
        });
    }
    let pass = entries
        .iter()
        .all(|e| e.path_recursion && e.hilbert_recursion);
    Ok(RecursionReport { n, entries, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    #[test]
    fn figure_statistics_and_order() {
        let sigma = p("U U Ht D D Ht U U D");
        let mu = p("U D D D U Hx U U Ht");
        assert_eq!(
            sigma.statistics(),
            Statistics {
                depth: 0,
                total_deg: 8,
                theta_deg: 5,
                xi_deg: 3
            }
        );
        assert_eq!(
            mu.statistics(),
            Statistics {
                depth: -2,
                total_deg: 8,
                theta_deg: 4,
                xi_deg: 4
            }
        );
        assert_eq!(compare(&sigma, &mu).unwrap(), Ordering::Less);
        let m = Monomial::from_path(&mu).unwrap();
        assert_eq!(m.theta_support(), vec![2, 3, 4, 9]);
        assert_eq!(m.xi_support(), vec![2, 3, 4, 6]);
        assert!(compare(&sigma, &Path::all_up(3)).is_err());
    }

    #[test]
    fn all_up_is_minimum_and_order_is_total() {
        let up = Path::all_up(3);
        assert_eq!(
            up.statistics(),
            Statistics {
                depth: 0,
                total_deg: 0,
                theta_deg: 0,
                xi_deg: 0
            }
        );
        let all: Vec<Path> = enumerate(3, Family::All).collect();
        for a in &all {
            if a != &up {
                assert_eq!(compare(&up, a).unwrap(), Ordering::Less);
            }
            for b in &all {
                assert_eq!(compare(a, b).unwrap() == Ordering::Equal, a == b);
            }
        }
    }

    #[test]
    fn family_counts() {
        assert_eq!(enumerate(1, Family::All).count(), 4);
        assert_eq!(enumerate(2, Family::NonNegative).count(), 10);
        assert_eq!(enumerate(2, Family::StrictlyPositive).count(), 3);
        assert_eq!(enumerate(0, Family::All).count(), 1);
        assert_eq!(enumerate(5, Family::All).count(), 1024);
        let strict: Vec<String> = enumerate(2, Family::StrictlyPositive)
            .map(|p| p.to_string())
            .collect();
        assert_eq!(strict, vec!["U U", "U Ht", "U Hx"]);
    }

    #[test]
    fn enumeration_matches_filtering() {
        for n in 0..=5 {
            for fam in [Family::All, Family::NonNegative, Family::StrictlyPositive] {
                let streamed: Vec<Path> = enumerate(n, fam).collect();
                let filtered: Vec<Path> = enumerate(n, Family::All)
                    .filter(|p| p.in_family(fam))
                    .collect();
                assert_eq!(streamed, filtered);
            }
        }
    }

    #[test]
    fn generating_polynomials() {
        assert_eq!(path_generating(0, Family::NonNegative), QTPolynomial::one());
        assert_eq!(
            path_generating(2, Family::NonNegative),
            QTPolynomial::from_triples(&[
                (0, 0, 1),
                (1, 0, 2),
                (0, 1, 2),
                (2, 0, 1),
                (1, 1, 3),
                (0, 2, 1)
            ])
        );
    }

    #[test]
    fn recursion_small() {
        let r = recursion_check(5).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.entries.len(), 5);
    }

    #[test]
    fn standard_monomials_small() {
        let model = QuotientModel::reflection(2);
        let std11 = standard_monomials(&model, Bidegree::new(1, 1)).unwrap();
        assert_eq!(std11.len(), 3);
        // θ1ξ1 ~ "D U" and θ2ξ2 ~ "U D"; the larger one is the leading monomial
        let lead = if compare(&p("D U"), &p("U D")).unwrap() == Ordering::Greater {
            "D U"
        } else {
            "U D"
        };
        assert!(std11.iter().all(|s| s.to_string() != lead));
        assert_eq!(lead, "D U");
        assert_eq!(
            standard_monomials(&model, Bidegree::new(0, 0)).unwrap(),
            vec![Path::all_up(2)]
        );
        assert!(standard_monomials(&model, Bidegree::new(2, 1))
            .unwrap()
            .is_empty());
        assert!(standard_monomials(&model, Bidegree::new(3, 0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn basis_theorem_small() {
        let r1 = basis_theorem_check(1).unwrap();
        assert!(r1.pass);
        assert_eq!(r1.total, 3);
        let r2 = basis_theorem_check(2).unwrap();
        assert!(r2.pass);
        assert_eq!(r2.total, 10);
    }

    #[test]
    fn term_order_small_ranks() {
        assert!(term_order_check(1, 0, 0).unwrap().pass);
        assert!(term_order_check(2, 0, 0).unwrap().pass);
        let r3 = term_order_check(3, 0, 0).unwrap();
        assert!(r3.minimum_is_one);
        assert!(!r3.pass);
        assert_eq!(r3.violations, 8);
    }
}
