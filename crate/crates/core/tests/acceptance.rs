//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Every comparison is exact; `EXACT` is the allowed discrepancy.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use fermionic::characters::{
    full_graded_frobenius, graded_hook_multiplicity, hook_multiplicity_closed_form,
};
use fermionic::cli::{hook_kronecker_sweep, sign_oracle};
use fermionic::coinvariants::{
    dims_table, hilbert_series, narayana_boundary, permutation_narayana_boundary,
    primed_basis_check, quotient_dimension, QuotientModel,
};
use fermionic::combin::{binomial, catalan, narayana};
use fermionic::exec::Strategy;
use fermionic::exterior::pairing_matrix;
use fermionic::lefschetz::{
    certify_lefschetz, check_boolean_hlp, delta_power_matrix, incidence_matrix,
};
use fermionic::paths::{basis_theorem_check, path_generating, recursion_check, Family};
use fermionic::{Bidegree, Result};

const EXACT: u64 = 0;

#[allow(clippy::absurd_extreme_comparisons)]
fn agree(a: u64, b: u64) -> bool {
    a.abs_diff(b) <= EXACT
}

type Check = fn() -> Result<Option<String>>;

fn fail(msg: String) -> Result<Option<String>> {
    Ok(Some(msg))
}

fn boolean_hlp() -> Result<Option<String>> {
    for n in 0..=10 {
        let r = check_boolean_hlp(n)?;
        if let Some(row) = r.rows.iter().find(|row| !row.pass) {
            return fail(format!(
                "n={n} i={} rank {} of {}",
                row.i, row.rank, row.dimension
            ));
        }
    }
    let m = incidence_matrix(4, 1, 3)?.matrix;
    if !agree(m.rank() as u64, 4) {
        return fail(format!("M_4(1,3) rank {}", m.rank()));
    }
    Ok(None)
}

fn lefschetz() -> Result<Option<String>> {
    for n in 1..=6 {
        let c = certify_lefschetz(n)?;
        if let Some(e) = c.entries.iter().find(|e| !e.pass) {
            return fail(format!(
                "n={n} ({}, {}) rank {} of {}",
                e.i, e.j, e.rank, e.size
            ));
        }
        let b = &c.block_statistics;
        if b.off_block_entries != 0 || b.mismatched_blocks != 0 {
            return fail(format!(
                "n={n}: {} off-block entries, {} mismatched blocks",
                b.off_block_entries, b.mismatched_blocks
            ));
        }
    }
    Ok(None)
}

fn dimensions() -> Result<Option<String>> {
    for n in 1..=6 {
        for model in [QuotientModel::reflection(n), QuotientModel::permutation(n)] {
            let rows = dims_table(&model, true, Strategy::default())?;
            if let Some(r) = rows.iter().find(|r| !r.matched) {
                return fail(format!(
                    "{:?} n={n} ({}, {}) closed {} oracle {:?}",
                    model.kind(),
                    r.i,
                    r.j,
                    r.closed,
                    r.oracle
                ));
            }
            let oracle: u64 = rows.iter().filter_map(|r| r.oracle).sum();
            if !agree(oracle, model.closed_form_total()) {
                return fail(format!("{:?} n={n} oracle total {oracle}", model.kind()));
            }
        }
        if !agree(
            QuotientModel::reflection(n).closed_form_total(),
            binomial(2 * n + 1, n),
        ) || !agree(
            QuotientModel::permutation(n).closed_form_total(),
            binomial(2 * n - 1, n),
        ) {
            return fail(format!("n={n} totals"));
        }
    }
    for n in 1..=12 {
        let w: u64 = Bidegree::all(n)
            .iter()
            .map(|&d| QuotientModel::reflection(n).closed_form_dimension(d))
            .sum();
        let p: u64 = Bidegree::all(n)
            .iter()
            .map(|&d| QuotientModel::permutation(n).closed_form_dimension(d))
            .sum();
        if !agree(w, binomial(2 * n + 1, n)) || !agree(p, binomial(2 * n - 1, n)) {
            return fail(format!("closed-form totals at n={n}: {w}, {p}"));
        }
    }
    Ok(None)
}

fn narayana_boundaries() -> Result<Option<String>> {
    for n in 1..=10 {
        let w = narayana_boundary(n);
        let p = permutation_narayana_boundary(n);
        let want_w: Vec<u64> = (0..=n).map(|k| narayana(n + 1, k + 1)).collect();
        let want_p: Vec<u64> = (1..=n).map(|k| narayana(n, k)).collect();
        if w != want_w || p != want_p {
            return fail(format!("closed-form boundary at n={n}: {w:?} / {p:?}"));
        }
        if !agree(w.iter().sum(), catalan(n + 1)) || !agree(p.iter().sum(), catalan(n)) {
            return fail(format!("Catalan sums at n={n}"));
        }
    }
    for n in 1..=6 {
        let rw = QuotientModel::reflection(n);
        let rp = QuotientModel::permutation(n);
        for k in 0..=n {
            let got = quotient_dimension(&rw, Bidegree::new(k, n - k))? as u64;
            if !agree(got, narayana(n + 1, k + 1)) {
                return fail(format!("oracle reflection n={n} k={k}: {got}"));
            }
        }
        for k in 1..=n {
            let got = quotient_dimension(&rp, Bidegree::new(k - 1, n - k))? as u64;
            if !agree(got, narayana(n, k)) {
                return fail(format!("oracle permutation n={n} k={k}: {got}"));
            }
        }
    }
    Ok(None)
}

fn standard_basis() -> Result<Option<String>> {
    for n in 1..=6 {
        let r = basis_theorem_check(n)?;
        if let Some(e) = r.entries.iter().find(|e| !e.pass) {
            return fail(format!(
                "n={n} ({}, {}) standard {:?}, {} paths",
                e.i, e.j, e.standard, e.expected_count
            ));
        }
    }
    Ok(None)
}

fn path_series() -> Result<Option<String>> {
    for n in 1..=6 {
        let p = path_generating(n, Family::NonNegative);
        let h = hilbert_series(&QuotientModel::reflection(n))?;
        if p != h {
            return fail(format!("n={n}: paths {p} vs Hilbert {h}"));
        }
    }
    let r = recursion_check(8)?;
    if let Some(e) = r
        .entries
        .iter()
        .find(|e| !(e.path_recursion && e.hilbert_recursion))
    {
        return fail(format!("recursion step {}", e.m));
    }
    Ok(None)
}

fn primed() -> Result<Option<String>> {
    for n in 1..=6 {
        let r = primed_basis_check(n)?;
        if !r.pass {
            let bad = r
                .entries
                .iter()
                .find(|e| !e.independent || e.count != e.quotient_dimension);
            return fail(format!(
                "n={n}: {bad:?}, determinant {}",
                r.transition_determinant
            ));
        }
        if r.transition_determinant != n.to_string() {
            return fail(format!("n={n}: determinant {}", r.transition_determinant));
        }
    }
    Ok(None)
}

fn hooks() -> Result<Option<String>> {
    for n in 1..=7 {
        for k in 0..n {
            let got = graded_hook_multiplicity(n, k)?;
            let want = hook_multiplicity_closed_form(n, k)?;
            if got != want {
                return fail(format!("n={n} k={k}: {got} vs {want}"));
            }
        }
    }
    hook_kronecker_sweep(7)
}

fn properties() -> Result<Option<String>> {
    for n in 1..=8 {
        if let Some(bad) = sign_oracle(n, 1000, n as u64)? {
            return fail(format!("sign oracle n={n}: {bad}"));
        }
    }
    for n in 1..=5 {
        for i in 0..=n {
            for j in 0..=n {
                for r1 in 0..=n - i.max(j) {
                    for r2 in 0..=n - i.max(j) - r1 {
                        let whole = delta_power_matrix(n, i, j, r1 + r2)?;
                        let split = delta_power_matrix(n, i + r1, j + r1, r2)?
                            .checked_mul(&delta_power_matrix(n, i, j, r1)?)?;
                        if whole != split {
                            return fail(format!("composition n={n} ({i},{j}) r1={r1} r2={r2}"));
                        }
                    }
                }
            }
        }
        for d in Bidegree::all(n) {
            let m = pairing_matrix(n, d)?;
            if !m.is_square() || m.rank() != m.rows() {
                return fail(format!("pairing n={n} {d}"));
            }
        }
    }
    for n in 1..=6 {
        for model in [QuotientModel::reflection(n), QuotientModel::permutation(n)] {
            let h = hilbert_series(&model)?;
            if h.swap_variables() != h {
                return fail(format!("{:?} n={n} not symmetric", model.kind()));
            }
        }
        let f = full_graded_frobenius(n)?;
        if let Some(p) = f.third_row_violations().first() {
            return fail(format!("n={n}: {p} appears"));
        }
    }
    Ok(None)
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        (
            "Boolean incidence matrices M_n(i, n-i) invertible, n <= 10",
            boolean_hlp,
        ),
        (
            "Lefschetz certificates and (I, J) blocks, n <= 6",
            lefschetz,
        ),
        (
            "quotient dimensions equal closed forms, n <= 6; totals to n = 12",
            dimensions,
        ),
        (
            "Narayana boundaries and Catalan totals",
            narayana_boundaries,
        ),
        (
            "standard monomials equal nonnegative paths, n <= 6",
            standard_basis,
        ),
        (
            "path series equal Hilbert series, n <= 6; recursion n <= 8",
            path_series,
        ),
        (
            "primed path weights form a basis, determinant n, n <= 6",
            primed,
        ),
        (
            "hook multiplicities and hook Kronecker formula, n <= 7",
            hooks,
        ),
        ("property suites", properties),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(None)) => Ok(()),
            Ok(Ok(Some(counterexample))) => Err(counterexample),
            Ok(Err(e)) => Err(format!("error: {e}")),
            Err(_) => Err("panicked".to_string()),
        };
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.1}s)", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
