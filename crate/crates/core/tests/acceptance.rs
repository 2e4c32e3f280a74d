//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance here is exact equality; the grids and sample counts are
//! pinned in the suite functions these tests drive.

use fpcarry::suites::{
    addition_oracle_check, bernoulli_table_check, bignum_tracked_checks, cocycle_check,
    difference_equation_check, fermat_slice_check, gamma_support_checks,
    interpolation_uniqueness_check, lerch_check, mixed_relation_check, monomial_count_check,
    multiplication_oracle_check, multiplication_theorem_check, power_sum_check, psi_table_check,
    section_gap_check, staudt_clausen_check, teichmuller_check, wilson_identity_check,
    wilson_table_check, Bounds, Check,
};

fn report(criterion: &str, checks: Vec<Check>) {
    let mut failed = Vec::new();
    for c in &checks {
        if !c.pass {
            failed.push(format!("{}: {}", c.name, c.detail));
        }
    }
    if failed.is_empty() {
        println!("criterion {criterion}: PASS");
    } else {
        println!("criterion {criterion}: FAIL");
    }
    assert!(
        failed.is_empty(),
        "criterion {criterion} failed: {failed:?}"
    );
}

#[test]
fn criterion_01_addition_carry_oracle_equivalence() {
    report(
        "01 (addition-carry oracle equivalence, p <= 7, n <= 3, all valid positions)",
        vec![addition_oracle_check(&Bounds::default())],
    );
}

#[test]
fn criterion_02_multiplication_carry_oracle_equivalence() {
    report(
        "02 (multiplication-carry oracle equivalence, exhaustive n <= 3 and randomized n <= 6)",
        vec![multiplication_oracle_check()],
    );
}

#[test]
fn criterion_03_published_tables_reproduced() {
    report(
        "03 (auxiliary polynomials p <= 19, Bernoulli numbers l <= 16, Wilson quotients p <= 31)",
        vec![
            psi_table_check(),
            bernoulli_table_check(),
            wilson_table_check(),
        ],
    );
}

#[test]
fn criterion_04_wilson_identity_below_200() {
    report(
        "04 (value at 1 equals Wilson's quotient for odd p < 200; zero exactly at 5 and 13)",
        vec![wilson_identity_check(&Bounds::default())],
    );
}

#[test]
fn criterion_05_monomial_count() {
    report(
        "05 (product-carry monomial count, odd p <= 19, n in 2..=4)",
        vec![monomial_count_check()],
    );
}

#[test]
fn criterion_06_degree_and_basis_support() {
    report(
        "06 (degree bound and falling-factorial support of addition carries, p in {3,5}, n <= 3)",
        gamma_support_checks(&Bounds::default()),
    );
}

#[test]
fn criterion_07_cocycle_and_mixed_relation() {
    report(
        "07 (cocycle identity and mixed carry relation, exhaustive p <= 13)",
        vec![
            cocycle_check(&Bounds::default()),
            mixed_relation_check(&Bounds::default()),
        ],
    );
}

#[test]
fn criterion_08_section_view_mod_p_squared() {
    report(
        "08 (Teichmuller multiplicativity, difference equation, section gap, Fermat slice; odd p <= 31)",
        vec![
            teichmuller_check(&Bounds::default()),
            difference_equation_check(&Bounds::default()),
            section_gap_check(&Bounds::default()),
            fermat_slice_check(&Bounds::default()),
        ],
    );
}

#[test]
fn criterion_09_number_theory_suite() {
    report(
        "09 (von Staudt-Clausen l <= 60, power sums, multiplication theorem, Lerch p < 100)",
        vec![
            staudt_clausen_check(&Bounds::default()),
            power_sum_check(),
            multiplication_theorem_check(),
            lerch_check(&Bounds::default()),
        ],
    );
}

#[test]
fn criterion_10_bignum_end_to_end_over_tracked_values() {
    report(
        "10 (all four algorithms over tracked digits, 1000 pairs each, lengths <= 64, p <= 13)",
        bignum_tracked_checks(&Bounds::default()),
    );
}

#[test]
fn criterion_11_interpolation_uniqueness() {
    report(
        "11 (interpolation reproduces the closed forms exactly, p <= 5, n <= 3)",
        vec![interpolation_uniqueness_check()],
    );
}
