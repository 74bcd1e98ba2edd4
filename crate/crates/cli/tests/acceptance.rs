//! Acceptance suite: every criterion runs at its full documented scale and
//! prints one pass/fail line. The underlying checks live in
//! `easywg_cli::verify`, which the `easywg verify` subcommand also drives.

use easywg_cli::verify::{run_suite, SuiteParams};

fn criterion(number: &str, label: &str, suite: &str, params: SuiteParams) {
    let report = run_suite(suite, params).unwrap_or_else(|e| panic!("{suite} failed to run: {e}"));
    let pass = report.all_pass();
    println!(
        "[criterion {number}] {label}: {} ({}/{} checks)",
        if pass { "PASS" } else { "FAIL" },
        report.passed(),
        report.checks.len()
    );
    if !pass {
        for f in report.failures() {
            println!("  FAILED {}: expected {}, got {}", f.name, f.expected, f.actual);
        }
    }
    assert!(pass, "criterion {number} failed");
}

#[test]
fn criterion_1_classical_exactness() {
    // every spec with total k ≤ 6, n ∈ {k,…,k+3}, exact rational equality
    // with the invariant count
    criterion(
        "1",
        "classical exactness (O, S, H, B; k ≤ 6)",
        "classical-exactness",
        SuiteParams { kmax: Some(6), trials: None, seed: 2024 },
    );
}

#[test]
fn criterion_2_brute_force_oracle() {
    // S_n exhaustive for n ≤ 6, k ≤ 5; H_n for n ≤ 4, k ≤ 4 (384 elements)
    criterion(
        "2",
        "brute-force group averages (S_n ≤ 6, H_n ≤ 4)",
        "brute-force",
        SuiteParams { kmax: Some(5), trials: None, seed: 2024 },
    );
}

#[test]
fn criterion_3_cumulant_identity() {
    // Möbius / noncrossing inversion of counted moments, r ≤ 3, k_i ≤ 4
    criterion(
        "3",
        "cumulant identity (eight kinds, r ≤ 3, k_i ≤ 4)",
        "cumulant-identity",
        SuiteParams { kmax: Some(4), trials: None, seed: 2024 },
    );
}

#[test]
fn criterion_4_limit_law_tables() {
    // closed forms of the limit theorems vs counted cumulants, k_i ≤ 6,
    // r ≤ 4 (within the enumeration caps), including the O⁺
    // semicircular/circular star pattern
    criterion(
        "4",
        "limit-law tables (k_i ≤ 6, r ≤ 4)",
        "laws",
        SuiteParams { kmax: Some(6), trials: None, seed: 2024 },
    );
}

#[test]
fn criterion_5_free_convergence() {
    // |exact(2m) − count| ≤ 0.6 |exact(m) − count| at m ∈ {8, 16, 32}
    criterion(
        "5",
        "free-case 1/n convergence (O⁺, S⁺, H⁺, B⁺; k ≤ 4)",
        "free-convergence",
        SuiteParams { kmax: Some(4), trials: None, seed: 2024 },
    );
}

#[test]
fn criterion_6_monte_carlo_agreement() {
    // O_50 trace mean/variance, S_100 and H_100 cycle statistics at 10⁵
    // trials, all within 5 standard errors
    criterion(
        "6",
        "Monte Carlo agreement (10⁵ trials)",
        "montecarlo",
        SuiteParams { kmax: None, trials: Some(100_000), seed: 2024 },
    );
}

#[test]
fn criterion_7_z_variable_formula() {
    // z-cumulant counts reproduce l^{r−1}·[Σe even] for l ≤ 3, r ≤ 3
    criterion(
        "7",
        "Z-variable cumulant formula (l ≤ 3, r ≤ 3)",
        "z-formula",
        SuiteParams { kmax: None, trials: None, seed: 2024 },
    );
}

#[test]
fn criterion_8_half_liberated_suite() {
    // (a) exact U_n word integrals vs Monte Carlo; (b) the U_n count
    // pattern behind the O* limit law; (c) H^(2)/H^(∞) vs H/H*;
    // (d) the compound-Poisson decomposition identity
    criterion(
        "8",
        "half-liberated suite (U_n words, H^s counts, Cp decomposition)",
        "section8",
        SuiteParams { kmax: None, trials: Some(20_000), seed: 2024 },
    );
}
