//! Monte Carlo samplers and empirical estimators: the stochastic oracle for
//! the exact engines. Everything is reproducible: a given (group, n, spec,
//! trials, seed) yields a bit-identical batch.

mod exhaustive;
mod rng;
mod sample;
mod stats;

pub use exhaustive::{
    exhaustive_h_moment, exhaustive_hs_moment, exhaustive_hs_word_moment, exhaustive_s_moment,
    for_each_permutation,
};
pub use rng::TrialRng;
pub use sample::{
    sample_bistochastic, sample_element, sample_orthogonal, sample_permutation, sample_unitary,
    Element, SampleGroup,
};
pub use stats::{Estimate, SampleBatch};

use num_complex::Complex64;

use crate::asymptotics::MomentSpec;
use crate::error::{Error, Result};
use crate::partitions::{Color, ColorString};

use sample::{
    adjoint, complex_matmul, complex_power_traces, monomial_power_traces, real_power_traces,
};
use stats::{covariance_estimate, mean_estimate, third_cumulant_estimate};

fn check_trials(trials: u64) -> Result<()> {
    if trials < 100 {
        return Err(Error::InvalidSpec(format!("need at least 100 trials, got {trials}")));
    }
    Ok(())
}

/// Sample mean ± stderr of Π_i Tr(u^{k_i})^{e_i} over `trials` independent
/// Haar samples. Real groups report the statistic `value`; complex groups
/// report `value_re` and `value_im` (a star conjugates the trace).
pub fn empirical_trace_moments(
    group: SampleGroup,
    n: usize,
    spec: &MomentSpec,
    trials: u64,
    seed: u64,
) -> Result<SampleBatch> {
    check_trials(trials)?;
    let kmax = *spec.lengths().iter().max().unwrap();
    let complex = group.is_complex();
    let mut re = Vec::with_capacity(trials as usize);
    let mut im = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = TrialRng::new(seed, trial);
        let traces: Vec<Complex64> = match sample_element(group, n, &mut rng) {
            Element::Real(mat) => real_power_traces(&mat, n, kmax)
                .into_iter()
                .map(|t| Complex64::new(t, 0.0))
                .collect(),
            Element::Complex(mat) => complex_power_traces(&mat, n, kmax),
            Element::Monomial { perm, exps, s } => monomial_power_traces(&perm, &exps, s, kmax),
        };
        let mut value = Complex64::new(1.0, 0.0);
        for (&k, &star) in spec.lengths().iter().zip(spec.stars()) {
            let t = traces[k - 1];
            value *= match star {
                Color::One => t,
                Color::Star => t.conj(),
            };
        }
        re.push(value.re);
        im.push(value.im);
    }
    let mut batch = SampleBatch {
        group: group.to_string(),
        n: n as u64,
        trials,
        seed,
        estimates: Default::default(),
    };
    if complex {
        batch.estimates.insert("value_re".into(), mean_estimate(&re));
        batch.estimates.insert("value_im".into(), mean_estimate(&im));
    } else {
        batch.estimates.insert("value".into(), mean_estimate(&re));
    }
    Ok(batch)
}

/// Per-power trace statistics: for each k ≤ kmax the mean of Tr(u^k)
/// (statistic `tr{k}`) plus all pairwise covariances `cov(tr{a},tr{b})`.
/// Complex groups report `tr{k}_re` / `tr{k}_im` means only.
pub fn empirical_power_traces(
    group: SampleGroup,
    n: usize,
    kmax: usize,
    trials: u64,
    seed: u64,
) -> Result<SampleBatch> {
    check_trials(trials)?;
    if kmax == 0 {
        return Err(Error::InvalidSpec("kmax must be ≥ 1".into()));
    }
    let complex = group.is_complex();
    let mut re: Vec<Vec<f64>> = vec![Vec::with_capacity(trials as usize); kmax];
    let mut im: Vec<Vec<f64>> = vec![Vec::with_capacity(trials as usize); kmax];
    for trial in 0..trials {
        let mut rng = TrialRng::new(seed, trial);
        let traces: Vec<Complex64> = match sample_element(group, n, &mut rng) {
            Element::Real(mat) => real_power_traces(&mat, n, kmax)
                .into_iter()
                .map(|t| Complex64::new(t, 0.0))
                .collect(),
            Element::Complex(mat) => complex_power_traces(&mat, n, kmax),
            Element::Monomial { perm, exps, s } => monomial_power_traces(&perm, &exps, s, kmax),
        };
        for k in 0..kmax {
            re[k].push(traces[k].re);
            im[k].push(traces[k].im);
        }
    }
    let mut batch = SampleBatch {
        group: group.to_string(),
        n: n as u64,
        trials,
        seed,
        estimates: Default::default(),
    };
    for k in 0..kmax {
        if complex {
            batch.estimates.insert(format!("tr{}_re", k + 1), mean_estimate(&re[k]));
            batch.estimates.insert(format!("tr{}_im", k + 1), mean_estimate(&im[k]));
        } else {
            batch.estimates.insert(format!("tr{}", k + 1), mean_estimate(&re[k]));
        }
    }
    if !complex {
        for a in 0..kmax {
            for b in a..kmax {
                batch.estimates.insert(
                    format!("cov(tr{},tr{})", a + 1, b + 1),
                    covariance_estimate(&re[a], &re[b]),
                );
            }
        }
    }
    Ok(batch)
}

/// Sample mean ± stderr of Π_i Tr(w_i(v)) on U_n, where w_i is the ε-word
/// with `One` = v and `Star` = v† (the adjoint), matching the exact
/// word-moment convention.
pub fn empirical_unitary_word_moments(
    n: usize,
    eps_list: &[ColorString],
    trials: u64,
    seed: u64,
) -> Result<SampleBatch> {
    check_trials(trials)?;
    if eps_list.is_empty() || eps_list.iter().any(|e| e.is_empty()) {
        return Err(Error::InvalidSpec("word lists must be nonempty".into()));
    }
    let mut re = Vec::with_capacity(trials as usize);
    let mut im = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = TrialRng::new(seed, trial);
        let v = match sample_element(SampleGroup::U, n, &mut rng) {
            Element::Complex(mat) => mat,
            _ => unreachable!(),
        };
        let vadj = adjoint(&v, n);
        let mut value = Complex64::new(1.0, 0.0);
        for eps in eps_list {
            let mut word: Option<Vec<Complex64>> = None;
            for &sym in eps.symbols() {
                let factor = match sym {
                    Color::One => &v,
                    Color::Star => &vadj,
                };
                word = Some(match word {
                    None => factor.clone(),
                    Some(w) => complex_matmul(&w, factor, n),
                });
            }
            let w = word.expect("nonempty word");
            let tr: Complex64 = (0..n).map(|i| w[i * n + i]).sum();
            value *= tr;
        }
        re.push(value.re);
        im.push(value.im);
    }
    let mut batch = SampleBatch {
        group: "U".into(),
        n: n as u64,
        trials,
        seed,
        estimates: Default::default(),
    };
    batch.estimates.insert("value_re".into(), mean_estimate(&re));
    batch.estimates.insert("value_im".into(), mean_estimate(&im));
    Ok(batch)
}

/// Empirical joint cumulants (orders 1–3) of the cycle counts: C_l for S_n,
/// Z_l^± for H_n (the negative count carries its minus sign, so its mean is
/// −1/(2l) in the limit). Statistics are named `C1`, `Z2+`, `cov(C1,C2)`,
/// `k3(C1,C1,C2)`, …
pub fn empirical_cycle_statistics(
    group: SampleGroup,
    n: usize,
    l_max: usize,
    trials: u64,
    seed: u64,
) -> Result<SampleBatch> {
    check_trials(trials)?;
    if l_max == 0 || l_max > n {
        return Err(Error::InvalidSpec(format!("l_max must be in 1..={n}")));
    }
    let names: Vec<String> = match group {
        SampleGroup::S => (1..=l_max).map(|l| format!("C{l}")).collect(),
        SampleGroup::H => (1..=l_max)
            .flat_map(|l| [format!("Z{l}+"), format!("Z{l}-")])
            .collect(),
        other => {
            return Err(Error::InvalidSpec(format!(
                "cycle statistics are defined for S and H, not {other}"
            )))
        }
    };
    let nstats = names.len();
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(trials as usize); nstats];
    for trial in 0..trials {
        let mut rng = TrialRng::new(seed, trial);
        let mut row = vec![0.0; nstats];
        match sample_element(group, n, &mut rng) {
            Element::Monomial { perm, exps, s } => {
                for cycle in sample::permutation_cycles(&perm) {
                    let l = cycle.len();
                    if l > l_max {
                        continue;
                    }
                    match group {
                        SampleGroup::S => row[l - 1] += 1.0,
                        SampleGroup::H => {
                            debug_assert_eq!(s, 2);
                            let neg =
                                cycle.iter().filter(|&&i| exps[i] == 1).count() % 2 == 1;
                            if neg {
                                row[2 * (l - 1) + 1] -= 1.0; // Z_l^- is the signed count
                            } else {
                                row[2 * (l - 1)] += 1.0;
                            }
                        }
                        _ => unreachable!(),
                    }
                }
            }
            _ => unreachable!("cycle statistics sample monomial groups"),
        }
        for (col, &v) in columns.iter_mut().zip(&row) {
            col.push(v);
        }
    }

    let mut batch = SampleBatch {
        group: group.to_string(),
        n: n as u64,
        trials,
        seed,
        estimates: Default::default(),
    };
    for (name, col) in names.iter().zip(&columns) {
        batch.estimates.insert(name.clone(), mean_estimate(col));
    }
    for a in 0..nstats {
        for b in a..nstats {
            batch.estimates.insert(
                format!("cov({},{})", names[a], names[b]),
                covariance_estimate(&columns[a], &columns[b]),
            );
        }
    }
    for a in 0..nstats {
        for b in a..nstats {
            for c in b..nstats {
                batch.estimates.insert(
                    format!("k3({},{},{})", names[a], names[b], names[c]),
                    third_cumulant_estimate(&columns[a], &columns[b], &columns[c]),
                );
            }
        }
    }
    Ok(batch)
}

/// Exact group average of Π Tr(u^{k_i})^{e_i} for the finite groups
/// (enumerated, not sampled): S_n, H_n, and H_n^s.
pub fn exhaustive_trace_moment(
    group: SampleGroup,
    n: usize,
    spec: &MomentSpec,
) -> Result<crate::weingarten::Rat> {
    match group {
        SampleGroup::S => exhaustive_s_moment(n, spec),
        SampleGroup::H => exhaustive_h_moment(n, spec),
        SampleGroup::Hs(s) => exhaustive_hs_moment(s, n, spec),
        other => Err(Error::InvalidSpec(format!("{other} is continuous; no exhaustive mode"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_batches() {
        let spec = MomentSpec::new(&[1]).unwrap();
        let a = empirical_trace_moments(SampleGroup::O, 6, &spec, 200, 99).unwrap();
        let b = empirical_trace_moments(SampleGroup::O, 6, &spec, 200, 99).unwrap();
        assert_eq!(a, b);
        let c = empirical_trace_moments(SampleGroup::O, 6, &spec, 200, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn trials_precondition() {
        let spec = MomentSpec::new(&[1]).unwrap();
        assert!(empirical_trace_moments(SampleGroup::O, 4, &spec, 99, 1).is_err());
    }

    #[test]
    fn s_n_fixed_points_mean_one() {
        let spec = MomentSpec::new(&[1]).unwrap();
        let batch = empirical_trace_moments(SampleGroup::S, 30, &spec, 4000, 7).unwrap();
        let e = batch.estimates["value"];
        assert!((e.mean - 1.0).abs() < 5.0 * e.stderr, "mean {} ± {}", e.mean, e.stderr);
    }

    #[test]
    fn cycle_statistics_names_and_means() {
        let batch = empirical_cycle_statistics(SampleGroup::S, 40, 2, 4000, 11).unwrap();
        let c1 = batch.estimates["C1"];
        assert!((c1.mean - 1.0).abs() < 5.0 * c1.stderr);
        let c2 = batch.estimates["C2"];
        assert!((c2.mean - 0.5).abs() < 5.0 * c2.stderr);
        assert!(batch.estimates.contains_key("cov(C1,C2)"));
        assert!(batch.estimates.contains_key("k3(C1,C1,C2)"));

        let h = empirical_cycle_statistics(SampleGroup::H, 30, 1, 4000, 13).unwrap();
        let zp = h.estimates["Z1+"];
        let zm = h.estimates["Z1-"];
        assert!((zp.mean - 0.5).abs() < 5.0 * zp.stderr);
        assert!((zm.mean + 0.5).abs() < 5.0 * zm.stderr);
    }

    #[test]
    fn s6_trace_moment_mc_matches_exact() {
        use num_traits::ToPrimitive;
        // the exact Weingarten value is the reference for the sampler
        let spec = MomentSpec::new(&[2]).unwrap();
        let exact = crate::weingarten::trace_moment_exact(crate::categories::Category::S, 6, &spec)
            .unwrap()
            .to_f64()
            .unwrap();
        let batch = empirical_trace_moments(SampleGroup::S, 6, &spec, 20_000, 23).unwrap();
        let e = batch.estimates["value"];
        assert!((e.mean - exact).abs() <= 5.0 * e.stderr, "{} vs {exact}", e.mean);
    }

    #[test]
    fn exhaustive_s_matches_direct_example() {
        // spot value frozen from the S_3 fixed-point distribution
        let spec = MomentSpec::new(&[2]).unwrap();
        let v = exhaustive_trace_moment(SampleGroup::S, 3, &spec).unwrap();
        assert_eq!(v, crate::weingarten::Rat::new(2.into(), 1.into()));
    }

    #[test]
    fn unitary_word_mc_is_reproducible_and_unitary() {
        // Tr(v v†) = n exactly on every sample
        let eps: ColorString = "1*".parse().unwrap();
        let batch = empirical_unitary_word_moments(4, &[eps], 150, 3).unwrap();
        let re = batch.estimates["value_re"];
        assert!((re.mean - 4.0).abs() < 1e-9);
        assert!(re.stderr < 1e-9);
    }
}
