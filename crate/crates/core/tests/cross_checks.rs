//! Cross-validation between independent routes: the Bareiss inverse against
//! the lattice-Möbius closed form, exhaustive group averages against the
//! Weingarten values, Monte Carlo against exact values, and the quadrature
//! oracle for the symmetrized Rayleigh moments.

use easywg_core::{
    build_table, empirical_trace_moments, empirical_unitary_word_moments, enumerate_partitions,
    exhaustive_trace_moment, law_moments, montecarlo, rat_int, trace_moment_exact,
    unitary_trace_moment_exact, word_moment_exact, Category, ColorString, Law, MomentSpec,
    Partition, Rat, SParam, SampleGroup,
};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// μ(π, p) for π ≤ p in the partition lattice: over each block of p, the
/// blocks of π inside contribute (−1)^(m−1) (m−1)!. Test-side oracle,
/// independent of the library's mobius_to_top.
fn mobius_interval(pi: &Partition, p: &Partition) -> i64 {
    assert!(pi.is_refinement_of(p));
    let mut factor = 1i64;
    for block in p.blocks() {
        let mut pi_blocks: Vec<usize> = block.iter().map(|&i| pi.labels()[i]).collect();
        pi_blocks.sort();
        pi_blocks.dedup();
        let m = pi_blocks.len() as i64;
        let mut f = 1i64;
        for t in 1..m {
            f *= t;
        }
        factor *= if (m - 1) % 2 == 0 { f } else { -f };
    }
    factor
}

fn falling_factorial(n: u64, b: usize) -> BigInt {
    let mut v = BigInt::one();
    for t in 0..b as u64 {
        v *= BigInt::from(n - t);
    }
    v
}

/// For S_n the Weingarten matrix has the classical closed form
/// W(p,q) = Σ_{π ≤ p, π ≤ q} μ(π,p) μ(π,q) / (n)_{|π|}; this is a fully
/// independent route to the same numbers the fraction-free elimination
/// produces.
#[test]
fn s_weingarten_matches_moebius_closed_form() {
    for k in 1..=4usize {
        let all = enumerate_partitions(k).unwrap();
        for n in [4u64, 5] {
            let table = build_table(Category::S, k, n, None).unwrap();
            assert_eq!(table.basis(), all.as_slice());
            for (a, p) in all.iter().enumerate() {
                for (b, q) in all.iter().enumerate() {
                    let mut closed = Rat::zero();
                    for pi in &all {
                        if pi.is_refinement_of(p) && pi.is_refinement_of(q) {
                            let num = mobius_interval(pi, p) * mobius_interval(pi, q);
                            closed += Rat::new(
                                BigInt::from(num),
                                falling_factorial(n, pi.block_count()),
                            );
                        }
                    }
                    assert_eq!(table.wg_entry(a, b), closed, "k={k} n={n} p={p} q={q}");
                }
            }
        }
    }
}

#[test]
fn inverse_identity_on_table_spread() {
    let eps4: ColorString = "1*1*".parse().unwrap();
    let cases: Vec<(Category, usize, u64, Option<ColorString>)> = vec![
        (Category::O, 6, 7, None),
        (Category::B, 5, 5, None),
        (Category::H, 6, 6, None),
        (Category::S, 5, 7, None),
        (Category::OPlus, 6, 3, None),
        (Category::SPlus, 5, 5, None),
        (Category::HPlus, 6, 4, None),
        (Category::BPlus, 4, 4, None),
        (Category::OStar, 4, 5, None),
        (Category::HStar, 4, 4, None),
        (Category::HSeries(SParam::Finite(3)), 4, 4, None),
        (Category::UPairs, 4, 3, Some(eps4.clone())),
        (Category::HsComplex(SParam::Finite(3)), 4, 3, Some(eps4)),
    ];
    for (cat, k, n, eps) in cases {
        let table = build_table(cat, k, n, eps.as_ref()).unwrap();
        assert!(table.verify_inverse(), "wg·gram ≠ id for {cat} k={k} n={n}");
    }
}

#[test]
fn big_s_table_inverse_identity() {
    // Bell(6) = 203 basis, the largest table the acceptance run needs
    let table = build_table(Category::S, 6, 7, None).unwrap();
    assert_eq!(table.size(), 203);
    assert!(table.verify_inverse());
}

#[test]
fn exhaustive_s7_matches_weingarten() {
    // one size beyond the acceptance range
    for ks in [vec![1], vec![2], vec![3], vec![1, 2]] {
        let spec = MomentSpec::new(&ks).unwrap();
        let exact = trace_moment_exact(Category::S, 7, &spec).unwrap();
        let brute = exhaustive_trace_moment(SampleGroup::S, 7, &spec).unwrap();
        assert_eq!(exact, brute, "spec {ks:?}");
    }
}

#[test]
fn hs_exhaustive_matches_word_engine() {
    let w11: ColorString = "11".parse().unwrap();
    let w1s: ColorString = "1*".parse().unwrap();
    let w3: ColorString = "1*1".parse().unwrap();
    let one: ColorString = "1".parse().unwrap();
    let star: ColorString = "*".parse().unwrap();
    // group order s^n·n! stays enumerable and n ≥ total word length keeps
    // the Gram invertible
    let cases: Vec<(u64, usize, Vec<ColorString>)> = vec![
        (2, 3, vec![w1s.clone()]),
        (2, 3, vec![w11.clone()]),
        (2, 4, vec![w1s.clone(), w1s.flipped()]),
        (2, 4, vec![w3.clone()]),
        (3, 2, vec![one.clone(), star.clone()]),
        (3, 2, vec![w11.clone()]),
        (3, 3, vec![w1s.clone()]),
        (3, 3, vec![w3.clone()]),
        (4, 2, vec![w1s.clone()]),
        (4, 2, vec![one.clone(), star.clone()]),
    ];
    for (s, n, words) in cases {
        let exact = word_moment_exact(Category::HsComplex(SParam::Finite(s)), n as u64, &words)
            .unwrap();
        let brute = montecarlo::exhaustive_hs_word_moment(s, n, &words).unwrap();
        assert_eq!(exact, brute, "s={s} n={n} words={words:?}");
    }
}

#[test]
fn hs_exhaustive_powers_match_word_engine() {
    // Tr(v^k) is the all-ones word; a star on the factor flips the word
    use easywg_core::Color;
    for (s, n) in [(2u64, 3usize), (3, 2), (3, 3)] {
        for (k, star) in [(1usize, Color::One), (2, Color::One), (2, Color::Star), (3, Color::One)] {
            let spec = MomentSpec::with_stars(&[k], &[star]).unwrap();
            let brute = montecarlo::exhaustive_hs_moment(s, n, &spec).unwrap();
            let word = ColorString(vec![star; k]);
            let exact =
                word_moment_exact(Category::HsComplex(SParam::Finite(s)), n as u64, &[word])
                    .unwrap();
            assert_eq!(exact, brute, "s={s} n={n} k={k} {star:?}");
        }
    }
}

#[test]
fn bistochastic_montecarlo_agrees_with_exact() {
    // B_n is continuous, so the exhaustive check is replaced by a Monte
    // Carlo band around the exact Weingarten value
    for ks in [vec![1], vec![2], vec![1, 1]] {
        let spec = MomentSpec::new(&ks).unwrap();
        let exact = trace_moment_exact(Category::B, 4, &spec).unwrap().to_f64().unwrap();
        let batch =
            empirical_trace_moments(SampleGroup::B, 4, &spec, 40_000, 17).unwrap();
        let e = batch.estimates["value"];
        assert!(
            (e.mean - exact).abs() <= 5.0 * e.stderr,
            "spec {ks:?}: exact {exact}, mc {} ± {}",
            e.mean,
            e.stderr
        );
    }
}

#[test]
fn haar_invariance_smoke() {
    // Tr(P u) has the same mean as Tr(u) for a fixed permutation P
    use easywg_core::montecarlo::TrialRng;
    let n = 20usize;
    let trials = 20_000u64;
    let mut plain = Vec::with_capacity(trials as usize);
    let mut rotated = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = TrialRng::new(321, trial);
        let u = easywg_core::montecarlo::sample_orthogonal(n, &mut rng);
        let tr: f64 = (0..n).map(|i| u[i * n + i]).sum();
        // P = cyclic shift: Tr(P u) = Σ_i u_{i, i+1 mod n}
        let tr_rot: f64 = (0..n).map(|i| u[((i + 1) % n) * n + i]).sum();
        plain.push(tr);
        rotated.push(tr_rot);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let sd = |v: &[f64], m: f64| {
        (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() as f64 - 1.0)).sqrt()
    };
    let (m1, m2) = (mean(&plain), mean(&rotated));
    let stderr = (sd(&plain, m1) + sd(&rotated, m2)) / (trials as f64).sqrt();
    assert!((m1 - m2).abs() <= 5.0 * stderr, "means {m1} vs {m2} (stderr {stderr})");
}

#[test]
fn rayleigh_moments_match_quadrature() {
    // density of the symmetrized Rayleigh (variance 1) is |x| e^{−x²};
    // Simpson quadrature over [0, 12] doubles the half-line integral
    let moments = law_moments(&Law::SymmetrizedRayleigh { variance: rat_int(1) }, 6).unwrap();
    let simpson = |p: u32| -> f64 {
        let f = |x: f64| x.powi(2 * p as i32 + 1) * (-x * x).exp();
        let steps = 20_000;
        let h = 12.0 / steps as f64;
        let mut acc = f(0.0) + f(12.0);
        for i in 1..steps {
            let x = i as f64 * h;
            acc += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        2.0 * acc * h / 3.0
    };
    for p in 1..=3u32 {
        let numeric = simpson(p);
        let exact = moments[(2 * p - 1) as usize].to_f64().unwrap();
        assert!((numeric - exact).abs() < 1e-8, "m_{} = {} vs {}", 2 * p, exact, numeric);
        assert_eq!(moments[(2 * p) as usize - 2], rat_int(0), "odd moment m_{}", 2 * p - 1);
    }
}

#[test]
fn unitary_power_trace_second_moments_are_exact() {
    // E |Tr(v^k)|² = k on U_n for n ≥ k, with no lower-order corrections;
    // the engine evaluates the words v·v·…·v and its conjugate
    for k in 1..=3usize {
        let word = ColorString(vec![easywg_core::Color::One; k]);
        for n in k as u64..=(k as u64 + 2) {
            let v = unitary_trace_moment_exact(n, &[word.clone(), word.flipped()]).unwrap();
            assert_eq!(v, rat_int(k as i64), "k={k} n={n}");
            // and E Tr(v^k) Tr(v^k) = 0 (no conjugates to pair with)
            let same = unitary_trace_moment_exact(n, &[word.clone(), word.clone()]).unwrap();
            assert_eq!(same, rat_int(0), "k={k} n={n}");
        }
    }
}

#[test]
fn unitary_rayleigh_moments_via_montecarlo() {
    // |Tr v|² and |Tr v|⁴ on U_n reproduce the symmetrized Rayleigh moment
    // pattern m₂ = 1, m₄ = 2 (the law of the odd O* traces)
    let one: ColorString = "1".parse().unwrap();
    let star: ColorString = "*".parse().unwrap();
    let m2_words = vec![one.clone(), star.clone()];
    let m4_words = vec![one.clone(), one, star.clone(), star];
    for (words, expected) in [(m2_words, 1.0), (m4_words, 2.0)] {
        let exact = unitary_trace_moment_exact(30, &words).unwrap().to_f64().unwrap();
        assert!((exact - expected).abs() < 1e-12, "exact {exact} vs {expected}");
        let mc = empirical_unitary_word_moments(30, &words, 20_000, 5).unwrap();
        let e = mc.estimates["value_re"];
        assert!((e.mean - expected).abs() <= 5.0 * e.stderr, "{} ± {}", e.mean, e.stderr);
    }
}

#[test]
fn free_convergence_extends_to_k5() {
    // deviation halving with margin 0.6 also holds at total size 5
    for cat in [Category::OPlus, Category::SPlus, Category::HPlus, Category::BPlus] {
        for ks in [vec![5], vec![1, 4], vec![2, 3]] {
            let spec = MomentSpec::new(&ks).unwrap();
            let count = rat_int(easywg_core::asymptotic_moment_count(cat, &spec).unwrap() as i64);
            for m in [8u64, 16, 32] {
                let d1 = abs(trace_moment_exact(cat, m, &spec).unwrap() - &count);
                let d2 = abs(trace_moment_exact(cat, 2 * m, &spec).unwrap() - &count);
                if d1.is_zero() {
                    continue;
                }
                assert!(
                    &d2 * rat_int(10) <= &d1 * rat_int(6),
                    "{cat} {ks:?} m={m}: {d1} then {d2}"
                );
            }
        }
    }
}

fn abs(r: Rat) -> Rat {
    if r < Rat::zero() {
        -r
    } else {
        r
    }
}
