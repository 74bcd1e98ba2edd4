//! Limit-law descriptors and the cycle-variable decomposition checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{closed_form_cumulant, MomentSpec};
use crate::categories::Category;
use crate::error::{Error, Result};
use crate::partitions::Color;
use crate::weingarten::Rat;

/// A limit law, identified by the data this engine emits for it.
#[derive(Clone, Debug, PartialEq)]
pub enum Law {
    Gaussian { mean: Rat, variance: Rat },
    Poisson { lambda: Rat },
    Semicircular { mean: Rat, variance: Rat },
    Circular { covariance: Rat },
    FreePoisson { lambda: Rat },
    SymmetrizedRayleigh { variance: Rat },
}

/// The (classical or free) cumulant sequence c_1,…,c_{r_max}.
///
/// Circular variables carry their only nonzero cumulant on the mixed
/// κ₂(c, c*), exposed by [`law_star_covariance`]; the plain sequence is
/// zero. Symmetrized Rayleigh is exposed through moments instead.
pub fn law_cumulants(law: &Law, r_max: usize) -> Result<Vec<Rat>> {
    let mut out = vec![Rat::zero(); r_max];
    match law {
        Law::Gaussian { mean, variance } | Law::Semicircular { mean, variance } => {
            if r_max >= 1 {
                out[0] = mean.clone();
            }
            if r_max >= 2 {
                out[1] = variance.clone();
            }
        }
        Law::Poisson { lambda } | Law::FreePoisson { lambda } => {
            out = vec![lambda.clone(); r_max];
        }
        Law::Circular { .. } => {}
        Law::SymmetrizedRayleigh { .. } => {
            return Err(Error::InvalidSpec(
                "symmetrized Rayleigh is described by moments; use law_moments".into(),
            ));
        }
    }
    Ok(out)
}

/// κ₂(c, c*) where defined (circular variables).
pub fn law_star_covariance(law: &Law) -> Option<Rat> {
    match law {
        Law::Circular { covariance } => Some(covariance.clone()),
        _ => None,
    }
}

/// Moment sequence m_1,…,m_{m_max} for the laws exposed via moments: the
/// symmetrized Rayleigh of variance σ² has vanishing odd moments and
/// m_{2p} = p! σ^{2p}.
pub fn law_moments(law: &Law, m_max: usize) -> Result<Vec<Rat>> {
    match law {
        Law::SymmetrizedRayleigh { variance } => {
            let mut out = Vec::with_capacity(m_max);
            for j in 1..=m_max {
                if j % 2 == 1 {
                    out.push(Rat::zero());
                } else {
                    let p = j / 2;
                    let mut v = Rat::one();
                    for i in 1..=p {
                        v *= Rat::from_integer(BigInt::from(i));
                    }
                    for _ in 0..p {
                        v *= variance.clone();
                    }
                    out.push(v);
                }
            }
            Ok(out)
        }
        _ => Err(Error::InvalidSpec("moments are exposed only for symmetrized Rayleigh".into())),
    }
}

/// One comparison line of a decomposition check.
#[derive(Clone, Debug)]
pub struct DecompositionCheck {
    pub spec: MomentSpec,
    pub implied: Rat,
    pub closed_form: u64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub group: Category,
    pub checks: Vec<DecompositionCheck>,
}

impl DecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&DecompositionCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Verify that the decomposition of traces into independent / free cycle
/// variables reproduces the closed-form joint cumulants:
///
/// * S: u_k = Σ_{l|k} l C_l, C_l Poisson(1/l), independent;
/// * H: u_k = Σ_{l|k} l [C_l⁺ + (−1)^{k/l} C_l⁻], C_l^± Poisson(1/(2l));
/// * S⁺: u_1 = C_1, u_k = C_1 + C_k with C_1 free Poisson(1), C_2
///   semicircular, C_k circular, all *-free;
/// * H⁺: u_1 = C_1⁺ − C_1⁻, u_k = C_1⁺ + (−1)^k C_1⁻ + C_k, C_1^± free
///   Poisson(1/2).
///
/// Joint specs run over orders 1–3 and all k_i ≤ k_max (star patterns
/// included for the free kinds).
pub fn cycle_decomposition_check(group: Category, k_max: usize) -> Result<DecompositionReport> {
    if !matches!(group, Category::S | Category::H | Category::SPlus | Category::HPlus) {
        return Err(Error::UnsupportedCategory { cat: group.to_string() });
    }
    let free = matches!(group, Category::SPlus | Category::HPlus);
    let mut checks = Vec::new();
    for r in 1..=3usize {
        for ks in nondecreasing_tuples(r, k_max) {
            let star_patterns: Vec<Vec<Color>> = if free {
                all_star_patterns(r)
            } else {
                vec![vec![Color::One; r]]
            };
            for stars in star_patterns {
                let spec = MomentSpec::with_stars(&ks, &stars)?;
                let implied = implied_cumulant(group, &spec);
                let closed = closed_form_cumulant(group, &spec)?;
                let pass = implied == Rat::from_integer(BigInt::from(closed));
                checks.push(DecompositionCheck { spec, implied, closed_form: closed, pass });
            }
        }
    }
    Ok(DecompositionReport { group, checks })
}

/// All nondecreasing length-r tuples over 1..=max.
pub(crate) fn nondecreasing_tuples(r: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(r: usize, max: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            rec(r, max, v, cur, out);
            cur.pop();
        }
    }
    rec(r, max, 1, &mut cur, &mut out);
    out
}

fn all_star_patterns(r: usize) -> Vec<Vec<Color>> {
    (0..(1u32 << r))
        .map(|mask| {
            (0..r)
                .map(|i| if mask >> i & 1 == 1 { Color::Star } else { Color::One })
                .collect()
        })
        .collect()
}

/// The joint cumulant implied by the decomposition, evaluated literally by
/// multilinearity over the C-variables.
fn implied_cumulant(group: Category, spec: &MomentSpec) -> Rat {
    let r = spec.r();
    let ks = spec.lengths();
    let es = spec.stars();
    let k1 = ks[0];
    let all_equal = ks.iter().all(|&k| k == k1);
    match group {
        Category::S => {
            // Σ over common divisors l of (Π l) · c_r(C_l,…,C_l) with
            // c_r(C_l,…) = 1/l
            let mut acc = Rat::zero();
            for l in 1..=k1 {
                if ks.iter().all(|&k| k % l == 0) {
                    let coeff = BigInt::from(l).pow(r as u32);
                    acc += Rat::new(coeff, BigInt::from(l));
                }
            }
            acc
        }
        Category::H => {
            // c_r(C_l^±,…) = 1/(2l); the minus variable carries (−1)^{k_i/l}
            let mut acc = Rat::zero();
            for l in 1..=k1 {
                if ks.iter().all(|&k| k % l == 0) {
                    let sign: i64 =
                        if ks.iter().map(|&k| k / l).sum::<usize>() % 2 == 0 { 1 } else { -1 };
                    let coeff = BigInt::from(l).pow(r as u32) * BigInt::from(1 + sign);
                    acc += Rat::new(coeff, BigInt::from(2 * l));
                }
            }
            acc
        }
        Category::SPlus => {
            // κ_r(C_1,…,C_1) = 1 always; plus the C_k block when all factors
            // share one length k ≥ 2 (there the C_k carry mean 1, which is
            // what lifts the means of u_k to 2)
            let mut acc = Rat::one();
            acc += free_tail_cumulant(r, k1, all_equal, es, true);
            acc
        }
        Category::HPlus => {
            // C_1⁺ contributes 1/2; C_1⁻ contributes (Π (−1)^{k_i})/2; the
            // C_k tails are centered
            let sign: i64 = if ks.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
            let mut acc = Rat::new(BigInt::from(1 + sign), BigInt::from(2));
            acc += free_tail_cumulant(r, k1, all_equal, es, false);
            acc
        }
        _ => unreachable!(),
    }
}

/// Free cumulant of the C_k tail variables (k ≥ 2): semicircular at k = 2
/// (κ₂ = 1), circular at k ≥ 3 (κ₂(c, c*) = 1 only), with mean 1 in the
/// symmetric case and mean 0 in the hyperoctahedral one.
fn free_tail_cumulant(r: usize, k: usize, all_equal: bool, es: &[Color], unit_mean: bool) -> Rat {
    if !(all_equal && k >= 2) {
        return Rat::zero();
    }
    match r {
        1 if unit_mean => Rat::one(),
        2 if k == 2 || es[0] != es[1] => Rat::one(),
        _ => Rat::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn law_cumulant_tables() {
        let poisson = Law::Poisson { lambda: rat(1, 3) };
        assert_eq!(law_cumulants(&poisson, 4).unwrap(), vec![rat(1, 3); 4]);

        let gauss = Law::Gaussian { mean: rat(1, 1), variance: rat(2, 1) };
        assert_eq!(
            law_cumulants(&gauss, 4).unwrap(),
            vec![rat(1, 1), rat(2, 1), rat(0, 1), rat(0, 1)]
        );

        let circ = Law::Circular { covariance: rat(1, 1) };
        assert_eq!(law_cumulants(&circ, 3).unwrap(), vec![rat(0, 1); 3]);
        assert_eq!(law_star_covariance(&circ), Some(rat(1, 1)));

        let rayleigh = Law::SymmetrizedRayleigh { variance: rat(1, 1) };
        assert!(law_cumulants(&rayleigh, 2).is_err());
        assert_eq!(
            law_moments(&rayleigh, 6).unwrap(),
            vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(2, 1), rat(0, 1), rat(6, 1)]
        );
    }

    #[test]
    fn decomposition_spot_values() {
        // c_2(u_2, u_4) for S: Σ_{l | gcd(2,4)} l² / l = 1 + 2 = 3
        let spec = MomentSpec::new(&[2, 4]).unwrap();
        assert_eq!(implied_cumulant(Category::S, &spec), rat(3, 1));
        // variance of u_2 for H: l = 1 (sum 4 even): 1; l = 2 (sum 2 even): 2
        let spec22 = MomentSpec::new(&[2, 2]).unwrap();
        assert_eq!(implied_cumulant(Category::H, &spec22), rat(3, 1));
        // S⁺: κ₂(u_k, u_k*) = 1 + 1 = 2 for k ≥ 3
        let opp = MomentSpec::with_stars(&[4, 4], &[Color::One, Color::Star]).unwrap();
        assert_eq!(implied_cumulant(Category::SPlus, &opp), rat(2, 1));
    }

    #[test]
    fn decomposition_reports_pass() {
        for group in [Category::S, Category::H, Category::SPlus, Category::HPlus] {
            let report = cycle_decomposition_check(group, 4).unwrap();
            assert!(!report.checks.is_empty());
            assert!(report.all_pass(), "failures: {:?}", report.failures());
        }
        assert!(cycle_decomposition_check(Category::O, 3).is_err());
    }
}
