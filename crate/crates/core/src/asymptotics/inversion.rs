//! Moment ↔ cumulant inversion engines.
//!
//! Classical cumulants via Möbius inversion over the full partition lattice;
//! free cumulants via the moment-cumulant recursion over noncrossing
//! partitions (no explicit noncrossing Möbius function needed). Both take a
//! joint-moment oracle on ordered index tuples.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::partitions::{enumerate_partitions, for_each_noncrossing, Partition};
use crate::weingarten::Rat;

/// c_r(x_1,…,x_r) = Σ_{σ ∈ P(r)} μ(σ, 1_r) Π_{blocks B} m(x_B).
///
/// The oracle receives each block as a sorted list of variable indices.
pub fn classical_cumulant_from_moments<F>(r: usize, mut moment: F) -> Result<Rat>
where
    F: FnMut(&[usize]) -> Result<Rat>,
{
    let mut acc = Rat::zero();
    for sigma in enumerate_partitions(r)?.iter() {
        let mut term = Rat::from_integer(sigma.mobius_to_top().into());
        for block in sigma.blocks() {
            term *= moment(&block)?;
        }
        acc += term;
    }
    Ok(acc)
}

/// κ_r(x_1,…,x_r) from the recursion m(S) = Σ_{π ∈ NC(|S|)} Π_B κ(S|_B),
/// solved top-down with memoization on index tuples.
pub fn free_cumulant_from_moments<F>(r: usize, mut moment: F) -> Result<Rat>
where
    F: FnMut(&[usize]) -> Result<Rat>,
{
    let indices: Vec<usize> = (0..r).collect();
    let mut memo: HashMap<Vec<usize>, Rat> = HashMap::new();
    kappa(&indices, &mut moment, &mut memo)
}

fn kappa<F>(indices: &[usize], moment: &mut F, memo: &mut HashMap<Vec<usize>, Rat>) -> Result<Rat>
where
    F: FnMut(&[usize]) -> Result<Rat>,
{
    if let Some(hit) = memo.get(indices) {
        return Ok(hit.clone());
    }
    let s = indices.len();
    let mut value = moment(indices)?;
    if s > 1 {
        let mut lower = Vec::new();
        for_each_noncrossing(s, |labels| {
            let pi = Partition::from_labels(labels);
            if pi.block_count() > 1 {
                lower.push(pi);
            }
        });
        for pi in lower {
            let mut term = Rat::one();
            for block in pi.blocks() {
                let sub: Vec<usize> = block.iter().map(|&i| indices[i]).collect();
                term *= kappa(&sub, moment, memo)?;
                if term.is_zero() {
                    break;
                }
            }
            value -= term;
        }
    }
    memo.insert(indices.to_vec(), value.clone());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn constants_have_vanishing_higher_cumulants() {
        for r in 1..=5 {
            let c = classical_cumulant_from_moments(r, |_| Ok(rat(1))).unwrap();
            assert_eq!(c, if r == 1 { rat(1) } else { rat(0) }, "classical r = {r}");
            let kap = free_cumulant_from_moments(r, |_| Ok(rat(1))).unwrap();
            assert_eq!(kap, if r == 1 { rat(1) } else { rat(0) }, "free r = {r}");
        }
        // constant value 7: κ₁ = 7, higher vanish
        assert_eq!(free_cumulant_from_moments(1, |_| Ok(rat(7))).unwrap(), rat(7));
        let pow7 = |s: &[usize]| Ok(rat(7i64.pow(s.len() as u32)));
        assert_eq!(free_cumulant_from_moments(3, pow7).unwrap(), rat(0));
    }

    #[test]
    fn poisson_moments_have_constant_classical_cumulants() {
        // Poisson(1) raw moments are the Bell numbers 1, 2, 5, 15, …
        let bell = [1i64, 1, 2, 5, 15, 52, 203];
        for r in 1..=4 {
            let c = classical_cumulant_from_moments(r, |s| Ok(rat(bell[s.len()]))).unwrap();
            assert_eq!(c, rat(1), "r = {r}");
        }
    }

    #[test]
    fn semicircular_moments_have_free_cumulant_profile() {
        // centered semicircular, variance 1: m_j = Catalan(j/2) for even j
        let m = [1i64, 0, 1, 0, 2, 0, 5]; // m_0..m_6
        for r in 1..=6 {
            let kap = free_cumulant_from_moments(r, |s| Ok(rat(m[s.len()]))).unwrap();
            assert_eq!(kap, if r == 2 { rat(1) } else { rat(0) }, "r = {r}");
        }
    }

    #[test]
    fn free_poisson_moments_have_constant_free_cumulants() {
        // free Poisson(1): m_j = Catalan(j)
        let catalan = [1i64, 1, 2, 5, 14, 42, 132];
        for r in 1..=6 {
            let kap = free_cumulant_from_moments(r, |s| Ok(rat(catalan[s.len()]))).unwrap();
            assert_eq!(kap, rat(1), "r = {r}");
        }
    }
}
