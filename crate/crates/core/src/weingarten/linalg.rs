//! Fraction-free exact inversion of integer matrices.
//!
//! Gauss-Jordan elimination in the Bareiss one-step scheme: after choosing
//! pivot t, every other row is updated as
//!
//!   a_ic ← (pivot · a_ic − a_it · a_tc) / previous_pivot
//!
//! and the division is exact (entries stay determinants of bordered
//! submatrices; previously treated diagonals rescale to the current pivot).
//! Row swaps only ever involve not-yet-pivoted rows, which keeps the
//! exactness argument intact. On [A | I] the run ends with [d·I | B] where
//! d = ±det(PA), so the inverse is B/d with a single integer denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub enum Inversion {
    /// inverse[i][j] = num[i][j] / den with den > 0.
    Inverse { num: Vec<Vec<BigInt>>, den: BigInt },
    Singular,
}

/// Invert a square integer matrix given in row-major order.
pub fn invert(a: &[Vec<BigInt>]) -> Inversion {
    let n = a.len();
    if n == 0 {
        return Inversion::Inverse { num: Vec::new(), den: BigInt::one() };
    }
    let width = 2 * n;
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();

    let mut prev = BigInt::one();
    for t in 0..n {
        if m[t][t].is_zero() {
            let swap = (t + 1..n).find(|&r| !m[r][t].is_zero());
            match swap {
                Some(r) => m.swap(t, r),
                None => return Inversion::Singular,
            }
        }
        let pivot_row = m[t].clone();
        let pivot = pivot_row[t].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == t {
                continue;
            }
            let coeff = std::mem::replace(&mut row[t], BigInt::zero());
            for c in 0..width {
                if c == t {
                    continue;
                }
                let cur = std::mem::take(&mut row[c]);
                let val = if coeff.is_zero() || pivot_row[c].is_zero() {
                    if cur.is_zero() {
                        continue;
                    }
                    cur * &pivot
                } else {
                    cur * &pivot - &coeff * &pivot_row[c]
                };
                row[c] = exact_div(val, &prev);
            }
        }
        prev = pivot;
    }

    // All diagonals now equal the last pivot.
    let mut den = prev;
    let negate = den.is_negative();
    if negate {
        den = -den;
    }
    let num = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            debug_assert!(
                (0..n).all(|j| if i == j { !row[j].is_zero() } else { row[j].is_zero() }),
                "left half did not reduce to a diagonal"
            );
            let tail: Vec<BigInt> = row.drain(n..).collect();
            if negate {
                tail.into_iter().map(|v| -v).collect()
            } else {
                tail
            }
        })
        .collect();
    Inversion::Inverse { num, den }
}

fn exact_div(value: BigInt, divisor: &BigInt) -> BigInt {
    if divisor.is_one() {
        return value;
    }
    let (q, r) = value.div_rem(divisor);
    assert!(r.is_zero(), "fraction-free elimination produced a non-exact division");
    q
}
