//! Exhaustive (exact rational) group averages for the finite groups:
//! S_n over all n! permutations, H_n over all 2^n n! signed permutations,
//! H_n^s over all s^n n! monomial matrices with exact root-of-unity
//! arithmetic in Z[x]/(x^s − 1), reduced modulo the s-th cyclotomic
//! polynomial at the end (the reduction must come out constant, which
//! doubles as a Galois-invariance self-check).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::sample::permutation_cycles;
use crate::asymptotics::MomentSpec;
use crate::error::{Error, Result};
use crate::partitions::{Color, ColorString};
use crate::weingarten::Rat;

/// Visit all permutations of 0..n (Heap's algorithm).
pub fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// Exact ∫_{S_n} Π Tr(σ^{k_i}) dσ as the average over all n! permutation
/// matrices.
pub fn exhaustive_s_moment(n: usize, spec: &MomentSpec) -> Result<Rat> {
    if n > 8 {
        return Err(Error::LimitExceeded { k: n, cap: 8, what: "exhaustive S_n average" });
    }
    let mut acc = BigInt::zero();
    for_each_permutation(n, |perm| {
        let mut term = BigInt::one();
        for &k in spec.lengths() {
            let tr = permutation_power_trace(perm, k);
            term *= BigInt::from(tr);
        }
        acc += term;
    });
    Ok(Rat::new(acc, factorial(n)))
}

fn permutation_power_trace(perm: &[usize], k: usize) -> u64 {
    permutation_cycles(perm)
        .into_iter()
        .filter(|c| k % c.len() == 0)
        .map(|c| c.len() as u64)
        .sum()
}

/// Exact ∫_{H_n} Π Tr(u^{k_i}) du over all 2^n n! signed permutation
/// matrices.
pub fn exhaustive_h_moment(n: usize, spec: &MomentSpec) -> Result<Rat> {
    if n > 6 {
        return Err(Error::LimitExceeded { k: n, cap: 6, what: "exhaustive H_n average" });
    }
    let mut acc = BigInt::zero();
    for_each_permutation(n, |perm| {
        let cycles = permutation_cycles(perm);
        for signs in 0u32..(1 << n) {
            let mut term = BigInt::one();
            for &k in spec.lengths() {
                let mut tr: i64 = 0;
                for cycle in &cycles {
                    let l = cycle.len();
                    if k % l != 0 {
                        continue;
                    }
                    let neg = cycle.iter().filter(|&&i| signs >> i & 1 == 1).count() % 2 == 1;
                    let sign: i64 = if neg && (k / l) % 2 == 1 { -1 } else { 1 };
                    tr += sign * l as i64;
                }
                term *= BigInt::from(tr);
                if term.is_zero() {
                    break;
                }
            }
            acc += term;
        }
    });
    let order = factorial(n) * BigInt::from(2u64).pow(n as u32);
    Ok(Rat::new(acc, order))
}

/// Polynomial in Z[x]/(x^s − 1): exact arithmetic for s-th roots of unity.
#[derive(Clone, Debug, PartialEq)]
struct CycPoly {
    s: usize,
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    fn zero(s: usize) -> Self {
        CycPoly { s, coeffs: vec![BigInt::zero(); s] }
    }

    fn one(s: usize) -> Self {
        let mut p = CycPoly::zero(s);
        p.coeffs[0] = BigInt::one();
        p
    }

    fn root(s: usize, exp: u64) -> Self {
        let mut p = CycPoly::zero(s);
        p.coeffs[(exp % s as u64) as usize] = BigInt::one();
        p
    }

    fn add_assign(&mut self, other: &CycPoly) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    fn mul(&self, other: &CycPoly) -> CycPoly {
        let s = self.s;
        let mut out = CycPoly::zero(s);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % s] += a * b;
            }
        }
        out
    }

    /// Entrywise complex conjugation: x^j ↦ x^{s−j}.
    fn conj(&self) -> CycPoly {
        let s = self.s;
        let mut out = CycPoly::zero(s);
        for (j, a) in self.coeffs.iter().enumerate() {
            out.coeffs[(s - j) % s] += a;
        }
        out
    }

    fn scale(&self, f: i64) -> CycPoly {
        CycPoly { s: self.s, coeffs: self.coeffs.iter().map(|c| c * BigInt::from(f)).collect() }
    }

    /// Evaluate at a primitive s-th root of unity; valid only when the value
    /// is rational, i.e. the remainder mod Φ_s is a constant.
    fn rational_value(&self) -> Result<BigInt> {
        let phi = cyclotomic(self.s);
        let rem = poly_rem(&self.coeffs, &phi);
        for c in rem.iter().skip(1) {
            if !c.is_zero() {
                return Err(Error::InvalidSpec(
                    "group average did not reduce to a rational (cyclotomic remainder non-constant)"
                        .into(),
                ));
            }
        }
        Ok(rem.first().cloned().unwrap_or_else(BigInt::zero))
    }
}

/// Φ_s as integer coefficients (low to high), by dividing x^s − 1 by all
/// lower-order cyclotomic factors.
fn cyclotomic(s: usize) -> Vec<BigInt> {
    if s == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); s + 1];
    num[0] = -BigInt::one();
    num[s] = BigInt::one();
    let mut result = num;
    for d in 1..s {
        if s % d == 0 {
            let phi_d = cyclotomic(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

/// Exact division of polynomials with integer coefficients (divisor monic).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    if nd < dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=(nd - dd)).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Remainder of num mod den (den monic).
fn poly_rem(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let c = rem.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = rem.len() - dd;
        for (j, dj) in den.iter().take(dd).enumerate() {
            rem[shift + j] -= &c * dj;
        }
    }
    rem
}

/// Monomial matrix u e_j = ω^{exps[j]} e_{perm[j]} over the s-th roots.
#[derive(Clone)]
struct Monomial {
    perm: Vec<usize>,
    exps: Vec<u64>,
    s: u64,
}

impl Monomial {
    fn identity(n: usize, s: u64) -> Self {
        Monomial { perm: (0..n).collect(), exps: vec![0; n], s }
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        // (self · rhs) e_j = ω^{rhs.exps[j] + self.exps[rhs.perm[j]]} e_{self.perm[rhs.perm[j]]}
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut exps = vec![0u64; n];
        for j in 0..n {
            let mid = rhs.perm[j];
            perm[j] = self.perm[mid];
            exps[j] = (rhs.exps[j] + self.exps[mid]) % self.s;
        }
        Monomial { perm, exps, s: self.s }
    }

    fn adjoint(&self) -> Monomial {
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut exps = vec![0u64; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            exps[self.perm[j]] = (self.s - self.exps[j] % self.s) % self.s;
        }
        Monomial { perm, exps, s: self.s }
    }

    fn trace(&self) -> CycPoly {
        let s = self.s as usize;
        let mut tr = CycPoly::zero(s);
        for j in 0..self.perm.len() {
            if self.perm[j] == j {
                tr.coeffs[(self.exps[j] % self.s) as usize] += BigInt::one();
            }
        }
        tr
    }
}

/// Exact ∫_{H_n^s} Π Tr(w_i(v)) dv where w_i is the ε-word Π_t v^{e_t}
/// (Star = adjoint), averaged over all s^n n! monomial matrices.
pub fn exhaustive_hs_word_moment(s: u64, n: usize, eps_list: &[ColorString]) -> Result<Rat> {
    if s < 2 {
        return Err(Error::InvalidSpec("H^s needs s ≥ 2".into()));
    }
    let total_elems = (s as f64).powi(n as i32) * (1..=n).map(|v| v as f64).product::<f64>();
    if total_elems > 2e6 {
        return Err(Error::LimitExceeded { k: n, cap: 6, what: "exhaustive H^s average" });
    }
    let sp = s as usize;
    let mut acc = CycPoly::zero(sp);
    let mut exps = vec![0u64; n];
    for_each_permutation(n, |perm| loop_exps(&mut exps, s, |e| {
        let v = Monomial { perm: perm.to_vec(), exps: e.to_vec(), s };
        let vadj = v.adjoint();
        let mut term = CycPoly::one(sp);
        for eps in eps_list {
            let mut w = Monomial::identity(n, s);
            for &sym in eps.symbols() {
                w = w.mul(match sym {
                    Color::One => &v,
                    Color::Star => &vadj,
                });
            }
            term = term.mul(&w.trace());
        }
        acc.add_assign(&term);
    }));
    let order = factorial(n) * BigInt::from(s).pow(n as u32);
    Ok(Rat::new(acc.rational_value()?, order))
}

/// Exact ∫_{H_n^s} Π Tr(v^{k_i})^{e_i} dv (plain powers; a star conjugates
/// the trace).
pub fn exhaustive_hs_moment(s: u64, n: usize, spec: &MomentSpec) -> Result<Rat> {
    if s < 2 {
        return Err(Error::InvalidSpec("H^s needs s ≥ 2".into()));
    }
    let total_elems = (s as f64).powi(n as i32) * (1..=n).map(|v| v as f64).product::<f64>();
    if total_elems > 2e6 {
        return Err(Error::LimitExceeded { k: n, cap: 6, what: "exhaustive H^s average" });
    }
    let sp = s as usize;
    let kmax = *spec.lengths().iter().max().unwrap();
    let mut acc = CycPoly::zero(sp);
    let mut exps = vec![0u64; n];
    for_each_permutation(n, |perm| {
        let cycles = permutation_cycles(perm);
        loop_exps(&mut exps, s, |e| {
            // Tr(v^k) = Σ_{cycles l | k} l · ω^{(k/l)·phase}
            let mut traces = vec![CycPoly::zero(sp); kmax];
            for cycle in &cycles {
                let l = cycle.len();
                let phase: u64 = cycle.iter().map(|&i| e[i]).sum::<u64>() % s;
                for k in (l..=kmax).step_by(l) {
                    let root = CycPoly::root(sp, (k / l) as u64 * phase);
                    traces[k - 1].add_assign(&root.scale(l as i64));
                }
            }
            let mut term = CycPoly::one(sp);
            for (&k, &star) in spec.lengths().iter().zip(spec.stars()) {
                let tr = &traces[k - 1];
                term = term.mul(&match star {
                    Color::One => tr.clone(),
                    Color::Star => tr.conj(),
                });
            }
            acc.add_assign(&term);
        });
    });
    let order = factorial(n) * BigInt::from(s).pow(n as u32);
    Ok(Rat::new(acc.rational_value()?, order))
}

/// Iterate all exponent vectors in {0,…,s−1}^n.
fn loop_exps(exps: &mut Vec<u64>, s: u64, mut f: impl FnMut(&[u64])) {
    let n = exps.len();
    for e in exps.iter_mut() {
        *e = 0;
    }
    loop {
        f(exps);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            exps[i] += 1;
            if exps[i] < s {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
