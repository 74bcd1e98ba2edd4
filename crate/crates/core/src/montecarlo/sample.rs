//! Samplers for the classical groups of the engine and the trace
//! evaluations on sampled elements.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::rng::TrialRng;
use crate::error::{Error, Result};

/// Sampler identifiers: the classical easy groups, the unitary group, and
/// the complex reflection groups H_n^s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleGroup {
    O,
    S,
    H,
    B,
    U,
    Hs(u64),
}

impl SampleGroup {
    pub fn is_complex(&self) -> bool {
        matches!(self, SampleGroup::U | SampleGroup::Hs(_))
    }
}

impl fmt::Display for SampleGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleGroup::O => write!(f, "O"),
            SampleGroup::S => write!(f, "S"),
            SampleGroup::H => write!(f, "H"),
            SampleGroup::B => write!(f, "B"),
            SampleGroup::U => write!(f, "U"),
            SampleGroup::Hs(s) => write!(f, "Hs({s})"),
        }
    }
}

impl FromStr for SampleGroup {
    type Err = Error;

    fn from_str(raw: &str) -> Result<SampleGroup> {
        let s = raw.trim();
        match s {
            "O" => Ok(SampleGroup::O),
            "S" => Ok(SampleGroup::S),
            "H" => Ok(SampleGroup::H),
            "B" => Ok(SampleGroup::B),
            "U" => Ok(SampleGroup::U),
            _ => {
                if let Some(inner) = s.strip_prefix("Hs(").and_then(|t| t.strip_suffix(')')) {
                    let v: u64 = inner
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad s in sampler {raw:?}")))?;
                    if v < 2 {
                        return Err(Error::Parse("sampler Hs(s) needs s ≥ 2".into()));
                    }
                    return Ok(SampleGroup::Hs(v));
                }
                Err(Error::Parse(format!("unknown sampler {raw:?}")))
            }
        }
    }
}

/// One sampled group element.
pub enum Element {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
    /// Monomial matrix u e_j = phase_j · e_(perm j); phases are s-th roots
    /// of unity stored as exponents (s = 2 holds signs).
    Monomial { perm: Vec<usize>, exps: Vec<u64>, s: u64 },
}

pub fn sample_element(group: SampleGroup, n: usize, rng: &mut TrialRng) -> Element {
    match group {
        SampleGroup::O => Element::Real(sample_orthogonal(n, rng)),
        SampleGroup::B => Element::Real(sample_bistochastic(n, rng)),
        SampleGroup::U => Element::Complex(sample_unitary(n, rng)),
        SampleGroup::S => Element::Monomial { perm: sample_permutation(n, rng), exps: vec![0; n], s: 1 },
        SampleGroup::H => {
            let perm = sample_permutation(n, rng);
            let exps = (0..n).map(|_| rng.next_below(2) as u64).collect();
            Element::Monomial { perm, exps, s: 2 }
        }
        SampleGroup::Hs(s) => {
            let perm = sample_permutation(n, rng);
            let exps = (0..n).map(|_| rng.next_below(s as usize) as u64).collect();
            Element::Monomial { perm, exps, s }
        }
    }
}

/// Haar-distributed orthogonal matrix: orthonormalization of an i.i.d.
/// standard normal matrix with the triangular factor's diagonal kept
/// positive (modified Gram-Schmidt normalizes against a positive norm, so
/// the convention holds by construction).
pub fn sample_orthogonal(n: usize, rng: &mut TrialRng) -> Vec<f64> {
    let mut a: Vec<f64> = (0..n * n).map(|_| rng.next_gaussian()).collect();
    // columns of a are orthonormalized in place
    for j in 0..n {
        for i in 0..j {
            let mut dot = 0.0;
            for row in 0..n {
                dot += a[row * n + i] * a[row * n + j];
            }
            for row in 0..n {
                a[row * n + j] -= dot * a[row * n + i];
            }
        }
        let mut norm = 0.0;
        for row in 0..n {
            norm += a[row * n + j] * a[row * n + j];
        }
        let norm = norm.sqrt();
        for row in 0..n {
            a[row * n + j] /= norm;
        }
    }
    a
}

/// Haar-distributed unitary matrix (complex normals, positive real diagonal
/// of the triangular factor).
pub fn sample_unitary(n: usize, rng: &mut TrialRng) -> Vec<Complex64> {
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian()))
        .collect();
    for j in 0..n {
        for i in 0..j {
            let mut dot = Complex64::new(0.0, 0.0);
            for row in 0..n {
                dot += a[row * n + i].conj() * a[row * n + j];
            }
            for row in 0..n {
                let correction = dot * a[row * n + i];
                a[row * n + j] -= correction;
            }
        }
        let mut norm = 0.0;
        for row in 0..n {
            norm += a[row * n + j].norm_sqr();
        }
        let norm = norm.sqrt();
        for row in 0..n {
            a[row * n + j] /= norm;
        }
    }
    a
}

/// Uniform permutation by Fisher-Yates; perm maps j to σ(j), so the matrix
/// has u_(σ(j), j) = 1.
pub fn sample_permutation(n: usize, rng: &mut TrialRng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i + 1);
        perm.swap(i, j);
    }
    perm
}

/// Haar bistochastic matrix V (1 ⊕ g) Vᵀ with g Haar on O_{n−1} and V the
/// Householder reflection sending e_1 to (1,…,1)/√n; rows and columns then
/// sum to 1.
pub fn sample_bistochastic(n: usize, rng: &mut TrialRng) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    let g = sample_orthogonal(n - 1, rng);
    // M = 1 ⊕ g
    let mut m = vec![0.0; n * n];
    m[0] = 1.0;
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            m[(i + 1) * n + (j + 1)] = g[i * (n - 1) + j];
        }
    }
    // V = I − 2wwᵀ with w ∝ e_1 − u, u = (1,…,1)/√n
    let u = 1.0 / (n as f64).sqrt();
    let mut w: Vec<f64> = vec![-u; n];
    w[0] += 1.0;
    let wnorm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut w {
        *x /= wnorm;
    }
    let reflect = |mat: &mut Vec<f64>, left: bool| {
        // left: mat ← (I − 2wwᵀ) mat; otherwise mat ← mat (I − 2wwᵀ)
        for fixed in 0..n {
            let mut dot = 0.0;
            for t in 0..n {
                dot += w[t] * if left { mat[t * n + fixed] } else { mat[fixed * n + t] };
            }
            for t in 0..n {
                if left {
                    mat[t * n + fixed] -= 2.0 * dot * w[t];
                } else {
                    mat[fixed * n + t] -= 2.0 * dot * w[t];
                }
            }
        }
    };
    reflect(&mut m, true);
    reflect(&mut m, false);
    m
}

/// Traces of the first kmax powers of a dense real matrix.
pub fn real_power_traces(mat: &[f64], n: usize, kmax: usize) -> Vec<f64> {
    let mut traces = Vec::with_capacity(kmax);
    let mut cur = mat.to_vec();
    traces.push((0..n).map(|i| cur[i * n + i]).sum());
    for _ in 1..kmax {
        cur = real_matmul(&cur, mat, n);
        traces.push((0..n).map(|i| cur[i * n + i]).sum());
    }
    traces
}

pub fn real_matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i * n + l];
            if ail == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += ail * b[l * n + j];
            }
        }
    }
    out
}

pub fn complex_power_traces(mat: &[Complex64], n: usize, kmax: usize) -> Vec<Complex64> {
    let mut traces = Vec::with_capacity(kmax);
    let mut cur = mat.to_vec();
    traces.push((0..n).map(|i| cur[i * n + i]).sum());
    for _ in 1..kmax {
        cur = complex_matmul(&cur, mat, n);
        traces.push((0..n).map(|i| cur[i * n + i]).sum());
    }
    traces
}

pub fn complex_matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i * n + l];
            if ail.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += ail * b[l * n + j];
            }
        }
    }
    out
}

pub fn adjoint(mat: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = mat[i * n + j].conj();
        }
    }
    out
}

/// Cycles of a permutation as (length, positions).
pub fn permutation_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = perm[start];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = perm[cur];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Tr(u^k) for a monomial matrix: cycles of length l | k contribute
/// l · ω^{(k/l) · phase(cycle)}.
pub fn monomial_power_traces(perm: &[usize], exps: &[u64], s: u64, kmax: usize) -> Vec<Complex64> {
    let cycles = permutation_cycles(perm);
    let mut traces = vec![Complex64::new(0.0, 0.0); kmax];
    for cycle in &cycles {
        let l = cycle.len();
        let phase: u64 = cycle.iter().map(|&i| exps[i]).sum::<u64>() % s.max(1);
        for k in (l..=kmax).step_by(l) {
            let angle = std::f64::consts::TAU * ((k / l) as u64 * phase % s.max(1)) as f64
                / s.max(1) as f64;
            traces[k - 1] += Complex64::new(angle.cos(), angle.sin()).scale(l as f64);
        }
    }
    traces
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_matrix_properties() {
        let mut rng = TrialRng::new(1, 2);
        let perm = sample_permutation(3, &mut rng);
        let mut seen = [false; 3];
        for &p in &perm {
            assert!(!seen[p]);
            seen[p] = true;
        }
    }

    #[test]
    fn orthogonal_sample_is_orthogonal() {
        let mut rng = TrialRng::new(9, 4);
        let n = 8;
        let q = sample_orthogonal(n, &mut rng);
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|r| q[r * n + i] * q[r * n + j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-10, "({i},{j}) = {dot}");
            }
        }
    }

    #[test]
    fn unitary_sample_is_unitary() {
        let mut rng = TrialRng::new(11, 0);
        let n = 6;
        let v = sample_unitary(n, &mut rng);
        for i in 0..n {
            for j in 0..n {
                let dot: Complex64 = (0..n).map(|r| v[r * n + i].conj() * v[r * n + j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expected).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn bistochastic_rows_and_columns_sum_to_one() {
        let mut rng = TrialRng::new(5, 3);
        let n = 4;
        let b = sample_bistochastic(n, &mut rng);
        for i in 0..n {
            let row: f64 = (0..n).map(|j| b[i * n + j]).sum();
            let col: f64 = (0..n).map(|j| b[j * n + i]).sum();
            assert!((row - 1.0).abs() < 1e-12, "row {i}: {row}");
            assert!((col - 1.0).abs() < 1e-12, "col {i}: {col}");
        }
        // orthogonality
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|r| b[r * n + i] * b[r * n + j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn monomial_traces_match_dense() {
        // signed permutation (s = 2) checked against the dense computation
        let perm = vec![1, 2, 0, 4, 3]; // cycles (0 1 2)(3 4)
        let exps = vec![1, 0, 0, 1, 1];
        let n = 5;
        let mut dense = vec![0.0; n * n];
        for j in 0..n {
            dense[perm[j] * n + j] = if exps[j] == 1 { -1.0 } else { 1.0 };
        }
        let fast = monomial_power_traces(&perm, &exps, 2, 6);
        let slow = real_power_traces(&dense, n, 6);
        for k in 0..6 {
            assert!((fast[k].re - slow[k]).abs() < 1e-12, "k = {}", k + 1);
            assert!(fast[k].im.abs() < 1e-12);
        }
    }
}
