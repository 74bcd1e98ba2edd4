//! Exact Gram/Weingarten linear algebra at fixed integer n and the exact
//! finite-n Haar moments it produces.
//!
//! For a category D_k the Gram matrix is G(p,q) = n^|p∨q| over the canonical
//! enumeration of D_k; the Weingarten matrix is its exact inverse, held as
//! integer numerators over one positive integer denominator. No floating
//! point appears anywhere in this module.

mod linalg;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::asymptotics::MomentSpec;
use crate::categories::Category;
use crate::error::{Error, Result};
use crate::partitions::{Color, ColorString, Partition};

/// Exact rational scalar: reduced, positive denominator (maintained by
/// num-rational).
pub type Rat = BigRational;

/// Serialize as the CLI's exact "num/den" form (always with a denominator).
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Largest basis a table will be built for; beyond this the exact inversion
/// is not tractable.
const MAX_TABLE_BASIS: usize = 1500;

/// Indexed category basis with its exact Gram matrix and exact inverse.
#[derive(Debug)]
pub struct WeingartenTable {
    cat: Category,
    k: usize,
    n: u64,
    eps: Option<ColorString>,
    basis: Arc<Vec<Partition>>,
    gram: Vec<BigInt>,    // m×m row-major
    inv_num: Vec<BigInt>, // m×m row-major, entry/den is the Weingarten matrix
    inv_den: BigInt,      // positive
}

impl WeingartenTable {
    pub fn cat(&self) -> Category {
        self.cat
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn eps(&self) -> Option<&ColorString> {
        self.eps.as_ref()
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn gram_entry(&self, a: usize, b: usize) -> &BigInt {
        &self.gram[a * self.size() + b]
    }

    /// W(a,b), reduced on demand.
    pub fn wg_entry(&self, a: usize, b: usize) -> Rat {
        Rat::new(self.inv_num[a * self.size() + b].clone(), self.inv_den.clone())
    }

    /// Exact check that wg · gram is the identity.
    pub fn verify_inverse(&self) -> bool {
        let m = self.size();
        for i in 0..m {
            for j in 0..m {
                let mut dot = BigInt::zero();
                for l in 0..m {
                    dot += &self.inv_num[i * m + l] * &self.gram[l * m + j];
                }
                let expected = if i == j { self.inv_den.clone() } else { BigInt::zero() };
                if dot != expected {
                    return false;
                }
            }
        }
        true
    }

    /// The Haar integral ∫ u_{i1 j1} … u_{ik jk}: Σ over basis pairs with
    /// p ≤ ker i and q ≤ ker j of W(p,q). Indices are 1-based in 1..=n.
    pub fn haar_integral(&self, i: &[u64], j: &[u64]) -> Result<Rat> {
        for idx in [i, j] {
            if idx.len() != self.k {
                return Err(Error::SizeMismatch {
                    left: idx.len(),
                    right: self.k,
                    context: "haar integral index length",
                });
            }
            for &v in idx {
                if v == 0 || v > self.n {
                    return Err(Error::IndexOutOfRange { value: v, n: self.n });
                }
            }
        }
        let m = self.size();
        let rows: Vec<usize> =
            (0..m).filter(|&a| refines_kernel(&self.basis[a], i)).collect();
        let cols: Vec<usize> =
            (0..m).filter(|&b| refines_kernel(&self.basis[b], j)).collect();
        let mut acc = BigInt::zero();
        for &a in &rows {
            for &b in &cols {
                acc += &self.inv_num[a * m + b];
            }
        }
        Ok(Rat::new(acc, self.inv_den.clone()))
    }
}

/// p ≤ ker(values): every block of p carries a constant value.
fn refines_kernel(p: &Partition, values: &[u64]) -> bool {
    let mut rep: Vec<Option<u64>> = vec![None; p.block_count()];
    for (pos, &b) in p.labels().iter().enumerate() {
        match rep[b] {
            None => rep[b] = Some(values[pos]),
            Some(v) => {
                if v != values[pos] {
                    return false;
                }
            }
        }
    }
    true
}

type TableKey = (Category, usize, u64, Option<ColorString>);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<WeingartenTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<WeingartenTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build (or fetch from the cache) the table for (cat, k, n, ε).
pub fn build_table(
    cat: Category,
    k: usize,
    n: u64,
    eps: Option<&ColorString>,
) -> Result<Arc<WeingartenTable>> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be ≥ 1".into()));
    }
    let key = (cat, k, n, eps.cloned());
    if let Some(hit) = table_cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }

    let basis = cat.enumerate(k, eps)?;
    let m = basis.len();
    if m > MAX_TABLE_BASIS {
        return Err(Error::LimitExceeded { k, cap: MAX_TABLE_BASIS, what: "Weingarten table basis" });
    }
    let pow = powers(n, k);
    let mut gram = vec![BigInt::zero(); m * m];
    for a in 0..m {
        for b in a..m {
            let joined = basis[a].join(&basis[b]).expect("same k");
            let entry = pow[joined.block_count()].clone();
            gram[a * m + b] = entry.clone();
            gram[b * m + a] = entry;
        }
    }
    let grid: Vec<Vec<BigInt>> =
        (0..m).map(|a| gram[a * m..(a + 1) * m].to_vec()).collect();
    let (inv_num, inv_den) = match linalg::invert(&grid) {
        linalg::Inversion::Singular => {
            return Err(Error::SingularGram { cat: cat.to_string(), k, n })
        }
        linalg::Inversion::Inverse { num, den } => {
            (num.into_iter().flatten().collect::<Vec<BigInt>>(), den)
        }
    };
    let table = Arc::new(WeingartenTable {
        cat,
        k,
        n,
        eps: eps.cloned(),
        basis,
        gram,
        inv_num,
        inv_den,
    });
    // cheap tables are verified on the spot; big ones in the test suites
    if m <= 64 {
        debug_assert!(table.verify_inverse());
    }
    table_cache().lock().unwrap().insert(key, Arc::clone(&table));
    Ok(table)
}

fn powers(n: u64, k: usize) -> Vec<BigInt> {
    let mut pow = Vec::with_capacity(k + 1);
    pow.push(BigInt::one());
    for _ in 0..k {
        let last = pow.last().unwrap() * BigInt::from(n);
        pow.push(last);
    }
    pow
}

/// Exact ∫_G Tr(u^{k1})^{e1} … Tr(u^{kr})^{er} du at fixed n, via the closed
/// double sum Σ_{p,q ∈ D_k} n^{|p ∨ γ(q)|} W(p,q). Valid for every
/// enumerable uncolored category whose Gram matrix inverts at (k, n);
/// the value is the invariant-partition count exactly (no 1/n corrections)
/// when the category is one of the classical groups.
pub fn trace_moment_exact(cat: Category, n: u64, spec: &MomentSpec) -> Result<Rat> {
    if cat.needs_colors() {
        return Err(Error::InvalidSpec(format!(
            "{cat} moments take per-cycle color strings; use word_moment_exact"
        )));
    }
    let k = spec.total();
    let table = build_table(cat, k, n, None)?;
    let m = table.size();
    if m == 0 {
        return Ok(Rat::zero());
    }
    let gamma = spec.trace_permutation()?;
    let pushed: Vec<Partition> = table
        .basis()
        .iter()
        .map(|q| gamma.perm().apply_to(q).expect("same k"))
        .collect();
    let pow = powers(n, k);
    let mut acc = BigInt::zero();
    for a in 0..m {
        let pa = &table.basis()[a];
        for b in 0..m {
            let joined = pa.join(&pushed[b]).expect("same k");
            acc += &pow[joined.block_count()] * &table.inv_num[a * m + b];
        }
    }
    Ok(Rat::new(acc, table.inv_den.clone()))
}

/// Exact ∫ over the product of traces of ε-words at fixed n, for the colored
/// categories: U_n (basis P_2(ε)) and H_n^s (basis P^s(ε)).
///
/// Each cycle's word is Π_t v^{e_t} where `One` is the matrix v and `Star`
/// its adjoint, i.e. a starred letter reverses the index chaining locally.
/// The double sum then runs over n^{|closure(α(p) ∨ β(q))|} W(p,q) with α, β
/// the row/column index maps of that chaining.
pub fn word_moment_exact(cat: Category, n: u64, eps_list: &[ColorString]) -> Result<Rat> {
    if !cat.needs_colors() {
        return Err(Error::InvalidSpec(format!("{cat} is not a colored category")));
    }
    let eps = ColorString::concat(eps_list);
    let k = eps.len();
    if k == 0 {
        return Err(Error::InvalidSpec("empty word specification".into()));
    }
    let table = build_table(cat, k, n, Some(&eps))?;
    let m = table.size();
    if m == 0 {
        return Ok(Rat::zero());
    }

    // position → incoming chain variable (alpha) and outgoing one (beta)
    let mut alpha = vec![0usize; k];
    let mut beta = vec![0usize; k];
    let mut offset = 0;
    for part in eps_list {
        let len = part.len();
        for t in 0..len {
            let pos = offset + t;
            let next = offset + (t + 1) % len;
            match part.symbols()[t] {
                Color::One => {
                    alpha[pos] = pos;
                    beta[pos] = next;
                }
                Color::Star => {
                    alpha[pos] = next;
                    beta[pos] = pos;
                }
            }
        }
        offset += len;
    }

    let blocks: Vec<Vec<Vec<usize>>> = table.basis().iter().map(|p| p.blocks()).collect();
    let pow = powers(n, k);
    let mut acc = BigInt::zero();
    let mut parent = vec![0usize; k];
    for a in 0..m {
        for b in 0..m {
            for (v, slot) in parent.iter_mut().enumerate() {
                *slot = v;
            }
            for block in &blocks[a] {
                for w in block.windows(2) {
                    dsu_union(&mut parent, alpha[w[0]], alpha[w[1]]);
                }
            }
            for block in &blocks[b] {
                for w in block.windows(2) {
                    dsu_union(&mut parent, beta[w[0]], beta[w[1]]);
                }
            }
            let mut roots = 0;
            for v in 0..k {
                if dsu_find(&mut parent, v) == v {
                    roots += 1;
                }
            }
            acc += &pow[roots] * &table.inv_num[a * m + b];
        }
    }
    Ok(Rat::new(acc, table.inv_den.clone()))
}

/// ∫_{U_n} of a product of traces of words in v, v*: the U_n Weingarten
/// formula on the basis P_2(ε).
pub fn unitary_trace_moment_exact(n: u64, eps_list: &[ColorString]) -> Result<Rat> {
    word_moment_exact(Category::UPairs, n, eps_list)
}

fn dsu_find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn dsu_union(parent: &mut [usize], i: usize, j: usize) {
    let (ri, rj) = (dsu_find(parent, i), dsu_find(parent, j));
    if ri != rj {
        parent[ri] = rj;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::SParam;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gram_and_wg_for_s_at_k2_n3() {
        let t = build_table(Category::S, 2, 3, None).unwrap();
        // basis order: 1_2 before 1|2 (lexicographic growth strings 00 < 01)
        assert_eq!(t.basis()[0], Partition::full(2));
        assert_eq!(t.basis()[1], Partition::singletons(2));
        assert_eq!(t.gram_entry(0, 0), &BigInt::from(3));
        assert_eq!(t.gram_entry(0, 1), &BigInt::from(3));
        assert_eq!(t.gram_entry(1, 1), &BigInt::from(9));
        assert_eq!(t.wg_entry(0, 0), rat(1, 2));
        assert_eq!(t.wg_entry(0, 1), rat(-1, 6));
        assert_eq!(t.wg_entry(1, 0), rat(-1, 6));
        assert_eq!(t.wg_entry(1, 1), rat(1, 6));
        assert!(t.verify_inverse());
    }

    #[test]
    fn one_pairing_table() {
        let t = build_table(Category::O, 2, 3, None).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.gram_entry(0, 0), &BigInt::from(3));
        assert_eq!(t.wg_entry(0, 0), rat(1, 3));
    }

    #[test]
    fn singular_gram_reported() {
        let err = build_table(Category::S, 2, 1, None).unwrap_err();
        match err {
            Error::SingularGram { k, n, .. } => {
                assert_eq!((k, n), (2, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn haar_integral_examples() {
        // O_n at k = 2: ∫ u_11 u_11 = 1/n for several n
        for n in [2u64, 3, 5] {
            let t = build_table(Category::O, 2, n, None).unwrap();
            assert_eq!(t.haar_integral(&[1, 1], &[1, 1]).unwrap(), Rat::new(1.into(), n.into()));
        }
        // S_3: ∫ u_11 u_11 = Prob(σ(1)=1) = 1/3; ∫ u_11 u_21 = 0
        let t = build_table(Category::S, 2, 3, None).unwrap();
        assert_eq!(t.haar_integral(&[1, 1], &[1, 1]).unwrap(), rat(1, 3));
        assert_eq!(t.haar_integral(&[1, 2], &[1, 1]).unwrap(), Rat::zero());
        assert!(t.haar_integral(&[1, 4], &[1, 1]).is_err());
        assert!(t.haar_integral(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn trace_moment_examples() {
        // ∫_{S_3} Tr(σ²) = 2 (brute force over S_3: (3·1 + 3·3 + 2·0)/6)
        let spec = MomentSpec::new(&[2]).unwrap();
        assert_eq!(trace_moment_exact(Category::S, 3, &spec).unwrap(), rat(2, 1));
        // odd moment of a single O_n trace vanishes
        let spec1 = MomentSpec::new(&[1]).unwrap();
        for n in [2u64, 3, 4] {
            assert_eq!(trace_moment_exact(Category::O, n, &spec1).unwrap(), Rat::zero());
        }
        // ∫_{S_n} Tr(σ⁴) = number of divisors of 4, for every n ≥ 4
        let spec4 = MomentSpec::new(&[4]).unwrap();
        for n in [4u64, 5, 6] {
            assert_eq!(trace_moment_exact(Category::S, n, &spec4).unwrap(), rat(3, 1));
        }
    }

    #[test]
    fn unitary_word_examples() {
        let one: ColorString = "1".parse().unwrap();
        let star: ColorString = "*".parse().unwrap();
        let one_star: ColorString = "1*".parse().unwrap();
        // ∫ Tr(v) = 0 (no pairing of one point)
        assert_eq!(unitary_trace_moment_exact(3, &[one.clone()]).unwrap(), Rat::zero());
        // ∫ Tr(v) Tr(v)* = 1 for every n
        for n in [1u64, 2, 3, 5] {
            assert_eq!(
                unitary_trace_moment_exact(n, &[one.clone(), star.clone()]).unwrap(),
                rat(1, 1)
            );
        }
        // one cycle (1,*) is Tr(v v*) = Tr(1) = n
        for n in [2u64, 3, 5] {
            assert_eq!(
                unitary_trace_moment_exact(n, &[one_star.clone()]).unwrap(),
                Rat::from_integer(n.into())
            );
        }
        // two (1,*) cycles: n²
        assert_eq!(
            unitary_trace_moment_exact(4, &[one_star.clone(), one_star.clone()]).unwrap(),
            rat(16, 1)
        );
        // E |Tr v|² via words v v* v and its conjugate: still 1
        let w: ColorString = "1*1".parse().unwrap();
        assert_eq!(
            unitary_trace_moment_exact(4, &[w.clone(), w.flipped()]).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn word_rejects_unmarked_and_empty() {
        assert!(word_moment_exact(Category::O, 3, &["1".parse().unwrap()]).is_err());
        assert!(unitary_trace_moment_exact(3, &[]).is_err());
        let spec = MomentSpec::new(&[2]).unwrap();
        assert!(trace_moment_exact(Category::UPairs, 3, &spec).is_err());
    }

    #[test]
    fn hs_word_moment_small() {
        // H^s with s = 2 at the word (1,*): Tr(v v*) = n for any monomial
        // unitary
        let one_star: ColorString = "1*".parse().unwrap();
        for s in [SParam::Finite(2), SParam::Finite(3), SParam::Infinity] {
            assert_eq!(
                word_moment_exact(Category::HsComplex(s), 3, &[one_star.clone()]).unwrap(),
                rat(3, 1)
            );
        }
    }

    #[test]
    fn unitary_entry_integral() {
        // ∫ v_11 v̄_11 = 1/n and ∫ v_11 v̄_22 = 0 on U_3
        let eps: ColorString = "1*".parse().unwrap();
        let t = build_table(Category::UPairs, 2, 3, Some(&eps)).unwrap();
        assert_eq!(t.haar_integral(&[1, 1], &[1, 1]).unwrap(), rat(1, 3));
        assert_eq!(t.haar_integral(&[1, 2], &[1, 2]).unwrap(), Rat::zero());
    }

    #[test]
    fn k_zero_table_is_trivial() {
        let t = build_table(Category::S, 0, 5, None).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.gram_entry(0, 0), &BigInt::one());
        assert_eq!(t.wg_entry(0, 0), rat(1, 1));
    }
}
