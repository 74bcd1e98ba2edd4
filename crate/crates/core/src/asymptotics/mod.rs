//! Asymptotic moment and cumulant counting, closed-form limit values,
//! moment↔cumulant inversion, and the limit-law oracles.
//!
//! The asymptotic joint moment of Tr(u^{k1})^{e1} … Tr(u^{kr})^{er} is the
//! number of category partitions fixed by the trace permutation γ; the
//! corresponding cumulant additionally requires p ∨ γ = 1_k (p links all
//! cycles). Counts stream over the category without materializing it, and
//! are memoized.

mod inversion;
mod laws;

pub use inversion::{classical_cumulant_from_moments, free_cumulant_from_moments};
pub use laws::{
    cycle_decomposition_check, law_cumulants, law_moments, law_star_covariance,
    DecompositionCheck, DecompositionReport, Law,
};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::categories::{Category, SParam};
use crate::error::{Error, Result};
use crate::partitions::{Color, ColorString, Partition, TracePermutation};
use crate::weingarten::Rat;

/// A joint trace-moment specification: cycle lengths k_1,…,k_r with a star
/// pattern e_1,…,e_r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentSpec {
    lengths: Vec<usize>,
    stars: Vec<Color>,
}

impl MomentSpec {
    pub fn new(lengths: &[usize]) -> Result<Self> {
        MomentSpec::with_stars(lengths, &vec![Color::One; lengths.len()])
    }

    pub fn with_stars(lengths: &[usize], stars: &[Color]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidSpec("moment spec needs at least one factor".into()));
        }
        if lengths.iter().any(|&l| l == 0) {
            return Err(Error::InvalidSpec("cycle lengths must be ≥ 1".into()));
        }
        if lengths.len() != stars.len() {
            return Err(Error::SizeMismatch {
                left: lengths.len(),
                right: stars.len(),
                context: "moment spec stars",
            });
        }
        Ok(MomentSpec { lengths: lengths.to_vec(), stars: stars.to_vec() })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn stars(&self) -> &[Color] {
        &self.stars
    }

    /// Number of trace factors r.
    pub fn r(&self) -> usize {
        self.lengths.len()
    }

    /// Total number of points k = Σ k_i.
    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn trace_permutation(&self) -> Result<TracePermutation> {
        TracePermutation::new(&self.lengths, &self.stars)
    }

    /// Every star replaced by its opposite.
    pub fn star_flipped(&self) -> MomentSpec {
        MomentSpec {
            lengths: self.lengths.clone(),
            stars: self.stars.iter().map(|c| c.flipped()).collect(),
        }
    }

    /// The sub-specification on the given factor indices, in order.
    pub fn subset(&self, indices: &[usize]) -> MomentSpec {
        MomentSpec {
            lengths: indices.iter().map(|&i| self.lengths[i]).collect(),
            stars: indices.iter().map(|&i| self.stars[i]).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum CountKey {
    Plain(Category, Vec<usize>, Vec<Color>, bool),
    Words(Category, Vec<ColorString>, bool),
}

fn count_cache() -> &'static Mutex<HashMap<CountKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<CountKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// #{p ∈ D_k : p = γ(p)}, the asymptotic joint moment (exact for the
/// classical groups). Valid for every uncolored category.
pub fn asymptotic_moment_count(cat: Category, spec: &MomentSpec) -> Result<u64> {
    if cat.needs_colors() {
        return Err(Error::MissingColorString { cat: cat.to_string() });
    }
    let key = CountKey::Plain(cat, spec.lengths.clone(), spec.stars.clone(), false);
    if let Some(&hit) = count_cache().lock().unwrap().get(&key) {
        return Ok(hit);
    }
    let gamma = spec.trace_permutation()?;
    let count = count_fixed(cat, None, &gamma, false, None)?;
    count_cache().lock().unwrap().insert(key, count);
    Ok(count)
}

/// #{p ∈ D_k : p = γ(p), p ∨ γ = 1_k} as a raw partition count, for any
/// uncolored category (no claim that it is a cumulant).
pub fn connected_invariant_count(cat: Category, spec: &MomentSpec) -> Result<u64> {
    if cat.needs_colors() {
        return Err(Error::MissingColorString { cat: cat.to_string() });
    }
    let key = CountKey::Plain(cat, spec.lengths.clone(), spec.stars.clone(), true);
    if let Some(&hit) = count_cache().lock().unwrap().get(&key) {
        return Ok(hit);
    }
    let gamma = spec.trace_permutation()?;
    let count = count_fixed(cat, None, &gamma, true, None)?;
    count_cache().lock().unwrap().insert(key, count);
    Ok(count)
}

/// The asymptotic joint classical (O, S, H, B) or free (the + kinds)
/// cumulant. Gated on block-deletion closure: the half-liberated and the
/// colored categories are rejected.
pub fn asymptotic_cumulant_count(cat: Category, spec: &MomentSpec) -> Result<u64> {
    if !cat.supports_cumulant_count() {
        return Err(Error::UnsupportedCategory { cat: cat.to_string() });
    }
    connected_invariant_count(cat, spec)
}

/// #{p ∈ P_2(ε) or P^s(ε) : p = γ(p)}, γ the plain trace permutation of the
/// per-cycle word lengths.
pub fn asymptotic_moment_count_words(cat: Category, eps_list: &[ColorString]) -> Result<u64> {
    words_count(cat, eps_list, false)
}

/// Connected variant of [`asymptotic_moment_count_words`].
pub fn connected_invariant_count_words(cat: Category, eps_list: &[ColorString]) -> Result<u64> {
    words_count(cat, eps_list, true)
}

/// Joint cumulant count for H^s word traces: p ∈ P^s(ε_1⋯ε_r), p = γ(p),
/// p ∨ γ = 1_k.
pub fn hs_cumulant_count(s: SParam, eps_list: &[ColorString]) -> Result<u64> {
    words_count(Category::HsComplex(s), eps_list, true)
}

fn words_count(cat: Category, eps_list: &[ColorString], connected: bool) -> Result<u64> {
    if !cat.needs_colors() {
        return Err(Error::UnexpectedColorString { cat: cat.to_string() });
    }
    if eps_list.is_empty() || eps_list.iter().any(|e| e.is_empty()) {
        return Err(Error::InvalidSpec("word lists must be nonempty".into()));
    }
    let key = CountKey::Words(cat, eps_list.to_vec(), connected);
    if let Some(&hit) = count_cache().lock().unwrap().get(&key) {
        return Ok(hit);
    }
    let lengths: Vec<usize> = eps_list.iter().map(|e| e.len()).collect();
    let gamma = TracePermutation::plain(&lengths)?;
    let eps = ColorString::concat(eps_list);
    let count = count_fixed(cat, Some(&eps), &gamma, connected, None)?;
    count_cache().lock().unwrap().insert(key, count);
    Ok(count)
}

/// Cumulant count for the cycle variables Z(σ): category fixed to H, with
/// the restriction of p to the i-th cycle of γ prescribed to be σ_i.
pub fn z_cumulant_count(sigmas: &[Partition], lengths: &[usize]) -> Result<u64> {
    if sigmas.len() != lengths.len() {
        return Err(Error::SizeMismatch {
            left: sigmas.len(),
            right: lengths.len(),
            context: "z cumulant factors",
        });
    }
    for (sigma, &len) in sigmas.iter().zip(lengths) {
        if sigma.k() != len {
            return Err(Error::SizeMismatch {
                left: sigma.k(),
                right: len,
                context: "z cumulant restriction size",
            });
        }
    }
    let gamma = TracePermutation::plain(lengths)?;
    count_fixed(Category::H, None, &gamma, true, Some(sigmas))
}

/// Cumulant of the compound Poisson variables Cp(τ_l^k, ε): 1/l when all
/// l_i = l and the block-union partition of the τ's lies in P^s(ε_1⋯ε_r),
/// else 0.
pub fn compound_poisson_cumulant(
    s: SParam,
    ls: &[usize],
    ks: &[usize],
    eps_list: &[ColorString],
) -> Result<Rat> {
    let r = ls.len();
    if r == 0 || ks.len() != r || eps_list.len() != r {
        return Err(Error::InvalidSpec("Cp cumulant needs matching l, k, ε lists".into()));
    }
    for i in 0..r {
        if ls[i] == 0 || ks[i] % ls[i] != 0 {
            return Err(Error::Divisibility { l: ls[i], k: ks[i] });
        }
        if eps_list[i].len() != ks[i] {
            return Err(Error::SizeMismatch {
                left: eps_list[i].len(),
                right: ks[i],
                context: "Cp word length",
            });
        }
    }
    let l = ls[0];
    if ls.iter().any(|&li| li != l) {
        return Ok(Rat::zero());
    }
    // i-th block = union of the i-th blocks of all the τ_l^{k_m}
    let mut labels = Vec::with_capacity(ks.iter().sum());
    for &k in ks {
        labels.extend((0..k).map(|j| j % l));
    }
    let eps = ColorString::concat(eps_list);
    if Category::HsComplex(s).contains_labels(&labels, Some(&eps)) {
        Ok(Rat::new(1.into(), (l as i64).into()))
    } else {
        Ok(Rat::zero())
    }
}

/// Workhorse: stream the category at k = γ.k() and count the members fixed
/// by γ, optionally connected (p ∨ γ = 1_k), optionally with prescribed
/// per-cycle restrictions.
fn count_fixed(
    cat: Category,
    eps: Option<&ColorString>,
    gamma: &TracePermutation,
    connected: bool,
    restrict: Option<&[Partition]>,
) -> Result<u64> {
    let k = gamma.k();
    let r = gamma.cycle_count();
    let mut cycle_of = vec![0usize; k];
    for i in 0..r {
        for pos in gamma.cycle_positions(i) {
            cycle_of[pos] = i;
        }
    }
    let perm = gamma.perm();
    let mut count = 0u64;
    cat.for_each_member(k, eps, |labels| {
        if !fixed_by(labels, perm) {
            return;
        }
        if connected && r > 1 && !links_all_cycles(labels, &cycle_of, r) {
            return;
        }
        if let Some(sigmas) = restrict {
            for (i, sigma) in sigmas.iter().enumerate() {
                let range = gamma.cycle_positions(i);
                if Partition::from_labels(&labels[range]) != *sigma {
                    return;
                }
            }
        }
        count += 1;
    })?;
    Ok(count)
}

/// p = γ(p) on a raw label sequence: the induced map on block labels must be
/// well-defined and injective.
fn fixed_by(labels: &[usize], perm: &crate::partitions::Permutation) -> bool {
    let k = labels.len();
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut image = vec![usize::MAX; nblocks];
    let mut hit = vec![false; nblocks];
    for i in 0..k {
        let from = labels[i];
        let to = labels[perm.apply(i)];
        if image[from] == usize::MAX {
            if hit[to] {
                return false; // not injective
            }
            image[from] = to;
            hit[to] = true;
        } else if image[from] != to {
            return false; // not well-defined
        }
    }
    true
}

/// p ∨ γ = 1_k: the blocks of p link all cycles of γ together.
fn links_all_cycles(labels: &[usize], cycle_of: &[usize], r: usize) -> bool {
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut first_cycle = vec![usize::MAX; nblocks];
    let mut components = r;
    for (pos, &b) in labels.iter().enumerate() {
        let c = cycle_of[pos];
        if first_cycle[b] == usize::MAX {
            first_cycle[b] = c;
        } else {
            let (ra, rb) = (find(&mut parent, first_cycle[b]), find(&mut parent, c));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
    }
    components == 1
}

/// The closed-form limit values for the eight kinds with cumulant
/// counting: O/B Gaussian means and variances, S/H divisor sums, and the
/// free case tables.
pub fn closed_form_cumulant(cat: Category, spec: &MomentSpec) -> Result<u64> {
    if !cat.supports_cumulant_count() {
        return Err(Error::UnsupportedCategory { cat: cat.to_string() });
    }
    let r = spec.r();
    let ks = spec.lengths();
    let es = spec.stars();
    let k1 = ks[0];
    let all_equal = ks.iter().all(|&k| k == k1);
    let total: usize = ks.iter().sum();

    let divisor_sum = |pred: &dyn Fn(usize) -> bool| -> u64 {
        let g = ks.iter().fold(0usize, |acc, &k| gcd(acc, k));
        (1..=g)
            .filter(|q| g % q == 0 && pred(*q))
            .map(|q| (q as u64).pow(r as u32 - 1))
            .sum()
    };

    // extra contribution of the pair block between two equal-length cycles
    // (free kinds): present at k = 2 for both directions, at k ≥ 3 only for
    // opposite stars.
    let free_pair_extra = || -> u64 {
        if r == 2 && all_equal && k1 >= 2 && (k1 == 2 || es[0] != es[1]) {
            1
        } else {
            0
        }
    };

    Ok(match cat {
        Category::O => match r {
            1 => u64::from(k1 % 2 == 0),
            2 if all_equal => k1 as u64,
            _ => 0,
        },
        Category::B => match r {
            1 => 1 + u64::from(k1 % 2 == 0),
            2 if all_equal => k1 as u64,
            _ => 0,
        },
        Category::S => divisor_sum(&|_| true),
        Category::H => divisor_sum(&|q| (total / q) % 2 == 0),
        Category::OPlus => match r {
            1 => u64::from(k1 == 2),
            2 if all_equal && k1 <= 2 => 1,
            2 => free_pair_extra(),
            _ => 0,
        },
        Category::BPlus => match r {
            1 => 1 + u64::from(k1 == 2),
            2 if all_equal && k1 <= 2 => 1,
            2 => free_pair_extra(),
            _ => 0,
        },
        Category::SPlus => match r {
            1 => 1 + u64::from(k1 >= 2),
            _ => 1 + free_pair_extra(),
        },
        Category::HPlus => u64::from(total % 2 == 0) + free_pair_extra(),
        _ => unreachable!("gated above"),
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}
