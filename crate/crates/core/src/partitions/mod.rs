//! Set partitions of {1,…,k} and the permutations acting on them.
//!
//! A [`Partition`] is stored in restricted growth form: element `i` (0-based)
//! carries the label of its block, blocks numbered in order of first
//! appearance. The form is canonical, so equality, hashing and ordering are
//! plain label-sequence operations and the lexicographic order on label
//! strings is the enumeration order used everywhere (in particular it fixes
//! the row/column indexing of Gram and Weingarten matrices).

mod perm;

pub use perm::{Color, ColorString, Permutation, TracePermutation};

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::caps;
use crate::error::{Error, Result};

/// A set partition of {1,…,k} in restricted growth form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// The empty partition (k = 0).
    pub fn empty() -> Self {
        Partition { labels: Vec::new() }
    }

    /// The one-block partition 1_k.
    pub fn full(k: usize) -> Self {
        Partition { labels: vec![0; k] }
    }

    /// The all-singletons partition 0_k.
    pub fn singletons(k: usize) -> Self {
        Partition { labels: (0..k).collect() }
    }

    /// Build from arbitrary block labels; renumbers into restricted growth
    /// form, so any labeling of the same set partition yields the same value.
    pub fn from_labels(raw: &[usize]) -> Self {
        Partition { labels: canonicalize(raw) }
    }

    /// ker i: s and t share a block iff `values[s] == values[t]`.
    pub fn kernel<T: Eq + Hash>(values: &[T]) -> Self {
        let mut seen: HashMap<&T, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(values.len());
        for v in values {
            let next = seen.len();
            labels.push(*seen.entry(v).or_insert(next));
        }
        Partition { labels }
    }

    /// τ_l^k = {(1, l+1, 2l+1, …), …, (l, 2l, …, k)}; requires l | k.
    pub fn cyclic(l: usize, k: usize) -> Result<Self> {
        if l == 0 || k == 0 || k % l != 0 {
            return Err(Error::Divisibility { l, k });
        }
        Ok(Partition { labels: (0..k).map(|i| i % l).collect() })
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Number of blocks |p| (0 for k = 0).
    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted lists of 0-based positions, ordered by first element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.labels.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// Join p ∨ q: the finest partition coarser than both.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.k() != other.k() {
            return Err(Error::SizeMismatch {
                left: self.k(),
                right: other.k(),
                context: "join",
            });
        }
        let mut dsu = Dsu::new(self.k());
        union_blocks(&mut dsu, &self.labels);
        union_blocks(&mut dsu, &other.labels);
        let roots: Vec<usize> = (0..self.k()).map(|i| dsu.find(i)).collect();
        Ok(Partition::from_labels(&roots))
    }

    /// Refinement order: self ≤ other iff every block of self lies inside a
    /// block of other (equivalently self ∨ other = other).
    pub fn is_refinement_of(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.k(), other.k());
        // Blocks of self must be constant under other's labels.
        let mut rep: Vec<Option<usize>> = vec![None; self.block_count()];
        for (i, &b) in self.labels.iter().enumerate() {
            match rep[b] {
                None => rep[b] = Some(other.labels[i]),
                Some(l) => {
                    if l != other.labels[i] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No a < b < c < d with a,c in one block and b,d in a different block.
    pub fn is_noncrossing(&self) -> bool {
        noncrossing_labels(&self.labels)
    }

    /// μ(self, 1_k) in the full partition lattice: (−1)^(b−1) (b−1)!.
    pub fn mobius_to_top(&self) -> i64 {
        let b = self.block_count();
        if b <= 1 {
            return 1;
        }
        let mut f: i64 = 1;
        for i in 1..b {
            f *= i as i64;
        }
        if (b - 1) % 2 == 0 {
            f
        } else {
            -f
        }
    }

    /// Restriction to a list of positions (in the given order), relabeled to
    /// its own ground set.
    pub fn restrict(&self, positions: &[usize]) -> Partition {
        let raw: Vec<usize> = positions.iter().map(|&i| self.labels[i]).collect();
        Partition::from_labels(&raw)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({})", self)
    }
}

/// Textual notation: blocks separated by `|`, elements 1-indexed and
/// comma-separated, blocks ordered by smallest element, e.g. `1,3|2|4`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        let mut first = true;
        for block in blocks {
            if !first {
                write!(f, "|")?;
            }
            first = false;
            let elems: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{}", elems.join(","))?;
        }
        Ok(())
    }
}

/// Parsing accepts blocks and elements in arbitrary order; the set of
/// elements must be exactly {1,…,k} for some k.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut assignments: HashMap<usize, usize> = HashMap::new();
        for (b, block) in s.split('|').enumerate() {
            for elem in block.split(',') {
                let e: usize = elem
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element {elem:?} in partition {s:?}")))?;
                if e == 0 {
                    return Err(Error::Parse(format!("elements are 1-indexed, got 0 in {s:?}")));
                }
                if assignments.insert(e - 1, b).is_some() {
                    return Err(Error::Parse(format!("element {e} repeated in {s:?}")));
                }
            }
        }
        let k = assignments.len();
        let mut raw = vec![usize::MAX; k];
        for (pos, b) in assignments {
            if pos >= k {
                return Err(Error::Parse(format!(
                    "elements must cover 1..={k} with no gaps in {s:?}"
                )));
            }
            raw[pos] = b;
        }
        Ok(Partition::from_labels(&raw))
    }
}

fn canonicalize(raw: &[usize]) -> Vec<usize> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut labels = Vec::with_capacity(raw.len());
    for &r in raw {
        let next = map.len();
        labels.push(*map.entry(r).or_insert(next));
    }
    labels
}

/// Crossing test on a raw label sequence (not necessarily canonical).
///
/// Two blocks cross iff their merged position sequence alternates
/// X,Y,X,Y somewhere, i.e. shows at least 3 label transitions.
pub(crate) fn noncrossing_labels(labels: &[usize]) -> bool {
    let k = labels.len();
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    if nblocks <= 1 {
        return true;
    }
    for x in 0..nblocks {
        for y in (x + 1)..nblocks {
            let mut transitions = 0;
            let mut last = usize::MAX;
            for i in 0..k {
                let l = labels[i];
                if l == x || l == y {
                    if last != usize::MAX && l != last {
                        transitions += 1;
                        if transitions >= 3 {
                            return false;
                        }
                    }
                    last = l;
                }
            }
        }
    }
    true
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }
}

fn union_blocks(dsu: &mut Dsu, labels: &[usize]) {
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (i, &b) in labels.iter().enumerate() {
        if let Some(&f) = first.get(&b) {
            dsu.union(f, i);
        } else {
            first.insert(b, i);
        }
    }
}

/// Visit every set partition of {1,…,k} as a restricted growth string, in
/// lexicographic order. The slice passed to the callback is the canonical
/// label sequence. No cap check: callers check their own cap.
pub fn for_each_partition<F: FnMut(&[usize])>(k: usize, mut f: F) {
    let mut labels = vec![0usize; k];
    rgs_rec(&mut labels, 1, 0, k, &mut f);
}

fn rgs_rec<F: FnMut(&[usize])>(labels: &mut Vec<usize>, pos: usize, max: usize, k: usize, f: &mut F) {
    if k == 0 {
        f(&[]);
        return;
    }
    if pos == k {
        f(labels);
        return;
    }
    for v in 0..=(max + 1) {
        labels[pos] = v;
        rgs_rec(labels, pos + 1, max.max(v), k, f);
    }
}

/// Visit every perfect matching of {1,…,k} (nothing for odd k) as label
/// sequences. Order is deterministic but not lexicographic.
pub fn for_each_pairing<F: FnMut(&[usize])>(k: usize, mut f: F) {
    if k % 2 != 0 {
        return;
    }
    let mut labels = vec![usize::MAX; k];
    pairing_rec(&mut labels, 0, k, false, &mut f);
}

/// Visit every partition of {1,…,k} into singletons and pairs.
pub fn for_each_involution<F: FnMut(&[usize])>(k: usize, mut f: F) {
    let mut labels = vec![usize::MAX; k];
    pairing_rec(&mut labels, 0, k, true, &mut f);
}

fn pairing_rec<F: FnMut(&[usize])>(
    labels: &mut Vec<usize>,
    next_label: usize,
    k: usize,
    singletons: bool,
    f: &mut F,
) {
    let first = match labels.iter().position(|&l| l == usize::MAX) {
        None => {
            f(labels);
            return;
        }
        Some(i) => i,
    };
    if singletons {
        labels[first] = next_label;
        pairing_rec(labels, next_label + 1, k, singletons, f);
        labels[first] = usize::MAX;
    }
    for j in (first + 1)..k {
        if labels[j] == usize::MAX {
            labels[first] = next_label;
            labels[j] = next_label;
            pairing_rec(labels, next_label + 1, k, singletons, f);
            labels[first] = usize::MAX;
            labels[j] = usize::MAX;
        }
    }
}

/// Visit every noncrossing partition of {1,…,k}, generated directly from the
/// nested-interval structure (output-sensitive, never touches a crossing
/// partition). Labels are valid but not canonical.
pub fn for_each_noncrossing<F: FnMut(&[usize])>(k: usize, mut f: F) {
    if k == 0 {
        f(&[]);
        return;
    }
    let mut labels = vec![usize::MAX; k];
    let positions: Vec<usize> = (0..k).collect();
    let mut segments = vec![positions];
    nc_rec(&mut segments, &mut labels, 0, &mut f);
}

fn nc_rec<F: FnMut(&[usize])>(
    segments: &mut Vec<Vec<usize>>,
    labels: &mut Vec<usize>,
    next_label: usize,
    f: &mut F,
) {
    let seg = match segments.pop() {
        None => {
            f(labels);
            return;
        }
        Some(s) => s,
    };
    let head = seg[0];
    let rest = &seg[1..];
    let m = rest.len();
    // Every subset of `rest` can join head's block; the in-between runs
    // become independent segments, which is exactly noncrossingness.
    for mask in 0u64..(1u64 << m) {
        labels[head] = next_label;
        let mut pushed = 0;
        let mut run: Vec<usize> = Vec::new();
        for (idx, &pos) in rest.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                labels[pos] = next_label;
                if !run.is_empty() {
                    segments.push(std::mem::take(&mut run));
                    pushed += 1;
                }
            } else {
                run.push(pos);
            }
        }
        if !run.is_empty() {
            segments.push(run);
            pushed += 1;
        }
        nc_rec(segments, labels, next_label + 1, f);
        for _ in 0..pushed {
            segments.pop();
        }
    }
    segments.push(seg);
}

/// All set partitions of {1,…,k} in lexicographic restricted-growth order.
/// Count equals the k-th Bell number; capped (default k ≤ 10).
pub fn enumerate_partitions(k: usize) -> Result<Vec<Partition>> {
    caps::check_general(k, "set partitions")?;
    let mut out = Vec::new();
    for_each_partition(k, |labels| out.push(Partition { labels: labels.to_vec() }));
    Ok(out)
}
