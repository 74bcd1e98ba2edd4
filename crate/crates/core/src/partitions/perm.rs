//! Permutations, the trace permutation γ, and color strings.

use std::fmt;
use std::str::FromStr;

use super::Partition;
use crate::error::{Error, Result};

/// A bijection on {1,…,k}, stored 0-indexed as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    /// Validates that `images` is a bijection on 0..k.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v >= k || seen[v] {
                return Err(Error::InvalidSpec(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles over 1-based elements.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w];
                let b = cycle[(w + 1) % cycle.len()];
                if a == 0 || a > k || b == 0 || b > k {
                    return Err(Error::InvalidSpec(format!("cycle element out of range in {cycle:?}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles as lists of 0-based positions, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.images.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// γ(p): elements γ(i), γ(j) share a block of the result iff i, j share
    /// a block of p (the blocks are pushed forward through γ).
    pub fn apply_to(&self, p: &Partition) -> Result<Partition> {
        if self.k() != p.k() {
            return Err(Error::SizeMismatch {
                left: self.k(),
                right: p.k(),
                context: "apply_perm",
            });
        }
        let mut raw = vec![0usize; p.k()];
        for (i, &label) in p.labels().iter().enumerate() {
            raw[self.images[i]] = label;
        }
        Ok(Partition::from_labels(&raw))
    }

    /// True iff p is invariant: i ∼_p j ⇔ γ(i) ∼_p γ(j). Works on raw label
    /// sequences so streamed (non-canonical) partitions can be tested.
    pub fn fixes_labels(&self, labels: &[usize]) -> bool {
        debug_assert_eq!(self.k(), labels.len());
        let k = labels.len();
        for i in 0..k {
            for j in (i + 1)..k {
                if (labels[i] == labels[j]) != (labels[self.images[i]] == labels[self.images[j]]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A symbol of a color string ε: an unconjugated leg (`One`) or a conjugated
/// one (`Star`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    One,
    Star,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::One => Color::Star,
            Color::Star => Color::One,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::One => write!(f, "1"),
            Color::Star => write!(f, "*"),
        }
    }
}

/// ε = (e_1,…,e_k), a string over {1, *}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorString(pub Vec<Color>);

impl ColorString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Color] {
        &self.0
    }

    /// Alternating string 1,*,1,*,… of length k.
    pub fn alternating(k: usize) -> Self {
        ColorString((0..k).map(|i| if i % 2 == 0 { Color::One } else { Color::Star }).collect())
    }

    pub fn flipped(&self) -> Self {
        ColorString(self.0.iter().map(|c| c.flipped()).collect())
    }

    /// The t-fold cyclic shift (e_{t+1}, e_{t+2}, …, e_t).
    pub fn shifted(&self, t: usize) -> Self {
        let k = self.0.len();
        if k == 0 {
            return self.clone();
        }
        ColorString((0..k).map(|i| self.0[(i + t) % k]).collect())
    }

    pub fn concat(parts: &[ColorString]) -> Self {
        ColorString(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

impl fmt::Display for ColorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ColorString {
    type Err = Error;

    fn from_str(s: &str) -> Result<ColorString> {
        let mut out = Vec::with_capacity(s.len());
        for ch in s.trim().chars() {
            match ch {
                '1' | 'o' => out.push(Color::One),
                '*' | 's' => out.push(Color::Star),
                _ => return Err(Error::Parse(format!("bad color symbol {ch:?} in {s:?}"))),
            }
        }
        Ok(ColorString(out))
    }
}

/// The trace permutation γ built from cycle lengths k_1,…,k_r and a star
/// pattern e_1,…,e_r: cycle i occupies the consecutive positions after
/// k_1 + … + k_{i−1} and runs forward for e_i = 1, backward for e_i = *.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TracePermutation {
    lengths: Vec<usize>,
    stars: Vec<Color>,
    perm: Permutation,
}

impl TracePermutation {
    pub fn new(lengths: &[usize], stars: &[Color]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidSpec("trace permutation needs at least one cycle".into()));
        }
        if lengths.len() != stars.len() {
            return Err(Error::SizeMismatch {
                left: lengths.len(),
                right: stars.len(),
                context: "trace permutation stars",
            });
        }
        if lengths.iter().any(|&l| l == 0) {
            return Err(Error::InvalidSpec("cycle lengths must be positive".into()));
        }
        let k: usize = lengths.iter().sum();
        let mut images = vec![0usize; k];
        let mut offset = 0;
        for (&len, &star) in lengths.iter().zip(stars) {
            for j in 0..len {
                let src = offset + j;
                let dst = match star {
                    Color::One => offset + (j + 1) % len,
                    Color::Star => offset + (j + len - 1) % len,
                };
                images[src] = dst;
            }
            offset += len;
        }
        Ok(TracePermutation {
            lengths: lengths.to_vec(),
            stars: stars.to_vec(),
            perm: Permutation::from_images(images)?,
        })
    }

    pub fn plain(lengths: &[usize]) -> Result<Self> {
        let stars = vec![Color::One; lengths.len()];
        TracePermutation::new(lengths, &stars)
    }

    pub fn k(&self) -> usize {
        self.perm.k()
    }

    pub fn cycle_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn stars(&self) -> &[Color] {
        &self.stars
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// 0-based positions of cycle i (consecutive, in forward order).
    pub fn cycle_positions(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.lengths[..i].iter().sum();
        start..start + self.lengths[i]
    }

    /// The partition whose blocks are the cycle supports (stars do not
    /// change it).
    pub fn cycle_partition(&self) -> Partition {
        let mut raw = Vec::with_capacity(self.k());
        for (i, &len) in self.lengths.iter().enumerate() {
            raw.extend(std::iter::repeat(i).take(len));
        }
        Partition::from_labels(&raw)
    }

    /// The canonical lift σ^γ: point j of σ is replaced by the j-th cycle.
    pub fn lift(&self, sigma: &Partition) -> Result<Partition> {
        if sigma.k() != self.cycle_count() {
            return Err(Error::SizeMismatch {
                left: sigma.k(),
                right: self.cycle_count(),
                context: "lift",
            });
        }
        let mut raw = Vec::with_capacity(self.k());
        for (j, &len) in self.lengths.iter().enumerate() {
            raw.extend(std::iter::repeat(sigma.labels()[j]).take(len));
        }
        Ok(Partition::from_labels(&raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = Permutation::identity(4);
        for q in crate::partitions::enumerate_partitions(4).unwrap() {
            assert_eq!(id.apply_to(&q).unwrap(), q);
        }

        // g = (1 2)(3 4) fixes the pairing {1,3|2,4}.
        let g = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(g.apply_to(&p("1,3|2,4")).unwrap(), p("1,3|2,4"));

        // group action: g ∘ g⁻¹ = id on partitions.
        let q = p("1,4|2|3,5");
        let g = Permutation::from_cycles(5, &[vec![1, 3, 5], vec![2, 4]]).unwrap();
        assert_eq!(g.apply_to(&g.inverse().apply_to(&q).unwrap()).unwrap(), q);
    }

    #[test]
    fn apply_preserves_block_count() {
        let g = Permutation::from_cycles(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        for q in crate::partitions::enumerate_partitions(5).unwrap() {
            assert_eq!(g.apply_to(&q).unwrap().block_count(), q.block_count());
        }
    }

    #[test]
    fn fixes_labels_matches_apply() {
        let g = Permutation::from_cycles(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        for q in crate::partitions::enumerate_partitions(5).unwrap() {
            assert_eq!(g.fixes_labels(q.labels()), g.apply_to(&q).unwrap() == q);
        }
    }

    #[test]
    fn lift_worked_example() {
        // γ = (1)(2,3,4)(5,6), σ = {1,2|3} lifts to {1,2,3,4|5,6}.
        let gamma = TracePermutation::plain(&[1, 3, 2]).unwrap();
        assert_eq!(gamma.lift(&p("1,2|3")).unwrap(), p("1,2,3,4|5,6"));
        assert_eq!(gamma.lift(&Partition::full(3)).unwrap(), Partition::full(6));
        assert_eq!(gamma.lift(&Partition::singletons(3)).unwrap(), gamma.cycle_partition());
        assert!(gamma.lift(&Partition::full(2)).is_err());
    }

    #[test]
    fn lift_inverts_to_cycle_grouping() {
        let gamma = TracePermutation::plain(&[2, 1, 3, 2]).unwrap();
        for sigma in crate::partitions::enumerate_partitions(4).unwrap() {
            let lifted = gamma.lift(&sigma).unwrap();
            // group the cycles by the blocks of the lift: recovers σ
            let raw: Vec<usize> = (0..4)
                .map(|i| lifted.labels()[gamma.cycle_positions(i).start])
                .collect();
            assert_eq!(Partition::from_labels(&raw), sigma);
        }
    }

    #[test]
    fn starred_cycle_reverses() {
        let gamma = TracePermutation::new(&[3, 3], &[Color::One, Color::Star]).unwrap();
        let g = gamma.perm();
        // forward cycle: 0→1→2→0; backward cycle: 3→5→4→3
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(2), 0);
        assert_eq!(g.apply(3), 5);
        assert_eq!(g.apply(5), 4);

        // on the starred cycle γ equals the inverse of the plain γ
        let plain = TracePermutation::plain(&[3, 3]).unwrap();
        let inv = plain.perm().inverse();
        for i in 3..6 {
            assert_eq!(g.apply(i), inv.apply(i));
        }
        for i in 0..3 {
            assert_eq!(g.apply(i), plain.perm().apply(i));
        }
    }

    #[test]
    fn color_string_parse_shift() {
        let eps: ColorString = "1*1*".parse().unwrap();
        assert_eq!(eps, ColorString::alternating(4));
        assert_eq!(eps.shifted(1).to_string(), "*1*1");
        assert_eq!(eps.shifted(4), eps);
        assert_eq!(eps.flipped().to_string(), "*1*1");
    }
}
