//! The easy quantum groups as partition-set predicates and enumerators.
//!
//! Each [`Category`] names a family D_k of set partitions (for the colored
//! kinds `UPairs` / `HsComplex` the family P_2(ε) / P^s(ε) additionally
//! depends on a color string). Membership is a predicate on (partition,
//! colors); enumeration is memoized per (category, k, ε) because the same
//! D_k feeds Gram construction, counting and the tests.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::caps;
use crate::error::{Error, Result};
use crate::partitions::{
    for_each_involution, for_each_noncrossing, for_each_pairing, for_each_partition, Color,
    ColorString, Partition,
};

/// The s parameter of the hyperoctahedral series: an integer ≥ 2 or ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SParam {
    Finite(u64),
    Infinity,
}

impl fmt::Display for SParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SParam::Finite(s) => write!(f, "{s}"),
            SParam::Infinity => write!(f, "inf"),
        }
    }
}

/// An easy quantum group, identified by its category of partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    /// O_n: all pairings.
    O,
    /// S_n: all partitions.
    S,
    /// H_n: partitions with blocks of even size.
    H,
    /// B_n: singletons and pairings.
    B,
    /// O_n^+: noncrossing pairings.
    OPlus,
    /// S_n^+: noncrossing partitions.
    SPlus,
    /// H_n^+: noncrossing partitions with even blocks.
    HPlus,
    /// B_n^+: singletons and noncrossing pairings.
    BPlus,
    /// O_n^*: pairings joining an odd and an even position.
    OStar,
    /// H_n^*: partitions with equally many odd and even legs per block.
    HStar,
    /// H_n^(s): s-balanced partitions.
    HSeries(SParam),
    /// U_n: pairings on a color string joining a 1 and a *.
    UPairs,
    /// H_n^s = Z_s ≀ S_n: blocks balanced mod s on a color string.
    HsComplex(SParam),
}

impl Category {
    /// The eight kinds whose cumulants are invariant-partition counts:
    /// block-deletion closure holds for them. The half-liberated kinds and
    /// the colored kinds are excluded.
    pub fn supports_cumulant_count(&self) -> bool {
        matches!(
            self,
            Category::O
                | Category::S
                | Category::H
                | Category::B
                | Category::OPlus
                | Category::SPlus
                | Category::HPlus
                | Category::BPlus
        )
    }

    /// Categories whose members are restricted to pairings, or singletons
    /// and pairings; these enumerate directly instead of filtering all
    /// Bell(k) partitions and live under the higher cap.
    pub fn is_pairing_like(&self) -> bool {
        matches!(
            self,
            Category::O
                | Category::B
                | Category::OPlus
                | Category::BPlus
                | Category::OStar
                | Category::UPairs
        )
    }

    /// Whether membership requires a color string.
    pub fn needs_colors(&self) -> bool {
        matches!(self, Category::UPairs | Category::HsComplex(_))
    }

    fn check_colors(&self, k: usize, eps: Option<&ColorString>) -> Result<()> {
        match (self.needs_colors(), eps) {
            (true, None) => Err(Error::MissingColorString { cat: self.to_string() }),
            (false, Some(_)) => Err(Error::UnexpectedColorString { cat: self.to_string() }),
            (true, Some(e)) if e.len() != k => Err(Error::SizeMismatch {
                left: e.len(),
                right: k,
                context: "color string length",
            }),
            _ => Ok(()),
        }
    }

    /// Membership of a partition in D_k (resp. P_2(ε), P^s(ε)).
    pub fn contains(&self, p: &Partition, eps: Option<&ColorString>) -> Result<bool> {
        self.check_colors(p.k(), eps)?;
        Ok(self.contains_labels(p.labels(), eps))
    }

    /// Membership on a raw label sequence (used by the streaming counters).
    pub(crate) fn contains_labels(&self, labels: &[usize], eps: Option<&ColorString>) -> bool {
        match self {
            Category::O => all_block_sizes(labels, |s| s == 2),
            Category::S => true,
            Category::H => all_block_sizes(labels, |s| s % 2 == 0),
            Category::B => all_block_sizes(labels, |s| s <= 2),
            Category::OPlus => {
                all_block_sizes(labels, |s| s == 2) && crate::partitions::noncrossing_labels(labels)
            }
            Category::SPlus => crate::partitions::noncrossing_labels(labels),
            Category::HPlus => {
                all_block_sizes(labels, |s| s % 2 == 0)
                    && crate::partitions::noncrossing_labels(labels)
            }
            Category::BPlus => {
                all_block_sizes(labels, |s| s <= 2) && crate::partitions::noncrossing_labels(labels)
            }
            Category::OStar => {
                all_block_sizes(labels, |s| s == 2) && pairs_join_odd_even(labels)
            }
            Category::HStar => balanced(labels, SParam::Infinity, |i| i % 2 == 0),
            Category::HSeries(s) => {
                labels.len() % 2 == 0 && balanced(labels, *s, |i| i % 2 == 0)
            }
            Category::UPairs => {
                let eps = eps.expect("colors checked");
                all_block_sizes(labels, |s| s == 2)
                    && pairs_join_one_star(labels, eps)
            }
            Category::HsComplex(s) => {
                let eps = eps.expect("colors checked");
                balanced(labels, *s, |i| eps.symbols()[i] == Color::One)
            }
        }
    }

    /// All members of D_k (resp. P_2(ε), P^s(ε)) in canonical enumeration
    /// order (lexicographic restricted-growth order). Memoized.
    pub fn enumerate(&self, k: usize, eps: Option<&ColorString>) -> Result<Arc<Vec<Partition>>> {
        self.check_colors(k, eps)?;
        let key = (*self, k, eps.cloned());
        let cache = enum_cache().lock().unwrap();
        if let Some(hit) = cache.get(&key) {
            return Ok(Arc::clone(hit));
        }
        drop(cache);

        let mut out = Vec::new();
        self.for_each_member(k, eps, |labels| out.push(Partition::from_labels(labels)))?;
        out.sort();
        out.dedup();
        let arc = Arc::new(out);
        enum_cache().lock().unwrap().insert(key, Arc::clone(&arc));
        Ok(arc)
    }

    /// Stream every member of the category as a raw label sequence, without
    /// materializing. The generation order is deterministic but only the
    /// materialized [`Category::enumerate`] guarantees canonical order.
    pub fn for_each_member<F: FnMut(&[usize])>(
        &self,
        k: usize,
        eps: Option<&ColorString>,
        mut f: F,
    ) -> Result<()> {
        self.check_colors(k, eps)?;
        if self.is_pairing_like() {
            caps::check_pairing(k, "pairing enumeration")?;
        } else {
            caps::check_general(k, "partition enumeration")?;
        }
        if k == 0 {
            f(&[]);
            return Ok(());
        }
        let visit = |labels: &[usize]| {
            if self.contains_labels(labels, eps) {
                f(labels);
            }
        };
        match self {
            Category::O | Category::OStar | Category::UPairs => for_each_pairing(k, visit),
            Category::B => for_each_involution(k, visit),
            Category::OPlus | Category::BPlus => {
                // noncrossing stream is smaller than the involution stream
                for_each_noncrossing(k, visit)
            }
            Category::SPlus | Category::HPlus => for_each_noncrossing(k, visit),
            _ => for_each_partition(k, visit),
        }
        Ok(())
    }
}

fn enum_cache(
) -> &'static Mutex<HashMap<(Category, usize, Option<ColorString>), Arc<Vec<Partition>>>> {
    static CACHE: OnceLock<
        Mutex<HashMap<(Category, usize, Option<ColorString>), Arc<Vec<Partition>>>>,
    > = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn all_block_sizes(labels: &[usize], ok: impl Fn(usize) -> bool) -> bool {
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; nblocks];
    for &b in labels {
        sizes[b] += 1;
    }
    sizes.into_iter().all(ok)
}

/// Each pair must join an odd and an even position (1-based).
fn pairs_join_odd_even(labels: &[usize]) -> bool {
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut parity_sum = vec![0usize; nblocks];
    for (i, &b) in labels.iter().enumerate() {
        parity_sum[b] += i % 2; // i even <=> position i+1 odd
    }
    // within a pair: exactly one member at an even 0-based index
    parity_sum.into_iter().all(|s| s == 1)
}

fn pairs_join_one_star(labels: &[usize], eps: &ColorString) -> bool {
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut ones = vec![0usize; nblocks];
    for (i, &b) in labels.iter().enumerate() {
        if eps.symbols()[i] == Color::One {
            ones[b] += 1;
        }
    }
    ones.into_iter().all(|c| c == 1)
}

/// Every block has (#marked − #unmarked) ≡ 0 mod s; for s = ∞ the counts
/// must be exactly equal. `marked` selects odd legs (position parity) or
/// `1` legs (color), depending on the category.
fn balanced(labels: &[usize], s: SParam, marked: impl Fn(usize) -> bool) -> bool {
    let nblocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut diff = vec![0i64; nblocks];
    for (i, &b) in labels.iter().enumerate() {
        diff[b] += if marked(i) { 1 } else { -1 };
    }
    match s {
        SParam::Infinity => diff.into_iter().all(|d| d == 0),
        SParam::Finite(s) => diff.into_iter().all(|d| d.rem_euclid(s as i64) == 0),
    }
}

/// CLI names: `O, S, H, B, O+, S+, H+, B+, O*, H*, H(s), U-pairs, Hs(s)`
/// with `s` a positive integer ≥ 2 or `inf`.
impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::O => write!(f, "O"),
            Category::S => write!(f, "S"),
            Category::H => write!(f, "H"),
            Category::B => write!(f, "B"),
            Category::OPlus => write!(f, "O+"),
            Category::SPlus => write!(f, "S+"),
            Category::HPlus => write!(f, "H+"),
            Category::BPlus => write!(f, "B+"),
            Category::OStar => write!(f, "O*"),
            Category::HStar => write!(f, "H*"),
            Category::HSeries(s) => write!(f, "H({s})"),
            Category::UPairs => write!(f, "U-pairs"),
            Category::HsComplex(s) => write!(f, "Hs({s})"),
        }
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Category> {
        let s = raw.trim();
        let parse_s = |inner: &str| -> Result<SParam> {
            if inner.eq_ignore_ascii_case("inf") || inner == "∞" {
                return Ok(SParam::Infinity);
            }
            let v: u64 = inner
                .parse()
                .map_err(|_| Error::Parse(format!("bad s parameter {inner:?}")))?;
            if v < 2 {
                return Err(Error::Parse(format!("s must be ≥ 2, got {v}")));
            }
            Ok(SParam::Finite(v))
        };
        match s {
            "O" => Ok(Category::O),
            "S" => Ok(Category::S),
            "H" => Ok(Category::H),
            "B" => Ok(Category::B),
            "O+" => Ok(Category::OPlus),
            "S+" => Ok(Category::SPlus),
            "H+" => Ok(Category::HPlus),
            "B+" => Ok(Category::BPlus),
            "O*" => Ok(Category::OStar),
            "H*" => Ok(Category::HStar),
            "U-pairs" | "U" => Ok(Category::UPairs),
            _ => {
                if let Some(inner) = s.strip_prefix("Hs(").and_then(|t| t.strip_suffix(')')) {
                    return Ok(Category::HsComplex(parse_s(inner)?));
                }
                if let Some(inner) = s.strip_prefix("H(").and_then(|t| t.strip_suffix(')')) {
                    return Ok(Category::HSeries(parse_s(inner)?));
                }
                Err(Error::Parse(format!("unknown category {raw:?}")))
            }
        }
    }
}
