//! Subsets of `[n] = {1, ..., n}` as 128-bit masks.
//!
//! Element `j` is stored at bit `j - 1`, so a [`Subset`] is literally the
//! characteristic vector of the set it denotes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 128;

/// The ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::GroundSize(n));
        }
        Ok(Self { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// The whole ground set as a subset.
    pub fn full(self) -> Subset {
        Subset::prefix(self.n)
    }

    pub fn contains(self, s: Subset) -> bool {
        s.is_subset_of(self.full())
    }

    pub fn check(self, s: Subset) -> Result<()> {
        match s.difference(self.full()).max_element() {
            None => Ok(()),
            Some(element) => Err(Error::ElementOutOfRange { element, n: self.n }),
        }
    }

    /// All `k`-subsets of `[n]` in increasing mask (colex) order.
    pub fn k_subsets(self, k: usize) -> KSubsets {
        KSubsets::new(self.n, k)
    }

    /// All subsets of `[n]` with at most `k` elements, sorted by size then mask.
    pub fn subsets_up_to(self, k: usize) -> impl Iterator<Item = Subset> {
        (0..=k.min(self.n)).flat_map(move |j| self.k_subsets(j))
    }
}

/// A subset of `[n]`. Ordered canonically by size, then by mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u128) -> Self {
        Subset(mask)
    }

    /// `{1, ..., k}`.
    pub const fn prefix(k: usize) -> Self {
        if k >= 128 {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << k) - 1)
        }
    }

    pub const fn singleton(element: usize) -> Self {
        Subset(1u128 << (element - 1))
    }

    /// Builds a subset from 1-based elements. Repeats are absorbed.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut mask = 0u128;
        for e in elements {
            if e == 0 || e > MAX_N {
                return Err(Error::ElementOutOfRange { element: e, n: MAX_N });
            }
            mask |= 1u128 << (e - 1);
        }
        Ok(Subset(mask))
    }

    pub const fn mask(self) -> u128 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, element: usize) -> bool {
        element >= 1 && element <= 128 && self.0 >> (element - 1) & 1 == 1
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset_of(self, other: Subset) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    pub const fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub const fn with(self, element: usize) -> Subset {
        Subset(self.0 | 1u128 << (element - 1))
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// All subsets of `self`, in increasing mask order (starting at the empty set).
    pub fn submasks(self) -> Submasks {
        Submasks {
            full: self.0,
            next: Some(0),
        }
    }

    /// All `k`-subsets of `self` in colex order.
    pub fn k_subsets(self, k: usize) -> impl Iterator<Item = Subset> {
        let elems = self.to_vec();
        KSubsets::new(elems.len(), k).map(move |local| {
            let mut m = 0u128;
            for i in local.elements() {
                m |= 1u128 << (elems[i - 1] - 1);
            }
            Subset(m)
        })
    }

    /// Packs the bits of `self` selected by `positions` into the low bits, in
    /// order: bit `p` of the result is set iff `positions[p]` is in `self`.
    pub fn compress(self, positions: &[usize]) -> usize {
        positions
            .iter()
            .enumerate()
            .fold(0usize, |acc, (p, &e)| acc | (((self.0 >> (e - 1)) & 1) as usize) << p)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as the sorted list of its 1-based elements.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_elements(elems).map_err(serde::de::Error::custom)
    }
}

pub struct Elements(u128);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Submasks {
    full: u128,
    next: Option<u128>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            // Increment within the bits of `full`.
            Some((cur | !self.full).wrapping_add(1) & self.full)
        };
        Some(Subset(cur))
    }
}

/// `k`-subsets of `[n]` in increasing mask order (Gosper's hack).
pub struct KSubsets {
    n: usize,
    next: Option<u128>,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        let next = (k <= n).then(|| Subset::prefix(k).0);
        Self { n, next }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let (r, overflow) = cur.overflowing_add(c);
            if overflow {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (self.n >= 128 || nxt >> self.n == 0).then_some(nxt)
            }
        };
        Some(Subset(cur))
    }
}

/// Exact binomial coefficient, `0` when `k > n`.
///
/// Panics on `u128` overflow, which needs `n` well beyond desk scale.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul(u128::from(n - i)).expect("binomial overflow") / u128::from(i + 1);
    }
    acc
}

/// `sum_{i=0}^{d} C(n, i)`, the dimension of the multilinear space of degree `<= d`.
pub fn binomial_prefix_sum(n: u64, d: u64) -> u128 {
    (0..=d).map(|i| binomial(n, i)).sum()
}
