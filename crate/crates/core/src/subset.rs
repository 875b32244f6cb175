//! Fixed-width bitsets over the dense element indices of a ground set.
//!
//! A [`Subset`] is tagged with the ground set it indexes into, so a subset of
//! `X` cannot be passed where a subset of `Y` is expected.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Maximum number of elements in a single ground set.
pub const MAX_ELEMENTS: usize = 64;

/// Marker for subsets of the domain `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainSide {}

/// Marker for subsets of the codomain `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodomainSide {}

pub struct Subset<S> {
    bits: u64,
    _side: PhantomData<S>,
}

/// A subset `W` of the domain.
pub type XSubset = Subset<DomainSide>;
/// A subset `Z` of the codomain.
pub type YSubset = Subset<CodomainSide>;

impl<S> Subset<S> {
    pub const fn empty() -> Self {
        Self::from_bits(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        Subset {
            bits,
            _side: PhantomData,
        }
    }

    /// The first `n` indices, `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of {n} elements exceeds {MAX_ELEMENTS}");
        if n == MAX_ELEMENTS {
            Self::from_bits(u64::MAX)
        } else {
            Self::from_bits((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_ELEMENTS);
        Self::from_bits(1u64 << index)
    }

    pub const fn bits(self) -> u64 {
        self.bits
    }

    pub const fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_ELEMENTS && self.bits >> index & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < MAX_ELEMENTS);
        self.bits |= 1u64 << index;
    }

    pub fn remove(&mut self, index: usize) {
        if index < MAX_ELEMENTS {
            self.bits &= !(1u64 << index);
        }
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    /// True when every member index is below `n`.
    pub fn is_within(self, n: usize) -> bool {
        n >= MAX_ELEMENTS || self.bits >> n == 0
    }

    /// Least member index.
    pub fn first(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> Indices {
        Indices(self.bits)
    }

    /// All subsets of `self` (including the empty set and `self`), in
    /// increasing order of their bit patterns.
    pub fn subsets(self) -> Submasks<S> {
        Submasks {
            mask: self.bits,
            next: Some(0),
            _side: PhantomData,
        }
    }

    /// All `k`-element subsets of `self`, lexicographic in member indices.
    pub fn combinations(self, k: usize) -> Combinations<S> {
        Combinations::new(self, k)
    }
}

impl<S> Clone for Subset<S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S> Copy for Subset<S> {}

impl<S> PartialEq for Subset<S> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl<S> Eq for Subset<S> {}

impl<S> Hash for Subset<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl<S> PartialOrd for Subset<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<S> Ord for Subset<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl<S> Default for Subset<S> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<S> fmt::Debug for Subset<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<S> BitOr for Subset<S> {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        Self::from_bits(self.bits | rhs.bits)
    }
}

impl<S> BitAnd for Subset<S> {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        Self::from_bits(self.bits & rhs.bits)
    }
}

impl<S> Sub for Subset<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_bits(self.bits & !rhs.bits)
    }
}

impl<S> Not for Subset<S> {
    type Output = Self;
    fn not(self) -> Self {
        Self::from_bits(!self.bits)
    }
}

impl<S> FromIterator<usize> for Subset<S> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl<S> IntoIterator for Subset<S> {
    type Item = usize;
    type IntoIter = Indices;
    fn into_iter(self) -> Indices {
        self.iter()
    }
}

#[derive(Debug, Clone)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Submask enumeration (carry-rippler).
pub struct Submasks<S> {
    mask: u64,
    next: Option<u64>,
    _side: PhantomData<S>,
}

impl<S> Iterator for Submasks<S> {
    type Item = Subset<S>;

    fn next(&mut self) -> Option<Subset<S>> {
        let current = self.next?;
        let following = current.wrapping_sub(self.mask) & self.mask;
        self.next = (following != 0).then_some(following);
        Some(Subset::from_bits(current))
    }
}

pub struct Combinations<S> {
    members: Vec<usize>,
    cursor: Option<Vec<usize>>,
    _side: PhantomData<S>,
}

impl<S> Combinations<S> {
    fn new(set: Subset<S>, k: usize) -> Self {
        let members: Vec<usize> = set.iter().collect();
        let cursor = (k <= members.len()).then(|| (0..k).collect());
        Combinations {
            members,
            cursor,
            _side: PhantomData,
        }
    }
}

impl<S> Iterator for Combinations<S> {
    type Item = Subset<S>;

    fn next(&mut self) -> Option<Subset<S>> {
        let positions = self.cursor.as_mut()?;
        let item = positions.iter().map(|&p| self.members[p]).collect();

        // advance to the next position vector in lexicographic order
        let n = self.members.len();
        let k = positions.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.cursor = None;
                break;
            }
            i -= 1;
            if positions[i] < n - k + i {
                positions[i] += 1;
                for j in i + 1..k {
                    positions[j] = positions[j - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}
