//! Subsets of a bounded universe `[n]` and duplicate-free set systems over it.
//!
//! Elements are 1-based at every public boundary (`1..=n`); element `i` is
//! stored in bit `i - 1`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported universe; one subset fits one machine word.
pub const MAX_UNIVERSE: usize = 63;

/// A subset of `[n]` packed into a `u64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMask(u64);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SetMask(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{i}` for a 1-based element. Panics on `i == 0` or `i > 64`.
    pub fn singleton(i: usize) -> Self {
        assert!((1..=64).contains(&i), "element {i} is not a valid label");
        SetMask(1 << (i - 1))
    }

    /// The full set `[n]`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            SetMask(u64::MAX)
        } else {
            SetMask((1u64 << n) - 1)
        }
    }

    /// Builds a mask from 1-based labels, checking each against `n`.
    pub fn from_elements<I>(n: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SetMask(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        self.union(SetMask::singleton(i))
    }

    pub fn without(self, i: usize) -> Self {
        self.difference(SetMask::singleton(i))
    }

    pub fn toggled(self, i: usize) -> Self {
        self.sym_diff(SetMask::singleton(i))
    }

    pub fn union(self, other: Self) -> Self {
        SetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SetMask(self.0 & !other.0)
    }

    pub fn sym_diff(self, other: Self) -> Self {
        SetMask(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Hamming distance `|self △ other|`.
    pub fn distance(self, other: Self) -> usize {
        self.sym_diff(other).len()
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// True iff every element lies in `[n]`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(SetMask::full(n))
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in ascending numeric order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct Elements(u64);

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
}

pub struct Subsets {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = SetMask;

    fn next(&mut self) -> Option<SetMask> {
        let cur = self.next?;
        self.next = if cur == self.of {
            None
        } else {
            Some((cur.wrapping_sub(self.of)) & self.of)
        };
        Some(SetMask(cur))
    }
}

/// A duplicate-free set system over `[n]`, members kept in ascending mask order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetSystem {
    n: usize,
    members: Vec<SetMask>,
}

impl SetSystem {
    /// Strict constructor: rejects duplicates and out-of-universe members.
    pub fn new<I>(n: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = SetMask>,
    {
        check_universe(n)?;
        let mut members: Vec<SetMask> = members.into_iter().collect();
        for &m in &members {
            if !m.fits(n) {
                return Err(Error::SetOutOfUniverse { set: m, n });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0]));
        }
        Ok(SetSystem { n, members })
    }

    /// Like [`SetSystem::new`] but silently merges duplicates.
    pub fn from_masks<I>(n: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = SetMask>,
    {
        check_universe(n)?;
        let mut members: Vec<SetMask> = members.into_iter().collect();
        if let Some(&m) = members.iter().find(|m| !m.fits(n)) {
            return Err(Error::SetOutOfUniverse { set: m, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetSystem { n, members })
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<I, J>(n: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let masks = sets
            .into_iter()
            .map(|s| SetMask::from_elements(n, s))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(n, masks)
    }

    pub fn empty(n: usize) -> Result<Self> {
        SetSystem::new(n, [])
    }

    /// `{∅}`, the starting point of every build.
    pub fn singleton_empty(n: usize) -> Result<Self> {
        SetSystem::new(n, [SetMask::EMPTY])
    }

    /// All subsets of `ground` as a system over `[n]`.
    pub fn cube(n: usize, ground: SetMask) -> Result<Self> {
        SetSystem::new(n, ground.subsets())
    }

    /// Members are already sorted and distinct.
    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<SetMask>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetSystem { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[SetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = SetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: SetMask) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn index_of(&self, set: SetMask) -> Option<usize> {
        self.members.binary_search(&set).ok()
    }

    /// Returns a copy with `set` added; no-op when already present.
    pub fn with_member(&self, set: SetMask) -> Result<Self> {
        if !set.fits(self.n) {
            return Err(Error::SetOutOfUniverse { set, n: self.n });
        }
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&set) {
            members.insert(pos, set);
        }
        Ok(SetSystem { n: self.n, members })
    }

    pub fn without_member(&self, set: SetMask) -> Result<Self> {
        let pos = self.index_of(set).ok_or(Error::NotAMember(set))?;
        let mut members = self.members.clone();
        members.remove(pos);
        Ok(SetSystem { n: self.n, members })
    }

    pub fn is_subfamily_of(&self, other: &SetSystem) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Union of all members.
    pub fn support(&self) -> SetMask {
        self.members
            .iter()
            .fold(SetMask::EMPTY, |acc, &m| acc.union(m))
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::ElementOutOfRange {
                element: i,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Applies `F ↦ F △ mask` to every member.
    pub fn flip_by(&self, mask: SetMask) -> Result<Self> {
        if !mask.fits(self.n) {
            return Err(Error::SetOutOfUniverse {
                set: mask,
                n: self.n,
            });
        }
        let mut members: Vec<SetMask> = self.members.iter().map(|m| m.sym_diff(mask)).collect();
        members.sort_unstable();
        Ok(SetSystem { n: self.n, members })
    }

    /// The `i`th bit flip: toggles element `i` in every member.
    pub fn bit_flip(&self, i: usize) -> Result<Self> {
        self.check_element(i)?;
        self.flip_by(SetMask::singleton(i))
    }

    /// Flips every element of `target` so that `target` is sent to `∅`.
    pub fn flip_to_empty(&self, target: SetMask) -> Result<(Self, FlipRecord)> {
        if !self.contains(target) {
            return Err(Error::NotAMember(target));
        }
        let flipped = self.flip_by(target)?;
        Ok((flipped, FlipRecord { mask: target }))
    }

    /// Splits on element `i`: members avoiding `i`, and members containing
    /// `i` with `i` removed.
    pub fn standard_subdivision(&self, i: usize) -> Result<(Self, Self)> {
        self.check_element(i)?;
        let bit = SetMask::singleton(i);
        let mut without = Vec::new();
        let mut with = Vec::new();
        for &m in &self.members {
            if m.is_disjoint(bit) {
                without.push(m);
            } else {
                with.push(m.difference(bit));
            }
        }
        // Both halves inherit the ascending order of `self.members`.
        Ok((
            SetSystem::from_sorted_unchecked(self.n, without),
            SetSystem::from_sorted_unchecked(self.n, with),
        ))
    }

    /// Members `F` with `lower ⊆ F ⊆ upper`.
    pub fn interval_restrict(&self, q: IntervalQuery) -> Self {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|m| q.lower.is_subset(*m) && m.is_subset(q.upper))
            .collect();
        SetSystem::from_sorted_unchecked(self.n, members)
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem(n={}, ", self.n)?;
        f.debug_set().entries(self.members.iter()).finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn check_universe(n: usize) -> Result<()> {
    if (1..=MAX_UNIVERSE).contains(&n) {
        Ok(())
    } else {
        Err(Error::UniverseSize(n))
    }
}

/// Interval `[lower, upper]` in the subset lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalQuery {
    lower: SetMask,
    upper: SetMask,
}

impl IntervalQuery {
    pub fn new(lower: SetMask, upper: SetMask) -> Result<Self> {
        if !lower.is_subset(upper) {
            return Err(Error::MalformedInterval { lower, upper });
        }
        Ok(IntervalQuery { lower, upper })
    }

    pub fn lower(&self) -> SetMask {
        self.lower
    }

    pub fn upper(&self) -> SetMask {
        self.upper
    }
}

/// The composite flip applied by [`SetSystem::flip_to_empty`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipRecord {
    pub mask: SetMask,
}

impl FlipRecord {
    /// Undoes the flip on a system.
    pub fn invert(&self, system: &SetSystem) -> Result<SetSystem> {
        system.flip_by(self.mask)
    }

    /// Maps a single set through the flip (the flip is its own inverse).
    pub fn apply(&self, set: SetMask) -> SetMask {
        set.sym_diff(self.mask)
    }
}
