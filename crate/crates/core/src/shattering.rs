//! Shattered and strongly shattered sets, VC dimension, and extremality.
//!
//! Both families are down-closed, so they are grown level by level from `∅`:
//! a set is only examined once all of its immediate subsets are known to be
//! in the family. Dense systems on a small support instead fill a `3^s`
//! projection table for `Sh`. All work happens in "compact" coordinates
//! where the support of the system is renumbered to bits `0..s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{SetMask, SetSystem};

/// Largest support on which exhaustive shattering computations are allowed.
pub const SUPPORT_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShatterKind {
    Sh,
    #[serde(rename = "st")]
    St,
}

impl fmt::Display for ShatterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShatterKind::Sh => f.write_str("Sh"),
            ShatterKind::St => f.write_str("st"),
        }
    }
}

/// `Sh(F)` or `st(F)`: a down-closed family in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterFamily {
    pub kind: ShatterKind,
    pub n: usize,
    pub sets: Vec<SetMask>,
}

impl fmt::Display for ShatterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.sets.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", sets.join(", "))
    }
}

impl ShatterFamily {
    pub(crate) fn new(kind: ShatterKind, n: usize, mut sets: Vec<SetMask>) -> Self {
        sets.sort_unstable();
        sets.dedup();
        ShatterFamily { kind, n, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: SetMask) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = SetMask> + '_ {
        self.sets.iter().copied()
    }

    /// Size of the largest set; 0 for `{∅}` and for the empty family.
    pub fn max_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Inclusion-maximal sets. Relies on down-closure: `S` is maximal iff
    /// no one-element extension is present.
    pub fn maximal(&self) -> Vec<SetMask> {
        let n = self.n;
        self.sets
            .iter()
            .copied()
            .filter(|&s| {
                (1..=n)
                    .filter(|&e| !s.contains(e))
                    .all(|e| !self.contains(s.with(e)))
            })
            .collect()
    }

    /// Same sets viewed as a set system (drops the kind tag).
    pub fn to_system(&self) -> SetSystem {
        SetSystem::from_sorted_unchecked(self.n, self.sets.clone())
    }

    pub fn is_down_closed(&self) -> bool {
        self.sets.iter().all(|&s| {
            s.elements().all(|e| self.contains(s.without(e)))
        })
    }
}

/// A translated cube `{H ∪ offset : H ⊆ shattered}` inside the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrongWitness {
    pub shattered: SetMask,
    pub offset: SetMask,
}

/// Set counts used to decide extremality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalityReport {
    pub size: usize,
    pub shattered: usize,
    pub strongly_shattered: usize,
    pub extremal: bool,
}

/// `Sh(F)` and `st(F)` computed together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterProfile {
    pub size: usize,
    pub sh: ShatterFamily,
    pub st: ShatterFamily,
}

impl ShatterProfile {
    pub fn compute(system: &SetSystem) -> Result<Self> {
        Ok(ShatterProfile {
            size: system.len(),
            sh: shattered_sets(system)?,
            st: strongly_shattered_sets(system)?,
        })
    }

    pub fn vc_dimension(&self) -> usize {
        self.sh.max_size()
    }

    /// Checks `|Sh| = |F| ⟺ |st| = |F|`, and `Sh = st` for extremal input.
    pub fn report(&self) -> Result<ExtremalityReport> {
        let by_sh = self.sh.len() == self.size;
        let by_st = self.st.len() == self.size;
        if by_sh != by_st {
            return Err(Error::Internal(format!(
                "|Sh|={} and |st|={} disagree on extremality of a {}-member system",
                self.sh.len(),
                self.st.len(),
                self.size
            )));
        }
        if by_sh && self.sh.sets != self.st.sets {
            return Err(Error::Internal(
                "extremal system with Sh != st as sets".into(),
            ));
        }
        Ok(ExtremalityReport {
            size: self.size,
            shattered: self.sh.len(),
            strongly_shattered: self.st.len(),
            extremal: by_sh,
        })
    }
}

/// Renumbering of the support to consecutive bits.
struct Compact {
    positions: Vec<u32>,
}

impl Compact {
    fn new(support: SetMask) -> Self {
        Compact {
            positions: support.elements().map(|e| (e - 1) as u32).collect(),
        }
    }

    fn width(&self) -> usize {
        self.positions.len()
    }

    fn compress(&self, m: SetMask) -> u32 {
        let bits = m.bits();
        self.positions
            .iter()
            .enumerate()
            .fold(0u32, |acc, (k, &p)| acc | ((((bits >> p) & 1) as u32) << k))
    }

    fn expand(&self, c: u32) -> SetMask {
        let bits = self
            .positions
            .iter()
            .enumerate()
            .filter(|(k, _)| c & (1 << k) != 0)
            .fold(0u64, |acc, (_, &p)| acc | (1 << p));
        SetMask::from_bits(bits)
    }
}

struct BitTable(Vec<u64>);

impl BitTable {
    fn new(width: usize) -> Self {
        BitTable(vec![0; (1usize << width).div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: u32) -> bool {
        self.0[(i >> 6) as usize] & (1 << (i & 63)) != 0
    }

    #[inline]
    fn set(&mut self, i: u32) {
        self.0[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: u32) {
        self.0[(i >> 6) as usize] &= !(1 << (i & 63));
    }
}

fn prepare(system: &SetSystem) -> Result<(Compact, Vec<u32>)> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    let support = system.support();
    if support.len() > SUPPORT_LIMIT {
        return Err(Error::SupportTooLarge {
            size: support.len(),
            limit: SUPPORT_LIMIT,
        });
    }
    let compact = Compact::new(support);
    let members = system.iter().map(|m| compact.compress(m)).collect();
    Ok((compact, members))
}

/// Index of the lowest bit a child of `s` may add (children extend above
/// the current maximum so every set is generated once).
fn first_extension(s: u32) -> usize {
    if s == 0 {
        0
    } else {
        32 - s.leading_zeros() as usize
    }
}

fn immediate_subsets_present(t: u32, skip: usize, table: &BitTable) -> bool {
    let mut rest = t & !(1 << skip);
    while rest != 0 {
        let b = rest.trailing_zeros();
        if !table.get(t & !(1 << b)) {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

/// Widest support for the projection table (`3^14` bytes).
const TABLE_LIMIT: usize = 14;

/// `Sh(F)`: every `S` such that the traces `{F ∩ S}` cover `2^S`.
pub fn shattered_sets(system: &SetSystem) -> Result<ShatterFamily> {
    let (compact, members) = prepare(system)?;
    let width = compact.width();
    let found = if width <= TABLE_LIMIT && 3usize.pow(width as u32) <= members.len() << width {
        shattered_by_table(width, &members)
    } else {
        shattered_by_search(width, &members)
    };
    let sets = found.into_iter().map(|c| compact.expand(c)).collect();
    Ok(ShatterFamily::new(ShatterKind::Sh, system.n(), sets))
}

/// Dense case. Words over `{0, 1, *}` index the table; `*` marks a
/// coordinate outside `S`, and an entry is set when some member has that
/// trace on `S`. `S` is shattered when no entry with free set `[w] \ S`
/// is missing.
fn shattered_by_table(width: usize, members: &[u32]) -> Vec<u32> {
    let pow: Vec<usize> = (0..=width).map(|k| 3usize.pow(k as u32)).collect();
    let mut table = vec![false; pow[width]];
    for &m in members {
        let index: usize = (0..width).filter(|k| m & (1 << k) != 0).map(|k| pow[k]).sum();
        table[index] = true;
    }
    for k in 0..width {
        let block = pow[k + 1];
        for base in (0..pow[width]).step_by(block) {
            for low in 0..pow[k] {
                let i = base + 2 * pow[k] + low;
                table[i] = table[i - 2 * pow[k]] || table[i - pow[k]];
            }
        }
    }
    let full = (1u32 << width) - 1;
    let mut shattered = vec![true; 1 << width];
    // digits, and the mask of coordinates currently at `*`
    let mut digits = vec![0u8; width];
    let mut free = 0u32;
    for &present in &table {
        if !present {
            shattered[(full & !free) as usize] = false;
        }
        for (k, d) in digits.iter_mut().enumerate() {
            *d += 1;
            if *d == 2 {
                free |= 1 << k;
            }
            if *d < 3 {
                break;
            }
            *d = 0;
            free &= !(1 << k);
        }
    }
    let mut found: Vec<u32> = (0..=full).filter(|&s| shattered[s as usize]).collect();
    found.sort_by_key(|s| s.count_ones());
    found
}

fn shattered_by_search(width: usize, members: &[u32]) -> Vec<u32> {
    let mut family = BitTable::new(width);
    let mut seen = BitTable::new(width);
    family.set(0);
    let mut found = vec![0u32];
    let mut level = vec![0u32];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &s in &level {
            for j in first_extension(s)..width {
                let t = s | (1 << j);
                let need = 1usize << t.count_ones();
                if members.len() < need || !immediate_subsets_present(t, j, &family) {
                    continue;
                }
                let mut distinct = 0usize;
                let mut touched = 0usize;
                for &m in members {
                    touched += 1;
                    let trace = m & t;
                    if !seen.get(trace) {
                        seen.set(trace);
                        distinct += 1;
                        if distinct == need {
                            break;
                        }
                    }
                }
                for &m in &members[..touched] {
                    seen.clear(m & t);
                }
                if distinct == need {
                    family.set(t);
                    next.push(t);
                }
            }
        }
        found.extend_from_slice(&next);
        level = next;
    }
    found
}

/// Offsets `I` (disjoint from `s ∪ {j}`) with `2^(s∪{j}) + I ⊆ F`, given the
/// sorted offsets for `s`. A cube over `s ∪ {j}` at `I` is two cubes over
/// `s`, at `I` and at `I ∪ {j}`.
fn extend_witnesses(offsets: &[u32], bit: u32) -> Vec<u32> {
    offsets
        .iter()
        .copied()
        .filter(|&i| i & bit == 0 && offsets.binary_search(&(i | bit)).is_ok())
        .collect()
}

/// `st(F)`: every `S` with a full translated cube `2^S + I` inside `F`.
pub fn strongly_shattered_sets(system: &SetSystem) -> Result<ShatterFamily> {
    let (compact, mut members) = prepare(system)?;
    members.sort_unstable();
    let width = compact.width();
    let mut family = BitTable::new(width);
    family.set(0);
    let mut found = vec![0u32];
    let mut level: Vec<(u32, Vec<u32>)> = vec![(0, members)];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (s, offsets) in &level {
            for j in first_extension(*s)..width {
                let t = s | (1 << j);
                if offsets.len() < 2 || !immediate_subsets_present(t, j, &family) {
                    continue;
                }
                let extended = extend_witnesses(offsets, 1 << j);
                if !extended.is_empty() {
                    family.set(t);
                    found.push(t);
                    next.push((t, extended));
                }
            }
        }
        level = next;
    }
    let sets = found.into_iter().map(|c| compact.expand(c)).collect();
    Ok(ShatterFamily::new(ShatterKind::St, system.n(), sets))
}

/// Every offset `I` with `2^s + I ⊆ F`, ascending by `I`.
pub fn strong_witnesses(system: &SetSystem, s: SetMask) -> Result<Vec<StrongWitness>> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    if !s.fits(system.n()) {
        return Err(Error::SetOutOfUniverse {
            set: s,
            n: system.n(),
        });
    }
    let mut offsets: Vec<SetMask> = system.members().to_vec();
    for e in s.elements() {
        let bit = SetMask::singleton(e);
        offsets = offsets
            .iter()
            .copied()
            .filter(|&i| i.is_disjoint(bit) && offsets.binary_search(&i.union(bit)).is_ok())
            .collect();
    }
    Ok(offsets
        .into_iter()
        .map(|offset| StrongWitness {
            shattered: s,
            offset,
        })
        .collect())
}

/// Size of the largest shattered set.
pub fn vc_dimension(system: &SetSystem) -> Result<usize> {
    Ok(shattered_sets(system)?.max_size())
}

/// `|Sh(F)| = |F|`, cross-checked against `|st(F)| = |F|`.
pub fn is_extremal(system: &SetSystem) -> Result<ExtremalityReport> {
    ShatterProfile::compute(system)?.report()
}

/// Inclusion-maximal members of `Sh(F)`.
pub fn maximal_shattered(system: &SetSystem) -> Result<Vec<SetMask>> {
    Ok(shattered_sets(system)?.maximal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(elems: &[usize]) -> SetMask {
        SetMask::from_elements(63, elems.iter().copied()).unwrap()
    }

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::from_lists(n, sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    fn masks(sets: &[&[usize]]) -> Vec<SetMask> {
        let mut v: Vec<_> = sets.iter().map(|s| m(s)).collect();
        v.sort();
        v
    }

    fn figure() -> SetSystem {
        sys(3, &[&[], &[1], &[2], &[3], &[2, 3]])
    }

    #[test]
    fn shattered_examples() {
        assert_eq!(
            shattered_sets(&sys(2, &[&[], &[1, 2]])).unwrap().sets,
            masks(&[&[], &[1], &[2]])
        );
        assert_eq!(shattered_sets(&sys(2, &[&[]])).unwrap().sets, masks(&[&[]]));
        assert_eq!(
            shattered_sets(&figure()).unwrap().sets,
            masks(&[&[], &[1], &[2], &[3], &[2, 3]])
        );
    }

    #[test]
    fn strongly_shattered_examples() {
        assert_eq!(
            strongly_shattered_sets(&sys(2, &[&[], &[1, 2]])).unwrap().sets,
            masks(&[&[]])
        );
        let cube = SetSystem::cube(2, m(&[1, 2])).unwrap();
        assert_eq!(
            strongly_shattered_sets(&cube).unwrap().sets,
            masks(&[&[], &[1], &[2], &[1, 2]])
        );
        assert_eq!(
            strongly_shattered_sets(&figure()).unwrap().sets,
            masks(&[&[], &[1], &[2], &[3], &[2, 3]])
        );
    }

    #[test]
    fn witness_examples() {
        let cube = SetSystem::cube(2, m(&[1, 2])).unwrap();
        assert_eq!(
            strong_witnesses(&cube, m(&[1, 2])).unwrap(),
            vec![StrongWitness {
                shattered: m(&[1, 2]),
                offset: SetMask::EMPTY
            }]
        );
        assert!(strong_witnesses(&sys(2, &[&[], &[1, 2]]), m(&[1]))
            .unwrap()
            .is_empty());
        let f = sys(3, &[&[], &[1], &[2], &[1, 2], &[3], &[1, 3]]);
        let offsets: Vec<_> = strong_witnesses(&f, m(&[1]))
            .unwrap()
            .into_iter()
            .map(|w| w.offset)
            .collect();
        assert_eq!(offsets, masks(&[&[], &[2], &[3]]));
    }

    #[test]
    fn vc_examples() {
        assert_eq!(vc_dimension(&sys(1, &[&[]])).unwrap(), 0);
        assert_eq!(vc_dimension(&figure()).unwrap(), 2);
        assert_eq!(vc_dimension(&SetSystem::cube(3, m(&[1, 2, 3])).unwrap()).unwrap(), 3);
    }

    #[test]
    fn extremal_examples() {
        let r = is_extremal(&sys(2, &[&[], &[1, 2]])).unwrap();
        assert!(!r.extremal);
        assert_eq!((r.size, r.shattered, r.strongly_shattered), (2, 3, 1));
        assert!(is_extremal(&sys(1, &[&[]])).unwrap().extremal);
        let r = is_extremal(&figure()).unwrap();
        assert!(r.extremal);
        assert_eq!(r.shattered, 5);
    }

    #[test]
    fn maximal_examples() {
        assert_eq!(maximal_shattered(&figure()).unwrap(), masks(&[&[1], &[2, 3]]));
        assert_eq!(maximal_shattered(&sys(1, &[&[]])).unwrap(), masks(&[&[]]));
        let cube = SetSystem::cube(2, m(&[1, 2])).unwrap();
        assert_eq!(maximal_shattered(&cube).unwrap(), masks(&[&[1, 2]]));
    }

    #[test]
    fn empty_and_oversized_inputs_rejected() {
        let empty = SetSystem::empty(3).unwrap();
        assert!(matches!(shattered_sets(&empty), Err(Error::EmptySystem)));
        assert!(matches!(strongly_shattered_sets(&empty), Err(Error::EmptySystem)));
        assert!(matches!(vc_dimension(&empty), Err(Error::EmptySystem)));
        assert!(matches!(is_extremal(&empty), Err(Error::EmptySystem)));
        assert!(matches!(strong_witnesses(&empty, SetMask::EMPTY), Err(Error::EmptySystem)));

        let wide = SetSystem::new(30, [SetMask::EMPTY, SetMask::full(30)]).unwrap();
        assert!(matches!(
            shattered_sets(&wide),
            Err(Error::SupportTooLarge { size: 30, limit: 25 })
        ));
    }

    #[test]
    fn large_universe_small_support() {
        let f = SetSystem::new(63, [SetMask::EMPTY, m(&[63]), m(&[40]), m(&[40, 63])]).unwrap();
        let sh = shattered_sets(&f).unwrap();
        assert!(sh.contains(m(&[40, 63])));
        assert_eq!(sh.len(), 4);
        assert!(is_extremal(&f).unwrap().extremal);
    }

    #[test]
    fn down_closed_outputs() {
        let f = sys(4, &[&[], &[1], &[1, 2], &[2, 3], &[3], &[1, 3, 4], &[4]]);
        assert!(shattered_sets(&f).unwrap().is_down_closed());
        assert!(strongly_shattered_sets(&f).unwrap().is_down_closed());
    }

    #[test]
    fn table_and_search_agree() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for width in 1..=8usize {
            for _ in 0..40 {
                let mut members: Vec<u32> = (0..1u32 << width)
                    .filter(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        state.is_multiple_of(3)
                    })
                    .collect();
                if members.is_empty() {
                    members.push(0);
                }
                let mut a = shattered_by_table(width, &members);
                let mut b = shattered_by_search(width, &members);
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b);
            }
        }
    }
}
