//! Sequences over a group: finite unordered multisets of elements.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::group::{Element, FiniteGroup};
use crate::literal;

/// Default bound on the number of sub-multisets a single operation may visit.
pub const DEFAULT_STATE_CAP: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct Sequence<'g> {
    group: &'g FiniteGroup,
    /// Sorted by element, multiplicities are nonzero.
    counts: Vec<(Element, u32)>,
}

impl PartialEq for Sequence<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.counts == other.counts
            && (std::ptr::eq(self.group, other.group) || self.group == other.group)
    }
}

impl Eq for Sequence<'_> {}

impl Hash for Sequence<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.counts.hash(state);
    }
}

impl PartialOrd for Sequence<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by the sorted term list, so shorter prefixes come first.
impl Ord for Sequence<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms().cmp(other.terms())
    }
}

impl<'g> Sequence<'g> {
    pub fn empty(group: &'g FiniteGroup) -> Self {
        Sequence {
            group,
            counts: Vec::new(),
        }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(group: &'g FiniteGroup, terms: I) -> Result<Self> {
        let mut v: Vec<Element> = terms.into_iter().collect();
        for &x in &v {
            group.check(x)?;
        }
        v.sort_unstable();
        let mut counts: Vec<(Element, u32)> = Vec::new();
        for x in v {
            match counts.last_mut() {
                Some((y, c)) if *y == x => *c += 1,
                _ => counts.push((x, 1)),
            }
        }
        Ok(Sequence { group, counts })
    }

    /// Terms given as raw indices; panics on out-of-range indices.
    pub fn from_indices(group: &'g FiniteGroup, terms: &[u32]) -> Self {
        Self::from_elements(group, terms.iter().map(|&i| Element(i))).expect("index out of range")
    }

    pub fn from_counts<I: IntoIterator<Item = (Element, u32)>>(group: &'g FiniteGroup, counts: I) -> Result<Self> {
        let mut v: Vec<(Element, u32)> = Vec::new();
        for (x, c) in counts {
            group.check(x)?;
            if c > 0 {
                v.push((x, c));
            }
        }
        v.sort_unstable();
        v.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        Ok(Sequence { group, counts: v })
    }

    /// `g^[k]`
    pub fn power(group: &'g FiniteGroup, x: Element, k: u32) -> Self {
        Self::from_counts(group, [(x, k)]).expect("element out of range")
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn counts(&self) -> &[(Element, u32)] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&(_, c)| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn support(&self) -> Vec<Element> {
        self.counts.iter().map(|&(x, _)| x).collect()
    }

    pub fn height(&self) -> u32 {
        self.counts.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    pub fn multiplicity(&self, x: Element) -> u32 {
        match self.counts.binary_search_by_key(&x, |&(y, _)| y) {
            Ok(i) => self.counts[i].1,
            Err(_) => 0,
        }
    }

    /// Terms in ascending element order, repeated by multiplicity.
    pub fn terms(&self) -> impl Iterator<Item = Element> + '_ {
        self.counts
            .iter()
            .flat_map(|&(x, c)| std::iter::repeat_n(x, c as usize))
    }

    /// Cross number as an integer numerator over `exponent(G)`.
    pub fn weight(&self) -> u64 {
        let e = self.group.exponent() as u64;
        self.counts
            .iter()
            .map(|&(x, c)| c as u64 * (e / self.group.order_of(x) as u64))
            .sum()
    }

    /// `k(S)`: the sum of `1/ord(g)` over the terms.
    pub fn cross_number(&self) -> Fraction {
        Fraction::new(self.weight(), self.group.exponent() as u64)
    }

    pub fn is_square_free(&self) -> bool {
        self.height() <= 1
    }

    pub fn divides(&self, other: &Sequence<'_>) -> bool {
        self.counts.iter().all(|&(x, c)| other.multiplicity(x) >= c)
    }

    pub fn concat(&self, other: &Sequence<'_>) -> Sequence<'g> {
        let merged = self.counts.iter().chain(&other.counts).copied();
        Self::from_counts(self.group, merged).expect("same group")
    }

    pub fn push(&self, x: Element) -> Sequence<'g> {
        self.concat(&Sequence::power(self.group, x, 1))
    }

    /// `S·T^[-1]`; fails when `T` does not divide `S`.
    pub fn remove(&self, other: &Sequence<'_>) -> Result<Sequence<'g>> {
        for &(x, c) in &other.counts {
            let have = self.multiplicity(x);
            if have < c {
                return Err(Error::NotASubsequence {
                    element: x,
                    deficit: c - have,
                });
            }
        }
        let counts = self
            .counts
            .iter()
            .map(|&(x, c)| (x, c - other.multiplicity(x)))
            .filter(|&(_, c)| c > 0)
            .collect();
        Ok(Sequence {
            group: self.group,
            counts,
        })
    }

    /// `S_{G₀}` for the subset described by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(Element) -> bool) -> Sequence<'g> {
        Sequence {
            group: self.group,
            counts: self.counts.iter().copied().filter(|&(x, _)| keep(x)).collect(),
        }
    }

    /// `Π (v_g + 1)`, the number of sub-multisets including the empty one.
    pub fn lattice_size(&self) -> u128 {
        self.counts.iter().map(|&(_, c)| c as u128 + 1).product()
    }

    /// Sub-multisets in mixed-radix order: the least support element is the
    /// least significant digit.
    pub fn sub_multisets(&self, options: SubMultisetOptions) -> Result<SubMultisets<'_, 'g>> {
        let states = self.lattice_size();
        if states > options.state_cap as u128 {
            return Err(Error::StateSpaceCapExceeded {
                states,
                cap: options.state_cap,
            });
        }
        Ok(SubMultisets {
            seq: self,
            digits: vec![0; self.counts.len()],
            done: false,
            options,
        })
    }

    pub fn to_literal(&self) -> String {
        literal::format_sequence(self)
    }
}

impl fmt::Display for Sequence<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_sequence(self))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SubMultisetOptions {
    pub max_cross: Option<Fraction>,
    pub max_length: Option<usize>,
    pub nonempty: bool,
    pub state_cap: u64,
}

impl Default for SubMultisetOptions {
    fn default() -> Self {
        SubMultisetOptions {
            max_cross: None,
            max_length: None,
            nonempty: false,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

impl SubMultisetOptions {
    pub fn nonempty() -> Self {
        SubMultisetOptions {
            nonempty: true,
            ..Default::default()
        }
    }
}

pub struct SubMultisets<'s, 'g> {
    seq: &'s Sequence<'g>,
    digits: Vec<u32>,
    done: bool,
    options: SubMultisetOptions,
}

impl<'g> SubMultisets<'_, 'g> {
    fn current(&self) -> Sequence<'g> {
        Sequence {
            group: self.seq.group,
            counts: self
                .seq
                .counts
                .iter()
                .zip(&self.digits)
                .filter(|(_, &d)| d > 0)
                .map(|(&(x, _), &d)| (x, d))
                .collect(),
        }
    }

    fn advance(&mut self) {
        for (d, &(_, c)) in self.digits.iter_mut().zip(&self.seq.counts) {
            if *d < c {
                *d += 1;
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

impl<'g> Iterator for SubMultisets<'_, 'g> {
    type Item = Sequence<'g>;

    fn next(&mut self) -> Option<Sequence<'g>> {
        while !self.done {
            let t = self.current();
            self.advance();
            if self.options.nonempty && t.is_empty() {
                continue;
            }
            if self.options.max_length.is_some_and(|m| t.len() > m) {
                continue;
            }
            if self.options.max_cross.is_some_and(|m| t.cross_number() > m) {
                continue;
            }
            return Some(t);
        }
        None
    }
}
