//! Product sets over the sub-multiset lattice of a sequence.
//!
//! A sequence with support `x_0 < … < x_{L-1}` and multiplicities `v_i` has
//! `Π (v_i + 1)` sub-multisets, indexed in mixed radix with `x_0` as the least
//! significant digit. For every state `T` the lattice stores `π(T)` as a
//! bitset, computed from
//!
//! ```text
//! π(T) = ⋃_{x ∈ supp(T)} π(T − x) · x
//! ```
//!
//! (every ordering of `T` ends in some term `x`). Terms are pushed in
//! nondecreasing order, so the pushed element is always the most significant
//! digit and the states that contain it one more time form a contiguous block
//! appended at the end. Popping truncates that block again, which is what the
//! depth-first searches rely on.
//!
//! A [`Metric`] attaches a budget to each state (its length or its cross number
//! scaled by `exp(G)`). States over the cap are never needed by a constrained
//! search and are left empty.

use crate::group::{Element, FiniteGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// No constraint: every state is computed.
    Unbounded,
    /// Budget is the length; states longer than `cap` are pruned.
    Length { cap: u32 },
    /// Budget is `exp(G)·k(T)`; states above `cap` are pruned.
    Weight { cap: u32 },
}

impl Metric {
    pub fn short(group: &FiniteGroup) -> Self {
        Metric::Length {
            cap: group.max_order(),
        }
    }

    pub fn tiny(group: &FiniteGroup) -> Self {
        Metric::Weight {
            cap: group.exponent(),
        }
    }

    #[inline]
    pub fn cost(&self, group: &FiniteGroup, x: Element) -> u32 {
        match self {
            Metric::Unbounded => 0,
            Metric::Length { .. } => 1,
            Metric::Weight { .. } => group.exponent() / group.order_of(x),
        }
    }

    #[inline]
    pub fn cap(&self) -> u32 {
        match self {
            Metric::Unbounded => u32::MAX - 1,
            Metric::Length { cap } | Metric::Weight { cap } => *cap,
        }
    }
}

pub(crate) const PRUNED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Lattice<'g> {
    group: &'g FiniteGroup,
    metric: Metric,
    words: usize,
    support: Vec<Element>,
    mults: Vec<u32>,
    strides: Vec<usize>,
    /// `right_mul[i][y] = y · support[i]`
    right_mul: Vec<Vec<u32>>,
    sets: Vec<u64>,
    budget: Vec<u32>,
    /// Scratch digit counter for the block being built.
    digits: Vec<u32>,
}

impl<'g> Lattice<'g> {
    pub fn new(group: &'g FiniteGroup, metric: Metric) -> Self {
        let words = (group.order() as usize).div_ceil(64);
        let mut sets = vec![0u64; words];
        sets[0] = 1;
        Lattice {
            group,
            metric,
            words,
            support: Vec::new(),
            mults: Vec::new(),
            strides: Vec::new(),
            right_mul: Vec::new(),
            sets,
            budget: vec![0],
            digits: Vec::new(),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn state_count(&self) -> usize {
        self.budget.len()
    }

    pub fn support(&self) -> &[Element] {
        &self.support
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mults
    }

    /// Index range of the states added by the most recent push.
    pub fn last_block(&self) -> std::ops::Range<usize> {
        match (self.strides.last(), self.mults.last()) {
            (Some(&s), Some(&c)) => c as usize * s..(c as usize + 1) * s,
            _ => 0..1,
        }
    }

    #[inline]
    pub fn budget(&self, state: usize) -> u32 {
        self.budget[state]
    }

    #[inline]
    pub fn is_pruned(&self, state: usize) -> bool {
        self.budget[state] == PRUNED
    }

    #[inline]
    pub fn set(&self, state: usize) -> &[u64] {
        &self.sets[state * self.words..(state + 1) * self.words]
    }

    #[inline]
    pub fn contains(&self, state: usize, x: Element) -> bool {
        let i = x.index();
        self.sets[state * self.words + i / 64] >> (i % 64) & 1 == 1
    }

    pub fn members(&self, state: usize) -> impl Iterator<Item = Element> + '_ {
        bits(self.set(state)).map(|i| Element(i as u32))
    }

    pub fn full_state(&self) -> usize {
        self.state_count() - 1
    }

    /// Multiplicity of `support[i]` in `state`.
    #[inline]
    pub fn digit(&self, state: usize, i: usize) -> u32 {
        ((state / self.strides[i]) % (self.mults[i] as usize + 1)) as u32
    }

    pub fn state_counts(&self, state: usize) -> Vec<(Element, u32)> {
        (0..self.support.len())
            .map(|i| (self.support[i], self.digit(state, i)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    pub fn state_len(&self, state: usize) -> u32 {
        (0..self.support.len()).map(|i| self.digit(state, i)).sum()
    }

    /// Appends one copy of `x`, which must be at least every element pushed so far.
    pub fn push(&mut self, x: Element) {
        debug_assert!(self.support.last().is_none_or(|&y| y <= x));
        if self.support.last() == Some(&x) {
            *self.mults.last_mut().unwrap() += 1;
        } else {
            self.strides.push(self.state_count());
            self.support.push(x);
            self.mults.push(1);
            let perm = (0..self.group.order())
                .map(|y| self.group.mul_raw(y, x.0))
                .collect();
            self.right_mul.push(perm);
        }
        self.build_last_block();
    }

    pub fn pop(&mut self) {
        let block = self.last_block();
        self.sets.truncate(block.start * self.words);
        self.budget.truncate(block.start);
        let last = self.mults.len() - 1;
        if self.mults[last] == 1 {
            self.mults.pop();
            self.support.pop();
            self.strides.pop();
            self.right_mul.pop();
        } else {
            self.mults[last] -= 1;
        }
    }

    fn build_last_block(&mut self) {
        let block = self.last_block();
        let last = self.support.len() - 1;
        let stride = self.strides[last];
        let cost = self.metric.cost(self.group, self.support[last]);
        let cap = self.metric.cap();
        let words = self.words;
        self.sets.resize(block.end * words, 0);
        self.budget.resize(block.end, PRUNED);
        self.digits.clear();
        self.digits.resize(last, 0);
        for idx in block {
            let below = idx - stride;
            let b = self.budget[below];
            let within = b != PRUNED && b.saturating_add(cost) <= cap;
            if within {
                self.budget[idx] = b + cost;
                let (done, rest) = self.sets.split_at_mut(idx * words);
                let out = &mut rest[..words];
                out.fill(0);
                right_multiply_into(&done[below * words..(below + 1) * words], &self.right_mul[last], out);
                for i in 0..last {
                    if self.digits[i] > 0 {
                        let prev = idx - self.strides[i];
                        right_multiply_into(
                            &done[prev * words..(prev + 1) * words],
                            &self.right_mul[i],
                            out,
                        );
                    }
                }
            }
            // advance the mixed-radix counter over the lower digits
            for i in 0..last {
                if self.digits[i] < self.mults[i] {
                    self.digits[i] += 1;
                    break;
                }
                self.digits[i] = 0;
            }
        }
    }

    /// Reconstructs an ordering of `state` whose product is `target`, choosing
    /// the least possible next term at every step, so the result is the
    /// lexicographically least such ordering. Returns `None` if
    /// `target ∉ π(state)`.
    pub fn ordering_with_product(&self, state: usize, target: Element) -> Option<Vec<Element>> {
        if !self.contains(state, target) {
            return None;
        }
        let mut out = Vec::new();
        let mut state = state;
        let mut t = target;
        while state != 0 {
            // x·rest = t with rest ∈ π(state − x)
            let step = (0..self.support.len()).find_map(|i| {
                if self.digit(state, i) == 0 {
                    return None;
                }
                let x = self.support[i];
                let prev = state - self.strides[i];
                let want = self.group.mul(self.group.inverse(x), t);
                (!self.is_pruned(prev) && self.contains(prev, want)).then_some((x, prev, want))
            })?;
            out.push(step.0);
            state = step.1;
            t = step.2;
        }
        Some(out)
    }
}

#[inline]
fn right_multiply_into(src: &[u64], perm: &[u32], out: &mut [u64]) {
    for (w, &word) in src.iter().enumerate() {
        let mut m = word;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            let y = perm[w * 64 + b] as usize;
            out[y / 64] |= 1 << (y % 64);
        }
    }
}

pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(w * 64 + b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_pop_restores_state() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let mut l = Lattice::new(&g, Metric::Unbounded);
        l.push(Element(1));
        l.push(Element(1));
        let snapshot = (l.sets.clone(), l.budget.clone());
        l.push(Element(5));
        l.push(Element(5));
        l.push(Element(6));
        assert_eq!(l.state_count(), 3 * 3 * 2);
        l.pop();
        l.pop();
        l.pop();
        assert_eq!((l.sets.clone(), l.budget.clone()), snapshot);
        assert_eq!(l.support(), &[Element(1)]);
    }

    #[test]
    fn weight_metric_prunes() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let mut l = Lattice::new(&g, Metric::tiny(&g));
        for _ in 0..5 {
            l.push(Element(1));
        }
        // a^k has weight k (over exp = 4); states with k > 4 are pruned
        assert!(!l.is_pruned(4));
        assert!(l.is_pruned(5));
        assert!(l.contains(4, Element(0)));
    }

    #[test]
    fn reconstructs_orderings() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let mut l = Lattice::new(&g, Metric::Unbounded);
        for x in [1, 3, 4] {
            l.push(Element(x));
        }
        let full = l.full_state();
        for target in l.members(full).collect::<Vec<_>>() {
            let order = l.ordering_with_product(full, target).unwrap();
            let p = order.iter().fold(Element(0), |acc, &x| g.mul(acc, x));
            assert_eq!(p, target);
        }
    }
}
