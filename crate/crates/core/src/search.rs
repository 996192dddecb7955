//! Depth-first enumeration of free sequences.
//!
//! Product-one free, short-free and tiny-free are hereditary: every
//! subsequence of a free sequence is free. Sequences are generated as
//! nondecreasing element lists, and a node whose extension fails is never
//! expanded, so each free multiset is visited exactly once.
//!
//! Extending a free `S` by `g` creates a product-one subsequence exactly when
//! some `T | S` has `g⁻¹ ∈ π(T)` (rotate any product-one ordering of `T·g` so
//! that `g` comes last). A frontier therefore only needs, for every element
//! `y`, the least budget of a sub-multiset `T` with `y ∈ π(T)`:
//!
//! * [`AbelianFrontier`] keeps that table directly; `π(T)` is the single sum,
//!   so pushing `g` is one knapsack step.
//! * [`LatticeFrontier`] keeps the full product-set lattice of the current
//!   sequence and folds each newly built block into the table.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::clock::{ordered_map, Stopwatch};
use crate::group::{Element, FiniteGroup};
use crate::lattice::{Lattice, Metric, PRUNED};
use crate::products::Mode;

/// Hereditary property enumerated by the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreeProperty {
    ProductOneFree,
    ShortFree,
    TinyFree,
}

impl FreeProperty {
    pub fn mode(self) -> Mode {
        match self {
            FreeProperty::ProductOneFree => Mode::Any,
            FreeProperty::ShortFree => Mode::Short,
            FreeProperty::TinyFree => Mode::Tiny,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FreeProperty::ProductOneFree => "product-one-free",
            FreeProperty::ShortFree => "short-free",
            FreeProperty::TinyFree => "tiny-free",
        }
    }
}

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineChoice {
    /// Abelian frontier for abelian groups, lattice otherwise.
    Auto,
    Lattice,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_cap: u64,
    pub time_limit: Option<Duration>,
    /// Do not extend sequences beyond this length.
    pub max_len: Option<usize>,
    /// Subtrees that cannot reach this length are skipped. Visitors still see
    /// shorter nodes on the way down.
    pub min_len: usize,
    pub engine: EngineChoice,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_cap: DEFAULT_NODE_CAP,
            time_limit: None,
            max_len: None,
            min_len: 0,
            engine: EngineChoice::Auto,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub exhaustive: bool,
    /// Number of free sequences visited at each length.
    pub by_length: Vec<u64>,
}

impl SearchStats {
    pub fn max_len(&self) -> usize {
        self.by_length.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.exhaustive &= other.exhaustive;
        if self.by_length.len() < other.by_length.len() {
            self.by_length.resize(other.by_length.len(), 0);
        }
        for (a, b) in self.by_length.iter_mut().zip(other.by_length) {
            *a += b;
        }
    }
}

pub trait Frontier: Send {
    fn group(&self) -> &FiniteGroup;
    /// Whether the current sequence stays free after appending `g`.
    fn can_extend(&self, g: Element) -> bool;
    fn push(&mut self, g: Element);
    fn pop(&mut self);
}

/// Collects results during a walk. One collector runs per top-level branch;
/// branches are merged in element order, so results do not depend on the
/// thread schedule.
pub trait Collector<F>: Send {
    fn visit(&mut self, seq: &[Element], frontier: &F);
    fn merge(&mut self, later: Self);
}

pub struct AbelianFrontier<'g> {
    group: &'g FiniteGroup,
    metric: Metric,
    order: usize,
    /// Stack of least-budget tables, one per depth.
    least: Vec<u32>,
}

impl<'g> AbelianFrontier<'g> {
    pub fn new(group: &'g FiniteGroup, metric: Metric) -> Self {
        assert!(group.is_abelian());
        let order = group.order() as usize;
        let mut least = vec![PRUNED; order];
        least[0] = 0;
        AbelianFrontier {
            group,
            metric,
            order,
            least,
        }
    }

    fn top(&self) -> &[u32] {
        &self.least[self.least.len() - self.order..]
    }
}

impl Frontier for AbelianFrontier<'_> {
    fn group(&self) -> &FiniteGroup {
        self.group
    }

    #[inline]
    fn can_extend(&self, g: Element) -> bool {
        let need = self.top()[self.group.inverse(g).index()];
        need == PRUNED || need.saturating_add(self.metric.cost(self.group, g)) > self.metric.cap()
    }

    fn push(&mut self, g: Element) {
        let cost = self.metric.cost(self.group, g);
        let cap = self.metric.cap();
        let start = self.least.len() - self.order;
        self.least.extend_from_within(start..);
        let (old, new) = self.least.split_at_mut(start + self.order);
        let old = &old[start..];
        for (y, &b) in old.iter().enumerate() {
            if b == PRUNED {
                continue;
            }
            let nb = b + cost;
            if nb > cap {
                continue;
            }
            let z = self.group.mul_raw(y as u32, g.0) as usize;
            if nb < new[z] {
                new[z] = nb;
            }
        }
    }

    fn pop(&mut self) {
        self.least.truncate(self.least.len() - self.order);
    }
}

pub struct LatticeFrontier<'g> {
    lattice: Lattice<'g>,
    order: usize,
    least: Vec<u32>,
    /// Per depth, how many states contain each element (saturating at 2).
    owners: Option<Vec<u8>>,
}

impl<'g> LatticeFrontier<'g> {
    pub fn new(group: &'g FiniteGroup, metric: Metric) -> Self {
        let order = group.order() as usize;
        let mut least = vec![PRUNED; order];
        least[0] = 0;
        LatticeFrontier {
            lattice: Lattice::new(group, metric),
            order,
            least,
            owners: None,
        }
    }

    /// Also track how many sub-multisets produce each element.
    pub fn with_owner_counts(mut self) -> Self {
        let mut owners = vec![0u8; self.order];
        owners[0] = 1;
        self.owners = Some(owners);
        self
    }

    pub fn lattice(&self) -> &Lattice<'g> {
        &self.lattice
    }

    /// Number of sub-multisets (including the empty one) whose product set
    /// contains `y`, saturating at 2.
    pub fn owner_count(&self, y: Element) -> u8 {
        let owners = self.owners.as_ref().expect("owner counts enabled");
        owners[owners.len() - self.order + y.index()]
    }

    fn top(&self) -> &[u32] {
        &self.least[self.least.len() - self.order..]
    }
}

impl Frontier for LatticeFrontier<'_> {
    fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }

    #[inline]
    fn can_extend(&self, g: Element) -> bool {
        let group = self.lattice.group();
        let metric = self.lattice.metric();
        let need = self.top()[group.inverse(g).index()];
        need == PRUNED || need.saturating_add(metric.cost(group, g)) > metric.cap()
    }

    fn push(&mut self, g: Element) {
        self.lattice.push(g);
        let start = self.least.len() - self.order;
        self.least.extend_from_within(start..);
        if let Some(owners) = self.owners.as_mut() {
            owners.extend_from_within(owners.len() - self.order..);
        }
        let base = self.least.len() - self.order;
        for s in self.lattice.last_block() {
            let b = self.lattice.budget(s);
            if b == PRUNED {
                continue;
            }
            for y in self.lattice.members(s) {
                let slot = &mut self.least[base + y.index()];
                if b < *slot {
                    *slot = b;
                }
                if let Some(owners) = self.owners.as_mut() {
                    let o = &mut owners[base + y.index()];
                    *o = (*o + 1).min(2);
                }
            }
        }
    }

    fn pop(&mut self) {
        self.lattice.pop();
        self.least.truncate(self.least.len() - self.order);
        if let Some(owners) = self.owners.as_mut() {
            owners.truncate(owners.len() - self.order);
        }
    }
}

struct Budget {
    cap: u64,
    deadline: Option<Duration>,
    clock: Stopwatch,
    used: AtomicU64,
    stop: AtomicBool,
}

impl Budget {
    /// Charges `n` nodes; returns false once the budget is gone.
    fn charge(&self, n: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        let late = self.deadline.is_some_and(|d| self.clock.elapsed() > d);
        if used > self.cap || late {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

const CHARGE_EVERY: u64 = 1024;

struct Walker<'a, F, C> {
    frontier: F,
    collector: C,
    stats: SearchStats,
    seq: Vec<Element>,
    scratch: Vec<Vec<Element>>,
    cfg: &'a SearchConfig,
    budget: &'a Budget,
    pending: u64,
    halted: bool,
}

impl<F: Frontier, C: Collector<F>> Walker<'_, F, C> {
    fn enter(&mut self) -> bool {
        self.stats.nodes += 1;
        self.pending += 1;
        if self.pending >= CHARGE_EVERY {
            let n = std::mem::take(&mut self.pending);
            if !self.budget.charge(n) {
                self.halted = true;
            }
        }
        !self.halted
    }

    fn candidates(&self, from: u32, into: &mut Vec<Element>) {
        into.clear();
        let order = self.frontier.group().order();
        into.extend((from..order).map(Element).filter(|&g| self.frontier.can_extend(g)));
    }

    fn reachable(&self, cands: &[Element]) -> bool {
        let len = self.seq.len();
        if len >= self.cfg.min_len {
            return true;
        }
        let group = self.frontier.group();
        let tail = self.seq.last().copied();
        let run = self.seq.iter().rev().take_while(|&&x| Some(x) == tail).count();
        let potential: usize = cands
            .iter()
            .map(|&g| {
                let room = group.order_of(g) as usize - 1;
                if Some(g) == tail {
                    room.saturating_sub(run)
                } else {
                    room
                }
            })
            .sum();
        len + potential >= self.cfg.min_len
    }

    fn dfs(&mut self, from: u32) {
        if !self.enter() {
            return;
        }
        let len = self.seq.len();
        if self.stats.by_length.len() <= len {
            self.stats.by_length.resize(len + 1, 0);
        }
        self.stats.by_length[len] += 1;
        self.collector.visit(&self.seq, &self.frontier);
        if self.cfg.max_len.is_some_and(|m| len >= m) {
            return;
        }
        let mut cands = self.scratch.pop().unwrap_or_default();
        self.candidates(from, &mut cands);
        if self.reachable(&cands) {
            for &g in &cands {
                self.frontier.push(g);
                self.seq.push(g);
                self.dfs(g.0);
                self.seq.pop();
                self.frontier.pop();
                if self.halted {
                    break;
                }
            }
        }
        self.scratch.push(cands);
    }
}

/// Walks every free sequence (subject to `cfg`), feeding each to a collector.
pub fn walk<F, C, MF, MC>(cfg: &SearchConfig, make_frontier: MF, make_collector: MC) -> (C, SearchStats)
where
    F: Frontier,
    C: Collector<F>,
    MF: Fn() -> F + Sync,
    MC: Fn() -> C + Sync,
{
    let budget = Budget {
        cap: cfg.node_cap,
        deadline: cfg.time_limit,
        clock: Stopwatch::start(),
        used: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let new_walker = || Walker {
        frontier: make_frontier(),
        collector: make_collector(),
        stats: SearchStats {
            exhaustive: true,
            ..Default::default()
        },
        seq: Vec::new(),
        scratch: Vec::new(),
        cfg,
        budget: &budget,
        pending: 0,
        halted: false,
    };

    // The root is handled here; each first element becomes an independent branch.
    let mut root = new_walker();
    root.enter();
    root.stats.by_length.push(1);
    root.collector.visit(&[], &root.frontier);
    let mut firsts = Vec::new();
    if cfg.max_len != Some(0) {
        root.candidates(0, &mut firsts);
        if !root.reachable(&firsts) {
            firsts.clear();
        }
    }
    let branches = ordered_map(firsts, |g| {
        let mut w = new_walker();
        w.frontier.push(g);
        w.seq.push(g);
        w.dfs(g.0);
        let halted = w.halted || !budget.charge(w.pending);
        w.stats.exhaustive = !halted;
        (w.collector, w.stats)
    });
    let mut collector = root.collector;
    let mut stats = root.stats;
    for (c, s) in branches {
        collector.merge(c);
        stats.merge(s);
    }
    if budget.stop.load(Ordering::Relaxed) {
        stats.exhaustive = false;
    }
    (collector, stats)
}

/// Runs `walk` with the frontier chosen by `cfg.engine` for `metric`.
#[macro_export]
#[doc(hidden)]
macro_rules! walk_with_engine {
    ($group:expr, $metric:expr, $cfg:expr, $make_collector:expr) => {{
        let group: &$crate::group::FiniteGroup = $group;
        let metric = $metric;
        let cfg: &$crate::search::SearchConfig = $cfg;
        if group.is_abelian() && cfg.engine == $crate::search::EngineChoice::Auto {
            $crate::search::walk(
                cfg,
                || $crate::search::AbelianFrontier::new(group, metric),
                $make_collector,
            )
        } else {
            $crate::search::walk(
                cfg,
                || $crate::search::LatticeFrontier::new(group, metric),
                $make_collector,
            )
        }
    }};
}

/// Collector that ignores everything; use the stats.
#[derive(Default)]
pub struct CountOnly;

impl<F> Collector<F> for CountOnly {
    fn visit(&mut self, _: &[Element], _: &F) {}
    fn merge(&mut self, _: Self) {}
}

/// Keeps every sequence of exactly the requested length.
pub struct AtLength {
    pub len: usize,
    pub found: Vec<Vec<Element>>,
}

impl<F> Collector<F> for AtLength {
    fn visit(&mut self, seq: &[Element], _: &F) {
        if seq.len() == self.len {
            self.found.push(seq.to_vec());
        }
    }
    fn merge(&mut self, later: Self) {
        self.found.extend(later.found);
    }
}

/// Keeps the longest sequences seen.
#[derive(Default)]
pub struct Longest {
    pub len: usize,
    pub found: Vec<Vec<Element>>,
}

impl Longest {
    fn offer(&mut self, len: usize, found: Vec<Vec<Element>>) {
        if len > self.len || self.found.is_empty() {
            self.len = len;
            self.found = found;
        } else if len == self.len {
            self.found.extend(found);
        }
    }
}

impl<F> Collector<F> for Longest {
    fn visit(&mut self, seq: &[Element], _: &F) {
        if seq.len() >= self.len || self.found.is_empty() {
            self.offer(seq.len(), vec![seq.to_vec()]);
        }
    }
    fn merge(&mut self, later: Self) {
        if !later.found.is_empty() {
            self.offer(later.len, later.found);
        }
    }
}

/// Free sequences of a property for the given group (convenience wrapper).
pub fn count_free(group: &FiniteGroup, property: FreeProperty, cfg: &SearchConfig) -> SearchStats {
    let metric = property.mode().metric(group);
    walk_with_engine!(group, metric, cfg, || CountOnly).1
}
