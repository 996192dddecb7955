//! Exhaustive computation of d, η, ti, k and K, and the explicit extremal
//! families they are compared against.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::clock::Stopwatch;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::group::{Element, FiniteGroup, PresentationFamily, DEFAULT_AUTOMORPHISM_CAP};
use crate::lattice::Metric;
use crate::search::{
    walk, AtLength, Collector, Frontier, FreeProperty, LatticeFrontier, Longest, SearchConfig,
    SearchStats,
};
use crate::sequence::Sequence;
use crate::walk_with_engine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Invariant {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "eta")]
    Eta,
    #[serde(rename = "ti")]
    Ti,
    #[serde(rename = "k_small")]
    KSmall,
    #[serde(rename = "K_big")]
    KBig,
}

impl Invariant {
    pub const ALL: [Invariant; 5] = [
        Invariant::D,
        Invariant::Eta,
        Invariant::Ti,
        Invariant::KSmall,
        Invariant::KBig,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Invariant::D => "d",
            Invariant::Eta => "eta",
            Invariant::Ti => "ti",
            Invariant::KSmall => "k_small",
            Invariant::KBig => "K_big",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    /// Accepts the short CLI names (`k`, `K`) as well as the long ones.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "d" => Invariant::D,
            "eta" => Invariant::Eta,
            "ti" => Invariant::Ti,
            "k" | "k_small" => Invariant::KSmall,
            "K" | "K_big" => Invariant::KBig,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown invariant `{s}` (expected d, eta, ti, k or K)"
                )))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Integer(u64),
    Fraction(Fraction),
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Integer(v) => write!(f, "{v}"),
            InvariantValue::Fraction(v) => write!(f, "{v}"),
        }
    }
}

impl InvariantValue {
    pub fn as_integer(&self) -> Option<u64> {
        match self {
            InvariantValue::Integer(v) => Some(*v),
            InvariantValue::Fraction(_) => None,
        }
    }

    pub fn as_fraction(&self) -> Fraction {
        match self {
            InvariantValue::Integer(v) => Fraction::from_integer(*v),
            InvariantValue::Fraction(v) => *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub invariant: Invariant,
    pub value: InvariantValue,
    /// Extremal sequences as nondecreasing term lists.
    pub witnesses: Vec<Vec<Element>>,
    pub exhaustive: bool,
    pub elapsed: Duration,
    pub nodes: u64,
}

impl InvariantResult {
    pub fn witness_sequences<'g>(&self, group: &'g FiniteGroup) -> Vec<Sequence<'g>> {
        self.witnesses
            .iter()
            .map(|w| Sequence::from_elements(group, w.iter().copied()).expect("witness terms are in range"))
            .collect()
    }

    pub fn to_json(&self, group: &FiniteGroup) -> serde_json::Value {
        serde_json::json!({
            "group": group.name(),
            "invariant": self.invariant,
            "value": self.value,
            "witnesses": self.witness_sequences(group).iter().map(|s| s.to_literal()).collect::<Vec<_>>(),
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct InvariantOptions {
    pub search: SearchConfig,
    /// Keep one witness per automorphism orbit.
    pub reduce_by_automorphisms: bool,
}

/// Sequences of one length with a hereditary property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeFamily {
    pub sequences: Vec<Vec<Element>>,
    pub stats: SearchStats,
}

/// All multisets of `length` with `property`, in encoding order.
pub fn enumerate_free_sequences(
    group: &FiniteGroup,
    property: FreeProperty,
    length: usize,
    reduce_by_automorphisms: bool,
    search: &SearchConfig,
) -> Result<FreeFamily> {
    let cfg = SearchConfig {
        min_len: length,
        max_len: Some(length),
        ..search.clone()
    };
    let metric = property.mode().metric(group);
    let (c, stats) = walk_with_engine!(group, metric, &cfg, || AtLength { len: length, found: vec![] });
    let mut sequences = c.found;
    if reduce_by_automorphisms {
        sequences = orbit_representatives(group, sequences)?;
    }
    Ok(FreeFamily { sequences, stats })
}

/// Keeps the sequences that are lexicographically least in their orbit.
pub fn orbit_representatives(group: &FiniteGroup, seqs: Vec<Vec<Element>>) -> Result<Vec<Vec<Element>>> {
    let autos = group.automorphisms(DEFAULT_AUTOMORPHISM_CAP.max(group.order()))?;
    Ok(seqs
        .into_iter()
        .filter(|s| {
            autos.iter().all(|p| {
                let mut image: Vec<Element> = s.iter().map(|x| Element(p[x.index()])).collect();
                image.sort_unstable();
                *s <= image
            })
        })
        .collect())
}

fn longest(group: &FiniteGroup, property: FreeProperty, opts: &InvariantOptions) -> Result<(Longest, SearchStats)> {
    let metric = property.mode().metric(group);
    let (mut c, stats) = walk_with_engine!(group, metric, &opts.search, Longest::default);
    if opts.reduce_by_automorphisms {
        c.found = orbit_representatives(group, c.found)?;
    }
    Ok((c, stats))
}

fn from_longest(
    invariant: Invariant,
    group: &FiniteGroup,
    property: FreeProperty,
    offset: u64,
    opts: &InvariantOptions,
) -> Result<InvariantResult> {
    let clock = Stopwatch::start();
    let (c, stats) = longest(group, property, opts)?;
    Ok(InvariantResult {
        invariant,
        value: InvariantValue::Integer(c.len as u64 + offset),
        witnesses: c.found,
        exhaustive: stats.exhaustive,
        elapsed: clock.elapsed(),
        nodes: stats.nodes,
    })
}

/// `d(G)`: the maximal length of a product-one free sequence.
pub fn small_davenport(group: &FiniteGroup, opts: &InvariantOptions) -> Result<InvariantResult> {
    from_longest(Invariant::D, group, FreeProperty::ProductOneFree, 0, opts)
}

/// `η(G)`: one more than the maximal length of a short-free sequence.
pub fn eta(group: &FiniteGroup, opts: &InvariantOptions) -> Result<InvariantResult> {
    from_longest(Invariant::Eta, group, FreeProperty::ShortFree, 1, opts)
}

/// `ti(G)`: one more than the maximal length of a tiny-free sequence.
pub fn ti(group: &FiniteGroup, opts: &InvariantOptions) -> Result<InvariantResult> {
    from_longest(Invariant::Ti, group, FreeProperty::TinyFree, 1, opts)
}

/// Keeps the sequences of largest weight (cross number times `exp(G)`).
struct Heaviest<'g> {
    group: &'g FiniteGroup,
    weight: u64,
    found: Vec<Vec<Element>>,
}

impl Heaviest<'_> {
    fn offer(&mut self, weight: u64, found: Vec<Vec<Element>>) {
        if found.is_empty() {
            return;
        }
        if weight > self.weight || self.found.is_empty() {
            self.weight = weight;
            self.found = found;
        } else if weight == self.weight {
            self.found.extend(found);
        }
    }
}

fn weight_of(group: &FiniteGroup, terms: &[Element]) -> u64 {
    let e = group.exponent() as u64;
    terms.iter().map(|&x| e / group.order_of(x) as u64).sum()
}

impl<F> Collector<F> for Heaviest<'_> {
    fn visit(&mut self, seq: &[Element], _: &F) {
        let w = weight_of(self.group, seq);
        if w >= self.weight || self.found.is_empty() {
            self.offer(w, vec![seq.to_vec()]);
        }
    }
    fn merge(&mut self, later: Self) {
        self.offer(later.weight, later.found);
    }
}

/// `k(G)`: the largest cross number of a product-one free sequence.
pub fn small_cross_number(group: &FiniteGroup, opts: &InvariantOptions) -> Result<InvariantResult> {
    let clock = Stopwatch::start();
    let (mut c, stats) = walk_with_engine!(group, Metric::Unbounded, &opts.search, || Heaviest {
        group,
        weight: 0,
        found: vec![],
    });
    if opts.reduce_by_automorphisms {
        c.found = orbit_representatives(group, c.found)?;
    }
    Ok(InvariantResult {
        invariant: Invariant::KSmall,
        value: InvariantValue::Fraction(Fraction::new(c.weight, group.exponent() as u64)),
        witnesses: c.found,
        exhaustive: stats.exhaustive,
        elapsed: clock.elapsed(),
        nodes: stats.nodes,
    })
}

/// Visits `S·x` for every product-one free `S` on the walk and every
/// `x ≥ last(S)` such that `S·x` is a minimal product-one sequence.
///
/// `S·x` is product-one iff `x⁻¹ ∈ π(S)`, and a proper subsequence `T·x`
/// would be product-one iff `x⁻¹ ∈ π(T)`. So `S·x` is minimal exactly when
/// the full state of `S` is the only sub-multiset whose product set holds
/// `x⁻¹`.
pub trait MinimalVisitor: Send {
    fn minimal(&mut self, seq: &[Element], x: Element);
    fn merge_from(&mut self, later: Self);
}

pub struct Minimal<V>(pub V);

impl<V: MinimalVisitor> Collector<LatticeFrontier<'_>> for Minimal<V> {
    fn visit(&mut self, seq: &[Element], frontier: &LatticeFrontier<'_>) {
        let group = frontier.group();
        let lattice = frontier.lattice();
        let full = lattice.full_state();
        let from = seq.last().map_or(0, |x| x.0);
        for x in (from..group.order()).map(Element) {
            let y = group.inverse(x);
            if x == Element::IDENTITY && !seq.is_empty() {
                continue;
            }
            if lattice.contains(full, y) && frontier.owner_count(y) == 1 {
                self.0.minimal(seq, x);
            }
        }
    }
    fn merge(&mut self, later: Self) {
        self.0.merge_from(later.0);
    }
}

/// Walks every minimal product-one sequence (length at most `|G|`).
pub fn walk_minimal<V: MinimalVisitor>(
    group: &FiniteGroup,
    search: &SearchConfig,
    make: impl Fn() -> V + Sync,
) -> (V, SearchStats) {
    let cfg = SearchConfig {
        max_len: Some(search.max_len.unwrap_or(usize::MAX).min(group.order() as usize - 1)),
        min_len: 0,
        ..search.clone()
    };
    let (c, stats) = walk(
        &cfg,
        || LatticeFrontier::new(group, Metric::Unbounded).with_owner_counts(),
        || Minimal(make()),
    );
    (c.0, stats)
}

struct HeaviestMinimal<'g>(Heaviest<'g>);

impl MinimalVisitor for HeaviestMinimal<'_> {
    fn minimal(&mut self, seq: &[Element], x: Element) {
        let h = &mut self.0;
        let w = weight_of(h.group, seq) + (h.group.exponent() / h.group.order_of(x)) as u64;
        if w >= h.weight || h.found.is_empty() {
            let mut t = seq.to_vec();
            t.push(x);
            h.offer(w, vec![t]);
        }
    }
    fn merge_from(&mut self, later: Self) {
        self.0.offer(later.0.weight, later.0.found);
    }
}

/// `K(G)`: the largest cross number of a minimal product-one sequence.
pub fn big_cross_number_k(group: &FiniteGroup, opts: &InvariantOptions) -> Result<InvariantResult> {
    let clock = Stopwatch::start();
    let (v, stats) = walk_minimal(group, &opts.search, || {
        HeaviestMinimal(Heaviest {
            group,
            weight: 0,
            found: vec![],
        })
    });
    let mut c = v.0;
    if opts.reduce_by_automorphisms {
        c.found = orbit_representatives(group, c.found)?;
    }
    Ok(InvariantResult {
        invariant: Invariant::KBig,
        value: InvariantValue::Fraction(Fraction::new(c.weight, group.exponent() as u64)),
        witnesses: c.found,
        exhaustive: stats.exhaustive,
        elapsed: clock.elapsed(),
        nodes: stats.nodes,
    })
}

pub fn compute(group: &FiniteGroup, invariant: Invariant, opts: &InvariantOptions) -> Result<InvariantResult> {
    match invariant {
        Invariant::D => small_davenport(group, opts),
        Invariant::Eta => eta(group, opts),
        Invariant::Ti => ti(group, opts),
        Invariant::KSmall => small_cross_number(group, opts),
        Invariant::KBig => big_cross_number_k(group, opts),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    CyclicTi,
    DihedralD,
    DihedralEta,
    DihedralTi,
    DicyclicD,
    DicyclicEta,
    DicyclicTi,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::CyclicTi,
        FamilyId::DihedralD,
        FamilyId::DihedralEta,
        FamilyId::DihedralTi,
        FamilyId::DicyclicD,
        FamilyId::DicyclicEta,
        FamilyId::DicyclicTi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::CyclicTi => "cyclic_ti",
            FamilyId::DihedralD => "dihedral_d",
            FamilyId::DihedralEta => "dihedral_eta",
            FamilyId::DihedralTi => "dihedral_ti",
            FamilyId::DicyclicD => "dicyclic_d",
            FamilyId::DicyclicEta => "dicyclic_eta",
            FamilyId::DicyclicTi => "dicyclic_ti",
        }
    }

    pub fn presentation_family(self) -> PresentationFamily {
        match self {
            FamilyId::CyclicTi => PresentationFamily::CyclicGenerator,
            FamilyId::DihedralD | FamilyId::DihedralEta | FamilyId::DihedralTi => PresentationFamily::DihedralPair,
            _ => PresentationFamily::DicyclicPair,
        }
    }

    /// The property every member of the family has.
    pub fn property(self) -> FreeProperty {
        match self {
            FamilyId::DihedralD | FamilyId::DicyclicD => FreeProperty::ProductOneFree,
            FamilyId::DihedralEta | FamilyId::DicyclicEta => FreeProperty::ShortFree,
            _ => FreeProperty::TinyFree,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// Instantiates a family over every presentation of `group`, sorted and
/// deduplicated.
pub fn extremal_family(group: &FiniteGroup, family: FamilyId) -> Result<Vec<Vec<Element>>> {
    let pf = family.presentation_family();
    let presentations = group.presentations(pf)?;
    if presentations.is_empty() {
        return Err(Error::FamilyMismatch {
            family: family.to_string(),
            group: group.name(),
        });
    }
    let mul = |x, y| group.mul(x, y);
    let mut out: Vec<Vec<Element>> = Vec::new();
    for p in presentations {
        let g = p.g;
        let ord = group.order_of(g) as usize;
        let power = |k: usize| vec![g; k];
        let with = |mut v: Vec<Element>, tail: &[Element]| {
            v.extend_from_slice(tail);
            v
        };
        match (family, p.h) {
            (FamilyId::CyclicTi, _) => out.push(power(ord - 1)),
            (FamilyId::DihedralD | FamilyId::DihedralEta, Some(h)) => {
                out.push(with(power(ord - 1), &[h]));
                if ord == 3 {
                    out.push(vec![h, mul(g, h), mul(mul(g, g), h)]);
                }
            }
            (FamilyId::DihedralTi, Some(h)) => {
                let mut reflections = Vec::with_capacity(ord);
                let mut r = h;
                for _ in 0..ord {
                    reflections.push(r);
                    r = mul(r, g);
                }
                out.push(with(power(ord - 1), &reflections));
            }
            (FamilyId::DicyclicD | FamilyId::DicyclicEta, Some(h)) => {
                out.push(with(power(ord - 1), &[h]));
                // ord(g) = 2n, exceptional sequences at n = 2
                if ord == 4 {
                    out.push(vec![g, h, h, h]);
                    out.push(vec![mul(g, h), h, h, h]);
                }
            }
            (FamilyId::DicyclicTi, Some(h)) => out.push(with(power(ord - 1), &[h])),
            _ => unreachable!("pair presentations carry h"),
        }
    }
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{is_minimal_product_one, Detector, Mode};

    fn opts() -> InvariantOptions {
        InvariantOptions::default()
    }

    fn ints(r: &InvariantResult) -> u64 {
        r.value.as_integer().unwrap()
    }

    #[test]
    fn examples() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let q2 = FiniteGroup::dicyclic(2).unwrap();
        let c5 = FiniteGroup::cyclic(5).unwrap();
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let c7 = FiniteGroup::cyclic(7).unwrap();
        assert_eq!(ints(&small_davenport(&d4, &opts()).unwrap()), 4);
        assert_eq!(ints(&small_davenport(&q2, &opts()).unwrap()), 4);
        assert_eq!(ints(&small_davenport(&c5, &opts()).unwrap()), 4);
        assert_eq!(ints(&eta(&d3, &opts()).unwrap()), 4);
        assert_eq!(ints(&eta(&q2, &opts()).unwrap()), 5);
        let e = eta(&c4, &opts()).unwrap();
        assert_eq!(ints(&e), 4);
        assert_eq!(e.witnesses, vec![vec![Element(1); 3], vec![Element(3); 3]]);
        assert_eq!(ints(&ti(&c7, &opts()).unwrap()), 7);
        assert_eq!(ints(&ti(&d3, &opts()).unwrap()), 6);
        let big = |n| big_cross_number_k(&FiniteGroup::cyclic(n).unwrap(), &opts()).unwrap().value;
        assert_eq!(big(4), InvariantValue::Fraction(Fraction::ONE));
        assert_eq!(big(9), InvariantValue::Fraction(Fraction::ONE));
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let k = small_cross_number(&c2, &opts()).unwrap();
        assert_eq!(k.value, InvariantValue::Fraction(Fraction::new(1, 2)));
        assert_eq!(k.witnesses, vec![vec![Element(1)]]);
    }

    #[test]
    fn enumeration_examples() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let f = enumerate_free_sequences(&c6, FreeProperty::TinyFree, 5, false, &SearchConfig::default()).unwrap();
        assert_eq!(f.sequences, vec![vec![Element(1); 5], vec![Element(5); 5]]);
        assert!(f.stats.exhaustive);
        for p in [FreeProperty::ProductOneFree, FreeProperty::ShortFree, FreeProperty::TinyFree] {
            let f = enumerate_free_sequences(&c6, p, 0, false, &SearchConfig::default()).unwrap();
            assert_eq!(f.sequences, vec![Vec::<Element>::new()]);
        }
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let f = enumerate_free_sequences(&d3, FreeProperty::ProductOneFree, 3, false, &SearchConfig::default()).unwrap();
        assert_eq!(f.sequences, extremal_family(&d3, FamilyId::DihedralD).unwrap());
        assert!(f.sequences.contains(&vec![Element(3), Element(4), Element(5)]));
        // reduction keeps one per orbit: a²·τ-type and the three reflections
        let r = enumerate_free_sequences(&d3, FreeProperty::ProductOneFree, 3, true, &SearchConfig::default()).unwrap();
        assert_eq!(r.sequences.len(), 2);
    }

    #[test]
    fn families() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(
            extremal_family(&c6, FamilyId::CyclicTi).unwrap(),
            vec![vec![Element(1); 5], vec![Element(5); 5]]
        );
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let ti3 = extremal_family(&d3, FamilyId::DihedralTi).unwrap();
        assert_eq!(
            ti3,
            vec![
                vec![Element(1), Element(1), Element(3), Element(4), Element(5)],
                vec![Element(2), Element(2), Element(3), Element(4), Element(5)],
            ]
        );
        let q3 = FiniteGroup::dicyclic(3).unwrap();
        let f = extremal_family(&q3, FamilyId::DicyclicTi).unwrap();
        // g ∈ {a, a⁵}, h any of the six b-elements
        assert_eq!(f.len(), 12);
        assert!(f.iter().all(|s| s.len() == 6));
        assert!(matches!(
            extremal_family(&c6, FamilyId::DihedralD),
            Err(Error::FamilyMismatch { .. })
        ));
        let q2 = FiniteGroup::dicyclic(2).unwrap();
        let det = Detector::default();
        for fam in FamilyId::ALL.into_iter().filter(|f| f.presentation_family() == PresentationFamily::DicyclicPair) {
            for s in extremal_family(&q2, fam).unwrap() {
                let s = Sequence::from_elements(&q2, s).unwrap();
                assert!(det.find_product_one_subsequence(&s, fam.property().mode()).unwrap().is_none());
            }
        }
    }

    #[test]
    fn minimal_sequences_are_short() {
        // a minimal product-one sequence never exceeds |G| terms
        for g in [
            FiniteGroup::cyclic(3).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::dihedral(3).unwrap(),
        ] {
            let k = g.order() as usize;
            let mut stack: Vec<Vec<u32>> = vec![vec![]];
            let mut longest = 0;
            let mut count = 0u64;
            while let Some(s) = stack.pop() {
                if !s.is_empty() && is_minimal_product_one(&Sequence::from_indices(&g, &s)).unwrap() {
                    longest = longest.max(s.len());
                    count += 1;
                }
                if s.len() <= k {
                    for x in s.last().copied().unwrap_or(0)..g.order() {
                        let mut t = s.clone();
                        t.push(x);
                        stack.push(t);
                    }
                }
            }
            assert!(longest <= k);
            struct Count(u64);
            impl MinimalVisitor for Count {
                fn minimal(&mut self, _: &[Element], _: Element) {
                    self.0 += 1;
                }
                fn merge_from(&mut self, later: Self) {
                    self.0 += later.0;
                }
            }
            let (c, stats) = walk_minimal(&g, &SearchConfig::default(), || Count(0));
            assert!(stats.exhaustive);
            assert_eq!(c.0, count, "{}", g.name());
        }
    }

    #[test]
    fn small_cross_number_can_exceed_big_one() {
        // three reflections multiply to a reflection, while a minimal
        // product-one sequence in D3 holds two reflections and at most one rotation
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let k = small_cross_number(&d3, &opts()).unwrap();
        let big = big_cross_number_k(&d3, &opts()).unwrap();
        assert_eq!(k.value, InvariantValue::Fraction(Fraction::new(3, 2)));
        assert_eq!(k.witnesses, vec![vec![Element(3), Element(4), Element(5)]]);
        assert_eq!(big.value, InvariantValue::Fraction(Fraction::new(4, 3)));
    }

    #[test]
    fn witnesses_revalidate() {
        let det = Detector::default();
        for g in [FiniteGroup::dihedral(4).unwrap(), FiniteGroup::dicyclic(2).unwrap(), FiniteGroup::cyclic(8).unwrap()] {
            for (inv, mode) in [(Invariant::D, Mode::Any), (Invariant::Eta, Mode::Short), (Invariant::Ti, Mode::Tiny)] {
                let r = compute(&g, inv, &opts()).unwrap();
                assert!(r.exhaustive);
                for s in r.witness_sequences(&g) {
                    assert!(det.find_product_one_subsequence(&s, mode).unwrap().is_none());
                }
            }
            let k = small_cross_number(&g, &opts()).unwrap();
            let big = big_cross_number_k(&g, &opts()).unwrap();
            if g.is_abelian() {
                assert!(big.value.as_fraction() > k.value.as_fraction(), "{}", g.name());
            }
            for s in big.witness_sequences(&g) {
                assert!(is_minimal_product_one(&s).unwrap());
            }
        }
    }
}
