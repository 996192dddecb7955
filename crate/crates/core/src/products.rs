//! Product sets `π(S)`, subsequence products `Π(S)` and product-one detection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::group::{Element, FiniteGroup};
use crate::lattice::{bits, Lattice, Metric};
use crate::literal;
use crate::sequence::{Sequence, DEFAULT_STATE_CAP};

pub type ElementSet = BTreeSet<Element>;

/// Which product-one subsequences count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Any nonempty product-one subsequence.
    Any,
    /// Length at most `max{ord(g)}`.
    Short,
    /// Cross number at most 1.
    Tiny,
}

impl Mode {
    pub fn metric(self, group: &FiniteGroup) -> Metric {
        match self {
            Mode::Any => Metric::Unbounded,
            Mode::Short => Metric::short(group),
            Mode::Tiny => Metric::tiny(group),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Any => "any",
            Mode::Short => "short",
            Mode::Tiny => "tiny",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Witness that a sequence has a product-one subsequence of the given kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// An ordering of the subsequence whose product is the identity.
    pub witness: Vec<Element>,
    pub kind: Mode,
    pub cross: Fraction,
    pub of_length: usize,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    witness: Vec<String>,
    kind: Mode,
    cross: Fraction,
}

impl Certificate {
    pub fn to_json(&self, group: &FiniteGroup) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            witness: self.witness.iter().map(|&x| literal::format_element(group, x)).collect(),
            kind: self.kind,
            cross: self.cross,
        })
        .expect("certificate serializes")
    }

    pub fn from_json(group: &FiniteGroup, text: &str) -> Result<Certificate> {
        let raw: CertificateJson = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column(), format!("certificate: {e}")))?;
        let witness = raw
            .witness
            .iter()
            .enumerate()
            .map(|(i, s)| literal::parse_element(group, s, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            of_length: witness.len(),
            witness,
            kind: raw.kind,
            cross: raw.cross,
        })
    }
}

/// Why a certificate was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    EmptyWitness,
    ElementOutOfRange,
    NotASubsequence,
    ProductNotIdentity,
    TooLongForShort,
    CrossExceedsOne,
    CrossMismatch,
    LengthMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializes");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

/// Product-one detection with a bound on lattice size.
#[derive(Clone, Copy, Debug)]
pub struct Detector {
    pub state_cap: u64,
}

impl Default for Detector {
    fn default() -> Self {
        Detector {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

impl Detector {
    pub fn new(state_cap: u64) -> Self {
        Detector { state_cap }
    }

    /// Builds the sub-multiset lattice of `seq` under `metric`.
    pub fn lattice<'g>(&self, seq: &Sequence<'g>, metric: Metric) -> Result<Lattice<'g>> {
        let states = seq.lattice_size();
        if states > self.state_cap as u128 {
            return Err(Error::StateSpaceCapExceeded {
                states,
                cap: self.state_cap,
            });
        }
        let mut l = Lattice::new(seq.group(), metric);
        for x in seq.terms() {
            l.push(x);
        }
        Ok(l)
    }

    /// `π(S)`; `π(∅) = {1}`.
    pub fn product_set(&self, seq: &Sequence<'_>) -> Result<ElementSet> {
        let g = seq.group();
        if g.is_abelian() {
            let p = seq.terms().fold(Element::IDENTITY, |acc, x| g.mul(acc, x));
            return Ok(BTreeSet::from([p]));
        }
        let l = self.lattice(seq, Metric::Unbounded)?;
        Ok(l.members(l.full_state()).collect())
    }

    /// `Π(S)`, the union of `π(T)` over nonempty `T | S`; `Π(∅) = ∅`.
    pub fn all_subsequence_products(&self, seq: &Sequence<'_>) -> Result<ElementSet> {
        let g = seq.group();
        if g.is_abelian() {
            return Ok(subset_products_abelian(seq));
        }
        let l = self.lattice(seq, Metric::Unbounded)?;
        let mut acc = vec![0u64; l.words()];
        for s in 1..l.state_count() {
            for (a, b) in acc.iter_mut().zip(l.set(s)) {
                *a |= b;
            }
        }
        Ok(bits(&acc).map(|i| Element(i as u32)).collect())
    }

    pub fn is_product_one(&self, seq: &Sequence<'_>) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(self.product_set(seq)?.contains(&Element::IDENTITY))
    }

    pub fn is_product_one_free(&self, seq: &Sequence<'_>) -> Result<bool> {
        Ok(!self.all_subsequence_products(seq)?.contains(&Element::IDENTITY))
    }

    pub fn is_tiny_product_one(&self, seq: &Sequence<'_>) -> Result<bool> {
        Ok(seq.cross_number() <= Fraction::ONE && self.is_product_one(seq)?)
    }

    /// Least qualifying product-one subsequence in sub-multiset order, with an
    /// explicit ordering whose product is the identity.
    pub fn find_product_one_subsequence(&self, seq: &Sequence<'_>, mode: Mode) -> Result<Option<Certificate>> {
        let g = seq.group();
        let l = self.lattice(seq, mode.metric(g))?;
        for s in 1..l.state_count() {
            if l.is_pruned(s) || !l.contains(s, Element::IDENTITY) {
                continue;
            }
            let witness = l
                .ordering_with_product(s, Element::IDENTITY)
                .expect("identity is in the state's product set");
            let cross = Sequence::from_elements(g, witness.iter().copied())?.cross_number();
            return Ok(Some(Certificate {
                of_length: witness.len(),
                witness,
                kind: mode,
                cross,
            }));
        }
        Ok(None)
    }

    pub fn is_minimal_product_one(&self, seq: &Sequence<'_>) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        let l = self.lattice(seq, Metric::Unbounded)?;
        let full = l.full_state();
        Ok(l.contains(full, Element::IDENTITY)
            && (1..full).all(|s| !l.contains(s, Element::IDENTITY)))
    }
}

fn subset_products_abelian(seq: &Sequence<'_>) -> ElementSet {
    let g = seq.group();
    let k = g.order() as usize;
    let mut reach = vec![false; k];
    let mut next = vec![false; k];
    for x in seq.terms() {
        next.copy_from_slice(&reach);
        next[x.index()] = true;
        for (y, &r) in reach.iter().enumerate() {
            if r {
                next[g.mul(Element(y as u32), x).index()] = true;
            }
        }
        std::mem::swap(&mut reach, &mut next);
    }
    (0..k).filter(|&i| reach[i]).map(|i| Element(i as u32)).collect()
}

pub fn product_set(seq: &Sequence<'_>) -> Result<ElementSet> {
    Detector::default().product_set(seq)
}

pub fn all_subsequence_products(seq: &Sequence<'_>) -> Result<ElementSet> {
    Detector::default().all_subsequence_products(seq)
}

pub fn is_product_one(seq: &Sequence<'_>) -> Result<bool> {
    Detector::default().is_product_one(seq)
}

pub fn is_product_one_free(seq: &Sequence<'_>) -> Result<bool> {
    Detector::default().is_product_one_free(seq)
}

pub fn is_tiny_product_one(seq: &Sequence<'_>) -> Result<bool> {
    Detector::default().is_tiny_product_one(seq)
}

pub fn find_product_one_subsequence(seq: &Sequence<'_>, mode: Mode) -> Result<Option<Certificate>> {
    Detector::default().find_product_one_subsequence(seq, mode)
}

pub fn is_minimal_product_one(seq: &Sequence<'_>) -> Result<bool> {
    Detector::default().is_minimal_product_one(seq)
}

/// Checks a certificate against `seq` from scratch. The stored cross number is
/// compared with a recomputed one, never trusted.
pub fn verify_certificate(
    group: &FiniteGroup,
    seq: &Sequence<'_>,
    cert: &Certificate,
) -> std::result::Result<(), RejectReason> {
    if cert.witness.is_empty() {
        return Err(RejectReason::EmptyWitness);
    }
    if cert.witness.iter().any(|&x| !group.contains(x)) {
        return Err(RejectReason::ElementOutOfRange);
    }
    if cert.of_length != cert.witness.len() {
        return Err(RejectReason::LengthMismatch);
    }
    let t = Sequence::from_elements(group, cert.witness.iter().copied())
        .map_err(|_| RejectReason::ElementOutOfRange)?;
    if !t.divides(seq) {
        return Err(RejectReason::NotASubsequence);
    }
    let product = cert.witness.iter().fold(Element::IDENTITY, |acc, &x| group.mul(acc, x));
    if product != Element::IDENTITY {
        return Err(RejectReason::ProductNotIdentity);
    }
    let cross = t.cross_number();
    match cert.kind {
        Mode::Any => {}
        Mode::Short if t.len() > group.max_order() as usize => {
            return Err(RejectReason::TooLongForShort)
        }
        Mode::Short => {}
        Mode::Tiny if cross > Fraction::ONE => return Err(RejectReason::CrossExceedsOne),
        Mode::Tiny => {}
    }
    if cross != cert.cross {
        return Err(RejectReason::CrossMismatch);
    }
    Ok(())
}

pub const ORACLE_MAX_LEN: usize = 8;

/// `π(S)` by enumerating every distinct ordering of the multiset.
pub fn oracle_product_set(seq: &Sequence<'_>) -> Result<ElementSet> {
    if seq.len() > ORACLE_MAX_LEN {
        return Err(Error::TooLong {
            len: seq.len(),
            max: ORACLE_MAX_LEN,
        });
    }
    let g = seq.group();
    let mut terms: Vec<Element> = seq.terms().collect();
    let mut out = BTreeSet::new();
    loop {
        out.insert(terms.iter().fold(Element::IDENTITY, |acc, &x| g.mul(acc, x)));
        if !next_permutation(&mut terms) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
