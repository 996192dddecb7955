//! Smooth sequences over cyclic groups.
//!
//! Over a cyclic group of order `n` with generator `g`, write every term as
//! `g^e` with `e ∈ [1, n]`. `S` is g-smooth when the exponents sum to less
//! than `n` and `Π(S)` is exactly `{g, g², …, g^sum}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::group::{Element, FiniteGroup};
use crate::products::all_subsequence_products;
use crate::sequence::Sequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothWitness {
    pub generator: Element,
    pub exponents: Vec<u32>,
    pub exponent_sum: u32,
    /// `g, g², …, g^exponent_sum` in that order.
    pub interval: Vec<Element>,
}

impl SmoothWitness {
    /// Recomputes everything from `seq`.
    pub fn validate(&self, seq: &Sequence<'_>) -> bool {
        let n = seq.group().order();
        is_g_smooth(seq, self.generator).ok().flatten().as_ref() == Some(self)
            && self.exponent_sum < n
            && seq.cross_number() < Fraction::ONE
    }

    pub fn to_json(&self, group: &FiniteGroup) -> serde_json::Value {
        let lit = |x: Element| crate::literal::format_element(group, x);
        serde_json::json!({
            "generator": lit(self.generator),
            "exponents": self.exponents,
            "exponent_sum": self.exponent_sum,
            "interval": self.interval.iter().map(|&x| lit(x)).collect::<Vec<_>>(),
        })
    }
}

fn check_cyclic(group: &FiniteGroup) -> Result<u32> {
    let n = group.order();
    if n < 2 || group.max_order() != n {
        return Err(Error::NotCyclic);
    }
    Ok(n)
}

fn check_generator(group: &FiniteGroup, g: Element) -> Result<u32> {
    let n = check_cyclic(group)?;
    group.check(g)?;
    if group.order_of(g) != n {
        return Err(Error::NotAGenerator(g));
    }
    Ok(n)
}

/// Generators of a cyclic group in encoding order.
pub fn generators(group: &FiniteGroup) -> Result<Vec<Element>> {
    let n = check_cyclic(group)?;
    Ok(group.elements().filter(|&x| group.order_of(x) == n).collect())
}

/// `e ∈ [1, n]` with `g^e = t` for every term `t`, sorted.
pub fn exponent_list(seq: &Sequence<'_>, g: Element) -> Result<Vec<u32>> {
    let group = seq.group();
    let n = check_generator(group, g)?;
    // log[g^e] = e, with the identity at n
    let mut log = vec![0u32; n as usize];
    let mut p = g;
    for e in 1..=n {
        log[p.index()] = e;
        p = group.mul(p, g);
    }
    let mut out: Vec<u32> = seq.terms().map(|t| log[t.index()]).collect();
    out.sort_unstable();
    Ok(out)
}

pub fn is_g_smooth(seq: &Sequence<'_>, g: Element) -> Result<Option<SmoothWitness>> {
    let exponents = exponent_list(seq, g)?;
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let n = seq.group().order();
    let sum: u64 = exponents.iter().map(|&e| e as u64).sum();
    if sum >= n as u64 {
        return Ok(None);
    }
    let sum = sum as u32;
    let group = seq.group();
    let interval: Vec<Element> = (1..=sum).map(|e| group.pow(g, e as u64)).collect();
    let products = all_subsequence_products(seq)?;
    let matches = products.len() == interval.len() && interval.iter().all(|x| products.contains(x));
    Ok(matches.then_some(SmoothWitness {
        generator: g,
        exponents,
        exponent_sum: sum,
        interval,
    }))
}

/// First witness over the generators in encoding order.
pub fn smooth_witness(seq: &Sequence<'_>) -> Result<Option<SmoothWitness>> {
    for g in generators(seq.group())? {
        if let Some(w) = is_g_smooth(seq, g)? {
            return Ok(Some(w));
        }
    }
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(None)
}

/// Every generator for which `seq` is smooth.
pub fn all_smooth_witnesses(seq: &Sequence<'_>) -> Result<Vec<SmoothWitness>> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut out = Vec::new();
    for g in generators(seq.group())? {
        out.extend(is_g_smooth(seq, g)?);
    }
    Ok(out)
}

pub fn is_smooth(seq: &Sequence<'_>) -> Result<bool> {
    Ok(smooth_witness(seq)?.is_some())
}

/// `(k(S), Σ exponents / n)`.
pub fn le1_bound(seq: &Sequence<'_>, g: Element) -> Result<(Fraction, Fraction)> {
    let exponents = exponent_list(seq, g)?;
    let n = seq.group().order() as u64;
    let sum: u64 = exponents.iter().map(|&e| e as u64).sum();
    Ok((seq.cross_number(), Fraction::new(sum, n)))
}
