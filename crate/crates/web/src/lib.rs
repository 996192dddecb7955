//! Browser bindings. Every export returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use zslab_core::invariants::{compute, Invariant, InvariantOptions};
use zslab_core::literal::{load_group, parse_sequence};
use zslab_core::products::{Detector, Mode};
use zslab_core::search::SearchConfig;
use zslab_core::sequence::DEFAULT_STATE_CAP;
use zslab_core::smooth::smooth_witness;
use zslab_core::theorems::t31_threshold;
use zslab_core::{Fraction, Result};

/// Node budget for invariant searches in the page; keeps the tab responsive.
const WEB_NODE_CAP: u64 = 2_000_000;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e.to_string()}).to_string(),
    }
}

/// Verdicts and certificates for `seq` over `group`, plus the smooth witness
/// when the group is cyclic.
#[wasm_bindgen]
pub fn check_sequence(group: &str, seq: &str) -> String {
    respond(check(group, seq))
}

fn check(group: &str, seq: &str) -> Result<Value> {
    let g = load_group(group)?;
    let s = parse_sequence(&g, seq)?;
    let det = Detector::new(DEFAULT_STATE_CAP);
    let mut verdicts = serde_json::Map::new();
    for mode in [Mode::Any, Mode::Short, Mode::Tiny] {
        let cert = det.find_product_one_subsequence(&s, mode)?;
        verdicts.insert(
            mode.to_string(),
            json!({"free": cert.is_none(), "certificate": cert.map(|c| c.to_json(&g))}),
        );
    }
    let smooth = if g.order() >= 2 && g.max_order() == g.order() && !s.is_empty() {
        smooth_witness(&s)?.map(|w| w.to_json(&g))
    } else {
        None
    };
    Ok(json!({
        "group": g.name(),
        "sequence": s.to_literal(),
        "length": s.len(),
        "cross": s.cross_number(),
        "verdicts": verdicts,
        "smooth": smooth,
    }))
}

/// One of d, eta, ti, k, K.
#[wasm_bindgen]
pub fn compute_invariant(group: &str, invariant: &str) -> String {
    respond(invariant_json(group, invariant))
}

fn invariant_json(group: &str, invariant: &str) -> Result<Value> {
    let g = load_group(group)?;
    let inv: Invariant = invariant.parse()?;
    let opts = InvariantOptions {
        search: SearchConfig {
            node_cap: WEB_NODE_CAP,
            ..Default::default()
        },
        reduce_by_automorphisms: true,
    };
    let mut v = compute(&g, inv, &opts)?.to_json(&g);
    // wall-clock is not available without a js clock
    if let Value::Object(m) = &mut v {
        m.remove("elapsed_ms");
    }
    Ok(v)
}

/// Smoothness length thresholds for cyclic groups of order `3..=n_max`.
#[wasm_bindgen]
pub fn threshold_curve(n_max: u32) -> String {
    respond(curve(n_max.min(2000) as u64))
}

fn curve(n_max: u64) -> Result<Value> {
    let rows = (3..=n_max)
        .map(|n| {
            let t31 = t31_threshold(n)?;
            Ok(json!({
                "n": n,
                "half": Fraction::new(n + 1, 2).to_f64(),
                "prime_factor": t31.to_f64(),
                "nine_tenths": Fraction::new(9 * n, 10).to_f64(),
                "max_tiny_free": n - 1,
                "prime_factor_vacuous": t31 > Fraction::new(n - 1, 1),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"rows": rows}))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn exports_return_json() {
        let v = parse(check_sequence("C6", "1^2 4"));
        assert_eq!(v["verdicts"]["tiny"]["free"], false);
        let v = parse(check_sequence("C6", "1^5"));
        assert_eq!(v["smooth"]["generator"], "1");
        assert!(parse(check_sequence("C6", "1^")).get("error").is_some());

        assert_eq!(parse(compute_invariant("D4", "ti"))["value"], 8);
        assert!(parse(compute_invariant("D4", "x")).get("error").is_some());

        let v = parse(threshold_curve(20));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 18);
        let r12 = rows.iter().find(|r| r["n"] == 12).unwrap();
        assert_eq!((r12["prime_factor"].as_f64(), r12["prime_factor_vacuous"].as_bool()), (Some(12.5), Some(true)));
    }
}
