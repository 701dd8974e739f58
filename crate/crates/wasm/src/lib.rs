//! Browser bindings for the demo page in `www/`. Every export takes and
//! returns JSON strings so the page needs no generated TypeScript types.
//!
//! The `*_json` functions hold the logic and are plain Rust, which keeps them
//! testable without a browser.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rrorder::order::{MeetResult, RrRing};
use rrorder::plring::{pl_meet_detailed, pl_restrict, FuncLiteral, PwPolyFunc, RatLit, Q};
use rrorder::zkring::{CongruenceRing, RingDescriptor, SupResult};

fn parse<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}

fn ring(descriptor: &str) -> Result<CongruenceRing, String> {
    parse::<RingDescriptor>("ring", descriptor)?.build().map_err(|e| e.to_string())
}

fn coords(v: &[usize]) -> Vec<usize> {
    v.iter().map(|c| c + 1).collect()
}

/// Class, minimal primes, idempotent atoms and the weakly Baer hull of a
/// congruence ring.
pub fn classify_json(descriptor: &str) -> Result<String, String> {
    let r = ring(descriptor)?;
    let c = r.classify();
    let witnesses: Vec<Value> =
        c.witnesses.iter().filter_map(|w| w.element.as_ref()).map(|e| json!(r.to_original(e))).collect();
    let hull = r.wb_hull().map_err(|e| e.to_string())?;
    let out = json!({
        "class": c.class,
        "width": r.width(),
        "minimal_primes": r.minimal_primes().iter().map(|p| coords(&p.coordinates)).collect::<Vec<_>>(),
        "idempotent_atoms": r.idempotents().atom_vectors(),
        "witnesses": witnesses,
        "hull_basis": hull.ring.basis(),
        "hull_adjoined": hull.summary().adjoined,
    });
    Ok(out.to_string())
}

/// Meet and sup of two elements, given in original coordinates.
pub fn meet_json(descriptor: &str, a: &str, b: &str) -> Result<String, String> {
    let r = ring(descriptor)?;
    let a: Vec<i64> = parse("a", a)?;
    let b: Vec<i64> = parse("b", b)?;
    let ea = r.from_original(&a).map_err(|e| e.to_string())?;
    let eb = r.from_original(&b).map_err(|e| e.to_string())?;
    let meet = match r.exact_meet(&ea, &eb).map_err(|e| e.to_string())? {
        MeetResult::Meet(c) => json!({ "verdict": "meet", "value": r.to_original(&c) }),
        MeetResult::Zero => json!({ "verdict": "zero", "value": r.to_original(&r.zero()) }),
        MeetResult::Inconclusive(_) => json!({ "verdict": "none" }),
    };
    let sup = match r.rr_sup(&ea, &eb).map_err(|e| e.to_string())? {
        SupResult::Sup(c) => json!({ "exists": true, "value": r.to_original(&c) }),
        SupResult::NoSup(i) => json!({ "exists": false, "obstruction_coordinate": i + 1 }),
    };
    Ok(json!({ "meet": meet, "sup": sup, "class": r.classify().class }).to_string())
}

fn func(text: &str, what: &str) -> Result<PwPolyFunc, String> {
    PwPolyFunc::from_literal(&parse::<FuncLiteral>(what, text)?).map_err(|e| format!("{what}: {e}"))
}

fn samples(f: &PwPolyFunc, n: usize) -> Vec<[f64; 2]> {
    let (lo, hi) = f.domain();
    let step = (&hi - &lo) / Q::from_integer(n.max(1).into());
    (0..=n)
        .map(|i| {
            let x = &lo + &step * Q::from_integer(i.into());
            let y = f.eval(&x).expect("sample inside the domain");
            [x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN)]
        })
        .collect()
}

fn rat(x: &Q) -> Value {
    json!(RatLit::from(x))
}

/// Exact meet of two piecewise polynomials plus `n + 1` evenly spaced samples
/// of each for plotting. With `restrict` set to `[lo, hi]` the meet of the
/// restrictions is reported too.
pub fn pl_meet_json(f: &str, g: &str, n: usize, restrict: Option<&str>) -> Result<String, String> {
    let (f, g) = (func(f, "f")?, func(g, "g")?);
    let d = pl_meet_detailed(&f, &g).map_err(|e| e.to_string())?;
    let mut out = json!({
        "meet": d.meet.literal(),
        "is_zero": d.meet.is_zero(),
        "support": d.support.iter().map(|(a, b)| json!([rat(a), rat(b)])).collect::<Vec<_>>(),
        "samples": { "f": samples(&f, n), "g": samples(&g, n), "meet": samples(&d.meet, n) },
    });
    if let Some(window) = restrict {
        let [lo, hi]: [RatLit; 2] = parse("restrict", window)?;
        let (lo, hi) = (lo.value().map_err(|e| e.to_string())?, hi.value().map_err(|e| e.to_string())?);
        let cut = |h: &PwPolyFunc| pl_restrict(h, &lo, &hi).map_err(|e| e.to_string());
        let local = pl_meet_detailed(&cut(&f)?, &cut(&g)?).map_err(|e| e.to_string())?.meet;
        let image = cut(&d.meet)?;
        out["restricted"] = json!({
            "meet_of_restrictions": local.literal(),
            "restriction_of_meet": image.literal(),
            "preserved": local == image,
            "samples": samples(&local, n),
        });
    }
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn classify(descriptor: &str) -> Result<String, JsError> {
    classify_json(descriptor).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn meet(descriptor: &str, a: &str, b: &str) -> Result<String, JsError> {
    meet_json(descriptor, a, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pl_meet(f: &str, g: &str, n: usize, restrict: Option<String>) -> Result<String, JsError> {
    pl_meet_json(f, g, n, restrict.as_deref()).map_err(|e| JsError::new(&e))
}
