//! Three operations of the `gentle` crate exposed to JavaScript. Each takes
//! the text of an algebra file and returns a JSON document.

use gentle::algebra::{parse_algebra, GentleAlgebra};
use gentle::higher::{classify as classify_algebra, HigherAr};
use gentle::surface::SurfaceModel;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const DEPTH: usize = 64;

fn parse(text: &str) -> Result<GentleAlgebra, String> {
    parse_algebra(text).map_err(|e| e.to_string())
}

fn render(v: Result<Value, String>) -> Result<String, JsValue> {
    v.map(|v| serde_json::to_string_pretty(&v).expect("serializable"))
        .map_err(|e| JsValue::from_str(&e))
}

pub fn classify_json(text: &str) -> Result<Value, String> {
    let alg = parse(text)?;
    let c = classify_algebra(&alg, DEPTH).map_err(|e| e.to_string())?;
    Ok(json!({ "summary": c.summary(), "details": c }))
}

pub fn surface_json(text: &str) -> Result<Value, String> {
    let alg = parse(text)?;
    let s = SurfaceModel::build(&alg).map_err(|e| e.to_string())?;
    serde_json::to_value(s.summary()).map_err(|e| e.to_string())
}

pub fn tau_closure_json(text: &str) -> Result<Value, String> {
    let alg = parse(text)?;
    let h = HigherAr::new(&alg, DEPTH).map_err(|e| e.to_string())?;
    let n = h.gldim();
    let c = h.tau_closure(n, 6).map_err(|e| e.to_string())?;
    let modules: Vec<String> = c.modules.iter().map(|w| w.display(&alg)).collect();
    Ok(json!({
        "n": n,
        "infinite": c.infinite,
        "modules": modules,
        "admissible": c.admissible,
        "partial": c.partial,
        "rigid": c.rigid,
        "maximal": c.maximal,
    }))
}

#[wasm_bindgen]
pub fn classify(text: &str) -> Result<String, JsValue> {
    render(classify_json(text))
}

#[wasm_bindgen]
pub fn surface(text: &str) -> Result<String, JsValue> {
    render(surface_json(text))
}

#[wasm_bindgen]
pub fn tau_closure(text: &str) -> Result<String, JsValue> {
    render(tau_closure_json(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = include_str!("../../gentle/fixtures/square.alg");

    #[test]
    fn square_operations() {
        let c = classify_json(SQUARE).unwrap();
        assert_eq!(
            c["summary"],
            "gldim=2; tau2-finite=yes; n-complete=no (walk a·c source 4 degree 2)"
        );
        assert_eq!(surface_json(SQUARE).unwrap()["b"], 2);
        assert_eq!(
            tau_closure_json(SQUARE).unwrap()["modules"]
                .as_array()
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn errors_are_messages() {
        assert!(classify_json("vertices: 1\narrow: a 1 1\n").is_err());
        let two_cycle = "vertices: 1 2\narrow: a 1 2\narrow: b 2 1\nrel: a b\nrel: b a\n";
        assert_eq!(
            tau_closure_json(two_cycle).unwrap_err(),
            "global dimension is infinite"
        );
    }
}
