//! Browser bindings for the tiling engine: render built-in substitution
//! tilings to SVG, explore substitution matrices, and query the rhombic
//! edge tables. See `www/index.html` for the demo page.

use cast_core::builtins::builtin;
use cast_core::diag::DiagElem;
use cast_core::edge::{alpha_constraints, minimal_sequence, multiplier_even_config, multiplier_odd_config, CaseTag};
use cast_core::matrix::{compose, is_primitive};
use cast_core::render::{render_svg, RenderSpec};
use cast_core::tiling;
use num_bigint::BigInt;
use wasm_bindgen::prelude::*;

fn err_to_js<E: std::fmt::Display>(e: E) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Names of the built-in rule sets, one per line with seed prototiles:
/// `name: seed1,seed2,...`.
#[wasm_bindgen]
pub fn builtin_catalog() -> String {
    let mut out = String::new();
    for name in cast_core::builtins::builtin_names() {
        if let Ok(rs) = builtin(&name) {
            let seeds: Vec<String> = rs.prototiles.iter().map(|p| p.id.clone()).collect();
            out.push_str(&format!("{}: {}\n", name, seeds.join(",")));
        }
    }
    out
}

/// Render `steps` substitutions of the seed tile of a built-in rule set as
/// an SVG document.
#[wasm_bindgen]
pub fn render_builtin(name: &str, seed: &str, steps: u32) -> Result<String, JsValue> {
    let rs = builtin(name).map_err(err_to_js)?;
    let seed = if seed.is_empty() { rs.prototiles[0].id.clone() } else { seed.to_string() };
    // stop cleanly where a boundary-bisected corner composite would have to
    // be substituted (even Lancon-Billard sets)
    let mut patch = tiling::iterate(&rs, &seed, 0).map_err(err_to_js)?;
    for _ in 0..steps {
        match tiling::substitute(&rs, &patch) {
            Ok(next) => patch = next,
            Err(_) => break,
        }
    }
    render_svg(&rs, &patch, &RenderSpec::default()).map_err(err_to_js)
}

/// Substitution-matrix explorer: the composed matrix, its eigenvalue in
/// symbolic and numeric form, and primitivity.
#[wasm_bindgen]
pub fn matrix_info(n: usize, coeffs: &str) -> Result<String, JsValue> {
    let c: Vec<BigInt> = coeffs
        .split(',')
        .map(|s| s.trim().parse::<i64>().map(BigInt::from))
        .collect::<Result<_, _>>()
        .map_err(err_to_js)?;
    let m = compose(n, &c).map_err(err_to_js)?;
    let lam = DiagElem::new(n, c).map_err(err_to_js)?;
    Ok(format!(
        "{}lambda = {} = {:.6}\nprimitive: {}\n",
        m.to_grid_string(),
        lam,
        lam.value_f64(),
        is_primitive(&m)
    ))
}

/// Rhombic edge explorer: the minimal edge sequence, its inflation
/// multiplier, and the alpha inequalities for the chosen case.
#[wasm_bindgen]
pub fn edge_info(case: &str, n: usize) -> Result<String, JsValue> {
    let tag = CaseTag::parse(case).map_err(err_to_js)?;
    let seq = minimal_sequence(tag, n).map_err(err_to_js)?;
    let entries: Vec<String> = seq.entries.iter().map(|k| k.to_string()).collect();
    let mut out = format!(
        "case {} n={}\nsequence: {}{}\n",
        tag,
        n,
        entries.join("-"),
        if seq.extrapolated { " (extrapolated)" } else { "" }
    );
    if tag.even_config() {
        let eta = multiplier_even_config(&seq).map_err(err_to_js)?;
        out.push_str(&format!("eta_min = {} = {:.6}\n", eta, eta.value_f64()));
    } else {
        let eta = multiplier_odd_config(&seq).map_err(err_to_js)?;
        out.push_str(&format!("eta_min = {} = {:.6}\n", eta.table, eta.table.value));
    }
    for item in alpha_constraints(&seq) {
        out.push_str(&format!("{} {}\n", if item.holds { "ok  " } else { "FAIL" }, item.name));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_work_on_native() {
        assert!(builtin_catalog().contains("penrose_robinson"));
        let svg = render_builtin("penrose_robinson", "acute", 3).unwrap();
        assert!(svg.contains("<svg"));
        let info = matrix_info(7, "1,0,1").unwrap();
        assert!(info.contains("primitive: true"));
        let edge = edge_info("1b", 7).unwrap();
        assert!(edge.contains("eta_min"));
    }
}
