//! Browser bindings for a few `simrep` operations. Every function takes the
//! same plain-text formats as the command line tool and returns text.

use simrep::graph::PartialOrientation;
use simrep::io::{parse_graph, parse_partial_orientation, parse_perm_diagram, write_orientation, write_perm_diagram};
use simrep::mdecomp::MdTree;
use simrep::orient::{orient_ext, recognize_comparability};
use simrep::perm::rep_ext_perm;
use wasm_bindgen::prelude::*;

pub fn decompose_text(graph: &str) -> Result<String, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    if g.n() == 0 {
        return Ok(String::new());
    }
    let t = MdTree::build(&g).map_err(|e| e.to_string())?;
    let verdict = if recognize_comparability(&g) { "COMPARABILITY" } else { "NOT-COMPARABILITY" };
    Ok(format!("{verdict}\n{}", t.dump(&g)))
}

pub fn orient_ext_text(graph: &str, partial: &str) -> Result<String, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    let w = if partial.trim().is_empty() {
        PartialOrientation::empty()
    } else {
        parse_partial_orientation(&g, partial).map_err(|e| e.to_string())?
    };
    Ok(match orient_ext(&g, &w) {
        Ok(o) => write_orientation(&g, &o),
        Err(e) => format!("INFEASIBLE {}\n", e.describe(&g)),
    })
}

pub fn rep_ext_perm_text(graph: &str, partial: &str) -> Result<String, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    let d = parse_perm_diagram(&g, partial).map_err(|e| e.to_string())?;
    Ok(match rep_ext_perm(&g, &d) {
        Ok(Some(full)) => write_perm_diagram(&g, &full),
        Ok(None) => "INFEASIBLE no-extension\n".into(),
        Err(e) => format!("INFEASIBLE {e}\n"),
    })
}

/// Modular decomposition tree and comparability verdict.
#[wasm_bindgen]
pub fn decompose(graph: &str) -> Result<String, JsValue> {
    decompose_text(graph).map_err(|e| JsValue::from_str(&e))
}

/// Transitive orientation extending the given arcs, one `u v` per line.
#[wasm_bindgen(js_name = orientExt)]
pub fn orient_ext_js(graph: &str, partial: &str) -> Result<String, JsValue> {
    orient_ext_text(graph, partial).map_err(|e| JsValue::from_str(&e))
}

/// Permutation diagram extending a two-line partial diagram.
#[wasm_bindgen(js_name = repExtPerm)]
pub fn rep_ext_perm_js(graph: &str, partial: &str) -> Result<String, JsValue> {
    rep_ext_perm_text(graph, partial).map_err(|e| JsValue::from_str(&e))
}
