//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every export takes and returns plain strings (graph6, comma lists, JSON) so
//! the page needs no generated TypeScript types. The `*_json` functions carry
//! the logic and are tested natively; the exported wrappers only convert
//! errors to `JsValue`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use loop_energy::energy::{
    energy_looped, energy_simple, family_energy_closed_form, verify_theorem2,
};
use loop_energy::graph6::{from_graph6, to_graph6};
use loop_energy::{Graph, LoopedGraph};

#[derive(Serialize)]
struct Analysis {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
    sigma: usize,
    shift: f64,
    spectrum_simple: Vec<f64>,
    spectrum_looped: Vec<f64>,
    e_simple: f64,
    e_looped: f64,
    gap: f64,
}

#[derive(Serialize)]
struct FamilyReport {
    p: usize,
    q: usize,
    order: usize,
    sigma: usize,
    threshold: f64,
    min_abs: Option<f64>,
    condition_holds: bool,
    lhs: f64,
    rhs: f64,
    closed_form: f64,
    gap: f64,
    energies_match: bool,
    spectrum: Vec<f64>,
}

fn parse_loops(list: &str) -> Result<Vec<usize>, String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("invalid loop index '{s}'")))
        .collect()
}

fn looped_from(graph6: &str, loops: &str) -> Result<LoopedGraph, String> {
    let g = from_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    g.with_loops(parse_loops(loops)?).map_err(|e| e.to_string())
}

/// Spectra and both energies of a graph with loops on `loops`.
pub fn analyze_json(graph6: &str, loops: &str) -> Result<String, String> {
    let g = looped_from(graph6, loops)?;
    let simple = energy_simple(g.base()).map_err(|e| e.to_string())?;
    let looped = energy_looped(&g).map_err(|e| e.to_string())?;
    let a = Analysis {
        graph6: to_graph6(g.base()),
        n: g.order(),
        edges: g.base().edges().collect(),
        loops: g.loops().collect(),
        sigma: g.sigma(),
        shift: looped.shift,
        spectrum_simple: simple.spectrum.values().to_vec(),
        spectrum_looped: looped.spectrum.values().to_vec(),
        e_simple: simple.energy,
        e_looped: looped.energy,
        gap: looped.energy - simple.energy,
    };
    serde_json::to_string(&a).map_err(|e| e.to_string())
}

/// Checks `E(pG ∪ qG^l) = (p+q)·E(G)` for the loopless graph `graph6`.
pub fn family_json(graph6: &str, p: usize, q: usize) -> Result<String, String> {
    let g = from_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    let v = verify_theorem2(&g, p, q).map_err(|e| e.to_string())?;
    let base = energy_simple(&g).map_err(|e| e.to_string())?.spectrum;
    let h = LoopedGraph::family(&g, p, q);
    let spectrum = energy_looped(&h).map_err(|e| e.to_string())?.spectrum;
    let report = FamilyReport {
        p,
        q,
        order: h.order(),
        sigma: h.sigma(),
        threshold: p.max(q) as f64 / (p + q) as f64,
        min_abs: base.min_abs().map(f64::abs),
        condition_holds: v.condition_holds,
        lhs: v.lhs_energy,
        rhs: v.rhs_energy,
        closed_form: family_energy_closed_form(&base, p, q),
        gap: v.abs_gap,
        energies_match: v.energies_match(),
        spectrum: spectrum.values().to_vec(),
    };
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// graph6 of a named family: `complete`, `cycle`, `path` or `empty`.
pub fn preset_graph6(kind: &str, n: usize) -> Result<String, String> {
    let g = match kind {
        "complete" => Graph::complete(n),
        "cycle" => Graph::cycle(n),
        "path" => Graph::path(n),
        "empty" => Ok(Graph::empty(n)),
        other => return Err(format!("unknown family '{other}'")),
    }
    .map_err(|e| e.to_string())?;
    Ok(to_graph6(&g))
}

/// Adds the edge `{u, v}` if absent, removes it otherwise.
pub fn toggle_edge_graph6(graph6: &str, u: usize, v: usize) -> Result<String, String> {
    let g = from_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let key = (u.min(v), u.max(v));
    match edges.iter().position(|&e| e == key) {
        Some(i) => {
            edges.remove(i);
        }
        None => edges.push(key),
    }
    let h = Graph::from_edges(g.order(), edges).map_err(|e| e.to_string())?;
    Ok(to_graph6(&h))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(graph6: &str, loops: &str) -> Result<String, JsValue> {
    js(analyze_json(graph6, loops))
}

#[wasm_bindgen]
pub fn family(graph6: &str, p: usize, q: usize) -> Result<String, JsValue> {
    js(family_json(graph6, p, q))
}

#[wasm_bindgen]
pub fn preset(kind: &str, n: usize) -> Result<String, JsValue> {
    js(preset_graph6(kind, n))
}

#[wasm_bindgen]
pub fn toggle_edge(graph6: &str, u: usize, v: usize) -> Result<String, JsValue> {
    js(toggle_edge_graph6(graph6, u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn analyze_example_union() {
        let v: Value = serde_json::from_str(&analyze_json("EwCW", "3,4,5").unwrap()).unwrap();
        assert_eq!(v["sigma"], 3);
        assert_eq!(v["shift"], 0.5);
        assert!((v["e_looped"].as_f64().unwrap() - 8.0).abs() < 1e-9);
        assert!((v["e_simple"].as_f64().unwrap() - 8.0).abs() < 1e-9);
        assert!(analyze_json("EwCW", "6").is_err());
        assert!(analyze_json("~", "").is_err());
        assert!(analyze_json("Bw", "x").is_err());
    }

    #[test]
    fn family_of_triangle() {
        let v: Value = serde_json::from_str(&family_json("Bw", 2, 1).unwrap()).unwrap();
        assert_eq!(v["order"], 9);
        assert_eq!(v["sigma"], 3);
        assert_eq!(v["condition_holds"], true);
        assert!((v["lhs"].as_f64().unwrap() - 12.0).abs() < 1e-9);
        assert!((v["closed_form"].as_f64().unwrap() - 12.0).abs() < 1e-9);
        assert!(family_json("Bw", 0, 0).is_err());
    }

    #[test]
    fn presets_and_editing() {
        assert_eq!(preset_graph6("complete", 3).unwrap(), "Bw");
        assert!(preset_graph6("cycle", 2).is_err());
        assert!(preset_graph6("star", 3).is_err());
        let p3 = preset_graph6("path", 3).unwrap();
        assert_eq!(toggle_edge_graph6(&p3, 2, 0).unwrap(), "Bw");
        assert_eq!(toggle_edge_graph6("Bw", 0, 2).unwrap(), p3);
        assert!(toggle_edge_graph6("Bw", 1, 1).is_err());
    }
}
