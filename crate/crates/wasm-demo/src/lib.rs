//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Build with `wasm-pack build --target web --out-dir www/pkg`.

use hombound::boundary::{quotient_scan, sample_curve, theorem_setup, TheoremSetup};
use hombound::graph::{parse_graph_auto, parse_weighted};
use hombound::random::RngSeed;
use hombound::{density, weighted_density, Rational, Scalar};
use wasm_bindgen::prelude::*;

/// A stringent pair with its weights and constants, kept between calls.
#[wasm_bindgen]
pub struct Curve {
    setup: TheoremSetup,
}

impl Curve {
    pub fn build(n: usize, seed: u64) -> Result<Curve, String> {
        theorem_setup(n, RngSeed(seed)).map(|setup| Curve { setup }).map_err(|e| e.to_string())
    }

    /// `[x0, psi0, x1, psi1, ...]` in increasing `x`.
    pub fn points(&self, resolution: usize, depth: usize, dyadic_level: u32) -> Result<Vec<f64>, String> {
        let series = sample_curve(&self.setup, resolution, depth, dyadic_level).map_err(|e| e.to_string())?;
        Ok(series.points.iter().flat_map(|p| [p.x, p.psi]).collect())
    }

    /// `[j, h, M_j, ...]` for `j` in `j_min..=j_max`.
    pub fn quotient_rows(&self, j_min: u32, j_max: u32, depth: usize) -> Result<Vec<f64>, String> {
        let q = quotient_scan(&self.setup, j_min, j_max, depth).map_err(|e| e.to_string())?;
        Ok(q.iter().flat_map(|r| [f64::from(r.j), r.h, r.max_quotient]).collect())
    }
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(constructor)]
    pub fn new(n: usize, seed: u64) -> Result<Curve, JsError> {
        Curve::build(n, seed).map_err(|e| JsError::new(&e))
    }

    pub fn sample(&self, resolution: usize, depth: usize, dyadic_level: u32) -> Result<Vec<f64>, JsError> {
        self.points(resolution, depth, dyadic_level).map_err(|e| JsError::new(&e))
    }

    pub fn quotients(&self, j_min: u32, j_max: u32, depth: usize) -> Result<Vec<f64>, JsError> {
        self.quotient_rows(j_min, j_max, depth).map_err(|e| JsError::new(&e))
    }

    /// `[alpha1, alpha2, beta1, beta2, gamma]`.
    pub fn constants(&self) -> Vec<f64> {
        let s = &self.setup;
        vec![s.alpha1, s.alpha2, s.beta1, s.beta2, s.gamma]
    }

    #[wasm_bindgen(js_name = setupJson)]
    pub fn setup_json(&self) -> String {
        self.setup.to_json()
    }
}

/// `t(F; G)` as `p/q`. A target containing `mu:` is read as a weighted
/// graph.
pub fn density_text(pattern: &str, target: &str) -> Result<String, String> {
    let f = parse_graph_auto(pattern).map_err(|e| format!("pattern: {e}"))?;
    if target.contains("mu:") {
        let w = parse_weighted::<Rational>(target).map_err(|e| format!("target: {e}"))?;
        return weighted_density(&f, &w).map(|t| t.render()).map_err(|e| e.to_string());
    }
    let g = parse_graph_auto(target).map_err(|e| format!("target: {e}"))?;
    density(&f, &g).map(|t| t.render()).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = inducedDensity)]
pub fn induced_density(pattern: &str, target: &str) -> Result<String, JsError> {
    density_text(pattern, target).map_err(|e| JsError::new(&e))
}
