//! JSON report documents. Schemas live in `crates/cli/schema/`.

use serde::Serialize;

use coarse_embed::coarse::{ModuliReport, Violation};
use coarse_embed::kernels::{DefinitenessReport, LevyCheck, QuadratureParams};

/// Parameters echoed back in every report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho2: Option<String>,
}

/// Verdict of a definiteness or embedding command.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub command: String,
    pub verdict: String,
    pub extremal_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic_form_value: Option<f64>,
    pub tolerance: f64,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_reconstruction_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub inputs: Inputs,
}

impl VerdictReport {
    pub fn from_definiteness(command: &str, r: &DefinitenessReport, points: usize, inputs: Inputs) -> Self {
        Self {
            command: command.to_string(),
            verdict: r.verdict.as_str().to_string(),
            extremal_eigenvalue: r.extremal_eigenvalue,
            witness: r.witness.clone(),
            quadratic_form_value: r.quadratic_form_value,
            tolerance: r.tolerance_used,
            points,
            dimension: None,
            max_reconstruction_error: None,
            output: None,
            inputs,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: {}\nextremal eigenvalue: {:e}\ntolerance: {:e}\npoints: {}\n",
            self.command, self.verdict, self.extremal_eigenvalue, self.tolerance, self.points
        );
        if let Some(w) = &self.witness {
            let parts: Vec<String> = w.iter().map(|v| format!("{v:.6}")).collect();
            s.push_str(&format!("witness: [{}]\n", parts.join(", ")));
        }
        if let Some(q) = self.quadratic_form_value {
            s.push_str(&format!("quadratic form value: {q:e}\n"));
        }
        if let Some(m) = self.dimension {
            s.push_str(&format!("dimension: {m}\n"));
        }
        if let Some(e) = self.max_reconstruction_error {
            s.push_str(&format!("max reconstruction error: {e:e}\n"));
        }
        if let Some(o) = &self.output {
            s.push_str(&format!("coordinates written to {o}\n"));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuliDocument {
    pub command: String,
    pub verdict: String,
    pub points: usize,
    pub achieved_distances: Vec<f64>,
    pub compression: Vec<f64>,
    pub expansion: Vec<f64>,
    /// Largest achieved distance; `ρ₁ → ∞` cannot be decided from finite data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compression_at_largest: Option<f64>,
    pub pairs_checked: usize,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    pub inputs: Inputs,
}

impl ModuliDocument {
    pub fn new(
        moduli: &ModuliReport,
        points: usize,
        pairs_checked: usize,
        tolerance: f64,
        violations: Vec<Violation>,
        inputs: Inputs,
    ) -> Self {
        let largest = moduli.largest_scale();
        Self {
            command: "moduli".into(),
            verdict: if violations.is_empty() { "pass" } else { "fail" }.into(),
            points,
            achieved_distances: moduli.achieved_distances.clone(),
            compression: moduli.compression.clone(),
            expansion: moduli.expansion.clone(),
            largest_distance: largest.map(|l| l.0),
            compression_at_largest: largest.map(|l| l.1),
            pairs_checked,
            tolerance,
            violations,
            inputs,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "moduli: {}\npoints: {}\nachieved distances: {}\nviolations: {}\n",
            self.verdict,
            self.points,
            self.achieved_distances.len(),
            self.violations.len()
        );
        if let (Some(t), Some(c)) = (self.largest_distance, self.compression_at_largest) {
            s.push_str(&format!(
                "largest distance {t:e} with compression {c:e} (growth of rho1 is not decidable from finite data)\n"
            ));
        }
        for v in &self.violations {
            s.push_str(&format!(
                "  pair ({}, {}): d = {:e}, image = {:e}, {:?} bound {:e}\n",
                v.i, v.j, v.distance, v.value, v.side, v.bound
            ));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevyDocument {
    pub command: String,
    pub verdict: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relative_error: f64,
    pub levy_constant: f64,
    pub tolerance: f64,
    pub quadrature: QuadratureParams,
    pub inputs: Inputs,
}

impl LevyDocument {
    pub fn new(check: &LevyCheck, tolerance: f64, quadrature: QuadratureParams, inputs: Inputs) -> Self {
        let rel = check.relative_error();
        Self {
            command: "levy-check".into(),
            verdict: if rel <= tolerance { "pass" } else { "fail" }.into(),
            lhs: check.lhs,
            rhs: check.rhs,
            relative_error: rel,
            levy_constant: check.levy_constant,
            tolerance,
            quadrature,
            inputs,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "levy-check: {}\nlhs x^alpha: {:.12}\nrhs c_alpha * integral: {:.12}\nrelative error: {:e}\nc_alpha: {:.12}\n",
            self.verdict, self.lhs, self.rhs, self.relative_error, self.levy_constant
        )
    }
}
