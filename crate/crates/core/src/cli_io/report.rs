//! JSON verification report.

use serde::Serialize;

use crate::verifier::{FdSummary, Grid, NegativeControl, ResidualReport};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteInfo {
    pub name: String,
    pub family: String,
    pub mass: f64,
    pub threshold: f64,
    pub gauge_samples: usize,
    pub baseline_max_residual: Option<f64>,
}

/// Top-level keys are fixed: suite, grid, fd, max_residual, mean_residual,
/// convergence_order, pass, negative_controls.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: SuiteInfo,
    pub grid: Grid,
    pub fd: FdSummary,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub convergence_order: Option<f64>,
    pub pass: bool,
    pub negative_controls: Vec<NegativeControl>,
}

impl Report {
    pub fn new(suite: SuiteInfo, r: &ResidualReport, negative_controls: Vec<NegativeControl>) -> Self {
        let pass = r.pass && negative_controls.iter().all(|c| c.detected);
        Self {
            suite,
            grid: r.grid,
            fd: FdSummary::from(&r.fd),
            max_residual: r.max_norm,
            mean_residual: r.mean_norm,
            convergence_order: r.convergence_order,
            pass,
            negative_controls,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
