use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use isospec::coherent::{deformed_coherent_wavefunction, physical_uncertainties, DisplacementParameter};
use isospec::deform::Deformation;
use isospec::{BasisSet64, Result};

/// One row of a large-lambda scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub lambda: f64,
    /// `sup |φ_λ|`
    pub sup_phi: f64,
    /// `|⟨ψ₀|θ₀⟩ − 1|`
    pub u00_defect: f64,
    /// `‖θ₀ − ψ₀‖₂`
    pub theta0_l2: f64,
    /// `Δx·Δp` of the deformed coherent state
    pub uncertainty_product: f64,
}

pub const SCAN_HEADERS: [&str; 5] = ["lambda", "sup_phi", "u00_defect", "theta0_l2", "uncertainty_product"];

pub fn scan_row(basis: &BasisSet64, lambda: f64, z: DisplacementParameter<f64>, truncation: usize) -> Result<ScanRow> {
    let d = Deformation::new(basis, lambda)?;
    let psi0 = basis.eigenfunction(0);
    let theta0 = d.state(0);
    let psi = deformed_coherent_wavefunction(z, &d, truncation)?;
    Ok(ScanRow {
        lambda,
        sup_phi: d.phi().sup_norm(),
        u00_defect: (psi0.inner(theta0)? - 1.0).abs(),
        theta0_l2: theta0.l2_distance(psi0)?,
        uncertainty_product: physical_uncertainties(&psi)?.product,
    })
}

/// Rows in input order; an empty list yields an empty table.
pub fn limit_scan(
    basis: &BasisSet64,
    lambdas: &[f64],
    z: DisplacementParameter<f64>,
    truncation: usize,
) -> Result<Vec<ScanRow>> {
    lambdas.par_iter().map(|&l| scan_row(basis, l, z, truncation)).collect()
}

pub fn columns(rows: &[ScanRow]) -> Vec<Vec<f64>> {
    vec![
        rows.iter().map(|r| r.lambda).collect(),
        rows.iter().map(|r| r.sup_phi).collect(),
        rows.iter().map(|r| r.u00_defect).collect(),
        rows.iter().map(|r| r.theta0_l2).collect(),
        rows.iter().map(|r| r.uncertainty_product).collect(),
    ]
}
