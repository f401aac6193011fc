use serde::Serialize;

use isospec::coherent::{
    deformed_coherent_wavefunction, squeezed_coefficients, synthesize, DisplacementParameter, SqueezeParameter,
};
use isospec::deform::{check_lambda, Deformation};
use isospec::io::{self, GridSpec, StateDocument, StateMetadata};
use isospec::oscillator::BasisTag;
use isospec::verify::{assemble_hamiltonian, full_report, Tolerances};
use isospec::{BasisSet64, ComplexFunction64, Grid64, OverlapMatrix64, VerificationReport64};

use crate::config::{CommandKind, Format, Route, RunConfig};
use crate::error::CliError;
use crate::scan::{self, ScanRow, SCAN_HEADERS};

/// Serialized artifact plus the number of verification violations it records.
#[derive(Debug)]
pub struct Artifact {
    pub bytes: Vec<u8>,
    pub violations: usize,
}

impl Artifact {
    fn data(bytes: Vec<u8>) -> Self {
        Self { bytes, violations: 0 }
    }
}

pub const DEFORM_HEADERS: [&str; 5] = ["x", "phi", "W_hat", "V_lambda", "theta0"];
pub const SPECTRUM_HEADERS: [&str; 4] = ["n", "analytic", "base", "deformed"];

#[derive(Debug, Serialize)]
struct DeformDocument {
    lambda: f64,
    grid: GridSpec,
    x: Vec<f64>,
    phi: Vec<f64>,
    #[serde(rename = "W_hat")]
    w_hat: Vec<f64>,
    #[serde(rename = "V_lambda")]
    v_lambda: Vec<f64>,
    theta0: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct SpectrumDocument {
    lambda: f64,
    analytic: Vec<f64>,
    base: Vec<f64>,
    deformed: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct ScanDocument<'a> {
    z: [f64; 2],
    #[serde(rename = "N")]
    truncation: usize,
    rows: &'a [ScanRow],
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(isospec::Error::from)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn csv_bytes(headers: &[&str], columns: &[Vec<f64>]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    io::write_columns_csv(&mut buf, headers, columns)?;
    Ok(buf)
}

pub fn build_basis(cfg: &RunConfig) -> Result<BasisSet64, CliError> {
    let grid = Grid64::new(cfg.x_min, cfg.x_max, cfg.n_points)?;
    Ok(BasisSet64::oscillator(grid, cfg.n_max)?)
}

fn displacement(cfg: &RunConfig) -> DisplacementParameter<f64> {
    DisplacementParameter::new(cfg.z_re, cfg.z_im)
}

fn state_metadata(cfg: &RunConfig, grid: &Grid64) -> StateMetadata {
    StateMetadata {
        lambda: cfg.lambda,
        z: [cfg.z_re, cfg.z_im],
        xi: [cfg.xi_r, cfg.xi_phi],
        truncation: cfg.truncation,
        grid: GridSpec::from(grid),
    }
}

fn state_bytes(cfg: &RunConfig, psi: &ComplexFunction64, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            io::write_state_csv(&mut buf, psi)?;
            Ok(buf)
        }
        Format::Json => json_bytes(&StateDocument::new(state_metadata(cfg, psi.grid()), psi)),
    }
}

/// Validates the inputs, runs one command and serializes its result.
pub fn execute(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let format = cfg.effective_format()?;
    match cfg.command {
        CommandKind::LimitScan => cfg.lambdas.iter().try_for_each(|&l| check_lambda(l))?,
        _ => check_lambda(cfg.lambda)?,
    }
    let basis = build_basis(cfg)?;
    match cfg.command {
        CommandKind::Deform => deform(cfg, &basis, format),
        CommandKind::Spectrum => spectrum(cfg, &basis, format),
        CommandKind::Unitary => unitary(cfg, &basis, format),
        CommandKind::Coherent => {
            let d = Deformation::new(&basis, cfg.lambda)?;
            let psi = deformed_coherent_wavefunction(displacement(cfg), &d, cfg.truncation)?;
            state_bytes(cfg, &psi, format).map(Artifact::data)
        }
        CommandKind::Squeezed => {
            let d = Deformation::new(&basis, cfg.lambda)?;
            let xi = SqueezeParameter::new(cfg.xi_r, cfg.xi_phi);
            let c = squeezed_coefficients(xi, displacement(cfg), cfg.truncation, BasisTag::Theta)?;
            let psi = synthesize(&c, d.states())?;
            state_bytes(cfg, &psi, format).map(Artifact::data)
        }
        CommandKind::Verify => {
            let report = verify(cfg, &basis)?;
            Ok(Artifact {
                bytes: json_bytes(&report)?,
                violations: report.violations.len(),
            })
        }
        CommandKind::LimitScan => {
            let rows = scan::limit_scan(&basis, &cfg.lambdas, displacement(cfg), cfg.truncation)?;
            let bytes = match format {
                Format::Csv => csv_bytes(&SCAN_HEADERS, &scan::columns(&rows))?,
                Format::Json => json_bytes(&ScanDocument {
                    z: [cfg.z_re, cfg.z_im],
                    truncation: cfg.truncation,
                    rows: &rows,
                })?,
            };
            Ok(Artifact::data(bytes))
        }
    }
}

pub fn verify(cfg: &RunConfig, basis: &BasisSet64) -> Result<VerificationReport64, CliError> {
    Ok(full_report(
        basis,
        cfg.lambda,
        cfg.levels,
        cfg.truncation,
        Tolerances::default(),
    )?)
}

fn deform(cfg: &RunConfig, basis: &BasisSet64, format: Format) -> Result<Artifact, CliError> {
    let d = Deformation::new(basis, cfg.lambda)?;
    let x: Vec<f64> = basis.grid().points().collect();
    let columns = [
        x,
        d.phi().values().to_vec(),
        d.w_hat().values().to_vec(),
        d.potential().values().to_vec(),
        d.state(0).values().to_vec(),
    ];
    let bytes = match format {
        Format::Csv => csv_bytes(&DEFORM_HEADERS, &columns)?,
        Format::Json => {
            let [x, phi, w_hat, v_lambda, theta0] = columns;
            json_bytes(&DeformDocument {
                lambda: cfg.lambda,
                grid: GridSpec::from(basis.grid()),
                x,
                phi,
                w_hat,
                v_lambda,
                theta0,
            })?
        }
    };
    Ok(Artifact::data(bytes))
}

fn spectrum(cfg: &RunConfig, basis: &BasisSet64, format: Format) -> Result<Artifact, CliError> {
    if cfg.levels == 0 || cfg.levels > basis.n_max() {
        return Err(isospec::Error::LevelOutOfRange {
            n: cfg.levels,
            min: 1,
            max: basis.n_max(),
        }
        .into());
    }
    let d = Deformation::new(basis, cfg.lambda)?;
    let base = assemble_hamiltonian(&basis.potential())?.lowest_eigenvalues(cfg.levels)?;
    let deformed = assemble_hamiltonian(d.potential())?.lowest_eigenvalues(cfg.levels)?;
    let analytic = basis.energies()[..cfg.levels].to_vec();
    let bytes = match format {
        Format::Csv => {
            let n = (0..cfg.levels).map(|k| k as f64).collect();
            csv_bytes(&SPECTRUM_HEADERS, &[n, analytic, base, deformed])?
        }
        Format::Json => json_bytes(&SpectrumDocument {
            lambda: cfg.lambda,
            analytic,
            base,
            deformed,
        })?,
    };
    Ok(Artifact::data(bytes))
}

fn unitary(cfg: &RunConfig, basis: &BasisSet64, format: Format) -> Result<Artifact, CliError> {
    let d = Deformation::new(basis, cfg.lambda)?;
    let u = match cfg.route {
        Route::Quadrature => OverlapMatrix64::from_quadrature(basis, &d, cfg.truncation)?,
        Route::ClosedForm => OverlapMatrix64::from_closed_form(basis, &d, cfg.truncation)?,
    };
    let mut buf = Vec::new();
    match format {
        Format::Csv => io::write_matrix_csv(&mut buf, &u)?,
        Format::Json => io::write_matrix_json(&mut buf, &u)?,
    }
    Ok(Artifact::data(buf))
}
