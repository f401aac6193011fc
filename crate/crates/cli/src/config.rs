//! Run configuration: built-in defaults, then an optional JSON file, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Tabulate phi, W_hat, V_lambda and theta0 on the grid
    Deform,
    /// Lowest eigenvalues of the base and deformed Hamiltonians
    Spectrum,
    /// Overlap matrix U_nm = <psi_n|theta_m>
    Unitary,
    /// Deformed coherent state in position space
    Coherent,
    /// Deformed squeezed coherent state in position space
    Squeezed,
    /// Full verification report (JSON); exits 1 on any violation
    #[default]
    Verify,
    /// Approach to the large-lambda limit over a list of lambdas
    LimitScan,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Deform => "deform",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Unitary => "unitary",
            CommandKind::Coherent => "coherent",
            CommandKind::Squeezed => "squeezed",
            CommandKind::Verify => "verify",
            CommandKind::LimitScan => "limit-scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    #[default]
    Quadrature,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    pub lambda: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub xi_r: f64,
    pub xi_phi: f64,
    pub n_max: usize,
    #[serde(rename = "N")]
    pub truncation: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub levels: usize,
    pub lambdas: Vec<f64>,
    pub route: Route,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: CommandKind::default(),
            lambda: 1.0,
            z_re: 1.0,
            z_im: 0.0,
            xi_r: 0.0,
            xi_phi: 0.0,
            n_max: 48,
            truncation: 40,
            x_min: -12.0,
            x_max: 12.0,
            n_points: 4001,
            levels: 8,
            lambdas: vec![1e2, 1e3, 1e4],
            route: Route::default(),
            output: None,
            format: None,
        }
    }
}

/// Flags shared by every subcommand. Unset flags leave the config untouched.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON file with RunConfig fields; flags still win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z_re: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z_im: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xi_r: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xi_phi: Option<f64>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Fock truncation N
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long, global = true)]
    pub n_points: Option<usize>,
    /// Number of eigenvalues for spectrum and verify
    #[arg(long, global = true)]
    pub levels: Option<usize>,
    /// Comma-separated lambdas for limit-scan; an empty string gives an empty scan
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambdas: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub route: Option<Route>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

pub fn parse_lambdas(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| CliError::Usage(format!("--lambdas: bad value {s:?}: {e}")))
        })
        .collect()
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| CliError::Config {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Defaults, then `--config`, then individual flags.
    pub fn resolve(command: CommandKind, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = match &flags.config {
            Some(path) => Self::from_file(path)?,
            None => Self::default(),
        };
        cfg.command = command;
        macro_rules! apply {
            ($($field:ident),*) => {
                $(if let Some(v) = flags.$field.clone() { cfg.$field = v; })*
            };
        }
        apply!(lambda, z_re, z_im, xi_r, xi_phi, n_max, truncation, x_min, x_max, n_points, levels, route);
        if let Some(list) = &flags.lambdas {
            cfg.lambdas = parse_lambdas(list)?;
        }
        if flags.output.is_some() {
            cfg.output = flags.output.clone();
        }
        if flags.format.is_some() {
            cfg.format = flags.format;
        }
        Ok(cfg)
    }

    /// Output format, falling back to the command's natural one.
    pub fn effective_format(&self) -> Result<Format, CliError> {
        match (self.command, self.format) {
            (CommandKind::Verify, Some(Format::Csv)) => Err(CliError::Usage(
                "verify writes a JSON report; --format csv is not supported".into(),
            )),
            (CommandKind::Verify, _) => Ok(Format::Json),
            (_, Some(f)) => Ok(f),
            (_, None) => Ok(Format::Csv),
        }
    }

    pub fn output_path(&self) -> Result<PathBuf, CliError> {
        Ok(match &self.output {
            Some(p) => p.clone(),
            None => PathBuf::from(format!(
                "{}.{}",
                self.command.name(),
                self.effective_format()?.extension()
            )),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!((c.x_min, c.x_max, c.n_points), (-12.0, 12.0, 4001));
        assert_eq!((c.n_max, c.truncation, c.lambda), (48, 40, 1.0));
        assert_eq!((c.z_re, c.z_im, c.xi_r), (1.0, 0.0, 0.0));
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(&path, r#"{"lambda": 3.0, "N": 30, "format": "json"}"#).unwrap();
        let flags = Overrides {
            config: Some(path),
            lambda: Some(5.0),
            ..Overrides::default()
        };
        let c = RunConfig::resolve(CommandKind::Unitary, &flags).unwrap();
        assert_eq!(c.lambda, 5.0);
        assert_eq!(c.truncation, 30);
        assert_eq!(c.format, Some(Format::Json));
        assert_eq!(c.n_points, 4001);
        assert_eq!(c.output_path().unwrap(), PathBuf::from("unitary.json"));
    }

    #[test]
    fn unknown_config_field_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(&path, r#"{"lamda": 3.0}"#).unwrap();
        let err = RunConfig::from_file(&path).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_VALIDATION);
    }

    #[test]
    fn lambda_lists() {
        assert_eq!(parse_lambdas("").unwrap(), Vec::<f64>::new());
        assert_eq!(parse_lambdas("1e2, 1e3,-2").unwrap(), vec![100.0, 1000.0, -2.0]);
        assert!(parse_lambdas("1,x").is_err());
    }

    #[test]
    fn verify_is_json_only() {
        let mut c = RunConfig {
            command: CommandKind::Verify,
            ..RunConfig::default()
        };
        assert_eq!(c.effective_format().unwrap(), Format::Json);
        c.format = Some(Format::Csv);
        assert!(c.effective_format().is_err());
    }
}
