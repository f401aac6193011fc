//! CSV and JSON artifacts: column tables, overlap matrices, coordinate
//! states, and tabulated bases.
//!
//! Numbers are written with 17 significant digits, so every value read back
//! is bit-identical to the one written.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexFunction, Grid, SampledFunction};
use crate::oscillator::BasisSet;
use crate::scalar::Real;
use crate::unitary::OverlapMatrix;

/// 17 significant digits.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_number(field: &str) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::Format(format!("bad number {field:?}: {e}")))
}

/// Writes equal-length columns under a header row.
pub fn write_columns_csv<W: Write>(out: W, headers: &[&str], columns: &[Vec<f64>]) -> Result<()> {
    if headers.len() != columns.len() {
        return Err(Error::Format(format!(
            "{} headers for {} columns",
            headers.len(),
            columns.len()
        )));
    }
    let rows = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::Format("columns differ in length".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(headers)?;
    for r in 0..rows {
        w.write_record(columns.iter().map(|c| format_number(c[r])))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a numeric table; whitespace around fields and headers is ignored.
pub fn read_columns_csv<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let mut columns = vec![Vec::new(); headers.len()];
    for record in rdr.records() {
        let record = record?;
        if record.len() != headers.len() {
            return Err(Error::Format(format!(
                "row has {} fields, header has {}",
                record.len(),
                headers.len()
            )));
        }
        for (col, field) in columns.iter_mut().zip(record.iter()) {
            col.push(parse_number(field)?);
        }
    }
    Ok((headers, columns))
}

/// Rebuilds a [`Grid`] from tabulated sample positions, checking they are
/// uniform.
pub fn grid_from_samples<T: Real>(xs: &[f64]) -> Result<Grid<T>> {
    if xs.len() < 3 {
        return Err(Error::Format("fewer than three samples".into()));
    }
    let grid = Grid::new(T::lit(xs[0]), T::lit(xs[xs.len() - 1]), xs.len())?;
    let tol = 1e-9 * grid.step().as_f64().max(1.0);
    for (k, &x) in xs.iter().enumerate() {
        if (grid.point(k).as_f64() - x).abs() > tol {
            return Err(Error::Format(format!("sample {k} at {x} is off the uniform grid")));
        }
    }
    Ok(grid)
}

fn to_f64<T: Real>(values: &[T]) -> Vec<f64> {
    values.iter().map(|v| v.as_f64()).collect()
}

/// Overlap matrix as `n,m,value` rows in row-major order.
pub fn write_matrix_csv<W: Write, T: Real>(out: W, u: &OverlapMatrix<T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "m", "value"])?;
    for n in 0..u.size() {
        for m in 0..u.size() {
            w.write_record([n.to_string(), m.to_string(), format_number(u.get(n, m).as_f64())])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_matrix_csv<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let (headers, cols) = read_columns_csv(input)?;
    if headers != ["n", "m", "value"] {
        return Err(Error::Format(format!("unexpected matrix header {headers:?}")));
    }
    let size = (cols[0].len() as f64).sqrt().round() as usize;
    if size * size != cols[0].len() {
        return Err(Error::Format("entry count is not a square".into()));
    }
    let mut rows = vec![vec![0.0; size]; size];
    for ((&n, &m), &v) in cols[0].iter().zip(&cols[1]).zip(&cols[2]) {
        let (n, m) = (n as usize, m as usize);
        if n >= size || m >= size {
            return Err(Error::Format(format!("index ({n}, {m}) outside {size}x{size}")));
        }
        rows[n][m] = v;
    }
    Ok(rows)
}

/// Overlap matrix as nested JSON arrays (`rows[n][m]`).
pub fn write_matrix_json<W: Write, T: Real>(out: W, u: &OverlapMatrix<T>) -> Result<()> {
    let rows: Vec<Vec<f64>> = u.rows().iter().map(|r| to_f64(r)).collect();
    serde_json::to_writer_pretty(out, &rows)?;
    Ok(())
}

pub fn read_matrix_json<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = serde_json::from_reader(input)?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Format("matrix is not square".into()));
    }
    Ok(rows)
}

pub const STATE_HEADERS: [&str; 3] = ["x", "re(psi)", "im(psi)"];

/// Coordinate wavefunction as `x, re(psi), im(psi)`.
pub fn write_state_csv<W: Write, T: Real>(out: W, psi: &ComplexFunction<T>) -> Result<()> {
    let x: Vec<f64> = psi.grid().points().map(Real::as_f64).collect();
    let re = psi.values().iter().map(|c| c.re.as_f64()).collect();
    let im = psi.values().iter().map(|c| c.im.as_f64()).collect();
    write_columns_csv(out, &STATE_HEADERS, &[x, re, im])
}

pub fn read_state_csv<R: Read, T: Real>(input: R) -> Result<ComplexFunction<T>> {
    let (headers, cols) = read_columns_csv(input)?;
    if headers != STATE_HEADERS {
        return Err(Error::Format(format!("unexpected state header {headers:?}")));
    }
    let grid = grid_from_samples(&cols[0])?;
    let values = cols[1]
        .iter()
        .zip(&cols[2])
        .map(|(&re, &im)| Complex::new(T::lit(re), T::lit(im)))
        .collect();
    SampledFunction::new(grid, values)
}

/// Grid description used in JSON metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl<T: Real> From<&Grid<T>> for GridSpec {
    fn from(g: &Grid<T>) -> Self {
        Self {
            x_min: g.x_min().as_f64(),
            x_max: g.x_max().as_f64(),
            n_points: g.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateMetadata {
    pub lambda: f64,
    /// `[re, im]`
    pub z: [f64; 2],
    /// `[r, phase]`
    pub xi: [f64; 2],
    #[serde(rename = "N")]
    pub truncation: usize,
    pub grid: GridSpec,
}

/// JSON form of a coordinate state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub metadata: StateMetadata,
    pub x: Vec<f64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl StateDocument {
    pub fn new<T: Real>(metadata: StateMetadata, psi: &ComplexFunction<T>) -> Self {
        Self {
            metadata,
            x: psi.grid().points().map(Real::as_f64).collect(),
            re: psi.values().iter().map(|c| c.re.as_f64()).collect(),
            im: psi.values().iter().map(|c| c.im.as_f64()).collect(),
        }
    }

    pub fn to_function<T: Real>(&self) -> Result<ComplexFunction<T>> {
        let grid = grid_from_samples(&self.x)?;
        let values = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex::new(T::lit(re), T::lit(im)))
            .collect();
        SampledFunction::new(grid, values)
    }
}

/// Sidecar of a tabulated basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSidecar {
    pub energies: Vec<f64>,
}

/// Loads a basis from a CSV with header `x, W, psi0, psi1, …` and a JSON
/// sidecar `{ "energies": [...] }`.
pub fn read_basis_from<R1: Read, R2: Read, T: Real>(table: R1, sidecar: R2) -> Result<BasisSet<T>> {
    let (headers, cols) = read_columns_csv(table)?;
    if headers.len() < 3 || headers[0] != "x" || headers[1] != "W" {
        return Err(Error::Format(format!(
            "basis header must start with x, W, psi0: {headers:?}"
        )));
    }
    for (n, h) in headers[2..].iter().enumerate() {
        if *h != format!("psi{n}") {
            return Err(Error::Format(format!("expected column psi{n}, found {h}")));
        }
    }
    let side: BasisSidecar = serde_json::from_reader(sidecar)?;
    let grid = grid_from_samples::<T>(&cols[0])?;
    let lift = |c: &Vec<f64>| SampledFunction::new(grid, c.iter().map(|&v| T::lit(v)).collect());
    let w = lift(&cols[1])?;
    let psi = cols[2..].iter().map(lift).collect::<Result<Vec<_>>>()?;
    let energies = side.energies.iter().map(|&e| T::lit(e)).collect();
    BasisSet::from_parts(w, psi, energies)
}

pub fn read_basis<T: Real>(table: &Path, sidecar: &Path) -> Result<BasisSet<T>> {
    read_basis_from(std::fs::File::open(table)?, std::fs::File::open(sidecar)?)
}

/// Writes a basis in the import format.
pub fn write_basis_to<W1: Write, W2: Write, T: Real>(basis: &BasisSet<T>, table: W1, sidecar: W2) -> Result<()> {
    let mut headers = vec!["x".to_owned(), "W".to_owned()];
    headers.extend((0..basis.len()).map(|n| format!("psi{n}")));
    let mut cols = vec![
        basis.grid().points().map(Real::as_f64).collect::<Vec<_>>(),
        to_f64(basis.superpotential().values()),
    ];
    cols.extend(basis.eigenfunctions().iter().map(|f| to_f64(f.values())));
    let refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    write_columns_csv(table, &refs, &cols)?;
    serde_json::to_writer_pretty(
        sidecar,
        &BasisSidecar {
            energies: to_f64(basis.energies()),
        },
    )?;
    Ok(())
}
