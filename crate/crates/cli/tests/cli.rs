use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use isospec::io;
use isospec::numerics::SampledFunction;
use isospec::{BasisSet64, Grid64};
use isospec_cli::{EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};

const SMALL: &[&str] = &[
    "--x-min",
    "-10",
    "--x-max",
    "10",
    "--n-points",
    "2001",
    "--n-max",
    "30",
    "--truncation",
    "24",
];

fn isospec(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isospec"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn isospec")
}

fn with_small<'a>(args: &[&'a str]) -> Vec<&'a str> {
    args.iter().copied().chain(SMALL.iter().copied()).collect()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn deform_csv_columns_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(
        dir.path(),
        &with_small(&["deform", "--lambda", "1", "--output", "d.csv"]),
    );
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let (headers, cols) = io::read_columns_csv(fs::File::open(dir.path().join("d.csv")).unwrap()).unwrap();
    assert_eq!(headers, ["x", "phi", "W_hat", "V_lambda", "theta0"]);
    assert_eq!(cols[0].len(), 2001);

    let grid = Grid64::new(-10.0, 10.0, 2001).unwrap();
    let theta0 = SampledFunction::new(grid, cols[4].clone()).unwrap();
    assert!((theta0.norm_sq() - 1.0).abs() < 1e-9);

    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("d.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "deform");
    assert_eq!(meta["inputs"]["lambda"], 1.0);
    assert!(meta["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert!(meta["versions"]["isospec"].is_string());
}

#[test]
fn forbidden_lambda_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(dir.path(), &["deform", "--lambda", "-0.5"]);
    assert_eq!(out.status.code(), Some(EXIT_VALIDATION));
    assert!(stderr(&out).contains("[-1, 0]"), "{}", stderr(&out));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frobnicate"][..],
        &["deform", "--lambda", "abc"],
        &[],
        &["deform", "--format", "xml"],
    ] {
        assert_eq!(isospec(dir.path(), args).status.code(), Some(EXIT_USAGE), "{args:?}");
    }
    assert_eq!(
        isospec(dir.path(), &["verify", "--format", "csv"]).status.code(),
        Some(EXIT_USAGE)
    );
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(isospec(dir.path(), &["--help"]).status.code(), Some(EXIT_OK));
}

#[test]
fn even_point_count_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(dir.path(), &["deform", "--n-points", "4000"]);
    assert_eq!(out.status.code(), Some(EXIT_VALIDATION));
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(dir.path(), &with_small(&["deform", "--output", "missing/d.csv"]));
    assert_eq!(out.status.code(), Some(EXIT_IO), "{}", stderr(&out));
}

#[test]
fn missing_config_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(dir.path(), &["deform", "--config", "nope.json"]);
    assert_eq!(out.status.code(), Some(EXIT_IO));
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.json"),
        r#"{"lambda": 2.0, "N": 12, "x_min": -10, "x_max": 10, "n_points": 2001, "n_max": 30, "format": "json"}"#,
    )
    .unwrap();
    let out = isospec(dir.path(), &["unitary", "--config", "run.json", "--truncation", "8"]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let rows = io::read_matrix_json(fs::File::open(dir.path().join("unitary.json")).unwrap()).unwrap();
    assert_eq!(rows.len(), 8);
    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("unitary.json.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["inputs"]["lambda"], 2.0);
    assert_eq!(meta["inputs"]["N"], 8);
}

#[test]
fn unitary_csv_roundtrips_against_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(
        dir.path(),
        &with_small(&["unitary", "--lambda", "1", "--output", "u.csv"]),
    );
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let rows = io::read_matrix_csv(fs::File::open(dir.path().join("u.csv")).unwrap()).unwrap();

    let basis = BasisSet64::oscillator(Grid64::new(-10.0, 10.0, 2001).unwrap(), 30).unwrap();
    let d = isospec::deform::Deformation::new(&basis, 1.0).unwrap();
    let u = isospec::OverlapMatrix64::from_quadrature(&basis, &d, 24).unwrap();
    assert_eq!(rows, u.rows());
    assert!((rows[0][0] - 2f64.sqrt() * 2f64.ln()).abs() < 1e-6);
}

#[test]
fn closed_form_route_matches_quadrature() {
    let dir = tempfile::tempdir().unwrap();
    let a = isospec(
        dir.path(),
        &with_small(&["unitary", "--output", "q.json", "--format", "json"]),
    );
    let b = isospec(
        dir.path(),
        &with_small(&[
            "unitary",
            "--route",
            "closed-form",
            "--output",
            "c.json",
            "--format",
            "json",
        ]),
    );
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(b.status.code(), Some(EXIT_OK));
    let q = io::read_matrix_json(fs::File::open(dir.path().join("q.json")).unwrap()).unwrap();
    let c = io::read_matrix_json(fs::File::open(dir.path().join("c.json")).unwrap()).unwrap();
    let diff = q
        .iter()
        .flatten()
        .zip(c.iter().flatten())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    assert!(diff < 1e-6, "{diff}");
}

#[test]
fn coherent_state_json_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(
        dir.path(),
        &with_small(&[
            "coherent", "--z-re", "0.5", "--z-im", "-0.5", "--format", "json", "--output", "s.json",
        ]),
    );
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let doc: io::StateDocument = serde_json::from_slice(&fs::read(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(doc.metadata.z, [0.5, -0.5]);
    assert_eq!(doc.metadata.truncation, 24);
    let psi = doc.to_function::<f64>().unwrap();
    assert!((psi.norm_sq() - 1.0).abs() < 1e-8);
}

#[test]
fn squeezed_state_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(dir.path(), &with_small(&["squeezed", "--xi-r", "0.3", "--z-re", "0"]));
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let psi = io::read_state_csv::<_, f64>(fs::File::open(dir.path().join("squeezed.csv")).unwrap()).unwrap();
    assert!((psi.norm_sq() - 1.0).abs() < 1e-8);
    let out = isospec(dir.path(), &with_small(&["squeezed", "--xi-r", "1.5"]));
    assert_eq!(out.status.code(), Some(EXIT_VALIDATION));
}

#[test]
fn spectrum_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(dir.path(), &with_small(&["spectrum", "--levels", "5"]));
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let (headers, cols) = io::read_columns_csv(fs::File::open(dir.path().join("spectrum.csv")).unwrap()).unwrap();
    assert_eq!(headers, ["n", "analytic", "base", "deformed"]);
    assert_eq!(cols[0].len(), 5);
    for (k, ((analytic, base), deformed)) in cols[1].iter().zip(&cols[2]).zip(&cols[3]).enumerate() {
        assert!((base - deformed).abs() < 5e-3);
        assert!((analytic - (k as f64 + 0.5)).abs() < 1e-12);
    }
}

#[test]
fn limit_scan_empty_and_populated() {
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(
        dir.path(),
        &with_small(&["limit-scan", "--lambdas", "", "--output", "e.csv"]),
    );
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let (headers, cols) = io::read_columns_csv(fs::File::open(dir.path().join("e.csv")).unwrap()).unwrap();
    assert_eq!(headers.len(), 5);
    assert!(cols.iter().all(Vec::is_empty));

    let out = isospec(dir.path(), &with_small(&["limit-scan", "--lambdas", "1e2,1e3,1e4"]));
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    let (_, cols) = io::read_columns_csv(fs::File::open(dir.path().join("limit-scan.csv")).unwrap()).unwrap();
    assert_eq!(cols[0], [1e2, 1e3, 1e4]);
    assert!(cols[1][0] > cols[1][1] && cols[1][1] > cols[1][2]);

    let out = isospec(dir.path(), &with_small(&["limit-scan", "--lambdas", "5,-0.25"]));
    assert_eq!(out.status.code(), Some(EXIT_VALIDATION));
}

#[test]
fn verify_failure_exits_one_and_still_writes_report() {
    // Far too coarse for the default spectral tolerance.
    let dir = tempfile::tempdir().unwrap();
    let out = isospec(
        dir.path(),
        &[
            "verify",
            "--x-min",
            "-8",
            "--x-max",
            "8",
            "--n-points",
            "81",
            "--n-max",
            "10",
            "--truncation",
            "8",
            "--levels",
            "4",
        ],
    );
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("verify.json")).unwrap()).unwrap();
    assert!(!report["violations"].as_array().unwrap().is_empty());
    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("verify.json.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["exit_code"], 1);
}

#[test]
fn thread_count_does_not_change_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_isospec"))
            .current_dir(dir.path())
            .env("ISOSPEC_THREADS", threads)
            .args(with_small(&["unitary", "--output", name]))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
        fs::read(dir.path().join(name)).unwrap()
    };
    assert_eq!(run("1", "a.csv"), run("4", "b.csv"));
    let bad = Command::new(env!("CARGO_BIN_EXE_isospec"))
        .current_dir(dir.path())
        .env("ISOSPEC_THREADS", "many")
        .args(["deform"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
