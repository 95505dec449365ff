use std::io::Write;
use std::process::Command;

use zf_cli::{emit_trace, load_curve_catalog, parse_and_dispatch, OutputFormat};
use zf_core::{ComplexValue, SeriesTrace};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn zf(args: &[&str]) -> Run {
    let mut argv = vec!["zf"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = parse_and_dispatch(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn field(header: &[String], row: &[String], name: &str) -> f64 {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    row[i].parse().unwrap()
}

#[test]
fn zeta_eta_at_two() {
    let run = zf(&["zeta", "--z", "2", "--method", "eta"]);
    assert_eq!(run.code, 0, "{}", run.err);
    let (header, rows) = csv_rows(&run.out);
    assert_eq!(header, ["z_re", "z_im", "value_re", "value_im", "method"]);
    assert_eq!(rows.len(), 1);
    let pi = std::f64::consts::PI;
    assert!((field(&header, &rows[0], "value_re") - pi * pi / 6.0).abs() < 1e-10);
    assert_eq!(rows[0][4], "eta");
}

#[test]
fn euler_gamma_identity_row() {
    let run = zf(&["identity", "--name", "euler-gamma", "--kmax", "30"]);
    assert_eq!(run.code, 0, "{}", run.err);
    let (header, rows) = csv_rows(&run.out);
    assert_eq!(rows.len(), 1);
    assert!(field(&header, &rows[0], "defect") < 1e-8);
}

#[test]
fn bsd_fit_one_row_per_curve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.txt");
    std::fs::write(&path, zf_core::elliptic::fixtures_text()).unwrap();
    let run = zf(&[
        "bsd",
        "--curves",
        path.to_str().unwrap(),
        "--x",
        "1000",
        "--fit",
    ]);
    assert_eq!(run.code, 0, "{}", run.err);
    let (header, rows) = csv_rows(&run.out);
    assert_eq!(
        header,
        ["label", "x", "log_product", "r_hat", "logC", "residual_rms"]
    );
    let labels: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(labels, ["32a2", "37a1", "389a1", "5077a1"]);
    for row in &rows {
        assert!(field(&header, row, "r_hat").is_finite());
    }
}

#[test]
fn bsd_product_leaves_fit_columns_blank() {
    let run = zf(&["bsd", "--x", "200", "--label", "37a1"]);
    assert_eq!(run.code, 0, "{}", run.err);
    let (_, rows) = csv_rows(&run.out);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][3].is_empty() && rows[0][4].is_empty());
}

#[test]
fn every_subcommand_emits_parseable_output() {
    let cases: &[&[&str]] = &[
        &["zeta", "--z", "0.75,5", "--method", "auto"],
        &[
            "zeta",
            "--z",
            "3",
            "--method",
            "euler-product",
            "--limit",
            "1000",
        ],
        &[
            "zeta",
            "--z",
            "0.75",
            "--method",
            "counterterm",
            "--limit",
            "1000",
        ],
        &["zeta", "--z", "2", "--method", "dirichlet", "--limit", "10"],
        &[
            "prime-zeta",
            "--z",
            "2",
            "--method",
            "direct",
            "--limit",
            "1000",
        ],
        &["prime-zeta", "--z", "2", "--method", "mobius"],
        &[
            "prime-zeta",
            "--z",
            "2",
            "--method",
            "inclusion-exclusion",
            "--prime-bound",
            "20",
            "--depth",
            "2",
        ],
        &[
            "prime-zeta",
            "--z",
            "0.75",
            "--method",
            "counterterm",
            "--limit",
            "1000",
        ],
        &[
            "prime-zeta",
            "--z",
            "0.75",
            "--method",
            "counterterm",
            "--limits",
            "10,100",
        ],
        &["identity", "--name", "artin-hasse", "--limit", "10000"],
        &["identity", "--name", "log-split", "--z", "3"],
        &["identity", "--name", "expansion-coeff", "--m-max", "30"],
        &[
            "dipole",
            "--mode",
            "recurrence",
            "--z",
            "2",
            "--limit",
            "50",
        ],
        &[
            "dipole",
            "--mode",
            "closed-form",
            "--z",
            "0.75",
            "--limit",
            "50",
        ],
        &[
            "dipole",
            "--mode",
            "regularized",
            "--z",
            "0.75",
            "--limit",
            "50",
        ],
        &[
            "dipole",
            "--mode",
            "scan",
            "--z",
            "0.75",
            "--limits",
            "10,100,1000",
        ],
        &["curve", "--mode", "ap", "--limit", "50"],
        &["curve", "--mode", "discriminant"],
        &["points", "--A", "5"],
    ];
    for args in cases {
        let run = zf(args);
        assert_eq!(run.code, 0, "{args:?}: {}", run.err);
        let (header, rows) = csv_rows(&run.out);
        assert!(!rows.is_empty(), "{args:?}");
        assert!(rows.iter().all(|r| r.len() == header.len()));

        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let run = zf(&json_args);
        assert_eq!(run.code, 0, "{json_args:?}: {}", run.err);
        let v: serde_json::Value = serde_json::from_str(&run.out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), rows.len());
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "prime-zeta",
        "--z",
        "0.75,2",
        "--method",
        "counterterm",
        "--limits",
        "10,100,1000",
    ];
    let first = zf(&args).out;
    assert_eq!(first, zf(&args).out);
    let one = zf(&["--threads", "1", "bsd", "--x", "2000", "--fit"]).out;
    let four = zf(&["bsd", "--x", "2000", "--fit", "--threads", "4"]).out;
    assert_eq!(one, four);
}

#[test]
fn argument_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["nonsense"],
        &["zeta"],
        &["zeta", "--z", "abc"],
        &["zeta", "--z", "1,2,3"],
        &["zeta", "--z", "2", "--method", "bogus"],
        &["zeta", "--z", "-1", "--method", "eta"],
        &["zeta", "--z", "1"],
        &["zeta", "--z", "0.5", "--method", "euler-product"],
        &["prime-zeta", "--z", "0.4", "--method", "mobius"],
        &["prime-zeta", "--z", "1.5", "--method", "counterterm"],
        &[
            "prime-zeta",
            "--z",
            "0.75",
            "--method",
            "counterterm",
            "--limits",
            "100,10",
        ],
        &["identity", "--name", "euler-gamma", "--kmax", "1"],
        &["identity", "--name", "log-split", "--z", "0.9"],
        &["dipole", "--mode", "scan", "--z", "2"],
        &["dipole", "--mode", "recurrence", "--z", "2", "--limit", "1"],
        &["curve", "--mode", "ap", "--limit", "2000000"],
        &["bsd", "--x", "20000000"],
        &["bsd", "--x", "15", "--fit"],
        &["bsd", "--x", "100", "--trace"],
        &["bsd", "--x", "100", "--label", "11a1"],
        &["points", "--A", "0"],
        &["points", "--A", "100000"],
        &["--format", "xml", "points", "--A", "2"],
        &["bsd", "--x", "100", "--curves", "/nonexistent/catalog.txt"],
    ];
    for args in cases {
        let run = zf(args);
        assert_eq!(run.code, 2, "{args:?}");
        assert!(run.out.is_empty(), "{args:?} wrote to stdout");
        assert!(!run.err.is_empty(), "{args:?} gave no diagnostic");
    }
}

#[test]
fn computation_errors_exit_one() {
    for args in [
        &["prime-zeta", "--z", "0.6", "--method", "mobius"][..],
        &["zeta", "--z", "2", "--tol", "1e-300"][..],
    ] {
        let run = zf(args);
        assert_eq!(run.code, 1, "{args:?}");
        assert!(run.err.starts_with("error:"));
    }
}

#[test]
fn help_goes_to_stdout() {
    let run = zf(&["--help"]);
    assert_eq!(run.code, 0);
    assert!(run.out.contains("prime-zeta"));
}

#[test]
fn catalog_lines() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let mut f = std::fs::File::create(&good).unwrap();
    writeln!(
        f,
        "# label a1 a2 a3 a4 a6 rank\n\n37a1 0 0 1 -1 0 1  # rank one\n11a3 0 -1 1 0 0"
    )
    .unwrap();
    drop(f);
    let curves = load_curve_catalog(&good).unwrap();
    assert_eq!(curves.len(), 2);
    assert_eq!(curves[0].discriminant(), 37);
    assert_eq!(curves[0].reference_rank(), Some(1));
    assert_eq!(curves[1].reference_rank(), None);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "37a1 0 0 1 -1 0 1\nbad 0 0 0 0 0\n").unwrap();
    let err = load_curve_catalog(&bad).unwrap_err();
    assert!(matches!(err, zf_core::Error::SingularCurve(ref l) if l == "bad"));
    let run = zf(&["points", "--A", "2", "--curves", bad.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.err.contains("bad"));

    let malformed = dir.path().join("malformed.txt");
    std::fs::write(&malformed, "# header\n37a1 0 0 1 -1\n").unwrap();
    assert!(matches!(
        load_curve_catalog(&malformed),
        Err(zf_core::Error::Parse { line: 2, .. })
    ));
}

#[test]
fn trace_emission_shapes() {
    let render = |t: &SeriesTrace, f| {
        let mut buf = Vec::new();
        emit_trace(t, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let empty = SeriesTrace::new("empty");
    assert_eq!(
        render(&empty, OutputFormat::Csv),
        "n,value_re,value_im,reference_re,reference_im\n"
    );

    let mut t = SeriesTrace::new("three");
    for n in [1u64, 2, 3] {
        t.push(n, ComplexValue::new(n as f64, 0.0), None).unwrap();
    }
    assert_eq!(render(&t, OutputFormat::Csv).lines().count(), 4);
    let v: serde_json::Value = serde_json::from_str(&render(&t, OutputFormat::Json)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    let keys = |o: &serde_json::Value| o.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert!(arr.iter().all(|o| keys(o) == keys(&arr[0])));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_zf");
    let ok = Command::new(bin)
        .args(["zeta", "--z", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("z_re,z_im,value_re,value_im,method\n"));
    let bad = Command::new(bin).args(["zeta", "--z"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}
