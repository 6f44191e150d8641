use std::path::Path;
use std::process::Command;
use weaklg::catalog;
use weaklg::cli::{run, EXIT_EMPTY, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
use weaklg::dseries::DOperator;
use weaklg::laurent::PowerSeries;
use weaklg::text::KvDocument;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weaklg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn verify_confirms_v16() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(dir.path(), "f16.txt", &catalog::f16().to_string());
    let op = write(dir.path(), "l16.txt", &catalog::operator_v16().to_string());
    let (code, out, _) = call(&["verify", "-f", &poly, "-L", &op, "-N", "20"]);
    assert_eq!(code, EXIT_OK);
    let doc = KvDocument::parse(&out).unwrap();
    assert_eq!(doc.get("verdict"), Some("very-weak-confirmed-to-20"));
    assert_eq!(doc.get("phi.2"), Some("40"));
}

#[test]
fn verify_reports_v22_mismatch() {
    let (code, out, err) = call(&["verify", "-f", "@V22", "-L", "@V22", "-N", "6", "--pretty"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("first_mismatch = 1"));
    assert!(out.contains("mismatch.solution = 32/5"));
    assert!(out.contains("verdict: mismatch"));
    assert!(err.contains("index 1"));
    let (code, _, _) = call(&["verify", "-f", "@V22", "-L", "@V22:derived", "-N", "20"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn series_and_solve_compose_into_verify() {
    let (c1, series, _) = call(&["series", "-f", "@V18", "-N", "10"]);
    let (c2, solution, _) = call(&["solve", "-L", "@V18", "-N", "10"]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    let manual = PowerSeries::parse(&series).unwrap() == PowerSeries::parse(&solution).unwrap();
    let (code, _, _) = call(&["verify", "-f", "@V18", "-L", "@V18", "-N", "10"]);
    assert_eq!(manual, code == EXIT_OK);
}

#[test]
fn empty_polynomial_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(dir.path(), "empty.txt", "# nothing here\n\n");
    let (code, out, err) = call(&["series", "-f", &poly, "-N", "10"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
}

#[test]
fn malformed_inputs_point_at_location() {
    let dir = tempfile::tempdir().unwrap();
    let op = write(dir.path(), "bad.txt", "order 1, tdeg 0\n0 3/\n");
    let (code, _, err) = call(&["solve", "-L", &op, "-N", "3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2, column 3"), "{err}");
    let (code, _, err) = call(&["series", "-f", "/no/such/file", "-N", "3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("/no/such/file"));
}

#[test]
fn usage_errors() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["series", "-N", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&["series", "-f", "@V16", "-N", "many"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn fit_prints_parseable_basis() {
    let dir = tempfile::tempdir().unwrap();
    let (_, series, _) = call(&["series", "-f", "@V18", "-N", "16"]);
    let path = write(dir.path(), "s.txt", &series);
    let (code, out, _) = call(&["fit", "-s", &path, "-m", "3", "-r", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("# basis dimension 1\n"));
    let op = DOperator::parse(&out).unwrap();
    assert!(op.equals_up_to_scalar(&catalog::operator_v18()));
    let (code, _, err) = call(&["fit", "-s", &path, "-m", "3", "-r", "4"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("24"), "{err}");
}

#[test]
fn search_outputs_candidates_and_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let mut ansatz = String::from("dim 3\nsymmetric\n");
    let vertices = weaklg::newton_polytope(&catalog::f18()).unwrap().vertices().to_vec();
    for (m, _) in catalog::f18().terms() {
        let e: Vec<String> = m.exponents().iter().map(ToString::to_string).collect();
        let dom = if vertices.contains(&m.exponents().to_vec()) { "fixed 1" } else { "free" };
        ansatz.push_str(&format!("{} : - : {dom}\n", e.join(" ")));
    }
    let a = write(dir.path(), "a.txt", &ansatz);
    let args = [
        "search",
        "-a",
        &a,
        "-t",
        "@V18",
        "--prime",
        "7",
        "--height",
        "5",
        "--depth",
        "4",
        "--verify-depth",
        "8",
    ];
    let (code, out, _) = call(&args);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("# candidates = 1"));
    assert!(out.contains("# p7.enumerated = 49"));
    let body: String = out.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(weaklg::LaurentPoly::parse(&body).unwrap(), catalog::f18());
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(call(&threaded).1, out);

    // no origin in the support: a_1 = 3 is unreachable
    let empty = write(dir.path(), "e.txt", "dim 3\nsymmetric\n1 0 0 : - : free\n0 1 0 : - : free\n0 0 1 : - : free\n-1 0 0 : - : free\n0 -1 0 : - : free\n0 0 -1 : - : free\n");
    let (code, out, err) = call(&["search", "-a", &empty, "-t", "@V18", "--prime", "5"]);
    assert_eq!(code, EXIT_EMPTY);
    assert!(out.contains("# candidates = 0"));
    assert!(err.contains("no candidates"));
    assert_eq!(call(&["search", "-a", &empty, "-t", "@V18", "--prime", "6"]).0, EXIT_INPUT);
    let open = write(dir.path(), "o.txt", "dim 3\nsymmetric\n1 0 0 : - : free\n");
    let (code, _, err) = call(&["search", "-a", &open, "-t", "@V18", "--prime", "5"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("outside the support"), "{err}");
    assert_eq!(call(&["search", "-a", &empty, "-t", "@V18"]).0, EXIT_USAGE);
}

#[test]
fn polytope_reports_and_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", "1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n");
    let (code, out, _) = call(&["polytope", "-p", &p3, "--expect", "@P3-sample"]);
    assert_eq!(code, EXIT_OK);
    let doc = KvDocument::parse(&out).unwrap();
    assert_eq!(doc.get("degree"), Some("64"));
    assert_eq!(doc.get("sections"), Some("35"));
    let rec = write(dir.path(), "rec.txt", &catalog::builtin("V16").unwrap().to_text());
    let (code, out, _) = call(&["polytope", "-p", &p3, "--expect", &rec]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("degree 64 != 16"));
    let (code, out, _) = call(&["polytope", "--newton", "@V22", "--pretty"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("degree = 22"));
    assert_eq!(call(&["polytope"]).0, EXIT_USAGE);
}

#[test]
fn catalog_listing() {
    let (code, out, _) = call(&["catalog", "list"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), catalog::BUILTIN_NAMES.len());
    let (code, out, _) = call(&["catalog", "show", "V22"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(catalog::FanoRecord::parse(&out).unwrap(), catalog::builtin("V22").unwrap());
    assert_eq!(call(&["catalog", "show", "V99"]).0, EXIT_INPUT);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_weaklg");
    let status = Command::new(bin).args(["verify", "-f", "@V16", "-L", "@V16", "-N", "8"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let status = Command::new(bin).args(["verify", "-f", "@V22", "-L", "@V22", "-N", "8"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_MISMATCH));
    let status = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    assert!(status.stdout.is_empty());
}
