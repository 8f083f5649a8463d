use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use symcircle::complex::SimplicialComplex;
use symcircle::fixtures;
use symcircle::quotient::prism_complex;

fn symcircle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcircle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn emit(dir: &Path, name: &str) -> std::path::PathBuf {
    let out = dir.join(format!("{name}.sc"));
    let o = symcircle(&["emit", name, path(&out)]);
    assert!(o.status.success(), "{o:?}");
    out
}

#[test]
fn emit_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let barnette = fs::read_to_string(emit(dir.path(), "barnette")).unwrap();
    assert!(barnette.lines().any(|l| l == "dim 3"));
    assert_eq!(barnette.lines().filter(|l| l.starts_with("f ")).count(), 19);

    let knot = fs::read_to_string(emit(dir.path(), "knot")).unwrap();
    let edges: Vec<&str> = knot.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(edges.len(), 6);
    assert!(edges.iter().all(|l| l.split_whitespace().count() == 3));

    let prism = fs::read_to_string(emit(dir.path(), "prism")).unwrap();
    assert_eq!(
        SimplicialComplex::from_text(&prism).unwrap(),
        prism_complex()
    );
    // byte-deterministic
    assert_eq!(
        fs::read_to_string(emit(dir.path(), "prism")).unwrap(),
        prism
    );
}

#[test]
fn emit_rejects_unknown_name() {
    let dir = tempfile::tempdir().unwrap();
    let o = symcircle(&["emit", "torus", path(&dir.path().join("x.sc"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homology_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = symcircle(&["homology", path(&emit(dir.path(), "barnette"))]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "H0 rank=1 torsion=[]\nH1 rank=0 torsion=[]\nH2 rank=0 torsion=[]\nH3 rank=1 torsion=[]\n"
    );
    let o = symcircle(&["homology", path(&emit(dir.path(), "mobius"))]);
    assert!(stdout(&o).lines().any(|l| l == "H1 rank=1 torsion=[]"));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sc");
    fs::write(&bad, "sc v1\ndim 2\nf 1 1 2\n").unwrap();
    let o = symcircle(&["homology", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 3"),
        "{o:?}"
    );
    let o = symcircle(&["fvector", path(&dir.path().join("missing.sc"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn links_and_fvector() {
    let dir = tempfile::tempdir().unwrap();
    let b = emit(dir.path(), "barnette");
    let o = symcircle(&["links", path(&b)]);
    let out = stdout(&o);
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with("link ") && l.ends_with("chi=2"))
            .count(),
        8
    );
    assert!(out.lines().any(|l| l == "closed_3_manifold true"));
    let o = symcircle(&["links", path(&emit(dir.path(), "mobius"))]);
    assert!(stdout(&o).lines().any(|l| l == "closed_3_manifold false"));
    let o = symcircle(&["fvector", path(&b)]);
    assert_eq!(stdout(&o), "f 8 27 38 19\n");
}

#[test]
fn alexander_on_trefoil_and_unknot() {
    let dir = tempfile::tempdir().unwrap();
    let o = symcircle(&[
        "alexander",
        path(&emit(dir.path(), "barnette")),
        "--knot",
        path(&emit(dir.path(), "knot")),
    ]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "alexander 1 -1 1"), "{out}");
    assert!(out.lines().any(|l| l == "s3_nonabelian true"));

    let sphere = dir.path().join("sphere.sc");
    let unknot = dir.path().join("unknot.sc");
    fs::write(&sphere, fixtures::SPHERE4).unwrap();
    fs::write(&unknot, fixtures::UNKNOT).unwrap();
    let o = symcircle(&["alexander", path(&sphere), "--knot", path(&unknot)]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "alexander 1"), "{out}");
    assert!(out.lines().any(|l| l == "s3_nonabelian false"));
}

#[test]
fn alexander_rejects_foreign_knot() {
    let dir = tempfile::tempdir().unwrap();
    let knot = dir.path().join("k.sc");
    fs::write(&knot, "sc v1\ndim 1\nf 0 3\nf 3 4\nf 0 4\n").unwrap();
    let o = symcircle(&[
        "alexander",
        path(&emit(dir.path(), "barnette")),
        "--knot",
        path(&knot),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("complement") && err.contains("subcomplex"),
        "{err}"
    );
}

#[test]
fn verify_paper_default_and_corrupted() {
    let o = symcircle(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out
        .lines()
        .all(|l| l.starts_with("CHECK ") && l.contains(" PASS ")));

    let o = symcircle(&["verify-paper", "--grid", "1"]);
    assert_eq!(o.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("prism.sc");
    fs::write(&bad, fixtures::PRISM_CORRUPTED).unwrap();
    let o = symcircle(&["verify-paper", "--prism", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.starts_with("CHECK quotient.isomorphism FAIL")));
}

#[test]
fn exports() {
    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("p.off");
    assert!(symcircle(&["export-off", path(&off)]).status.success());
    let text = fs::read_to_string(&off).unwrap();
    assert!(text.starts_with("OFF\n6 8 0\n"), "{text}");
    let poly = dir.path().join("d.txt");
    assert!(symcircle(&["export-polyline", path(&poly)])
        .status
        .success());
    assert!(fs::read_to_string(&poly)
        .unwrap()
        .starts_with("polyline v1\n"));
}
