use std::time::Instant;

use symcircle::complex::SimplicialComplex;
use symcircle::fixtures;
use symcircle::report::{verify_paper, Status, VerifyOptions};

#[test]
fn default_run_passes() {
    let t = Instant::now();
    let r = verify_paper(&VerifyOptions::default());
    eprintln!("{r}elapsed {:?}", t.elapsed());
    assert!(r.passed(), "{r}");
    let names: Vec<&str> = r.entries().iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names.first(), Some(&"tables.prism"));
    assert_eq!(names.last(), Some(&"geometry.vertex_q"));
    assert!(r.to_string().lines().all(|l| l.starts_with("CHECK ")));
}

#[test]
fn grid_one_still_passes() {
    let r = verify_paper(&VerifyOptions {
        grid: 1,
        ..VerifyOptions::default()
    });
    assert!(r.passed(), "{r}");
}

#[test]
fn corrupted_prism_fails_quotient() {
    let prism = SimplicialComplex::from_text(fixtures::PRISM_CORRUPTED).unwrap();
    let r = verify_paper(&VerifyOptions {
        prism: Some(prism),
        ..VerifyOptions::default()
    });
    assert!(!r.passed());
    assert_eq!(r.get("quotient.isomorphism").unwrap().status, Status::Fail);
    assert_eq!(r.get("sphere.homology").unwrap().status, Status::Pass);
}
