use srd_core::codes::CodeSpace;
use srd_core::gf::parse_field_spec;
use srd_core::report;
use srd_core::verify::{self, Config, Status};

fn run(q: &str, id: &str) -> verify::TheoremReport {
    let f = parse_field_spec(q).unwrap();
    verify::run(id, &CodeSpace::new(&f).unwrap(), &Config::default()).unwrap()
}

fn computed(r: &verify::TheoremReport, id: &str) -> String {
    r.checks.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no check {id}")).computed.clone()
}

#[test]
fn web_distributions_at_three() {
    // Formulas evaluated by hand at q = 3; each sums to q^3+q^2+q+1 = 40.
    let r = run("3", "nets");
    assert_eq!(computed(&r, "webs"), "{[0, 8, 5, 27], [0, 11, 8, 21], [0, 14, 2, 24]}");
    assert!(!r.status.is_failure());
}

#[test]
fn complete_plane_orbits_at_four() {
    let r = run("4", "unique-planes");
    assert_eq!(r.status, Status::Pass);
    assert_eq!(computed(&r, "Sigma_16 OD4"), "{[5, 0, 0, 16]}");
    assert_eq!(r.enumerated["Sigma_16 matches"], 63);
    assert_eq!(r.enumerated["Sigma_18 matches"], 1260);
}

#[test]
fn constant_rank_three_orbits_at_three() {
    let r = run("3", "class-counts");
    assert_eq!(r.status, Status::Pass);
    // Both types have stabilizer of order 3(q^2+q+1) = 39 in PGL(3,3), of order 5616.
    assert_eq!(computed(&r, "d=3 extension"), "[3, 0]");
    assert_eq!(r.enumerated["constant rank 3 planes"], 2 * 5616 / 39);
}

#[test]
fn small_field_flags() {
    for id in ["solids", "class-counts", "completeness"] {
        let r = run("2", id);
        assert!(!r.status.is_failure(), "{id}");
        assert!(r.notes.iter().any(|n| n.contains("q = 2")), "{id}");
    }
}

#[test]
fn discrepancy_is_not_failure() {
    let r = run("4", "constant-rank-3");
    assert_eq!(r.status, Status::StatementDiscrepancy);
    assert_eq!(computed(&r, "OD4"), "[0, 0, 0, 21]");
}

#[test]
fn sampled_runs_never_pass() {
    let f = parse_field_spec("4").unwrap();
    let cfg = Config { budget: 1000, samples: 2000, ..Config::default() };
    let r = verify::run("r2n-h1", &CodeSpace::new(&f).unwrap(), &cfg).unwrap();
    assert!(r.checks.iter().all(|c| c.status == Status::Sampled));
}

#[test]
fn reports_are_deterministic() {
    let a = report::json(&[run("3", "solids"), run("3", "completeness")]);
    let b = report::json(&[run("3", "solids"), run("3", "completeness")]);
    assert_eq!(a, b);
    let rows = report::report_rows(&[run("3", "census")]);
    let text = report::csv(&rows).unwrap();
    assert!(text.starts_with("id,field,expected,computed,status,seconds\n"));
}
