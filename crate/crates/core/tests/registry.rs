use hyperplane_lcs::fixtures::{fixture, registry};
use hyperplane_lcs::report::{run, AnalysisRequest, CheckStatus};

#[test]
fn every_fixture_passes_its_goldens() {
    for f in registry() {
        let report = run(&AnalysisRequest::builtin(&f.name)).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        let golden: Vec<_> = report.checks.iter().filter(|c| c.name.starts_with("fixture:")).collect();
        assert_eq!(golden.len(), f.golden.len(), "{}", f.name);
        assert!(golden.iter().all(|c| c.status == CheckStatus::Pass), "{}", f.name);
    }
}

#[test]
fn parametrized_families() {
    for m in [3, 8, 12] {
        let report = run(&AnalysisRequest::builtin(&format!("pencil({m})")).bounds(3, 4, 4)).unwrap();
        assert!(report.failures().is_empty());
    }
    let report = run(&AnalysisRequest::builtin("x3-family(9)").bounds(3, 4, 4)).unwrap();
    assert_eq!(report.lookup("a3").map(|v| v.to_string()), Some("4".into()));
    assert!(fixture("pencil(2)").is_err());
    assert!(fixture("x3-family(30)").is_err());
}
