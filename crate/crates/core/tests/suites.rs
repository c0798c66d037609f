use cartanweil::lie::{abelian, su2, su3};
use cartanweil::suites::{run_suite, Suite, SuiteConfig};
use cartanweil::Q;

fn all_pass(cfg: &SuiteConfig<Q>, suite: Suite) {
    let reports = run_suite(suite, cfg).unwrap();
    for r in &reports {
        eprintln!("{} {:?}ms", r.line(), r.runtime_ms);
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).map(|r| r.to_json(false)).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn su2_all_suites() {
    all_pass(&SuiteConfig::new(su2::<Q>().unwrap(), 8, 7), Suite::All);
}

#[test]
fn abelian_all_suites() {
    all_pass(&SuiteConfig::new(abelian::<Q>(2).unwrap(), 8, 7), Suite::All);
}

#[test]
fn su3_all_suites() {
    all_pass(&SuiteConfig::new(su3::<Q>().unwrap(), 8, 7), Suite::All);
}
