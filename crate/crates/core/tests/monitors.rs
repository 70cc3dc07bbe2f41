use workbench::family::build_family;
use workbench::monitor::{monitor_lemma, universal_identities, Lemma, MonitorError, MonitorParams};
use workbench::rewrite::direct_deductions;

fn run(lemma: Lemma) -> workbench::monitor::MonitorReport {
    let r = monitor_lemma(lemma, MonitorParams::default()).unwrap();
    assert!(r.passed(), "{}: {:?}", lemma.name(), r.samples);
    assert!(r.instances > 0);
    r
}

#[test]
fn cheap_monitors_hold_at_n2() {
    for lemma in [Lemma::Directly, Lemma::FicClass, Lemma::CorIx1hiy, Lemma::Adj1c1c2] {
        run(lemma);
    }
}

#[test]
fn directly_counts_match_the_family() {
    let r = run(Lemma::Directly);
    // every family word is one instance, every other family word one step
    let fam = build_family(2).unwrap();
    assert_eq!(r.steps, fam.len() * (fam.len() - 1));
    let sigma = universal_identities(&fam);
    let steps = direct_deductions(&fam[0], &sigma, usize::MAX).unwrap();
    assert_eq!(steps.len(), fam.len() - 1);
    for s in &steps {
        assert!(s.matched.prefix.is_empty() && s.matched.suffix.is_empty());
    }
}

#[test]
fn small_caps_overflow() {
    let err = monitor_lemma(
        Lemma::ThreeIsoterms,
        MonitorParams {
            n: 2,
            max_instances: 10,
        },
    )
    .unwrap_err();
    assert!(matches!(err, MonitorError::GeneratorOverflow { cap: 10, .. }));
}

#[test]
fn names_parse() {
    for l in Lemma::ALL {
        assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
    }
    assert!("nope".parse::<Lemma>().is_err());
}
