use chroma8_core::augment::{
    augment, candidate_pool, AugmentPolicy, BaseAlpha, CandidateOrder, Recheck, StepDecision,
};
use chroma8_core::catalog;
use chroma8_core::mis_exact::SearchBudget;
use chroma8_core::notation;

#[test]
#[ignore]
fn measure_g720_expansion() {
    let base = catalog::build("G720").unwrap();
    let expr = notation::parse("+3_1 o1^7", 8).unwrap();
    let pool = candidate_pool(&[expr], &[]);
    assert_eq!(pool.len(), 64);
    let policy = AugmentPolicy {
        alpha_cap: 34,
        order: CandidateOrder::ByDegreeToCurrent,
        recheck: Recheck::Exact,
        budget_per_step: SearchBudget::unlimited(),
    };
    let t0 = std::time::Instant::now();
    let out = augment(
        &base,
        "G720",
        &pool,
        &policy,
        &BaseAlpha::Trusted {
            alpha: 33,
            provenance: "published".into(),
        },
    )
    .unwrap();
    for (i, s) in out.steps.iter().enumerate() {
        eprintln!(
            "step {:2} {:?} -> {:?} nodes={} ms={}",
            i,
            s.point,
            s.decision,
            s.nodes,
            s.elapsed.as_millis()
        );
    }
    let accepted = out
        .steps
        .iter()
        .filter(|s| matches!(s.decision, StepDecision::Accepted))
        .count();
    eprintln!("total: {} accepted, {:.1}s", accepted, t0.elapsed().as_secs_f64());
    assert_eq!(accepted, 64);
    let want = catalog::build("G784").unwrap();
    let got: std::collections::BTreeSet<_> = out.graph.points().iter().cloned().collect();
    let exp: std::collections::BTreeSet<_> = want.points().iter().cloned().collect();
    assert_eq!(got, exp);
    eprintln!("final vertex set equals G784: yes");
}
