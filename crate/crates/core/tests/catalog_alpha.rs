//! Exact independence numbers of the smaller catalog graphs.

use chroma8_core::catalog;
use chroma8_core::mis_exact::MisSolver;

fn solve(name: &str, expected: usize) {
    let g = catalog::build(name).unwrap().adjacency().clone();
    let started = std::time::Instant::now();
    let r = MisSolver::new().max_independent_set(&g);
    eprintln!(
        "{name}: alpha={} nodes={} elapsed={:.2?}",
        r.size, r.nodes_explored, started.elapsed()
    );
    assert!(r.exact);
    assert_eq!(r.size, expected);
    assert!(g.is_independent(&r.witness));
}

#[test]
fn alpha_of_g240() {
    solve("G240", 16);
}

#[test]
fn alpha_of_g327() {
    solve("G327", 17);
}

#[test]
#[ignore = "minutes-long; the acceptance suite runs it with a pinned budget"]
fn alpha_of_g516() {
    solve("G516", 24);
}
