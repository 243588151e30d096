//! Heuristic maximum independent set: iterated local search.
//!
//! Each restart climbs from a random maximal solution using (1,2)-swaps
//! (trade one member for two nonadjacent outside vertices that only it
//! blocks) and, when stuck, perturbs by deleting a random tenth of the
//! solution and re-saturating. The best solution per restart is kept
//! monotonically; restarts use independent seeded streams and merge
//! deterministically, so results are reproducible regardless of how the
//! restarts are scheduled. Witness sizes are lower bounds on the
//! independence number, never proofs.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::geometry::AdjGraph;

/// Fraction of the current solution dropped by one perturbation.
pub const PERTURB_FRACTION: f64 = 0.10;

/// Knobs for [`heuristic_mis`]. `iterations` counts swap-or-perturb steps
/// per restart; restarts explore independently and merge by best size with
/// ties going to the lowest restart index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeuristicConfig {
    pub rng_seed: u64,
    pub iterations: u64,
    pub restarts: u32,
    /// Stop a restart early once this size is reached (e.g. a published
    /// independence number); `None` runs the full iteration budget.
    pub stop_at: Option<usize>,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            rng_seed: 0xC8C0_1057,
            iterations: 20_000,
            restarts: 4,
            stop_at: None,
        }
    }
}

/// Outcome of a heuristic run. `witness` is always independent; `size` is
/// its length and only ever a lower bound on the independence number.
#[derive(Clone, Debug)]
pub struct HeuristicResult {
    pub size: usize,
    pub witness: Vec<usize>,
    pub best_restart: u32,
    pub elapsed: Duration,
}

/// True when `witness` is an independent set in `g`; callers should gate
/// any use of a heuristic witness on this.
pub fn verify_witness(g: &AdjGraph, witness: &[usize]) -> bool {
    g.is_independent(witness)
}

/// Iterated local search for a large independent set.
pub fn heuristic_mis(g: &AdjGraph, cfg: &HeuristicConfig) -> HeuristicResult {
    let started = Instant::now();
    let restarts = cfg.restarts.max(1);
    let mut outcomes: Vec<(usize, Vec<usize>, u32)> = (0..restarts)
        .into_par_iter()
        .map(|restart| {
            let (size, witness) = run_restart(g, cfg, restart);
            (size, witness, restart)
        })
        .collect();
    outcomes.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
    let (size, mut witness, best_restart) = outcomes.swap_remove(0);
    witness.sort_unstable();
    debug_assert!(g.is_independent(&witness));
    HeuristicResult {
        size,
        witness,
        best_restart,
        elapsed: started.elapsed(),
    }
}

fn restart_rng(seed: u64, restart: u32) -> ChaCha8Rng {
    // distinct, reproducible stream per restart
    ChaCha8Rng::seed_from_u64(seed ^ (0x9E37_79B9_7F4A_7C15u64).wrapping_mul(restart as u64 + 1))
}

fn run_restart(g: &AdjGraph, cfg: &HeuristicConfig, restart: u32) -> (usize, Vec<usize>) {
    let mut rng = restart_rng(cfg.rng_seed, restart);
    let mut state = State::new(g);
    state.saturate(&mut rng);
    let mut best: Vec<usize> = state.members.clone();
    let reached = |best: &Vec<usize>| cfg.stop_at.is_some_and(|t| best.len() >= t);
    for _ in 0..cfg.iterations {
        if reached(&best) {
            break;
        }
        if !state.try_swap(&mut rng) {
            state.perturb(&mut rng);
        }
        if state.members.len() > best.len() {
            best = state.members.clone();
        }
    }
    (best.len(), best)
}

// =============================================================================
// solution state
// =============================================================================

/// Current independent set plus, for every outside vertex, how many members
/// block it (its tightness). Free vertices (tightness 0) can always join.
struct State<'a> {
    g: &'a AdjGraph,
    in_set: Bits,
    members: Vec<usize>,
    /// members[member_pos[v]] == v for members; usize::MAX otherwise
    member_pos: Vec<usize>,
    tight: Vec<u32>,
    scan: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(g: &'a AdjGraph) -> Self {
        let n = g.n();
        State {
            g,
            in_set: Bits::new(n),
            members: Vec::new(),
            member_pos: vec![usize::MAX; n],
            tight: vec![0; n],
            scan: Vec::new(),
        }
    }

    fn insert(&mut self, v: usize) {
        debug_assert!(!self.in_set.test(v) && self.tight[v] == 0);
        self.in_set.set(v);
        self.member_pos[v] = self.members.len();
        self.members.push(v);
        for u in self.g.neighbors(v) {
            self.tight[u] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.in_set.test(v));
        self.in_set.clear(v);
        let pos = self.member_pos[v];
        let last = self.members.pop().expect("nonempty");
        if last != v {
            self.members[pos] = last;
            self.member_pos[last] = pos;
        }
        self.member_pos[v] = usize::MAX;
        for u in self.g.neighbors(v) {
            self.tight[u] -= 1;
        }
    }

    /// Insert random free vertices until the solution is maximal.
    fn saturate(&mut self, rng: &mut ChaCha8Rng) {
        loop {
            self.scan.clear();
            for v in 0..self.g.n() {
                if !self.in_set.test(v) && self.tight[v] == 0 {
                    self.scan.push(v);
                }
            }
            if self.scan.is_empty() {
                return;
            }
            // insertions invalidate freeness of later picks, so re-check
            while !self.scan.is_empty() {
                let i = rng.random_range(0..self.scan.len());
                let v = self.scan.swap_remove(i);
                if self.tight[v] == 0 && !self.in_set.test(v) {
                    self.insert(v);
                }
            }
        }
    }

    /// Look for a (1,2)-swap: a member x and two nonadjacent vertices
    /// blocked only by x. Applies the first one found (random member order)
    /// and re-saturates. Returns whether the solution grew.
    fn try_swap(&mut self, rng: &mut ChaCha8Rng) -> bool {
        self.scan.clear();
        self.scan.extend_from_slice(&self.members);
        self.scan.shuffle(rng);
        for idx in 0..self.scan.len() {
            let x = self.scan[idx];
            // tightness 1 plus adjacency to x means x is the only blocker
            let mut ones: Vec<usize> = Vec::new();
            for u in self.g.neighbors(x) {
                if self.tight[u] == 1 {
                    ones.push(u);
                }
            }
            if ones.len() < 2 {
                continue;
            }
            for i in 0..ones.len() - 1 {
                for j in (i + 1)..ones.len() {
                    if !self.g.is_edge(ones[i], ones[j]) {
                        let (u, w) = (ones[i], ones[j]);
                        self.remove(x);
                        self.insert(u);
                        self.insert(w);
                        self.saturate(rng);
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Delete a random tenth of the solution (at least one member), then
    /// rebuild to maximality. May move sideways or down; the caller keeps
    /// the best solution seen.
    fn perturb(&mut self, rng: &mut ChaCha8Rng) {
        let drop = ((self.members.len() as f64 * PERTURB_FRACTION).ceil() as usize).max(1);
        for _ in 0..drop {
            if self.members.is_empty() {
                break;
            }
            let i = rng.random_range(0..self.members.len());
            let v = self.members[i];
            self.remove(v);
        }
        self.saturate(rng);
    }
}

// =============================================================================
// tests
// =============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mis_exact::brute_force_mis;
    use rand::rngs::StdRng;

    fn random_graph(n: usize, density: f64, rng: &mut StdRng) -> AdjGraph {
        let mut g = AdjGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(density) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn witness_is_always_independent() {
        let mut rng = StdRng::seed_from_u64(3);
        for round in 0..8 {
            let g = random_graph(40 + round * 10, 0.2 + 0.07 * round as f64, &mut rng);
            let r = heuristic_mis(&g, &HeuristicConfig::default());
            assert!(verify_witness(&g, &r.witness));
            assert_eq!(r.size, r.witness.len());
        }
    }

    #[test]
    fn finds_the_optimum_on_oracle_sized_graphs() {
        let mut rng = StdRng::seed_from_u64(9);
        let cfg = HeuristicConfig {
            iterations: 2_000,
            restarts: 2,
            ..HeuristicConfig::default()
        };
        for round in 0..10 {
            let n = 14 + round;
            let g = random_graph(n, 0.35, &mut rng);
            let (opt, _) = brute_force_mis(&g);
            let r = heuristic_mis(&g, &cfg);
            assert_eq!(r.size, opt, "round {round}");
        }
    }

    #[test]
    fn same_config_reproduces_the_same_witness() {
        let mut rng = StdRng::seed_from_u64(15);
        let g = random_graph(80, 0.25, &mut rng);
        let cfg = HeuristicConfig::default();
        let a = heuristic_mis(&g, &cfg);
        let b = heuristic_mis(&g, &cfg);
        assert_eq!(a.size, b.size);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.best_restart, b.best_restart);
    }

    #[test]
    fn more_iterations_never_hurt() {
        let mut rng = StdRng::seed_from_u64(21);
        let g = random_graph(100, 0.3, &mut rng);
        let short = HeuristicConfig {
            iterations: 50,
            restarts: 1,
            ..HeuristicConfig::default()
        };
        let long = HeuristicConfig {
            iterations: 5_000,
            restarts: 1,
            ..HeuristicConfig::default()
        };
        let a = heuristic_mis(&g, &short);
        let b = heuristic_mis(&g, &long);
        assert!(b.size >= a.size);
    }

    #[test]
    fn stop_target_short_circuits() {
        let mut rng = StdRng::seed_from_u64(27);
        let g = random_graph(120, 0.2, &mut rng);
        let baseline = heuristic_mis(&g, &HeuristicConfig::default());
        let capped = HeuristicConfig {
            stop_at: Some(3),
            ..HeuristicConfig::default()
        };
        let r = heuristic_mis(&g, &capped);
        assert!(r.size >= 3);
        assert!(verify_witness(&g, &r.witness));
        assert!(baseline.size >= r.size);
    }

    #[test]
    fn empty_and_edgeless_graphs() {
        let r = heuristic_mis(&AdjGraph::new(0), &HeuristicConfig::default());
        assert_eq!(r.size, 0);
        let r = heuristic_mis(&AdjGraph::new(12), &HeuristicConfig::default());
        assert_eq!(r.size, 12);
        let r = heuristic_mis(&AdjGraph::complete(9), &HeuristicConfig::default());
        assert_eq!(r.size, 1);
    }
}
