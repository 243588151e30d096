//! Exact maximum independent set by branch and bound.
//!
//! An independent set in `g` is a clique in the complement, so the search
//! runs as a bitset max-clique over the complement adjacency: vertices are
//! reordered by complement degree, each node greedily partitions its
//! candidate set into color classes (a clique takes at most one vertex per
//! class, so the class number bounds the achievable size), and branches are
//! taken in reverse color order so one failed bound prunes the whole rest of
//! the node. Budgets make the solver anytime: a result is either exact or
//! marked as truncated, never silently wrong.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::bits::Bits;
use crate::geometry::AdjGraph;

// =============================================================================
// budgets and results
// =============================================================================

/// Caps on a single solver call. `None` means uncapped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }

    pub fn time(max_time: Duration) -> Self {
        SearchBudget {
            max_nodes: None,
            max_time: Some(max_time),
        }
    }
}

/// Outcome of a maximum-independent-set search.
///
/// `witness` is always an independent set of `size` vertices. `exact` says
/// the search ran to completion, so `size` is the independence number;
/// otherwise the budget was hit and `size` is only a lower bound.
#[derive(Clone, Debug)]
pub struct MisResult {
    pub size: usize,
    pub witness: Vec<usize>,
    pub exact: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub budget_hit: bool,
}

/// Answer to "is the independence number at most k?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaDecision {
    /// Search completed without finding k+1 independent vertices.
    AtMost,
    /// Disproof: an independent set of k+1 vertices.
    Exceeds { witness: Vec<usize> },
    /// Budget ran out first.
    Unknown,
}

// =============================================================================
// solver configuration
// =============================================================================

/// Builder-style configuration for the exact search.
#[derive(Clone, Debug)]
pub struct MisSolver {
    budget: SearchBudget,
    threads: usize,
    warm_start: Option<Vec<usize>>,
}

impl Default for MisSolver {
    fn default() -> Self {
        MisSolver::new()
    }
}

impl MisSolver {
    pub fn new() -> Self {
        MisSolver {
            budget: SearchBudget::unlimited(),
            threads: 1,
            warm_start: None,
        }
    }

    pub fn budget(mut self, budget: SearchBudget) -> Self {
        self.budget = budget;
        self
    }

    /// Worker count for splitting the root branches. 1 keeps the search
    /// fully sequential and node-for-node reproducible.
    pub fn threads(mut self, threads: usize) -> Self {
        assert!(threads >= 1, "thread count must be positive");
        self.threads = threads;
        self
    }

    /// Known independent set used as the initial bound. Must be independent
    /// in the graph passed to the solve call.
    pub fn warm_start(mut self, witness: Vec<usize>) -> Self {
        self.warm_start = Some(witness);
        self
    }

    /// Maximum independent set of `g`, subject to the budget.
    pub fn max_independent_set(&self, g: &AdjGraph) -> MisResult {
        self.run(g, None)
    }

    /// Decide whether the independence number of `g` is at most `k`.
    /// Stops as soon as either answer is certain.
    pub fn alpha_at_most(&self, g: &AdjGraph, k: usize) -> AlphaDecision {
        self.alpha_at_most_counted(g, k).0
    }

    /// Like `alpha_at_most`, also reporting the nodes spent on the decision.
    pub fn alpha_at_most_counted(&self, g: &AdjGraph, k: usize) -> (AlphaDecision, u64) {
        if g.n() <= k {
            return (AlphaDecision::AtMost, 0);
        }
        let r = self.run(g, Some(k + 1));
        let decision = if r.size > k {
            let mut witness = r.witness;
            witness.truncate(k + 1);
            AlphaDecision::Exceeds { witness }
        } else if r.exact {
            AlphaDecision::AtMost
        } else {
            AlphaDecision::Unknown
        };
        (decision, r.nodes_explored)
    }

    fn run(&self, g: &AdjGraph, target: Option<usize>) -> MisResult {
        let started = Instant::now();
        let n = g.n();
        if n == 0 {
            return MisResult {
                size: 0,
                witness: Vec::new(),
                exact: true,
                nodes_explored: 0,
                elapsed: started.elapsed(),
                budget_hit: false,
            };
        }

        let initial = match &self.warm_start {
            Some(ws) => {
                assert!(g.is_independent(ws), "warm start is not independent");
                ws.clone()
            }
            None => greedy_independent_set(g),
        };
        if let Some(t) = target {
            if initial.len() >= t {
                return MisResult {
                    size: initial.len(),
                    witness: initial,
                    exact: true,
                    nodes_explored: 0,
                    elapsed: started.elapsed(),
                    budget_hit: false,
                };
            }
        }

        // Permute by complement degree, largest first: high-degree complement
        // vertices color worst, so branching on them early shrinks the tree.
        let comp = g.complement();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| (std::cmp::Reverse(comp.degree(v)), v));
        let mut back = vec![0usize; n];
        for (slot, &v) in perm.iter().enumerate() {
            back[v] = slot;
        }
        let mut adj: Vec<Bits> = vec![Bits::new(n); n];
        for (slot, &v) in perm.iter().enumerate() {
            for u in comp.neighbors(v) {
                adj[slot].set(back[u]);
            }
        }

        let deadline = self.budget.max_time.map(|d| started + d);
        // In decision mode nothing below the target matters, so the pruning
        // floor starts at target - 1 and only a target-sized set ever gets
        // recorded. The witness then stays at the warm start unless one is
        // found, and `size` reports the witness honestly either way.
        let floor = match target {
            Some(t) => initial.len().max(t - 1),
            None => initial.len(),
        };
        let shared = Shared {
            best: AtomicUsize::new(floor),
            witness: Mutex::new(initial),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            found: AtomicBool::new(false),
        };

        // Root branches, pruned and distributed exactly as the sequential
        // loop would visit them.
        let root = Bits::full(n);
        let mut order = Vec::new();
        let mut scratch_a = Bits::new(n);
        let mut scratch_b = Bits::new(n);
        color_sort(&root, &adj, &mut order, &mut scratch_a, &mut scratch_b);
        let mut branches = Vec::new();
        let mut work = root;
        for &(v, color) in order.iter().rev() {
            let mut cand = Bits::new(n);
            cand.assign_and(&work, &adj[v as usize]);
            branches.push(RootBranch {
                vertex: v as usize,
                color: color as usize,
                cand,
            });
            work.clear(v as usize);
        }

        let workers = self.threads.min(branches.len()).max(1);
        if workers == 1 {
            let mut search = Search::new(&adj, &perm, &shared, self.budget.max_nodes, deadline, target);
            for b in &branches {
                search.run_root_branch(b);
                if search.done() {
                    break;
                }
            }
            search.flush_nodes();
        } else {
            // Round-robin split; workers share the incumbent atomically, so
            // the final size matches the sequential search even though node
            // counts and the winning witness may differ between runs.
            let chunks: Vec<Vec<&RootBranch>> = (0..workers)
                .map(|w| branches.iter().skip(w).step_by(workers).collect())
                .collect();
            rayon::scope(|scope| {
                for chunk in &chunks {
                    let adj = &adj;
                    let perm = &perm;
                    let shared = &shared;
                    let max_nodes = self.budget.max_nodes;
                    scope.spawn(move |_| {
                        let mut search = Search::new(adj, perm, shared, max_nodes, deadline, target);
                        for b in chunk {
                            search.run_root_branch(b);
                            if search.done() {
                                break;
                            }
                        }
                        search.flush_nodes();
                    });
                }
            });
        }

        let mut witness = shared.witness.into_inner().unwrap();
        witness.sort_unstable();
        let size = witness.len();
        debug_assert!(g.is_independent(&witness));
        let budget_hit = shared.stop.load(Ordering::SeqCst);
        let found = shared.found.load(Ordering::SeqCst);
        MisResult {
            size,
            witness,
            exact: !budget_hit || found,
            nodes_explored: shared.nodes.load(Ordering::SeqCst),
            elapsed: started.elapsed(),
            budget_hit,
        }
    }
}

// =============================================================================
// search internals
// =============================================================================

struct RootBranch {
    vertex: usize,
    color: usize,
    cand: Bits,
}

struct Shared {
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    found: AtomicBool,
}

const POLL_INTERVAL: u64 = 8192;

struct Search<'a> {
    adj: &'a [Bits],
    perm: &'a [usize],
    shared: &'a Shared,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    target: Option<usize>,
    cur: Vec<usize>,
    cands: Vec<Bits>,
    orders: Vec<Vec<(u32, u32)>>,
    scratch: Vec<Bits>,
    local_nodes: u64,
    unflushed: u64,
    stopped: bool,
}

impl<'a> Search<'a> {
    fn new(
        adj: &'a [Bits],
        perm: &'a [usize],
        shared: &'a Shared,
        max_nodes: Option<u64>,
        deadline: Option<Instant>,
        target: Option<usize>,
    ) -> Self {
        let n = adj.len();
        Search {
            adj,
            perm,
            shared,
            max_nodes,
            deadline,
            target,
            cur: Vec::with_capacity(n),
            cands: vec![Bits::new(n); n + 1],
            orders: vec![Vec::new(); n + 1],
            scratch: vec![Bits::new(n), Bits::new(n)],
            local_nodes: 0,
            unflushed: 0,
            stopped: false,
        }
    }

    fn done(&self) -> bool {
        self.stopped
            || self.shared.stop.load(Ordering::Relaxed)
            || self.shared.found.load(Ordering::Relaxed)
    }

    fn flush_nodes(&mut self) {
        self.shared.nodes.fetch_add(self.unflushed, Ordering::Relaxed);
        self.unflushed = 0;
    }

    /// One accounting tick per explored node; polls the budget cheaply.
    fn tick(&mut self) {
        self.local_nodes += 1;
        self.unflushed += 1;
        if let Some(cap) = self.max_nodes {
            if self.shared.nodes.load(Ordering::Relaxed) + self.unflushed >= cap {
                self.flush_nodes();
                if self.shared.nodes.load(Ordering::Relaxed) >= cap {
                    self.shared.stop.store(true, Ordering::Relaxed);
                    self.stopped = true;
                }
            }
        }
        if self.local_nodes.is_multiple_of(POLL_INTERVAL) {
            self.flush_nodes();
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.shared.stop.store(true, Ordering::Relaxed);
                    self.stopped = true;
                }
            }
        }
    }

    fn best(&self) -> usize {
        self.shared.best.load(Ordering::Relaxed)
    }

    /// Report `self.cur` as an improved independent set. Writes to `best`
    /// happen only under the witness lock, so the stored set always matches
    /// the published size.
    fn record(&mut self) {
        let size = self.cur.len();
        if size <= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let mut witness = self.shared.witness.lock().unwrap();
        if size > self.shared.best.load(Ordering::SeqCst) {
            *witness = self.cur.iter().map(|&s| self.perm[s]).collect();
            self.shared.best.store(size, Ordering::SeqCst);
            if let Some(t) = self.target {
                if size >= t {
                    self.shared.found.store(true, Ordering::SeqCst);
                }
            }
        }
    }

    fn run_root_branch(&mut self, b: &RootBranch) {
        if b.color <= self.best() {
            return;
        }
        self.cur.push(b.vertex);
        self.record();
        if !self.done() {
            if b.cand.is_empty() {
                self.tick();
            } else {
                self.cands[1].copy_from(&b.cand);
                self.expand(1);
            }
        }
        self.cur.pop();
    }

    /// Expand the node whose candidate set sits in `self.cands[depth]`.
    fn expand(&mut self, depth: usize) {
        self.tick();
        if self.done() {
            return;
        }
        let mut work = std::mem::replace(&mut self.cands[depth], Bits::new(0));
        let mut order = std::mem::take(&mut self.orders[depth]);
        let mut uncolored = self.scratch.pop().expect("scratch pool");
        let mut avail = self.scratch.pop().expect("scratch pool");
        color_sort(&work, self.adj, &mut order, &mut uncolored, &mut avail);
        self.scratch.push(avail);
        self.scratch.push(uncolored);
        for &(v, color) in order.iter().rev() {
            if self.done() {
                break;
            }
            // every later vertex has color <= this one, so one failed bound
            // closes the whole node
            if self.cur.len() + color as usize <= self.best() {
                break;
            }
            self.cur.push(v as usize);
            self.record();
            if self.done() {
                self.cur.pop();
                break;
            }
            self.cands[depth + 1].assign_and(&work, &self.adj[v as usize]);
            if !self.cands[depth + 1].is_empty() {
                self.expand(depth + 1);
            }
            self.cur.pop();
            work.clear(v as usize);
        }
        self.orders[depth] = order;
        self.cands[depth] = work;
    }
}

/// Greedy partition of `cand` into color classes; vertices of one class are
/// mutually nonadjacent in `adj`, so any clique meets each class at most
/// once. Output is ordered class by class, color numbers nondecreasing.
fn color_sort(
    cand: &Bits,
    adj: &[Bits],
    order: &mut Vec<(u32, u32)>,
    uncolored: &mut Bits,
    avail: &mut Bits,
) {
    order.clear();
    uncolored.copy_from(cand);
    let mut color = 0u32;
    while !uncolored.is_empty() {
        color += 1;
        avail.copy_from(uncolored);
        while let Some(v) = avail.first() {
            avail.clear(v);
            uncolored.clear(v);
            avail.and_not_with(&adj[v]);
            order.push((v as u32, color));
        }
    }
}

// =============================================================================
// reference implementations
// =============================================================================

/// Maximal independent set by lowest-degree-first insertion; the cheap
/// initial bound for the exact search.
pub fn greedy_independent_set(g: &AdjGraph) -> Vec<usize> {
    let n = g.n();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| (g.degree(v), v));
    let mut chosen = Vec::new();
    let mut blocked = Bits::new(n);
    for v in verts {
        if !blocked.test(v) {
            chosen.push(v);
            blocked.set(v);
            blocked.or_with(g.row(v));
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Plain include/exclude recursion, usable as an oracle for small graphs.
/// Panics beyond 30 vertices; the branch-and-bound solver is for real work.
pub fn brute_force_mis(g: &AdjGraph) -> (usize, Vec<usize>) {
    assert!(g.n() <= 30, "brute force is for oracle-sized graphs");
    let n = g.n();
    let mut alive = Bits::full(n);
    let mut cur = Vec::new();
    let mut best = Vec::new();
    fn go(g: &AdjGraph, alive: &mut Bits, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        // bound: even taking every live vertex cannot beat the incumbent
        if cur.len() + alive.count() <= best.len() {
            return;
        }
        let Some(v) = alive.iter_ones().max_by_key(|&v| alive.intersection_count(g.row(v)))
        else {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        };
        if alive.intersection_count(g.row(v)) == 0 {
            // isolated in the live set: always take it
            alive.clear(v);
            cur.push(v);
            go(g, alive, cur, best);
            cur.pop();
            alive.set(v);
            return;
        }
        // include v
        let saved: Vec<usize> = g.row(v).iter_ones().filter(|&u| alive.test(u)).collect();
        alive.clear(v);
        for &u in &saved {
            alive.clear(u);
        }
        cur.push(v);
        go(g, alive, cur, best);
        cur.pop();
        for &u in &saved {
            alive.set(u);
        }
        // exclude v
        go(g, alive, cur, best);
        alive.set(v);
    }
    go(g, &mut alive, &mut cur, &mut best);
    best.sort_unstable();
    (best.len(), best)
}

// =============================================================================
// tests
// =============================================================================
