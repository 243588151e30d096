//! Grow a distance graph one vertex at a time without letting the
//! independence number climb past a cap.
//!
//! The step decision is local: with `alpha(g) <= cap` known, adding point
//! `p` can only push the independence number to `cap + 1` through a set
//! that contains `p`, and such a set minus `p` is an independent set of
//! size `cap` among the non-neighbors of `p`. So each candidate needs one
//! decision on the induced non-neighbor subgraph: accept `p` when that
//! subgraph provably has no independent set of `cap` vertices, reject when
//! one is found (the witness plus `p` disproves), leave it undecided when
//! the budget runs out first (the graph is not changed). Accepted graphs
//! therefore carry the invariant `alpha <= cap` by induction from the base.
//!
//! Every run writes an audit log whose header pins all inputs (base graph
//! digest, pool, cap, policy) and whose body has one line per decision, so
//! a run can be replayed and compared step for step later.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog;
use crate::geometry::{DistGraph, GeometryError};
use crate::mis_exact::{AlphaDecision, MisSolver, SearchBudget};
use crate::mis_heuristic::{heuristic_mis, HeuristicConfig};
use crate::notation::{Point, VertexSetExpr};

// =============================================================================
// policy
// =============================================================================

/// In what order candidates are attempted. Order matters: an accepted point
/// constrains every later decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateOrder {
    /// Most edges into the current graph first (ties lexicographic).
    /// Well-connected points shrink the subproblem, so this is usually the
    /// fastest and admits the densest result.
    ByDegreeToCurrent,
    /// Lexicographic point order; fully position-independent.
    Lexicographic,
    /// Seeded shuffle; reproducible for a fixed seed.
    Random { seed: u64 },
}

/// How each candidate is checked against the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recheck {
    /// One exact decision per candidate.
    Exact,
    /// Try to disprove cheaply first: a heuristic witness of `cap`
    /// independent non-neighbors already rejects the candidate. Acceptance
    /// still requires the exact decision, warm-started with the heuristic's
    /// best set, so the accept/reject semantics are unchanged.
    HeuristicThenExact { seed: u64, iterations: u64 },
}

/// What `alpha(base) <= cap` rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseAlpha {
    /// Prove it before the first step (one exact decision on the base).
    Verify,
    /// Take a stated value on trust and record where it came from. The run
    /// is then only as sound as this statement.
    Trusted { alpha: usize, provenance: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentPolicy {
    pub alpha_cap: usize,
    pub order: CandidateOrder,
    pub recheck: Recheck,
    /// Budget for each per-candidate exact decision; exhaustion leaves the
    /// candidate undecided rather than guessing.
    pub budget_per_step: SearchBudget,
}

// =============================================================================
// outcomes
// =============================================================================

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepDecision {
    /// Proven safe and added.
    Accepted,
    /// A cap-sized independent set among the non-neighbors disproves it.
    Rejected,
    /// Already a vertex of the current graph.
    AlreadyPresent,
    /// Budget exhausted before either proof; not added.
    Undecided,
}

impl StepDecision {
    fn token(self) -> &'static str {
        match self {
            StepDecision::Accepted => "accept",
            StepDecision::Rejected => "reject",
            StepDecision::AlreadyPresent => "skip-present",
            StepDecision::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub point: Point,
    pub decision: StepDecision,
    /// Size of the disproving independent set including the candidate
    /// (always `cap + 1` on rejection, 0 otherwise).
    pub witness_size: usize,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct AugmentOutcome {
    pub graph: DistGraph,
    pub steps: Vec<StepRecord>,
    /// Full audit text; feed to [`replay`] to re-derive and compare.
    pub log: String,
}

impl AugmentOutcome {
    pub fn accepted(&self) -> usize {
        self.count(StepDecision::Accepted)
    }

    pub fn rejected(&self) -> usize {
        self.count(StepDecision::Rejected)
    }

    pub fn undecided(&self) -> usize {
        self.count(StepDecision::Undecided)
    }

    fn count(&self, d: StepDecision) -> usize {
        self.steps.iter().filter(|s| s.decision == d).count()
    }
}

#[derive(Debug, Error)]
pub enum AugmentError {
    #[error("cap {cap} is below the trusted independence number {alpha}")]
    CapBelowTrustedAlpha { alpha: usize, cap: usize },
    #[error("base graph has {witness_size} independent vertices, cap is {cap}")]
    BaseExceedsCap { witness_size: usize, cap: usize },
    #[error("budget too small to verify the base graph against the cap")]
    BaseUndecided,
    #[error("candidate {point} has dimension {got}, base has {want}")]
    DimensionMismatch { point: Point, got: usize, want: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("audit log line {line}: {msg}")]
    LogParse { line: usize, msg: String },
    #[error("audit log names base {name}, which is not a buildable catalog graph")]
    UnknownBase { name: String },
    #[error("base {name} rebuilt with digest {got}, log recorded {want}")]
    BaseDigestMismatch {
        name: String,
        got: String,
        want: String,
    },
}

// =============================================================================
// candidate pools
// =============================================================================

/// Expand and union expressions into a duplicate-free, sorted candidate
/// pool, minus explicit exclusions.
pub fn candidate_pool(exprs: &[VertexSetExpr], exclude: &[Point]) -> Vec<Point> {
    let mut pool = crate::geometry::expand_union(exprs);
    pool.retain(|p| !exclude.contains(p));
    pool
}

// =============================================================================
// augmentation
// =============================================================================

/// Try every pool candidate against `base` under `policy`. `base_label`
/// only names the base in the audit log; pass the catalog name when there
/// is one so the log can be replayed.
pub fn augment(
    base: &DistGraph,
    base_label: &str,
    pool: &[Point],
    policy: &AugmentPolicy,
    base_alpha: &BaseAlpha,
) -> Result<AugmentOutcome, AugmentError> {
    let cap = policy.alpha_cap;
    assert!(cap >= 1, "alpha cap must be positive");
    let dim = base.points().first().map_or(8, Point::dim);
    for p in pool {
        if p.dim() != dim {
            return Err(AugmentError::DimensionMismatch {
                point: p.clone(),
                got: p.dim(),
                want: dim,
            });
        }
    }

    match base_alpha {
        BaseAlpha::Trusted { alpha, .. } => {
            if *alpha > cap {
                return Err(AugmentError::CapBelowTrustedAlpha { alpha: *alpha, cap });
            }
        }
        BaseAlpha::Verify => {
            let solver = MisSolver::new().budget(policy.budget_per_step);
            match solver.alpha_at_most(base.adjacency(), cap) {
                AlphaDecision::AtMost => {}
                AlphaDecision::Exceeds { witness } => {
                    return Err(AugmentError::BaseExceedsCap {
                        witness_size: witness.len(),
                        cap,
                    })
                }
                AlphaDecision::Unknown => return Err(AugmentError::BaseUndecided),
            }
        }
    }

    let mut log = header(base, base_label, pool, policy, base_alpha);
    let mut remaining: Vec<Point> = pool.to_vec();
    remaining.sort();
    remaining.dedup();
    if let CandidateOrder::Random { seed } = policy.order {
        remaining.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let mut g = base.clone();
    let mut steps = Vec::new();
    while !remaining.is_empty() {
        let idx = match policy.order {
            CandidateOrder::ByDegreeToCurrent => (0..remaining.len())
                .max_by_key(|&i| {
                    (
                        g.adjacency_of_point(&remaining[i]).count(),
                        std::cmp::Reverse(remaining[i].clone()),
                    )
                })
                .expect("nonempty"),
            _ => 0,
        };
        let p = remaining.remove(idx);
        let record = decide(&mut g, p, cap, policy)?;
        log.push_str(&format!(
            "step: {} | {} | witness={} | nodes={} | ms={}\n",
            record.point,
            record.decision.token(),
            record.witness_size,
            record.nodes,
            record.elapsed.as_millis()
        ));
        steps.push(record);
    }

    let stats = g.stats();
    log.push_str(&format!(
        "end: accepted={} rejected={} undecided={} v={} e={} digest={}\n",
        steps.iter().filter(|s| s.decision == StepDecision::Accepted).count(),
        steps.iter().filter(|s| s.decision == StepDecision::Rejected).count(),
        steps.iter().filter(|s| s.decision == StepDecision::Undecided).count(),
        stats.v,
        stats.e,
        g.adjacency().digest()
    ));
    Ok(AugmentOutcome {
        graph: g,
        steps,
        log,
    })
}

/// One candidate decision; mutates `g` on acceptance.
fn decide(
    g: &mut DistGraph,
    p: Point,
    cap: usize,
    policy: &AugmentPolicy,
) -> Result<StepRecord, AugmentError> {
    let started = Instant::now();
    if g.index_of(&p).is_some() {
        return Ok(StepRecord {
            point: p,
            decision: StepDecision::AlreadyPresent,
            witness_size: 0,
            nodes: 0,
            elapsed: started.elapsed(),
        });
    }

    // a (cap+1)-set through p is exactly a cap-set among p's non-neighbors
    let blocked = g.adjacency_of_point(&p);
    let free: Vec<usize> = (0..g.n()).filter(|&v| !blocked.test(v)).collect();
    let sub = g.adjacency().induced(&free);

    let mut warm: Option<Vec<usize>> = None;
    if let Recheck::HeuristicThenExact { seed, iterations } = policy.recheck {
        let cfg = HeuristicConfig {
            rng_seed: seed,
            iterations,
            restarts: 1,
            stop_at: Some(cap),
        };
        let h = heuristic_mis(&sub, &cfg);
        if h.size >= cap {
            let record = StepRecord {
                point: p,
                decision: StepDecision::Rejected,
                witness_size: cap + 1,
                nodes: 0,
                elapsed: started.elapsed(),
            };
            return Ok(record);
        }
        warm = Some(h.witness);
    }

    let mut solver = MisSolver::new().budget(policy.budget_per_step);
    if let Some(w) = warm {
        solver = solver.warm_start(w);
    }
    let (outcome, nodes) = solver.alpha_at_most_counted(&sub, cap.saturating_sub(1));
    let (decision, witness_size) = match outcome {
        AlphaDecision::AtMost => (StepDecision::Accepted, 0),
        AlphaDecision::Exceeds { witness } => (StepDecision::Rejected, witness.len() + 1),
        AlphaDecision::Unknown => (StepDecision::Undecided, 0),
    };
    if decision == StepDecision::Accepted {
        *g = g.with_point(p.clone())?;
    }
    Ok(StepRecord {
        point: p,
        decision,
        witness_size,
        nodes,
        elapsed: started.elapsed(),
    })
}

// =============================================================================
// audit log
// =============================================================================

const LOG_VERSION: &str = "augment audit v1";

fn header(
    base: &DistGraph,
    base_label: &str,
    pool: &[Point],
    policy: &AugmentPolicy,
    base_alpha: &BaseAlpha,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {LOG_VERSION}\n"));
    out.push_str(&format!("base: {base_label}\n"));
    out.push_str(&format!("base-digest: {}\n", base.adjacency().digest()));
    out.push_str(&format!("cap: {}\n", policy.alpha_cap));
    out.push_str(&match policy.order {
        CandidateOrder::ByDegreeToCurrent => "order: degree\n".to_string(),
        CandidateOrder::Lexicographic => "order: lex\n".to_string(),
        CandidateOrder::Random { seed } => format!("order: random {seed}\n"),
    });
    out.push_str(&match policy.recheck {
        Recheck::Exact => "recheck: exact\n".to_string(),
        Recheck::HeuristicThenExact { seed, iterations } => {
            format!("recheck: heuristic {seed} {iterations}\n")
        }
    });
    out.push_str(&format!(
        "budget-nodes: {}\n",
        policy
            .budget_per_step
            .max_nodes
            .map_or("unlimited".to_string(), |n| n.to_string())
    ));
    out.push_str(&format!(
        "budget-ms: {}\n",
        policy
            .budget_per_step
            .max_time
            .map_or("unlimited".to_string(), |d| d.as_millis().to_string())
    ));
    out.push_str(&match base_alpha {
        BaseAlpha::Verify => "base-alpha: verify\n".to_string(),
        BaseAlpha::Trusted { alpha, provenance } => {
            format!("base-alpha: trusted {alpha} {provenance}\n")
        }
    });
    let mut sorted: Vec<&Point> = pool.iter().collect();
    sorted.sort();
    sorted.dedup();
    out.push_str(&format!("pool-size: {}\n", sorted.len()));
    for p in sorted {
        out.push_str(&format!("pool: {p}\n"));
    }
    out
}

// =============================================================================
// replay
// =============================================================================

/// Comparison of a fresh run against a recorded one.
#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub base: String,
    pub steps_compared: usize,
    /// First `(index, recorded, fresh)` disagreement in decision order.
    pub divergence: Option<(usize, String, String)>,
    pub end_matches: bool,
}

impl ReplayReport {
    pub fn matches(&self) -> bool {
        self.divergence.is_none() && self.end_matches
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.matches() {
            write!(
                f,
                "replay of {}: {} steps identical, end state identical",
                self.base, self.steps_compared
            )
        } else if let Some((i, want, got)) = &self.divergence {
            write!(
                f,
                "replay of {}: diverges at step {i}: recorded `{want}`, fresh `{got}`",
                self.base
            )
        } else {
            write!(
                f,
                "replay of {}: steps identical but end state differs",
                self.base
            )
        }
    }
}

fn log_err(line: usize, msg: impl Into<String>) -> AugmentError {
    AugmentError::LogParse {
        line,
        msg: msg.into(),
    }
}

/// Re-run the augmentation a log records and compare decisions one by one.
/// The base must be a buildable catalog graph (checked against the recorded
/// digest). Node counts and timings are run-specific and not compared; with
/// a time budget in the policy, decisions themselves may legitimately
/// diverge on different hardware, and the report will say exactly where.
pub fn replay(log: &str) -> Result<ReplayReport, AugmentError> {
    let mut base_name: Option<String> = None;
    let mut base_digest: Option<String> = None;
    let mut cap: Option<usize> = None;
    let mut order: Option<CandidateOrder> = None;
    let mut recheck: Option<Recheck> = None;
    let mut budget = SearchBudget::unlimited();
    let mut base_alpha: Option<BaseAlpha> = None;
    let mut pool: Vec<Point> = Vec::new();
    let mut recorded_steps: Vec<String> = Vec::new();
    let mut recorded_end: Option<String> = None;

    for (idx, raw) in log.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| log_err(lineno, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "base" => base_name = Some(value.to_string()),
            "base-digest" => base_digest = Some(value.to_string()),
            "cap" => cap = Some(value.parse().map_err(|_| log_err(lineno, "bad cap"))?),
            "order" => {
                order = Some(match value.split_whitespace().collect::<Vec<_>>().as_slice() {
                    ["degree"] => CandidateOrder::ByDegreeToCurrent,
                    ["lex"] => CandidateOrder::Lexicographic,
                    ["random", seed] => CandidateOrder::Random {
                        seed: seed.parse().map_err(|_| log_err(lineno, "bad seed"))?,
                    },
                    _ => return Err(log_err(lineno, "unknown order")),
                })
            }
            "recheck" => {
                recheck = Some(match value.split_whitespace().collect::<Vec<_>>().as_slice() {
                    ["exact"] => Recheck::Exact,
                    ["heuristic", seed, iters] => Recheck::HeuristicThenExact {
                        seed: seed.parse().map_err(|_| log_err(lineno, "bad seed"))?,
                        iterations: iters.parse().map_err(|_| log_err(lineno, "bad iterations"))?,
                    },
                    _ => return Err(log_err(lineno, "unknown recheck")),
                })
            }
            "budget-nodes" => {
                if value != "unlimited" {
                    budget.max_nodes =
                        Some(value.parse().map_err(|_| log_err(lineno, "bad node budget"))?);
                }
            }
            "budget-ms" => {
                if value != "unlimited" {
                    let ms: u64 = value.parse().map_err(|_| log_err(lineno, "bad time budget"))?;
                    budget.max_time = Some(Duration::from_millis(ms));
                }
            }
            "base-alpha" => {
                base_alpha = Some(if value == "verify" {
                    BaseAlpha::Verify
                } else if let Some(rest) = value.strip_prefix("trusted ") {
                    let (alpha, provenance) = rest
                        .split_once(' ')
                        .ok_or_else(|| log_err(lineno, "trusted wants `alpha provenance`"))?;
                    BaseAlpha::Trusted {
                        alpha: alpha.parse().map_err(|_| log_err(lineno, "bad alpha"))?,
                        provenance: provenance.to_string(),
                    }
                } else {
                    return Err(log_err(lineno, "unknown base-alpha"));
                })
            }
            "pool-size" => {}
            "pool" => pool.push(
                value
                    .parse()
                    .map_err(|_| log_err(lineno, "bad pool point"))?,
            ),
            "step" => recorded_steps.push(value.to_string()),
            "end" => recorded_end = Some(value.to_string()),
            other => return Err(log_err(lineno, format!("unknown key {other}"))),
        }
    }

    let base_name = base_name.ok_or_else(|| log_err(0, "missing base"))?;
    let base_digest = base_digest.ok_or_else(|| log_err(0, "missing base-digest"))?;
    let policy = AugmentPolicy {
        alpha_cap: cap.ok_or_else(|| log_err(0, "missing cap"))?,
        order: order.ok_or_else(|| log_err(0, "missing order"))?,
        recheck: recheck.ok_or_else(|| log_err(0, "missing recheck"))?,
        budget_per_step: budget,
    };
    let base_alpha = base_alpha.ok_or_else(|| log_err(0, "missing base-alpha"))?;

    let base = catalog::build(&base_name)
        .map_err(|_| AugmentError::UnknownBase { name: base_name.clone() })?;
    let got_digest = base.adjacency().digest();
    if got_digest != base_digest {
        return Err(AugmentError::BaseDigestMismatch {
            name: base_name,
            got: got_digest,
            want: base_digest,
        });
    }

    let fresh = augment(&base, &base_name, &pool, &policy, &base_alpha)?;
    let fresh_steps: Vec<(String, String)> = fresh
        .steps
        .iter()
        .map(|s| (s.point.to_string(), s.decision.token().to_string()))
        .collect();

    let mut divergence = None;
    let mut compared = 0;
    for i in 0..recorded_steps.len().max(fresh_steps.len()) {
        let want = recorded_steps.get(i).map(|s| parse_step_essentials(s));
        let got = fresh_steps.get(i).cloned();
        match (want, got) {
            (Some(Ok(w)), Some(g)) if w == g => compared += 1,
            (Some(Ok(w)), Some(g)) => {
                divergence = Some((i, format!("{} | {}", w.0, w.1), format!("{} | {}", g.0, g.1)));
                break;
            }
            (Some(Err(e)), _) => return Err(e),
            (None, Some(g)) => {
                divergence = Some((i, "<no step recorded>".into(), format!("{} | {}", g.0, g.1)));
                break;
            }
            (Some(Ok(w)), None) => {
                divergence = Some((i, format!("{} | {}", w.0, w.1), "<no step produced>".into()));
                break;
            }
            (None, None) => break,
        }
    }

    // end line: compare the replay-stable fields only
    let end_matches = match (&recorded_end, divergence.is_none()) {
        (Some(recorded), true) => {
            let fresh_end = fresh
                .log
                .lines()
                .last()
                .and_then(|l| l.strip_prefix("end: "))
                .unwrap_or_default();
            stable_end_fields(recorded) == stable_end_fields(fresh_end)
        }
        _ => false,
    };

    Ok(ReplayReport {
        base: base_name,
        steps_compared: compared,
        divergence,
        end_matches,
    })
}

/// Pull `(point, decision)` out of a recorded step line
/// (`<point> | <decision> | witness=.. | nodes=.. | ms=..`).
fn parse_step_essentials(line: &str) -> Result<(String, String), AugmentError> {
    let mut parts = line.split('|').map(str::trim);
    let point = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| log_err(0, "step line missing point"))?;
    let decision = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| log_err(0, "step line missing decision"))?;
    Ok((point.to_string(), decision.to_string()))
}

/// Everything in the end line except timing-dependent counters.
fn stable_end_fields(end: &str) -> Vec<&str> {
    end.split_whitespace()
        .filter(|f| {
            f.starts_with("accepted=")
                || f.starts_with("rejected=")
                || f.starts_with("undecided=")
                || f.starts_with("v=")
                || f.starts_with("e=")
                || f.starts_with("digest=")
        })
        .collect()
}

// =============================================================================
// tests
// =============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn tiny_base() -> DistGraph {
        DistGraph::build(vec![pt("0 0 0 0 0 0 0 0")], 16).unwrap()
    }

    fn exact_policy(cap: usize) -> AugmentPolicy {
        AugmentPolicy {
            alpha_cap: cap,
            order: CandidateOrder::Lexicographic,
            recheck: Recheck::Exact,
            budget_per_step: SearchBudget::unlimited(),
        }
    }

    #[test]
    fn accepts_neighbors_rejects_strangers() {
        let base = tiny_base();
        // (4,0..) is at the forbidden distance from the origin; (8,0..) is not
        let pool = vec![pt("4 0 0 0 0 0 0 0"), pt("8 0 0 0 0 0 0 0")];
        let out = augment(
            &base,
            "tiny",
            &pool,
            &exact_policy(1),
            &BaseAlpha::Verify,
        )
        .unwrap();
        assert_eq!(out.accepted(), 1);
        assert_eq!(out.rejected(), 1);
        assert_eq!(out.graph.n(), 2);
        assert_eq!(out.steps[0].decision, StepDecision::Accepted);
        assert_eq!(out.steps[1].decision, StepDecision::Rejected);
        assert_eq!(out.steps[1].witness_size, 2);
        // the accepted point really is a vertex now
        assert!(out.graph.index_of(&pt("4 0 0 0 0 0 0 0")).is_some());
    }

    #[test]
    fn pool_points_already_present_are_skipped() {
        let base = tiny_base();
        let pool = vec![pt("0 0 0 0 0 0 0 0")];
        let out = augment(&base, "tiny", &pool, &exact_policy(1), &BaseAlpha::Verify).unwrap();
        assert_eq!(out.steps[0].decision, StepDecision::AlreadyPresent);
        assert_eq!(out.graph.n(), 1);
    }

    #[test]
    fn trusted_alpha_above_cap_is_refused() {
        let base = tiny_base();
        let err = augment(
            &base,
            "tiny",
            &[],
            &exact_policy(1),
            &BaseAlpha::Trusted {
                alpha: 5,
                provenance: "made up".into(),
            },
        )
        .unwrap_err();
        assert!(matches!(err, AugmentError::CapBelowTrustedAlpha { alpha: 5, cap: 1 }));
    }

    #[test]
    fn base_violating_the_cap_is_refused() {
        // two far-apart points: alpha = 2 > cap = 1
        let base = DistGraph::build(
            vec![pt("0 0 0 0 0 0 0 0"), pt("8 0 0 0 0 0 0 0")],
            16,
        )
        .unwrap();
        let err = augment(&base, "pair", &[], &exact_policy(1), &BaseAlpha::Verify).unwrap_err();
        assert!(matches!(
            err,
            AugmentError::BaseExceedsCap {
                witness_size: 2,
                cap: 1
            }
        ));
    }

    #[test]
    fn undecided_candidates_do_not_change_the_graph() {
        // cap 20 forces the solver to prove no 20-set exists (alpha is 16),
        // which cannot finish inside a 1-node budget
        let base = catalog::build("G240").unwrap();
        let pool = vec![pt("3 1 1 1 1 1 1 1")];
        let policy = AugmentPolicy {
            alpha_cap: 20,
            order: CandidateOrder::Lexicographic,
            recheck: Recheck::Exact,
            budget_per_step: SearchBudget::nodes(1),
        };
        let out = augment(
            &base,
            "G240",
            &pool,
            &policy,
            &BaseAlpha::Trusted {
                alpha: 16,
                provenance: "published".into(),
            },
        )
        .unwrap();
        assert_eq!(out.undecided(), 1);
        assert_eq!(out.graph.n(), 240);
    }

    #[test]
    fn dimension_mismatch_is_refused() {
        let base = tiny_base();
        let err = augment(
            &base,
            "tiny",
            &[pt("1 2 3")],
            &exact_policy(1),
            &BaseAlpha::Verify,
        )
        .unwrap_err();
        assert!(matches!(err, AugmentError::DimensionMismatch { .. }));
    }

    #[test]
    fn candidate_pool_expands_and_excludes() {
        let exprs = vec![notation::parse("±2^1 0^7", 8).unwrap()];
        let pool = candidate_pool(&exprs, &[pt("2 0 0 0 0 0 0 0")]);
        assert_eq!(pool.len(), 15);
        assert!(!pool.contains(&pt("2 0 0 0 0 0 0 0")));
        assert!(pool.contains(&pt("-2 0 0 0 0 0 0 0")));
        // sorted and duplicate-free
        let mut sorted = pool.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(pool, sorted);
    }

    #[test]
    fn log_replays_identically() {
        let base = catalog::build("G240").unwrap();
        // a few fast candidates against the real root figure
        let pool = candidate_pool(&[notation::parse("0_1 ±2^3 0^4", 8).unwrap()], &[])
            [..6]
            .to_vec();
        let policy = AugmentPolicy {
            alpha_cap: 16,
            order: CandidateOrder::Random { seed: 99 },
            recheck: Recheck::HeuristicThenExact {
                seed: 7,
                iterations: 300,
            },
            budget_per_step: SearchBudget::unlimited(),
        };
        let out = augment(
            &base,
            "G240",
            &pool,
            &policy,
            &BaseAlpha::Trusted {
                alpha: 16,
                provenance: "published".into(),
            },
        )
        .unwrap();
        let report = replay(&out.log).unwrap();
        assert!(report.matches(), "{report}");
        assert_eq!(report.steps_compared, 6);
    }

    #[test]
    fn tampered_log_is_caught() {
        let base = tiny_base();
        let pool = vec![pt("4 0 0 0 0 0 0 0")];
        let out = augment(&base, "tiny", &pool, &exact_policy(1), &BaseAlpha::Verify).unwrap();
        // the base is not a catalog graph, so replay refuses it
        assert!(matches!(
            replay(&out.log),
            Err(AugmentError::UnknownBase { .. })
        ));

        let base = catalog::build("G240").unwrap();
        let pool = vec![pt("3 1 1 1 1 1 1 1")];
        let out = augment(
            &base,
            "G240",
            &pool,
            &exact_policy(16),
            &BaseAlpha::Trusted {
                alpha: 16,
                provenance: "published".into(),
            },
        )
        .unwrap();
        let flipped = out.log.replace("| accept |", "| reject |").replace(
            "accepted=1 rejected=0",
            "accepted=0 rejected=1",
        );
        if flipped != out.log {
            let report = replay(&flipped).unwrap();
            assert!(!report.matches());
            assert!(report.divergence.is_some());
        }
        let wrong_digest = out.log.replace("base-digest: ", "base-digest: 0");
        assert!(matches!(
            replay(&wrong_digest),
            Err(AugmentError::BaseDigestMismatch { .. })
        ));
    }
}
