//! Proper coloring: the pigeonhole lower bound, saturation-greedy
//! construction, min-conflicts repair, and a CNF encoding for exact work
//! on small graphs.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits::Bits;
use crate::geometry::AdjGraph;

// =============================================================================
// bounds
// =============================================================================

/// Fraction-free pigeonhole bound: any proper coloring needs at least
/// `ceil(v / alpha)` classes, since every class is an independent set.
/// Valid only when `alpha` is the true independence number (or an upper
/// bound on it); plugging in a heuristic witness size yields an estimate,
/// not a bound.
pub fn chi_lower(v: usize, alpha: usize) -> usize {
    assert!(alpha > 0, "independence number must be positive");
    v.div_ceil(alpha)
}

/// `v / alpha` formatted to at most three decimals, trailing zeros trimmed,
/// matching the conventional way these ratios are quoted.
pub fn format_score(v: usize, alpha: usize) -> String {
    let mut s = format!("{:.3}", v as f64 / alpha as f64);
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

/// Chromatic-number bracket for one graph, as derived from its vertex count
/// and independence number. `chi_low` is a genuine lower bound only when
/// `alpha_exact` is true; from a heuristic witness it is merely the value
/// the bound would take if the witness were maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: String,
    pub v: usize,
    pub alpha: usize,
    pub alpha_exact: bool,
    pub chi_low: usize,
    pub chi_up: Option<usize>,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        v: usize,
        alpha: usize,
        alpha_exact: bool,
        chi_up: Option<usize>,
    ) -> Self {
        BoundReport {
            name: name.into(),
            v,
            alpha,
            alpha_exact,
            chi_low: chi_lower(v, alpha),
            chi_up,
        }
    }

    pub fn score(&self) -> f64 {
        self.v as f64 / self.alpha as f64
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: v={} alpha={} ({}) score={} chi>={}{}",
            self.name,
            self.v,
            self.alpha,
            if self.alpha_exact { "proven" } else { "estimate" },
            format_score(self.v, self.alpha),
            self.chi_low,
            match self.chi_up {
                Some(u) => format!(" chi<={u}"),
                None => String::new(),
            }
        )?;
        if !self.alpha_exact {
            write!(f, " [witness only; not a proof]")?;
        }
        Ok(())
    }
}

// =============================================================================
// colorings
// =============================================================================

/// Color per vertex, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    classes: Vec<u32>,
}

impl Coloring {
    pub fn new(classes: Vec<u32>) -> Self {
        Coloring { classes }
    }

    pub fn class_of(&self, v: usize) -> u32 {
        self.classes[v]
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    /// Number of distinct colors appearing.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.classes.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// No edge joins two vertices of the same class.
    pub fn is_proper(&self, g: &AdjGraph) -> bool {
        self.classes.len() == g.n()
            && (0..g.n()).all(|u| g.neighbors(u).all(|v| self.classes[u] != self.classes[v]))
    }
}

/// Saturation-greedy coloring: repeatedly color the uncolored vertex seeing
/// the most distinct neighbor colors (ties: higher degree, then lower
/// index) with the smallest color legal for it. Deterministic.
pub fn dsatur(g: &AdjGraph) -> Coloring {
    let n = g.n();
    let cap = g.stats().deg_max + 1;
    let mut classes = vec![u32::MAX; n];
    let mut neighbor_colors: Vec<Bits> = vec![Bits::new(cap); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| classes[v] == u32::MAX)
            .max_by_key(|&v| (neighbor_colors[v].count(), g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex");
        let color = (0..cap)
            .find(|&c| !neighbor_colors[v].test(c))
            .expect("greedy color within degree bound");
        classes[v] = color as u32;
        for u in g.neighbors(v) {
            neighbor_colors[u].set(color);
        }
    }
    Coloring { classes }
}

/// Min-conflicts search for a proper coloring with exactly `k` classes.
/// Starts from a seeded random assignment and repeatedly moves a random
/// conflicted vertex to a least-conflicted color. Returns `None` when
/// `max_steps` runs out first; success is a proper coloring, so failures
/// are honest "don't know".
pub fn improve_coloring(g: &AdjGraph, k: usize, seed: u64, max_steps: u64) -> Option<Coloring> {
    assert!(k > 0, "class count must be positive");
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes: Vec<u32> = (0..n).map(|_| rng.random_range(0..k) as u32).collect();
    let mut counts = vec![0u32; k];
    for _ in 0..max_steps {
        let conflicted: Vec<usize> = (0..n)
            .filter(|&v| g.neighbors(v).any(|u| classes[u] == classes[v]))
            .collect();
        if conflicted.is_empty() {
            return Some(Coloring { classes });
        }
        let v = conflicted[rng.random_range(0..conflicted.len())];
        counts.fill(0);
        for u in g.neighbors(v) {
            counts[classes[u] as usize] += 1;
        }
        let best = *counts.iter().min().expect("k > 0");
        let options: Vec<usize> = (0..k).filter(|&c| counts[c] == best).collect();
        classes[v] = options[rng.random_range(0..options.len())] as u32;
    }
    // steps exhausted; check the final state before giving up
    let done = (0..n).all(|v| g.neighbors(v).all(|u| classes[u] != classes[v]));
    done.then_some(Coloring { classes })
}

// =============================================================================
// CNF encoding
// =============================================================================

/// Propositional formula in conjunctive normal form. Literals follow the
/// DIMACS convention: variable indices start at 1, negative means negated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    /// Standard DIMACS CNF text.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Variable for "vertex `v` gets color `c`" (0-based inputs, 1-based var).
pub fn color_var(v: usize, k: usize, c: usize) -> i32 {
    (v * k + c + 1) as i32
}

/// Encode "g has a proper k-coloring": every vertex takes exactly one of k
/// colors and no edge is monochromatic.
pub fn encode_kcoloring(g: &AdjGraph, k: usize) -> Cnf {
    assert!(k > 0, "class count must be positive");
    let n = g.n();
    let mut clauses = Vec::new();
    for v in 0..n {
        clauses.push((0..k).map(|c| color_var(v, k, c)).collect());
        for c in 0..k {
            for d in (c + 1)..k {
                clauses.push(vec![-color_var(v, k, c), -color_var(v, k, d)]);
            }
        }
    }
    for u in 0..n {
        for v in g.neighbors(u) {
            if v > u {
                for c in 0..k {
                    clauses.push(vec![-color_var(u, k, c), -color_var(v, k, c)]);
                }
            }
        }
    }
    Cnf {
        num_vars: n * k,
        clauses,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("model assigns vertex {vertex} no color")]
    NoColor { vertex: usize },
    #[error("model assigns vertex {vertex} colors {first} and {second}")]
    TwoColors {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("model leaves edge {u}-{v} monochromatic")]
    Monochromatic { u: usize, v: usize },
    #[error("model has {got} variables, encoding wants {want}")]
    WrongSize { got: usize, want: usize },
}

/// Read a coloring back out of a satisfying assignment (`model[i]` is the
/// truth value of variable `i+1`). Anything that is not an exactly-one,
/// proper model is rejected, so a buggy solver cannot smuggle in a bad
/// coloring.
pub fn decode_assignment(g: &AdjGraph, k: usize, model: &[bool]) -> Result<Coloring, DecodeError> {
    let n = g.n();
    if model.len() != n * k {
        return Err(DecodeError::WrongSize {
            got: model.len(),
            want: n * k,
        });
    }
    let mut classes = vec![u32::MAX; n];
    for v in 0..n {
        for c in 0..k {
            if model[v * k + c] {
                if classes[v] != u32::MAX {
                    return Err(DecodeError::TwoColors {
                        vertex: v,
                        first: classes[v] as usize,
                        second: c,
                    });
                }
                classes[v] = c as u32;
            }
        }
        if classes[v] == u32::MAX {
            return Err(DecodeError::NoColor { vertex: v });
        }
    }
    for u in 0..n {
        for v in g.neighbors(u) {
            if v > u && classes[u] == classes[v] {
                return Err(DecodeError::Monochromatic { u, v });
            }
        }
    }
    Ok(Coloring { classes })
}

// =============================================================================
// tests
// =============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> AdjGraph {
        let mut g = AdjGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn triangle() -> AdjGraph {
        AdjGraph::complete(3)
    }

    #[test]
    fn pigeonhole_rounds_up() {
        assert_eq!(chi_lower(843, 34), 25);
        assert_eq!(chi_lower(720, 33), 22);
        assert_eq!(chi_lower(680, 34), 20);
        assert_eq!(chi_lower(1, 1), 1);
    }

    #[test]
    fn score_strings_match_convention() {
        assert_eq!(format_score(516, 24), "21.5");
        assert_eq!(format_score(843, 34), "24.794");
        assert_eq!(format_score(327, 17), "19.235");
        assert_eq!(format_score(347, 18), "19.278");
        assert_eq!(format_score(768, 33), "23.273");
        assert_eq!(format_score(10, 1), "10");
    }

    #[test]
    fn bound_report_display() {
        let proven = BoundReport::new("G843", 843, 34, true, Some(27));
        assert_eq!(
            proven.to_string(),
            "G843: v=843 alpha=34 (proven) score=24.794 chi>=25 chi<=27"
        );
        let estimate = BoundReport::new("X", 100, 7, false, None);
        assert_eq!(estimate.chi_low, 15);
        assert!(estimate.to_string().contains("witness only"));
    }

    #[test]
    fn dsatur_known_graphs() {
        assert_eq!(dsatur(&triangle()).colors_used(), 3);
        assert_eq!(dsatur(&AdjGraph::complete(4)).colors_used(), 4);
        assert_eq!(dsatur(&cycle(6)).colors_used(), 2);
        assert_eq!(dsatur(&cycle(5)).colors_used(), 3);
        assert_eq!(dsatur(&AdjGraph::new(5)).colors_used(), 1);
        let c = dsatur(&cycle(9));
        assert!(c.is_proper(&cycle(9)));
        assert_eq!(c.colors_used(), 3);
    }

    #[test]
    fn dsatur_and_the_bound_agree_on_a_catalog_graph() {
        let g = crate::catalog::build("G240").unwrap().adjacency().clone();
        let c = dsatur(&g);
        assert!(c.is_proper(&g));
        // the greedy class count can never beat the pigeonhole bound
        assert!(c.colors_used() >= chi_lower(240, 16));
    }

    #[test]
    fn min_conflicts_succeeds_when_colors_suffice() {
        let g = cycle(5);
        let c = improve_coloring(&g, 3, 7, 10_000).expect("5-cycle is 3-colorable");
        assert!(c.is_proper(&g));
        assert!(c.colors_used() <= 3);
        let k4 = AdjGraph::complete(4);
        let c = improve_coloring(&k4, 4, 7, 10_000).expect("clique needs its size");
        assert!(c.is_proper(&k4));
        assert_eq!(c.colors_used(), 4);
    }

    #[test]
    fn min_conflicts_gives_up_honestly() {
        // an odd cycle is not 2-colorable; the search must return None
        assert_eq!(improve_coloring(&cycle(5), 2, 11, 20_000), None);
        assert_eq!(improve_coloring(&AdjGraph::complete(4), 3, 11, 20_000), None);
    }

    #[test]
    fn min_conflicts_is_reproducible() {
        let g = cycle(9);
        let a = improve_coloring(&g, 3, 42, 10_000);
        let b = improve_coloring(&g, 3, 42, 10_000);
        assert_eq!(a, b);
    }

    #[test]
    fn triangle_encoding_has_the_textbook_size() {
        let cnf = encode_kcoloring(&triangle(), 3);
        assert_eq!(cnf.num_vars, 9);
        assert_eq!(cnf.clauses.len(), 21);
        let text = cnf.to_dimacs();
        assert!(text.starts_with("p cnf 9 21\n"));
        assert_eq!(text.lines().count(), 22);
        assert!(text.lines().skip(1).all(|l| l.ends_with(" 0")));
    }

    #[test]
    #[allow(clippy::identity_op)] // keep the v * k + c indexing pattern visible
    fn decode_accepts_exactly_proper_models() {
        let g = triangle();
        let k = 3;
        // vertex v takes color v
        let mut model = vec![false; 9];
        for v in 0..3 {
            model[v * k + v] = true;
        }
        let c = decode_assignment(&g, k, &model).unwrap();
        assert!(c.is_proper(&g));
        assert_eq!(c.colors_used(), 3);

        let mut none = model.clone();
        none[2 * k + 2] = false;
        assert_eq!(
            decode_assignment(&g, k, &none),
            Err(DecodeError::NoColor { vertex: 2 })
        );

        let mut twice = model.clone();
        twice[2 * k + 0] = true;
        assert!(matches!(
            decode_assignment(&g, k, &twice),
            Err(DecodeError::TwoColors { vertex: 2, .. })
        ));

        let mut mono = model.clone();
        mono[1 * k + 1] = false;
        mono[1 * k + 0] = true;
        assert_eq!(
            decode_assignment(&g, k, &mono),
            Err(DecodeError::Monochromatic { u: 0, v: 1 })
        );

        assert_eq!(
            decode_assignment(&g, k, &model[..6]),
            Err(DecodeError::WrongSize { got: 6, want: 9 })
        );
    }

    proptest! {
        #[test]
        fn dsatur_is_proper_and_within_degree_bound(
            n in 1usize..40,
            edges in proptest::collection::vec((0usize..40, 0usize..40), 0..200),
        ) {
            let mut g = AdjGraph::new(n);
            for (a, b) in edges {
                let (u, v) = (a % n, b % n);
                if u != v && !g.is_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
            let c = dsatur(&g);
            prop_assert!(c.is_proper(&g));
            prop_assert!(c.colors_used() <= g.stats().deg_max + 1);
        }
    }
}
