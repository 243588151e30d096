//! Sign/parity shorthand for integer point sets.
//!
//! An expression is a space-separated list of terms over a fixed coordinate
//! dimension, e.g. `±2^2 0^6`, `+1_1 e1_368 0^4`, `+3_1 o1^7`. Each term
//! contributes `repeat` coordinates of one magnitude:
//!
//! ```text
//! expr := term (SPACE term)*          optionally wrapped in "±( ... )"
//! term := [sign|parity] INT ["^" INT] ["_" DIGITS]
//! sign := "+" | "-" | "±" | "+-"
//! parity := "e" | "o"
//! ```
//!
//! * `+` / `-` put one uniform sign on every coordinate of the term;
//! * `±` varies the sign of each coordinate independently (`±2^3 0^5` has
//!   56 * 8 = 448 points);
//! * `e` / `o` restrict the independent signs to an even / odd number of
//!   minus signs, counted within that term's coordinates only;
//! * a bare nonzero magnitude means `+`; zero takes no prefix.
//!
//! `_368` pins a term to coordinates 3, 6, 8 (1-based single digits).
//! Unpinned terms distribute over all remaining coordinates. The `^` repeat
//! may be omitted for a pinned term (it is the subscript length) and for at
//! most one unpinned term (it is whatever the others leave free). Wrapping
//! the whole expression in `±( ... )` unions the set with its global
//! negation.
//!
//! Two unpinned terms may not share a magnitude: a point of such a set would
//! not determine which coordinates came from which term, and the expansion
//! would contain duplicates. With that rule, `expand` is duplicate-free and
//! `count` can be purely combinatorial.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

// =============================================================================
// points
// =============================================================================

/// Integer coordinate vector. Ordering is lexicographic by coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<i32>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Exact squared Euclidean distance.
    pub fn sq_dist(&self, other: &Point) -> i64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let d = a as i64 - b as i64;
                d * d
            })
            .sum()
    }

    pub fn negated(&self) -> Point {
        Point(self.0.iter().map(|&c| -c).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Point {
    type Err = NotationError;

    /// Whitespace-separated integers; the dimension is the token count.
    fn from_str(s: &str) -> Result<Self, NotationError> {
        let coords: Result<Vec<i32>, _> = s.split_whitespace().map(|t| t.parse()).collect();
        match coords {
            Ok(c) if !c.is_empty() => Ok(Point(c)),
            _ => Err(NotationError::MalformedPoint { text: s.to_string() }),
        }
    }
}

// =============================================================================
// expression types
// =============================================================================

/// How the signs of one term's coordinates are chosen.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SignMode {
    /// Zero, or an unprefixed nonzero magnitude (expands positive).
    None,
    Plus,
    Minus,
    /// Each coordinate independently positive or negative.
    PlusMinus,
    /// Independent signs, even number of minus signs within the term.
    ParityEven,
    /// Independent signs, odd number of minus signs within the term.
    ParityOdd,
}

impl SignMode {
    fn prefix(self) -> &'static str {
        match self {
            SignMode::None => "",
            SignMode::Plus => "+",
            SignMode::Minus => "-",
            SignMode::PlusMinus => "±",
            SignMode::ParityEven => "e",
            SignMode::ParityOdd => "o",
        }
    }
}

/// One term: `repeat` coordinates of magnitude `value`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Term {
    pub value: u32,
    pub repeat: usize,
    pub sign_mode: SignMode,
    /// Fixed 1-based coordinates, sorted; `None` distributes freely.
    pub positions: Option<Vec<u8>>,
}

impl Term {
    pub fn free(value: u32, repeat: usize, sign_mode: SignMode) -> Term {
        Term {
            value,
            repeat,
            sign_mode,
            positions: None,
        }
    }

    pub fn pinned(value: u32, sign_mode: SignMode, positions: Vec<u8>) -> Term {
        Term {
            value,
            repeat: positions.len(),
            sign_mode,
            positions: Some(positions),
        }
    }

    /// Number of sign patterns the mode admits on `repeat` coordinates.
    fn sign_patterns(&self) -> u128 {
        match self.sign_mode {
            SignMode::None | SignMode::Plus | SignMode::Minus => 1,
            SignMode::PlusMinus => 1u128 << self.repeat,
            // half of all patterns have even parity, half odd (repeat >= 1)
            SignMode::ParityEven | SignMode::ParityOdd => 1u128 << (self.repeat - 1),
        }
    }

    /// True when the term's own point patterns map to each other under
    /// global negation: value 0, independent signs, or a parity mode whose
    /// parity survives flipping all `repeat` signs.
    fn negation_closed(&self) -> bool {
        self.value == 0
            || match self.sign_mode {
                SignMode::PlusMinus => true,
                SignMode::ParityEven | SignMode::ParityOdd => self.repeat.is_multiple_of(2),
                _ => false,
            }
    }
}

/// A validated expression: terms covering every coordinate exactly once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSetExpr {
    terms: Vec<Term>,
    dimension: usize,
    negate_union: bool,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NotationError {
    #[error("empty expression")]
    Empty,
    #[error("malformed term {token:?}")]
    MalformedToken { token: String },
    #[error("malformed point row {text:?}")]
    MalformedPoint { text: String },
    #[error("term repeats cover {got} coordinates, dimension is {dimension}")]
    RepeatSum { got: usize, dimension: usize },
    #[error("coordinate {position} fixed by more than one term")]
    DuplicatePosition { position: u8 },
    #[error("coordinate {position} outside dimension {dimension}")]
    PositionOutOfRange { position: u8, dimension: usize },
    #[error("parity prefix on value 0")]
    ParityOnZero,
    #[error("sign prefix on value 0")]
    SignOnZero,
    #[error("superscript omitted from more than one distributed term")]
    AmbiguousRepeat,
    #[error("repeat {repeat} disagrees with {fixed} fixed coordinates")]
    RepeatPositionsMismatch { repeat: usize, fixed: usize },
    #[error("magnitude {value} appears in two distributed terms; their expansions would overlap")]
    ValueReused { value: u32 },
}

impl VertexSetExpr {
    /// Validates the structural invariants and normalizes position order.
    pub fn new(
        mut terms: Vec<Term>,
        dimension: usize,
        negate_union: bool,
    ) -> Result<Self, NotationError> {
        if terms.is_empty() {
            return Err(NotationError::Empty);
        }
        let mut seen_positions = BTreeSet::new();
        let mut free_values = BTreeSet::new();
        let mut covered = 0usize;
        for t in &mut terms {
            if t.value == 0 {
                match t.sign_mode {
                    SignMode::None => {}
                    SignMode::ParityEven | SignMode::ParityOdd => {
                        return Err(NotationError::ParityOnZero)
                    }
                    _ => return Err(NotationError::SignOnZero),
                }
            }
            match &mut t.positions {
                Some(pos) => {
                    pos.sort_unstable();
                    if pos.len() != t.repeat {
                        return Err(NotationError::RepeatPositionsMismatch {
                            repeat: t.repeat,
                            fixed: pos.len(),
                        });
                    }
                    for &p in pos.iter() {
                        if p == 0 || p as usize > dimension {
                            return Err(NotationError::PositionOutOfRange {
                                position: p,
                                dimension,
                            });
                        }
                        if !seen_positions.insert(p) {
                            return Err(NotationError::DuplicatePosition { position: p });
                        }
                    }
                }
                None => {
                    if !free_values.insert(t.value) {
                        return Err(NotationError::ValueReused { value: t.value });
                    }
                }
            }
            if t.repeat == 0 {
                return Err(NotationError::MalformedToken {
                    token: format!("{}{}^0", t.sign_mode.prefix(), t.value),
                });
            }
            covered += t.repeat;
        }
        if covered != dimension {
            return Err(NotationError::RepeatSum {
                got: covered,
                dimension,
            });
        }
        Ok(VertexSetExpr {
            terms,
            dimension,
            negate_union,
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn negate_union(&self) -> bool {
        self.negate_union
    }

    /// True when the expanded set equals its own global negation.
    pub fn negation_closed(&self) -> bool {
        self.negate_union || self.terms.iter().all(Term::negation_closed)
    }
}

impl fmt::Display for VertexSetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negate_union {
            write!(f, "±(")?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", t.sign_mode.prefix(), t.value)?;
            match &t.positions {
                Some(pos) => {
                    write!(f, "_")?;
                    for p in pos {
                        write!(f, "{p}")?;
                    }
                }
                None => write!(f, "^{}", t.repeat)?,
            }
        }
        if self.negate_union {
            write!(f, ")")?;
        }
        Ok(())
    }
}

// =============================================================================
// parsing
// =============================================================================

/// Canonical rendering; `parse(format(e), e.dimension()) == e`.
pub fn format(expr: &VertexSetExpr) -> String {
    expr.to_string()
}

pub fn parse(text: &str, dimension: usize) -> Result<VertexSetExpr, NotationError> {
    let mut body = text.trim();
    let mut negate_union = false;
    for wrapper in ["±(", "+-("] {
        if let Some(rest) = body.strip_prefix(wrapper) {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| NotationError::MalformedToken {
                    token: body.to_string(),
                })?;
            negate_union = true;
            body = inner.trim();
            break;
        }
    }
    if body.is_empty() {
        return Err(NotationError::Empty);
    }

    let mut terms = Vec::new();
    let mut missing_repeat: Option<usize> = None; // index into terms
    for token in body.split_whitespace() {
        let (term, has_repeat) = parse_term(token)?;
        if !has_repeat {
            if missing_repeat.is_some() {
                return Err(NotationError::AmbiguousRepeat);
            }
            missing_repeat = Some(terms.len());
        }
        terms.push(term);
    }

    if let Some(idx) = missing_repeat {
        let others: usize = terms
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, t)| t.repeat)
            .sum();
        if others >= dimension {
            return Err(NotationError::RepeatSum {
                got: others,
                dimension,
            });
        }
        terms[idx].repeat = dimension - others;
    }

    VertexSetExpr::new(terms, dimension, negate_union)
}

/// Returns the term and whether its repeat is explicit (superscript or
/// subscript). Accepts `^` and `_` in either order.
fn parse_term(token: &str) -> Result<(Term, bool), NotationError> {
    let malformed = || NotationError::MalformedToken {
        token: token.to_string(),
    };

    let mut rest = token;
    let sign_mode = if let Some(r) = rest.strip_prefix("±").or_else(|| rest.strip_prefix("+-")) {
        rest = r;
        SignMode::PlusMinus
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
        SignMode::Plus
    } else if let Some(r) = rest.strip_prefix('-') {
        rest = r;
        SignMode::Minus
    } else if let Some(r) = rest.strip_prefix('e') {
        rest = r;
        SignMode::ParityEven
    } else if let Some(r) = rest.strip_prefix('o') {
        rest = r;
        SignMode::ParityOdd
    } else {
        SignMode::None
    };

    let digits = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return Err(malformed());
    }
    let value: u32 = rest[..digits].parse().map_err(|_| malformed())?;
    rest = &rest[digits..];

    let mut repeat: Option<usize> = None;
    let mut positions: Option<Vec<u8>> = None;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('^') {
            if repeat.is_some() {
                return Err(malformed());
            }
            let d = r.len() - r.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            if d == 0 {
                return Err(malformed());
            }
            repeat = Some(r[..d].parse().map_err(|_| malformed())?);
            rest = &r[d..];
        } else if let Some(r) = rest.strip_prefix('_') {
            if positions.is_some() {
                return Err(malformed());
            }
            let d = r.len() - r.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            if d == 0 {
                return Err(malformed());
            }
            positions = Some(r[..d].bytes().map(|b| b - b'0').collect());
            rest = &r[d..];
        } else {
            return Err(malformed());
        }
    }

    let has_repeat = repeat.is_some() || positions.is_some();
    let term = match (repeat, &positions) {
        (Some(r), _) => Term {
            value,
            repeat: r,
            sign_mode,
            positions,
        },
        (None, Some(pos)) => Term {
            value,
            repeat: pos.len(),
            sign_mode,
            positions,
        },
        // placeholder repeat, resolved by the caller from the dimension
        (None, None) => Term {
            value,
            repeat: usize::MAX,
            sign_mode,
            positions: None,
        },
    };
    Ok((term, has_repeat))
}

// =============================================================================
// expansion and counting
// =============================================================================

/// All points of the expression, deduplicated and lexicographically sorted.
pub fn expand(expr: &VertexSetExpr) -> Vec<Point> {
    let dim = expr.dimension;
    let mut coords = vec![0i32; dim];

    // 0-based coordinates not claimed by a subscript, in increasing order
    let mut taken = vec![false; dim];
    for t in &expr.terms {
        if let Some(pos) = &t.positions {
            for &p in pos {
                taken[p as usize - 1] = true;
            }
        }
    }
    let free_slots: Vec<usize> = (0..dim).filter(|&i| !taken[i]).collect();
    let free_terms: Vec<usize> = (0..expr.terms.len())
        .filter(|&i| expr.terms[i].positions.is_none())
        .collect();

    let mut out = BTreeSet::new();
    distribute(
        expr,
        &free_terms,
        0,
        &free_slots,
        &mut vec![None; free_slots.len()],
        &mut coords,
        &mut out,
    );

    if expr.negate_union {
        let mirrored: Vec<Point> = out.iter().map(Point::negated).collect();
        out.extend(mirrored);
    }
    out.into_iter().collect()
}

/// Assigns free terms to free coordinate slots, one term at a time, then
/// enumerates sign patterns.
fn distribute(
    expr: &VertexSetExpr,
    free_terms: &[usize],
    term_pos: usize,
    free_slots: &[usize],
    slot_owner: &mut Vec<Option<usize>>,
    coords: &mut Vec<i32>,
    out: &mut BTreeSet<Point>,
) {
    if term_pos == free_terms.len() {
        emit_signs(expr, 0, free_slots, slot_owner, coords, out);
        return;
    }
    let term_idx = free_terms[term_pos];
    let want = expr.terms[term_idx].repeat;
    let open: Vec<usize> = (0..free_slots.len())
        .filter(|&s| slot_owner[s].is_none())
        .collect();
    debug_assert!(open.len() >= want);

    // choose `want` of the open slots
    let mut choice = vec![0usize; want];
    choose_slots(&open, want, 0, 0, &mut choice, &mut |sel: &[usize]| {
        for &s in sel {
            slot_owner[s] = Some(term_idx);
        }
        distribute(
            expr,
            free_terms,
            term_pos + 1,
            free_slots,
            slot_owner,
            coords,
            out,
        );
        for &s in sel {
            slot_owner[s] = None;
        }
    });
}

fn choose_slots(
    open: &[usize],
    want: usize,
    start: usize,
    depth: usize,
    choice: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == want {
        visit(choice);
        return;
    }
    for i in start..=open.len() - (want - depth) {
        choice[depth] = open[i];
        choose_slots(open, want, i + 1, depth + 1, choice, visit);
    }
}

/// With every coordinate's owning term fixed, runs through the sign patterns
/// term by term.
fn emit_signs(
    expr: &VertexSetExpr,
    term_idx: usize,
    free_slots: &[usize],
    slot_owner: &[Option<usize>],
    coords: &mut Vec<i32>,
    out: &mut BTreeSet<Point>,
) {
    if term_idx == expr.terms.len() {
        out.insert(Point(coords.clone()));
        return;
    }
    let term = &expr.terms[term_idx];

    // the 0-based coordinates this term occupies, in increasing order
    let slots: Vec<usize> = match &term.positions {
        Some(pos) => pos.iter().map(|&p| p as usize - 1).collect(),
        None => (0..free_slots.len())
            .filter(|&s| slot_owner[s] == Some(term_idx))
            .map(|s| free_slots[s])
            .collect(),
    };
    debug_assert_eq!(slots.len(), term.repeat);
    let v = term.value as i32;

    match term.sign_mode {
        SignMode::None | SignMode::Plus => {
            for &c in &slots {
                coords[c] = v;
            }
            emit_signs(expr, term_idx + 1, free_slots, slot_owner, coords, out);
        }
        SignMode::Minus => {
            for &c in &slots {
                coords[c] = -v;
            }
            emit_signs(expr, term_idx + 1, free_slots, slot_owner, coords, out);
        }
        SignMode::PlusMinus | SignMode::ParityEven | SignMode::ParityOdd => {
            let want_parity = match term.sign_mode {
                SignMode::ParityEven => Some(0),
                SignMode::ParityOdd => Some(1),
                _ => None,
            };
            for mask in 0u32..(1u32 << term.repeat) {
                if let Some(p) = want_parity {
                    if mask.count_ones() % 2 != p {
                        continue;
                    }
                }
                for (bit, &c) in slots.iter().enumerate() {
                    coords[c] = if mask >> bit & 1 == 1 { -v } else { v };
                }
                emit_signs(expr, term_idx + 1, free_slots, slot_owner, coords, out);
            }
        }
    }
}

/// `|expand(expr)|`, computed combinatorially: multinomial placement of the
/// distributed terms times the sign patterns of every term, doubled for a
/// `±( ... )` wrapper unless the set is already closed under negation.
pub fn count(expr: &VertexSetExpr) -> u128 {
    let pinned: usize = expr
        .terms
        .iter()
        .filter(|t| t.positions.is_some())
        .map(|t| t.repeat)
        .sum();
    let mut open = expr.dimension - pinned;
    let mut total: u128 = 1;
    for t in &expr.terms {
        if t.positions.is_none() {
            total = total
                .checked_mul(binomial(open, t.repeat))
                .expect("count overflow");
            open -= t.repeat;
        }
        total = total
            .checked_mul(t.sign_patterns())
            .expect("count overflow");
    }
    if expr.negate_union && !expr.terms.iter().all(Term::negation_closed) {
        total = total.checked_mul(2).expect("count overflow");
    }
    total
}

fn binomial(n: usize, k: usize) -> u128 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128).expect("count overflow") / (i as u128 + 1);
    }
    acc
}

// =============================================================================
// tests
// =============================================================================
