//! Registry of the record vertex sets in dimension 8.
//!
//! Each graph ships as an embedded recipe file: a union of coordinate
//! expressions plus explicit point rows, optional negated pairs, optional
//! exclusions, and the published parameters the reconstruction is checked
//! against. Recipes are data, not code, so a transcription error shows up
//! as a failed [`verify_recipe`] instead of silently wrong geometry.
//!
//! Recipe file format (line oriented, `#` starts a comment line):
//!
//! ```text
//! name: G720
//! dim: 8
//! distance-sq: 16
//! buildable: no            # absent means yes
//! expr: ±2^3 0^5           # one line per expression, expanded and unioned
//! points:                  # explicit rows, one point per line
//! 0 -2 -2 2 0 0 0 0
//! points-negated:          # rows contributing the point and its negation
//! exclude:                 # rows removed from the union; every row must hit
//! expect-v: 720
//! expect-e: 86056
//! expect-deg-min: 229
//! expect-deg-max: 409
//! expect-alpha: 33         # optional
//! expect-chi-upper: 24     # optional
//! census: ±2^3 0^5 = 448   # one line per nonempty class
//! checksum: <sha256 over the name line and the explicit rows>
//! ```

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geometry::{DistGraph, GeometryError};
use crate::notation::{self, NotationError, Point, VertexSetExpr};

// =============================================================================
// vertex classes
// =============================================================================

/// Coordinate shape of a catalog vertex, written in the same shorthand the
/// expressions use. Parity classes count minus signs over the unit
/// coordinates of the vector; the 3- and 5-headed classes require the head
/// in the first coordinate with positive sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    /// one ±2, rest zero
    TwoSingle,
    /// three ±2, rest zero
    TwoTriple,
    /// one ±4 and one ±2, rest zero
    FourTwo,
    /// all coordinates ±1, evenly many minus
    OnesEven,
    /// all coordinates ±1, oddly many minus
    OnesOdd,
    /// +3 first, seven ±1 with oddly many minus
    ThreeOnesOdd,
    /// +3 first, seven ±1 with evenly many minus
    ThreeOnesEven,
    /// +5 first, seven ±1 with evenly many minus
    FiveOnesEven,
    /// four ±1 with evenly many minus, rest zero
    HalfOnesEven,
    /// four ±1 with oddly many minus, rest zero
    HalfOnesOdd,
}

impl VertexClass {
    pub const ALL: [VertexClass; 10] = [
        VertexClass::TwoSingle,
        VertexClass::TwoTriple,
        VertexClass::FourTwo,
        VertexClass::OnesEven,
        VertexClass::OnesOdd,
        VertexClass::ThreeOnesOdd,
        VertexClass::ThreeOnesEven,
        VertexClass::FiveOnesEven,
        VertexClass::HalfOnesEven,
        VertexClass::HalfOnesOdd,
    ];

    pub fn label(self) -> &'static str {
        match self {
            VertexClass::TwoSingle => "±2^1 0^7",
            VertexClass::TwoTriple => "±2^3 0^5",
            VertexClass::FourTwo => "±4^1 ±2^1 0^6",
            VertexClass::OnesEven => "e1^8",
            VertexClass::OnesOdd => "o1^8",
            VertexClass::ThreeOnesOdd => "+3_1 o1^7",
            VertexClass::ThreeOnesEven => "+3_1 e1^7",
            VertexClass::FiveOnesEven => "+5_1 e1^7",
            VertexClass::HalfOnesEven => "e1^4 0^4",
            VertexClass::HalfOnesOdd => "o1^4 0^4",
        }
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for VertexClass {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        VertexClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| CatalogError::UnknownClass(s.to_string()))
    }
}

/// Class of a point, or `None` when it fits no catalog class.
pub fn classify(p: &Point) -> Option<VertexClass> {
    if p.dim() != 8 {
        return None;
    }
    let mut mags: Vec<i32> = p.0.iter().map(|c| c.abs()).collect();
    mags.sort_unstable_by(|a, b| b.cmp(a));
    let minus_ones = p.0.iter().filter(|&&c| c == -1).count();
    match mags.as_slice() {
        [2, 0, 0, 0, 0, 0, 0, 0] => Some(VertexClass::TwoSingle),
        [2, 2, 2, 0, 0, 0, 0, 0] => Some(VertexClass::TwoTriple),
        [4, 2, 0, 0, 0, 0, 0, 0] => Some(VertexClass::FourTwo),
        [1, 1, 1, 1, 1, 1, 1, 1] => Some(if minus_ones % 2 == 0 {
            VertexClass::OnesEven
        } else {
            VertexClass::OnesOdd
        }),
        [3, 1, 1, 1, 1, 1, 1, 1] if p.0[0] == 3 => Some(if minus_ones % 2 == 1 {
            VertexClass::ThreeOnesOdd
        } else {
            VertexClass::ThreeOnesEven
        }),
        [5, 1, 1, 1, 1, 1, 1, 1] if p.0[0] == 5 && minus_ones % 2 == 0 => {
            Some(VertexClass::FiveOnesEven)
        }
        [1, 1, 1, 1, 0, 0, 0, 0] => Some(if minus_ones % 2 == 0 {
            VertexClass::HalfOnesEven
        } else {
            VertexClass::HalfOnesOdd
        }),
        _ => None,
    }
}

/// Class counts over a point set; every point must classify.
pub fn census(points: &[Point]) -> Result<BTreeMap<VertexClass, usize>, CatalogError> {
    let mut counts = BTreeMap::new();
    for p in points {
        let class = classify(p).ok_or_else(|| CatalogError::Unclassifiable { point: p.clone() })?;
        *counts.entry(class).or_insert(0) += 1;
    }
    Ok(counts)
}

// =============================================================================
// errors
// =============================================================================

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown graph name {0}")]
    UnknownName(String),
    #[error("unknown vertex class {0}")]
    UnknownClass(String),
    #[error("{name} is recorded with published parameters only and cannot be rebuilt")]
    NotReconstructible { name: String },
    #[error("recipe line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("recipe {name} has no checksum line")]
    MissingChecksum { name: String },
    #[error("recipe {name} checksum mismatch: stored {stored}, computed {computed}")]
    ChecksumMismatch {
        name: String,
        stored: String,
        computed: String,
    },
    #[error("recipe {name}: point {point} already covered by an earlier source")]
    PointNotNew { name: String, point: Point },
    #[error("recipe {name}: excluded point {point} is not in the union")]
    ExcludeMissed { name: String, point: Point },
    #[error("point {point} fits no catalog class")]
    Unclassifiable { point: Point },
    #[error(transparent)]
    Notation(#[from] NotationError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

// =============================================================================
// recipes
// =============================================================================

/// Published parameters a reconstruction is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedStats {
    pub v: usize,
    pub e: usize,
    pub deg_min: usize,
    pub deg_max: usize,
    /// Independence number, when published.
    pub alpha: Option<usize>,
    /// Best published proper-coloring size, when published.
    pub chi_upper: Option<usize>,
    pub census: BTreeMap<VertexClass, usize>,
}

impl ExpectedStats {
    /// `ceil(v / alpha)`, the fraction-free pigeonhole coloring bound.
    pub fn chi_lower(&self) -> Option<usize> {
        self.alpha.map(|a| crate::coloring::chi_lower(self.v, a))
    }
}

/// One catalog entry: how to rebuild the vertex set and what the published
/// numbers say about the result.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub name: String,
    pub dim: usize,
    pub distance_sq: i64,
    pub exprs: Vec<VertexSetExpr>,
    pub points: Vec<Point>,
    /// Each row contributes the point and its negation.
    pub negated_points: Vec<Point>,
    pub exclude: Vec<Point>,
    pub buildable: bool,
    pub expected: ExpectedStats,
}

impl Recipe {
    /// Full vertex set: expression expansions, explicit rows, negated pairs,
    /// minus exclusions. Every contribution must be new and every exclusion
    /// must remove something, so recipe typos cannot cancel silently.
    pub fn vertex_set(&self) -> Result<Vec<Point>, CatalogError> {
        if !self.buildable {
            return Err(CatalogError::NotReconstructible {
                name: self.name.clone(),
            });
        }
        let mut set: BTreeSet<Point> = BTreeSet::new();
        let mut add = |p: Point| -> Result<(), CatalogError> {
            if set.insert(p.clone()) {
                Ok(())
            } else {
                Err(CatalogError::PointNotNew {
                    name: self.name.clone(),
                    point: p,
                })
            }
        };
        for expr in &self.exprs {
            for p in notation::expand(expr) {
                add(p)?;
            }
        }
        for p in &self.points {
            add(p.clone())?;
        }
        for p in &self.negated_points {
            add(p.clone())?;
            add(p.negated())?;
        }
        for p in &self.exclude {
            if !set.remove(p) {
                return Err(CatalogError::ExcludeMissed {
                    name: self.name.clone(),
                    point: p.clone(),
                });
            }
        }
        Ok(set.into_iter().collect())
    }

    pub fn build(&self) -> Result<DistGraph, CatalogError> {
        Ok(DistGraph::build(self.vertex_set()?, self.distance_sq)?)
    }
}

// ----- parsing ---------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Points,
    Negated,
    Exclude,
}

fn malformed(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn parse_count(line: usize, key: &str, value: &str) -> Result<usize, CatalogError> {
    value
        .parse()
        .map_err(|_| malformed(line, format!("{key} wants a nonnegative integer")))
}

/// Parse one recipe file. The checksum covers the name line plus the explicit
/// point rows in file order (prefixed `p `, `n `, `x `), so edits to the
/// hand-copied coordinates are caught at load time.
pub fn parse_recipe(text: &str) -> Result<Recipe, CatalogError> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut distance_sq: Option<i64> = None;
    let mut buildable = true;
    let mut exprs = Vec::new();
    let mut points = Vec::new();
    let mut negated_points = Vec::new();
    let mut exclude = Vec::new();
    let mut v = None;
    let mut e = None;
    let mut deg_min = None;
    let mut deg_max = None;
    let mut alpha = None;
    let mut chi_upper = None;
    let mut census_map = BTreeMap::new();
    let mut stored_checksum: Option<String> = None;
    let mut section = Section::None;
    let mut hasher = Sha256::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let (key, value) = (key.trim(), value.trim());
            section = Section::None;
            match key {
                "name" => {
                    hasher.update(format!("name: {value}\n"));
                    name = Some(value.to_string());
                }
                "dim" => dim = Some(parse_count(lineno, key, value)?),
                "distance-sq" => {
                    distance_sq = Some(
                        value
                            .parse()
                            .map_err(|_| malformed(lineno, "distance-sq wants an integer"))?,
                    )
                }
                "buildable" => match value {
                    "yes" => buildable = true,
                    "no" => buildable = false,
                    _ => return Err(malformed(lineno, "buildable wants yes or no")),
                },
                "expr" => {
                    let d = dim.ok_or_else(|| malformed(lineno, "expr before dim"))?;
                    exprs.push(notation::parse(value, d)?);
                }
                "points" if value.is_empty() => section = Section::Points,
                "points-negated" if value.is_empty() => section = Section::Negated,
                "exclude" if value.is_empty() => section = Section::Exclude,
                "expect-v" => v = Some(parse_count(lineno, key, value)?),
                "expect-e" => e = Some(parse_count(lineno, key, value)?),
                "expect-deg-min" => deg_min = Some(parse_count(lineno, key, value)?),
                "expect-deg-max" => deg_max = Some(parse_count(lineno, key, value)?),
                "expect-alpha" => alpha = Some(parse_count(lineno, key, value)?),
                "expect-chi-upper" => chi_upper = Some(parse_count(lineno, key, value)?),
                "census" => {
                    let (label, count) = value
                        .rsplit_once('=')
                        .ok_or_else(|| malformed(lineno, "census wants `class = count`"))?;
                    let class: VertexClass = label.trim().parse()?;
                    let count = parse_count(lineno, key, count.trim())?;
                    if census_map.insert(class, count).is_some() {
                        return Err(malformed(lineno, format!("class {class} listed twice")));
                    }
                }
                "checksum" => stored_checksum = Some(value.to_string()),
                _ => return Err(malformed(lineno, format!("unknown key {key}"))),
            }
        } else {
            let d = dim.ok_or_else(|| malformed(lineno, "point row before dim"))?;
            let point: Point = line
                .parse()
                .map_err(|_| malformed(lineno, "malformed point row"))?;
            if point.dim() != d {
                return Err(malformed(lineno, format!("point row wants {d} coordinates")));
            }
            let (tag, bucket) = match section {
                Section::Points => ("p", &mut points),
                Section::Negated => ("n", &mut negated_points),
                Section::Exclude => ("x", &mut exclude),
                Section::None => return Err(malformed(lineno, "point row outside a section")),
            };
            hasher.update(format!("{tag} {point}\n"));
            bucket.push(point);
        }
    }

    let name = name.ok_or_else(|| malformed(0, "missing name"))?;
    let computed = format!("{:x}", hasher.finalize());
    match stored_checksum {
        None => return Err(CatalogError::MissingChecksum { name }),
        Some(stored) if stored != computed => {
            return Err(CatalogError::ChecksumMismatch {
                name,
                stored,
                computed,
            })
        }
        Some(_) => {}
    }
    let missing = |what: &str| malformed(0, format!("missing {what}"));
    Ok(Recipe {
        dim: dim.ok_or_else(|| missing("dim"))?,
        distance_sq: distance_sq.ok_or_else(|| missing("distance-sq"))?,
        exprs,
        points,
        negated_points,
        exclude,
        buildable,
        expected: ExpectedStats {
            v: v.ok_or_else(|| missing("expect-v"))?,
            e: e.ok_or_else(|| missing("expect-e"))?,
            deg_min: deg_min.ok_or_else(|| missing("expect-deg-min"))?,
            deg_max: deg_max.ok_or_else(|| missing("expect-deg-max"))?,
            alpha,
            chi_upper,
            census: census_map,
        },
        name,
    })
}

// =============================================================================
// registry
// =============================================================================

const RECIPE_SOURCES: [(&str, &str); 9] = [
    ("G240", include_str!("../data/g240.recipe")),
    ("G327", include_str!("../data/g327.recipe")),
    ("G347", include_str!("../data/g347.recipe")),
    ("G516", include_str!("../data/g516.recipe")),
    ("G720", include_str!("../data/g720.recipe")),
    ("G768", include_str!("../data/g768.recipe")),
    ("G784", include_str!("../data/g784.recipe")),
    ("G818", include_str!("../data/g818.recipe")),
    ("G843", include_str!("../data/g843.recipe")),
];

/// Catalog names in ascending vertex-count order.
pub fn names() -> Vec<&'static str> {
    RECIPE_SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn recipe(name: &str) -> Result<Recipe, CatalogError> {
    let (_, text) = RECIPE_SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let r = parse_recipe(text)?;
    debug_assert_eq!(r.name, name);
    Ok(r)
}

/// Rebuild a catalog graph from its recipe.
pub fn build(name: &str) -> Result<DistGraph, CatalogError> {
    recipe(name)?.build()
}

// =============================================================================
// verification
// =============================================================================

/// One compared parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCheck {
    pub field: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl FieldCheck {
    fn new(field: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let ok = expected == actual;
        FieldCheck {
            field: field.into(),
            expected,
            actual,
            ok,
        }
    }
}

/// Outcome of rebuilding a graph and comparing it with the published row.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub name: String,
    pub fields: Vec<FieldCheck>,
    pub ok: bool,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.ok { "ok" } else { "MISMATCH" }
        )?;
        for c in &self.fields {
            if c.ok {
                writeln!(f, "  {} = {}", c.field, c.actual)?;
            } else {
                writeln!(
                    f,
                    "  {} = {} EXPECTED {}",
                    c.field, c.actual, c.expected
                )?;
            }
        }
        Ok(())
    }
}

/// Rebuild `name` and compare vertex count, edge count, degree range, and the
/// class census against the recipe's published numbers.
pub fn verify_recipe(name: &str) -> Result<VerifyReport, CatalogError> {
    let r = recipe(name)?;
    let g = r.build()?;
    let stats = g.stats();
    let actual_census = census(g.points())?;
    let mut fields = vec![
        FieldCheck::new("v", r.expected.v, stats.v),
        FieldCheck::new("e", r.expected.e, stats.e),
        FieldCheck::new("deg-min", r.expected.deg_min, stats.deg_min),
        FieldCheck::new("deg-max", r.expected.deg_max, stats.deg_max),
    ];
    for class in VertexClass::ALL {
        let want = r.expected.census.get(&class).copied().unwrap_or(0);
        let got = actual_census.get(&class).copied().unwrap_or(0);
        if want != 0 || got != 0 {
            fields.push(FieldCheck::new(format!("census {class}"), want, got));
        }
    }
    let ok = fields.iter().all(|c| c.ok);
    Ok(VerifyReport {
        name: r.name,
        fields,
        ok,
    })
}

// =============================================================================
// tests
// =============================================================================
