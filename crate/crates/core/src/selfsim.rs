//! The graph of a matrix `A` and the self-similar `Z`-action on its paths.
//!
//! Vertices are `1..=N` in every rendering and `0..N` internally. The edges
//! from `i` to `j` are `e(i,j,0) .. e(i,j,A[i][j]-1)`. For `m ∈ Z` the action
//! `κ_m` and the cocycle `φ(m, ·)` on an edge come from the floor division
//!
//! ```text
//! m·B[i][j] + n = φ·A[i][j] + l,   0 <= l < A[i][j],   κ_m(e(i,j,n)) = e(i,j,l)
//! ```
//!
//! and extend to paths by folding left to right.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub range: usize,
    pub label: u64,
}

impl Edge {
    pub fn new(source: usize, range: usize, label: u64) -> Self {
        Edge {
            source,
            range,
            label,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e({},{},{})",
            self.source + 1,
            self.range + 1,
            self.label
        )
    }
}

fn parse_call<'a>(s: &'a str, head: &str) -> Option<Vec<&'a str>> {
    let inner = s
        .trim()
        .strip_prefix(head)?
        .strip_prefix('(')?
        .strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

fn parse_vertex(s: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(Error::Syntax(format!(
            "vertex {:?} is not a positive integer",
            s
        ))),
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_call(s, "e")
            .filter(|p| p.len() == 3)
            .ok_or_else(|| Error::Syntax(format!("expected e(i,j,n), got {:?}", s)))?;
        let label = parts[2].parse::<u64>().map_err(|_| {
            Error::Syntax(format!("edge label {:?} is not a natural number", parts[2]))
        })?;
        Ok(Edge::new(
            parse_vertex(parts[0])?,
            parse_vertex(parts[1])?,
            label,
        ))
    }
}

/// A finite path. The empty path sits at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: usize,
    edges: Vec<Edge>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(edges: Vec<Edge>) -> Result<Self> {
        let first = edges.first().ok_or_else(|| {
            Error::Composability("a path given by edges needs at least one edge".into())
        })?;
        let path = Path {
            start: first.source,
            edges: Vec::new(),
        };
        path.extended(&edges)
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn range(&self) -> usize {
        self.edges.last().map_or(self.start, |e| e.range)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &Path) -> Result<Path> {
        if tail.start != self.range() {
            return Err(Error::Composability(format!(
                "{} ends at vertex {} but {} starts at vertex {}",
                self,
                self.range() + 1,
                tail,
                tail.start + 1
            )));
        }
        self.extended(&tail.edges)
    }

    fn extended(&self, more: &[Edge]) -> Result<Path> {
        let mut out = self.clone();
        for e in more {
            if e.source != out.range() {
                return Err(Error::Composability(format!(
                    "{} does not start at vertex {}",
                    e,
                    out.range() + 1
                )));
            }
            out.edges.push(*e);
        }
        Ok(out)
    }

    pub fn push(&self, e: Edge) -> Result<Path> {
        self.extended(&[e])
    }

    /// The first `k` edges.
    pub fn prefix(&self, k: usize) -> Path {
        Path {
            start: self.start,
            edges: self.edges[..k].to_vec(),
        }
    }

    /// The edges after the first `k`, as a path starting where the prefix ends.
    pub fn suffix(&self, k: usize) -> Path {
        let start = if k == 0 {
            self.start
        } else {
            self.edges[k - 1].range
        };
        Path {
            start,
            edges: self.edges[k..].to_vec(),
        }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start
            && self.edges.len() <= other.edges.len()
            && other.edges[..self.edges.len()] == self.edges[..]
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "v({})", self.start + 1);
        }
        let parts: Vec<String> = self.edges.iter().map(Edge::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for Path {
    type Err = Error;

    /// Dot-separated edges, or `v(i)` for the empty path at vertex `i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(parts) = parse_call(s, "v") {
            if parts.len() != 1 {
                return Err(Error::Syntax(format!("expected v(i), got {:?}", s)));
            }
            return Ok(Path::vertex(parse_vertex(parts[0])?));
        }
        let edges = s
            .split('.')
            .map(Edge::from_str)
            .collect::<Result<Vec<_>>>()?;
        Path::from_edges(edges)
    }
}

/// `prefix · period · period · ...`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodicPath {
    prefix: Path,
    period: Path,
}

impl EventuallyPeriodicPath {
    pub fn new(prefix: Path, period: Path) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Composability("period must contain an edge".into()));
        }
        if period.source() != period.range() {
            return Err(Error::Composability(format!(
                "period {} is not a cycle",
                period
            )));
        }
        if prefix.range() != period.source() {
            return Err(Error::Composability(format!(
                "period {} does not start where prefix {} ends",
                period, prefix
            )));
        }
        Ok(EventuallyPeriodicPath { prefix, period })
    }

    pub fn periodic(period: Path) -> Result<Self> {
        Self::new(Path::vertex(period.source()), period)
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn period(&self) -> &Path {
        &self.period
    }

    /// The `l`-th edge, counting from zero.
    pub fn edge(&self, l: usize) -> Edge {
        let p = self.prefix.len();
        if l < p {
            self.prefix.edges[l]
        } else {
            self.period.edges[(l - p) % self.period.len()]
        }
    }
}

/// The directed graph with `A[i][j]` edges from `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    counts: Vec<Vec<BigInt>>,
}

impl Graph {
    pub fn build(a: &IntMatrix) -> Result<Graph> {
        if !a.is_square() {
            return Err(Error::NotSquare(a.rows(), a.cols()));
        }
        let n = a.rows();
        let mut counts = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in counts.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                let x = &a[(i, j)];
                if x.is_negative() {
                    return Err(Error::Validation(format!(
                        "negative entry A[{}][{}] = {}",
                        i + 1,
                        j + 1,
                        x
                    )));
                }
                *c = x.clone();
            }
            if row.iter().all(Zero::is_zero) {
                return Err(Error::Validation(format!(
                    "zero row: vertex {} emits no edges (A has an identically zero row)",
                    i + 1
                )));
            }
        }
        Ok(Graph { counts })
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.len()
    }

    /// Number of edges, saturating at `u64::MAX`.
    pub fn edge_count(&self) -> u64 {
        let total: BigInt = self.counts.iter().flatten().sum();
        total.to_u64().unwrap_or(u64::MAX)
    }

    /// Edges from `i` to `j`, saturating at `u64::MAX`.
    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.counts[i][j].to_u64().unwrap_or(u64::MAX)
    }

    /// Out-degree of `v`, saturating at `u64::MAX`.
    pub fn out_degree(&self, v: usize) -> u64 {
        let total: BigInt = self.counts[v].iter().sum();
        total.to_u64().unwrap_or(u64::MAX)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        e.source < self.counts.len()
            && e.range < self.counts.len()
            && BigInt::from(e.label) < self.counts[e.source][e.range]
    }

    /// Edges leaving `v`. Only the first `u64::MAX` labels of a pair of
    /// vertices are addressable.
    pub fn edges_from(&self, v: usize) -> impl Iterator<Item = Edge> + '_ {
        (0..self.counts.len())
            .flat_map(move |w| (0..self.multiplicity(v, w)).map(move |l| Edge::new(v, w, l)))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.counts.len()).flat_map(move |v| self.edges_from(v))
    }
}

/// Outcome of the pseudo-freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PseudoFreeness {
    /// `B[i][j] = 0 ⇔ A[i][j] = 0` holds.
    Criterion,
    /// The criterion fails only where `A[i][j] = 0`, i.e. where there are no
    /// edges. Every edge still has `B_e ≠ 0`, so `κ_m(e) = e` and
    /// `φ(m, e) = m·B_e/A_e = 0` force `m = 0`.
    NonzeroOnEdges,
    /// `κ_m(e) = e` and `φ(m, e) = 0` with `m ≠ 0`.
    Witness { m: BigInt, edge: Edge },
    /// No witness with `0 < |m| <= window`.
    UnknownWithinWindow(u64),
}

impl PseudoFreeness {
    pub fn holds(&self) -> Option<bool> {
        match self {
            PseudoFreeness::Criterion | PseudoFreeness::NonzeroOnEdges => Some(true),
            PseudoFreeness::Witness { .. } => Some(false),
            PseudoFreeness::UnknownWithinWindow(_) => None,
        }
    }
}

/// Verdict of [`MatrixPair::fixes_path`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixVerdict {
    Fixed,
    /// `m·B_{x|l}/A_{x|l}` is not an integer at this length `l`.
    Moved {
        level: usize,
    },
    /// Depth exhausted with every check passing and no repeated state.
    Inconclusive {
        depth: usize,
    },
}

impl FixVerdict {
    pub fn is_fixed(&self) -> Option<bool> {
        match self {
            FixVerdict::Fixed => Some(true),
            FixVerdict::Moved { .. } => Some(false),
            FixVerdict::Inconclusive { .. } => None,
        }
    }
}

/// A pair `(A, B)` of square integer matrices of the same size with `A`
/// nonnegative and free of zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    a: IntMatrix,
    b: IntMatrix,
    graph: Graph,
}

impl MatrixPair {
    pub fn new(a: IntMatrix, b: IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare(a.rows(), a.cols()));
        }
        if b.rows() != a.rows() || b.cols() != a.cols() {
            return Err(Error::Shape(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.rows() == 0 {
            return Err(Error::Validation("matrices must be at least 1x1".into()));
        }
        let graph = Graph::build(&a)?;
        Ok(MatrixPair { a, b, graph })
    }

    pub fn from_rows(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(a)?, IntMatrix::from_rows(b)?)
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    fn check_edge(&self, e: &Edge) -> Result<()> {
        if self.graph.contains(e) {
            Ok(())
        } else {
            Err(Error::Composability(format!(
                "{} is not an edge of the graph",
                e
            )))
        }
    }

    /// `(κ_m(e), φ(m, e))`.
    pub fn kappa_edge(&self, m: &BigInt, e: &Edge) -> Result<(Edge, BigInt)> {
        self.check_edge(e)?;
        let a = &self.a[(e.source, e.range)];
        let b = &self.b[(e.source, e.range)];
        let (k, l) = (m * b + BigInt::from(e.label)).div_mod_floor(a);
        let label = l.to_u64().ok_or_else(|| {
            Error::Validation(format!("edge label {} does not fit in 64 bits", l))
        })?;
        Ok((Edge::new(e.source, e.range, label), k))
    }

    /// `(κ_m(p), φ(m, p))`; the empty path returns `(p, m)`.
    pub fn kappa_path(&self, m: &BigInt, p: &Path) -> Result<(Path, BigInt)> {
        let mut carry = m.clone();
        let mut edges = Vec::with_capacity(p.len());
        for e in p.edges() {
            let (image, next) = self.kappa_edge(&carry, e)?;
            edges.push(image);
            carry = next;
        }
        let image = Path {
            start: p.start,
            edges,
        };
        Ok((image, carry))
    }

    pub fn satisfies_pseudo_free_criterion(&self) -> bool {
        self.a
            .entries()
            .iter()
            .zip(self.b.entries())
            .all(|(a, b)| a.is_zero() == b.is_zero())
    }

    /// Pseudo-freeness of `κ`: the matrix criterion first, then a search
    /// for a witness with `0 < |m| <= window`.
    pub fn is_pseudo_free(&self, window: u64) -> PseudoFreeness {
        if self.satisfies_pseudo_free_criterion() {
            return PseudoFreeness::Criterion;
        }
        for k in 1..=window {
            for m in [BigInt::from(k), -BigInt::from(k)] {
                for e in self.graph.edges() {
                    let (image, phi) = self.kappa_edge(&m, &e).expect("graph edge");
                    if image == e && phi.is_zero() {
                        return PseudoFreeness::Witness { m, edge: e };
                    }
                }
            }
        }
        let nonzero_on_edges = self
            .graph
            .edges()
            .all(|e| !self.b[(e.source, e.range)].is_zero());
        if nonzero_on_edges {
            PseudoFreeness::NonzeroOnEdges
        } else {
            PseudoFreeness::UnknownWithinWindow(window)
        }
    }

    /// Default depth bound for [`fixes_path`](Self::fixes_path).
    pub fn default_fix_depth(&self, x: &EventuallyPeriodicPath) -> usize {
        let max_b = self
            .b
            .max_abs()
            .to_usize()
            .unwrap_or(usize::MAX / 64)
            .min(usize::MAX / 64);
        x.prefix.len() + 10 * x.period.len() * (1 + max_b)
    }

    /// Whether `κ_m` fixes `x`, via `m·B_{x|l}/A_{x|l} ∈ Z` for every `l`.
    ///
    /// The running value `m·B_{x|l}/A_{x|l}` is tracked as an integer. Once
    /// inside the period a repeat of (value, position in period) closes the
    /// argument, as does the value reaching zero.
    pub fn fixes_path(
        &self,
        m: &BigInt,
        x: &EventuallyPeriodicPath,
        depth: usize,
    ) -> Result<FixVerdict> {
        for e in x.prefix.edges().iter().chain(x.period.edges()) {
            self.check_edge(e)?;
        }
        let mut value = m.clone();
        let mut seen: HashSet<(BigInt, usize)> = HashSet::new();
        let p = x.prefix.len();
        for l in 0..depth {
            if value.is_zero() {
                return Ok(FixVerdict::Fixed);
            }
            if l >= p {
                let pos = (l - p) % x.period.len();
                if !seen.insert((value.clone(), pos)) {
                    return Ok(FixVerdict::Fixed);
                }
            }
            let e = x.edge(l);
            let (q, r) =
                (&value * &self.b[(e.source, e.range)]).div_rem(&self.a[(e.source, e.range)]);
            if !r.is_zero() {
                return Ok(FixVerdict::Moved { level: l + 1 });
            }
            value = q;
        }
        Ok(FixVerdict::Inconclusive { depth })
    }

    /// `Σ_{e ∈ vE¹w} φ(m, e)`.
    pub fn phi_vertex_sum(&self, m: &BigInt, v: usize, w: usize) -> Result<BigInt> {
        let n = self.size();
        if v >= n || w >= n {
            return Err(Error::Shape(format!("vertex out of range 1..={}", n)));
        }
        let mut total = BigInt::zero();
        for label in 0..self.graph.multiplicity(v, w) {
            total += self.kappa_edge(m, &Edge::new(v, w, label))?.1;
        }
        Ok(total)
    }
}

/// `B_α / A_α` style products along a path, as (numerator, denominator).
pub fn path_weights(pair: &MatrixPair, p: &Path) -> (BigInt, BigInt) {
    p.edges()
        .iter()
        .fold((BigInt::one(), BigInt::one()), |(nb, na), e| {
            (
                nb * &pair.b[(e.source, e.range)],
                na * &pair.a[(e.source, e.range)],
            )
        })
}
