//! Basic compact open bisections `Z(α, m, β)` of the groupoid of a pair and
//! the structural classifier.
//!
//! A slice `Z(α, m, β)` is the set of arrows `[α, m, β; βy]` with source `βy`
//! and range `ακ_m(y)`. Arrows are identified under
//! `(α, m, β; x) ~ (ακ_m(γ), φ(m, γ), βγ; x)`, so a slice equals the disjoint
//! union of its one-edge refinements and literal field equality is not set
//! equality; see [`SliceAlgebra::same_set`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intmat::{is_irreducible, is_permutation};
use crate::selfsim::{MatrixPair, Path, PseudoFreeness};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice {
    alpha: Path,
    m: BigInt,
    beta: Path,
}

impl Slice {
    pub fn new(alpha: Path, m: impl Into<BigInt>, beta: Path) -> Result<Slice> {
        if alpha.range() != beta.range() {
            return Err(Error::Composability(format!(
                "r({}) = {} differs from r({}) = {}",
                alpha,
                alpha.range() + 1,
                beta,
                beta.range() + 1
            )));
        }
        Ok(Slice {
            alpha,
            m: m.into(),
            beta,
        })
    }

    /// `Z(v, m, v)` for a vertex `v`.
    pub fn at_vertex(v: usize, m: impl Into<BigInt>) -> Slice {
        Slice {
            alpha: Path::vertex(v),
            m: m.into(),
            beta: Path::vertex(v),
        }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `|α| - |β|`, the value of the length cocycle on every arrow.
    pub fn degree(&self) -> isize {
        self.alpha.len() as isize - self.beta.len() as isize
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z({}|{}|{})", self.alpha, self.m, self.beta)
    }
}

impl FromStr for Slice {
    type Err = Error;

    /// `Z(<path>|m|<path>)`.
    fn from_str(s: &str) -> Result<Slice> {
        let inner = s
            .trim()
            .strip_prefix("Z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax(format!("expected Z(alpha|m|beta), got {:?}", s)))?;
        let parts: Vec<&str> = inner.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::Syntax(format!(
                "expected three '|'-separated fields in {:?}",
                s
            )));
        }
        let m: BigInt = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::Syntax(format!("{:?} is not an integer", parts[1])))?;
        Slice::new(parts[0].parse()?, m, parts[2].parse()?)
    }
}

/// Slice arithmetic over a fixed pair.
#[derive(Clone, Copy, Debug)]
pub struct SliceAlgebra<'a> {
    pair: &'a MatrixPair,
}

impl<'a> SliceAlgebra<'a> {
    pub fn new(pair: &'a MatrixPair) -> Self {
        SliceAlgebra { pair }
    }

    pub fn pair(&self) -> &'a MatrixPair {
        self.pair
    }

    fn check(&self, s: &Slice) -> Result<()> {
        for p in [&s.alpha, &s.beta] {
            if p.source() >= self.pair.size() {
                return Err(Error::Composability(format!(
                    "vertex of {} out of range",
                    p
                )));
            }
            for e in p.edges() {
                if !self.pair.graph().contains(e) {
                    return Err(Error::Composability(format!(
                        "{} is not an edge of the graph",
                        e
                    )));
                }
            }
        }
        Ok(())
    }

    /// One child `Z(ακ_m(γ), φ(m, γ), βγ)` per edge `γ` leaving `r(β)`.
    pub fn refine(&self, s: &Slice) -> Result<Vec<Slice>> {
        self.check(s)?;
        let v = s.beta.range();
        self.pair
            .graph()
            .edges_from(v)
            .map(|gamma| {
                let (image, phi) = self.pair.kappa_edge(&s.m, &gamma)?;
                Ok(Slice {
                    alpha: s.alpha.push(image)?,
                    m: phi,
                    beta: s.beta.push(gamma)?,
                })
            })
            .collect()
    }

    /// Refines `s` until its `β` equals `target`, which must extend `s.β`.
    fn restrict_source(&self, s: &Slice, target: &Path) -> Result<Slice> {
        let mut cur = s.clone();
        while cur.beta.len() < target.len() {
            cur = self
                .refine(&cur)?
                .into_iter()
                .find(|c| c.beta.is_prefix_of(target))
                .ok_or_else(|| {
                    Error::Internal(format!("no refinement of {} towards {}", s, target))
                })?;
        }
        Ok(cur)
    }

    /// Refines `s` until its `α` equals `target`, which must extend `s.α`.
    fn restrict_range(&self, s: &Slice, target: &Path) -> Result<Slice> {
        let mut cur = s.clone();
        while cur.alpha.len() < target.len() {
            cur = self
                .refine(&cur)?
                .into_iter()
                .find(|c| c.alpha.is_prefix_of(target))
                .ok_or_else(|| {
                    Error::Internal(format!("no refinement of {} towards {}", s, target))
                })?;
        }
        Ok(cur)
    }

    /// The product set `s1 · s2`, or `None` when the source cylinder of `s1`
    /// and the range cylinder of `s2` are disjoint.
    pub fn compose(&self, s1: &Slice, s2: &Slice) -> Result<Option<Slice>> {
        self.check(s1)?;
        self.check(s2)?;
        let (left, right) = if s1.beta.is_prefix_of(&s2.alpha) {
            (self.restrict_source(s1, &s2.alpha)?, s2.clone())
        } else if s2.alpha.is_prefix_of(&s1.beta) {
            (s1.clone(), self.restrict_range(s2, &s1.beta)?)
        } else {
            return Ok(None);
        };
        debug_assert_eq!(left.beta, right.alpha);
        Ok(Some(Slice {
            alpha: left.alpha,
            m: left.m + right.m,
            beta: right.beta,
        }))
    }

    pub fn invert(&self, s: &Slice) -> Slice {
        Slice {
            alpha: s.beta.clone(),
            m: -&s.m,
            beta: s.alpha.clone(),
        }
    }

    /// Image of the cylinder `Z(βγ)` under `s`, which is `Z(ακ_m(γ))`.
    pub fn image_cylinder(&self, s: &Slice, gamma: &Path) -> Result<Path> {
        self.check(s)?;
        if gamma.source() != s.beta.range() {
            return Err(Error::Composability(format!(
                "{} does not start at r({}) = vertex {}",
                gamma,
                s.beta,
                s.beta.range() + 1
            )));
        }
        let (image, _) = self.pair.kappa_path(&s.m, gamma)?;
        s.alpha.concat(&image)
    }

    /// Refines every slice until its `β` has length `depth`.
    pub fn refine_to_depth(&self, slices: &[Slice], depth: usize) -> Result<Vec<Slice>> {
        let mut out = Vec::new();
        let mut stack: Vec<Slice> = slices.to_vec();
        while let Some(s) = stack.pop() {
            if s.beta.len() >= depth {
                out.push(s);
            } else {
                stack.extend(self.refine(&s)?);
            }
        }
        Ok(out)
    }

    /// Whether two finite disjoint unions of slices cover the same arrows.
    ///
    /// Both sides are refined to a common `β`-length and compared as sets of
    /// triples. Exact for pseudo-free pairs, where distinct triples with the
    /// same `β` never name the same arrow.
    pub fn same_set(&self, lhs: &[Slice], rhs: &[Slice]) -> Result<bool> {
        let depth = lhs
            .iter()
            .chain(rhs)
            .map(|s| s.beta.len())
            .max()
            .unwrap_or(0);
        let l: BTreeSet<Slice> = self.refine_to_depth(lhs, depth)?.into_iter().collect();
        let r: BTreeSet<Slice> = self.refine_to_depth(rhs, depth)?.into_iter().collect();
        Ok(l == r)
    }

    pub fn same_slice(&self, s: &Slice, t: &Slice) -> Result<bool> {
        if s.degree() != t.degree() {
            return Ok(false);
        }
        self.same_set(std::slice::from_ref(s), std::slice::from_ref(t))
    }
}

/// Three-valued answer for properties that may be undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl From<Option<bool>> for Tri {
    fn from(v: Option<bool>) -> Self {
        match v {
            Some(true) => Tri::Yes,
            Some(false) => Tri::No,
            None => Tri::Unknown,
        }
    }
}

impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tri::Yes => s.serialize_bool(true),
            Tri::No => s.serialize_bool(false),
            Tri::Unknown => s.serialize_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub pseudo_free: Tri,
    pub hausdorff: Tri,
    pub effective_sufficient: bool,
    pub minimal_pi_sufficient: bool,
    pub principal_sufficient: bool,
    pub unit_space_compact: bool,
    #[serde(rename = "condition_O")]
    pub condition_o: bool,
    pub notes: Vec<String>,
}

/// Window used by [`classify`] when the pseudo-free criterion fails.
pub const PSEUDO_FREE_WINDOW: u64 = 20;

#[allow(clippy::needless_range_loop)]
fn reachability(pair: &MatrixPair) -> Vec<Vec<bool>> {
    let n = pair.size();
    let g = pair.graph();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
        for (j, r) in row.iter_mut().enumerate() {
            if g.multiplicity(i, j) > 0 {
                *r = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Some circuit whose vertices each emit exactly one edge.
fn has_circuit_without_exit(pair: &MatrixPair) -> bool {
    let n = pair.size();
    let g = pair.graph();
    let successor = |v: usize| -> Option<usize> {
        if g.out_degree(v) == 1 {
            (0..n).find(|&w| g.multiplicity(v, w) == 1)
        } else {
            None
        }
    };
    (0..n).any(|start| {
        let mut v = start;
        for _ in 0..n {
            match successor(v) {
                Some(w) => v = w,
                None => return false,
            }
        }
        true
    })
}

/// For each vertex, whether it lies in a strongly connected piece containing
/// a cycle with `Π|B_e| / Π A_e < 1`.
fn contracting_vertices(pair: &MatrixPair, reach: &[Vec<bool>]) -> Vec<bool> {
    let n = pair.size();
    let g = pair.graph();
    let a = pair.a();
    let b = pair.b();
    let mut done = vec![false; n];
    let mut contracting = vec![false; n];
    for root in 0..n {
        if done[root] {
            continue;
        }
        let comp: Vec<usize> = (0..n)
            .filter(|&v| reach[root][v] && reach[v][root])
            .collect();
        for &v in &comp {
            done[v] = true;
        }
        let inner: Vec<(usize, usize, BigRational)> = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| g.multiplicity(i, j) > 0)
            .map(|(i, j)| (i, j, BigRational::new(b[(i, j)].abs(), a[(i, j)].clone())))
            .collect();
        if inner.is_empty() {
            continue;
        }
        let found = inner.iter().any(|(_, _, r)| r.is_zero()) || {
            // Multiplicative Bellman-Ford: a relaxation surviving |comp|
            // rounds exposes a cycle of ratio < 1.
            let mut dist = vec![BigRational::one(); n];
            let mut relaxed = false;
            for _ in 0..comp.len() {
                relaxed = false;
                for (i, j, r) in &inner {
                    let cand = &dist[*i] * r;
                    if cand < dist[*j] {
                        dist[*j] = cand;
                        relaxed = true;
                    }
                }
                if !relaxed {
                    break;
                }
            }
            relaxed
        };
        if found {
            for &v in &comp {
                contracting[v] = true;
            }
        }
    }
    contracting
}

fn is_acyclic(pair: &MatrixPair, reach: &[Vec<bool>]) -> bool {
    let n = pair.size();
    let g = pair.graph();
    !(0..n).any(|i| (0..n).any(|j| g.multiplicity(i, j) > 0 && reach[j][i]))
}

pub fn satisfies_condition_o(pair: &MatrixPair) -> bool {
    let two = BigInt::from(2);
    (0..pair.size()).all(|i| {
        let a = &pair.a()[(i, i)];
        a >= &two && a > &pair.b()[(i, i)].abs()
    })
}

/// Structural properties guaranteed by the matrix conditions.
pub fn classify(pair: &MatrixPair) -> PropertyReport {
    let mut notes = Vec::new();
    let pseudo = pair.is_pseudo_free(PSEUDO_FREE_WINDOW);
    match &pseudo {
        PseudoFreeness::Criterion => {}
        PseudoFreeness::NonzeroOnEdges => notes.push(
            "pseudo-free: B is nonzero on every edge although B[i][j] != 0 somewhere A[i][j] = 0"
                .into(),
        ),
        PseudoFreeness::Witness { m, edge } => notes.push(format!(
            "not pseudo-free: kappa_{}({}) = {} with phi = 0",
            m, edge, edge
        )),
        PseudoFreeness::UnknownWithinWindow(w) => {
            notes.push(format!("pseudo-freeness undecided within |m| <= {}", w))
        }
    }
    let pseudo_free = Tri::from(pseudo.holds());
    let hausdorff = if pseudo_free == Tri::Yes {
        Tri::Yes
    } else {
        Tri::Unknown
    };

    let reach = reachability(pair);
    let n = pair.size();
    let contracting = contracting_vertices(pair, &reach);
    let reaches_contraction = (0..n).all(|v| (0..n).any(|w| reach[v][w] && contracting[w]));
    let effective_sufficient = !has_circuit_without_exit(pair) && reaches_contraction;

    let minimal_pi_sufficient =
        is_irreducible(pair.a()).unwrap_or(false) && !is_permutation(pair.a());

    let acyclic = is_acyclic(pair, &reach);
    let bounded = (0..n).all(|i| {
        (0..n).all(|j| pair.a()[(i, j)].is_zero() || pair.b()[(i, j)].abs() < pair.a()[(i, j)])
    });
    let principal_sufficient = acyclic && bounded;
    if !acyclic {
        notes.push(
            "principal criterion needs an acyclic graph, which a finite A without zero rows never gives".into(),
        );
    }

    PropertyReport {
        pseudo_free,
        hausdorff,
        effective_sufficient,
        minimal_pi_sufficient,
        principal_sufficient,
        unit_space_compact: true,
        condition_o: satisfies_condition_o(pair),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &[&[i64]], b: &[&[i64]]) -> MatrixPair {
        let rows = |m: &[&[i64]]| m.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        MatrixPair::from_rows(&rows(a), &rows(b)).unwrap()
    }

    fn slice(s: &str) -> Slice {
        s.parse().unwrap()
    }

    #[test]
    fn refinement() {
        let p = pair(&[&[2]], &[&[1]]);
        let alg = SliceAlgebra::new(&p);
        let kids = alg.refine(&Slice::at_vertex(0, 1)).unwrap();
        assert_eq!(
            kids,
            vec![
                slice("Z(e(1,1,1)|0|e(1,1,0))"),
                slice("Z(e(1,1,0)|1|e(1,1,1))")
            ]
        );
        let kids = alg.refine(&Slice::at_vertex(0, 0)).unwrap();
        assert_eq!(
            kids,
            vec![
                slice("Z(e(1,1,0)|0|e(1,1,0))"),
                slice("Z(e(1,1,1)|0|e(1,1,1))")
            ]
        );

        let q = pair(&[&[2, 1], &[1, 2]], &[&[1, 1], &[1, 1]]);
        let alg = SliceAlgebra::new(&q);
        let s = slice("Z(e(1,2,0)|3|e(2,2,1))");
        assert_eq!(alg.refine(&s).unwrap().len(), 3);
    }

    #[test]
    fn composition() {
        let p = pair(&[&[2]], &[&[1]]);
        let alg = SliceAlgebra::new(&p);
        let a = slice("Z(e(1,1,0)|1|e(1,1,1))");
        let b = slice("Z(e(1,1,1)|2|e(1,1,0).e(1,1,1))");
        assert_eq!(
            alg.compose(&a, &b).unwrap(),
            Some(slice("Z(e(1,1,0)|3|e(1,1,0).e(1,1,1))"))
        );

        // Restricting the source of Z(v,1,v) to Z(e(1,1,0)).
        let unit = slice("Z(e(1,1,0)|0|e(1,1,0))");
        assert_eq!(
            alg.compose(&Slice::at_vertex(0, 1), &unit).unwrap(),
            Some(slice("Z(e(1,1,1)|0|e(1,1,0))"))
        );
        // Restricting the range instead.
        assert_eq!(
            alg.compose(&unit, &Slice::at_vertex(0, 1)).unwrap(),
            Some(slice("Z(e(1,1,0)|1|e(1,1,1))"))
        );

        let c = slice("Z(e(1,1,0)|0|e(1,1,0))");
        let d = slice("Z(e(1,1,1)|0|e(1,1,1))");
        assert_eq!(alg.compose(&c, &d).unwrap(), None);
    }

    #[test]
    fn inversion() {
        let p = pair(&[&[2]], &[&[1]]);
        let alg = SliceAlgebra::new(&p);
        let s = slice("Z(e(1,1,0)|1|e(1,1,1).e(1,1,0))");
        assert_eq!(alg.invert(&s), slice("Z(e(1,1,1).e(1,1,0)|-1|e(1,1,0))"));
        assert_eq!(alg.invert(&alg.invert(&s)), s);
        let prod = alg.compose(&alg.invert(&s), &s).unwrap().unwrap();
        assert_eq!(
            prod,
            Slice::new(s.beta().clone(), 0, s.beta().clone()).unwrap()
        );
    }

    #[test]
    fn images() {
        let p = pair(&[&[2]], &[&[1]]);
        let alg = SliceAlgebra::new(&p);
        let g: Path = "e(1,1,1)".parse().unwrap();
        assert_eq!(
            alg.image_cylinder(&Slice::at_vertex(0, 1), &g)
                .unwrap()
                .to_string(),
            "e(1,1,0)"
        );
        let s = slice("Z(e(1,1,1)|0|e(1,1,0))");
        assert_eq!(
            alg.image_cylinder(&s, &g).unwrap().to_string(),
            "e(1,1,1).e(1,1,1)"
        );
        assert_eq!(
            alg.image_cylinder(&s, &Path::vertex(0)).unwrap(),
            *s.alpha()
        );

        let q = pair(&[&[1, 1], &[1, 1]], &[&[1, 1], &[1, 1]]);
        let alg = SliceAlgebra::new(&q);
        let s = slice("Z(e(1,1,0)|0|e(1,1,0))");
        assert!(alg
            .image_cylinder(&s, &"e(2,1,0)".parse().unwrap())
            .is_err());
    }

    #[test]
    fn semantic_equality() {
        let p = pair(&[&[2]], &[&[1]]);
        let alg = SliceAlgebra::new(&p);
        let s = Slice::at_vertex(0, 1);
        let kids = alg.refine(&s).unwrap();
        assert!(alg.same_set(std::slice::from_ref(&s), &kids).unwrap());
        assert!(!alg.same_set(std::slice::from_ref(&s), &kids[..1]).unwrap());
        assert!(!alg.same_slice(&s, &Slice::at_vertex(0, 2)).unwrap());
    }

    #[test]
    fn syntax() {
        assert_eq!(slice("Z(v(1)|-4|v(1))").to_string(), "Z(v(1)|-4|v(1))");
        assert!("Z(e(1,2,0)|0|v(1))".parse::<Slice>().is_err());
        assert!("Z(v(1)|x|v(1))".parse::<Slice>().is_err());
        assert!("Y(v(1)|0|v(1))".parse::<Slice>().is_err());
    }

    #[test]
    fn classifier() {
        let r = classify(&pair(&[&[2]], &[&[1]]));
        assert_eq!(r.pseudo_free, Tri::Yes);
        assert_eq!(r.hausdorff, Tri::Yes);
        assert!(r.effective_sufficient);
        assert!(r.minimal_pi_sufficient);
        assert!(r.condition_o);
        assert!(r.unit_space_compact);
        assert!(!r.principal_sufficient);

        let r = classify(&pair(&[&[2, 1], &[1, 2]], &[&[1, 1], &[1, 1]]));
        assert!(r.minimal_pi_sufficient);
        assert!(r.effective_sufficient);

        let r = classify(&pair(&[&[0, 1], &[1, 0]], &[&[0, 1], &[1, 0]]));
        assert!(!r.minimal_pi_sufficient);
        // The 2-cycle has no exit.
        assert!(!r.effective_sufficient);

        // Ratio 3/2 on the only cycle reachable from vertex 1.
        let r = classify(&pair(&[&[2]], &[&[3]]));
        assert!(!r.effective_sufficient);
        assert!(!r.condition_o);

        let r = classify(&pair(&[&[2]], &[&[0]]));
        assert_eq!(r.pseudo_free, Tri::No);
        assert_eq!(r.hausdorff, Tri::Unknown);
        assert!(r.effective_sufficient);
    }
}
