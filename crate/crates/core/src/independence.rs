//! Rank-based independence and poisedness, fundamental polynomials, and the
//! geometric classification of dependent node sets.
//!
//! Independence is always decided by the rank of the collocation matrix.
//! The geometric characterizations (heavy lines, heavy conics, cubic
//! intersections) are computed separately so they can be checked against
//! the rank verdict.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{self, Conic, Line, Node};
use crate::linalg::{self, Matrix};
use crate::poly::{dim_pi, BivariatePoly, Monomial};
use crate::{QMatrix, QPoly, Rational};

/// Ordered list of pairwise distinct nodes. The position of a node is its
/// index in interpolation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    nodes: Vec<Node>,
}

impl NodeSet {
    pub fn new(nodes: Vec<Node>) -> Result<Self> {
        geometry::ensure_distinct(&nodes)?;
        Ok(NodeSet { nodes })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, a: &Node) -> Option<usize> {
        self.nodes.iter().position(|p| p == a)
    }

    /// All nodes except `a`, in order.
    pub fn without(&self, a: &Node) -> Vec<Node> {
        self.nodes.iter().filter(|p| *p != a).cloned().collect()
    }

    pub(crate) fn require_member(&self, a: &Node) -> Result<usize> {
        self.index_of(a)
            .ok_or_else(|| Error::InvalidInput(format!("node {a} is not in the node set")))
    }
}

impl From<NodeSet> for Vec<Node> {
    fn from(x: NodeSet) -> Self {
        x.nodes
    }
}

/// Collocation matrix: one row per node, one column per monomial of degree
/// at most `n` in graded-lex order.
pub fn vandermonde(x: &NodeSet, n: usize) -> QMatrix {
    collocation(x.nodes(), n)
}

pub(crate) fn collocation(nodes: &[Node], n: usize) -> QMatrix {
    let monomials: Vec<Monomial> = Monomial::up_to(n).collect();
    let rows = nodes
        .iter()
        .map(|p| monomials.iter().map(|m| m.eval(&p.x, &p.y)).collect())
        .collect();
    Matrix::from_rows(monomials.len(), rows).expect("rows sized to the monomial count")
}

pub fn collocation_rank(x: &NodeSet, n: usize) -> usize {
    linalg::rank(&vandermonde(x, n))
}

pub fn is_n_independent(x: &NodeSet, n: usize) -> bool {
    x.len() <= dim_pi(n) && collocation_rank(x, n) == x.len()
}

pub fn is_n_poised(x: &NodeSet, n: usize) -> bool {
    x.len() == dim_pi(n) && linalg::nullspace(&vandermonde(x, n)).is_empty()
}

/// A polynomial of degree at most `n` equal to 1 at `a` and 0 at every
/// other node, when one exists. Free coefficients are set to zero.
pub fn fundamental(a: &Node, x: &NodeSet, n: usize) -> Result<Option<QPoly>> {
    let k = x.require_member(a)?;
    let rhs: Vec<Rational> = (0..x.len())
        .map(|i| if i == k { Rational::one() } else { Rational::zero() })
        .collect();
    Ok(linalg::solve_consistent(&vandermonde(x, n), &rhs)?
        .map(|v| BivariatePoly::from_dense(n, &v).expect("dense length matches")))
}

/// Polynomials of degree at most `n` vanishing on every node, as a
/// nullspace basis.
pub fn vanishing_basis(nodes: &[Node], n: usize) -> Vec<QPoly> {
    linalg::nullspace(&collocation(nodes, n))
        .into_iter()
        .map(|v| BivariatePoly::from_dense(n, &v).expect("dense length matches"))
        .collect()
}

/// Geometric side of the `#X ≤ 2n+1` characterization: no `n+2` nodes on a
/// line.
pub fn check_thm_2n1(x: &NodeSet, n: usize) -> Result<bool> {
    if x.len() > 2 * n + 1 {
        return Err(Error::OutOfRange(format!(
            "{} nodes exceed 2n+1 = {}",
            x.len(),
            2 * n + 1
        )));
    }
    Ok(geometry::max_collinear(x.nodes())?.0 <= n + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DependenceKind {
    CollinearOverload,
    ConicOverload,
    CubicIntersection,
    Unclassified,
}

impl DependenceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DependenceKind::CollinearOverload => "collinear-overload",
            DependenceKind::ConicOverload => "conic-overload",
            DependenceKind::CubicIntersection => "cubic-intersection",
            DependenceKind::Unclassified => "unclassified",
        }
    }
}

/// Evidence that a node set is `n`-dependent.
#[derive(Debug, Clone, PartialEq)]
pub enum DependenceWitness {
    /// At least `n+2` nodes on `line`.
    CollinearOverload { line: Line, nodes: Vec<Node> },
    /// At least `2n+2` nodes on `conic`.
    ConicOverload { conic: Conic, nodes: Vec<Node> },
    /// `#X = 3n` and both a cubic and a degree-`n` curve pass through every
    /// node. Transversality of the intersection is not certified.
    CubicIntersection { cubic: QPoly, curve: QPoly },
    Unclassified,
}

impl DependenceWitness {
    pub fn kind(&self) -> DependenceKind {
        match self {
            DependenceWitness::CollinearOverload { .. } => DependenceKind::CollinearOverload,
            DependenceWitness::ConicOverload { .. } => DependenceKind::ConicOverload,
            DependenceWitness::CubicIntersection { .. } => DependenceKind::CubicIntersection,
            DependenceWitness::Unclassified => DependenceKind::Unclassified,
        }
    }

    /// Re-checks the payload against `x` and the thresholds for degree `n`.
    pub fn is_valid_for(&self, x: &NodeSet, n: usize) -> bool {
        let members = |nodes: &[Node]| nodes.iter().all(|p| x.index_of(p).is_some());
        match self {
            DependenceWitness::CollinearOverload { line, nodes } => {
                members(nodes) && nodes.len() >= n + 2 && nodes.iter().all(|p| line.contains(p))
            }
            DependenceWitness::ConicOverload { conic, nodes } => {
                members(nodes)
                    && nodes.len() >= 2 * n + 2
                    && nodes.iter().all(|p| conic.contains(p))
            }
            DependenceWitness::CubicIntersection { cubic, curve } => {
                x.len() == 3 * n
                    && !cubic.is_zero()
                    && !curve.is_zero()
                    && cubic.degree().unwrap_or(0) <= 3
                    && curve.degree().unwrap_or(0) <= n
                    && x.nodes().iter().all(|p| cubic.eval(p).is_zero() && curve.eval(p).is_zero())
            }
            DependenceWitness::Unclassified => false,
        }
    }
}

fn proportional(p: &QPoly, q: &QPoly) -> bool {
    let Some((m, c)) = p.terms().next() else {
        return q.is_zero();
    };
    let k = q.coefficient(m) / c;
    !k.is_zero()
        && p.terms().count() == q.terms().count()
        && p.terms().all(|(m, c)| q.coefficient(m) == c * &k)
}

/// Explains why a set with at most `3n` nodes is `n`-dependent; absent when
/// it is independent. Heavy lines take priority over heavy conics, which
/// take priority over cubic intersections; within a kind the first curve in
/// canonical order is reported.
pub fn classify_dependence(x: &NodeSet, n: usize) -> Result<Option<DependenceWitness>> {
    if x.len() > 3 * n {
        return Err(Error::OutOfRange(format!(
            "{} nodes exceed 3n = {}",
            x.len(),
            3 * n
        )));
    }
    if is_n_independent(x, n) {
        return Ok(None);
    }
    if let (count, Some(line)) = geometry::max_collinear(x.nodes())? {
        if count >= n + 2 {
            let nodes = x.nodes().iter().filter(|p| line.contains(p)).cloned().collect();
            return Ok(Some(DependenceWitness::CollinearOverload { line, nodes }));
        }
    }
    let threshold = 2 * n + 2;
    if threshold >= 6 {
        if let Some((conic, nodes)) = geometry::heavy_conics(x.nodes(), threshold)?
            .into_iter()
            .next()
        {
            return Ok(Some(DependenceWitness::ConicOverload { conic, nodes }));
        }
    }
    if x.len() == 3 * n {
        let cubics = vanishing_basis(x.nodes(), 3);
        if let Some(cubic) = cubics.first() {
            let curve = vanishing_basis(x.nodes(), n)
                .into_iter()
                .find(|p| !proportional(cubic, p));
            if let Some(curve) = curve {
                return Ok(Some(DependenceWitness::CubicIntersection {
                    cubic: cubic.clone(),
                    curve,
                }));
            }
        }
    }
    Ok(Some(DependenceWitness::Unclassified))
}
