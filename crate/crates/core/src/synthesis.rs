//! Fundamental polynomials as products of lines, or of lines and
//! irreducible conics.
//!
//! A factored fundamental for `A` is a cover of `X∖{A}` by curves that miss
//! `A`, with total degree at most `n`. The search here is exhaustive over a
//! finite candidate set that is complete for that question:
//!
//! * a line of a cover either holds two or more residual nodes, so it is one
//!   of the lines through residual pairs, or it holds at most one, so it can
//!   be swapped for a fixed "free" line through that node;
//! * an irreducible conic holding five or more residual nodes is the unique
//!   conic through any five of them; one holding at most four can be swapped
//!   for two lines missing `A` (three of its nodes are never collinear, and
//!   `A` lies on at most one line of each pairing).
//!
//! The search fixes the first uncovered node and branches only over the
//! candidates through it, memoizing failed `(uncovered, budget)` states.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{self, Conic, Line, Node};
use crate::independence::NodeSet;
use crate::poly::{Factor, FactoredPoly, NormalizeAt};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverMode {
    Lines,
    LinesAndConics,
}

impl CoverMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoverMode::Lines => "lines",
            CoverMode::LinesAndConics => "lines-conics",
        }
    }

    /// Largest node count for which the factored-form characterization of
    /// this mode applies.
    pub fn max_nodes(&self, n: usize) -> usize {
        match self {
            CoverMode::Lines => 2 * n + 1,
            CoverMode::LinesAndConics => 2 * n + n / 2 + 1,
        }
    }
}

/// Line through `b` perpendicular to `ab`; never contains `a`.
fn free_line(a: &Node, b: &Node) -> Line {
    let dx = b.x.clone() - &a.x;
    let dy = b.y.clone() - &a.y;
    let c = -(dx.clone() * &b.x + dy.clone() * &b.y);
    Line::new(dx, dy, c).expect("a and b are distinct")
}

/// A candidate factor with the residual nodes it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCandidate {
    pub factor: Factor,
    pub covered: Vec<Node>,
    mask: u64,
}

fn mask_of(f: &Factor, residual: &[Node]) -> u64 {
    residual
        .iter()
        .enumerate()
        .filter(|(_, p)| f.contains(p))
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Candidate factors missing `a` for covering `residual`, in canonical
/// order.
pub fn cover_candidates(a: &Node, residual: &[Node], mode: CoverMode) -> Vec<CoverCandidate> {
    let mut factors: Vec<Factor> = geometry::lines_through_pairs(residual)
        .into_keys()
        .filter(|l| !l.contains(a))
        .map(Factor::Line)
        .collect();
    factors.extend(residual.iter().map(|b| Factor::Line(free_line(a, b))));
    if mode == CoverMode::LinesAndConics && residual.len() >= 5 {
        for subset in residual.iter().cloned().combinations(5) {
            if let Some(c) = geometry::unique_conic_through(&subset) {
                if c.is_nondegenerate() && !c.contains(a) {
                    factors.push(Factor::Conic(c));
                }
            }
        }
    }
    factors.sort();
    factors.dedup();
    factors
        .into_iter()
        .map(|factor| {
            let mask = mask_of(&factor, residual);
            let covered = residual.iter().filter(|p| factor.contains(p)).cloned().collect();
            CoverCandidate {
                factor,
                covered,
                mask,
            }
        })
        .collect()
}

/// Outcome of an exhaustive cover search.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSearch {
    /// Factored fundamental normalized to 1 at the distinguished node.
    pub cover: Option<FactoredPoly>,
    /// Number of search states expanded.
    pub explored: u64,
}

struct Search<'a> {
    candidates: &'a [CoverCandidate],
    failed: HashSet<(u64, usize)>,
    chosen: Vec<usize>,
    explored: u64,
}

impl Search<'_> {
    fn capacity(&self, uncovered: u64, budget: usize) -> usize {
        let (mut line, mut conic) = (0, 0);
        for c in self.candidates {
            let k = (c.mask & uncovered).count_ones() as usize;
            match c.factor {
                Factor::Line(_) => line = line.max(k),
                Factor::Conic(_) => conic = conic.max(k),
            }
        }
        let lines_only = budget * line;
        let conic_heavy = (budget / 2) * conic + (budget % 2) * line;
        lines_only.max(conic_heavy)
    }

    fn run(&mut self, uncovered: u64, budget: usize) -> bool {
        if uncovered == 0 {
            return true;
        }
        if budget == 0 || self.failed.contains(&(uncovered, budget)) {
            return false;
        }
        self.explored += 1;
        if self.capacity(uncovered, budget) < uncovered.count_ones() as usize {
            self.failed.insert((uncovered, budget));
            return false;
        }
        let target = 1u64 << uncovered.trailing_zeros();
        let mut options: Vec<usize> = (0..self.candidates.len())
            .filter(|&i| {
                let c = &self.candidates[i];
                c.mask & target != 0 && c.factor.degree() <= budget
            })
            .collect();
        // stable: canonical order breaks ties
        options.sort_by_key(|&i| std::cmp::Reverse((self.candidates[i].mask & uncovered).count_ones()));
        for i in options {
            let c = &self.candidates[i];
            self.chosen.push(i);
            if self.run(uncovered & !c.mask, budget - c.factor.degree()) {
                return true;
            }
            self.chosen.pop();
        }
        self.failed.insert((uncovered, budget));
        false
    }
}

/// Exhaustively searches for a product of at most degree `n` of lines (and,
/// in [`CoverMode::LinesAndConics`], irreducible conics) that vanishes on
/// `x∖{a}` and not at `a`. No cardinality precondition is applied.
pub fn cover_search(a: &Node, x: &NodeSet, n: usize, mode: CoverMode) -> Result<CoverSearch> {
    x.require_member(a)?;
    let residual = x.without(a);
    if residual.len() > 64 {
        return Err(Error::OutOfRange(format!(
            "cover search supports at most 64 residual nodes, got {}",
            residual.len()
        )));
    }
    let candidates = cover_candidates(a, &residual, mode);
    let mut search = Search {
        candidates: &candidates,
        failed: HashSet::new(),
        chosen: Vec::new(),
        explored: 0,
    };
    let full = if residual.len() == 64 {
        u64::MAX
    } else {
        (1u64 << residual.len()) - 1
    };
    let cover = if search.run(full, n) {
        let factors = search
            .chosen
            .iter()
            .map(|&i| candidates[i].factor.clone())
            .collect();
        let product = FactoredPoly::new(Rational::one(), factors)?;
        Some(product.normalize_at(a)?)
    } else {
        None
    };
    Ok(CoverSearch {
        cover,
        explored: search.explored,
    })
}

fn check_size(x: &NodeSet, n: usize, mode: CoverMode) -> Result<()> {
    let max = mode.max_nodes(n);
    if x.len() > max {
        return Err(Error::OutOfRange(format!(
            "{} nodes exceed the {} bound {max} for n = {n}",
            x.len(),
            mode.as_str()
        )));
    }
    Ok(())
}

/// True iff no `n+1` nodes of `x∖{a}` lie on a line through `a`.
pub fn cond_lines(a: &Node, x: &NodeSet, n: usize) -> Result<bool> {
    x.require_member(a)?;
    Ok(geometry::heavy_lines_through(a, &x.without(a), n + 1).is_empty())
}

/// Fundamental polynomial of `a` as a product of lines; requires
/// `#x ≤ 2n+1`.
pub fn synth_lines(a: &Node, x: &NodeSet, n: usize) -> Result<Option<FactoredPoly>> {
    x.require_member(a)?;
    check_size(x, n, CoverMode::Lines)?;
    Ok(cover_search(a, x, n, CoverMode::Lines)?.cover)
}

/// Fundamental polynomial of `a` as a product of lines and irreducible
/// conics; requires `#x ≤ 2n + ⌊n/2⌋ + 1`.
pub fn synth_lines_conics(a: &Node, x: &NodeSet, n: usize) -> Result<Option<FactoredPoly>> {
    x.require_member(a)?;
    check_size(x, n, CoverMode::LinesAndConics)?;
    Ok(cover_search(a, x, n, CoverMode::LinesAndConics)?.cover)
}

/// `n+1` or more residual nodes on a line through the distinguished node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineViolation {
    pub line: Line,
    pub nodes: Vec<Node>,
}

/// A line `alpha` carrying `n+1` residual nodes, and a line through the
/// distinguished node carrying `n` of the nodes off `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitViolation {
    pub alpha: Line,
    pub alpha_nodes: Vec<Node>,
    pub line: Line,
    pub nodes: Vec<Node>,
}

/// An irreducible conic through the distinguished node carrying `2n+1`
/// residual nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicViolation {
    pub conic: Conic,
    pub nodes: Vec<Node>,
}

/// The three geometric conditions for a line/conic fundamental. A condition
/// holds exactly when its violation is absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionReport {
    pub cond_a: Option<LineViolation>,
    pub cond_b: Option<SplitViolation>,
    pub cond_c: Option<ConicViolation>,
}

impl ConditionReport {
    pub fn a_holds(&self) -> bool {
        self.cond_a.is_none()
    }

    pub fn b_holds(&self) -> bool {
        self.cond_b.is_none()
    }

    pub fn c_holds(&self) -> bool {
        self.cond_c.is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.a_holds() && self.b_holds() && self.c_holds()
    }

    /// Label of the first failing condition.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.a_holds() {
            Some("a")
        } else if !self.b_holds() {
            Some("b")
        } else if !self.c_holds() {
            Some("c")
        } else {
            None
        }
    }
}

/// A nondegenerate member of the conic family through `points`, if the
/// family has one among its basis and simple pairwise combinations.
fn nondegenerate_member(points: &[Node]) -> Option<Conic> {
    let family = geometry::conics_through(points).ok()?;
    if let Some(c) = family.iter().find(|c| c.is_nondegenerate()) {
        return Some(c.clone());
    }
    for (c1, c2) in family.iter().tuple_combinations() {
        let (u, v) = (c1.coeffs(), c2.coeffs());
        for k in [1i64, -1, 2] {
            let k = Rational::from_integer(k.into());
            let w: [Rational; 6] = std::array::from_fn(|i| u[i].clone() + v[i].clone() * &k);
            if let Ok(c) = Conic::new(w) {
                if c.is_nondegenerate() {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Evaluates the three conditions on `a` within `x` for degree `n`.
pub fn cond_lines_conics(a: &Node, x: &NodeSet, n: usize) -> Result<ConditionReport> {
    x.require_member(a)?;
    let residual = x.without(a);
    let mut report = ConditionReport::default();

    if let Some((line, nodes)) = geometry::heavy_lines_through(a, &residual, n + 1)
        .into_iter()
        .next()
    {
        report.cond_a = Some(LineViolation { line, nodes });
    }

    // with n = 0 the cardinality bound leaves no residual nodes
    'alpha: for (alpha, alpha_nodes) in geometry::lines_through_pairs(&residual) {
        if n == 0 || alpha_nodes.len() < n + 1 {
            continue;
        }
        let off: Vec<Node> = residual
            .iter()
            .filter(|p| !alpha.contains(p))
            .cloned()
            .collect();
        if let Some((line, nodes)) = geometry::heavy_lines_through(a, &off, n).into_iter().next() {
            report.cond_b = Some(SplitViolation {
                alpha,
                alpha_nodes,
                line,
                nodes,
            });
            break 'alpha;
        }
    }

    let need = 2 * n + 1;
    if residual.len() >= need {
        let mut found: Option<ConicViolation> = None;
        if need >= 4 {
            for subset in residual.iter().cloned().combinations(4) {
                let mut pts = vec![a.clone()];
                pts.extend(subset);
                let Some(c) = geometry::unique_conic_through(&pts) else {
                    continue;
                };
                if !c.is_nondegenerate() || found.as_ref().is_some_and(|f| f.conic <= c) {
                    continue;
                }
                let on = geometry::nodes_on_conic(&c, &residual);
                if on.len() >= need {
                    found = Some(ConicViolation { conic: c, nodes: on });
                }
            }
        } else {
            for subset in residual.iter().cloned().combinations(need) {
                let mut pts = vec![a.clone()];
                pts.extend(subset.iter().cloned());
                if let Some(c) = nondegenerate_member(&pts) {
                    let nodes = geometry::nodes_on_conic(&c, &residual);
                    found = Some(ConicViolation { conic: c, nodes });
                    break;
                }
            }
        }
        report.cond_c = found;
    }
    Ok(report)
}

/// Checks the defining conditions of a fundamental polynomial for `a`.
pub fn is_fundamental_for(f: &FactoredPoly, a: &Node, x: &NodeSet, n: usize) -> bool {
    f.degree() <= n
        && f.eval(a).is_one()
        && x.nodes().iter().filter(|p| *p != a).all(|p| f.eval(p).is_zero())
        && f.factors().iter().all(|g| match g {
            Factor::Line(_) => true,
            Factor::Conic(c) => c.is_nondegenerate(),
        })
}
