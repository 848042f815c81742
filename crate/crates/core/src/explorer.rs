//! Fixture generators and the search for sharpness witnesses: independent
//! node sets one node beyond the factored-form bounds, with a node whose
//! fundamental polynomial exists but has no line (or line/conic) form.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Line, Node};
use crate::independence::{self, NodeSet};
use crate::poly::{Factor, FactoredPoly, NormalizeAt};
use crate::synthesis::{self, CoverMode};
use crate::Rational;

/// Intersection points of `n+2` lines in general position, ordered by line
/// pair `(i, j)` with `i < j`.
pub fn gen_chung_yao(lines: &[Line]) -> Result<NodeSet> {
    if lines.len() < 2 {
        return Err(Error::DegenerateConfiguration(format!(
            "need at least 2 lines, got {}",
            lines.len()
        )));
    }
    let mut nodes = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = lines[i].intersect(&lines[j]).ok_or_else(|| {
                Error::DegenerateConfiguration(format!("lines {i} and {j} are parallel"))
            })?;
            if let Some(k) = (0..lines.len()).find(|&k| k != i && k != j && lines[k].contains(&p)) {
                return Err(Error::DegenerateConfiguration(format!(
                    "lines {i}, {j} and {k} are concurrent"
                )));
            }
            nodes.push(p);
        }
    }
    NodeSet::new(nodes)
}

/// Product of the lines missing the intersection of lines `i` and `j`,
/// normalized to 1 there.
pub fn chung_yao_fundamental(lines: &[Line], i: usize, j: usize) -> Result<FactoredPoly> {
    let p = lines[i]
        .intersect(&lines[j])
        .ok_or_else(|| Error::DegenerateConfiguration("parallel lines".into()))?;
    let factors = lines
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, l)| Factor::Line(l.clone()))
        .collect();
    FactoredPoly::new(Rational::one(), factors)?.normalize_at(&p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    /// Rank of the collocation matrix; equals `#X` for a valid witness.
    pub rank: usize,
    /// Search states expanded while exhausting the cover search.
    pub search_space: u64,
}

/// An `n`-independent set with a node whose fundamental polynomial has no
/// factored form of the given mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub x: NodeSet,
    pub n: usize,
    pub node_index: usize,
    pub mode: CoverMode,
    pub certificate: Certificate,
}

impl Witness {
    pub fn node(&self) -> &Node {
        &self.x.nodes()[self.node_index]
    }
}

/// Node count of a witness for `mode` at degree `n`.
pub fn witness_size(mode: CoverMode, n: usize) -> usize {
    mode.max_nodes(n) + 1
}

fn min_degree(mode: CoverMode) -> usize {
    match mode {
        CoverMode::Lines => 2,
        CoverMode::LinesAndConics => 3,
    }
}

/// Runs every check of a witness candidate; returns the certificate when
/// all pass.
fn certify(x: &NodeSet, n: usize, node_index: usize, mode: CoverMode) -> Result<Option<Certificate>> {
    let rank = independence::collocation_rank(x, n);
    if rank != x.len() {
        return Ok(None);
    }
    let a = &x.nodes()[node_index];
    if independence::fundamental(a, x, n)?.is_none() {
        return Ok(None);
    }
    let search = synthesis::cover_search(a, x, n, mode)?;
    Ok(search.cover.is_none().then_some(Certificate {
        rank,
        search_space: search.explored,
    }))
}

/// Re-derives every witness invariant from scratch.
pub fn verify_witness(w: &Witness) -> bool {
    if w.n < min_degree(w.mode)
        || w.x.len() != witness_size(w.mode, w.n)
        || w.node_index >= w.x.len()
    {
        return false;
    }
    matches!(certify(&w.x, w.n, w.node_index, w.mode), Ok(Some(c)) if c == w.certificate)
}

/// Removing any node leaves a set at the bound where every node has a
/// factored fundamental of the witness mode.
pub fn sharpness_coherent(w: &Witness) -> Result<bool> {
    for drop in 0..w.x.len() {
        let rest: Vec<Node> = w
            .x
            .nodes()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != drop)
            .map(|(_, p)| p.clone())
            .collect();
        let y = NodeSet::new(rest)?;
        for b in y.nodes() {
            let f = match w.mode {
                CoverMode::Lines => synthesis::synth_lines(b, &y, w.n)?,
                CoverMode::LinesAndConics => synthesis::synth_lines_conics(b, &y, w.n)?,
            };
            match f {
                Some(f) if synthesis::is_fundamental_for(&f, b, &y, w.n) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Rational point of the unit circle for the parameter `t`
/// (`t = ∞` gives `(-1, 0)`).
fn circle_point(t: Option<Rational>) -> Node {
    match t {
        None => Node::new(-Rational::one(), Rational::zero()),
        Some(t) => {
            let one = Rational::one();
            let d = one.clone() + t.clone() * &t;
            Node::new((one - t.clone() * &t) / &d, Rational::from_integer(2.into()) * t / d)
        }
    }
}

/// Distinct rational points of the unit circle: `(1,0), (0,1), (-1,0),
/// (0,-1), (3/5,4/5), …`.
fn circle_points(count: usize) -> Vec<Node> {
    let mut params: Vec<Option<Rational>> = vec![Some(rat(0, 1)), Some(rat(1, 1)), None, Some(rat(-1, 1))];
    let mut k = 2;
    while params.len() < count {
        for t in [rat(1, k), rat(k, 1), rat(-1, k), rat(-k, 1)] {
            if !params.contains(&Some(t.clone())) {
                params.push(Some(t));
            }
        }
        k += 1;
    }
    params.into_iter().take(count).map(circle_point).collect()
}

/// Points `(t, t³)` for `t = start, start+1, …`; with positive parameters
/// no three are collinear and no six lie on a conic.
fn cubic_points(start: i64, count: usize) -> Vec<Node> {
    (start..start + count as i64)
        .map(|t| Node::from_ints(t, t * t * t))
        .collect()
}

fn extra_nodes() -> Vec<Node> {
    vec![
        Node::from_ints(0, 0),
        Node::new(rat(1, 2), rat(0, 1)),
        Node::new(rat(0, 1), rat(1, 3)),
        Node::from_ints(0, 1),
        Node::from_ints(0, -1),
        Node::from_ints(1, 0),
        Node::new(rat(1, 3), rat(1, 5)),
        Node::from_ints(2, 2),
    ]
}

/// Candidate `(nodes, distinguished index)` pairs in canonical order:
/// structured families first, then seeded random sets of small points.
fn candidates(mode: CoverMode, n: usize) -> impl Iterator<Item = (Vec<Node>, usize)> {
    let size = witness_size(mode, n);
    let residual = size - 1;
    let structured: Vec<(Vec<Node>, usize)> = (0..4)
        .flat_map(move |shift| {
            let curve = match mode {
                CoverMode::Lines => circle_points(residual + shift)[shift..].to_vec(),
                CoverMode::LinesAndConics => cubic_points(1 + shift as i64, residual),
            };
            extra_nodes().into_iter().filter_map(move |e| {
                if curve.contains(&e) {
                    return None;
                }
                let mut nodes = vec![e];
                nodes.extend(curve.iter().cloned());
                Some((nodes, 0))
            })
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let random = std::iter::from_fn(move || {
        let mut nodes: Vec<Node> = Vec::with_capacity(size);
        while nodes.len() < size {
            let p = Node::new(
                rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
                rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
            );
            if !nodes.contains(&p) {
                nodes.push(p);
            }
        }
        Some(nodes)
    })
    .flat_map(move |nodes| (0..size).map(move |k| (nodes.clone(), k)));
    structured.into_iter().chain(random)
}

fn search(mode: CoverMode, n: usize, budget: usize) -> Result<Option<Witness>> {
    if n < min_degree(mode) {
        return Err(Error::OutOfRange(format!(
            "{} witnesses need n >= {}, got {n}",
            mode.as_str(),
            min_degree(mode)
        )));
    }
    for (nodes, node_index) in candidates(mode, n).take(budget) {
        let x = NodeSet::new(nodes)?;
        if let Some(certificate) = certify(&x, n, node_index, mode)? {
            return Ok(Some(Witness {
                x,
                n,
                node_index,
                mode,
                certificate,
            }));
        }
    }
    Ok(None)
}

/// Searches at most `budget` candidate configurations of `2n+2` nodes for
/// a node without a product-of-lines fundamental.
pub fn search_ce_lines(n: usize, budget: usize) -> Result<Option<Witness>> {
    search(CoverMode::Lines, n, budget)
}

/// Searches at most `budget` candidate configurations of `2n+⌊n/2⌋+2`
/// nodes for a node without a lines-and-conics fundamental.
pub fn search_ce_lines_conics(n: usize, budget: usize) -> Result<Option<Witness>> {
    search(CoverMode::LinesAndConics, n, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independence::is_n_poised;
    use crate::scalar::qi;

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(qi(a), qi(b), qi(c)).unwrap()
    }

    #[test]
    fn chung_yao_examples() {
        let lines = [line(1, 0, 0), line(0, 1, 0), line(1, 1, -1)];
        let x = gen_chung_yao(&lines).unwrap();
        assert_eq!(x.nodes(), &[Node::from_ints(0, 0), Node::from_ints(0, 1), Node::from_ints(1, 0)]);
        assert!(is_n_poised(&x, 1));

        let generic = [line(1, 2, -3), line(2, -1, 1), line(3, 1, 5)];
        assert!(is_n_poised(&gen_chung_yao(&generic).unwrap(), 1));

        let parallel = [line(1, 0, 0), line(1, 0, -1), line(0, 1, 0)];
        assert!(matches!(gen_chung_yao(&parallel), Err(Error::DegenerateConfiguration(_))));
        let concurrent = [line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)];
        assert!(gen_chung_yao(&concurrent).is_err());
    }

    #[test]
    fn circle_sequence_starts_on_the_axes() {
        let pts = circle_points(6);
        assert_eq!(pts[0], Node::from_ints(1, 0));
        assert_eq!(pts[1], Node::from_ints(0, 1));
        assert_eq!(pts[2], Node::from_ints(-1, 0));
        assert_eq!(pts[3], Node::from_ints(0, -1));
        assert_eq!(pts[4], Node::new(rat(3, 5), rat(4, 5)));
        for p in circle_points(20) {
            assert_eq!(p.x.clone() * &p.x + p.y.clone() * &p.y, Rational::one());
        }
    }

    #[test]
    fn lines_witness_at_degree_two() {
        let w = search_ce_lines(2, 10).unwrap().unwrap();
        assert_eq!(w.x.len(), 6);
        assert_eq!(w.node(), &Node::from_ints(0, 0));
        assert_eq!(w.certificate.rank, 6);
        assert!(verify_witness(&w));
        assert!(sharpness_coherent(&w).unwrap());

        let mut swapped = w.clone();
        swapped.node_index = 1;
        assert!(!verify_witness(&swapped));

        let mut short = w.clone();
        short.x = NodeSet::new(w.x.nodes()[..5].to_vec()).unwrap();
        assert!(!verify_witness(&short));
    }

    #[test]
    fn lines_conics_witness_at_degree_three() {
        let w = search_ce_lines_conics(3, 10).unwrap().unwrap();
        assert_eq!(w.x.len(), 9);
        assert_eq!(w.certificate.rank, 9);
        assert!(!independence::is_n_poised(&w.x, 3));
        assert!(verify_witness(&w));
        assert!(sharpness_coherent(&w).unwrap());
    }

    #[test]
    fn search_argument_checks() {
        assert!(matches!(search_ce_lines(1, 10), Err(Error::OutOfRange(_))));
        assert!(matches!(search_ce_lines_conics(2, 10), Err(Error::OutOfRange(_))));
        assert_eq!(search_ce_lines(2, 0).unwrap(), None);
        assert_eq!(search_ce_lines_conics(3, 0).unwrap(), None);
    }
}
