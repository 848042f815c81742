//! Exact plane primitives: nodes, lines, conics and incidence counting.
//!
//! Lines and conics are stored in canonical form: integer coefficients with
//! gcd 1 and the first nonzero coefficient positive. Two curves are equal iff
//! their canonical coefficients are equal, and the derived ordering is the
//! canonical order used for every enumeration in the crate.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub x: Rational,
    pub y: Rational,
}

impl Node {
    pub fn new(x: Rational, y: Rational) -> Self {
        Node { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Node::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Scales rational coefficients to coprime integers with the first nonzero
/// entry positive. All-zero input stays all zero.
fn canonical_integers(coeffs: &[Rational]) -> Vec<Integer> {
    let lcm = coeffs
        .iter()
        .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Integer> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let gcd = ints.iter().fold(Integer::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -Integer::one(),
        _ => Integer::one(),
    };
    ints.into_iter().map(|v| v / &gcd * &sign).collect()
}

/// The line `a x + b y + c = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    a: Integer,
    b: Integer,
    c: Integer,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateInput(
                "line needs a nonzero x or y coefficient".into(),
            ));
        }
        let mut it = canonical_integers(&[a, b, c]).into_iter();
        Ok(Line {
            a: it.next().unwrap(),
            b: it.next().unwrap(),
            c: it.next().unwrap(),
        })
    }

    /// Coefficients `(a, b, c)` as rationals.
    pub fn coeffs(&self) -> [Rational; 3] {
        [&self.a, &self.b, &self.c].map(|v| Rational::from_integer(v.clone()))
    }

    pub fn eval(&self, p: &Node) -> Rational {
        let [a, b, c] = self.coeffs();
        a * &p.x + b * &p.y + c
    }

    pub fn contains(&self, p: &Node) -> bool {
        self.eval(p).is_zero()
    }

    pub fn is_parallel_to(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// Intersection point, absent for parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<Node> {
        let [a1, b1, c1] = self.coeffs();
        let [a2, b2, c2] = other.coeffs();
        let det = a1.clone() * &b2 - b1.clone() * &a2;
        if det.is_zero() {
            return None;
        }
        let x = (b1.clone() * &c2 - c1.clone() * &b2) / &det;
        let y = (c1 * &a2 - a1 * &c2) / &det;
        Some(Node::new(x, y))
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Integer, &str)]) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        match (mag.is_one(), mono.is_empty()) {
            (true, false) => write!(f, "{mono}")?,
            (_, true) => write!(f, "{mag}")?,
            (false, false) => write!(f, "{mag}{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            &[(self.a.clone(), "x"), (self.b.clone(), "y"), (self.c.clone(), "")],
        )
    }
}

/// The conic `q20 x² + q11 xy + q02 y² + q10 x + q01 y + q00 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conic {
    q: [Integer; 6],
}

impl Conic {
    /// Coefficients in the order `q20, q11, q02, q10, q01, q00`.
    pub fn new(coeffs: [Rational; 6]) -> Result<Self> {
        if coeffs[..3].iter().all(Zero::is_zero) {
            return Err(Error::DegenerateInput(
                "conic needs a nonzero quadratic part".into(),
            ));
        }
        let ints = canonical_integers(&coeffs);
        Ok(Conic {
            q: std::array::from_fn(|i| ints[i].clone()),
        })
    }

    pub fn from_line_product(l: &Line, m: &Line) -> Self {
        let [a1, b1, c1] = l.coeffs();
        let [a2, b2, c2] = m.coeffs();
        Conic::new([
            a1.clone() * &a2,
            a1.clone() * &b2 + a2.clone() * &b1,
            b1.clone() * &b2,
            a1 * &c2 + a2 * &c1,
            b1 * &c2 + b2 * &c1,
            c1 * c2,
        ])
        .expect("product of two lines has a quadratic part")
    }

    pub fn coeffs(&self) -> [Rational; 6] {
        self.q.clone().map(Rational::from_integer)
    }

    pub fn eval(&self, p: &Node) -> Rational {
        let [q20, q11, q02, q10, q01, q00] = self.coeffs();
        let (x, y) = (&p.x, &p.y);
        q20 * x * x + q11 * x * y + q02 * y * y + q10 * x + q01 * y + q00
    }

    pub fn contains(&self, p: &Node) -> bool {
        self.eval(p).is_zero()
    }

    /// Determinant of the symmetric 3x3 matrix of the conic.
    pub fn discriminant(&self) -> Rational {
        let [q20, q11, q02, q10, q01, q00] = self.coeffs();
        let half = Rational::new(1.into(), 2.into());
        let (h11, h10, h01) = (q11 * &half, q10 * &half, q01 * &half);
        let m = Matrix::from_vec(
            3,
            3,
            vec![
                q20,
                h11.clone(),
                h10.clone(),
                h11,
                q02,
                h01.clone(),
                h10,
                h01,
                q00,
            ],
        )
        .expect("3x3");
        linalg::determinant(&m).expect("square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.discriminant().is_zero()
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x^2", "xy", "y^2", "x", "y", ""];
        let terms: Vec<(Integer, &str)> = self
            .q
            .iter()
            .cloned()
            .zip(names)
            .collect();
        write_terms(f, &terms)
    }
}

pub fn ensure_distinct(nodes: &[Node]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for p in nodes {
        if !seen.insert(p) {
            return Err(Error::InvalidInput(format!("duplicate node {p}")));
        }
    }
    Ok(())
}

/// Twice the signed area of the triangle `p q r`.
pub fn orientation(p: &Node, q: &Node, r: &Node) -> Rational {
    (q.x.clone() - &p.x) * (r.y.clone() - &p.y) - (q.y.clone() - &p.y) * (r.x.clone() - &p.x)
}

pub fn line_through(p: &Node, q: &Node) -> Result<Line> {
    if p == q {
        return Err(Error::DegenerateInput(format!(
            "no unique line through the coincident nodes {p}"
        )));
    }
    Line::new(
        p.y.clone() - &q.y,
        q.x.clone() - &p.x,
        p.x.clone() * &q.y - q.x.clone() * &p.y,
    )
}

pub fn on_line(l: &Line, p: &Node) -> bool {
    l.contains(p)
}

/// Every line through at least two of `nodes`, mapped to its incident nodes
/// (in input order).
pub fn lines_through_pairs(nodes: &[Node]) -> BTreeMap<Line, Vec<Node>> {
    let mut lines: BTreeMap<Line, Vec<Node>> = BTreeMap::new();
    for (i, j) in (0..nodes.len()).tuple_combinations() {
        let l = line_through(&nodes[i], &nodes[j]).expect("distinct nodes");
        if !lines.contains_key(&l) {
            let on = nodes.iter().filter(|p| l.contains(p)).cloned().collect();
            lines.insert(l, on);
        }
    }
    lines
}

/// Largest number of nodes on a single line, with the first such line in
/// canonical order when the count is at least two.
pub fn max_collinear(nodes: &[Node]) -> Result<(usize, Option<Line>)> {
    ensure_distinct(nodes)?;
    if nodes.len() < 2 {
        return Ok((nodes.len(), None));
    }
    let best = lines_through_pairs(nodes)
        .into_iter()
        .max_by(|(l1, n1), (l2, n2)| n1.len().cmp(&n2.len()).then(l2.cmp(l1)))
        .expect("at least one pair");
    Ok((best.1.len(), Some(best.0)))
}

/// Lines through `a` carrying at least `threshold` of `others`, in canonical
/// order. A threshold of zero is treated as one.
pub fn heavy_lines_through(a: &Node, others: &[Node], threshold: usize) -> Vec<(Line, Vec<Node>)> {
    let mut lines: BTreeMap<Line, Vec<Node>> = BTreeMap::new();
    for p in others {
        if p == a {
            continue;
        }
        let l = line_through(a, p).expect("distinct nodes");
        lines.entry(l).or_default().push(p.clone());
    }
    lines
        .into_iter()
        .filter(|(_, on)| on.len() >= threshold.max(1))
        .collect()
}

/// Collocation row of `p` against `x², xy, y², x, y, 1`.
fn conic_row(p: &Node) -> Vec<Rational> {
    vec![
        p.x.clone() * &p.x,
        p.x.clone() * &p.y,
        p.y.clone() * &p.y,
        p.x.clone(),
        p.y.clone(),
        Rational::one(),
    ]
}

/// Basis of the linear family of conics through `points`, every member a
/// true degree-two curve, in canonical order.
pub fn conics_through(points: &[Node]) -> Result<Vec<Conic>> {
    if points.is_empty() || points.len() > 5 {
        return Err(Error::InvalidInput(format!(
            "conic family needs 1 to 5 points, got {}",
            points.len()
        )));
    }
    ensure_distinct(points)?;
    Ok(conic_family(points))
}

fn conic_family(points: &[Node]) -> Vec<Conic> {
    let m = Matrix::from_rows(6, points.iter().map(conic_row).collect()).expect("6 columns");
    let basis = linalg::nullspace(&m);
    let is_quadratic = |v: &Vec<Rational>| v[..3].iter().any(|c| !c.is_zero());
    // Some member is quadratic: a vanishing linear form w gives w*x.
    let anchor = basis
        .iter()
        .find(|v| is_quadratic(v))
        .cloned()
        .expect("a nonempty conic family contains a quadratic member");
    let mut conics: Vec<Conic> = basis
        .into_iter()
        .map(|v| {
            let v: Vec<Rational> = if is_quadratic(&v) {
                v
            } else {
                v.iter().zip(&anchor).map(|(a, b)| a + b).collect()
            };
            Conic::new(std::array::from_fn(|i| v[i].clone())).expect("quadratic member")
        })
        .collect();
    conics.sort();
    conics
}

/// The conic through five distinct points when it is unique.
pub fn unique_conic_through(points: &[Node]) -> Option<Conic> {
    if points.len() != 5 {
        return None;
    }
    let mut family = conic_family(points);
    (family.len() == 1).then(|| family.pop().unwrap())
}

pub fn conic_is_nondegenerate(c: &Conic) -> bool {
    c.is_nondegenerate()
}

pub fn nodes_on_conic(c: &Conic, nodes: &[Node]) -> Vec<Node> {
    nodes.iter().filter(|p| c.contains(p)).cloned().collect()
}

/// Every conic (irreducible or a line pair) incident to at least
/// `threshold` of `nodes`, with its incident nodes, in canonical order.
///
/// Irreducible conics carrying six or more nodes are recovered from any five
/// of them. Line pairs are enumerated directly. `threshold` must be at least
/// six; smaller thresholds are satisfied by infinitely many conics.
pub fn heavy_conics(nodes: &[Node], threshold: usize) -> Result<Vec<(Conic, Vec<Node>)>> {
    if threshold < 6 {
        return Err(Error::OutOfRange(format!(
            "heavy conic threshold {threshold} below 6"
        )));
    }
    ensure_distinct(nodes)?;
    let mut found: BTreeMap<Conic, Vec<Node>> = BTreeMap::new();
    if nodes.len() < threshold {
        return Ok(Vec::new());
    }
    for subset in nodes.iter().cloned().combinations(5) {
        if let Some(c) = unique_conic_through(&subset) {
            if !found.contains_key(&c) {
                let on = nodes_on_conic(&c, nodes);
                if on.len() >= threshold {
                    found.insert(c, on);
                }
            }
        }
    }
    let lines: Vec<Line> = lines_through_pairs(nodes).into_keys().collect();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i..] {
            let c = Conic::from_line_product(l, m);
            if found.contains_key(&c) {
                continue;
            }
            let on = nodes_on_conic(&c, nodes);
            if on.len() >= threshold {
                found.insert(c, on);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Largest number of nodes on one conic, with a witness conic when the
/// count exceeds five. Any five points lie on some conic.
pub fn max_coconic(nodes: &[Node]) -> Result<(usize, Option<Conic>)> {
    ensure_distinct(nodes)?;
    if nodes.len() <= 5 {
        return Ok((nodes.len(), None));
    }
    let best = heavy_conics(nodes, 6)?
        .into_iter()
        .max_by(|(c1, n1), (c2, n2)| n1.len().cmp(&n2.len()).then(c2.cmp(c1)));
    Ok(match best {
        Some((c, on)) => (on.len(), Some(c)),
        None => (5, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use proptest::prelude::*;

    fn n(x: i64, y: i64) -> Node {
        Node::from_ints(x, y)
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(qi(a), qi(b), qi(c)).unwrap()
    }

    fn circle_five() -> Vec<Node> {
        vec![n(1, 0), n(0, 1), n(-1, 0), n(0, -1), Node::new(q(3, 5), q(4, 5))]
    }

    fn unit_circle() -> Conic {
        Conic::new([1, 0, 1, 0, 0, -1].map(qi)).unwrap()
    }

    #[test]
    fn line_through_examples() {
        assert_eq!(line_through(&n(0, 0), &n(1, 0)).unwrap(), line(0, 1, 0));
        assert_eq!(line_through(&n(1, 0), &n(0, 1)).unwrap(), line(1, 1, -1));
        let l = line_through(&n(0, 0), &n(2, 4)).unwrap();
        assert_eq!(l, line(2, -1, 0));
        assert_eq!(l.to_string(), "2x - y");
        assert!(matches!(
            line_through(&n(1, 1), &n(1, 1)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn canonical_form_scales_rationals() {
        let l = Line::new(q(-1, 2), q(-1, 3), qi(0)).unwrap();
        assert_eq!(l, line(3, 2, 0));
        assert!(Line::new(qi(0), qi(0), qi(1)).is_err());
    }

    #[test]
    fn on_line_examples() {
        assert!(on_line(&line(0, 1, 0), &n(3, 0)));
        assert!(!on_line(&line(0, 1, 0), &n(3, 1)));
        assert!(on_line(&line(1, 1, -1), &Node::new(q(1, 2), q(1, 2))));
    }

    #[test]
    fn max_collinear_examples() {
        let (k, l) = max_collinear(&[n(0, 0), n(1, 1), n(2, 2), n(0, 1)]).unwrap();
        assert_eq!(k, 3);
        assert_eq!(l, Some(line(1, -1, 0)));
        assert_eq!(max_collinear(&[n(0, 0)]).unwrap(), (1, None));
        let grid: Vec<Node> = (0..3).flat_map(|x| (0..3).map(move |y| n(x, y))).collect();
        let (k, l) = max_collinear(&grid).unwrap();
        assert_eq!(k, 3);
        let l = l.unwrap();
        assert_eq!(grid.iter().filter(|p| l.contains(p)).count(), 3);
        assert!(max_collinear(&[n(0, 0), n(0, 0)]).is_err());
    }

    #[test]
    fn heavy_lines_examples() {
        let others = [n(1, 0), n(2, 0), n(0, 1)];
        assert_eq!(
            heavy_lines_through(&n(0, 0), &others, 2),
            vec![(line(0, 1, 0), vec![n(1, 0), n(2, 0)])]
        );
        assert!(heavy_lines_through(&n(0, 0), &others, 4).is_empty());
        let circle = [n(1, 0), n(0, 1), Node::new(q(3, 5), q(4, 5))];
        assert!(heavy_lines_through(&n(0, 0), &circle, 2).is_empty());
    }

    #[test]
    fn conics_through_examples() {
        assert_eq!(conics_through(&circle_five()).unwrap(), vec![unit_circle()]);
        let family = conics_through(&[n(0, 0)]).unwrap();
        assert_eq!(family.len(), 5);
        assert!(family.iter().all(|c| c.contains(&n(0, 0))));

        let four_collinear = [n(0, 0), n(1, 0), n(2, 0), n(3, 0), n(0, 1)];
        let family = conics_through(&four_collinear).unwrap();
        assert!(family.len() >= 2);
        assert!(family.iter().any(|c| !c.is_nondegenerate()));
        assert!(conics_through(&[]).is_err());
        assert!(conics_through(&[n(0, 0), n(0, 0)]).is_err());
    }

    #[test]
    fn nondegeneracy_examples() {
        assert_eq!(unit_circle().discriminant(), qi(-1));
        assert!(conic_is_nondegenerate(&unit_circle()));
        let xy = Conic::new([0, 1, 0, 0, 0, 0].map(qi)).unwrap();
        assert!(!conic_is_nondegenerate(&xy));
        let xx = Conic::new([1, 0, 0, 0, 0, 0].map(qi)).unwrap();
        assert!(!conic_is_nondegenerate(&xx));
        assert_eq!(unit_circle().to_string(), "x^2 + y^2 - 1");
    }

    #[test]
    fn nodes_on_conic_examples() {
        assert_eq!(nodes_on_conic(&unit_circle(), &[n(1, 0), n(2, 0)]), vec![n(1, 0)]);
        assert!(nodes_on_conic(&unit_circle(), &[]).is_empty());
        let axis = [n(1, 0), n(0, 1), n(-1, 0), n(0, -1)];
        assert_eq!(nodes_on_conic(&unit_circle(), &axis).len(), 4);
    }

    #[test]
    fn max_coconic_finds_circle_and_line_pairs() {
        let mut pts = circle_five();
        pts.push(Node::new(q(-3, 5), q(4, 5)));
        pts.push(n(5, 5));
        let (k, c) = max_coconic(&pts).unwrap();
        assert_eq!((k, c), (6, Some(unit_circle())));

        let pair = [n(0, 0), n(1, 0), n(2, 0), n(0, 1), n(1, 1), n(2, 1)];
        let (k, c) = max_coconic(&pair).unwrap();
        assert_eq!(k, 6);
        assert!(!c.unwrap().is_nondegenerate());
    }

    fn node_strategy() -> impl Strategy<Value = Node> {
        ((-6i64..7, 1i64..4), (-6i64..7, 1i64..4))
            .prop_map(|((a, b), (c, d))| Node::new(q(a, b), q(c, d)))
    }

    fn line_strategy() -> impl Strategy<Value = Line> {
        (-4i64..5, -4i64..5, -4i64..5)
            .prop_filter("needs a or b", |(a, b, _)| *a != 0 || *b != 0)
            .prop_map(|(a, b, c)| line(a, b, c))
    }

    proptest! {
        #[test]
        fn line_through_is_symmetric(p in node_strategy(), r in node_strategy()) {
            prop_assume!(p != r);
            prop_assert_eq!(line_through(&p, &r).unwrap(), line_through(&r, &p).unwrap());
        }

        #[test]
        fn on_line_matches_orientation(p in node_strategy(), r in node_strategy(), s in node_strategy()) {
            prop_assume!(p != r);
            let l = line_through(&p, &r).unwrap();
            prop_assert_eq!(on_line(&l, &s), orientation(&p, &r, &s).is_zero());
        }

        #[test]
        fn line_pairs_are_degenerate(l in line_strategy(), m in line_strategy()) {
            prop_assert!(!conic_is_nondegenerate(&Conic::from_line_product(&l, &m)));
        }

        #[test]
        fn unique_conic_contains_its_points(pts in prop::collection::btree_set(node_strategy(), 5)) {
            let pts: Vec<Node> = pts.into_iter().collect();
            let family = conics_through(&pts).unwrap();
            if family.len() == 1 {
                prop_assert!(pts.iter().all(|p| family[0].contains(p)));
            }
            prop_assert!(family.iter().all(|c| pts.iter().all(|p| c.contains(p))));
        }
    }
}
