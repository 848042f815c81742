//! Bivariate polynomials of bounded total degree and their factored forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Conic, Line, Node};
use crate::scalar::Scalar;
use crate::Rational;

/// Number of monomials `x^i y^j` with `i + j <= n`.
pub fn dim_pi(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// The monomial `x^x y^y`.
///
/// Ordered graded-lexicographically with `x` before `y`:
/// `1, x, y, x², xy, y², x³, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> usize {
        (self.x + self.y) as usize
    }

    /// All monomials of degree at most `n` in graded-lex order.
    pub fn up_to(n: usize) -> impl Iterator<Item = Monomial> {
        (0..=n as u32).flat_map(|d| (0..=d).rev().map(move |i| Monomial::new(i, d - i)))
    }

    /// Position of the monomial in graded-lex order.
    pub fn index(&self) -> usize {
        let d = self.degree();
        d * (d + 1) / 2 + (d - self.x as usize)
    }

    pub fn eval<T: Scalar>(&self, x: &T, y: &T) -> T {
        pow(x, self.x) * pow(y, self.y)
    }
}

fn pow<T: Scalar>(base: &T, exp: u32) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, v: &str, e: u32| match e {
            0 => Ok(()),
            1 => write!(f, "{v}"),
            e => write!(f, "{v}^{e}"),
        };
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        part(f, "x", self.x)?;
        part(f, "y", self.y)
    }
}

/// Element of Π_n: a sparse coefficient map over monomials of degree ≤ n.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePoly<T> {
    bound: usize,
    coeffs: BTreeMap<Monomial, T>,
}

impl<T: Scalar> BivariatePoly<T> {
    pub fn zero(bound: usize) -> Self {
        BivariatePoly {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(bound: usize, c: T) -> Self {
        Self::from_terms(bound, [(Monomial::ONE, c)]).expect("constant fits any bound")
    }

    pub fn from_terms(bound: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Result<Self> {
        let mut p = Self::zero(bound);
        for (m, c) in terms {
            if m.degree() > bound {
                return Err(Error::DegreeOverflow {
                    degree: m.degree(),
                    bound,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Builds from a coefficient vector in graded-lex order.
    pub fn from_dense(bound: usize, coeffs: &[T]) -> Result<Self> {
        if coeffs.len() != dim_pi(bound) {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for degree bound {bound}",
                coeffs.len()
            )));
        }
        Self::from_terms(bound, Monomial::up_to(bound).zip(coeffs.iter().cloned()))
    }

    pub fn to_dense(&self) -> Vec<T> {
        Monomial::up_to(self.bound).map(|m| self.coefficient(&m)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        let sum = match self.coeffs.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(m, sum);
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Same polynomial viewed inside Π_bound.
    pub fn with_bound(mut self, bound: usize) -> Result<Self> {
        let degree = self.degree().unwrap_or(0);
        if degree > bound {
            return Err(Error::DegreeOverflow { degree, bound });
        }
        self.bound = bound;
        Ok(self)
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.coeffs.get(m).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Actual total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Monomial::degree).max()
    }

    pub fn eval_at(&self, x: &T, y: &T) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, (m, c)| acc + c.clone() * m.eval(x, y))
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut p = Self::zero(self.bound);
        for (m, c) in &self.coeffs {
            p.add_term(*m, c.clone() * k.clone());
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.bound.max(other.bound));
        for (m, c) in self.coeffs.iter().chain(&other.coeffs) {
            p.add_term(*m, c.clone());
        }
        p
    }

    /// Product; the degree bound of the result is the sum of the bounds.
    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.bound + other.bound);
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                p.add_term(Monomial::new(m1.x + m2.x, m1.y + m2.y), c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl BivariatePoly<Rational> {
    pub fn eval(&self, at: &Node) -> Rational {
        self.eval_at(&at.x, &at.y)
    }
}

impl<T: Scalar + fmt::Display + Signed> fmt::Display for BivariatePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A line or conic factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Line(Line),
    Conic(Conic),
}

impl Factor {
    pub fn degree(&self) -> usize {
        match self {
            Factor::Line(_) => 1,
            Factor::Conic(_) => 2,
        }
    }

    pub fn eval(&self, p: &Node) -> Rational {
        match self {
            Factor::Line(l) => l.eval(p),
            Factor::Conic(c) => c.eval(p),
        }
    }

    pub fn contains(&self, p: &Node) -> bool {
        self.eval(p).is_zero()
    }

    pub fn to_poly(&self) -> BivariatePoly<Rational> {
        match self {
            Factor::Line(l) => {
                let [a, b, c] = l.coeffs();
                BivariatePoly::from_terms(
                    1,
                    [
                        (Monomial::new(1, 0), a),
                        (Monomial::new(0, 1), b),
                        (Monomial::ONE, c),
                    ],
                )
            }
            Factor::Conic(q) => {
                let [q20, q11, q02, q10, q01, q00] = q.coeffs();
                BivariatePoly::from_terms(
                    2,
                    [
                        (Monomial::new(2, 0), q20),
                        (Monomial::new(1, 1), q11),
                        (Monomial::new(0, 2), q02),
                        (Monomial::new(1, 0), q10),
                        (Monomial::new(0, 1), q01),
                        (Monomial::ONE, q00),
                    ],
                )
            }
        }
        .expect("factor degree within its bound")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Line(l) => write!(f, "({l})"),
            Factor::Conic(c) => write!(f, "({c})"),
        }
    }
}

/// `scale × Π factors`, with factors kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredPoly {
    scale: Rational,
    factors: Vec<Factor>,
}

impl FactoredPoly {
    pub fn new(scale: Rational, mut factors: Vec<Factor>) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidInput("factored polynomial with zero scale".into()));
        }
        factors.sort();
        Ok(FactoredPoly { scale, factors })
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(Factor::degree).sum()
    }

    pub fn eval(&self, p: &Node) -> Rational {
        self.factors
            .iter()
            .fold(self.scale.clone(), |acc, f| acc * f.eval(p))
    }

    /// Coefficient form inside Π_n.
    pub fn expand(&self, n: usize) -> Result<BivariatePoly<Rational>> {
        let degree = self.degree();
        if degree > n {
            return Err(Error::DegreeOverflow { degree, bound: n });
        }
        self.factors
            .iter()
            .fold(BivariatePoly::constant(0, self.scale.clone()), |acc, f| {
                acc.mul(&f.to_poly())
            })
            .with_bound(n)
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scale)?;
        for factor in &self.factors {
            write!(f, "·{factor}")?;
        }
        Ok(())
    }
}

/// Rescaling so that the value at a distinguished node is exactly one.
pub trait NormalizeAt: Sized {
    fn normalize_at(&self, a: &Node) -> Result<Self>;
}

impl NormalizeAt for BivariatePoly<Rational> {
    fn normalize_at(&self, a: &Node) -> Result<Self> {
        let v = self.eval(a);
        if v.is_zero() {
            return Err(Error::VanishingAtNode);
        }
        Ok(self.scale(&v.recip()))
    }
}

impl NormalizeAt for FactoredPoly {
    fn normalize_at(&self, a: &Node) -> Result<Self> {
        let v = self.eval(a);
        if v.is_zero() {
            return Err(Error::VanishingAtNode);
        }
        FactoredPoly::new(self.scale.clone() / v, self.factors.clone())
    }
}

/// Free-function form of [`NormalizeAt::normalize_at`].
pub fn normalize_at<P: NormalizeAt>(p: &P, a: &Node) -> Result<P> {
    p.normalize_at(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use proptest::prelude::*;

    type QPoly = BivariatePoly<Rational>;

    fn poly(bound: usize, terms: &[(u32, u32, i64)]) -> QPoly {
        QPoly::from_terms(bound, terms.iter().map(|&(i, j, c)| (Monomial::new(i, j), qi(c)))).unwrap()
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(qi(a), qi(b), qi(c)).unwrap()
    }

    #[test]
    fn dim_pi_examples() {
        assert_eq!(dim_pi(0), 1);
        assert_eq!(dim_pi(2), 6);
        assert_eq!(dim_pi(5), 21);
        for n in 0..8 {
            assert_eq!(Monomial::up_to(n).count(), dim_pi(n));
        }
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let order: Vec<String> = Monomial::up_to(2).map(|m| m.to_string()).collect();
        assert_eq!(order, ["1", "x", "y", "x^2", "xy", "y^2"]);
        for (k, m) in Monomial::up_to(6).enumerate() {
            assert_eq!(m.index(), k);
        }
        let sorted: Vec<Monomial> = {
            let mut v: Vec<Monomial> = Monomial::up_to(4).collect();
            v.reverse();
            v.sort();
            v
        };
        assert_eq!(sorted, Monomial::up_to(4).collect::<Vec<_>>());
    }

    #[test]
    fn eval_examples() {
        let origin = Node::from_ints(0, 0);
        assert_eq!(QPoly::zero(3).eval(&origin), qi(0));
        assert_eq!(poly(1, &[(0, 0, 1), (1, 0, 1), (0, 1, 2)]).eval(&Node::from_ints(1, 0)), qi(2));
        let circle = poly(2, &[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        assert_eq!(circle.eval(&Node::new(q(3, 5), q(4, 5))), qi(0));
    }

    #[test]
    fn expand_examples() {
        let empty = FactoredPoly::new(qi(1), vec![]).unwrap();
        assert_eq!(empty.expand(3).unwrap(), poly(3, &[(0, 0, 1)]));

        let f = FactoredPoly::new(qi(-1), vec![Factor::Line(line(1, 1, -1))]).unwrap();
        assert_eq!(f.expand(1).unwrap(), poly(1, &[(0, 0, 1), (1, 0, -1), (0, 1, -1)]));
        assert_eq!(f.expand(1).unwrap().to_string(), "1 - x - y");

        let circle = Conic::new([1, 0, 1, 0, 0, -1].map(qi)).unwrap();
        let f = FactoredPoly::new(qi(-1), vec![Factor::Conic(circle)]).unwrap();
        assert_eq!(f.expand(2).unwrap(), poly(2, &[(0, 0, 1), (2, 0, -1), (0, 2, -1)]));
        assert_eq!(f.expand(1), Err(Error::DegreeOverflow { degree: 2, bound: 1 }));
    }

    #[test]
    fn normalize_examples() {
        let a = Node::from_ints(4, -2);
        assert_eq!(normalize_at(&poly(0, &[(0, 0, 2)]), &a).unwrap(), poly(0, &[(0, 0, 1)]));
        let p = poly(1, &[(1, 0, 1), (0, 1, 1), (0, 0, -1)]);
        let origin = Node::from_ints(0, 0);
        assert_eq!(
            normalize_at(&p, &origin).unwrap(),
            poly(1, &[(0, 0, 1), (1, 0, -1), (0, 1, -1)])
        );
        assert_eq!(
            normalize_at(&poly(1, &[(1, 0, 1)]), &origin),
            Err(Error::VanishingAtNode)
        );
        let f = FactoredPoly::new(qi(3), vec![Factor::Line(line(1, 1, -1))]).unwrap();
        let g = normalize_at(&f, &origin).unwrap();
        assert_eq!(g.scale(), &qi(-1));
    }

    #[test]
    fn dense_round_trip_uses_graded_lex() {
        let p = QPoly::from_dense(2, &[1, 2, 3, 4, 5, 6].map(qi)).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(1, 1)), qi(5));
        assert_eq!(p.to_dense(), [1, 2, 3, 4, 5, 6].map(qi).to_vec());
        assert!(QPoly::from_dense(2, &[qi(1)]).is_err());
    }

    fn node_strategy() -> impl Strategy<Value = Node> {
        ((-5i64..6, 1i64..4), (-5i64..6, 1i64..4)).prop_map(|((a, b), (c, d))| Node::new(q(a, b), q(c, d)))
    }

    fn factor_strategy() -> impl Strategy<Value = Factor> {
        prop_oneof![
            (-3i64..4, -3i64..4, -3i64..4)
                .prop_filter("line", |(a, b, _)| *a != 0 || *b != 0)
                .prop_map(|(a, b, c)| Factor::Line(line(a, b, c))),
            prop::array::uniform6(-3i64..4)
                .prop_filter("quadratic", |v| v[..3].iter().any(|c| *c != 0))
                .prop_map(|v| Factor::Conic(Conic::new(v.map(qi)).unwrap())),
        ]
    }

    proptest! {
        #[test]
        fn expand_agrees_with_factorwise_eval(
            scale in (1i64..5, 1i64..4),
            factors in prop::collection::vec(factor_strategy(), 0..4),
            p in node_strategy(),
        ) {
            let f = FactoredPoly::new(q(scale.0, scale.1), factors).unwrap();
            let n = f.degree();
            let product = f.factors().iter().fold(f.scale().clone(), |acc, g| acc * g.eval(&p));
            prop_assert_eq!(f.expand(n).unwrap().eval(&p), product);
        }

        #[test]
        fn normalize_hits_one_and_keeps_zeros(
            coeffs in prop::collection::vec(-3i64..4, 6),
            a in node_strategy(),
            b in node_strategy(),
        ) {
            let p = QPoly::from_dense(2, &coeffs.iter().map(|&c| qi(c)).collect::<Vec<_>>()).unwrap();
            prop_assume!(!p.eval(&a).is_zero());
            let r = normalize_at(&p, &a).unwrap();
            prop_assert_eq!(r.eval(&a), qi(1));
            prop_assert_eq!(r.eval(&b).is_zero(), p.eval(&b).is_zero());
        }
    }
}
