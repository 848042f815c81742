//! Lagrange interpolation over `n`-independent node sets.

use crate::error::{Error, Result};
use crate::independence::{self, NodeSet};
use crate::poly::{BivariatePoly, FactoredPoly};
use crate::{QPoly, Rational};

/// Data values aligned with the node order of a [`NodeSet`].
pub type DataVector = Vec<Rational>;

/// `Σ c_i · p_i`, where `p_i` is the fundamental polynomial of node `i`.
///
/// With `basis` absent the fundamentals come from the rank oracle, whose
/// free coefficients are zero, so the result is reproducible even when
/// fundamentals are not unique.
pub fn lagrange(
    x: &NodeSet,
    c: &[Rational],
    n: usize,
    basis: Option<&[FactoredPoly]>,
) -> Result<QPoly> {
    if c.len() != x.len() {
        return Err(Error::InvalidInput(format!(
            "{} data values for {} nodes",
            c.len(),
            x.len()
        )));
    }
    let fundamentals: Vec<QPoly> = match basis {
        Some(basis) => {
            if basis.len() != x.len() {
                return Err(Error::InvalidInput(format!(
                    "{} basis polynomials for {} nodes",
                    basis.len(),
                    x.len()
                )));
            }
            basis
                .iter()
                .map(|f| f.expand(n))
                .collect::<Result<_>>()?
        }
        None => {
            if !independence::is_n_independent(x, n) {
                return Err(Error::NotSolvable(format!(
                    "the node set is {n}-dependent"
                )));
            }
            x.nodes()
                .iter()
                .map(|a| {
                    independence::fundamental(a, x, n)?
                        .ok_or_else(|| Error::NotSolvable(format!("node {a} has no fundamental")))
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(fundamentals
        .iter()
        .zip(c)
        .fold(BivariatePoly::zero(n), |acc, (p, ci)| acc.add(&p.scale(ci))))
}

/// True iff `p` takes the value `c_i` at node `i` for every `i`.
pub fn verify_interpolant(p: &QPoly, x: &NodeSet, c: &[Rational]) -> bool {
    c.len() == x.len() && x.nodes().iter().zip(c).all(|(a, ci)| p.eval(a) == *ci)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Node;
    use crate::scalar::qi;
    use crate::synthesis::synth_lines;

    fn triangle() -> NodeSet {
        NodeSet::new(vec![Node::from_ints(0, 0), Node::from_ints(1, 0), Node::from_ints(0, 1)]).unwrap()
    }

    #[test]
    fn lagrange_examples() {
        let x = triangle();
        assert!(lagrange(&x, &[qi(0), qi(0), qi(0)], 1, None).unwrap().is_zero());
        let p = lagrange(&x, &[qi(1), qi(2), qi(3)], 1, None).unwrap();
        assert_eq!(p.to_string(), "1 + x + 2*y");
        let p = lagrange(&x, &[qi(1), qi(0), qi(0)], 1, None).unwrap();
        assert_eq!(p.to_string(), "1 - x - y");
    }

    #[test]
    fn factored_basis_gives_the_same_interpolant() {
        let x = triangle();
        let basis: Vec<FactoredPoly> = x
            .nodes()
            .iter()
            .map(|a| synth_lines(a, &x, 1).unwrap().unwrap())
            .collect();
        let c = [qi(1), qi(2), qi(3)];
        assert_eq!(
            lagrange(&x, &c, 1, Some(&basis)).unwrap(),
            lagrange(&x, &c, 1, None).unwrap()
        );
        assert!(lagrange(&x, &c, 1, Some(&basis[..2])).is_err());
    }

    #[test]
    fn dependent_sets_are_rejected() {
        let x = NodeSet::new(vec![Node::from_ints(0, 0), Node::from_ints(1, 1), Node::from_ints(2, 2)]).unwrap();
        assert!(matches!(
            lagrange(&x, &[qi(1), qi(0), qi(0)], 1, None),
            Err(Error::NotSolvable(_))
        ));
    }

    #[test]
    fn verify_examples() {
        let x = triangle();
        assert!(verify_interpolant(&QPoly::zero(1), &x, &[qi(0), qi(0), qi(0)]));
        let p = lagrange(&x, &[qi(1), qi(2), qi(3)], 1, None).unwrap();
        assert!(verify_interpolant(&p, &x, &[qi(1), qi(2), qi(3)]));
        assert!(!verify_interpolant(&p, &x, &[qi(0), qi(2), qi(3)]));
    }
}
