//! JSON documents read and written by the command-line tool.
//!
//! Rationals travel as strings in lowest terms (`"-3/5"`, or `"2"` for
//! integers); node coordinates may also be plain JSON integers.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::explorer::{Certificate, Witness};
use crate::geometry::{Conic, Line, Node};
use crate::independence::NodeSet;
use crate::poly::{Factor, FactoredPoly, Monomial};
use crate::scalar::parse_rational;
use crate::synthesis::CoverMode;
use crate::{QPoly, Rational};

#[derive(Debug)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DocError {}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError(format!("malformed JSON: {e}"))
    }
}

impl From<crate::Error> for DocError {
    fn from(e: crate::Error) -> Self {
        DocError(e.to_string())
    }
}

/// A coordinate or value: a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    pub fn to_rational(&self) -> Result<Rational, DocError> {
        match self {
            Coord::Int(v) => Ok(Rational::from_integer((*v).into())),
            Coord::Text(s) => {
                parse_rational(s).ok_or_else(|| DocError(format!("not a rational: {s:?}")))
            }
        }
    }
}

impl From<&Rational> for Coord {
    fn from(r: &Rational) -> Self {
        match (r.is_integer(), r.to_integer().to_i64()) {
            (true, Some(v)) => Coord::Int(v),
            _ => Coord::Text(r.to_string()),
        }
    }
}

pub fn rational_text(r: &Rational) -> String {
    r.to_string()
}

fn parse_text(s: &str) -> Result<Rational, DocError> {
    parse_rational(s).ok_or_else(|| DocError(format!("not a rational: {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSetDocument {
    pub n: usize,
    pub nodes: Vec<[Coord; 2]>,
}

impl NodeSetDocument {
    pub fn from_node_set(n: usize, x: &NodeSet) -> Self {
        NodeSetDocument {
            n,
            nodes: x
                .nodes()
                .iter()
                .map(|p| [Coord::from(&p.x), Coord::from(&p.y)])
                .collect(),
        }
    }

    pub fn to_node_set(&self) -> Result<NodeSet, DocError> {
        let nodes = self
            .nodes
            .iter()
            .map(|[x, y]| Ok(Node::new(x.to_rational()?, y.to_rational()?)))
            .collect::<Result<Vec<_>, DocError>>()?;
        Ok(NodeSet::new(nodes)?)
    }

    pub fn parse(text: &str) -> Result<(usize, NodeSet), DocError> {
        let doc: NodeSetDocument = serde_json::from_str(text)?;
        let x = doc.to_node_set()?;
        Ok((doc.n, x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesDocument {
    pub values: Vec<Coord>,
}

impl ValuesDocument {
    pub fn parse(text: &str) -> Result<Vec<Rational>, DocError> {
        let doc: ValuesDocument = serde_json::from_str(text)?;
        doc.values.iter().map(Coord::to_rational).collect()
    }
}

/// Graded-lex `[i, j, "coefficient"]` triples of the nonzero terms.
pub type CoefficientList = Vec<(u32, u32, String)>;

pub fn poly_to_doc(p: &QPoly) -> CoefficientList {
    p.terms()
        .map(|(m, c)| (m.x, m.y, rational_text(c)))
        .collect()
}

pub fn poly_from_doc(n: usize, terms: &CoefficientList) -> Result<QPoly, DocError> {
    let terms = terms
        .iter()
        .map(|(i, j, c)| Ok((Monomial::new(*i, *j), parse_text(c)?)))
        .collect::<Result<Vec<_>, DocError>>()?;
    Ok(QPoly::from_terms(n, terms)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDocument {
    pub kind: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactoredDocument {
    pub scale: String,
    pub factors: Vec<FactorDocument>,
}

impl FactoredDocument {
    pub fn from_factored(f: &FactoredPoly) -> Self {
        FactoredDocument {
            scale: rational_text(f.scale()),
            factors: f
                .factors()
                .iter()
                .map(|g| match g {
                    Factor::Line(l) => FactorDocument {
                        kind: "line".into(),
                        coeffs: l.coeffs().iter().map(rational_text).collect(),
                    },
                    Factor::Conic(c) => FactorDocument {
                        kind: "conic".into(),
                        coeffs: c.coeffs().iter().map(rational_text).collect(),
                    },
                })
                .collect(),
        }
    }

    pub fn to_factored(&self) -> Result<FactoredPoly, DocError> {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let c = f
                    .coeffs
                    .iter()
                    .map(|s| parse_text(s))
                    .collect::<Result<Vec<_>, _>>()?;
                match (f.kind.as_str(), c.len()) {
                    ("line", 3) => Ok(Factor::Line(Line::new(
                        c[0].clone(),
                        c[1].clone(),
                        c[2].clone(),
                    )?)),
                    ("conic", 6) => Ok(Factor::Conic(Conic::new(std::array::from_fn(|i| {
                        c[i].clone()
                    }))?)),
                    (kind, len) => Err(DocError(format!(
                        "bad factor: kind {kind:?} with {len} coefficients"
                    ))),
                }
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        Ok(FactoredPoly::new(parse_text(&self.scale)?, factors)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub rank: usize,
    pub search_space: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub mode: String,
    pub n: usize,
    pub node_index: usize,
    pub nodeset: NodeSetDocument,
    pub certificate: CertificateDocument,
}

pub fn parse_mode(s: &str) -> Result<CoverMode, DocError> {
    match s {
        "lines" => Ok(CoverMode::Lines),
        "lines-conics" => Ok(CoverMode::LinesAndConics),
        other => Err(DocError(format!("unknown mode {other:?}"))),
    }
}

impl WitnessDocument {
    pub fn from_witness(w: &Witness) -> Self {
        WitnessDocument {
            mode: w.mode.as_str().into(),
            n: w.n,
            node_index: w.node_index,
            nodeset: NodeSetDocument::from_node_set(w.n, &w.x),
            certificate: CertificateDocument {
                rank: w.certificate.rank,
                search_space: w.certificate.search_space,
            },
        }
    }

    pub fn to_witness(&self) -> Result<Witness, DocError> {
        if self.nodeset.n != self.n {
            return Err(DocError(format!(
                "witness degree {} disagrees with node-set degree {}",
                self.n, self.nodeset.n
            )));
        }
        Ok(Witness {
            x: self.nodeset.to_node_set()?,
            n: self.n,
            node_index: self.node_index,
            mode: parse_mode(&self.mode)?,
            certificate: Certificate {
                rank: self.certificate.rank,
                search_space: self.certificate.search_space,
            },
        })
    }

    pub fn parse(text: &str) -> Result<Witness, DocError> {
        serde_json::from_str::<WitnessDocument>(text)?.to_witness()
    }
}
