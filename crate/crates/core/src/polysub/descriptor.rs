//! JSON forms of algebras, tuples and certificates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{MembershipCertificate, SystemStats, Tuple, TupleAlgebra};
use super::field::{Field, PrimeField};
use super::poly::{Mono, MultiPoly};
use super::PolysubError;
use crate::plring::RatLit;

/// `"Q"` or `"F<p>"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(PrimeField),
}

impl FieldChoice {
    pub fn parse(s: &str) -> Result<Self, PolysubError> {
        let bad = || PolysubError::BadField(s.to_string());
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(FieldChoice::Rationals);
        }
        let p: u64 =
            t.strip_prefix('F').or_else(|| t.strip_prefix("GF")).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        PrimeField::new(p).map(FieldChoice::Prime).ok_or_else(bad)
    }
}

/// Terms as `[[ex, ey, ez], coeff]`.
pub type PolyLiteral = Vec<([u32; 3], RatLit)>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorLiteral {
    pub name: String,
    pub components: Vec<PolyLiteral>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub field: String,
    pub factors: usize,
    pub generators: Vec<GeneratorLiteral>,
}

pub fn parse_poly<F: Field>(field: &F, lit: &PolyLiteral) -> Result<MultiPoly<F::E>, PolysubError> {
    let mut terms = Vec::new();
    for (e, c) in lit {
        let v = match c {
            RatLit::Int(n) => field.from_i64(*n),
            RatLit::Str(s) => field.parse(s).ok_or_else(|| PolysubError::Parse(format!("bad coefficient {s:?}")))?,
        };
        terms.push((Mono(*e), v));
    }
    Ok(MultiPoly::from_terms(field, terms))
}

pub fn parse_tuple<F: Field>(field: &F, lits: &[PolyLiteral]) -> Result<Tuple<F::E>, PolysubError> {
    lits.iter().map(|l| parse_poly(field, l)).collect()
}

pub fn poly_literal<F: Field>(field: &F, p: &MultiPoly<F::E>) -> PolyLiteral {
    p.terms().map(|(m, c)| (m.0, RatLit::Str(field.render(c)))).collect()
}

impl AlgebraDescriptor {
    pub fn field_choice(&self) -> Result<FieldChoice, PolysubError> {
        FieldChoice::parse(&self.field)
    }

    pub fn build<F: Field>(&self, field: F) -> Result<TupleAlgebra<F>, PolysubError> {
        let gens = self
            .generators
            .iter()
            .map(|g| Ok((g.name.clone(), parse_tuple(&field, &g.components)?)))
            .collect::<Result<Vec<_>, PolysubError>>()?;
        TupleAlgebra::new(field, self.factors, gens)
    }

    pub fn from_algebra<F: Field>(alg: &TupleAlgebra<F>) -> Self {
        AlgebraDescriptor {
            field: alg.field.name(),
            factors: alg.factors(),
            generators: alg
                .names()
                .iter()
                .zip(alg.generators())
                .map(|(n, g)| GeneratorLiteral {
                    name: n.clone(),
                    components: g.iter().map(|p| poly_literal(&alg.field, p)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermReport {
    /// Generator exponents, omitting zeros; empty for the unit.
    pub generators: BTreeMap<String, u32>,
    pub base: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub member: bool,
    pub stats: SystemStats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<TermReport>,
}

impl CertificateReport {
    pub fn new<F: Field>(alg: &TupleAlgebra<F>, cert: &MembershipCertificate<F::E>) -> Self {
        let terms = match cert {
            MembershipCertificate::Refusal { .. } => Vec::new(),
            MembershipCertificate::Member { terms, .. } => terms
                .iter()
                .map(|t| TermReport {
                    generators: alg
                        .names()
                        .iter()
                        .zip(&t.gens)
                        .filter(|(_, e)| **e > 0)
                        .map(|(n, e)| (n.clone(), *e))
                        .collect(),
                    base: format!("{:?}", t.base),
                    coeff: alg.field.render(&t.coeff),
                })
                .collect(),
        };
        CertificateReport { member: cert.is_member(), stats: cert.stats().clone(), terms }
    }
}
