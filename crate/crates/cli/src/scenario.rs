//! Scenario files: named objects plus a list of requests with expectations.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use rrorder::plring::{FuncLiteral, PwPolyFunc, RatLit};
use rrorder::polysub::{AlgebraDescriptor, PolyLiteral};
use rrorder::seqring::EvPerSeq;
use rrorder::zkring::{CongruenceRing, RingDescriptor};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub rings: BTreeMap<String, RingDescriptor>,
    #[serde(default)]
    pub functions: BTreeMap<String, FuncLiteral>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDescriptor>,
    pub requests: Vec<Request>,
}

#[derive(Debug, Deserialize)]
pub struct Request {
    #[serde(flatten)]
    pub op: Op,
    /// Dotted result paths and the values they must hold.
    #[serde(default)]
    pub expect: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Op {
    Classify {
        ring: String,
    },
    PierceStalks {
        ring: String,
    },
    Idempotents {
        ring: String,
    },
    Meet {
        ring: String,
        a: Vec<i64>,
        b: Vec<i64>,
    },
    Sup {
        ring: String,
        a: Vec<i64>,
        b: Vec<i64>,
    },
    Good {
        ring: String,
        bound: Option<u64>,
    },
    Hull {
        ring: String,
    },
    Equalizer {
        ring: String,
        target: String,
        phi: Vec<usize>,
        psi: Vec<usize>,
    },
    HomCheck {
        source: String,
        target: String,
        assign: Vec<usize>,
    },
    HomMeets {
        source: String,
        target: String,
        assign: Vec<usize>,
        bound: Option<u64>,
        #[serde(default)]
        extra: Vec<(Vec<i64>, Vec<i64>)>,
    },
    Lift {
        source: String,
        target: String,
        assign: Vec<usize>,
        targets: Vec<Vec<i64>>,
        preimages: Option<Vec<Vec<i64>>>,
        /// Shift every canonical preimage by a seeded random kernel element.
        #[serde(default)]
        adversarial: bool,
    },
    SeqChain {
        p: i64,
        r: EvPerSeq,
        s: EvPerSeq,
        n: usize,
        max_description: usize,
    },
    PlMeet {
        f: String,
        g: String,
    },
    PlRestriction {
        f: String,
        g: String,
        lo: RatLit,
        hi: RatLit,
    },
    PlLift {
        functions: Vec<String>,
        lo: RatLit,
        hi: RatLit,
        extensions: Option<Vec<String>>,
    },
    Goldie4 {
        field: String,
        degree: Option<u32>,
        coeff_degree: Option<u32>,
        reduce_z: Option<bool>,
        cap: Option<usize>,
    },
    Membership {
        algebra: String,
        target: Vec<PolyLiteral>,
        degree: Option<u32>,
        coeff_degree: Option<u32>,
        reduce_z: Option<bool>,
        cap: Option<usize>,
    },
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Classify { .. } => "classify",
            Op::PierceStalks { .. } => "pierce_stalks",
            Op::Idempotents { .. } => "idempotents",
            Op::Meet { .. } => "meet",
            Op::Sup { .. } => "sup",
            Op::Good { .. } => "good",
            Op::Hull { .. } => "hull",
            Op::Equalizer { .. } => "equalizer",
            Op::HomCheck { .. } => "hom_check",
            Op::HomMeets { .. } => "hom_meets",
            Op::Lift { .. } => "lift",
            Op::SeqChain { .. } => "seq_chain",
            Op::PlMeet { .. } => "pl_meet",
            Op::PlRestriction { .. } => "pl_restriction",
            Op::PlLift { .. } => "pl_lift",
            Op::Goldie4 { .. } => "goldie4",
            Op::Membership { .. } => "membership",
        }
    }

    fn ring_refs(&self) -> Vec<&str> {
        match self {
            Op::Classify { ring }
            | Op::PierceStalks { ring }
            | Op::Idempotents { ring }
            | Op::Meet { ring, .. }
            | Op::Sup { ring, .. }
            | Op::Good { ring, .. }
            | Op::Hull { ring } => vec![ring],
            Op::Equalizer { ring, target, .. } => vec![ring, target],
            Op::HomCheck { source, target, .. }
            | Op::HomMeets { source, target, .. }
            | Op::Lift { source, target, .. } => {
                vec![source, target]
            }
            _ => Vec::new(),
        }
    }

    fn function_refs(&self) -> Vec<&str> {
        match self {
            Op::PlMeet { f, g } | Op::PlRestriction { f, g, .. } => vec![f, g],
            Op::PlLift { functions, extensions, .. } => {
                functions.iter().chain(extensions.iter().flatten()).map(String::as_str).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// A scenario with every named object built.
pub struct Resolved {
    pub scenario: Scenario,
    pub rings: BTreeMap<String, CongruenceRing>,
    pub functions: BTreeMap<String, PwPolyFunc>,
}

pub fn parse(text: &str) -> Result<Resolved, String> {
    let scenario: Scenario = serde_json::from_str(text).map_err(|e| format!("scenario does not parse: {e}"))?;
    let mut rings = BTreeMap::new();
    for (name, d) in &scenario.rings {
        let r = d.build().map_err(|e| format!("ring {name}: {e}"))?;
        rings.insert(name.clone(), r);
    }
    let mut functions = BTreeMap::new();
    for (name, lit) in &scenario.functions {
        let f = PwPolyFunc::from_literal(lit).map_err(|e| format!("function {name}: {e}"))?;
        functions.insert(name.clone(), f);
    }
    for (i, req) in scenario.requests.iter().enumerate() {
        for r in req.op.ring_refs() {
            if !rings.contains_key(r) {
                return Err(format!("request {}: unknown ring {r:?}", i + 1));
            }
        }
        for f in req.op.function_refs() {
            if !functions.contains_key(f) {
                return Err(format!("request {}: unknown function {f:?}", i + 1));
            }
        }
        match &req.op {
            Op::Membership { algebra, .. } if !scenario.algebras.contains_key(algebra) => {
                return Err(format!("request {}: unknown algebra {algebra:?}", i + 1));
            }
            Op::Good { bound: Some(0), .. } | Op::HomMeets { bound: Some(0), .. } => {
                return Err(format!("request {}: bound must be positive", i + 1));
            }
            _ => {}
        }
    }
    Ok(Resolved { scenario, rings, functions })
}
