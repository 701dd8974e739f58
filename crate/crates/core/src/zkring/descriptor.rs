//! JSON ring descriptors: `{"width": k, "moduli": [..], "constraints": [[i, j, n], ..]}`
//! with 1-based indices, or `{"moduli": [..], "basis": [[..], ..]}` for rings
//! given by a lattice.

use serde::{Deserialize, Serialize};

use super::ring::{CongruenceRing, ZkError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    pub moduli: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
}

impl RingDescriptor {
    pub fn build(&self) -> Result<CongruenceRing, ZkError> {
        if let Some(w) = self.width {
            if w != self.moduli.len() {
                return Err(ZkError::LengthMismatch { expected: w, got: self.moduli.len() });
            }
        }
        if let Some(basis) = &self.basis {
            return CongruenceRing::from_lattice(&self.moduli, basis.clone());
        }
        let width = self.moduli.len();
        let mut cons = Vec::new();
        for &[i, j, n] in &self.constraints {
            for index in [i, j] {
                if index < 1 || index as usize > width {
                    return Err(ZkError::IndexOutOfRange { index: index.max(0) as usize, width });
                }
            }
            cons.push((i as usize - 1, j as usize - 1, n));
        }
        CongruenceRing::new(&self.moduli, &cons)
    }
}

impl CongruenceRing {
    /// Canonical descriptor: sorted constraints, or the Hermite basis.
    pub fn descriptor(&self) -> RingDescriptor {
        match self.constraints() {
            Some(cons) => RingDescriptor {
                width: Some(self.original_width()),
                moduli: self.original_moduli().to_vec(),
                constraints: cons.iter().map(|c| [c.i as i64 + 1, c.j as i64 + 1, c.n]).collect(),
                basis: None,
            },
            None => RingDescriptor {
                width: Some(self.width()),
                moduli: self.moduli(),
                constraints: Vec::new(),
                basis: Some(self.basis()),
            },
        }
    }
}
