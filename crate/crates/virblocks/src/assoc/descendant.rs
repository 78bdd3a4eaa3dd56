//! Associativity with descendant insertions, reduced to the highest-weight
//! blocks in each regime.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalars::RatFunc;
use crate::virasoro::{h_weight, matrix_element_reduce, nested_reduce, Partition};
use crate::{Error, Result};

use super::{run_check, sixj_values, AssocReport, CheckParams, Labels, Reduced};

/// Longest descendant data accepted by the check, counted in generators.
pub const MAX_PBW_LENGTH: usize = 2;

/// Where a descendant word sits in ⟨w', Y(w_2, x_2)Y(w_1, x_1)w_0⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Bra,
    W2,
    W1,
    W0,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::Bra, Slot::W2, Slot::W1, Slot::W0];

    pub fn name(self) -> &'static str {
        match self {
            Slot::Bra => "bra",
            Slot::W2 => "w2",
            Slot::W1 => "w1",
            Slot::W0 => "w0",
        }
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bra" | "out" => Ok(Slot::Bra),
            "w2" => Ok(Slot::W2),
            "w1" => Ok(Slot::W1),
            "w0" | "ket" | "in" => Ok(Slot::W0),
            other => Err(Error::Parse(format!("unknown slot '{other}' (bra, w2, w1, w0)"))),
        }
    }
}

/// A PBW word L_{−n_k}⋯L_{−n_1} placed in one slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Insertion {
    pub slot: Slot,
    pub word: Partition,
}

impl Insertion {
    pub fn new(slot: Slot, parts: &[u32]) -> Self {
        Insertion { slot, word: Partition::new(parts.to_vec()) }
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.slot.name(), parts.join(","))
    }
}

/// `slot:n1,n2,…`, e.g. `bra:2` or `w0:1,1`; an empty word is allowed.
impl FromStr for Insertion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (slot, word) = s.split_once(':').ok_or_else(|| Error::Parse(format!("insertion '{s}' needs the form slot:partition")))?;
        let mut parts = Vec::new();
        for t in word.split([',', '.', ' ']).filter(|t| !t.is_empty()) {
            let n: u32 = t.parse().map_err(|_| Error::Parse(format!("bad part '{t}' in '{s}'")))?;
            if n == 0 {
                return Err(Error::Parse(format!("parts must be positive in '{s}'")));
            }
            parts.push(n);
        }
        Ok(Insertion { slot: slot.parse()?, word: Partition::new(parts) })
    }
}

fn words(insertions: &[Insertion]) -> Result<[Partition; 4]> {
    let mut out: [Partition; 4] = Default::default();
    let mut seen = [false; 4];
    let mut len = 0;
    for ins in insertions {
        let i = ins.slot as usize;
        if seen[i] {
            return Err(Error::DomainViolation(format!("slot {} given twice", ins.slot.name())));
        }
        seen[i] = true;
        len += ins.word.len();
        out[i] = ins.word.clone();
    }
    if len > MAX_PBW_LENGTH {
        return Err(Error::DomainViolation(format!("total PBW length {len} exceeds {MAX_PBW_LENGTH}")));
    }
    Ok(out)
}

/// Regime A and regime B with the same descendant data, each reduced to an
/// operator on its highest-weight series, compared as in `assoc_check`.
pub fn descendant_assoc_check(labels: Labels, sigma: u32, insertions: &[Insertion], params: &CheckParams) -> Result<AssocReport> {
    let [bra, w2, w1, w0] = words(insertions)?;
    let hs: Vec<RatFunc> = labels.iter().map(|&l| h_weight(l)).collect();
    let op_a = matrix_element_reduce(&bra, &[w1.clone(), w2.clone()], &w0, &hs)?;
    let op_b = nested_reduce(&bra, &w2, &w1, &w0, &hs)?;
    let weights = sixj_values(labels, sigma, params.kappa0)?;
    let names = insertions.iter().filter(|i| !i.word.is_empty()).map(|i| i.to_string()).collect();
    run_check(labels, sigma, params, &weights, Some(Reduced { a: &op_a, b: &op_b, names }))
}
