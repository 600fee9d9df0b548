//! JSON document shapes. Scalars serialize as canonical `p/q+r/s*i` strings,
//! rationals as `p/q`, so reports are exact and byte-stable.

use manin_core::bd::{Chain, PhiMap, Witness, WitnessOutcome};
use manin_core::manin::VerificationReport;
use manin_core::scalar::Scalar;
use manin_core::subspace::Subspace;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: "manin".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Report<I: Serialize, R: Serialize> {
    pub tool: ToolInfo,
    pub command: String,
    pub input: I,
    pub results: Vec<R>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PhiDoc {
    pub pi1: Vec<usize>,
    pub pi2: Vec<usize>,
    /// Sorted (source, image) pairs.
    pub map: Vec<(usize, usize)>,
}

impl PhiDoc {
    pub fn of(phi: &PhiMap) -> Self {
        let mut map: Vec<(usize, usize)> = phi.map.iter().map(|(&k, &v)| (k, v)).collect();
        map.sort_unstable();
        PhiDoc {
            pi1: phi.pi1.clone(),
            pi2: phi.pi2.clone(),
            map,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ChainDoc {
    pub roots: Vec<usize>,
}

impl ChainDoc {
    pub fn of(c: &Chain) -> Self {
        ChainDoc {
            roots: c.roots.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct VerificationDoc {
    pub pass: bool,
    pub axioms: Vec<(String, bool)>,
    pub failures: Vec<String>,
}

impl VerificationDoc {
    pub fn of(r: &VerificationReport) -> Self {
        VerificationDoc {
            pass: r.pass(),
            axioms: r
                .axioms()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            failures: r.failures.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WitnessDoc {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_exponents: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    /// NotFoundInSpace is relative to the bounded search space only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl WitnessDoc {
    pub fn of(w: &WitnessOutcome) -> Self {
        match w {
            WitnessOutcome::Found(Witness {
                torus_exponents,
                word,
            }) => WitnessDoc {
                found: true,
                torus_exponents: Some(torus_exponents.clone()),
                word: Some(word.clone()),
                caveat: None,
            },
            WitnessOutcome::NotFoundInSpace => WitnessDoc {
                found: false,
                torus_exponents: None,
                word: None,
                caveat: Some(
                    "not found in the bounded search space; absence is not a proof of non-membership"
                        .into(),
                ),
            },
        }
    }
}

/// The triple document: enough to rebuild the ambient double and re-verify.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TripleDoc {
    pub double_variant: String,
    pub field: String,
    pub family: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaDoc>,
    pub g_basis: Vec<Vec<String>>,
    pub w_basis: Vec<Vec<String>>,
    pub form_scale: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SigmaDoc {
    pub epsilon: u8,
    pub s: Vec<usize>,
    pub chi: Vec<i8>,
}

pub fn basis_doc(v: &Subspace) -> Vec<Vec<String>> {
    v.basis
        .iter()
        .map(|row| row.iter().map(Scalar::to_canonical_string).collect())
        .collect()
}

pub fn parse_basis(rows: &[Vec<String>]) -> Result<Vec<Vec<Scalar>>, String> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|s| Scalar::parse(s).map_err(|e| e.to_string()))
                .collect()
        })
        .collect()
}
