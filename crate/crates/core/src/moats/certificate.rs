//! JSON certificates for moat packings.
//!
//! `graph_sha256` is the SHA-256 of the unrefined triangulation written as a
//! single-graph planar_code file (header included). When `refined` is true
//! the moat cores use the vertex ids of its refinement.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::packing::{verify_packing, verify_unrefined, Moat, MoatPacking, PackingError, PackingStats};
use crate::graph::{write_planar_code, Triangulation};
use crate::refine::refine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateMoat {
    pub core: Vec<usize>,
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph_sha256: String,
    pub refined: bool,
    pub moats: Vec<CertificateMoat>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate is for graph {expected}, not {actual}")]
    HashMismatch { expected: String, actual: String },
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Packing(#[from] PackingError),
}

pub fn graph_sha256(t: &Triangulation) -> String {
    let bytes = write_planar_code([t.graph()]).expect("triangulation fits planar_code");
    hex::encode(Sha256::digest(bytes))
}

impl Certificate {
    pub fn new(t: &Triangulation, refined: bool, packing: &MoatPacking) -> Certificate {
        Certificate {
            graph_sha256: graph_sha256(t),
            refined,
            moats: packing
                .moats
                .iter()
                .map(|m| CertificateMoat { core: m.core.clone(), width: m.width })
                .collect(),
        }
    }

    pub fn packing(&self) -> MoatPacking {
        MoatPacking {
            moats: self.moats.iter().map(|m| Moat { core: m.core.clone(), width: m.width }).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    /// Checks the hash and the packing; returns the lower bound on the
    /// T-join number of `t`.
    pub fn verify(&self, t: &Triangulation) -> Result<PackingStats, CertificateError> {
        let actual = graph_sha256(t);
        if !actual.eq_ignore_ascii_case(&self.graph_sha256) {
            return Err(CertificateError::HashMismatch { expected: self.graph_sha256.clone(), actual });
        }
        let packing = self.packing();
        let stats = if self.refined {
            verify_packing(&refine(t), &packing)?
        } else {
            verify_unrefined(t, &packing)?
        };
        Ok(stats)
    }

    pub fn value(&self, t: &Triangulation) -> Result<Ratio<i64>, CertificateError> {
        Ok(self.verify(t)?.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldberg::icosahedron;

    fn ico() -> Triangulation {
        Triangulation::with_terminals(icosahedron(), (0..12).collect()).unwrap()
    }

    fn disks(r: usize) -> MoatPacking {
        MoatPacking { moats: (0..12).map(|u| Moat::disk(u, r)).collect() }
    }

    #[test]
    fn json_roundtrip_and_value() {
        let t = ico();
        let cert = Certificate::new(&t, true, &disks(1));
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.value(&t).unwrap(), Ratio::from_integer(6));
        assert_eq!(cert.graph_sha256.len(), 64);
    }

    #[test]
    fn unrefined_disks_overlap_on_the_icosahedron() {
        let t = ico();
        let cert = Certificate::new(&t, false, &disks(1));
        assert!(matches!(
            cert.verify(&t),
            Err(CertificateError::Packing(PackingError::OverlappingMoats { .. }))
        ));
        let one = Certificate::new(&t, false, &MoatPacking { moats: vec![Moat::disk(0, 1)] });
        assert_eq!(one.value(&t).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn wrong_graph_is_rejected() {
        let t = ico();
        let mut cert = Certificate::new(&t, true, &disks(1));
        cert.graph_sha256 = "00".repeat(32);
        assert!(matches!(cert.verify(&t), Err(CertificateError::HashMismatch { .. })));
        assert!(matches!(Certificate::from_json("{"), Err(CertificateError::Json(_))));
    }
}
