//! Line-delimited record formats shared by the batch commands.
//!
//! One JSON object per line; numbers are written at full round-trip
//! precision, so piping `project` output back into `verify` recomputes the
//! same residuals bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::point::AmbientPoint;

/// One instance per line: block sizes plus the point, with optional metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub p: usize,
    pub q: usize,
    pub z: Vec<f64>,
    pub w: Vec<f64>,
    /// 1-based case index the generator expects this point to classify as.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_case: Option<u8>,
}

impl InstanceRecord {
    /// Validates the declared block sizes against the arrays and builds the point.
    pub fn point(&self) -> Result<AmbientPoint, Error> {
        if self.z.len() != self.p {
            return Err(Error::DimensionMismatch {
                what: "z array",
                expected: self.p,
                got: self.z.len(),
            });
        }
        if self.w.len() != self.q {
            return Err(Error::DimensionMismatch {
                what: "w array",
                expected: self.q,
                got: self.w.len(),
            });
        }
        AmbientPoint::new(self.z.clone(), self.w.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockPair {
    pub z: Vec<f64>,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CertResiduals {
    pub decomposition: f64,
    pub orthogonality: f64,
    pub primal_feasibility: f64,
    pub dual_feasibility: f64,
}

impl CertResiduals {
    pub fn max(&self) -> f64 {
        self.decomposition
            .max(self.orthogonality)
            .max(self.primal_feasibility)
            .max(self.dual_feasibility)
    }
}

/// Output of `project`: the input point plus both projections and diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub p: usize,
    pub q: usize,
    pub z: Vec<f64>,
    pub w: Vec<f64>,
    pub case: u8,
    pub lambda: f64,
    #[serde(rename = "PL")]
    pub proj_l: BlockPair,
    #[serde(rename = "PM_neg")]
    pub proj_m_neg: BlockPair,
    pub iters: usize,
    pub psi_residual: f64,
    pub cert: CertResiduals,
    pub status: String,
}

/// Emitted in place of a result when a line cannot be processed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub line: usize,
    pub status: String,
    pub error: String,
}

/// One timing row per instance and method from `bench`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRow {
    pub id: String,
    pub method: String,
    pub status: String,
    pub iterations: usize,
    pub lambda: f64,
    pub psi_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_max_residual: Option<f64>,
    pub wall_time_ns: u64,
}

/// Failure line from `verify`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyFailure {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub line: usize,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cert: Option<CertResiduals>,
}
