//! The extended second order cone, its dual, and the decomposition
//! certificate that ties a projection pair together.
//!
//! The two cones over `R^p x R^q` are
//!
//! ```text
//! L = { (x, u) : x_i >= ||u|| for every i }
//! M = { (x, u) : x >= 0 and <x, e> >= ||u|| }
//! ```
//!
//! and they are mutually dual; at `p = 1` both collapse to the ordinary
//! second order cone. Membership tests report a signed margin so callers can
//! see the distance to the boundary, not just a verdict.

use crate::error::Error;
use crate::point::{stable_norm, AmbientPoint};

/// Outcome of a membership test: verdict at the requested relative tolerance
/// plus the signed worst-case margin (negative means outside).
#[derive(Debug, Clone, Copy)]
pub struct ConeMembership {
    pub inside: bool,
    pub margin: f64,
}

/// Membership of `a` in `L`. The margin is `min_i z_i - ||w||` and the
/// verdict compares it against `-tol * (1 + ||a||)`.
pub fn in_l(a: &AmbientPoint, tol: f64) -> ConeMembership {
    let min_z = a.z().iter().copied().fold(f64::INFINITY, f64::min);
    let margin = min_z - a.w_norm();
    ConeMembership {
        inside: margin >= -tol * (1.0 + a.norm()),
        margin,
    }
}

/// Membership of `a` in `M`. The margin is the worse of `min_i z_i` and
/// `<z, e> - ||w||`, against the same relative rule as [`in_l`].
pub fn in_m(a: &AmbientPoint, tol: f64) -> ConeMembership {
    let min_z = a.z().iter().copied().fold(f64::INFINITY, f64::min);
    let margin = min_z.min(a.z().iter().sum::<f64>() - a.w_norm());
    ConeMembership {
        inside: margin >= -tol * (1.0 + a.norm()),
        margin,
    }
}

/// A posteriori evidence that `primal = P_L(original)` and
/// `dual = P_M(-original)`.
///
/// If `original = primal - dual`, the two candidates are orthogonal, and each
/// lies in its cone, then the pair is exactly the projection pair -- so four
/// residuals certify a projection without trusting how it was computed.
#[derive(Debug, Clone)]
pub struct MoreauCertificate {
    pub primal: AmbientPoint,
    pub dual: AmbientPoint,
    /// `||original - primal + dual||`.
    pub decomposition_residual: f64,
    /// `|<primal, dual>|`.
    pub orthogonality_residual: f64,
    /// Violation of `primal` lying in `L`, clamped at zero.
    pub primal_feasibility: f64,
    /// Violation of `dual` lying in `M`, clamped at zero.
    pub dual_feasibility: f64,
    original_norm: f64,
}

impl MoreauCertificate {
    pub fn max_residual(&self) -> f64 {
        self.decomposition_residual
            .max(self.orthogonality_residual)
            .max(self.primal_feasibility)
            .max(self.dual_feasibility)
    }

    /// Norm of the point the certificate refers to.
    pub fn original_norm(&self) -> f64 {
        self.original_norm
    }

    /// True when every residual is at most `tol * (1 + ||original||)`.
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol * (1.0 + self.original_norm)
    }
}

/// Fills all four residuals for a candidate projection pair of `original`.
pub fn moreau_certificate(
    original: &AmbientPoint,
    primal: &AmbientPoint,
    dual: &AmbientPoint,
) -> Result<MoreauCertificate, Error> {
    let dims = original.dims();
    for (what, point) in [("primal candidate", primal), ("dual candidate", dual)] {
        if point.dims() != dims {
            return Err(Error::DimensionMismatch {
                what,
                expected: dims.ambient(),
                got: point.dims().ambient(),
            });
        }
    }

    let mut residual: Vec<f64> = Vec::with_capacity(dims.ambient());
    residual.extend(
        original
            .z()
            .iter()
            .zip(primal.z())
            .zip(dual.z())
            .map(|((o, x), y)| o - x + y),
    );
    residual.extend(
        original
            .w()
            .iter()
            .zip(primal.w())
            .zip(dual.w())
            .map(|((o, u), v)| o - u + v),
    );

    Ok(MoreauCertificate {
        decomposition_residual: stable_norm(&residual),
        orthogonality_residual: primal.dot(dual).abs(),
        primal_feasibility: (-in_l(primal, 0.0).margin).max(0.0),
        dual_feasibility: (-in_m(dual, 0.0).margin).max(0.0),
        primal: primal.clone(),
        dual: dual.clone(),
        original_norm: original.norm(),
    })
}
