//! Case analysis for projecting onto `L` and `M`.
//!
//! Projection splits on how the norm blocks of the two projections behave:
//! either the dual projection loses its norm block (the order block dominates
//! `||w||` componentwise), or the primal one does (the negative mass
//! dominates), or neither -- and then the multiplier solving the scalar
//! piecewise linear equation shapes both projections:
//!
//! ```text
//! P_L(z, w)   = ( [z - b e]^+ + b e ,  w / (lambda + 1) )      b = ||w|| / (lambda + 1)
//! P_M(-z, -w) = ( [z - b e]^-       , -lambda w / (lambda + 1) )
//! ```
//!
//! Every returned result carries a Moreau-decomposition certificate that must
//! pass at [`CERT_TOL`]; if it does not (possible only when floating point
//! lands a boundary point on the wrong branch), a rescue pass rebuilds the
//! candidates from all case formulas and keeps the best one.

use crate::cone::{moreau_certificate, MoreauCertificate};
use crate::error::Error;
use crate::point::{neg_part, AmbientPoint};
use crate::psi::{bisection_solve, solve, PsiProblem, SolveMethod, SolveTrace, SolverConfig};

/// Relative tolerance every returned certificate must satisfy.
pub const CERT_TOL: f64 = 1e-10;

/// Which branch of the case analysis fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `z^+ >= ||w|| e`: the dual projection has a zero norm block.
    DualWZero,
    /// `<z^-, e> >= ||w||`: the primal projection has a zero norm block.
    PrimalWZero,
    /// Neither; the multiplier comes from the scalar equation.
    General,
}

impl CaseTag {
    /// Stable 1-based index used in the line-record formats.
    pub fn index(&self) -> u8 {
        match self {
            CaseTag::DualWZero => 1,
            CaseTag::PrimalWZero => 2,
            CaseTag::General => 3,
        }
    }

    pub fn from_index(index: u8) -> Option<Self> {
        match index {
            1 => Some(CaseTag::DualWZero),
            2 => Some(CaseTag::PrimalWZero),
            3 => Some(CaseTag::General),
            _ => None,
        }
    }
}

/// Both projections of one point, with the evidence that they are correct.
///
/// The fields describe the point the projector ran on: `proj_l` is its
/// projection onto `L` and `proj_m_neg` the projection of its negation onto
/// `M`, the two halves of the Moreau decomposition.
#[derive(Debug, Clone)]
pub struct ProjectionResult {
    pub case: CaseTag,
    pub proj_l: AmbientPoint,
    pub proj_m_neg: AmbientPoint,
    /// Multiplier of the general case; zero by convention otherwise.
    pub lambda: f64,
    /// Scalar-solver trace when the general case ran.
    pub trace: Option<SolveTrace>,
    pub certificate: MoreauCertificate,
}

impl ProjectionResult {
    /// Scalar-solver iterations (zero for the closed-form cases).
    pub fn iterations(&self) -> usize {
        self.trace.as_ref().map_or(0, |t| t.iterations)
    }

    /// `|psi|` at the accepted multiplier (zero for the closed-form cases).
    pub fn psi_residual(&self) -> f64 {
        self.trace.as_ref().map_or(0.0, |t| t.solution_psi.abs())
    }
}

/// Decides the projection case with exact comparisons.
///
/// The checks run in order; cases 1 and 2 can only overlap when `||w|| = 0`,
/// where their formulas coincide.
pub fn classify(a: &AmbientPoint) -> CaseTag {
    let wnorm = a.w_norm();
    let min_pos = a
        .z()
        .iter()
        .map(|&v| v.max(0.0))
        .fold(f64::INFINITY, f64::min);
    if min_pos >= wnorm {
        return CaseTag::DualWZero;
    }
    let sum_neg: f64 = a.z().iter().map(|&v| (-v).max(0.0)).sum();
    if sum_neg >= wnorm {
        return CaseTag::PrimalWZero;
    }
    // Restated general-case conditions; both follow from the two rejections
    // above, and the scalar solvers re-check them.
    debug_assert!(min_pos < wnorm && sum_neg < wnorm);
    CaseTag::General
}

fn dual_w_zero_pair(a: &AmbientPoint) -> (AmbientPoint, AmbientPoint) {
    let primal = AmbientPoint::new_unchecked(a.z_pos(), a.w().to_vec());
    let dual = AmbientPoint::new_unchecked(a.z_neg(), vec![0.0; a.w().len()]);
    (primal, dual)
}

fn primal_w_zero_pair(a: &AmbientPoint) -> (AmbientPoint, AmbientPoint) {
    let primal = AmbientPoint::new_unchecked(a.z_pos(), vec![0.0; a.w().len()]);
    let dual = AmbientPoint::new_unchecked(a.z_neg(), a.w().iter().map(|&v| -v).collect());
    (primal, dual)
}

pub(crate) fn general_pair(a: &AmbientPoint, lambda: f64) -> (AmbientPoint, AmbientPoint) {
    let wnorm = a.w_norm();
    let shift = wnorm / (lambda + 1.0);
    let shifted: Vec<f64> = a.z().iter().map(|&v| v - shift).collect();
    let x: Vec<f64> = shifted.iter().map(|&v| v.max(0.0) + shift).collect();
    let y = neg_part(&shifted);
    let cu = 1.0 / (lambda + 1.0);
    let cv = -(lambda / (lambda + 1.0));
    let primal = AmbientPoint::new_unchecked(x, a.w().iter().map(|&v| cu * v).collect());
    let dual = AmbientPoint::new_unchecked(y, a.w().iter().map(|&v| cv * v).collect());
    (primal, dual)
}

/// Projects `a` onto `L`, returning both halves of the Moreau decomposition
/// and a passing certificate.
///
/// Scalar-solver failures propagate as errors; a failed certificate (not
/// expected away from case boundaries) triggers [`rescue`] before giving up.
pub fn project_l(a: &AmbientPoint, cfg: &SolverConfig) -> Result<ProjectionResult, Error> {
    let case = classify(a);
    let (proj_l, proj_m_neg, lambda, trace) = match case {
        CaseTag::DualWZero => {
            let (primal, dual) = dual_w_zero_pair(a);
            (primal, dual, 0.0, None)
        }
        CaseTag::PrimalWZero => {
            let (primal, dual) = primal_w_zero_pair(a);
            (primal, dual, 0.0, None)
        }
        CaseTag::General => {
            let prob = PsiProblem::from_point(a)?;
            let tr = solve(&prob, cfg);
            let lambda = tr.lambda()?;
            let (primal, dual) = general_pair(a, lambda);
            (primal, dual, lambda, Some(tr))
        }
    };

    let certificate = moreau_certificate(a, &proj_l, &proj_m_neg)?;
    if certificate.passes(CERT_TOL) {
        return Ok(ProjectionResult {
            case,
            proj_l,
            proj_m_neg,
            lambda,
            trace,
            certificate,
        });
    }
    rescue(a, cfg)
}

/// Rebuilds candidates from every case formula (the general one solved by
/// bisection) and keeps the smallest certificate residual.
fn rescue(a: &AmbientPoint, cfg: &SolverConfig) -> Result<ProjectionResult, Error> {
    let mut candidates: Vec<(CaseTag, AmbientPoint, AmbientPoint, f64, Option<SolveTrace>)> =
        Vec::with_capacity(3);
    let (p1, d1) = dual_w_zero_pair(a);
    candidates.push((CaseTag::DualWZero, p1, d1, 0.0, None));
    let (p2, d2) = primal_w_zero_pair(a);
    candidates.push((CaseTag::PrimalWZero, p2, d2, 0.0, None));
    if let Ok(prob) = PsiProblem::from_point(a) {
        let bcfg = SolverConfig {
            method: SolveMethod::Bisection,
            ..cfg.clone()
        };
        let tr = bisection_solve(&prob, &bcfg);
        if let Ok(lambda) = tr.lambda() {
            let (p3, d3) = general_pair(a, lambda);
            candidates.push((CaseTag::General, p3, d3, lambda, Some(tr)));
        }
    }

    let mut best: Option<ProjectionResult> = None;
    for (case, primal, dual, lambda, trace) in candidates {
        let certificate = moreau_certificate(a, &primal, &dual)?;
        let better = best
            .as_ref()
            .is_none_or(|b| certificate.max_residual() < b.certificate.max_residual());
        if better {
            best = Some(ProjectionResult {
                case,
                proj_l: primal,
                proj_m_neg: dual,
                lambda,
                trace,
                certificate,
            });
        }
    }
    let best = best.expect("the two closed-form candidates always exist");
    if best.certificate.passes(CERT_TOL) {
        Ok(best)
    } else {
        Err(Error::CertificateFailure {
            residual: best.certificate.max_residual(),
            tol: CERT_TOL,
        })
    }
}

/// Projects `a` onto `M` through the identity `P_M(a) = a + P_L(-a)`.
///
/// The returned record is the one of [`project_l`] applied to `-a`, so the
/// projection of `a` onto `M` is its `proj_m_neg` field.
pub fn project_m(a: &AmbientPoint, cfg: &SolverConfig) -> Result<ProjectionResult, Error> {
    project_l(&a.neg(), cfg)
}

/// Closed-form second order cone projection, available only for `p = 1`.
///
/// With `u = [z - ||w||]^+` and `v = [z + ||w||]^+` the projection is
/// `(u + v, (v - u) w / ||w||) / 2` for `w != 0` and `(z^+, 0)` otherwise;
/// the dual half comes from the same formula applied to `-a` (the cone is
/// self-dual at `p = 1`). This is an independent route from the general
/// solver path and is cross-checked against it in the test suites.
pub fn project_soc(a: &AmbientPoint) -> Result<ProjectionResult, Error> {
    let p = a.dims().p();
    if p != 1 {
        return Err(Error::ClosedFormNeedsScalarBlock(p));
    }
    let wnorm = a.w_norm();
    let z0 = a.z()[0];
    let case = classify(a);
    let lambda = if case == CaseTag::General {
        (wnorm - z0) / (wnorm + z0)
    } else {
        0.0
    };
    let proj_l = soc_closed_form(z0, a.w(), wnorm);
    let neg_w: Vec<f64> = a.w().iter().map(|&v| -v).collect();
    let proj_m_neg = soc_closed_form(-z0, &neg_w, wnorm);

    let certificate = moreau_certificate(a, &proj_l, &proj_m_neg)?;
    if !certificate.passes(CERT_TOL) {
        return Err(Error::CertificateFailure {
            residual: certificate.max_residual(),
            tol: CERT_TOL,
        });
    }
    Ok(ProjectionResult {
        case,
        proj_l,
        proj_m_neg,
        lambda,
        trace: None,
        certificate,
    })
}

fn soc_closed_form(z0: f64, w: &[f64], wnorm: f64) -> AmbientPoint {
    if wnorm == 0.0 {
        return AmbientPoint::new_unchecked(vec![z0.max(0.0)], vec![0.0; w.len()]);
    }
    let below = (z0 - wnorm).max(0.0);
    let above = (z0 + wnorm).max(0.0);
    let x = 0.5 * (below + above);
    let scale = 0.5 * (above - below) / wnorm;
    AmbientPoint::new_unchecked(vec![x], w.iter().map(|&wi| scale * wi).collect())
}
