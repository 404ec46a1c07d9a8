//! Metric projection onto the extended second order cone and its dual.
//!
//! The cone `L = { (x, u) in R^p x R^q : x >= ||u|| e }` generalizes the
//! second order cone, which it recovers at `p = 1`; its dual is
//! `M = { (x, u) : x >= 0, <x, e> >= ||u|| }`. Projection onto either cone
//! splits into three cases, and only the general one needs iteration: the
//! unique positive root of a scalar piecewise linear equation, found by
//! semi-smooth Newton (finitely terminating), Picard iteration, bisection,
//! or exhaustive sign-pattern enumeration.
//!
//! Every projection returns both halves of the Moreau decomposition together
//! with a certificate -- decomposition, orthogonality, and two feasibility
//! residuals -- that proves correctness without trusting the solve path.
//!
//! ```
//! use esoc::{project_l, AmbientPoint, CaseTag, SolverConfig};
//!
//! let a = AmbientPoint::new(vec![1.0, -0.5], vec![0.0, 2.0])?;
//! let result = project_l(&a, &SolverConfig::default())?;
//! assert_eq!(result.case, CaseTag::General);
//! assert!(result.certificate.passes(1e-10));
//! # Ok::<(), esoc::Error>(())
//! ```
//!
//! The `examples/` directory walks through each capability; the `esoc`
//! binary exposes batch generation, projection, benchmarking, and
//! verification over line-delimited records.

pub mod cone;
pub mod error;
pub mod harness;
pub mod point;
pub mod projector;
pub mod psi;

pub use cone::{in_l, in_m, moreau_certificate, ConeMembership, MoreauCertificate};
pub use error::Error;
pub use point::{neg_part, pos_part, stable_norm, AmbientPoint, ConeDims};
pub use projector::{
    classify, project_l, project_m, project_soc, CaseTag, ProjectionResult, CERT_TOL,
};
pub use psi::{
    bisection_solve, enumerate_solve, newton_solve, picard_solve, solve, Iterate, PsiProblem,
    SolveMethod, SolveStatus, SolveTrace, SolverConfig, DEFAULT_MAX_PATTERN_P,
};
