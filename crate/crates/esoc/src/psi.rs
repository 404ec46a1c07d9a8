//! The scalar piecewise linear equation behind the general projection case,
//! and four interchangeable ways of finding its unique positive root.
//!
//! For data `z` in `R^p` and a scalar `||w|| > 0` define
//!
//! ```text
//! psi(lambda) = -lambda ||w|| + sum_i max(||w|| - (lambda + 1) z_i, 0)
//! ```
//!
//! on `lambda >= 0`. The function is convex and piecewise linear with at most
//! `p` kinks. Under the general-case conditions (some `z_i^+ < ||w||` and
//! `sum z_i^- < ||w||`) every subgradient is strictly negative, `psi(0) > 0`,
//! and `psi` has exactly one positive zero. The solvers:
//!
//! * [`newton_solve`] -- semi-smooth Newton. Each step jumps to the exact
//!   root of the currently active linear piece, so the iteration terminates
//!   finitely (never more than `2^p` steps, in practice a handful) and is
//!   monotone nondecreasing from the second iterate on.
//! * [`picard_solve`] -- fixed point iteration of
//!   `lambda <- sum_i max(||w|| - (lambda + 1) z_i, 0) / ||w||`, a
//!   contraction with ratio `sum|z| / ||w||` whenever that ratio is below 1.
//! * [`bisection_solve`] -- bracketing with doubling and midpoint halving;
//!   needs nothing beyond the general-case conditions.
//! * [`enumerate_solve`] -- tries all `2^p` sign patterns of the active set
//!   and keeps the consistent one. Exponential; meant as an independent
//!   oracle for the other three.

use crate::error::Error;
use crate::point::AmbientPoint;

/// Largest order-block size [`enumerate_solve`] accepts by default.
pub const DEFAULT_MAX_PATTERN_P: usize = 20;

/// Root-finding strategies for the scalar equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Newton,
    Picard,
    Bisection,
    Enumeration,
    /// Newton first, bisection if Newton reports anything but convergence
    /// (for instance a numerically degenerate subgradient at the case
    /// boundary).
    Auto,
}

impl SolveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveMethod::Newton => "newton",
            SolveMethod::Picard => "picard",
            SolveMethod::Bisection => "bisection",
            SolveMethod::Enumeration => "enumeration",
            SolveMethod::Auto => "auto",
        }
    }
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a solve ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIterExceeded,
    /// Picard's precondition `sum|z| < ||w||` does not hold.
    ContractionViolated,
    /// The general-case conditions fail (or the configuration is unusable).
    InvalidProblem,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIterExceeded => "max_iter_exceeded",
            SolveStatus::ContractionViolated => "contraction_violated",
            SolveStatus::InvalidProblem => "invalid_problem",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Settings shared by all scalar solvers.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub method: SolveMethod,
    /// Residual tolerance: accept `lambda` once `|psi(lambda)| <= tol * (1 + ||w||)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Starting iterate; any positive value works for Newton and Picard.
    pub lambda0: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: SolveMethod::Auto,
            tol: 1e-12,
            max_iter: 200,
            lambda0: 1.0,
        }
    }
}

impl SolverConfig {
    pub fn with_method(method: SolveMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<(), String> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("tol must be positive and finite, got {}", self.tol));
        }
        if self.max_iter == 0 {
            return Err("max_iter must be at least 1".into());
        }
        if !(self.lambda0 > 0.0 && self.lambda0.is_finite()) {
            return Err(format!(
                "lambda0 must be positive and finite, got {}",
                self.lambda0
            ));
        }
        Ok(())
    }
}

/// One row of a solver trace.
#[derive(Debug, Clone, Copy)]
pub struct Iterate {
    pub lambda: f64,
    pub psi: f64,
    pub subgradient: f64,
}

/// Full history of a scalar solve.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    pub method: SolveMethod,
    pub status: SolveStatus,
    /// Accepted root when `status == Converged`; last iterate otherwise.
    pub solution: f64,
    /// `psi` evaluated at `solution`.
    pub solution_psi: f64,
    /// Update steps performed before acceptance (trace rows minus one).
    pub iterations: usize,
    pub iterates: Vec<Iterate>,
    /// Largest observed ratio of successive step lengths, when measurable.
    pub empirical_ratio: Option<f64>,
    /// Human-readable context for non-converged statuses.
    pub detail: Option<String>,
}

impl SolveTrace {
    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }

    /// The root, or a structured error carrying the failure status.
    pub fn lambda(&self) -> Result<f64, Error> {
        if self.converged() {
            Ok(self.solution)
        } else {
            Err(Error::SolveFailed {
                method: self.method,
                status: self.status,
                detail: self
                    .detail
                    .clone()
                    .unwrap_or_else(|| "no further context".into()),
            })
        }
    }

    fn failed(
        method: SolveMethod,
        status: SolveStatus,
        detail: impl Into<String>,
        iterates: Vec<Iterate>,
    ) -> Self {
        let (solution, solution_psi) = iterates
            .last()
            .map(|it| (it.lambda, it.psi))
            .unwrap_or((f64::NAN, f64::NAN));
        Self {
            method,
            status,
            solution,
            solution_psi,
            iterations: iterates.len().saturating_sub(1),
            empirical_ratio: successive_ratio(&iterates),
            iterates,
            detail: Some(detail.into()),
        }
    }
}

fn successive_ratio(iterates: &[Iterate]) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for k in 2..iterates.len() {
        let d1 = (iterates[k].lambda - iterates[k - 1].lambda).abs();
        let d0 = (iterates[k - 1].lambda - iterates[k - 2].lambda).abs();
        if d0 > 0.0 {
            let r = d1 / d0;
            worst = Some(worst.map_or(r, |w: f64| w.max(r)));
        }
    }
    worst
}

/// The scalar subproblem: order-block data `z` and the magnitude `||w||`.
///
/// Only the norm of `w` enters `psi`, so the solvers are reusable and
/// testable without an ambient point.
#[derive(Debug, Clone)]
pub struct PsiProblem {
    z: Vec<f64>,
    wnorm: f64,
}

impl PsiProblem {
    pub fn new(z: Vec<f64>, wnorm: f64) -> Result<Self, Error> {
        if z.is_empty() {
            return Err(Error::InvalidDims { p: 0, q: 1 });
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "order block z" });
        }
        if !(wnorm > 0.0 && wnorm.is_finite()) {
            return Err(Error::InvalidWNorm(wnorm));
        }
        Ok(Self { z, wnorm })
    }

    /// Builds the scalar problem for a point, taking `||w||` from its norm block.
    pub fn from_point(a: &AmbientPoint) -> Result<Self, Error> {
        Self::new(a.z().to_vec(), a.w_norm())
    }

    pub fn p(&self) -> usize {
        self.z.len()
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn wnorm(&self) -> f64 {
        self.wnorm
    }

    pub fn sum_abs_z(&self) -> f64 {
        self.z.iter().map(|v| v.abs()).sum()
    }

    pub fn sum_neg_z(&self) -> f64 {
        self.z.iter().map(|&v| (-v).max(0.0)).sum()
    }

    /// Checks the general-case conditions: some `z_i^+ < ||w||` and
    /// `sum z_i^- < ||w||`. Only then does `psi` have a positive zero.
    pub fn case3_conditions(&self) -> Result<(), Error> {
        let min_pos = self
            .z
            .iter()
            .map(|&v| v.max(0.0))
            .fold(f64::INFINITY, f64::min);
        if !(min_pos < self.wnorm) {
            return Err(Error::InvalidProblem {
                reason: format!(
                    "every z_i^+ >= ||w||: min z_i^+ = {:.6e}, ||w|| = {:.6e}",
                    min_pos, self.wnorm
                ),
            });
        }
        let sum_neg = self.sum_neg_z();
        if !(sum_neg < self.wnorm) {
            return Err(Error::InvalidProblem {
                reason: format!(
                    "sum z_i^- = {:.6e} is not below ||w|| = {:.6e}",
                    sum_neg, self.wnorm
                ),
            });
        }
        Ok(())
    }

    pub fn is_case3(&self) -> bool {
        self.case3_conditions().is_ok()
    }

    /// `psi(lambda)`; rejects negative or non-finite arguments.
    pub fn psi(&self, lambda: f64) -> Result<f64, Error> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::NegativeLambda(lambda));
        }
        Ok(self.psi_at(lambda))
    }

    /// One valid subgradient of `psi` at `lambda`; a coordinate exactly on a
    /// kink contributes zero. Strictly negative under the general-case
    /// conditions.
    pub fn subgradient(&self, lambda: f64) -> Result<f64, Error> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::NegativeLambda(lambda));
        }
        Ok(self.subgradient_at(lambda))
    }

    pub(crate) fn psi_at(&self, lambda: f64) -> f64 {
        let mut acc = -lambda * self.wnorm;
        for &zi in &self.z {
            acc += (self.wnorm - (lambda + 1.0) * zi).max(0.0);
        }
        acc
    }

    fn subgradient_at(&self, lambda: f64) -> f64 {
        let (_, sum) = self.active_sum(lambda);
        -(self.wnorm + sum)
    }

    /// Count and coordinate sum of the active set `{ i : (lambda+1) z_i < ||w|| }`.
    fn active_sum(&self, lambda: f64) -> (usize, f64) {
        let mut count = 0;
        let mut sum = 0.0;
        for &zi in &self.z {
            if (lambda + 1.0) * zi - self.wnorm < 0.0 {
                count += 1;
                sum += zi;
            }
        }
        (count, sum)
    }

    fn picard_at(&self, lambda: f64) -> f64 {
        let mut acc = 0.0;
        for &zi in &self.z {
            acc += (self.wnorm - (lambda + 1.0) * zi).max(0.0);
        }
        acc / self.wnorm
    }

    fn iterate(&self, lambda: f64) -> Iterate {
        Iterate {
            lambda,
            psi: self.psi_at(lambda),
            subgradient: self.subgradient_at(lambda),
        }
    }

    fn residual_ok(&self, psi: f64, tol: f64) -> bool {
        psi.abs() <= tol * (1.0 + self.wnorm)
    }
}

/// Semi-smooth Newton iteration.
///
/// Writing `A_k` for the active set at `lambda_k`, the update solves the
/// active linear piece exactly:
///
/// ```text
/// lambda_{k+1} = (|A_k| ||w|| - sum_{i in A_k} z_i) / (||w|| + sum_{i in A_k} z_i)
/// ```
///
/// Stops once `|psi| <= tol (1 + ||w||)` or two consecutive iterates repeat
/// exactly (finite termination). The denominator is the negated subgradient
/// and stays positive on valid problems.
pub fn newton_solve(prob: &PsiProblem, cfg: &SolverConfig) -> SolveTrace {
    if let Err(detail) = cfg.check() {
        return SolveTrace::failed(
            SolveMethod::Newton,
            SolveStatus::InvalidProblem,
            detail,
            Vec::new(),
        );
    }
    if let Err(e) = prob.case3_conditions() {
        return SolveTrace::failed(
            SolveMethod::Newton,
            SolveStatus::InvalidProblem,
            e.to_string(),
            Vec::new(),
        );
    }

    let wnorm = prob.wnorm;
    let degenerate = 1e-14 * (1.0 + wnorm);
    let mut iterates = Vec::new();
    let mut lam = cfg.lambda0;

    for performed in 0..=cfg.max_iter {
        let it = prob.iterate(lam);
        iterates.push(it);
        if prob.residual_ok(it.psi, cfg.tol) {
            return SolveTrace {
                method: SolveMethod::Newton,
                status: SolveStatus::Converged,
                solution: lam,
                solution_psi: it.psi,
                iterations: performed,
                empirical_ratio: successive_ratio(&iterates),
                iterates,
                detail: None,
            };
        }
        if performed == cfg.max_iter {
            break;
        }
        let (count, sum) = prob.active_sum(lam);
        let slope_magnitude = wnorm + sum;
        if !(slope_magnitude > degenerate) {
            return SolveTrace::failed(
                SolveMethod::Newton,
                SolveStatus::InvalidProblem,
                format!(
                    "subgradient magnitude {:.3e} below guard {:.3e}",
                    slope_magnitude.abs(),
                    degenerate
                ),
                iterates,
            );
        }
        let next = (count as f64 * wnorm - sum) / slope_magnitude;
        if !next.is_finite() {
            return SolveTrace::failed(
                SolveMethod::Newton,
                SolveStatus::InvalidProblem,
                "iterate left the finite range",
                iterates,
            );
        }
        if next == lam {
            // lam already solves its own piece; no further progress possible.
            return SolveTrace {
                method: SolveMethod::Newton,
                status: SolveStatus::Converged,
                solution: lam,
                solution_psi: it.psi,
                iterations: performed,
                empirical_ratio: successive_ratio(&iterates),
                iterates,
                detail: None,
            };
        }
        lam = next;
    }

    let detail = format!("no convergence within {} iterations", cfg.max_iter);
    SolveTrace::failed(
        SolveMethod::Newton,
        SolveStatus::MaxIterExceeded,
        detail,
        iterates,
    )
}

/// Picard fixed-point iteration; requires the contraction condition
/// `sum|z| < ||w||` and reports `ContractionViolated` otherwise.
///
/// Stops once the step is small relative to the iterate *and* the residual
/// clears the tolerance.
pub fn picard_solve(prob: &PsiProblem, cfg: &SolverConfig) -> SolveTrace {
    if let Err(detail) = cfg.check() {
        return SolveTrace::failed(
            SolveMethod::Picard,
            SolveStatus::InvalidProblem,
            detail,
            Vec::new(),
        );
    }
    let wnorm = prob.wnorm;
    let sum_abs = prob.sum_abs_z();
    if !(sum_abs < wnorm) {
        return SolveTrace::failed(
            SolveMethod::Picard,
            SolveStatus::ContractionViolated,
            format!("sum |z_i| = {sum_abs:.6e} must stay below ||w|| = {wnorm:.6e}"),
            Vec::new(),
        );
    }

    let mut iterates = vec![prob.iterate(cfg.lambda0)];
    let mut lam = cfg.lambda0;
    for performed in 1..=cfg.max_iter {
        let next = prob.picard_at(lam);
        let it = prob.iterate(next);
        iterates.push(it);
        if (next - lam).abs() <= cfg.tol * (1.0 + lam.abs()) && prob.residual_ok(it.psi, cfg.tol) {
            return SolveTrace {
                method: SolveMethod::Picard,
                status: SolveStatus::Converged,
                solution: next,
                solution_psi: it.psi,
                iterations: performed,
                empirical_ratio: successive_ratio(&iterates),
                iterates,
                detail: None,
            };
        }
        lam = next;
    }

    let detail = format!(
        "tolerance unreachable within {} iterations (contraction ratio about {:.3})",
        cfg.max_iter,
        sum_abs / wnorm
    );
    SolveTrace::failed(
        SolveMethod::Picard,
        SolveStatus::MaxIterExceeded,
        detail,
        iterates,
    )
}

/// Bracketing bisection: doubles an upper bound from 1 until `psi` turns
/// negative (at most `max_iter` doublings), then halves the bracket until it
/// is tight relative to the upper end and the best residual clears the
/// tolerance.
pub fn bisection_solve(prob: &PsiProblem, cfg: &SolverConfig) -> SolveTrace {
    if let Err(detail) = cfg.check() {
        return SolveTrace::failed(
            SolveMethod::Bisection,
            SolveStatus::InvalidProblem,
            detail,
            Vec::new(),
        );
    }
    if let Err(e) = prob.case3_conditions() {
        return SolveTrace::failed(
            SolveMethod::Bisection,
            SolveStatus::InvalidProblem,
            e.to_string(),
            Vec::new(),
        );
    }
    let psi0 = prob.psi_at(0.0);
    if psi0 <= 0.0 {
        return SolveTrace::failed(
            SolveMethod::Bisection,
            SolveStatus::InvalidProblem,
            format!("psi(0) = {psi0:.3e} is not positive"),
            Vec::new(),
        );
    }

    let mut iterates = Vec::new();
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0usize;
    let mut best = loop {
        let it = prob.iterate(hi);
        iterates.push(it);
        if it.psi < 0.0 {
            break it;
        }
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > cfg.max_iter {
            return SolveTrace::failed(
                SolveMethod::Bisection,
                SolveStatus::MaxIterExceeded,
                format!("no sign change within {} doublings", cfg.max_iter),
                iterates,
            );
        }
    };

    // Hard cap: f64 cannot support more than ~2100 useful halvings, so this
    // never spins even for unreachable tolerances.
    const STEP_CAP: usize = 4096;
    let mut steps = 0usize;
    while steps < STEP_CAP {
        let width_ok = (hi - lo) <= cfg.tol * (1.0 + hi);
        if width_ok && prob.residual_ok(best.psi, cfg.tol) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let it = prob.iterate(mid);
        iterates.push(it);
        if it.psi.abs() < best.psi.abs() {
            best = it;
        }
        if it.psi > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }

    if prob.residual_ok(best.psi, cfg.tol) && best.lambda > 0.0 {
        SolveTrace {
            method: SolveMethod::Bisection,
            status: SolveStatus::Converged,
            solution: best.lambda,
            solution_psi: best.psi,
            iterations: steps,
            empirical_ratio: None,
            iterates,
            detail: None,
        }
    } else {
        SolveTrace::failed(
            SolveMethod::Bisection,
            SolveStatus::MaxIterExceeded,
            "bracket exhausted before the residual tolerance",
            iterates,
        )
    }
}

/// Exhaustive sign-pattern search.
///
/// Every subset `A` of coordinates fixes one linear piece of `psi`; its root
/// is `lambda = (|A| ||w|| - S) / (||w|| + S)` with `S = sum_{i in A} z_i`.
/// A pattern is consistent when that root is positive and each coordinate
/// sits on its assumed side, with slack `1e-12 (1 + ||w||)` so boundary
/// coordinates may belong to either side. Among consistent patterns the root
/// with the smallest `|psi|` is returned (they agree up to rounding, since
/// the positive zero is unique).
pub fn enumerate_solve(prob: &PsiProblem, max_p: usize) -> Result<f64, Error> {
    let p = prob.p();
    if p > max_p.min(63) {
        return Err(Error::PatternSpaceTooLarge { p, max_p });
    }
    let z = prob.z();
    let wnorm = prob.wnorm;
    let slack = 1e-12 * (1.0 + wnorm);

    let mut best: Option<(f64, f64)> = None; // (|psi|, lambda)
    let mut nearest: Option<(f64, u64)> = None; // (violation, mask)

    for mask in 0..(1u64 << p) {
        let mut count = 0usize;
        let mut sum = 0.0;
        for (i, &zi) in z.iter().enumerate() {
            if mask >> i & 1 == 1 {
                count += 1;
                sum += zi;
            }
        }
        let slope = wnorm + sum;
        if !(slope.abs() > 0.0) {
            continue; // flat piece, no isolated root
        }
        let lambda = (count as f64 * wnorm - sum) / slope;
        if !lambda.is_finite() {
            continue;
        }

        let mut violation = if lambda > 0.0 { 0.0 } else { slack.max(-lambda) };
        for (i, &zi) in z.iter().enumerate() {
            let r = (lambda + 1.0) * zi - wnorm;
            let breach = if mask >> i & 1 == 1 {
                r - slack // inside the pattern: r must stay below +slack
            } else {
                -(r + slack) // outside: r must stay above -slack
            };
            if breach > violation {
                violation = breach;
            }
        }

        if violation <= 0.0 {
            let psi_abs = prob.psi_at(lambda).abs();
            if best.is_none_or(|(b, _)| psi_abs < b) {
                best = Some((psi_abs, lambda));
            }
        } else if nearest.is_none_or(|(v, _)| violation < v) {
            nearest = Some((violation, mask));
        }
    }

    match best {
        Some((_, lambda)) => Ok(lambda),
        None => {
            let (violation, mask) = nearest.unwrap_or((f64::INFINITY, 0));
            let pattern: String = (0..p)
                .map(|i| if mask >> i & 1 == 1 { '-' } else { '+' })
                .collect();
            Err(Error::NoConsistentPattern { pattern, violation })
        }
    }
}

/// Runs the configured method. [`SolveMethod::Auto`] retries with bisection
/// whenever Newton reports anything but convergence.
pub fn solve(prob: &PsiProblem, cfg: &SolverConfig) -> SolveTrace {
    match cfg.method {
        SolveMethod::Newton => newton_solve(prob, cfg),
        SolveMethod::Picard => picard_solve(prob, cfg),
        SolveMethod::Bisection => bisection_solve(prob, cfg),
        SolveMethod::Enumeration => match enumerate_solve(prob, DEFAULT_MAX_PATTERN_P) {
            Ok(lambda) => {
                let it = prob.iterate(lambda);
                SolveTrace {
                    method: SolveMethod::Enumeration,
                    status: SolveStatus::Converged,
                    solution: lambda,
                    solution_psi: it.psi,
                    iterations: 1usize << prob.p().min(63),
                    empirical_ratio: None,
                    iterates: vec![it],
                    detail: None,
                }
            }
            Err(e) => SolveTrace::failed(
                SolveMethod::Enumeration,
                SolveStatus::InvalidProblem,
                e.to_string(),
                Vec::new(),
            ),
        },
        SolveMethod::Auto => {
            let newton = newton_solve(prob, cfg);
            if newton.converged() {
                return newton;
            }
            let reason = newton
                .detail
                .clone()
                .unwrap_or_else(|| newton.status.to_string());
            let mut fallback = bisection_solve(prob, cfg);
            fallback.detail = Some(format!("newton fallback ({reason})"));
            fallback
        }
    }
}
