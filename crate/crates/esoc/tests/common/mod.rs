//! Shared helpers for the integration suites: independent oracles and
//! random instance builders.
//!
//! The oracle routines recompute everything from raw slices so their results
//! do not depend on the library's solver paths.

#![allow(dead_code)]

use esoc::{stable_norm, AmbientPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Direct evaluation of the scalar function, independent of the library.
pub fn psi_direct(z: &[f64], wnorm: f64, lambda: f64) -> f64 {
    let mut acc = -lambda * wnorm;
    for &zi in z {
        acc += (wnorm - (lambda + 1.0) * zi).max(0.0);
    }
    acc
}

/// Bracketing bisection on [`psi_direct`]: doubles from 1 until the sign
/// flips, then halves until the bracket width drops below `tol * (1 + hi)`.
pub fn oracle_bisect(z: &[f64], wnorm: f64, tol: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut guard = 0;
    while psi_direct(z, wnorm, hi) >= 0.0 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        assert!(guard < 2000, "oracle failed to bracket a sign change");
    }
    for _ in 0..20_000 {
        if (hi - lo) <= tol * (1.0 + hi) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if psi_direct(z, wnorm, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `||a - b|| / (1 + ||b||)`.
pub fn rel_point_diff(a: &AmbientPoint, b: &AmbientPoint) -> f64 {
    a.dist(b) / (1.0 + b.norm())
}

pub fn gaussian_vec(rng: &mut impl Rng, len: usize, scale: f64) -> Vec<f64> {
    (0..len)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Uniform-ish point of a ball of the given radius (direction uniform,
/// radius tapered toward the boundary).
pub fn ball_vec(rng: &mut impl Rng, len: usize, radius: f64) -> Vec<f64> {
    let g = gaussian_vec(rng, len, 1.0);
    let n = stable_norm(&g);
    if n == 0.0 {
        return vec![0.0; len];
    }
    let r = radius * rng.random_range(0.0f64..1.0).powf(1.0 / len as f64);
    g.iter().map(|&v| v * r / n).collect()
}

/// Feasible point of `L`: order block shifted above the norm of a random
/// norm block.
pub fn sample_in_l(rng: &mut impl Rng, p: usize, q: usize, radius: f64) -> AmbientPoint {
    let u = ball_vec(rng, q, radius);
    let shift = stable_norm(&u);
    let x = (0..p)
        .map(|_| shift + rng.random_range(0.0..radius))
        .collect();
    AmbientPoint::new(x, u).unwrap()
}

/// Feasible point of `M`: nonnegative order block whose coordinate sum
/// dominates the norm block.
pub fn sample_in_m(rng: &mut impl Rng, p: usize, q: usize, radius: f64) -> AmbientPoint {
    let x: Vec<f64> = (0..p).map(|_| rng.random_range(0.0..radius)).collect();
    let budget: f64 = x.iter().sum();
    let dir = ball_vec(rng, q, 1.0);
    let n = stable_norm(&dir);
    let target = budget * rng.random_range(0.0f64..1.0);
    let u = if n == 0.0 {
        vec![0.0; q]
    } else {
        dir.iter().map(|&v| v * target / n).collect()
    };
    AmbientPoint::new(x, u).unwrap()
}

/// Scalar general-case data `(z, ||w||)` with mixed signs and magnitudes.
///
/// The negative mass lands in `(0.05, 0.9) * wnorm` and the total absolute
/// mass is capped at `8 * wnorm`, keeping the root and the conditioning of
/// `psi` bounded so solver tolerances stay meaningful.
pub fn scalar_case3(rng: &mut impl Rng, p: usize) -> (Vec<f64>, f64) {
    let wnorm = 10f64.powf(rng.random_range(-1.0..1.0));
    let mut seed = gaussian_vec(rng, p, 1.0);
    if seed.iter().all(|&v| v >= 0.0) {
        seed[p - 1] = -(seed[p - 1].abs() + 0.1);
    }
    let neg_mass: f64 = seed.iter().map(|&v| (-v).max(0.0)).sum();
    let t = rng.random_range(0.05..0.9);
    let c = t * wnorm / neg_mass;
    let mut z: Vec<f64> = seed.iter().map(|&s| s * c).collect();
    let sum_abs: f64 = z.iter().map(|v| v.abs()).sum();
    if sum_abs > 8.0 * wnorm {
        let shrink = 8.0 * wnorm / sum_abs;
        for v in &mut z {
            *v *= shrink;
        }
    }
    (z, wnorm)
}

/// Scalar data whose absolute coordinate sum is exactly `ratio * wnorm`.
/// Any `ratio < 1` yields a general-case problem.
pub fn scalar_with_sum_abs(rng: &mut impl Rng, p: usize, wnorm: f64, ratio: f64) -> Vec<f64> {
    assert!(ratio > 0.0 && ratio < 1.0);
    let mut seed = gaussian_vec(rng, p, 1.0);
    let mut sum_abs: f64 = seed.iter().map(|v| v.abs()).sum();
    if sum_abs == 0.0 {
        seed[0] = 1.0;
        sum_abs = 1.0;
    }
    let c = ratio * wnorm / sum_abs;
    seed.iter().map(|&s| s * c).collect()
}
