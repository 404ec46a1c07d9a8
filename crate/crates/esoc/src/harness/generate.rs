//! Stratified random instance generation.
//!
//! Each sampler constructs a point aimed at one projection case, then the
//! caller rejection-checks it with [`classify`] inside a bounded budget.
//! Magnitudes vary over roughly three decades so tolerance handling gets
//! exercised away from unit scale.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Error;
use crate::point::{stable_norm, AmbientPoint, ConeDims};
use crate::projector::{classify, CaseTag};

/// Which projection cases a generated stream should contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseMix {
    /// Each record draws its target case uniformly from the three.
    Uniform,
    Case1,
    Case2,
    Case3,
}

impl CaseMix {
    pub(crate) fn target(&self, rng: &mut impl Rng) -> CaseTag {
        match self {
            CaseMix::Uniform => match rng.random_range(0u8..3) {
                0 => CaseTag::DualWZero,
                1 => CaseTag::PrimalWZero,
                _ => CaseTag::General,
            },
            CaseMix::Case1 => CaseTag::DualWZero,
            CaseMix::Case2 => CaseTag::PrimalWZero,
            CaseMix::Case3 => CaseTag::General,
        }
    }
}

const ATTEMPT_BUDGET: usize = 10_000;

/// Draws a point whose classification matches `target`, resampling within a
/// bounded budget.
pub fn sample_with_case(
    rng: &mut impl Rng,
    dims: ConeDims,
    target: CaseTag,
) -> Result<AmbientPoint, Error> {
    for _ in 0..ATTEMPT_BUDGET {
        let scale = 10f64.powf(rng.random_range(-1.5..1.5));
        let candidate = match target {
            CaseTag::DualWZero => sample_dominating(rng, dims, scale),
            CaseTag::PrimalWZero => sample_negative_mass(rng, dims, scale),
            CaseTag::General => sample_general(rng, dims, scale),
        };
        if classify(&candidate) == target {
            return Ok(candidate);
        }
    }
    Err(Error::GenerationBudget {
        target: target.index(),
        attempts: ATTEMPT_BUDGET,
    })
}

fn gaussian_vec(rng: &mut impl Rng, len: usize, scale: f64) -> Vec<f64> {
    (0..len)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Every `z_i` at least `||w||`: the point already lies in `L`.
fn sample_dominating(rng: &mut impl Rng, dims: ConeDims, scale: f64) -> AmbientPoint {
    let w = gaussian_vec(rng, dims.q(), scale);
    let wnorm = stable_norm(&w);
    let z = (0..dims.p())
        .map(|_| wnorm + scale * rng.random_range(0.0..2.0))
        .collect();
    AmbientPoint::new_unchecked(z, w)
}

/// Negative mass of `z` dominates `||w||`.
fn sample_negative_mass(rng: &mut impl Rng, dims: ConeDims, scale: f64) -> AmbientPoint {
    let mut z = gaussian_vec(rng, dims.p(), scale);
    if z.iter().all(|&v| v >= 0.0) {
        z[0] = -z[0].abs() - 0.1 * scale;
    }
    let neg_mass: f64 = z.iter().map(|&v| (-v).max(0.0)).sum();
    let t = rng.random_range(0.05..0.95);
    let w = scaled_direction(rng, dims.q(), t * neg_mass);
    AmbientPoint::new_unchecked(z, w)
}

/// Some coordinate below `||w||` and negative mass strictly inside it.
fn sample_general(rng: &mut impl Rng, dims: ConeDims, scale: f64) -> AmbientPoint {
    let mut w = gaussian_vec(rng, dims.q(), scale);
    let mut wnorm = stable_norm(&w);
    if wnorm < 1e-9 * scale {
        w[0] += scale;
        wnorm = stable_norm(&w);
    }
    let mut seed = gaussian_vec(rng, dims.p(), 1.0);
    if seed.iter().all(|&v| v >= 0.0) {
        let last = dims.p() - 1;
        seed[last] = -(seed[last].abs() + 0.1);
    }
    let neg_mass: f64 = seed.iter().map(|&v| (-v).max(0.0)).sum();
    let t = rng.random_range(0.05..0.95);
    let c = t * wnorm / neg_mass;
    let z = seed.iter().map(|&s| s * c).collect();
    AmbientPoint::new_unchecked(z, w)
}

fn scaled_direction(rng: &mut impl Rng, len: usize, norm_target: f64) -> Vec<f64> {
    let g = gaussian_vec(rng, len, 1.0);
    let n = stable_norm(&g);
    if n == 0.0 {
        let mut v = vec![0.0; len];
        v[0] = norm_target;
        return v;
    }
    g.iter().map(|&v| v * norm_target / n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_hit_their_target_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, q) in [(1, 1), (1, 4), (3, 2), (8, 8)] {
            let dims = ConeDims::new(p, q).unwrap();
            for target in [CaseTag::DualWZero, CaseTag::PrimalWZero, CaseTag::General] {
                for _ in 0..50 {
                    let a = sample_with_case(&mut rng, dims, target).unwrap();
                    assert_eq!(classify(&a), target);
                }
            }
        }
    }

    #[test]
    fn uniform_mix_covers_all_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = [0usize; 3];
        for _ in 0..300 {
            let target = CaseMix::Uniform.target(&mut rng);
            seen[(target.index() - 1) as usize] += 1;
        }
        assert!(seen.iter().all(|&n| n > 50), "counts {seen:?}");
    }
}
