//! Property tests for the vector kernels, the cones, the scalar solvers, and
//! the projection axioms.

mod common;

use common::*;
use esoc::{
    classify, enumerate_solve, in_l, in_m, neg_part, newton_solve, picard_solve, pos_part,
    project_l, project_soc, AmbientPoint, CaseTag, PsiProblem, SolveMethod, SolverConfig,
    CERT_TOL, DEFAULT_MAX_PATTERN_P,
};
use proptest::prelude::*;

fn coords(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0..50.0f64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parts_decompose_exactly(v in coords(1..9)) {
        let p = pos_part(&v);
        let n = neg_part(&v);
        let mut dot = 0.0;
        for i in 0..v.len() {
            prop_assert_eq!(p[i] - n[i], v[i]);
            dot += p[i] * n[i];
        }
        prop_assert_eq!(dot, 0.0);
    }

    #[test]
    fn membership_is_positively_homogeneous(z in coords(1..6), w in coords(1..6)) {
        let a = AmbientPoint::new(z, w).unwrap();
        let in_l_base = in_l(&a, 0.0).inside;
        let in_m_base = in_m(&a, 0.0).inside;
        for t in [1e-3, 1.0, 1e3] {
            let scaled = a.scaled(t);
            prop_assert_eq!(in_l(&scaled, 0.0).inside, in_l_base);
            prop_assert_eq!(in_m(&scaled, 0.0).inside, in_m_base);
        }
    }

    #[test]
    fn psi_is_convex_with_valid_negative_subgradients(
        seed in any::<u64>(),
        p in 1usize..8,
    ) {
        let mut rng = rng(seed);
        let (z, wnorm) = scalar_case3(&mut rng, p);
        let prob = PsiProblem::new(z.clone(), wnorm).unwrap();
        let top = 4.0 * (1.0 + oracle_bisect(&z, wnorm, 1e-12));
        let scale = 1.0 + wnorm * p as f64 + prob.sum_abs_z();

        // Slopes of secants are nondecreasing; the sampled gaps are bounded
        // below so the slope arithmetic stays well conditioned.
        let a = rng.random_range(0.0..top);
        let b = a + 0.05 * (1.0 + top) + rng.random_range(0.0..top);
        let c = b + 0.05 * (1.0 + top) + rng.random_range(0.0..top);
        let (fa, fb, fc) = (
            prob.psi(a).unwrap(),
            prob.psi(b).unwrap(),
            prob.psi(c).unwrap(),
        );
        let left = (fb - fa) / (b - a);
        let right = (fc - fb) / (c - b);
        prop_assert!(left <= right + 1e-12 * scale);

        // Subgradient inequality and strict negativity.
        for _ in 0..4 {
            let lam = rng.random_range(0.0..top);
            let mu = rng.random_range(0.0..top);
            let s = prob.subgradient(lam).unwrap();
            prop_assert!(s < 0.0);
            let lhs = prob.psi(mu).unwrap();
            let rhs = prob.psi(lam).unwrap() + s * (mu - lam);
            prop_assert!(lhs >= rhs - 1e-12 * scale * (1.0 + (mu - lam).abs()));
        }
    }

    #[test]
    fn newton_terminates_within_the_pattern_budget(
        seed in any::<u64>(),
        p in 1usize..7,
        lambda0 in 0.01f64..50.0,
    ) {
        let mut rng = rng(seed);
        let (z, wnorm) = scalar_case3(&mut rng, p);
        let prob = PsiProblem::new(z.clone(), wnorm).unwrap();
        let cfg = SolverConfig { method: SolveMethod::Newton, lambda0, ..SolverConfig::default() };
        let tr = newton_solve(&prob, &cfg);
        prop_assert!(tr.converged());
        prop_assert!(tr.iterations <= 1 << p);
        // Monotone and bounded from the second iterate on.
        let star = oracle_bisect(&z, wnorm, 1e-13);
        for k in 2..tr.iterates.len() {
            prop_assert!(tr.iterates[k].lambda >= tr.iterates[k - 1].lambda);
        }
        for it in tr.iterates.iter().skip(1) {
            prop_assert!(it.lambda <= star + 1e-9 * (1.0 + star));
        }
    }

    #[test]
    fn picard_steps_contract_at_the_data_ratio(
        seed in any::<u64>(),
        p in 1usize..7,
        ratio in 0.05f64..0.9,
    ) {
        let mut rng = rng(seed);
        let wnorm = 10f64.powf(rng.random_range(-0.5..0.5));
        let z = scalar_with_sum_abs(&mut rng, p, wnorm, ratio);
        let prob = PsiProblem::new(z, wnorm).unwrap();
        let cfg = SolverConfig {
            method: SolveMethod::Picard,
            max_iter: 5000,
            ..SolverConfig::default()
        };
        let tr = picard_solve(&prob, &cfg);
        prop_assert!(tr.converged());
        // Successive step lengths shrink at least by the contraction ratio.
        for k in 2..tr.iterates.len() {
            let d1 = (tr.iterates[k].lambda - tr.iterates[k - 1].lambda).abs();
            let d0 = (tr.iterates[k - 1].lambda - tr.iterates[k - 2].lambda).abs();
            if d0 > 1e-9 {
                prop_assert!(d1 <= ratio * d0 + 1e-12);
            }
        }
    }

    #[test]
    fn solvers_agree_on_small_problems(seed in any::<u64>(), p in 1usize..7) {
        let mut rng = rng(seed);
        let (z, wnorm) = scalar_case3(&mut rng, p);
        let prob = PsiProblem::new(z, wnorm).unwrap();
        let newton = newton_solve(&prob, &SolverConfig::with_method(SolveMethod::Newton));
        let en = enumerate_solve(&prob, DEFAULT_MAX_PATTERN_P).unwrap();
        prop_assert!(newton.converged());
        prop_assert!((newton.solution - en).abs() <= 1e-10 * (1.0 + en));
    }

    #[test]
    fn projection_satisfies_the_axioms(z in coords(1..6), w in coords(1..6)) {
        let a = AmbientPoint::new(z, w).unwrap();
        let cfg = SolverConfig::default();
        let r = project_l(&a, &cfg).unwrap();
        prop_assert!(r.certificate.passes(CERT_TOL));

        // The two halves of the decomposition are orthogonal.
        let ortho = r.proj_l.dot(&r.proj_m_neg).abs();
        prop_assert!(ortho <= 1e-10 * (1.0 + a.norm() * a.norm()));

        // Idempotence.
        let again = project_l(&r.proj_l, &cfg).unwrap();
        prop_assert!(rel_point_diff(&again.proj_l, &r.proj_l) <= 1e-10);

        // Positive homogeneity.
        for t in [1e-3, 1.0, 1e3] {
            let scaled = project_l(&a.scaled(t), &cfg).unwrap();
            prop_assert!(rel_point_diff(&scaled.proj_l, &r.proj_l.scaled(t)) <= 1e-10);
        }
    }

    #[test]
    fn projection_is_nonexpansive(
        z1 in coords(3..4), w1 in coords(2..3),
        z2 in coords(3..4), w2 in coords(2..3),
    ) {
        let a = AmbientPoint::new(z1, w1).unwrap();
        let b = AmbientPoint::new(z2, w2).unwrap();
        let cfg = SolverConfig::default();
        let pa = project_l(&a, &cfg).unwrap().proj_l;
        let pb = project_l(&b, &cfg).unwrap().proj_l;
        prop_assert!(pa.dist(&pb) <= a.dist(&b) * (1.0 + 1e-12));
    }

    #[test]
    fn soc_agrees_with_the_general_path(z0 in -20.0..20.0f64, w in coords(1..9)) {
        let a = AmbientPoint::new(vec![z0], w).unwrap();
        let general = project_l(&a, &SolverConfig::default()).unwrap();
        let closed = project_soc(&a).unwrap();
        prop_assert_eq!(general.case, closed.case);
        prop_assert!(rel_point_diff(&general.proj_l, &closed.proj_l) <= 1e-12);
        prop_assert!(rel_point_diff(&general.proj_m_neg, &closed.proj_m_neg) <= 1e-12);
    }
}

#[test]
fn sampled_cone_pairs_have_nonnegative_inner_products() {
    let mut rng = rng(2024);
    for _ in 0..1000 {
        let p = rng.random_range(1..7usize);
        let q = rng.random_range(1..7usize);
        let radius = 10f64.powf(rng.random_range(-1.0..1.0));
        let a = sample_in_l(&mut rng, p, q, radius);
        let b = sample_in_m(&mut rng, p, q, radius);
        assert!(
            a.dot(&b) >= -1e-12 * a.norm() * b.norm(),
            "duality violated: <a,b> = {}",
            a.dot(&b)
        );
    }
}

#[test]
fn vanishing_norm_block_stays_consistent_with_its_limit() {
    // The boundary between the closed-form cases: with ||w|| = 1e-15 the
    // projector must still certify, and the result must sit next to the
    // w = 0 limit.
    let mut rng = rng(77);
    let cfg = SolverConfig::default();
    for _ in 0..200 {
        let p = rng.random_range(1..6usize);
        let q = rng.random_range(1..6usize);
        let z = gaussian_vec(&mut rng, p, 1.0);
        let mut w = vec![0.0; q];
        w[0] = 1e-15;
        let near = AmbientPoint::new(z.clone(), w).unwrap();
        let at = AmbientPoint::new(z, vec![0.0; q]).unwrap();

        let r_near = project_l(&near, &cfg).unwrap();
        let r_at = project_l(&at, &cfg).unwrap();
        assert!(r_near.certificate.passes(CERT_TOL));
        assert!(r_at.certificate.passes(CERT_TOL));
        assert!(r_near.proj_l.dist(&r_at.proj_l) <= 1e-12 * (1.0 + r_at.proj_l.norm()));
    }
}

#[test]
fn classification_matches_membership() {
    let mut rng = rng(31);
    for _ in 0..500 {
        let p = rng.random_range(1..6usize);
        let q = rng.random_range(1..6usize);
        let z = gaussian_vec(&mut rng, p, 1.0);
        let w = gaussian_vec(&mut rng, q, 0.7);
        let a = AmbientPoint::new(z, w).unwrap();
        // A point of L is case 1 (its projection is itself).
        if in_l(&a, 0.0).inside {
            assert_eq!(classify(&a), CaseTag::DualWZero);
        }
    }
}
