//! Project a single point onto the extended second order cone.
//!
//! ```bash
//! cargo run -p esoc --example project_point
//! ```

use esoc::{classify, project_l, AmbientPoint, SolverConfig};

fn main() -> Result<(), esoc::Error> {
    // A point of R^3 x R^2 that is in neither cone: the order block has a
    // coordinate below ||w|| and not enough negative mass to cover it.
    let a = AmbientPoint::new(vec![1.0, -0.5, 2.0], vec![0.0, 2.0])?;
    println!("point        z = {:?}, w = {:?}", a.z(), a.w());
    println!("||w||        = {}", a.w_norm());
    println!("case         = {:?}", classify(&a));

    let result = project_l(&a, &SolverConfig::default())?;
    println!("lambda       = {}", result.lambda);
    println!(
        "P_L(a)       z = {:?}, w = {:?}",
        result.proj_l.z(),
        result.proj_l.w()
    );
    println!(
        "P_M(-a)      z = {:?}, w = {:?}",
        result.proj_m_neg.z(),
        result.proj_m_neg.w()
    );

    // The certificate residuals prove the pair is the projection pair:
    // a = P_L(a) - P_M(-a), the parts are orthogonal, and each part is
    // feasible for its cone.
    let cert = &result.certificate;
    println!("certificate  decomposition  = {:.3e}", cert.decomposition_residual);
    println!("certificate  orthogonality  = {:.3e}", cert.orthogonality_residual);
    println!("certificate  primal in L    = {:.3e}", cert.primal_feasibility);
    println!("certificate  dual in M      = {:.3e}", cert.dual_feasibility);
    println!("passes at 1e-10: {}", cert.passes(1e-10));
    Ok(())
}
