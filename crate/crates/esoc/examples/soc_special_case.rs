//! At `p = 1` the extended cone is the ordinary second order cone, and the
//! general machinery must reproduce its closed form.
//!
//! ```bash
//! cargo run -p esoc --example soc_special_case
//! ```

use esoc::{project_l, project_soc, AmbientPoint, SolverConfig};

fn main() -> Result<(), esoc::Error> {
    let cfg = SolverConfig::default();

    // The classic textbook instance: (0, (3, 4)) halves the gap.
    let a = AmbientPoint::new(vec![0.0], vec![3.0, 4.0])?;
    let closed = project_soc(&a)?;
    let general = project_l(&a, &cfg)?;
    println!("closed form  P_L = ({:?}, {:?})", closed.proj_l.z(), closed.proj_l.w());
    println!("general path P_L = ({:?}, {:?})", general.proj_l.z(), general.proj_l.w());
    println!("multipliers  closed {} vs general {}", closed.lambda, general.lambda);

    // The two routes agree everywhere, including both boundary cases.
    let samples = [
        (5.0, vec![0.0, 0.0]),  // w = 0 branch
        (2.0, vec![1.0, 1.0]),  // interior of the cone
        (-1.0, vec![1.0, 0.0]), // boundary of the polar cone
        (0.3, vec![-0.8, 0.6]), // general case
    ];
    let mut worst: f64 = 0.0;
    for (z0, w) in samples {
        let a = AmbientPoint::new(vec![z0], w)?;
        let closed = project_soc(&a)?;
        let general = project_l(&a, &cfg)?;
        let diff = closed.proj_l.dist(&general.proj_l);
        worst = worst.max(diff);
        println!(
            "z = {z0:5}: case {:?}, routes differ by {diff:.3e}",
            closed.case
        );
    }
    println!("worst disagreement: {worst:.3e}");
    Ok(())
}
