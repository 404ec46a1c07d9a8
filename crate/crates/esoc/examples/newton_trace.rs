//! Watch the semi-smooth Newton iteration walk up to the root.
//!
//! Each step solves the currently active linear piece exactly, so the
//! iterate sequence is nondecreasing after the first update and stops after
//! finitely many steps -- far fewer than the 2^p worst case.
//!
//! ```bash
//! cargo run -p esoc --example newton_trace
//! ```

use esoc::{newton_solve, PsiProblem, SolveMethod, SolverConfig};

fn main() -> Result<(), esoc::Error> {
    let z = vec![0.9, 0.5, 0.25, 0.1, -0.05, -0.15, 0.6, 0.35];
    let wnorm = 1.0;
    let prob = PsiProblem::new(z.clone(), wnorm)?;
    println!("p = {}, z = {z:?}, ||w|| = {wnorm}", prob.p());

    let cfg = SolverConfig {
        method: SolveMethod::Newton,
        lambda0: 0.05,
        ..SolverConfig::default()
    };
    let trace = newton_solve(&prob, &cfg);

    println!();
    println!("{:>4} {:>22} {:>14} {:>14}", "k", "lambda_k", "psi", "subgradient");
    for (k, it) in trace.iterates.iter().enumerate() {
        println!(
            "{k:>4} {:>22.16} {:>14.6e} {:>14.6e}",
            it.lambda, it.psi, it.subgradient
        );
    }
    println!();
    println!(
        "status {:?} after {} updates (worst-case bound here: 2^{} = {})",
        trace.status,
        trace.iterations,
        prob.p(),
        1usize << prob.p()
    );
    println!("root: {}", trace.lambda()?);
    Ok(())
}
