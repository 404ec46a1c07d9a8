//! Run all four scalar solvers on one general-case instance and compare.
//!
//! ```bash
//! cargo run -p esoc --example solver_comparison
//! ```

use esoc::{
    bisection_solve, enumerate_solve, newton_solve, picard_solve, PsiProblem, SolveMethod,
    SolverConfig, DEFAULT_MAX_PATTERN_P,
};

fn main() -> Result<(), esoc::Error> {
    let z = vec![0.4, -0.1, 0.2, -0.05, 0.7];
    let wnorm = 1.0;
    let prob = PsiProblem::new(z.clone(), wnorm)?;
    println!("z = {z:?}, ||w|| = {wnorm}");
    println!(
        "sum|z| = {} (picard contracts when this is below ||w||)",
        prob.sum_abs_z()
    );
    println!();
    println!("{:<12} {:>18} {:>11} {:>13}", "method", "lambda", "iterations", "|psi|");

    for method in [
        SolveMethod::Newton,
        SolveMethod::Picard,
        SolveMethod::Bisection,
    ] {
        let cfg = SolverConfig::with_method(method);
        let trace = match method {
            SolveMethod::Newton => newton_solve(&prob, &cfg),
            SolveMethod::Picard => picard_solve(&prob, &cfg),
            _ => bisection_solve(&prob, &cfg),
        };
        match trace.lambda() {
            Ok(lambda) => println!(
                "{:<12} {:>18.15} {:>11} {:>13.3e}",
                method.as_str(),
                lambda,
                trace.iterations,
                trace.solution_psi.abs()
            ),
            Err(err) => println!("{:<12} failed: {err}", method.as_str()),
        }
    }

    // The exhaustive oracle tries all 2^p sign patterns of the active set.
    let exact = enumerate_solve(&prob, DEFAULT_MAX_PATTERN_P)?;
    println!(
        "{:<12} {:>18.15} {:>11} {:>13.3e}",
        "enumeration",
        exact,
        1usize << prob.p(),
        prob.psi(exact)?.abs()
    );
    Ok(())
}
