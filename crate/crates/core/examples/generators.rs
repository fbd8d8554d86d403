//! Archimedean generators and the shape checks used as hypotheses.
use outlier_extremes::copula::{check_super_additive, Generator};

fn main() -> outlier_extremes::error::Result<()> {
    let gens = [
        Generator::independence(),
        Generator::gumbel_exp(2.0)?,
        Generator::log_exp(0.5)?,
    ];
    for g in &gens {
        let grid = g.default_grid(400)?;
        let u = 0.3;
        let w = g.phi(u)?;
        println!(
            "{}: phi({u}) = {w:.6}, psi(phi({u})) = {:.12}, log-convex {}, log-concave {}",
            g.name(),
            g.psi(w),
            g.check_log_convex(&grid).status,
            g.check_log_concave(&grid).status
        );
    }
    let grid = gens[1].default_grid(400)?;
    println!(
        "phi_independence o psi_gumbel super-additive: {}",
        check_super_additive(&gens[0], &gens[1], &grid).status
    );
    println!(
        "phi_gumbel o psi_independence super-additive: {}",
        check_super_additive(&gens[1], &gens[0], &grid).status
    );
    Ok(())
}
