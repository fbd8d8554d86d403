//! Baseline families, their rates and hazard comparisons.
use outlier_extremes::baselines::{compare_hazards, Baseline, BaselineShape, CompareMode};
use outlier_extremes::distribution::LifetimeDistribution;

fn main() -> outlier_extremes::error::Result<()> {
    let all = [
        Baseline::exponential(),
        Baseline::kummer(),
        Baseline::lomax_half(),
        Baseline::power(2.0, 3.0)?,
        Baseline::pareto(2.0, 1.0)?,
    ];
    for b in &all {
        let x = b.quantile(0.5)?;
        let grid = b.default_grid(400)?;
        println!(
            "{:?}: median {x:.4}, r = {:.4}, r~ = {:.4}, x r(x) decreasing: {}",
            b.family(),
            b.hazard(x)?,
            b.rev_hazard(x)?,
            b.check_shape(BaselineShape::XrDecreasing, &grid).status
        );
    }
    let (e, k) = (&all[0], &all[1]);
    let grid = Baseline::comparison_grid(e, k, 1000)?;
    for mode in [CompareMode::HazardLeq, CompareMode::RevHazardLeq, CompareMode::CdfLeq] {
        println!("exponential vs Kummer {mode:?}: {}", compare_hazards(e, k, mode, &grid).status);
    }
    let twice = e.scaled(2.0)?;
    println!("exponential scaled by 2: F(1) = {:.6}", twice.cdf(1.0));
    Ok(())
}
