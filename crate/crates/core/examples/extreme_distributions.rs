//! Distribution of the largest and smallest lifetime in a dependent sample
//! with two blocks of scales.
use outlier_extremes::baselines::Baseline;
use outlier_extremes::copula::Generator;
use outlier_extremes::distribution::LifetimeDistribution;
use outlier_extremes::extremes::{Extreme, MultipleOutlierModel};

fn main() -> outlier_extremes::error::Result<()> {
    let g = Generator::gumbel_exp(2.0)?;
    let e = Baseline::exponential();
    for extreme in [Extreme::Max, Extreme::Min] {
        let m = MultipleOutlierModel::new(g.clone(), e.clone(), e.clone(), [1.0, 3.0], [2, 3], extreme)?;
        let d = m.distribution();
        println!("{extreme} of {}", m.label());
        for u in [0.1, 0.5, 0.9] {
            let x = d.quantile(u)?;
            println!(
                "  q({u}) = {x:.5}  cdf = {:.6}  pdf = {:.6}  hazard = {:.6}  rev_hazard = {:.6}",
                d.cdf(x),
                d.pdf(x),
                d.hazard(x)?,
                d.rev_hazard(x)?
            );
        }
    }
    Ok(())
}
