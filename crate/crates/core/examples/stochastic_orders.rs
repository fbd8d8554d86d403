//! Every stochastic order checked between two extremes.
use outlier_extremes::baselines::Baseline;
use outlier_extremes::copula::Generator;
use outlier_extremes::extremes::{Extreme, MultipleOutlierModel};
use outlier_extremes::orders::{check_on, mean, Relation};

fn main() -> outlier_extremes::error::Result<()> {
    let g = Generator::gumbel_exp(3.0)?;
    let f = Baseline::kummer();
    let x = MultipleOutlierModel::new(g, f.clone(), f, [1.0, 4.0], [2, 2], Extreme::Max)?;
    let y = x.with_scales([2.0, 3.0])?;
    let (dx, dy) = (x.distribution(), y.distribution());
    println!("E X = {:.5}, E Y = {:.5}", mean(&dx)?, mean(&dy)?);
    for r in Relation::ALL {
        // The more spread scales give the stochastically larger maximum.
        println!("Y {} X: {}", r.symbol(), check_on(r, &dy, &dx, None, None)?);
    }
    Ok(())
}
