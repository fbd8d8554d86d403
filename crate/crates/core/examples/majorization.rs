//! Majorization of expanded scale vectors.
use outlier_extremes::majorization::*;

fn main() -> outlier_extremes::error::Result<()> {
    let x = expand_outlier_vector(1.0, 4.0, 2, 3)?;
    let y = expand_outlier_vector(2.0, 3.0, 2, 3)?;
    println!("x = {x:?}\ny = {y:?}");
    println!("increasing cone: x {} y {}", in_increasing_cone(&x), in_increasing_cone(&y));
    println!("x majorizes y: {}", majorizes(&x, &y)?);
    println!("x weakly submajorizes y: {}", weakly_submajorizes(&x, &y)?);
    println!("x weakly supermajorizes y: {}", weakly_supermajorizes(&x, &y)?);
    println!("y majorizes x: {}", majorizes(&y, &x)?);
    Ok(())
}
