//! Figure data for each built-in scenario, written as CSV to a temporary
//! directory.
use outlier_extremes::cli::reproduce::reproduce;
use outlier_extremes::theorems::builtin_scenarios;

fn main() -> outlier_extremes::error::Result<()> {
    let dir = std::env::temp_dir().join("outlier-extremes-figures");
    std::fs::create_dir_all(&dir)?;
    for b in builtin_scenarios() {
        let r = reproduce(&b, None, Some(&dir))?;
        println!("{}", r.summary_line());
    }
    println!("csv files in {}", dir.display());
    Ok(())
}
