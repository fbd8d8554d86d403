use outlier_extremes::theorems::{builtin_scenarios, evaluate_theorem};

fn main() {
    for b in builtin_scenarios() {
        let report = evaluate_theorem(b.theorem, &b.scenario).expect("builtin scenario evaluates");
        println!("== {} ({})", b.id, b.description);
        println!("{report}");
    }
}
