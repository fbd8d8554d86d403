//! Randomized soundness audit over the registered results.
//!
//! `cargo run --example soundness_audit -- [seed] [count]`

use outlier_extremes::theorems::audit::{run_audit, AuditConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let random_scenarios = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let config = AuditConfig {
        seed,
        random_scenarios,
        include_builtins: true,
    };
    let summary = run_audit(&config).expect("audit runs");
    print!("{}", summary.render());
    if !summary.passed() {
        std::process::exit(1);
    }
}
