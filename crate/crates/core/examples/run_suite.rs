//! Runs the full verification suite for one `(k, n)` and prints the table.
//!
//! ```text
//! cargo run --release --example run_suite -- 3 2 [seed] [mutant]
//! ```

use slant_hankel::operator::Mutant;
use slant_hankel::suite::{run_suite, SuiteConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut cfg = SuiteConfig::new(k, n, seed);
    cfg.mutant = args.get(3).map(|name| {
        *Mutant::ALL
            .iter()
            .find(|m| m.name() == name)
            .expect("known mutant")
    });
    let report = run_suite(&cfg).expect("valid configuration");
    print!("{}", report.to_table());
    std::process::exit(report.exit_code());
}
