//! Closed forms against brute-force quadrature on seeded random parameters.

use phonon_trap::oracle::{run_suite, SuiteConfig};

fn main() -> phonon_trap::Result<()> {
    let report = run_suite(&SuiteConfig::default())?;
    for check in ["escape_n00", "escape_n22", "mass_n00", "mass_n22", "overlap_n00"] {
        println!("{check:<12} worst relative error {:.2e}", report.worst(check).unwrap_or(f64::NAN));
    }
    for e in &report.eigen {
        println!("eigensolver n={} spacing {:.2e}", e.n, (e.spacing_ratio - 1.0).abs());
    }
    println!("all within tolerance: {}", report.all_pass());
    Ok(())
}
