//! How much of the mode leaks past the plate edge as the trapping grows.

use phonon_trap::cavity::{escape_probability, log10_escape_probability, ModeIndex};

fn main() -> phonon_trap::Result<()> {
    let ground = ModeIndex::new(1, 0, 0)?;
    let excited = ModeIndex::new(1, 2, 2)?;

    println!("{:>6} {:>14} {:>14}", "eta", "chi (1,0,0)", "chi (1,2,2)");
    for i in 1..=12 {
        let eta = 0.25 * f64::from(i);
        println!(
            "{eta:>6.2} {:>14.6e} {:>14.6e}",
            escape_probability(ground, eta, eta)?,
            escape_probability(excited, eta, eta)?
        );
    }

    // Past double-precision underflow only the logarithm survives.
    let deep = ModeIndex::new(227, 0, 0)?;
    println!(
        "\n(227,0,0) at eta = 10.7: chi = {}, log10 chi = {:.1}",
        escape_probability(deep, 10.7, 10.7)?,
        log10_escape_probability(deep, 10.7, 10.7)?
    );
    Ok(())
}
