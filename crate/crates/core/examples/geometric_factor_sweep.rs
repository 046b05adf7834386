//! Geometric factor against trapping parameter for a few overtones.
//! Prints CSV ready for plotting.

use phonon_trap::cavity::{geometric_factor, ModeIndex};

fn main() -> phonon_trap::Result<()> {
    let overtones = [1, 3, 5, 15];
    print!("eta");
    for n in overtones {
        print!(",xi_n{n}");
    }
    println!();
    for i in 1..=50 {
        let eta = 0.1 * f64::from(i);
        print!("{eta:.1}");
        for n in overtones {
            print!(",{:.6e}", geometric_factor(ModeIndex::new(n, 0, 0)?, eta, eta)?);
        }
        println!();
    }
    Ok(())
}
