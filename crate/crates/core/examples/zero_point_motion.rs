//! Curved versus flat zero-point motion, and how it scales with the overtone.

use phonon_trap::cavity::{zpf, CavityGeometry, FrequencyModel, ModeIndex};
use phonon_trap::constants::HBAR;
use phonon_trap::material::MaterialParams;

fn main() -> phonon_trap::Result<()> {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let eta = 10.7;

    println!("{:>5} {:>12} {:>12} {:>9} {:>14}", "n", "x_zpf [m]", "x_flat [m]", "gain", "x p / (hbar/2)");
    for n in [1, 7, 37, 227] {
        let z = zpf(&mat, &geo, ModeIndex::new(n, 0, 0)?, eta, eta, FrequencyModel::LeadingOrder)?;
        println!(
            "{n:>5} {:>12.4e} {:>12.4e} {:>9.2} {:>14.12}",
            z.x_zpf,
            z.x_zpf_flat,
            z.x_zpf / z.x_zpf_flat,
            z.x_zpf * z.p_zpf / (HBAR / 2.0)
        );
    }
    Ok(())
}
