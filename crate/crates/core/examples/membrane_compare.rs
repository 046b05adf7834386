//! A stressed membrane of the same footprint next to the 227th overtone.

use phonon_trap::cavity::{characterize, CavityGeometry, CharacterizeOptions, ModeIndex};
use phonon_trap::material::MaterialParams;
use phonon_trap::membrane::{compare, membrane_zpf, MembraneSpec};

fn main() -> phonon_trap::Result<()> {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let cavity = characterize(&mat, &geo, ModeIndex::new(227, 0, 0)?, 0.02, CharacterizeOptions::default())?;
    let membrane = MembraneSpec::quartz_like();

    print!("{}", compare(&cavity, &membrane, 0.02)?.to_table());

    println!("\nmembrane x_zpf by mode:");
    for (m, n) in [(1, 1), (1, 2), (2, 2), (3, 3)] {
        let z = membrane_zpf(&membrane.with_mode(m, n)?);
        println!("  ({m},{n}) {:.4e} m  (hbar/2 omega m_eff: {:.4e} m)", z.x_zpf, z.x_zpf_canonical);
    }
    Ok(())
}
