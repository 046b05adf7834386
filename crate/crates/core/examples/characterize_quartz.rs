//! Fundamental and 227th overtone of the quartz example at 20 mK.

use phonon_trap::cavity::{characterize, CavityGeometry, CharacterizeOptions, ModeIndex};
use phonon_trap::material::MaterialParams;

fn main() -> phonon_trap::Result<()> {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();

    for n in [1, 227] {
        let c = characterize(&mat, &geo, ModeIndex::new(n, 0, 0)?, 0.02, CharacterizeOptions::default())?;
        println!("mode {}", c.mode);
        println!("  f          = {:.6} MHz", c.f_hz / 1e6);
        println!("  eta        = {:.4}", c.eta_x);
        println!("  log10 chi  = {:.1}", c.log10_chi_inv);
        println!("  xi         = {:.1}", c.xi);
        println!("  m_eff      = {:.4e} kg (flat plate {:.4e} kg)", c.m_eff, c.m_flat);
        println!("  x_zpf      = {:.4e} m (flat plate {:.4e} m)", c.x_zpf, c.x_zpf_flat);
        println!("  p_zpf      = {:.4e} kg m/s", c.p_zpf);
        println!("  n_thermal  = {:.3}", c.n_thermal);
    }
    Ok(())
}
