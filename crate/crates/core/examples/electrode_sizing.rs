//! Smallest electrode that still collects 3 sigma of the mode, and the
//! parasitic capacitance and shunt impedance that come with it.

use phonon_trap::cavity::CavityGeometry;
use phonon_trap::detection::{electrode_design, shunt_vs_motional, MU_OPT_3SIGMA};
use phonon_trap::material::MaterialParams;

fn main() -> phonon_trap::Result<()> {
    let mat = MaterialParams::quartz_piezo_example();
    let geo = CavityGeometry::quartz_example();
    let eta = 10.7;

    println!(
        "{:>5} {:>12} {:>10} {:>12} {:>12} {:>12}",
        "n", "L_opt [mm]", "mu", "C0 [pF]", "Z_cf [kOhm]", "Z_1/wC [kOhm]"
    );
    for n in [1, 7, 37, 227] {
        let d = electrode_design(&mat, &geo, eta, n, MU_OPT_3SIGMA)?;
        println!(
            "{n:>5} {:>12.5} {:>10.6} {:>12.5} {:>12.2} {:>12.3}",
            d.l_tilde * 1e3,
            d.mu,
            d.c0 * 1e12,
            d.z_closed / 1e3,
            d.z_derived / 1e3
        );
    }

    let d = electrode_design(&mat, &geo, eta, 227, MU_OPT_3SIGMA)?;
    let cmp = shunt_vs_motional(d.z_closed)?;
    println!("\nshunt / motional = {:.0}: {}", cmp.ratio, cmp.verdict());
    Ok(())
}
