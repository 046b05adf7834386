//! Optomechanical and piezoelectric readout gain across overtones.

use phonon_trap::cavity::{characterize, CavityGeometry, CharacterizeOptions, ModeIndex, Trapping, TrappingSource};
use phonon_trap::detection::{optomech_displacement, piezo_current_zpf, MU_OPT_3SIGMA};
use phonon_trap::material::MaterialParams;

fn main() -> phonon_trap::Result<()> {
    let mat = MaterialParams::quartz_piezo_example();
    let geo = CavityGeometry::quartz_example();
    let eta = 10.7;
    let trapping = Trapping::from_eta(eta, eta, geo.l())?;
    let options = CharacterizeOptions {
        trapping: TrappingSource::Eta(eta),
        ..Default::default()
    };

    println!("{:>5} {:>12} {:>12} {:>14} {:>12}", "n", "x_detect", "optomech", "I_rms [A]", "piezo gain");
    for n in [7, 37, 227] {
        let mode = ModeIndex::new(n, 0, 0)?;
        let c = characterize(&mat, &geo, mode, 0.02, options)?;
        let x = optomech_displacement(&c);
        let i = piezo_current_zpf(&mat, &geo, mode, trapping, MU_OPT_3SIGMA)?;
        println!(
            "{n:>5} {:>12.4e} {:>12.3} {:>14.4e} {:>12.3}",
            x.x_detect, x.gain, i.i_rms, i.gain
        );
    }

    let plain = MaterialParams::quartz_example();
    if let Err(e) = piezo_current_zpf(&plain, &geo, ModeIndex::new(1, 0, 0)?, trapping, 0.9) {
        println!("\nwithout coupling: {e}");
    }
    Ok(())
}
