//! Recompute the quartz reference figures and judge each against its tolerance.
//! Pass `--stiffer` to raise the elastic constant by 10% and watch the frequency checks fail.

use phonon_trap::reproduction::{reproduce, ReproductionInputs};

fn main() -> phonon_trap::Result<()> {
    let mut inputs = ReproductionInputs::default();
    if std::env::args().any(|a| a == "--stiffer") {
        inputs.material = inputs.material.with_c_bar_z(inputs.material.c_bar_z * 1.1);
    }
    let report = reproduce(&inputs)?;
    println!("{report}");
    Ok(())
}
