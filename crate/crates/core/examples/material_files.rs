//! Reading a material file, piezoelectric stiffening and overtone dispersion.

use phonon_trap::material::{parse_material, MaterialParams};

const FILE: &str = "\
# AT-like cut with mild dispersion
rho = 2643
c_bar_z = 105e9
e_z = 0.1
eps_z = 4.06e-11
M = 262.5e9
P = 262.5e9
a_x = 1e9
kappa_x = 0.99
";

fn main() -> phonon_trap::Result<()> {
    let mat = parse_material(FILE, "inline")?;
    println!("{:>5} {:>16} {:>16} {:>16}", "n", "c_hat [Pa]", "M_n [Pa]", "P_n [Pa]");
    for n in [1, 3, 5, 7, 227] {
        let (m, p) = mat.dispersion_parameters(n)?;
        println!("{n:>5} {:>16.6e} {:>16.6e} {:>16.6e}", mat.c_hat_z(n)?, m, p);
    }

    let bad = parse_material("rho = 1\nrho = 2\n", "inline");
    println!("\nduplicate key: {}", bad.unwrap_err());

    let q = MaterialParams::quartz_example();
    println!("bundled quartz: rho = {}, c_bar_z = {:e}", q.rho, q.c_bar_z);
    Ok(())
}
