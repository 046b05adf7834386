//! Finite-difference eigenmodes of the in-plane trap against the Hermite-Gaussian ladder.

use phonon_trap::cavity::CavityGeometry;
use phonon_trap::material::MaterialParams;
use phonon_trap::oracle::{eigen_checks, trap_eigensolve, EigenSolveConfig};

fn main() -> phonon_trap::Result<()> {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let config = EigenSolveConfig {
        num_eigenpairs: 5,
        ..Default::default()
    };

    let s = trap_eigensolve(&mat, &geo, 1, &config)?;
    println!("sigma = {:.4e} m, grid {} points", s.sigma, s.grid.len());
    for (j, p) in s.pairs.iter().enumerate() {
        println!(
            "  lambda_{j} / sqrt(KM) = {:.8}  ({} iterations, residual {:.1e})",
            p.lambda / s.exact_lambda(0),
            p.iterations,
            p.residual
        );
    }

    let c = eigen_checks(&mat, &geo, 1, &config)?;
    println!("spacing ratio          {:.8}", c.spacing_ratio);
    println!("curvature fit / closed {:.8}", c.curvature_fit / c.curvature_closed);
    println!("omega^2 ratio (2 vs 0) {:.8} vs {:.8}", c.bracket_ratio_numeric, c.bracket_ratio_closed);
    println!("error ratio per halving {:?}", c.refinement_ratios);
    Ok(())
}
