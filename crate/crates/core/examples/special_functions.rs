//! The numerical building blocks on their own.

use phonon_trap::specfun::{erf, erf_inv, erfc, hermite, integrate_1d, integrate_2d, QuadratureSpec, Rect};

fn main() -> phonon_trap::Result<()> {
    for x in [0.5, 1.0, 3.0, 6.0] {
        println!("erf({x}) = {:.17}  erfc({x}) = {:.6e}", erf(x)?, erfc(x)?);
    }
    println!("erf_inv(0.9973002039) = {:.13}", erf_inv(0.997_300_203_9)?);

    for k in 0..=5 {
        println!("H_{k}(0.5) = {}", hermite(k, 0.5)?);
    }

    let spec = QuadratureSpec::default();
    let gauss = integrate_1d(|t| (-t * t).exp(), 0.0, 12.0, &spec)?;
    println!("int_0^12 exp(-t^2) dt = {gauss:.17} (sqrt(pi)/2 = {:.17})", std::f64::consts::PI.sqrt() / 2.0);
    let square = integrate_2d(|x, y| (-x * x - y * y).exp(), Rect::centered_square(1.0), &spec)?;
    println!("int over [-1,1]^2 exp(-x^2-y^2) = {square:.16}");
    Ok(())
}
