//! Exact expansion of the quadratic and cubic sum-of-squares certificates.

use num_rational::BigRational;
use qreal::bounds::{check_certificate, cubic_certificate, optimize_quadratic, quadratic_certificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = BigRational::from_integer(1.into());
    let x = BigRational::from_integer(2.into());
    let quad = check_certificate(&quadratic_certificate().instantiate(&t, &x)?)?;
    println!("quadratic at t=1, x=2: F <= {} (valid {})", quad.bound_exact, quad.valid);

    let opt = optimize_quadratic();
    println!("quadratic optimum: t = {:.12}, x = {:.12}, bound = {:.14}", opt.t, opt.x, opt.bound);
    println!("  Cardano form 6x = {:.14}", opt.cardano);

    let cubic = check_certificate(&cubic_certificate())?;
    println!("cubic: F <= {} = {:.15}", cubic.bound_exact, cubic.bound);
    println!("  c0 = {}, c1 = {}", cubic.c0, cubic.c1);
    println!("  residual classes {:?}, {} words", cubic.residual_class, cubic.residual.len());
    Ok(())
}
