//! Occurrences of `UUDD`: four layers (neutral, after one up step, after two
//! or more up steps, after `UUD`).

use super::{ClosedForms, Result};
use crate::series::ZSeries;

/// `z^8 - 2z^8 t + 2z^4 + z^8 t^2 - 2z^4 t + 1 - 4z^2`
pub(super) fn radicand(n: usize) -> ZSeries {
    ZSeries::from_terms(n, &[(0, &[1]), (2, &[-4]), (4, &[2, -2]), (8, &[1, -2, 1])])
}

/// Kernel `-z^4 u + z + z^4 t u + z u^2 - u`.
pub(super) fn kernel(n: usize) -> [ZSeries; 3] {
    [
        ZSeries::z(n),
        ZSeries::from_terms(n, &[(0, &[-1]), (4, &[-1, 1])]),
        ZSeries::z(n),
    ]
}

/// `r2 = (1 + z^4 - z^4 t - W) / (2z)`
pub(super) fn r2(n: usize, w: &ZSeries) -> Result<ZSeries> {
    let num = &ZSeries::from_terms(n, &[(0, &[1]), (4, &[1, -1])]) - w;
    Ok(num.div(&ZSeries::monomial(n, 2, 1))?)
}

/// `f0 = (-z^4 - 1 + z^4 t + 2z + W) / (2z (-z^4 t + 1 - 2z + z^4))`
pub(super) fn f0(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let num = &ZSeries::from_terms(n, &[(0, &[-1]), (1, &[2]), (4, &[-1, 1])]) + cf.w_full();
    let denom = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-2]), (4, &[1, -1])])
        .shift(1)?
        .scale_int(2);
    Ok(num.div(&denom)?)
}

/// `z^4 / ((1 - 2z) sqrt(1 - 4z^2))`
pub(super) fn marks_closed(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let root = ZSeries::from_terms(n, &[(0, &[1]), (2, &[-4])]).sqrt()?;
    let denom = &ZSeries::from_terms(n, &[(0, &[1]), (1, &[-2])]) * &root;
    Ok(ZSeries::monomial(n, 1, 4).div(&denom)?)
}

/// `1 + z f0 + z^2 f0 + z^4 t f0 - f0`
fn boundary_numerator(n: usize, f0: &ZSeries) -> ZSeries {
    let coeff = ZSeries::from_terms(n, &[(0, &[-1]), (1, &[1]), (2, &[1]), (4, &[0, 1])]);
    &ZSeries::one(n) + &(&coeff * f0)
}

/// The two expressions for `f1`: the boundary relation
/// `-(1 + z f0 + z^2 f0 + z^4 t f0 - f0) / z` and the kernel-side quotient
/// `z (z^2 + z^3 f0 + 1 + z f0 - f0) / (-z^4 + z^4 t - 1 + r2 z)`.
pub fn f1_routes(cf: &ClosedForms) -> Result<(ZSeries, ZSeries)> {
    let n = cf.work();
    let f0 = f0(cf)?;
    let from_boundary = (-&boundary_numerator(n, &f0)).shift(-1)?;
    let num = &ZSeries::from_terms(n, &[(0, &[1]), (2, &[1])])
        + &(&ZSeries::from_terms(n, &[(0, &[-1]), (1, &[1]), (3, &[1])]) * &f0);
    let denom =
        &ZSeries::from_terms(n, &[(0, &[-1]), (4, &[-1, 1])]) + &(&ZSeries::z(n) * cf.r2_full());
    let from_kernel = num.shift(1)?.div(&denom)?;
    Ok((cf.finish(from_boundary)?, cf.finish(from_kernel)?))
}

/// `f0 + F(1) + G(1) + H(1) + K(1)`.
///
/// `F(1) = -N(1)/D(1)` from the functional equation for `F(u)` (its
/// denominator at `u = 1` has constant term `-1`), then
/// `G(1) = (g1 + z F(1)) (1-z) / (1 - z - z^3)`, `H(1) = z G(1) / (1-z)`,
/// `K(1) = z H(1)` with `g1 = z f0`.
pub(super) fn meander(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let f0 = f0(cf)?;
    let z = ZSeries::z(n);
    // N(u) = -z^3 u - z^4 f0 u - z u - z^2 f0 u + z u f0 + (1 + z f0 + z^2 f0 + z^4 t f0 - f0)
    let n_at_one = &(&ZSeries::from_terms(n, &[(1, &[-1]), (3, &[-1])])
        + &(&ZSeries::from_terms(n, &[(1, &[1]), (2, &[-1]), (4, &[-1])]) * &f0))
        + &boundary_numerator(n, &f0);
    // D(u) = -z^4 u + z + z^4 t u + z u^2 - u
    let d_at_one = ZSeries::from_terms(n, &[(0, &[-1]), (1, &[2]), (4, &[-1, 1])]);
    let big_f = (-&n_at_one).div(&d_at_one)?;
    let one_minus_z = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-1])]);
    let g1 = &z * &f0;
    let big_g = (&(&g1 + &(&z * &big_f)) * &one_minus_z).div(&ZSeries::from_terms(
        n,
        &[(0, &[1]), (1, &[-1]), (3, &[-1])],
    ))?;
    let big_h = (&z * &big_g).div(&one_minus_z)?;
    let big_k = &z * &big_h;
    Ok(&(&(&(&f0 + &big_f) + &big_g) + &big_h) + &big_k)
}
