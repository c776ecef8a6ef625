//! Valleys on level 0: layer `F` for general positions, layer `G` for "just
//! returned to level 0 by a down step".

use super::{u_coeff_over_linear, ClosedForms, Result};
use crate::series::ZSeries;

/// `1 - 4z^2`
pub(super) fn radicand(n: usize) -> ZSeries {
    ZSeries::from_terms(n, &[(0, &[1]), (2, &[-4])])
}

/// Kernel `z u^2 - u + z`.
pub(super) fn kernel(n: usize) -> [ZSeries; 3] {
    [ZSeries::z(n), ZSeries::constant(n, -1), ZSeries::z(n)]
}

/// `r2 = (1 - sqrt(1 - 4z^2)) / (2z)`
pub(super) fn r2(n: usize, w: &ZSeries) -> Result<ZSeries> {
    Ok((&ZSeries::one(n) - w).div(&ZSeries::monomial(n, 2, 1))?)
}

/// `f1 = z / (1 - z - z^2 t + z^3 (t-1) + z(z-1) r2)`
pub fn f1(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let poly = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-1]), (2, &[0, -1]), (3, &[-1, 1])]);
    let denom = &poly + &(&ZSeries::from_terms(n, &[(1, &[-1]), (2, &[1])]) * cf.r2_full());
    Ok(ZSeries::z(n).div(&denom)?)
}

/// `f0 = (1 + z^2 f1) / (1 - z)`
pub(super) fn f0(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let num = &ZSeries::one(n) + &f1(cf)?.shift(2)?;
    Ok(num.div(&ZSeries::from_terms(n, &[(0, &[1]), (1, &[-1])]))?)
}

/// `g0 = z f1`
pub fn g0(cf: &ClosedForms) -> Result<ZSeries> {
    Ok(f1(cf)?.shift(1)?)
}

/// `(1 - 3z^2 + (z^2 - 1) sqrt(1-4z^2)) / (2z (1 - 2z))`
pub(super) fn marks_closed(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let root = radicand(n).sqrt()?;
    let num = &ZSeries::from_terms(n, &[(0, &[1]), (2, &[-3])])
        + &(&ZSeries::from_terms(n, &[(0, &[-1]), (2, &[1])]) * &root);
    let denom = ZSeries::from_terms(n, &[(1, &[2]), (2, &[-4])]);
    Ok(num.div(&denom)?)
}

/// `f_j = [u^(j-1)] f1 / (1 - u r2) = f1 r2^(j-1)`
pub(super) fn level(cf: &ClosedForms, j: usize) -> Result<ZSeries> {
    let n = cf.work();
    u_coeff_over_linear(
        &f1(cf)?,
        &ZSeries::zero(n),
        &ZSeries::one(n),
        cf.r2_full(),
        j - 1,
    )
}

/// `f0 + g0 + F(1)` with `F(1) = f1 / (1 - r2)`.
pub(super) fn meander(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let big_f = f1(cf)?.div(&(&ZSeries::one(n) - cf.r2_full()))?;
    Ok(&(&f0(cf)? + &g0(cf)?) + &big_f)
}
