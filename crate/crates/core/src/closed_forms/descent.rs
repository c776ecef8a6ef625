//! 1-descents: three layers (after an up step, after one down step, after
//! two or more down steps), with flat steps allowed in every layer.

use super::{ClosedForms, Result};
use crate::series::ZSeries;

/// `1 - 2z^2 t - 2z^2 + z^4 t^2 + 2 z^4 t - 3 z^4`
pub(super) fn radicand(n: usize) -> ZSeries {
    ZSeries::from_terms(n, &[(0, &[1]), (2, &[-2, -2]), (4, &[-3, 2, 1])])
}

/// Kernel `z^3 - u + u^2 z + u z^2 t + z - u z^2 - z^3 t`.
pub(super) fn kernel(n: usize) -> [ZSeries; 3] {
    [
        ZSeries::z(n),
        ZSeries::from_terms(n, &[(0, &[-1]), (2, &[-1, 1])]),
        ZSeries::from_terms(n, &[(1, &[1]), (3, &[1, -1])]),
    ]
}

/// `r2 = (1 + z^2 - z^2 t - W) / (2z)`
pub(super) fn r2(n: usize, w: &ZSeries) -> Result<ZSeries> {
    let num = &ZSeries::from_terms(n, &[(0, &[1]), (2, &[1, -1])]) - w;
    Ok(num.div(&ZSeries::monomial(n, 2, 1))?)
}

/// `f0 + t g0 + h0 = (1 - r2) / (1 - 2z + z^2 - z^3 - z^2 t + z^3 t)`
pub(super) fn closed(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let num = &ZSeries::one(n) - cf.r2_full();
    let denom = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-2]), (2, &[1, -1]), (3, &[-1, 1])]);
    Ok(num.div(&denom)?)
}

/// `z^2 / (2(1-2z)^2) + z^2 sqrt(1-4z^2) / (2(1-2z)^2)`
pub(super) fn marks_meander(n: usize) -> Result<ZSeries> {
    let one_minus_2z = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-2])]);
    let denom = (&one_minus_2z * &one_minus_2z).scale_int(2);
    let z2 = ZSeries::monomial(n, 1, 2);
    let root = ZSeries::from_terms(n, &[(0, &[1]), (2, &[-4])]).sqrt()?;
    Ok(&z2.div(&denom)? + &(&z2 * &root).div(&denom)?)
}

/// Boundary values of the three layers on levels 0 and 1.
#[derive(Clone, Debug)]
pub struct Boundary {
    pub f0: ZSeries,
    pub g0: ZSeries,
    pub h0: ZSeries,
    pub f1: ZSeries,
    pub g1: ZSeries,
    pub h1: ZSeries,
}

impl Boundary {
    /// `f0 + t g0 + h0`, the closed series rebuilt from the boundary values.
    pub fn closed(&self) -> ZSeries {
        let t = ZSeries::t(self.f0.order());
        &(&self.f0 + &(&t * &self.g0)) + &self.h0
    }
}

/// Boundary values from the kernel root:
///
/// `f1 = z / (1 - z + z^2 - z^2 t - z r2)`,
/// `g1 = z r2 f1 / (1 + z^2 - z^2 t)`, `g1 + h1 = (r2 - z) f1 / z`,
/// `f0 = 1/(1-z)`, `g0 = z f1/(1-z)`, `h0 = z (g1 + h1)/(1-z)`.
pub fn boundary(cf: &ClosedForms) -> Result<Boundary> {
    let n = cf.work();
    let r2 = cf.r2_full();
    let z = ZSeries::z(n);
    let one_minus_z = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-1])]);
    let f1_denom = &ZSeries::from_terms(n, &[(0, &[1]), (1, &[-1]), (2, &[1, -1])]) - &(&z * r2);
    let f1 = z.div(&f1_denom)?;
    let g1 = (&(&z * r2) * &f1).div(&ZSeries::from_terms(n, &[(0, &[1]), (2, &[1, -1])]))?;
    let g1_plus_h1 = (&(r2 - &z) * &f1).shift(-1)?;
    let h1 = &g1_plus_h1 - &g1;
    let f0 = ZSeries::one(n).div(&one_minus_z)?;
    let g0 = (&z * &f1).div(&one_minus_z)?;
    let h0 = (&z * &g1_plus_h1).div(&one_minus_z)?;
    Ok(Boundary {
        f0: cf.finish(f0)?,
        g0: cf.finish(g0)?,
        h0: cf.finish(h0)?,
        f1: cf.finish(f1)?,
        g1: cf.finish(g1)?,
        h1: cf.finish(h1)?,
    })
}
