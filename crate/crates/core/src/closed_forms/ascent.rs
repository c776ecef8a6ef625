//! 1-ascents: three layers (after a down step, after one up step, after two
//! or more up steps).

use super::{u_coeff_over_linear, ClosedForms, Result};
use crate::automaton::Layer;
use crate::series::ZSeries;

/// `1 - 2(t+1) z^2 - (t+3)(1-t) z^4`
pub(super) fn radicand(n: usize) -> ZSeries {
    ZSeries::from_terms(n, &[(0, &[1]), (2, &[-2, -2]), (4, &[-3, 2, 1])])
}

/// Kernel `u^2 (z^3 t - z^3 - z) + u (1 + z^2 - z^2 t) - z`.
pub(super) fn kernel(n: usize) -> [ZSeries; 3] {
    [
        ZSeries::from_terms(n, &[(1, &[-1]), (3, &[-1, 1])]),
        one_plus_z2_one_minus_t(n),
        ZSeries::from_terms(n, &[(1, &[-1])]),
    ]
}

/// `1 + z^2 (1 - t)`
fn one_plus_z2_one_minus_t(n: usize) -> ZSeries {
    ZSeries::from_terms(n, &[(0, &[1]), (2, &[1, -1])])
}

/// `r2 = (1 + z^2(1-t) - W) / (2z (1 + z^2(1-t)))`
pub(super) fn r2(n: usize, w: &ZSeries) -> Result<ZSeries> {
    let b = one_plus_z2_one_minus_t(n);
    let denom = b.shift(1)?.scale_int(2);
    Ok((&b - w).div(&denom)?)
}

/// `f0 = (-1 + 2z - z^2 + z^2 t + W) / (2z (z^2 + 1 - 2z - z^3 + z^3 t - z^2 t))`
pub(super) fn f0(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let num = &ZSeries::from_terms(n, &[(0, &[-1]), (1, &[2]), (2, &[-1, 1])]) + cf.w_full();
    let denom = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-2]), (2, &[1, -1]), (3, &[-1, 1])])
        .shift(1)?
        .scale_int(2);
    Ok(num.div(&denom)?)
}

/// `z^2/(2(1-2z)) + z^2/(2(1-4z^2)^{3/2}) + z^3/(1-4z^2)^{3/2}`
pub(crate) fn marks_closed(n: usize) -> Result<ZSeries> {
    let one_minus_4z2 = ZSeries::from_terms(n, &[(0, &[1]), (2, &[-4])]);
    let three_halves = &one_minus_4z2 * &one_minus_4z2.sqrt()?;
    let z2 = ZSeries::monomial(n, 1, 2);
    let z3 = ZSeries::monomial(n, 1, 3);
    let first = z2.div(&ZSeries::from_terms(n, &[(0, &[2]), (1, &[-4])]))?;
    let second = z2.div(&three_halves.scale_int(2))?;
    let third = z3.div(&three_halves)?;
    Ok(&(&first + &second) + &third)
}

/// `z (1-z)^2 / (1-2z)^2`
pub(super) fn marks_meander(n: usize) -> Result<ZSeries> {
    let one_minus_z = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-1])]);
    let one_minus_2z = ZSeries::from_terms(n, &[(0, &[1]), (1, &[-2])]);
    let num = (&one_minus_z * &one_minus_z).shift(1)?;
    Ok(num.div(&(&one_minus_2z * &one_minus_2z))?)
}

/// `1 - z r2`, the constant part of the post-kernel denominator
/// `1 - z r2 - z u`.
fn a_factor(cf: &ClosedForms) -> ZSeries {
    let n = cf.work();
    &ZSeries::one(n) - &(&ZSeries::z(n) * cf.r2_full())
}

/// Numerator pieces `(p0, p1)` of `(p0 + p1 u) / (1 - z r2 - z u)` for the
/// per-layer generating functions `F(u)`, `G(u)`, `H(u)`.
fn post_kernel_numerator(cf: &ClosedForms, layer: Layer) -> Result<(ZSeries, ZSeries)> {
    let n = cf.work();
    let f0 = f0(cf)?;
    let a = a_factor(cf);
    let z = ZSeries::z(n);
    let zero = ZSeries::zero(n);
    Ok(match layer {
        // z^2 r2 f0
        Layer::F => (&(&ZSeries::monomial(n, 1, 2) * cf.r2_full()) * &f0, zero),
        // z (1 - z u)(1 - z r2) f0
        Layer::G => {
            let base = &(&z * &a) * &f0;
            let tail = -&(&z * &base);
            (base, tail)
        }
        // u z^2 (1 - z r2) f0
        _ => (zero, &(&ZSeries::monomial(n, 1, 2) * &a) * &f0),
    })
}

/// `[u^(j-1)]` of the post-kernel `F(u)`, `G(u)` or `H(u)`.
pub(super) fn level(cf: &ClosedForms, layer: Layer, j: usize) -> Result<ZSeries> {
    let (p0, p1) = post_kernel_numerator(cf, layer)?;
    let a = a_factor(cf);
    u_coeff_over_linear(&p0, &p1, &a, &ZSeries::z(cf.work()), j - 1)
}

/// `f0 + F(1) + t G(1) + H(1)`.
pub(super) fn meander(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let denom = &a_factor(cf) - &ZSeries::z(n);
    let at_one = |layer| -> Result<ZSeries> {
        let (p0, p1) = post_kernel_numerator(cf, layer)?;
        Ok((&p0 + &p1).div(&denom)?)
    };
    let f = at_one(Layer::F)?;
    let g = at_one(Layer::G)?;
    let h = at_one(Layer::H)?;
    Ok(&(&(&f0(cf)? + &f) + &(&ZSeries::t(n) * &g)) + &h)
}

/// `f1 = z^2 g1 / (1 - z^2 t - r2 z - r2 z^3 + r2 z^3 t)` with `g1 = z f0`,
/// the boundary relation obtained after cancelling the kernel factor.
pub fn boundary_f1(cf: &ClosedForms) -> Result<ZSeries> {
    let n = cf.work();
    let g1 = f0(cf)?.shift(1)?;
    let r2 = cf.r2_full();
    let r2_part = &ZSeries::from_terms(n, &[(1, &[-1]), (3, &[-1, 1])]) * r2;
    let denom = &ZSeries::from_terms(n, &[(0, &[1]), (2, &[0, -1])]) + &r2_part;
    let f1 = g1.shift(2)?.div(&denom)?;
    cf.finish(f1)
}
