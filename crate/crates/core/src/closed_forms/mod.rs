//! Closed-form generating functions, evaluated as truncated series.
//!
//! Every formula is built from series primitives in the same shape as its
//! standard form (square root of the radicand, small kernel root, quotient),
//! with no algebraic pre-simplification. Work happens at a slightly higher
//! internal order because divisions by `z` consume one coefficient each;
//! results are truncated back to the requested order.

pub mod ascent;
pub mod descent;
pub mod uudd;
pub mod valley;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::automaton::Layer;
use crate::path::StatKind;
use crate::series::{Rational, SeriesError, ZSeries};

/// Extra working order to absorb valuation cancellations.
const SLACK: usize = 8;

/// The four families of generating functions, one per statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Ascent1,
    Descent1,
    Valley0,
    Uudd4,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Ascent1,
        Family::Descent1,
        Family::Valley0,
        Family::Uudd4,
    ];

    pub fn stat(self) -> StatKind {
        match self {
            Family::Ascent1 => StatKind::OneAscent,
            Family::Descent1 => StatKind::OneDescent,
            Family::Valley0 => StatKind::Valley0,
            Family::Uudd4 => StatKind::Uudd,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ascent1 => "ascent1",
            Family::Descent1 => "descent1",
            Family::Valley0 => "valley0",
            Family::Uudd4 => "uudd4",
        }
    }
}

impl From<StatKind> for Family {
    fn from(kind: StatKind) -> Self {
        match kind {
            StatKind::OneAscent => Family::Ascent1,
            StatKind::OneDescent => Family::Descent1,
            StatKind::Valley0 => Family::Valley0,
            StatKind::Uudd => Family::Uudd4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{what} has no closed form for {family}")]
    UnsupportedFamily { family: Family, what: &'static str },
    #[error("layer {layer} has no closed form for {family}")]
    UnsupportedLayer { family: Family, layer: Layer },
    #[error("level index must be at least 1")]
    LevelZero,
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("only {got} coefficients determined, {want} requested")]
    InsufficientOrder { got: usize, want: usize },
    #[error("independent routes disagree at coefficient {index}")]
    RouteMismatch { index: usize },
}

pub type Result<T> = std::result::Result<T, ClosedFormError>;

/// The radical `W` and small kernel root `r2` of one family, computed once
/// and shared by every closed form of that family.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    family: Family,
    order: usize,
    work: usize,
    w: ZSeries,
    r2: ZSeries,
}

impl ClosedForms {
    pub fn new(family: Family, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(ClosedFormError::ZeroOrder);
        }
        let work = order + SLACK;
        let w = radicand(family, work).sqrt()?;
        let r2 = match family {
            Family::Ascent1 => ascent::r2(work, &w)?,
            Family::Descent1 => descent::r2(work, &w)?,
            Family::Valley0 => valley::r2(work, &w)?,
            Family::Uudd4 => uudd::r2(work, &w)?,
        };
        Ok(ClosedForms {
            family,
            order,
            work,
            w,
            r2,
        })
    }

    /// Replaces the kernel root, e.g. to check that a corrupted root is caught.
    pub fn with_r2(mut self, r2: ZSeries) -> Self {
        self.r2 = r2;
        self
    }

    /// Transforms the kernel root at full working order.
    pub fn map_r2(mut self, f: impl FnOnce(ZSeries) -> ZSeries) -> Self {
        self.r2 = f(self.r2);
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn work(&self) -> usize {
        self.work
    }

    pub(crate) fn w_full(&self) -> &ZSeries {
        &self.w
    }

    pub(crate) fn r2_full(&self) -> &ZSeries {
        &self.r2
    }

    fn finish(&self, s: ZSeries) -> Result<ZSeries> {
        if s.order() < self.order {
            return Err(ClosedFormError::InsufficientOrder {
                got: s.order(),
                want: self.order,
            });
        }
        Ok(s.truncate(self.order))
    }

    fn unsupported<T>(&self, what: &'static str) -> Result<T> {
        Err(ClosedFormError::UnsupportedFamily {
            family: self.family,
            what,
        })
    }

    /// The polynomial under the square root.
    pub fn radicand(&self) -> Result<ZSeries> {
        self.finish(radicand(self.family, self.work))
    }

    pub fn w(&self) -> Result<ZSeries> {
        self.finish(self.w.clone())
    }

    pub fn r2(&self) -> Result<ZSeries> {
        self.finish(self.r2.clone())
    }

    /// Coefficients `(a, b, c)` of the kernel `a u^2 + b u + c`.
    pub fn kernel(&self) -> [ZSeries; 3] {
        match self.family {
            Family::Ascent1 => ascent::kernel(self.work),
            Family::Descent1 => descent::kernel(self.work),
            Family::Valley0 => valley::kernel(self.work),
            Family::Uudd4 => uudd::kernel(self.work),
        }
    }

    /// `a r2^2 + b r2 + c`; zero exactly when `r2` is a kernel root.
    pub fn kernel_residual(&self) -> ZSeries {
        let [a, b, c] = self.kernel();
        let r = &self.r2;
        let value = &(&(&a * &(r * r)) + &(&b * r)) + &c;
        value.truncate(self.order)
    }

    /// Series of closed paths (for the valley family,
    /// `f_0`: empty path plus closed paths ending with a flat step).
    pub fn closed(&self) -> Result<ZSeries> {
        let s = match self.family {
            Family::Ascent1 => ascent::f0(self)?,
            Family::Descent1 => descent::closed(self)?,
            Family::Valley0 => valley::f0(self)?,
            Family::Uudd4 => uudd::f0(self)?,
        };
        self.finish(s)
    }

    /// Series of all closed paths. Equals [`closed`](Self::closed) except for
    /// the valley family, where it is `f_0 + g_0`.
    pub fn closed_all(&self) -> Result<ZSeries> {
        match self.family {
            Family::Valley0 => {
                let f0 = valley::f0(self)?;
                let g0 = valley::g0(self)?;
                self.finish(&f0 + &g0)
            }
            _ => self.closed(),
        }
    }

    /// The independent formula for the total statistic over closed
    /// paths (`d/dt` of the closed series at `t = 1`).
    pub fn marks_closed_formula(&self) -> Result<ZSeries> {
        let s = match self.family {
            // reading paths backwards swaps 1-ascents and 1-descents, so the
            // ascent formula serves both
            Family::Ascent1 | Family::Descent1 => ascent::marks_closed(self.work)?,
            Family::Valley0 => valley::marks_closed(self)?,
            Family::Uudd4 => uudd::marks_closed(self)?,
        };
        self.finish(s)
    }

    /// Total statistic over closed paths, computed both by differentiating
    /// the closed series and from the independent formula; errors if they differ.
    pub fn marks_closed(&self) -> Result<ZSeries> {
        let derived = self.closed()?.dt_at1();
        let formula = self.marks_closed_formula()?;
        match derived.first_mismatch(&formula) {
            Some(index) => Err(ClosedFormError::RouteMismatch { index }),
            None => Ok(derived),
        }
    }

    /// Independent formula for the total statistic over all prefixes.
    pub fn marks_meander(&self) -> Result<ZSeries> {
        let s = match self.family {
            Family::Ascent1 => ascent::marks_meander(self.work)?,
            Family::Descent1 => descent::marks_meander(self.work)?,
            _ => return self.unsupported("marks-meander"),
        };
        self.finish(s)
    }

    /// Bivariate series of all prefixes, summing the per-level generating
    /// functions at `u = 1`.
    pub fn meander(&self) -> Result<ZSeries> {
        let s = match self.family {
            Family::Ascent1 => ascent::meander(self)?,
            Family::Valley0 => valley::meander(self)?,
            Family::Uudd4 => uudd::meander(self)?,
            Family::Descent1 => return self.unsupported("meander"),
        };
        self.finish(s)
    }

    /// Series of paths ending in `layer` at level `j >= 1`.
    pub fn level(&self, layer: Layer, j: usize) -> Result<ZSeries> {
        if j == 0 {
            return Err(ClosedFormError::LevelZero);
        }
        let s = match (self.family, layer) {
            (Family::Ascent1, Layer::F | Layer::G | Layer::H) => ascent::level(self, layer, j)?,
            (Family::Valley0, Layer::F) => valley::level(self, j)?,
            (Family::Ascent1 | Family::Valley0, _) => {
                return Err(ClosedFormError::UnsupportedLayer {
                    family: self.family,
                    layer,
                })
            }
            _ => return self.unsupported("level"),
        };
        self.finish(s)
    }
}

/// `[u^m] (p0 + p1 u) / (a - b u)`, expanding the denominator as a geometric
/// series in `u`. `a` must have constant term invertible.
pub(crate) fn u_coeff_over_linear(
    p0: &ZSeries,
    p1: &ZSeries,
    a: &ZSeries,
    b: &ZSeries,
    m: usize,
) -> Result<ZSeries> {
    let one = ZSeries::one(a.order());
    let a_inv = one.div(a)?;
    // p0 b^m / a^(m+1)
    let mut value = &(p0 * &b.pow(m)) * &a_inv.pow(m + 1);
    if m >= 1 {
        value = &value + &(&(p1 * &b.pow(m - 1)) * &a_inv.pow(m));
    }
    Ok(value)
}

fn radicand(family: Family, order: usize) -> ZSeries {
    match family {
        Family::Ascent1 => ascent::radicand(order),
        Family::Descent1 => descent::radicand(order),
        Family::Valley0 => valley::radicand(order),
        Family::Uudd4 => uudd::radicand(order),
    }
}

pub fn w_series(family: Family, order: usize) -> Result<ZSeries> {
    ClosedForms::new(family, order)?.w()
}

pub fn r2_series(family: Family, order: usize) -> Result<ZSeries> {
    ClosedForms::new(family, order)?.r2()
}

pub fn cf_closed(family: Family, order: usize) -> Result<ZSeries> {
    ClosedForms::new(family, order)?.closed()
}

pub fn cf_total_marks_closed(family: Family, order: usize) -> Result<ZSeries> {
    ClosedForms::new(family, order)?.marks_closed()
}

pub fn cf_total_marks_meander(family: Family, order: usize) -> Result<ZSeries> {
    ClosedForms::new(family, order)?.marks_meander()
}

pub fn cf_level(family: Family, layer: Layer, j: usize, order: usize) -> Result<ZSeries> {
    ClosedForms::new(family, order)?.level(layer, j)
}

/// `C(n, floor(n/2))`, the number of closed dispersed paths of length `n`.
pub fn central_binomial(n: usize) -> Rational {
    let n = BigInt::from(n);
    let k = &n / 2;
    Rational::from_integer(num_integer::binomial(n, k))
}

/// `sum_n C(n, floor(n/2)) z^n`.
pub fn central_binomial_series(order: usize) -> ZSeries {
    ZSeries::new((0..order).map(|n| central_binomial(n).into()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;

    #[test]
    fn central_binomials() {
        assert_eq!(central_binomial(0), int(1));
        assert_eq!(central_binomial(4), int(6));
        // 7! / (3! 4!)
        assert_eq!(central_binomial(7), int(5040 / (6 * 24)));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
            assert_eq!(Family::from(f.stat()), f);
        }
        assert!("ascent2".parse::<Family>().is_err());
    }

    #[test]
    fn unsupported_requests() {
        let cf = ClosedForms::new(Family::Uudd4, 8).unwrap();
        assert!(matches!(
            cf.marks_meander(),
            Err(ClosedFormError::UnsupportedFamily { .. })
        ));
        assert!(matches!(
            cf.level(Layer::F, 1),
            Err(ClosedFormError::UnsupportedFamily { .. })
        ));
        let cf = ClosedForms::new(Family::Valley0, 8).unwrap();
        assert!(matches!(
            cf.level(Layer::G, 1),
            Err(ClosedFormError::UnsupportedLayer { .. })
        ));
        assert_eq!(cf.level(Layer::F, 0), Err(ClosedFormError::LevelZero));
        assert!(ClosedForms::new(Family::Descent1, 8)
            .unwrap()
            .meander()
            .is_err());
        assert_eq!(
            ClosedForms::new(Family::Ascent1, 0).err(),
            Some(ClosedFormError::ZeroOrder)
        );
    }

    #[test]
    fn geometric_u_expansion() {
        // 1 / (1 - u r) has u^m coefficient r^m
        let n = 6;
        let r = ZSeries::from_ints(&[0, 1, 0, 1, 0, 0]);
        let one = ZSeries::one(n);
        let zero = ZSeries::zero(n);
        for m in 0..4 {
            let c = u_coeff_over_linear(&one, &zero, &one, &r, m).unwrap();
            assert_eq!(c, r.pow(m));
        }
    }
}
