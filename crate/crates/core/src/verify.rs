//! Three-way verification: brute-force oracle, layered-automaton DP and
//! closed forms, plus the algebraic identities that tie them together.

use std::fmt;
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::automaton::{all_closed_weights, builtin_spec, dp_run, CoeffTable, Layer};
use crate::closed_forms::{
    ascent, central_binomial_series, descent, uudd, valley, ClosedForms, Family,
};
use crate::path::{
    enumerate, is_empty_or_ends_flat, marked_count, marked_count_where, EndClass, StatKind,
    ANY_BOUND, CLOSED_BOUND,
};
use crate::series::rational::{int, one};
use crate::series::{TPoly, ZSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// First index where the two sides differ, with both values.
    Fail {
        index: usize,
        expected: String,
        actual: String,
    },
    /// A side could not be computed at all.
    Error(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub family: Family,
    pub check: &'static str,
    pub mode: String,
    pub order: usize,
    pub status: Status,
    pub millis: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "family": self.family.name(),
            "check": self.check,
            "mode": self.mode,
            "order": self.order,
            "millis": self.millis,
        });
        match &self.status {
            Status::Pass => v["status"] = json!("pass"),
            Status::Fail {
                index,
                expected,
                actual,
            } => {
                v["status"] = json!("fail");
                v["index"] = json!(index);
                v["expected"] = json!(expected);
                v["actual"] = json!(actual);
            }
            Status::Error(msg) => {
                v["status"] = json!("error");
                v["error"] = json!(msg);
            }
        }
        v
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.status.is_pass() {
            "PASS"
        } else {
            "FAIL"
        };
        write!(
            f,
            "{tag} {} {} [{}] order={}",
            self.family.name(),
            self.check,
            self.mode,
            self.order
        )?;
        match &self.status {
            Status::Pass => {}
            Status::Fail {
                index,
                expected,
                actual,
            } => write!(f, " at z^{index}: expected {expected}, got {actual}")?,
            Status::Error(msg) => write!(f, " error: {msg}")?,
        }
        write!(f, " ({} ms)", self.millis)
    }
}

/// Rewrites a family's kernel root before any closed form is evaluated.
pub type Tamper = fn(Family, ZSeries) -> ZSeries;

#[derive(Clone, Debug)]
pub struct Config {
    pub families: Vec<Family>,
    /// Largest length checked against brute force (capped at the oracle's
    /// bound for prefixes).
    pub oracle_max: usize,
    pub order: usize,
    pub tamper: Option<Tamper>,
}

impl Config {
    pub fn new(families: Vec<Family>, oracle_max: usize, order: usize) -> Self {
        Config {
            families,
            oracle_max,
            order,
            tamper: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("oracle length {got} exceeds the enumeration bound {max}")]
    OracleTooLarge { got: usize, max: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status.is_pass())
}

/// Compares two series coefficientwise over their common order.
pub fn compare(expected: &ZSeries, actual: &ZSeries) -> Status {
    match expected.first_mismatch(actual) {
        None => Status::Pass,
        Some(index) => Status::Fail {
            index,
            expected: expected.coeffs()[index].to_string(),
            actual: actual.coeffs()[index].to_string(),
        },
    }
}

fn zero_check(s: &ZSeries) -> Status {
    compare(&ZSeries::zero(s.order()), s)
}

fn brute_series(
    upto: usize,
    f: impl Fn(usize) -> Result<TPoly, String>,
) -> Result<ZSeries, String> {
    (0..=upto)
        .map(f)
        .collect::<Result<Vec<_>, _>>()
        .map(ZSeries::new)
}

type Outcome = Result<Status, String>;

struct Runner<'a> {
    family: Family,
    order: usize,
    out: &'a mut Vec<Report>,
}

impl Runner<'_> {
    fn run(&mut self, check: &'static str, mode: impl Into<String>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let status = f().unwrap_or_else(Status::Error);
        self.out.push(Report {
            family: self.family,
            check,
            mode: mode.into(),
            order: self.order,
            status,
            millis: start.elapsed().as_millis(),
        });
    }
}

fn e(err: impl fmt::Display) -> String {
    err.to_string()
}

/// Runs every check for the configured families. Reports are sorted by
/// family, then check name.
pub fn run(config: &Config) -> Result<Vec<Report>, VerifyError> {
    if config.order == 0 {
        return Err(VerifyError::ZeroOrder);
    }
    if config.oracle_max > CLOSED_BOUND {
        return Err(VerifyError::OracleTooLarge {
            got: config.oracle_max,
            max: CLOSED_BOUND,
        });
    }
    let mut reports = Vec::new();
    for &family in &config.families {
        verify_family(family, config, &mut reports);
    }
    reports.sort_by_key(|r| (r.family, r.check));
    Ok(reports)
}

fn verify_family(family: Family, config: &Config, out: &mut Vec<Report>) {
    let order = config.order;
    let kind = family.stat();
    let mut r = Runner { family, order, out };

    let table = match dp_run(&builtin_spec(kind), order) {
        Ok(t) => t,
        Err(err) => return r.run("dp", "closed", || Err(e(err))),
    };
    let cf = match ClosedForms::new(family, order) {
        Ok(cf) => match config.tamper {
            Some(f) => cf.map_r2(|r2| f(family, r2)),
            None => cf,
        },
        Err(err) => return r.run("closed-form", "closed", || Err(e(err))),
    };

    let closed_max = config.oracle_max.min(order - 1);
    let any_max = closed_max.min(ANY_BOUND);

    r.run("oracle-closed", "closed", || {
        let brute = brute_series(closed_max, |n| {
            if family == Family::Valley0 {
                marked_count_where(n, kind, EndClass::Closed, is_empty_or_ends_flat).map_err(e)
            } else {
                marked_count(n, kind, EndClass::Closed).map_err(e)
            }
        })?;
        Ok(compare(&brute, &table.closed_series()))
    });
    if family == Family::Valley0 {
        r.run("oracle-closed-all", "closed", || {
            let brute = brute_series(closed_max, |n| {
                marked_count(n, kind, EndClass::Closed).map_err(e)
            })?;
            Ok(compare(
                &brute,
                &table.closed_series_with(&all_closed_weights(kind)),
            ))
        });
    }
    r.run("oracle-meander", "meander", || {
        let brute = brute_series(any_max, |n| marked_count(n, kind, EndClass::Any).map_err(e))?;
        Ok(compare(&brute, &table.meander_series()))
    });
    r.run("prefix-count", "meander", || {
        let counts = brute_series(any_max, |n| {
            let c = enumerate(n, EndClass::Any).map_err(e)?.count();
            Ok(TPoly::constant(int(c as i64)))
        })?;
        Ok(compare(&counts, &table.meander_series().eval_t(&one())))
    });

    r.run("dp-closed-form", "closed", || {
        Ok(compare(&table.closed_series(), &cf.closed().map_err(e)?))
    });
    if family != Family::Descent1 {
        r.run("dp-meander-form", "meander", || {
            Ok(compare(&table.meander_series(), &cf.meander().map_err(e)?))
        });
    }
    r.run("t1-central-binomial", "closed", || {
        let mass = cf.closed_all().map_err(e)?.eval_t(&one());
        Ok(compare(&central_binomial_series(order), &mass))
    });
    r.run("dt-routes", "marks-closed", || {
        let derived = cf.closed().map_err(e)?.dt_at1();
        Ok(compare(&derived, &cf.marks_closed_formula().map_err(e)?))
    });
    r.run("dt-dp", "marks-closed", || {
        Ok(compare(
            &table.closed_series().dt_at1(),
            &cf.marks_closed_formula().map_err(e)?,
        ))
    });
    if matches!(family, Family::Ascent1 | Family::Descent1) {
        r.run("marks-meander", "marks-meander", || {
            Ok(compare(
                &table.meander_series().dt_at1(),
                &cf.marks_meander().map_err(e)?,
            ))
        });
        r.run("reversal", "closed", || {
            let ascents = brute_series(closed_max, |n| {
                marked_count(n, StatKind::OneAscent, EndClass::Closed).map_err(e)
            })?;
            let descents = brute_series(closed_max, |n| {
                marked_count(n, StatKind::OneDescent, EndClass::Closed).map_err(e)
            })?;
            Ok(compare(&ascents, &descents))
        });
    }
    r.run("kernel-quadratic", "closed", || {
        Ok(zero_check(
            &cf.kernel_residual().truncate(order.saturating_sub(2)),
        ))
    });

    match family {
        Family::Ascent1 => ascent_levels(&mut r, &cf, &table),
        Family::Descent1 => r.run("boundary-relations", "level:1:F", || {
            let b = descent::boundary(&cf).map_err(e)?;
            let pairs = [
                (cf.closed().map_err(e)?, b.closed()),
                (table.level_series(Layer::F, 0), b.f0),
                (table.level_series(Layer::G, 0), b.g0),
                (table.level_series(Layer::H, 0), b.h0),
                (table.level_series(Layer::F, 1), b.f1),
                (table.level_series(Layer::G, 1), b.g1),
                (table.level_series(Layer::H, 1), b.h1),
            ];
            Ok(first_failure(pairs.iter().map(|(a, b)| compare(a, b))))
        }),
        Family::Valley0 => {
            valley_levels(&mut r, &cf, &table);
            let shift_max = closed_max.min(order.saturating_sub(2));
            r.run("shift-identity", "marks-closed", || {
                let marks = cf.closed().map_err(e)?.dt_at1();
                let brute = brute_series(shift_max, |n| {
                    let p = marked_count(n, kind, EndClass::Closed).map_err(e)?;
                    Ok(TPoly::constant(p.derivative().eval(&one())))
                })?;
                Ok(compare(&brute, &marks.shift(-1).map_err(e)?))
            });
        }
        Family::Uudd4 => r.run("f1-routes", "level:1:F", || {
            let (boundary, kernel) = uudd::f1_routes(&cf).map_err(e)?;
            let dp = table.level_series(Layer::F, 1);
            Ok(first_failure([
                compare(&boundary, &kernel),
                compare(&dp, &boundary),
            ]))
        }),
    }
}

fn first_failure(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses
        .into_iter()
        .find(|s| !s.is_pass())
        .unwrap_or(Status::Pass)
}

const LEVELS: std::ops::RangeInclusive<usize> = 1..=5;

fn ascent_levels(r: &mut Runner<'_>, cf: &ClosedForms, table: &CoeffTable) {
    for layer in [Layer::F, Layer::G, Layer::H] {
        for j in LEVELS {
            r.run("levels", format!("level:{j}:{layer}"), || {
                Ok(compare(
                    &table.level_series(layer, j),
                    &cf.level(layer, j).map_err(e)?,
                ))
            });
        }
    }
    r.run("boundary-relations", "level:1:F", || {
        Ok(compare(
            &table.level_series(Layer::F, 1),
            &ascent::boundary_f1(cf).map_err(e)?,
        ))
    });
}

fn valley_levels(r: &mut Runner<'_>, cf: &ClosedForms, table: &CoeffTable) {
    for j in LEVELS {
        r.run("levels", format!("level:{j}:F"), || {
            Ok(compare(
                &table.level_series(Layer::F, j),
                &cf.level(Layer::F, j).map_err(e)?,
            ))
        });
    }
    r.run("boundary-relations", "level:0:G", || {
        let g0 = valley::g0(cf).map_err(e)?;
        Ok(compare(&table.level_series(Layer::G, 0), &g0))
    });
    r.run("level-powers", "level:5:F", || {
        let f1 = cf.level(Layer::F, 1).map_err(e)?;
        let r2 = cf.r2().map_err(e)?;
        let statuses = LEVELS
            .map(|j| {
                Ok(compare(
                    &cf.level(Layer::F, j).map_err(e)?,
                    &(&f1 * &r2.pow(j - 1)),
                ))
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(first_failure(statuses))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_reports_first_difference() {
        let a = ZSeries::from_ints(&[1, 2, 3]);
        let b = ZSeries::from_ints(&[1, 2, 4]);
        assert_eq!(compare(&a, &a), Status::Pass);
        assert_eq!(
            compare(&a, &b),
            Status::Fail {
                index: 2,
                expected: "3".into(),
                actual: "4".into()
            }
        );
    }

    #[test]
    fn small_run_passes() {
        let reports = run(&Config::new(Family::ALL.to_vec(), 6, 10)).unwrap();
        for r in &reports {
            assert!(r.status.is_pass(), "{r}");
        }
        let keys: Vec<_> = reports.iter().map(|r| (r.family, r.check)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn rejects_bad_config() {
        assert_eq!(
            run(&Config::new(vec![Family::Uudd4], 17, 8)).unwrap_err(),
            VerifyError::OracleTooLarge { got: 17, max: 16 }
        );
        assert_eq!(
            run(&Config::new(vec![Family::Uudd4], 4, 0)).unwrap_err(),
            VerifyError::ZeroOrder
        );
    }

    #[test]
    fn failure_display_names_index() {
        let report = Report {
            family: Family::Ascent1,
            check: "kernel-quadratic",
            mode: "closed".into(),
            order: 8,
            status: Status::Fail {
                index: 3,
                expected: "0".into(),
                actual: "1".into(),
            },
            millis: 0,
        };
        assert_eq!(
            report.to_string(),
            "FAIL ascent1 kernel-quadratic [closed] order=8 at z^3: expected 0, got 1 (0 ms)"
        );
        assert_eq!(report.to_json()["index"], json!(3));
    }
}
