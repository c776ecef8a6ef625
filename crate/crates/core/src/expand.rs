//! Series selection and textual output shared by the command-line front end.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::automaton::{builtin_spec, dp_run, AutomatonError, Layer};
use crate::closed_forms::{ClosedFormError, ClosedForms, Family};
use crate::series::{Rational, ZSeries};

/// Which series of a family to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Closed,
    Meander,
    Level { j: usize, layer: Layer },
    MarksClosed,
    MarksMeander,
}

impl FromStr for Mode {
    type Err = String;

    /// `closed`, `meander`, `marks-closed`, `marks-meander`, `level:<j>` or
    /// `level:<j>:<layer>` (layer defaults to `F`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closed" => return Ok(Mode::Closed),
            "meander" => return Ok(Mode::Meander),
            "marks-closed" => return Ok(Mode::MarksClosed),
            "marks-meander" => return Ok(Mode::MarksMeander),
            _ => {}
        }
        let rest = s
            .strip_prefix("level:")
            .ok_or_else(|| format!("unknown mode `{s}`"))?;
        let (j, layer) = match rest.split_once(':') {
            Some((j, layer)) => (j, layer.parse()?),
            None => (rest, Layer::F),
        };
        let j = j.parse().map_err(|_| format!("bad level `{j}`"))?;
        Ok(Mode::Level { j, layer })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Closed => f.write_str("closed"),
            Mode::Meander => f.write_str("meander"),
            Mode::Level { j, layer } => write!(f, "level:{j}:{layer}"),
            Mode::MarksClosed => f.write_str("marks-closed"),
            Mode::MarksMeander => f.write_str("marks-meander"),
        }
    }
}

/// Where coefficients come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Source {
    /// Closed form when the family has one for the mode, otherwise the DP.
    #[default]
    Auto,
    Formula,
    Dp,
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Source::Auto),
            "formula" => Ok(Source::Formula),
            "dp" => Ok(Source::Dp),
            _ => Err(format!("unknown source `{s}`")),
        }
    }
}

/// Marker handling: keep `t` symbolic or substitute a rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TSpec {
    Keep,
    At(Rational),
}

impl FromStr for TSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "keep" {
            return Ok(TSpec::Keep);
        }
        crate::series::rational::parse(s)
            .map(TSpec::At)
            .ok_or_else(|| format!("expected `keep` or a rational, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("coefficient {index} is not an integer: {value}")]
    NonIntegerCoefficient { index: usize, value: String },
    #[error("b-files need a rational value for t")]
    SymbolicT,
}

impl ExpandError {
    /// True for requests that cannot be served as asked (as opposed to a
    /// computed value being wrong).
    pub fn is_usage(&self) -> bool {
        !matches!(self, ExpandError::NonIntegerCoefficient { .. })
    }
}

fn from_formula(family: Family, mode: Mode, order: usize) -> Result<ZSeries, ClosedFormError> {
    let cf = ClosedForms::new(family, order)?;
    match mode {
        Mode::Closed => cf.closed(),
        Mode::Meander => cf.meander(),
        Mode::Level { j, layer } => cf.level(layer, j),
        Mode::MarksClosed => cf.marks_closed(),
        Mode::MarksMeander => cf.marks_meander(),
    }
}

fn from_dp(family: Family, mode: Mode, order: usize) -> Result<ZSeries, AutomatonError> {
    let table = dp_run(&builtin_spec(family.stat()), order)?;
    Ok(match mode {
        Mode::Closed => table.closed_series(),
        Mode::Meander => table.meander_series(),
        Mode::Level { j, layer } => table.level_series(layer, j),
        Mode::MarksClosed => table.closed_series().dt_at1(),
        Mode::MarksMeander => table.meander_series().dt_at1(),
    })
}

/// The requested series to `order` coefficients.
pub fn series(
    family: Family,
    mode: Mode,
    order: usize,
    source: Source,
) -> Result<ZSeries, ExpandError> {
    match source {
        Source::Formula => Ok(from_formula(family, mode, order)?),
        Source::Dp => Ok(from_dp(family, mode, order)?),
        Source::Auto => match from_formula(family, mode, order) {
            Err(
                ClosedFormError::UnsupportedFamily { .. }
                | ClosedFormError::UnsupportedLayer { .. }
                | ClosedFormError::LevelZero,
            ) => Ok(from_dp(family, mode, order)?),
            other => Ok(other?),
        },
    }
}

fn apply_t(s: &ZSeries, t: &TSpec) -> ZSeries {
    match t {
        TSpec::Keep => s.clone(),
        TSpec::At(r) => s.eval_t(r),
    }
}

/// One line per coefficient, `n: <coefficient>`.
pub fn format_text(s: &ZSeries, t: &TSpec) -> String {
    apply_t(s, t)
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| format!("{n}: {c}\n"))
        .collect()
}

/// `{"family", "mode", "order", "coeffs"}` with each coefficient a list of
/// `p/q` strings in ascending powers of `t`.
pub fn format_json(family: Family, mode: Mode, s: &ZSeries, t: &TSpec) -> Value {
    let coeffs: Vec<Vec<String>> = apply_t(s, t)
        .coeffs()
        .iter()
        .map(|c| match t {
            TSpec::Keep => c.coeffs().iter().map(ToString::to_string).collect(),
            TSpec::At(_) => vec![c.coeff(0).to_string()],
        })
        .collect();
    json!({
        "family": family.name(),
        "mode": mode.to_string(),
        "order": s.order(),
        "coeffs": coeffs,
    })
}

/// `n a(n)` lines from `n = 0`, each newline-terminated. Every coefficient
/// must be an integer once `t` is substituted.
pub fn format_bfile(s: &ZSeries, t: &TSpec) -> Result<String, ExpandError> {
    let TSpec::At(r) = t else {
        return Err(ExpandError::SymbolicT);
    };
    let mut out = String::new();
    for (n, c) in s.eval_t(r).coeffs().iter().enumerate() {
        let value = c.coeff(0);
        if !value.is_integer() {
            return Err(ExpandError::NonIntegerCoefficient {
                index: n,
                value: value.to_string(),
            });
        }
        out.push_str(&format!("{n} {}\n", value.to_integer()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, ratio};

    #[test]
    fn parse_modes() {
        assert_eq!("closed".parse(), Ok(Mode::Closed));
        assert_eq!(
            "level:3".parse(),
            Ok(Mode::Level {
                j: 3,
                layer: Layer::F
            })
        );
        assert_eq!(
            "level:2:g".parse(),
            Ok(Mode::Level {
                j: 2,
                layer: Layer::G
            })
        );
        assert!("level:x".parse::<Mode>().is_err());
        assert!("open".parse::<Mode>().is_err());
        assert_eq!("keep".parse(), Ok(TSpec::Keep));
        assert_eq!("1/2".parse(), Ok(TSpec::At(ratio(1, 2))));
    }

    #[test]
    fn auto_falls_back_to_dp() {
        let dp = series(Family::Descent1, Mode::Meander, 10, Source::Dp).unwrap();
        let auto = series(Family::Descent1, Mode::Meander, 10, Source::Auto).unwrap();
        assert_eq!(auto, dp);
        assert!(series(Family::Descent1, Mode::Meander, 10, Source::Formula).is_err());
    }

    #[test]
    fn text_lines() {
        let s = series(Family::Ascent1, Mode::Closed, 6, Source::Auto).unwrap();
        let text = format_text(&s, &TSpec::Keep);
        assert_eq!(text.lines().nth(5), Some("5: 3 + 4*t + 3*t^2"));
        let one = series(Family::Ascent1, Mode::Closed, 1, Source::Auto).unwrap();
        assert_eq!(format_text(&one, &TSpec::Keep), "0: 1\n");
    }

    #[test]
    fn bfile_rejects_fractions() {
        let s = ZSeries::new(vec![int(1).into(), ratio(1, 2).into()]);
        assert_eq!(
            format_bfile(&s, &TSpec::At(int(1))),
            Err(ExpandError::NonIntegerCoefficient {
                index: 1,
                value: "1/2".into()
            })
        );
        assert_eq!(format_bfile(&s, &TSpec::Keep), Err(ExpandError::SymbolicT));
    }

    #[test]
    fn json_shape() {
        let s = series(Family::Uudd4, Mode::Closed, 5, Source::Auto).unwrap();
        let v = format_json(Family::Uudd4, Mode::Closed, &s, &TSpec::Keep);
        assert_eq!(v["coeffs"][4], json!(["5", "1"]));
        assert_eq!(v["order"], json!(5));
        let v = format_json(Family::Uudd4, Mode::Closed, &s, &TSpec::At(int(0)));
        assert_eq!(v["coeffs"][4], json!(["5"]));
    }
}
