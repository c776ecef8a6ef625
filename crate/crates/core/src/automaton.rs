//! State diagrams for the four statistics, encoded as data and evaluated by
//! exact dynamic programming over (length, layer, level).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::path::{StatKind, Step};
use crate::series::{TPoly, ZSeries};

/// Layer labels, named after the generating-function families `f, g, h, k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    F,
    G,
    H,
    K,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Layer::F => "F",
            Layer::G => "G",
            Layer::H => "H",
            Layer::K => "K",
        };
        f.write_str(s)
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "F" => Ok(Layer::F),
            "G" => Ok(Layer::G),
            "H" => Ok(Layer::H),
            "K" => Ok(Layer::K),
            _ => Err(format!("unknown layer `{s}`")),
        }
    }
}

/// Restriction on the source level of a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    AllLevels,
    OnlyLevelZero,
    MinSourceLevel(usize),
    ExactSourceLevel(usize),
}

impl Guard {
    fn admits(self, level: usize) -> bool {
        match self {
            Guard::AllLevels => true,
            Guard::OnlyLevelZero => level == 0,
            Guard::MinSourceLevel(k) => level >= k,
            Guard::ExactSourceLevel(k) => level == k,
        }
    }

    fn threshold(self) -> usize {
        match self {
            Guard::AllLevels | Guard::OnlyLevelZero => 0,
            Guard::MinSourceLevel(k) | Guard::ExactSourceLevel(k) => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: Layer,
    pub to: Layer,
    pub step: Step,
    pub guard: Guard,
    pub t_exponent: u8,
}

impl Transition {
    pub fn level_delta(&self) -> i64 {
        self.step.level_delta()
    }

    /// Target level when the transition fires from `level`, if it can.
    pub fn apply(&self, level: usize) -> Option<usize> {
        if !self.guard.admits(level) {
            return None;
        }
        match self.step {
            Step::U => Some(level + 1),
            Step::D => level.checked_sub(1),
            Step::H => (level == 0).then_some(0),
        }
    }
}

fn tr(from: Layer, step: Step, to: Layer) -> Transition {
    let guard = match step {
        Step::H => Guard::OnlyLevelZero,
        Step::D => Guard::MinSourceLevel(1),
        Step::U => Guard::AllLevels,
    };
    Transition {
        from,
        to,
        step,
        guard,
        t_exponent: 0,
    }
}

impl Transition {
    fn marked(mut self) -> Self {
        self.t_exponent = 1;
        self
    }

    fn guarded(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("H transition from {0} must be guarded to level 0")]
    FlatOffAxis(Layer),
    #[error("D transition from {0} may fire at level 0")]
    DescentFromAxis(Layer),
    #[error("t exponent {0} is not 0 or 1")]
    BadExponent(u8),
    #[error("transitions from {layer} on {step} overlap at level {level}")]
    Nondeterministic {
        layer: Layer,
        step: Step,
        level: usize,
    },
    #[error("layer {0} is used but not declared")]
    UnknownLayer(Layer),
    #[error("order must be at least 1")]
    ZeroOrder,
}

/// A layered automaton: layers, guarded transitions, and the weights used to
/// read closed and any-endpoint series off the DP table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonSpec {
    pub name: &'static str,
    pub layers: Vec<Layer>,
    pub transitions: Vec<Transition>,
    pub start: Layer,
    pub closed_weights: BTreeMap<Layer, TPoly>,
    pub meander_weights: BTreeMap<Layer, TPoly>,
}

impl AutomatonSpec {
    /// Checks the structural invariants, in particular that the walk is
    /// deterministic: at most one transition per (layer, step, source level).
    pub fn validate(&self) -> Result<(), AutomatonError> {
        let declared = |l: Layer| {
            if self.layers.contains(&l) {
                Ok(())
            } else {
                Err(AutomatonError::UnknownLayer(l))
            }
        };
        declared(self.start)?;
        for l in self
            .closed_weights
            .keys()
            .chain(self.meander_weights.keys())
        {
            declared(*l)?;
        }
        for t in &self.transitions {
            declared(t.from)?;
            declared(t.to)?;
            if t.t_exponent > 1 {
                return Err(AutomatonError::BadExponent(t.t_exponent));
            }
            match t.step {
                Step::H if t.guard != Guard::OnlyLevelZero => {
                    return Err(AutomatonError::FlatOffAxis(t.from));
                }
                Step::D if t.guard.admits(0) => {
                    return Err(AutomatonError::DescentFromAxis(t.from));
                }
                _ => {}
            }
        }
        // Guards are constant above their thresholds, so checking up to the
        // largest threshold plus one covers every level.
        let horizon = self
            .transitions
            .iter()
            .map(|t| t.guard.threshold())
            .max()
            .unwrap_or(0)
            + 1;
        for &layer in &self.layers {
            for step in Step::ALL {
                for level in 0..=horizon {
                    let firing = self
                        .transitions
                        .iter()
                        .filter(|t| t.from == layer && t.step == step)
                        .filter(|t| t.apply(level).is_some())
                        .count();
                    if firing > 1 {
                        return Err(AutomatonError::Nondeterministic { layer, step, level });
                    }
                }
            }
        }
        Ok(())
    }

    fn layer_index(&self, layer: Layer) -> Option<usize> {
        self.layers.iter().position(|&l| l == layer)
    }
}

pub fn weights(entries: &[(Layer, TPoly)]) -> BTreeMap<Layer, TPoly> {
    entries.iter().cloned().collect()
}

/// Weights that count every closed path exactly once with its statistic.
///
/// Differs from `closed_weights` only for the valley automaton, whose `F`
/// layer at level 0 holds just the empty path and paths ending in `H`.
pub fn all_closed_weights(kind: StatKind) -> BTreeMap<Layer, TPoly> {
    match kind {
        StatKind::Valley0 => weights(&[(Layer::F, TPoly::one()), (Layer::G, TPoly::one())]),
        _ => builtin_spec(kind).closed_weights,
    }
}

/// The automaton for each statistic.
pub fn builtin_spec(kind: StatKind) -> AutomatonSpec {
    use Layer::{F, G, H, K};
    use Step::{D as Dn, H as Fl, U as Up};
    let one = TPoly::one;
    let t = TPoly::t;
    match kind {
        // F: after a down step (or at the start); G: after exactly one up
        // step; H: after two or more up steps.
        StatKind::OneAscent => AutomatonSpec {
            name: "ascent1",
            layers: vec![F, G, H],
            transitions: vec![
                tr(F, Fl, F),
                tr(F, Up, G),
                tr(G, Up, H),
                tr(H, Up, H),
                tr(F, Dn, F),
                tr(G, Dn, F).marked(),
                tr(H, Dn, F),
            ],
            start: F,
            closed_weights: weights(&[(F, one())]),
            meander_weights: weights(&[(F, one()), (G, t()), (H, one())]),
        },
        // F: after an up step (or at the start); G: after exactly one down
        // step, with the mark still pending; H: after two or more.
        StatKind::OneDescent => AutomatonSpec {
            name: "descent1",
            layers: vec![F, G, H],
            transitions: vec![
                tr(F, Fl, F),
                tr(G, Fl, G),
                tr(H, Fl, H),
                tr(F, Up, F),
                tr(G, Up, F).marked(),
                tr(H, Up, F),
                tr(F, Dn, G),
                tr(G, Dn, H),
                tr(H, Dn, H),
            ],
            start: F,
            closed_weights: weights(&[(F, one()), (G, t()), (H, one())]),
            meander_weights: weights(&[(F, one()), (G, t()), (H, one())]),
        },
        // G: just landed on level 0 by a down step.
        StatKind::Valley0 => AutomatonSpec {
            name: "valley0",
            layers: vec![F, G],
            transitions: vec![
                tr(F, Fl, F),
                tr(G, Fl, F),
                tr(F, Up, F),
                tr(G, Up, F).marked().guarded(Guard::OnlyLevelZero),
                tr(F, Dn, G).guarded(Guard::ExactSourceLevel(1)),
                tr(F, Dn, F).guarded(Guard::MinSourceLevel(2)),
            ],
            start: F,
            closed_weights: weights(&[(F, one())]),
            meander_weights: weights(&[(F, one()), (G, one())]),
        },
        // G: after one up step; H: after two or more; K: after UUD.
        StatKind::Uudd => AutomatonSpec {
            name: "uudd4",
            layers: vec![F, G, H, K],
            transitions: vec![
                tr(F, Fl, F),
                tr(F, Up, G),
                tr(K, Up, G),
                tr(G, Up, H),
                tr(H, Up, H),
                tr(F, Dn, F),
                tr(G, Dn, F),
                tr(H, Dn, K),
                tr(K, Dn, F).marked(),
            ],
            start: F,
            closed_weights: weights(&[(F, one())]),
            meander_weights: weights(&[(F, one()), (G, one()), (H, one()), (K, one())]),
        },
    }
}

/// DP output: `entry(n, layer, level)` is the `t`-polynomial counting walks of
/// length `n` from the start state that end in `(layer, level)`.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    spec: AutomatonSpec,
    order: usize,
    // [n][layer][level], levels capped at order - 1
    entries: Vec<Vec<Vec<TPoly>>>,
    zero: TPoly,
}

impl CoeffTable {
    pub fn spec(&self) -> &AutomatonSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, n: usize, layer: Layer, level: usize) -> &TPoly {
        self.spec
            .layer_index(layer)
            .and_then(|li| self.entries.get(n)?.get(li)?.get(level))
            .unwrap_or(&self.zero)
    }

    fn weighted_sum(&self, n: usize, weights: &BTreeMap<Layer, TPoly>, levels: &[usize]) -> TPoly {
        let mut acc = TPoly::zero();
        for (&layer, w) in weights {
            for &level in levels {
                let e = self.entry(n, layer, level);
                if !e.is_zero() {
                    acc += &(w * e);
                }
            }
        }
        acc
    }

    /// `sum_L closedWeights[L] * entry(n, L, 0)`.
    pub fn closed_series(&self) -> ZSeries {
        self.closed_series_with(&self.spec.closed_weights)
    }

    /// Closed series under an alternative weight table.
    pub fn closed_series_with(&self, weights: &BTreeMap<Layer, TPoly>) -> ZSeries {
        ZSeries::new(
            (0..self.order)
                .map(|n| self.weighted_sum(n, weights, &[0]))
                .collect(),
        )
    }

    /// `sum_{L, level} meanderWeights[L] * entry(n, L, level)`.
    pub fn meander_series(&self) -> ZSeries {
        self.meander_series_with(&self.spec.meander_weights)
    }

    /// Any-endpoint series under an alternative weight table.
    pub fn meander_series_with(&self, weights: &BTreeMap<Layer, TPoly>) -> ZSeries {
        let levels: Vec<usize> = (0..self.order).collect();
        ZSeries::new(
            (0..self.order)
                .map(|n| self.weighted_sum(n, weights, &levels[..=n]))
                .collect(),
        )
    }

    /// `z^n -> entry(n, layer, j)`.
    pub fn level_series(&self, layer: Layer, j: usize) -> ZSeries {
        ZSeries::new(
            (0..self.order)
                .map(|n| self.entry(n, layer, j).clone())
                .collect(),
        )
    }
}

/// Runs the recurrence `entry(n+1, L', l') += t^e * entry(n, L, l)` over all
/// transitions for lengths `0..order`.
pub fn dp_run(spec: &AutomatonSpec, order: usize) -> Result<CoeffTable, AutomatonError> {
    if order == 0 {
        return Err(AutomatonError::ZeroOrder);
    }
    spec.validate()?;
    let layers = spec.layers.len();
    let blank = vec![vec![TPoly::zero(); order]; layers];
    let mut entries = Vec::with_capacity(order);
    let mut first = blank.clone();
    let start = spec.layer_index(spec.start).expect("validated");
    first[start][0] = TPoly::one();
    entries.push(first);
    let routes: Vec<(usize, usize, &Transition)> = spec
        .transitions
        .iter()
        .map(|t| {
            (
                spec.layer_index(t.from).expect("validated"),
                spec.layer_index(t.to).expect("validated"),
                t,
            )
        })
        .collect();
    for n in 1..order {
        let prev = &entries[n - 1];
        let mut row = blank.clone();
        for &(from, to, t) in &routes {
            // a length-(n-1) walk sits at level <= n-1
            for (level, src) in prev[from].iter().enumerate().take(n) {
                if src.is_zero() {
                    continue;
                }
                let Some(next) = t.apply(level) else { continue };
                if next >= order {
                    continue;
                }
                if t.t_exponent == 1 {
                    row[to][next] += &(src * &TPoly::t());
                } else {
                    row[to][next] += src;
                }
            }
        }
        entries.push(row);
    }
    Ok(CoeffTable {
        spec: spec.clone(),
        order,
        entries,
        zero: TPoly::zero(),
    })
}

pub fn closed_series(spec: &AutomatonSpec, order: usize) -> Result<ZSeries, AutomatonError> {
    Ok(dp_run(spec, order)?.closed_series())
}

pub fn meander_series(spec: &AutomatonSpec, order: usize) -> Result<ZSeries, AutomatonError> {
    Ok(dp_run(spec, order)?.meander_series())
}

pub fn level_series(
    spec: &AutomatonSpec,
    layer: Layer,
    j: usize,
    order: usize,
) -> Result<ZSeries, AutomatonError> {
    Ok(dp_run(spec, order)?.level_series(layer, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;

    #[test]
    fn builtin_specs_validate() {
        for kind in StatKind::ALL {
            builtin_spec(kind).validate().unwrap();
        }
        assert_eq!(builtin_spec(StatKind::OneAscent).transitions.len(), 7);
    }

    #[test]
    fn descent_has_flat_loops_everywhere() {
        let spec = builtin_spec(StatKind::OneDescent);
        for layer in [Layer::F, Layer::G, Layer::H] {
            assert!(spec
                .transitions
                .iter()
                .any(|t| t.step == Step::H && t.from == layer && t.to == layer));
        }
    }

    #[test]
    fn valley_first_step() {
        let table = dp_run(&builtin_spec(StatKind::Valley0), 4).unwrap();
        assert_eq!(table.entry(1, Layer::F, 0), &TPoly::one());
        assert_eq!(table.entry(1, Layer::F, 1), &TPoly::one());
        assert!(table.entry(1, Layer::G, 0).is_zero());
    }

    #[test]
    fn tabulated_entries() {
        let t = dp_run(&builtin_spec(StatKind::OneAscent), 8).unwrap();
        assert_eq!(t.entry(0, Layer::F, 0), &TPoly::one());
        assert_eq!(t.entry(5, Layer::F, 0), &TPoly::from_ints(&[3, 4, 3]));
        let u = dp_run(&builtin_spec(StatKind::Uudd), 8).unwrap();
        assert_eq!(u.entry(4, Layer::F, 0), &TPoly::from_ints(&[5, 1]));
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = builtin_spec(StatKind::OneAscent);
        spec.transitions.push(tr(Layer::F, Step::U, Layer::H));
        assert!(matches!(
            spec.validate(),
            Err(AutomatonError::Nondeterministic { .. })
        ));

        let mut spec = builtin_spec(StatKind::Valley0);
        spec.transitions[5].guard = Guard::MinSourceLevel(1);
        assert!(matches!(
            spec.validate(),
            Err(AutomatonError::Nondeterministic { level: 1, .. })
        ));

        let mut spec = builtin_spec(StatKind::OneAscent);
        spec.transitions[0].guard = Guard::AllLevels;
        assert_eq!(spec.validate(), Err(AutomatonError::FlatOffAxis(Layer::F)));

        let mut spec = builtin_spec(StatKind::OneAscent);
        spec.transitions[4].guard = Guard::AllLevels;
        assert_eq!(
            spec.validate(),
            Err(AutomatonError::DescentFromAxis(Layer::F))
        );

        assert!(matches!(
            dp_run(&builtin_spec(StatKind::Uudd), 0),
            Err(AutomatonError::ZeroOrder)
        ));
    }

    #[test]
    fn levels_beyond_length_are_empty() {
        for kind in StatKind::ALL {
            let spec = builtin_spec(kind);
            let table = dp_run(&spec, 12).unwrap();
            for n in 0..12 {
                for &layer in &spec.layers {
                    for level in n + 1..12 {
                        assert!(table.entry(n, layer, level).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn mass_is_shared_across_specs() {
        let reference = closed_series(&builtin_spec(StatKind::OneAscent), 20)
            .unwrap()
            .eval_t(&int(1));
        for kind in StatKind::ALL {
            let s = dp_run(&builtin_spec(kind), 20)
                .unwrap()
                .closed_series_with(&all_closed_weights(kind));
            assert_eq!(s.eval_t(&int(1)), reference);
        }
    }
}
