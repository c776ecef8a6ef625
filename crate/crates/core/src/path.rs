//! Brute-force ground truth: enumerate dispersed Dyck paths and count
//! statistics straight from their step-sequence definitions.

use std::fmt;

use thiserror::Error;

use crate::series::TPoly;

/// Largest closed (or fixed-endpoint) length the enumerator accepts.
pub const CLOSED_BOUND: usize = 16;
/// Largest any-endpoint length the enumerator accepts.
pub const ANY_BOUND: usize = 14;

/// A single step. Ordered `D < H < U` for lexicographic enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    D,
    H,
    U,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::D, Step::H, Step::U];

    pub fn level_delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
            Step::H => 0,
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::U),
            'D' => Some(Step::D),
            'H' => Some(Step::H),
            _ => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Step::U => "U",
            Step::D => "D",
            Step::H => "H",
        };
        f.write_str(c)
    }
}

/// The four statistics the crate tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatKind {
    /// Maximal runs of `U` of length exactly one.
    OneAscent,
    /// Maximal runs of `D` of length exactly one.
    OneDescent,
    /// A `D` landing on level 0 immediately followed by `U`.
    Valley0,
    /// Occurrences of the factor `UUDD`.
    Uudd,
}

impl StatKind {
    pub const ALL: [StatKind; 4] = [
        StatKind::OneAscent,
        StatKind::OneDescent,
        StatKind::Valley0,
        StatKind::Uudd,
    ];
}

/// Where a path is allowed to end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndClass {
    Closed,
    AtLevel(usize),
    Any,
}

impl EndClass {
    fn target(self) -> Option<usize> {
        match self {
            EndClass::Closed => Some(0),
            EndClass::AtLevel(j) => Some(j),
            EndClass::Any => None,
        }
    }

    pub fn bound(self) -> usize {
        match self {
            EndClass::Any => ANY_BOUND,
            _ => CLOSED_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("length {n} exceeds the enumeration bound {max}")]
    LengthTooLarge { n: usize, max: usize },
    #[error("invalid step sequence")]
    Invalid,
}

/// A step sequence that stays weakly above the axis and only uses `H` on
/// level 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DispersedPath(Vec<Step>);

impl DispersedPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        if path_is_valid(&steps) {
            Ok(DispersedPath(steps))
        } else {
            Err(PathError::Invalid)
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn final_level(&self) -> usize {
        self.0.iter().map(|s| s.level_delta()).sum::<i64>() as usize
    }

    pub fn reversed(&self) -> Option<DispersedPath> {
        let steps = self
            .0
            .iter()
            .rev()
            .map(|s| match s {
                Step::U => Step::D,
                Step::D => Step::U,
                Step::H => Step::H,
            })
            .collect();
        DispersedPath::new(steps).ok()
    }
}

impl std::str::FromStr for DispersedPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .chars()
            .map(Step::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or(PathError::Invalid)?;
        DispersedPath::new(steps)
    }
}

impl fmt::Display for DispersedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

pub fn path_is_valid(steps: &[Step]) -> bool {
    let mut level = 0i64;
    for &step in steps {
        if step == Step::H && level != 0 {
            return false;
        }
        level += step.level_delta();
        if level < 0 {
            return false;
        }
    }
    true
}

/// Depth-first enumerator yielding paths in lexicographic order.
pub struct Paths {
    len: usize,
    target: Option<usize>,
    steps: Vec<Step>,
    // next step to try at each depth
    cursor: Vec<usize>,
    level: Vec<usize>,
    done: bool,
}

impl Paths {
    fn new(len: usize, target: Option<usize>) -> Self {
        Paths {
            len,
            target,
            steps: Vec::with_capacity(len),
            cursor: vec![0],
            level: vec![0],
            // the empty path only ends on level 0
            done: len == 0 && target.is_some_and(|j| j != 0),
        }
    }

    fn admissible(&self, step: Step, level: usize) -> Option<usize> {
        let next = match step {
            Step::U => level + 1,
            Step::D => level.checked_sub(1)?,
            Step::H if level == 0 => 0,
            Step::H => return None,
        };
        let remaining = self.len - self.steps.len() - 1;
        if let Some(target) = self.target {
            if next.abs_diff(target) > remaining {
                return None;
            }
        }
        Some(next)
    }
}

impl Iterator for Paths {
    type Item = DispersedPath;

    fn next(&mut self) -> Option<DispersedPath> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.steps.len();
            if depth == self.len {
                let path = DispersedPath(self.steps.clone());
                // backtrack for the following call
                self.cursor.pop();
                self.level.pop();
                if self.steps.pop().is_none() {
                    self.done = true;
                }
                return Some(path);
            }
            let level = self.level[depth];
            let mut advanced = false;
            while self.cursor[depth] < Step::ALL.len() {
                let step = Step::ALL[self.cursor[depth]];
                self.cursor[depth] += 1;
                if let Some(next) = self.admissible(step, level) {
                    self.steps.push(step);
                    self.cursor.push(0);
                    self.level.push(next);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                self.cursor.pop();
                self.level.pop();
                if self.steps.pop().is_none() {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// Every valid path of length `n` in the end class, each exactly once, in
/// lexicographic order `D < H < U`.
pub fn enumerate(n: usize, end: EndClass) -> Result<Paths, PathError> {
    let max = end.bound();
    if n > max {
        return Err(PathError::LengthTooLarge { n, max });
    }
    Ok(Paths::new(n, end.target()))
}

fn runs_of_length_one(steps: &[Step], kind: Step) -> usize {
    let mut count = 0;
    let mut run = 0;
    for &s in steps {
        if s == kind {
            run += 1;
        } else {
            if run == 1 {
                count += 1;
            }
            run = 0;
        }
    }
    if run == 1 {
        count += 1;
    }
    count
}

pub fn stat_count(path: &DispersedPath, kind: StatKind) -> usize {
    let steps = path.steps();
    match kind {
        StatKind::OneAscent => runs_of_length_one(steps, Step::U),
        StatKind::OneDescent => runs_of_length_one(steps, Step::D),
        StatKind::Valley0 => {
            let mut level = 0i64;
            let mut count = 0;
            for (i, &s) in steps.iter().enumerate() {
                level += s.level_delta();
                if s == Step::D && level == 0 && steps.get(i + 1) == Some(&Step::U) {
                    count += 1;
                }
            }
            count
        }
        StatKind::Uudd => steps
            .windows(4)
            .filter(|w| *w == [Step::U, Step::U, Step::D, Step::D])
            .count(),
    }
}

/// `sum over paths of t^stat(path)`.
pub fn marked_count(n: usize, kind: StatKind, end: EndClass) -> Result<TPoly, PathError> {
    marked_count_where(n, kind, end, |_| true)
}

/// [`marked_count`] restricted to the paths accepted by `keep`.
pub fn marked_count_where(
    n: usize,
    kind: StatKind,
    end: EndClass,
    keep: impl Fn(&DispersedPath) -> bool,
) -> Result<TPoly, PathError> {
    let mut counts: Vec<i64> = Vec::new();
    for path in enumerate(n, end)?.filter(|p| keep(p)) {
        let k = stat_count(&path, kind);
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
    }
    Ok(TPoly::from_ints(&counts))
}

/// True for the empty path and for paths whose last step is `H`: the
/// closed paths that the valley automaton's `f_0` counts.
pub fn is_empty_or_ends_flat(path: &DispersedPath) -> bool {
    path.steps().last().is_none_or(|&s| s == Step::H)
}
