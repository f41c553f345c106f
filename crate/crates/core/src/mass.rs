//! Basic belief assignments.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};

/// Absolute tolerance on the total mass of a valid assignment.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A sparse basic belief assignment on a frame.
///
/// Only strictly positive masses are stored, and reading a set that is not
/// stored yields zero. The `open_world` flag marks assignments that may put
/// mass on the empty set (unnormalized conjunctive results); every
/// combination rule refuses such inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    entries: BTreeMap<FocalSet, f64>,
    open_world: bool,
}

impl MassFunction {
    /// Builds a closed-world assignment and checks it with [`validate`](Self::validate).
    ///
    /// Repeated sets are summed; zero masses are dropped.
    pub fn new(frame: &Frame, entries: impl IntoIterator<Item = (FocalSet, f64)>) -> Result<Self> {
        let m = Self::unchecked(frame, entries, false)?;
        m.validate().map_err(Error::Invalid)?;
        Ok(m)
    }

    /// Builds an open-world assignment (mass on `∅` allowed) and validates it.
    pub fn new_open_world(
        frame: &Frame,
        entries: impl IntoIterator<Item = (FocalSet, f64)>,
    ) -> Result<Self> {
        let m = Self::unchecked(frame, entries, true)?;
        m.validate().map_err(Error::Invalid)?;
        Ok(m)
    }

    /// Builds an assignment without checking the mass invariants.
    ///
    /// Set widths are still checked, since a set from another frame has no
    /// meaning here. Use this to hold data that may then fail validation.
    pub fn unchecked(
        frame: &Frame,
        entries: impl IntoIterator<Item = (FocalSet, f64)>,
        open_world: bool,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (set, mass) in entries {
            if set.width() != frame.len() {
                return Err(Error::WidthMismatch {
                    expected: frame.len(),
                    found: set.width(),
                });
            }
            *map.entry(set).or_insert(0.0) += mass;
        }
        map.retain(|_, mass| *mass != 0.0);
        Ok(Self {
            frame: frame.clone(),
            entries: map,
            open_world,
        })
    }

    /// Internal constructor for combination results: the caller guarantees
    /// widths and non-negativity.
    pub(crate) fn from_accumulated(
        frame: &Frame,
        mut entries: BTreeMap<FocalSet, f64>,
        open_world: bool,
    ) -> Self {
        entries.retain(|set, mass| *mass != 0.0 && (open_world || !set.is_empty()));
        Self {
            frame: frame.clone(),
            entries,
            open_world,
        }
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            entries: BTreeMap::from([(frame.full_set(), 1.0)]),
            open_world: false,
        }
    }

    /// All mass on a single set.
    pub fn categorical(frame: &Frame, set: FocalSet) -> Result<Self> {
        Self::new(frame, [(set, 1.0)])
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn is_open_world(&self) -> bool {
        self.open_world
    }

    /// Mass of `set`; zero when the set is not focal.
    pub fn mass(&self, set: &FocalSet) -> f64 {
        self.entries.get(set).copied().unwrap_or(0.0)
    }

    /// Mass on the empty set (the conflict carried by an open-world result).
    pub fn empty_mass(&self) -> f64 {
        self.mass(&self.frame.empty_set())
    }

    /// Focal elements and their masses in deterministic set order.
    pub fn iter(&self) -> impl Iterator<Item = (&FocalSet, f64)> + '_ {
        self.entries.iter().map(|(s, m)| (s, *m))
    }

    /// Number of focal elements.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Drops the open-world flag when no mass sits on `∅`.
    pub fn into_closed_world(self) -> Result<Self> {
        if self.empty_mass() > 0.0 {
            return Err(Error::OpenWorldInput);
        }
        Ok(Self {
            open_world: false,
            ..self
        })
    }

    /// Checks every assignment invariant at [`MASS_TOLERANCE`].
    pub fn validate(&self) -> std::result::Result<(), ValidationReport> {
        let mut violations = Vec::new();
        for (set, mass) in self.iter() {
            if !mass.is_finite() {
                violations.push(Violation::NonFinite {
                    set: self.frame.display_set(set),
                    mass,
                });
            } else if mass < 0.0 {
                violations.push(Violation::Negative {
                    set: self.frame.display_set(set),
                    mass,
                });
            }
        }
        let empty = self.empty_mass();
        if !self.open_world && empty != 0.0 {
            violations.push(Violation::EmptySetMass { mass: empty });
        }
        let sum = self.total();
        if sum.is_nan() || (sum - 1.0).abs() > MASS_TOLERANCE {
            violations.push(Violation::Sum { sum });
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Validates and requires a closed-world assignment.
    pub(crate) fn ensure_closed_valid(&self) -> Result<()> {
        self.validate().map_err(Error::Invalid)?;
        if self.open_world {
            return Err(Error::OpenWorldInput);
        }
        Ok(())
    }

    /// Largest absolute entrywise difference to `other` over the union of
    /// their focal sets.
    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        let mut diff: f64 = 0.0;
        for (set, mass) in self.iter() {
            diff = diff.max((mass - other.mass(set)).abs());
        }
        for (set, mass) in other.iter() {
            diff = diff.max((mass - self.mass(set)).abs());
        }
        diff
    }
}

/// A single broken invariant, with the observed value.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Negative { set: String, mass: f64 },
    NonFinite { set: String, mass: f64 },
    EmptySetMass { mass: f64 },
    Sum { sum: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { set, mass } => write!(f, "negative mass {mass} on {set}"),
            Violation::NonFinite { set, mass } => write!(f, "non-finite mass {mass} on {set}"),
            Violation::EmptySetMass { mass } => {
                write!(
                    f,
                    "mass {mass} on the empty set of a closed-world assignment"
                )
            }
            Violation::Sum { sum } => write!(f, "masses sum to {sum}, expected 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Frame {
        Frame::new(["A", "B"]).unwrap()
    }

    #[test]
    fn valid_example_one_source() {
        let f = ab();
        let m = MassFunction::new(&f, [(f.set(["A"]).unwrap(), 0.6), (f.full_set(), 0.4)]);
        assert!(m.is_ok());
    }

    #[test]
    fn mass_deficit_is_reported() {
        let f = ab();
        let m = MassFunction::unchecked(&f, [(f.set(["A"]).unwrap(), 0.5)], false).unwrap();
        let report = m.validate().unwrap_err();
        assert_eq!(report.violations, vec![Violation::Sum { sum: 0.5 }]);
    }

    #[test]
    fn open_world_conjunctive_row_is_valid() {
        let f = ab();
        let m = MassFunction::unchecked(
            &f,
            [
                (f.empty_set(), 0.18),
                (f.set(["A"]).unwrap(), 0.42),
                (f.set(["B"]).unwrap(), 0.12),
                (f.full_set(), 0.28),
            ],
            true,
        )
        .unwrap();
        assert_eq!(m.validate(), Ok(()));

        let closed =
            MassFunction::unchecked(&f, m.iter().map(|(s, v)| (s.clone(), v)), false).unwrap();
        let report = closed.validate().unwrap_err();
        assert_eq!(
            report.violations,
            vec![Violation::EmptySetMass { mass: 0.18 }]
        );
    }

    #[test]
    fn negative_and_nan_masses() {
        let f = ab();
        let m = MassFunction::unchecked(
            &f,
            [(f.set(["A"]).unwrap(), 1.5), (f.set(["B"]).unwrap(), -0.5)],
            false,
        )
        .unwrap();
        let report = m.validate().unwrap_err();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::Negative { .. }));

        let m = MassFunction::unchecked(&f, [(f.set(["A"]).unwrap(), f64::NAN)], false).unwrap();
        assert!(m.validate().is_err());
    }

    #[test]
    fn sparse_canonical_form() {
        let f = ab();
        let a = f.set(["A"]).unwrap();
        let m = MassFunction::new(
            &f,
            [
                (a.clone(), 0.25),
                (f.set(["B"]).unwrap(), 0.0),
                (a.clone(), 0.25),
                (f.full_set(), 0.5),
            ],
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.mass(&a), 0.5);
        assert_eq!(m.mass(&f.set(["B"]).unwrap()), 0.0);
    }

    #[test]
    fn vacuous_is_valid_everywhere() {
        for n in 1..=70 {
            let f = Frame::new((0..n).map(|i| format!("h{i}"))).unwrap();
            let v = MassFunction::vacuous(&f);
            assert_eq!(v.validate(), Ok(()));
            assert_eq!(v.mass(&f.full_set()), 1.0);
            assert_eq!(v.len(), 1);
        }
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let f = ab();
        let wide = FocalSet::full(3);
        assert!(matches!(
            MassFunction::new(&f, [(wide, 1.0)]),
            Err(Error::WidthMismatch {
                expected: 2,
                found: 3
            })
        ));
    }
}
