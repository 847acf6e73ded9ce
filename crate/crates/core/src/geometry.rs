//! Flat Minkowski spacetime: events, the interval, and causal classification.
//!
//! Coordinates are `(x_1, ..., x_{n-1}, t)`: every entry but the last is
//! spatial, the last one is time. The interval uses the space-positive
//! signature, so spacelike pairs have a positive squared interval.

use std::fmt;

use crate::error::GeometryError;

/// A point in spacetime.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    coords: Vec<f64>,
}

impl Event {
    /// Creates an event. At least one space and one time coordinate are
    /// required and all of them must be finite.
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::TooFewCoordinates(coords.len()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite { index: i });
        }
        Ok(Event { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn time(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    pub fn space(&self) -> &[f64] {
        &self.coords[..self.coords.len() - 1]
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Metric of signature `(spatial_dims, 1)` with light speed `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric {
    spatial_dims: usize,
    c: f64,
}

impl Metric {
    pub fn new(spatial_dims: usize, c: f64) -> Result<Self, GeometryError> {
        if spatial_dims == 0 {
            return Err(GeometryError::TooFewCoordinates(1));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(GeometryError::InvalidLightSpeed(c));
        }
        Ok(Metric { spatial_dims, c })
    }

    /// Metric with `c = 1`.
    pub fn with_dims(spatial_dims: usize) -> Result<Self, GeometryError> {
        Metric::new(spatial_dims, 1.0)
    }

    pub fn spatial_dims(&self) -> usize {
        self.spatial_dims
    }

    pub fn dim(&self) -> usize {
        self.spatial_dims + 1
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    fn check(&self, a: &Event, b: &Event) -> Result<(), GeometryError> {
        if a.dim() != self.dim() || b.dim() != self.dim() {
            let found = if a.dim() != self.dim() { a.dim() } else { b.dim() };
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

/// Causal relation of `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalClass {
    SpacelikeSeparated,
    /// `a` occurs before `b` for every observer.
    TimelikeBefore,
    /// `a` occurs after `b` for every observer.
    TimelikeAfter,
}

impl CausalClass {
    pub fn reversed(self) -> Self {
        match self {
            CausalClass::SpacelikeSeparated => CausalClass::SpacelikeSeparated,
            CausalClass::TimelikeBefore => CausalClass::TimelikeAfter,
            CausalClass::TimelikeAfter => CausalClass::TimelikeBefore,
        }
    }
}

/// Where an event lies relative to the light cone of another one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LightCone {
    Past,
    Future,
    Elsewhere,
}

/// Spatial and temporal parts of the interval, kept apart so callers can
/// judge cancellation.
fn interval_terms(a: &Event, b: &Event, m: &Metric) -> (f64, f64) {
    let space: f64 = a
        .space()
        .iter()
        .zip(b.space())
        .map(|(x, y)| (y - x) * (y - x))
        .sum();
    let dt = b.time() - a.time();
    (space, m.c * m.c * dt * dt)
}

/// Squared spacetime interval `Σ Δx_i² − c² Δt²`.
pub fn interval(a: &Event, b: &Event, m: &Metric) -> Result<f64, GeometryError> {
    m.check(a, b)?;
    let (space, time) = interval_terms(a, b, m);
    Ok(space - time)
}

/// Relative tolerance used to decide that an interval is exactly zero.
pub const LIGHTLIKE_RELATIVE_TOLERANCE: f64 = 1e-12;

/// Classifies the pair `(a, b)`.
///
/// Lightlike pairs of distinct events count as timelike (a light signal
/// connects them) and are ordered by coordinate time. Identical events count
/// as spacelike.
pub fn classify(a: &Event, b: &Event, m: &Metric) -> Result<CausalClass, GeometryError> {
    m.check(a, b)?;
    if a.coords == b.coords {
        return Ok(CausalClass::SpacelikeSeparated);
    }
    let (space, time) = interval_terms(a, b, m);
    let s2 = space - time;
    let tol = LIGHTLIKE_RELATIVE_TOLERANCE * space.max(time);
    if s2 > tol {
        return Ok(CausalClass::SpacelikeSeparated);
    }
    // Timelike or lightlike. A zero time difference here would need zero
    // spatial distance too, which is the identical-event case handled above.
    if b.time() > a.time() {
        Ok(CausalClass::TimelikeBefore)
    } else {
        Ok(CausalClass::TimelikeAfter)
    }
}

/// Position of `x` relative to the light cone of `e`.
pub fn light_cone_membership(e: &Event, x: &Event, m: &Metric) -> Result<LightCone, GeometryError> {
    Ok(match classify(e, x, m)? {
        CausalClass::TimelikeBefore => LightCone::Future,
        CausalClass::TimelikeAfter => LightCone::Past,
        CausalClass::SpacelikeSeparated => LightCone::Elsewhere,
    })
}
