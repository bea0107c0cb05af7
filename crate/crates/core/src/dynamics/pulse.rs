use crate::error::{require_positive, CoreError, Result};
use crate::math::{sin_sq, PI};

/// Fraction of the pulse spent in each ramp for [`PulseShape::RaisedCosine`]
/// when none is given.
pub const DEFAULT_RAMP_FRACTION: f64 = 0.25;

/// Time profile of the coupling, normalised to a peak of one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseShape {
    Rectangular,
    /// `sin^2` ramps of `ramp_fraction * duration` on each side of a flat top.
    /// `ramp_fraction` lies in `(0, 0.5]`; `0.5` leaves no flat top.
    RaisedCosine {
        ramp_fraction: f64,
    },
    /// `sin^2(pi t / T)` over the whole pulse.
    FullSine,
}

impl PulseShape {
    pub fn raised_cosine() -> Self {
        PulseShape::RaisedCosine {
            ramp_fraction: DEFAULT_RAMP_FRACTION,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PulseShape::Rectangular => "rect",
            PulseShape::RaisedCosine { .. } => "cosine",
            PulseShape::FullSine => "sine2",
        }
    }

    fn validate(&self) -> Result<()> {
        if let PulseShape::RaisedCosine { ramp_fraction } = *self {
            if !(ramp_fraction > 0.0 && ramp_fraction <= 0.5) {
                return Err(CoreError::Domain {
                    name: "ramp_fraction",
                    value: ramp_fraction,
                    requirement: "must lie in (0, 0.5]",
                });
            }
        }
        Ok(())
    }

    /// Time average of the envelope over the pulse.
    pub fn mean(&self) -> f64 {
        match *self {
            PulseShape::Rectangular => 1.0,
            PulseShape::RaisedCosine { ramp_fraction } => 1.0 - ramp_fraction,
            PulseShape::FullSine => 0.5,
        }
    }
}

/// Rotation in the `|g1>, |e0>` subspace produced by a resonant pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationAngle {
    /// Full transfer, pulse area `pi / 2`.
    Swap,
    /// `2 pi` rotation returning the excitation with a `-1` phase, area `pi`.
    Phase,
}

impl RotationAngle {
    /// Required `integral g env(t) dt`.
    pub fn area(&self) -> f64 {
        match self {
            RotationAngle::Swap => PI / 2.0,
            RotationAngle::Phase => PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseEnvelope {
    shape: PulseShape,
    duration: f64,
    area_normalized: bool,
}

impl PulseEnvelope {
    /// Envelope of fixed `duration` (s), not rescaled.
    pub fn new(shape: PulseShape, duration: f64) -> Result<Self> {
        shape.validate()?;
        require_positive("pulse duration", duration)?;
        Ok(Self {
            shape,
            duration,
            area_normalized: false,
        })
    }

    /// Envelope stretched so that `integral g env dt` equals the rectangular
    /// area for `rotation` at peak coupling `g`.
    pub fn area_normalized(shape: PulseShape, g: f64, rotation: RotationAngle) -> Result<Self> {
        shape.validate()?;
        require_positive("coupling g", g)?;
        let duration = rotation.area() / (g * shape.mean());
        Ok(Self {
            shape,
            duration,
            area_normalized: true,
        })
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn is_area_normalized(&self) -> bool {
        self.area_normalized
    }

    /// `integral g env(t) dt` over the pulse.
    pub fn area(&self, g: f64) -> f64 {
        g * self.duration * self.shape.mean()
    }

    /// Envelope value at time `t`; zero outside `[0, duration]`.
    pub fn value(&self, t: f64) -> f64 {
        if !(0.0..=self.duration).contains(&t) {
            return 0.0;
        }
        match self.shape {
            PulseShape::Rectangular => 1.0,
            PulseShape::FullSine => sin_sq(PI * t / self.duration),
            PulseShape::RaisedCosine { ramp_fraction } => {
                let ramp = ramp_fraction * self.duration;
                let edge = t.min(self.duration - t);
                if edge >= ramp {
                    1.0
                } else {
                    sin_sq(PI * edge / (2.0 * ramp))
                }
            }
        }
    }
}
