//! External fields `B(t)` and the area `f(t)` of x-polarized drives.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::state::Vec3;

/// Time-dependent applied field.
#[derive(Debug, Clone, PartialEq)]
pub enum Pulse {
    /// `(0, 0, b0)`.
    ConstantZ { b0: f64 },
    /// `(a / cosh((t - t0) / tau), 0, 0)`.
    SechX { a: f64, tau: f64, t0: f64 },
    /// `(-a cos(omega t), 0, epsilon)`.
    CosXZ { a: f64, omega: f64, epsilon: f64 },
    /// Sampled x-amplitude, linearly interpolated.
    TabulatedX(TabulatedField),
}

impl Pulse {
    pub fn constant_z(b0: f64) -> Result<Self> {
        finite("b0", b0)?;
        Ok(Pulse::ConstantZ { b0 })
    }

    pub fn sech(a: f64, tau: f64, t0: f64) -> Result<Self> {
        finite("a", a)?;
        finite("t0", t0)?;
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        Ok(Pulse::SechX { a, tau, t0 })
    }

    pub fn cos_xz(a: f64, omega: f64, epsilon: f64) -> Result<Self> {
        finite("a", a)?;
        finite("epsilon", epsilon)?;
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        Ok(Pulse::CosXZ { a, omega, epsilon })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pulse::ConstantZ { .. } => "constant-z",
            Pulse::SechX { .. } => "sech-x",
            Pulse::CosXZ { .. } => "cos-xz",
            Pulse::TabulatedX(_) => "tabulated-x",
        }
    }

    /// True for the drives that only have an x-component.
    pub fn is_x_polarized(&self) -> bool {
        matches!(self, Pulse::SechX { .. } | Pulse::TabulatedX(_))
    }

    pub fn field_at(&self, t: f64) -> Result<Vec3> {
        Ok(match *self {
            Pulse::ConstantZ { b0 } => Vec3::new(0.0, 0.0, b0),
            Pulse::SechX { a, tau, t0 } => Vec3::new(a / ((t - t0) / tau).cosh(), 0.0, 0.0),
            Pulse::CosXZ { a, omega, epsilon } => Vec3::new(-a * (omega * t).cos(), 0.0, epsilon),
            Pulse::TabulatedX(ref tab) => Vec3::new(tab.value_at(t)?, 0.0, 0.0),
        })
    }

    /// `f = integral of b(s) ds` from `from` to `to` for x-polarized drives.
    pub fn area(&self, from: f64, to: f64) -> Result<f64> {
        match *self {
            Pulse::SechX { a, tau, t0 } => {
                let prim = |t: f64| 2.0 * a * tau * ((t - t0) / (2.0 * tau)).tanh().atan();
                Ok(prim(to) - prim(from))
            }
            Pulse::TabulatedX(ref tab) => Ok(tab.primitive(to)? - tab.primitive(from)?),
            _ => Err(Error::UnsupportedPulse(self.name())),
        }
    }

    /// Same pulse with the time origin moved to `origin`, i.e. the returned
    /// pulse at time `s` equals this pulse at time `s + origin`.
    pub fn shifted(&self, origin: f64) -> Result<Pulse> {
        match *self {
            Pulse::ConstantZ { .. } => Ok(self.clone()),
            Pulse::SechX { a, tau, t0 } => Ok(Pulse::SechX { a, tau, t0: t0 - origin }),
            Pulse::TabulatedX(ref tab) => {
                let samples = tab.times.iter().zip(&tab.values).map(|(&t, &b)| (t - origin, b)).collect();
                Ok(Pulse::TabulatedX(TabulatedField::new(samples)?))
            }
            // a phase-shifted cosine is not in the catalog
            Pulse::CosXZ { .. } if origin == 0.0 => Ok(self.clone()),
            Pulse::CosXZ { .. } => Err(Error::UnsupportedPulse(self.name())),
        }
    }
}

/// Free-function form of [`Pulse::field_at`].
pub fn field_at(p: &Pulse, t: f64) -> Result<Vec3> {
    p.field_at(t)
}

/// Free-function form of [`Pulse::area`].
pub fn pulse_area(p: &Pulse, t0: f64, t: f64) -> Result<f64> {
    p.area(t0, t)
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

/// Piecewise-linear x-amplitude through `(t, b)` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedField {
    times: Vec<f64>,
    values: Vec<f64>,
    // integral of the interpolant from times[0] to times[i]
    cumulative: Vec<f64>,
}

impl TabulatedField {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParameter("a tabulated field needs at least 2 samples".into()));
        }
        if samples.iter().any(|(t, b)| !t.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidParameter("tabulated samples must be finite".into()));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidParameter("tabulated times must be strictly increasing".into()));
        }
        let (times, values): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        let mut cumulative = Vec::with_capacity(times.len());
        cumulative.push(0.0);
        for i in 1..times.len() {
            let seg = 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
            cumulative.push(cumulative[i - 1] + seg);
        }
        Ok(TabulatedField { times, values, cumulative })
    }

    /// Parse two-column `t,b` CSV. A leading non-numeric line is taken as a
    /// header; blank lines are skipped.
    pub fn from_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut samples = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
            match parsed {
                Some(v) if v.len() == 2 => samples.push((v[0], v[1])),
                None if samples.is_empty() && line_no == 1 => continue,
                _ => {
                    return Err(Error::Csv {
                        line: line_no,
                        message: format!("expected two numeric columns `t,b`, found `{trimmed}`"),
                    })
                }
            }
        }
        Self::new(samples)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    fn locate(&self, t: f64) -> Result<usize> {
        let (lo, hi) = self.range();
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfRange { t, lo, hi });
        }
        // index of the segment [times[i], times[i+1]] holding t
        let i = self.times.partition_point(|&s| s <= t);
        Ok(i.saturating_sub(1).min(self.times.len() - 2))
    }

    pub fn value_at(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        let w = (t - self.times[i]) / (self.times[i + 1] - self.times[i]);
        Ok(self.values[i] + w * (self.values[i + 1] - self.values[i]))
    }

    /// Integral of the interpolant from the first sample to `t` (exact
    /// trapezoidal rule on the samples).
    fn primitive(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        let b_t = self.value_at(t)?;
        Ok(self.cumulative[i] + 0.5 * (self.values[i] + b_t) * (t - self.times[i]))
    }
}
