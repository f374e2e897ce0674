//! Trajectory CSV: `t,Mx,My,Mz`, `t,re_xi,im_xi` or
//! `t,re_psi1,im_psi1,re_psi2,im_psi2`, 12 significant digits, LF endings.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::state::{SpinVector, StereoPoint, Vec3, WaveFunction2};

use super::integrate::Trajectory;

/// A state with a fixed CSV column layout.
pub trait CsvRow: Sized {
    const HEADER: &'static str;
    fn columns(&self) -> Vec<f64>;
    fn from_columns(cols: &[f64]) -> Self;
}

impl CsvRow for SpinVector {
    const HEADER: &'static str = "t,Mx,My,Mz";
    fn columns(&self) -> Vec<f64> {
        vec![self.x, self.y, self.z]
    }
    fn from_columns(c: &[f64]) -> Self {
        Vec3::new(c[0], c[1], c[2])
    }
}

impl CsvRow for StereoPoint {
    const HEADER: &'static str = "t,re_xi,im_xi";
    fn columns(&self) -> Vec<f64> {
        vec![self.0.re, self.0.im]
    }
    fn from_columns(c: &[f64]) -> Self {
        StereoPoint::new(c[0], c[1])
    }
}

impl CsvRow for WaveFunction2 {
    const HEADER: &'static str = "t,re_psi1,im_psi1,re_psi2,im_psi2";
    fn columns(&self) -> Vec<f64> {
        vec![self.psi1.re, self.psi1.im, self.psi2.re, self.psi2.im]
    }
    fn from_columns(c: &[f64]) -> Self {
        use num_complex::Complex64;
        WaveFunction2::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
    }
}

/// Formats with 12 significant digits in scientific notation. Negative zero
/// is written as zero.
pub fn format_value(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

pub fn write_csv<S: CsvRow, W: Write>(mut out: W, times: &[f64], states: &[S]) -> Result<()> {
    writeln!(out, "{}", S::HEADER)?;
    for (t, s) in times.iter().zip(states) {
        let mut line = format_value(*t);
        for v in s.columns() {
            line.push(',');
            line.push_str(&format_value(v));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_trajectory<S: CsvRow + Copy, W: Write>(out: W, traj: &Trajectory<S>) -> Result<()> {
    write_csv(out, &traj.times, &traj.states)
}

/// Reads a trajectory written by [`write_trajectory`]. The header must match
/// exactly; errors carry the 1-based line number. `norm_drift` is left at 0.
pub fn read_trajectory<S: CsvRow, R: BufRead>(input: R) -> Result<Trajectory<S>> {
    let width = S::HEADER.split(',').count();
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, header)) => {
            let header = header?;
            if header.trim() != S::HEADER {
                return Err(Error::Csv {
                    line: 1,
                    message: format!("expected header `{}`, found `{}`", S::HEADER, header.trim()),
                });
            }
        }
        None => return Err(Error::Csv { line: 1, message: "empty file".into() }),
    }
    let mut times = Vec::new();
    let mut states = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let values: std::result::Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let values = values.map_err(|e| Error::Csv { line: line_no, message: format!("bad number: {e}") })?;
        if values.len() != width {
            return Err(Error::Csv {
                line: line_no,
                message: format!("expected {width} columns, found {}", values.len()),
            });
        }
        if let Some(&prev) = times.last() {
            if !(values[0] > prev) {
                return Err(Error::Csv { line: line_no, message: "times must be strictly increasing".into() });
            }
        }
        times.push(values[0]);
        states.push(S::from_columns(&values[1..]));
    }
    Ok(Trajectory { times, states, norm_drift: 0.0 })
}
