use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// A one-parameter sweep parsed from `name=from:to:count`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scan {
    pub name: String,
    pub values: Vec<f64>,
}

impl Scan {
    pub fn parse(spec: &str, allowed: &[&str]) -> Result<Self> {
        let (name, range) =
            spec.split_once('=').ok_or_else(|| anyhow!("scan `{spec}` must look like name=from:to:count"))?;
        let name = name.trim();
        if !allowed.contains(&name) {
            bail!("cannot scan `{name}` (choose one of {})", allowed.join(", "));
        }
        let parts: Vec<&str> = range.split(':').collect();
        let [from, to, count] = parts[..] else {
            bail!("scan range `{range}` must look like from:to:count");
        };
        let from: f64 = from.trim().parse().context("bad scan start")?;
        let to: f64 = to.trim().parse().context("bad scan end")?;
        let count: usize = count.trim().parse().context("bad scan count")?;
        if count == 0 || !from.is_finite() || !to.is_finite() {
            bail!("scan needs finite bounds and at least one point");
        }
        let values = if count == 1 {
            vec![from]
        } else {
            (0..count).map(|k| from + (to - from) * k as f64 / (count - 1) as f64).collect()
        };
        Ok(Scan { name: name.to_string(), values })
    }

    /// Evaluates every point on the rayon pool; rows come back in scan order.
    pub fn run<F>(&self, point: F) -> Result<Vec<(f64, Complex64)>>
    where
        F: Fn(f64) -> Result<Complex64> + Sync,
    {
        self.values
            .par_iter()
            .map(|&v| point(v).map(|z| (v, z)).with_context(|| format!("at {}={v}", self.name)))
            .collect()
    }
}
