//! Parser for the `kind:key=val,...` pulse syntax.
//!
//! ```text
//! constz:1.0            constz:b0=1.0
//! sech:a=1,tau=1,t0=0   (t0 defaults to 0)
//! cos:a=1,omega=2,epsilon=0.1
//! table:path/to/field.csv
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;

use anyhow::{anyhow, bail, Context, Result};
use spinlift::{Pulse, TabulatedField};

pub fn parse_pulse(spec: &str) -> Result<Pulse> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| anyhow!("pulse `{spec}` must look like kind:params"))?;
    let pulse = match kind {
        "constz" => {
            if let Ok(b0) = rest.trim().parse::<f64>() {
                Pulse::constant_z(b0)?
            } else {
                let mut kv = Params::parse(rest)?;
                let b0 = kv.take("b0")?;
                kv.finish()?;
                Pulse::constant_z(b0)?
            }
        }
        "sech" => {
            let mut kv = Params::parse(rest)?;
            let (a, tau) = (kv.take("a")?, kv.take("tau")?);
            let t0 = kv.take_or("t0", 0.0)?;
            kv.finish()?;
            Pulse::sech(a, tau, t0)?
        }
        "cos" => {
            let mut kv = Params::parse(rest)?;
            let (a, omega, epsilon) = (kv.take("a")?, kv.take("omega")?, kv.take("epsilon")?);
            kv.finish()?;
            Pulse::cos_xz(a, omega, epsilon)?
        }
        "table" => {
            let file = File::open(rest).with_context(|| format!("cannot open field table `{rest}`"))?;
            let table = TabulatedField::from_csv(BufReader::new(file)).with_context(|| format!("in `{rest}`"))?;
            Pulse::TabulatedX(table)
        }
        other => bail!("unknown pulse kind `{other}` (expected constz, sech, cos or table)"),
    };
    Ok(pulse)
}

struct Params(BTreeMap<String, f64>);

impl Params {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("expected key=value, found `{item}`"))?;
            let value: f64 = v.trim().parse().with_context(|| format!("bad number for `{}`", k.trim()))?;
            if map.insert(k.trim().to_string(), value).is_some() {
                bail!("parameter `{}` given twice", k.trim());
            }
        }
        Ok(Params(map))
    }

    fn take(&mut self, key: &str) -> Result<f64> {
        self.0.remove(key).ok_or_else(|| anyhow!("missing pulse parameter `{key}`"))
    }

    fn take_or(&mut self, key: &str, default: f64) -> Result<f64> {
        Ok(self.0.remove(key).unwrap_or(default))
    }

    fn finish(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => bail!("unknown pulse parameter `{k}`"),
            None => Ok(()),
        }
    }
}
