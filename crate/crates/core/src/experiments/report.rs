use std::io::Write;

use num_complex::Complex64;

use crate::dynamics::format_value;
use crate::error::Result;

pub const SWEEP_HEADER: &str = "param,value_re,value_im";

/// Flat `key=value` rendering, one pair per line, for golden-file comparison.
pub trait KeyValue {
    fn pairs(&self) -> Vec<(String, String)>;

    fn to_key_value(&self) -> String {
        self.pairs().into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

pub(crate) fn real(key: &str, v: f64) -> (String, String) {
    (key.to_string(), format_value(v))
}

pub(crate) fn complex(key: &str, z: Complex64) -> Vec<(String, String)> {
    vec![real(&format!("{key}_re"), z.re), real(&format!("{key}_im"), z.im)]
}

/// Writes one row per scanned parameter value, in the given order.
pub fn write_sweep<W: Write>(mut out: W, rows: &[(f64, Complex64)]) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for (p, v) in rows {
        writeln!(out, "{},{},{}", format_value(*p), format_value(v.re), format_value(v.im))?;
    }
    out.flush()?;
    Ok(())
}
