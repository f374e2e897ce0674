//! Damped self-induced transparency and damped dynamical localization.

mod dynloc;
mod report;
mod sit;

pub use dynloc::{
    chi_from_drive, dynloc_q2, dynloc_q2_chi, dynloc_q2_numeric, dynloc_q2_numeric_chi, dynloc_report, dynloc_secular,
    dynloc_t_chi, resonant_secular, DynlocParams, DynlocReport, SecularFrequency, DEFAULT_T_CHI_TERMS,
    MIN_QUADRATURE_POINTS,
};
pub use report::{write_sweep, KeyValue, SWEEP_HEADER};
pub use sit::{
    locate_transparency, sit_final_state, sit_resonance_check, sit_run, SitReport, SitResonance, RESONANCE_TOL,
    SIT_WINDOW,
};
