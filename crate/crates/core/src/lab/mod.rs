//! Numerical counterparts of the analytic toolbox: regime classification,
//! exponent algebra, positivity of the fractional dissipation, empirical
//! interpolation constants and the Gronwall-type bound.
//!
//! Reported constants are observations on seeded corpora; no numerical
//! value of any constant is assumed.

mod corpus;
mod exponents;
mod gronwall;
mod inequality;
mod positivity;
mod regime;
mod report;

pub use corpus::{Corpus, DEFAULT_CORPUS_SIZE};
pub use exponents::{exponents_case2, Case2Exponents};
pub use gronwall::{fit_gronwall_constant, gronwall_check, GronwallReport, GRONWALL_TOL};
pub use inequality::{
    catalog, check_inequality, log_inequality_check, log_inequality_ratio, refinement_study,
    ConstantReport, InequalitySpec, RefinementStudy, Term, CASE2_PROBE, LOG_INEQUALITY_NAME,
    REFINEMENT_GROWTH_LIMIT,
};
pub use positivity::{check_positivity, positivity_integral, PositivityReport, POSITIVITY_TOL};
pub use regime::{classify_regime, RegimeVerdict, Verdict, Witness};
pub use report::{
    constant_summary, write_constant_reports_csv, write_positivity_csv, CONSTANT_CSV_HEADER,
    POSITIVITY_CSV_HEADER,
};
