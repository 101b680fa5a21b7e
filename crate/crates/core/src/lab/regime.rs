use std::fmt;

use crate::error::{GmhdError, Result};

/// Known global-regularity conditions for the dissipation exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    /// α ≥ 1/2 and β ≥ 1.
    CaseI,
    /// α < 1/2 and 2α + β > 2.
    CaseII,
    /// α ≥ 2 and β = 0.
    CaseIII,
    /// α ≥ 1, β > 0 and α + β ≥ 2 (the two-dimensional form).
    WuCondition,
    /// α = 0 and β > 1, regular provided b/|b| stays in W^{2,∞}.
    Thm2Conditional,
    /// α + β ≥ 2 other than the point (0, 2).
    RemarkCombined,
}

impl Witness {
    pub fn is_proof(self) -> bool {
        matches!(
            self,
            Witness::CaseI | Witness::CaseII | Witness::CaseIII | Witness::WuCondition
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ProvenRegular,
    ConditionallyRegular,
    Open,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ProvenRegular => "ProvenRegular",
            Verdict::ConditionallyRegular => "ConditionallyRegular",
            Verdict::Open => "Open",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegimeVerdict {
    pub alpha: f64,
    pub beta: f64,
    pub verdict: Verdict,
    /// Satisfied conditions in declaration order.
    pub witnesses: Vec<Witness>,
}

impl RegimeVerdict {
    pub fn has(&self, w: Witness) -> bool {
        self.witnesses.contains(&w)
    }

    /// The point (0, 2), which the combined α + β ≥ 2 statement leaves out.
    pub fn is_combined_exception(&self) -> bool {
        self.alpha == 0.0 && self.beta == 2.0
    }
}

/// `ProvenRegular [CaseI, WuCondition]`, `Open`, or for the excluded point
/// `ConditionallyRegular [Thm2Conditional; excluded from RemarkCombined]`.
/// A proven verdict lists only the proving witnesses.
impl fmt::Display for RegimeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        let shown: Vec<&Witness> = match self.verdict {
            Verdict::ProvenRegular => self.witnesses.iter().filter(|w| w.is_proof()).collect(),
            _ => self.witnesses.iter().collect(),
        };
        if shown.is_empty() && !self.is_combined_exception() {
            return Ok(());
        }
        let names: Vec<String> = shown.iter().map(|w| format!("{w:?}")).collect();
        write!(f, " [{}", names.join(", "))?;
        if self.is_combined_exception() {
            write!(f, "; excluded from RemarkCombined")?;
        }
        write!(f, "]")
    }
}

pub fn classify_regime(alpha: f64, beta: f64) -> Result<RegimeVerdict> {
    if !(alpha >= 0.0 && beta >= 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(GmhdError::param(format!(
            "exponents must be finite and >= 0, got ({alpha}, {beta})"
        )));
    }
    let checks = [
        (Witness::CaseI, alpha >= 0.5 && beta >= 1.0),
        (Witness::CaseII, alpha < 0.5 && 2.0 * alpha + beta > 2.0),
        (Witness::CaseIII, alpha >= 2.0 && beta == 0.0),
        (Witness::WuCondition, alpha >= 1.0 && beta > 0.0 && alpha + beta >= 2.0),
        (Witness::Thm2Conditional, alpha == 0.0 && beta > 1.0),
        (
            Witness::RemarkCombined,
            alpha + beta >= 2.0 && !(alpha == 0.0 && beta == 2.0),
        ),
    ];
    let witnesses: Vec<Witness> = checks.iter().filter(|c| c.1).map(|c| c.0).collect();
    let verdict = if witnesses.iter().any(|w| w.is_proof()) {
        Verdict::ProvenRegular
    } else if witnesses.contains(&Witness::Thm2Conditional) {
        Verdict::ConditionallyRegular
    } else {
        Verdict::Open
    };
    Ok(RegimeVerdict {
        alpha,
        beta,
        verdict,
        witnesses,
    })
}
