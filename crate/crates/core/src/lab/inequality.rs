//! Empirical constants of interpolation inequalities over seeded corpora.

use std::fmt;

use crate::diagnostics::{derivative_tensor_magnitude, homogeneous_sobolev_norm, lp_norm};
use crate::dynamics::{initial_condition, InitialKind};
use crate::error::{GmhdError, Result};
use crate::spectral::{biot_savart, derivative, field_from_potential, Axis, PhysicalField, SpectralField};

use super::{exponents_case2, Corpus};

/// A norm of a scalar base field f on the torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Term {
    /// ‖Λ^s f‖_{L²}; s < 0 relies on the zero-mean convention.
    Lambda(f64),
    /// ‖|∇ᵐf|‖_{Lᵖ}, with |∇ᵐf| the Frobenius norm of the derivative
    /// tensor; p may be infinite.
    Grad { order: u32, p: f64 },
}

impl Term {
    /// Exponent of λ in ‖·‖ of f(λx) on the plane: derivative order − 2/p.
    pub fn scaling_weight(self) -> f64 {
        match self {
            Term::Lambda(s) => s - 1.0,
            Term::Grad { order, p } => f64::from(order) - if p.is_infinite() { 0.0 } else { 2.0 / p },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Term::Lambda(0.0) => write!(f, "|f|_2"),
            Term::Lambda(s) => write!(f, "|L^{s} f|_2"),
            Term::Grad { order: 0, p } => write!(f, "|f|_{p}"),
            Term::Grad { order, p } => write!(f, "|D^{order} f|_{p}"),
        }
    }
}

/// lhs ≤ C Π rhsᵢ^{eᵢ}, with the constant C left out.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalitySpec {
    pub name: String,
    pub lhs: Term,
    pub rhs: Vec<(Term, f64)>,
}

impl InequalitySpec {
    /// Rejects specs that are not homogeneous of degree one in f or whose
    /// two sides scale differently under dilation.
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Vec<(Term, f64)>) -> Result<Self> {
        let name = name.into();
        let degree: f64 = rhs.iter().map(|r| r.1).sum();
        if (degree - 1.0).abs() > 1e-12 {
            return Err(GmhdError::param(format!("{name}: exponents sum to {degree}, not 1")));
        }
        let right: f64 = rhs.iter().map(|(t, e)| e * t.scaling_weight()).sum();
        let left = lhs.scaling_weight();
        if (left - right).abs() > 1e-12 {
            return Err(GmhdError::param(format!(
                "{name}: scaling weights differ ({left} vs {right})"
            )));
        }
        Ok(InequalitySpec { name, lhs, rhs })
    }

    /// lhs / Π rhs^e for one field.
    pub fn ratio(&self, f: &SpectralField) -> Result<f64> {
        let mut ev = Evaluator::new(f);
        let lhs = ev.norm(self.lhs)?;
        let mut rhs = 1.0;
        for &(t, e) in &self.rhs {
            rhs *= ev.norm(t)?.powf(e);
        }
        if !(rhs > 0.0) {
            return Err(GmhdError::param(format!("{}: right side vanishes", self.name)));
        }
        Ok(lhs / rhs)
    }
}

impl fmt::Display for InequalitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} <= C", self.name, self.lhs)?;
        for (t, e) in &self.rhs {
            write!(f, " {t}^{e:.6}")?;
        }
        Ok(())
    }
}

struct Evaluator<'a> {
    f: &'a SpectralField,
    mags: Vec<Option<PhysicalField>>,
}

impl<'a> Evaluator<'a> {
    fn new(f: &'a SpectralField) -> Self {
        Evaluator { f, mags: Vec::new() }
    }

    fn norm(&mut self, t: Term) -> Result<f64> {
        match t {
            Term::Lambda(s) => Ok(homogeneous_sobolev_norm(self.f, s)),
            Term::Grad { order, p } => {
                let m = order as usize;
                if self.mags.len() <= m {
                    self.mags.resize(m + 1, None);
                }
                let f = self.f;
                let mag = self.mags[m].get_or_insert_with(|| derivative_tensor_magnitude(f, order));
                lp_norm(mag, p)
            }
        }
    }
}

/// Exponent point used for the small-α interpolations in the catalog.
pub const CASE2_PROBE: (f64, f64) = (0.4, 5.0);

/// The interpolation inequalities audited by the lab. Each is stated for
/// a scalar base field f, noted in the name: ω or j directly, the stream
/// function ψ (u = ∇⊥ψ), or the potential a (b = ∇⊥a).
pub fn catalog() -> Vec<InequalitySpec> {
    use Term::{Grad, Lambda};
    let g = |order, p| Grad { order, p };
    let ex = exponents_case2(CASE2_PROBE.0, CASE2_PROBE.1).expect("probe point is admissible");
    let (al, two_q1) = (ex.alpha, 2.0 * ex.p1 / (ex.p1 - 1.0));
    let third = 1.0 / 3.0;
    let specs = vec![
        ("j_L4", g(0, 4.0), vec![(Lambda(0.0), 0.5), (Lambda(1.0), 0.5)]),
        (
            "grad_omega_L3_half_split",
            g(1, 3.0),
            vec![(Lambda(0.5), 1.0 / 6.0), (Lambda(1.5), 5.0 / 6.0)],
        ),
        (
            "grad_omega_L3_grad_split",
            g(1, 3.0),
            vec![(Lambda(1.0), third), (Lambda(1.5), 2.0 * third)],
        ),
        (
            "omega_L3",
            g(0, 3.0),
            vec![(Lambda(0.0), 7.0 / 9.0), (Lambda(1.5), 2.0 / 9.0)],
        ),
        (
            "grad_omega_L3_three_factor",
            g(1, 3.0),
            vec![(Lambda(0.5), 1.0 / 9.0), (Lambda(1.0), 1.0 / 9.0), (Lambda(1.5), 7.0 / 9.0)],
        ),
        ("j_L4_gradient", g(0, 4.0), vec![(g(0, 2.0), 0.5), (g(1, 2.0), 0.5)]),
        ("grad_j_L4", g(1, 4.0), vec![(g(1, 2.0), 0.5), (Lambda(2.0), 0.5)]),
        (
            "grad_omega_L2q1_xi",
            g(1, two_q1),
            vec![(Lambda(al), ex.xi), (Lambda(1.0 + al), 1.0 - ex.xi)],
        ),
        (
            "grad_omega_L2q1_eta",
            g(1, two_q1),
            vec![(Lambda(1.0), ex.eta), (Lambda(1.0 + al), 1.0 - ex.eta)],
        ),
        (
            "grad_omega_L2q1_a",
            g(1, two_q1),
            vec![(Lambda(al), ex.a), (Lambda(1.0), ex.a), (Lambda(1.0 + al), 1.0 - 2.0 * ex.a)],
        ),
        (
            "omega_Lp1",
            g(0, ex.p1),
            vec![(g(0, ex.p), 1.0 - 2.0 * ex.a), (Lambda(1.0 + al), 2.0 * ex.a)],
        ),
        (
            "potential_grad_b_Linf",
            g(2, f64::INFINITY),
            vec![(Lambda(1.0), third), (Lambda(4.0), 2.0 * third)],
        ),
        (
            "j_grad_j_L4",
            g(1, 4.0),
            vec![(Lambda(-1.0), 1.0 / 6.0), (Lambda(2.0), 5.0 / 6.0)],
        ),
        (
            "stream_grad2_u_L4",
            g(3, 4.0),
            vec![(Lambda(1.0), 1.0 / 6.0), (Lambda(4.0), 5.0 / 6.0)],
        ),
        (
            "omega_grad_omega_L4",
            g(1, 4.0),
            vec![(Lambda(-1.0), 0.5), (Lambda(4.0), 0.5)],
        ),
        (
            "j_lambda_j_interp",
            Lambda(1.0),
            vec![(Lambda(-1.0), third), (Lambda(2.0), 2.0 * third)],
        ),
    ];
    specs
        .into_iter()
        .map(|(n, l, r)| InequalitySpec::new(n, l, r).expect("catalog entries are consistent"))
        .collect()
}

/// Distribution of the per-field ratios at one resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantReport {
    pub name: String,
    pub n: usize,
    pub corpus_size: usize,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub q50: f64,
    pub q90: f64,
    pub q99: f64,
}

impl ConstantReport {
    pub fn from_ratios(name: &str, n: usize, mut ratios: Vec<f64>) -> Result<Self> {
        if ratios.is_empty() || ratios.iter().any(|r| !r.is_finite()) {
            return Err(GmhdError::param(format!("{name}: empty or non-finite ratios")));
        }
        ratios.sort_by(f64::total_cmp);
        let q = |f: f64| ratios[((ratios.len() - 1) as f64 * f).round() as usize];
        Ok(ConstantReport {
            name: name.to_string(),
            n,
            corpus_size: ratios.len(),
            max_ratio: *ratios.last().expect("nonempty"),
            min_ratio: ratios[0],
            q50: q(0.5),
            q90: q(0.9),
            q99: q(0.99),
        })
    }
}

pub fn check_inequality(spec: &InequalitySpec, corpus: &Corpus) -> Result<ConstantReport> {
    let ratios = corpus.map(|_, f| spec.ratio(f))?;
    ConstantReport::from_ratios(&spec.name, corpus.grid.n(), ratios)
}

/// Largest allowed growth of the max ratio between the two finest grids.
pub const REFINEMENT_GROWTH_LIMIT: f64 = 1.05;

/// Reports for one inequality across grid sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinementStudy {
    pub name: String,
    pub reports: Vec<ConstantReport>,
}

impl RefinementStudy {
    /// max ratio on the finest grid over the max ratio on the next finest.
    pub fn growth(&self) -> f64 {
        match self.reports.as_slice() {
            [.., a, b] => b.max_ratio / a.max_ratio,
            _ => 1.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.max_ratio.is_finite() && r.max_ratio > 0.0)
            && self.growth() < REFINEMENT_GROWTH_LIMIT
    }
}

/// Runs `report` on the default corpus at each n.
pub fn refinement_study(
    name: &str,
    ns: &[usize],
    corpus_size: usize,
    report: impl Fn(&Corpus) -> Result<ConstantReport>,
) -> Result<RefinementStudy> {
    let reports = ns
        .iter()
        .map(|&n| {
            let mut c = Corpus::default_for(n)?;
            c.size = corpus_size;
            report(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RefinementStudy {
        name: name.to_string(),
        reports,
    })
}

pub const LOG_INEQUALITY_NAME: &str = "log_inequality_proxy";

/// Ratio in the logarithmic bound on ‖∇u‖_∞ with the BMO norm replaced by
/// its upper bound 2‖ω‖_∞:
///
/// ```text
/// ‖∇u‖_∞ / (1 + ‖u‖ + 2‖ω‖_∞ (1 + log(1 + ‖ω‖²_{H²} + ‖j‖²_{H²})))
/// ```
///
/// H² norms are inhomogeneous.
pub fn log_inequality_ratio(omega: &SpectralField, a: &SpectralField) -> Result<f64> {
    let vel = biot_savart(omega);
    let (u11, u12) = SpectralField::to_physical_pair(&derivative(&vel.u1, Axis::X1), &derivative(&vel.u1, Axis::X2));
    let (u21, u22) = SpectralField::to_physical_pair(&derivative(&vel.u2, Axis::X1), &derivative(&vel.u2, Axis::X2));
    let grad_u = ndarray::Zip::from(u11.values())
        .and(u12.values())
        .and(u21.values())
        .and(u22.values())
        .fold(0.0f64, |m, &a, &b, &c, &d| m.max((a * a + b * b + c * c + d * d).sqrt()));
    let u_l2 = (vel.u1.l2_norm_sq() + vel.u2.l2_norm_sq()).sqrt();
    let w_inf = lp_norm(&omega.to_physical(), f64::INFINITY)?;
    let h2 = |f: &SpectralField| {
        let s: f64 = f
            .coeffs()
            .iter()
            .zip(f.grid().k_squared().iter())
            .map(|(c, &k2)| (1.0 + k2 + k2 * k2) * c.norm_sqr())
            .sum();
        s * f.grid().area()
    };
    let j = field_from_potential(a).j;
    let rhs = 1.0 + u_l2 + 2.0 * w_inf * (1.0 + (1.0 + h2(omega) + h2(&j)).ln());
    Ok(grad_u / rhs)
}

/// The logarithmic-bound ratio over seeded random states (amplitude 1,
/// k_max and seeds from `corpus`).
pub fn log_inequality_check(corpus: &Corpus) -> Result<ConstantReport> {
    let kind = InitialKind::RandomBandLimited {
        k_max: corpus.k_max,
        amplitude: 1.0,
    };
    let ratios = corpus.map(|seed, _| {
        let s = initial_condition(&kind, &corpus.grid, seed)?;
        log_inequality_ratio(&s.omega_hat, &s.a_hat)
    })?;
    ConstantReport::from_ratios(LOG_INEQUALITY_NAME, corpus.grid.n(), ratios)
}
