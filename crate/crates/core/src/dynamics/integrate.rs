use ndarray::{Array2, Zip};
use num_complex::Complex64;

use super::rhs::{nonlinear_terms, LinearRates};
use super::{GmhdState, Params};
use crate::diagnostics::{DiagnosticsConfig, DiagnosticsRecord, RecordBuilder};
use crate::error::{GmhdError, Result};
use crate::spectral::{biot_savart, field_from_potential, Grid, SpectralField};

/// Floor on the transport speed in the CFL bound.
pub const SPEED_FLOOR: f64 = 1e-8;

/// Integrating-factor RK4 (Lawson) stepper.
///
/// The diagonal dissipation is propagated exactly through exp(-rate·dt);
/// classical RK4 handles the nonlinear terms in the rotated variables.
/// Exponential tables are cached for the last step size used.
pub struct IfRk4 {
    rates: LinearRates,
    cache: Option<ExpCache>,
}

struct ExpCache {
    dt: f64,
    full: [Array2<f64>; 2],
    half: [Array2<f64>; 2],
}

impl IfRk4 {
    pub fn new(grid: &Grid, params: &Params) -> Self {
        IfRk4 {
            rates: LinearRates::new(grid, params),
            cache: None,
        }
    }

    pub fn rates(&self) -> &LinearRates {
        &self.rates
    }

    fn exps(&mut self, dt: f64) -> &ExpCache {
        if self.cache.as_ref().map(|c| c.dt) != Some(dt) {
            let e = |r: &Array2<f64>, h: f64| r.mapv(|r| (-r * h).exp());
            self.cache = Some(ExpCache {
                dt,
                full: [e(&self.rates.omega, dt), e(&self.rates.a, dt)],
                half: [e(&self.rates.omega, 0.5 * dt), e(&self.rates.a, 0.5 * dt)],
            });
        }
        self.cache.as_ref().expect("cache filled above")
    }

    /// Advances `state` by `dt`. A non-finite result is reported as
    /// [`GmhdError::BlowUp`] carrying `state`.
    pub fn step(&mut self, state: &GmhdState, dt: f64) -> Result<GmhdState> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(GmhdError::param(format!("time step must be positive, got {dt}")));
        }
        if !state.is_finite() {
            return Err(GmhdError::BlowUp {
                t: state.t,
                last_valid: None,
            });
        }
        let grid = state.grid().clone();
        let ex = self.exps(dt);
        let w = [state.omega_hat.coeffs(), state.a_hat.coeffs()];
        let h = 0.5 * dt;

        let eval = |f: &[Array2<Complex64>; 2]| {
            let t = nonlinear_terms(
                &SpectralField::from_raw(&grid, f[0].clone()),
                &SpectralField::from_raw(&grid, f[1].clone()),
            );
            [t.d_omega.coeffs().clone(), t.d_a.coeffs().clone()]
        };
        let map2 = |f: &dyn Fn(usize) -> Array2<Complex64>| [f(0), f(1)];

        let k1 = eval(&[w[0].clone(), w[1].clone()]);
        let s2 = map2(&|c| {
            Zip::from(w[c])
                .and(&k1[c])
                .and(&ex.half[c])
                .map_collect(|&w, &k, &e| (w + k * h) * e)
        });
        let k2 = eval(&s2);
        let s3 = map2(&|c| {
            Zip::from(w[c])
                .and(&k2[c])
                .and(&ex.half[c])
                .map_collect(|&w, &k, &e| w * e + k * h)
        });
        let k3 = eval(&s3);
        let s4 = map2(&|c| {
            Zip::from(w[c])
                .and(&k3[c])
                .and(&ex.half[c])
                .and(&ex.full[c])
                .map_collect(|&w, &k, &eh, &ef| w * ef + k * (dt * eh))
        });
        let k4 = eval(&s4);
        let sixth = dt / 6.0;
        let next = map2(&|c| {
            let mut out = Zip::from(w[c])
                .and(&k1[c])
                .and(&ex.full[c])
                .map_collect(|&w, &k, &ef| (w + k * sixth) * ef);
            Zip::from(&mut out)
                .and(&k2[c])
                .and(&k3[c])
                .and(&k4[c])
                .and(&ex.half[c])
                .for_each(|o, &k2, &k3, &k4, &eh| {
                    *o += ((k2 + k3) * (2.0 * eh) + k4) * sixth;
                });
            out
        });

        let [omega, a] = next;
        let mut omega = SpectralField::from_raw(&grid, omega);
        let mut a = SpectralField::from_raw(&grid, a);
        if !(omega.is_finite() && a.is_finite()) {
            return Err(GmhdError::BlowUp {
                t: state.t + dt,
                last_valid: Some(Box::new(state.clone())),
            });
        }
        for f in [&mut omega, &mut a] {
            f.dealias();
            f.symmetrize();
            f.remove_mean();
        }
        Ok(GmhdState {
            omega_hat: omega,
            a_hat: a,
            t: state.t + dt,
        })
    }
}

/// One integrating-factor RK4 step with a fresh stepper.
pub fn step(state: &GmhdState, params: &Params, dt: f64) -> Result<GmhdState> {
    IfRk4::new(state.grid(), params).step(state, dt)
}

/// Advective time step cfl·Δx / max(‖u‖_∞ + ‖b‖_∞, 1e-8), capped at
/// `params.dt_max`. Dissipation is integrated exactly and does not enter.
pub fn cfl_dt(state: &GmhdState, params: &Params) -> f64 {
    let vel = biot_savart(&state.omega_hat);
    let mag = field_from_potential(&state.a_hat);
    let (u1, u2) = SpectralField::to_physical_pair(&vel.u1, &vel.u2);
    let (b1, b2) = SpectralField::to_physical_pair(&mag.b1, &mag.b2);
    let speed = |x: &crate::spectral::PhysicalField, y: &crate::spectral::PhysicalField| {
        Zip::from(x.values())
            .and(y.values())
            .fold(0.0f64, |m, &a, &b| m.max(a.hypot(b)))
    };
    let s = (speed(&u1, &u2) + speed(&b1, &b2)).max(SPEED_FLOOR);
    (params.cfl * state.grid().dx() / s).min(params.dt_max)
}

/// Sampling and output controls for [`run`].
#[derive(Clone, Debug)]
pub struct RunSettings {
    /// Diagnostics cadence.
    pub sample_every: f64,
    pub diagnostics: DiagnosticsConfig,
    /// Keep a snapshot every this many samples (the initial and final
    /// states are always kept when set).
    pub snapshot_stride: Option<usize>,
}

impl RunSettings {
    pub fn new(sample_every: f64) -> Self {
        RunSettings {
            sample_every,
            diagnostics: DiagnosticsConfig::default(),
            snapshot_stride: None,
        }
    }
}

/// Result of [`run`]. When the integration blew up, `blowup` holds the
/// time of the failed step and `final_state` is the last finite state.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<GmhdState>,
    pub final_state: GmhdState,
    pub steps: usize,
    pub blowup: Option<f64>,
}

/// Integrates from `initial` to `params.t_end`, recording diagnostics at
/// `initial.t + m·sample_every` and at `t_end`.
///
/// Each sample interval is split into equal steps no longer than the CFL
/// bound at the start of the step, so samples land exactly on their times.
pub fn run(initial: &GmhdState, params: &Params, settings: &RunSettings) -> Result<Trajectory> {
    let params = params.clone().validated()?;
    if !(settings.sample_every > 0.0 && settings.sample_every.is_finite()) {
        return Err(GmhdError::param(format!(
            "sample_every must be positive, got {}",
            settings.sample_every
        )));
    }
    if params.n != initial.grid().n() {
        return Err(GmhdError::GridMismatch {
            left: params.n,
            right: initial.grid().n(),
        });
    }
    let t0 = initial.t;
    if params.t_end < t0 {
        return Err(GmhdError::param(format!(
            "t_end = {} precedes the initial time {t0}",
            params.t_end
        )));
    }
    if !initial.is_finite() {
        return Err(GmhdError::BlowUp {
            t: t0,
            last_valid: None,
        });
    }

    let mut stepper = IfRk4::new(initial.grid(), &params);
    let mut builder = RecordBuilder::new(&params, &settings.diagnostics);
    let mut records = vec![builder.sample(initial)?];
    let keep = |m: usize| settings.snapshot_stride.is_some_and(|s| s > 0 && m.is_multiple_of(s));
    let mut snapshots = Vec::new();
    if keep(0) {
        snapshots.push(initial.clone());
    }

    let mut state = initial.clone();
    let mut steps = 0usize;
    let mut m = 0usize;
    let span = params.t_end - t0;
    let n_samples = (span / settings.sample_every * (1.0 - 1e-12)).ceil() as usize;
    while m < n_samples {
        m += 1;
        let target = if m == n_samples {
            params.t_end
        } else {
            t0 + m as f64 * settings.sample_every
        };
        while state.t < target {
            let remaining = target - state.t;
            let dt_cfl = cfl_dt(&state, &params);
            let sub = (remaining / dt_cfl * (1.0 - 1e-12)).ceil().max(1.0);
            let dt = remaining / sub;
            match stepper.step(&state, dt) {
                Ok(mut next) => {
                    steps += 1;
                    if sub <= 1.0 {
                        next.t = target;
                    }
                    state = next;
                }
                Err(GmhdError::BlowUp { t, .. }) => {
                    if settings.snapshot_stride.is_some() {
                        snapshots.push(state.clone());
                    }
                    return Ok(Trajectory {
                        records,
                        snapshots,
                        final_state: state,
                        steps,
                        blowup: Some(t),
                    });
                }
                Err(e) => return Err(e),
            }
        }
        records.push(builder.sample(&state)?);
        if keep(m) || (m == n_samples && settings.snapshot_stride.is_some()) {
            snapshots.push(state.clone());
        }
    }
    Ok(Trajectory {
        records,
        snapshots,
        final_state: state,
        steps,
        blowup: None,
    })
}
