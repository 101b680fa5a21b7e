//! Flat `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Keys have exactly one dot. Unknown or repeated keys are errors.
//!
//! ```text
//! params.nu          = 1.0
//! params.kappa       = 1.0
//! params.alpha       = 1.0
//! params.beta        = 1.0
//! params.cfl         = 0.4
//! params.dt_max      = 0.01
//! params.t_end       = 1.0
//! params.n           = 128
//! initial.kind       = orszag_tang   # random_band_limited | shear | single_mode
//! initial.seed       = 0
//! initial.k_max      = 16            # random_band_limited only, default n/8
//! initial.amplitude  = 1.0           # random_band_limited only
//! initial.k1         = 1             # single_mode only
//! initial.k2         = 0             # single_mode only
//! run.sample_every   = 0.01
//! run.output_dir     = out           # relative paths resolve against the config file
//! run.snapshot_stride = 10           # 0 or absent: final snapshot only
//! diagnostics.p_list = 4, 6
//! diagnostics.eps_bhat = 1e-3        # absent: scale with max |b|
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::diagnostics::DiagnosticsConfig;
use crate::dynamics::{InitialKind, Params};
use crate::error::{GmhdError, Result};

pub const DEFAULT_SAMPLE_EVERY: f64 = 0.01;
pub const DEFAULT_OUTPUT_DIR: &str = "out";

const KEYS: &[&str] = &[
    "params.nu",
    "params.kappa",
    "params.alpha",
    "params.beta",
    "params.cfl",
    "params.dt_max",
    "params.t_end",
    "params.n",
    "initial.kind",
    "initial.seed",
    "initial.k_max",
    "initial.amplitude",
    "initial.k1",
    "initial.k2",
    "run.sample_every",
    "run.output_dir",
    "run.snapshot_stride",
    "diagnostics.p_list",
    "diagnostics.eps_bhat",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    pub initial: InitialKind,
    pub seed: u64,
    pub sample_every: f64,
    pub output_dir: PathBuf,
    /// Keep every this many samples as a snapshot; `None` keeps only the
    /// final state.
    pub snapshot_stride: Option<usize>,
    pub diagnostics: DiagnosticsConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: Params::default(),
            initial: InitialKind::OrszagTang,
            seed: 0,
            sample_every: DEFAULT_SAMPLE_EVERY,
            output_dir: PathBuf::from(DEFAULT_OUTPUT_DIR),
            snapshot_stride: None,
            diagnostics: DiagnosticsConfig::default(),
        }
    }
}

struct Entries<'a> {
    map: BTreeMap<&'a str, (usize, &'a str)>,
    origin: &'a Path,
}

impl<'a> Entries<'a> {
    fn err(&self, msg: impl Into<String>) -> GmhdError {
        GmhdError::Config {
            path: self.origin.to_path_buf(),
            msg: msg.into(),
        }
    }

    fn raw(&self, key: &str) -> Option<(usize, &'a str)> {
        self.map.get(key).copied()
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| self.err(format!("line {line}: cannot parse {key} = {v:?}"))),
        }
    }
}

impl RunConfig {
    /// Reads and validates a config file. A relative `run.output_dir` is
    /// taken relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| GmhdError::Config {
            path: path.to_path_buf(),
            msg: format!("unreadable: {e}"),
        })?;
        let mut cfg = Self::parse(&text, path)?;
        if cfg.output_dir.is_relative() {
            let base = path.parent().unwrap_or(Path::new(""));
            cfg.output_dir = base.join(&cfg.output_dir);
        }
        Ok(cfg)
    }

    /// Parses config text; `origin` only labels errors.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut entries = Entries {
            map: BTreeMap::new(),
            origin,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(entries.err(format!("line {line_no}: expected `key = value`")));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(entries.err(format!("line {line_no}: unknown key {key:?}")));
            }
            if value.is_empty() {
                return Err(entries.err(format!("line {line_no}: empty value for {key}")));
            }
            if entries.map.insert(key, (line_no, value)).is_some() {
                return Err(entries.err(format!("line {line_no}: duplicate key {key}")));
            }
        }
        Self::from_entries(&entries)
    }

    fn from_entries(e: &Entries) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let p = &mut cfg.params;
        macro_rules! set {
            ($key:literal, $field:expr) => {
                if let Some(v) = e.parse($key)? {
                    $field = v;
                }
            };
        }
        set!("params.nu", p.nu);
        set!("params.kappa", p.kappa);
        set!("params.alpha", p.alpha);
        set!("params.beta", p.beta);
        set!("params.cfl", p.cfl);
        set!("params.dt_max", p.dt_max);
        set!("params.t_end", p.t_end);
        set!("params.n", p.n);
        cfg.params = cfg.params.clone().validated().map_err(|x| e.err(x.to_string()))?;
        set!("initial.seed", cfg.seed);
        set!("run.sample_every", cfg.sample_every);
        if let Some(dir) = e.raw("run.output_dir") {
            cfg.output_dir = PathBuf::from(dir.1);
        }
        cfg.snapshot_stride = e.parse::<usize>("run.snapshot_stride")?.filter(|&s| s > 0);

        let kind = e.raw("initial.kind").map_or("orszag_tang", |v| v.1);
        let kind_only = |keys: &[&str]| -> Result<()> {
            for k in keys {
                if let Some((line, _)) = e.raw(k) {
                    return Err(e.err(format!("line {line}: {k} does not apply to initial.kind = {kind}")));
                }
            }
            Ok(())
        };
        cfg.initial = match kind {
            "orszag_tang" | "shear" => {
                kind_only(&["initial.k_max", "initial.amplitude", "initial.k1", "initial.k2"])?;
                if kind == "shear" {
                    InitialKind::Shear
                } else {
                    InitialKind::OrszagTang
                }
            }
            "random_band_limited" => {
                kind_only(&["initial.k1", "initial.k2"])?;
                InitialKind::RandomBandLimited {
                    k_max: e.parse("initial.k_max")?.unwrap_or(cfg.params.n / 8),
                    amplitude: e.parse("initial.amplitude")?.unwrap_or(1.0),
                }
            }
            "single_mode" => {
                kind_only(&["initial.k_max", "initial.amplitude"])?;
                InitialKind::SingleMode {
                    k1: e.parse("initial.k1")?.unwrap_or(1),
                    k2: e.parse("initial.k2")?.unwrap_or(0),
                }
            }
            other => return Err(e.err(format!("unknown initial.kind {other:?}"))),
        };

        if let Some((line, list)) = e.raw("diagnostics.p_list") {
            cfg.diagnostics.p_list = list
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| e.err(format!("line {line}: bad p_list {list:?}")))?;
        }
        cfg.diagnostics.eps_bhat = e.parse("diagnostics.eps_bhat")?;
        cfg.validate().map_err(|x| e.err(x.to_string()))?;
        Ok(cfg)
    }

    /// Checks everything not already enforced by [`Params::validated`].
    pub fn validate(&self) -> Result<()> {
        if !(self.sample_every > 0.0 && self.sample_every.is_finite()) {
            return Err(GmhdError::param(format!(
                "sample_every must be positive, got {}",
                self.sample_every
            )));
        }
        self.diagnostics.validate()?;
        if let InitialKind::RandomBandLimited { k_max, amplitude } = self.initial {
            if k_max == 0 || !(amplitude >= 0.0 && amplitude.is_finite()) {
                return Err(GmhdError::param("random_band_limited needs k_max >= 1 and amplitude >= 0"));
            }
        }
        Ok(())
    }

    /// Non-fatal remarks, e.g. a grid size that is not a power of two.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.params.n.is_power_of_two() {
            out.push(format!("n = {} is not a power of two; FFTs will be slower", self.params.n));
        }
        out
    }
}

/// Parses `start:stop:step` into the inclusive list start, start + step, ...
/// up to stop (with a relative slack of 1e-9 steps for rounding).
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: &str| GmhdError::param(format!("range {spec:?}: {msg}"));
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    let nums: Vec<f64> = match parts.len() {
        1 | 3 => parts
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("not a number"))?,
        _ => return Err(bad("expected start:stop:step or a single value")),
    };
    if nums.len() == 1 {
        return Ok(nums);
    }
    let (a0, a1, da) = (nums[0], nums[1], nums[2]);
    if !(da > 0.0 && da.is_finite() && a0.is_finite() && a1.is_finite()) {
        return Err(bad("step must be positive and bounds finite"));
    }
    if a1 < a0 {
        return Err(bad("empty range"));
    }
    let count = ((a1 - a0) / da + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a0 + i as f64 * da).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig> {
        RunConfig::parse(text, Path::new("test.cfg"))
    }

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(parse("# nothing\n\n").unwrap(), RunConfig::default());
    }

    #[test]
    fn full_config() {
        let cfg = parse(
            "params.alpha = 0.5\nparams.n = 64 # small\ninitial.kind = random_band_limited\n\
             initial.seed = 7\ninitial.amplitude = 2\nrun.snapshot_stride = 0\n\
             diagnostics.p_list = 2, 4,6\ndiagnostics.eps_bhat = 1e-4\n",
        )
        .unwrap();
        assert_eq!(cfg.params.alpha, 0.5);
        assert_eq!(cfg.params.n, 64);
        assert_eq!(cfg.seed, 7);
        assert_eq!(
            cfg.initial,
            InitialKind::RandomBandLimited {
                k_max: 8,
                amplitude: 2.0
            }
        );
        assert_eq!(cfg.snapshot_stride, None);
        assert_eq!(cfg.diagnostics.p_list, vec![2.0, 4.0, 6.0]);
        assert_eq!(cfg.diagnostics.eps_bhat, Some(1e-4));
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "params.alpha = -1",
            "params.gamma = 1",
            "params.nu = 1\nparams.nu = 2",
            "params.nu",
            "params.nu = fast",
            "initial.kind = vortex",
            "initial.k1 = 2",
            "run.sample_every = 0",
            "diagnostics.p_list = 0.5",
        ] {
            assert!(
                matches!(parse(text), Err(GmhdError::Config { .. })),
                "{text:?} accepted"
            );
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0.5:1.5:0.5").unwrap(), vec![0.5, 1.0, 1.5]);
        assert_eq!(parse_range("0:0.3:0.1").unwrap().len(), 4);
        assert_eq!(parse_range("2").unwrap(), vec![2.0]);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
    }
}
