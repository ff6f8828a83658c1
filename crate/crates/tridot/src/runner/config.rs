//! Flat key-value run configuration.
//!
//! One `key = value` per line, `#` starts a comment, lists are
//! comma-separated. Unknown and duplicated keys are hard errors — there is
//! no silent typo tolerance.

use crate::model::{InitialState, ModelError, SystemParams};
use crate::C64;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },
}

impl ConfigError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        ConfigError::Parse {
            line,
            message: message.into(),
        }
    }

    fn validation(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Validation {
            key: key.into(),
            message: message.into(),
        }
    }
}

/// Parameter axes a run may sweep over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    OmegaRabi,
    Delta,
    Eta,
    Phi,
    Tau,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::OmegaRabi => "omega_rabi",
            SweepParam::Delta => "delta",
            SweepParam::Eta => "eta",
            SweepParam::Phi => "phi",
            SweepParam::Tau => "tau",
        }
    }

    fn from_str(name: &str) -> Option<Self> {
        match name {
            "omega_rabi" => Some(SweepParam::OmegaRabi),
            "delta" => Some(SweepParam::Delta),
            "eta" => Some(SweepParam::Eta),
            "phi" => Some(SweepParam::Phi),
            "tau" => Some(SweepParam::Tau),
            _ => None,
        }
    }
}

/// One swept parameter and its values, at most one per run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// Which solver produces the trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverChoice {
    #[default]
    Spectral,
    Oracle,
}

impl SolverChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverChoice::Spectral => "spectral",
            SolverChoice::Oracle => "oracle",
        }
    }
}

/// Fully validated description of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub sweep: Option<SweepAxis>,
    pub emit_csv: bool,
    pub emit_svg: bool,
    pub out_prefix: String,
    pub validate: bool,
    pub emit_scaled_time: bool,
    pub solver: SolverChoice,
}

/// One expanded member of a run: the sweep coordinate (if any) and the
/// parameter set to simulate.
pub type ExpandedRun = (Option<(SweepParam, f64)>, SystemParams);

impl RunConfig {
    /// Parameter sets the run expands to: the base set, or one per sweep
    /// value with the swept field substituted.
    pub fn expanded_params(&self) -> Result<Vec<ExpandedRun>, ConfigError> {
        match &self.sweep {
            None => Ok(vec![(None, self.params)]),
            Some(axis) => axis
                .values
                .iter()
                .map(|&v| {
                    let p = substitute(&self.params, axis.param, v)
                        .map_err(|e| ConfigError::validation("sweep", e.to_string()))?;
                    Ok((Some((axis.param, v)), p))
                })
                .collect(),
        }
    }
}

fn substitute(
    base: &SystemParams,
    param: SweepParam,
    value: f64,
) -> Result<SystemParams, ModelError> {
    let b = SystemParams::builder()
        .eta(base.eta())
        .omega_rabi(base.omega_rabi())
        .delta(base.delta())
        .phi(base.phi())
        .tau(base.tau())
        .t_start(base.t_start())
        .t_end(base.t_end())
        .t_step(base.t_step())
        .initial_state(base.initial_state());
    let b = match param {
        SweepParam::OmegaRabi => b.omega_rabi(value),
        SweepParam::Delta => b.delta(value),
        SweepParam::Eta => b.eta(value),
        SweepParam::Phi => b.phi(value),
        SweepParam::Tau => b.tau(value),
    };
    b.build()
}

const KNOWN_KEYS: [&str; 14] = [
    "eta",
    "omega_rabi",
    "delta",
    "phi",
    "tau",
    "t_start",
    "t_end",
    "t_step",
    "initial_state",
    "sweep",
    "outputs",
    "out",
    "validate",
    "emit_scaled_time",
];

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut eta = 0.0_f64;
    let mut omega_rabi = 0.0_f64;
    let mut delta = 0.0_f64;
    let mut phi = 0.0_f64;
    let mut tau = 0.0_f64;
    let mut t_start = 0.0_f64;
    let mut t_end = 500.0_f64;
    let mut t_step = 0.5_f64;
    let mut initial_state = InitialState::Vacuum;
    let mut sweep: Option<SweepAxis> = None;
    let mut emit_csv = true;
    let mut emit_svg = true;
    let mut out_prefix = "run".to_string();
    let mut validate = false;
    let mut emit_scaled_time = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::parse(line_no, format!("expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(ConfigError::parse(line_no, format!("unknown key `{key}`")));
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::parse(
                line_no,
                format!("duplicate key `{key}`"),
            ));
        }
        match key {
            "eta" => eta = parse_float(line_no, key, value)?,
            "omega_rabi" => omega_rabi = parse_float(line_no, key, value)?,
            "delta" => delta = parse_float(line_no, key, value)?,
            "phi" => phi = parse_float(line_no, key, value)?,
            "tau" => tau = parse_float(line_no, key, value)?,
            "t_start" => t_start = parse_float(line_no, key, value)?,
            "t_end" => t_end = parse_float(line_no, key, value)?,
            "t_step" => t_step = parse_float(line_no, key, value)?,
            "initial_state" => initial_state = parse_initial_state(line_no, value)?,
            "sweep" => sweep = Some(parse_sweep(line_no, value)?),
            "outputs" => {
                let (csv, svg) = parse_outputs(line_no, value)?;
                emit_csv = csv;
                emit_svg = svg;
            }
            "out" => {
                if value.is_empty() {
                    return Err(ConfigError::parse(line_no, "`out` must not be empty"));
                }
                out_prefix = value.to_string();
            }
            "validate" => validate = parse_bool(line_no, key, value)?,
            "emit_scaled_time" => emit_scaled_time = parse_bool(line_no, key, value)?,
            _ => unreachable!("key membership checked above"),
        }
    }

    let params = SystemParams::builder()
        .eta(eta)
        .omega_rabi(omega_rabi)
        .delta(delta)
        .phi(phi)
        .tau(tau)
        .t_start(t_start)
        .t_end(t_end)
        .t_step(t_step)
        .initial_state(initial_state)
        .build()
        .map_err(|e| ConfigError::validation(model_error_key(&e), e.to_string()))?;

    let cfg = RunConfig {
        params,
        sweep,
        emit_csv,
        emit_svg,
        out_prefix,
        validate,
        emit_scaled_time,
        solver: SolverChoice::Spectral,
    };
    // validate every swept parameter set up front
    cfg.expanded_params()?;
    Ok(cfg)
}

fn model_error_key(e: &ModelError) -> &'static str {
    match e {
        ModelError::NonFinite { name, .. } => name,
        ModelError::NegativeRabi(_) => "omega_rabi",
        ModelError::InvalidTimeGrid { .. } | ModelError::GridTooFine(_) => "t_step",
        ModelError::DegenerateInitialState => "initial_state",
        ModelError::NotHermitian { .. } | ModelError::OutsideBand { .. } => "initial_state",
    }
}

fn parse_float(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value
        .parse()
        .map_err(|_| ConfigError::parse(line, format!("`{key}` expects a number, got `{value}`")))?;
    if !v.is_finite() {
        return Err(ConfigError::validation(key, "value must be finite"));
    }
    Ok(v)
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::parse(
            line,
            format!("`{key}` expects true or false, got `{value}`"),
        )),
    }
}

fn parse_float_list(line: usize, key: &str, list: &str) -> Result<Vec<f64>, ConfigError> {
    list.split(',')
        .map(|item| parse_float(line, key, item.trim()))
        .collect()
}

fn parse_initial_state(line: usize, value: &str) -> Result<InitialState, ConfigError> {
    match value {
        "vacuum" => return Ok(InitialState::Vacuum),
        "single" => return Ok(InitialState::Single),
        "bi" => return Ok(InitialState::Bi),
        "tri" => return Ok(InitialState::Tri),
        _ => {}
    }
    let Some(rest) = value.strip_prefix("custom:") else {
        return Err(ConfigError::parse(
            line,
            format!(
                "initial_state must be vacuum, single, bi, tri, or `custom: re0, im0, ..., re3, im3`, got `{value}`"
            ),
        ));
    };
    let reals = parse_float_list(line, "initial_state", rest)?;
    if reals.len() != 8 {
        return Err(ConfigError::parse(
            line,
            format!(
                "custom initial_state expects 8 comma-separated numbers (re, im per amplitude), got {}",
                reals.len()
            ),
        ));
    }
    let amps = [
        C64::new(reals[0], reals[1]),
        C64::new(reals[2], reals[3]),
        C64::new(reals[4], reals[5]),
        C64::new(reals[6], reals[7]),
    ];
    Ok(InitialState::Custom(amps))
}

fn parse_sweep(line: usize, value: &str) -> Result<SweepAxis, ConfigError> {
    let (name, list) = value.split_once(':').ok_or_else(|| {
        ConfigError::parse(line, "sweep expects `parameter: v1, v2, ...`".to_string())
    })?;
    let name = name.trim();
    let param = SweepParam::from_str(name).ok_or_else(|| {
        ConfigError::validation(
            "sweep",
            format!("`{name}` is not sweepable (use omega_rabi, delta, eta, phi, or tau)"),
        )
    })?;
    let values = parse_float_list(line, "sweep", list)?;
    if values.is_empty() {
        return Err(ConfigError::validation("sweep", "sweep needs at least one value"));
    }
    Ok(SweepAxis { param, values })
}

fn parse_outputs(line: usize, value: &str) -> Result<(bool, bool), ConfigError> {
    let mut csv = false;
    let mut svg = false;
    for item in value.split(',') {
        match item.trim() {
            "csv" => csv = true,
            "svg" => svg = true,
            other => {
                return Err(ConfigError::parse(
                    line,
                    format!("outputs accepts csv and svg, got `{other}`"),
                ))
            }
        }
    }
    Ok((csv, svg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_maps_directly_with_defaults_elsewhere() {
        let cfg = parse_config(
            "eta = 0.1\ndelta = 0\nomega_rabi = 0.05\nphi = 0\nt_end = 500\nt_step = 0.5",
        )
        .unwrap();
        assert_eq!(cfg.params.eta(), 0.1);
        assert_eq!(cfg.params.omega_rabi(), 0.05);
        assert_eq!(cfg.params.t_start(), 0.0);
        assert_eq!(cfg.params.tau(), 0.0);
        assert_eq!(cfg.params.initial_state(), InitialState::Vacuum);
        assert!(cfg.sweep.is_none());
        assert!(cfg.emit_csv && cfg.emit_svg);
        assert!(!cfg.validate);
        assert_eq!(cfg.out_prefix, "run");
        assert_eq!(cfg.solver, SolverChoice::Spectral);
    }

    #[test]
    fn coupling_sweep_parses_the_four_member_set() {
        let cfg = parse_config("eta = 0.1\nsweep = omega_rabi: 0.1, 0.05, 0.03, 0.01").unwrap();
        let axis = cfg.sweep.unwrap();
        assert_eq!(axis.param, SweepParam::OmegaRabi);
        assert_eq!(axis.values, vec![0.1, 0.05, 0.03, 0.01]);
    }

    #[test]
    fn detuning_sweep_parses_the_four_member_set() {
        let cfg =
            parse_config("eta = 0.1\nomega_rabi = 0.05\nsweep = delta: 0.01, 0.03, 0.1, 0.3")
                .unwrap();
        let axis = cfg.sweep.unwrap();
        assert_eq!(axis.param, SweepParam::Delta);
        assert_eq!(axis.values, vec![0.01, 0.03, 0.1, 0.3]);
    }

    #[test]
    fn unknown_keys_are_hard_errors_with_line_numbers() {
        let err = parse_config("eta = 0.1\nomega_rbi = 0.05").unwrap_err();
        assert_eq!(
            err,
            ConfigError::Parse {
                line: 2,
                message: "unknown key `omega_rbi`".into()
            }
        );
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let err = parse_config("eta = 0.1\neta = 0.2").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 2, .. }));
    }

    #[test]
    fn malformed_lines_and_values_carry_line_numbers() {
        assert!(matches!(
            parse_config("eta 0.1").unwrap_err(),
            ConfigError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_config("\neta = fast").unwrap_err(),
            ConfigError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_config("validate = yes").unwrap_err(),
            ConfigError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = parse_config("# header\n\neta = 0.25  # hopping\n   \n").unwrap();
        assert_eq!(cfg.params.eta(), 0.25);
    }

    #[test]
    fn validation_errors_name_the_offending_key() {
        assert_eq!(
            parse_config("omega_rabi = -0.1").unwrap_err(),
            ConfigError::Validation {
                key: "omega_rabi".into(),
                message:
                    "omega_rabi is a magnitude and must be >= 0, got -0.1 (carry the phase in phi)"
                        .into()
            }
        );
        // sweeping into an invalid region is caught at parse time
        assert!(matches!(
            parse_config("sweep = omega_rabi: 0.1, -0.2").unwrap_err(),
            ConfigError::Validation { ref key, .. } if key == "sweep"
        ));
        assert!(matches!(
            parse_config("sweep = t_step: 0.1").unwrap_err(),
            ConfigError::Validation { ref key, .. } if key == "sweep"
        ));
    }

    #[test]
    fn custom_initial_state_roundtrips() {
        let cfg = parse_config("initial_state = custom: 1, 0, 0, 0, 0, 0, 1, 0").unwrap();
        let b0 = cfg.params.initial_state_vector();
        assert!((b0.amplitude(0).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b0.amplitude(3).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(
            parse_config("initial_state = custom: 1, 0").unwrap_err(),
            ConfigError::Parse { .. }
        ));
        assert!(matches!(
            parse_config("initial_state = plasma").unwrap_err(),
            ConfigError::Parse { .. }
        ));
    }

    #[test]
    fn outputs_select_the_emitters() {
        let cfg = parse_config("outputs = csv").unwrap();
        assert!(cfg.emit_csv && !cfg.emit_svg);
        let cfg = parse_config("outputs = csv, svg").unwrap();
        assert!(cfg.emit_csv && cfg.emit_svg);
        assert!(parse_config("outputs = png").is_err());
    }
}
