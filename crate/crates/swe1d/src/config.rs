//! Run configuration from defaults, an optional key=value file, and
//! command-line overrides, in that precedence order.

use std::path::{Path, PathBuf};

use crate::bathymetry::BottomMode;
use crate::cases::{CaseSpec, FlowCase};
use crate::error::SolverError;
use crate::timestep::Scheme;

/// Coarsest mesh the reconstruction stencils and the bump remain meaningful
/// on.
pub const MIN_CELLS: usize = 25;

/// Everything one `run` invocation needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub case: FlowCase,
    pub scheme: Scheme,
    pub n_cells: usize,
    pub amplitude: f64,
    pub t_end: f64,
    pub cfl: f64,
    pub out: PathBuf,
    pub emit_reference: bool,
    pub bottom: BottomMode,
}

/// Unresolved settings; `None` means "use the default for the case".
#[derive(Debug, Clone, Default)]
pub struct ConfigOverlay {
    pub case: Option<FlowCase>,
    pub scheme: Option<Scheme>,
    pub n_cells: Option<usize>,
    pub amplitude: Option<f64>,
    pub t_end: Option<f64>,
    pub cfl: Option<f64>,
    pub out: Option<PathBuf>,
    pub emit_reference: Option<bool>,
    pub bottom: Option<BottomMode>,
}

impl ConfigOverlay {
    /// Later settings win; `other` is the higher-precedence layer.
    pub fn merged_under(self, other: ConfigOverlay) -> ConfigOverlay {
        ConfigOverlay {
            case: other.case.or(self.case),
            scheme: other.scheme.or(self.scheme),
            n_cells: other.n_cells.or(self.n_cells),
            amplitude: other.amplitude.or(self.amplitude),
            t_end: other.t_end.or(self.t_end),
            cfl: other.cfl.or(self.cfl),
            out: other.out.or(self.out),
            emit_reference: other.emit_reference.or(self.emit_reference),
            bottom: other.bottom.or(self.bottom),
        }
    }

    /// Fills the remaining fields from the case defaults.
    pub fn resolve(self) -> Result<RunConfig, SolverError> {
        let case = self.case.ok_or_else(|| {
            SolverError::InvalidConfig("no case given (expected a, b, c, or lake)".into())
        })?;
        let scheme = self.scheme.ok_or_else(|| {
            SolverError::InvalidConfig(
                "no scheme given (expected still, moving, or oracle1)".into(),
            )
        })?;
        let config = RunConfig {
            case,
            scheme,
            n_cells: self.n_cells.unwrap_or_else(|| case.default_cells()),
            amplitude: self.amplitude.unwrap_or(0.0),
            t_end: self.t_end.unwrap_or_else(|| case.default_t_end()),
            cfl: self.cfl.unwrap_or(0.6),
            out: self
                .out
                .unwrap_or_else(|| PathBuf::from(format!("swe1d-{}.csv", case.tag()))),
            emit_reference: self.emit_reference.unwrap_or(false),
            bottom: self.bottom.unwrap_or(BottomMode::Reconstructed),
        };
        config.validate()?;
        Ok(config)
    }
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "true" | "1" | "yes" => Some(true),
        "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

pub fn parse_bottom(value: &str) -> Option<BottomMode> {
    match value {
        "reconstructed" => Some(BottomMode::Reconstructed),
        "sampled" => Some(BottomMode::Sampled),
        _ => None,
    }
}

/// Parses the flat key=value format. Lines starting with `#` and blank
/// lines are skipped; unknown keys and malformed values are errors.
pub fn parse_config_text(text: &str) -> Result<ConfigOverlay, SolverError> {
    let mut overlay = ConfigOverlay::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| {
            SolverError::InvalidConfig(format!("line {}: {what}: {line}", lineno + 1))
        };
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "case" => {
                overlay.case = Some(FlowCase::parse(value).ok_or_else(|| bad("unknown case"))?)
            }
            "scheme" => {
                overlay.scheme =
                    Some(Scheme::parse(value).ok_or_else(|| bad("unknown scheme"))?)
            }
            "cells" => {
                overlay.n_cells = Some(value.parse().map_err(|_| bad("bad cell count"))?)
            }
            "amp" => overlay.amplitude = Some(value.parse().map_err(|_| bad("bad amplitude"))?),
            "t-end" => overlay.t_end = Some(value.parse().map_err(|_| bad("bad t-end"))?),
            "cfl" => overlay.cfl = Some(value.parse().map_err(|_| bad("bad cfl"))?),
            "out" => overlay.out = Some(PathBuf::from(value)),
            "emit-reference" => {
                overlay.emit_reference =
                    Some(parse_bool(value).ok_or_else(|| bad("bad boolean"))?)
            }
            "bottom" => {
                overlay.bottom = Some(parse_bottom(value).ok_or_else(|| bad("unknown bottom mode"))?)
            }
            _ => return Err(bad("unknown key")),
        }
    }
    Ok(overlay)
}

pub fn load_config_file(path: &Path) -> Result<ConfigOverlay, SolverError> {
    parse_config_text(&std::fs::read_to_string(path)?)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.n_cells < MIN_CELLS {
            return Err(SolverError::InvalidConfig(format!(
                "need at least {MIN_CELLS} cells, got {}",
                self.n_cells
            )));
        }
        self.case_spec().validate()
    }

    /// Geometry and physics parameters of the run.
    pub fn case_spec(&self) -> CaseSpec {
        let mut spec = CaseSpec::new(self.case);
        spec.n_cells = self.n_cells;
        spec.amplitude = self.amplitude;
        spec.t_end = self.t_end;
        spec.cfl = self.cfl;
        spec.bottom = self.bottom;
        spec
    }

    /// One-line echo written into CSV headers; keys match the config file.
    pub fn echo(&self) -> String {
        format!(
            "case={} scheme={} cells={} amp={} t-end={} cfl={} bottom={}",
            self.case.tag(),
            self.scheme.tag(),
            self.n_cells,
            self.amplitude,
            self.t_end,
            self.cfl,
            match self.bottom {
                BottomMode::Reconstructed => "reconstructed",
                BottomMode::Sampled => "sampled",
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_fills_and_cli_overrides() {
        let file = parse_config_text(
            "# comment\n\
             case = a\n\
             scheme = moving\n\
             cells = 100\n\
             amp = 0.05\n",
        )
        .unwrap();
        let cli = ConfigOverlay {
            amplitude: Some(0.001),
            ..Default::default()
        };
        let config = file.merged_under(cli).resolve().unwrap();
        assert_eq!(config.case, FlowCase::Subcritical);
        assert_eq!(config.scheme, Scheme::MovingWater);
        assert_eq!(config.n_cells, 100);
        assert_eq!(config.amplitude, 0.001);
        assert_eq!(config.t_end, 1.5);
        assert_eq!(config.cfl, 0.6);
        assert!(!config.emit_reference);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(parse_config_text("viscosity = 0.1\n").is_err());
        assert!(parse_config_text("case: a\n").is_err());
        assert!(parse_config_text("case = z\n").is_err());
    }

    #[test]
    fn defaults_depend_on_the_case() {
        let overlay = parse_config_text("case = c\nscheme = still\n").unwrap();
        let config = overlay.resolve().unwrap();
        assert_eq!(config.n_cells, 200);
        assert_eq!(config.t_end, 3.0);
    }

    #[test]
    fn too_few_cells_are_rejected() {
        let overlay = parse_config_text("case = a\nscheme = still\ncells = 10\n").unwrap();
        assert!(overlay.resolve().is_err());
    }
}
