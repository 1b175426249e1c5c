use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "amphase", version, about = "Amplitude-phase solutions of Ermakov-Pinney equations and Kasner parametrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form J(x) and integrating factor of u'' + P u' + Q u = 0.
    Canonical(CanonicalArgs),
    /// Closed-form Pinney solution against numerical integration.
    Ermakov(ErmakovArgs),
    /// Kasner exponent triples for a given first exponent.
    Kasner(KasnerArgs),
    /// Amplitude, phase and auxiliary 1-forms on a time grid.
    Parametrix(ParametrixArgs),
    /// Residuals of every recipe equation for the closed forms.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Control {
    /// Closed-form fields.
    None,
    /// ψ₀ = κ/t², which is not divergence free.
    Psi,
    /// α ≡ 1, which leaves α³□α + ψ₀² = κ²/t².
    Alpha,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// First grid point.
    #[arg(long = "t-min", visible_alias = "x-min", allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    /// Last grid point.
    #[arg(long = "t-max", visible_alias = "x-max", allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    /// Number of grid points, at least 2.
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Pass/fail threshold on residuals.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CanonicalArgs {
    /// Coefficient P(x), e.g. "2/x".
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub p: String,
    /// Coefficient Q(x), e.g. "1 + x^2".
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ErmakovArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tau: f64,
    /// u at the first grid point.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub u0: f64,
    /// u' at the first grid point.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub du0: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct KasnerArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p1: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ParametrixArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub kappa: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub sigma: f64,
    /// Reference time.
    #[arg(long = "T", default_value_t = 1.0, allow_negative_numbers = true)]
    pub t_ref: f64,
    /// Phase at the reference time.
    #[arg(long = "phi-T", default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase_ref: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParametrixArgs,
    /// Replace one field by a wrong one.
    #[arg(long, value_enum, default_value_t = Control::None)]
    pub control: Control,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubcommandKind {
    Canonical,
    Ermakov,
    Kasner,
    Parametrix,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// Everything a run depends on. Echoed verbatim into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub parameters: BTreeMap<String, Param>,
    pub grid: Option<GridSpec>,
    pub output: OutputSpec,
    pub tol: f64,
}

struct GridDefaults {
    t_min: f64,
    t_max: f64,
    n: usize,
    spacing: Spacing,
}

fn grid_spec(args: &GridArgs, d: GridDefaults) -> GridSpec {
    GridSpec {
        t_min: args.t_min.unwrap_or(d.t_min),
        t_max: args.t_max.unwrap_or(d.t_max),
        n_points: args.n.unwrap_or(d.n),
        spacing: args.spacing.unwrap_or(d.spacing),
    }
}

fn number_params(pairs: &[(&str, f64)]) -> BTreeMap<String, Param> {
    pairs.iter().map(|(k, v)| (k.to_string(), Param::Number(*v))).collect()
}

fn parametrix_parts(a: &ParametrixArgs) -> (BTreeMap<String, Param>, GridSpec) {
    let params = number_params(&[("kappa", a.kappa), ("sigma", a.sigma), ("T", a.t_ref), ("phi_T", a.phase_ref)]);
    let grid = grid_spec(
        &a.grid,
        GridDefaults { t_min: a.t_ref, t_max: 20.0 * a.t_ref, n: 50, spacing: Spacing::Log },
    );
    (params, grid)
}

impl RunConfig {
    pub fn from_command(command: &Command) -> Result<Self, CliError> {
        let (subcommand, parameters, grid, output) = match command {
            Command::Canonical(a) => {
                let mut params = BTreeMap::new();
                params.insert("p".to_string(), Param::Text(a.p.clone()));
                params.insert("q".to_string(), Param::Text(a.q.clone()));
                let grid = grid_spec(&a.grid, GridDefaults { t_min: 0.0, t_max: 1.0, n: 11, spacing: Spacing::Linear });
                (SubcommandKind::Canonical, params, Some(grid), &a.output)
            }
            Command::Ermakov(a) => {
                let params = number_params(&[("tau", a.tau), ("u0", a.u0), ("du0", a.du0)]);
                let grid = grid_spec(&a.grid, GridDefaults { t_min: 0.0, t_max: 2.0, n: 21, spacing: Spacing::Linear });
                (SubcommandKind::Ermakov, params, Some(grid), &a.output)
            }
            Command::Kasner(a) => (SubcommandKind::Kasner, number_params(&[("p1", a.p1)]), None, &a.output),
            Command::Parametrix(a) => {
                let (params, grid) = parametrix_parts(a);
                (SubcommandKind::Parametrix, params, Some(grid), &a.output)
            }
            Command::Verify(a) => {
                let (mut params, grid) = parametrix_parts(&a.params);
                let control = match a.control {
                    Control::None => "none",
                    Control::Psi => "psi",
                    Control::Alpha => "alpha",
                };
                params.insert("control".to_string(), Param::Text(control.to_string()));
                (SubcommandKind::Verify, params, Some(grid), &a.params.output)
            }
        };
        let config = RunConfig {
            subcommand,
            parameters,
            grid,
            output: OutputSpec { path: output.out.clone(), format: output.format },
            tol: output.tol,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Invalid(format!("--tol must be positive, got {}", self.tol)));
        }
        for (k, v) in &self.parameters {
            if let Param::Number(x) = v {
                if !x.is_finite() {
                    return Err(CliError::Invalid(format!("--{k} must be finite, got {x}")));
                }
            }
        }
        if let Some(g) = &self.grid {
            if g.n_points < 2 {
                return Err(CliError::Invalid(format!("--n must be at least 2, got {}", g.n_points)));
            }
            if !(g.t_min.is_finite() && g.t_max.is_finite() && g.t_min < g.t_max) {
                return Err(CliError::Invalid(format!(
                    "grid needs finite t-min < t-max, got [{}, {}]",
                    g.t_min, g.t_max
                )));
            }
            let needs_positive = matches!(self.subcommand, SubcommandKind::Parametrix | SubcommandKind::Verify)
                || g.spacing == Spacing::Log;
            if needs_positive && !(g.t_min > 0.0) {
                return Err(CliError::Invalid(format!("t-min must be positive here, got {}", g.t_min)));
            }
        }
        Ok(())
    }

    pub fn number(&self, key: &str) -> Result<f64, CliError> {
        match self.parameters.get(key) {
            Some(Param::Number(v)) => Ok(*v),
            _ => Err(CliError::Invalid(format!("missing numeric parameter '{key}'"))),
        }
    }

    pub fn text(&self, key: &str) -> Result<&str, CliError> {
        match self.parameters.get(key) {
            Some(Param::Text(v)) => Ok(v),
            _ => Err(CliError::Invalid(format!("missing parameter '{key}'"))),
        }
    }
}
