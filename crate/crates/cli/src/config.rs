use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Synthesize,
    Evolve,
    SweepG,
    TransferCheck,
    FockDemo,
    EntangleDemo,
    BsCascade,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Which propagator route to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Closed-form lattice sum.
    Closed,
    /// `U† e^{−iΩt} U`.
    Spectral,
    /// Eigendecomposition of the synthesised couplings.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    Fock,
    Coherent,
}

/// Options shared by every command. Each command reads the ones it needs and
/// applies its own defaults; config files use the same kebab-case keys.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// Ring size.
    #[arg(long)]
    pub s: Option<usize>,
    /// Transfer period τ in seconds [default: 1].
    #[arg(long)]
    pub tau: Option<f64>,
    /// Excitation integers m_1..m_s, comma separated; a single value is used
    /// for every site [default: 0]. For --perm they are consumed in cycle
    /// traversal order: each cycle listed from its smallest site, following
    /// the permutation, cycles in order of their smallest site.
    #[arg(long)]
    #[serde(deserialize_with = "int_list")]
    pub m: Option<String>,
    /// 1-based site index [default: 1].
    #[arg(long)]
    pub site: Option<usize>,
    /// Photon number [default: 1].
    #[arg(long)]
    pub n: Option<u32>,
    /// Coherent amplitude "re,im" [default: 1,0].
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Characteristic-function argument "re,im".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Initial state on site 1 for characteristic-function output [default: fock].
    #[arg(long, value_enum)]
    pub state: Option<InitialState>,
    /// Evaluation time in units of τ [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Sweep start in units of τ [default: 0].
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    /// Sweep end in units of τ [default: s].
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    /// Grid points including both ends [default: 100·s + 1].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Source site for transfer-check [default: 1].
    #[arg(long)]
    pub from: Option<usize>,
    /// Target site for transfer-check [default: the next site].
    #[arg(long)]
    pub to: Option<usize>,
    /// Target permutation as a 1-based image list: site k moves to entry k.
    #[arg(long)]
    #[serde(deserialize_with = "int_list")]
    pub perm: Option<String>,
    /// Coupling matrix JSON (as written by `synthesize`) to evolve under.
    #[arg(long)]
    pub lambda: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub route: Option<Route>,
    /// Sample count: random unitaries for validate, off-lattice times per
    /// period for entangle-demo.
    #[arg(long)]
    pub samples: Option<usize>,
    /// RNG seed for validate [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// First beam-splitter angle λτ₁ in radians [default: π/4].
    #[arg(long, allow_negative_numbers = true)]
    pub theta1: Option<f64>,
    /// Second beam-splitter angle λτ₂ in radians [default: π/4].
    #[arg(long, allow_negative_numbers = true)]
    pub theta2: Option<f64>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Accepts `"0,1,2"`, `[0, 1, 2]` or a bare integer.
fn int_list<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        List(Vec<u64>),
        One(u64),
    }
    Ok(Some(match Raw::deserialize(d)? {
        Raw::Text(s) => s,
        Raw::List(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        Raw::One(x) => x.to_string(),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub options: Options,
}

impl RunConfig {
    /// Parses a TOML file holding `command = "<name>"` plus option keys.
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, CliError> {
        let err = |message: String| CliError::Config { path: path.to_owned(), message };
        let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| err(e.to_string()))?;
        let command = table.remove("command").ok_or_else(|| err("missing `command` key".into()))?;
        let command = Command::deserialize(command).map_err(|e| err(format!("unknown command: {e}")))?;
        let options = Options::deserialize(toml::Value::Table(table)).map_err(|e| err(e.to_string()))?;
        Ok(Self { command, options })
    }

    pub fn from_toml_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
        Self::from_toml(&text, path)
    }
}

#[derive(Debug, Parser)]
#[command(name = "oscnet", version, about = "Perfect state transfer around a ring of coupled oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Coupling matrix λ for cyclic (or --perm) transfer, as JSON or CSV.
    Synthesize(Options),
    /// Mode propagator μ(t), or reduced characteristic functions with --alpha.
    Evolve(Options),
    /// CSV of g_site(t) over a uniform grid.
    SweepG(Options),
    /// Check that μ(t) moves site --from onto site --to.
    TransferCheck(Options),
    /// Fock state |n,0,…⟩ through the brute-force oracle at t = kτ.
    FockDemo(Options),
    /// Entangled pair (|n,0,…⟩ + |0,n,…⟩)/√2 through the oracle.
    EntangleDemo(Options),
    /// One photon through two beam splitters.
    BsCascade(Options),
    /// Structural identities and the Bogoliubov checks for a network.
    Validate(Options),
    /// Run a command described by a TOML config file.
    RunConfig { path: PathBuf },
}

impl Cli {
    pub fn into_run_config(self) -> Result<RunConfig, CliError> {
        let (command, options) = match self.command {
            CliCommand::Synthesize(o) => (Command::Synthesize, o),
            CliCommand::Evolve(o) => (Command::Evolve, o),
            CliCommand::SweepG(o) => (Command::SweepG, o),
            CliCommand::TransferCheck(o) => (Command::TransferCheck, o),
            CliCommand::FockDemo(o) => (Command::FockDemo, o),
            CliCommand::EntangleDemo(o) => (Command::EntangleDemo, o),
            CliCommand::BsCascade(o) => (Command::BsCascade, o),
            CliCommand::Validate(o) => (Command::Validate, o),
            CliCommand::RunConfig { path } => return RunConfig::from_toml_file(&path),
        };
        Ok(RunConfig { command, options })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse_into_options() {
        let cli = Cli::try_parse_from([
            "oscnet",
            "sweep-g",
            "--s",
            "7",
            "--m",
            "0,1,0,0,0,2,0",
            "--t-max",
            "7",
            "--steps",
            "701",
            "--t-min",
            "-1",
        ])
        .unwrap();
        let cfg = cli.into_run_config().unwrap();
        assert_eq!(cfg.command, Command::SweepG);
        assert_eq!(cfg.options.s, Some(7));
        assert_eq!(cfg.options.m.as_deref(), Some("0,1,0,0,0,2,0"));
        assert_eq!(cfg.options.t_min, Some(-1.0));
        assert_eq!(cfg.options.t_max, Some(7.0));
    }

    #[test]
    fn toml_config_parses() {
        let text = r#"
            command = "sweep-g"
            s = 7
            m = [0, 1, 0, 0, 0, 2, 0]
            t-max = 7.0
            steps = 701
            format = "csv"
        "#;
        let cfg = RunConfig::from_toml(text, Path::new("x.toml")).unwrap();
        assert_eq!(cfg.command, Command::SweepG);
        assert_eq!(cfg.options.m.as_deref(), Some("0,1,0,0,0,2,0"));
        assert_eq!(cfg.options.format, Some(Format::Csv));

        let broadcast = RunConfig::from_toml("command = \"synthesize\"\ns = 3\nm = 2", Path::new("y")).unwrap();
        assert_eq!(broadcast.options.m.as_deref(), Some("2"));
    }

    #[test]
    fn toml_config_errors() {
        let p = Path::new("c.toml");
        assert!(matches!(RunConfig::from_toml("s = 3", p), Err(CliError::Config { .. })));
        assert!(RunConfig::from_toml("command = \"bogus\"", p).is_err());
        assert!(RunConfig::from_toml("command = \"evolve\"\nwhat = 1", p).is_err());
        assert!(RunConfig::from_toml("command = ", p).is_err());
    }
}
