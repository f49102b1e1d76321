use std::fs;

use clap::{Args, ValueEnum};
use photocount::{Complex64, StateModel};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Coherent,
    Thermal,
    Squeezed,
    DisplacedThermal,
    Fock,
}

impl StateKind {
    fn name(self) -> &'static str {
        match self {
            StateKind::Coherent => "coherent",
            StateKind::Thermal => "thermal",
            StateKind::Squeezed => "squeezed",
            StateKind::DisplacedThermal => "displaced-thermal",
            StateKind::Fock => "fock",
        }
    }
}

/// One light field, given as `--state` plus its own parameter flags.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub state: StateKind,
    /// Coherent amplitude, e.g. `1`, `0.5-0.2i`, `2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Mean thermal photon number.
    #[arg(long, allow_hyphen_values = true)]
    pub nbar: Option<f64>,
    /// Squeezing parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Photon-number probabilities `P_0,P_1,...` or `@path` to a one-column file.
    #[arg(long)]
    pub probs: Option<String>,
}

pub fn parse_complex(flag: &'static str, s: &str) -> Result<Complex64, CliError> {
    s.trim().parse::<Complex64>().map_err(|_| CliError::Parse {
        flag,
        value: s.to_string(),
        expected: "complex number such as 1, -0.5+0.2i or 2i",
    })
}

fn parse_probs(s: &str) -> Result<Vec<f64>, CliError> {
    let (text, sep_is_line) = match s.strip_prefix('@') {
        Some(path) => (
            fs::read_to_string(path).map_err(|source| CliError::ProbsFile {
                path: path.to_string(),
                source,
            })?,
            true,
        ),
        None => (s.to_string(), false),
    };
    let items: Vec<&str> = if sep_is_line {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect()
    } else {
        text.split(',').map(str::trim).collect()
    };
    items
        .iter()
        .map(|v| {
            v.parse::<f64>().map_err(|_| CliError::Parse {
                flag: "probs",
                value: v.to_string(),
                expected: "real number",
            })
        })
        .collect()
}

impl StateArgs {
    pub fn build(&self) -> Result<StateModel, CliError> {
        let kind = self.state;
        let state = kind.name();
        let given = [
            ("alpha", self.alpha.is_some()),
            ("nbar", self.nbar.is_some()),
            ("lambda", self.lambda.is_some()),
            ("probs", self.probs.is_some()),
        ];
        let wanted: &[&str] = match kind {
            StateKind::Coherent => &["alpha"],
            StateKind::Thermal => &["nbar"],
            StateKind::Squeezed => &["lambda"],
            StateKind::DisplacedThermal => &["alpha", "nbar"],
            StateKind::Fock => &["probs"],
        };
        for (flag, present) in given {
            if present && !wanted.contains(&flag) {
                return Err(CliError::UnusedFlag { flag, state });
            }
        }
        let missing = |flag| CliError::MissingFlag { flag, state };
        let alpha = || -> Result<Complex64, CliError> {
            parse_complex("alpha", self.alpha.as_deref().ok_or_else(|| missing("alpha"))?)
        };
        let model = match kind {
            StateKind::Coherent => StateModel::coherent(alpha()?)?,
            StateKind::Thermal => StateModel::thermal(self.nbar.ok_or_else(|| missing("nbar"))?)?,
            StateKind::Squeezed => StateModel::squeezed_vacuum(self.lambda.ok_or_else(|| missing("lambda"))?)?,
            StateKind::DisplacedThermal => {
                StateModel::displaced_thermal(alpha()?, self.nbar.ok_or_else(|| missing("nbar"))?)?
            }
            StateKind::Fock => {
                StateModel::fock_mixture(parse_probs(self.probs.as_deref().ok_or_else(|| missing("probs"))?)?)?
            }
        };
        Ok(model)
    }
}
