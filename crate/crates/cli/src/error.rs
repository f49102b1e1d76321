use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("--{flag} is required for --state {state}")]
    MissingFlag { flag: &'static str, state: &'static str },

    #[error("--{flag} is not a parameter of --state {state}")]
    UnusedFlag { flag: &'static str, state: &'static str },

    #[error("--{flag}: cannot parse `{value}` ({expected})")]
    Parse {
        flag: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("--probs: cannot read `{path}`: {source}")]
    ProbsFile {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} must be a positive finite number (got `{1}`)")]
    Tolerance(&'static str, String),

    #[error("--{flag} is not a parameter of identity {identity}")]
    IdentityFlag { flag: &'static str, identity: String },

    #[error("--{0} needs --only <identity>")]
    NeedsOnly(&'static str),

    #[error(transparent)]
    Core(#[from] photocount::Error),
}
