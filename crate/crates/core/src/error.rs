use thiserror::Error;

/// Default cap on the number of terms in any intermediate element.
pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

/// Name of the environment variable overriding [`DEFAULT_MAX_TERMS`].
pub const MAX_TERMS_ENV: &str = "HOPFKIT_MAX_TERMS";

/// An intermediate element grew past the configured term cap. The
/// computation is abandoned rather than continued with a partial answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("intermediate result has {size} terms, exceeding the cap of {limit} (set {MAX_TERMS_ENV} to raise it)")]
pub struct TermLimitExceeded {
    pub size: usize,
    pub limit: usize,
}

/// Reads the term cap from the environment, falling back to the default
/// when the variable is unset or unparsable.
pub fn max_terms_from_env() -> usize {
    std::env::var(MAX_TERMS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_TERMS)
}
