//! Client settings from the environment.

use std::path::PathBuf;
use std::time::Duration;

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";

#[derive(Debug, Clone, PartialEq)]
pub struct QueryConfig {
    pub base_url: String,
    /// Serve every read from the cache or fixtures.
    pub offline: bool,
    pub cache_dir: PathBuf,
    /// Requests per second.
    pub rate_limit: f64,
    /// First retry delay; doubled on each further 429 or 5xx.
    pub backoff: Duration,
    pub max_retries: u32,
}

impl QueryConfig {
    /// QT_CACHE_DIR (default ~/.cache/quatorsion), QT_OFFLINE=1 and QT_BASE_URL.
    pub fn from_env() -> Self {
        let cache_dir = match std::env::var_os("QT_CACHE_DIR") {
            Some(d) => PathBuf::from(d),
            None => std::env::var_os("HOME")
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("."))
                .join(".cache")
                .join("quatorsion"),
        };
        QueryConfig {
            base_url: std::env::var("QT_BASE_URL").unwrap_or_else(|_| DEFAULT_BASE_URL.to_string()),
            offline: std::env::var("QT_OFFLINE").is_ok_and(|v| v == "1"),
            cache_dir,
            rate_limit: 1.0,
            backoff: Duration::from_secs(1),
            max_retries: 4,
        }
    }

    pub fn min_interval(&self) -> Duration {
        if self.rate_limit > 0.0 {
            Duration::from_secs_f64(1.0 / self.rate_limit)
        } else {
            Duration::ZERO
        }
    }
}
