//! Service settings read from the environment.

use std::net::{IpAddr, SocketAddr};
use std::num::NonZeroUsize;

/// Bind address (default `127.0.0.1`).
pub const HOST_VAR: &str = "VIBRONIC_HOST";
/// Port (default `8080`).
pub const PORT_VAR: &str = "VIBRONIC_PORT";
/// Allowed CORS origin; `*` or unset allows any origin.
pub const CORS_ORIGIN_VAR: &str = "VIBRONIC_CORS_ORIGIN";
/// Number of solved systems kept in memory (default 64).
pub const CACHE_SIZE_VAR: &str = "VIBRONIC_CACHE_SIZE";

#[derive(Clone, Debug, PartialEq)]
pub struct ServiceConfig {
    pub host: IpAddr,
    pub port: u16,
    /// `None` allows any origin.
    pub cors_origin: Option<String>,
    pub cache_capacity: NonZeroUsize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            host: IpAddr::from([127, 0, 0, 1]),
            port: 8080,
            cors_origin: None,
            cache_capacity: NonZeroUsize::new(64).unwrap(),
        }
    }
}

impl ServiceConfig {
    pub fn from_env() -> Result<Self, String> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    /// Reads settings through `lookup`, falling back to the defaults.
    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, String> {
        let mut c = ServiceConfig::default();
        if let Some(h) = lookup(HOST_VAR) {
            c.host = h.trim().parse().map_err(|e| format!("{HOST_VAR}={h}: {e}"))?;
        }
        if let Some(p) = lookup(PORT_VAR) {
            c.port = p.trim().parse().map_err(|e| format!("{PORT_VAR}={p}: {e}"))?;
        }
        if let Some(o) = lookup(CORS_ORIGIN_VAR) {
            let o = o.trim();
            c.cors_origin = (!o.is_empty() && o != "*").then(|| o.to_string());
        }
        if let Some(n) = lookup(CACHE_SIZE_VAR) {
            c.cache_capacity = n
                .trim()
                .parse()
                .map_err(|e| format!("{CACHE_SIZE_VAR}={n}: {e} (must be ≥ 1)"))?;
        }
        Ok(c)
    }

    pub fn socket_addr(&self) -> SocketAddr {
        SocketAddr::new(self.host, self.port)
    }
}
