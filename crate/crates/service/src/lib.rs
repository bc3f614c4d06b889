//! HTTP/JSON facade over the vibronic pipelines.
//!
//! | method | path            | body                              |
//! |--------|-----------------|-----------------------------------|
//! | GET    | `/api/health`   | —                                 |
//! | GET    | `/api/presets`  | —                                 |
//! | POST   | `/api/spectrum` | [`SpectrumRequest`] JSON          |
//! | POST   | `/api/scubed`   | [`ScubedRequest`] JSON            |
//!
//! Malformed bodies give 400 with the path of the offending field,
//! physically invalid values give 422, numerical failures give 500.
//! Responses never contain NaN or infinities: such values are written as
//! `null` and flagged through `numerical_error`.
//!
//! Solved systems are cached by their full parameter content, so repeated
//! spectrum requests that differ only in temperature or line counts skip
//! the diagonalization. Responses do not depend on the cache state.

pub mod config;
pub mod error;
pub mod finite;
pub mod presets;

use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use lru::LruCache;
use serde_json::json;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::trace::TraceLayer;
use vibronic::pipeline::{self, PreparedSystem, SpectrumRequest, SpectrumResponse};
use vibronic::scubed::{scubed, ScubedRequest};

pub use config::ServiceConfig;
pub use error::ApiError;

/// Shared state: a bounded cache of solved ground/excited systems.
#[derive(Clone)]
pub struct AppState {
    cache: Arc<Mutex<LruCache<String, Arc<PreparedSystem>>>>,
}

impl AppState {
    pub fn new(capacity: NonZeroUsize) -> Self {
        AppState {
            cache: Arc::new(Mutex::new(LruCache::new(capacity))),
        }
    }

    pub fn cached_systems(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }

    /// Solved system for a request, from the cache when possible. The
    /// diagonalization runs outside the lock.
    fn prepared(&self, req: &SpectrumRequest) -> Result<Arc<PreparedSystem>, vibronic::Error> {
        let key = serde_json::to_string(&req.system_key()).expect("keys serialize");
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(p));
        }
        let prepared = Arc::new(pipeline::prepare(&req.system_key())?);
        self.cache.lock().expect("cache lock").put(key, Arc::clone(&prepared));
        Ok(prepared)
    }

    /// The spectrum pipeline with cached diagonalizations.
    pub fn spectrum(&self, req: &SpectrumRequest) -> Result<SpectrumResponse, vibronic::Error> {
        req.validate()?;
        pipeline::spectrum_from(req, &*self.prepared(req)?)
    }
}

impl Default for AppState {
    fn default() -> Self {
        AppState::new(ServiceConfig::default().cache_capacity)
    }
}

/// Runs blocking numerical work off the async executor.
async fn compute<T: Send + 'static>(f: impl FnOnce() -> Result<T, vibronic::Error> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Numerical(format!("computation aborted: {e}")))?
        .map_err(ApiError::from)
}

async fn health(State(state): State<AppState>) -> impl IntoResponse {
    Json(json!({
        "status": "ok",
        "version": env!("CARGO_PKG_VERSION"),
        "cached_systems": state.cached_systems(),
    }))
}

async fn presets_handler() -> impl IntoResponse {
    Json(presets::presets())
}

async fn spectrum_handler(State(state): State<AppState>, body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let req: SpectrumRequest = error::parse_body(&body)?;
    req.validate()?;
    let response = compute(move || state.spectrum(&req)).await?;
    Ok(Json(finite::to_json(&response)))
}

async fn scubed_handler(body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let req: ScubedRequest = error::parse_body(&body)?;
    req.validate()?;
    let response = compute(move || scubed(&req)).await?;
    Ok(Json(finite::to_json(&response)))
}

async fn not_found() -> impl IntoResponse {
    (StatusCode::NOT_FOUND, Json(json!({"error": "not_found"})))
}

fn cors(config: &ServiceConfig) -> Result<CorsLayer, String> {
    let origin = match &config.cors_origin {
        None => AllowOrigin::from(Any),
        Some(o) => AllowOrigin::exact(HeaderValue::from_str(o).map_err(|e| format!("CORS origin {o:?}: {e}"))?),
    };
    Ok(CorsLayer::new()
        .allow_origin(origin)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]))
}

/// The routes without middleware.
pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/presets", get(presets_handler))
        .route("/api/spectrum", post(spectrum_handler))
        .route("/api/scubed", post(scubed_handler))
        .fallback(not_found)
        .with_state(state)
}

/// The full application: routes, CORS and request tracing.
pub fn app(config: &ServiceConfig) -> Result<Router, String> {
    Ok(router(AppState::new(config.cache_capacity))
        .layer(cors(config)?)
        .layer(TraceLayer::new_for_http()))
}
