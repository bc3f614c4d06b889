//! Error responses.

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

/// Request failures, mapped to HTTP status codes.
#[derive(Debug)]
pub enum ApiError {
    /// Body is not valid JSON or does not match the schema (400).
    Schema { path: String, message: String },
    /// Well-formed request with physically invalid values (422).
    Validation { field: String, message: String },
    /// The computation failed (500).
    Numerical(String),
}

impl From<vibronic::Error> for ApiError {
    fn from(e: vibronic::Error) -> Self {
        match e {
            vibronic::Error::Validation(v) => v.into(),
            vibronic::Error::Numerical(n) => ApiError::Numerical(n.to_string()),
        }
    }
}

impl From<vibronic::ValidationError> for ApiError {
    fn from(v: vibronic::ValidationError) -> Self {
        ApiError::Validation {
            field: v.field().to_string(),
            message: v.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::Schema { path, message } => (
                StatusCode::BAD_REQUEST,
                json!({"error": "schema", "path": path, "message": message}),
            ),
            ApiError::Validation { field, message } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": "validation", "field": field, "message": message}),
            ),
            ApiError::Numerical(message) => (
                StatusCode::INTERNAL_SERVER_ERROR,
                json!({"error": "numerical", "message": message}),
            ),
        };
        (status, Json(body)).into_response()
    }
}

/// Parses a JSON body, reporting the path of the first offending field.
pub fn parse_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    let mut de = serde_json::Deserializer::from_slice(body);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| ApiError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| ApiError::Schema {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}
