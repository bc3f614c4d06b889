//! Requests against the in-process router.

use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;
use vibronic::params::Species;
use vibronic::pipeline::{self, SpectrumRequest};
use vibronic::scubed::{scubed, Load, ScubedRequest};
use vibronic_service::{app, router, AppState, ServiceConfig};

async fn send(app: axum::Router, req: Request<Body>) -> (StatusCode, Value) {
    let res = app.oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn post(path: &str, body: impl Into<String>) -> (StatusCode, Value) {
    let req = Request::post(path)
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(body.into()))
        .unwrap();
    send(router(AppState::default()), req).await
}

async fn get(path: &str) -> (StatusCode, Value) {
    send(router(AppState::default()), Request::get(path).body(Body::empty()).unwrap()).await
}

#[tokio::test]
async fn health_and_presets() {
    let (s, v) = get("/api/health").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["status"], "ok");

    let (s, v) = get("/api/presets").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["species"].as_array().unwrap().len(), 4);
    // Every scenario is a valid request for its endpoint.
    for sc in v["scenarios"].as_array().unwrap() {
        let (s, body) = post(sc["endpoint"].as_str().unwrap(), sc["request"].to_string()).await;
        assert_eq!(s, StatusCode::OK, "{}: {body}", sc["name"]);
    }
}

#[tokio::test]
async fn snv_at_100_kelvin_has_sixteen_lines() {
    let (s, v) = post("/api/spectrum", r#"{"species": "SnV", "temperature_k": 100}"#).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["pl"].as_array().unwrap().len(), 16);
    assert_eq!(v["n_cut"], 20);
    assert!(v["convergence_eps_energy"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["numerical_error"], false);
}

#[tokio::test]
async fn zero_temperature_emits_only_from_the_lowest_excited_state() {
    let (s, v) = post("/api/spectrum", r#"{"species": "SiV", "temperature_k": 0, "n_cut": 12}"#).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    let pl = v["pl"].as_array().unwrap();
    assert!(!pl.is_empty());
    assert!(pl.iter().all(|l| l["initial"] == "A"));
}

#[tokio::test]
async fn schema_violations_are_400_with_a_path() {
    let (s, v) = post("/api/spectrum", r#"{"species": "SnV", "temperature_k": "hot"}"#).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["path"], "temperature_k");

    let (s, v) = post("/api/spectrum", r#"{"species": "CV"}"#).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["path"], "species");

    let (s, v) = post("/api/scubed", r#"{"species": "SiV", "load": {"kind": "stress", "stress_gpa": 1, "direction": [1, 0]}}"#).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    // The load is a tagged union, so the path ends at the union itself.
    assert_eq!(v["path"], "load");
    assert!(v["message"].as_str().unwrap().contains("length 2"), "{v}");

    let (s, _) = post("/api/spectrum", r#"{"species": "SnV", "colour": 1}"#).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = post("/api/spectrum", "not json").await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn physical_violations_are_422() {
    let (s, v) = post("/api/spectrum", r#"{"species": "SnV", "n_cut": 0}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["field"], "n_cut");

    let (s, v) = post("/api/spectrum", r#"{"species": "SnV", "temperature_k": -1}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["field"], "temperature_k");

    let (s, v) = post("/api/scubed", r#"{"species": "SiV", "load": {"kind": "stress", "stress_gpa": 1, "direction": [0, 0, 0]}}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["field"], "load.direction");
}

#[tokio::test]
async fn zero_stress_echoes_the_splittings() {
    let body = json!({
        "species": "SiV",
        "delta_ground_ghz": 50.0,
        "delta_excited_ghz": 260.0,
        "load": {"kind": "stress", "stress_gpa": 0.0, "direction": [1, 1, 0]},
        "n_points": 3
    });
    let (s, v) = post("/api/scubed", body.to_string()).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    for p in v["curve"].as_array().unwrap() {
        assert_eq!(p["delta_ground_ghz"], 50.0);
        assert_eq!(p["delta_excited_ghz"], 260.0);
        assert_eq!(p["zpl_shift_ghz"], 0.0);
    }
}

#[tokio::test]
async fn cantilever_at_280_volts() {
    let body = json!({"species": "SiV", "load": {"kind": "cantilever", "voltage_v": 280.0}});
    let (s, v) = post("/api/scubed", body.to_string()).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    let curve = v["curve"].as_array().unwrap();
    let anisotropy = curve.last().unwrap()["strain_anisotropy"].as_f64().unwrap();
    // Rectangular-prism model with the listed device dimensions.
    assert!((anisotropy - 1.085e-4).abs() < 0.01 * 1.085e-4, "{anisotropy}");
    assert_eq!(v["deformation"]["displacements_ang"].as_array().unwrap().len(), 7);
}

fn assert_close(a: &Value, b: &Value, path: &str) {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0), "{path}: {x} vs {y}");
        }
        (Value::Array(x), Value::Array(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                assert_close(p, q, &format!("{path}[{i}]"));
            }
        }
        (Value::Object(x), Value::Object(y)) => {
            for (k, p) in y {
                assert_close(&x[k], p, &format!("{path}.{k}"));
            }
        }
        _ => assert_eq!(a, b, "{path}"),
    }
}

#[tokio::test]
async fn service_matches_the_library_pipelines() {
    let mut req = SpectrumRequest::new(Species::GeV);
    req.temperature_k = 40.0;
    req.b_z_tesla = 1.5;
    req.n_cut = 14;
    let (s, v) = post("/api/spectrum", serde_json::to_string(&req).unwrap()).await;
    assert_eq!(s, StatusCode::OK);
    assert_close(&v, &serde_json::to_value(pipeline::spectrum(&req).unwrap()).unwrap(), "spectrum");

    let mut req = ScubedRequest::new(
        Species::SnV,
        Load::Stress {
            stress_gpa: -2.0,
            direction: [1.0, 1.0, 0.0],
        },
    );
    req.n_points = 4;
    let (s, v) = post("/api/scubed", serde_json::to_string(&req).unwrap()).await;
    assert_eq!(s, StatusCode::OK);
    assert_close(&v, &serde_json::to_value(scubed(&req).unwrap()).unwrap(), "scubed");
}

#[tokio::test]
async fn cached_and_fresh_responses_agree() {
    let state = AppState::default();
    let body = r#"{"species": "SiV", "n_cut": 10, "temperature_k": 20}"#;
    let mut answers = Vec::new();
    for _ in 0..2 {
        let req = Request::post("/api/spectrum").body(Body::from(body)).unwrap();
        answers.push(send(router(state.clone()), req).await);
    }
    assert_eq!(state.cached_systems(), 1);
    assert_eq!(answers[0], answers[1]);
}

#[tokio::test]
async fn cors_headers_are_sent() {
    let config = ServiceConfig {
        cors_origin: Some("http://localhost:5173".into()),
        ..ServiceConfig::default()
    };
    let req = Request::get("/api/health")
        .header(header::ORIGIN, "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let res = app(&config).unwrap().oneshot(req).await.unwrap();
    assert_eq!(res.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN], "http://localhost:5173");

    let req = Request::get("/api/health").header(header::ORIGIN, "http://example.org").body(Body::empty()).unwrap();
    let res = app(&ServiceConfig::default()).unwrap().oneshot(req).await.unwrap();
    assert_eq!(res.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN], "*");
}

#[tokio::test]
async fn unknown_routes_are_404() {
    let (s, _) = get("/api/nothing").await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}
