//! Stateless HTTP/JSON endpoints.
//!
//! Every handler is a pure function of the query string, so the same query
//! always produces the same body.

use std::collections::HashMap;
use std::net::SocketAddr;

use axum::extract::Query;
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde_json::{json, Value};

use crate::error::EnvError;
use crate::families::{Catastrophe, FamilySpec};
use crate::render::{envelope_scene, standard_scene, SceneOptions};
use crate::trig::RationalSlope;

pub const DEFAULT_PORT: u16 = 8642;
pub const MAX_SAMPLES: usize = 65536;
const DEFAULT_SAMPLES: usize = 2048;
const DEFAULT_LINES: usize = 64;

pub type Reply = (StatusCode, Value);

fn bad(field: &str, message: impl Into<String>) -> Reply {
    (StatusCode::BAD_REQUEST, json!({ "reason": "invalid_parameter", "field": field, "message": message.into() }))
}

fn parse<T: std::str::FromStr>(q: &HashMap<String, String>, key: &str, default: Option<T>) -> Result<T, Reply> {
    match q.get(key) {
        Some(raw) => raw.trim().parse().map_err(|_| bad(key, format!("cannot parse {raw:?}"))),
        None => default.ok_or_else(|| bad(key, "missing")),
    }
}

fn finite(key: &str, v: f64) -> Result<f64, Reply> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(key, "must be finite"))
    }
}

fn samples(q: &HashMap<String, String>) -> Result<usize, Reply> {
    let n: usize = parse(q, "n", Some(DEFAULT_SAMPLES))?;
    if n < 64 {
        return Err(bad("n", "must be at least 64"));
    }
    Ok(n.min(MAX_SAMPLES))
}

fn from_error(e: EnvError) -> Reply {
    match e {
        EnvError::ExcludedSlope { .. } => {
            (StatusCode::UNPROCESSABLE_ENTITY, json!({ "reason": "excluded_slope", "message": e.to_string() }))
        }
        EnvError::InvalidRadius(_) => bad("r", e.to_string()),
        EnvError::ZeroDenominator => bad("b", e.to_string()),
        other => (StatusCode::UNPROCESSABLE_ENTITY, json!({ "reason": "not_computable", "message": other.to_string() })),
    }
}

/// `GET /api/envelope?a=&b=&r=&c=&d=&n=&include_lines=&line_count=`
pub fn envelope(q: &HashMap<String, String>) -> Reply {
    let run = || -> Result<Value, Reply> {
        let a: i64 = parse(q, "a", None)?;
        let b: i64 = parse(q, "b", None)?;
        let r = finite("r", parse(q, "r", Some(1.0))?)?;
        let c = finite("c", parse(q, "c", Some(0.0))?)?;
        let d = finite("d", parse(q, "d", Some(0.0))?)?;
        let n = samples(q)?;
        let include_lines: bool = parse(q, "include_lines", Some(false))?;
        let line_count: usize = parse(q, "line_count", Some(DEFAULT_LINES))?;
        if line_count > 4096 {
            return Err(bad("line_count", "at most 4096"));
        }
        RationalSlope::for_envelope(a, b).map_err(from_error)?;
        let family = FamilySpec::from_params(a, b, r, c, d).build().map_err(from_error)?;
        let opts = SceneOptions { samples: n, line_count: if include_lines { line_count } else { 0 } };
        let scene = envelope_scene(&family, opts).map_err(from_error)?;
        serde_json::to_value(scene.document()).map_err(|e| (StatusCode::INTERNAL_SERVER_ERROR, json!({ "reason": "internal", "message": e.to_string() })))
    };
    match run() {
        Ok(v) => (StatusCode::OK, v),
        Err(e) => e,
    }
}

/// `GET /api/standard?model=&y=&z=&n=`
pub fn standard(q: &HashMap<String, String>) -> Reply {
    let run = || -> Result<Value, Reply> {
        let model = match q.get("model").map(String::as_str) {
            Some("swallowtail") => Catastrophe::Swallowtail,
            Some("butterfly") => Catastrophe::Butterfly,
            Some(other) => {
                return Err((StatusCode::BAD_REQUEST, json!({ "reason": "unknown_model", "field": "model", "message": format!("unknown model {other:?}") })))
            }
            None => return Err(bad("model", "missing")),
        };
        let y = finite("y", parse(q, "y", Some(0.0))?)?;
        let z = finite("z", parse(q, "z", Some(0.0))?)?;
        let n = samples(q)?;
        let params = match model {
            Catastrophe::Swallowtail => vec![z],
            Catastrophe::Butterfly => vec![y, z],
        };
        let scene = standard_scene(model, &params, n).map_err(from_error)?;
        serde_json::to_value(scene.document()).map_err(|e| (StatusCode::INTERNAL_SERVER_ERROR, json!({ "reason": "internal", "message": e.to_string() })))
    };
    match run() {
        Ok(v) => (StatusCode::OK, v),
        Err(e) => e,
    }
}

pub fn health() -> Reply {
    (StatusCode::OK, json!({ "ok": true }))
}

async fn blocking(f: fn(&HashMap<String, String>) -> Reply, q: HashMap<String, String>) -> Response {
    let reply = tokio::task::spawn_blocking(move || f(&q))
        .await
        .unwrap_or_else(|e| (StatusCode::INTERNAL_SERVER_ERROR, json!({ "reason": "internal", "message": e.to_string() })));
    (reply.0, Json(reply.1)).into_response()
}

/// Value of the `Access-Control-Allow-Origin` header.
pub fn cors_origin() -> String {
    std::env::var("ENVLAB_CORS_ORIGIN").ok().filter(|s| !s.is_empty()).unwrap_or_else(|| "*".into())
}

pub fn router() -> Router {
    let origin = HeaderValue::from_str(&cors_origin()).unwrap_or(HeaderValue::from_static("*"));
    Router::new()
        .route("/api/envelope", get(|Query(q): Query<HashMap<String, String>>| blocking(envelope, q)))
        .route("/api/standard", get(|Query(q): Query<HashMap<String, String>>| blocking(standard, q)))
        .route("/api/health", get(|| async { let (s, v) = health(); (s, Json(v)) }))
        .layer(axum::middleware::map_response(move |mut res: Response| {
            let origin = origin.clone();
            async move {
                res.headers_mut().insert("access-control-allow-origin", origin);
                res
            }
        }))
}

/// `--port`, then `ENVLAB_PORT`, then the default.
pub fn resolve_port(flag: Option<u16>) -> u16 {
    flag.or_else(|| std::env::var("ENVLAB_PORT").ok().and_then(|p| p.parse().ok())).unwrap_or(DEFAULT_PORT)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, router()).await
}
