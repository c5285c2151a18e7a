use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

async fn get(uri: &str) -> (StatusCode, Option<String>, Value) {
    let res = envlab::service::router()
        .oneshot(Request::builder().uri(uri).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let status = res.status();
    let cors = res.headers().get("access-control-allow-origin").map(|v| v.to_str().unwrap().to_string());
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, cors, serde_json::from_slice(&bytes).unwrap())
}

fn classes(body: &Value) -> Vec<String> {
    body["singular"].as_array().unwrap().iter().map(|s| s["class"].as_str().unwrap().to_string()).collect()
}

#[tokio::test]
async fn health() {
    let (status, cors, body) = get("/api/health").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["ok"], true);
    assert!(cors.is_some());
}

#[tokio::test]
async fn nephroid_envelope() {
    let (status, cors, body) = get("/api/envelope?a=3&b=1").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(cors.as_deref(), Some(envlab::service::cors_origin().as_str()));
    assert_eq!(body["arcs"].as_array().unwrap().len(), 1);
    assert_eq!(classes(&body), ["SimpleCusp", "SimpleCusp"]);
    assert!(body["cuts"].as_array().unwrap().is_empty());
    assert_eq!(body["predictions"]["tangency_count"], 2);
}

#[tokio::test]
async fn butterfly_cell() {
    let (status, _, body) = get("/api/envelope?a=3&b=4&r=2.5&n=512").await;
    assert_eq!(status, StatusCode::OK);
    assert!(classes(&body).contains(&"Butterfly".to_string()));
    let left = &body["singular"][0];
    assert!((left["x"].as_f64().unwrap() + 5.0 / 7.0).abs() < 1e-9);
}

#[tokio::test]
async fn cuts_and_lines() {
    let (status, _, body) = get("/api/envelope?a=-2&b=3&r=1.2&include_lines=true&line_count=12").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["cuts"].as_array().unwrap().len(), 10);
    assert_eq!(body["family"]["lines"].as_array().unwrap().len(), 12);
    for c in body["cuts"].as_array().unwrap() {
        assert!(c["T"].is_f64());
    }
}

#[tokio::test]
async fn rejected_requests() {
    let (status, cors, body) = get("/api/envelope?a=1&b=1").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["reason"], "excluded_slope");
    assert!(cors.is_some());
    let (status, _, body) = get("/api/envelope?a=3&b=1&n=8").await;
    assert_eq!((status, body["field"].as_str()), (StatusCode::BAD_REQUEST, Some("n")));
    let (status, _, body) = get("/api/envelope?a=3&b=1&r=nan").await;
    assert_eq!((status, body["reason"].as_str()), (StatusCode::BAD_REQUEST, Some("invalid_parameter")));
    let (status, _, body) = get("/api/standard?model=fold").await;
    assert_eq!((status, body["reason"].as_str()), (StatusCode::BAD_REQUEST, Some("unknown_model")));
}

#[tokio::test]
async fn standard_models() {
    let (status, _, body) = get("/api/standard?model=butterfly&y=0&z=0").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(classes(&body), ["Butterfly"]);
    let (_, _, body) = get("/api/standard?model=swallowtail&z=1").await;
    assert!(classes(&body).is_empty());
    assert_eq!(body["family"]["crossings"], 0);
    let (_, _, body) = get("/api/standard?model=swallowtail&z=-1").await;
    assert_eq!((classes(&body).len(), body["family"]["crossings"].as_u64()), (2, Some(1)));
    let a: f64 = 4.712;
    let (_, _, body) = get(&format!("/api/standard?model=butterfly&y={}&z={}", 0.5 * a.cos(), 0.5 * a.sin())).await;
    assert_eq!(classes(&body).len(), 3);
}

#[tokio::test]
async fn identical_queries_give_identical_bodies() {
    let uri = "/api/envelope?a=5&b=4&n=700&include_lines=true";
    let (_, _, x) = get(uri).await;
    let _ = get("/api/envelope?a=-4&b=3&r=3.5").await;
    let (_, _, y) = get(uri).await;
    assert_eq!(x, y);
}
