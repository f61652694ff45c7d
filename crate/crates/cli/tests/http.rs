use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use tubular_cli::api;
use tubular_cli::http::router;

async fn call(method: &str, uri: &str, body: Option<String>) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn post(uri: &str, body: Value) -> (StatusCode, Value) {
    let (s, b) = call("POST", uri, Some(body.to_string())).await;
    (s, serde_json::from_str(&b).unwrap())
}

#[tokio::test]
async fn fixture_catalog() {
    let (s, b) = call("GET", "/fixtures", None).await;
    assert_eq!(s, StatusCode::OK);
    let v: Value = serde_json::from_str(&b).unwrap();
    assert_eq!(v["schema"], "1");
    assert!(v["fixtures"].as_array().unwrap().len() >= 7);
    let (s, b) = call("GET", "/fixtures/cuboid_cluster_244", None).await;
    assert_eq!(s, StatusCode::OK);
    let v: Value = serde_json::from_str(&b).unwrap();
    assert_eq!(v["fixture"]["quiver"]["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(call("GET", "/fixtures/nope", None).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn double_mutation_round_trips() {
    let (_, start) = call("GET", "/fixtures/tbar_cluster_333", None).await;
    let q: Value = serde_json::from_str::<Value>(&start).unwrap()["fixture"]["quiver"].clone();
    let (s, once) = post("/mutate", json!({"quiver": q, "vertex": 4})).await;
    assert_eq!(s, StatusCode::OK);
    let (_, twice) = post("/mutate", json!({"quiver": once["quiver"], "vertex": 4})).await;
    assert_eq!(twice["quiver"], q);
}

#[tokio::test]
async fn apply_iso_and_search() {
    let (s, r) = post("/apply", json!({"quiver": "tbar_cluster_333", "sequence": [1, 2, 3]})).await;
    assert_eq!(s, StatusCode::OK);
    let (_, iso) = post("/iso", json!({"q1": r["quiver"], "q2": "target_tubular_333"})).await;
    assert_eq!(iso["isomorphic"], true);
    assert!(iso["witness"]["pairs"].is_array());
    let (_, iso) = post("/iso", json!({"q1": "cuboid_cluster_244", "q2": "target_tubular_244"})).await;
    assert_eq!(iso["isomorphic"], false);
    let (s, found) =
        post("/search", json!({"source": "cuboid_cluster_244", "target": "target_tubular_244", "maxDepth": 5})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(found["sequence"], json!([1, 2, 3, 4, 5]));
    let (_, none) =
        post("/search", json!({"source": "cuboid_cluster_244", "target": "target_tubular_244", "maxDepth": 2})).await;
    assert_eq!(none["found"], false);
    assert!(none.get("sequence").is_none());
}

#[tokio::test]
async fn bundle_equality() {
    let (s, v) = post("/bundle/eq", json!({"weights": "2,4,4", "a": "E<0,2,0>(x3)", "b": "E<0,0,0>(x1-x2+x3)"})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["equal"], true);
    let (_, v) = post("/bundle/eq", json!({"weights": [2, 4, 4], "a": "E", "b": "E(x1)"})).await;
    assert_eq!(v["equal"], false);
    let (s, _) = post("/bundle/eq", json!({"weights": "2,4", "a": "E", "b": "E"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn replays() {
    for kind in ["244", "236", "333"] {
        let (s, v) = post(&format!("/replay/{kind}"), json!(null)).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(v["pass"], true, "{kind}");
        assert_eq!(v["schema"], "1");
    }
    assert_eq!(call("POST", "/replay/245", None).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn error_statuses() {
    assert_eq!(call("POST", "/mutate", Some("{not json".into())).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call("POST", "/mutate", Some(r#"{"vertex": 1}"#.into())).await.0, StatusCode::BAD_REQUEST);
    let dangling = json!({"quiver": {"vertices": [{"id": 1, "label": ""}], "arrows": [{"from": 1, "to": 2, "mult": 1}]}, "vertex": 1});
    assert_eq!(post("/mutate", dangling).await.0, StatusCode::BAD_REQUEST);
    let looped = json!({"quiver": {"vertices": [{"id": 1, "label": ""}], "arrows": [{"from": 1, "to": 1, "mult": 1}]}, "vertex": 1});
    assert_eq!(post("/mutate", looped).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    let two_cycle = json!({"quiver": {
        "vertices": [{"id": 1, "label": "a"}, {"id": 2, "label": "b"}],
        "arrows": [{"from": 1, "to": 2, "mult": 1}, {"from": 2, "to": 1, "mult": 1}]
    }, "vertex": 1});
    let (s, v) = post("/mutate", two_cycle).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].as_str().unwrap().contains("2-cycle"));
    assert_eq!(post("/mutate", json!({"quiver": "nope", "vertex": 1})).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn identical_requests_identical_bodies() {
    let body = json!({"quiver": "cuboid_cluster_236", "sequence": "1,2,3,4,5,6,1"}).to_string();
    let a = call("POST", "/apply", Some(body.clone())).await.1;
    let b = call("POST", "/apply", Some(body)).await.1;
    assert_eq!(a, b);
    let q = tubular_core::quiver::fixture("cuboid_cluster_236").unwrap().quiver;
    assert_eq!(a, api::apply(q, &[1, 2, 3, 4, 5, 6, 1]).unwrap().to_json_string());
}
