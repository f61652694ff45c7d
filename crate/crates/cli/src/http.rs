//! Local JSON service. Handlers parse the body themselves so that any
//! malformed JSON is a 400, and quivers violating the no-loop, no-2-cycle
//! rule are a 422.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::Path;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use crate::api::{self, Answer, ApiError, ApiResult, QuiverIn, SequenceIn, WeightsIn};

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Invalid(_) => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let body = json!({"schema": api::SCHEMA, "error": self.to_string()}).to_string();
        (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
    }
}

impl IntoResponse for Answer {
    fn into_response(self) -> Response {
        ([(header::CONTENT_TYPE, "application/json")], self.to_json_string()).into_response()
    }
}

fn body<T: DeserializeOwned>(bytes: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::BadRequest(format!("request body: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateReq {
    quiver: QuiverIn,
    vertex: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplyReq {
    quiver: QuiverIn,
    sequence: SequenceIn,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IsoReq {
    q1: QuiverIn,
    q2: QuiverIn,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct SearchReq {
    source: QuiverIn,
    target: QuiverIn,
    #[serde(default = "default_depth")]
    max_depth: usize,
}

fn default_depth() -> usize {
    8
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleEqReq {
    weights: WeightsIn,
    a: String,
    b: String,
}

async fn fixtures() -> Answer {
    api::fixture_list()
}

async fn fixture(Path(name): Path<String>) -> ApiResult<Answer> {
    api::fixture_one(&name)
}

async fn mutate(bytes: Bytes) -> ApiResult<Answer> {
    let r: MutateReq = body(&bytes)?;
    api::mutate(r.quiver.resolve()?, r.vertex)
}

async fn apply(bytes: Bytes) -> ApiResult<Answer> {
    let r: ApplyReq = body(&bytes)?;
    api::apply(r.quiver.resolve()?, &r.sequence.resolve()?)
}

async fn iso(bytes: Bytes) -> ApiResult<Answer> {
    let r: IsoReq = body(&bytes)?;
    api::iso(&r.q1.resolve()?, &r.q2.resolve()?)
}

async fn search(bytes: Bytes) -> ApiResult<Answer> {
    let r: SearchReq = body(&bytes)?;
    let (s, t) = (r.source.resolve()?, r.target.resolve()?);
    tokio::task::spawn_blocking(move || api::search(&s, &t, r.max_depth))
        .await
        .map_err(|e| ApiError::BadRequest(e.to_string()))?
}

async fn bundle_eq(bytes: Bytes) -> ApiResult<Answer> {
    let r: BundleEqReq = body(&bytes)?;
    api::bundle_eq(r.weights.resolve()?, &r.a, &r.b)
}

async fn replay(Path(kind): Path<String>) -> ApiResult<Answer> {
    api::replay(&kind)
}

pub fn router() -> Router {
    Router::new()
        .route("/fixtures", get(fixtures))
        .route("/fixtures/{name}", get(fixture))
        .route("/mutate", post(mutate))
        .route("/apply", post(apply))
        .route("/iso", post(iso))
        .route("/search", post(search))
        .route("/bundle/eq", post(bundle_eq))
        .route("/replay/{kind}", post(replay))
}

/// Serves on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
