//! JSON over HTTP for the explorer.

use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::census::{curve, histogram, images};
use crate::session::{CreateRequest, Move, Op, SessionError, Store};

pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::BadRequest(_) => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError(status, e.to_string())
    }
}

impl From<adinkra::Error> for ApiError {
    fn from(e: adinkra::Error) -> Self {
        ApiError(StatusCode::UNPROCESSABLE_ENTITY, e.to_string())
    }
}

type ApiResult = Result<Response, ApiError>;

fn ok<T: serde::Serialize>(value: T) -> ApiResult {
    Ok(Json(value).into_response())
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/:id", get(show))
        .route("/session/:id/lower", post(lower))
        .route("/session/:id/raise", post(raise))
        .route("/session/:id/divisor", get(divisor))
        .route("/session/:id/image", get(image))
        .route("/session/:id/moves", get(moves))
        .route("/session/:id/splitting", get(splitting))
        .route("/census", get(census_route))
        .with_state(store)
}

async fn create(State(store): State<Arc<Store>>, Json(req): Json<CreateRequest>) -> ApiResult {
    let view = store.create(req)?;
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

async fn show(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult {
    ok(store.with(&id, |s| Ok(s.view()))?)
}

#[derive(Deserialize)]
struct VertexBody {
    vertex: u32,
}

async fn lower(State(store): State<Arc<Store>>, Path(id): Path<String>, Json(b): Json<VertexBody>) -> ApiResult {
    ok(store.play(&id, Move { op: Op::Lower, vertex: b.vertex })?)
}

async fn raise(State(store): State<Arc<Store>>, Path(id): Path<String>, Json(b): Json<VertexBody>) -> ApiResult {
    ok(store.play(&id, Move { op: Op::Raise, vertex: b.vertex })?)
}

async fn divisor(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult {
    ok(store.with(&id, |s| Ok(s.divisor()))?)
}

async fn image(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult {
    let img = store.with(&id, |s| {
        s.image().ok_or_else(|| SessionError::BadRequest(adinkra::Error::NeedsFive(s.current().n()).to_string()))
    })?;
    ok(img)
}

async fn moves(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult {
    ok(store.with(&id, |s| Ok(s.moves()))?)
}

#[derive(Deserialize)]
struct SplitQuery {
    k: u8,
    base: Option<u32>,
}

async fn splitting(State(store): State<Arc<Store>>, Path(id): Path<String>, Query(q): Query<SplitQuery>) -> ApiResult {
    ok(store.with(&id, |s| s.splitting(q.k, q.base))?)
}

#[derive(Deserialize)]
struct CensusQuery {
    k: u8,
}

async fn census_route(Query(q): Query<CensusQuery>) -> ApiResult {
    let k = curve(q.k)?;
    let h = tokio::task::spawn_blocking(move || histogram(images(), k))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    ok(h)
}

pub async fn serve(store: Arc<Store>, host: &str, port: u16) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
