//! JSON over HTTP: expression analysis and square-dance sessions.

use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::net::TcpListener;

use tanglekit::tangle::{self, CanonicalTangle};
use tanglekit::{parse_fraction, parse_tangle, Error, Move};

use crate::report::{analyze, AnalysisReport};
use crate::store::{Session, SessionStore, StoreError};

pub type AppState = Arc<SessionStore>;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn new(status: StatusCode, kind: &str, message: impl ToString) -> Self {
        Self {
            status,
            body: json!({ "error": kind, "message": message.to_string() }),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match &e {
            Error::Syntax(s) => Self {
                status: StatusCode::BAD_REQUEST,
                body: json!({
                    "error": "syntax",
                    "message": e.to_string(),
                    "span": { "start": s.span.start, "end": s.span.end },
                    "expected": s.expected,
                }),
            },
            Error::NotRational => Self::new(StatusCode::UNPROCESSABLE_ENTITY, "not_rational", e),
            Error::AlreadySolved => Self::new(StatusCode::CONFLICT, "already_solved", e),
            _ => Self::new(StatusCode::BAD_REQUEST, "invalid", e),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::NotFound(_) => Self::new(StatusCode::NOT_FOUND, "not_found", e),
            StoreError::Engine(inner) => inner.into(),
            other => Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", other),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Deserialize)]
pub struct AnalyzeRequest {
    pub expr: String,
}

#[derive(Deserialize)]
pub struct EquivRequest {
    pub a: String,
    pub b: String,
}

#[derive(Deserialize)]
pub struct NewGameRequest {
    pub target: String,
}

#[derive(Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub mv: String,
}

/// A session as the client sees it.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub session_id: String,
    pub current: String,
    pub target: String,
    pub history: String,
    pub moves: usize,
    pub solved: bool,
    pub canonical: CanonicalTangle,
    pub created_at: u64,
    pub updated_at: u64,
}

impl From<&Session> for SessionView {
    fn from(s: &Session) -> Self {
        let current = s.state.current();
        let canonical = match tanglekit::cf::expand_fraction(current) {
            Ok(v) => CanonicalTangle::Vector(v),
            Err(_) => CanonicalTangle::Infinity,
        };
        SessionView {
            session_id: s.id.clone(),
            current: current.to_string(),
            target: s.state.target().to_string(),
            history: s.state.history().to_string(),
            moves: s.state.history().len(),
            solved: s.state.is_solved(),
            canonical,
            created_at: s.created_at,
            updated_at: s.updated_at,
        }
    }
}

async fn analyze_handler(
    body: Result<Json<AnalyzeRequest>, JsonRejection>,
) -> ApiResult<Json<AnalysisReport>> {
    let Json(req) = body?;
    let t = parse_tangle(&req.expr)?;
    Ok(Json(analyze(&t)))
}

async fn equiv_handler(
    body: Result<Json<EquivRequest>, JsonRejection>,
) -> ApiResult<Json<serde_json::Value>> {
    let Json(req) = body?;
    let a = parse_tangle(&req.a)?;
    let b = parse_tangle(&req.b)?;
    let equivalent = tangle::equivalent(&a, &b)?;
    Ok(Json(json!({ "equivalent": equivalent })))
}

async fn new_game(
    State(store): State<AppState>,
    body: Result<Json<NewGameRequest>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<serde_json::Value>)> {
    let Json(req) = body?;
    let target = parse_fraction(&req.target)?;
    let session = store.create(target)?;
    let view = SessionView::from(&session);
    Ok((
        StatusCode::CREATED,
        Json(json!({ "sessionId": session.id, "state": view })),
    ))
}

async fn get_game(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<SessionView>> {
    Ok(Json(SessionView::from(&store.get(&id)?)))
}

async fn make_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let Json(req) = body?;
    let m: Move = req.mv.parse()?;
    Ok(Json(SessionView::from(&store.apply(&id, m)?)))
}

async fn hint(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<serde_json::Value>> {
    let m = store.hint(&id)?;
    Ok(Json(json!({ "move": m })))
}

async fn delete_game(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<StatusCode> {
    store.delete(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

pub fn router(store: AppState) -> Router {
    Router::new()
        .route("/api/analyze", post(analyze_handler))
        .route("/api/equiv", post(equiv_handler))
        .route("/api/dance", post(new_game))
        .route("/api/dance/{id}", get(get_game).delete(delete_game))
        .route("/api/dance/{id}/move", post(make_move))
        .route("/api/dance/{id}/hint", get(hint))
        .with_state(store)
}

pub async fn serve(listener: TcpListener, store: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
