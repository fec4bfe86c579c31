//! HTTP JSON API over `coarray-core`.
//!
//! | method | path                | body                    | response            |
//! |--------|---------------------|-------------------------|---------------------|
//! | POST   | `/api/analyze`      | `{input, format}`       | analysis document   |
//! | POST   | `/api/compare`      | `{a: {..}, b: {..}}`    | comparison document |
//! | GET    | `/api/catalog`      |                         | catalog listing     |
//! | GET    | `/api/catalog/{id}` |                         | entry plus analysis |
//!
//! Every failure is an [`ApiError`] JSON body. Response bodies are the same
//! bytes the CLI prints with `--json`.

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use coarray_core::{
    analyze, compare_analyses, Catalog, CoarrayAnalysis, InputFormat, ParseErrorKind, ResolveError,
};
use serde::{Deserialize, Serialize};
use tower_http::cors::{Any, CorsLayer};
use tower_http::services::ServeDir;

/// Largest request body accepted, in bytes.
pub const BODY_LIMIT: usize = 64 * 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRequest {
    pub input: String,
    pub format: InputFormat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRequest {
    pub a: AnalyzeRequest,
    pub b: AnalyzeRequest,
}

/// Error body. `code` is one of the parse error kinds, `not-found`,
/// `limit-exceeded` or `bad-request`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub position: Option<usize>,
    /// `"a"` or `"b"` when a compare input failed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub side: Option<String>,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.into(),
            position: None,
            side: None,
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "not-found", message)
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad-request", message)
    }

    fn limit_exceeded() -> Self {
        ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "limit-exceeded",
            format!("request body exceeds {BODY_LIMIT} bytes"),
        )
    }

    fn from_resolve(err: ResolveError) -> Self {
        match err {
            ResolveError::NotFound(_) => ApiError::not_found(err.to_string()),
            ResolveError::Parse(p) => {
                let status = if p.kind == ParseErrorKind::ResourceLimit {
                    StatusCode::PAYLOAD_TOO_LARGE
                } else {
                    StatusCode::BAD_REQUEST
                };
                ApiError {
                    position: Some(p.position),
                    ..ApiError::new(status, p.kind.code(), p.message)
                }
            }
        }
    }

    fn on_side(mut self, side: &str) -> Self {
        self.side = Some(side.to_string());
        self.message = format!("array {}: {}", side.to_uppercase(), self.message);
        self
    }

    pub fn status_code(&self) -> StatusCode {
        StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::to_string(&self).expect("ApiError serializes");
        json_response(self.status_code(), body)
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))],
        body,
    )
        .into_response()
}

fn ok_json(body: String) -> Response {
    json_response(StatusCode::OK, body)
}

#[derive(Debug, Clone)]
pub struct AppState {
    catalog: Arc<Catalog>,
}

impl AppState {
    pub fn new(catalog: Catalog) -> Self {
        AppState {
            catalog: Arc::new(catalog),
        }
    }
}

/// Where the UI is served from and which origin may call the API cross-site.
#[derive(Debug, Clone, Default)]
pub struct ServeOptions {
    pub static_dir: Option<PathBuf>,
    /// `"*"` allows any origin.
    pub cors_origin: Option<String>,
}

async fn read_json<T: serde::de::DeserializeOwned>(body: Body) -> Result<T, ApiError> {
    let bytes = to_bytes(body, BODY_LIMIT)
        .await
        .map_err(|_| ApiError::limit_exceeded())?;
    serde_json::from_slice(&bytes).map_err(|e| ApiError::bad_request(format!("malformed request body: {e}")))
}

fn run(catalog: &Catalog, req: &AnalyzeRequest) -> Result<CoarrayAnalysis, ApiError> {
    catalog
        .resolve(req.format, &req.input)
        .map(|array| analyze(&array))
        .map_err(ApiError::from_resolve)
}

async fn analyze_handler(State(state): State<AppState>, body: Body) -> Result<Response, ApiError> {
    let req: AnalyzeRequest = read_json(body).await?;
    Ok(ok_json(run(&state.catalog, &req)?.to_json()))
}

async fn compare_handler(State(state): State<AppState>, body: Body) -> Result<Response, ApiError> {
    let req: CompareRequest = read_json(body).await?;
    let a = run(&state.catalog, &req.a).map_err(|e| e.on_side("a"))?;
    let b = run(&state.catalog, &req.b).map_err(|e| e.on_side("b"))?;
    Ok(ok_json(compare_analyses(a, b).to_json()))
}

async fn catalog_handler(State(state): State<AppState>) -> Response {
    ok_json(state.catalog.to_json())
}

async fn entry_handler(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let entry = state
        .catalog
        .get_entry(&id)
        .map_err(|_| ApiError::not_found(format!("no catalog entry with id '{id}'")))?;
    Ok(ok_json(entry.to_json_with_analysis()))
}

async fn api_fallback(method: Method, uri: axum::http::Uri) -> ApiError {
    ApiError::not_found(format!("no route for {method} {}", uri.path()))
}

/// Builds the full application: API under `/api`, static files under `/`.
pub fn app(state: AppState, opts: &ServeOptions) -> Router {
    let api = Router::new()
        .route("/analyze", post(analyze_handler))
        .route("/compare", post(compare_handler))
        .route("/catalog", get(catalog_handler))
        .route("/catalog/{id}", get(entry_handler))
        .fallback(api_fallback)
        .layer(DefaultBodyLimit::disable())
        .with_state(state);

    let mut router = Router::new().nest("/api", api);
    if let Some(dir) = &opts.static_dir {
        router = router.fallback_service(ServeDir::new(dir).append_index_html_on_directories(true));
    }
    if let Some(origin) = &opts.cors_origin {
        let cors = CorsLayer::new()
            .allow_methods([Method::GET, Method::POST])
            .allow_headers([header::CONTENT_TYPE]);
        let cors = if origin == "*" {
            cors.allow_origin(Any)
        } else {
            match HeaderValue::from_str(origin) {
                Ok(v) => cors.allow_origin(v),
                Err(_) => cors,
            }
        };
        router = router.layer(cors);
    }
    router
}
