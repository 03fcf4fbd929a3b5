//! JSON-over-HTTP service for text analysis, display schedules, document
//! upload and paragraph gradients.

mod error;
pub mod store;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Multipart, Path, Query, State};
use axum::http::header::CONTENT_TYPE;
use axum::http::{HeaderMap, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use thoth_core::gradient::{GradientConfig, DEFAULT_WIDTH_CPL};
use thoth_core::ingest::{PdfExtractTextAdapter, PdfTextExtractor};
use thoth_core::{Engine, LexiconName, ReadabilityError, ReaderProfile};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use error::ApiError;
pub use store::{document_id, DocumentStore, MediaType, StoredDocument};

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_DATA_DIR: &str = "./data/store";
pub const DEFAULT_MAX_TEXT_BYTES: usize = 2 * 1024 * 1024;
pub const DEFAULT_MAX_PDF_BYTES: usize = 20 * 1024 * 1024;

/// Room for multipart framing around an upload at the size limit.
const ENVELOPE_SLACK: usize = 64 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub port: u16,
    pub data_dir: PathBuf,
    pub max_text_bytes: usize,
    pub max_pdf_bytes: usize,
    /// `*` allows any origin.
    pub allowed_origin: String,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            port: DEFAULT_PORT,
            data_dir: PathBuf::from(DEFAULT_DATA_DIR),
            max_text_bytes: DEFAULT_MAX_TEXT_BYTES,
            max_pdf_bytes: DEFAULT_MAX_PDF_BYTES,
            allowed_origin: "*".to_owned(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid value {value:?} for {var}")]
pub struct ConfigError {
    pub var: &'static str,
    pub value: String,
}

impl Config {
    /// Reads `THOTH_*` variables, falling back to defaults for unset ones.
    pub fn from_env() -> Result<Self, ConfigError> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        fn parse<T: std::str::FromStr>(var: &'static str, value: Option<String>, default: T) -> Result<T, ConfigError> {
            match value {
                None => Ok(default),
                Some(v) => v.trim().parse().map_err(|_| ConfigError { var, value: v }),
            }
        }
        let d = Config::default();
        Ok(Config {
            port: parse("THOTH_PORT", lookup("THOTH_PORT"), d.port)?,
            data_dir: lookup("THOTH_DATA_DIR").map(PathBuf::from).unwrap_or(d.data_dir),
            max_text_bytes: parse("THOTH_MAX_TEXT_BYTES", lookup("THOTH_MAX_TEXT_BYTES"), d.max_text_bytes)?,
            max_pdf_bytes: parse("THOTH_MAX_PDF_BYTES", lookup("THOTH_MAX_PDF_BYTES"), d.max_pdf_bytes)?,
            allowed_origin: lookup("THOTH_ALLOWED_ORIGIN").unwrap_or(d.allowed_origin),
        })
    }
}

#[derive(Clone)]
pub struct AppState {
    engine: Arc<Engine>,
    store: Arc<DocumentStore>,
    pdf: Arc<dyn PdfTextExtractor>,
    config: Arc<Config>,
}

impl AppState {
    pub fn new(config: Config) -> std::io::Result<Self> {
        let store = DocumentStore::open(&config.data_dir)?;
        Ok(AppState {
            engine: Arc::new(Engine::new()),
            store: Arc::new(store),
            pdf: Arc::new(PdfExtractTextAdapter),
            config: Arc::new(config),
        })
    }

    pub fn with_pdf_extractor(mut self, pdf: Arc<dyn PdfTextExtractor>) -> Self {
        self.pdf = pdf;
        self
    }

    pub fn store(&self) -> &DocumentStore {
        &self.store
    }
}

pub fn router(state: AppState) -> Router {
    let body_limit = state.config.max_text_bytes.max(state.config.max_pdf_bytes) + ENVELOPE_SLACK;
    let cors = cors_layer(&state.config.allowed_origin);
    Router::new()
        .route("/api/v1/analyze", post(analyze))
        .route("/api/v1/schedule", post(schedule))
        .route("/api/v1/documents", post(upload))
        .route("/api/v1/documents/{id}", get(fetch_document))
        .route("/api/v1/gradient", get(gradient))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .method_not_allowed_fallback(|| async {
            ApiError::new(StatusCode::METHOD_NOT_ALLOWED, "method_not_allowed", "method not allowed")
        })
        .layer(DefaultBodyLimit::max(body_limit))
        .layer(cors)
        .with_state(state)
}

fn cors_layer(origin: &str) -> CorsLayer {
    let allow = match origin.trim() {
        "*" => AllowOrigin::any(),
        o => match HeaderValue::from_str(o) {
            Ok(v) => AllowOrigin::exact(v),
            Err(_) => AllowOrigin::list([]),
        },
    };
    CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([CONTENT_TYPE])
}

/// Binds `0.0.0.0:<port>` and serves until Ctrl-C.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    let app = router(AppState::new(config)?);
    eprintln!("thoth listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(CONTENT_TYPE, "application/json")], body).into_response()
}

fn require_json(headers: &HeaderMap) -> Result<(), ApiError> {
    let ct = headers
        .get(CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or("");
    let essence = ct.split(';').next().unwrap_or("").trim();
    if essence.eq_ignore_ascii_case("application/json") {
        Ok(())
    } else {
        Err(ApiError::unsupported_media_type("expected Content-Type: application/json"))
    }
}

fn check_text(text: &str, limit: usize) -> Result<(), ApiError> {
    if text.len() > limit {
        return Err(ApiError::too_large(limit));
    }
    if text.trim().is_empty() {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "empty_text", "text is empty"));
    }
    Ok(())
}

fn parse_lexicon(name: Option<&str>) -> Result<LexiconName, ApiError> {
    match name {
        None => Ok(LexiconName::default()),
        Some(n) => n
            .parse()
            .map_err(|e: thoth_core::LexiconError| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "unknown_lexicon", e.to_string())),
    }
}

#[derive(Deserialize)]
struct AnalyzeRequest {
    text: String,
    #[serde(default)]
    lexicon: Option<String>,
}

async fn analyze(State(state): State<AppState>, headers: HeaderMap, body: Result<Bytes, axum::extract::rejection::BytesRejection>) -> Result<Response, ApiError> {
    let body = body?;
    require_json(&headers)?;
    let req: AnalyzeRequest = ApiError::parse_json(&body)?;
    check_text(&req.text, state.config.max_text_bytes)?;
    let lexicon = parse_lexicon(req.lexicon.as_deref())?;
    let analysis = state.engine.analyze(&req.text, lexicon)?;
    Ok(json_response(StatusCode::OK, analysis.report.to_json()))
}

#[derive(Deserialize)]
struct ScheduleRequest {
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    document_id: Option<String>,
    #[serde(default)]
    profile: Option<serde_json::Value>,
}

async fn schedule(State(state): State<AppState>, headers: HeaderMap, body: Result<Bytes, axum::extract::rejection::BytesRejection>) -> Result<Response, ApiError> {
    let body = body?;
    require_json(&headers)?;
    let req: ScheduleRequest = ApiError::parse_json(&body)?;
    let profile: ReaderProfile = match req.profile {
        None | Some(serde_json::Value::Null) => ReaderProfile::default(),
        Some(v) => serde_json::from_value(v)
            .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_profile", e.to_string()))?,
    };
    let text = match (req.text, req.document_id) {
        (Some(text), None) => text,
        (None, Some(id)) => state
            .store
            .get(&id)
            .await?
            .ok_or_else(|| ApiError::document_not_found(&id))?
            .text,
        _ => {
            return Err(ApiError::new(
                StatusCode::BAD_REQUEST,
                "invalid_source",
                "provide exactly one of text or document_id",
            ))
        }
    };
    check_text(&text, state.config.max_text_bytes)?;
    profile.validate()?;
    let schedule = state.engine.schedule(&text, &profile)?;
    Ok(json_response(StatusCode::OK, schedule.to_json()))
}

async fn upload(State(state): State<AppState>, headers: HeaderMap, multipart: Result<Multipart, axum::extract::multipart::MultipartRejection>) -> Result<Response, ApiError> {
    let is_multipart = headers
        .get(CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|ct| ct.to_ascii_lowercase().starts_with("multipart/form-data"));
    if !is_multipart {
        return Err(ApiError::unsupported_media_type("expected multipart/form-data with a file field"));
    }
    let mut multipart = multipart.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_multipart", e.body_text()))?;

    let mut upload = None;
    while let Some(field) = multipart.next_field().await? {
        if field.name() != Some("file") {
            continue;
        }
        let filename = field.file_name().unwrap_or("").to_owned();
        let content_type = field.content_type().map(str::to_ascii_lowercase);
        let bytes = field.bytes().await?;
        upload = Some((filename, content_type, bytes));
        break;
    }
    let Some((filename, content_type, bytes)) = upload else {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "missing_file", "multipart field \"file\" is required"));
    };

    let (text, media_type) = match classify(content_type.as_deref(), &filename, &bytes) {
        Some(MediaType::Pdf) => {
            if bytes.len() > state.config.max_pdf_bytes {
                return Err(ApiError::too_large(state.config.max_pdf_bytes));
            }
            let pdf = state.pdf.clone();
            let text = tokio::task::spawn_blocking(move || pdf.extract(&bytes))
                .await
                .map_err(|e| ApiError::internal(e.to_string()))??;
            (text, MediaType::Pdf)
        }
        Some(MediaType::Text) => {
            if bytes.len() > state.config.max_text_bytes {
                return Err(ApiError::too_large(state.config.max_text_bytes));
            }
            match String::from_utf8(bytes.to_vec()) {
                Ok(text) => (text, MediaType::Text),
                Err(e) => {
                    return Err(ApiError::unsupported_media_type(format!(
                        "file is not UTF-8 text (invalid byte at offset {})",
                        e.utf8_error().valid_up_to()
                    )))
                }
            }
        }
        None => {
            return Err(ApiError::unsupported_media_type(format!(
                "unsupported media type {}",
                content_type.as_deref().unwrap_or("(none)")
            )))
        }
    };
    check_text(&text, usize::MAX)?;

    let char_count = text.chars().count();
    let (doc, created) = state.store.put(text, filename, media_type).await?;
    let status = if created { StatusCode::CREATED } else { StatusCode::OK };
    let body = serde_json::json!({
        "id": doc.id,
        "media_type": media_type,
        "char_count": char_count,
    });
    Ok(json_response(status, body.to_string()))
}

/// PDF by magic bytes or declared type; text for text/* or untyped uploads.
fn classify(content_type: Option<&str>, filename: &str, bytes: &[u8]) -> Option<MediaType> {
    let essence = content_type.map(|ct| ct.split(';').next().unwrap_or("").trim().to_owned());
    if bytes.starts_with(b"%PDF-") || essence.as_deref() == Some("application/pdf") {
        return Some(MediaType::Pdf);
    }
    match essence.as_deref() {
        None | Some("") | Some("application/octet-stream") => {
            let lower = filename.to_ascii_lowercase();
            if lower.ends_with(".pdf") {
                Some(MediaType::Pdf)
            } else {
                Some(MediaType::Text)
            }
        }
        Some(t) if t.starts_with("text/") => Some(MediaType::Text),
        _ => None,
    }
}

async fn fetch_document(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let doc = state.store.get(&id).await?.ok_or_else(|| ApiError::document_not_found(&id))?;
    let body = serde_json::to_string(&doc).map_err(|e| ApiError::internal(e.to_string()))?;
    Ok(json_response(StatusCode::OK, body))
}

async fn gradient(State(state): State<AppState>, Query(query): Query<HashMap<String, String>>) -> Result<Response, ApiError> {
    let width = match query.get("width") {
        None => DEFAULT_WIDTH_CPL,
        Some(w) => w.parse().map_err(|_| {
            ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_width", format!("width {w:?} is not an integer"))
        })?,
    };
    let id = query
        .get("document_id")
        .ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, "missing_document_id", "document_id is required"))?;
    let config = GradientConfig::default().with_width(width)?;
    let doc = state.store.get(id).await?.ok_or_else(|| ApiError::document_not_found(id))?;
    let view = state.engine.gradient(&doc.text, &config)?;
    let body = serde_json::to_string(&view).map_err(|e| ApiError::internal(e.to_string()))?;
    Ok(json_response(StatusCode::OK, body))
}

impl From<ReadabilityError> for ApiError {
    fn from(e: ReadabilityError) -> Self {
        thoth_core::Error::from(e).into()
    }
}
