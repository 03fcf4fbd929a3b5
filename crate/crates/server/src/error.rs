use axum::extract::multipart::MultipartError;
use axum::extract::rejection::BytesRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use serde::de::DeserializeOwned;
use thoth_core::ingest::PdfError;
use thoth_core::{Error, GradientError, ReadabilityError, ScheduleError};

/// Error response with body `{"error":{"code":..,"message":..}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.to_owned(),
            message: message.into(),
        }
    }

    pub fn too_large(limit: usize) -> Self {
        Self::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "payload_too_large",
            format!("payload exceeds the {limit}-byte limit"),
        )
    }

    pub fn unsupported_media_type(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type", message)
    }

    pub fn document_not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "document_not_found", format!("no document with id {id:?}"))
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }

    pub fn parse_json<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
        serde_json::from_slice(body).map_err(|e| Self::new(StatusCode::BAD_REQUEST, "invalid_json", e.to_string()))
    }

    pub fn body(&self) -> String {
        serde_json::json!({"error": {"code": self.code, "message": self.message}}).to_string()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = self.body();
        (self.status, [(axum::http::header::CONTENT_TYPE, "application/json")], body).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let unprocessable = |code: &str, e: &dyn std::fmt::Display| Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, e.to_string());
        match &e {
            Error::Readability(ReadabilityError::InsufficientText) | Error::Schedule(ScheduleError::InsufficientText) => {
                Self::new(StatusCode::BAD_REQUEST, "insufficient_text", e.to_string())
            }
            Error::Schedule(_) => unprocessable("profile_out_of_range", &e),
            Error::Gradient(GradientError::WidthOutOfRange(_)) => unprocessable("width_out_of_range", &e),
            Error::Gradient(_) => unprocessable("invalid_gradient", &e),
            Error::Lexicon(_) => unprocessable("unknown_lexicon", &e),
            Error::Pdf(p) => p.clone().into(),
            Error::Ingest(_) => Self::new(StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type", e.to_string()),
            Error::Readability(_) => Self::internal(e.to_string()),
        }
    }
}

impl From<ScheduleError> for ApiError {
    fn from(e: ScheduleError) -> Self {
        Error::from(e).into()
    }
}

impl From<GradientError> for ApiError {
    fn from(e: GradientError) -> Self {
        Error::from(e).into()
    }
}

impl From<PdfError> for ApiError {
    fn from(e: PdfError) -> Self {
        Self::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            &format!("pdf_{}", e.kind.code()),
            e.to_string(),
        )
    }
}

impl From<std::io::Error> for ApiError {
    fn from(e: std::io::Error) -> Self {
        Self::internal(format!("document store: {e}"))
    }
}

impl From<BytesRejection> for ApiError {
    fn from(e: BytesRejection) -> Self {
        let status = e.status();
        if status == StatusCode::PAYLOAD_TOO_LARGE {
            Self::new(status, "payload_too_large", e.body_text())
        } else {
            Self::new(status, "invalid_body", e.body_text())
        }
    }
}

impl From<MultipartError> for ApiError {
    fn from(e: MultipartError) -> Self {
        let status = e.status();
        if status == StatusCode::PAYLOAD_TOO_LARGE {
            Self::new(status, "payload_too_large", e.body_text())
        } else {
            Self::new(status, "invalid_multipart", e.body_text())
        }
    }
}
