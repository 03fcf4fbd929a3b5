use std::path::{Path, PathBuf};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use thoth_server::{router, AppState, Config};
use tower::ServiceExt;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

struct Service {
    app: Router,
    _dir: tempfile::TempDir,
}

fn service_with(config: impl FnOnce(&mut Config)) -> Service {
    let dir = tempfile::tempdir().unwrap();
    let mut c = Config {
        data_dir: dir.path().join("store"),
        ..Config::default()
    };
    config(&mut c);
    Service {
        app: router(AppState::new(c).unwrap()),
        _dir: dir,
    }
}

fn service() -> Service {
    service_with(|_| {})
}

impl Service {
    async fn send(&self, req: Request<Body>) -> (StatusCode, String) {
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        (status, String::from_utf8(bytes.to_vec()).unwrap())
    }

    async fn post_json(&self, path: &str, body: &Value) -> (StatusCode, Value) {
        let req = Request::post(path)
            .header("content-type", "application/json")
            .body(Body::from(body.to_string()))
            .unwrap();
        let (status, text) = self.send(req).await;
        (status, serde_json::from_str(&text).unwrap())
    }

    async fn get(&self, path: &str) -> (StatusCode, Value) {
        let (status, text) = self.send(Request::get(path).body(Body::empty()).unwrap()).await;
        (status, serde_json::from_str(&text).unwrap())
    }

    async fn upload(&self, filename: &str, content_type: &str, bytes: &[u8]) -> (StatusCode, Value) {
        let boundary = "thothboundary7d2f";
        let mut body = Vec::new();
        body.extend_from_slice(
            format!(
                "--{boundary}\r\nContent-Disposition: form-data; name=\"file\"; filename=\"{filename}\"\r\nContent-Type: {content_type}\r\n\r\n"
            )
            .as_bytes(),
        );
        body.extend_from_slice(bytes);
        body.extend_from_slice(format!("\r\n--{boundary}--\r\n").as_bytes());
        let req = Request::post("/api/v1/documents")
            .header("content-type", format!("multipart/form-data; boundary={boundary}"))
            .body(Body::from(body))
            .unwrap();
        let (status, text) = self.send(req).await;
        (status, serde_json::from_str(&text).unwrap())
    }
}

fn assert_error(status: StatusCode, body: &Value, want_status: StatusCode, want_code: &str) {
    assert_eq!(status, want_status, "{body}");
    assert_eq!(body["error"]["code"], want_code, "{body}");
    assert!(body["error"]["message"].as_str().is_some_and(|m| !m.is_empty()), "{body}");
    assert_eq!(body.as_object().unwrap().len(), 1);
}

#[tokio::test]
async fn analyze_matches_fixture_oracle() {
    let s = service();
    let text = std::fs::read_to_string(fixtures().join("text/sample_01.txt")).unwrap();
    let expected: Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("text/sample_01.expected.json")).unwrap()).unwrap();
    let (status, body) = s.post_json("/api/v1/analyze", &json!({"text": text})).await;
    assert_eq!(status, StatusCode::OK);
    let want = &expected["report"];
    for (metric, score) in want["scores"].as_object().unwrap() {
        for field in ["raw", "grade"] {
            let (a, b) = (body["scores"][metric][field].as_f64().unwrap(), score[field].as_f64().unwrap());
            assert!((a - b).abs() < 1e-9, "{metric}.{field}: {a} vs {b}");
        }
        assert_eq!(body["scores"][metric]["reliable"], score["reliable"]);
    }
    for field in ["consensus_grade", "estimated_age", "difficult_word_fraction"] {
        assert!((body[field].as_f64().unwrap() - want[field].as_f64().unwrap()).abs() < 1e-9);
    }
}

#[tokio::test]
async fn analyze_the_cat_sat() {
    let s = service();
    let (status, body) = s.post_json("/api/v1/analyze", &json!({"text": "The cat sat."})).await;
    assert_eq!(status, StatusCode::OK);
    // 3 words, 1 sentence, 9 chars: 4.71*3 + 0.5*3 - 21.43
    let ari = body["scores"]["ari"]["raw"].as_f64().unwrap();
    assert!((ari - (4.71 * 3.0 + 1.5 - 21.43)).abs() < 1e-9);
    assert_eq!(body["scores"]["ari"]["grade"], 0.0);
    assert_eq!(body["scores"]["smog"]["reliable"], false);
    assert_eq!(body["difficult_word_fraction"], 0.0);
    let keys: Vec<&str> = body.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["consensus_grade", "difficult_word_fraction", "estimated_age", "scores"]);
    assert_eq!(body["scores"].as_object().unwrap().len(), 8);
}

#[tokio::test]
async fn analyze_errors() {
    let s = service();
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"text": ""})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "empty_text");
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"text": "  \n "})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "empty_text");
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"text": "x", "lexicon": "klingon"})).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "unknown_lexicon");
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"txt": "x"})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "invalid_json");
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"text": "?!"})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "insufficient_text");

    let (st, text) = s
        .send(Request::post("/api/v1/analyze").header("content-type", "text/plain").body(Body::from("hi")).unwrap())
        .await;
    assert_error(st, &serde_json::from_str(&text).unwrap(), StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type");
}

#[tokio::test]
async fn analyze_size_limit() {
    let s = service_with(|c| c.max_text_bytes = 64);
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"text": "word ".repeat(13)})).await;
    assert_error(st, &b, StatusCode::PAYLOAD_TOO_LARGE, "payload_too_large");
    let (st, _) = s.post_json("/api/v1/analyze", &json!({"text": "word ".repeat(12)})).await;
    assert_eq!(st, StatusCode::OK);

    // the default limit is 2 MiB, enforced on the text itself
    let s = service();
    let big = "a ".repeat(1024 * 1024 + 1);
    let (st, b) = s.post_json("/api/v1/analyze", &json!({"text": big})).await;
    assert_error(st, &b, StatusCode::PAYLOAD_TOO_LARGE, "payload_too_large");
}

#[tokio::test]
async fn schedule_golden() {
    let s = service();
    let req = json!({
        "text": "The cat sat.",
        "profile": {"base_wpm": 300, "length_modifier_enabled": false, "punctuation_pauses_enabled": false}
    });
    let (_, raw) = s
        .send(
            Request::post("/api/v1/schedule")
                .header("content-type", "application/json")
                .body(Body::from(req.to_string()))
                .unwrap(),
        )
        .await;
    assert_eq!(
        raw,
        r##"{"version":1,"effective_wpm":300.0,"total_ms":600.0,"entries":[{"i":0,"text":"The","ms":200.0,"orp":1,"unfamiliar":false,"color":"#00429d"},{"i":2,"text":"cat","ms":200.0,"orp":1,"unfamiliar":false,"color":"#69467c"},{"i":4,"text":"sat","ms":200.0,"orp":1,"unfamiliar":false,"color":"#d1495b"}]}"##
    );
    let (_, again) = s
        .send(
            Request::post("/api/v1/schedule")
                .header("content-type", "application/json")
                .body(Body::from(req.to_string()))
                .unwrap(),
        )
        .await;
    assert_eq!(raw, again);
}

#[tokio::test]
async fn schedule_errors() {
    let s = service();
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"profile": {}})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "invalid_source");
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"text": "x", "document_id": "ab"})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "invalid_source");
    let unknown = "deadbeef".repeat(8);
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"document_id": unknown})).await;
    assert_error(st, &b, StatusCode::NOT_FOUND, "document_not_found");
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"text": "x", "profile": {"base_wpm": 10}})).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "profile_out_of_range");
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"text": "x", "profile": {"unfamiliar_multiplier": 5}})).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "profile_out_of_range");
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"text": "x", "profile": {"lexicon": "klingon"}})).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "invalid_profile");
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"text": "x", "profile": {"speed": 3}})).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "invalid_profile");
    let (st, b) = s.post_json("/api/v1/schedule", &json!({"text": ""})).await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "empty_text");
}

#[tokio::test]
async fn upload_text_is_idempotent() {
    let s = service();
    let (st, first) = s.upload("hello.txt", "text/plain", b"Hello").await;
    assert_eq!(st, StatusCode::CREATED);
    assert_eq!(
        first,
        json!({"id": "185f8db32271fe25f561a6fc938b2e264306ec304eda518007d1764826381969", "media_type": "text", "char_count": 5})
    );
    let (st, second) = s.upload("other-name.txt", "text/plain", b"Hello").await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(first, second);

    let id = first["id"].as_str().unwrap();
    let (st, doc) = s.get(&format!("/api/v1/documents/{id}")).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(doc["id"], id);
    assert_eq!(doc["text"], "Hello");
    assert_eq!(doc["media_type"], "text");
    assert_eq!(doc["original_filename"], "hello.txt");
    let created = doc["created_at"].as_str().unwrap();
    assert!(chrono_like(created), "{created}");

    let (st, b) = s.get(&format!("/api/v1/documents/{}", id.to_uppercase())).await;
    assert_error(st, &b, StatusCode::NOT_FOUND, "document_not_found");
    let (st, b) = s.get("/api/v1/documents/deadbeef").await;
    assert_error(st, &b, StatusCode::NOT_FOUND, "document_not_found");
}

fn chrono_like(s: &str) -> bool {
    // YYYY-MM-DDTHH:MM:SSZ
    s.len() == 20 && s.as_bytes()[10] == b'T' && s.ends_with('Z')
}

#[tokio::test]
async fn upload_pdf_ids_match_hash_oracle() {
    let s = service();
    let ids: Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("pdf/expected_ids.json")).unwrap()).unwrap();
    for (name, want) in ids.as_object().unwrap() {
        let bytes = std::fs::read(fixtures().join("pdf").join(name)).unwrap();
        let (st, body) = s.upload(name, "application/pdf", &bytes).await;
        assert_eq!(st, StatusCode::CREATED, "{name}: {body}");
        assert_eq!(body["id"], want["id"], "{name}");
        assert_eq!(body["media_type"], "pdf");
        let (st, again) = s.upload(name, "application/pdf", &bytes).await;
        assert_eq!(st, StatusCode::OK);
        assert_eq!(again, body);
        let (_, doc) = s.get(&format!("/api/v1/documents/{}", want["id"].as_str().unwrap())).await;
        assert_eq!(doc["text"], want["text"]);
    }
}

#[tokio::test]
async fn upload_errors() {
    let s = service();
    for (file, code) in [("image_only.pdf", "pdf_image_only"), ("encrypted.pdf", "pdf_encrypted"), ("corrupt.pdf", "pdf_corrupt")] {
        let bytes = std::fs::read(fixtures().join("pdf").join(file)).unwrap();
        let (st, b) = s.upload(file, "application/pdf", &bytes).await;
        assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, code);
    }
    let (st, b) = s.upload("cat.png", "image/png", b"\x89PNG\r\n").await;
    assert_error(st, &b, StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type");
    let (st, b) = s.upload("bad.txt", "text/plain", b"ok \xff\xfe").await;
    assert_error(st, &b, StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type");
    let (st, b) = s.upload("blank.txt", "text/plain", b"   ").await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "empty_text");

    let (st, text) = s
        .send(Request::post("/api/v1/documents").header("content-type", "application/json").body(Body::from("{}")).unwrap())
        .await;
    assert_error(st, &serde_json::from_str(&text).unwrap(), StatusCode::UNSUPPORTED_MEDIA_TYPE, "unsupported_media_type");

    let small = service_with(|c| c.max_text_bytes = 8);
    let (st, b) = small.upload("long.txt", "text/plain", b"more than eight bytes").await;
    assert_error(st, &b, StatusCode::PAYLOAD_TOO_LARGE, "payload_too_large");
    let small = service_with(|c| c.max_pdf_bytes = 100);
    let bytes = std::fs::read(fixtures().join("pdf/hello.pdf")).unwrap();
    let (st, b) = small.upload("hello.pdf", "application/pdf", &bytes).await;
    assert_error(st, &b, StatusCode::PAYLOAD_TOO_LARGE, "payload_too_large");
}

#[tokio::test]
async fn gradient_endpoint() {
    let s = service();
    let text = std::fs::read_to_string(fixtures().join("text/sample_01.txt")).unwrap();
    let (_, up) = s.upload("sample_01.txt", "text/plain", text.as_bytes()).await;
    let id = up["id"].as_str().unwrap();

    let (st, view) = s.get(&format!("/api/v1/gradient?document_id={id}")).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(view["width"], 55);
    assert_eq!(view["serpentine"], true);
    let words = view["words"].as_array().unwrap();
    let lines = view["lines"].as_array().unwrap();
    assert!(lines.len() > 1);
    for pair in lines.windows(2) {
        let end = pair[0][1].as_u64().unwrap() as usize;
        assert_eq!(pair[1][0].as_u64().unwrap() as usize, end);
        assert_eq!(words[end - 1]["color"], words[end]["color"]);
    }
    for line in lines {
        let (a, b) = (line[0].as_u64().unwrap() as usize, line[1].as_u64().unwrap() as usize);
        let width: usize = words[a..b].iter().map(|w| w["text"].as_str().unwrap().chars().count()).sum::<usize>() + (b - a - 1);
        assert!(width <= 55 || b - a == 1);
    }

    let (st, narrow) = s.get(&format!("/api/v1/gradient?document_id={id}&width=20")).await;
    assert_eq!(st, StatusCode::OK);
    assert!(narrow["lines"].as_array().unwrap().len() > lines.len());

    let (st, b) = s.get(&format!("/api/v1/gradient?document_id={id}&width=10")).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "width_out_of_range");
    let (st, b) = s.get(&format!("/api/v1/gradient?document_id={id}&width=121")).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "width_out_of_range");
    let (st, b) = s.get(&format!("/api/v1/gradient?document_id={id}&width=wide")).await;
    assert_error(st, &b, StatusCode::UNPROCESSABLE_ENTITY, "invalid_width");
    let (st, b) = s.get(&format!("/api/v1/gradient?document_id={}", "0".repeat(64))).await;
    assert_error(st, &b, StatusCode::NOT_FOUND, "document_not_found");
    let (st, b) = s.get("/api/v1/gradient").await;
    assert_error(st, &b, StatusCode::BAD_REQUEST, "missing_document_id");
}

#[tokio::test]
async fn schedule_by_document_id_equals_schedule_by_text() {
    let s = service();
    let text = std::fs::read_to_string(fixtures().join("text/sample_03.txt")).unwrap();
    let (_, up) = s.upload("s3.txt", "text/plain", text.as_bytes()).await;
    let (a, by_id) = s.post_json("/api/v1/schedule", &json!({"document_id": up["id"]})).await;
    let (b, by_text) = s.post_json("/api/v1/schedule", &json!({"text": text})).await;
    assert_eq!((a, b), (StatusCode::OK, StatusCode::OK));
    assert_eq!(by_id, by_text);
}

#[tokio::test]
async fn analyze_and_schedule_do_not_touch_the_store() {
    let s = service();
    let dir = s._dir.path().join("store");
    s.post_json("/api/v1/analyze", &json!({"text": "The cat sat."})).await;
    s.post_json("/api/v1/schedule", &json!({"text": "The cat sat."})).await;
    assert_eq!(std::fs::read_dir(dir).unwrap().count(), 0);
}

#[tokio::test]
async fn unknown_routes_and_methods() {
    let s = service();
    let (st, b) = s.get("/api/v1/nope").await;
    assert_error(st, &b, StatusCode::NOT_FOUND, "not_found");
    let (st, b) = s.get("/api/v1/analyze").await;
    assert_error(st, &b, StatusCode::METHOD_NOT_ALLOWED, "method_not_allowed");
}

#[tokio::test]
async fn cors_headers() {
    let s = service_with(|c| c.allowed_origin = "http://localhost:5173".into());
    let resp = s
        .app
        .clone()
        .oneshot(
            Request::builder()
                .method("OPTIONS")
                .uri("/api/v1/analyze")
                .header("origin", "http://localhost:5173")
                .header("access-control-request-method", "POST")
                .body(Body::empty())
                .unwrap(),
        )
        .await
        .unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "http://localhost:5173");
}
