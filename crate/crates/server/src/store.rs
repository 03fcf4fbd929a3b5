//! Content-addressed document store on the local filesystem.
//!
//! Each document lives in `<dir>/<id>.json`, where `id` is the lowercase hex
//! SHA-256 of the extracted text. New files are written to a temporary name
//! and hard-linked into place, so concurrent uploads of the same text race
//! safely: exactly one link succeeds and the others observe the existing file.

use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MediaType {
    Text,
    Pdf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredDocument {
    pub id: String,
    pub original_filename: String,
    pub media_type: MediaType,
    pub text: String,
    /// RFC 3339, UTC.
    pub created_at: String,
}

pub fn document_id(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Ids are exactly 64 lowercase hex digits; anything else can't be stored.
pub fn is_valid_id(id: &str) -> bool {
    id.len() == 64 && id.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
}

#[derive(Debug)]
pub struct DocumentStore {
    dir: PathBuf,
    counter: AtomicU64,
}

impl DocumentStore {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(DocumentStore {
            dir,
            counter: AtomicU64::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    /// Stores `text` unless a document with the same id exists.
    /// Returns the stored document and whether this call created it.
    pub async fn put(
        &self,
        text: String,
        original_filename: String,
        media_type: MediaType,
    ) -> io::Result<(StoredDocument, bool)> {
        let id = document_id(&text);
        if let Some(existing) = self.get(&id).await? {
            return Ok((existing, false));
        }
        let doc = StoredDocument {
            id: id.clone(),
            original_filename,
            media_type,
            text,
            created_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        };
        let body = serde_json::to_vec(&doc).map_err(io::Error::other)?;
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{id}.{}.{n}.tmp", std::process::id()));
        tokio::fs::write(&tmp, &body).await?;
        let linked = tokio::fs::hard_link(&tmp, self.path_for(&id)).await;
        let _ = tokio::fs::remove_file(&tmp).await;
        match linked {
            Ok(()) => Ok((doc, true)),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                let existing = self.get(&id).await?.ok_or(e)?;
                Ok((existing, false))
            }
            Err(e) => Err(e),
        }
    }

    pub async fn get(&self, id: &str) -> io::Result<Option<StoredDocument>> {
        if !is_valid_id(id) {
            return Ok(None);
        }
        match tokio::fs::read(self.path_for(id)).await {
            Ok(bytes) => serde_json::from_slice(&bytes).map(Some).map_err(io::Error::other),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }
}
