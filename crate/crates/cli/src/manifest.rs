use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of_bytes(path: &str, bytes: &[u8]) -> Self {
        Self { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// Record of one invocation, written next to its result.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: &'static str,
    pub inputs: Vec<FileDigest>,
    pub output: Option<FileDigest>,
    pub duration_ms: u64,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// `--manifest` if given, else `<out>.manifest.json`; `None` means stderr.
pub fn manifest_path(explicit: Option<&Path>, out: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        out.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_location() {
        assert_eq!(manifest_path(None, Some(Path::new("r/x.json"))), Some(PathBuf::from("r/x.json.manifest.json")));
        assert_eq!(manifest_path(Some(Path::new("m.json")), None), Some(PathBuf::from("m.json")));
        assert_eq!(manifest_path(None, None), None);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            FileDigest::of_bytes("-", b"").sha256,
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
