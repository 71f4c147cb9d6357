//! Optional on-disk cache of enumeration and formula output, keyed by command and
//! parameters, enabled by `OPAD_CACHE_DIR`.

use std::path::PathBuf;

use serde_json::json;

use crate::Report;

fn cache_path(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("OPAD_CACHE_DIR")?;
    Some(PathBuf::from(dir).join(format!("{key}.json")))
}

pub fn cached(
    key: &str,
    compute: impl FnOnce() -> anyhow::Result<Report>,
) -> anyhow::Result<Report> {
    let Some(path) = cache_path(key) else {
        return compute();
    };
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
            if let (Some(t), Some(j), Some(p)) =
                (v["text"].as_str(), v.get("json"), v["passed"].as_bool())
            {
                return Ok(Report {
                    text: t.to_string(),
                    json: j.clone(),
                    passed: p,
                });
            }
        }
    }
    let report = compute()?;
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let stored = json!({ "text": report.text, "json": report.json, "passed": report.passed });
    std::fs::write(&path, serde_json::to_string(&stored)?)?;
    Ok(report)
}
