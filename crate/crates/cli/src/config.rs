//! Optional `key = value` config file. Flags override anything set here.

use std::path::{Path, PathBuf};

use crate::UsageError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub qmin: Option<u64>,
    pub jobs: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        Ok(Self::parse(&text)?)
    }

    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut cfg = FileConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| UsageError(format!("config line {}: {msg}", n + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim();
            match key.trim() {
                "qmin" => cfg.qmin = Some(value.parse().map_err(|_| bad("qmin must be an integer"))?),
                "jobs" => cfg.jobs = Some(value.parse().map_err(|_| bad("jobs must be an integer"))?),
                "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                k => return Err(bad(&format!("unknown key {k:?}"))),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = FileConfig::parse("# defaults\nqmin = 70\njobs=2 # two\n\nout_dir = /tmp/x\n").unwrap();
        assert_eq!(cfg, FileConfig { qmin: Some(70), jobs: Some(2), out_dir: Some("/tmp/x".into()) });
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(FileConfig::parse("mode = equal").is_err());
        assert!(FileConfig::parse("qmin").is_err());
        assert!(FileConfig::parse("jobs = many").is_err());
    }
}
