use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::config::RunConfig;
use crate::error::{Error, Result};

/// The `#`-prefixed header every CSV output starts with.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Metadata {
    pub lines: Vec<(String, String)>,
}

impl Metadata {
    pub fn for_config(cfg: &RunConfig) -> Self {
        let mut m = Metadata::default();
        m.push("tool", format!("ctrw {}", env!("CARGO_PKG_VERSION")));
        m.push("command", cfg.command.as_str());
        m.push("seed", cfg.seed.to_string());
        let echo = cfg
            .echo()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        m.push("config", echo);
        m
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    pub fn write<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        for (k, v) in &self.lines {
            writeln!(out, "# {k}: {v}")?;
        }
        Ok(())
    }
}

/// Write through `f` to `path`, or to stdout when `path` is `None`.
pub(crate) fn with_output(
    path: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::io(p, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w).map_err(|e| Error::io(p, e))?;
            w.flush().map_err(|e| Error::io(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(|e| Error::io("<stdout>", e))
        }
    }
}
