//! Artifact emission. Every artifact embeds the configuration that made it.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use amc_core::io::write_text;
use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

/// Command name plus its parsed arguments.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub command: String,
    pub args: Value,
}

impl Config {
    pub fn new(command: &str, args: &impl Serialize) -> Result<Self> {
        Ok(Config { command: command.to_string(), args: serde_json::to_value(args)? })
    }
}

fn sink(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(write_text(p, text)?),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                // A closed reader (e.g. `| head`) is not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

/// `{config, result}` as pretty JSON.
pub fn json(out: Option<&Path>, config: &Config, result: &impl Serialize) -> Result<()> {
    let v = json!({ "config": config, "result": result });
    sink(out, &(serde_json::to_string_pretty(&v)? + "\n"))
}

/// CSV with a `# config:` comment line, then a header row.
pub fn csv(out: Option<&Path>, config: &Config, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut text = format!("# config: {}\n{}\n", serde_json::to_string(config)?, header.join(","));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| quote(c)).collect();
        writeln!(text, "{}", cells.join(","))?;
    }
    sink(out, &text)
}

fn quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Summary line on stderr, so it never mixes with artifacts on stdout.
pub fn note(msg: impl AsRef<str>) {
    eprintln!("{}", msg.as_ref());
}
