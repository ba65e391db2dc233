use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit status of a completed run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Affirmative,
    Negative,
    Inconclusive,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Affirmative => 0,
            Outcome::Negative => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Serialize)]
pub struct Envelope<'a, R: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub outcome: Outcome,
    pub exit_code: u8,
    pub result: R,
}

pub fn render<R: Serialize>(command: &str, config: &RunConfig, outcome: Outcome, result: R) -> Result<String> {
    let env = Envelope { schema_version: SCHEMA_VERSION, command, config, outcome, exit_code: outcome.code(), result };
    let mut text = serde_json::to_string(&env)?;
    text.push('\n');
    Ok(text)
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
