//! JSON Lines datasets and JSON task-class configs.
//!
//! A dataset file starts with a header line
//! `{"family":..,"d":..,"T":..,"alphabet":..,"index_base":0,"config":{..}}`
//! followed by one `{"x":[..],"y":[..]}` object per demonstration.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::class::{TaskClass, TaskParams};
use crate::dataset::{Dataset, Demonstration};
use crate::error::{ArcError, Result};
use crate::families::FamilyConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetHeader {
    pub family: String,
    /// Integers per serialized input: bit count, or 2 for words.
    pub d: usize,
    #[serde(rename = "T")]
    pub steps: usize,
    pub alphabet: usize,
    #[serde(default)]
    pub index_base: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<FamilyConfig>,
}

impl DatasetHeader {
    pub fn for_class(class: &TaskClass) -> Self {
        Self {
            family: class.family().as_str().to_string(),
            d: class.input_space().width(),
            steps: class.steps(),
            alphabet: class.alphabet().size(),
            index_base: 0,
            config: Some(class.config().clone()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    x: Vec<u64>,
    y: Vec<u32>,
}

/// Ground-truth record written next to a dataset, never inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub family: String,
    pub index_base: u32,
    pub theta: Vec<u32>,
    /// The same tuple, 1-indexed, e.g. `(1,4,7)`.
    pub display: String,
}

impl TaskRecord {
    pub fn new(class: &TaskClass, task: &TaskParams) -> Self {
        Self {
            family: class.family().as_str().to_string(),
            index_base: 0,
            theta: task.ids().to_vec(),
            display: task.one_indexed(),
        }
    }
}

pub fn write_dataset<W: Write>(mut w: W, class: &TaskClass, data: &Dataset) -> Result<()> {
    serde_json::to_writer(&mut w, &DatasetHeader::for_class(class))?;
    w.write_all(b"\n")?;
    let space = class.input_space();
    for demo in data.iter() {
        let line = Line {
            x: space.to_ints(&demo.x),
            y: demo.y.clone(),
        };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the header only, e.g. to rebuild the class before the body.
pub fn read_header<R: BufRead>(r: &mut R) -> Result<DatasetHeader> {
    let mut first = String::new();
    if r.read_line(&mut first)? == 0 {
        return Err(ArcError::Parse {
            line: 1,
            message: "missing header".into(),
        });
    }
    serde_json::from_str(first.trim()).map_err(|e| ArcError::Parse {
        line: 1,
        message: e.to_string(),
    })
}

/// Reads a dataset, validating every line against `class`.
pub fn read_dataset<R: BufRead>(mut r: R, class: &TaskClass) -> Result<Dataset> {
    let header = read_header(&mut r)?;
    if header.family != class.family().as_str() || header.steps != class.steps() {
        return Err(ArcError::InvalidConfig(format!(
            "dataset is {} with T={}, class is {} with T={}",
            header.family,
            header.steps,
            class.family().as_str(),
            class.steps()
        )));
    }
    if header.index_base != 0 {
        return Err(ArcError::Parse {
            line: 1,
            message: format!("unsupported index_base {}", header.index_base),
        });
    }
    let space = class.input_space();
    let mut demos = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let lineno = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Line = serde_json::from_str(&line).map_err(|e| ArcError::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let bad = |message: String| ArcError::Parse { line: lineno, message };
        let x = space.from_ints(&parsed.x).map_err(|e| bad(e.to_string()))?;
        if parsed.y.len() != class.steps() {
            return Err(bad(format!("y has {} tokens, expected {}", parsed.y.len(), class.steps())));
        }
        if let Some(t) = parsed.y.iter().find(|&&t| !class.alphabet().contains(t)) {
            return Err(bad(format!("token {t} outside the alphabet")));
        }
        demos.push(Demonstration { x, y: parsed.y });
    }
    if demos.is_empty() {
        return Err(ArcError::EmptyDataset);
    }
    Ok(Dataset::new(demos, None))
}

pub fn read_config(text: &str) -> Result<FamilyConfig> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_config(cfg: &FamilyConfig) -> Result<String> {
    Ok(serde_json::to_string(cfg)?)
}
