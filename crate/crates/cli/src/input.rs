use std::sync::OnceLock;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use wusq_core::basis::{mod2_reduce, GradedRing, IntegralRing, Mode};
use wusq_core::corpus::builtin;
use wusq_core::manifest::{Loaded, Manifest};
use wusq_core::poly::Assignment;
use wusq_core::{Analysis, AnalysisOptions, Presentation};

use crate::error::CliError;
use crate::GlobalOpts;

/// A loaded manifest with the options that shape every computation.
pub struct Input {
    pub digest: String,
    pub loaded: Loaded,
    pub assignment: Option<Assignment>,
    pub impose_adem: bool,
    options: Value,
    analysis: OnceLock<Result<Analysis, CliError>>,
    integral: OnceLock<Result<Option<IntegralRing>, CliError>>,
}

/// Reads a manifest file, or `builtin:NAME` for a corpus entry.
pub fn load(path: &str, g: &GlobalOpts) -> Result<Input, CliError> {
    let text = match path.strip_prefix("builtin:") {
        Some(name) => {
            let e = builtin(name)?;
            Manifest::from_presentation(&e.presentation, &e.instantiations).to_json()
        }
        None => std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?,
    };
    let loaded = Manifest::load(&text)?;
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())));

    let params = loaded.presentation.params();
    let mut assignment: Option<Assignment> = None;
    if let Some(name) = &g.instantiation {
        let a = loaded
            .instantiations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| *a)
            .ok_or_else(|| CliError::usage(format!("manifest has no instantiation `{name}`")))?;
        assignment = Some(a);
    }
    let mut set = serde_json::Map::new();
    for s in &g.set {
        let (name, bit) = s
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--set expects PARAM=BIT, got `{s}`")))?;
        let i = params
            .index_of(name)
            .ok_or_else(|| CliError::usage(format!("unknown parameter `{name}`")))?;
        let v = match bit {
            "0" => false,
            "1" => true,
            _ => {
                return Err(CliError::usage(format!(
                    "parameter value must be 0 or 1, got `{bit}`"
                )))
            }
        };
        assignment.get_or_insert_with(Assignment::default).set(i, v);
        set.insert(name.to_string(), json!(u8::from(v)));
    }
    let options = json!({
        "set": set,
        "instantiation": g.instantiation,
        "impose_adem": g.impose_adem,
    });
    Ok(Input {
        digest,
        loaded,
        assignment,
        impose_adem: g.impose_adem,
        options,
        analysis: OnceLock::new(),
        integral: OnceLock::new(),
    })
}

impl Input {
    pub fn presentation(&self) -> &Presentation {
        &self.loaded.presentation
    }

    /// Common document header.
    pub fn header(&self, command: &str) -> serde_json::Map<String, Value> {
        let p = self.presentation();
        let mut m = serde_json::Map::new();
        m.insert("schema".into(), json!(1));
        m.insert(
            "tool".into(),
            json!(format!("wusq {}", env!("CARGO_PKG_VERSION"))),
        );
        m.insert("command".into(), json!(command));
        m.insert(
            "input".into(),
            json!({
                "name": p.name(),
                "digest": self.digest,
                "mode": p.mode().as_str(),
                "dimension": p.dim(),
            }),
        );
        m.insert("options".into(), self.options.clone());
        m
    }

    pub fn analysis(&self) -> Result<&Analysis, CliError> {
        self.analysis
            .get_or_init(|| {
                let opts = AnalysisOptions {
                    assignment: self.assignment,
                    impose_adem: self.impose_adem,
                };
                Ok(Analysis::new(self.presentation(), &opts)?)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The integral ring of an `int` manifest.
    pub fn integral(&self) -> Result<Option<&IntegralRing>, CliError> {
        self.integral
            .get_or_init(|| {
                if self.presentation().mode() != Mode::Int {
                    return Ok(None);
                }
                Ok(Some(IntegralRing::new(self.presentation())?))
            })
            .as_ref()
            .map(Option::as_ref)
            .map_err(Clone::clone)
    }

    /// The mod-2 ring, without touching the Steenrod table.
    pub fn ring(&self) -> Result<GradedRing, CliError> {
        let p = match self.integral()? {
            Some(int) => mod2_reduce(int)?,
            None => self.presentation().clone(),
        };
        Ok(GradedRing::new(&p)?)
    }
}
