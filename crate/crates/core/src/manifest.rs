//! JSON manifests: the on-disk form of a presentation.
//!
//! Semantic errors are reported at the line and column of the offending
//! string in the source text, found by searching for its JSON literal
//! inside the relevant section.

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::basis::{BasisError, Mode, Presentation};
use crate::poly::{Assignment, GeneratorTable, ParamSet, ParseError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    pub name: String,
    pub mode: Mode,
    pub dimension: u32,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Generator name to square index (as a string) to value.
    #[serde(default)]
    pub steenrod: IndexMap<String, IndexMap<String, String>>,
    #[serde(default)]
    pub assume_smooth: bool,
    /// Named parameter assignments, each mapping parameter names to 0 or 1.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub instantiations: IndexMap<String, IndexMap<String, u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifestErrorKind {
    /// Not valid JSON, or not the manifest schema.
    Syntax,
    /// Well-formed but semantically invalid.
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestError {
    pub kind: ManifestErrorKind,
    /// 1-based; 0 when no position is known.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ManifestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(
                f,
                "line {}, column {}: {}",
                self.line, self.column, self.message
            )
        } else {
            f.write_str(&self.message)
        }
    }
}

impl std::error::Error for ManifestError {}

/// A loaded manifest: presentation plus named assignments.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub presentation: Presentation,
    pub instantiations: Vec<(String, Assignment)>,
}

/// Byte offset to 1-based line and column (in characters).
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Finds string literals in the source text, scoped to a section.
struct Locator<'a> {
    text: Option<&'a str>,
}

impl Locator<'_> {
    /// Offset just inside the quotes of `literal`, searching from `from`.
    fn find(&self, literal: &str, from: usize) -> Option<usize> {
        let text = self.text?;
        let quoted = serde_json::to_string(literal).ok()?;
        text.get(from..)?.find(&quoted).map(|i| from + i + 1)
    }

    /// Offset of `key` as an object key inside `section`, if present.
    fn key(&self, section: usize, key: &str) -> Option<usize> {
        let text = self.text?;
        let quoted = serde_json::to_string(key).ok()?;
        let mut from = section;
        while let Some(i) = text.get(from..)?.find(&quoted) {
            let at = from + i;
            let rest = text[at + quoted.len()..].trim_start();
            if rest.starts_with(':') {
                return Some(at + 1);
            }
            from = at + quoted.len();
        }
        None
    }

    fn error(&self, offset: Option<usize>, message: String) -> ManifestError {
        let (line, column) = match (self.text, offset) {
            (Some(t), Some(o)) => line_col(t, o),
            _ => (0, 0),
        };
        ManifestError {
            kind: ManifestErrorKind::Invalid,
            line,
            column,
            message,
        }
    }

    /// Error located at a character position inside a string literal. JSON
    /// escapes are rare in expressions, so the position is taken literally.
    fn error_in(&self, literal_start: Option<usize>, pos: usize, message: String) -> ManifestError {
        let offset = literal_start.and_then(|s| {
            let text = self.text?;
            let inner = &text[s..];
            Some(s + inner.char_indices().nth(pos).map_or(0, |(i, _)| i))
        });
        self.error(offset, message)
    }
}

fn parse_pos(e: &BasisError) -> Option<usize> {
    match e {
        BasisError::Parse { source, .. } => Some(source.pos()),
        _ => None,
    }
}

fn parse_message(e: &BasisError) -> String {
    match e {
        BasisError::Parse { source, .. } => describe(source),
        other => other.to_string(),
    }
}

fn describe(e: &ParseError) -> String {
    match e {
        ParseError::UnknownIdentifier { name, .. } => format!("undeclared identifier `{name}`"),
        ParseError::ParameterNotAllowed { name, domain, .. } => {
            format!("parameter `{name}` is not allowed in the {domain} domain")
        }
        ParseError::Syntax { message, .. } => format!("syntax error: {message}"),
        ParseError::NegativeExponent { .. } => "negative exponent".to_string(),
    }
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ManifestError> {
        serde_json::from_str(text).map_err(|e| ManifestError {
            kind: ManifestErrorKind::Syntax,
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Parses and validates manifest text in one step.
    pub fn load(text: &str) -> Result<Loaded, ManifestError> {
        Manifest::parse(text)?.build(Some(text))
    }

    /// Validates the manifest and builds its presentation. With `source`
    /// set, errors carry the position of the offending string.
    pub fn build(&self, source: Option<&str>) -> Result<Loaded, ManifestError> {
        let loc = Locator { text: source };
        let top = |key: &str| loc.key(0, key);
        if self.schema != SCHEMA_VERSION {
            return Err(loc.error(
                top("schema"),
                format!(
                    "unsupported schema {} (expected {SCHEMA_VERSION})",
                    self.schema
                ),
            ));
        }
        let gens_at = top("generators").unwrap_or(0);
        let gens = GeneratorTable::new(self.generators.iter().map(|g| (g.name.clone(), g.degree)))
            .map_err(|e| {
                let bad = self
                    .generators
                    .iter()
                    .find(|g| e.to_string().contains(&format!("`{}`", g.name)));
                let at = bad.and_then(|g| loc.find(&g.name, gens_at));
                loc.error(at.or(Some(gens_at)), e.to_string())
            })?;
        let params_at = top("parameters").unwrap_or(0);
        let params = ParamSet::new(self.parameters.iter().cloned()).map_err(|e| {
            let bad = self
                .parameters
                .iter()
                .find(|p| e.to_string().contains(&format!("`{p}`")));
            loc.error(bad.and_then(|p| loc.find(p, params_at)), e.to_string())
        })?;
        let mut p = Presentation::new(&self.name, self.mode, self.dimension, gens, params)
            .map_err(|e| loc.error(top("mode"), e.to_string()))?;

        let rel_at = top("relations").unwrap_or(0);
        let mut cursor = rel_at;
        for (i, r) in self.relations.iter().enumerate() {
            let start = loc.find(r, cursor);
            if let Some(s) = start {
                cursor = s;
            }
            p.add_relation_str(r).map_err(|e| match &e {
                BasisError::InhomogeneousRelation { degrees, .. } => loc.error(
                    start,
                    format!(
                        "relation {} is inhomogeneous (degrees {} and {})",
                        i + 1,
                        degrees.0,
                        degrees.1
                    ),
                ),
                _ => loc.error_in(
                    start,
                    parse_pos(&e).unwrap_or(0),
                    format!("relation {}: {}", i + 1, parse_message(&e)),
                ),
            })?;
        }

        let sq_at = top("steenrod").unwrap_or(0);
        for (g, entries) in &self.steenrod {
            let g_at = loc.key(sq_at, g);
            let Some(gi) = p.gens().index_of(g) else {
                return Err(loc.error(
                    g_at,
                    format!("undeclared generator `{g}` in steenrod table"),
                ));
            };
            let degree = p.gens().degree(gi);
            let mut cursor = g_at.unwrap_or(sq_at);
            for (idx, value) in entries {
                let idx_at = loc.key(cursor, idx);
                if let Some(a) = idx_at {
                    cursor = a;
                }
                let index: u32 = idx.parse().map_err(|_| {
                    loc.error(idx_at, format!("square index `{idx}` is not an integer"))
                })?;
                if !index.is_power_of_two() {
                    return Err(loc.error(
                        idx_at,
                        format!("Sq^{index} {g}: only power-of-two indices may be given; others follow from Adem relations"),
                    ));
                }
                if index > degree {
                    return Err(loc.error(
                        idx_at,
                        format!("Sq^{index} {g}: index exceeds the generator degree {degree}"),
                    ));
                }
                let v_at = loc.find(value, cursor);
                p.set_square_str(g, index, value).map_err(|e| match &e {
                    BasisError::Parse { source, .. } => loc.error_in(
                        v_at,
                        source.pos(),
                        format!("Sq^{index} {g}: {}", describe(source)),
                    ),
                    other => loc.error(v_at, other.to_string()),
                })?;
            }
        }
        p.set_assume_smooth(self.assume_smooth);

        let inst_at = top("instantiations").unwrap_or(0);
        let mut instantiations = Vec::new();
        for (name, values) in &self.instantiations {
            let at = loc.key(inst_at, name);
            let mut a = Assignment::default();
            for (param, &bit) in values {
                let Some(i) = p.params().index_of(param) else {
                    return Err(loc.error(
                        at.and_then(|s| loc.key(s, param)),
                        format!("instantiation `{name}`: undeclared parameter `{param}`"),
                    ));
                };
                if bit > 1 {
                    return Err(loc.error(
                        at.and_then(|s| loc.key(s, param)),
                        format!("instantiation `{name}`: `{param}` must be 0 or 1"),
                    ));
                }
                a.set(i, bit == 1);
            }
            instantiations.push((name.clone(), a));
        }
        Ok(Loaded {
            presentation: p,
            instantiations,
        })
    }

    pub fn from_presentation(
        p: &Presentation,
        instantiations: &[(String, Assignment)],
    ) -> Manifest {
        let mut steenrod: IndexMap<String, IndexMap<String, String>> = IndexMap::new();
        for (&(g, i), v) in p.squares() {
            steenrod
                .entry(p.gens().name(g).to_string())
                .or_default()
                .insert(i.to_string(), p.render(v));
        }
        let instantiations = instantiations
            .iter()
            .map(|(n, a)| {
                let values = (0..p.params().len())
                    .filter(|&i| a.mask >> i & 1 == 1)
                    .map(|i| (p.params().name(i).to_string(), (a.values >> i & 1) as u8))
                    .collect();
                (n.clone(), values)
            })
            .collect();
        Manifest {
            schema: SCHEMA_VERSION,
            name: p.name().to_string(),
            mode: p.mode(),
            dimension: p.dim(),
            generators: p
                .gens()
                .iter()
                .map(|g| GeneratorSpec {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            parameters: p.params().names().to_vec(),
            relations: p.relations().iter().map(|r| p.render(r)).collect(),
            steenrod,
            assume_smooth: p.assume_smooth(),
            instantiations,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
