use std::fmt;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// A ring generator with its cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Ordered list of generators. The declaration order fixes the monomial
/// order everywhere downstream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl GeneratorTable {
    pub fn new<I, S>(gens: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut out: Vec<Generator> = Vec::new();
        for (name, degree) in gens {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(PolyError::InvalidName(name));
            }
            if degree == 0 {
                return Err(PolyError::ZeroDegree(name));
            }
            if out.iter().any(|g| g.name == name) {
                return Err(PolyError::DuplicateName(name));
            }
            out.push(Generator { name, degree });
        }
        Ok(GeneratorTable { gens: out })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.gens[i].degree
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }
}

impl fmt::Display for GeneratorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            GeneratorTable::new([("x", 2), ("x", 3)]),
            Err(PolyError::DuplicateName(_))
        ));
        assert!(matches!(
            GeneratorTable::new([("x", 0)]),
            Err(PolyError::ZeroDegree(_))
        ));
        assert!(matches!(
            GeneratorTable::new([("2x", 1)]),
            Err(PolyError::InvalidName(_))
        ));
    }

    #[test]
    fn lookup() {
        let g = GeneratorTable::new([("t", 2), ("w", 8)]).unwrap();
        assert_eq!(g.index_of("w"), Some(1));
        assert_eq!(g.max_degree(), 8);
        assert_eq!(g.to_string(), "t:2, w:8");
    }
}
