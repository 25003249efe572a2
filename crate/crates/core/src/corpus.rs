//! Builtin presentations with their Steenrod tables, named parameter
//! instantiations and hand-checked golden fixtures.

use thiserror::Error;

use crate::basis::{mod2_reduce, BasisError, IntegralRing, Mode, Presentation};
use crate::poly::{Assignment, ClassPoly, Coeff, GeneratorTable, Monomial, ParamSet};

mod fixtures;

pub use fixtures::{
    evaluate_fixture, golden_suite, Fixture, FixtureContext, FixtureError, FixtureKind,
    FixtureOutcome, GoldenFile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown builtin `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

/// A builtin presentation and its named parameter choices.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    /// Stable file stem under `corpus/`.
    pub file: String,
    pub presentation: Presentation,
    pub instantiations: Vec<(String, Assignment)>,
}

impl CorpusEntry {
    fn plain(file: &str, presentation: Presentation) -> Self {
        CorpusEntry {
            name: presentation.name().to_string(),
            file: file.to_string(),
            presentation,
            instantiations: Vec::new(),
        }
    }

    pub fn instantiation(&self, name: &str) -> Option<&Assignment> {
        self.instantiations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
    }
}

/// Names accepted by [`builtin`] for the fixed-size corpus.
pub const CORPUS_NAMES: &[&str] = &[
    "RP2",
    "RP15",
    "CP2",
    "CP4",
    "HP2",
    "OP2",
    "OP2^2",
    "CP2-int",
    "HP2-int",
    "EIII",
    "EIII-mod2",
    "EVI",
];

/// Every entry of [`CORPUS_NAMES`].
pub fn all() -> Vec<CorpusEntry> {
    CORPUS_NAMES
        .iter()
        .map(|n| builtin(n).expect("corpus names are valid"))
        .collect()
}

fn gens(list: &[(&str, u32)]) -> GeneratorTable {
    GeneratorTable::new(list.iter().copied()).expect("builtin generators")
}

fn params(list: &[&str]) -> ParamSet {
    ParamSet::new(list.iter().copied()).expect("builtin parameters")
}

/// Truncated polynomial ring on one generator: `x^(m+1) = 0`, `|x| = deg`.
fn projective(name: &str, mode: Mode, deg: u32, m: u32) -> Presentation {
    let mut p = Presentation::new(name, mode, deg * m, gens(&[("x", deg)]), ParamSet::empty())
        .expect("valid");
    p.add_relation_str(&format!("x^{}", m + 1)).expect("valid");
    let mut i = 1;
    while i < deg {
        p.set_square_str("x", i, "0").expect("valid");
        i *= 2;
    }
    p
}

fn parse_projective(name: &str) -> Option<(u32, u32, bool)> {
    let (body, int) = match name.strip_suffix("-int") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let (deg, rest) = [("RP", 1), ("CP", 2), ("HP", 4)]
        .iter()
        .find_map(|&(prefix, deg)| body.strip_prefix(prefix).map(|r| (deg, r)))?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    let m: u32 = rest.parse().ok()?;
    // RP^m has 2-torsion integrally; only the even-degree families lift.
    if int && deg == 1 {
        return None;
    }
    Some((deg, m, int))
}

fn embed<C: Coeff>(p: &ClassPoly<C>, target: &GeneratorTable, offset: usize) -> ClassPoly<C> {
    let mut out = ClassPoly::zero(target.len());
    for (m, c) in p.terms() {
        let mut exps = vec![0; target.len()];
        exps[offset..offset + m.nvars()].copy_from_slice(m.exponents());
        out.add_term(Monomial::from_exponents(target, exps), c.clone());
    }
    out
}

/// Presentation of the tensor product of two parameter-free GF(2)
/// presentations. Clashing generator names in `b` get a `2` appended.
pub fn tensor(a: &Presentation, b: &Presentation, name: &str) -> Result<Presentation, BasisError> {
    let mut list: Vec<(String, u32)> = a
        .gens()
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    for g in b.gens().iter() {
        let mut n = g.name.clone();
        while list.iter().any(|(m, _)| *m == n) {
            n.push('2');
        }
        list.push((n, g.degree));
    }
    let table = GeneratorTable::new(list)?;
    let mode = if a.mode() == Mode::Int && b.mode() == Mode::Int {
        Mode::Int
    } else {
        Mode::Gf2
    };
    let mut p = Presentation::new(
        name,
        mode,
        a.dim() + b.dim(),
        table.clone(),
        ParamSet::empty(),
    )?;
    for (src, offset) in [(a, 0), (b, a.gens().len())] {
        for r in src.relations() {
            p.add_relation(embed(r, &table, offset))?;
        }
        for (&(g, i), v) in src.squares() {
            p.set_square(g + offset, i, embed(v, &table, offset))?;
        }
    }
    Ok(p)
}

fn eiii() -> CorpusEntry {
    let mut p = Presentation::new(
        "EIII",
        Mode::Int,
        32,
        gens(&[("t", 2), ("w", 8)]),
        params(&["a", "b", "c", "d"]),
    )
    .expect("valid");
    p.add_relation_str("t^9 - 3*w^2*t").expect("valid");
    p.add_relation_str("w^3 + 15*w^2*t^4 - 9*w*t^8")
        .expect("valid");
    for (g, i, v) in [
        ("t", 1, "0"),
        ("w", 1, "0"),
        ("w", 2, "a*t^5 + b*t*w"),
        ("w", 4, "c*t^6 + d*t^2*w"),
    ] {
        p.set_square_str(g, i, v).expect("valid");
    }
    let mut ishitoya = Assignment::default();
    for (k, v) in [(0, true), (1, true), (2, true), (3, false)] {
        ishitoya.set(k, v);
    }
    CorpusEntry {
        name: "EIII".into(),
        file: "eiii".into(),
        presentation: p,
        instantiations: vec![("ishitoya".into(), ishitoya)],
    }
}

/// Parameter names of the EVI table, in declaration order.
pub const EVI_PARAMS: [&str; 12] = [
    "a1", "a2", "b2", "c2", "d2", "m0", "n0", "m1", "n1", "l2", "m2", "n2",
];

const EVI_RELATIONS: [&str; 12] = [
    "y3^3",
    "y16*y2 + y12*y3^2 + y2^6*y3^2",
    "y16*y3",
    "y12^2*y2 + y12*y2^4*y3^2 + y20*y3^2",
    "y12^2*y3",
    "y12*y16 + y2^14 + y12*y2^5*y3^2 + y2^11*y3^2",
    "y12^3 + y16*y20 + y2^5*y20*y3^2",
    "y12^2*y16 + y20^2 + y12*y2^11*y3^2",
    "y12^2*y20 + y12*y2^13*y3^2 + y12*y2^3*y20*y3^2",
    "y12*y16^2 + y12*y2^13*y3^2",
    "y16^3 + y12*y16*y20 + y12*y2^5*y20*y3^2",
    "y16^2*y20 + y2^13*y20*y3^2",
];

const EVI_SQUARES: [(&str, u32, &str); 14] = [
    ("y2", 1, "y3"),
    ("y3", 1, "0"),
    ("y12", 1, "0"),
    ("y12", 2, "y2^7 + y2*y12 + y2^4*y3^2"),
    ("y12", 4, "y2^8 + y2^2*y12 + a1*y2^5*y3^2"),
    ("y12", 8, "y20 + y2^4*y12 + a2*y2^7*y3^2 + b2*y2*y3^2*y12"),
    ("y16", 1, "0"),
    ("y16", 2, "0"),
    ("y16", 4, "y2^7*y3^2"),
    ("y16", 8, "y12^2 + c2*y2^9*y3^2 + d2*y2^3*y3^2*y12"),
    ("y20", 1, "0"),
    ("y20", 2, "y2^11 + y2*y20 + m0*y2^8*y3^2 + n0*y2^2*y3^2*y12"),
    (
        "y20",
        4,
        "y12^2 + y2^6*y12 + m1*y2^9*y3^2 + n1*y2^3*y3^2*y12",
    ),
    (
        "y20",
        8,
        "y12*y16 + y2^8*y12 + l2*y2^11*y3^2 + m2*y2^5*y3^2*y12 + n2*y2*y3^2*y20",
    ),
];

fn evi() -> CorpusEntry {
    let mut p = Presentation::new(
        "EVI",
        Mode::Gf2Parametric,
        64,
        gens(&[("y2", 2), ("y3", 3), ("y12", 12), ("y16", 16), ("y20", 20)]),
        params(&EVI_PARAMS),
    )
    .expect("valid");
    for r in EVI_RELATIONS {
        p.add_relation_str(r).expect("valid");
    }
    let mut degrees = p.relation_degrees();
    degrees.sort_unstable();
    assert_eq!(degrees, [9, 18, 19, 26, 27, 28, 36, 40, 44, 44, 48, 52]);
    for (g, i, v) in EVI_SQUARES {
        p.set_square_str(g, i, v).expect("valid");
    }
    // Stiefel-Whitney classes of a smooth manifold satisfy extra vanishing
    // that cohomology alone does not see; recorded, not used.
    p.set_assume_smooth(true);
    CorpusEntry::plain("evi", p)
}

/// Looks up a builtin by name.
///
/// Accepted: `RP<m>`, `CP<m>`, `HP<m>`, `CP<m>-int`, `HP<m>-int`, `OP2`,
/// `OP2^2`, `EIII`, `EIII-mod2`, `EVI`.
pub fn builtin(name: &str) -> Result<CorpusEntry, CorpusError> {
    let entry = match name {
        "EVI" => evi(),
        "EIII" => eiii(),
        "EIII-mod2" => {
            let e = eiii();
            let ring = IntegralRing::new(&e.presentation)?;
            let mut p = mod2_reduce(&ring)?;
            p.set_name("EIII-mod2");
            CorpusEntry {
                name: "EIII-mod2".into(),
                file: "eiii-mod2".into(),
                presentation: p,
                instantiations: e.instantiations,
            }
        }
        "OP2" => CorpusEntry::plain("op2", projective("OP2", Mode::Gf2, 8, 2)),
        "OP2^2" => {
            let op2 = projective("OP2", Mode::Gf2, 8, 2);
            CorpusEntry::plain("op2-squared", tensor(&op2, &op2, "OP2^2")?)
        }
        _ => {
            let (deg, m, int) =
                parse_projective(name).ok_or_else(|| CorpusError::UnknownName(name.into()))?;
            let mode = if int { Mode::Int } else { Mode::Gf2 };
            let file = name.to_ascii_lowercase();
            CorpusEntry::plain(&file, projective(name, mode, deg, m))
        }
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in CORPUS_NAMES {
            let e = builtin(n).unwrap();
            assert_eq!(e.presentation.name(), *n);
        }
        assert!(builtin("RP0").is_err());
        assert!(builtin("RP3-int").is_err());
        assert!(matches!(builtin("EVIII"), Err(CorpusError::UnknownName(_))));
    }

    #[test]
    fn evi_shape() {
        let p = builtin("EVI").unwrap().presentation;
        assert_eq!(p.gens().degrees(), vec![2, 3, 12, 16, 20]);
        assert_eq!(p.relations().len(), 12);
        let e = builtin("EIII").unwrap().presentation;
        assert_eq!(e.relation_degrees(), vec![18, 24]);
    }
}
