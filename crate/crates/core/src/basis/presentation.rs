use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::BasisError;
use crate::poly::{
    parse_expr, Assignment, ClassPoly, Coeff, GeneratorTable, Gf2, Monomial, ParamPoly, ParamSet,
    PolyError,
};

/// Coefficient mode of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "gf2")]
    Gf2,
    #[serde(rename = "gf2-parametric")]
    Gf2Parametric,
    #[serde(rename = "int")]
    Int,
}

impl Mode {
    pub fn is_gf2(self) -> bool {
        matches!(self, Mode::Gf2 | Mode::Gf2Parametric)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Gf2 => "gf2",
            Mode::Gf2Parametric => "gf2-parametric",
            Mode::Int => "int",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finitely presented graded-commutative ring together with a partial
/// table of Steenrod squares on its generators.
///
/// Relations are stored with integer coefficients; in the GF(2) modes they
/// are reduced mod 2 on insertion. Squares are always mod 2 and may involve
/// the declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    mode: Mode,
    dim: u32,
    gens: GeneratorTable,
    params: ParamSet,
    relations: Vec<ClassPoly<BigInt>>,
    squares: BTreeMap<(usize, u32), ClassPoly<ParamPoly>>,
    assume_smooth: bool,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        mode: Mode,
        dim: u32,
        gens: GeneratorTable,
        params: ParamSet,
    ) -> Result<Self, BasisError> {
        if mode == Mode::Gf2 && !params.is_empty() {
            return Err(BasisError::ParametersInGf2Mode);
        }
        Ok(Presentation {
            name: name.into(),
            mode,
            dim,
            gens,
            params,
            relations: Vec::new(),
            squares: BTreeMap::new(),
            assume_smooth: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn gens(&self) -> &GeneratorTable {
        &self.gens
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn assume_smooth(&self) -> bool {
        self.assume_smooth
    }

    pub fn set_assume_smooth(&mut self, v: bool) {
        self.assume_smooth = v;
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn relations(&self) -> &[ClassPoly<BigInt>] {
        &self.relations
    }

    /// Relations reduced mod 2.
    pub fn relations_gf2(&self) -> Vec<ClassPoly<Gf2>> {
        self.relations
            .iter()
            .map(|r| r.map_coeffs(Gf2::from_integer))
            .filter(|r| !r.is_zero())
            .collect()
    }

    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations
            .iter()
            .filter_map(|r| r.terms().next().map(|(m, _)| m.degree()))
            .collect()
    }

    pub fn squares(&self) -> &BTreeMap<(usize, u32), ClassPoly<ParamPoly>> {
        &self.squares
    }

    pub fn add_relation(&mut self, r: ClassPoly<BigInt>) -> Result<(), BasisError> {
        let index = self.relations.len();
        if let Err(PolyError::Inhomogeneous { degrees }) = r.homogeneous_degree() {
            return Err(BasisError::InhomogeneousRelation { index, degrees });
        }
        let r = if self.mode.is_gf2() {
            r.map_coeffs(|c| BigInt::from(u8::from(c.bit(0))))
        } else {
            r
        };
        if !r.is_zero() {
            self.relations.push(r);
        }
        Ok(())
    }

    pub fn add_relation_str(&mut self, text: &str) -> Result<(), BasisError> {
        let r = parse_expr::<BigInt>(text, &self.gens, &ParamSet::empty()).map_err(|source| {
            BasisError::Parse {
                context: format!("relation `{text}`"),
                source,
            }
        })?;
        self.add_relation(r)
    }

    /// Records a user value for `Sq^index` on generator `gen`.
    pub fn set_square(
        &mut self,
        gen: usize,
        index: u32,
        value: ClassPoly<ParamPoly>,
    ) -> Result<(), BasisError> {
        let g = self.gens.get(gen).clone();
        let bad = |reason: String| BasisError::BadSquareEntry {
            generator: g.name.clone(),
            index,
            reason,
        };
        if index > g.degree {
            return Err(bad(format!(
                "index exceeds the generator degree {} (unstable, always zero)",
                g.degree
            )));
        }
        match value.homogeneous_degree() {
            Err(PolyError::Inhomogeneous { degrees }) => {
                return Err(bad(format!(
                    "value is inhomogeneous (degrees {} and {})",
                    degrees.0, degrees.1
                )))
            }
            Ok(Some(d)) if d != g.degree + index => {
                return Err(bad(format!(
                    "value has degree {d}, expected {}",
                    g.degree + index
                )))
            }
            _ => {}
        }
        self.squares.insert((gen, index), value);
        Ok(())
    }

    pub fn set_square_str(&mut self, gen: &str, index: u32, text: &str) -> Result<(), BasisError> {
        let g = self
            .gens
            .index_of(gen)
            .ok_or_else(|| BasisError::UnknownGenerator(gen.to_string()))?;
        let v = parse_expr::<ParamPoly>(text, &self.gens, &self.params).map_err(|source| {
            BasisError::Parse {
                context: format!("Sq^{index} {gen} = `{text}`"),
                source,
            }
        })?;
        self.set_square(g, index, v)
    }

    /// Substitutes parameter values into the Steenrod table.
    pub fn substitute(&self, a: &Assignment) -> Presentation {
        let mut out = self.clone();
        for v in out.squares.values_mut() {
            *v = v.map_coeffs(|c| c.substitute(a));
        }
        out
    }

    /// Replaces parameters by polynomials in the remaining ones.
    pub fn compose_params(&self, subs: &BTreeMap<usize, ParamPoly>) -> Presentation {
        let mut out = self.clone();
        for v in out.squares.values_mut() {
            *v = v.map_coeffs(|c| c.compose(subs));
        }
        out
    }

    /// Same ring with different mode (relations re-reduced as needed).
    pub(crate) fn with_mode(&self, mode: Mode) -> Presentation {
        let mut out = self.clone();
        out.mode = mode;
        out.relations.clear();
        for r in &self.relations {
            out.add_relation(r.clone()).expect("already homogeneous");
        }
        out
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        Monomial::from_exponents(&self.gens, exps)
    }

    pub fn parse<C: Coeff>(&self, text: &str) -> Result<ClassPoly<C>, BasisError> {
        parse_expr::<C>(text, &self.gens, &self.params).map_err(|source| BasisError::Parse {
            context: format!("expression `{text}`"),
            source,
        })
    }

    pub fn render<C: Coeff>(&self, p: &ClassPoly<C>) -> String {
        p.render(&self.gens, &self.params)
    }
}
