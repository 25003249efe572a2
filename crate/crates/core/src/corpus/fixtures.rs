//! Golden fixtures: published values and hand derivations, each checked
//! against the pipeline by a kind-specific comparison.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{builtin, CorpusError};
use crate::analysis::{Analysis, AnalysisOptions};
use crate::basis::{mod2_reduce, BasisError, GradedRing, IntegralRing, Mode, Presentation};
use crate::orient::{OrientError, Verdict};
use crate::poly::{param_poly_cmp, Assignment, ClassPoly, Gf2, ParamPoly};
use crate::steenrod::{complete_table, sq_class, Reduction, SqError, SquareTable};

type Poly = ClassPoly<ParamPoly>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error("unknown instantiation `{0}`")]
    UnknownInstantiation(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("fixture {name}: {reason}")]
    Malformed { name: String, reason: String },
}

impl From<BasisError> for FixtureError {
    fn from(e: BasisError) -> Self {
        FixtureError::Orient(e.into())
    }
}

impl From<SqError> for FixtureError {
    fn from(e: SqError) -> Self {
        FixtureError::Orient(e.into())
    }
}

/// What a fixture measures. Expected values are JSON so that fixture files
/// stay readable; each kind documents its shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FixtureKind {
    /// Array of mod-2 Betti numbers `b_0..b_n`.
    Betti,
    /// Number of monomials in a degree.
    MonomialCount {
        degree: u32,
    },
    /// Monomials of a degree with nonzero normal form, as strings.
    NonzeroMonomials {
        degree: u32,
    },
    /// Array of free ranks `0..=n` of an integral presentation.
    IntegralRanks,
    /// Array of `[degree, [factors]]`; empty when torsion-free.
    Torsion,
    /// Object from monomial to the magnitude of its coordinate, in a degree
    /// of free rank 1.
    IntegralCoordinates {
        degree: u32,
    },
    /// `Sq^index` of a generator before reduction by the relations.
    SquareRaw {
        generator: String,
        index: u32,
    },
    /// `Sq^index` of a generator as a class.
    Square {
        generator: String,
        index: u32,
    },
    /// Top coordinate of `Sq^index(class)` as a parameter polynomial.
    SqTop {
        class: String,
        index: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        instantiation: Option<String>,
    },
    Euler,
    Signature,
    /// `{status, conditions?, witness?: {square, degree}}`; absent keys are
    /// not compared.
    Verdict {
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        instantiation: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub entry: String,
    #[serde(flatten)]
    pub kind: FixtureKind,
    pub expected: Value,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub pass: bool,
    pub expected: Value,
    pub actual: Value,
    pub citation: String,
}

/// Lazily built pipeline state for one presentation.
pub struct FixtureContext {
    presentation: Presentation,
    instantiations: Vec<(String, Assignment)>,
    analyses: Mutex<BTreeMap<Option<String>, Arc<Analysis>>>,
    integral: OnceLock<Result<Arc<IntegralRing>, FixtureError>>,
    free: OnceLock<Result<Arc<(GradedRing, SquareTable)>, FixtureError>>,
}

impl FixtureContext {
    pub fn new(presentation: Presentation, instantiations: Vec<(String, Assignment)>) -> Self {
        FixtureContext {
            presentation,
            instantiations,
            analyses: Mutex::new(BTreeMap::new()),
            integral: OnceLock::new(),
            free: OnceLock::new(),
        }
    }

    pub fn builtin(name: &str) -> Result<Self, FixtureError> {
        let e = builtin(name)?;
        Ok(Self::new(e.presentation, e.instantiations))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn analysis(&self, instantiation: Option<&str>) -> Result<Arc<Analysis>, FixtureError> {
        let key = instantiation.map(str::to_string);
        if let Some(a) = self.analyses.lock().expect("poisoned").get(&key) {
            return Ok(a.clone());
        }
        let assignment = match instantiation {
            None => None,
            Some(n) => Some(
                self.instantiations
                    .iter()
                    .find(|(m, _)| m == n)
                    .map(|(_, a)| *a)
                    .ok_or_else(|| FixtureError::UnknownInstantiation(n.into()))?,
            ),
        };
        let opts = AnalysisOptions {
            assignment,
            ..Default::default()
        };
        let a = Arc::new(Analysis::new(&self.presentation, &opts)?);
        self.analyses
            .lock()
            .expect("poisoned")
            .insert(key, a.clone());
        Ok(a)
    }

    fn integral(&self) -> Result<Arc<IntegralRing>, FixtureError> {
        self.integral
            .get_or_init(|| Ok(Arc::new(IntegralRing::new(&self.presentation)?)))
            .clone()
    }

    /// Ring and table with no reduction of square values and no parameter
    /// elimination.
    fn free(&self) -> Result<Arc<(GradedRing, SquareTable)>, FixtureError> {
        self.free
            .get_or_init(|| {
                let p = if self.presentation.mode() == Mode::Int {
                    mod2_reduce(&IntegralRing::new(&self.presentation)?)?
                } else {
                    self.presentation.clone()
                };
                let ring = GradedRing::new(&p)?;
                let table = complete_table(&ring, Reduction::Free)?;
                Ok(Arc::new((ring, table)))
            })
            .clone()
    }
}

fn malformed(fx: &Fixture, reason: impl Into<String>) -> FixtureError {
    FixtureError::Malformed {
        name: fx.name.clone(),
        reason: reason.into(),
    }
}

fn generator(p: &Presentation, name: &str) -> Result<usize, FixtureError> {
    p.gens()
        .index_of(name)
        .ok_or_else(|| FixtureError::UnknownGenerator(name.into()))
}

/// Parses a parameter expression such as `1+b2+n2`.
fn parse_param(p: &Presentation, text: &str) -> Result<ParamPoly, FixtureError> {
    let c: Poly = p.parse(text)?;
    let mut out = ParamPoly::zero();
    for (m, q) in c.terms() {
        if !m.is_one() {
            return Err(BasisError::InhomogeneousInput {
                degrees: (0, m.degree()),
            }
            .into());
        }
        out.add_assign(q);
    }
    Ok(out)
}

fn strings(fx: &Fixture, v: &Value) -> Result<Vec<String>, FixtureError> {
    v.as_array()
        .and_then(|a| a.iter().map(|s| s.as_str().map(str::to_string)).collect())
        .ok_or_else(|| malformed(fx, "expected an array of strings"))
}

fn canonical_params(a: &Analysis, fx: &Fixture, v: &Value) -> Result<Vec<ParamPoly>, FixtureError> {
    let mut out = strings(fx, v)?
        .iter()
        .map(|s| Ok(parse_param(a.presentation(), s)?.compose(a.substitutions())))
        .collect::<Result<Vec<_>, FixtureError>>()?;
    out.sort_by(param_poly_cmp);
    out.dedup();
    Ok(out)
}

fn verdict_json(a: &Analysis, v: &Verdict) -> Value {
    let params = a.presentation().params();
    let mut obj = Map::new();
    obj.insert("status".into(), json!(v.status.as_str()));
    obj.insert(
        "conditions".into(),
        json!(v
            .conditions
            .iter()
            .map(|q| q.render(params))
            .collect::<Vec<_>>()),
    );
    if let Some(w) = &v.witness {
        obj.insert(
            "witness".into(),
            json!({ "square": w.square, "degree": w.degree }),
        );
    }
    Value::Object(obj)
}

fn compare_verdict(
    a: &Analysis,
    fx: &Fixture,
    v: &Verdict,
    actual: &Value,
) -> Result<bool, FixtureError> {
    let exp = fx
        .expected
        .as_object()
        .ok_or_else(|| malformed(fx, "verdict expectation must be an object"))?;
    let mut pass = exp.get("status") == actual.get("status");
    if let Some(c) = exp.get("conditions") {
        pass &= canonical_params(a, fx, c)? == v.conditions;
    }
    if let Some(w) = exp.get("witness") {
        pass &= Some(w) == actual.get("witness");
    }
    Ok(pass)
}

/// Evaluates one fixture against a context built for its entry.
pub fn evaluate_fixture(
    fx: &Fixture,
    ctx: &FixtureContext,
) -> Result<FixtureOutcome, FixtureError> {
    let p = ctx.presentation();
    let (actual, pass) = match &fx.kind {
        FixtureKind::Betti => {
            let a = ctx.analysis(None)?;
            let actual = json!(a.ring().betti_profile());
            (actual.clone(), actual == fx.expected)
        }
        FixtureKind::MonomialCount { degree } => {
            let a = ctx.analysis(None)?;
            let actual = json!(a.ring().degree_basis(*degree)?.monomials().len());
            (actual.clone(), actual == fx.expected)
        }
        FixtureKind::NonzeroMonomials { degree } => {
            let a = ctx.analysis(None)?;
            let basis = a.ring().degree_basis(*degree)?;
            let mut found: Vec<String> = basis
                .monomials()
                .iter()
                .filter(|m| basis.coords(m).is_some_and(|c| !c.is_zero()))
                .map(|m| m.render(p.gens()))
                .collect();
            found.sort();
            let mut want = strings(fx, &fx.expected)?
                .iter()
                .map(|s| Ok(p.render(&p.parse::<Gf2>(s)?)))
                .collect::<Result<Vec<_>, FixtureError>>()?;
            want.sort();
            (json!(found), found == want)
        }
        FixtureKind::IntegralRanks => {
            let actual = json!(ctx.integral()?.ranks());
            (actual.clone(), actual == fx.expected)
        }
        FixtureKind::Torsion => {
            let t: Vec<Value> = ctx
                .integral()?
                .torsion()
                .into_iter()
                .map(|(d, f)| json!([d, f.iter().map(|x| x.to_string()).collect::<Vec<_>>()]))
                .collect();
            let actual = Value::Array(t);
            (actual.clone(), actual == fx.expected)
        }
        FixtureKind::IntegralCoordinates { degree } => {
            let ring = ctx.integral()?;
            let b = ring.degree_basis(*degree)?;
            if b.rank() != 1 {
                return Err(malformed(
                    fx,
                    format!("degree {degree} has rank {}", b.rank()),
                ));
            }
            let mut actual = Map::new();
            for m in b.monomials() {
                let c = &b.coords(m).expect("monomial of this degree")[0];
                if !c.is_zero() {
                    actual.insert(m.render(p.gens()), json!(c.abs().to_u64()));
                }
            }
            let exp = fx
                .expected
                .as_object()
                .ok_or_else(|| malformed(fx, "coordinates must be an object"))?;
            let mut want = Map::new();
            for (k, v) in exp {
                want.insert(p.render(&p.parse::<Gf2>(k)?), v.clone());
            }
            (Value::Object(actual.clone()), actual == want)
        }
        FixtureKind::SquareRaw {
            generator: g,
            index,
        } => {
            let free = ctx.free()?;
            let (ring, table) = (&free.0, &free.1);
            let gi = generator(p, g)?;
            let v = match table.value(gi, *index)? {
                Some(v) => v.clone(),
                None => Poly::zero(p.gens().len()),
            };
            let want: Poly = ring.presentation().parse(
                fx.expected
                    .as_str()
                    .ok_or_else(|| malformed(fx, "expected a string"))?,
            )?;
            let pres = ring.presentation();
            (json!(pres.render(&v)), v == want)
        }
        FixtureKind::Square {
            generator: g,
            index,
        } => {
            let a = ctx.analysis(None)?;
            let gi = generator(p, g)?;
            let x = Poly::generator(p.gens(), gi);
            let v = sq_class(a.ring(), a.table(), &x, *index)?;
            let text = fx
                .expected
                .as_str()
                .ok_or_else(|| malformed(fx, "expected a string"))?;
            let subs = a.substitutions();
            let want: Poly = a
                .presentation()
                .parse::<ParamPoly>(text)?
                .map_coeffs(|q| q.compose(subs));
            let want = a.ring().reduce(&want)?;
            (json!(a.presentation().render(&v)), v == want)
        }
        FixtureKind::SqTop {
            class,
            index,
            instantiation,
        } => {
            let a = ctx.analysis(instantiation.as_deref())?;
            let c: Poly = a.presentation().parse(class)?;
            let image = sq_class(a.ring(), a.table(), &c, *index)?;
            let top = a.ring().top_coordinate(&image)?;
            let text = fx
                .expected
                .as_str()
                .ok_or_else(|| malformed(fx, "expected a string"))?;
            let want = parse_param(a.presentation(), text)?.compose(a.substitutions());
            (json!(top.render(a.presentation().params())), top == want)
        }
        FixtureKind::Euler => {
            let a = ctx.analysis(None)?;
            let actual = json!(a.euler_characteristic());
            (actual.clone(), actual == fx.expected)
        }
        FixtureKind::Signature => {
            let a = ctx.analysis(None)?;
            let actual = json!(a.signature()?.1.signature);
            (actual.clone(), actual == fx.expected)
        }
        FixtureKind::Verdict { k, instantiation } => {
            let a = ctx.analysis(instantiation.as_deref())?;
            let v = a.verdict(*k)?;
            let actual = verdict_json(&a, &v);
            let pass = compare_verdict(&a, fx, &v, &actual)?;
            (actual, pass)
        }
    };
    Ok(FixtureOutcome {
        name: fx.name.clone(),
        pass,
        expected: fx.expected.clone(),
        actual,
        citation: fx.citation.clone(),
    })
}

fn fx(name: &str, entry: &str, kind: FixtureKind, expected: Value, citation: &str) -> Fixture {
    Fixture {
        name: name.into(),
        entry: entry.into(),
        kind,
        expected,
        citation: citation.into(),
    }
}

fn verdict(k: u32, instantiation: Option<&str>) -> FixtureKind {
    FixtureKind::Verdict {
        k,
        instantiation: instantiation.map(str::to_string),
    }
}

fn sq_top(class: &str, index: u32) -> FixtureKind {
    FixtureKind::SqTop {
        class: class.into(),
        index,
        instantiation: None,
    }
}

fn raw(generator: &str, index: u32) -> FixtureKind {
    FixtureKind::SquareRaw {
        generator: generator.into(),
        index,
    }
}

const EVI_BETTI: [u32; 65] = [
    1, 0, 1, 1, 1, 1, 2, 1, 2, 1, 2, 1, 3, 1, 3, 2, 4, 2, 4, 2, 5, 2, 5, 3, 6, 3, 6, 3, 6, 3, 5, 2,
    7, 2, 5, 3, 6, 3, 6, 3, 6, 3, 5, 2, 5, 2, 4, 2, 4, 2, 3, 1, 3, 1, 2, 1, 2, 1, 2, 1, 1, 1, 1, 0,
    1,
];

const EVI_TOP_MONOMIALS: [&str; 11] = [
    "y2^16*y12*y20",
    "y2^14*y12^3",
    "y2^14*y16*y20",
    "y2^13*y3^2*y12*y20",
    "y2^10*y12^2*y20",
    "y2^8*y12*y16*y20",
    "y2^2*y20^3",
    "y12^4*y16",
    "y12^2*y20^2",
    "y12*y16^2*y20",
    "y16^4",
];

/// Derived squares on the three large EVI generators, as unreduced
/// polynomials. `Sq^6 y16` carries a corrected second monomial: the
/// published form has a degree-21 term where expanding `Sq^2(y2^7) y3^2`
/// gives `y2^5 y3^4`.
const EVI_RAW_SQUARES: [(&str, u32, &str); 11] = [
    ("y12", 3, "y2^6*y3 + y3*y12"),
    ("y16", 3, "0"),
    ("y20", 3, "y2^10*y3 + y3*y20"),
    ("y12", 5, "a1*y2^4*y3^3"),
    ("y16", 5, "y2^6*y3^3"),
    ("y20", 5, "m1*y2^8*y3^3 + n1*y2^2*y3^3*y12"),
    ("y12", 6, "y2^9 + (1+a1)*y2^6*y3^2 + y2^3*y12 + y3^2*y12"),
    ("y16", 6, "y2^8*y3^2 + y2^5*y3^4"),
    (
        "y20",
        6,
        "y2^13 + (1+m1+n1)*y2^10*y3^2 + y2^7*y12 + y2^4*y3^2*y12 + n1*(y2^7*y3^4 + y2*y3^4*y12)",
    ),
    ("y12", 7, "y2^8*y3 + y2^2*y3*y12"),
    (
        "y20",
        7,
        "y2^12*y3 + y2^6*y3*y12 + n1*y2^6*y3^5 + n1*y3^5*y12",
    ),
];

fn evi_fixtures() -> Vec<Fixture> {
    let mut out = vec![
        fx(
            "EVI.betti",
            "EVI",
            FixtureKind::Betti,
            json!(EVI_BETTI.to_vec()),
            "published mod 2 Betti numbers of EVI, degrees 0 through 64",
        ),
        fx(
            "EVI.deg64.count",
            "EVI",
            FixtureKind::MonomialCount { degree: 64 },
            json!(123),
            "published count of homogeneous monomials in degree 64",
        ),
        fx(
            "EVI.deg64.nonzero",
            "EVI",
            FixtureKind::NonzeroMonomials { degree: 64 },
            json!(EVI_TOP_MONOMIALS),
            "published list of the 11 degree-64 monomials equal to the top generator",
        ),
        fx(
            "EVI.euler",
            "EVI",
            FixtureKind::Euler,
            json!(63),
            "derived: alternating sum of the published Betti numbers",
        ),
    ];
    for k in 1..=3 {
        out.push(fx(
            &format!("EVI.k{k}"),
            "EVI",
            verdict(k, None),
            json!({"status": "yes", "conditions": []}),
            "published result: EVI is 3-orientable",
        ));
    }
    out.push(fx(
        "EVI.k4",
        "EVI",
        verdict(4, None),
        json!({"status": "conditional", "conditions": ["1+b2+n2"]}),
        "published result: EVI is 4-orientable if b2 + n2 = 1",
    ));
    out.push(fx(
        "EVI.sq8.y2^12y12y20",
        "EVI",
        sq_top("y2^12*y12*y20", 8),
        json!("1+b2+n2"),
        "published evaluation of Sq^8 on y2^12 y12 y20 in the top degree",
    ));
    out.push(fx(
        "EVI.sq8.y2^9y3^2y12y20",
        "EVI",
        sq_top("y2^9*y3^2*y12*y20", 8),
        json!("0"),
        "published evaluation of Sq^8 on y2^9 y3^2 y12 y20 in the top degree",
    ));
    out.push(fx(
        "EVI.sq4.y20^3",
        "EVI",
        sq_top("y20^3", 4),
        json!("0"),
        "published cancellation of y12^2 y20^2 + y2^2 y20^3 in Sq^4 y20^3",
    ));
    for (g, i, v) in EVI_RAW_SQUARES {
        out.push(fx(
            &format!("EVI.sq{i}.{g}.raw"),
            "EVI",
            raw(g, i),
            json!(v),
            "published derivation of the lower squares on the generators",
        ));
    }
    out.push(fx(
        "EVI.sq7.y16",
        "EVI",
        FixtureKind::Square {
            generator: "y16".into(),
            index: 7,
        },
        json!("0"),
        "published derivation: Sq^7 y16 = 0",
    ));
    out
}

fn eiii_fixtures() -> Vec<Fixture> {
    const TABLE: &str = "published integral additive basis of EIII";
    let mut ranks = vec![0u32; 33];
    for (d, r) in [
        (0, 1),
        (2, 1),
        (4, 1),
        (6, 1),
        (8, 2),
        (10, 2),
        (12, 2),
        (14, 2),
        (16, 3),
        (18, 2),
        (20, 2),
        (22, 2),
        (24, 2),
        (26, 1),
        (28, 1),
        (30, 1),
        (32, 1),
    ] {
        ranks[d] = r;
    }
    vec![
        fx(
            "EIII.ranks",
            "EIII",
            FixtureKind::IntegralRanks,
            json!(ranks),
            TABLE,
        ),
        fx(
            "EIII.torsion",
            "EIII",
            FixtureKind::Torsion,
            json!([]),
            TABLE,
        ),
        fx(
            "EIII.deg26",
            "EIII",
            FixtureKind::IntegralCoordinates { degree: 26 },
            json!({"t^13": 78, "t^9*w": 45, "t^5*w^2": 26, "t*w^3": 15}),
            TABLE,
        ),
        fx(
            "EIII.deg32",
            "EIII",
            FixtureKind::IntegralCoordinates { degree: 32 },
            json!({"t^16": 78, "t^12*w": 45, "t^8*w^2": 26, "t^4*w^3": 15, "w^4": 9}),
            TABLE,
        ),
        fx(
            "EIII.signature",
            "EIII",
            FixtureKind::Signature,
            json!(3),
            "published signature of EIII",
        ),
        fx(
            "EIII.euler",
            "EIII",
            FixtureKind::Euler,
            json!(27),
            "derived: sum of the published free ranks",
        ),
        fx(
            "EIII.sq2.deg30",
            "EIII",
            sq_top("t^11*w", 2),
            json!("1+b"),
            "published: Sq^2 into the top degree from degree 30 is multiplication by 1 + b",
        ),
        fx(
            "EIII.sq4.deg28",
            "EIII",
            sq_top("t^10*w", 4),
            json!("1+d"),
            "published: Sq^4 into the top degree from degree 28 is multiplication by 1 + d",
        ),
        fx(
            "EIII.k2.ishitoya",
            "EIII",
            verdict(2, Some("ishitoya")),
            json!({"status": "yes", "conditions": []}),
            "published result: EIII is 2-orientable",
        ),
        fx(
            "EIII.k3.ishitoya",
            "EIII",
            verdict(3, Some("ishitoya")),
            json!({"status": "no", "witness": {"square": 4, "degree": 28}}),
            "published result: EIII is not 3-orientable",
        ),
    ]
}

fn eiii_mod2_fixtures() -> Vec<Fixture> {
    vec![
        fx(
            "EIII-mod2.k2",
            "EIII-mod2",
            verdict(2, None),
            json!({"status": "conditional", "conditions": ["1+b"]}),
            "published: Sq^2 into the top degree is multiplication by 1 + b",
        ),
        fx(
            "EIII-mod2.k3.ishitoya",
            "EIII-mod2",
            verdict(3, Some("ishitoya")),
            json!({"status": "no", "witness": {"square": 4, "degree": 28}}),
            "published result: EIII is not 3-orientable",
        ),
    ]
}

fn small_fixtures() -> Vec<Fixture> {
    let yes = json!({"status": "yes", "conditions": []});
    let no = json!({"status": "no"});
    let mut out = vec![
        fx(
            "CP2.betti",
            "CP2",
            FixtureKind::Betti,
            json!([1, 0, 1, 0, 1]),
            "derived: truncated polynomial ring on a degree-2 class",
        ),
        fx(
            "CP2.euler",
            "CP2",
            FixtureKind::Euler,
            json!(3),
            "derived: three cells",
        ),
        fx(
            "CP2.k1",
            "CP2",
            verdict(1, None),
            yes.clone(),
            "derived: Sq^1 vanishes",
        ),
        fx(
            "CP2.k2",
            "CP2",
            verdict(2, None),
            no.clone(),
            "derived: Sq^2 x = x^2 gives v2 = x",
        ),
        fx(
            "RP2.k1",
            "RP2",
            verdict(1, None),
            no.clone(),
            "derived: Sq^1 x = x^2 gives v1 = x",
        ),
        fx(
            "RP2.euler",
            "RP2",
            FixtureKind::Euler,
            json!(1),
            "derived: three cells",
        ),
        fx(
            "RP15.k4",
            "RP15",
            verdict(4, None),
            yes.clone(),
            "derived: (1+x)^16 = 1 kills every w_i",
        ),
        fx(
            "RP15.euler",
            "RP15",
            FixtureKind::Euler,
            json!(0),
            "derived: odd dimension",
        ),
        fx(
            "CP4.k2",
            "CP4",
            verdict(2, None),
            no.clone(),
            "derived: w2 = 5x = x",
        ),
        fx(
            "HP2.k2",
            "HP2",
            verdict(2, None),
            yes.clone(),
            "derived: only Sq^4 acts nontrivially",
        ),
        fx(
            "HP2.k3",
            "HP2",
            verdict(3, None),
            no.clone(),
            "derived: Sq^4 x = x^2 gives v4 = x",
        ),
        fx(
            "OP2.k3",
            "OP2",
            verdict(3, None),
            yes.clone(),
            "derived: only Sq^8 acts nontrivially",
        ),
        fx(
            "OP2.k4",
            "OP2",
            verdict(4, None),
            no.clone(),
            "derived: Sq^8 u = u^2 gives v8 = u",
        ),
        fx(
            "OP2^2.k3",
            "OP2^2",
            verdict(3, None),
            yes,
            "published: products of Cayley planes are 3-orientable with odd Euler characteristic",
        ),
        fx(
            "OP2^2.k4",
            "OP2^2",
            verdict(4, None),
            no,
            "derived: Sq^16(x x2) = x^2 x2^2",
        ),
        fx(
            "OP2^2.euler",
            "OP2^2",
            FixtureKind::Euler,
            json!(9),
            "derived: product of two 3-cell complexes",
        ),
    ];
    for name in ["CP2-int", "HP2-int"] {
        out.push(fx(
            &format!("{name}.signature"),
            name,
            FixtureKind::Signature,
            json!(1),
            "derived: the middle class squares to the generator",
        ));
    }
    out
}

/// Every golden fixture, grouped by entry in corpus order.
pub fn golden_suite() -> Vec<Fixture> {
    let mut all = evi_fixtures();
    all.extend(eiii_fixtures());
    all.extend(eiii_mod2_fixtures());
    all.extend(small_fixtures());
    let order: Vec<&str> = super::CORPUS_NAMES.to_vec();
    all.sort_by_key(|f| {
        order
            .iter()
            .position(|n| *n == f.entry)
            .unwrap_or(usize::MAX)
    });
    all
}

/// One file of fixtures for a single entry, as stored under
/// `corpus/golden/`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenFile {
    pub schema: u32,
    pub entry: String,
    pub fixtures: Vec<Fixture>,
}

impl GoldenFile {
    /// The builtin fixtures for `entry`, or `None` if it has none.
    pub fn for_entry(entry: &str) -> Option<GoldenFile> {
        let fixtures: Vec<Fixture> = golden_suite()
            .into_iter()
            .filter(|f| f.entry == entry)
            .collect();
        (!fixtures.is_empty()).then(|| GoldenFile {
            schema: 1,
            entry: entry.to_string(),
            fixtures,
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixtures serialize");
        s.push('\n');
        s
    }
}
