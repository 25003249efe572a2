//! Payload builders, one per subcommand. Each returns the document to print
//! and, when the computation was only partly possible, the error that sets
//! the exit status after printing.

use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Map, Value};
use wusq_core::basis::GradedRing;
use wusq_core::corpus::{evaluate_fixture, FixtureContext, GoldenFile};
use wusq_core::orient::{self, OrientError, Verdict};
use wusq_core::steenrod::{sq_class, Consistency};
use wusq_core::{Analysis, BigInt, ClassPoly, Gf2, ParamPoly};

use crate::error::CliError;
use crate::input::Input;

type Outcome = Result<(Value, Option<CliError>), CliError>;
type Poly = ClassPoly<ParamPoly>;

fn done(m: Map<String, Value>) -> Outcome {
    Ok((Value::Object(m), None))
}

fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn param(a: &Analysis, q: &ParamPoly) -> String {
    q.render(a.presentation().params())
}

/// A class given by its coordinates in the degree basis.
fn in_basis(ring: &GradedRing, d: u32, bits: impl Iterator<Item = usize>) -> String {
    let b = ring.degree_basis(d).expect("degree in range");
    let p = ring.presentation();
    let mut c: ClassPoly<Gf2> = ClassPoly::zero(p.gens().len());
    for k in bits {
        c.add_term(b.basis_monomial(k).clone(), Gf2(true));
    }
    p.render(&c)
}

fn degree_json(ring: &GradedRing, d: u32, coords: bool) -> Result<Value, CliError> {
    let b = ring.degree_basis(d)?;
    let gens = ring.presentation().gens();
    let nonzero = b
        .monomials()
        .iter()
        .filter(|m| b.coords(m).is_some_and(|c| !c.is_zero()))
        .count();
    let mut out = json!({
        "degree": d,
        "betti": b.dim(),
        "monomials": b.monomials().len(),
        "nonzero_monomials": nonzero,
        "basis": b.basis().iter().map(|m| m.render(gens)).collect::<Vec<_>>(),
    });
    if coords {
        let mut nf = Map::new();
        for m in b.monomials() {
            let c = b.coords(m).expect("monomial of this degree");
            nf.insert(m.render(gens), json!(in_basis(ring, d, c.iter_ones())));
        }
        out["normal_forms"] = Value::Object(nf);
    }
    Ok(out)
}

pub fn basis(input: &Input, degree: Option<u32>, coords: bool) -> Outcome {
    let ring = input.ring()?;
    let mut m = input.header("basis");
    match degree {
        Some(d) => {
            m.insert("mod2".into(), degree_json(&ring, d, coords)?);
            if let Some(int) = input.integral()? {
                let b = int.degree_basis(d)?;
                let p = input.presentation();
                let mut coordinates = Map::new();
                for mono in b.monomials() {
                    let c = b.coords(mono).expect("monomial of this degree");
                    coordinates.insert(
                        mono.render(p.gens()),
                        json!(c.iter().map(big).collect::<Vec<_>>()),
                    );
                }
                m.insert(
                    "integral".into(),
                    json!({
                        "rank": b.rank(),
                        "torsion": b.torsion().iter().map(big).collect::<Vec<_>>(),
                        "free_basis": b.free_basis().iter().map(|c| p.render(c)).collect::<Vec<_>>(),
                        "coordinates": coordinates,
                    }),
                );
            }
        }
        None => {
            m.insert("betti".into(), json!(ring.betti_profile()));
            m.insert(
                "euler_characteristic".into(),
                json!(ring.euler_characteristic()),
            );
            if let Some(int) = input.integral()? {
                m.insert("ranks".into(), json!(int.ranks()));
                m.insert("torsion".into(), torsion_json(int));
            }
        }
    }
    done(m)
}

fn torsion_json(int: &wusq_core::IntegralRing) -> Value {
    json!(int
        .torsion()
        .iter()
        .map(|(d, f)| json!({"degree": d, "factors": f.iter().map(big).collect::<Vec<_>>()}))
        .collect::<Vec<_>>())
}

pub fn monomials(input: &Input, d: u32) -> Outcome {
    let ring = input.ring()?;
    let b = ring.degree_basis(d)?;
    let gens = ring.presentation().gens();
    let list: Vec<Value> = b
        .monomials()
        .iter()
        .map(|mono| {
            let c = b.coords(mono).expect("monomial of this degree");
            json!({"monomial": mono.render(gens), "normal_form": in_basis(&ring, d, c.iter_ones())})
        })
        .collect();
    let mut m = input.header("monomials");
    m.insert("degree".into(), json!(d));
    m.insert("count".into(), json!(list.len()));
    m.insert("monomials".into(), Value::Array(list));
    done(m)
}

fn substitutions_json(a: &Analysis) -> Value {
    let params = a.presentation().params();
    let mut s = Map::new();
    for (&i, f) in a.substitutions() {
        s.insert(params.name(i).to_string(), json!(f.render(params)));
    }
    Value::Object(s)
}

pub fn sq(input: &Input, class: &str, n: u32) -> Outcome {
    let a = input.analysis()?;
    let p = a.presentation();
    let c: Poly = p
        .parse(class)
        .map_err(|e| CliError::usage(format!("--class: {e}")))?;
    let d = c
        .homogeneous_degree()
        .map_err(|e| CliError::usage(format!("--class: {e}")))?;
    let mut m = input.header("sq");
    m.insert("class".into(), json!(p.render(&c)));
    m.insert("n".into(), json!(n));
    m.insert("substitutions".into(), substitutions_json(a));
    let Some(d) = d else {
        m.insert("result".into(), json!("0"));
        return done(m);
    };
    m.insert("degree".into(), json!(d));
    m.insert("target_degree".into(), json!(d + n));
    if d > a.dim() {
        return Err(CliError::usage(format!(
            "class degree {d} exceeds the dimension {}",
            a.dim()
        )));
    }
    if d + n > a.dim() {
        m.insert("result".into(), json!("0"));
        m.insert(
            "note".into(),
            json!("target degree exceeds the formal dimension"),
        );
        return done(m);
    }
    let image = sq_class(a.ring(), a.table(), &c, n)?;
    let coords = a.ring().normal_form(d + n, &image)?;
    let b = a.ring().degree_basis(d + n)?;
    m.insert("result".into(), json!(p.render(&image)));
    m.insert(
        "coordinates".into(),
        Value::Array(
            coords
                .iter()
                .enumerate()
                .map(|(k, q)| json!({"basis": b.basis_monomial(k).render(p.gens()), "coefficient": param(a, q)}))
                .collect(),
        ),
    );
    done(m)
}

fn wu_json(a: &Analysis, i: u32) -> Result<Value, OrientError> {
    let w = a.wu(i)?;
    let mut v = json!({"index": i, "class": a.presentation().render(&w.class)});
    if let Some(note) = w.note {
        v["note"] = json!(note);
    }
    Ok(v)
}

fn wu_list(a: &Analysis) -> Value {
    let list: Vec<Value> = (1..=a.dim() / 2)
        .map(|i| match wu_json(a, i) {
            Ok(v) => v,
            Err(e) => json!({"index": i, "unknown": e.to_string()}),
        })
        .collect();
    json!({"classes": list, "above_half": "v_i = 0 for i > n/2"})
}

pub fn wu(input: &Input, index: Option<u32>) -> Outcome {
    let a = input.analysis()?;
    let mut m = input.header("wu");
    match index {
        Some(i) => {
            m.insert("wu".into(), wu_json(a, i)?);
        }
        None => {
            m.insert("wu".into(), wu_list(a));
        }
    }
    done(m)
}

fn sw_json(a: &Analysis) -> Value {
    let (classes, err) = a.stiefel_whitney();
    let p = a.presentation();
    let mut v = json!({
        "classes": classes
            .iter()
            .enumerate()
            .map(|(j, w)| json!({"index": j, "class": p.render(w)}))
            .collect::<Vec<_>>(),
    });
    if let Some(e) = err {
        v["unknown_from"] = json!(classes.len());
        v["reason"] = json!(e.to_string());
    }
    v
}

pub fn sw(input: &Input) -> Outcome {
    let a = input.analysis()?;
    let mut m = input.header("sw");
    m.insert("stiefel_whitney".into(), sw_json(a));
    done(m)
}

fn verdict_json(a: &Analysis, v: &Verdict) -> Value {
    let p = a.presentation();
    let mut out = json!({
        "k": v.k,
        "status": v.status.as_str(),
        "conditions": v.conditions.iter().map(|q| param(a, q)).collect::<Vec<_>>(),
    });
    if let Some(w) = &v.witness {
        out["witness"] = json!({
            "square": w.square,
            "degree": w.degree,
            "class": p.render(&w.class),
            "value": param(a, &w.value),
        });
    }
    out
}

fn ladder_json(a: &Analysis) -> Value {
    let (verdicts, stop) = a.ladder();
    let mut out = json!({
        "verdicts": verdicts.iter().map(|v| verdict_json(a, v)).collect::<Vec<_>>(),
    });
    if let Some((k, e)) = stop {
        out["undecided"] = json!({"k": k, "reason": e.to_string()});
    }
    out
}

fn scope_json(a: &Analysis) -> Value {
    json!({
        "substitutions": substitutions_json(a),
        "admissible": param(a, &a.admissible()),
    })
}

pub fn orient(input: &Input, k: Option<u32>) -> Outcome {
    let a = input.analysis()?;
    let mut m = input.header("orient");
    m.insert("parameters".into(), scope_json(a));
    match k {
        Some(k) => {
            m.insert("verdict".into(), verdict_json(a, &a.verdict(k)?));
        }
        None => {
            m.insert("ladder".into(), ladder_json(a));
        }
    }
    done(m)
}

pub fn euler(input: &Input) -> Outcome {
    let mut m = input.header("euler");
    match input.integral()? {
        Some(int) => {
            m.insert("ranks".into(), json!(int.ranks()));
            m.insert(
                "euler_characteristic".into(),
                json!(int.euler_characteristic()),
            );
        }
        None => {
            let ring = input.ring()?;
            m.insert("betti".into(), json!(ring.betti_profile()));
            m.insert(
                "euler_characteristic".into(),
                json!(ring.euler_characteristic()),
            );
        }
    }
    done(m)
}

fn signature_json(int: &wusq_core::IntegralRing) -> Result<Value, OrientError> {
    let (form, sig) = orient::signature(int)?;
    Ok(json!({
        "degree": form.degree,
        "form": form.matrix.iter().map(|r| r.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "positive": sig.positive,
        "negative": sig.negative,
        "signature": sig.signature,
    }))
}

pub fn signature(input: &Input) -> Outcome {
    let int = input
        .integral()?
        .ok_or_else(|| CliError::usage("signature needs an integral (`int` mode) manifest"))?;
    let mut m = input.header("signature");
    m.insert("signature".into(), signature_json(int)?);
    done(m)
}

fn consistency_json(a: &Analysis, c: &Consistency) -> Value {
    let entries: BTreeSet<&str> = c.undetermined.iter().map(|u| u.entry.as_str()).collect();
    json!({
        "constraints": c.constraints.iter().map(|q| param(a, q)).collect::<Vec<_>>(),
        "undetermined_checks": c.undetermined.len(),
        "missing_entries": entries.into_iter().collect::<Vec<_>>(),
    })
}

fn checks_json(a: &Analysis) -> Value {
    let mut out = json!({
        "relations": consistency_json(a, a.relation_check()),
        "parameters": scope_json(a),
    });
    out["adem"] = match a.adem_check() {
        Ok(c) => {
            let mut v = consistency_json(a, c);
            v["imposed"] = json!(a.impose_adem());
            v
        }
        Err(e) => json!({"error": e.to_string()}),
    };
    out
}

pub fn check(input: &Input) -> Outcome {
    let a = input.analysis()?;
    let (verdicts, _) = a.ladder();
    let parity = a.parity(&verdicts);
    let mut m = input.header("check");
    m.insert("parity".into(), json!(parity));
    m.insert("consistency".into(), checks_json(a));
    let deferred = (!parity.consistent)
        .then(|| CliError::limitation("verdicts contradict the even Euler characteristic theorem"));
    Ok((Value::Object(m), deferred))
}

fn table_json(a: &Analysis) -> Value {
    let t = a.table();
    let p = a.presentation();
    let entries: Vec<Value> = t
        .entries()
        .filter(|((_, i), _)| *i > 0)
        .map(|((g, i), e)| {
            json!({
                "square": t.entry_name(g, i),
                "provenance": e.provenance.as_str(),
                "value": p.render(&e.value),
            })
        })
        .collect();
    let holes: Vec<Value> = t
        .holes()
        .map(|((g, i), root)| json!({"square": t.entry_name(g, i), "missing": root}))
        .collect();
    json!({"entries": entries, "unknown": holes})
}

fn golden_json(input: &Input, dir: &Path) -> Result<(Value, bool), CliError> {
    let name = input.presentation().name();
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let ctx = FixtureContext::new(
        input.presentation().clone(),
        input.loaded.instantiations.clone(),
    );
    let mut outcomes = Vec::new();
    let mut ok = true;
    for f in files {
        let text = std::fs::read_to_string(&f)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", f.display())))?;
        let g: GoldenFile = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: {e}", f.display())))?;
        if g.entry != name {
            continue;
        }
        for fx in &g.fixtures {
            match evaluate_fixture(fx, &ctx) {
                Ok(o) => {
                    ok &= o.pass;
                    outcomes.push(json!({
                        "name": o.name,
                        "pass": o.pass,
                        "expected": o.expected,
                        "actual": o.actual,
                        "citation": o.citation,
                    }));
                }
                Err(e) => {
                    ok = false;
                    outcomes.push(json!({"name": fx.name, "pass": false, "error": e.to_string(), "citation": fx.citation}));
                }
            }
        }
    }
    let passed = outcomes.iter().filter(|o| o["pass"] == json!(true)).count();
    Ok((
        json!({"fixtures": outcomes.len(), "passed": passed, "results": outcomes}),
        ok,
    ))
}

pub fn report(input: &Input, golden: Option<&Path>) -> Outcome {
    let a = input.analysis()?;
    let mut m = input.header("report");
    m.insert("betti".into(), json!(a.ring().betti_profile()));
    if let Some(int) = input.integral()? {
        m.insert("ranks".into(), json!(int.ranks()));
        m.insert("torsion".into(), torsion_json(int));
    }
    m.insert(
        "euler_characteristic".into(),
        json!(a.euler_characteristic()),
    );
    m.insert(
        "signature".into(),
        match input.integral()? {
            Some(int) => signature_json(int).unwrap_or_else(|e| json!({"error": e.to_string()})),
            None => Value::Null,
        },
    );
    m.insert("steenrod_table".into(), table_json(a));
    m.insert("consistency".into(), checks_json(a));
    m.insert("wu".into(), wu_list(a));
    m.insert("stiefel_whitney".into(), sw_json(a));
    let ladder = ladder_json(a);
    let (verdicts, _) = a.ladder();
    m.insert("parity".into(), json!(a.parity(&verdicts)));
    let mut deferred = None;
    if let Some(dir) = golden {
        let (g, ok) = golden_json(input, dir)?;
        m.insert("golden".into(), g);
        if !ok {
            deferred = Some(CliError::golden("golden comparison failed"));
        }
    }
    m.insert("verdicts".into(), ladder);
    Ok((Value::Object(m), deferred))
}
