use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{binomial_odd, sq_class, SqError, SquareTable};
use crate::basis::GradedRing;
use crate::poly::{param_poly_cmp, ClassPoly, ParamPoly};

/// A check the table cannot evaluate, with the entry it is missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Undetermined {
    pub check: String,
    pub entry: String,
}

/// Parameter conditions found by evaluating identities that every genuine
/// Steenrod action satisfies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Consistency {
    /// Parameter polynomials that must vanish, sorted and deduplicated.
    pub constraints: Vec<ParamPoly>,
    pub undetermined: Vec<Undetermined>,
}

fn collect(results: Vec<Result<Vec<ParamPoly>, Undetermined>>) -> Consistency {
    let mut out = Consistency::default();
    for r in results {
        match r {
            Ok(coords) => out
                .constraints
                .extend(coords.into_iter().filter(|q| !q.is_zero())),
            Err(u) => out.undetermined.push(u),
        }
    }
    out.constraints.sort_by(param_poly_cmp);
    out.constraints.dedup();
    out
}

/// Conditions under which the squares respect the relations: `Sq^i r` must
/// reduce to zero for every relation `r` and every `i` up to the top degree.
/// Without them the value of a square on a class can depend on the chosen
/// representative.
pub fn consistency_constraints(
    ring: &GradedRing,
    table: &SquareTable,
) -> Result<Consistency, SqError> {
    let p = ring.presentation();
    let mut tasks = Vec::new();
    for (j, r) in p.relations_gf2().into_iter().enumerate() {
        let Some((m, _)) = r.terms().next() else {
            continue;
        };
        let d = m.degree();
        let r = r.map_coeffs(|c| {
            if c.0 {
                ParamPoly::one()
            } else {
                ParamPoly::zero()
            }
        });
        for i in 1..=d.min(ring.dim().saturating_sub(d)) {
            tasks.push((j, r.clone(), d, i));
        }
    }
    let results: Vec<Result<Vec<ParamPoly>, Undetermined>> = tasks
        .par_iter()
        .map(|(j, r, d, i)| match sq_class(ring, table, r, *i) {
            Ok(v) => Ok(Ok(ring.normal_form(d + i, &v)?)),
            Err(SqError::TableIncomplete { entry }) => Ok(Err(Undetermined {
                check: format!("Sq^{i} of relation {}", j + 1),
                entry,
            })),
            Err(e) => Err(e),
        })
        .collect::<Result<_, SqError>>()?;
    Ok(collect(results))
}

/// Conditions under which every Adem relation `Sq^a Sq^b = Σ_c C(b-c-1, a-2c)
/// Sq^{a+b-c} Sq^c` (`0 < a < 2b`) holds on every generator, up to the top
/// degree.
pub fn adem_constraints(ring: &GradedRing, table: &SquareTable) -> Result<Consistency, SqError> {
    let p = ring.presentation();
    let gens = p.gens();
    let n = ring.dim();
    let mut tasks = Vec::new();
    for g in 0..gens.len() {
        let dg = gens.degree(g);
        for b in 1..=n.saturating_sub(dg) {
            for a in 1..(2 * b).min(n + 1 - dg - b) {
                tasks.push((g, a, b));
            }
        }
    }
    let results: Vec<Result<Vec<ParamPoly>, Undetermined>> = tasks
        .par_iter()
        .map(|&(g, a, b)| {
            let x = ClassPoly::generator(gens, g);
            let eval = || -> Result<ClassPoly<ParamPoly>, SqError> {
                let mut diff = sq_class(ring, table, &sq_class(ring, table, &x, b)?, a)?;
                for c in 0..=a / 2 {
                    if binomial_odd(u64::from(b - c - 1), u64::from(a - 2 * c)) {
                        let inner = sq_class(ring, table, &x, c)?;
                        diff.add_assign(&sq_class(ring, table, &inner, a + b - c)?);
                    }
                }
                Ok(diff)
            };
            match eval() {
                Ok(d) => Ok(Ok(ring.normal_form(gens.degree(g) + a + b, &d)?)),
                Err(SqError::TableIncomplete { entry }) => Ok(Err(Undetermined {
                    check: format!("Sq^{a} Sq^{b} on {}", gens.name(g)),
                    entry,
                })),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_, SqError>>()?;
    Ok(collect(results))
}

/// Parameters solved for in terms of the others, plus whatever constraints
/// are not of the form `x + f(others)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSolution {
    pub substitutions: BTreeMap<usize, ParamPoly>,
    pub residual: Vec<ParamPoly>,
}

impl ParamSolution {
    /// Indicator of the admissible parameter values: `Π (1 + c)` over the
    /// residual constraints.
    pub fn admissible(&self) -> ParamPoly {
        self.residual
            .iter()
            .fold(ParamPoly::one(), |acc, c| acc.mul(&ParamPoly::one().add(c)))
    }
}

/// The parameter `x` such that `c = x + f` with `x` absent from `f`,
/// choosing the lowest index.
fn solvable_for(c: &ParamPoly) -> Option<usize> {
    let masks: Vec<u64> = c.masks().collect();
    masks
        .iter()
        .filter(|m| m.count_ones() == 1)
        .map(|m| m.trailing_zeros() as usize)
        .filter(|&x| masks.iter().filter(|&&m| m & (1 << x) != 0).count() == 1)
        .min()
}

/// Eliminates parameters one linear constraint at a time.
pub fn solve_constraints(constraints: &[ParamPoly]) -> Result<ParamSolution, SqError> {
    let mut subs: BTreeMap<usize, ParamPoly> = BTreeMap::new();
    let mut pending: Vec<ParamPoly> = constraints.to_vec();
    loop {
        let mut progress = false;
        let mut rest = Vec::new();
        for c in pending {
            let c = c.compose(&subs);
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                return Err(SqError::Inconsistent);
            }
            match solvable_for(&c) {
                Some(x) if !progress => {
                    let f = c.add(&ParamPoly::param(x));
                    let step = BTreeMap::from([(x, f.clone())]);
                    for v in subs.values_mut() {
                        *v = v.compose(&step);
                    }
                    subs.insert(x, f);
                    progress = true;
                }
                _ => rest.push(c),
            }
        }
        pending = rest;
        if !progress {
            break;
        }
    }
    let mut residual: Vec<ParamPoly> = pending
        .into_iter()
        .map(|c| c.compose(&subs))
        .filter(|c| !c.is_zero())
        .collect();
    residual.sort_by(param_poly_cmp);
    residual.dedup();
    Ok(ParamSolution {
        substitutions: subs,
        residual,
    })
}
