use rayon::prelude::*;
use serde::Serialize;

use super::{stiefel_whitney, OrientError};
use crate::basis::GradedRing;
use crate::poly::{param_poly_cmp, ClassPoly, ParamPoly};
use crate::steenrod::{sq_class, SquareTable};

type Poly = ClassPoly<ParamPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Conditional,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Conditional => "conditional",
        }
    }
}

/// A class whose image is nonzero, certifying a failed level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Index of the square (v-side) or of the class `w_j` (w-side).
    pub square: u32,
    pub degree: u32,
    pub class: Poly,
    pub value: ParamPoly,
}

/// k-orientability of a presented ring.
///
/// `conditions` lists parameter polynomials that must all vanish; it is
/// empty exactly when the status is `Yes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub k: u32,
    pub status: Status,
    pub conditions: Vec<ParamPoly>,
    pub witness: Option<Witness>,
}

impl Verdict {
    /// Indicator of orientability as a function of the parameters:
    /// `Π (1 + q)` over the conditions.
    pub fn indicator(&self) -> ParamPoly {
        indicator(&self.conditions)
    }
}

fn indicator(conditions: &[ParamPoly]) -> ParamPoly {
    conditions
        .iter()
        .fold(ParamPoly::one(), |acc, q| acc.mul(&ParamPoly::one().add(q)))
}

/// Turns nonzero evaluations into a verdict. Only parameter values where
/// `admissible` is 1 count; conditions that already vanish there are dropped.
fn conclude(k: u32, candidates: Vec<Witness>, admissible: &ParamPoly) -> Verdict {
    let candidates: Vec<Witness> = candidates
        .into_iter()
        .filter(|w| !w.value.mul(admissible).is_zero())
        .collect();
    let mut conditions: Vec<ParamPoly> = candidates.iter().map(|w| w.value.clone()).collect();
    conditions.sort_by(param_poly_cmp);
    conditions.dedup();
    let ind = indicator(&conditions).mul(admissible);
    let status = if conditions.is_empty() {
        Status::Yes
    } else if ind.is_zero() {
        Status::No
    } else {
        Status::Conditional
    };
    let witness = match status {
        Status::No => candidates
            .iter()
            .find(|w| w.value.is_one())
            .or_else(|| candidates.first())
            .cloned(),
        _ => None,
    };
    Verdict {
        k,
        status,
        conditions,
        witness,
    }
}

/// Checks `Sq^{2^i}(z) = 0` in the top degree for every basis class `z` of
/// degree `n - 2^i`, `i < k`, over all parameter values where `admissible`
/// is 1.
pub fn orientability_verdict(
    ring: &GradedRing,
    table: &SquareTable,
    k: u32,
    admissible: &ParamPoly,
) -> Result<Verdict, OrientError> {
    assert!(k >= 1, "levels start at 1");
    let n = ring.dim();
    let mut tasks = Vec::new();
    for i in 0..k {
        let s = 1u32.checked_shl(i).filter(|&s| s <= n);
        let Some(s) = s else { break };
        let d = n - s;
        for z in 0..ring.degree_basis(d)?.dim() {
            tasks.push((s, d, z));
        }
    }
    let values: Vec<Option<Witness>> = tasks
        .par_iter()
        .map(|&(s, d, z)| {
            let b = ring.degree_basis(d)?;
            let class = Poly::monomial(b.basis_monomial(z).clone(), ParamPoly::one());
            let image = sq_class(ring, table, &class, s)?;
            let value = ring.top_coordinate(&image)?;
            Ok((!value.is_zero()).then_some(Witness {
                square: s,
                degree: d,
                class,
                value,
            }))
        })
        .collect::<Result<_, OrientError>>()?;
    Ok(conclude(
        k,
        values.into_iter().flatten().collect(),
        admissible,
    ))
}

/// The same question asked of Stiefel-Whitney classes: `w_j = 0` for
/// `0 < j < 2^k`, with every nonzero coordinate as a condition.
pub fn orientability_verdict_w(
    ring: &GradedRing,
    table: &SquareTable,
    k: u32,
    admissible: &ParamPoly,
) -> Result<Verdict, OrientError> {
    let top = ((1u64 << k) - 1).min(u64::from(ring.dim())) as u32;
    let w = stiefel_whitney(ring, table, top)?;
    let mut candidates = Vec::new();
    for (j, wj) in w.iter().enumerate().skip(1) {
        let j = j as u32;
        let coords = ring.normal_form(j, wj)?;
        for value in coords.into_iter().filter(|q| !q.is_zero()) {
            candidates.push(Witness {
                square: j,
                degree: j,
                class: wj.clone(),
                value,
            });
        }
    }
    Ok(conclude(k, candidates, admissible))
}

/// Smallest level that already tests every Wu class up to half the
/// dimension.
pub fn max_level(dim: u32) -> u32 {
    let mut k = 1;
    while (1u64 << (k - 1)) * 2 < u64::from(dim) {
        k += 1;
    }
    k
}

/// Verdicts for `k = 1, 2, …` up to [`max_level`], stopping after the first
/// level that is not an unconditional yes or that the table cannot decide.
pub fn verdict_ladder(
    ring: &GradedRing,
    table: &SquareTable,
    admissible: &ParamPoly,
) -> (Vec<Verdict>, Option<(u32, OrientError)>) {
    let mut out = Vec::new();
    for k in 1..=max_level(ring.dim()) {
        match orientability_verdict(ring, table, k, admissible) {
            Ok(v) => {
                let stop = v.status != Status::Yes;
                out.push(v);
                if stop {
                    break;
                }
            }
            Err(e) => return (out, Some((k, e))),
        }
    }
    (out, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityEntry {
    pub k: u32,
    pub euler_even: bool,
    pub dim_multiple: bool,
    pub consistent: bool,
}

/// Consistency of the verdicts with the even-Euler-characteristic theorem:
/// a k-orientable closed manifold whose dimension is not a multiple of
/// `2^(k+1)` has even Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub dim: u32,
    pub euler_characteristic: i64,
    pub max_unconditional_k: u32,
    pub entries: Vec<ParityEntry>,
    pub consistent: bool,
}

pub fn parity_theorem_check(verdicts: &[Verdict], dim: u32, chi: i64) -> ParityReport {
    let max_k = verdicts
        .iter()
        .take_while(|v| v.status == Status::Yes)
        .map(|v| v.k)
        .max()
        .unwrap_or(0);
    let entries: Vec<ParityEntry> = (0..=max_k)
        .map(|k| {
            let euler_even = chi % 2 == 0;
            let dim_multiple = u64::from(dim) % (1u64 << (k + 1)) == 0;
            ParityEntry {
                k,
                euler_even,
                dim_multiple,
                consistent: euler_even || dim_multiple,
            }
        })
        .collect();
    let consistent = entries.iter().all(|e| e.consistent);
    ParityReport {
        dim,
        euler_characteristic: chi,
        max_unconditional_k: max_k,
        entries,
        consistent,
    }
}
