use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::OrientError;
use crate::basis::{IntegralRing, Mode};
use crate::poly::ClassPoly;

/// Symmetric cup-product form on the free part of the middle degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub degree: u32,
    pub matrix: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub signature: i64,
}

/// Form of the given middle-degree classes, entries read off in the top
/// degree.
pub fn intersection_form(
    ring: &IntegralRing,
    classes: &[ClassPoly<BigInt>],
) -> Result<IntersectionForm, OrientError> {
    let n = ring.dim();
    if !n.is_multiple_of(4) {
        return Err(OrientError::NotApplicable(format!(
            "dimension {n} is not a multiple of 4"
        )));
    }
    let matrix = classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| Ok(ring.top_coordinate(&(a * b))?))
                .collect::<Result<Vec<_>, OrientError>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(IntersectionForm {
        degree: n / 2,
        matrix,
    })
}

/// Signature of the middle-degree form of an integral ring.
pub fn signature(ring: &IntegralRing) -> Result<(IntersectionForm, Signature), OrientError> {
    if ring.presentation().mode() != Mode::Int {
        return Err(OrientError::NotApplicable(
            "signature needs an integral presentation".into(),
        ));
    }
    let n = ring.dim();
    if !n.is_multiple_of(4) {
        return Err(OrientError::NotApplicable(format!(
            "dimension {n} is not a multiple of 4"
        )));
    }
    let middle = ring.degree_basis(n / 2)?;
    if !middle.torsion().is_empty() {
        return Err(OrientError::OddMiddleTorsion {
            degree: n / 2,
            factors: middle.torsion().iter().map(|t| t.to_string()).collect(),
        });
    }
    let form = intersection_form(ring, middle.free_basis())?;
    let sig = form_signature(&form.matrix)?;
    Ok((form, sig))
}

/// Inertia of a symmetric integer matrix by exact congruence
/// diagonalization over the rationals.
///
/// A nonzero diagonal entry is eliminated as a 1×1 pivot. When the remaining
/// diagonal is zero but some entry `a` is not, the block `[[0, a], [a, 0]]`
/// is eliminated together; it contributes one positive and one negative
/// direction.
pub fn form_signature(m: &[Vec<BigInt>]) -> Result<Signature, OrientError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(OrientError::NotSymmetric);
    }
    if (0..n).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
        return Err(OrientError::NotSymmetric);
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !live.is_empty() {
        if let Some(&p) = live.iter().find(|&&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            live.retain(|&i| i != p);
            for &i in &live {
                let f = &a[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &live {
                    let t = &f * &a[p][j];
                    a[i][j] -= t;
                }
            }
            continue;
        }
        let pair = live
            .iter()
            .flat_map(|&i| live.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i < j && !a[i][j].is_zero());
        let Some((p, q)) = pair else {
            break;
        };
        pos += 1;
        neg += 1;
        // Inverse of [[0, c], [c, 0]] is [[0, 1/c], [1/c, 0]].
        let c = a[p][q].clone();
        live.retain(|&i| i != p && i != q);
        let rows: Vec<(usize, BigRational, BigRational)> = live
            .iter()
            .map(|&i| (i, a[i][p].clone(), a[i][q].clone()))
            .collect();
        for (i, ip, iq) in &rows {
            for (j, jp, jq) in &rows {
                let t = (ip * jq + iq * jp) / &c;
                a[*i][*j] -= t;
            }
        }
    }
    Ok(Signature {
        positive: pos,
        negative: neg,
        signature: pos as i64 - neg as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_forms() {
        let s = form_signature(&mat(&[&[78, 45, 26], &[45, 26, 15], &[26, 15, 9]])).unwrap();
        assert_eq!((s.positive, s.negative, s.signature), (3, 0, 3));
        assert_eq!(
            form_signature(&mat(&[&[1, 0], &[0, -1]]))
                .unwrap()
                .signature,
            0
        );
        let h = form_signature(&mat(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!((h.positive, h.negative), (1, 1));
        let e = form_signature(&mat(&[&[0, 2, 1], &[2, 0, 0], &[1, 0, 0]])).unwrap();
        assert_eq!((e.positive, e.negative), (1, 1));
        assert_eq!(form_signature(&mat(&[&[1]])).unwrap().signature, 1);
        assert!(form_signature(&mat(&[&[1, 2], &[3, 1]])).is_err());
    }
}
