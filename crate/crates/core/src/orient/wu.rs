use rayon::prelude::*;

use super::OrientError;
use crate::basis::GradedRing;
use crate::poly::{ClassPoly, ParamPoly};
use crate::steenrod::{sq_class, SquareTable};

type Poly = ClassPoly<ParamPoly>;

/// The Wu class `v_i`, characterized by `v_i · x = Sq^i x` for every `x` of
/// degree `n - i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuClass {
    pub index: u32,
    pub class: Poly,
    /// Coordinates over the degree-`index` basis.
    pub coords: Vec<ParamPoly>,
    /// Set when the class is zero for degree reasons rather than solved.
    pub note: Option<&'static str>,
}

fn basis_class(ring: &GradedRing, d: u32, k: usize) -> Poly {
    let b = ring.degree_basis(d).expect("degree within range");
    Poly::monomial(b.basis_monomial(k).clone(), ParamPoly::one())
}

/// Solves for `v_i` through the Poincaré pairing.
pub fn wu_class(ring: &GradedRing, table: &SquareTable, i: u32) -> Result<WuClass, OrientError> {
    let n = ring.dim();
    let nvars = ring.presentation().gens().len();
    if 2 * i > n {
        let dim = ring.degree_basis_unchecked(i).map_or(0, |b| b.dim());
        return Ok(WuClass {
            index: i,
            class: Poly::zero(nvars),
            coords: vec![ParamPoly::zero(); dim],
            note: Some("zero above half the dimension: Sq^i vanishes on degree n-i < i"),
        });
    }
    let pairing = ring.pairing(i)?;
    let comp = n - i;
    let rhs: Vec<ParamPoly> = (0..ring.degree_basis(comp)?.dim())
        .into_par_iter()
        .map(|s| {
            let x = basis_class(ring, comp, s);
            let y = sq_class(ring, table, &x, i)?;
            Ok(ring.top_coordinate(&y)?)
        })
        .collect::<Result<_, OrientError>>()?;
    // pairingᵀ · c = rhs
    let inv = pairing
        .matrix
        .transpose()
        .inverse()
        .expect("pairing validated invertible");
    let coords: Vec<ParamPoly> = (0..inv.nrows())
        .map(|r| {
            let mut acc = ParamPoly::zero();
            for (s, q) in rhs.iter().enumerate() {
                if inv.get(r, s) {
                    acc.add_assign(q);
                }
            }
            acc
        })
        .collect();
    Ok(WuClass {
        index: i,
        class: ring.class_from_coords(i, &coords),
        coords,
        note: None,
    })
}

/// Re-checks `v_i · x = Sq^i x` on every basis element `x` of degree `n - i`.
pub fn verify_wu(
    ring: &GradedRing,
    table: &SquareTable,
    wu: &WuClass,
) -> Result<bool, OrientError> {
    let n = ring.dim();
    let i = wu.index;
    if i > n {
        return Ok(wu.class.is_zero());
    }
    let comp = n - i;
    for s in 0..ring.degree_basis(comp)?.dim() {
        let x = basis_class(ring, comp, s);
        let lhs = ring.top_coordinate(&ring.reduce(&(&wu.class * &x))?)?;
        let rhs = ring.top_coordinate(&sq_class(ring, table, &x, i)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sw_step(
    ring: &GradedRing,
    table: &SquareTable,
    wu: &[WuClass],
    j: u32,
) -> Result<Poly, OrientError> {
    let nvars = ring.presentation().gens().len();
    let mut w = Poly::zero(nvars);
    for i in 0..=j {
        let v = &wu[(j - i) as usize];
        if v.class.is_zero() {
            continue;
        }
        w.add_assign(&sq_class(ring, table, &v.class, i)?);
    }
    Ok(w)
}

/// `w_0, …, w_up_to` from the Wu formula `w = Sq(v)`.
pub fn stiefel_whitney(
    ring: &GradedRing,
    table: &SquareTable,
    up_to: u32,
) -> Result<Vec<Poly>, OrientError> {
    let wu: Vec<WuClass> = (0..=up_to)
        .map(|i| wu_class(ring, table, i))
        .collect::<Result<_, _>>()?;
    (0..=up_to).map(|j| sw_step(ring, table, &wu, j)).collect()
}

/// As many Stiefel-Whitney classes as the table determines, in order, and
/// the error that stopped the computation (if any).
pub fn stiefel_whitney_partial(
    ring: &GradedRing,
    table: &SquareTable,
) -> (Vec<Poly>, Option<OrientError>) {
    let mut wu = Vec::new();
    let mut out = Vec::new();
    for j in 0..=ring.dim() {
        match wu_class(ring, table, j) {
            Ok(v) => wu.push(v),
            Err(e) => return (out, Some(e)),
        }
        match sw_step(ring, table, &wu, j) {
            Ok(w) => out.push(w),
            Err(e) => return (out, Some(e)),
        }
    }
    (out, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    fn setup(name: &str) -> (GradedRing, SquareTable) {
        let e = builtin(name).unwrap();
        let ring = GradedRing::new(&e.presentation).unwrap();
        let t = SquareTable::complete(&ring).unwrap();
        (ring, t)
    }

    #[test]
    fn projective_plane_wu_classes() {
        for (name, i) in [("RP2", 1), ("CP2", 2), ("HP2", 4), ("OP2", 8)] {
            let (ring, t) = setup(name);
            let v = wu_class(&ring, &t, i).unwrap();
            assert_eq!(v.class, ring.presentation().parse("x").unwrap(), "{name}");
            assert!(verify_wu(&ring, &t, &v).unwrap());
            let above = wu_class(&ring, &t, i + 1).unwrap();
            assert!(above.class.is_zero() && above.note.is_some());
        }
    }

    #[test]
    fn total_sw_class_of_cp2() {
        let (ring, t) = setup("CP2");
        let w = stiefel_whitney(&ring, &t, 4).unwrap();
        let p = ring.presentation();
        let want: Vec<Poly> = ["1", "0", "x", "0", "x^2"]
            .iter()
            .map(|s| p.parse(s).unwrap())
            .collect();
        assert_eq!(w, want);
        let (partial, err) = stiefel_whitney_partial(&ring, &t);
        assert_eq!(partial, want);
        assert!(err.is_none());
    }
}
