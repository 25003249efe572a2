use rayon::prelude::*;

use super::{compositions, SqError, SquareTable};
use crate::basis::{BasisError, GradedRing};
use crate::poly::{ClassPoly, Monomial, ParamPoly, PolyError};

type Poly = ClassPoly<ParamPoly>;

/// A slot of a truncated total square: a known class, or the root of a
/// missing table entry that it depends on.
type Slot = Result<Poly, String>;

fn slot_add(a: &mut Slot, b: &Slot) {
    match (&mut *a, b) {
        (Err(_), _) => {}
        (Ok(_), Err(e)) => *a = Err(e.clone()),
        (Ok(x), Ok(y)) => x.add_assign(y),
    }
}

fn slot_mul(a: &Slot, b: &Slot) -> Slot {
    match (a, b) {
        (Ok(x), _) if x.is_zero() => Ok(x.clone()),
        (_, Ok(y)) if y.is_zero() => Ok(y.clone()),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        (Ok(x), Ok(y)) => Ok(x * y),
    }
}

/// `p^2` in characteristic 2: cross terms cancel and coefficients are
/// idempotent.
fn frobenius(p: &Poly) -> Poly {
    let mut out = ClassPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        out.add_term(m.pow(2), c.clone());
    }
    out
}

fn truncated_mul(a: &[Slot], b: &[Slot], n: usize, nvars: usize) -> Vec<Slot> {
    let mut out: Vec<Slot> = vec![Ok(ClassPoly::zero(nvars)); n + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            let p = slot_mul(x, y);
            slot_add(&mut out[i + j], &p);
        }
    }
    out
}

fn unit_slots(n: usize, nvars: usize) -> Vec<Slot> {
    let mut v: Vec<Slot> = vec![Ok(ClassPoly::zero(nvars)); n + 1];
    v[0] = Ok(ClassPoly::one(nvars));
    v
}

fn generator_slots(table: &SquareTable, g: usize, n: usize) -> Vec<Slot> {
    (0..=n)
        .map(|i| match table.value(g, i as u32) {
            Ok(Some(v)) => Ok(v.clone()),
            Ok(None) => Ok(ClassPoly::zero(table.gens().len())),
            Err(SqError::TableIncomplete { entry }) | Err(SqError::MissingEntry { entry }) => {
                Err(entry)
            }
            Err(e) => Err(e.to_string()),
        })
        .collect()
}

/// Components of index `0..=n` of `(Σ_i Sq^i g)^e`, computed by repeated
/// Frobenius squaring.
fn power_slots(table: &SquareTable, g: usize, e: u32, n: usize) -> Vec<Slot> {
    let nvars = table.gens().len();
    let mut acc = unit_slots(n, nvars);
    let mut base = generator_slots(table, g, n);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = truncated_mul(&acc, &base, n, nvars);
        }
        e >>= 1;
        if e > 0 {
            let mut sq: Vec<Slot> = vec![Ok(ClassPoly::zero(nvars)); n + 1];
            for (i, s) in base.iter().enumerate() {
                if 2 * i > n {
                    break;
                }
                sq[2 * i] = s.as_ref().map(frobenius).map_err(Clone::clone);
            }
            base = sq;
        }
    }
    acc
}

fn finish(slot: Slot) -> Result<Poly, SqError> {
    slot.map_err(|entry| SqError::TableIncomplete { entry })
}

/// `Sq^n(g^e)` in the free polynomial ring.
pub fn sq_power(table: &SquareTable, g: usize, e: u32, n: u32) -> Result<Poly, SqError> {
    let nvars = table.gens().len();
    if e == 0 {
        return Ok(if n == 0 {
            ClassPoly::one(nvars)
        } else {
            ClassPoly::zero(nvars)
        });
    }
    if n > e * table.gens().degree(g) {
        return Ok(ClassPoly::zero(nvars));
    }
    let mut slots = power_slots(table, g, e, n as usize);
    finish(slots.swap_remove(n as usize))
}

/// Same as [`sq_power`], by summing over every composition of `n` into `e`
/// parts. Exponentially slower; kept as a test oracle.
pub fn sq_power_naive(table: &SquareTable, g: usize, e: u32, n: u32) -> Result<Poly, SqError> {
    let m = Monomial::generator(table.gens(), g).pow(e);
    sq_monomial_naive(table, &m, n)
}

/// `Sq^n` of a monomial in the free ring, with one Cartan slot per distinct
/// generator.
pub fn sq_monomial(table: &SquareTable, m: &Monomial, n: u32) -> Result<Poly, SqError> {
    let nvars = table.gens().len();
    if n > m.degree() {
        return Ok(ClassPoly::zero(nvars));
    }
    let n = n as usize;
    let mut acc = unit_slots(n, nvars);
    for (g, e) in m.support() {
        let p = power_slots(table, g, e, n);
        acc = truncated_mul(&acc, &p, n, nvars);
    }
    finish(acc.swap_remove(n))
}

/// `Sq^n` of a monomial by expanding the Cartan formula over one slot per
/// factor.
pub fn sq_monomial_naive(table: &SquareTable, m: &Monomial, n: u32) -> Result<Poly, SqError> {
    let nvars = table.gens().len();
    let factors: Vec<usize> = m
        .support()
        .flat_map(|(g, e)| std::iter::repeat_n(g, e as usize))
        .collect();
    if factors.is_empty() {
        return Ok(if n == 0 {
            ClassPoly::one(nvars)
        } else {
            ClassPoly::zero(nvars)
        });
    }
    let mut out = ClassPoly::zero(nvars);
    'outer: for p in compositions(n, factors.len()) {
        let mut term = ClassPoly::one(nvars);
        for (&g, &i) in factors.iter().zip(&p) {
            match table.value(g, i)? {
                Some(v) => term = &term * v,
                None => continue 'outer,
            }
        }
        out.add_assign(&term);
    }
    Ok(out)
}

/// `Sq^n` of a class in the free polynomial ring, using only the table.
pub fn sq_raw(table: &SquareTable, c: &Poly, n: u32) -> Result<Poly, SqError> {
    let parts: Vec<Result<Poly, SqError>> = c
        .terms()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(m, coef)| {
            let v = sq_monomial(table, m, n)?;
            Ok(v.scale(coef))
        })
        .collect();
    let mut out = ClassPoly::zero(c.nvars());
    for p in parts {
        out.add_assign(&p?);
    }
    Ok(out)
}

/// `Sq^n c` reduced to its standard-monomial representative.
pub fn sq_class(ring: &GradedRing, table: &SquareTable, c: &Poly, n: u32) -> Result<Poly, SqError> {
    let raw = sq_raw(table, c, n)?;
    Ok(ring.reduce(&raw)?)
}

/// Coordinates of `Sq^n c` over the basis of degree `d + n`, where `c` is
/// homogeneous of degree `d`.
pub fn sq(
    ring: &GradedRing,
    table: &SquareTable,
    d: u32,
    c: &Poly,
    n: u32,
) -> Result<Vec<ParamPoly>, SqError> {
    match c.homogeneous_degree() {
        Ok(Some(e)) if e != d => {
            return Err(SqError::Basis(BasisError::InhomogeneousInput {
                degrees: (d, e),
            }))
        }
        Err(PolyError::Inhomogeneous { degrees }) => {
            return Err(SqError::Basis(BasisError::InhomogeneousInput { degrees }))
        }
        Err(e) => return Err(SqError::Basis(e.into())),
        _ => {}
    }
    if d + n > ring.dim() {
        return Err(SqError::DegreeOverflow {
            degree: d + n,
            dim: ring.dim(),
        });
    }
    let raw = sq_raw(table, c, n)?;
    Ok(ring.normal_form(d + n, &raw)?)
}

/// Applies a composite of squares, innermost (last) letter first.
pub fn apply_composite(
    ring: Option<&GradedRing>,
    table: &SquareTable,
    letters: &[u32],
    c: &Poly,
) -> Result<Poly, SqError> {
    let mut x = c.clone();
    for &k in letters.iter().rev() {
        x = match ring {
            Some(r) => sq_class(r, table, &x, k)?,
            None => sq_raw(table, &x, k)?,
        };
        if x.is_zero() {
            break;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::GradedRing;
    use crate::corpus::builtin;
    use crate::steenrod::{complete_table, Reduction};

    #[test]
    fn binomial_pattern_on_cp4() {
        let e = builtin("CP4").unwrap();
        let ring = GradedRing::new(&e.presentation).unwrap();
        let t = complete_table(&ring, Reduction::Free).unwrap();
        let p = ring.presentation();
        // Sq^2 x^k = k x^(k+1), Sq^4 x^k = C(k,2) x^(k+2).
        assert_eq!(sq_power(&t, 0, 3, 2).unwrap(), p.parse("x^4").unwrap());
        assert!(sq_power(&t, 0, 2, 2).unwrap().is_zero());
        assert_eq!(sq_power(&t, 0, 3, 4).unwrap(), p.parse("x^5").unwrap());
        assert!(sq_power(&t, 0, 3, 1).unwrap().is_zero());
    }

    #[test]
    fn slot_grouping_matches_expansion_on_evi() {
        let e = builtin("EVI").unwrap();
        let ring = GradedRing::new(&e.presentation).unwrap();
        let t = complete_table(&ring, Reduction::Free).unwrap();
        let m = ring.presentation().monomial(vec![3, 2, 1, 0, 1]);
        for n in 0..=8 {
            assert_eq!(
                sq_monomial(&t, &m, n),
                sq_monomial_naive(&t, &m, n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn sq_checks_degrees() {
        let e = builtin("CP2").unwrap();
        let ring = GradedRing::new(&e.presentation).unwrap();
        let t = complete_table(&ring, Reduction::Quotient).unwrap();
        let x: Poly = ring.presentation().parse("x").unwrap();
        assert!(matches!(
            sq(&ring, &t, 2, &x, 4),
            Err(SqError::DegreeOverflow { .. })
        ));
        assert!(sq(&ring, &t, 4, &x, 0).is_err());
        assert_eq!(sq(&ring, &t, 2, &x, 2).unwrap(), [ParamPoly::one()]);
        let sq1sq1 = apply_composite(Some(&ring), &t, &[1, 1], &x).unwrap();
        assert!(sq1sq1.is_zero());
    }
}
