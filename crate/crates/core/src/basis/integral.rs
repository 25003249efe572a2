use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{smith_normal_form, BasisError, Mode, Presentation};
use crate::poly::{monomials_of_degree, ClassPoly, Monomial, PolyError};

/// One degree of an integral presentation, as computed by Smith normal form.
///
/// The degree is `Z^free ⊕ torsion`; each monomial maps to its free
/// coordinates, and each free coordinate has an integral representative.
#[derive(Clone, Debug)]
pub struct IntDegreeBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    coords: Vec<Vec<BigInt>>,
    torsion: Vec<BigInt>,
    reps: Vec<ClassPoly<BigInt>>,
}

impl IntDegreeBasis {
    fn compute(p: &Presentation, d: u32) -> IntDegreeBasis {
        let nv = p.gens().len();
        let monomials = monomials_of_degree(p.gens(), d);
        let n = monomials.len();
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows = Vec::new();
        for r in p.relations() {
            let Some((m0, _)) = r.terms().next() else {
                continue;
            };
            if m0.degree() > d {
                continue;
            }
            for m in monomials_of_degree(p.gens(), d - m0.degree()) {
                let mut row = vec![BigInt::zero(); n];
                for (t, c) in r.terms() {
                    row[index[&t.mul(&m)]] += c;
                }
                rows.push(row);
            }
        }
        let mut snf = smith_normal_form(&rows, n);
        let free: Vec<usize> = (snf.rank..n).collect();
        // Orient each free coordinate so the first monomial with a nonzero
        // coordinate gets a positive one.
        for &t in &free {
            let flip = (0..n)
                .find(|&j| !snf.v[j][t].is_zero())
                .is_some_and(|j| snf.v[j][t].is_negative());
            if flip {
                for row in snf.v.iter_mut() {
                    row[t] = -&row[t];
                }
                for x in snf.v_inv[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        let coords = (0..n)
            .map(|j| free.iter().map(|&t| snf.v[j][t].clone()).collect())
            .collect();
        let reps = free
            .iter()
            .map(|&t| {
                let mut c = ClassPoly::zero(nv);
                for (k, x) in snf.v_inv[t].iter().enumerate() {
                    c.add_term(monomials[k].clone(), x.clone());
                }
                c
            })
            .collect();
        IntDegreeBasis {
            degree: d,
            monomials,
            index,
            coords,
            torsion: snf.torsion(),
            reps,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Rank of the free part.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Invariant factors of the torsion part.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Integral representatives of the free basis.
    pub fn free_basis(&self) -> &[ClassPoly<BigInt>] {
        &self.reps
    }

    /// Free coordinates of a monomial of this degree.
    pub fn coords(&self, m: &Monomial) -> Option<&[BigInt]> {
        self.index.get(m).map(|&i| self.coords[i].as_slice())
    }
}

/// An integral presentation with Smith-form data for every degree.
#[derive(Clone, Debug)]
pub struct IntegralRing {
    pres: Presentation,
    degrees: Vec<IntDegreeBasis>,
}

impl IntegralRing {
    /// Builds the ring and checks integral Poincaré duality on ranks.
    pub fn new(p: &Presentation) -> Result<Self, BasisError> {
        let ring = Self::new_unchecked(p)?;
        let n = ring.dim();
        for d in n + 1..ring.degrees.len() as u32 {
            let b = &ring.degrees[d as usize];
            if b.rank() != 0 || !b.torsion().is_empty() {
                return Err(BasisError::NotPoincare(format!(
                    "degree {d} above the formal dimension {n} is nonzero"
                )));
            }
        }
        let r = ring.ranks();
        if r[n as usize] != 1 || !ring.degrees[n as usize].torsion().is_empty() {
            return Err(BasisError::NotPoincare(format!(
                "top degree {n} is not infinite cyclic"
            )));
        }
        for i in 0..=n as usize {
            if r[i] != r[n as usize - i] {
                return Err(BasisError::NotPoincare(format!(
                    "rank {} in degree {i} but {} in degree {}",
                    r[i],
                    r[n as usize - i],
                    n as usize - i
                )));
            }
        }
        Ok(ring)
    }

    pub fn new_unchecked(p: &Presentation) -> Result<Self, BasisError> {
        if p.mode() != Mode::Int {
            return Err(BasisError::WrongMode {
                expected: "int",
                found: p.mode(),
            });
        }
        let top = p.dim() + p.gens().max_degree();
        let degrees = (0..=top)
            .into_par_iter()
            .map(|d| IntDegreeBasis::compute(p, d))
            .collect();
        Ok(IntegralRing {
            pres: p.clone(),
            degrees,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn dim(&self) -> u32 {
        self.pres.dim()
    }

    pub fn degree_basis(&self, d: u32) -> Result<&IntDegreeBasis, BasisError> {
        if d > self.dim() {
            return Err(BasisError::DimensionOverflow {
                degree: d,
                dim: self.dim(),
            });
        }
        Ok(&self.degrees[d as usize])
    }

    /// Free ranks in degrees `0..=dim`.
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees[..=self.dim() as usize]
            .iter()
            .map(|b| b.rank())
            .collect()
    }

    /// Degrees with torsion, and their invariant factors.
    pub fn torsion(&self) -> Vec<(u32, Vec<BigInt>)> {
        self.degrees
            .iter()
            .filter(|b| !b.torsion().is_empty())
            .map(|b| (b.degree(), b.torsion().to_vec()))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks()
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Free coordinates of a homogeneous class of degree `d`.
    pub fn coords(&self, d: u32, c: &ClassPoly<BigInt>) -> Result<Vec<BigInt>, BasisError> {
        match c.homogeneous_degree() {
            Err(PolyError::Inhomogeneous { degrees }) => {
                return Err(BasisError::InhomogeneousInput { degrees })
            }
            Err(e) => return Err(e.into()),
            Ok(Some(e)) if e != d => {
                return Err(BasisError::InhomogeneousInput { degrees: (d, e) })
            }
            _ => {}
        }
        let basis = self.degree_basis(d)?;
        let mut out = vec![BigInt::zero(); basis.rank()];
        for (m, coef) in c.terms() {
            let v = basis.coords(m).expect("monomial of the basis degree");
            for (o, x) in out.iter_mut().zip(v) {
                *o += coef * x;
            }
        }
        Ok(out)
    }

    /// Integer multiple of the oriented generator in the top degree.
    pub fn top_coordinate(&self, c: &ClassPoly<BigInt>) -> Result<BigInt, BasisError> {
        Ok(self
            .coords(self.dim(), c)?
            .into_iter()
            .next()
            .unwrap_or_default())
    }

    /// Integral cup pairing between the free parts of degree `i` and `n - i`.
    pub fn pairing(&self, i: u32) -> Result<Vec<Vec<BigInt>>, BasisError> {
        let n = self.dim();
        if i > n {
            return Err(BasisError::DimensionOverflow { degree: i, dim: n });
        }
        let left = &self.degrees[i as usize];
        let right = &self.degrees[(n - i) as usize];
        left.free_basis()
            .iter()
            .map(|a| {
                right
                    .free_basis()
                    .iter()
                    .map(|b| self.top_coordinate(&(a * b)))
                    .collect()
            })
            .collect()
    }
}

/// Mod-2 reduction of a torsion-free integral presentation.
///
/// Without torsion the mod-2 cohomology is the integral ring tensored with
/// GF(2), so the relations can simply be reduced. The result is parametric
/// when the presentation declares parameters.
pub fn mod2_reduce(ring: &IntegralRing) -> Result<Presentation, BasisError> {
    if let Some((degree, factors)) = ring.torsion().into_iter().next() {
        return Err(BasisError::TorsionPresent {
            degree,
            factors: factors.iter().map(|f| f.to_string()).collect(),
        });
    }
    let p = ring.presentation();
    let mode = if p.params().is_empty() {
        Mode::Gf2
    } else {
        Mode::Gf2Parametric
    };
    Ok(p.with_mode(mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{GeneratorTable, ParamSet};
    use num_traits::One;

    fn eiii_like() -> Presentation {
        let gens = GeneratorTable::new([("t", 2), ("w", 8)]).unwrap();
        let mut p = Presentation::new("e", Mode::Int, 32, gens, ParamSet::empty()).unwrap();
        p.add_relation_str("t^9 - 3*w^2*t").unwrap();
        p.add_relation_str("w^3 + 15*w^2*t^4 - 9*w*t^8").unwrap();
        p
    }

    #[test]
    fn cp_ring_is_free_with_unit_pairing() {
        let gens = GeneratorTable::new([("x", 2)]).unwrap();
        let mut p = Presentation::new("cp3", Mode::Int, 6, gens, ParamSet::empty()).unwrap();
        p.add_relation_str("x^4").unwrap();
        let r = IntegralRing::new(&p).unwrap();
        assert_eq!(r.ranks(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(r.euler_characteristic(), 4);
        let x3 = p.parse::<BigInt>("x^3").unwrap();
        assert_eq!(r.top_coordinate(&x3).unwrap(), BigInt::one());
    }

    #[test]
    fn torsion_is_detected() {
        let gens = GeneratorTable::new([("x", 2)]).unwrap();
        let mut p = Presentation::new("t", Mode::Int, 4, gens, ParamSet::empty()).unwrap();
        p.add_relation_str("2*x^2").unwrap();
        p.add_relation_str("x^3").unwrap();
        let r = IntegralRing::new_unchecked(&p).unwrap();
        assert_eq!(r.torsion(), vec![(4, vec![BigInt::from(2)])]);
        assert!(matches!(
            mod2_reduce(&r),
            Err(BasisError::TorsionPresent { degree: 4, .. })
        ));
    }

    #[test]
    fn eiii_top_coordinates_are_positive() {
        let p = eiii_like();
        let r = IntegralRing::new(&p).unwrap();
        assert_eq!(r.euler_characteristic(), 27);
        let coords: Vec<BigInt> = ["t^16", "t^12*w", "t^8*w^2", "t^4*w^3", "w^4"]
            .iter()
            .map(|s| r.top_coordinate(&p.parse::<BigInt>(s).unwrap()).unwrap())
            .collect();
        let want: Vec<BigInt> = [78, 45, 26, 15, 9]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(coords, want);
        // Free representatives really map to unit vectors.
        for d in 0..=32 {
            let b = r.degree_basis(d).unwrap();
            for (k, rep) in b.free_basis().iter().enumerate() {
                let c = r.coords(d, rep).unwrap();
                for (j, x) in c.iter().enumerate() {
                    assert_eq!(x, &BigInt::from(u8::from(j == k)));
                }
            }
        }
    }
}
