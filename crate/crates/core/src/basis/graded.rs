use std::collections::HashMap;

use rayon::prelude::*;

use super::{BasisError, BitMatrix, BitVec, Mode, Presentation};
use crate::poly::{monomials_of_degree, ClassPoly, Coeff, Gf2, Monomial, PolyError};

/// Standard-monomial basis of one degree of a GF(2) presentation.
///
/// Columns are the degree-`d` monomials in descending grevlex order; the
/// spanning set of the ideal slice is brought into reduced row echelon form
/// and the non-pivot monomials form the basis.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Vec<usize>,
    reduce: Vec<BitVec>,
    slice_len: usize,
    relation_rank: usize,
}

impl DegreeBasis {
    fn compute(p: &Presentation, relations: &[ClassPoly<Gf2>], d: u32) -> DegreeBasis {
        let monomials = monomials_of_degree(p.gens(), d);
        let n = monomials.len();
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let slice = relation_slice_in(p, relations, d);
        let slice_len = slice.len();
        let rows: Vec<BitVec> = slice
            .iter()
            .map(|r| {
                let mut v = BitVec::zeros(n);
                for (m, _) in r.terms() {
                    v.toggle(index[m]);
                }
                v
            })
            .collect();
        let mut mat = BitMatrix::new(n, rows);
        let pivots = mat.rref();
        let mut pivot_row = vec![None; n];
        for (k, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(k);
        }
        let basis: Vec<usize> = (0..n).filter(|&c| pivot_row[c].is_none()).collect();
        let mut slot = vec![usize::MAX; n];
        for (k, &c) in basis.iter().enumerate() {
            slot[c] = k;
        }
        let reduce = (0..n)
            .map(|c| {
                let mut v = BitVec::zeros(basis.len());
                match pivot_row[c] {
                    None => v.set(slot[c], true),
                    Some(k) => {
                        for j in mat.rows()[k].iter_ones().filter(|&j| j != c) {
                            v.toggle(slot[j]);
                        }
                    }
                }
                v
            })
            .collect();
        DegreeBasis {
            degree: d,
            monomials,
            index,
            basis,
            reduce,
            slice_len,
            relation_rank: pivots.len(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// All monomials of this degree, descending grevlex.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Standard monomials spanning this degree.
    pub fn basis(&self) -> Vec<&Monomial> {
        self.basis.iter().map(|&i| &self.monomials[i]).collect()
    }

    pub fn basis_monomial(&self, k: usize) -> &Monomial {
        &self.monomials[self.basis[k]]
    }

    /// The Betti number `b_d`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn slice_len(&self) -> usize {
        self.slice_len
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    /// Coordinates of a monomial of this degree over the basis.
    pub fn coords(&self, m: &Monomial) -> Option<&BitVec> {
        self.index.get(m).map(|&i| &self.reduce[i])
    }
}

fn relation_slice_in(
    p: &Presentation,
    relations: &[ClassPoly<Gf2>],
    d: u32,
) -> Vec<ClassPoly<Gf2>> {
    let mut out = Vec::new();
    for r in relations {
        let Some((m0, _)) = r.terms().next() else {
            continue;
        };
        let e = m0.degree();
        if e > d {
            continue;
        }
        for m in monomials_of_degree(p.gens(), d - e) {
            out.push(r.mul_monomial(&m, &Gf2(true)));
        }
    }
    out
}

/// Cup-product pairing between degree `i` and `n - i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub degree: u32,
    pub matrix: BitMatrix,
}

/// A GF(2) presentation with all degree bases computed.
///
/// Bases are computed for degrees `0..=dim + max generator degree`; the extra
/// window certifies that nothing survives above the formal dimension.
#[derive(Clone, Debug)]
pub struct GradedRing {
    pres: Presentation,
    degrees: Vec<DegreeBasis>,
}

impl GradedRing {
    /// Builds the ring and validates Poincaré duality.
    pub fn new(p: &Presentation) -> Result<Self, BasisError> {
        let ring = Self::new_unchecked(p)?;
        ring.validate()?;
        Ok(ring)
    }

    /// Builds the bases without the duality checks.
    pub fn new_unchecked(p: &Presentation) -> Result<Self, BasisError> {
        if !p.mode().is_gf2() {
            return Err(BasisError::WrongMode {
                expected: "gf2",
                found: p.mode(),
            });
        }
        let relations = p.relations_gf2();
        let top = p.dim() + p.gens().max_degree();
        let degrees = (0..=top)
            .into_par_iter()
            .map(|d| DegreeBasis::compute(p, &relations, d))
            .collect();
        Ok(GradedRing {
            pres: p.clone(),
            degrees,
        })
    }

    fn validate(&self) -> Result<(), BasisError> {
        let n = self.dim();
        for d in n + 1..self.degrees.len() as u32 {
            if self.degrees[d as usize].dim() != 0 {
                return Err(BasisError::NotPoincare(format!(
                    "degree {d} above the formal dimension {n} is nonzero"
                )));
            }
        }
        let b = self.betti_profile();
        if b[n as usize] != 1 {
            return Err(BasisError::NotPoincare(format!(
                "top degree {n} has dimension {}",
                b[n as usize]
            )));
        }
        for i in 0..=n {
            if b[i as usize] != b[(n - i) as usize] {
                return Err(BasisError::NotPoincare(format!(
                    "b_{i} = {} but b_{} = {}",
                    b[i as usize],
                    n - i,
                    b[(n - i) as usize]
                )));
            }
        }
        for i in 0..=n / 2 {
            self.pairing(i)?;
        }
        Ok(())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn dim(&self) -> u32 {
        self.pres.dim()
    }

    pub fn mode(&self) -> Mode {
        self.pres.mode()
    }

    pub fn degree_basis(&self, d: u32) -> Result<&DegreeBasis, BasisError> {
        if d > self.dim() {
            return Err(BasisError::DimensionOverflow {
                degree: d,
                dim: self.dim(),
            });
        }
        Ok(&self.degrees[d as usize])
    }

    /// Basis data for any computed degree, including the window above the
    /// top degree.
    pub fn degree_basis_unchecked(&self, d: u32) -> Option<&DegreeBasis> {
        self.degrees.get(d as usize)
    }

    /// All monomials of degree `d`, descending grevlex.
    pub fn enumerate_monomials(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.pres.gens(), d)
    }

    /// Spanning set of the degree-`d` slice of the relation ideal.
    pub fn relation_slice(&self, d: u32) -> Vec<ClassPoly<Gf2>> {
        relation_slice_in(&self.pres, &self.pres.relations_gf2(), d)
    }

    pub fn betti_profile(&self) -> Vec<usize> {
        self.degrees[..=self.dim() as usize]
            .iter()
            .map(|b| b.dim())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti_profile()
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    fn class_degree<C: Coeff>(c: &ClassPoly<C>) -> Result<Option<u32>, BasisError> {
        c.homogeneous_degree().map_err(|e| match e {
            PolyError::Inhomogeneous { degrees } => BasisError::InhomogeneousInput { degrees },
            other => BasisError::Poly(other),
        })
    }

    /// Coordinates of a homogeneous class of degree `d <= dim` over the
    /// degree-`d` basis.
    pub fn normal_form<C: Coeff>(&self, d: u32, c: &ClassPoly<C>) -> Result<Vec<C>, BasisError> {
        if let Some(e) = Self::class_degree(c)? {
            if e != d {
                return Err(BasisError::InhomogeneousInput { degrees: (d, e) });
            }
        }
        let basis = self.degree_basis(d)?;
        Ok(self.coords_in(basis, c))
    }

    fn coords_in<C: Coeff>(&self, basis: &DegreeBasis, c: &ClassPoly<C>) -> Vec<C> {
        let mut out = vec![C::zero(); basis.dim()];
        for (m, coef) in c.terms() {
            let v = basis.coords(m).expect("monomial of the basis degree");
            for k in v.iter_ones() {
                out[k].add_assign(coef);
            }
        }
        out
    }

    /// Reduces a homogeneous class to its standard-monomial representative.
    /// Classes above the top degree reduce to zero.
    pub fn reduce<C: Coeff>(&self, c: &ClassPoly<C>) -> Result<ClassPoly<C>, BasisError> {
        let Some(d) = Self::class_degree(c)? else {
            return Ok(c.clone());
        };
        if d > self.dim() {
            return Ok(ClassPoly::zero(c.nvars()));
        }
        let coords = self.normal_form(d, c)?;
        Ok(self.class_from_coords(d, &coords))
    }

    pub fn class_from_coords<C: Coeff>(&self, d: u32, coords: &[C]) -> ClassPoly<C> {
        let basis = &self.degrees[d as usize];
        let mut out = ClassPoly::zero(self.pres.gens().len());
        for (k, c) in coords.iter().enumerate() {
            out.add_term(basis.basis_monomial(k).clone(), c.clone());
        }
        out
    }

    /// Coefficient of the fundamental class for a class of the top degree.
    pub fn top_coordinate<C: Coeff>(&self, c: &ClassPoly<C>) -> Result<C, BasisError> {
        let coords = self.normal_form(self.dim(), c)?;
        Ok(coords.into_iter().next().unwrap_or_else(C::zero))
    }

    pub fn pairing(&self, i: u32) -> Result<PairingMatrix, BasisError> {
        let n = self.dim();
        if i > n {
            return Err(BasisError::DimensionOverflow { degree: i, dim: n });
        }
        let left = &self.degrees[i as usize];
        let right = &self.degrees[(n - i) as usize];
        let top = &self.degrees[n as usize];
        let mut m = BitMatrix::zeros(left.dim(), right.dim());
        for r in 0..left.dim() {
            for s in 0..right.dim() {
                let prod = left.basis_monomial(r).mul(right.basis_monomial(s));
                let v = top.coords(&prod).expect("top-degree monomial");
                m.set(r, s, v.get(0));
            }
        }
        if left.dim() != right.dim() || m.inverse().is_none() {
            return Err(BasisError::DegeneratePairing {
                degree: i,
                complement: n - i,
            });
        }
        Ok(PairingMatrix {
            degree: i,
            matrix: m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    fn ring(name: &str) -> GradedRing {
        let e = builtin(name).unwrap();
        match e.presentation.mode() {
            Mode::Int => {
                let int = crate::basis::IntegralRing::new(&e.presentation).unwrap();
                GradedRing::new(&crate::basis::mod2_reduce(&int).unwrap()).unwrap()
            }
            _ => GradedRing::new(&e.presentation).unwrap(),
        }
    }

    fn labels(r: &GradedRing, d: u32) -> Vec<String> {
        let gens = r.presentation().gens();
        r.degree_basis(d)
            .unwrap()
            .basis()
            .iter()
            .map(|m| m.render(gens))
            .collect()
    }

    #[test]
    fn eiii_low_degree_is_a_power_of_t() {
        let r = ring("EIII-mod2");
        assert_eq!(labels(&r, 6), ["t^3"]);
        assert_eq!(r.degree_basis(7).unwrap().dim(), 0);
    }

    #[test]
    fn evi_below_the_first_relation_is_free() {
        let r = ring("EVI");
        // Lowest relation has degree 9, so degree 6 is spanned freely.
        let mut got = labels(&r, 6);
        got.sort();
        assert_eq!(got, ["y2^3", "y3^2"]);
        let b = r.degree_basis(64).unwrap();
        assert_eq!(b.monomials().len(), 123);
        assert_eq!(b.dim(), 1);
        assert_eq!(b.relation_rank(), 122);
    }

    #[test]
    fn degree_bounds() {
        let r = ring("CP2");
        assert!(matches!(
            r.degree_basis(5),
            Err(BasisError::DimensionOverflow { degree: 5, dim: 4 })
        ));
        assert_eq!(r.betti_profile(), [1, 0, 1, 0, 1]);
        assert_eq!(r.euler_characteristic(), 3);
    }

    #[test]
    fn reduce_and_normal_form() {
        let r = ring("CP4");
        let p = r.presentation();
        let x5: ClassPoly<Gf2> = p.parse("x^5").unwrap();
        assert!(r.reduce(&x5).unwrap().is_zero());
        let x3: ClassPoly<Gf2> = p.parse("x^3").unwrap();
        assert_eq!(r.normal_form(6, &x3).unwrap(), [Gf2(true)]);
        assert!(r.normal_form(4, &x3).is_err());
        let x4: ClassPoly<Gf2> = p.parse("x^4").unwrap();
        assert_eq!(r.top_coordinate(&x4).unwrap(), Gf2(true));
    }

    #[test]
    fn pairing_is_checked() {
        let r = ring("OP2^2");
        for i in 0..=r.dim() {
            assert!(r.pairing(i).is_ok(), "degree {i}");
        }
        let mut p = Presentation::new(
            "wedge",
            Mode::Gf2,
            4,
            crate::poly::GeneratorTable::new([("x", 2), ("y", 2)]).unwrap(),
            crate::poly::ParamSet::empty(),
        )
        .unwrap();
        for rel in ["x*y", "x^2", "y^3"] {
            p.add_relation_str(rel).unwrap();
        }
        // b2 = 2 but x pairs to zero with everything.
        assert!(matches!(
            GradedRing::new(&p),
            Err(BasisError::DegeneratePairing { degree: 2, .. } | BasisError::NotPoincare(_))
        ));
    }
}
