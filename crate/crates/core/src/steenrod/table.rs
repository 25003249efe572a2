use std::collections::BTreeMap;

use serde::Serialize;

use super::{adem_decompose, apply_composite, sq_class, SqError};
use crate::basis::{BasisError, BitMatrix, BitVec, GradedRing};
use crate::poly::{ClassPoly, GeneratorTable, Monomial, ParamPoly, ParamSet};

type Poly = ClassPoly<ParamPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `Sq^0 g = g` and `Sq^{deg g} g = g^2`.
    Axiom,
    User,
    /// Forced by Adem relations from lower entries.
    AdemDerived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Axiom => "axiom",
            Provenance::User => "user",
            Provenance::AdemDerived => "adem-derived",
        }
    }
}

/// How derived entries are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Reduce every entry and every intermediate composite to standard
    /// monomials.
    #[default]
    Quotient,
    /// Work in the free polynomial ring; only the Sq¹-image rule consults
    /// the quotient.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub value: Poly,
    pub provenance: Provenance,
}

/// Values of `Sq^i g` for every generator `g` and `0 <= i <= deg g`.
///
/// Entries that cannot be determined are kept as holes, each naming the
/// missing power-of-two entry it depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareTable {
    gens: GeneratorTable,
    params: ParamSet,
    reduction: Reduction,
    entries: BTreeMap<(usize, u32), TableEntry>,
    holes: BTreeMap<(usize, u32), String>,
}

impl SquareTable {
    /// Completes the table of a GF(2) ring, reducing to the quotient.
    pub fn complete(ring: &GradedRing) -> Result<Self, SqError> {
        complete_table(ring, Reduction::Quotient)
    }

    pub fn gens(&self) -> &GeneratorTable {
        &self.gens
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn reduction(&self) -> Reduction {
        self.reduction
    }

    pub fn entry_name(&self, g: usize, i: u32) -> String {
        format!("Sq^{i} {}", self.gens.name(g))
    }

    pub fn entry(&self, g: usize, i: u32) -> Option<&TableEntry> {
        self.entries.get(&(g, i))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), &TableEntry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Undetermined entries with the root entry each one is missing.
    pub fn holes(&self) -> impl Iterator<Item = ((usize, u32), &str)> {
        self.holes.iter().map(|(&k, v)| (k, v.as_str()))
    }

    /// `Sq^i g`, with `None` meaning zero by unstability.
    pub fn value(&self, g: usize, i: u32) -> Result<Option<&Poly>, SqError> {
        if i > self.gens.degree(g) {
            return Ok(None);
        }
        if let Some(e) = self.entries.get(&(g, i)) {
            return Ok(Some(&e.value));
        }
        match self.holes.get(&(g, i)) {
            Some(root) => Err(SqError::TableIncomplete {
                entry: root.clone(),
            }),
            None => Err(SqError::MissingEntry {
                entry: self.entry_name(g, i),
            }),
        }
    }

    /// Whether every `Sq^i g` with `i <= up_to` is known.
    pub fn is_complete_to(&self, up_to: u32) -> bool {
        self.holes.keys().all(|&(_, i)| i > up_to)
    }

    pub fn ensure_complete(&self, up_to: u32) -> Result<(), SqError> {
        match self.holes.iter().find(|(&(_, i), _)| i <= up_to) {
            None => Ok(()),
            Some((_, root)) => Err(SqError::MissingEntry {
                entry: root.clone(),
            }),
        }
    }

    /// Largest `n` such that all `Sq^i g` with `i <= n` are known.
    pub fn complete_up_to(&self) -> u32 {
        self.holes
            .keys()
            .map(|&(_, i)| i - 1)
            .min()
            .unwrap_or_else(|| self.gens.max_degree())
    }

    fn insert(&mut self, g: usize, i: u32, value: Poly, provenance: Provenance) {
        self.entries
            .insert((g, i), TableEntry { value, provenance });
    }
}

fn bad_entry(table: &SquareTable, g: usize, i: u32, reason: String) -> SqError {
    SqError::Basis(BasisError::BadSquareEntry {
        generator: table.gens.name(g).to_string(),
        index: i,
        reason,
    })
}

/// Fills every `Sq^i g` from the axioms, the user entries, the Sq¹-image
/// rule and Adem relations, in increasing `i`.
pub fn complete_table(ring: &GradedRing, reduction: Reduction) -> Result<SquareTable, SqError> {
    let p = ring.presentation();
    let gens = p.gens().clone();
    let nvars = gens.len();
    let normalize = |v: &Poly| -> Result<Poly, SqError> {
        match reduction {
            Reduction::Quotient => Ok(ring.reduce(v)?),
            Reduction::Free => Ok(v.clone()),
        }
    };
    let mut t = SquareTable {
        gens: gens.clone(),
        params: p.params().clone(),
        reduction,
        entries: BTreeMap::new(),
        holes: BTreeMap::new(),
    };
    for g in 0..nvars {
        let x = Poly::generator(&gens, g);
        let sq = &x * &x;
        t.insert(g, 0, x, Provenance::Axiom);
        t.insert(g, gens.degree(g), normalize(&sq)?, Provenance::Axiom);
    }
    for (&(g, i), v) in p.squares() {
        let v = normalize(v)?;
        match t.entries.get(&(g, i)) {
            Some(e) if e.provenance == Provenance::Axiom => {
                if ring.reduce(&e.value)? != ring.reduce(&v)? {
                    return Err(bad_entry(
                        &t,
                        g,
                        i,
                        "contradicts the unstability axioms".into(),
                    ));
                }
            }
            _ => t.insert(g, i, v, Provenance::User),
        }
    }
    // Generators declared as Sq¹ of another generator.
    let sq1_images: Vec<usize> = (0..nvars)
        .filter(|&h| {
            let target = Poly::generator(&gens, h);
            (0..nvars).any(|g| p.squares().get(&(g, 1)) == Some(&target))
        })
        .collect();

    for i in 1..=gens.max_degree() {
        for g in 0..nvars {
            if i >= gens.degree(g) || t.entries.contains_key(&(g, i)) {
                continue;
            }
            let name = t.entry_name(g, i);
            if i.is_power_of_two() {
                let forced = if sq1_images.contains(&g) {
                    sq1_image_rule(ring, &t, g, i)?
                } else {
                    None
                };
                match forced {
                    Some(v) => t.insert(g, i, normalize(&v)?, Provenance::AdemDerived),
                    None => {
                        t.holes.insert((g, i), name);
                    }
                }
                continue;
            }
            let x = Poly::generator(&gens, g);
            let ring_opt = (reduction == Reduction::Quotient).then_some(ring);
            let mut acc = Poly::zero(nvars);
            let mut missing = None;
            for letters in adem_decompose(i).terms() {
                match apply_composite(ring_opt, &t, letters, &x) {
                    Ok(v) => acc.add_assign(&v),
                    Err(SqError::TableIncomplete { entry }) => {
                        missing = Some(entry);
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            match missing {
                Some(root) => {
                    t.holes.insert((g, i), root);
                }
                None => t.insert(g, i, acc, Provenance::AdemDerived),
            }
        }
    }
    Ok(t)
}

/// Values forced on `h = Sq¹ g`: `Sq¹ h = Sq¹Sq¹ g = 0`, and for `|h| = 3`,
/// `Sq¹(Sq² h) = Sq³ h = h²` pins down `Sq² h` when `Sq¹` is injective on the
/// relevant degree.
fn sq1_image_rule(
    ring: &GradedRing,
    t: &SquareTable,
    h: usize,
    i: u32,
) -> Result<Option<Poly>, SqError> {
    let gens = t.gens();
    let nvars = gens.len();
    let dh = gens.degree(h);
    if i == 1 {
        return Ok(Some(Poly::zero(nvars)));
    }
    if i != 2 || dh != 3 {
        return Ok(None);
    }
    let entry = t.entry_name(h, i);
    let underivable = |reason: &str| SqError::Underivable {
        entry: entry.clone(),
        reason: reason.to_string(),
    };
    let d = dh + 2;
    let target_degree = 2 * dh;
    let Some(source) = ring.degree_basis_unchecked(d) else {
        return Err(underivable("degree out of range"));
    };
    let hh = Poly::monomial(Monomial::generator(gens, h).pow(2), ParamPoly::one());
    let target = ring.reduce(&hh)?;
    let as_bits = |c: &Poly| -> Result<BitVec, SqError> {
        let Some(b) = ring.degree_basis_unchecked(target_degree) else {
            return Ok(BitVec::zeros(0));
        };
        let coords = if target_degree > ring.dim() {
            vec![ParamPoly::zero(); b.dim()]
        } else {
            ring.normal_form(target_degree, c)?
        };
        let mut v = BitVec::zeros(coords.len());
        for (k, x) in coords.iter().enumerate() {
            if x.is_one() {
                v.set(k, true);
            } else if !x.is_zero() {
                return Err(underivable("Sq^1 depends on parameters in this degree"));
            }
        }
        Ok(v)
    };
    let columns: Vec<BitVec> = (0..source.dim())
        .map(|k| {
            let b = Poly::monomial(source.basis_monomial(k).clone(), ParamPoly::one());
            as_bits(&sq_class(ring, t, &b, 1)?)
        })
        .collect::<Result<_, _>>()?;
    let rhs = as_bits(&target)?;
    let ncols = source.dim();
    let rows: Vec<BitVec> = (0..rhs.len())
        .map(|r| {
            let mut row = BitVec::zeros(ncols + 1);
            for (c, col) in columns.iter().enumerate() {
                row.set(c, col.get(r));
            }
            row.set(ncols, rhs.get(r));
            row
        })
        .collect();
    let mut m = BitMatrix::new(ncols + 1, rows);
    let pivots = m.rref();
    if pivots.contains(&ncols) {
        return Err(underivable("Sq^1 X = h^2 has no solution"));
    }
    if pivots.len() < ncols {
        return Err(underivable("Sq^1 X = h^2 has more than one solution"));
    }
    let mut x = Poly::zero(nvars);
    for (row, &c) in m.rows().iter().zip(&pivots) {
        if row.get(ncols) {
            x.add_term(source.basis_monomial(c).clone(), ParamPoly::one());
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    fn table(name: &str) -> (GradedRing, SquareTable) {
        let e = builtin(name).unwrap();
        let ring = GradedRing::new(&e.presentation).unwrap();
        let t = SquareTable::complete(&ring).unwrap();
        (ring, t)
    }

    #[test]
    fn axioms_fill_the_ends() {
        let (ring, t) = table("CP4");
        let p = ring.presentation();
        let e = t.entry(0, 2).unwrap();
        assert_eq!(e.provenance, Provenance::Axiom);
        assert_eq!(e.value, p.parse("x^2").unwrap());
        assert_eq!(t.entry(0, 1).unwrap().provenance, Provenance::User);
        assert_eq!(t.holes().count(), 0);
    }

    #[test]
    fn evi_holes_start_at_sq16_y20() {
        let (ring, t) = table("EVI");
        let y20 = ring.presentation().gens().index_of("y20").unwrap();
        let holes: Vec<_> = t.holes().collect();
        assert_eq!(holes.first().map(|h| h.0), Some((y20, 16)));
        assert!(holes.iter().all(|(_, root)| *root == "Sq^16 y20"));
        assert_eq!(t.complete_up_to(), 15);
        assert!(matches!(
            t.value(y20, 17),
            Err(SqError::TableIncomplete { .. })
        ));
        // Odd squares on y12 come from Adem relations.
        let y12 = ring.presentation().gens().index_of("y12").unwrap();
        assert_eq!(t.entry(y12, 3).unwrap().provenance, Provenance::AdemDerived);
    }
}
