//! End-to-end pipeline from a presentation to verdicts.
//!
//! Integral presentations are analysed over Z first and then reduced mod 2.
//! The square table is completed, checked against the relations, and any
//! parameter the checks pin down is eliminated before anything else is
//! computed. What remains of the checks becomes the admissible set that all
//! verdicts are stated over.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::basis::{mod2_reduce, GradedRing, IntegralRing, Mode, Presentation};
use crate::orient::{
    orientability_verdict, orientability_verdict_w, parity_theorem_check, signature,
    stiefel_whitney_partial, verdict_ladder, wu_class, IntersectionForm, OrientError, ParityReport,
    Signature, Verdict, WuClass,
};
use crate::poly::{Assignment, ClassPoly, ParamPoly};
use crate::steenrod::{
    adem_constraints, consistency_constraints, solve_constraints, Consistency, ParamSolution,
    SquareTable,
};

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Fixed parameter values, applied before anything else.
    pub assignment: Option<Assignment>,
    /// Also eliminate parameters using Adem relations on the generators.
    pub impose_adem: bool,
}

pub struct Analysis {
    source: Presentation,
    presentation: Presentation,
    integral: Option<IntegralRing>,
    ring: GradedRing,
    table: SquareTable,
    relation_check: Consistency,
    adem_check: OnceLock<Result<Consistency, OrientError>>,
    solution: ParamSolution,
    impose_adem: bool,
}

impl Analysis {
    pub fn new(p: &Presentation, options: &AnalysisOptions) -> Result<Self, OrientError> {
        let source = match &options.assignment {
            Some(a) => p.substitute(a),
            None => p.clone(),
        };
        let (integral, reduced) = if source.mode() == Mode::Int {
            let int = IntegralRing::new(&source)?;
            let red = mod2_reduce(&int)?;
            (Some(int), red)
        } else {
            (None, source.clone())
        };
        let raw_ring = GradedRing::new(&reduced)?;
        let raw_table = SquareTable::complete(&raw_ring)?;
        let relation_check = consistency_constraints(&raw_ring, &raw_table)?;
        let mut constraints = relation_check.constraints.clone();
        let adem_check = OnceLock::new();
        if options.impose_adem {
            let adem = adem_constraints(&raw_ring, &raw_table)?;
            constraints.extend(adem.constraints.iter().cloned());
            let _ = adem_check.set(Ok(adem));
        }
        let solution = solve_constraints(&constraints)?;
        let (presentation, ring, table) = if solution.substitutions.is_empty() {
            (reduced, raw_ring, raw_table)
        } else {
            let q = reduced.compose_params(&solution.substitutions);
            let ring = GradedRing::new(&q)?;
            let table = SquareTable::complete(&ring)?;
            (q, ring, table)
        };
        Ok(Analysis {
            source,
            presentation,
            integral,
            ring,
            table,
            relation_check,
            adem_check,
            solution,
            impose_adem: options.impose_adem,
        })
    }

    /// The presentation as given, after any assignment.
    pub fn source(&self) -> &Presentation {
        &self.source
    }

    /// The mod-2 presentation the verdicts are computed from, with solved
    /// parameters substituted.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn table(&self) -> &SquareTable {
        &self.table
    }

    pub fn integral(&self) -> Option<&IntegralRing> {
        self.integral.as_ref()
    }

    pub fn dim(&self) -> u32 {
        self.ring.dim()
    }

    /// Conditions from applying squares to the relations, before solving.
    pub fn relation_check(&self) -> &Consistency {
        &self.relation_check
    }

    /// Adem relations on the generators, evaluated against the table in use.
    /// When they were imposed they are reported as found on the raw table.
    pub fn adem_check(&self) -> Result<&Consistency, OrientError> {
        self.adem_check
            .get_or_init(|| Ok(adem_constraints(&self.ring, &self.table)?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn impose_adem(&self) -> bool {
        self.impose_adem
    }

    pub fn substitutions(&self) -> &BTreeMap<usize, ParamPoly> {
        &self.solution.substitutions
    }

    pub fn residual(&self) -> &[ParamPoly] {
        &self.solution.residual
    }

    /// Indicator of the parameter values the verdicts range over.
    pub fn admissible(&self) -> ParamPoly {
        self.solution.admissible()
    }

    pub fn verdict(&self, k: u32) -> Result<Verdict, OrientError> {
        orientability_verdict(&self.ring, &self.table, k, &self.admissible())
    }

    pub fn verdict_w(&self, k: u32) -> Result<Verdict, OrientError> {
        orientability_verdict_w(&self.ring, &self.table, k, &self.admissible())
    }

    pub fn ladder(&self) -> (Vec<Verdict>, Option<(u32, OrientError)>) {
        verdict_ladder(&self.ring, &self.table, &self.admissible())
    }

    pub fn wu(&self, i: u32) -> Result<WuClass, OrientError> {
        wu_class(&self.ring, &self.table, i)
    }

    /// Stiefel-Whitney classes as far as the table allows, with the error
    /// that stopped the computation.
    pub fn stiefel_whitney(&self) -> (Vec<ClassPoly<ParamPoly>>, Option<OrientError>) {
        stiefel_whitney_partial(&self.ring, &self.table)
    }

    pub fn parity(&self, verdicts: &[Verdict]) -> ParityReport {
        parity_theorem_check(verdicts, self.dim(), self.euler_characteristic())
    }

    pub fn euler_characteristic(&self) -> i64 {
        match &self.integral {
            Some(int) => int.euler_characteristic(),
            None => self.ring.euler_characteristic(),
        }
    }

    pub fn signature(&self) -> Result<(IntersectionForm, Signature), OrientError> {
        match &self.integral {
            Some(int) => signature(int),
            None => Err(OrientError::NotApplicable(
                "signature needs an integral presentation".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::orient::Status;

    fn render(a: &Analysis, v: &Verdict) -> Vec<String> {
        v.conditions
            .iter()
            .map(|q| q.render(a.presentation().params()))
            .collect()
    }

    #[test]
    fn eiii_symbolic_conditions() {
        let p = builtin("EIII").unwrap().presentation;
        let a = Analysis::new(&p, &AnalysisOptions::default()).unwrap();
        assert!(a.integral().is_some());
        assert_eq!(a.euler_characteristic(), 27);
        assert_eq!(a.verdict(1).unwrap().status, Status::Yes);
        let v2 = a.verdict(2).unwrap();
        assert_eq!(v2.status, Status::Conditional);
        assert_eq!(render(&a, &v2), ["1+b"]);
        let v3 = a.verdict(3).unwrap();
        assert_eq!(render(&a, &v3), ["1+b", "1+d"]);
        assert_eq!(a.signature().unwrap().1.signature, 3);
    }

    #[test]
    fn evi_relation_constraints_settle_two_parameters() {
        let p = builtin("EVI").unwrap().presentation;
        let a = Analysis::new(&p, &AnalysisOptions::default()).unwrap();
        let names: Vec<String> = a
            .substitutions()
            .iter()
            .map(|(&i, f)| format!("{}={}", p.params().name(i), f.render(p.params())))
            .collect();
        assert_eq!(names, ["c2=0", "d2=1"]);
        assert!(a.residual().is_empty());
        for k in 1..=3 {
            assert_eq!(a.verdict(k).unwrap().status, Status::Yes);
        }
        let v4 = a.verdict(4).unwrap();
        assert_eq!(v4.status, Status::Conditional);
        assert_eq!(render(&a, &v4), ["1+b2+n2"]);
    }

    #[test]
    fn eiii_imposed_adem_leaves_two_points() {
        let p = builtin("EIII").unwrap().presentation;
        let opts = AnalysisOptions {
            impose_adem: true,
            ..Default::default()
        };
        let a = Analysis::new(&p, &opts).unwrap();
        let adm = a.admissible();
        let n = p.params().len();
        let points: Vec<u64> = (0..1u64 << n).filter(|&v| adm.eval(v)).collect();
        // Each surviving point, read back through the substitutions.
        let full: Vec<u64> = points
            .iter()
            .map(|&v| {
                (0..n).fold(0, |acc, i| {
                    let bit = match a.substitutions().get(&i) {
                        Some(f) => f.eval(v),
                        None => v >> i & 1 == 1,
                    };
                    acc | (u64::from(bit) << i)
                })
            })
            .collect();
        let mut full = full;
        full.sort();
        full.dedup();
        // (a, b, c, d) = (1, 1, 1, 0) and (0, 0, 0, 1).
        assert_eq!(full, [0b0111, 0b1000]);
    }
}
