//! Oracle- and axiom-based property checks over the corpus. Each check
//! returns a short summary on success and the first counterexample on
//! failure. Shared by the property tests and the acceptance harness.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wusq_core::basis::GradedRing;
use wusq_core::orient::{form_signature, orientability_verdict_w, verify_wu, OrientError};
use wusq_core::steenrod::{
    complete_table, sq_class, sq_monomial, sq_monomial_naive, sq_power, sq_power_naive, sq_raw,
    Reduction, SqError, SquareTable,
};
use wusq_core::BigInt;
use wusq_core::{corpus, Analysis, AnalysisOptions, ClassPoly, Monomial, ParamPoly};

type Poly = ClassPoly<ParamPoly>;
pub type Check = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn analyses(impose_adem: bool) -> Vec<Analysis> {
    corpus::all()
        .iter()
        .map(|e| {
            let opts = AnalysisOptions {
                assignment: None,
                impose_adem,
            };
            Analysis::new(&e.presentation, &opts).expect("corpus entries analyse")
        })
        .collect()
}

fn random_coeff(r: &mut ChaCha8Rng, nparams: usize) -> ParamPoly {
    if nparams == 0 || r.gen_bool(0.5) {
        return ParamPoly::one();
    }
    let q = ParamPoly::param(r.gen_range(0..nparams));
    if r.gen_bool(0.5) {
        q.add(&ParamPoly::one())
    } else {
        q
    }
}

/// A random nonzero reduced class of degree `d`, if that degree is nonzero.
fn random_class(a: &Analysis, r: &mut ChaCha8Rng, d: u32) -> Option<Poly> {
    let b = a.ring().degree_basis(d).ok()?;
    if b.dim() == 0 {
        return None;
    }
    let nvars = a.presentation().gens().len();
    let nparams = a.presentation().params().len();
    let mut c = Poly::zero(nvars);
    while c.is_zero() {
        for k in 0..b.dim() {
            if r.gen_bool(0.5) {
                c.add_term(b.basis_monomial(k).clone(), random_coeff(r, nparams));
            }
        }
    }
    Some(c)
}

fn nonzero_degrees(ring: &GradedRing, lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi)
        .filter(|&d| ring.degree_basis(d).is_ok_and(|b| b.dim() > 0))
        .collect()
}

/// Holds on the admissible parameter set.
fn agrees(a: &Analysis, x: &Poly, y: &Poly) -> bool {
    x.sub(y).scale(&a.admissible()).is_zero()
}

fn incomplete<T>(r: &Result<T, SqError>) -> bool {
    matches!(r, Err(SqError::TableIncomplete { .. }))
}

fn show(a: &Analysis, c: &Poly) -> String {
    a.presentation().render(c)
}

/// Sq^0 = id, Sq^d x = x^2 on degree d, Sq^n x = 0 for n > d, additivity
/// and the Cartan formula, on random classes in every corpus ring.
pub fn steenrod_axioms(min_classes: usize, seed: u64) -> Check {
    let list = analyses(false);
    let mut r = rng(seed);
    let mut tested = 0;
    let mut skipped = 0;
    while tested < min_classes {
        let a = list.choose(&mut r).expect("corpus is nonempty");
        let ring = a.ring();
        let t = a.table();
        let degs = nonzero_degrees(ring, 1, a.dim());
        let d = *degs.choose(&mut r).expect("positive degrees");
        let x = random_class(a, &mut r, d).expect("nonzero degree");
        let name = a.presentation().name();

        if sq_class(ring, t, &x, 0).map_err(|e| e.to_string())? != x {
            return Err(format!("{name}: Sq^0 {} is not the identity", show(a, &x)));
        }
        let above = r.gen_range(d + 1..=d + 8);
        let raw = sq_raw(t, &x, above);
        if !raw.as_ref().is_ok_and(|v| v.is_zero()) {
            return Err(format!(
                "{name}: Sq^{above} {} nonzero above degree",
                show(a, &x)
            ));
        }
        if 2 * d <= a.dim() {
            let top = sq_class(ring, t, &x, d);
            if incomplete(&top) {
                skipped += 1;
                continue;
            }
            let sq = ring.reduce(&(&x * &x)).map_err(|e| e.to_string())?;
            if !agrees(a, &top.map_err(|e| e.to_string())?, &sq) {
                return Err(format!(
                    "{name}: Sq^{d} {} differs from its square",
                    show(a, &x)
                ));
            }
        }

        // Additivity and Cartan with a second class.
        let rest = a.dim() - d;
        let degs2 = nonzero_degrees(ring, 1, rest);
        if let Some(&e) = degs2.choose(&mut r) {
            let n = r.gen_range(0..=(rest - e).min(d + e));
            let y = random_class(a, &mut r, e).expect("nonzero degree");
            let xy = ring.reduce(&(&x * &y)).map_err(|e| e.to_string())?;
            let lhs = sq_class(ring, t, &xy, n);
            if incomplete(&lhs) {
                skipped += 1;
                continue;
            }
            let lhs = lhs.map_err(|e| e.to_string())?;
            let mut rhs = Poly::zero(x.nvars());
            let mut gap = false;
            for i in 0..=n {
                let (p, q) = (sq_class(ring, t, &x, i), sq_class(ring, t, &y, n - i));
                if incomplete(&p) || incomplete(&q) {
                    gap = true;
                    break;
                }
                let prod = &p.map_err(|e| e.to_string())? * &q.map_err(|e| e.to_string())?;
                rhs.add_assign(&prod);
            }
            if gap {
                skipped += 1;
                continue;
            }
            let rhs = ring.reduce(&rhs).map_err(|e| e.to_string())?;
            if !agrees(a, &lhs, &rhs) {
                return Err(format!(
                    "{name}: Cartan fails for Sq^{n}({} * {})",
                    show(a, &x),
                    show(a, &y)
                ));
            }
        }
        let n = r.gen_range(0..=a.dim() - d);
        let z = random_class(a, &mut r, d).expect("nonzero degree");
        let mut sum = x.clone();
        sum.add_assign(&z);
        if let (Ok(s), Ok(mut sx), Ok(sz)) = (
            sq_class(ring, t, &sum, n),
            sq_class(ring, t, &x, n),
            sq_class(ring, t, &z, n),
        ) {
            sx.add_assign(&sz);
            if s != sx {
                return Err(format!("{name}: Sq^{n} is not additive"));
            }
        }
        tested += 1;
    }
    Ok(format!(
        "{tested} random classes, {skipped} draws skipped at table holes"
    ))
}

fn free_tables() -> Vec<(String, SquareTable)> {
    corpus::all()
        .iter()
        .map(|e| {
            let a = Analysis::new(&e.presentation, &AnalysisOptions::default())
                .expect("corpus entries analyse");
            let t = complete_table(a.ring(), Reduction::Free).expect("table completes");
            (e.name.clone(), t)
        })
        .collect()
}

/// Slot-grouped `Sq^n(g^e)` against the sum over all compositions, for
/// every generator of every corpus table, `e <= 6` and `n <= 8`; plus
/// random monomials against the per-factor Cartan expansion.
pub fn power_oracle(seed: u64) -> Check {
    let mut cases = 0;
    let mut r = rng(seed);
    for (name, t) in free_tables() {
        for g in 0..t.gens().len() {
            for e in 0..=6 {
                for n in 0..=8 {
                    let fast = sq_power(&t, g, e, n);
                    let slow = sq_power_naive(&t, g, e, n);
                    if fast != slow {
                        return Err(format!("{name}: Sq^{n} of generator {g} to the {e}"));
                    }
                    cases += 1;
                }
            }
        }
        for _ in 0..40 {
            let exps: Vec<u32> = (0..t.gens().len()).map(|_| r.gen_range(0..=3)).collect();
            let m = Monomial::from_exponents(t.gens(), exps);
            let n = r.gen_range(0..=8);
            if sq_monomial(&t, &m, n) != sq_monomial_naive(&t, &m, n) {
                return Err(format!("{name}: Sq^{n} {}", m.render(t.gens())));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases agree"))
}

/// Sq^1 is a derivation and Sq^1 Sq^1 = 0, on random classes. The latter is
/// an Adem relation, so those rings impose the Adem constraints.
pub fn sq1_checks(per_entry: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut count = 0;
    for a in analyses(true) {
        let ring = a.ring();
        let t = a.table();
        let name = a.presentation().name().to_string();
        let degs = nonzero_degrees(ring, 1, a.dim().saturating_sub(2));
        if degs.is_empty() {
            continue;
        }
        for _ in 0..per_entry {
            let d = *degs.choose(&mut r).unwrap();
            let x = random_class(&a, &mut r, d).unwrap();
            let once = sq_class(ring, t, &x, 1).map_err(|e| e.to_string())?;
            let twice = sq_class(ring, t, &once, 1).map_err(|e| e.to_string())?;
            if !agrees(&a, &twice, &Poly::zero(x.nvars())) {
                return Err(format!(
                    "{name}: Sq^1 Sq^1 {} = {}",
                    show(&a, &x),
                    show(&a, &twice)
                ));
            }
            let rest = a.dim() - d - 1;
            if let Some(&e) = nonzero_degrees(ring, 1, rest).choose(&mut r) {
                let y = random_class(&a, &mut r, e).unwrap();
                let xy = ring.reduce(&(&x * &y)).map_err(|e| e.to_string())?;
                let lhs = sq_class(ring, t, &xy, 1).map_err(|e| e.to_string())?;
                let sy = sq_class(ring, t, &y, 1).map_err(|e| e.to_string())?;
                let mut rhs = &once * &y;
                rhs.add_assign(&(&x * &sy));
                let rhs = ring.reduce(&rhs).map_err(|e| e.to_string())?;
                if !agrees(&a, &lhs, &rhs) {
                    return Err(format!(
                        "{name}: Sq^1 is not a derivation on {}",
                        show(&a, &xy)
                    ));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} classes"))
}

/// On RP^15, Sq^i x^j = C(j, i) x^(i+j) with the binomial taken mod 2 by
/// Lucas' theorem (i is a bit-subset of j).
pub fn lucas_rp15() -> Check {
    let e = corpus::builtin("RP15").map_err(|e| e.to_string())?;
    let a =
        Analysis::new(&e.presentation, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
    let gens = a.presentation().gens();
    let mut count = 0;
    for j in 0..=15u32 {
        for i in 0..=15 - j {
            let x = Poly::monomial(Monomial::generator(gens, 0).pow(j), ParamPoly::one());
            let got = sq_class(a.ring(), a.table(), &x, i).map_err(|e| e.to_string())?;
            let want = if i & j == i {
                Poly::monomial(Monomial::generator(gens, 0).pow(i + j), ParamPoly::one())
            } else {
                Poly::zero(1)
            };
            if got != want {
                return Err(format!("Sq^{i} x^{j} = {}", show(&a, &got)));
            }
            count += 1;
        }
    }
    Ok(format!("{count} squares"))
}

/// Every Wu class the tables determine satisfies its defining identity.
pub fn wu_resubstitution() -> Check {
    let mut solved = 0;
    let mut undetermined = 0;
    for a in analyses(false) {
        for i in 1..=a.dim() / 2 {
            match a.wu(i) {
                Ok(v) => {
                    if !verify_wu(a.ring(), a.table(), &v).map_err(|e| e.to_string())? {
                        return Err(format!(
                            "{}: v_{i} fails re-substitution",
                            a.presentation().name()
                        ));
                    }
                    solved += 1;
                }
                Err(OrientError::Sq(SqError::TableIncomplete { .. })) => undetermined += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!(
        "{solved} Wu classes verified, {undetermined} beyond table holes"
    ))
}

fn random_unimodular(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigInt>> {
    let mut p: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect();
    for _ in 0..(3 * n + 2) {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        match r.gen_range(0..3) {
            0 if i != j => {
                let k = BigInt::from(r.gen_range(-3..=3));
                for row in p.iter_mut() {
                    let v = &row[j] * &k;
                    row[i] += v;
                }
            }
            1 => p.swap(i, j),
            _ => {
                for row in p.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
        }
    }
    p
}

fn congruent(m: &[Vec<BigInt>], p: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut out = vec![vec![BigInt::from(0); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for k in 0..n {
                for l in 0..n {
                    *cell += &p[k][i] * &m[k][l] * &p[l][j];
                }
            }
        }
    }
    out
}

/// The signature is unchanged by `P^T M P` for random unimodular `P`.
pub fn signature_invariance(changes: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut forms = 0;
    for a in analyses(false) {
        if a.integral().is_none() {
            continue;
        }
        let (form, sig) = a.signature().map_err(|e| e.to_string())?;
        for _ in 0..changes {
            let p = random_unimodular(&mut r, form.matrix.len());
            let m2 = congruent(&form.matrix, &p);
            let s2 = form_signature(&m2).map_err(|e| e.to_string())?;
            if s2 != sig {
                return Err(format!(
                    "{}: signature changed under {p:?}",
                    a.presentation().name()
                ));
            }
        }
        forms += 1;
    }
    Ok(format!("{forms} forms x {changes} changes of basis"))
}

/// The even Euler characteristic theorem holds on every corpus entry.
pub fn parity_everywhere() -> Check {
    let mut entries = 0;
    let mut levels = 0;
    for a in analyses(false) {
        let (verdicts, _) = a.ladder();
        let report = a.parity(&verdicts);
        if !report.consistent {
            return Err(format!("{}: {report:?}", a.presentation().name()));
        }
        levels += report.entries.len();
        entries += 1;
    }
    Ok(format!("{entries} entries, {levels} levels"))
}

/// The Wu-side and Stiefel-Whitney-side verdicts agree at every decided
/// level. The two are equivalent through Adem relations, so the tables are
/// taken with the Adem constraints imposed.
pub fn wu_sw_agreement() -> Check {
    let mut levels = 0;
    for a in analyses(true) {
        let (verdicts, _) = a.ladder();
        for v in &verdicts {
            let w = orientability_verdict_w(a.ring(), a.table(), v.k, &a.admissible())
                .map_err(|e| e.to_string())?;
            if w.status != v.status || w.conditions != v.conditions {
                return Err(format!(
                    "{}: Wu and SW sides disagree at k={}",
                    a.presentation().name(),
                    v.k
                ));
            }
            levels += 1;
        }
    }
    Ok(format!("{levels} levels agree"))
}
