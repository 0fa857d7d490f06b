#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use equideg::chars::{character_table, decompose, CharacterTable, ClassFunction, VirtualCharacter};
use equideg::cyclo::CyclotomicNumber as Cyclo;
use equideg::groups::{group_from_permutations, FiniteGroup};
use equideg::linalg::Matrix;
use equideg::eulerchar::TwoDimRep;
use equideg::localdeg::pullback_trace;
use equideg::pipeline::{EquivariantAnswer, ProblemSpec};
use equideg::polysolve::{QuotientAlgebra, ZeroDatum};
use serde_json::{json, Value};

pub fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

pub fn problem(v: Value) -> ProblemSpec {
    ProblemSpec::from_json(serde_json::from_value(v).expect("problem json")).expect("valid problem")
}

pub fn try_problem(v: Value) -> equideg::error::Result<ProblemSpec> {
    ProblemSpec::from_json(serde_json::from_value(v)?)
}

/// The rational actions used by the random-system suites.
pub fn cyclic_setting(m: usize) -> (Value, Value) {
    match m {
        2 => (json!({"permutations": [[1, 0]]}), json!([[[1, 0, 0], [0, -1, 0], [0, 0, 1]]])),
        3 => (json!({"permutations": [[1, 2, 0]]}), json!([[[0, 0, 1], [1, 0, 0], [0, 1, 0]]])),
        4 => (json!({"permutations": [[1, 2, 3, 0]]}), json!([[[0, -1, 0], [1, 0, 0], [0, 0, 1]]])),
        _ => panic!("unsupported cyclic setting"),
    }
}

pub fn table_of_perms(perms: &[Vec<usize>]) -> Arc<CharacterTable> {
    let (g, _) = group_from_permutations(perms).unwrap();
    Arc::new(character_table(Arc::new(g)).unwrap())
}

pub fn cyclic_table(n: usize) -> Arc<CharacterTable> {
    Arc::new(character_table(Arc::new(FiniteGroup::cyclic(n))).unwrap())
}

/// Character of G on the whole coordinate ring K[x]/I of one chart that
/// contains every zero, computed without locating or splitting points.
pub fn algebra_trace_oracle(spec: &ProblemSpec, bezout: usize) -> Option<VirtualCharacter> {
    let n = spec.sections.len();
    for c in 0..=n {
        let deh: Vec<_> = spec.sections.iter().map(|s| s.dehomogenize(c)).collect();
        let alg = QuotientAlgebra::new(&deh, n, c).ok()?;
        if alg.dim() != bezout {
            continue;
        }
        let d = alg.dim();
        let mut unit = vec![Cyclo::zero(1); d];
        unit[alg.unit_index()] = Cyclo::from_int(1);
        let whole = ZeroDatum {
            point: spec.hints.first().cloned().unwrap_or_else(|| equideg::groups::ProjPoint::new(vec![Cyclo::from_int(1); n + 1]).unwrap()),
            chart: c,
            multiplicity: d,
            monomials: Arc::new(alg.basis().to_vec()),
            local_basis: Matrix::identity(d, alg.order()),
            local_ops: alg.multiplication_matrices().to_vec(),
            unit,
        };
        let t = &spec.table;
        let values = (0..t.num_classes())
            .map(|k| pullback_trace(&whole, spec.action.matrix(t.representative(k)), &spec.sections).unwrap())
            .collect();
        return Some(decompose(&ClassFunction::new(t.clone(), values).unwrap(), t).unwrap());
    }
    None
}

/// For reduced zero schemes: the permutation character of G on the K-points.
pub fn permutation_oracle(spec: &ProblemSpec, answer: &EquivariantAnswer) -> VirtualCharacter {
    let t = &spec.table;
    let values = (0..t.num_classes())
        .map(|k| {
            let g = t.representative(k);
            let fixed = answer.zeros.points.iter().filter(|z| spec.action.apply(g, &z.point) == z.point).count();
            Cyclo::from_int(fixed as i64)
        })
        .collect();
    decompose(&ClassFunction::new(t.clone(), values).unwrap(), t).unwrap()
}

/// Σ_g ℓ∘M_g-style norm: the product of the G-translates of a linear form.
pub fn norm_form(coeffs: [i64; 3], m: usize) -> String {
    let mut l = coeffs;
    let mut factors = Vec::new();
    for _ in 0..m {
        factors.push(format!("({}*x0 + {}*x1 + {}*x2)", l[0], l[1], l[2]));
        l = translate(l, m);
    }
    factors.join("*")
}

/// ℓ∘M for the generator matrix M of `cyclic_setting(m)`.
fn translate(l: [i64; 3], m: usize) -> [i64; 3] {
    match m {
        // x1 -> -x1
        2 => [l[0], -l[1], l[2]],
        // (x0, x1, x2) -> (x2, x0, x1)
        3 => [l[1], l[2], l[0]],
        // (x0, x1) -> (-x1, x0)
        4 => [l[1], -l[0], l[2]],
        _ => unreachable!(),
    }
}

/// Runs one random invariant system built from norms of linear forms and
/// checks every law that must hold for it. `Ok(false)` means the system was
/// degenerate (a shared component) and was skipped.
pub fn check_random_system(m: usize, l1: [i64; 3], l2: [i64; 3], extra: Option<[i64; 3]>) -> Result<bool, String> {
    use equideg::error::Error;
    use equideg::pipeline::{equivariant_euler_number, report::AnswerJson};
    use equideg::polysolve::jacobian_is_invertible;

    let (group, action) = cyclic_setting(m);
    let s1 = norm_form(l1, m);
    let mut s2 = norm_form(l2, m);
    let mut d2 = m as u32;
    if let Some(l3) = extra {
        s2 = format!("{s2}*{}", norm_form(l3, m));
        d2 *= 2;
    }
    let spec = problem(json!({
        "ambientDim": 2, "cyclotomicOrder": m, "baseField": "Q",
        "group": group, "actionMatrices": action,
        "bundleDegrees": [m, d2], "sections": [s1, s2]
    }));
    let a = match equivariant_euler_number(&spec) {
        Err(Error::ZerosNotIsolated { .. }) => return Ok(false),
        Err(e) => return Err(format!("{s1}, {s2}: {e}")),
        Ok(a) => a,
    };
    let fail = |what: &str| Err(format!("{s1}, {s2}: {what}"));
    let bezout = (m as u32 * d2) as u64;
    if a.bezout_sum() != bezout || a.value.dimension() != bezout as i64 {
        return fail("Bezout sum");
    }
    if !AnswerJson::new(&spec, &a).all_certificates_hold() {
        return fail("certificates");
    }
    for z in &a.zeros.points {
        if jacobian_is_invertible(&spec.sections, &z.point).unwrap() != (z.multiplicity == 1) {
            return fail("multiplicity one versus Jacobian");
        }
        if !z.point.coords().iter().all(|c| c.is_rational()) {
            return fail("irrational zero");
        }
    }
    if a.zeros.points.iter().all(|z| z.multiplicity == 1) && a.value != permutation_oracle(&spec, &a) {
        return fail("permutation character");
    }
    if let Some(oracle) = algebra_trace_oracle(&spec, bezout as usize) {
        if a.value != oracle {
            return fail("algebra trace");
        }
    }
    for c in 0..3 {
        let deh: Vec<_> = spec.sections.iter().map(|s| s.dehomogenize(c)).collect();
        if !QuotientAlgebra::new(&deh, 2, c).unwrap().operators_commute() {
            return fail("multiplication operators do not commute");
        }
    }
    Ok(true)
}

/// A two-dimensional representation of C_n: diagonal ζ^a, ζ^b, or an integer rotation.
pub fn two_dim_rep(n: usize, a: i64, b: i64, rotation: bool) -> TwoDimRep {
    let t = Arc::new(character_table(Arc::new(FiniteGroup::cyclic(n))).unwrap());
    let z = |k| Cyclo::zeta_pow(n as u32, k);
    let o = |k: i64| Cyclo::from_int(k);
    let m = if rotation {
        // integer matrices of order n for n = 2, 3, 4, 6
        match n {
            2 => vec![vec![o(0), o(1)], vec![o(1), o(0)]],
            3 => vec![vec![o(0), o(-1)], vec![o(1), o(-1)]],
            4 => vec![vec![o(0), o(-1)], vec![o(1), o(0)]],
            6 => vec![vec![o(1), o(-1)], vec![o(1), o(0)]],
            _ => vec![vec![z(a), o(0)], vec![o(0), z(b)]],
        }
    } else {
        vec![vec![z(a), o(0)], vec![o(0), z(b)]]
    };
    TwoDimRep::from_generators(t, vec![Matrix::from_rows(&m, n as u32)]).unwrap()
}
