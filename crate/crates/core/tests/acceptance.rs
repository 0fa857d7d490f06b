//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach stdout.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use equideg::chars::{induce, restrict, SubgroupTable, VirtualCharacter};
use equideg::cyclo::CyclotomicNumber as Cyclo;
use equideg::eulerchar::{chi_p1, chi_p1_cech_oracle};
use equideg::groups::{group_from_permutations, Subgroup};
use equideg::linalg::Matrix;
use equideg::localdeg::{derived_point_pushforward, DerivedPointDatum};
use equideg::par;
use equideg::pipeline::input::load_hints;
use equideg::pipeline::{equivariant_euler_number, AnswerJson, ProblemSpec, SelfIntProblem};
use equideg::polysolve::{default_vars, parse_poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn load(name: &str) -> ProblemSpec {
    ProblemSpec::load(&spec_path(name)).unwrap()
}

fn a4_problem() -> ProblemSpec {
    load("a4.json").with_hints(&load_hints(&spec_path("a4_hints.json")).unwrap()).unwrap()
}

fn timed(spec: &ProblemSpec, limit: Duration, expected: &[i64]) -> Outcome {
    let start = Instant::now();
    let a = equivariant_euler_number(spec).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(a.value.coeffs() == expected, format!("got {:?}, expected {expected:?}", a.value.coeffs()))?;
    ensure(AnswerJson::new(spec, &a).all_certificates_hold(), "a certificate failed")?;
    ensure(elapsed < limit, format!("took {elapsed:?}"))?;
    Ok(format!("{} = {:?} in {:.1?}", a.value, a.value.coeffs(), elapsed))
}

fn criterion1() -> Outcome {
    timed(&load("z4.json"), Duration::from_secs(10), &[1, 1, 1, 1])
}

fn criterion2() -> Outcome {
    let spec = a4_problem();
    let t = &spec.table;
    let mut expected = vec![0; t.num_classes()];
    expected[0] = 1;
    expected[(0..t.num_classes()).find(|&i| t.degree(i) == 3).unwrap()] = 1;
    timed(&spec, Duration::from_secs(30), &expected)
}

fn criterion3() -> Outcome {
    let spec = load("z3.json");
    let a = equivariant_euler_number(&spec).map_err(|e| e.to_string())?;
    ensure(a.value.coeffs() == [2, 1, 1], format!("value {:?}", a.value.coeffs()))?;
    ensure(a.orbits.len() == 2, "expected two orbits")?;
    let omega = Cyclo::zeta(3);
    for o in &a.orbits {
        ensure(o.orbit_size == 1 && o.stabilizer.is_whole() && o.multiplicity == 2, "expected fixed double points")?;
        // χ(g) = ω for the generator; [1 : ω : ω²] carries 1 + χ, its conjugate 1 + χ².
        let expected: &[i64] = if o.representative.coords()[1] == omega { &[1, 1, 0] } else { &[1, 0, 1] };
        ensure(o.local_degree.local_character.coeffs() == expected, format!("local degree at {}", o.representative))?;
    }
    Ok(format!("{} with local degrees 1 + chi1 and 1 + chi2 at two fixed double points", a.value))
}

/// The literal data cannot form an equivariant conic; see the notes below.
fn criterion4() -> Outcome {
    let report = SelfIntProblem::load(&spec_path("z3_non_lci_selfint.json")).and_then(|p| p.run()).map_err(|e| e.to_string())?;
    let agrees = report.section_independence.as_ref().is_some_and(|s| s.agrees);
    ensure(report.value.coeffs == [2, 1, 1] && agrees, format!("value {:?}", report.value.coeffs))?;
    Ok("1 + rho, matching the transverse answer".into())
}

/// Facts behind the red criterion 4, checked independently of `selfint`.
fn criterion4_analysis() -> Result<Vec<String>, String> {
    let mut notes = Vec::new();
    let v = default_vars(3);
    let q = parse_poly("x0^2 + x1^2 - x2^2", &v).unwrap();
    let rows = |r: Vec<Vec<i64>>| Matrix::from_rows(&r.into_iter().map(|row| row.into_iter().map(Cyclo::from_int).collect()).collect::<Vec<_>>(), 1);
    let cyc = rows(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let moved = q.linear_substitute(&cyc);
    let stable = [-1i64, 1].iter().any(|&c| moved == q.scale(&Cyclo::from_int(c)));
    ensure(!stable, "the conic turned out to be stable")?;
    notes.push(format!("x^2+y^2-z^2 under [x:y:z] -> [z:x:y] becomes {moved}, not a multiple"));
    let m = rows(vec![vec![1, 1], vec![-1, 1]]);
    let scalar = |k: usize| {
        let p = m.pow(k);
        p.get(0, 1).is_zero() && p.get(1, 0).is_zero() && p.get(0, 0) == p.get(1, 1)
    };
    ensure(!scalar(3) && scalar(4), "unexpected projective order")?;
    notes.push("[s:t] -> [s+t:t-s] has projective order 4, so it induces no C3 action".into());
    Ok(notes)
}

fn criterion4_companion() -> Outcome {
    let report = SelfIntProblem::load(&spec_path("z3_conic_selfint.json")).and_then(|p| p.run()).map_err(|e| e.to_string())?;
    let s = report.section_independence.as_ref().ok_or("no comparison")?;
    ensure(report.value.coeffs == [2, 1, 1] && s.agrees, format!("value {:?}", report.value.coeffs))?;
    Ok("invariant conic x^2+y^2+z^2: self-intersection 1 + rho, equal to the answer of criterion 3".into())
}

fn criterion5() -> Outcome {
    let c4 = cyclic_table(4);
    let e = SubgroupTable::new(Subgroup::trivial(c4.group().clone())).map_err(|e| e.to_string())?;
    ensure(induce(&e, &VirtualCharacter::trivial(e.table().clone()), &c4).unwrap() == VirtualCharacter::regular(c4.clone()), "Ind_e^C4 1")?;

    let a4 = table_of_perms(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
    let g = a4.group().clone();
    let three = (0..g.size()).find(|&x| g.element_order(x) == 3).unwrap();
    let a3 = SubgroupTable::new(Subgroup::generated(g, &[three])).unwrap();
    let ind = induce(&a3, &VirtualCharacter::trivial(a3.table().clone()), &a4).unwrap();
    let w = (0..a4.num_classes()).find(|&i| a4.degree(i) == 3).unwrap();
    ensure(ind == VirtualCharacter::trivial(a4.clone()).add(&VirtualCharacter::irreducible(a4.clone(), w)), "Ind_A3^A4 1")?;

    let tables = [c4, cyclic_table(6), table_of_perms(&[vec![1, 0, 2], vec![1, 2, 0]]), a4];
    for t in &tables {
        let whole = SubgroupTable::whole(t.clone());
        for i in 0..t.num_classes() {
            let chi = VirtualCharacter::irreducible(t.clone(), i);
            ensure(induce(&whole, &chi, t).unwrap() == chi, "Ind_G^G")?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random = |t: &std::sync::Arc<equideg::chars::CharacterTable>, rng: &mut ChaCha8Rng| {
        VirtualCharacter::new(t.clone(), (0..t.num_classes()).map(|_| rng.gen_range(-3..=3)).collect()).unwrap()
    };
    for trial in 0..50 {
        let t = &tables[trial % 4];
        let g = t.group().clone();
        let gens: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..g.size())).collect();
        let h = SubgroupTable::new(Subgroup::generated(g, &gens)).unwrap();
        let chi = random(h.table(), &mut rng);
        let psi = random(t, &mut rng);
        let left = t.inner(induce(&h, &chi, t).unwrap().expand().values(), psi.expand().values());
        let right = h.table().inner(chi.expand().values(), restrict(&psi, &h).unwrap().expand().values());
        ensure(left == right, format!("Frobenius reciprocity, trial {trial}"))?;
    }
    Ok("Ind_e^C4 1 = regular, Ind_A3^A4 1 = 1 + W, Ind_G^G = id, reciprocity on 50 random triples".into())
}

fn criterion6() -> Outcome {
    let tables = [cyclic_table(3), cyclic_table(4), table_of_perms(&[vec![1, 0, 2], vec![1, 2, 0]]), table_of_perms(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..20 {
        let t = &tables[trial % tables.len()];
        let class = VirtualCharacter::new(t.clone(), (0..t.num_classes()).map(|_| rng.gen_range(-4..=4)).collect()).unwrap();
        let h = rng.gen_range(0..4u32);
        let out = derived_point_pushforward(&DerivedPointDatum { h_minus_one_dim: h, classical_class: class.clone() });
        ensure(if h == 0 { out == class } else { out.is_zero() }, format!("trial {trial} with h = {h}"))?;
    }
    Ok("20 random classes: zero for h >= 1, identity for h = 0".into())
}

fn criterion7() -> Outcome {
    let mut reps = 0;
    for n in [2usize, 3, 4, 6] {
        for rotation in [false, true] {
            for (a, b) in [(1, 0), (1, 2)] {
                let v = two_dim_rep(n, a, b, rotation);
                reps += 1;
                for d in -8..=8 {
                    ensure(chi_p1(&v, d).unwrap() == chi_p1_cech_oracle(&v, d).unwrap(), format!("chi_P1 on C{n}, d = {d}"))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut form = || loop {
        let l = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if l != [0, 0, 0] {
            return l;
        }
    };
    let mut systems = 0;
    let mut per_group = [0; 3];
    while per_group.iter().any(|&c| c < 8) {
        let m = 2 + per_group.iter().position(|&c| c < 8).unwrap();
        let extra = if m == 2 && systems % 2 == 0 { Some(form()) } else { None };
        if check_random_system(m, form(), form(), extra)? {
            per_group[m - 2] += 1;
            systems += 1;
        }
    }
    let mut tables = 0;
    for perms in [vec![vec![1, 0, 2, 3]], vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]], vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]], vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]] {
        let (g, _) = group_from_permutations(&perms).unwrap();
        let t = equideg::chars::character_table(std::sync::Arc::new(g)).unwrap();
        ensure(t.verify_orthogonality(), "table orthogonality")?;
        tables += 1;
    }
    for n in 1..=12 {
        ensure(cyclic_table(n).verify_orthogonality(), "table orthogonality")?;
        tables += 1;
    }
    Ok(format!(
        "chi_P1 = Cech on {reps} reps for d in [-8, 8]; {systems} random invariant systems over C2, C3, C4 (Bezout sum, commuting operators, mult 1 iff invertible Jacobian, oracles); {tables} orthogonal tables"
    ))
}

fn cli_json(args: &[&str], out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_equideg")).args(args).arg("--json").arg(out).output().map_err(|e| e.to_string())?;
    ensure(status.status.success(), format!("equideg {args:?} exited with {}", status.status))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn criterion8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (spec, hints) in [("z4.json", None), ("a4.json", Some("a4_hints.json")), ("z3.json", None)] {
        let problem = match hints {
            Some(_) => a4_problem(),
            None => load(spec),
        };
        let render = || AnswerJson::new(&problem, &equivariant_euler_number(&problem).unwrap()).to_pretty();
        let first = render();
        ensure(render() == first, format!("{spec}: repeated run differs"))?;
        par::set_sequential(true);
        let sequential = render();
        par::set_sequential(false);
        ensure(sequential == first, format!("{spec}: sequential run differs"))?;
        let path = spec_path(spec);
        let mut args = vec!["compute", path.to_str().unwrap()];
        let hint_path = hints.map(spec_path);
        if let Some(h) = &hint_path {
            args.extend(["--hints", h.to_str().unwrap()]);
        }
        for round in 0..2 {
            let bytes = cli_json(&args, &dir.path().join(format!("{spec}.{round}")))?;
            ensure(bytes == first.as_bytes(), format!("{spec}: command line output differs"))?;
        }
        checked += 1;
    }
    let selfint = spec_path("z3_conic_selfint.json");
    let a = cli_json(&["selfint", selfint.to_str().unwrap()], &dir.path().join("s0"))?;
    let b = cli_json(&["selfint", selfint.to_str().unwrap()], &dir.path().join("s1"))?;
    ensure(a == b, "selfint output differs")?;
    Ok(format!("{} specs byte-identical across repeated, sequential and command line runs", checked + 1))
}

fn main() {
    // Criterion 4 is red on the literal data for the reasons printed below.
    const KNOWN_RED: &[usize] = &[4];
    let criteria: [(usize, &str, fn() -> Outcome); 8] = [
        (1, "Z4 conic and line pair", criterion1),
        (2, "A4 with hints", criterion2),
        (3, "Z3 over Q(zeta3)", criterion3),
        (4, "Z3_non_lci selfint and section independence", criterion4),
        (5, "transfers", criterion5),
        (6, "derived point pushforward", criterion6),
        (7, "property suites", criterion7),
        (8, "deterministic JSON", criterion8),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (n, name, f) in criteria {
        match f() {
            Ok(detail) => {
                println!("criterion {n} PASS  {name}: {detail}");
                passed += 1;
                if KNOWN_RED.contains(&n) {
                    unexpected.push(format!("criterion {n} passed but is recorded as red"));
                }
            }
            Err(why) => {
                println!("criterion {n} FAIL  {name}: {why}");
                if !KNOWN_RED.contains(&n) {
                    unexpected.push(format!("criterion {n}: {why}"));
                }
            }
        }
        if n == 4 {
            match criterion4_analysis() {
                Ok(notes) => notes.iter().for_each(|l| println!("            analysis: {l}")),
                Err(e) => unexpected.push(format!("criterion 4 analysis: {e}")),
            }
            match criterion4_companion() {
                Ok(detail) => println!("            companion PASS: {detail}"),
                Err(e) => {
                    println!("            companion FAIL: {e}");
                    unexpected.push(format!("criterion 4 companion: {e}"));
                }
            }
        }
    }
    println!("{passed}/8 criteria pass");
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("unexpected: {u}");
        }
        std::process::exit(1);
    }
}
