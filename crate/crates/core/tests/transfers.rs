mod common;

use common::*;
use equideg::chars::{induce, restrict, SubgroupTable, VirtualCharacter};
use equideg::groups::Subgroup;
use equideg::pipeline::{equivariant_euler_number, report::AnswerJson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::sync::Arc;

#[test]
fn conjugate_points_swapped_by_the_group_give_the_regular_rep() {
    // x1 -> -x1 on P^2; zeros [1 : ±i : 1] are swapped both by G and by Galois.
    let (group, action) = cyclic_setting(2);
    let spec = problem(json!({
        "ambientDim": 2, "cyclotomicOrder": 4, "baseField": "Q",
        "group": group, "actionMatrices": action,
        "bundleDegrees": [2, 1], "sections": ["x1^2 + x2^2", "x0 - x2"]
    }));
    let a = equivariant_euler_number(&spec).unwrap();
    assert_eq!(a.value.coeffs(), &[1, 1]);
    assert_eq!(a.orbits.len(), 1);
    let o = &a.orbits[0];
    assert_eq!((o.orbit_size, o.residue_degree, o.multiplicity), (1, 2, 1));
    assert_eq!(a.value, permutation_oracle(&spec, &a));
    assert_eq!(a.value, algebra_trace_oracle(&spec, 2).unwrap());
}

#[test]
fn galois_orbits_over_q_and_over_k_agree() {
    let (group, action) = cyclic_setting(4);
    for base in ["Q", "full"] {
        let spec = problem(json!({
            "ambientDim": 2, "cyclotomicOrder": 8, "baseField": base,
            "group": group, "actionMatrices": action,
            "bundleDegrees": [2, 2], "sections": ["x0^2 + x1^2 - 2*x2^2", "x0*x1"]
        }));
        let a = equivariant_euler_number(&spec).unwrap();
        assert_eq!(a.value.coeffs(), &[1, 1, 1, 1], "base {base}");
        assert_eq!(a.value, permutation_oracle(&spec, &a));
        assert_eq!(a.value, algebra_trace_oracle(&spec, 4).unwrap());
        let json = AnswerJson::new(&spec, &a);
        assert!(json.all_certificates_hold());
    }
}

#[test]
fn fixed_conjugate_double_points_over_q() {
    let spec = problem(json!({
        "ambientDim": 2, "cyclotomicOrder": 3, "baseField": "Q",
        "group": {"permutations": [[1, 2, 0]]},
        "actionMatrices": [[[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
        "bundleDegrees": [2, 2], "sections": ["x0^2 + x1^2 + x2^2", "x0*x1 + x0*x2 + x1*x2"]
    }));
    let a = equivariant_euler_number(&spec).unwrap();
    assert_eq!(a.orbits.len(), 1);
    assert_eq!(a.orbits[0].residue_degree, 2);
    assert_eq!(a.value.coeffs(), &[2, 1, 1]);
    assert_eq!(a.value, algebra_trace_oracle(&spec, 4).unwrap());
}

#[test]
fn induction_identities() {
    let c4 = cyclic_table(4);
    let e = SubgroupTable::new(Subgroup::trivial(c4.group().clone())).unwrap();
    let one_e = VirtualCharacter::trivial(e.table().clone());
    assert_eq!(induce(&e, &one_e, &c4).unwrap(), VirtualCharacter::regular(c4.clone()));

    let a4 = table_of_perms(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
    let g = a4.group().clone();
    let three_cycle = (0..g.size()).find(|&x| g.element_order(x) == 3).unwrap();
    let a3 = SubgroupTable::new(Subgroup::generated(g.clone(), &[three_cycle])).unwrap();
    let ind = induce(&a3, &VirtualCharacter::trivial(a3.table().clone()), &a4).unwrap();
    let w = (0..a4.num_classes()).find(|&i| a4.degree(i) == 3).unwrap();
    let mut expected = vec![0; a4.num_classes()];
    expected[0] = 1;
    expected[w] = 1;
    assert_eq!(ind.coeffs(), expected.as_slice());

    for t in [c4, a4] {
        let whole = SubgroupTable::whole(t.clone());
        for i in 0..t.num_classes() {
            let chi = VirtualCharacter::irreducible(t.clone(), i);
            assert_eq!(induce(&whole, &chi, &t).unwrap(), chi);
        }
    }
}

fn random_virtual(t: &Arc<equideg::chars::CharacterTable>, rng: &mut ChaCha8Rng) -> VirtualCharacter {
    VirtualCharacter::new(t.clone(), (0..t.num_classes()).map(|_| rng.gen_range(-3..=3)).collect()).unwrap()
}

#[test]
fn frobenius_reciprocity_on_random_triples() {
    let tables = [
        cyclic_table(4),
        cyclic_table(6),
        table_of_perms(&[vec![1, 0, 2], vec![1, 2, 0]]),
        table_of_perms(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..50 {
        let t = &tables[trial % tables.len()];
        let g = t.group().clone();
        let gens: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..g.size())).collect();
        let h = SubgroupTable::new(Subgroup::generated(g, &gens)).unwrap();
        let chi = random_virtual(h.table(), &mut rng);
        let psi = random_virtual(t, &mut rng);
        let left = t.inner(induce(&h, &chi, t).unwrap().expand().values(), psi.expand().values());
        let right = h.table().inner(chi.expand().values(), restrict(&psi, &h).unwrap().expand().values());
        assert_eq!(left, right, "trial {trial}");
    }
}
