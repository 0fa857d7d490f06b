//! The equivariant Bézout computation end to end: invariance, zero locus,
//! orbits, local degrees and transfers, plus the report that exhibits each step.

pub mod input;
pub mod report;
pub mod selfint;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::chars::{decompose, field_restrict_scalars, induce, ClassFunction, SubgroupTable, VirtualCharacter};
use crate::cyclo::{lcm_order, CyclotomicNumber as Cyclo, SubfieldSpec};
use crate::error::{Error, Result};
use crate::groups::{orbit_and_stabilizer, ProjPoint, Subgroup};
use crate::localdeg::{local_degree, pullback_trace, LocalDegree};
use crate::par;
use crate::polysolve::{buchberger, find_zeros, jacobian_is_invertible, normal_form, ZeroDatum, ZeroSet};

pub use input::{load_group, ProblemJson, ProblemSpec};
pub use report::{human_report, AnswerJson, InvarianceJson};
pub use selfint::{SelfIntJson, SelfIntProblem, SelfIntReport};

/// Linearization data of one section: λ_g with s∘M_g = λ_g·s, when it exists.
#[derive(Clone, Debug)]
pub struct SectionCharacter {
    pub semi_invariant: bool,
    /// The map g ↦ λ_g as a character of G, when the λ_g are multiplicative.
    pub character: Option<VirtualCharacter>,
    pub scalars: Option<Vec<Cyclo>>,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub sections: Vec<SectionCharacter>,
    pub semi_invariant: bool,
    pub ideal_stable: bool,
}

fn ratio(a: &crate::polysolve::MultiPoly, b: &crate::polysolve::MultiPoly) -> Option<Cyclo> {
    let (m, cb) = b.leading()?;
    let ca = a.coefficient(m)?;
    let l = ca * &cb.inv().ok()?;
    (*a == b.scale(&l)).then_some(l)
}

/// Semi-invariance of every section and G-stability of the ideal they generate.
pub fn check_invariance(spec: &ProblemSpec) -> Result<InvarianceReport> {
    let group = spec.action.group().clone();
    let gb = buchberger(&spec.sections);
    let mut ideal_stable = true;
    let mut sections = Vec::with_capacity(spec.sections.len());
    let pulled: Vec<Vec<crate::polysolve::MultiPoly>> =
        par::map(&spec.sections, |s| (0..group.size()).map(|g| s.linear_substitute(spec.action.matrix(g))).collect());
    for (s, images) in spec.sections.iter().zip(&pulled) {
        let scalars: Option<Vec<Cyclo>> = images.iter().map(|img| ratio(img, s)).collect();
        for img in images {
            if !normal_form(img, &gb).is_zero() {
                ideal_stable = false;
            }
        }
        let character = match &scalars {
            Some(l) => {
                let multiplicative = (0..group.size()).all(|a| (0..group.size()).all(|b| l[group.mul(a, b)] == &l[a] * &l[b]));
                if multiplicative {
                    let values = (0..spec.table.num_classes()).map(|k| l[spec.table.representative(k)].clone()).collect();
                    Some(decompose(&ClassFunction::new(spec.table.clone(), values)?, &spec.table)?)
                } else {
                    None
                }
            }
            None => None,
        };
        sections.push(SectionCharacter { semi_invariant: scalars.is_some(), character, scalars });
    }
    let semi_invariant = sections.iter().all(|s| s.semi_invariant);
    Ok(InvarianceReport { sections, semi_invariant, ideal_stable })
}

/// Errors unless every section is semi-invariant or the ideal is stable and the override is set.
pub fn require_invariance(spec: &ProblemSpec, inv: &InvarianceReport) -> Result<()> {
    if inv.semi_invariant {
        return Ok(());
    }
    if inv.ideal_stable && spec.allow_ideal_stable {
        return Ok(());
    }
    let group = spec.action.group();
    for (i, s) in spec.sections.iter().enumerate() {
        for g in 0..group.size() {
            if ratio(&s.linear_substitute(spec.action.matrix(g)), s).is_none() {
                return Err(Error::NotSemiInvariant { section: i, element: g, ideal_stable: inv.ideal_stable });
            }
        }
    }
    unreachable!("some section failed semi-invariance")
}

/// One G-orbit of closed points of the zero locus over k.
#[derive(Clone, Debug)]
pub struct OrbitContribution {
    pub representative: ProjPoint,
    /// Number of closed points in the G-orbit.
    pub orbit_size: usize,
    /// K-points lying over the orbit, sorted.
    pub geometric_points: Vec<ProjPoint>,
    pub stabilizer: Subgroup,
    pub residue_field: SubfieldSpec,
    pub residue_degree: u32,
    pub multiplicity: usize,
    pub jacobian_invertible: bool,
    pub local_degree: LocalDegree,
    /// The Galois elements over k that move the representative within its G-orbit.
    pub galois_stabilizer: Vec<u32>,
    pub induced: VirtualCharacter,
    pub transferred: VirtualCharacter,
}

#[derive(Clone, Debug)]
pub struct EquivariantAnswer {
    pub value: VirtualCharacter,
    pub orbits: Vec<OrbitContribution>,
    pub invariance: InvarianceReport,
    pub zeros: ZeroSet,
    /// Σ_{x fixed by g} tr(g* | A_x) over all geometric zeros, decomposed.
    pub global_trace: VirtualCharacter,
}

impl EquivariantAnswer {
    pub fn bezout_number(&self) -> u64 {
        self.zeros.bezout
    }

    pub fn bezout_sum(&self) -> u64 {
        self.orbits.iter().map(|o| (o.orbit_size * o.residue_degree as usize * o.multiplicity) as u64).sum()
    }
}

/// Orbits of the K-points under G × Gal(K/k), each sorted, ordered by least point.
fn combined_orbits(spec: &ProblemSpec, points: &[ProjPoint]) -> Result<Vec<Vec<ProjPoint>>> {
    let galois: Vec<u32> = spec.base_field.fixing_subgroup().to_vec();
    // Everything is compared inside Q(ζ_N) so that the ordering is one total order.
    let n = spec.order;
    let mut remaining: BTreeSet<ProjPoint> = points.iter().map(|p| p.lift(n)).collect();
    let mut out = Vec::new();
    while let Some(start) = remaining.iter().next().cloned() {
        let mut orbit: BTreeSet<ProjPoint> = BTreeSet::from([start.clone()]);
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            let mut next: Vec<ProjPoint> = spec.action.group().generators().iter().map(|&g| spec.action.apply(g, &x).lift(n)).collect();
            for &s in &galois {
                next.push(x.galois(s)?.lift(n));
            }
            for y in next {
                if !remaining.contains(&y) {
                    return Err(Error::NotGStable { element: 0, point: y.to_string() });
                }
                if orbit.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        for y in &orbit {
            remaining.remove(y);
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

fn stabilizer_table(spec: &ProblemSpec, stab: Subgroup) -> Result<SubgroupTable> {
    if stab.is_whole() {
        Ok(SubgroupTable::whole(spec.table.clone()))
    } else {
        SubgroupTable::new(stab)
    }
}

fn orbit_contribution(spec: &ProblemSpec, zeros: &ZeroSet, geometric: Vec<ProjPoint>) -> Result<OrbitContribution> {
    let x = geometric[0].clone();
    let zd: &ZeroDatum = zeros.points.iter().find(|z| z.point == x).expect("orbit points come from the zero set");
    let (g_orbit, stab) = orbit_and_stabilizer(&spec.action, &x);
    let mut g_orbit: Vec<ProjPoint> = g_orbit.iter().map(|p| p.lift(spec.order)).collect();
    g_orbit.sort();
    let stab_table = stabilizer_table(spec, stab.clone())?;
    let ld = local_degree(zd, &spec.action, &stab_table, &spec.sections, &spec.base_field)?;
    let n = spec.order;
    let k = &spec.base_field;
    let residue_field = x.residue_field(k)?;
    let residue_degree = residue_field.relative_degree(k)?;
    // Γ_x = {σ ∈ Gal(K/k) : σx ∈ G·x}; the G-orbits inside the combined orbit are indexed by Gal/Γ_x.
    let mut gamma = Vec::new();
    for &s in k.fixing_subgroup() {
        if g_orbit.binary_search(&x.galois(s)?.lift(n)).is_ok() {
            gamma.push(s);
        }
    }
    let induced = induce(&stab_table, &ld.local_character, &spec.table)?;
    let m = lcm_order(n, spec.table.order())?;
    let l_prime = SubfieldSpec::new(n, gamma.clone())?.lift(m);
    let transferred = field_restrict_scalars(&induced, &l_prime, &k.lift(m))?;
    let closed_points = geometric.len() / residue_degree as usize;
    Ok(OrbitContribution {
        representative: x.clone(),
        orbit_size: closed_points,
        geometric_points: geometric,
        stabilizer: stab,
        residue_field,
        residue_degree,
        multiplicity: zd.multiplicity,
        jacobian_invertible: jacobian_is_invertible(&spec.sections, &x)?,
        local_degree: ld,
        galois_stabilizer: gamma,
        induced,
        transferred,
    })
}

/// Global character of G on ⊕_x A_x over all geometric zeros, computed from
/// fixed points only (no induction or field traces involved).
fn global_trace(spec: &ProblemSpec, zeros: &ZeroSet) -> Result<VirtualCharacter> {
    let t = &spec.table;
    let values = par::try_map(&(0..t.num_classes()).collect::<Vec<_>>(), |&k| -> Result<Cyclo> {
        let g = t.representative(k);
        let m = spec.action.matrix(g);
        let mut acc = Cyclo::zero(1);
        for z in &zeros.points {
            if spec.action.apply(g, &z.point) == z.point {
                acc += &pullback_trace(z, m, &spec.sections)?;
            }
        }
        Ok(acc)
    })?;
    decompose(&ClassFunction::new(t.clone(), values)?, t)
}

/// The equivariant Euler number of ⊕O(dᵢ) with section (s₁, …, s_n) in R(G).
pub fn equivariant_euler_number(spec: &ProblemSpec) -> Result<EquivariantAnswer> {
    let invariance = check_invariance(spec)?;
    require_invariance(spec, &invariance)?;
    let zeros = find_zeros(&spec.sections, spec.order, &spec.hints)?;
    let points: Vec<ProjPoint> = zeros.points.iter().map(|z| z.point.clone()).collect();
    let orbits = combined_orbits(spec, &points)?;
    let contributions = par::try_map(&orbits, |o| orbit_contribution(spec, &zeros, o.clone()))?;
    let value = contributions.iter().fold(VirtualCharacter::zero(spec.table.clone()), |acc, c| acc.add(&c.transferred));
    let global = global_trace(spec, &zeros)?;
    Ok(EquivariantAnswer { value, orbits: contributions, invariance, zeros, global_trace: global })
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub equal: bool,
    pub first: EquivariantAnswer,
    pub second: EquivariantAnswer,
}

/// Compares the Euler numbers of two sections of the same equivariant bundle.
pub fn section_independence_check(a: &ProblemSpec, b: &ProblemSpec) -> Result<IndependenceReport> {
    let same_setting = a.source.group == b.source.group
        && a.source.ambient_dim == b.source.ambient_dim
        && a.degrees == b.degrees
        && a.action.matrices().iter().zip(b.action.matrices()).all(|(x, y)| crate::groups::proportional_matrices(x, y));
    if !same_setting {
        return Err(Error::MismatchedBundles("the two problems differ in group, action, ambient space or bundle degrees".into()));
    }
    let first = equivariant_euler_number(a)?;
    let second = equivariant_euler_number(b)?;
    Ok(IndependenceReport { equal: first.value == second.value, first, second })
}

/// Convenience for callers holding only an `Arc` of the table.
pub fn value_labels(v: &VirtualCharacter) -> Vec<String> {
    Arc::clone(v.table()).labels().to_vec()
}
