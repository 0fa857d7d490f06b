//! Equivariant Euler characteristics of line bundles on P¹ = P(V) and the
//! Koszul self-intersection class of an equivariantly parametrized conic.

use std::sync::Arc;

use crate::chars::{decompose, dual, sym_power, tensor, CharacterTable, ClassFunction, VirtualCharacter};
use crate::cyclo::{lcm_order, CyclotomicNumber as Cyclo};
use crate::error::{Error, Result};
use crate::groups::ProjectiveAction;
use crate::linalg::Matrix;
use crate::polysolve::roots::roots_in_field;
use crate::polysolve::MultiPoly;

/// A genuine two-dimensional linear representation, one matrix per element.
#[derive(Clone, Debug)]
pub struct TwoDimRep {
    table: Arc<CharacterTable>,
    matrices: Vec<Matrix>,
}

impl TwoDimRep {
    pub fn new(table: Arc<CharacterTable>, matrices: Vec<Matrix>) -> Result<Self> {
        let g = table.group().clone();
        if matrices.len() != g.size() || matrices.iter().any(|m| m.rows() != 2 || m.cols() != 2) {
            return Err(Error::Spec("a two-dimensional representation needs one 2x2 matrix per element".into()));
        }
        for a in 0..g.size() {
            for b in 0..g.size() {
                if matrices[a].mul(&matrices[b]) != matrices[g.mul(a, b)] {
                    return Err(Error::NotEquivariant(format!(
                        "the 2x2 matrices do not form a representation: M({0})M({1}) != M({0}{1})",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(Self { table, matrices })
    }

    /// Extends generator matrices along the group's words.
    pub fn from_generators(table: Arc<CharacterTable>, gens: Vec<Matrix>) -> Result<Self> {
        let g = table.group().clone();
        if gens.len() != g.generators().len() {
            return Err(Error::Spec(format!("expected {} induced matrices, got {}", g.generators().len(), gens.len())));
        }
        let order = gens.iter().map(|m| m.order()).try_fold(1, lcm_order)?;
        let matrices = (0..g.size()).map(|x| g.word(x).iter().fold(Matrix::identity(2, order), |acc, &i| acc.mul(&gens[i]))).collect();
        Self::new(table, matrices)
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    fn class_function(&self, f: impl Fn(&Matrix) -> Cyclo) -> Result<VirtualCharacter> {
        let t = &self.table;
        let values = (0..t.num_classes()).map(|k| f(&self.matrices[t.representative(k)])).collect();
        decompose(&ClassFunction::new(t.clone(), values)?, t)
    }

    pub fn character(&self) -> Result<VirtualCharacter> {
        self.class_function(|m| m.trace())
    }

    pub fn determinant(&self) -> Result<VirtualCharacter> {
        self.class_function(|m| m.det())
    }
}

fn tensor_power(a: &VirtualCharacter, k: usize) -> VirtualCharacter {
    (0..k).fold(VirtualCharacter::trivial(a.table().clone()), |acc, _| tensor(&acc, a))
}

/// χ(P(V), O(d)) as a virtual character: Sym^d(V∨) for d ≥ 0, zero for
/// d = −1 and, by Serre duality, −(det V∨)^{d+1} ⊗ Sym^{−d−2}(V∨) for d ≤ −2.
pub fn chi_p1(v: &TwoDimRep, d: i64) -> Result<VirtualCharacter> {
    let vd = dual(&v.character()?);
    Ok(match d {
        d if d >= 0 => sym_power(&vd, d as usize),
        -1 => VirtualCharacter::zero(v.table.clone()),
        _ => {
            // (det V∨)^{d+1} = (det V)^{−d−1}
            let twist = tensor_power(&v.determinant()?, (-d - 1) as usize);
            tensor(&twist, &sym_power(&vd, (-d - 2) as usize)).scale(-1)
        }
    })
}

/// Independent computation of χ(P(V), O(d)) from Čech cohomology of the
/// standard cover. For d ≥ 0, g acts on the monomials s^a t^b of degree d by
/// f ↦ f∘M(g⁻¹) and the trace is read off directly. For d ≤ −2 the element is
/// diagonalized and H¹ is spanned by s^{−a} t^{−b}, a, b ≥ 1, a + b = −d.
pub fn chi_p1_cech_oracle(v: &TwoDimRep, d: i64) -> Result<VirtualCharacter> {
    let t = &v.table;
    let group = t.group();
    let vars: Arc<[String]> = vec!["s".to_string(), "t".to_string()].into();
    let values = (0..t.num_classes())
        .map(|k| {
            let h = v.matrix(group.inv(t.representative(k)));
            if d >= 0 {
                let d = d as u32;
                let mut trace = Cyclo::zero(1);
                for a in 0..=d {
                    let mono = vec![a, d - a];
                    let f = MultiPoly::from_terms(vars.clone(), vec![(mono.clone(), Cyclo::from_int(1))]);
                    if let Some(c) = f.linear_substitute(h).coefficient(&mono) {
                        trace += c;
                    }
                }
                Ok(trace)
            } else if d == -1 {
                Ok(Cyclo::zero(1))
            } else {
                let (mu1, mu2) = eigenvalues(h, t.order())?;
                let (i1, i2) = (mu1.inv()?, mu2.inv()?);
                let mut trace = Cyclo::zero(1);
                for a in 1..(-d) {
                    let b = -d - a;
                    trace += &(&i1.pow(a as u32) * &i2.pow(b as u32));
                }
                Ok(-trace)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    decompose(&ClassFunction::new(t.clone(), values)?, t)
}

/// Both eigenvalues of a finite-order 2×2 matrix, with multiplicity.
fn eigenvalues(m: &Matrix, exponent: u32) -> Result<(Cyclo, Cyclo)> {
    let n = lcm_order(exponent, m.order())?;
    let cp = m.charpoly();
    let found = roots_in_field(&cp, n, &[]);
    let first = found.roots.first().cloned().ok_or_else(|| Error::Inconsistent("finite-order matrix without eigenvalues".into()))?;
    let second = &m.trace() - &first;
    Ok((first, second))
}

/// A conic C = V(q) ⊂ P² with a degree-two parametrization P¹ → C that
/// intertwines the induced linear action on (s, t) with the ambient action.
#[derive(Clone, Debug)]
pub struct EquivariantConic {
    action: ProjectiveAction,
    conic: MultiPoly,
    parametrization: Vec<MultiPoly>,
    induced: TwoDimRep,
    /// c_g with M(g)·p = c_g · p∘V(g).
    scalars: Vec<Cyclo>,
}

fn proportional(a: &[MultiPoly], b: &[MultiPoly]) -> Option<Cyclo> {
    let (i, bi) = b.iter().enumerate().find(|(_, p)| !p.is_zero())?;
    let c = &a[i].leading()?.1 * &bi.leading()?.1.inv().ok()?;
    a.iter().zip(b).all(|(x, y)| *x == y.scale(&c)).then_some(c)
}

impl EquivariantConic {
    pub fn new(action: ProjectiveAction, conic: MultiPoly, parametrization: Vec<MultiPoly>, induced: TwoDimRep) -> Result<Self> {
        if action.dim() != 2 || conic.nvars() != 3 || conic.homogeneous_degree() != Some(2) {
            return Err(Error::Spec("a conic is a quadratic form in three variables with an action on P^2".into()));
        }
        if parametrization.len() != 3 || parametrization.iter().any(|p| p.nvars() != 2 || p.homogeneous_degree() != Some(2)) {
            return Err(Error::Spec("the parametrization must be three quadratic forms in two variables".into()));
        }
        if !action.is_linear() {
            return Err(Error::NotEquivariant("the ambient matrices do not form a linear representation".into()));
        }
        if induced.table().group().as_ref() != action.group().as_ref() {
            return Err(Error::Spec("ambient and induced actions use different groups".into()));
        }
        if !conic.substitute(&parametrization).is_zero() {
            return Err(Error::Spec("the parametrization does not land on the conic".into()));
        }
        let group = action.group().clone();
        let mut scalars = Vec::with_capacity(group.size());
        for g in 0..group.size() {
            let m = action.matrix(g);
            let left: Vec<MultiPoly> = (0..3)
                .map(|i| {
                    (0..3).fold(MultiPoly::zero(parametrization[0].vars().clone()), |acc, j| acc.add(&parametrization[j].scale(m.get(i, j))))
                })
                .collect();
            let right: Vec<MultiPoly> = parametrization.iter().map(|p| p.linear_substitute(induced.matrix(g))).collect();
            let c = proportional(&left, &right).ok_or_else(|| {
                Error::NotEquivariant(format!("element {} does not intertwine the parametrization with the induced action", group.label(g)))
            })?;
            scalars.push(c);
        }
        Ok(Self { action, conic, parametrization, induced, scalars })
    }

    pub fn action(&self) -> &ProjectiveAction {
        &self.action
    }

    pub fn induced(&self) -> &TwoDimRep {
        &self.induced
    }

    fn character_of(&self, f: impl Fn(usize) -> Result<Cyclo>) -> Result<VirtualCharacter> {
        let t = self.induced.table();
        let values = (0..t.num_classes()).map(|k| f(t.representative(k))).collect::<Result<Vec<_>>>()?;
        decompose(&ClassFunction::new(t.clone(), values)?, t)
    }

    /// λ with H⁰(C, O(1)) ≅ λ ⊗ H⁰(P¹, O(2)); λ(g) = c_{g⁻¹}.
    pub fn linearization_twist(&self) -> Result<VirtualCharacter> {
        let g = self.action.group().clone();
        let lambda = self.character_of(|x| Ok(self.scalars[g.inv(x)].clone()))?;
        // Consistency: the ambient linear forms restrict isomorphically to the conic.
        let forms = self.character_of(|x| Ok(self.action.matrix(g.inv(x)).trace()))?;
        if forms != tensor(&lambda, &chi_p1(&self.induced, 2)?) {
            return Err(Error::Inconsistent("linear forms on the conic do not match the twisted quadrics on P^1".into()));
        }
        Ok(lambda)
    }

    /// μ with q∘M(g⁻¹) = μ(g)·q.
    pub fn conic_character(&self) -> Result<VirtualCharacter> {
        let g = self.action.group().clone();
        self.character_of(|x| {
            let moved = self.conic.linear_substitute(self.action.matrix(g.inv(x)));
            proportional(&[moved], &[self.conic.clone()])
                .ok_or_else(|| Error::NotEquivariant(format!("element {} does not preserve the conic", g.label(x))))
        })
    }

    pub fn parametrization(&self) -> &[MultiPoly] {
        &self.parametrization
    }
}

/// [O_C ⊗^L O_C] = χ(O_C) − χ(I/I²) with I/I² ≅ μ ⊗ O_C(−2) and
/// O_C(k) ≅ λ^k ⊗ O_{P¹}(2k), so the class is χ_P¹(V, 0) − μ λ⁻² χ_P¹(V, −4).
pub fn conic_self_intersection(c: &EquivariantConic) -> Result<VirtualCharacter> {
    let lambda = c.linearization_twist()?;
    let mu = c.conic_character()?;
    let twist = tensor(&mu, &tensor_power(&dual(&lambda), 2));
    let o = chi_p1(&c.induced, 0)?;
    let o_minus_4 = chi_p1(&c.induced, -4)?;
    Ok(o.sub(&tensor(&twist, &o_minus_4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::character_table;
    use crate::groups::FiniteGroup;

    fn c3_rep(a: i64, b: i64) -> TwoDimRep {
        let t = Arc::new(character_table(Arc::new(FiniteGroup::cyclic(3))).unwrap());
        let m = Matrix::from_rows(&[vec![Cyclo::zeta_pow(3, a), Cyclo::zero(1)], vec![Cyclo::zero(1), Cyclo::zeta_pow(3, b)]], 3);
        TwoDimRep::from_generators(t, vec![m]).unwrap()
    }

    #[test]
    fn closed_form_matches_cech() {
        let v = c3_rep(1, 2);
        for d in -6..=6 {
            assert_eq!(chi_p1(&v, d).unwrap(), chi_p1_cech_oracle(&v, d).unwrap(), "d = {d}");
            assert_eq!(chi_p1(&v, d).unwrap().dimension(), d + 1);
        }
    }

    #[test]
    fn quadrics_on_the_c3_line() {
        let v = c3_rep(1, 2);
        assert_eq!(chi_p1(&v, 2).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(chi_p1(&v, -4).unwrap().coeffs(), &[-1, -1, -1]);
        assert_eq!(chi_p1(&v, 0).unwrap().sub(&chi_p1(&v, -4).unwrap()).coeffs(), &[2, 1, 1]);
    }

    #[test]
    fn invariant_conic_self_intersection() {
        use crate::polysolve::{default_vars, parse_poly};
        let v = c3_rep(1, 2);
        let (o, z) = (Cyclo::from_int(1), Cyclo::zero(1));
        let cyc = Matrix::from_rows(&[vec![z.clone(), z.clone(), o.clone()], vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), o.clone(), z.clone()]], 1);
        let action = ProjectiveAction::from_generators(v.table().group().clone(), vec![cyc]).unwrap();
        let q = parse_poly("x0^2 + x1^2 + x2^2", &default_vars(3)).unwrap();
        let st: Arc<[String]> = vec!["s".to_string(), "t".to_string()].into();
        let param = [
            "(s^2 + 2*s*t - 2*t^2)/3",
            "(zeta(3)*s^2 + 2*s*t - 2*zeta(3)^2*t^2)/3",
            "(zeta(3)^2*s^2 + 2*s*t - 2*zeta(3)*t^2)/3",
        ]
        .iter()
        .map(|p| parse_poly(p, &st).unwrap())
        .collect();
        let conic = EquivariantConic::new(action, q, param, v).unwrap();
        assert_eq!(conic_self_intersection(&conic).unwrap().coeffs(), &[2, 1, 1]);
    }
}
