//! Local equivariant degrees at isolated zeros.
//!
//! The local degree at x is the class of the local algebra A_x with the
//! stabilizer acting by pullback, f ↦ f∘M_g. On the chart x_c = 1 the pulled
//! back affine coordinate u_j becomes L_j/L_c with L_j = Σ_k (M_g)_jk X_k, and
//! A_x is realized as a summand of the chart algebra, so the whole action is
//! computed with the restricted multiplication operators.

use std::sync::Arc;

use crate::chars::{decompose, ClassFunction, SubgroupTable, VirtualCharacter};
use crate::cyclo::{lcm_order, CyclotomicNumber as Cyclo, SubfieldSpec};
use crate::error::{Error, Result};
use crate::groups::{ProjPoint, ProjectiveAction};
use crate::linalg::Matrix;
use crate::polysolve::{Monomial, MultiPoly, ZeroDatum};

#[derive(Clone, Debug)]
pub struct LocalDegree {
    pub point: ProjPoint,
    pub stabilizer: SubgroupTable,
    pub residue_field: SubfieldSpec,
    /// Trace of each stabilizer class on A_x, in the order of the stabilizer's table.
    pub class_values: Vec<Cyclo>,
    pub local_character: VirtualCharacter,
}

fn apply_monomial(ops: &[Matrix], m: &Monomial, v: &[Cyclo]) -> Vec<Cyclo> {
    let mut out = v.to_vec();
    for (i, &e) in m.iter().enumerate() {
        for _ in 0..e {
            out = ops[i].mul_vec(&out);
        }
    }
    out
}

fn add_scaled(acc: &mut [Cyclo], v: &[Cyclo], c: &Cyclo) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a += &(x * c);
    }
}

/// The pulled-back affine coordinate operators T_j on A_x for the matrix `m`.
fn pulled_back_coordinates(zd: &ZeroDatum, m: &Matrix) -> Result<Vec<Matrix>> {
    let c = zd.chart;
    let size = zd.multiplicity;
    let mut order = zd.local_basis.order();
    order = lcm_order(order, m.order())?;
    let id = Matrix::identity(size, order);
    let x_op = |k: usize| -> &Matrix {
        if k == c {
            &id
        } else {
            &zd.local_ops[if k < c { k } else { k - 1 }]
        }
    };
    let n1 = m.rows();
    let linear = |j: usize| -> Matrix {
        let mut acc = Matrix::zeros(size, size, order);
        for k in 0..n1 {
            let a = m.get(j, k);
            if !a.is_zero() {
                acc = acc.add(&x_op(k).scale(a));
            }
        }
        acc
    };
    let lc_inv = linear(c).inverse().map_err(|_| Error::Inconsistent(format!("{} is not fixed on chart x{c}", zd.point)))?;
    Ok((0..n1).filter(|&j| j != c).map(|j| linear(j).mul(&lc_inv)).collect())
}

/// Trace of the pullback by `m` on A_x; `m` must fix the point projectively.
/// The dehomogenized sections are checked to vanish after pullback.
pub fn pullback_trace(zd: &ZeroDatum, m: &Matrix, sections: &[MultiPoly]) -> Result<Cyclo> {
    let t = pulled_back_coordinates(zd, m)?;
    for s in sections {
        let f = s.dehomogenize(zd.chart);
        let mut acc = vec![Cyclo::zero(1); zd.multiplicity];
        for (mono, coef) in f.terms() {
            add_scaled(&mut acc, &apply_monomial(&t, mono, &zd.unit), coef);
        }
        if acc.iter().any(|x| !x.is_zero()) {
            return Err(Error::Inconsistent(format!("the ideal is not preserved at {}", zd.point)));
        }
    }
    // w_b = b(T)·e_x for each standard monomial b of the chart algebra.
    let w: Vec<Vec<Cyclo>> = zd.monomials.iter().map(|b| apply_monomial(&t, b, &zd.unit)).collect();
    let mut trace = Cyclo::zero(1);
    for col in 0..zd.multiplicity {
        let mut image = vec![Cyclo::zero(1); zd.multiplicity];
        for (b, wb) in w.iter().enumerate() {
            add_scaled(&mut image, wb, zd.local_basis.get(b, col));
        }
        trace += &image[col];
    }
    Ok(trace)
}

/// The local degree of the system at a zero, as a virtual character of its stabilizer.
pub fn local_degree(
    zd: &ZeroDatum,
    action: &ProjectiveAction,
    stabilizer: &SubgroupTable,
    sections: &[MultiPoly],
    base: &SubfieldSpec,
) -> Result<LocalDegree> {
    let table = stabilizer.table();
    for &g in stabilizer.subgroup().members() {
        if action.apply(g, &zd.point) != zd.point {
            return Err(Error::Inconsistent(format!("element {g} does not fix {}", zd.point)));
        }
    }
    let class_values = (0..table.num_classes())
        .map(|k| {
            let g = stabilizer.subgroup().members()[table.representative(k)];
            pullback_trace(zd, action.matrix(g), sections)
        })
        .collect::<Result<Vec<_>>>()?;
    let local_character = decompose(&ClassFunction::new(table.clone(), class_values.clone())?, table)?;
    if local_character.dimension() != zd.multiplicity as i64 {
        return Err(Error::Inconsistent(format!(
            "local character at {} has dimension {}, multiplicity is {}",
            zd.point,
            local_character.dimension(),
            zd.multiplicity
        )));
    }
    Ok(LocalDegree {
        point: zd.point.clone(),
        stabilizer: stabilizer.clone(),
        residue_field: zd.point.residue_field(base)?,
        class_values,
        local_character,
    })
}

/// A finite algebra over a field L recorded by the dimension of H⁻¹ of its
/// cotangent complex and the class of its classical truncation.
#[derive(Clone, Debug)]
pub struct DerivedPointDatum {
    pub h_minus_one_dim: u32,
    pub classical_class: VirtualCharacter,
}

/// Pushforward of the unit along a derived point: the classical class scaled
/// by (1 − 1)^h, i.e. zero as soon as H⁻¹ is nonzero.
pub fn derived_point_pushforward(d: &DerivedPointDatum) -> VirtualCharacter {
    if d.h_minus_one_dim == 0 {
        d.classical_class.clone()
    } else {
        VirtualCharacter::zero(Arc::clone(d.classical_class.table()))
    }
}
