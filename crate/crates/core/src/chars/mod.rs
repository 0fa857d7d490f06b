//! Characters and the representation ring R(G): virtual characters,
//! induction and restriction, tensor operations and restriction of scalars.

mod table;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cyclo::{field_trace, lcm_order, CyclotomicNumber as Cyclo, Rational, SubfieldSpec};
use crate::error::{Error, Result};
use crate::groups::Subgroup;

pub use table::{character_table, CharacterTable, ClassJson, TableJson};

/// A class function, one value per conjugacy class of its table.
#[derive(Clone)]
pub struct ClassFunction {
    table: Arc<CharacterTable>,
    values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(table: Arc<CharacterTable>, values: Vec<Cyclo>) -> Result<Self> {
        if values.len() != table.num_classes() {
            return Err(Error::CharacterTable(format!(
                "class function has {} values for {} classes",
                values.len(),
                table.num_classes()
            )));
        }
        Ok(Self { table, values })
    }

    /// Builds from a value for every group element, checking it is constant on classes.
    pub fn from_element_values(table: Arc<CharacterTable>, per_element: &[Cyclo]) -> Result<Self> {
        for (k, cls) in table.classes().iter().enumerate() {
            let v = &per_element[cls[0]];
            if cls.iter().any(|&g| &per_element[g] != v) {
                return Err(Error::CharacterTable(format!("values are not constant on class {k}")));
            }
        }
        let values = table.classes().iter().map(|c| per_element[c[0]].clone()).collect();
        Ok(Self { table, values })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value_at(&self, g: usize) -> &Cyclo {
        &self.values[self.table.class_of(g)]
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

/// An integer combination of the irreducible characters of a table.
#[derive(Clone)]
pub struct VirtualCharacter {
    table: Arc<CharacterTable>,
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn new(table: Arc<CharacterTable>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != table.num_classes() {
            return Err(Error::CharacterTable(format!(
                "{} coefficients for {} irreducibles",
                coeffs.len(),
                table.num_classes()
            )));
        }
        Ok(Self { table, coeffs })
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let n = table.num_classes();
        Self { table, coeffs: vec![0; n] }
    }

    pub fn trivial(table: Arc<CharacterTable>) -> Self {
        let mut v = Self::zero(table);
        v.coeffs[0] = 1;
        v
    }

    pub fn irreducible(table: Arc<CharacterTable>, i: usize) -> Self {
        let mut v = Self::zero(table);
        v.coeffs[i] = 1;
        v
    }

    /// The regular character.
    pub fn regular(table: Arc<CharacterTable>) -> Self {
        let coeffs = (0..table.num_classes()).map(|i| table.degree(i)).collect();
        Self { table, coeffs }
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn labels(&self) -> &[String] {
        self.table.labels()
    }

    pub fn dimension(&self) -> i64 {
        self.coeffs.iter().enumerate().map(|(i, c)| c * self.table.degree(i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn expand(&self) -> ClassFunction {
        let t = &self.table;
        let values = (0..t.num_classes())
            .map(|k| {
                let mut acc = Cyclo::zero(t.order());
                for (i, &c) in self.coeffs.iter().enumerate() {
                    if c != 0 {
                        acc += &t.irreducible(i)[k] * &Cyclo::from_int(c);
                    }
                }
                acc
            })
            .collect();
        ClassFunction { table: t.clone(), values }
    }

    fn same_table(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.table, &other.table) || self.table.irreducibles() == other.table.irreducibles(),
            "virtual characters over different tables"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_table(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { table: self.table.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_table(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { table: self.table.clone(), coeffs }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { table: self.table.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson { coeffs: self.coeffs.clone(), labels: self.table.labels().to_vec() }
    }
}

impl PartialEq for VirtualCharacter {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table.irreducibles() == other.table.irreducibles())
            && self.coeffs == other.coeffs
    }
}

impl fmt::Display for VirtualCharacter {
    /// Renders as e.g. `2*1 + chi1 - chi2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coeffs.iter().zip(self.table.labels()) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if c.abs() == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{}*{l}", c.abs())?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} {:?}", self.coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterJson {
    pub coeffs: Vec<i64>,
    pub labels: Vec<String>,
}

/// Inner products with the irreducibles; errors unless all are integers.
pub fn decompose(f: &ClassFunction, table: &Arc<CharacterTable>) -> Result<VirtualCharacter> {
    let mut coeffs = Vec::with_capacity(table.num_classes());
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let ip = table.inner(f.values(), chi);
        let n = ip.to_integer().and_then(|n| n.to_i64()).ok_or_else(|| Error::NotVirtualCharacter {
            label: table.labels()[i].clone(),
            value: ip.to_string(),
        })?;
        coeffs.push(n);
    }
    Ok(VirtualCharacter { table: table.clone(), coeffs })
}

/// A subgroup together with its own character table.
#[derive(Clone)]
pub struct SubgroupTable {
    subgroup: Subgroup,
    table: Arc<CharacterTable>,
}

impl SubgroupTable {
    pub fn new(subgroup: Subgroup) -> Result<Self> {
        let table = Arc::new(character_table(Arc::new(subgroup.as_group()))?);
        Ok(Self { subgroup, table })
    }

    /// Reuses the parent's table when the subgroup is the whole group.
    pub fn whole(table: Arc<CharacterTable>) -> Self {
        let subgroup = Subgroup::whole(table.group().clone());
        Self { subgroup, table }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    /// Class (in the subgroup's table) of a parent element lying in the subgroup.
    pub fn class_of_parent(&self, g: usize) -> usize {
        self.table.class_of(self.subgroup.position(g).expect("element of the subgroup"))
    }
}

impl fmt::Debug for SubgroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupTable({:?})", self.subgroup)
    }
}

fn check_parent(h: &SubgroupTable, g_table: &Arc<CharacterTable>) -> Result<()> {
    if h.subgroup.parent().as_ref() != g_table.group().as_ref() {
        return Err(Error::NotASubgroup("subgroup does not belong to the target group".into()));
    }
    Ok(())
}

/// Tr_H^G on class functions: value at g is (1/|H|) Σ_{t : tgt⁻¹ ∈ H} χ(tgt⁻¹).
pub fn induce_class_function(h: &SubgroupTable, chi: &ClassFunction, g_table: &Arc<CharacterTable>) -> Result<ClassFunction> {
    check_parent(h, g_table)?;
    if !Arc::ptr_eq(chi.table(), h.table()) {
        return Err(Error::NotASubgroup("character is not over the given subgroup's table".into()));
    }
    let group = g_table.group();
    let order = lcm_order(chi.table().order(), g_table.order())?;
    let inv_h = Cyclo::from_rational(Rational::new(BigInt::from(1), BigInt::from(h.subgroup.order() as i64)));
    let values = (0..g_table.num_classes())
        .map(|k| {
            let g = g_table.representative(k);
            let mut acc = Cyclo::zero(order);
            for t in 0..group.size() {
                let c = group.conjugate(g, t);
                if h.subgroup.contains(c) {
                    acc += chi.values()[h.class_of_parent(c)].lift(order);
                }
            }
            &acc * &inv_h
        })
        .collect();
    ClassFunction::new(g_table.clone(), values)
}

pub fn induce(h: &SubgroupTable, chi: &VirtualCharacter, g_table: &Arc<CharacterTable>) -> Result<VirtualCharacter> {
    let f = induce_class_function(h, &chi.expand(), g_table)?;
    decompose(&f, g_table)
}

pub fn restrict_class_function(chi: &ClassFunction, h: &SubgroupTable) -> Result<ClassFunction> {
    check_parent(h, chi.table())?;
    let values = (0..h.table.num_classes())
        .map(|k| {
            let local = h.table.representative(k);
            let g = h.subgroup.members()[local];
            chi.value_at(g).clone()
        })
        .collect();
    ClassFunction::new(h.table.clone(), values)
}

pub fn restrict(chi: &VirtualCharacter, h: &SubgroupTable) -> Result<VirtualCharacter> {
    let f = restrict_class_function(&chi.expand(), h)?;
    decompose(&f, &h.table)
}

pub fn tensor(a: &VirtualCharacter, b: &VirtualCharacter) -> VirtualCharacter {
    a.same_table(b);
    let (fa, fb) = (a.expand(), b.expand());
    let values = fa.values.iter().zip(&fb.values).map(|(x, y)| x * y).collect();
    decompose(&ClassFunction { table: a.table.clone(), values }, &a.table).expect("products of characters are characters")
}

/// χ∨(g) = χ(g⁻¹).
pub fn dual(a: &VirtualCharacter) -> VirtualCharacter {
    let f = a.expand();
    let values = f.values.iter().map(|v| v.conj()).collect();
    decompose(&ClassFunction { table: a.table.clone(), values }, &a.table).expect("duals of characters are characters")
}

/// Sym^d by Newton's identity d·h_d = Σ_{j=1}^{d} p_j h_{d−j}, p_j(g) = χ(g^j).
pub fn sym_power(a: &VirtualCharacter, d: usize) -> VirtualCharacter {
    let t = &a.table;
    let f = a.expand();
    let r = t.num_classes();
    let power_sums: Vec<Vec<Cyclo>> = (1..=d)
        .map(|j| (0..r).map(|k| f.values[t.power_class(k, j as i64)].clone()).collect())
        .collect();
    let mut h: Vec<Vec<Cyclo>> = vec![vec![Cyclo::one(t.order()); r]];
    for m in 1..=d {
        let inv_m = Cyclo::from_rational(Rational::new(BigInt::from(1), BigInt::from(m as i64)));
        let row = (0..r)
            .map(|k| {
                let mut acc = Cyclo::zero(t.order());
                for j in 1..=m {
                    acc += &power_sums[j - 1][k] * &h[m - j][k];
                }
                &acc * &inv_m
            })
            .collect();
        h.push(row);
    }
    let values = h.pop().unwrap();
    decompose(&ClassFunction { table: t.clone(), values }, t).expect("symmetric powers of characters are characters")
}

/// Tr_{L/k}: the character of an L-representation viewed over k is the field
/// trace of its values. `chi`'s values must lie in L.
pub fn field_restrict_scalars_class_function(chi: &ClassFunction, from: &SubfieldSpec, to: &SubfieldSpec) -> Result<ClassFunction> {
    let values = chi.values.iter().map(|v| field_trace(v, from, to)).collect::<Result<Vec<_>>>()?;
    ClassFunction::new(chi.table.clone(), values)
}

pub fn field_restrict_scalars(chi: &VirtualCharacter, from: &SubfieldSpec, to: &SubfieldSpec) -> Result<VirtualCharacter> {
    let f = field_restrict_scalars_class_function(&chi.expand(), from, to)?;
    decompose(&f, &chi.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_from_permutations, FiniteGroup};

    fn table(g: FiniteGroup) -> Arc<CharacterTable> {
        Arc::new(character_table(Arc::new(g)).unwrap())
    }

    fn a4() -> FiniteGroup {
        group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap().0
    }

    #[test]
    fn regular_of_c4_decomposes() {
        let t = table(FiniteGroup::cyclic(4));
        let f = ClassFunction::new(t.clone(), vec![4.into(), 0.into(), 0.into(), 0.into()]).unwrap();
        assert_eq!(decompose(&f, &t).unwrap().coeffs(), &[1, 1, 1, 1]);
        let half = ClassFunction::new(t.clone(), vec![2.into(), 0.into(), 0.into(), 0.into()]).unwrap();
        assert!(matches!(decompose(&half, &t), Err(Error::NotVirtualCharacter { .. })));
    }

    #[test]
    fn permutation_character_of_a4() {
        let (g, perms) = group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        let t = table(g);
        let fixed: Vec<Cyclo> = perms.iter().map(|p| Cyclo::from_int(p.iter().enumerate().filter(|(i, x)| i == *x).count() as i64)).collect();
        let f = ClassFunction::from_element_values(t.clone(), &fixed).unwrap();
        assert_eq!(decompose(&f, &t).unwrap().coeffs(), &[1, 0, 0, 1]);
    }

    #[test]
    fn inductions() {
        let t = table(FiniteGroup::cyclic(4));
        let e = SubgroupTable::new(Subgroup::trivial(t.group().clone())).unwrap();
        let one = VirtualCharacter::trivial(e.table().clone());
        assert_eq!(induce(&e, &one, &t).unwrap().coeffs(), &[1, 1, 1, 1]);

        let ta = table(a4());
        let g = ta.group().clone();
        let three_cycle = (0..g.size()).find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = SubgroupTable::new(Subgroup::generated(g.clone(), &[three_cycle])).unwrap();
        let one = VirtualCharacter::trivial(a3.table().clone());
        assert_eq!(induce(&a3, &one, &ta).unwrap().coeffs(), &[1, 0, 0, 1]);

        let whole = SubgroupTable::whole(ta.clone());
        let w = VirtualCharacter::irreducible(ta.clone(), 3);
        assert_eq!(induce(&whole, &w, &ta).unwrap(), w);
        // W restricted to A3 is 1 + χ + χ²
        assert_eq!(restrict(&w, &a3).unwrap().coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn sym_and_dual_on_c3() {
        let t = table(FiniteGroup::cyclic(3));
        let v = VirtualCharacter::new(t.clone(), vec![0, 1, 1]).unwrap();
        assert_eq!(sym_power(&v, 2).coeffs(), &[1, 1, 1]);
        assert_eq!(sym_power(&v, 0).coeffs(), &[1, 0, 0]);
        assert_eq!(sym_power(&v, 1), v);
        let chi = VirtualCharacter::irreducible(t.clone(), 1);
        assert_eq!(dual(&chi).coeffs(), &[0, 0, 1]);
        assert_eq!(tensor(&chi, &VirtualCharacter::trivial(t.clone())), chi);
    }

    #[test]
    fn restriction_of_scalars() {
        let t = table(FiniteGroup::cyclic(3));
        let chi = VirtualCharacter::irreducible(t.clone(), 1);
        let res = field_restrict_scalars(&chi, &SubfieldSpec::full(3), &SubfieldSpec::rationals(3)).unwrap();
        assert_eq!(res.coeffs(), &[0, 1, 1]);
        assert_eq!(res.expand().values()[1], Cyclo::from_int(-1));
        let t4 = table(FiniteGroup::cyclic(4));
        let one = VirtualCharacter::trivial(t4.clone());
        let res = field_restrict_scalars(&one, &SubfieldSpec::full(4), &SubfieldSpec::rationals(4)).unwrap();
        assert_eq!(res.coeffs(), &[2, 0, 0, 0]);
    }
}
