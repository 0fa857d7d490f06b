use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{lcm_order, units, CyclotomicNumber};
use crate::error::{Error, Result};

/// A subfield L ⊆ Q(ζ_N), described by the subgroup of (Z/N)ˣ fixing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubfieldSpec {
    ambient_order: u32,
    fixing_subgroup: Vec<u32>,
}

impl SubfieldSpec {
    pub fn new(ambient_order: u32, mut fixing: Vec<u32>) -> Result<Self> {
        let n = ambient_order;
        if n == 0 {
            return Err(Error::InvalidSubfield("ambient order must be positive".into()));
        }
        for a in fixing.iter_mut() {
            *a %= n;
        }
        fixing.sort_unstable();
        fixing.dedup();
        let one = 1 % n;
        if !fixing.contains(&one) {
            return Err(Error::InvalidSubfield("fixing subgroup must contain 1".into()));
        }
        if n > 1 && fixing.iter().any(|a| a.gcd(&n) != 1) {
            return Err(Error::InvalidSubfield("fixing subgroup must consist of units".into()));
        }
        for &a in &fixing {
            for &b in &fixing {
                let c = ((a as u64 * b as u64) % n as u64) as u32;
                if fixing.binary_search(&c).is_err() {
                    return Err(Error::InvalidSubfield(format!("{a}*{b} = {c} escapes the fixing set")));
                }
            }
        }
        Ok(Self { ambient_order: n, fixing_subgroup: fixing })
    }

    /// Q inside Q(ζ_n).
    pub fn rationals(n: u32) -> Self {
        Self { ambient_order: n, fixing_subgroup: units(n) }
    }

    /// All of Q(ζ_n).
    pub fn full(n: u32) -> Self {
        Self { ambient_order: n, fixing_subgroup: vec![1 % n] }
    }

    pub fn ambient_order(&self) -> u32 {
        self.ambient_order
    }

    pub fn fixing_subgroup(&self) -> &[u32] {
        &self.fixing_subgroup
    }

    /// [L : Q].
    pub fn degree(&self) -> u32 {
        super::euler_phi(self.ambient_order) / self.fixing_subgroup.len() as u32
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    /// The same field presented inside Q(ζ_target).
    pub fn lift(&self, target: u32) -> Self {
        if target == self.ambient_order {
            return self.clone();
        }
        assert!(target % self.ambient_order == 0);
        let n = self.ambient_order;
        let fixing = units(target)
            .into_iter()
            .filter(|u| self.fixing_subgroup.binary_search(&(u % n)).is_ok())
            .collect();
        Self { ambient_order: target, fixing_subgroup: fixing }
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let l = lcm_order(a.ambient_order, b.ambient_order)?;
        Ok((a.lift(l), b.lift(l)))
    }

    pub fn contains(&self, a: &CyclotomicNumber) -> bool {
        let Ok(l) = lcm_order(self.ambient_order, a.order()) else {
            return false;
        };
        let field = self.lift(l);
        let x = a.lift(l);
        field
            .fixing_subgroup
            .iter()
            .all(|&s| x.galois(s).map(|y| y == x).unwrap_or(false))
    }

    /// True when `self` is a subfield of `other`.
    pub fn is_subfield_of(&self, other: &Self) -> bool {
        match Self::common(self, other) {
            Ok((a, b)) => b.fixing_subgroup.iter().all(|s| a.fixing_subgroup.binary_search(s).is_ok()),
            Err(_) => false,
        }
    }

    /// [self : sub], when `sub` is a subfield.
    pub fn relative_degree(&self, sub: &Self) -> Result<u32> {
        if !sub.is_subfield_of(self) {
            return Err(Error::NonNestedFields(format!("{sub:?} is not contained in {self:?}")));
        }
        Ok(self.degree() / sub.degree())
    }

    /// Representatives of Gal(self / sub), as exponents modulo the common ambient order.
    pub fn galois_over(&self, sub: &Self) -> Result<(u32, Vec<u32>)> {
        let (top, bottom) = Self::common(self, sub)?;
        if !top.fixing_subgroup.iter().all(|s| bottom.fixing_subgroup.binary_search(s).is_ok()) {
            return Err(Error::NonNestedFields(format!("{sub:?} is not contained in {self:?}")));
        }
        let n = top.ambient_order;
        let mut covered: Vec<u32> = Vec::new();
        let mut reps = Vec::new();
        for &s in &bottom.fixing_subgroup {
            if covered.binary_search(&s).is_ok() {
                continue;
            }
            reps.push(s);
            for &h in &top.fixing_subgroup {
                let c = ((s as u64 * h as u64) % n as u64) as u32;
                if let Err(pos) = covered.binary_search(&c) {
                    covered.insert(pos, c);
                }
            }
        }
        Ok((n, reps))
    }

    /// Smallest subfield containing `self` and every element of `elems`.
    pub fn adjoin(&self, elems: &[CyclotomicNumber]) -> Result<Self> {
        let mut n = self.ambient_order;
        for e in elems {
            n = lcm_order(n, e.order())?;
        }
        let base = self.lift(n);
        let lifted: Vec<CyclotomicNumber> = elems.iter().map(|e| e.lift(n)).collect();
        let fixing = base
            .fixing_subgroup
            .iter()
            .copied()
            .filter(|&s| lifted.iter().all(|x| x.galois(s).map(|y| &y == x).unwrap_or(false)))
            .collect();
        Ok(Self { ambient_order: n, fixing_subgroup: fixing })
    }

    /// Compositum of two subfields.
    pub fn compositum(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other)?;
        let fixing = a
            .fixing_subgroup
            .iter()
            .copied()
            .filter(|s| b.fixing_subgroup.binary_search(s).is_ok())
            .collect();
        Ok(Self { ambient_order: a.ambient_order, fixing_subgroup: fixing })
    }

    /// The field fixed by the given automorphisms (closing them into a subgroup).
    pub fn fixed_by(ambient_order: u32, gens: &[u32]) -> Result<Self> {
        let n = ambient_order;
        let mut group = vec![1 % n];
        let mut frontier = group.clone();
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let c = ((a as u64 * g as u64) % n as u64) as u32;
                if !group.contains(&c) {
                    group.push(c);
                    frontier.push(c);
                }
            }
        }
        Self::new(n, group)
    }
}

/// Σ_{σ ∈ Gal(from/to)} σ(a).
pub fn field_trace(a: &CyclotomicNumber, from: &SubfieldSpec, to: &SubfieldSpec) -> Result<CyclotomicNumber> {
    if !to.is_subfield_of(from) {
        return Err(Error::NonNestedFields(format!("{to:?} is not contained in {from:?}")));
    }
    if !from.contains(a) {
        return Err(Error::NotInField(format!("{:?}", from.fixing_subgroup())));
    }
    let n = lcm_order(lcm_order(from.ambient_order(), to.ambient_order())?, a.order())?;
    let (_, reps) = from.lift(n).galois_over(&to.lift(n))?;
    let x = a.lift(n);
    let mut acc = CyclotomicNumber::zero(n);
    for s in reps {
        acc += x.galois(s)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_of_i_is_zero() {
        let i = CyclotomicNumber::zeta(4);
        let t = field_trace(&i, &SubfieldSpec::full(4), &SubfieldSpec::rationals(4)).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn trace_of_one_is_degree() {
        let one = CyclotomicNumber::one(12);
        let q = SubfieldSpec::rationals(12);
        let l = SubfieldSpec::full(12);
        let t = field_trace(&one, &l, &q).unwrap();
        assert_eq!(t, CyclotomicNumber::from_int(4));
    }

    #[test]
    fn trace_of_zeta3() {
        let w = CyclotomicNumber::zeta(3);
        let t = field_trace(&w, &SubfieldSpec::full(3), &SubfieldSpec::rationals(3)).unwrap();
        assert_eq!(t, CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn membership_and_degrees() {
        // Q(ζ3) inside Q(ζ9): fixed by a ≡ 1 mod 3
        let l = SubfieldSpec::new(9, vec![1, 4, 7]).unwrap();
        assert_eq!(l.degree(), 2);
        assert!(l.contains(&CyclotomicNumber::zeta(3)));
        assert!(!l.contains(&CyclotomicNumber::zeta(9)));
        assert!(SubfieldSpec::rationals(9).is_subfield_of(&l));
        assert!(!SubfieldSpec::full(9).is_subfield_of(&l));
        assert!(SubfieldSpec::new(9, vec![1, 2]).is_err());
    }

    #[test]
    fn non_nested_is_an_error() {
        let qi = SubfieldSpec::full(4).lift(12);
        let qw = SubfieldSpec::full(3).lift(12);
        let w = CyclotomicNumber::zeta(3);
        assert!(matches!(field_trace(&w, &qw, &qi), Err(Error::NonNestedFields(_))));
        assert!(matches!(
            field_trace(&CyclotomicNumber::zeta(4), &qw, &SubfieldSpec::rationals(12)),
            Err(Error::NotInField(_))
        ));
    }

    #[test]
    fn adjoin_finds_residue_field() {
        let k = SubfieldSpec::rationals(12);
        let l = k.adjoin(&[CyclotomicNumber::from_int(2), CyclotomicNumber::zeta(3)]).unwrap();
        assert_eq!(l.degree(), 2);
        assert!(l.contains(&CyclotomicNumber::zeta_pow(3, 2)));
        assert!(!l.contains(&CyclotomicNumber::zeta(4)));
    }
}
