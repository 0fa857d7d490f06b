use super::groebner::{buchberger, normal_form};
use super::poly::{divides, Monomial, MultiPoly};
use crate::cyclo::{lcm_order, CyclotomicNumber as Cyclo};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The finite-dimensional algebra K[x]/I for a zero-dimensional ideal I,
/// with the standard monomials as basis and one multiplication matrix per variable.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    gb: Vec<MultiPoly>,
    basis: Vec<Monomial>,
    mul: Vec<Matrix>,
    order: u32,
}

impl QuotientAlgebra {
    /// Builds the algebra of the ideal generated by `gens`; `chart` is only used for errors.
    pub fn new(gens: &[MultiPoly], nvars: usize, chart: usize) -> Result<Self> {
        let gb = buchberger(gens);
        let mut order = 1;
        for g in &gb {
            order = lcm_order(order, g.coefficient_order()?)?;
        }
        if gb.is_empty() {
            if nvars == 0 {
                return Ok(Self { gb, basis: vec![Vec::new()], mul: Vec::new(), order });
            }
            return Err(Error::ZerosNotIsolated { chart });
        }
        if gb.iter().any(|g| g.is_constant()) {
            let mul = vec![Matrix::zeros(0, 0, order); nvars];
            return Ok(Self { gb, basis: Vec::new(), mul, order });
        }
        let leads: Vec<&Monomial> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
        for i in 0..nvars {
            let pure = leads.iter().any(|m| m.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)));
            if !pure {
                return Err(Error::ZerosNotIsolated { chart });
            }
        }
        let standard = |m: &Monomial| !leads.iter().any(|l| divides(l, m));
        let mut basis: Vec<Monomial> = Vec::new();
        let mut frontier = vec![vec![0u32; nvars]];
        while let Some(m) = frontier.pop() {
            if !standard(&m) || basis.contains(&m) {
                continue;
            }
            for i in 0..nvars {
                let mut next = m.clone();
                next[i] += 1;
                frontier.push(next);
            }
            basis.push(m);
        }
        let ord = gb[0].order();
        basis.sort_by(|a, b| ord.cmp(a, b));
        let vars = gb[0].vars().clone();
        let mut alg = Self { gb, basis, mul: Vec::new(), order };
        let mul = (0..nvars)
            .map(|i| {
                let cols: Vec<Vec<Cyclo>> = alg
                    .basis
                    .iter()
                    .map(|b| {
                        let mut m = b.clone();
                        m[i] += 1;
                        let f = MultiPoly::from_terms_ordered(vars.clone(), ord, vec![(m, Cyclo::from_int(1))]);
                        alg.coordinates(&f)
                    })
                    .collect();
                Matrix::from_columns(&cols, alg.basis.len(), order)
            })
            .collect();
        alg.mul = mul;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True for the unit ideal, i.e. no zeros on this chart.
    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn groebner_basis(&self) -> &[MultiPoly] {
        &self.gb
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn multiplication_matrix(&self, i: usize) -> &Matrix {
        &self.mul[i]
    }

    pub fn multiplication_matrices(&self) -> &[Matrix] {
        &self.mul
    }

    /// Coordinates of the normal form of f in the standard-monomial basis.
    pub fn coordinates(&self, f: &MultiPoly) -> Vec<Cyclo> {
        let r = normal_form(&f.with_order(self.gb.first().map_or(f.order(), |g| g.order())), &self.gb);
        self.basis
            .iter()
            .map(|b| r.coefficient(b).cloned().unwrap_or_else(|| Cyclo::zero(1)))
            .collect()
    }

    /// Index of the monomial 1 in the basis.
    pub fn unit_index(&self) -> usize {
        self.basis.iter().position(|m| m.iter().all(|&e| e == 0)).expect("1 is always standard")
    }

    /// Checks that all multiplication matrices commute pairwise.
    pub fn operators_commute(&self) -> bool {
        for i in 0..self.mul.len() {
            for j in i + 1..self.mul.len() {
                if self.mul[i].mul(&self.mul[j]) != self.mul[j].mul(&self.mul[i]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysolve::parse::parse_poly;
    use crate::polysolve::poly::default_vars;

    #[test]
    fn dimension_is_bezout_count() {
        let v = default_vars(2);
        let f = parse_poly("x0^2 + x1^2 - 1", &v).unwrap();
        let g = parse_poly("x0*x1", &v).unwrap();
        let q = QuotientAlgebra::new(&[f, g], 2, 2).unwrap();
        assert_eq!(q.dim(), 4);
        assert!(q.operators_commute());
    }

    #[test]
    fn positive_dimensional_is_rejected() {
        let v = default_vars(2);
        let f = parse_poly("x0*x1", &v).unwrap();
        assert!(matches!(QuotientAlgebra::new(&[f], 2, 0), Err(Error::ZerosNotIsolated { chart: 0 })));
    }
}
