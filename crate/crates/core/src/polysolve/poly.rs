use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::cyclo::{lcm_order, CyclotomicNumber as Cyclo};
use crate::error::Result;
use crate::linalg::Matrix;

pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A polynomial over Q(ζ_N) with named variables; terms are kept sorted by
/// decreasing monomial under the polynomial's order, without zero coefficients.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    order: MonomialOrder,
    terms: Vec<(Monomial, Cyclo)>,
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        Self { vars, order: MonomialOrder::default(), terms: Vec::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: Cyclo) -> Self {
        let n = vars.len();
        Self::from_terms(vars, vec![(vec![0; n], c)])
    }

    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        Self::from_terms(vars, vec![(m, Cyclo::from_int(1))])
    }

    /// Collects like terms, drops zeros and sorts under degrevlex.
    pub fn from_terms(vars: Arc<[String]>, terms: Vec<(Monomial, Cyclo)>) -> Self {
        Self::from_terms_ordered(vars, MonomialOrder::default(), terms)
    }

    pub fn from_terms_ordered(vars: Arc<[String]>, order: MonomialOrder, mut terms: Vec<(Monomial, Cyclo)>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Cyclo)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { vars, order, terms: out }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_terms_ordered(self.vars.clone(), order, self.terms.clone())
    }

    pub fn terms(&self) -> &[(Monomial, Cyclo)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn leading(&self) -> Option<&(Monomial, Cyclo)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Least common multiple of the cyclotomic orders of the coefficients.
    pub fn coefficient_order(&self) -> Result<u32> {
        self.terms.iter().try_fold(1, |acc, (_, c)| lcm_order(acc, c.order()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.iter().sum()).max()
    }

    /// The common degree of all terms, if homogeneous (None for the zero polynomial).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.iter().all(|(m, _)| m.iter().sum::<u32>() == d).then_some(d)
    }

    pub fn coefficient(&self, m: &[u32]) -> Option<&Cyclo> {
        self.terms.iter().find(|(x, _)| x.as_slice() == m).map(|(_, c)| c)
    }

    fn rebuild(&self, terms: Vec<(Monomial, Cyclo)>) -> Self {
        Self::from_terms_ordered(self.vars.clone(), self.order, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        self.rebuild(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(m, c)| (m.clone(), -c)));
        self.rebuild(terms)
    }

    pub fn neg(&self) -> Self {
        Self { vars: self.vars.clone(), order: self.order, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Self { vars: self.vars.clone(), order: self.order, terms: Vec::new() };
        }
        Self { vars: self.vars.clone(), order: self.order, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Multiplication by c·m, which preserves the term order.
    pub fn mul_term(&self, m: &[u32], c: &Cyclo) -> Self {
        if c.is_zero() {
            return Self { vars: self.vars.clone(), order: self.order, terms: Vec::new() };
        }
        let terms = self.terms.iter().map(|(x, y)| (mono_mul(x, m), y * c)).collect();
        Self { vars: self.vars.clone(), order: self.order, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((mono_mul(a, b), x * y));
            }
        }
        self.rebuild(terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), Cyclo::from_int(1)).with_order(self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, point: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero(1);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes the i-th variable by `images[i]`, all over a common variable set.
    pub fn substitute(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        let mut acc = Self::zero(target.clone()).with_order(self.order);
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::constant(target.clone(), Cyclo::from_int(1)), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc.with_order(self.order)
    }

    /// f(M·x): the variable x_i is replaced by Σ_j M_ij x_j.
    pub fn linear_substitute(&self, m: &Matrix) -> Self {
        let n = self.nvars();
        assert_eq!(m.rows(), n);
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let terms = (0..n)
                    .map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        (e, m.get(i, j).clone())
                    })
                    .collect();
                MultiPoly::from_terms(self.vars.clone(), terms)
            })
            .collect();
        self.substitute(&images)
    }

    /// Sets x_chart = 1 and drops that variable.
    pub fn dehomogenize(&self, chart: usize) -> Self {
        let vars: Vec<String> = self.vars.iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, v)| v.clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m.remove(chart);
                (m, c.clone())
            })
            .collect();
        Self::from_terms_ordered(vars.into(), self.order, terms)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[i] -= 1;
                (m2, c * &Cyclo::from_int(m[i] as i64))
            })
            .collect();
        self.rebuild(terms)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        self.terms == other.with_order(self.order).terms
    }
}

fn monomial_string(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Canonical sorted-term rendering in the input grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = monomial_string(&self.vars, m);
            if let Some(q) = c.to_rational() {
                let neg = q.is_negative();
                let mag = q.abs();
                if k == 0 {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                let num = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
                match (mono.is_empty(), mag.is_one()) {
                    (true, _) => write!(f, "{num}")?,
                    (false, true) => write!(f, "{mono}")?,
                    (false, false) => write!(f, "{num}*{mono}")?,
                }
            } else {
                if k > 0 {
                    write!(f, " + ")?;
                }
                if mono.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Default variable names x0, …, x{n-1}.
pub fn default_vars(n: usize) -> Arc<[String]> {
    (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_order() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 1], &[2, 0, 0]), Ordering::Less);
    }

    #[test]
    fn substitution_and_dehomogenization() {
        let v = default_vars(3);
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let f = x.mul(&y);
        let rows = vec![
            vec![Cyclo::from_int(0), Cyclo::from_int(-1), Cyclo::from_int(0)],
            vec![Cyclo::from_int(1), Cyclo::from_int(0), Cyclo::from_int(0)],
            vec![Cyclo::from_int(0), Cyclo::from_int(0), Cyclo::from_int(1)],
        ];
        let m = Matrix::from_rows(&rows, 1);
        assert_eq!(f.linear_substitute(&m), f.neg());
        let g = x.mul(&x).sub(&MultiPoly::var(v.clone(), 2));
        assert_eq!(g.dehomogenize(2).to_string(), "x0^2 - 1");
    }
}
