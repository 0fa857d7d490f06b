//! Univariate polynomials over Q(ζ_N) and their roots inside Q(ζ_N).
//!
//! Roots are located modulo a prime p ≡ 1 (mod N) under every embedding
//! ζ ↦ r^u, glued by solving the Vandermonde system for the power-basis
//! coordinates, lifted by rational reconstruction and then verified exactly.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{euler_phi, units, CyclotomicNumber as Cyclo, Rational};
use crate::modp;

/// Dense polynomial, low degree first.
pub type UPoly = Vec<Cyclo>;

/// Upper bound on embedding-root combinations tried before giving up.
const MAX_COMBINATIONS: u64 = 1 << 20;

pub fn trim(f: &mut UPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub fn eval(f: &[Cyclo], x: &Cyclo) -> Cyclo {
    f.iter().rev().fold(Cyclo::zero(1), |acc, c| &(&acc * x) + c)
}

pub fn divrem(a: &[Cyclo], b: &[Cyclo]) -> (UPoly, UPoly) {
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Cyclo::zero(1); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&c * bj);
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

pub fn monic(f: &[Cyclo]) -> UPoly {
    let mut f = f.to_vec();
    trim(&mut f);
    match f.last() {
        Some(l) if !l.is_one() => {
            let inv = l.inv().expect("nonzero");
            f.iter().map(|c| c * &inv).collect()
        }
        _ => f,
    }
}

pub fn gcd(a: &[Cyclo], b: &[Cyclo]) -> UPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

pub fn derivative(f: &[Cyclo]) -> UPoly {
    let mut d: UPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * &Cyclo::from_int(i as i64)).collect();
    trim(&mut d);
    d
}

/// The monic squarefree part f / gcd(f, f').
pub fn squarefree(f: &[Cyclo]) -> UPoly {
    let g = gcd(f, &derivative(f));
    monic(&divrem(f, &g).0)
}

pub fn to_string(f: &[Cyclo], var: &str) -> String {
    let terms: Vec<String> = f
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("({c})"),
            1 => format!("({c})*{var}"),
            _ => format!("({c})*{var}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, Debug)]
pub struct RootSearch {
    /// Distinct roots found in Q(ζ_N), in canonical order.
    pub roots: Vec<Cyclo>,
    /// Monic factor of the squarefree part that has no further roots found (1 when complete).
    pub residual: UPoly,
}

impl RootSearch {
    pub fn is_complete(&self) -> bool {
        self.residual.len() <= 1
    }
}

struct Embeddings {
    p: u64,
    /// r^(u·j) for each unit u and power-basis index j.
    powers: Vec<Vec<u64>>,
}

impl Embeddings {
    fn new(n: u32, p: u64) -> Self {
        let r = modp::root_of_unity(n as u64, p);
        let phi = euler_phi(n) as usize;
        let powers = units(n)
            .iter()
            .map(|&u| {
                let ru = modp::pow_mod(r, u as u64, p);
                let mut row = Vec::with_capacity(phi);
                let mut acc = 1;
                for _ in 0..phi {
                    row.push(acc);
                    acc = modp::mul_mod(acc, ru, p);
                }
                row
            })
            .collect();
        Self { p, powers }
    }

    fn image(&self, a: &Cyclo, n: u32, k: usize) -> Option<u64> {
        let a = a.lift(n);
        let mut acc = 0;
        for (j, q) in a.coeffs().iter().enumerate() {
            let c = modp::rational_mod(q, self.p)?;
            acc = modp::add_mod(acc, modp::mul_mod(c, self.powers[k][j], self.p), self.p);
        }
        Some(acc)
    }
}

fn lift_root(emb: &Embeddings, n: u32, values: &[u64]) -> Option<Cyclo> {
    let coords = modp::mat::solve(&emb.powers, values, emb.p)?;
    let m = BigInt::from(emb.p);
    let mut qs: Vec<Rational> = Vec::with_capacity(coords.len());
    for c in coords {
        qs.push(modp::rational_reconstruct(&BigInt::from(c), &m)?);
    }
    Some(Cyclo::from_coeffs(n, qs))
}

/// Finds all roots of `f` lying in Q(ζ_n). `candidates` are tried first.
pub fn roots_in_field(f: &[Cyclo], n: u32, candidates: &[Cyclo]) -> RootSearch {
    let mut sf = squarefree(f);
    let mut roots: Vec<Cyclo> = Vec::new();
    let take = |sf: &mut UPoly, r: Cyclo, roots: &mut Vec<Cyclo>| {
        let lin = vec![-&r, Cyclo::from_int(1)];
        *sf = divrem(sf, &lin).0;
        roots.push(r);
    };
    for c in candidates {
        if sf.len() > 1 && eval(&sf, c).is_zero() {
            take(&mut sf, c.clone(), &mut roots);
        }
    }
    let mut above = 1u64 << 61;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    'outer: while sf.len() > 1 {
        let p = modp::next_prime_one_mod(n as u64, above);
        above = p;
        let emb = Embeddings::new(n, p);
        let mut lists: Vec<Vec<u64>> = Vec::with_capacity(emb.powers.len());
        for k in 0..emb.powers.len() {
            let Some(red) = sf.iter().map(|c| emb.image(c, n, k)).collect::<Option<Vec<u64>>>() else {
                continue 'outer;
            };
            lists.push(modp::poly::roots(&red, p, &mut rng));
        }
        let total = lists.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.len() as u64)).unwrap_or(u64::MAX);
        if total == 0 || total > MAX_COMBINATIONS {
            break;
        }
        let mut idx = vec![0usize; lists.len()];
        let found = loop {
            let values: Vec<u64> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            if let Some(r) = lift_root(&emb, n, &values) {
                if eval(&sf, &r).is_zero() {
                    break Some(r);
                }
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break None;
            }
        };
        match found {
            Some(r) => take(&mut sf, r, &mut roots),
            None => break,
        }
    }
    roots.sort_by(|a, b| a.cmp_canonical(b));
    RootSearch { roots, residual: monic(&sf) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(rs: &[Cyclo]) -> UPoly {
        let mut f = vec![Cyclo::from_int(1)];
        for r in rs {
            let mut g = vec![Cyclo::zero(1); f.len() + 1];
            for (i, c) in f.iter().enumerate() {
                g[i + 1] = &g[i + 1] + c;
                g[i] = &g[i] - &(c * r);
            }
            f = g;
        }
        f
    }

    #[test]
    fn finds_cyclotomic_roots() {
        let z = Cyclo::zeta(12);
        let half = Cyclo::from_rational(Rational::new(1.into(), 2.into()));
        let rs = vec![&z + &half, z.pow(5), Cyclo::from_int(-3), Cyclo::from_int(-3)];
        let f = from_roots(&rs);
        let out = roots_in_field(&f, 12, &[]);
        assert!(out.is_complete());
        assert_eq!(out.roots.len(), 3);
        for r in &rs {
            assert!(out.roots.contains(r));
        }
    }

    #[test]
    fn irreducible_residual_is_reported() {
        // t^2 - 2 has no root in Q(i)
        let f = vec![Cyclo::from_int(-2), Cyclo::zero(1), Cyclo::from_int(1)];
        let out = roots_in_field(&f, 4, &[]);
        assert!(out.roots.is_empty());
        assert_eq!(out.residual.len(), 3);
        // but t^2 + 1 splits
        let g = vec![Cyclo::from_int(1), Cyclo::zero(1), Cyclo::from_int(1)];
        assert_eq!(roots_in_field(&g, 4, &[]).roots.len(), 2);
    }
}
