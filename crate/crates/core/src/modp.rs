//! Arithmetic modulo word-sized primes: the fast shadow used by the
//! character-table and root-finding code before lifting back to exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cyclo::Rational;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest prime p > `above` with p ≡ 1 (mod m).
pub fn next_prime_one_mod(m: u64, above: u64) -> u64 {
    let m = m.max(1);
    let mut p = (above / m + 1) * m + 1;
    while !is_prime(p) {
        p += m;
    }
    p
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of multiplicative order exactly `m` modulo `p`; requires m | p − 1.
pub fn root_of_unity(m: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % m, 0);
    if m == 1 {
        return 1;
    }
    let qs = prime_factors(m);
    for g in 2..p {
        let r = pow_mod(g, (p - 1) / m, p);
        if qs.iter().all(|&q| pow_mod(r, m / q, p) != 1) {
            return r;
        }
    }
    unreachable!("a prime field always has roots of unity of orders dividing p-1")
}

/// Reduces a rational modulo p; `None` when p divides the denominator.
pub fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, p), p))
}

/// Recovers n/d ≡ a (mod m) with |n|, d ≤ sqrt(m/2), if such a fraction exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Dense polynomials over F_p, low degree first, no trailing zeros.
pub mod poly {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(b[db], p);
        let mut q = vec![0u64; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = sub_mod(r[shift + j], mul_mod(c, bj, p), p);
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        let inv = inv_mod(*a.last().unwrap(), p);
        a.iter().map(|&x| mul_mod(x, inv, p)).collect()
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        if x.is_empty() {
            x
        } else {
            monic(&x, p)
        }
    }

    /// base^e mod m.
    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    /// Distinct roots in F_p, sorted ascending. Deterministic for a given rng state.
    pub fn roots(a: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
        let mut f = a.to_vec();
        trim(&mut f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let f = monic(&f, p);
        // product of the distinct linear factors: gcd(f, x^p - x)
        let xp = pow_rem(&[0, 1], p, &f, p);
        let mut xp_minus_x = xp;
        if xp_minus_x.len() < 2 {
            xp_minus_x.resize(2, 0);
        }
        xp_minus_x[1] = sub_mod(xp_minus_x[1], 1, p);
        trim(&mut xp_minus_x);
        let g = if xp_minus_x.is_empty() { f.clone() } else { gcd(&f, &xp_minus_x, p) };
        let mut out = Vec::new();
        split(&g, p, rng, &mut out);
        out.sort_unstable();
        out
    }

    fn split(g: &[u64], p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(sub_mod(0, mul_mod(g[0], inv_mod(g[1], p), p), p)),
            _ => {
                if g[0] == 0 {
                    out.push(0);
                    split(&g[1..], p, rng, out);
                    return;
                }
                loop {
                    let a = rng.gen_range(0..p);
                    let h = pow_rem(&[a, 1], (p - 1) / 2, g, p);
                    let mut h1 = h;
                    if h1.is_empty() {
                        h1.push(0);
                    }
                    h1[0] = sub_mod(h1[0], 1, p);
                    trim(&mut h1);
                    let d = gcd(g, &h1, p);
                    if d.len() > 1 && d.len() < g.len() {
                        let (q, _) = divrem(g, &d, p);
                        split(&d, p, rng, out);
                        split(&q, p, rng, out);
                        return;
                    }
                }
            }
        }
    }
}

/// Dense square matrices over F_p.
pub mod mat {
    use super::*;

    /// Basis of the right kernel of an r×c matrix given row-major.
    pub fn kernel(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let rows = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(piv, r);
            let inv = inv_mod(a[r][c], p);
            for x in a[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let v = mul_mod(f, a[r][j], p);
                        a[i][j] = sub_mod(a[i][j], v, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Vec::new();
        for f in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, a[i][f], p);
            }
            out.push(v);
        }
        out
    }

    /// Characteristic polynomial det(xI − A), low degree first, via Hessenberg reduction.
    pub fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let inv = inv_mod(h[j + 1][j], p);
            for k in j + 2..n {
                let t = mul_mod(h[k][j], inv, p);
                if t == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = mul_mod(t, h[j + 1][c], p);
                    h[k][c] = sub_mod(h[k][c], v, p);
                }
                for row in h.iter_mut() {
                    let v = mul_mod(t, row[k], p);
                    row[j + 1] = add_mod(row[j + 1], v, p);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut next = vec![0u64; m + 1];
            let hmm = h[m - 1][m - 1];
            for (k, &c) in polys[m - 1].iter().enumerate() {
                next[k + 1] = add_mod(next[k + 1], c, p);
                next[k] = sub_mod(next[k], mul_mod(c, hmm, p), p);
            }
            let mut prod = 1u64;
            for i in 1..m {
                prod = mul_mod(prod, h[m - i][m - i - 1], p);
                if prod == 0 {
                    break;
                }
                let coef = mul_mod(h[m - i - 1][m - 1], prod, p);
                for (k, &c) in polys[m - i - 1].iter().enumerate() {
                    next[k] = sub_mod(next[k], mul_mod(coef, c, p), p);
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Solves the square system A x = b, returning `None` when A is singular.
    pub fn solve(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
        let n = a.len();
        let mut aug: Vec<Vec<u64>> = a.iter().zip(b).map(|(row, &x)| {
            let mut r = row.clone();
            r.push(x);
            r
        }).collect();
        for c in 0..n {
            let piv = (c..n).find(|&i| aug[i][c] != 0)?;
            aug.swap(piv, c);
            let inv = inv_mod(aug[c][c], p);
            for x in aug[c].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..n {
                if i != c && aug[i][c] != 0 {
                    let f = aug[i][c];
                    for j in 0..=n {
                        let v = mul_mod(f, aug[c][j], p);
                        aug[i][j] = sub_mod(aug[i][j], v, p);
                    }
                }
            }
        }
        Some(aug.into_iter().map(|r| r[n]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primes() {
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(561));
        let p = next_prime_one_mod(12, 1 << 40);
        assert!(is_prime(p) && p % 12 == 1);
        let r = root_of_unity(12, p);
        assert_eq!(pow_mod(r, 12, p), 1);
        assert_ne!(pow_mod(r, 6, p), 1);
        assert_ne!(pow_mod(r, 4, p), 1);
    }

    #[test]
    fn finds_roots() {
        let p = 1_000_003;
        // (x-3)(x-5)(x+7)(x^2+1) has three or five roots depending on p
        let mut f = vec![1u64];
        for r in [3u64, 5, p - 7] {
            f = poly::mul(&f, &[p - r, 1], p);
        }
        f = poly::mul(&f, &[1, 0, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let roots = poly::roots(&f, p, &mut rng);
        for r in &roots {
            assert_eq!(poly::eval(&f, *r, p), 0);
        }
        assert!(roots.contains(&3) && roots.contains(&5) && roots.contains(&(p - 7)));
        // p ≡ 3 mod 4 so x^2+1 contributes nothing
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn charpoly_mod_p() {
        let p = 101;
        // companion matrix of x^3 - 2x^2 + 3x - 5
        let a = vec![vec![0, 0, 5], vec![1, 0, p - 3], vec![0, 1, 2]];
        assert_eq!(mat::charpoly(&a, p), vec![p - 5, 3, p - 2, 1]);
    }

    #[test]
    fn reconstructs_fractions() {
        let p = BigInt::from(next_prime_one_mod(1, 1 << 61));
        let q = Rational::new(BigInt::from(-22), BigInt::from(7));
        let a = rational_mod(&q, p.to_u64().unwrap()).unwrap();
        assert_eq!(rational_reconstruct(&BigInt::from(a), &p), Some(q));
    }
}
