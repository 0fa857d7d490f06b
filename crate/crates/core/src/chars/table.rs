//! Character tables by Dixon's modular version of Burnside's algorithm.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclo::{CyclotomicNumber as Cyclo, Rational};
use crate::error::{Error, Result};
use crate::groups::{conjugacy_classes, FiniteGroup};
use crate::modp::{self, add_mod, inv_mod, mat, mul_mod, pow_mod, sub_mod};

/// Irreducible complex characters of a finite group.
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// Values live in Q(ζ_order), with order the group exponent.
    order: u32,
    irreducibles: Vec<Vec<Cyclo>>,
    labels: Vec<String>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    pub fn representative(&self, k: usize) -> usize {
        self.classes[k][0]
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn irreducibles(&self) -> &[Vec<Cyclo>] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &[Cyclo] {
        &self.irreducibles[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i64 {
        let d = self.irreducibles[i][0].to_integer().expect("degrees are integers");
        i64::try_from(d).expect("degree fits in i64")
    }

    /// Class of g^k for a representative g of class `k_class`.
    pub fn power_class(&self, class: usize, k: i64) -> usize {
        let g = self.representative(class);
        self.class_of[self.group.pow(g, k)]
    }

    /// (1/|G|) Σ_g a(g)·conj(b(g)), on class-value vectors.
    pub fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero(self.order);
        for k in 0..self.classes.len() {
            let term = &a[k] * &b[k].conj();
            acc += &term * &Cyclo::from_int(self.class_size(k) as i64);
        }
        let inv = Rational::new(BigInt::from(1), BigInt::from(self.group.size() as i64));
        &acc * &Cyclo::from_rational(inv)
    }

    /// Checks row and column orthogonality exactly.
    pub fn verify_orthogonality(&self) -> bool {
        let r = self.classes.len();
        for i in 0..r {
            for j in 0..r {
                let ip = self.inner(&self.irreducibles[i], &self.irreducibles[j]);
                let expect = if i == j { 1 } else { 0 };
                if ip != Cyclo::from_int(expect) {
                    return false;
                }
            }
        }
        let n = self.group.size() as i64;
        for k in 0..r {
            for l in 0..r {
                let mut acc = Cyclo::zero(self.order);
                for chi in &self.irreducibles {
                    acc += &chi[k] * &chi[l].conj();
                }
                let expect = if k == l { n / self.class_size(k) as i64 } else { 0 };
                if acc != Cyclo::from_int(expect) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            group_order: self.group.size(),
            value_order: self.order,
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    representative: c[0],
                    representative_label: self.group.label(c[0]),
                    size: c.len(),
                    element_order: self.group.element_order(c[0]),
                    elements: c.clone(),
                })
                .collect(),
            labels: self.labels.clone(),
            irreducibles: self.irreducibles.clone(),
        }
    }

    /// A human-readable grid with one row per irreducible character.
    pub fn grid(&self) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.classes.iter().map(|c| format!("{}^{}", self.group.label(c[0]), c.len())));
        rows.push(header);
        for (label, chi) in self.labels.iter().zip(&self.irreducibles) {
            let mut row = vec![label.clone()];
            row.extend(chi.iter().map(|v| v.to_string()));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in rows {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterTable({:?}, {} classes)", self.group, self.classes.len())
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassJson {
    pub representative: usize,
    pub representative_label: String,
    pub size: usize,
    pub element_order: usize,
    pub elements: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableJson {
    pub group_order: usize,
    pub value_order: u32,
    pub classes: Vec<ClassJson>,
    pub labels: Vec<String>,
    pub irreducibles: Vec<Vec<Cyclo>>,
}

const MAX_PRIME_ATTEMPTS: usize = 24;

/// Builds the character table; irreducibles are sorted by degree with the
/// trivial character first, ties broken by descending canonical value order.
pub fn character_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    let classes = conjugacy_classes(&group);
    let mut class_of = vec![0usize; group.size()];
    for (k, c) in classes.iter().enumerate() {
        for &g in c {
            class_of[g] = k;
        }
    }
    let e = group.exponent() as u64;
    let order = u32::try_from(e).map_err(|_| Error::CharacterTable("exponent too large".into()))?;
    if order > crate::cyclo::max_order() {
        return Err(Error::OrderOverflow { order: e, max: crate::cyclo::max_order() });
    }
    let consts = structure_constants(&group, &classes, &class_of);
    let n = group.size() as u64;
    let mut p = modp::next_prime_one_mod(e, n.max(2 * ((n as f64).sqrt() as u64 + 1)));
    for _ in 0..MAX_PRIME_ATTEMPTS {
        if let Some(irr) = dixon_mod_p(&group, &classes, &class_of, &consts, e, p) {
            let mut table = CharacterTable { group: group.clone(), classes: classes.clone(), class_of: class_of.clone(), order, irreducibles: irr, labels: Vec::new() };
            sort_irreducibles(&mut table.irreducibles);
            table.labels = (0..table.irreducibles.len())
                .map(|i| if i == 0 { "1".to_string() } else { format!("chi{i}") })
                .collect();
            if table.verify_orthogonality() {
                return Ok(table);
            }
        }
        p = modp::next_prime_one_mod(e, p);
    }
    Err(Error::CharacterTable(format!("modular lift failed for {MAX_PRIME_ATTEMPTS} primes")))
}

fn sort_irreducibles(irr: &mut [Vec<Cyclo>]) {
    let is_trivial = |chi: &Vec<Cyclo>| chi.iter().all(|v| v.is_one());
    irr.sort_by(|a, b| {
        let da = a[0].to_integer().unwrap();
        let db = b[0].to_integer().unwrap();
        da.cmp(&db)
            .then_with(|| is_trivial(b).cmp(&is_trivial(a)))
            .then_with(|| {
                for (x, y) in a.iter().zip(b.iter()) {
                    match y.cmp_canonical(x) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    });
}

/// c[i][j][k] = #{(x, y) : x ∈ C_i, y ∈ C_j, xy = z_k} for a fixed z_k ∈ C_k.
fn structure_constants(group: &FiniteGroup, classes: &[Vec<usize>], class_of: &[usize]) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    for (i, ci) in classes.iter().enumerate() {
        for &x in ci {
            let xinv = group.inv(x);
            for (k, ck) in classes.iter().enumerate() {
                let y = group.mul(xinv, ck[0]);
                c[i][class_of[y]][k] += 1;
            }
        }
    }
    c
}

fn dixon_mod_p(
    group: &FiniteGroup,
    classes: &[Vec<usize>],
    class_of: &[usize],
    consts: &[Vec<Vec<u64>>],
    e: u64,
    p: u64,
) -> Option<Vec<Vec<Cyclo>>> {
    let r = classes.len();
    let n = group.size() as u64;
    // common eigenvectors of the class matrices A_i with (A_i)[j][k] = c[i][j][k]
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(p);
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a: Vec<Vec<u64>> = (0..r).map(|j| (0..r).map(|k| consts[i][j][k] % p).collect()).collect();
        let eig = modp::poly::roots(&mat::charpoly(&a, p), p, &mut rng);
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
                continue;
            }
            let mut found = 0;
            for &lambda in &eig {
                // (A - λ) applied to the basis vectors of s, as an r × d matrix
                let cols: Vec<Vec<u64>> = s
                    .iter()
                    .map(|v| {
                        (0..r)
                            .map(|j| {
                                let mut acc = 0;
                                for k in 0..r {
                                    acc = add_mod(acc, mul_mod(a[j][k], v[k], p), p);
                                }
                                sub_mod(acc, mul_mod(lambda, v[j], p), p)
                            })
                            .collect()
                    })
                    .collect();
                let rows: Vec<Vec<u64>> = (0..r).map(|j| cols.iter().map(|c| c[j]).collect()).collect();
                let ker = mat::kernel(&rows, s.len(), p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|j| {
                                let mut acc = 0;
                                for (t, v) in s.iter().enumerate() {
                                    acc = add_mod(acc, mul_mod(c[t], v[j], p), p);
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != s.len() {
                return None;
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return None;
    }
    let z = modp::root_of_unity(e, p);
    let inv_e = inv_mod(e % p, p);
    let mut out = Vec::with_capacity(r);
    for s in spaces {
        let mut w = s[0].clone();
        if w[0] == 0 {
            return None;
        }
        let inv0 = inv_mod(w[0], p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv0, p);
        }
        // χ(1)² = |G| / Σ_k w_k w_{k*} / h_k
        let mut denom = 0;
        for k in 0..r {
            let kstar = class_of[group.inv(classes[k][0])];
            let h = classes[k].len() as u64;
            denom = add_mod(denom, mul_mod(mul_mod(w[k], w[kstar], p), inv_mod(h % p, p), p), p);
        }
        if denom == 0 {
            return None;
        }
        let d2 = mul_mod(n % p, inv_mod(denom, p), p);
        let d = (1..=((n as f64).sqrt() as u64 + 1)).find(|d| d * d == d2)?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| mul_mod(mul_mod(w[k], d, p), inv_mod(classes[k].len() as u64 % p, p), p))
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let g = classes[k][0];
            let mut terms = Vec::new();
            let mut total = 0u64;
            for j in 0..e {
                let mut acc = 0u64;
                let mut gl = 0usize;
                for l in 0..e {
                    let zl = pow_mod(z, (e - (j * l) % e) % e, p);
                    acc = add_mod(acc, mul_mod(chi_mod[class_of[gl]], zl, p), p);
                    gl = group.mul(gl, g);
                }
                let mu = mul_mod(acc, inv_e, p);
                if mu > d {
                    return None;
                }
                total += mu;
                if mu != 0 {
                    terms.push((j as u32, Rational::from_integer(BigInt::from(mu))));
                }
            }
            if total != d {
                return None;
            }
            values.push(Cyclo::from_powers(e as u32, &terms));
        }
        out.push(values);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_from_permutations;

    #[test]
    fn c4_table() {
        let t = character_table(Arc::new(FiniteGroup::cyclic(4))).unwrap();
        assert_eq!(t.num_classes(), 4);
        assert!(t.verify_orthogonality());
        let i = Cyclo::zeta(4);
        assert!(t.irreducibles().iter().any(|chi| chi[1] == i));
        assert!(t.irreducibles()[0].iter().all(|v| v.is_one()));
    }

    #[test]
    fn a4_degrees() {
        let (g, _) = group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        let t = character_table(Arc::new(g)).unwrap();
        let degs: Vec<i64> = (0..t.num_classes()).map(|i| t.degree(i)).collect();
        assert_eq!(degs, vec![1, 1, 1, 3]);
    }

    #[test]
    fn c3_labels() {
        let t = character_table(Arc::new(FiniteGroup::cyclic(3))).unwrap();
        assert_eq!(t.irreducible(1)[1], Cyclo::zeta(3));
        assert_eq!(t.irreducible(2)[1], Cyclo::zeta_pow(3, 2));
    }

    #[test]
    fn trivial_and_s3() {
        let t = character_table(Arc::new(FiniteGroup::trivial())).unwrap();
        assert_eq!(t.num_classes(), 1);
        let (s3, _) = group_from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let t = character_table(Arc::new(s3)).unwrap();
        let degs: Vec<i64> = (0..t.num_classes()).map(|i| t.degree(i)).collect();
        assert_eq!(degs, vec![1, 1, 2]);
    }
}
