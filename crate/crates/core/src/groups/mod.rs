//! Finite groups stored by full multiplication table, their subgroups and
//! conjugacy classes, and projective-linear actions on Pⁿ.

mod action;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use action::{orbit_and_stabilizer, proportional_matrices, partition_into_orbits, OrbitData, ProjPoint, ProjectiveAction};

pub const DEFAULT_GROUP_BOUND: usize = 10080;

/// A finite group with identity at index 0 and `mul(g, h) = g∘h`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<u32>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    /// For each element, a word in the generators (indices into `generators`)
    /// whose left-to-right product is the element.
    words: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a multiplication table: identity at 0, inverses,
    /// associativity (exhaustive for small groups, sampled otherwise) and
    /// generation by `generators`.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square or has out-of-range entries".into()));
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == 0) {
                Some(h) if table[h][g] == 0 => inverse[g] = h,
                _ => return Err(Error::InvalidGroup(format!("element {g} has no two-sided inverse"))),
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= 40 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..4000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::InvalidGroup("generator index out of range".into()));
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let words = words_by_bfs(n, &flat, &generators)
            .ok_or_else(|| Error::InvalidGroup("generators do not generate the whole table".into()))?;
        Ok(Self { size: n, table: flat, inverse, generators, labels: None, words })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
        self
    }

    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]], Vec::new()).expect("trivial group")
    }

    /// Cyclic group of order n with generator at index 1 and element k = g^k.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::from_table(table, gens).expect("cyclic group")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    /// h g h⁻¹.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let ord = self.element_order(g) as i64;
        let k = k.rem_euclid(ord);
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.size).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.size)
    }
}

fn words_by_bfs(n: usize, table: &[u32], gens: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in gens.iter().enumerate() {
            let y = table[x * n + g] as usize;
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w.push(i);
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    words.into_iter().collect()
}

/// Closes `gens` under `mul`, identifying elements by `key`. Element 0 is the
/// identity and elements appear in breadth-first order. Returns the group and
/// the element values.
pub fn close_under<T, K, M, F>(identity: T, gens: &[T], mul: M, key: F, bound: usize) -> Result<(FiniteGroup, Vec<T>)>
where
    T: Clone,
    K: Hash + Eq,
    M: Fn(&T, &T) -> T,
    F: Fn(&T) -> K,
{
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<K, usize> = HashMap::from([(key(&identity), 0)]);
    let mut gen_idx = Vec::with_capacity(gens.len());
    for g in gens {
        let k = key(g);
        let i = *index.entry(k).or_insert_with(|| {
            elems.push(g.clone());
            elems.len() - 1
        });
        gen_idx.push(i);
    }
    let mut frontier = 0;
    while frontier < elems.len() {
        for g in gens {
            let y = mul(&elems[frontier], g);
            let k = key(&y);
            if !index.contains_key(&k) {
                if elems.len() >= bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                index.insert(k, elems.len());
                elems.push(y);
            }
        }
        frontier += 1;
    }
    let n = elems.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| index[&key(&mul(&elems[a], &elems[b]))]).collect())
        .collect();
    let group = FiniteGroup::from_table(table, gen_idx)?;
    Ok((group, elems))
}

/// Group generated by permutations of {0,…,m−1}; `perm[i]` is the image of i
/// and products compose right to left. Also returns the permutation of each element.
pub fn group_from_permutations(perms: &[Vec<usize>]) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
    group_from_permutations_bounded(perms, DEFAULT_GROUP_BOUND)
}

pub fn group_from_permutations_bounded(perms: &[Vec<usize>], bound: usize) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
    let m = perms.first().map_or(0, |p| p.len());
    for p in perms {
        let mut seen = vec![false; m];
        if p.len() != m || p.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::InvalidGroup(format!("{p:?} is not a permutation of 0..{m}")));
        }
    }
    let id: Vec<usize> = (0..m).collect();
    let compose = |a: &Vec<usize>, b: &Vec<usize>| b.iter().map(|&i| a[i]).collect::<Vec<usize>>();
    close_under(id, perms, compose, |p| p.clone(), bound)
}

/// Conjugacy classes, each sorted, ordered by their smallest element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.size();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut cls: Vec<usize> = (0..n).map(|h| g.conjugate(x, h)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &y in &cls {
            class_of[y] = id;
        }
        classes.push(cls);
    }
    classes
}

/// A subgroup, as a sorted list of element indices of its parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let n = parent.size();
        if members.first() != Some(&0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        if members.iter().any(|&x| x >= n) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!("not closed under product at ({a},{b})")));
                }
            }
        }
        Ok(Self { parent, members })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let members = (0..parent.size()).collect();
        Self { parent, members }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Self { parent, members: vec![0] }
    }

    /// Subgroup generated by the given elements.
    pub fn generated(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            for &g in gens {
                let y = parent.mul(members[i], g);
                if !members.contains(&y) {
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Self { parent, members }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.size() / self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Position of a parent element inside `members`.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.size()
    }

    /// h H h⁻¹.
    pub fn conjugate_by(&self, h: usize) -> Self {
        let members = self.members.iter().map(|&g| self.parent.conjugate(g, h)).collect();
        Self::new(self.parent.clone(), members).expect("conjugate of a subgroup")
    }

    /// The subgroup as a standalone group; element i corresponds to `members()[i]`.
    pub fn as_group(&self) -> FiniteGroup {
        let n = self.members.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.position(self.parent.mul(self.members[a], self.members[b])).unwrap()).collect())
            .collect();
        let gens: Vec<usize> = (1..n).collect();
        let gens = minimal_generators(n, &table, gens);
        let mut g = FiniteGroup::from_table(table, gens).expect("subgroup table is a group");
        if let Some(labels) = &self.parent.labels {
            g.labels = Some(self.members.iter().map(|&m| labels[m].clone()).collect());
        }
        g
    }
}

/// Greedily keeps only the elements needed to generate.
fn minimal_generators(n: usize, table: &[Vec<usize>], candidates: Vec<usize>) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for c in candidates {
        if span.contains(&c) {
            continue;
        }
        gens.push(c);
        span = vec![0];
        let mut i = 0;
        while i < span.len() {
            for &g in &gens {
                let y = table[span[i]][g];
                if !span.contains(&y) {
                    span.push(y);
                }
            }
            i += 1;
        }
        if span.len() == n {
            break;
        }
    }
    gens
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || *self.parent == *other.parent && self.members == other.members
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_closure() {
        let (c4, _) = group_from_permutations(&[vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(c4.size(), 4);
        let (a4, _) = group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(a4.size(), 12);
        let (t, _) = group_from_permutations(&[]).unwrap();
        assert_eq!(t.size(), 1);
        let s8 = group_from_permutations_bounded(&[vec![1, 2, 3, 4, 5, 6, 7, 0], vec![1, 0, 2, 3, 4, 5, 6, 7]], 10080);
        assert!(matches!(s8, Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn classes() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(conjugacy_classes(&c4).len(), 4);
        let (a4, _) = group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        let mut sizes: Vec<usize> = conjugacy_classes(&a4).iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
        assert_eq!(conjugacy_classes(&FiniteGroup::trivial()), vec![vec![0]]);
    }

    #[test]
    fn words_reproduce_elements() {
        let (a4, perms) = group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        for g in 0..a4.size() {
            let mut acc = 0;
            for &i in a4.word(g) {
                acc = a4.mul(acc, a4.generators()[i]);
            }
            assert_eq!(acc, g);
        }
        // mul(g, h) composes h first
        let (g, h) = (1, 2);
        let gh = a4.mul(g, h);
        let expect: Vec<usize> = perms[h].iter().map(|&i| perms[g][i]).collect();
        assert_eq!(perms[gh], expect);
    }

    #[test]
    fn subgroups() {
        let g = Arc::new(FiniteGroup::cyclic(6));
        let h = Subgroup::generated(g.clone(), &[2]);
        assert_eq!(h.members(), &[0, 2, 4]);
        assert_eq!(h.as_group().size(), 3);
        assert!(Subgroup::new(g, vec![0, 1]).is_err());
    }
}
