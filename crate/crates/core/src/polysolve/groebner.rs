//! Buchberger's algorithm with the product and chain criteria.

use super::poly::{divides, mono_div, mono_lcm, MultiPoly};

/// Fully reduces `f` modulo `basis` (every term, not just the leading one).
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut p = f.clone();
    let mut rem_terms = Vec::new();
    while let Some((m, c)) = p.leading().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| divides(lm, &m))) {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero basis element");
                let q = &c * &lc.inv().expect("nonzero leading coefficient");
                p = p.sub(&g.mul_term(&mono_div(&m, lm), &q));
            }
            None => {
                rem_terms.push((m.clone(), c.clone()));
                p = p.sub(&MultiPoly::from_terms_ordered(p.vars().clone(), p.order(), vec![(m, c)]));
            }
        }
    }
    MultiPoly::from_terms_ordered(f.vars().clone(), f.order(), rem_terms)
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (a, ca) = f.leading().expect("nonzero");
    let (b, cb) = g.leading().expect("nonzero");
    let l = mono_lcm(a, b);
    let left = f.mul_term(&mono_div(&l, a), &ca.inv().expect("nonzero"));
    let right = g.mul_term(&mono_div(&l, b), &cb.inv().expect("nonzero"));
    left.sub(&right)
}

/// The reduced Gröbner basis of the ideal generated by `gens`, monic and
/// sorted by increasing leading monomial. The ideal (1) yields `[1]`.
pub fn buchberger(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.make_monic());
        }
    }
    if basis.is_empty() {
        return basis;
    }
    let order = basis[0].order();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // Normal selection strategy: the pair with the smallest lcm goes first.
        let lcm_of = |&(i, j): &(usize, usize), b: &[MultiPoly]| mono_lcm(b[i].leading_monomial().unwrap(), b[j].leading_monomial().unwrap());
        let best = (0..pairs.len()).min_by(|&x, &y| order.cmp(&lcm_of(&pairs[x], &basis), &lcm_of(&pairs[y], &basis))).unwrap();
        let (i, j) = pairs.swap_remove(best);
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        let l = mono_lcm(li, lj);
        // Product criterion: coprime leading monomials reduce to zero.
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // Chain criterion: some k with LM(k) | lcm whose pairs with i and j are already handled.
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && divides(basis[k].leading_monomial().unwrap(), &l) && !pending(i, k) && !pending(j, k)
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.make_monic());
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    reduce(basis)
}

fn reduce(mut basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let order = basis[0].order();
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| divides(h.leading_monomial().unwrap(), lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = minimal[k].leading().cloned().unwrap();
        let tail = minimal[k].sub(&MultiPoly::from_terms_ordered(minimal[k].vars().clone(), order, vec![(lm.clone(), lc.clone())]));
        let tail = normal_form(&tail, &others);
        let lead = MultiPoly::from_terms_ordered(minimal[k].vars().clone(), order, vec![(lm, lc)]);
        out.push(lead.add(&tail).make_monic());
    }
    out
}

/// Ideal membership test against a Gröbner basis.
pub fn reduces_to_zero(f: &MultiPoly, basis: &[MultiPoly]) -> bool {
    normal_form(f, basis).is_zero()
}
