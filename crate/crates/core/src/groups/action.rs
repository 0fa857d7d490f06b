use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::{FiniteGroup, Subgroup};
use crate::cyclo::{lcm_order, CyclotomicNumber as Cyclo, SubfieldSpec};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par;

/// A point of Pⁿ, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Cyclo>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Cyclo>) -> Result<Self> {
        let Some(p) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::Spec("projective point with all coordinates zero".into()));
        };
        let mut order = 1;
        for c in &coords {
            order = lcm_order(order, c.order())?;
        }
        let inv = coords[p].inv()?;
        let coords = coords.iter().map(|c| (c * &inv).lift(order)).collect();
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Cyclo] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }

    pub fn order(&self) -> u32 {
        self.coords[0].order()
    }

    pub fn lift(&self, order: u32) -> Self {
        Self { coords: self.coords.iter().map(|c| c.lift(order)).collect() }
    }

    /// M·x, renormalized.
    pub fn apply(&self, m: &Matrix) -> Self {
        Self::new(m.mul_vec(&self.coords)).expect("invertible matrices map points to points")
    }

    pub fn galois(&self, sigma: u32) -> Result<Self> {
        let coords = self.coords.iter().map(|c| c.galois(sigma)).collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    /// Smallest subfield of the ambient field containing `base` and all coordinates.
    pub fn residue_field(&self, base: &SubfieldSpec) -> Result<SubfieldSpec> {
        base.adjoin(&self.coords)
    }

    /// The affine coordinates on the chart x_c = 1, omitting index c.
    pub fn affine(&self, chart: usize) -> Result<Vec<Cyclo>> {
        let inv = self.coords[chart].inv()?;
        Ok(self.coords.iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, x)| x * &inv).collect())
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp_canonical(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A projective-linear action of a finite group on Pⁿ.
#[derive(Clone, Debug)]
pub struct ProjectiveAction {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<Matrix>,
    linear: bool,
}

/// Returns λ with a = λ·b, if it exists.
pub(crate) fn proportionality(a: &Matrix, b: &Matrix) -> Option<Cyclo> {
    let n = b.rows();
    let (i, j) = (0..n * b.cols()).map(|k| (k / b.cols(), k % b.cols())).find(|&(i, j)| !b.get(i, j).is_zero())?;
    let lambda = a.get(i, j) * &b.get(i, j).inv().ok()?;
    (a == &b.scale(&lambda)).then_some(lambda)
}

/// True when the two matrices define the same projective transformation.
pub fn proportional_matrices(a: &Matrix, b: &Matrix) -> bool {
    a.rows() == b.rows() && proportionality(a, b).is_some()
}

impl ProjectiveAction {
    /// One matrix per group element; validates invertibility and the projective cocycle condition.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != group.size() {
            return Err(Error::Spec(format!("expected {} matrices, got {}", group.size(), matrices.len())));
        }
        let dim = matrices[0].rows().checked_sub(1).ok_or_else(|| Error::Spec("empty matrix".into()))?;
        for m in &matrices {
            if m.rows() != dim + 1 || !m.is_square() {
                return Err(Error::Spec("action matrices must all be square of the same size".into()));
            }
            if m.det().is_zero() {
                return Err(Error::Spec("action matrix is singular".into()));
            }
        }
        if proportionality(&matrices[0], &Matrix::identity(dim + 1, 1)).is_none() {
            return Err(Error::NotEquivariant("the identity element does not act by a scalar".into()));
        }
        let n = group.size();
        let checks = par::map_range(n, |g| -> Result<bool> {
            let mut linear = true;
            for h in 0..n {
                let prod = matrices[g].mul(&matrices[h]);
                let gh = &matrices[group.mul(g, h)];
                match proportionality(&prod, gh) {
                    Some(l) => linear &= l.is_one(),
                    None => {
                        return Err(Error::NotEquivariant(format!(
                            "matrices of {} and {} do not multiply to a multiple of the matrix of their product",
                            group.label(g),
                            group.label(h)
                        )))
                    }
                }
            }
            Ok(linear)
        });
        let mut linear = true;
        for c in checks {
            linear &= c?;
        }
        Ok(Self { group, dim, matrices, linear })
    }

    /// Extends generator matrices to all elements along the group's words.
    pub fn from_generators(group: Arc<FiniteGroup>, gens: Vec<Matrix>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::Spec(format!(
                "group has {} generators but {} action matrices were given",
                group.generators().len(),
                gens.len()
            )));
        }
        let size = gens.first().map(|m| m.rows()).ok_or_else(|| Error::Spec("no action matrices".into()))?;
        let order = gens.iter().map(|m| m.order()).try_fold(1, lcm_order)?;
        let matrices = (0..group.size())
            .map(|g| {
                group.word(g).iter().fold(Matrix::identity(size, order), |acc, &i| acc.mul(&gens[i]))
            })
            .collect();
        Self::new(group, matrices)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// True when the matrices form a genuine linear representation.
    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn apply(&self, g: usize, x: &ProjPoint) -> ProjPoint {
        x.apply(&self.matrices[g])
    }
}

/// One orbit of a point set, with its chosen representative.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub representative: ProjPoint,
    pub orbit: Vec<ProjPoint>,
    pub stabilizer: Subgroup,
}

pub fn orbit_and_stabilizer(action: &ProjectiveAction, x: &ProjPoint) -> (Vec<ProjPoint>, Subgroup) {
    let g = action.group();
    let images: Vec<ProjPoint> = (0..g.size()).map(|h| action.apply(h, x)).collect();
    let stab: Vec<usize> = (0..g.size()).filter(|&h| &images[h] == x).collect();
    let mut orbit = images;
    orbit.sort();
    orbit.dedup();
    let stab = Subgroup::new(g.clone(), stab).expect("stabilizers are subgroups");
    (orbit, stab)
}

/// Splits a G-stable finite point set into orbits, ordered by their
/// lexicographically least point, which serves as representative.
pub fn partition_into_orbits(action: &ProjectiveAction, pts: &[ProjPoint]) -> Result<Vec<OrbitData>> {
    let mut sorted = pts.to_vec();
    sorted.sort();
    sorted.dedup();
    let g = action.group();
    for x in &sorted {
        for &gen in g.generators() {
            let y = action.apply(gen, x);
            if sorted.binary_search(&y).is_err() {
                return Err(Error::NotGStable { element: gen, point: x.to_string() });
            }
        }
    }
    let mut done = vec![false; sorted.len()];
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        if done[i] {
            continue;
        }
        let (orbit, stabilizer) = orbit_and_stabilizer(action, &sorted[i]);
        for y in &orbit {
            let j = sorted.binary_search(y).expect("orbit stays in a stable set");
            done[j] = true;
        }
        out.push(OrbitData { representative: sorted[i].clone(), orbit, stabilizer });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_from_permutations;

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        let r: Vec<Vec<Cyclo>> = rows.iter().map(|row| row.iter().map(|&x| Cyclo::from_int(x)).collect()).collect();
        Matrix::from_rows(&r, 1)
    }

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::new(c.iter().map(|&x| Cyclo::from_int(x)).collect()).unwrap()
    }

    fn z4() -> ProjectiveAction {
        let g = Arc::new(FiniteGroup::cyclic(4));
        ProjectiveAction::from_generators(g, vec![int_matrix(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]])]).unwrap()
    }

    #[test]
    fn z4_orbit() {
        let a = z4();
        let (orbit, stab) = orbit_and_stabilizer(&a, &pt(&[1, 0, 1]));
        assert_eq!(orbit.len(), 4);
        assert_eq!(stab.order(), 1);
        for p in [pt(&[0, 1, 1]), pt(&[-1, 0, 1]), pt(&[0, -1, 1])] {
            assert!(orbit.contains(&p));
        }
        assert!(a.is_linear());
    }

    #[test]
    fn a4_orbit_of_frame_point() {
        let (g, _) = group_from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        let gens = vec![
            int_matrix(&[&[1, 0, 0], &[1, -1, 1], &[1, -1, 0]]),
            int_matrix(&[&[-1, 1, 0], &[0, 1, 0], &[0, 1, -1]]),
        ];
        let a = ProjectiveAction::from_generators(Arc::new(g), gens).unwrap();
        let (orbit, stab) = orbit_and_stabilizer(&a, &pt(&[1, 2, 3]));
        assert_eq!(orbit.len(), 4);
        assert_eq!(stab.order(), 3);
        let parts = partition_into_orbits(&a, &orbit).unwrap();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn unstable_set_is_rejected() {
        let a = z4();
        assert!(matches!(partition_into_orbits(&a, &[pt(&[1, 0, 1])]), Err(Error::NotGStable { .. })));
        assert!(partition_into_orbits(&a, &[]).unwrap().is_empty());
    }

    #[test]
    fn c3_fixed_points() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let a = ProjectiveAction::from_generators(g, vec![int_matrix(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])]).unwrap();
        let w = Cyclo::zeta(3);
        let p1 = ProjPoint::new(vec![Cyclo::one(3), w.clone(), &w * &w]).unwrap();
        let (orbit, stab) = orbit_and_stabilizer(&a, &p1);
        assert_eq!(orbit.len(), 1);
        assert_eq!(stab.order(), 3);
    }
}
