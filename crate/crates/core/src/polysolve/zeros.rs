use std::sync::Arc;

use super::poly::{Monomial, MultiPoly};
use super::quotient::QuotientAlgebra;
use super::roots::{self, roots_in_field};
use crate::cyclo::CyclotomicNumber as Cyclo;
use crate::error::{Error, Result};
use crate::groups::ProjPoint;
use crate::linalg::Matrix;
use crate::par;

/// One isolated zero together with its local algebra, presented as a summand
/// of the quotient algebra on the chart x_chart = 1.
#[derive(Clone, Debug)]
pub struct ZeroDatum {
    pub point: ProjPoint,
    pub chart: usize,
    pub multiplicity: usize,
    /// Standard monomials of the chart algebra (in the chart's n variables).
    pub monomials: Arc<Vec<Monomial>>,
    /// Columns span the local summand inside the chart algebra.
    pub local_basis: Matrix,
    /// Multiplication by each affine coordinate on the local summand.
    pub local_ops: Vec<Matrix>,
    /// The local unit e_x in the coordinates of `local_basis`.
    pub unit: Vec<Cyclo>,
}

#[derive(Clone, Debug)]
pub struct ZeroSet {
    /// Zeros sorted by point, each reported on its pivot chart.
    pub points: Vec<ZeroDatum>,
    /// Dimension of the quotient algebra on each chart.
    pub chart_dims: Vec<usize>,
    pub total_multiplicity: usize,
    /// Product of the section degrees.
    pub bezout: u64,
}

/// Validates a square homogeneous system in n+1 variables; returns the degrees.
pub fn section_degrees(sections: &[MultiPoly]) -> Result<Vec<u32>> {
    let nvars = sections.first().map_or(0, |s| s.nvars());
    if nvars == 0 || sections.len() + 1 != nvars {
        return Err(Error::Spec(format!("need n sections on P^n, got {} sections in {} variables", sections.len(), nvars)));
    }
    sections
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s.is_zero() {
                return Err(Error::Spec(format!("section {i} is zero")));
            }
            s.homogeneous_degree().ok_or_else(|| Error::Spec(format!("section {i} is not homogeneous")))
        })
        .collect()
}

pub fn is_zero_of(sections: &[MultiPoly], x: &ProjPoint) -> bool {
    sections.iter().all(|s| s.eval(x.coords()).is_zero())
}

struct ChartResult {
    dim: usize,
    points: Vec<ZeroDatum>,
}

fn solve_chart(sections: &[MultiPoly], chart: usize, order: u32, hints: &[ProjPoint]) -> Result<ChartResult> {
    let n = sections.len();
    let deh: Vec<MultiPoly> = sections.iter().map(|s| s.dehomogenize(chart)).collect();
    let alg = QuotientAlgebra::new(&deh, n, chart)?;
    let d = alg.dim();
    if d == 0 {
        return Ok(ChartResult { dim: 0, points: Vec::new() });
    }
    let affine_hints: Vec<Vec<Cyclo>> = hints.iter().filter(|h| !h.coords()[chart].is_zero()).map(|h| h.affine(chart)).collect::<Result<_>>()?;
    let mut spaces: Vec<(Matrix, Vec<Cyclo>)> = vec![(Matrix::identity(d, order), Vec::new())];
    let mut residual: Vec<String> = Vec::new();
    for i in 0..n {
        let cands: Vec<Cyclo> = affine_hints.iter().map(|a| a[i].clone()).collect();
        let mut next = Vec::new();
        for (basis, coords) in &spaces {
            let r = alg.multiplication_matrix(i).restrict(basis)?;
            let m = r.cols();
            let search = roots_in_field(&r.charpoly(), order, &cands);
            if !search.is_complete() {
                residual.push(roots::to_string(&search.residual, &format!("x{}", if i < chart { i } else { i + 1 })));
            }
            for lambda in search.roots {
                let ker = r.shift(&lambda).pow(m).kernel();
                let mut c = coords.clone();
                c.push(lambda);
                next.push((basis.mul(&ker), c));
            }
        }
        spaces = next;
    }
    if !residual.is_empty() {
        return Err(Error::UnresolvedLocus { chart, residual });
    }
    let found: usize = spaces.iter().map(|(b, _)| b.cols()).sum();
    if found != d {
        return Err(Error::Inconsistent(format!("chart {chart}: local summands have total dimension {found}, algebra has {d}")));
    }
    // Split the unit 1 along the direct sum of local summands.
    let mut all = spaces[0].0.clone();
    for (b, _) in &spaces[1..] {
        all = all.hstack(b);
    }
    let mut one = Matrix::zeros(d, 1, order);
    one.set(alg.unit_index(), 0, Cyclo::from_int(1));
    let split = all.solve(&one)?.column(0);
    let monomials = Arc::new(alg.basis().to_vec());
    let mut offset = 0;
    let mut points = Vec::with_capacity(spaces.len());
    for (basis, affine) in spaces {
        let m = basis.cols();
        if !deh.iter().all(|f| f.eval(&affine).is_zero()) {
            return Err(Error::Inconsistent(format!("chart {chart}: eigenvalue tuple is not a zero")));
        }
        let mut coords = affine;
        coords.insert(chart, Cyclo::from_int(1));
        let local_ops = (0..n).map(|i| alg.multiplication_matrix(i).restrict(&basis)).collect::<Result<Vec<_>>>()?;
        points.push(ZeroDatum {
            point: ProjPoint::new(coords)?,
            chart,
            multiplicity: m,
            monomials: monomials.clone(),
            local_basis: basis,
            local_ops,
            unit: split[offset..offset + m].to_vec(),
        });
        offset += m;
    }
    Ok(ChartResult { dim: d, points })
}

/// All zeros of a square homogeneous system on Pⁿ over Q(ζ_order).
///
/// Every chart is solved independently; each point is reported from its pivot
/// chart and the multiplicities seen on the other charts must agree. Points
/// with coordinates outside Q(ζ_order) raise `UnresolvedLocus` unless supplied
/// as hints.
pub fn find_zeros(sections: &[MultiPoly], order: u32, hints: &[ProjPoint]) -> Result<ZeroSet> {
    let degrees = section_degrees(sections)?;
    for h in hints {
        if h.dim() + 1 != sections[0].nvars() || !is_zero_of(sections, h) {
            return Err(Error::NotAZero(h.to_string()));
        }
    }
    let charts: Vec<usize> = (0..sections[0].nvars()).collect();
    let results = par::try_map(&charts, |&c| solve_chart(sections, c, order, hints))?;
    let mut points: Vec<ZeroDatum> = Vec::new();
    for (c, r) in results.iter().enumerate() {
        points.extend(r.points.iter().filter(|z| z.point.pivot() == c).cloned());
    }
    points.sort_by(|a, b| a.point.cmp(&b.point));
    for (c, r) in results.iter().enumerate() {
        let mut seen: Vec<(ProjPoint, usize)> = r.points.iter().map(|z| (z.point.clone(), z.multiplicity)).collect();
        let mut expected: Vec<(ProjPoint, usize)> =
            points.iter().filter(|z| !z.point.coords()[c].is_zero()).map(|z| (z.point.clone(), z.multiplicity)).collect();
        seen.sort();
        expected.sort();
        if seen != expected {
            return Err(Error::Inconsistent(format!("chart {c} disagrees with the pivot charts")));
        }
    }
    let total: usize = points.iter().map(|z| z.multiplicity).sum();
    let bezout: u64 = degrees.iter().map(|&d| d as u64).product();
    if total as u64 != bezout {
        return Err(Error::Inconsistent(format!("total multiplicity {total} differs from the degree product {bezout}")));
    }
    Ok(ZeroSet { points, chart_dims: results.iter().map(|r| r.dim).collect(), total_multiplicity: total, bezout })
}

/// Whether the Jacobian of the dehomogenized system is invertible at a zero.
pub fn jacobian_is_invertible(sections: &[MultiPoly], x: &ProjPoint) -> Result<bool> {
    if !is_zero_of(sections, x) {
        return Err(Error::NotAZero(x.to_string()));
    }
    let c = x.pivot();
    let affine = x.affine(c)?;
    let n = sections.len();
    let mut order = x.order();
    let rows: Vec<Vec<Cyclo>> = sections
        .iter()
        .map(|s| {
            let f = s.dehomogenize(c);
            (0..n).map(|j| f.derivative(j).eval(&affine)).collect()
        })
        .collect();
    for row in &rows {
        for v in row {
            order = crate::cyclo::lcm_order(order, v.order())?;
        }
    }
    Ok(!Matrix::from_rows(&rows, order).det().is_zero())
}
