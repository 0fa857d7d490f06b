//! Self-intersection of an equivariantly parametrized conic, from a JSON file.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::input::{load_group, matrix_from_json, ActionJson, GroupJson, MatrixJson};
use super::{equivariant_euler_number, ProblemSpec};
use crate::chars::{character_table, CharacterJson};
use crate::cyclo::{lcm_order, max_order};
use crate::error::{Error, Result};
use crate::eulerchar::{chi_p1, conic_self_intersection, EquivariantConic, TwoDimRep};
use crate::groups::ProjectiveAction;
use crate::linalg::Matrix;
use crate::polysolve::{default_vars, parse_poly};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SelfIntJson {
    #[serde(default)]
    pub name: Option<String>,
    pub cyclotomic_order: u32,
    pub group: GroupJson,
    #[serde(default)]
    pub action_matrices: Option<ActionJson>,
    /// Quadratic form in x0, x1, x2.
    pub conic: String,
    /// Three quadratic forms in s, t.
    pub parametrization: Vec<String>,
    /// One 2×2 matrix per group generator acting on (s, t).
    pub induced_matrices: Vec<MatrixJson>,
    /// An Euler-number problem for the same bundle, compared by section independence.
    #[serde(default)]
    pub compare_with: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IndependenceJson {
    pub compared_with: String,
    pub other_value: CharacterJson,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SelfIntReport {
    pub value: CharacterJson,
    pub induced_character: CharacterJson,
    pub chi_o: CharacterJson,
    pub chi_o_minus4: CharacterJson,
    pub lambda: CharacterJson,
    pub mu: CharacterJson,
    pub section_independence: Option<IndependenceJson>,
}

impl SelfIntReport {
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub struct SelfIntProblem {
    pub conic: EquivariantConic,
    pub source: SelfIntJson,
    pub dir: PathBuf,
}

impl SelfIntProblem {
    pub fn from_json(p: SelfIntJson, dir: &Path) -> Result<Self> {
        let n = p.cyclotomic_order;
        if n == 0 || n > max_order() {
            return Err(Error::OrderOverflow { order: n as u64, max: max_order() });
        }
        let loaded = load_group(&p.group)?;
        let gens = match (&p.action_matrices, loaded.generator_matrices) {
            (Some(a), _) => a.matrices()?,
            (None, Some(m)) => m,
            (None, None) => return Err(Error::Spec("actionMatrices is required for permutation groups".into())),
        };
        let lifted = |m: &Matrix| -> Result<Matrix> {
            if n % m.order() != 0 {
                return Err(Error::Spec(format!("matrix entries need Q(zeta({})), order {n} was declared", lcm_order(n, m.order())?)));
            }
            Ok(Matrix::from_rows(&m.to_rows(), n))
        };
        let gens = gens.iter().map(lifted).collect::<Result<Vec<_>>>()?;
        let action = ProjectiveAction::from_generators(loaded.group.clone(), gens)?;
        let table = Arc::new(character_table(loaded.group)?);
        let induced = p.induced_matrices.iter().map(|m| matrix_from_json(m).and_then(|m| lifted(&m))).collect::<Result<Vec<_>>>()?;
        let induced = TwoDimRep::from_generators(table, induced)?;
        let conic = parse_poly(&p.conic, &default_vars(3))?;
        let st: Arc<[String]> = vec!["s".to_string(), "t".to_string()].into();
        let param = p.parametrization.iter().map(|f| parse_poly(f, &st)).collect::<Result<Vec<_>>>()?;
        let conic = EquivariantConic::new(action, conic, param, induced)?;
        Ok(Self { conic, source: p, dir: dir.to_path_buf() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Self::from_json(serde_json::from_str(&text)?, dir)
    }

    pub fn run(&self) -> Result<SelfIntReport> {
        let c = &self.conic;
        let value = conic_self_intersection(c)?;
        let section_independence = match &self.source.compare_with {
            Some(rel) => {
                let other = ProblemSpec::load(&self.dir.join(rel))?;
                check_same_bundle(c, &other)?;
                let answer = equivariant_euler_number(&other)?;
                Some(IndependenceJson { compared_with: rel.clone(), other_value: answer.value.to_json(), agrees: answer.value == value })
            }
            None => None,
        };
        Ok(SelfIntReport {
            value: value.to_json(),
            induced_character: c.induced().character()?.to_json(),
            chi_o: chi_p1(c.induced(), 0)?.to_json(),
            chi_o_minus4: chi_p1(c.induced(), -4)?.to_json(),
            lambda: c.linearization_twist()?.to_json(),
            mu: c.conic_character()?.to_json(),
            section_independence,
        })
    }
}

/// The self-intersection is the Euler number of O(2) ⊕ O(2) with section (q, q);
/// the comparison problem must be a section of that same equivariant bundle.
fn check_same_bundle(c: &EquivariantConic, other: &ProblemSpec) -> Result<()> {
    let a = c.action();
    let b = &other.action;
    let same_group = a.group().size() == b.group().size()
        && (0..a.group().size()).all(|x| (0..a.group().size()).all(|y| a.group().mul(x, y) == b.group().mul(x, y)));
    if !same_group || b.dim() != 2 || other.degrees != [2, 2] {
        return Err(Error::MismatchedBundles("comparison needs two conics on P^2 under the same group".into()));
    }
    if !a.matrices().iter().zip(b.matrices()).all(|(x, y)| crate::groups::proportional_matrices(x, y)) {
        return Err(Error::MismatchedBundles("the two problems use different actions on P^2".into()));
    }
    Ok(())
}
