//! JSON problem files and their resolution into exact objects.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chars::{character_table, CharacterTable};
use crate::cyclo::{lcm_order, max_order, CyclotomicNumber as Cyclo, SubfieldSpec};
use crate::error::{Error, Result};
use crate::groups::{close_under, group_from_permutations, FiniteGroup, ProjPoint, ProjectiveAction, DEFAULT_GROUP_BOUND};
use crate::linalg::Matrix;
use crate::polysolve::{default_vars, parse_poly, parse_scalar, MultiPoly};

/// A scalar written as an integer, an expression string such as `"-1/2*zeta(3)"`,
/// or a serialized cyclotomic number.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Expr(String),
    Exact(Cyclo),
}

impl ScalarJson {
    pub fn value(&self) -> Result<Cyclo> {
        match self {
            ScalarJson::Int(n) => Ok(Cyclo::from_int(*n)),
            ScalarJson::Expr(s) => parse_scalar(s),
            ScalarJson::Exact(c) => Ok(c.clone()),
        }
    }
}

pub type MatrixJson = Vec<Vec<ScalarJson>>;

pub fn matrix_from_json(m: &MatrixJson) -> Result<Matrix> {
    let rows: Vec<Vec<Cyclo>> = m.iter().map(|r| r.iter().map(ScalarJson::value).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Spec("matrices must be non-empty and rectangular".into()));
    }
    let mut order = 1;
    for x in rows.iter().flatten() {
        order = lcm_order(order, x.order())?;
    }
    Ok(Matrix::from_rows(&rows, order))
}

/// Either `{"permutations": [...]}` or `{"matrices": [...], "order": N}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

pub struct LoadedGroup {
    pub group: Arc<FiniteGroup>,
    /// Generator matrices for a matrix group, usable as a default action.
    pub generator_matrices: Option<Vec<Matrix>>,
}

pub fn load_group(g: &GroupJson) -> Result<LoadedGroup> {
    match (&g.permutations, &g.matrices) {
        (Some(perms), None) => {
            if perms.is_empty() {
                return Ok(LoadedGroup { group: Arc::new(FiniteGroup::trivial()), generator_matrices: None });
            }
            let (group, elems) = group_from_permutations(perms)?;
            let labels = elems.iter().map(|p| format!("{p:?}").replace(' ', "")).collect();
            Ok(LoadedGroup { group: Arc::new(group.with_labels(labels)), generator_matrices: None })
        }
        (None, Some(ms)) => {
            let gens = ms
                .iter()
                .map(|v| serde_json::from_value::<MatrixJson>(v.clone()).map_err(Error::from).and_then(|m| matrix_from_json(&m)))
                .collect::<Result<Vec<_>>>()?;
            let declared = g.order.unwrap_or(1);
            let mut order = declared;
            for m in &gens {
                order = lcm_order(order, m.order())?;
            }
            if order != declared && g.order.is_some() {
                return Err(Error::Spec(format!("matrix entries need Q(zeta({order})), but order {declared} was declared")));
            }
            let gens: Vec<Matrix> = gens.iter().map(|m| Matrix::from_rows(&m.to_rows(), order)).collect();
            let size = gens.first().map(|m| m.rows()).ok_or_else(|| Error::Spec("no generator matrices".into()))?;
            if gens.iter().any(|m| !m.is_square() || m.rows() != size) {
                return Err(Error::Spec("generator matrices must be square of one size".into()));
            }
            let key = |m: &Matrix| m.to_rows().iter().flatten().map(|c| c.lift(order).to_string()).collect::<Vec<_>>().join(",");
            let (group, _) = close_under(Matrix::identity(size, order), &gens, |a, b| a.mul(b), key, DEFAULT_GROUP_BOUND)?;
            Ok(LoadedGroup { group: Arc::new(group), generator_matrices: Some(gens) })
        }
        _ => Err(Error::Spec("group must give exactly one of \"permutations\" or \"matrices\"".into())),
    }
}

/// `{"generators": [...]}` or a bare list, one matrix per group generator.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ActionJson {
    Generators { generators: Vec<serde_json::Value> },
    List(Vec<serde_json::Value>),
}

impl ActionJson {
    pub fn matrices(&self) -> Result<Vec<Matrix>> {
        let raw = match self {
            ActionJson::Generators { generators } => generators,
            ActionJson::List(l) => l,
        };
        raw.iter().map(|v| matrix_from_json(&serde_json::from_value::<MatrixJson>(v.clone())?)).collect()
    }
}

/// `"Q"`, `"full"`, or `{"fixing": [units mod N]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum BaseFieldJson {
    Named(String),
    Fixing { fixing: Vec<u32> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProblemJson {
    #[serde(default)]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub cyclotomic_order: u32,
    #[serde(default)]
    pub base_field: Option<BaseFieldJson>,
    pub group: GroupJson,
    #[serde(default)]
    pub action_matrices: Option<ActionJson>,
    pub bundle_degrees: Vec<u32>,
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub sections: Vec<String>,
    #[serde(default)]
    pub hints: Vec<Vec<ScalarJson>>,
    #[serde(default)]
    pub allow_ideal_stable: bool,
}

/// A fully resolved Euler-number problem.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub order: u32,
    pub base_field: SubfieldSpec,
    pub table: Arc<CharacterTable>,
    pub action: ProjectiveAction,
    pub degrees: Vec<u32>,
    pub sections: Vec<MultiPoly>,
    pub hints: Vec<ProjPoint>,
    pub allow_ideal_stable: bool,
    pub source: ProblemJson,
}

pub fn base_field(json: Option<&BaseFieldJson>, n: u32) -> Result<SubfieldSpec> {
    match json {
        None => Ok(SubfieldSpec::rationals(n)),
        Some(BaseFieldJson::Named(s)) => match s.as_str() {
            "Q" | "rationals" => Ok(SubfieldSpec::rationals(n)),
            "full" | "K" => Ok(SubfieldSpec::full(n)),
            other => Err(Error::Spec(format!("unknown base field {other:?}; use \"Q\", \"full\" or {{\"fixing\": [...]}}"))),
        },
        Some(BaseFieldJson::Fixing { fixing }) => SubfieldSpec::fixed_by(n, fixing),
    }
}

pub fn parse_point(coords: &[ScalarJson]) -> Result<ProjPoint> {
    ProjPoint::new(coords.iter().map(ScalarJson::value).collect::<Result<Vec<_>>>()?)
}

fn check_order(what: &str, c: &Cyclo, n: u32, k: &SubfieldSpec) -> Result<()> {
    if n % c.order() != 0 {
        return Err(Error::Spec(format!("{what} has coefficient {c} outside Q(zeta({n}))")));
    }
    if !k.contains(&c.lift(n)) {
        return Err(Error::Spec(format!("{what} has coefficient {c} outside the base field")));
    }
    Ok(())
}

impl ProblemSpec {
    pub fn from_json(p: ProblemJson) -> Result<Self> {
        let n = p.cyclotomic_order;
        if n == 0 || n > max_order() {
            return Err(Error::OrderOverflow { order: n as u64, max: max_order() });
        }
        let base = base_field(p.base_field.as_ref(), n)?;
        let loaded = load_group(&p.group)?;
        let gens = match (&p.action_matrices, loaded.generator_matrices) {
            (Some(a), _) => a.matrices()?,
            (None, Some(m)) => m,
            (None, None) => return Err(Error::Spec("actionMatrices is required for permutation groups".into())),
        };
        for (i, m) in gens.iter().enumerate() {
            if m.rows() != p.ambient_dim + 1 {
                return Err(Error::Spec(format!("action matrix {i} is not {0}x{0}", p.ambient_dim + 1)));
            }
            for x in m.to_rows().iter().flatten() {
                check_order(&format!("action matrix {i}"), x, n, &base)?;
            }
        }
        let gens: Vec<Matrix> = gens.iter().map(|m| Matrix::from_rows(&m.to_rows(), n)).collect();
        let action = if gens.is_empty() && loaded.group.size() == 1 {
            ProjectiveAction::new(loaded.group.clone(), vec![Matrix::identity(p.ambient_dim + 1, n)])?
        } else {
            ProjectiveAction::from_generators(loaded.group.clone(), gens)?
        };
        let table = Arc::new(character_table(loaded.group)?);
        let vars: Arc<[String]> = match &p.variables {
            Some(v) if v.len() == p.ambient_dim + 1 => v.clone().into(),
            Some(v) => return Err(Error::Spec(format!("{} variable names for P^{}", v.len(), p.ambient_dim))),
            None => default_vars(p.ambient_dim + 1),
        };
        if p.sections.len() != p.ambient_dim {
            return Err(Error::Spec(format!("rank condition: {} sections on P^{}", p.sections.len(), p.ambient_dim)));
        }
        if p.bundle_degrees.len() != p.sections.len() {
            return Err(Error::Spec("bundleDegrees and sections differ in length".into()));
        }
        let sections = p.sections.iter().map(|s| parse_poly(s, &vars)).collect::<Result<Vec<_>>>()?;
        for (i, (s, &d)) in sections.iter().zip(&p.bundle_degrees).enumerate() {
            if s.homogeneous_degree() != Some(d) {
                return Err(Error::Spec(format!("section {i} is not homogeneous of degree {d}")));
            }
            for (_, c) in s.terms() {
                check_order(&format!("section {i}"), c, n, &base)?;
            }
        }
        let hints = p.hints.iter().map(|h| parse_point(h)).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: p.name.clone().unwrap_or_default(),
            order: n,
            base_field: base,
            table,
            action,
            degrees: p.bundle_degrees.clone(),
            sections,
            hints,
            allow_ideal_stable: p.allow_ideal_stable,
            source: p,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(serde_json::from_str(&text)?)
    }

    /// Adds hint points, e.g. from a separate file.
    pub fn with_hints(mut self, extra: &[Vec<ScalarJson>]) -> Result<Self> {
        for h in extra {
            let p = parse_point(h)?;
            if !self.hints.contains(&p) {
                self.hints.push(p);
            }
        }
        Ok(self)
    }
}

/// A hints file: a bare list of points or `{"hints": [...]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum HintsJson {
    List(Vec<Vec<ScalarJson>>),
    Wrapped { hints: Vec<Vec<ScalarJson>> },
}

impl HintsJson {
    pub fn points(self) -> Vec<Vec<ScalarJson>> {
        match self {
            HintsJson::List(l) => l,
            HintsJson::Wrapped { hints } => hints,
        }
    }
}

pub fn load_hints(path: &Path) -> Result<Vec<Vec<ScalarJson>>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str::<HintsJson>(&text)?.points())
}
