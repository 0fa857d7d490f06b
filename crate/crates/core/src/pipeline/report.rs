//! Serialized answers. Field order is fixed by the struct definitions and all
//! collections are sorted upstream, so identical inputs give identical bytes.

use serde::Serialize;

use super::{EquivariantAnswer, InvarianceReport, OrbitContribution, ProblemSpec};
use crate::chars::CharacterJson;
use crate::cyclo::{CyclotomicNumber as Cyclo, SubfieldSpec};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizerJson {
    pub order: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalDegreeJson {
    pub class_representatives: Vec<String>,
    pub class_values: Vec<Cyclo>,
    pub character: CharacterJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitJson {
    pub representative: String,
    pub coordinates: Vec<Cyclo>,
    pub orbit_size: usize,
    pub geometric_points: usize,
    pub stabilizer: StabilizerJson,
    pub residue_field: SubfieldSpec,
    pub residue_degree: u32,
    pub galois_stabilizer: Vec<u32>,
    pub multiplicity: usize,
    pub jacobian_invertible: bool,
    pub local_degree: LocalDegreeJson,
    pub induced: CharacterJson,
    pub transferred: CharacterJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvarianceJson {
    pub semi_invariant: bool,
    pub ideal_stable: bool,
    pub override_used: bool,
    /// Linearization character of each section, or null when there is none.
    pub section_characters: Vec<Option<CharacterJson>>,
}

impl InvarianceJson {
    pub fn new(inv: &InvarianceReport, allow_ideal_stable: bool) -> Self {
        Self {
            semi_invariant: inv.semi_invariant,
            ideal_stable: inv.ideal_stable,
            override_used: !inv.semi_invariant && inv.ideal_stable && allow_ideal_stable,
            section_characters: inv.sections.iter().map(|s| s.character.as_ref().map(|c| c.to_json())).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalToGlobalJson {
    /// Character of G on the coordinate ring of the zero scheme, from fixed points alone.
    pub global_trace: CharacterJson,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificatesJson {
    pub bezout_sum: bool,
    pub bezout_number: u64,
    pub total_multiplicity: usize,
    pub chart_dimensions: Vec<usize>,
    pub invariance: InvarianceJson,
    /// dim(transferred) = orbitSize · residueDegree · multiplicity for every orbit.
    pub dimension_audit: bool,
    /// Multiplicity one exactly at the points with invertible Jacobian.
    pub jacobian_multiplicity: bool,
    pub local_to_global: LocalToGlobalJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MetadataJson {
    pub name: String,
    pub group_order: usize,
    pub cyclotomic_order: u32,
    pub base_field: SubfieldSpec,
    pub coefficients: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnswerJson {
    pub value: CharacterJson,
    pub orbits: Vec<OrbitJson>,
    pub certificates: CertificatesJson,
    pub metadata: MetadataJson,
}

fn orbit_json(spec: &ProblemSpec, o: &OrbitContribution) -> OrbitJson {
    let group = spec.action.group();
    let ld = &o.local_degree;
    let st = ld.stabilizer.table();
    OrbitJson {
        representative: o.representative.lift(spec.order).to_string(),
        coordinates: o.representative.lift(spec.order).coords().to_vec(),
        orbit_size: o.orbit_size,
        geometric_points: o.geometric_points.len(),
        stabilizer: StabilizerJson {
            order: o.stabilizer.order(),
            elements: o.stabilizer.members().iter().map(|&g| group.label(g)).collect(),
        },
        residue_field: o.residue_field.clone(),
        residue_degree: o.residue_degree,
        galois_stabilizer: o.galois_stabilizer.clone(),
        multiplicity: o.multiplicity,
        jacobian_invertible: o.jacobian_invertible,
        local_degree: LocalDegreeJson {
            class_representatives: (0..st.num_classes())
                .map(|k| group.label(ld.stabilizer.subgroup().members()[st.representative(k)]))
                .collect(),
            class_values: ld.class_values.clone(),
            character: ld.local_character.to_json(),
        },
        induced: o.induced.to_json(),
        transferred: o.transferred.to_json(),
    }
}

impl AnswerJson {
    pub fn new(spec: &ProblemSpec, a: &EquivariantAnswer) -> Self {
        let dimension_audit = a
            .orbits
            .iter()
            .all(|o| o.transferred.dimension() == (o.orbit_size * o.residue_degree as usize * o.multiplicity) as i64);
        let jacobian_multiplicity = a.orbits.iter().all(|o| o.jacobian_invertible == (o.multiplicity == 1));
        Self {
            value: a.value.to_json(),
            orbits: a.orbits.iter().map(|o| orbit_json(spec, o)).collect(),
            certificates: CertificatesJson {
                bezout_sum: a.bezout_sum() == a.bezout_number(),
                bezout_number: a.bezout_number(),
                total_multiplicity: a.zeros.total_multiplicity,
                chart_dimensions: a.zeros.chart_dims.clone(),
                invariance: InvarianceJson::new(&a.invariance, spec.allow_ideal_stable),
                dimension_audit,
                jacobian_multiplicity,
                local_to_global: LocalToGlobalJson { global_trace: a.global_trace.to_json(), agrees: a.global_trace == a.value },
            },
            metadata: MetadataJson {
                name: spec.name.clone(),
                group_order: spec.action.group().size(),
                cyclotomic_order: spec.order,
                base_field: spec.base_field.clone(),
                coefficients: "multiplicities of the complex irreducible characters".into(),
            },
        }
    }

    pub fn all_certificates_hold(&self) -> bool {
        let c = &self.certificates;
        c.bezout_sum && c.dimension_audit && c.jacobian_multiplicity && c.local_to_global.agrees
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("answer serializes");
        s.push('\n');
        s
    }
}

/// Plain-text summary for the terminal.
pub fn human_report(spec: &ProblemSpec, a: &EquivariantAnswer) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let group = spec.action.group();
    let _ = writeln!(out, "problem: {}", if spec.name.is_empty() { "(unnamed)" } else { &spec.name });
    let _ = writeln!(out, "group order {}, coefficients in Q(zeta({})), base field of degree {}", group.size(), spec.order, spec.base_field.degree());
    let _ = writeln!(out, "zeros: {} geometric points, total multiplicity {} (degree product {})", a.zeros.points.len(), a.zeros.total_multiplicity, a.zeros.bezout);
    for (i, o) in a.orbits.iter().enumerate() {
        let _ = writeln!(
            out,
            "orbit {i}: {} | size {} | |stab| {} | [k(x):k] {} | mult {} | local {} | transferred {}",
            o.representative.lift(spec.order),
            o.orbit_size,
            o.stabilizer.order(),
            o.residue_degree,
            o.multiplicity,
            o.local_degree.local_character,
            o.transferred
        );
    }
    let _ = writeln!(out, "labels: {}", spec.table.labels().join(", "));
    let _ = writeln!(out, "value: {}  {:?}", a.value, a.value.coeffs());
    out
}
