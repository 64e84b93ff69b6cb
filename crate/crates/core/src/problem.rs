//! Problem files: a JSON description of an algebra, modules, an exact
//! sequence and `Φ`, and its instantiation over a concrete scalar type.
//!
//! Matrices are row-major arrays of scalar strings; a map between two modules
//! is `target_dim x source_dim` at every vertex. Omitted arrow maps and
//! vertex maps are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::homological::{ModId, Workspace};
use crate::linalg::Mat;
use crate::orbit::{admissibility_witness, AdmissibleSet};
use crate::quiver::{build_path_algebra, PathAlgebra, Quiver, RelationSet};
use crate::rep::{injective, projective, AddWitness, ExactTriple, ModuleMap, QuiverRep};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

/// `[coefficient, path]` with the path written as space-separated arrow
/// names, first arrow first.
pub type TermSpec = (String, String);

pub type MatrixSpec = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Explicit {
        /// Dimension at each vertex, by vertex name; missing vertices are 0.
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        maps: BTreeMap<String, MatrixSpec>,
    },
    Projective {
        projective: String,
    },
    Injective {
        injective: String,
    },
    Simple {
        simple: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    #[serde(default)]
    pub vertex_maps: BTreeMap<String, MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub x: String,
    pub m1: String,
    pub y: String,
    pub alpha: Option<MapSpec>,
    pub beta: Option<MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSpec {
    /// Names from `summands_of_m`, with repetition.
    pub summands: Vec<String>,
    /// Isomorphism from the direct sum of `summands` onto `M1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_change: Option<MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default = "default_max_rel_deg")]
    pub max_rel_deg: usize,
    #[serde(default = "default_gldim_cap")]
    pub gldim_cap: usize,
    /// Syzygies larger than this stop a resolution early.
    #[serde(default = "default_gldim_max_module_dim")]
    pub gldim_max_module_dim: usize,
    #[serde(default)]
    pub allow_unchecked_hypotheses: bool,
}

fn default_max_rel_deg() -> usize {
    4
}

fn default_gldim_cap() -> usize {
    12
}

fn default_gldim_max_module_dim() -> usize {
    120
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_rel_deg: default_max_rel_deg(),
            gldim_cap: default_gldim_cap(),
            gldim_max_module_dim: default_gldim_max_module_dim(),
            allow_unchecked_hypotheses: false,
        }
    }
}

/// A presentation to compare a computed algebra against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub max_path_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    /// Adds every path of this length as a relation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kill_paths_of_length: Option<usize>,
    pub max_path_len: usize,
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(rename = "summands_of_M")]
    pub summands_of_m: Vec<String>,
    #[serde(rename = "M1_decomposition")]
    pub m1_decomposition: DecompositionSpec,
    pub sequence: SequenceSpec,
    pub phi: Vec<usize>,
    #[serde(default)]
    pub options: Options,
    /// Hand-written presentations keyed by algebra name (`Lambda1`, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub targets: BTreeMap<String, TargetSpec>,
}

impl ProblemSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem specs serialize")
    }

    /// SHA-256 of the compact serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("problem specs serialize");
        hex::encode(Sha256::digest(bytes))
    }

    /// Structural checks that do not need a scalar type.
    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        let q = self.quiver()?;
        if !self.phi.contains(&0) {
            return Err(Error::validation("phi", "does not contain 0"));
        }
        if let Some((i, j, k)) = admissibility_witness(&self.phi) {
            return Err(Error::validation(
                "phi",
                format!("{:?} is not admissible (witness i={i}, j={j}, k={k})", self.phi),
            ));
        }
        for (name, m) in &self.modules {
            let field = format!("modules.{name}");
            match m {
                ModuleSpec::Explicit { dims, maps } => {
                    for v in dims.keys() {
                        if q.vertex_index(v).is_none() {
                            return Err(Error::validation(&field, format!("unknown vertex {v:?}")));
                        }
                    }
                    for a in maps.keys() {
                        if q.arrow_index(a).is_none() {
                            return Err(Error::validation(&field, format!("unknown arrow {a:?}")));
                        }
                    }
                }
                ModuleSpec::Projective { projective: v }
                | ModuleSpec::Injective { injective: v }
                | ModuleSpec::Simple { simple: v } => {
                    if q.vertex_index(v).is_none() {
                        return Err(Error::validation(&field, format!("unknown vertex {v:?}")));
                    }
                }
            }
        }
        let known = |field: &str, n: &str| -> Result<()> {
            if self.modules.contains_key(n) {
                Ok(())
            } else {
                Err(Error::validation(field, format!("unknown module {n:?}")))
            }
        };
        known("sequence.x", &self.sequence.x)?;
        known("sequence.m1", &self.sequence.m1)?;
        known("sequence.y", &self.sequence.y)?;
        if self.summands_of_m.is_empty() {
            return Err(Error::validation("summands_of_m", "is empty"));
        }
        for n in &self.summands_of_m {
            known("summands_of_m", n)?;
        }
        for n in &self.m1_decomposition.summands {
            if !self.summands_of_m.contains(n) {
                return Err(Error::validation(
                    "m1_decomposition.summands",
                    format!("{n:?} is not listed in summands_of_m"),
                ));
            }
        }
        if self.sequence.alpha.is_none() {
            return Err(Error::validation("alpha", "missing"));
        }
        if self.sequence.beta.is_none() {
            return Err(Error::validation("beta", "missing"));
        }
        let check_map = |field: &str, m: &MapSpec| -> Result<()> {
            for v in m.vertex_maps.keys() {
                if q.vertex_index(v).is_none() {
                    return Err(Error::validation(field, format!("unknown vertex {v:?}")));
                }
            }
            Ok(())
        };
        check_map("alpha", self.sequence.alpha.as_ref().expect("checked"))?;
        check_map("beta", self.sequence.beta.as_ref().expect("checked"))?;
        if let Some(b) = &self.m1_decomposition.base_change {
            check_map("m1_decomposition.base_change", b)?;
        }
        Ok(())
    }

    pub fn quiver(&self) -> Result<Quiver> {
        quiver_of(&self.quiver)
    }
}

pub fn quiver_of(q: &QuiverSpec) -> Result<Quiver> {
    Quiver::new(
        q.vertices.clone(),
        q.arrows
            .iter()
            .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
            .collect(),
    )
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let spec = parse_unvalidated(text)?;
    spec.validate()?;
    Ok(spec)
}

/// JSON decoding only; missing required fields are reported as validation
/// errors naming the field.
pub fn parse_unvalidated(text: &str) -> Result<ProblemSpec> {
    serde_json::from_str::<ProblemSpec>(text).map_err(|e| {
        let msg = e.to_string();
        if e.is_data() && msg.contains("missing field") {
            let field = msg.split('`').nth(1).unwrap_or("?").to_string();
            Error::Validation {
                field,
                reason: format!("missing (line {}, column {})", e.line(), e.column()),
            }
        } else {
            Error::Parse(format!("line {}, column {}: {msg}", e.line(), e.column()))
        }
    })
}

fn parse_matrix<S: Scalar>(field: &str, rows: usize, cols: usize, m: &MatrixSpec) -> Result<Mat<S>> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::validation(
            field,
            format!("expected a {rows}x{cols} matrix, got {} rows", m.len()),
        ));
    }
    let parsed: Vec<Vec<S>> = m
        .iter()
        .map(|r| r.iter().map(|x| S::parse_scalar(x)).collect::<Result<Vec<S>>>())
        .collect::<Result<_>>()
        .map_err(|e| Error::validation(field, e.to_string()))?;
    Mat::from_rows(rows, cols, parsed)
}

pub fn relations_of<S: Scalar>(q: &Quiver, rels: &[Vec<TermSpec>], field: &str) -> Result<RelationSet<S>> {
    let mut out = RelationSet::empty();
    for (k, r) in rels.iter().enumerate() {
        let mut terms = Vec::new();
        for (c, p) in r {
            let coeff = S::parse_scalar(c).map_err(|e| Error::validation(format!("{field}[{k}]"), e.to_string()))?;
            let path = q
                .parse_path(p)
                .map_err(|e| Error::validation(format!("{field}[{k}]"), e.to_string()))?;
            terms.push((coeff, path));
        }
        out.generators.push(terms);
    }
    Ok(out)
}

/// Builds the path algebra of a target presentation.
pub fn target_algebra<S: Scalar>(t: &TargetSpec) -> Result<PathAlgebra<S>> {
    let q = quiver_of(&t.quiver)?;
    let r = relations_of(&q, &t.relations, "targets.relations")?;
    build_path_algebra(&q, &r, t.max_path_len)
}

/// A problem instantiated over `S`, with its modules registered in a
/// workspace.
pub struct Instance<S> {
    pub spec: ProblemSpec,
    pub ws: Workspace<S>,
    pub triple: ExactTriple<S>,
    pub x: ModId,
    pub y: ModId,
    pub m_ids: Vec<ModId>,
    pub phi: AdmissibleSet,
    pub modules: BTreeMap<String, QuiverRep<S>>,
}

fn map_of<S: Scalar>(field: &str, q: &Quiver, src: &QuiverRep<S>, tgt: &QuiverRep<S>, m: &MapSpec) -> Result<ModuleMap<S>> {
    let mut vertex_maps = Vec::new();
    for v in 0..q.num_vertices() {
        let name = &q.vertices()[v];
        let (r, c) = (tgt.dims()[v], src.dims()[v]);
        vertex_maps.push(match m.vertex_maps.get(name) {
            Some(mat) => parse_matrix(&format!("{field}.vertex_maps.{name}"), r, c, mat)?,
            None => Mat::zeros(r, c),
        });
    }
    Ok(ModuleMap { vertex_maps })
}

fn module_of<S: Scalar>(name: &str, pa: &PathAlgebra<S>, m: &ModuleSpec) -> Result<QuiverRep<S>> {
    let q = pa.quiver();
    let field = format!("modules.{name}");
    let vertex = |v: &str| q.vertex_index(v).ok_or_else(|| Error::validation(&field, format!("unknown vertex {v:?}")));
    match m {
        ModuleSpec::Explicit { dims, maps } => {
            let d: Vec<usize> = q.vertices().iter().map(|v| dims.get(v).copied().unwrap_or(0)).collect();
            let mut mats = Vec::new();
            for a in q.arrows() {
                let (r, c) = (d[a.target], d[a.source]);
                mats.push(match maps.get(&a.name) {
                    Some(mat) => parse_matrix(&format!("{field}.maps.{}", a.name), r, c, mat)?,
                    None => Mat::zeros(r, c),
                });
            }
            QuiverRep::new(q, d, mats)
        }
        ModuleSpec::Projective { projective: v } => Ok(projective(pa, vertex(v)?)),
        ModuleSpec::Injective { injective: v } => Ok(injective(pa, vertex(v)?)),
        ModuleSpec::Simple { simple: v } => Ok(QuiverRep::simple(q, vertex(v)?)),
    }
}

impl<S: Scalar> Instance<S> {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        spec.validate()?;
        if S::field() != spec.field {
            return Err(Error::validation("field", "does not match the scalar type"));
        }
        let q = spec.quiver()?;
        let mut rels = relations_of::<S>(&q, &spec.relations, "relations")?;
        if let Some(len) = spec.kill_paths_of_length {
            rels.generators.extend(RelationSet::<S>::all_paths_of_length(&q, len).generators);
        }
        let pa = build_path_algebra(&q, &rels, spec.max_path_len)?;
        let mut modules = BTreeMap::new();
        let mut ws = Workspace::new(pa.clone());
        let mut ids = BTreeMap::new();
        for (name, m) in &spec.modules {
            let rep = module_of(name, &pa, m)?;
            modules.insert(name.clone(), rep.clone());
            ids.insert(name.clone(), ws.add_module(name, rep)?);
        }
        let get = |n: &str| modules[n].clone();
        let x = get(&spec.sequence.x);
        let m1 = get(&spec.sequence.m1);
        let y = get(&spec.sequence.y);
        let alpha = map_of("alpha", &q, &x, &m1, spec.sequence.alpha.as_ref().expect("validated"))?;
        let beta = map_of("beta", &q, &m1, &y, spec.sequence.beta.as_ref().expect("validated"))?;
        let summand_indices: Vec<usize> = spec
            .m1_decomposition
            .summands
            .iter()
            .map(|n| spec.summands_of_m.iter().position(|s| s == n).expect("validated"))
            .collect();
        let base_change = match &spec.m1_decomposition.base_change {
            Some(b) => {
                let parts: Vec<&QuiverRep<S>> = spec.m1_decomposition.summands.iter().map(|n| &modules[n]).collect();
                let sum = if parts.is_empty() {
                    QuiverRep::zero(&q)
                } else {
                    crate::rep::direct_sum(&q, &parts).module
                };
                Some(map_of("m1_decomposition.base_change", &q, &sum, &m1, b)?)
            }
            None => None,
        };
        let triple = ExactTriple {
            x,
            m1,
            y,
            alpha,
            beta,
            witness: AddWitness {
                summand_indices,
                base_change,
            },
        };
        let m_ids = spec.summands_of_m.iter().map(|n| ids[n]).collect();
        Ok(Instance {
            spec: spec.clone(),
            x: ids[&spec.sequence.x],
            y: ids[&spec.sequence.y],
            m_ids,
            phi: AdmissibleSet::new(spec.phi.clone())?,
            triple,
            ws,
            modules,
        })
    }

    pub fn m_summands(&self) -> Vec<QuiverRep<S>> {
        self.spec.summands_of_m.iter().map(|n| self.modules[n].clone()).collect()
    }
}

/// Writes a module as an explicit module spec.
pub fn module_spec_of<S: Scalar>(q: &Quiver, m: &QuiverRep<S>) -> ModuleSpec {
    let dims = q
        .vertices()
        .iter()
        .zip(m.dims())
        .filter(|(_, &d)| d > 0)
        .map(|(v, &d)| (v.clone(), d))
        .collect();
    let maps = q
        .arrows()
        .iter()
        .zip(m.maps())
        .filter(|(_, mat)| !mat.is_zero())
        .map(|(a, mat)| (a.name.clone(), matrix_spec(mat)))
        .collect();
    ModuleSpec::Explicit { dims, maps }
}

pub fn matrix_spec<S: Scalar>(m: &Mat<S>) -> MatrixSpec {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Writes a module map, omitting zero vertex maps.
pub fn map_spec_of<S: Scalar>(q: &Quiver, f: &ModuleMap<S>) -> MapSpec {
    MapSpec {
        vertex_maps: q
            .vertices()
            .iter()
            .zip(&f.vertex_maps)
            .filter(|(_, m)| !m.is_zero())
            .map(|(v, m)| (v.clone(), matrix_spec(m)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> String {
        r#"{
          "field": {"kind": "Rationals"},
          "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]},
          "max_path_len": 1,
          "modules": {"P1": {"projective": "1"}, "S1": {"simple": "1"}, "S2": {"simple": "2"}},
          "summands_of_M": ["P1"],
          "M1_decomposition": {"summands": ["P1"]},
          "sequence": {
            "x": "S2", "m1": "P1", "y": "S1",
            "alpha": {"vertex_maps": {"2": [["1"]]}},
            "beta": {"vertex_maps": {"1": [["1"]]}}
          },
          "phi": [0]
        }"#
        .to_string()
    }

    #[test]
    fn parse_and_round_trip() {
        let spec = parse_problem(&minimal()).unwrap();
        let again = parse_problem(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.digest(), again.digest());
        let inst = Instance::<crate::scalar::Rational>::new(&spec).unwrap();
        assert_eq!(inst.triple.m1.dims(), &[1, 1]);
    }

    #[test]
    fn inadmissible_phi_is_rejected() {
        let text = minimal().replace("\"phi\": [0]", "\"phi\": [0, 1, 2, 4]");
        match parse_problem(&text) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "phi"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_beta_is_named() {
        let text = minimal().replace(",\n            \"beta\": {\"vertex_maps\": {\"1\": [[\"1\"]]}}", "");
        match parse_problem(&text) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "beta"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let err = parse_problem("{\n  \"field\": ").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
