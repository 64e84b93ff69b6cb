//! Quivers, relations, and finite-dimensional path-algebra quotients.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{AlgebraWithBasis, Sparse};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path read left to right: `arrows[0]` is traversed first. The trivial
/// path at `source` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => q.arrows[a].target,
            None => self.source,
        }
    }

    /// `self` followed by `next`, if the endpoints match.
    pub fn then(&self, next: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            arrows,
        })
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::validation("quiver.vertices", format!("duplicate vertex {v:?}")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::validation("quiver.arrows", format!("duplicate arrow {name:?}")));
            }
            let lookup = |v: &str| {
                vindex.get(v).copied().ok_or_else(|| {
                    Error::validation("quiver.arrows", format!("arrow {name:?} uses unknown vertex {v:?}"))
                })
            };
            let source = lookup(&s)?;
            let target = lookup(&t)?;
            out.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Quiver with vertices `0..n` named by their index and arrows given by
    /// endpoint indices.
    pub fn from_indices(n: usize, arrows: &[(usize, usize)]) -> Self {
        let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow {
                name: format!("a{k}"),
                source: s,
                target: t,
            })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Parses a whitespace-separated arrow sequence.
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let mut arrows = Vec::new();
        for tok in s.split_whitespace() {
            let a = self
                .arrow_index(tok)
                .ok_or_else(|| Error::Parse(format!("unknown arrow {tok:?} in path {s:?}")))?;
            arrows.push(a);
        }
        let Some(&first) = arrows.first() else {
            return Err(Error::Parse("empty path".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::Parse(format!(
                    "path {s:?}: {} does not end where {} starts",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            arrows,
        })
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// All paths of length exactly `len`, sorted.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                let t = p.target(self);
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            arrows,
                        });
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(name));
        for v in &self.vertices {
            let _ = writeln!(s, "  {};", dot_id(v));
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                "  {} -> {} [label={}];",
                dot_id(&self.vertices[a.source]),
                dot_id(&self.vertices[a.target]),
                dot_id(&a.name)
            );
        }
        s.push_str("}\n");
        s
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Generators of a two-sided ideal, each a linear combination of parallel
/// paths of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet<S> {
    pub generators: Vec<Vec<(S, Path)>>,
}

impl<S: Scalar> RelationSet<S> {
    pub fn empty() -> Self {
        RelationSet {
            generators: Vec::new(),
        }
    }

    /// All paths of length `len` as monomial relations.
    pub fn all_paths_of_length(q: &Quiver, len: usize) -> Self {
        RelationSet {
            generators: q
                .paths_of_length(len)
                .into_iter()
                .map(|p| vec![(S::one(), p)])
                .collect(),
        }
    }

    pub fn monomials(paths: Vec<Path>) -> Self {
        RelationSet {
            generators: paths.into_iter().map(|p| vec![(S::one(), p)]).collect(),
        }
    }

    /// Checks endpoints and lengths. Returns the degree of each generator
    /// (`None` for a generator whose coefficients are all zero).
    pub fn validate(&self, q: &Quiver) -> Result<Vec<Option<usize>>> {
        let mut degrees = Vec::new();
        for (index, g) in self.generators.iter().enumerate() {
            let bad = |reason: String| Error::InvalidRelation { index, reason };
            let mut shape: Option<(usize, usize, usize)> = None;
            for (c, p) in g {
                for w in p.arrows.windows(2) {
                    if q.arrows[w[0]].target != q.arrows[w[1]].source {
                        return Err(bad(format!("path {} is not composable", p.label(q))));
                    }
                }
                if let Some(&a) = p.arrows.first() {
                    if q.arrows[a].source != p.source {
                        return Err(bad(format!("path {} has a wrong source", p.label(q))));
                    }
                }
                if c.is_zero() {
                    continue;
                }
                if p.len() < 2 {
                    return Err(bad(format!("path {} has length < 2", p.label(q))));
                }
                let here = (p.source, p.target(q), p.len());
                match shape {
                    None => shape = Some(here),
                    Some((s, t, l)) => {
                        if (s, t) != (here.0, here.1) {
                            return Err(bad("terms do not share source and target".into()));
                        }
                        if l != here.2 {
                            return Err(bad(
                                "terms have different lengths; only length-homogeneous relations are supported"
                                    .into(),
                            ));
                        }
                    }
                }
            }
            degrees.push(shape.map(|s| s.2));
        }
        Ok(degrees)
    }
}

/// A path algebra modulo a homogeneous admissible ideal, with a basis of
/// normal-form paths.
#[derive(Clone, Debug)]
pub struct PathAlgebra<S> {
    quiver: Quiver,
    relations: RelationSet<S>,
    max_path_len: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    reductions: HashMap<Path, Sparse<S>>,
    algebra: AlgebraWithBasis<S>,
}

pub fn build_path_algebra<S: Scalar>(
    q: &Quiver,
    r: &RelationSet<S>,
    max_path_len: usize,
) -> Result<PathAlgebra<S>> {
    PathAlgebra::new(q.clone(), r.clone(), max_path_len)
}

impl<S: Scalar> PathAlgebra<S> {
    pub fn new(quiver: Quiver, relations: RelationSet<S>, max_path_len: usize) -> Result<Self> {
        if max_path_len < 1 {
            return Err(Error::validation("max_path_len", "must be at least 1"));
        }
        let degrees = relations.validate(&quiver)?;
        let big_l = max_path_len;
        let layers: Vec<Vec<Path>> = (0..=big_l + 1).map(|d| quiver.paths_of_length(d)).collect();
        let col_of: Vec<HashMap<&Path, usize>> = layers
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, p)| (p, i)).collect())
            .collect();

        let mut basis: Vec<Path> = layers[0].clone();
        basis.extend(layers[1].iter().cloned());
        let mut reductions_raw: Vec<(Path, Vec<(S, Path)>)> = Vec::new();
        // rows of the ideal in the previous degree, in that degree's columns
        let mut prev_ideal: Vec<Vec<S>> = Vec::new();
        for d in 2..=big_l + 1 {
            let n = layers[d].len();
            let mut rows: Vec<Vec<S>> = Vec::new();
            for (g, deg) in relations.generators.iter().zip(&degrees) {
                if *deg == Some(d) {
                    let mut v = vec![S::zero(); n];
                    for (c, p) in g {
                        if !c.is_zero() {
                            let k = col_of[d][p];
                            v[k] = v[k].clone() + c.clone();
                        }
                    }
                    rows.push(v);
                }
            }
            for row in &prev_ideal {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    let mut right = vec![S::zero(); n];
                    let mut left = vec![S::zero(); n];
                    let mut any_r = false;
                    let mut any_l = false;
                    for (k, c) in row.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let p = &layers[d - 1][k];
                        if p.target(&quiver) == a.source {
                            let mut arrows = p.arrows.clone();
                            arrows.push(ai);
                            let pp = Path {
                                source: p.source,
                                arrows,
                            };
                            right[col_of[d][&pp]] = c.clone();
                            any_r = true;
                        }
                        if a.target == p.source {
                            let mut arrows = vec![ai];
                            arrows.extend_from_slice(&p.arrows);
                            let pp = Path {
                                source: a.source,
                                arrows,
                            };
                            left[col_of[d][&pp]] = c.clone();
                            any_l = true;
                        }
                    }
                    if any_r {
                        rows.push(right);
                    }
                    if any_l {
                        rows.push(left);
                    }
                }
            }
            let rref = if rows.is_empty() || n == 0 {
                None
            } else {
                Some(Mat::from_row_vectors(n, &rows).rref())
            };
            let rank = rref.as_ref().map_or(0, |r| r.rank);
            if d == big_l + 1 {
                if rank != n {
                    return Err(Error::NilpotencyBoundExceeded {
                        bound: big_l,
                        len: d,
                        remaining: n - rank,
                    });
                }
                break;
            }
            let pivots: Vec<usize> = rref.as_ref().map_or(Vec::new(), |r| r.pivot_cols.clone());
            for (k, p) in layers[d].iter().enumerate() {
                if !pivots.contains(&k) {
                    basis.push(p.clone());
                }
            }
            if let Some(r) = &rref {
                for (ri, &pc) in r.pivot_cols.iter().enumerate() {
                    let mut combo = Vec::new();
                    for c in 0..n {
                        if c != pc && !pivots.contains(&c) && !r.reduced[(ri, c)].is_zero() {
                            combo.push((-r.reduced[(ri, c)].clone(), layers[d][c].clone()));
                        }
                    }
                    reductions_raw.push((layers[d][pc].clone(), combo));
                }
                prev_ideal = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
            } else {
                prev_ideal = Vec::new();
            }
        }

        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let reductions: HashMap<Path, Sparse<S>> = reductions_raw
            .into_iter()
            .map(|(p, combo)| {
                let sp = combo.into_iter().map(|(c, q)| (index[&q], c)).collect();
                (p, sp)
            })
            .collect();

        let dim = basis.len();
        let labels = basis.iter().map(|p| p.label(&quiver)).collect();
        let mut unit = vec![S::zero(); dim];
        for v in 0..quiver.num_vertices() {
            unit[v] = S::one();
        }
        let mut pa = PathAlgebra {
            quiver,
            relations,
            max_path_len,
            basis,
            index,
            reductions,
            algebra: AlgebraWithBasis::from_sparse(Vec::new(), Vec::new(), Default::default()),
        };
        let mut products = std::collections::BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                // b_i * b_j is b_j followed by b_i
                if let Some(p) = pa.basis[j].then(&pa.basis[i], &pa.quiver) {
                    let sp = pa.reduce(&p);
                    if !sp.is_empty() {
                        products.insert((i, j), sp);
                    }
                }
            }
        }
        pa.algebra = AlgebraWithBasis::from_sparse(labels, unit, products);
        Ok(pa)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet<S> {
        &self.relations
    }

    pub fn max_path_len(&self) -> usize {
        self.max_path_len
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra(&self) -> &AlgebraWithBasis<S> {
        &self.algebra
    }

    /// Normal-form coordinates of a path of any length.
    pub fn reduce(&self, p: &Path) -> Sparse<S> {
        if p.len() > self.max_path_len {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(p) {
            return vec![(i, S::one())];
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Indices of normal-form paths from `i` to `j`.
    pub fn basis_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| self.basis[k].source == i && self.basis[k].target(&self.quiver) == j)
            .collect()
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Structural equality of the underlying presentation.
    pub fn same_as(&self, other: &PathAlgebra<S>) -> bool {
        self.quiver == other.quiver && self.basis == other.basis && self.relations == other.relations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, F3};
    use num_traits::Zero;

    fn section4_quiver() -> Quiver {
        let v = |s: &str| s.to_string();
        Quiver::new(
            vec![v("1"), v("2"), v("3"), v("4"), v("5")],
            vec![
                (v("a1"), v("1"), v("2")),
                (v("a2"), v("2"), v("3")),
                (v("a3"), v("3"), v("4")),
                (v("a4"), v("4"), v("5")),
                (v("b"), v("4"), v("4")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn a2_has_dimension_three() {
        let q = Quiver::from_indices(2, &[(0, 1)]);
        let a = build_path_algebra::<Rational>(&q, &RelationSet::empty(), 2).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.algebra().validate().passed());
    }

    #[test]
    fn rad_square_zero_dimension() {
        let q = section4_quiver();
        // oracle: count paths of length <= 1 directly
        let expected = q.num_vertices() + q.arrows().len();
        let r = RelationSet::<Rational>::all_paths_of_length(&q, 2);
        let a = build_path_algebra(&q, &r, 2).unwrap();
        assert_eq!(a.dim(), expected);
        assert_eq!(a.dim(), 10);
        assert!(a.algebra().validate().passed());
    }

    #[test]
    fn dual_numbers() {
        let q = Quiver::from_indices(1, &[(0, 0)]);
        let x = Path {
            source: 0,
            arrows: vec![0, 0],
        };
        let r = RelationSet::<F3>::monomials(vec![x]);
        let a = build_path_algebra(&q, &r, 3).unwrap();
        assert_eq!(a.dim(), 2);
        let n = a.algebra().basis_vector(1);
        assert!(a.algebra().multiply(&n, &n).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn loop_without_relations_exceeds_bound() {
        let q = Quiver::from_indices(1, &[(0, 0)]);
        let err = build_path_algebra::<Rational>(&q, &RelationSet::empty(), 4).unwrap_err();
        assert!(matches!(err, Error::NilpotencyBoundExceeded { .. }));
    }

    #[test]
    fn invalid_relations() {
        let q = Quiver::from_indices(2, &[(0, 1), (1, 0)]);
        let short = RelationSet::<Rational>::monomials(vec![Path {
            source: 0,
            arrows: vec![0],
        }]);
        assert!(matches!(
            build_path_algebra(&q, &short, 2),
            Err(Error::InvalidRelation { .. })
        ));
        let mixed = RelationSet {
            generators: vec![vec![
                (Rational::from_i64(1), Path { source: 0, arrows: vec![0, 1] }),
                (Rational::from_i64(1), Path { source: 1, arrows: vec![1, 0] }),
            ]],
        };
        assert!(matches!(
            build_path_algebra(&q, &mixed, 2),
            Err(Error::InvalidRelation { .. })
        ));
    }

    #[test]
    fn commutative_square_relation() {
        // 0 -> 1 -> 3, 0 -> 2 -> 3 with a0 a2 = a1 a3
        let q = Quiver::from_indices(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let one = Rational::from_i64(1);
        let r = RelationSet {
            generators: vec![vec![
                (one.clone(), Path { source: 0, arrows: vec![0, 2] }),
                (-one, Path { source: 0, arrows: vec![1, 3] }),
            ]],
        };
        let a = build_path_algebra(&q, &r, 2).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert!(a.algebra().validate().passed());
        let larger = build_path_algebra(&q, &r, 5).unwrap();
        assert_eq!(larger.basis(), a.basis());
    }

    #[test]
    fn dot_export_lists_arrows() {
        let dot = section4_quiver().to_dot("A");
        assert_eq!(dot.matches("->").count(), 5);
        assert!(dot.contains("\"4\" -> \"4\" [label=\"b\"]"));
    }
}
