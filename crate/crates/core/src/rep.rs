//! Representations of bound quivers and their homomorphisms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat, SubspaceBasis};
use crate::quiver::{Path, PathAlgebra, Quiver};
use crate::scalar::Scalar;

/// A module over a bound quiver algebra: one vector space per vertex and
/// one matrix per arrow (`dims[target] x dims[source]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep<S> {
    dims: Vec<usize>,
    maps: Vec<Mat<S>>,
}

/// A homomorphism given by one matrix per vertex. Composition "f then g" has
/// matrices `g_v * f_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<S> {
    pub vertex_maps: Vec<Mat<S>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub shape_errors: Vec<String>,
    pub failing_relations: Vec<usize>,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.shape_errors.is_empty() && self.failing_relations.is_empty()
    }
}

impl<S: Scalar> QuiverRep<S> {
    /// Builds a representation after checking matrix shapes against the
    /// quiver. Relations are checked separately by [`validate_rep`].
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Mat<S>>) -> Result<Self> {
        if dims.len() != q.num_vertices() {
            return Err(Error::dims(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::dims(format!(
                "{} arrow matrices for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::dims(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(QuiverRep { dims, maps })
    }

    pub fn zero(q: &Quiver) -> Self {
        QuiverRep {
            dims: vec![0; q.num_vertices()],
            maps: q.arrows().iter().map(|_| Mat::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(q: &Quiver, i: usize) -> Self {
        let mut dims = vec![0; q.num_vertices()];
        dims[i] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(dims[a.target], dims[a.source]))
            .collect();
        QuiverRep { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Mat<S>] {
        &self.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Mat<S> {
        &self.maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn num_vertices(&self) -> usize {
        self.dims.len()
    }

    /// Matrix of a path: `M_{a_k} ... M_{a_1}`.
    pub fn eval_path(&self, q: &Quiver, p: &Path) -> Mat<S> {
        let mut m = Mat::identity(self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        let _ = q;
        m
    }

    pub fn identity(&self) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: self.dims.iter().map(|&d| Mat::identity(d)).collect(),
        }
    }

    pub fn zero_map_to(&self, target: &QuiverRep<S>) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: self
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Mat::zeros(t, s))
                .collect(),
        }
    }

    fn same_quiver_shape(&self, other: &QuiverRep<S>) -> bool {
        self.dims.len() == other.dims.len() && self.maps.len() == other.maps.len()
    }
}

/// Direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum<S> {
    pub module: QuiverRep<S>,
    pub inclusions: Vec<ModuleMap<S>>,
    pub projections: Vec<ModuleMap<S>>,
}

pub fn direct_sum<S: Scalar>(q: &Quiver, parts: &[&QuiverRep<S>]) -> DirectSum<S> {
    let n = q.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..q.arrows().len())
        .map(|a| Mat::block_diag(&parts.iter().map(|p| p.maps[a].clone()).collect::<Vec<_>>()))
        .collect();
    let module = QuiverRep { dims: dims.clone(), maps };
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offs = vec![0usize; n];
    for p in parts {
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let mut i = Mat::zeros(dims[v], p.dims[v]);
            let mut pr = Mat::zeros(p.dims[v], dims[v]);
            for k in 0..p.dims[v] {
                i[(offs[v] + k, k)] = S::one();
                pr[(k, offs[v] + k)] = S::one();
            }
            inc.push(i);
            proj.push(pr);
            offs[v] += p.dims[v];
        }
        inclusions.push(ModuleMap { vertex_maps: inc });
        projections.push(ModuleMap { vertex_maps: proj });
    }
    DirectSum {
        module,
        inclusions,
        projections,
    }
}

impl<S: Scalar> ModuleMap<S> {
    /// `self` followed by `g`.
    pub fn then(&self, g: &ModuleMap<S>) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: self
                .vertex_maps
                .iter()
                .zip(&g.vertex_maps)
                .map(|(f, g)| g.mul(f))
                .collect(),
        }
    }

    pub fn add(&self, g: &ModuleMap<S>) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: self
                .vertex_maps
                .iter()
                .zip(&g.vertex_maps)
                .map(|(f, g)| f.add(g))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: self.vertex_maps.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vertex_maps.iter().all(|m| m.is_zero())
    }

    /// Concatenated row-major entries of all vertex matrices.
    pub fn flatten(&self) -> Vec<S> {
        self.vertex_maps
            .iter()
            .flat_map(|m| m.to_rows().into_iter().flatten())
            .collect()
    }

    pub fn unflatten(src: &[usize], tgt: &[usize], v: &[S]) -> ModuleMap<S> {
        let mut pos = 0;
        let vertex_maps = src
            .iter()
            .zip(tgt)
            .map(|(&s, &t)| {
                let m = Mat::from_fn(t, s, |r, c| v[pos + r * s + c].clone());
                pos += s * t;
                m
            })
            .collect();
        ModuleMap { vertex_maps }
    }

    /// Block-diagonal map between direct sums.
    pub fn diag(maps: &[&ModuleMap<S>]) -> ModuleMap<S> {
        let n = maps.first().map_or(0, |m| m.vertex_maps.len());
        ModuleMap {
            vertex_maps: (0..n)
                .map(|v| Mat::block_diag(&maps.iter().map(|m| m.vertex_maps[v].clone()).collect::<Vec<_>>()))
                .collect(),
        }
    }

    /// Map out of a direct sum given its components on each summand.
    pub fn hstack(maps: &[&ModuleMap<S>], tgt_dims: &[usize]) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: (0..tgt_dims.len())
                .map(|v| {
                    maps.iter()
                        .fold(Mat::zeros(tgt_dims[v], 0), |acc, m| acc.hstack(&m.vertex_maps[v]))
                })
                .collect(),
        }
    }

    /// Map into a direct sum given its components.
    pub fn vstack(maps: &[&ModuleMap<S>], src_dims: &[usize]) -> ModuleMap<S> {
        ModuleMap {
            vertex_maps: (0..src_dims.len())
                .map(|v| {
                    maps.iter()
                        .fold(Mat::zeros(0, src_dims[v]), |acc, m| acc.vstack(&m.vertex_maps[v]))
                })
                .collect(),
        }
    }
}

pub fn is_homomorphism<S: Scalar>(
    q: &Quiver,
    src: &QuiverRep<S>,
    tgt: &QuiverRep<S>,
    f: &ModuleMap<S>,
) -> bool {
    if f.vertex_maps.len() != q.num_vertices() {
        return false;
    }
    for v in 0..q.num_vertices() {
        if f.vertex_maps[v].shape() != (tgt.dims[v], src.dims[v]) {
            return false;
        }
    }
    q.arrows().iter().enumerate().all(|(ai, a)| {
        tgt.maps[ai].mul(&f.vertex_maps[a.source]) == f.vertex_maps[a.target].mul(&src.maps[ai])
    })
}

/// Shape check plus vanishing of every relation generator.
pub fn validate_rep<S: Scalar>(pa: &PathAlgebra<S>, m: &QuiverRep<S>) -> RepReport {
    let q = pa.quiver();
    let mut report = RepReport::default();
    if m.dims.len() != q.num_vertices() {
        report.shape_errors.push("vertex count".into());
        return report;
    }
    if m.maps.len() != q.arrows().len() {
        report.shape_errors.push("arrow count".into());
        return report;
    }
    for (a, mat) in q.arrows().iter().zip(&m.maps) {
        if mat.shape() != (m.dims[a.target], m.dims[a.source]) {
            report.shape_errors.push(format!("arrow {}", a.name));
        }
    }
    if !report.shape_errors.is_empty() {
        return report;
    }
    for (i, g) in pa.relations().generators.iter().enumerate() {
        let Some((_, p0)) = g.iter().find(|(c, _)| !c.is_zero()) else {
            continue;
        };
        let mut acc = Mat::zeros(m.dims[p0.target(q)], m.dims[p0.source]);
        for (c, p) in g {
            acc = acc.add(&m.eval_path(q, p).scale(c));
        }
        if !acc.is_zero() {
            report.failing_relations.push(i);
        }
    }
    report
}

/// The solution space of the intertwining equations, in flattened
/// coordinates (see [`ModuleMap::flatten`]).
#[derive(Clone, Debug)]
pub struct HomSpace<S> {
    pub src_dims: Vec<usize>,
    pub tgt_dims: Vec<usize>,
    pub space: SubspaceBasis<S>,
}

impl<S: Scalar> HomSpace<S> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<ModuleMap<S>> {
        self.space
            .vectors()
            .iter()
            .map(|v| ModuleMap::unflatten(&self.src_dims, &self.tgt_dims, v))
            .collect()
    }

    pub fn element(&self, coords: &[S]) -> ModuleMap<S> {
        let mut v = vec![S::zero(); self.space.ambient()];
        for (c, b) in coords.iter().zip(self.space.vectors()) {
            crate::linalg::axpy(&mut v, c, b);
        }
        ModuleMap::unflatten(&self.src_dims, &self.tgt_dims, &v)
    }

    pub fn coords(&self, f: &ModuleMap<S>) -> Option<Vec<S>> {
        self.space.coords(&f.flatten())
    }
}

pub fn hom_space<S: Scalar>(q: &Quiver, m: &QuiverRep<S>, n: &QuiverRep<S>) -> Result<HomSpace<S>> {
    if !m.same_quiver_shape(n) || m.dims.len() != q.num_vertices() {
        return Err(Error::AlgebraMismatch);
    }
    let nv = q.num_vertices();
    let mut offs = vec![0usize; nv + 1];
    for v in 0..nv {
        offs[v + 1] = offs[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offs[nv];
    // unknown (v, r, c) = entry r,c of f_v (n_v x m_v)
    let idx = |v: usize, r: usize, c: usize| offs[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let na = &n.maps[ai];
        let ma = &m.maps[ai];
        // (N_a f_s - f_t M_a)[r, c] = 0, an n_t x m_s system
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![S::zero(); unknowns];
                for k in 0..n.dims[s] {
                    let x = &na[(r, k)];
                    if !x.is_zero() {
                        let j = idx(s, k, c);
                        row[j] = row[j].clone() + x.clone();
                    }
                }
                for k in 0..m.dims[t] {
                    let x = &ma[(k, c)];
                    if !x.is_zero() {
                        let j = idx(t, r, k);
                        row[j] = row[j].clone() - x.clone();
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        SubspaceBasis::full(unknowns)
    } else {
        SubspaceBasis::kernel_of(&Mat::from_row_vectors(unknowns, &rows))
    };
    Ok(HomSpace {
        src_dims: m.dims.clone(),
        tgt_dims: n.dims.clone(),
        space,
    })
}

pub fn hom_basis<S: Scalar>(q: &Quiver, m: &QuiverRep<S>, n: &QuiverRep<S>) -> Result<Vec<ModuleMap<S>>> {
    Ok(hom_space(q, m, n)?.basis())
}

/// A submodule or quotient together with its structure map.
#[derive(Clone, Debug)]
pub struct KernelCokernel<S> {
    pub kernel: QuiverRep<S>,
    pub inclusion: ModuleMap<S>,
    pub cokernel: QuiverRep<S>,
    pub projection: ModuleMap<S>,
}

pub fn kernel_cokernel<S: Scalar>(
    q: &Quiver,
    src: &QuiverRep<S>,
    tgt: &QuiverRep<S>,
    f: &ModuleMap<S>,
) -> Result<KernelCokernel<S>> {
    let (kernel, inclusion) = kernel(q, src, f)?;
    let (cokernel, projection) = cokernel(q, tgt, f)?;
    Ok(KernelCokernel {
        kernel,
        inclusion,
        cokernel,
        projection,
    })
}

/// Submodule of `m` spanned at each vertex by the columns of `gens[v]`
/// (which must be linearly independent and closed under the arrows).
pub fn submodule<S: Scalar>(q: &Quiver, m: &QuiverRep<S>, gens: Vec<Mat<S>>) -> Result<(QuiverRep<S>, ModuleMap<S>)> {
    let dims: Vec<usize> = gens.iter().map(|g| g.cols()).collect();
    let mut maps = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let img = m.maps[ai].mul(&gens[a.source]);
        let restricted = if dims[a.target] == 0 {
            if !img.is_zero() {
                return Err(Error::dims(format!("subspace not closed under arrow {}", a.name)));
            }
            Mat::zeros(0, dims[a.source])
        } else {
            let li = gens[a.target].left_inverse()?;
            let r = li.mul(&img);
            if gens[a.target].mul(&r) != img {
                return Err(Error::dims(format!("subspace not closed under arrow {}", a.name)));
            }
            r
        };
        maps.push(restricted);
    }
    Ok((QuiverRep { dims, maps }, ModuleMap { vertex_maps: gens }))
}

pub fn kernel<S: Scalar>(q: &Quiver, src: &QuiverRep<S>, f: &ModuleMap<S>) -> Result<(QuiverRep<S>, ModuleMap<S>)> {
    let gens: Vec<Mat<S>> = (0..q.num_vertices())
        .map(|v| {
            let k = f.vertex_maps[v].kernel_vectors();
            Mat::from_columns(src.dims[v], &k)
        })
        .collect();
    submodule(q, src, gens)
}

pub fn cokernel<S: Scalar>(q: &Quiver, tgt: &QuiverRep<S>, f: &ModuleMap<S>) -> Result<(QuiverRep<S>, ModuleMap<S>)> {
    let images: Vec<SubspaceBasis<S>> = f.vertex_maps.iter().map(SubspaceBasis::image_of).collect();
    quotient_module(q, tgt, &images)
}

/// `m / U` for a submodule given by per-vertex subspaces.
pub fn quotient_module<S: Scalar>(
    q: &Quiver,
    m: &QuiverRep<S>,
    sub: &[SubspaceBasis<S>],
) -> Result<(QuiverRep<S>, ModuleMap<S>)> {
    let mut proj = Vec::new();
    let mut sections = Vec::new();
    for v in 0..q.num_vertices() {
        let full = SubspaceBasis::full(m.dims[v]);
        let quo = full.quotient(&sub[v])?;
        sections.push(Mat::from_columns(m.dims[v], &quo.complement));
        proj.push(quo.projection);
    }
    let dims: Vec<usize> = proj.iter().map(|p| p.rows()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| proj[a.target].mul(&m.maps[ai]).mul(&sections[a.source]))
        .collect();
    Ok((QuiverRep { dims, maps }, ModuleMap { vertex_maps: proj }))
}

/// Indecomposable projective `P(i) = A e_i`: at vertex `j` the normal-form
/// paths from `i` to `j`.
pub fn projective<S: Scalar>(pa: &PathAlgebra<S>, i: usize) -> QuiverRep<S> {
    let q = pa.quiver();
    let n = q.num_vertices();
    let bases: Vec<Vec<usize>> = (0..n).map(|j| pa.basis_between(i, j)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Mat::zeros(dims[a.target], dims[a.source]);
            let step = Path {
                source: a.source,
                arrows: vec![ai],
            };
            for (c, &bi) in bases[a.source].iter().enumerate() {
                let p = pa.basis()[bi].then(&step, q).expect("endpoints");
                for (k, x) in pa.reduce(&p) {
                    let r = bases[a.target].iter().position(|&b| b == k).expect("same endpoints");
                    m[(r, c)] = x;
                }
            }
            m
        })
        .collect();
    QuiverRep { dims, maps }
}

/// Indecomposable injective `I(i) = D(e_i A)`: at vertex `j` the dual of the
/// normal-form paths from `j` to `i`.
pub fn injective<S: Scalar>(pa: &PathAlgebra<S>, i: usize) -> QuiverRep<S> {
    let q = pa.quiver();
    let n = q.num_vertices();
    let bases: Vec<Vec<usize>> = (0..n).map(|j| pa.basis_between(j, i)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // (a.phi)(p) = phi(a then p) for p a path from a.target to i
            let mut m = Mat::zeros(dims[a.target], dims[a.source]);
            let step = Path {
                source: a.source,
                arrows: vec![ai],
            };
            for (r, &bi) in bases[a.target].iter().enumerate() {
                let p = step.then(&pa.basis()[bi], q).expect("endpoints");
                for (k, x) in pa.reduce(&p) {
                    let c = bases[a.source].iter().position(|&b| b == k).expect("same endpoints");
                    m[(r, c)] = x;
                }
            }
            m
        })
        .collect();
    QuiverRep { dims, maps }
}

#[derive(Clone, Debug)]
pub struct StandardModules<S> {
    pub projectives: Vec<QuiverRep<S>>,
    pub injectives: Vec<QuiverRep<S>>,
    pub simples: Vec<QuiverRep<S>>,
}

pub fn standard_modules<S: Scalar>(pa: &PathAlgebra<S>) -> StandardModules<S> {
    let n = pa.quiver().num_vertices();
    StandardModules {
        projectives: (0..n).map(|i| projective(pa, i)).collect(),
        injectives: (0..n).map(|i| injective(pa, i)).collect(),
        simples: (0..n).map(|i| QuiverRep::simple(pa.quiver(), i)).collect(),
    }
}

/// Map `P(tops[0]) ⊕ ... -> target` sending the `k`-th generator `e_{tops[k]}`
/// to `images[k]` (a vector of `target` at vertex `tops[k]`).
pub fn map_from_projective<S: Scalar>(
    pa: &PathAlgebra<S>,
    tops: &[usize],
    images: &[Vec<S>],
    target: &QuiverRep<S>,
) -> ModuleMap<S> {
    let q = pa.quiver();
    let n = q.num_vertices();
    let vertex_maps = (0..n)
        .map(|w| {
            let mut cols = Vec::new();
            for (k, &v) in tops.iter().enumerate() {
                for bi in pa.basis_between(v, w) {
                    cols.push(target.eval_path(q, &pa.basis()[bi]).mul_vec(&images[k]));
                }
            }
            Mat::from_columns(target.dims[w], &cols)
        })
        .collect();
    ModuleMap { vertex_maps }
}

/// Offsets of each summand's generator inside `(⊕ P(tops[k]))_{tops[k]}`.
pub fn generator_positions<S: Scalar>(pa: &PathAlgebra<S>, tops: &[usize]) -> Vec<usize> {
    let mut offs = vec![0usize; pa.quiver().num_vertices()];
    let mut out = Vec::new();
    for &v in tops {
        // the trivial path comes first among paths v -> v
        out.push(offs[v]);
        for w in 0..offs.len() {
            offs[w] += pa.basis_between(v, w).len();
        }
    }
    out
}

/// Projective cover data: `cover = ⊕ P(tops[k])`, `epi: cover -> m`,
/// `omega = ker(epi)` with its inclusion.
#[derive(Clone, Debug)]
pub struct CoverSyzygy<S> {
    pub tops: Vec<usize>,
    pub generators: Vec<Vec<S>>,
    pub cover: QuiverRep<S>,
    pub epi: ModuleMap<S>,
    pub omega: QuiverRep<S>,
    pub inclusion: ModuleMap<S>,
}

/// Top of `m`: per vertex, standard vectors spanning a complement of the
/// radical `sum of images of incoming arrows`.
pub fn top_generators<S: Scalar>(q: &Quiver, m: &QuiverRep<S>) -> Vec<(usize, Vec<S>)> {
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        let incoming: Vec<Vec<S>> = q
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.target == v)
            .flat_map(|(ai, _)| {
                let mm = &m.maps[ai];
                (0..mm.cols()).map(move |c| mm.column(c))
            })
            .collect();
        let rad = SubspaceBasis::span(m.dims[v], incoming);
        for c in rad.standard_complement() {
            out.push((v, crate::linalg::unit_vector(m.dims[v], c)));
        }
    }
    out
}

pub fn direct_sum_of_projectives<S: Scalar>(pa: &PathAlgebra<S>, tops: &[usize]) -> QuiverRep<S> {
    let parts: Vec<QuiverRep<S>> = tops.iter().map(|&v| projective(pa, v)).collect();
    let refs: Vec<&QuiverRep<S>> = parts.iter().collect();
    if refs.is_empty() {
        return QuiverRep::zero(pa.quiver());
    }
    direct_sum(pa.quiver(), &refs).module
}

pub fn projective_cover_syzygy<S: Scalar>(pa: &PathAlgebra<S>, m: &QuiverRep<S>) -> Result<CoverSyzygy<S>> {
    let q = pa.quiver();
    let gens = top_generators(q, m);
    let tops: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let generators: Vec<Vec<S>> = gens.into_iter().map(|(_, g)| g).collect();
    let cover = direct_sum_of_projectives(pa, &tops);
    let epi = map_from_projective(pa, &tops, &generators, m);
    let (omega, inclusion) = kernel(q, &cover, &epi)?;
    Ok(CoverSyzygy {
        tops,
        generators,
        cover,
        epi,
        omega,
        inclusion,
    })
}

/// Declares `M1 ≅ ⊕ summands[i]` for `i` in `summand_indices`; the optional
/// base change is an isomorphism from that direct sum onto `M1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddWitness<S> {
    pub summand_indices: Vec<usize>,
    pub base_change: Option<ModuleMap<S>>,
}

/// `0 -> X --alpha--> M1 --beta--> Y -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTriple<S> {
    pub x: QuiverRep<S>,
    pub m1: QuiverRep<S>,
    pub y: QuiverRep<S>,
    pub alpha: ModuleMap<S>,
    pub beta: ModuleMap<S>,
    pub witness: AddWitness<S>,
}

/// Checks exactness and the add(M) witness against the summands of `M`.
pub fn check_exact_triple<S: Scalar>(
    pa: &PathAlgebra<S>,
    t: &ExactTriple<S>,
    m_summands: &[QuiverRep<S>],
) -> Result<()> {
    let q = pa.quiver();
    for (name, r) in [("X", &t.x), ("M1", &t.m1), ("Y", &t.y)] {
        let rep = validate_rep(pa, r);
        if !rep.passed() {
            return Err(Error::ShapeMismatch(format!("{name} is not a valid module: {rep:?}")));
        }
    }
    if !is_homomorphism(q, &t.x, &t.m1, &t.alpha) {
        return Err(Error::ShapeMismatch("alpha is not a homomorphism X -> M1".into()));
    }
    if !is_homomorphism(q, &t.m1, &t.y, &t.beta) {
        return Err(Error::ShapeMismatch("beta is not a homomorphism M1 -> Y".into()));
    }
    for v in 0..q.num_vertices() {
        let a = &t.alpha.vertex_maps[v];
        let b = &t.beta.vertex_maps[v];
        let name = &q.vertices()[v];
        if a.rank() != a.cols() {
            return Err(Error::NotExact(format!("alpha is not injective at vertex {name}")));
        }
        if b.rank() != b.rows() {
            return Err(Error::NotExact(format!("beta is not surjective at vertex {name}")));
        }
        if !b.mul(a).is_zero() {
            return Err(Error::NotExact(format!("alpha then beta is nonzero at vertex {name}")));
        }
        if a.cols() + b.rows() != a.rows() {
            return Err(Error::NotExact(format!("image of alpha differs from kernel of beta at vertex {name}")));
        }
    }
    let mut parts = Vec::new();
    for &i in &t.witness.summand_indices {
        parts.push(
            m_summands
                .get(i)
                .ok_or_else(|| Error::NotInAddM(format!("summand index {i} out of range")))?,
        );
    }
    let d = if parts.is_empty() {
        QuiverRep::zero(q)
    } else {
        direct_sum(q, &parts).module
    };
    match &t.witness.base_change {
        None => {
            if d != t.m1 {
                return Err(Error::NotInAddM(
                    "M1 differs from the declared direct sum of summands of M".into(),
                ));
            }
        }
        Some(g) => {
            if !is_homomorphism(q, &d, &t.m1, g) {
                return Err(Error::NotInAddM("base change is not a homomorphism".into()));
            }
            if g.vertex_maps.iter().any(|m| m.inverse().is_none()) {
                return Err(Error::NotInAddM("base change is not invertible".into()));
            }
        }
    }
    Ok(())
}

/// `(Hom(M1,M) -> Hom(X,M) onto, Hom(M,M1) -> Hom(M,Y) onto)`.
pub fn approximation_check<S: Scalar>(
    q: &Quiver,
    t: &ExactTriple<S>,
    m: &QuiverRep<S>,
) -> Result<(bool, bool)> {
    let h_m1_m = hom_space(q, &t.m1, m)?;
    let h_x_m = hom_space(q, &t.x, m)?;
    let left_imgs = h_m1_m
        .basis()
        .iter()
        .map(|t1| t.alpha.then(t1).flatten())
        .collect::<Vec<_>>();
    let left = SubspaceBasis::span(h_x_m.space.ambient(), left_imgs).dim() == h_x_m.dim();

    let h_m_m1 = hom_space(q, m, &t.m1)?;
    let h_m_y = hom_space(q, m, &t.y)?;
    let right_imgs = h_m_m1
        .basis()
        .iter()
        .map(|t1| t1.then(&t.beta).flatten())
        .collect::<Vec<_>>();
    let right = SubspaceBasis::span(h_m_y.space.ambient(), right_imgs).dim() == h_m_y.dim();
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_path_algebra, RelationSet};
    use crate::scalar::Rational;

    pub(crate) fn section4() -> PathAlgebra<Rational> {
        let v = |s: &str| s.to_string();
        let q = Quiver::new(
            vec![v("1"), v("2"), v("3"), v("4"), v("5")],
            vec![
                (v("a1"), v("1"), v("2")),
                (v("a2"), v("2"), v("3")),
                (v("a3"), v("3"), v("4")),
                (v("a4"), v("4"), v("5")),
                (v("b"), v("4"), v("4")),
            ],
        )
        .unwrap();
        let r = RelationSet::all_paths_of_length(&q, 2);
        build_path_algebra(&q, &r, 2).unwrap()
    }

    #[test]
    fn section4_standard_modules() {
        let pa = section4();
        let s = standard_modules(&pa);
        assert_eq!(s.projectives[2].dims(), &[0, 0, 1, 1, 0]);
        assert_eq!(s.projectives[3].dims(), &[0, 0, 0, 2, 1]);
        assert_eq!(s.injectives[3].dims(), &[0, 0, 1, 2, 0]);
        assert_eq!(s.projectives[4], s.simples[4]);
        for m in s.projectives.iter().chain(&s.injectives).chain(&s.simples) {
            assert!(validate_rep(&pa, m).passed());
        }
    }

    #[test]
    fn section4_cover_of_injective() {
        let pa = section4();
        let m = injective(&pa, 3);
        let c = projective_cover_syzygy(&pa, &m).unwrap();
        let mut tops = c.tops.clone();
        tops.sort();
        assert_eq!(tops, vec![2, 3]);
        assert_eq!(c.omega.dims(), &[0, 0, 0, 1, 1]);
        // omega is semisimple
        assert!(c.omega.maps().iter().all(|m| m.is_zero()));
        let (coker, _) = cokernel(pa.quiver(), &c.cover, &c.inclusion).unwrap();
        assert_eq!(coker.dims(), m.dims());
    }

    #[test]
    fn syzygy_of_simple_at_loop_vertex() {
        let pa = section4();
        let s4 = QuiverRep::simple(pa.quiver(), 3);
        let c = projective_cover_syzygy(&pa, &s4).unwrap();
        assert_eq!(c.tops, vec![3]);
        assert_eq!(c.omega.dims(), &[0, 0, 0, 1, 1]);
    }

    #[test]
    fn hom_from_projective_counts_vertex_dimension() {
        let pa = section4();
        let s = standard_modules(&pa);
        let q = pa.quiver();
        for i in 0..5 {
            for n in s.injectives.iter().chain(&s.projectives) {
                let h = hom_space(q, &s.projectives[i], n).unwrap();
                assert_eq!(h.dim(), n.dims()[i]);
            }
            for j in 0..5 {
                let h = hom_space(q, &s.projectives[i], &s.simples[j]).unwrap();
                assert_eq!(h.dim(), usize::from(i == j));
            }
        }
    }

    #[test]
    fn identity_and_zero_kernels() {
        let pa = section4();
        let q = pa.quiver();
        let m = injective(&pa, 3);
        let kc = kernel_cokernel(q, &m, &m, &m.identity()).unwrap();
        assert!(kc.kernel.is_zero() && kc.cokernel.is_zero());
        let z = m.zero_map_to(&m);
        let kc = kernel_cokernel(q, &m, &m, &z).unwrap();
        assert_eq!(kc.kernel.dims(), m.dims());
        assert_eq!(kc.cokernel.dims(), m.dims());
        assert!(is_homomorphism(q, &kc.kernel, &m, &kc.inclusion));
        assert!(is_homomorphism(q, &m, &kc.cokernel, &kc.projection));
    }

    #[test]
    fn relation_violation_is_named() {
        let pa = section4();
        let q = pa.quiver();
        let one = Mat::<Rational>::identity(1);
        let mut maps: Vec<Mat<Rational>> = q.arrows().iter().map(|_| one.clone()).collect();
        maps[4] = Mat::zeros(1, 1);
        let m = QuiverRep::new(q, vec![1; 5], maps).unwrap();
        let r = validate_rep(&pa, &m);
        assert!(!r.passed());
        // a1 a2 is the first length-2 path in sorted order
        assert!(r.failing_relations.contains(&0));
        assert!(validate_rep(&pa, &QuiverRep::zero(q)).passed());
    }

    #[test]
    fn cover_sequence_is_exact_and_right_approximating() {
        let pa = section4();
        let q = pa.quiver();
        let m = injective(&pa, 3);
        let c = projective_cover_syzygy(&pa, &m).unwrap();
        let t = ExactTriple {
            x: c.omega.clone(),
            m1: c.cover.clone(),
            y: m.clone(),
            alpha: c.inclusion.clone(),
            beta: c.epi.clone(),
            witness: AddWitness {
                summand_indices: vec![0],
                base_change: None,
            },
        };
        check_exact_triple(&pa, &t, std::slice::from_ref(&c.cover)).unwrap();
        let (_, right) = approximation_check(q, &t, &c.cover).unwrap();
        assert!(right);
        let mut bad = t.clone();
        bad.alpha = c.omega.zero_map_to(&c.cover);
        assert!(matches!(
            check_exact_triple(&pa, &bad, std::slice::from_ref(&c.cover)),
            Err(Error::NotExact(_))
        ));
    }
}
