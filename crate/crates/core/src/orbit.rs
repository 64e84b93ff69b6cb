//! Admissible sets, graded hom spaces `E^Φ(U,V) = ⊕_{i∈Φ} Ext^i(U,V)` with
//! truncated composition, the hatted subspaces, and the subrings built from
//! them.
//!
//! An object is a formal direct sum of registered modules ("atoms"). A graded
//! morphism `U -> V` stores, for each degree `i` and atom pair `(a, b)`, the
//! normalized coordinates of its component in `Ext^i(U_a, V_b)`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{AlgebraWithBasis, Block, Sparse};
use crate::error::{Error, Result};
use crate::homological::{contract, ModId, Workspace};
use crate::linalg::{unit_vector, vec_is_zero, Mat, SubspaceBasis};
use crate::rep::{ExactTriple, ModuleMap};
use crate::scalar::Scalar;

/// Witness `(i, j, k)` that `s` violates the admissibility condition.
pub fn admissibility_witness(s: &[usize]) -> Option<(usize, usize, usize)> {
    let has = |v: usize| s.contains(&v);
    for &i in s {
        for &j in s {
            for &k in s {
                if has(i + j + k) && has(i + j) != has(j + k) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_admissible(s: &[usize]) -> bool {
    s.contains(&0) && admissibility_witness(s).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleSet {
    elements: Vec<usize>,
}

impl AdmissibleSet {
    pub fn new(mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if !elements.contains(&0) {
            return Err(Error::validation("phi", "does not contain 0"));
        }
        if let Some((i, j, k)) = admissibility_witness(&elements) {
            return Err(Error::validation(
                "phi",
                format!(
                    "{elements:?} is not admissible (i={i}, j={j}, k={k}: {} in phi, {} {} phi, {} {} phi)",
                    i + j + k,
                    i + j,
                    if elements.contains(&(i + j)) { "in" } else { "not in" },
                    j + k,
                    if elements.contains(&(j + k)) { "in" } else { "not in" },
                ),
            ));
        }
        Ok(AdmissibleSet { elements })
    }

    pub fn zero() -> Self {
        AdmissibleSet { elements: vec![0] }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, k: usize) -> bool {
        self.elements.binary_search(&k).is_ok()
    }

    pub fn max(&self) -> usize {
        *self.elements.last().expect("contains 0")
    }
}

/// A formal direct sum of atoms.
pub type Obj = Vec<ModId>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedMorphism<S> {
    /// `(degree, source atom, target atom) -> Ext coordinates`; zero
    /// components are never stored.
    pub comps: BTreeMap<(usize, usize, usize), Vec<S>>,
}

impl<S: Scalar> GradedMorphism<S> {
    pub fn zero() -> Self {
        GradedMorphism {
            comps: BTreeMap::new(),
        }
    }

    pub fn add_component(&mut self, key: (usize, usize, usize), v: &[S]) {
        if vec_is_zero(v) {
            return;
        }
        let entry = self.comps.entry(key).or_insert_with(|| vec![S::zero(); v.len()]);
        for (e, x) in entry.iter_mut().zip(v) {
            *e = e.clone() + x.clone();
        }
        if vec_is_zero(entry) {
            self.comps.remove(&key);
        }
    }

    pub fn add(&self, other: &GradedMorphism<S>) -> GradedMorphism<S> {
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_component(*k, v);
        }
        out
    }

    pub fn scale(&self, c: &S) -> GradedMorphism<S> {
        let mut out = GradedMorphism::zero();
        for (k, v) in &self.comps {
            let w: Vec<S> = v.iter().map(|x| x.clone() * c.clone()).collect();
            out.add_component(*k, &w);
        }
        out
    }

    pub fn neg(&self) -> GradedMorphism<S> {
        self.scale(&-S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Components of a single degree.
    pub fn degree_part(&self, i: usize) -> GradedMorphism<S> {
        GradedMorphism {
            comps: self
                .comps
                .iter()
                .filter(|(k, _)| k.0 == i)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

/// Identity of an object, in degree 0.
pub fn graded_identity<S: Scalar>(ws: &mut Workspace<S>, obj: &Obj) -> Result<GradedMorphism<S>> {
    let mut out = GradedMorphism::zero();
    for (a, &id) in obj.iter().enumerate() {
        let m = ws.module(id).clone();
        let c = ws.class_of_map(id, id, &m.identity())?;
        out.add_component((0, a, a), &c);
    }
    Ok(out)
}

/// Composition "f then g". With `truncate`, products landing outside `Φ`
/// are dropped.
pub fn graded_compose<S: Scalar>(
    ws: &mut Workspace<S>,
    src: &Obj,
    mid: &Obj,
    tgt: &Obj,
    f: &GradedMorphism<S>,
    g: &GradedMorphism<S>,
    truncate: Option<&AdmissibleSet>,
) -> Result<GradedMorphism<S>> {
    let mut out = GradedMorphism::zero();
    for (&(i, a, b), fv) in &f.comps {
        for (&(j, b2, c), gv) in &g.comps {
            if b2 != b {
                continue;
            }
            let k = i + j;
            if truncate.is_some_and(|phi| !phi.contains(k)) {
                continue;
            }
            let t = ws.product_tensor(src[a], mid[b], tgt[c], i, j)?;
            let dim = ws.ext_dim(src[a], tgt[c], k)?;
            let v = contract(&t, fv, gv, dim);
            out.add_component((k, a, c), &v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayoutBlock {
    pub degree: usize,
    pub a: usize,
    pub b: usize,
    pub offset: usize,
    pub dim: usize,
}

/// Flat coordinates on `⊕_{i ∈ degrees} ⊕_{a,b} Ext^i(src_a, tgt_b)`.
#[derive(Clone, Debug)]
pub struct GradedLayout {
    pub src: Obj,
    pub tgt: Obj,
    pub blocks: Vec<LayoutBlock>,
    pub total: usize,
    index: HashMap<(usize, usize, usize), usize>,
}

impl GradedLayout {
    pub fn new<S: Scalar>(ws: &mut Workspace<S>, src: &Obj, tgt: &Obj, degrees: &[usize]) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut offset = 0;
        for &i in degrees {
            for (a, &sa) in src.iter().enumerate() {
                for (b, &tb) in tgt.iter().enumerate() {
                    let dim = ws.ext_dim(sa, tb, i)?;
                    index.insert((i, a, b), blocks.len());
                    blocks.push(LayoutBlock {
                        degree: i,
                        a,
                        b,
                        offset,
                        dim,
                    });
                    offset += dim;
                }
            }
        }
        Ok(GradedLayout {
            src: src.clone(),
            tgt: tgt.clone(),
            blocks,
            total: offset,
            index,
        })
    }

    pub fn block(&self, degree: usize, a: usize, b: usize) -> Option<&LayoutBlock> {
        self.index.get(&(degree, a, b)).map(|&k| &self.blocks[k])
    }

    pub fn flatten<S: Scalar>(&self, g: &GradedMorphism<S>) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); self.total];
        for (&(i, a, b), v) in &g.comps {
            let blk = self
                .block(i, a, b)
                .ok_or_else(|| Error::dims(format!("component ({i},{a},{b}) outside layout")))?;
            out[blk.offset..blk.offset + blk.dim].clone_from_slice(v);
        }
        Ok(out)
    }

    pub fn unflatten<S: Scalar>(&self, v: &[S]) -> GradedMorphism<S> {
        let mut g = GradedMorphism::zero();
        for blk in &self.blocks {
            g.add_component((blk.degree, blk.a, blk.b), &v[blk.offset..blk.offset + blk.dim]);
        }
        g
    }

    /// Unit vector `k` of the flat space as a graded morphism.
    pub fn basis_element<S: Scalar>(&self, k: usize) -> GradedMorphism<S> {
        self.unflatten(&unit_vector(self.total, k))
    }
}

/// Matrix of `t -> f · t` (f then t) from `E(U,V)` to `E(U2,V)` on the
/// given layouts.
pub fn precompose_matrix<S: Scalar>(
    ws: &mut Workspace<S>,
    f: &GradedMorphism<S>,
    from: &GradedLayout,
    to: &GradedLayout,
    truncate: Option<&AdmissibleSet>,
) -> Result<Mat<S>> {
    let mut cols = Vec::with_capacity(from.total);
    for k in 0..from.total {
        let t = from.basis_element(k);
        let r = graded_compose(ws, &to.src, &from.src, &from.tgt, f, &t, truncate)?;
        cols.push(to.flatten(&r)?);
    }
    Ok(Mat::from_columns(to.total, &cols))
}

/// Matrix of `t -> t · g` (t then g) from `E(U,V)` to `E(U,V2)`.
pub fn postcompose_matrix<S: Scalar>(
    ws: &mut Workspace<S>,
    g: &GradedMorphism<S>,
    from: &GradedLayout,
    to: &GradedLayout,
    truncate: Option<&AdmissibleSet>,
) -> Result<Mat<S>> {
    let mut cols = Vec::with_capacity(from.total);
    for k in 0..from.total {
        let t = from.basis_element(k);
        let r = graded_compose(ws, &from.src, &from.tgt, &to.tgt, &t, g, truncate)?;
        cols.push(to.flatten(&r)?);
    }
    Ok(Mat::from_columns(to.total, &cols))
}

/// The data of `0 -> X -> M1 -> Y -> 0` in atom form: `M1` is split into
/// the declared summands of `M`.
#[derive(Clone, Debug)]
pub struct SequenceData<S> {
    pub x: ModId,
    pub y: ModId,
    pub m: Obj,
    pub m1: Obj,
    /// `[x] -> m1`, degree 0.
    pub alpha: GradedMorphism<S>,
    /// `m1 -> [y]`, degree 0.
    pub beta: GradedMorphism<S>,
    pub phi: AdmissibleSet,
}

impl<S: Scalar> SequenceData<S> {
    /// `m_ids[k]` is the workspace id of the `k`-th declared summand of `M`.
    pub fn new(
        ws: &mut Workspace<S>,
        t: &ExactTriple<S>,
        x: ModId,
        y: ModId,
        m_ids: &[ModId],
        phi: AdmissibleSet,
    ) -> Result<Self> {
        let n = ws.algebra().quiver().num_vertices();
        let m1: Obj = t
            .witness
            .summand_indices
            .iter()
            .map(|&k| {
                m_ids
                    .get(k)
                    .copied()
                    .ok_or_else(|| Error::NotInAddM(format!("summand index {k} out of range")))
            })
            .collect::<Result<_>>()?;
        // per-vertex base change from the declared sum onto M1
        let g: Vec<Mat<S>> = match &t.witness.base_change {
            Some(g) => g.vertex_maps.clone(),
            None => t.m1.dims().iter().map(|&d| Mat::identity(d)).collect(),
        };
        let g_inv: Vec<Mat<S>> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::NotInAddM("base change is not invertible".into())))
            .collect::<Result<_>>()?;
        let mut alpha = GradedMorphism::zero();
        let mut beta = GradedMorphism::zero();
        let mut offs = vec![0usize; n];
        for (b, &mb) in m1.iter().enumerate() {
            let dims = ws.module(mb).dims().to_vec();
            let mut a_maps = Vec::new();
            let mut b_maps = Vec::new();
            for v in 0..n {
                let ginv_a = g_inv[v].mul(&t.alpha.vertex_maps[v]);
                a_maps.push(ginv_a.block(offs[v], 0, dims[v], ginv_a.cols()));
                let bg = t.beta.vertex_maps[v].mul(&g[v]);
                b_maps.push(bg.block(0, offs[v], bg.rows(), dims[v]));
                offs[v] += dims[v];
            }
            let ca = ws.class_of_map(x, mb, &ModuleMap { vertex_maps: a_maps })?;
            alpha.add_component((0, 0, b), &ca);
            let cb = ws.class_of_map(mb, y, &ModuleMap { vertex_maps: b_maps })?;
            beta.add_component((0, b, 0), &cb);
        }
        Ok(SequenceData {
            x,
            y,
            m: m_ids.to_vec(),
            m1,
            alpha,
            beta,
            phi,
        })
    }

    fn xo(&self) -> Obj {
        vec![self.x]
    }

    fn yo(&self) -> Obj {
        vec![self.y]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HatKind {
    EndX,
    EndY,
    XtoM,
    MtoY,
    XtoY,
}

/// Per degree, a subspace of `Ext^i(U, V)` for the atom pair of its kind.
#[derive(Clone, Debug)]
pub struct HattedSubspace<S> {
    pub kind: HatKind,
    /// For `XtoM` / `MtoY`: index of the summand of `M`.
    pub m_atom: Option<usize>,
    pub per_degree: BTreeMap<usize, SubspaceBasis<S>>,
}

impl<S: Scalar> HattedSubspace<S> {
    pub fn dims(&self) -> BTreeMap<usize, usize> {
        self.per_degree.iter().map(|(i, s)| (*i, s.dim())).collect()
    }
}

fn image_in<S: Scalar>(m: &Mat<S>) -> SubspaceBasis<S> {
    SubspaceBasis::image_of(m)
}

pub fn hatted_subspace<S: Scalar>(
    ws: &mut Workspace<S>,
    sd: &SequenceData<S>,
    kind: HatKind,
    m_atom: Option<usize>,
) -> Result<HattedSubspace<S>> {
    let mut per_degree = BTreeMap::new();
    let xo = sd.xo();
    let yo = sd.yo();
    let mc = || -> Result<Obj> {
        let c = m_atom.ok_or_else(|| Error::validation("hatted_subspace", "summand index required"))?;
        Ok(vec![*sd.m.get(c).ok_or_else(|| Error::validation("hatted_subspace", "summand index out of range"))?])
    };
    for &i in sd.phi.elements() {
        let deg = [i];
        let sub = match kind {
            HatKind::EndX => {
                let exx = GradedLayout::new(ws, &xo, &xo, &deg)?;
                let exm1 = GradedLayout::new(ws, &xo, &sd.m1, &deg)?;
                let em1m1 = GradedLayout::new(ws, &sd.m1, &sd.m1, &deg)?;
                let a = postcompose_matrix(ws, &sd.alpha, &exx, &exm1, None)?;
                let b = precompose_matrix(ws, &sd.alpha, &em1m1, &exm1, None)?;
                image_in(&b).preimage(&a)?
            }
            HatKind::EndY => {
                let eyy = GradedLayout::new(ws, &yo, &yo, &deg)?;
                let em1y = GradedLayout::new(ws, &sd.m1, &yo, &deg)?;
                let em1m1 = GradedLayout::new(ws, &sd.m1, &sd.m1, &deg)?;
                let a = precompose_matrix(ws, &sd.beta, &eyy, &em1y, None)?;
                let b = postcompose_matrix(ws, &sd.beta, &em1m1, &em1y, None)?;
                image_in(&b).preimage(&a)?
            }
            HatKind::XtoM => {
                let m = mc()?;
                let em1m = GradedLayout::new(ws, &sd.m1, &m, &deg)?;
                let exm = GradedLayout::new(ws, &xo, &m, &deg)?;
                image_in(&precompose_matrix(ws, &sd.alpha, &em1m, &exm, None)?)
            }
            HatKind::MtoY => {
                let m = mc()?;
                let emm1 = GradedLayout::new(ws, &m, &sd.m1, &deg)?;
                let emy = GradedLayout::new(ws, &m, &yo, &deg)?;
                image_in(&postcompose_matrix(ws, &sd.beta, &emm1, &emy, None)?)
            }
            HatKind::XtoY => {
                let em1y = GradedLayout::new(ws, &sd.m1, &yo, &deg)?;
                let exm1 = GradedLayout::new(ws, &xo, &sd.m1, &deg)?;
                let exy = GradedLayout::new(ws, &xo, &yo, &deg)?;
                let via_alpha = image_in(&precompose_matrix(ws, &sd.alpha, &em1y, &exy, None)?);
                let via_beta = image_in(&postcompose_matrix(ws, &sd.beta, &exm1, &exy, None)?);
                via_alpha.intersect(&via_beta)?
            }
        };
        per_degree.insert(i, sub);
    }
    Ok(HattedSubspace {
        kind,
        m_atom,
        per_degree,
    })
}

/// One basis vector of a block algebra: a class in `Ext^degree(atom a, atom b)`.
#[derive(Clone, Debug)]
pub struct BasisEntry<S> {
    pub degree: usize,
    pub a: usize,
    pub b: usize,
    pub vector: Vec<S>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDim {
    pub block: String,
    pub degree: usize,
    pub dim: usize,
}

/// A subring of `E^Φ(U)` given blockwise, materialized with structure
/// constants.
#[derive(Clone, Debug)]
pub struct BlockAlgebra<S> {
    pub name: String,
    pub atoms: Obj,
    pub atom_names: Vec<String>,
    pub phi: AdmissibleSet,
    pub entries: Vec<BasisEntry<S>>,
    pub algebra: AlgebraWithBasis<S>,
    pub block_dims: Vec<BlockDim>,
    subspaces: HashMap<(usize, usize, usize), (usize, SubspaceBasis<S>)>,
}

/// Group label and optional restricting subspace for every atom pair.
pub struct BlockPlan<'a, S> {
    pub name: &'a str,
    pub atoms: Obj,
    pub groups: Vec<String>,
    pub group_of: Box<dyn Fn(usize, usize) -> usize + 'a>,
    /// `(degree, a, b) -> subspace`; missing pairs use the whole Ext space.
    pub restrict: HashMap<(usize, usize, usize), SubspaceBasis<S>>,
}

impl<S: Scalar> BlockAlgebra<S> {
    pub fn build(ws: &mut Workspace<S>, plan: BlockPlan<'_, S>, phi: &AdmissibleSet) -> Result<Self> {
        let atoms = plan.atoms.clone();
        let n = atoms.len();
        let mut entries = Vec::new();
        let mut labels = Vec::new();
        let mut blocks = Vec::new();
        let mut block_dims = Vec::new();
        let mut subspaces = HashMap::new();
        let atom_names: Vec<String> = atoms.iter().map(|&id| ws.name(id).to_string()).collect();
        for (gi, gname) in plan.groups.iter().enumerate() {
            let start = entries.len();
            let mut per_degree: BTreeMap<usize, usize> = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    if (plan.group_of)(a, b) != gi {
                        continue;
                    }
                    for &i in phi.elements() {
                        let d = ws.ext_dim(atoms[a], atoms[b], i)?;
                        let sub = match plan.restrict.get(&(i, a, b)) {
                            Some(s) => s.clone(),
                            None => SubspaceBasis::full(d),
                        };
                        if sub.ambient() != d {
                            return Err(Error::dims(format!("restriction for ({i},{a},{b})")));
                        }
                        subspaces.insert((i, a, b), (entries.len(), sub.clone()));
                        *per_degree.entry(i).or_default() += sub.dim();
                        for (k, v) in sub.vectors().iter().enumerate() {
                            labels.push(format!("{gname}[{},{}]^{i}#{k}", atom_names[a], atom_names[b]));
                            entries.push(BasisEntry {
                                degree: i,
                                a,
                                b,
                                vector: v.clone(),
                            });
                        }
                    }
                }
            }
            blocks.push(Block {
                name: gname.clone(),
                start,
                len: entries.len() - start,
            });
            for (i, dim) in per_degree {
                block_dims.push(BlockDim {
                    block: gname.clone(),
                    degree: i,
                    dim,
                });
            }
        }

        let dim = entries.len();
        let mut products: BTreeMap<(usize, usize), Sparse<S>> = BTreeMap::new();
        for (p, ep) in entries.iter().enumerate() {
            for (q, eq) in entries.iter().enumerate() {
                if ep.b != eq.a {
                    continue;
                }
                let k = ep.degree + eq.degree;
                if !phi.contains(k) {
                    continue;
                }
                let (a, b, c) = (atoms[ep.a], atoms[ep.b], atoms[eq.b]);
                let t = ws.product_tensor(a, b, c, ep.degree, eq.degree)?;
                let rdim = ws.ext_dim(a, c, k)?;
                let v = contract(&t, &ep.vector, &eq.vector, rdim);
                if vec_is_zero(&v) {
                    continue;
                }
                let (start, sub) = &subspaces[&(k, ep.a, eq.b)];
                let coords = sub.coords(&v).ok_or_else(|| {
                    Error::ClosureFailure(format!(
                        "{}: {} * {} leaves the declared span",
                        plan.name, labels[p], labels[q]
                    ))
                })?;
                let sp: Sparse<S> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (start + j, c))
                    .collect();
                products.insert((p, q), sp);
            }
        }

        let mut unit = vec![S::zero(); dim];
        for (a, &id) in atoms.iter().enumerate() {
            let m = ws.module(id).clone();
            if m.is_zero() {
                continue;
            }
            let c = ws.class_of_map(id, id, &m.identity())?;
            let (start, sub) = &subspaces[&(0, a, a)];
            let coords = sub.coords(&c).ok_or_else(|| {
                Error::ClosureFailure(format!("{}: identity of {} is missing", plan.name, atom_names[a]))
            })?;
            for (j, x) in coords.into_iter().enumerate() {
                unit[start + j] = x;
            }
        }
        let algebra = AlgebraWithBasis::from_sparse(labels, unit, products).with_blocks(blocks);
        Ok(BlockAlgebra {
            name: plan.name.to_string(),
            atoms,
            atom_names,
            phi: phi.clone(),
            entries,
            algebra,
            block_dims,
            subspaces,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Graded morphism of an element given in algebra coordinates.
    pub fn element(&self, coords: &[S]) -> GradedMorphism<S> {
        let mut g = GradedMorphism::zero();
        for (c, e) in coords.iter().zip(&self.entries) {
            if c.is_zero() {
                continue;
            }
            let v: Vec<S> = e.vector.iter().map(|x| x.clone() * c.clone()).collect();
            g.add_component((e.degree, e.a, e.b), &v);
        }
        g
    }

    /// Algebra coordinates of a graded morphism, if it lies in the subring.
    pub fn coords_of(&self, g: &GradedMorphism<S>) -> Option<Vec<S>> {
        let mut out = vec![S::zero(); self.dim()];
        for (key, v) in &g.comps {
            let (start, sub) = self.subspaces.get(key)?;
            let c = sub.coords(v)?;
            for (j, x) in c.into_iter().enumerate() {
                out[start + j] = x;
            }
        }
        Some(out)
    }
}

/// `Λ₁`, `Λ₂`, `Γ` and the 3x3 `Λ`.
#[derive(Clone, Debug)]
pub struct Subrings<S> {
    pub lambda1: BlockAlgebra<S>,
    pub lambda2: BlockAlgebra<S>,
    pub gamma: BlockAlgebra<S>,
    pub lambda3: BlockAlgebra<S>,
}

/// All hatted subspaces of a sequence.
#[derive(Clone, Debug)]
pub struct Hats<S> {
    pub end_x: HattedSubspace<S>,
    pub end_y: HattedSubspace<S>,
    pub x_to_m: Vec<HattedSubspace<S>>,
    pub m_to_y: Vec<HattedSubspace<S>>,
    pub x_to_y: HattedSubspace<S>,
}

pub fn all_hats<S: Scalar>(ws: &mut Workspace<S>, sd: &SequenceData<S>) -> Result<Hats<S>> {
    let mut x_to_m = Vec::new();
    let mut m_to_y = Vec::new();
    for c in 0..sd.m.len() {
        x_to_m.push(hatted_subspace(ws, sd, HatKind::XtoM, Some(c))?);
        m_to_y.push(hatted_subspace(ws, sd, HatKind::MtoY, Some(c))?);
    }
    Ok(Hats {
        end_x: hatted_subspace(ws, sd, HatKind::EndX, None)?,
        end_y: hatted_subspace(ws, sd, HatKind::EndY, None)?,
        x_to_m,
        m_to_y,
        x_to_y: hatted_subspace(ws, sd, HatKind::XtoY, None)?,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    X,
    M,
    Y,
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::X => "X",
        Role::M => "M",
        Role::Y => "Y",
    }
}

fn plan_for<'a, S: Scalar>(
    name: &'a str,
    roles: Vec<Role>,
    atoms: Obj,
    hats: &Hats<S>,
    hatted: &[(Role, Role)],
) -> BlockPlan<'a, S> {
    // M atoms are numbered in order of appearance
    let m_index: Vec<Option<usize>> = {
        let mut c = 0;
        roles
            .iter()
            .map(|r| {
                if *r == Role::M {
                    c += 1;
                    Some(c - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let mut kinds: Vec<(Role, Role)> = Vec::new();
    for &r in &roles {
        for &s in &roles {
            if !kinds.contains(&(r, s)) {
                kinds.push((r, s));
            }
        }
    }
    let groups: Vec<String> = kinds
        .iter()
        .map(|&(r, s)| {
            let hat = if hatted.contains(&(r, s)) { "Ê" } else { "E" };
            if r == s {
                format!("{hat}({})", role_name(r))
            } else {
                format!("{hat}({},{})", role_name(r), role_name(s))
            }
        })
        .collect();
    let mut restrict = HashMap::new();
    for (a, &r) in roles.iter().enumerate() {
        for (b, &s) in roles.iter().enumerate() {
            if !hatted.contains(&(r, s)) {
                continue;
            }
            let sub = match (r, s) {
                (Role::X, Role::X) => &hats.end_x,
                (Role::Y, Role::Y) => &hats.end_y,
                (Role::X, Role::M) => &hats.x_to_m[m_index[b].expect("M atom")],
                (Role::M, Role::Y) => &hats.m_to_y[m_index[a].expect("M atom")],
                (Role::X, Role::Y) => &hats.x_to_y,
                _ => continue,
            };
            for (i, s) in &sub.per_degree {
                restrict.insert((*i, a, b), s.clone());
            }
        }
    }
    let roles2 = roles.clone();
    BlockPlan {
        name,
        atoms,
        groups,
        group_of: Box::new(move |a, b| {
            kinds
                .iter()
                .position(|&k| k == (roles2[a], roles2[b]))
                .expect("kind listed")
        }),
        restrict,
    }
}

/// Builds `Λ₁`, `Λ₂`, `Γ` and `Λ`. Any product leaving its declared span is
/// reported as [`Error::ClosureFailure`].
pub fn build_subrings<S: Scalar>(ws: &mut Workspace<S>, sd: &SequenceData<S>) -> Result<(Subrings<S>, Hats<S>)> {
    let hats = all_hats(ws, sd)?;
    let mut w_atoms = vec![sd.x];
    w_atoms.extend(&sd.m);
    let mut w_roles = vec![Role::X];
    w_roles.extend(sd.m.iter().map(|_| Role::M));
    let mut wb_atoms = vec![sd.y];
    wb_atoms.extend(&sd.m);
    let mut wb_roles = vec![Role::Y];
    wb_roles.extend(sd.m.iter().map(|_| Role::M));
    let mut v_atoms = w_atoms.clone();
    v_atoms.push(sd.y);
    let mut v_roles = w_roles.clone();
    v_roles.push(Role::Y);

    let l1 = plan_for(
        "Lambda1",
        w_roles,
        w_atoms,
        &hats,
        &[(Role::X, Role::X), (Role::X, Role::M)],
    );
    let lambda1 = BlockAlgebra::build(ws, l1, &sd.phi)?;
    let l2 = plan_for(
        "Lambda2",
        wb_roles,
        wb_atoms,
        &hats,
        &[(Role::Y, Role::Y), (Role::M, Role::Y)],
    );
    let lambda2 = BlockAlgebra::build(ws, l2, &sd.phi)?;
    let g = plan_for("Gamma", v_roles.clone(), v_atoms.clone(), &hats, &[]);
    let gamma = BlockAlgebra::build(ws, g, &sd.phi)?;
    let l3 = plan_for(
        "Lambda",
        v_roles,
        v_atoms,
        &hats,
        &[
            (Role::X, Role::X),
            (Role::X, Role::M),
            (Role::X, Role::Y),
            (Role::M, Role::Y),
            (Role::Y, Role::Y),
        ],
    );
    let lambda3 = BlockAlgebra::build(ws, l3, &sd.phi)?;
    Ok((
        Subrings {
            lambda1,
            lambda2,
            gamma,
            lambda3,
        },
        hats,
    ))
}

/// The full graded endomorphism algebra `E^Φ(U)`.
pub fn graded_end_algebra<S: Scalar>(ws: &mut Workspace<S>, atoms: Obj, phi: &AdmissibleSet) -> Result<BlockAlgebra<S>> {
    let plan = BlockPlan {
        name: "E",
        atoms,
        groups: vec!["E".to_string()],
        group_of: Box::new(|_, _| 0),
        restrict: HashMap::new(),
    };
    BlockAlgebra::build(ws, plan, phi)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    #[test]
    fn admissible_examples() {
        assert!(is_admissible(&[0, 3, 4]));
        assert!(is_admissible(&[0, 1, 2, 3, 4]));
        assert!(is_admissible(&[0]));
        assert!(!is_admissible(&[0, 1, 2, 4]));
        assert!(!is_admissible(&[1, 2]));
        let err = AdmissibleSet::new(vec![0, 1, 2, 4]).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    use crate::homological::Workspace;
    use crate::quiver::{build_path_algebra, PathAlgebra, Quiver, RelationSet};
    use crate::rep::{injective, projective, projective_cover_syzygy, AddWitness, ExactTriple};
    use crate::scalar::Rational;

    fn chain_with_loop() -> PathAlgebra<Rational> {
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
        build_path_algebra(&q, &RelationSet::all_paths_of_length(&q, 2), 2).unwrap()
    }

    /// `0 -> Ω(I4) -> P3 ⊕ P4 -> I4 -> 0` with M = P3 ⊕ P4.
    pub(crate) fn cover_sequence_parts() -> (Workspace<Rational>, ExactTriple<Rational>, ModId, ModId, Vec<ModId>) {
        let pa = chain_with_loop();
        let m = injective(&pa, 3);
        let c = projective_cover_syzygy(&pa, &m).unwrap();
        let mut ws = Workspace::new(pa.clone());
        let x = ws.add_module("X", c.omega.clone()).unwrap();
        let y = ws.add_module("Y", m.clone()).unwrap();
        let m_ids: Vec<ModId> = c
            .tops
            .iter()
            .map(|&v| ws.add_module(&format!("P{}", v + 1), projective(&pa, v)).unwrap())
            .collect();
        let t = ExactTriple {
            x: c.omega.clone(),
            m1: c.cover.clone(),
            y: m,
            alpha: c.inclusion.clone(),
            beta: c.epi.clone(),
            witness: AddWitness {
                summand_indices: (0..c.tops.len()).collect(),
                base_change: None,
            },
        };
        (ws, t, x, y, m_ids)
    }

    pub(crate) fn cover_sequence(phi: Vec<usize>) -> (Workspace<Rational>, SequenceData<Rational>) {
        let (mut ws, t, x, y, m_ids) = cover_sequence_parts();
        let sd = SequenceData::new(&mut ws, &t, x, y, &m_ids, AdmissibleSet::new(phi).unwrap()).unwrap();
        (ws, sd)
    }

    #[test]
    fn cover_sequence_subrings_degree_zero() {
        let (mut ws, sd) = cover_sequence(vec![0]);
        let (s, hats) = build_subrings(&mut ws, &sd).unwrap();
        assert_eq!(s.lambda2.dim(), 11);
        assert_eq!(s.lambda1.dim(), 8);
        assert_eq!(hats.end_x.dims()[&0], 1);
        for a in [&s.lambda1, &s.lambda2, &s.gamma, &s.lambda3] {
            assert!(a.algebra.validate().passed(), "{}", a.name);
        }
        // End(X ⊕ M) without hats, counted from Hom(P_i, -) = vertex dimensions
        let mut w = vec![sd.x];
        w.extend(&sd.m);
        let full = graded_end_algebra(&mut ws, w, &sd.phi).unwrap();
        assert_eq!(full.dim(), 10);
    }

    #[test]
    fn subring_products_agree_with_ambient() {
        let (mut ws, sd) = cover_sequence(vec![0, 1]);
        let (s, _) = build_subrings(&mut ws, &sd).unwrap();
        let l = &s.lambda1;
        for p in 0..l.dim() {
            for q in 0..l.dim() {
                let ep = l.element(&unit_vector(l.dim(), p));
                let eq = l.element(&unit_vector(l.dim(), q));
                let direct = graded_compose(&mut ws, &l.atoms, &l.atoms, &l.atoms, &ep, &eq, Some(&sd.phi)).unwrap();
                let via = l.element(&l.algebra.basis_product(p, q));
                assert_eq!(direct, via);
            }
        }
    }
}

