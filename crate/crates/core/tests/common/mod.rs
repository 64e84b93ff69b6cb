//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltlab::linalg::Mat;
use tiltlab::quiver::{build_path_algebra, Path, PathAlgebra, Quiver, RelationSet};
use tiltlab::homological::{ModId, Workspace};
use tiltlab::rep::{
    cokernel, direct_sum_of_projectives, map_from_projective, projective, projective_cover_syzygy, validate_rep, AddWitness,
    ExactTriple, QuiverRep,
};
use tiltlab::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small<S: Scalar>(r: &mut ChaCha8Rng) -> S {
    S::from_i64(r.gen_range(-2..=2))
}

pub fn random_quiver(r: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = r.gen_range(1..=max_vertices);
    let m = r.gen_range(1..=max_arrows);
    let arrows: Vec<(usize, usize)> = (0..m).map(|_| (r.gen_range(0..n), r.gen_range(0..n))).collect();
    Quiver::from_indices(n, &arrows)
}

pub fn rad_power_zero<S: Scalar>(q: &Quiver, k: usize) -> PathAlgebra<S> {
    build_path_algebra(q, &RelationSet::all_paths_of_length(q, k), k).expect("radical power relations are admissible")
}

/// Kills a random set of paths of length 2 and every path of length 3.
pub fn random_monomial<S: Scalar>(r: &mut ChaCha8Rng, q: &Quiver) -> PathAlgebra<S> {
    let mut killed: Vec<Path> = q.paths_of_length(2).into_iter().filter(|_| r.gen_bool(0.5)).collect();
    killed.extend(q.paths_of_length(3));
    build_path_algebra(q, &RelationSet::monomials(killed), 3).expect("monomial relations are admissible")
}

/// Either `rad^k = 0` for `k` in {2, 3} or a random monomial algebra.
pub fn random_algebra<S: Scalar>(r: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> PathAlgebra<S> {
    let q = random_quiver(r, max_vertices, max_arrows);
    match r.gen_range(0..3) {
        0 => rad_power_zero(&q, 2),
        1 => rad_power_zero(&q, 3),
        _ => random_monomial(r, &q),
    }
}

/// Cyclic quiver `0 -> 1 -> ... -> n-1 -> 0` with `rad^l = 0`.
pub fn cyclic_nakayama<S: Scalar>(n: usize, l: usize) -> PathAlgebra<S> {
    let arrows: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    rad_power_zero(&Quiver::from_indices(n, &arrows), l)
}

/// Cokernel of a random map from a sum of projectives into another; never
/// zero.
pub fn random_module<S: Scalar>(r: &mut ChaCha8Rng, pa: &PathAlgebra<S>, max_tops: usize, max_rels: usize) -> QuiverRep<S> {
    let q = pa.quiver();
    let n = q.num_vertices();
    loop {
        let tops: Vec<usize> = (0..r.gen_range(1..=max_tops)).map(|_| r.gen_range(0..n)).collect();
        let p0 = direct_sum_of_projectives(pa, &tops);
        let rel_tops: Vec<usize> = (0..r.gen_range(0..=max_rels)).map(|_| r.gen_range(0..n)).collect();
        let images: Vec<Vec<S>> = rel_tops
            .iter()
            .map(|&v| (0..p0.dims()[v]).map(|_| small::<S>(r)).collect())
            .collect();
        let f = map_from_projective(pa, &rel_tops, &images, &p0);
        let (m, _) = cokernel(q, &p0, &f).expect("cokernels exist");
        if !m.is_zero() {
            return m;
        }
    }
}

pub fn random_projective<S: Scalar>(r: &mut ChaCha8Rng, pa: &PathAlgebra<S>) -> QuiverRep<S> {
    projective(pa, r.gen_range(0..pa.quiver().num_vertices()))
}

/// Random representation with total dimension at most `max_total`,
/// rejection-sampled until it satisfies the relations.
pub fn random_rep<S: Scalar>(r: &mut ChaCha8Rng, pa: &PathAlgebra<S>, max_total: usize) -> QuiverRep<S> {
    let q = pa.quiver();
    let n = q.num_vertices();
    loop {
        let total = r.gen_range(1..=max_total);
        let mut dims = vec![0; n];
        for _ in 0..total {
            dims[r.gen_range(0..n)] += 1;
        }
        for _ in 0..20 {
            let maps: Vec<Mat<S>> = q
                .arrows()
                .iter()
                .map(|a| Mat::from_fn(dims[a.target], dims[a.source], |_, _| small::<S>(r)))
                .collect();
            let m = QuiverRep::new(q, dims.clone(), maps).expect("shapes agree");
            if validate_rep(pa, &m).passed() {
                return m;
            }
        }
    }
}

pub fn pick<'a, T>(r: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(r).expect("nonempty")
}

/// `0 -> Ω(Y) -> P(Y) -> Y -> 0` with `M` the distinct indecomposable
/// summands of `P(Y)` plus `P(extra)`.
pub struct SyzygyInstance<S> {
    pub ws: Workspace<S>,
    pub triple: ExactTriple<S>,
    pub x: ModId,
    pub y: ModId,
    pub m_ids: Vec<ModId>,
}

pub fn syzygy_instance<S: Scalar>(pa: &PathAlgebra<S>, y: &QuiverRep<S>, extra: Option<usize>) -> SyzygyInstance<S> {
    let c = projective_cover_syzygy(pa, y).expect("covers exist");
    let mut verts: Vec<usize> = c.tops.clone();
    verts.extend(extra);
    verts.sort();
    verts.dedup();
    let mut ws = Workspace::new(pa.clone());
    let x = ws.add_module("X", c.omega.clone()).expect("syzygies are modules");
    let yid = ws.add_module("Y", y.clone()).expect("valid module");
    let m_ids: Vec<ModId> = verts
        .iter()
        .map(|&v| ws.add_module(&format!("P{v}"), projective(pa, v)).expect("projectives are modules"))
        .collect();
    let summand_indices = c.tops.iter().map(|t| verts.iter().position(|v| v == t).unwrap()).collect();
    let triple = ExactTriple {
        x: c.omega,
        m1: c.cover,
        y: y.clone(),
        alpha: c.inclusion,
        beta: c.epi,
        witness: AddWitness {
            summand_indices,
            base_change: None,
        },
    };
    SyzygyInstance {
        ws,
        triple,
        x,
        y: yid,
        m_ids,
    }
}

/// [`random_algebra`] redrawn until its dimension is at most `max_dim`.
pub fn bounded_algebra<S: Scalar>(r: &mut ChaCha8Rng, max_dim: usize) -> PathAlgebra<S> {
    loop {
        let pa = random_algebra::<S>(r, 3, 4);
        if pa.dim() <= max_dim {
            return pa;
        }
    }
}

/// [`random_module`] redrawn until its dimension is at most `max_dim`.
pub fn bounded_module<S: Scalar>(r: &mut ChaCha8Rng, pa: &PathAlgebra<S>, max_dim: usize) -> QuiverRep<S> {
    loop {
        let m = random_module(r, pa, 2, 2);
        if m.total_dim() <= max_dim {
            return m;
        }
    }
}
