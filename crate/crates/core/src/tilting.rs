//! The two-term complex `T: Hom_S(W, X) -> Hom_S(W, M1 ⊕ M)` over `Λ₁`,
//! computed entirely in `S`-coordinates, its endomorphism ring up to
//! homotopy, and the comparison map `Ψ: End(T) -> Λ₂`.
//!
//! `T` sits in degrees -1 and 0. `N` denotes `M1 ⊕ M` and `W̄ = Y ⊕ M`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{sparse_from_dense, AlgebraReport, AlgebraWithBasis};
use crate::error::{Error, Result};
use crate::homological::{hypothesis_check, HypothesisReport, ModId, Workspace};
use crate::linalg::{Mat, SubspaceBasis};
use crate::orbit::{
    build_subrings, graded_compose, graded_identity, postcompose_matrix, precompose_matrix, AdmissibleSet, BlockAlgebra,
    BlockDim, GradedLayout, GradedMorphism, Hats, Obj, SequenceData, Subrings,
};
use crate::rep::{check_exact_triple, ExactTriple, QuiverRep};
use crate::scalar::Scalar;

/// Sign `ε` in `h_i w̄[i] = ε w̄ u_i[1]` once both sides are read as Yoneda
/// products.
pub const PSI_SIGN: i64 = 1;

pub const GENERATION_NOTE: &str = "alphabar has zero component into the added copy of M, so T splits as \
T' ⊕ Hom_S(W, M)[0]; the degree 0 term of T' lies in add Hom_S(W, M) since M1 is in add(M), and the \
degree -1 term Hom_S(W, X) is the cone of T' shifted against that stalk. Together with Hom_S(W, M) \
these generate every indecomposable projective Hom_S(W, X) and Hom_S(W, M_c).";

#[derive(Clone, Debug)]
pub struct TiltingData<S> {
    pub seq: SequenceData<S>,
    pub x_obj: Obj,
    /// `M1` atoms followed by `M` atoms.
    pub n_obj: Obj,
    /// `Y` followed by `M` atoms.
    pub wbar_obj: Obj,
    pub alphabar: GradedMorphism<S>,
    pub betabar: GradedMorphism<S>,
    /// Degree 1, `W̄ -> X`.
    pub wbar: GradedMorphism<S>,
    pub subrings: Subrings<S>,
    pub hats: Hats<S>,
    /// Index into `seq.m` of every `N` atom.
    n_summand: Vec<usize>,
    pub generation_structural: bool,
}

pub fn build_tilting<S: Scalar>(
    ws: &mut Workspace<S>,
    t: &ExactTriple<S>,
    seq: SequenceData<S>,
) -> Result<TiltingData<S>> {
    let k1 = seq.m1.len();
    let mut n_obj = seq.m1.clone();
    n_obj.extend(&seq.m);
    let mut wbar_obj = vec![seq.y];
    wbar_obj.extend(&seq.m);
    let mut n_summand: Vec<usize> = t.witness.summand_indices.clone();
    n_summand.extend(0..seq.m.len());

    let alphabar = seq.alpha.clone();
    let mut betabar = seq.beta.clone();
    for (c, &id) in seq.m.iter().enumerate() {
        let m = ws.module(id).clone();
        let cl = ws.class_of_map(id, id, &m.identity())?;
        betabar.add_component((0, k1 + c, 1 + c), &cl);
    }
    let m1 = ws.add_module("M1", t.m1.clone())?;
    let w = ws.connecting_class(seq.x, m1, seq.y, &t.alpha, &t.beta)?;
    let mut wbar = GradedMorphism::zero();
    wbar.add_component((1, 0, 0), &w);

    let generation_structural = alphabar.comps.keys().all(|&(_, _, b)| b < k1)
        && n_summand.iter().all(|&i| i < seq.m.len());
    let (subrings, hats) = build_subrings(ws, &seq)?;
    Ok(TiltingData {
        x_obj: vec![seq.x],
        n_obj,
        wbar_obj,
        alphabar,
        betabar,
        wbar,
        subrings,
        hats,
        n_summand,
        generation_structural,
        seq,
    })
}

/// A chain map `T -> T`: `u` on `X`, `v` on `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEndo<S> {
    pub u: GradedMorphism<S>,
    pub v: GradedMorphism<S>,
}

/// Coordinates used for chain endomorphisms: `Ê(X)` coordinates followed by
/// the flat coordinates of `E(N)`.
struct EndoCoords<S> {
    lxx: GradedLayout,
    lnn: GradedLayout,
    lxn: GradedLayout,
    lnx: GradedLayout,
    end_x_hat: SubspaceBasis<S>,
}

impl<S: Scalar> EndoCoords<S> {
    fn new(ws: &mut Workspace<S>, td: &TiltingData<S>) -> Result<Self> {
        let phi = td.seq.phi.elements();
        let lxx = GradedLayout::new(ws, &td.x_obj, &td.x_obj, phi)?;
        let lnn = GradedLayout::new(ws, &td.n_obj, &td.n_obj, phi)?;
        let lxn = GradedLayout::new(ws, &td.x_obj, &td.n_obj, phi)?;
        let lnx = GradedLayout::new(ws, &td.n_obj, &td.x_obj, phi)?;
        let mut vecs = Vec::new();
        for (i, sub) in &td.hats.end_x.per_degree {
            let blk = lxx.block(*i, 0, 0).expect("degree in phi");
            for v in sub.vectors() {
                let mut full = vec![S::zero(); lxx.total];
                full[blk.offset..blk.offset + blk.dim].clone_from_slice(v);
                vecs.push(full);
            }
        }
        let end_x_hat = SubspaceBasis::span(lxx.total, vecs);
        Ok(EndoCoords {
            lxx,
            lnn,
            lxn,
            lnx,
            end_x_hat,
        })
    }

    fn du(&self) -> usize {
        self.end_x_hat.dim()
    }

    fn total(&self) -> usize {
        self.du() + self.lnn.total
    }

    fn u_matrix(&self) -> Mat<S> {
        Mat::from_columns(self.lxx.total, self.end_x_hat.vectors())
    }

    fn to_endo(&self, c: &[S]) -> ChainEndo<S> {
        let du = self.du();
        let u_flat = self.u_matrix().mul_vec(&c[..du]);
        ChainEndo {
            u: self.lxx.unflatten(&u_flat),
            v: self.lnn.unflatten(&c[du..]),
        }
    }

    fn of_endo(&self, e: &ChainEndo<S>) -> Result<Vec<S>> {
        let uf = self.lxx.flatten(&e.u)?;
        let mut out = self
            .end_x_hat
            .coords(&uf)
            .ok_or_else(|| Error::ClosureFailure("u leaves the hatted endomorphisms of X".into()))?;
        out.extend(self.lnn.flatten(&e.v)?);
        Ok(out)
    }
}

/// Homotopy classes of chain maps `T -> T[shift]`.
#[derive(Clone, Debug)]
pub struct ChainHomSpace<S> {
    pub shift: i32,
    pub dim: usize,
    /// For shift 0: chain endomorphisms representing a basis modulo
    /// homotopy. For shift ±1 the nonzero classes, recorded as `u` (shift
    /// +1, component `X -> N` stored in `v`) or `v` (shift -1, `N -> X`).
    pub representatives: Vec<ChainEndo<S>>,
}

pub fn chain_hom_space<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>, shift: i32) -> Result<ChainHomSpace<S>> {
    let ec = EndoCoords::new(ws, td)?;
    let phi = td.seq.phi.clone();
    let ab = &td.alphabar;
    match shift {
        1 => {
            // t in Ê(X, N) modulo u ᾱ + ᾱ v
            let mut hat_vecs = Vec::new();
            for (b, &c) in td.n_summand.iter().enumerate() {
                for (i, sub) in &td.hats.x_to_m[c].per_degree {
                    let blk = ec.lxn.block(*i, 0, b).expect("degree in phi");
                    for v in sub.vectors() {
                        let mut full = vec![S::zero(); ec.lxn.total];
                        full[blk.offset..blk.offset + blk.dim].clone_from_slice(v);
                        hat_vecs.push(full);
                    }
                }
            }
            let hat = SubspaceBasis::span(ec.lxn.total, hat_vecs);
            let post = postcompose_matrix(ws, ab, &ec.lxx, &ec.lxn, Some(&phi))?;
            let u_part = post.mul(&ec.u_matrix());
            let pre = precompose_matrix(ws, ab, &ec.lnn, &ec.lxn, Some(&phi))?;
            let htpy = SubspaceBasis::image_of(&u_part.hstack(&pre));
            let total = hat.sum(&htpy)?;
            let q = total.quotient(&htpy)?;
            let representatives = q
                .complement
                .iter()
                .map(|v| ChainEndo {
                    u: GradedMorphism::zero(),
                    v: ec.lxn.unflatten(v),
                })
                .collect();
            Ok(ChainHomSpace {
                shift,
                dim: q.complement.len(),
                representatives,
            })
        }
        -1 => {
            let a = precompose_matrix(ws, ab, &ec.lnx, &ec.lxx, Some(&phi))?;
            let b = postcompose_matrix(ws, ab, &ec.lnx, &ec.lnn, Some(&phi))?;
            let k = SubspaceBasis::kernel_of(&a.vstack(&b));
            let representatives = k
                .vectors()
                .iter()
                .map(|v| ChainEndo {
                    u: GradedMorphism::zero(),
                    v: ec.lnx.unflatten(v),
                })
                .collect();
            Ok(ChainHomSpace {
                shift,
                dim: k.dim(),
                representatives,
            })
        }
        0 => {
            let (cycles, htpy) = cycles_and_homotopies(ws, td, &ec)?;
            let q = cycles.quotient(&htpy)?;
            Ok(ChainHomSpace {
                shift,
                dim: q.complement.len(),
                representatives: q.complement.iter().map(|c| ec.to_endo(c)).collect(),
            })
        }
        _ => Err(Error::validation("shift", "must be -1, 0 or 1")),
    }
}

fn cycles_and_homotopies<S: Scalar>(
    ws: &mut Workspace<S>,
    td: &TiltingData<S>,
    ec: &EndoCoords<S>,
) -> Result<(SubspaceBasis<S>, SubspaceBasis<S>)> {
    let phi = td.seq.phi.clone();
    let ab = &td.alphabar;
    // ᾱ v - u ᾱ = 0
    let post = postcompose_matrix(ws, ab, &ec.lxx, &ec.lxn, Some(&phi))?;
    let u_part = post.mul(&ec.u_matrix()).scale(&-S::one());
    let v_part = precompose_matrix(ws, ab, &ec.lnn, &ec.lxn, Some(&phi))?;
    let cycles = SubspaceBasis::kernel_of(&u_part.hstack(&v_part));
    // (ᾱ t, t ᾱ)
    let at = precompose_matrix(ws, ab, &ec.lnx, &ec.lxx, Some(&phi))?;
    let ta = postcompose_matrix(ws, ab, &ec.lnx, &ec.lnn, Some(&phi))?;
    let mut h_vecs = Vec::new();
    for k in 0..ec.lnx.total {
        let u = at.column(k);
        let mut c = ec
            .end_x_hat
            .coords(&u)
            .ok_or_else(|| Error::ClosureFailure("homotopy leaves the hatted endomorphisms of X".into()))?;
        c.extend(ta.column(k));
        h_vecs.push(c);
    }
    let htpy = SubspaceBasis::span(ec.total(), h_vecs);
    if !cycles.contains_subspace(&htpy) {
        return Err(Error::ClosureFailure("null-homotopic pair is not a chain map".into()));
    }
    Ok((cycles, htpy))
}

/// `End(T)` with a chosen basis of homotopy classes.
#[derive(Clone, Debug)]
pub struct EndRing<S> {
    pub basis: Vec<ChainEndo<S>>,
    pub algebra: AlgebraWithBasis<S>,
}

impl<S: Scalar> EndRing<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Builds `End(T)` from the canonical representatives.
pub fn end_ring_of_tilting<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>) -> Result<EndRing<S>> {
    end_ring_with(ws, td, |reps| reps)
}

/// Builds `End(T)` after `choose` reorders or recombines the canonical
/// representatives; the result must still be a basis modulo homotopy.
pub fn end_ring_with<S: Scalar>(
    ws: &mut Workspace<S>,
    td: &TiltingData<S>,
    choose: impl FnOnce(Vec<Vec<S>>) -> Vec<Vec<S>>,
) -> Result<EndRing<S>> {
    let ec = EndoCoords::new(ws, td)?;
    let (cycles, htpy) = cycles_and_homotopies(ws, td, &ec)?;
    let q = cycles.quotient(&htpy)?;
    let reps = choose(q.complement);
    let d = reps.len();
    // coordinates modulo homotopy w.r.t. the chosen representatives
    let mut cols = reps.clone();
    cols.extend(htpy.vectors().iter().cloned());
    let li = if cols.is_empty() {
        Mat::zeros(0, ec.total())
    } else {
        Mat::from_columns(ec.total(), &cols).left_inverse()?
    };
    let class_of = |c: &[S]| -> Result<Vec<S>> {
        if !cycles.contains(c) {
            return Err(Error::ClosureFailure("product is not a chain map".into()));
        }
        let full = li.mul_vec(c);
        Ok(full[..d].to_vec())
    };
    let basis: Vec<ChainEndo<S>> = reps.iter().map(|c| ec.to_endo(c)).collect();
    let phi = &td.seq.phi;
    let mut products = BTreeMap::new();
    for (p, ep) in basis.iter().enumerate() {
        for (q2, eq) in basis.iter().enumerate() {
            let e = compose_endos(ws, td, ep, eq, phi)?;
            let v = class_of(&ec.of_endo(&e)?)?;
            let sp = sparse_from_dense(&v);
            if !sp.is_empty() {
                products.insert((p, q2), sp);
            }
        }
    }
    let id = ChainEndo {
        u: graded_identity(ws, &td.x_obj)?,
        v: graded_identity(ws, &td.n_obj)?,
    };
    let unit = class_of(&ec.of_endo(&id)?)?;
    let labels = (0..d).map(|k| format!("f{k}")).collect();
    Ok(EndRing {
        basis,
        algebra: AlgebraWithBasis::from_sparse(labels, unit, products),
    })
}

/// `(u, v)` then `(u', v')`.
pub fn compose_endos<S: Scalar>(
    ws: &mut Workspace<S>,
    td: &TiltingData<S>,
    e: &ChainEndo<S>,
    f: &ChainEndo<S>,
    phi: &AdmissibleSet,
) -> Result<ChainEndo<S>> {
    Ok(ChainEndo {
        u: graded_compose(ws, &td.x_obj, &td.x_obj, &td.x_obj, &e.u, &f.u, Some(phi))?,
        v: graded_compose(ws, &td.n_obj, &td.n_obj, &td.n_obj, &e.v, &f.v, Some(phi))?,
    })
}

/// Per-degree linear system for `Ψ`.
struct PsiSystem<S> {
    degree: usize,
    lww: GradedLayout,
    lnw: GradedLayout,
    lwx: GradedLayout,
    stacked: Mat<S>,
    unique: bool,
}

pub struct PsiSolver<S> {
    systems: Vec<PsiSystem<S>>,
}

impl<S: Scalar> PsiSolver<S> {
    pub fn new(ws: &mut Workspace<S>, td: &TiltingData<S>) -> Result<Self> {
        let mut systems = Vec::new();
        for &i in td.seq.phi.elements() {
            let lww = GradedLayout::new(ws, &td.wbar_obj, &td.wbar_obj, &[i])?;
            let lnw = GradedLayout::new(ws, &td.n_obj, &td.wbar_obj, &[i])?;
            let lwx = GradedLayout::new(ws, &td.wbar_obj, &td.x_obj, &[i + 1])?;
            let p1 = precompose_matrix(ws, &td.betabar, &lww, &lnw, None)?;
            let p2 = postcompose_matrix(ws, &td.wbar, &lww, &lwx, None)?;
            let stacked = p1.vstack(&p2);
            let unique = stacked.rank() == lww.total;
            systems.push(PsiSystem {
                degree: i,
                lww,
                lnw,
                lwx,
                stacked,
                unique,
            });
        }
        Ok(PsiSolver { systems })
    }

    /// Whether every degree has at most one solution.
    pub fn is_unique(&self) -> bool {
        self.systems.iter().all(|s| s.unique)
    }

    pub fn apply(&self, ws: &mut Workspace<S>, td: &TiltingData<S>, e: &ChainEndo<S>) -> Result<GradedMorphism<S>> {
        let mut h = GradedMorphism::zero();
        let sign = S::from_i64(PSI_SIGN);
        for sys in &self.systems {
            let i = sys.degree;
            let vi = e.v.degree_part(i);
            let ui = e.u.degree_part(i);
            let r1 = graded_compose(ws, &td.n_obj, &td.n_obj, &td.wbar_obj, &vi, &td.betabar, None)?;
            let r2 = graded_compose(ws, &td.wbar_obj, &td.x_obj, &td.x_obj, &td.wbar, &ui, None)?.scale(&sign);
            let mut rhs = sys.lnw.flatten(&r1)?;
            rhs.extend(sys.lwx.flatten(&r2)?);
            let sol = sys
                .stacked
                .solve(&rhs)
                .ok_or_else(|| Error::NoSolution(format!("Psi has no solution in degree {i}")))?;
            if !sys.unique {
                return Err(Error::NonUniqueSolution(format!(
                    "Psi is not determined in degree {i}: {} free parameters",
                    sys.lww.total - sys.stacked.rank()
                )));
            }
            h = h.add(&sys.lww.unflatten(&sol));
        }
        Ok(h)
    }
}

pub fn psi_map<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>, e: &ChainEndo<S>) -> Result<GradedMorphism<S>> {
    PsiSolver::new(ws, td)?.apply(ws, td, e)
}

/// Results of comparing `End(T)` with `Λ₂` through `Ψ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub in_lambda2: bool,
    pub bijective: bool,
    pub multiplicative: bool,
    pub unital: bool,
    /// `Λ₂` coordinates of `Ψ` on the `End(T)` basis, as strings.
    pub matrix: Vec<Vec<String>>,
}

pub fn psi_report<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>, end: &EndRing<S>) -> Result<PsiReport> {
    let solver = PsiSolver::new(ws, td)?;
    let l2 = &td.subrings.lambda2;
    let mut report = PsiReport::default();
    let mut cols = Vec::new();
    let mut images = Vec::new();
    for e in &end.basis {
        let h = solver.apply(ws, td, e)?;
        match l2.coords_of(&h) {
            Some(c) => cols.push(c),
            None => return Ok(report),
        }
        images.push(h);
    }
    report.in_lambda2 = true;
    let d = end.dim();
    let psi = Mat::from_columns(l2.dim(), &cols);
    report.matrix = (0..psi.rows())
        .map(|r| psi.row(r).iter().map(|x| x.to_string()).collect())
        .collect();
    report.bijective = d == l2.dim() && psi.rank() == d;
    let mut mult = true;
    'outer: for p in 0..d {
        for q in 0..d {
            let lhs = psi.mul_vec(&end.algebra.basis_product(p, q));
            let rhs = l2.algebra.multiply(&cols[p], &cols[q])?;
            if lhs != rhs {
                mult = false;
                break 'outer;
            }
        }
    }
    report.multiplicative = mult;
    report.unital = psi.mul_vec(end.algebra.unit()) == l2.algebra.unit();
    Ok(report)
}

/// Block dimension table of one subring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub blocks: Vec<BlockDim>,
    pub associative_unital: bool,
}

fn summary<S: Scalar>(a: &BlockAlgebra<S>) -> AlgebraSummary {
    let r: AlgebraReport = a.algebra.validate();
    AlgebraSummary {
        dim: a.dim(),
        blocks: a.block_dims.clone(),
        associative_unital: r.passed(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceCertificate {
    pub input_digest: Option<String>,
    pub field: String,
    pub phi: Vec<usize>,
    pub exact: bool,
    pub hypothesis_report: Option<HypothesisReport>,
    pub unverified_hypotheses: bool,
    pub algebras: BTreeMap<String, AlgebraSummary>,
    pub self_orth_plus: bool,
    pub self_orth_minus: bool,
    pub dim_hom_shift_plus: Option<usize>,
    pub dim_hom_shift_minus: Option<usize>,
    #[serde(rename = "dim_end_T")]
    pub dim_end_t: Option<usize>,
    pub dim_lambda2: Option<usize>,
    #[serde(rename = "end_T_associative_unital")]
    pub end_t_associative_unital: bool,
    pub psi_in_lambda2: bool,
    pub psi_bijective: bool,
    pub psi_multiplicative: bool,
    pub psi_unital: bool,
    pub generation_structural: bool,
    pub generation_note: String,
    pub errors: Vec<String>,
    pub verdict: bool,
    pub presentation: Option<serde_json::Value>,
    pub timing_ms: Option<u64>,
}

impl EquivalenceCertificate {
    fn empty(field: &str, phi: &[usize], digest: Option<String>) -> Self {
        EquivalenceCertificate {
            input_digest: digest,
            field: field.to_string(),
            phi: phi.to_vec(),
            exact: false,
            hypothesis_report: None,
            unverified_hypotheses: false,
            algebras: BTreeMap::new(),
            self_orth_plus: false,
            self_orth_minus: false,
            dim_hom_shift_plus: None,
            dim_hom_shift_minus: None,
            dim_end_t: None,
            dim_lambda2: None,
            end_t_associative_unital: false,
            psi_in_lambda2: false,
            psi_bijective: false,
            psi_multiplicative: false,
            psi_unital: false,
            generation_structural: false,
            generation_note: GENERATION_NOTE.to_string(),
            errors: Vec::new(),
            verdict: false,
            presentation: None,
            timing_ms: None,
        }
    }

    /// A certificate for input that never reached the pipeline.
    pub fn failed(field: &str, phi: &[usize], digest: Option<String>, error: String) -> Self {
        let mut c = Self::empty(field, phi, digest);
        c.errors.push(error);
        c.finish();
        c
    }

    fn finish(&mut self) {
        let hyp = self.hypothesis_report.as_ref().is_some_and(|h| h.passed());
        self.verdict = self.exact
            && hyp
            && self.errors.is_empty()
            && self.algebras.values().all(|a| a.associative_unital)
            && self.self_orth_plus
            && self.self_orth_minus
            && self.dim_end_t.is_some()
            && self.dim_end_t == self.dim_lambda2
            && self.end_t_associative_unital
            && self.psi_in_lambda2
            && self.psi_bijective
            && self.psi_multiplicative
            && self.psi_unital
            && self.generation_structural;
    }
}

/// Everything [`verify_equivalence`] needs besides the workspace.
pub struct VerifyInput<'a, S> {
    pub triple: &'a ExactTriple<S>,
    pub x: ModId,
    pub y: ModId,
    pub m_ids: &'a [ModId],
    pub phi: AdmissibleSet,
    pub allow_unchecked_hypotheses: bool,
    pub input_digest: Option<String>,
    pub field: String,
}

/// Runs the whole pipeline. Failures are recorded in the certificate.
pub fn verify_equivalence<S: Scalar>(ws: &mut Workspace<S>, input: VerifyInput<'_, S>) -> EquivalenceCertificate {
    let mut cert = EquivalenceCertificate::empty(&input.field, input.phi.elements(), input.input_digest.clone());
    if let Err(e) = run_pipeline(ws, &input, &mut cert) {
        cert.errors.push(e.to_string());
    }
    cert.finish();
    cert
}

/// The tilting data, `End(T)` and the `Ψ` report of a verified run.
pub fn run_pipeline<S: Scalar>(
    ws: &mut Workspace<S>,
    input: &VerifyInput<'_, S>,
    cert: &mut EquivalenceCertificate,
) -> Result<Option<(TiltingData<S>, EndRing<S>)>> {
    let summands: Vec<QuiverRep<S>> = input.m_ids.iter().map(|&id| ws.module(id).clone()).collect();
    check_exact_triple(ws.algebra(), input.triple, &summands)?;
    cert.exact = true;
    let hyp = hypothesis_check(ws, input.x, input.y, input.m_ids, input.phi.elements())?;
    let passed = hyp.passed();
    cert.hypothesis_report = Some(hyp);
    if !passed {
        if !input.allow_unchecked_hypotheses {
            return Ok(None);
        }
        cert.unverified_hypotheses = true;
    }
    let seq = SequenceData::new(ws, input.triple, input.x, input.y, input.m_ids, input.phi.clone())?;
    let td = build_tilting(ws, input.triple, seq)?;
    cert.generation_structural = td.generation_structural;
    for a in [
        &td.subrings.lambda1,
        &td.subrings.lambda2,
        &td.subrings.gamma,
        &td.subrings.lambda3,
    ] {
        cert.algebras.insert(a.name.clone(), summary(a));
    }
    let plus = chain_hom_space(ws, &td, 1)?;
    let minus = chain_hom_space(ws, &td, -1)?;
    cert.dim_hom_shift_plus = Some(plus.dim);
    cert.dim_hom_shift_minus = Some(minus.dim);
    cert.self_orth_plus = plus.dim == 0;
    cert.self_orth_minus = minus.dim == 0;
    let end = end_ring_of_tilting(ws, &td)?;
    cert.dim_end_t = Some(end.dim());
    cert.dim_lambda2 = Some(td.subrings.lambda2.dim());
    cert.end_t_associative_unital = end.algebra.validate().passed();
    let psi = psi_report(ws, &td, &end)?;
    cert.psi_in_lambda2 = psi.in_lambda2;
    cert.psi_bijective = psi.bijective;
    cert.psi_multiplicative = psi.multiplicative;
    cert.psi_unital = psi.unital;
    Ok(Some((td, end)))
}

/// Whether a chain endomorphism is null-homotopic.
pub fn is_null_homotopic<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>, e: &ChainEndo<S>) -> Result<bool> {
    let ec = EndoCoords::new(ws, td)?;
    let (_, htpy) = cycles_and_homotopies(ws, td, &ec)?;
    Ok(htpy.contains(&ec.of_endo(e)?))
}

/// The homotopy pair `(ᾱ t, t ᾱ)` of `t ∈ E(N, X)` given in flat coordinates.
pub fn homotopy_pair<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>, t: &[S]) -> Result<ChainEndo<S>> {
    let ec = EndoCoords::new(ws, td)?;
    let tm = ec.lnx.unflatten(t);
    let phi = &td.seq.phi;
    Ok(ChainEndo {
        u: graded_compose(ws, &td.x_obj, &td.n_obj, &td.x_obj, &td.alphabar, &tm, Some(phi))?,
        v: graded_compose(ws, &td.n_obj, &td.x_obj, &td.n_obj, &tm, &td.alphabar, Some(phi))?,
    })
}

/// Dimension of `E(N, X)`, the space of homotopies.
pub fn homotopy_space_dim<S: Scalar>(ws: &mut Workspace<S>, td: &TiltingData<S>) -> Result<usize> {
    Ok(GradedLayout::new(ws, &td.n_obj, &td.x_obj, td.seq.phi.elements())?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::tests::cover_sequence_parts;
    use crate::linalg::unit_vector;
    use num_traits::Zero;

    #[test]
    fn cover_sequence_verifies_in_degree_zero() {
        let (mut ws, t, x, y, m_ids) = cover_sequence_parts();
        let input = VerifyInput {
            triple: &t,
            x,
            y,
            m_ids: &m_ids,
            phi: AdmissibleSet::zero(),
            allow_unchecked_hypotheses: false,
            input_digest: None,
            field: "Q".into(),
        };
        let cert = verify_equivalence(&mut ws, input);
        assert!(cert.errors.is_empty(), "{:?}", cert.errors);
        assert_eq!(cert.dim_end_t, Some(11));
        assert!(cert.verdict, "{cert:#?}");
    }

    #[test]
    fn identity_and_homotopies_under_psi() {
        let (mut ws, t, x, y, m_ids) = cover_sequence_parts();
        let seq = SequenceData::new(&mut ws, &t, x, y, &m_ids, AdmissibleSet::zero()).unwrap();
        let td = build_tilting(&mut ws, &t, seq).unwrap();
        let id = ChainEndo {
            u: graded_identity(&mut ws, &td.x_obj).unwrap(),
            v: graded_identity(&mut ws, &td.n_obj).unwrap(),
        };
        let h = psi_map(&mut ws, &td, &id).unwrap();
        assert_eq!(h, graded_identity(&mut ws, &td.wbar_obj).unwrap());
        let n = homotopy_space_dim(&mut ws, &td).unwrap();
        for k in 0..n {
            let e = homotopy_pair(&mut ws, &td, &unit_vector(n, k)).unwrap();
            assert!(is_null_homotopic(&mut ws, &td, &e).unwrap());
            let h = psi_map(&mut ws, &td, &e).unwrap();
            assert!(h.comps.values().all(|v| v.iter().all(|c| c.is_zero())));
        }
    }
}
