//! Invariants and quiver presentations of algebras given by structure
//! constants: radical, primitive idempotents, Gabriel quiver, relations up to
//! a degree bound, Cartan matrix, and global dimension with a cap.
//!
//! Conventions follow [`AlgebraWithBasis::multiply`]. The quiver has
//! `dim e_j (J/J²) e_i` arrows `i -> j`, and a path `a1 a2 ... ak` is sent to
//! the product `x_ak ... x_a2 x_a1`.

use serde::Serialize;

use crate::algebra::AlgebraWithBasis;
use crate::error::{Error, Result};
use crate::linalg::{vec_is_zero, vec_sub, Mat, SubspaceBasis};
use crate::quiver::{Path, Quiver, RelationSet};
use crate::scalar::Scalar;

fn mul<S: Scalar>(a: &AlgebraWithBasis<S>, x: &[S], y: &[S]) -> Vec<S> {
    a.multiply(x, y).expect("coordinates of algebra dimension")
}

/// `span{u v : u in U, v in V}`.
pub fn product_span<S: Scalar>(a: &AlgebraWithBasis<S>, u: &SubspaceBasis<S>, v: &SubspaceBasis<S>) -> SubspaceBasis<S> {
    let mut out = Vec::new();
    for x in u.vectors() {
        for y in v.vectors() {
            out.push(mul(a, x, y));
        }
    }
    SubspaceBasis::span(a.dim(), out)
}

/// `span{e x f : x in U}`.
pub fn sandwich<S: Scalar>(a: &AlgebraWithBasis<S>, e: &[S], u: &SubspaceBasis<S>, f: &[S]) -> SubspaceBasis<S> {
    let vs: Vec<Vec<S>> = u.vectors().iter().map(|x| mul(a, &mul(a, e, x), f)).collect();
    SubspaceBasis::span(a.dim(), vs)
}

fn check_characteristic<S: Scalar>(d: usize) -> Result<()> {
    let p = S::field().characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::UnsupportedCharacteristic(format!(
            "trace-form radical needs characteristic 0 or p > {d}, got p = {p}"
        )));
    }
    Ok(())
}

/// Jacobson radical via the trace form `(x, y) -> tr L_{xy}`.
pub fn radical<S: Scalar>(a: &AlgebraWithBasis<S>) -> Result<SubspaceBasis<S>> {
    let d = a.dim();
    check_characteristic::<S>(d)?;
    let tr = a.left_traces();
    let form = Mat::from_fn(d, d, |i, j| {
        a.basis_product(i, j)
            .iter()
            .zip(&tr)
            .fold(S::zero(), |acc, (c, t)| acc + c.clone() * t.clone())
    });
    let mut j = SubspaceBasis::kernel_of(&form.transpose());
    // largest two-sided ideal inside
    loop {
        let mut next = j.clone();
        for k in 0..d {
            let b = a.basis_vector(k);
            next = next.intersect(&j.preimage(&a.left_mult_matrix(&b))?)?;
            next = next.intersect(&j.preimage(&a.right_mult_matrix(&b))?)?;
        }
        if next == j {
            break;
        }
        j = next;
    }
    let powers = radical_powers(a, &j);
    if powers.last().is_some_and(|p| p.dim() != 0) {
        return Err(Error::UnsupportedCharacteristic("trace-form radical is not nilpotent".into()));
    }
    Ok(j)
}

/// `J, J², ...` ending with the first zero power (or the first repeat).
pub fn radical_powers<S: Scalar>(a: &AlgebraWithBasis<S>, j: &SubspaceBasis<S>) -> Vec<SubspaceBasis<S>> {
    let mut out = vec![j.clone()];
    while out.last().expect("nonempty").dim() > 0 {
        let next = product_span(a, out.last().expect("nonempty"), j);
        if next.dim() == out.last().expect("nonempty").dim() {
            break;
        }
        out.push(next);
    }
    out
}

/// `A/J` with its basis lifted to `A`.
struct SemisimpleQuotient<S> {
    lifts: Vec<Vec<S>>,
    projection: Mat<S>,
}

impl<S: Scalar> SemisimpleQuotient<S> {
    fn new(a: &AlgebraWithBasis<S>, j: &SubspaceBasis<S>) -> Result<Self> {
        let q = SubspaceBasis::full(a.dim()).quotient(j)?;
        Ok(SemisimpleQuotient {
            lifts: q.complement,
            projection: q.projection,
        })
    }

    fn dim(&self) -> usize {
        self.lifts.len()
    }

    fn lift(&self, x: &[S]) -> Vec<S> {
        let n = self.lifts.first().map_or(0, |v| v.len());
        let mut out = vec![S::zero(); n];
        for (c, v) in x.iter().zip(&self.lifts) {
            crate::linalg::axpy(&mut out, c, v);
        }
        out
    }

    fn project(&self, x: &[S]) -> Vec<S> {
        self.projection.mul_vec(x)
    }

    fn mul(&self, a: &AlgebraWithBasis<S>, x: &[S], y: &[S]) -> Vec<S> {
        self.project(&mul(a, &self.lift(x), &self.lift(y)))
    }

    fn corner(&self, a: &AlgebraWithBasis<S>, e: &[S]) -> SubspaceBasis<S> {
        let r = self.dim();
        let vs = (0..r).map(|k| {
            let b = crate::linalg::unit_vector(r, k);
            self.mul(a, &self.mul(a, e, &b), e)
        });
        SubspaceBasis::span(r, vs)
    }
}

/// Minimal polynomial of `b` inside the unital algebra `eBe`, lowest
/// coefficient first, monic.
fn min_poly<S: Scalar>(a: &AlgebraWithBasis<S>, q: &SemisimpleQuotient<S>, e: &[S], b: &[S]) -> Vec<S> {
    let mut powers = vec![e.to_vec()];
    loop {
        let next = q.mul(a, powers.last().expect("nonempty"), b);
        let m = Mat::from_columns(q.dim(), &powers);
        if let Some(c) = m.solve(&next) {
            let mut poly: Vec<S> = c.into_iter().map(|x| -x).collect();
            poly.push(S::one());
            return poly;
        }
        powers.push(next);
    }
}

/// A nonzero non-invertible element of `eBe`, if one can be found.
fn zero_divisor<S: Scalar>(
    a: &AlgebraWithBasis<S>,
    q: &SemisimpleQuotient<S>,
    e: &[S],
    corner: &SubspaceBasis<S>,
) -> Option<Vec<S>> {
    let vs = corner.vectors();
    let mut candidates: Vec<Vec<S>> = vs.to_vec();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            candidates.push(crate::linalg::vec_add(&vs[i], &vs[j]));
            candidates.push(crate::linalg::vec_add(&vs[i], &crate::linalg::vec_scale(&vs[j], &S::from_i64(2))));
        }
    }
    for b in candidates {
        let p = min_poly(a, q, e, &b);
        if p.len() < 3 {
            continue;
        }
        for lambda in S::find_roots(&p) {
            let z = vec_sub(&b, &crate::linalg::vec_scale(e, &lambda));
            if !vec_is_zero(&z) {
                return Some(z);
            }
        }
    }
    None
}

/// Complete set of primitive orthogonal idempotents of `A/J`, in quotient
/// coordinates.
fn split_quotient<S: Scalar>(a: &AlgebraWithBasis<S>, q: &SemisimpleQuotient<S>) -> Result<Vec<Vec<S>>> {
    let r = q.dim();
    if r == 0 {
        return Ok(Vec::new());
    }
    let unit = q.project(a.unit());
    let mut stack = vec![unit];
    let mut out = Vec::new();
    while let Some(e) = stack.pop() {
        let corner = q.corner(a, &e);
        if corner.dim() == 1 {
            out.push(e);
            continue;
        }
        let z = zero_divisor(a, q, &e, &corner).ok_or_else(|| {
            Error::NonSplitSemisimpleQuotient(format!(
                "no zero divisor found in a {}-dimensional corner of A/J",
                corner.dim()
            ))
        })?;
        // minimal-ish left ideal B z and a right identity on it
        let ideal = SubspaceBasis::span(r, (0..r).map(|k| q.mul(a, &crate::linalg::unit_vector(r, k), &z)));
        let ls = ideal.vectors();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for y in ls {
            let cols: Vec<Vec<S>> = ls.iter().map(|l| q.mul(a, y, l)).collect();
            rows.push(Mat::from_columns(r, &cols));
            rhs.extend(y.iter().cloned());
        }
        let mut sys = rows[0].clone();
        for m in &rows[1..] {
            sys = sys.vstack(m);
        }
        let c = sys
            .solve(&rhs)
            .ok_or_else(|| Error::NonSplitSemisimpleQuotient("left ideal has no right identity".into()))?;
        let mut f = vec![S::zero(); r];
        for (ci, l) in c.iter().zip(ls) {
            crate::linalg::axpy(&mut f, ci, l);
        }
        let f1 = q.mul(a, &e, &f);
        let rest = vec_sub(&e, &f1);
        stack.push(rest);
        stack.push(f1);
    }
    out.reverse();
    Ok(out)
}

/// Lifts a complete orthogonal set of idempotents of `A/J` to `A`.
fn lift_idempotents<S: Scalar>(a: &AlgebraWithBasis<S>, q: &SemisimpleQuotient<S>, bar: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let mut rest = a.unit().to_vec();
    let mut out = Vec::new();
    for (k, eb) in bar.iter().enumerate() {
        if k + 1 == bar.len() {
            out.push(rest.clone());
            break;
        }
        let mut x = mul(a, &mul(a, &rest, &q.lift(eb)), &rest);
        let mut iters = 0;
        loop {
            let x2 = mul(a, &x, &x);
            if x2 == x {
                break;
            }
            let x3 = mul(a, &x2, &x);
            x = vec_sub(
                &crate::linalg::vec_scale(&x2, &S::from_i64(3)),
                &crate::linalg::vec_scale(&x3, &S::from_i64(2)),
            );
            iters += 1;
            if iters > 64 {
                return Err(Error::NonSplitSemisimpleQuotient("idempotent lifting did not converge".into()));
            }
        }
        rest = vec_sub(&rest, &x);
        out.push(x);
    }
    Ok(out)
}

/// Complete set of primitive orthogonal idempotents summing to the unit,
/// verified exactly.
pub fn primitive_idempotents<S: Scalar>(a: &AlgebraWithBasis<S>) -> Result<Vec<Vec<S>>> {
    let j = radical(a)?;
    idempotents_with_radical(a, &j)
}

fn idempotents_with_radical<S: Scalar>(a: &AlgebraWithBasis<S>, j: &SubspaceBasis<S>) -> Result<Vec<Vec<S>>> {
    let q = SemisimpleQuotient::new(a, j)?;
    let bar = split_quotient(a, &q)?;
    let es = lift_idempotents(a, &q, &bar)?;
    let mut sum = vec![S::zero(); a.dim()];
    for (i, e) in es.iter().enumerate() {
        for (k, f) in es.iter().enumerate() {
            let p = mul(a, e, f);
            let ok = if i == k { &p == e } else { vec_is_zero(&p) };
            if !ok {
                return Err(Error::ClosureFailure(format!("idempotents {i}, {k} fail e f = δ e")));
            }
        }
        sum = crate::linalg::vec_add(&sum, e);
    }
    if sum != a.unit() {
        return Err(Error::ClosureFailure("idempotents do not sum to the unit".into()));
    }
    Ok(es)
}

/// A presented basic algebra.
#[derive(Clone, Debug)]
pub struct Presentation<S> {
    pub quiver: Quiver,
    /// Spanning set of the relations among paths of length `2..=max_rel_deg`.
    pub relations: RelationSet<S>,
    pub max_rel_deg: usize,
    pub relation_space_dim: usize,
    /// Whether paths of length up to `max_rel_deg` span the radical.
    pub paths_span_radical: bool,
    pub idempotents: Vec<Vec<S>>,
    /// Iso-class of every primitive idempotent.
    pub basic_reduction_map: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// `cartan[i][j] = dim e_i A e_j` for class representatives.
    pub cartan: Vec<Vec<usize>>,
    pub arrow_elements: Vec<Vec<S>>,
    pub radical_layers: Vec<usize>,
    pub dim: usize,
}

/// Invariant panel of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantPanel {
    pub vertices: usize,
    /// `arrows[i][j]` = number of arrows `i -> j`.
    pub arrows: Vec<Vec<usize>>,
    pub num_arrows: usize,
    pub cartan: Vec<Vec<usize>>,
    pub dim: usize,
    pub basic_dim: usize,
    pub relation_space_dim: usize,
    pub max_rel_deg: usize,
    pub radical_layers: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

impl<S: Scalar> Presentation<S> {
    pub fn arrow_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.quiver.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for a in self.quiver.arrows() {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn panel(&self) -> InvariantPanel {
        InvariantPanel {
            vertices: self.quiver.num_vertices(),
            arrows: self.arrow_matrix(),
            num_arrows: self.quiver.arrows().len(),
            cartan: self.cartan.clone(),
            dim: self.dim,
            basic_dim: self.cartan.iter().flatten().sum(),
            relation_space_dim: self.relation_space_dim,
            max_rel_deg: self.max_rel_deg,
            radical_layers: self.radical_layers.clone(),
            multiplicities: self.multiplicities.clone(),
        }
    }

    /// Relations as strings `c*path + ...`.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .generators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, p)| format!("({c})*[{}]", p.label(&self.quiver)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect()
    }

    /// Relation given as a combination of paths, mapped into the algebra.
    pub fn evaluate(&self, a: &AlgebraWithBasis<S>, rel: &[(S, Path)]) -> Vec<S> {
        let mut out = vec![S::zero(); a.dim()];
        for (c, p) in rel {
            crate::linalg::axpy(&mut out, c, &self.path_element(a, p));
        }
        out
    }

    pub fn path_element(&self, a: &AlgebraWithBasis<S>, p: &Path) -> Vec<S> {
        let mut x = self.idempotents_rep(p.source).to_vec();
        for &ar in &p.arrows {
            x = mul(a, &self.arrow_elements[ar], &x);
        }
        x
    }

    fn idempotents_rep(&self, class: usize) -> &[S] {
        let k = self
            .basic_reduction_map
            .iter()
            .position(|&c| c == class)
            .expect("every class has a member");
        &self.idempotents[k]
    }
}

pub fn present_basic<S: Scalar>(a: &AlgebraWithBasis<S>, max_rel_deg: usize) -> Result<Presentation<S>> {
    let d = a.dim();
    let j = radical(a)?;
    let es = idempotents_with_radical(a, &j)?;
    let q = SemisimpleQuotient::new(a, &j)?;
    let full = SubspaceBasis::full(d);

    // iso-classes: e ~ f iff e (A/J) f != 0
    let mut class: Vec<usize> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (i, e) in es.iter().enumerate() {
        let eb = q.project(e);
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            let fb = q.project(&es[r]);
            let r2 = q.dim();
            let nz = (0..r2).any(|k| {
                let b = crate::linalg::unit_vector(r2, k);
                !vec_is_zero(&q.mul(a, &q.mul(a, &eb, &b), &fb))
            });
            if nz {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => class.push(c),
            None => {
                class.push(reps.len());
                reps.push(i);
            }
        }
    }
    let n = reps.len();
    let mut multiplicities = vec![0; n];
    for &c in &class {
        multiplicities[c] += 1;
    }
    let eps: Vec<Vec<S>> = reps.iter().map(|&r| es[r].clone()).collect();
    let cartan: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|k| sandwich(a, &eps[i], &full, &eps[k]).dim()).collect())
        .collect();

    let powers = radical_powers(a, &j);
    let radical_layers: Vec<usize> = powers.iter().map(|p| p.dim()).collect();
    let j2 = powers.get(1).cloned().unwrap_or_else(|| SubspaceBasis::zero(d));
    let mut arrow_list = Vec::new();
    let mut arrow_elements = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let top = sandwich(a, &eps[k], &j, &eps[i]);
            let low = sandwich(a, &eps[k], &j2, &eps[i]);
            let qt = top.quotient(&low)?;
            for (m, v) in qt.complement.into_iter().enumerate() {
                arrow_list.push((format!("x{}_{}_{}", i, k, m), i.to_string(), k.to_string()));
                arrow_elements.push(v);
            }
        }
    }
    let quiver = Quiver::new((0..n).map(|i| i.to_string()).collect(), arrow_list)?;

    let mut paths = Vec::new();
    for len in 2..=max_rel_deg {
        paths.extend(quiver.paths_of_length(len));
    }
    let mut pres = Presentation {
        quiver,
        relations: RelationSet::empty(),
        max_rel_deg,
        relation_space_dim: 0,
        paths_span_radical: false,
        idempotents: es,
        basic_reduction_map: class,
        multiplicities,
        cartan,
        arrow_elements,
        radical_layers,
        dim: d,
    };
    let cols: Vec<Vec<S>> = paths.iter().map(|p| pres.path_element(a, p)).collect();
    if !cols.is_empty() {
        let m = Mat::from_columns(d, &cols);
        for kv in m.kernel_vectors() {
            let rel: Vec<(S, Path)> = kv
                .into_iter()
                .zip(&paths)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, p)| (c, p.clone()))
                .collect();
            pres.relations.generators.push(rel);
        }
    }
    pres.relation_space_dim = pres.relations.generators.len();
    // radical of the basic algebra versus the span of its paths
    let mut span_vecs: Vec<Vec<S>> = pres.arrow_elements.clone();
    span_vecs.extend(cols);
    let path_span = SubspaceBasis::span(d, span_vecs);
    let e_basic = eps.iter().fold(vec![S::zero(); d], |acc, e| crate::linalg::vec_add(&acc, e));
    let basic_rad = sandwich(a, &e_basic, &j, &e_basic);
    pres.paths_span_radical = path_span.contains_subspace(&basic_rad);
    Ok(pres)
}

/// Result of comparing two invariant panels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PanelComparison {
    pub vertices: bool,
    pub arrows: bool,
    pub cartan: bool,
    pub dim: bool,
    pub basic_dim: bool,
    pub relation_space_dim: bool,
}

impl PanelComparison {
    pub fn all(&self) -> bool {
        self.vertices && self.arrows && self.cartan && self.dim && self.basic_dim && self.relation_space_dim
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Equal up to a simultaneous permutation of rows and columns.
pub fn equal_up_to_permutation(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let sorted = |m: &[Vec<usize>]| {
        let mut v: Vec<usize> = m.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    };
    if sorted(a) != sorted(b) {
        return false;
    }
    if n > 8 {
        return a == b;
    }
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|i| (0..n).all(|j| a[i][j] == b[p[i]][p[j]])))
}

pub fn invariants_compare(p1: &InvariantPanel, p2: &InvariantPanel) -> PanelComparison {
    PanelComparison {
        vertices: p1.vertices == p2.vertices,
        arrows: equal_up_to_permutation(&p1.arrows, &p2.arrows),
        cartan: equal_up_to_permutation(&p1.cartan, &p2.cartan),
        dim: p1.dim == p2.dim,
        basic_dim: p1.basic_dim == p2.basic_dim,
        relation_space_dim: p1.relation_space_dim == p2.relation_space_dim,
    }
}

/// A left module given by the action matrices of every basis element.
#[derive(Clone, Debug)]
pub struct AlgebraModule<S> {
    pub dim: usize,
    pub action: Vec<Mat<S>>,
}

impl<S: Scalar> AlgebraModule<S> {
    pub fn regular(a: &AlgebraWithBasis<S>) -> Self {
        AlgebraModule {
            dim: a.dim(),
            action: (0..a.dim()).map(|k| a.left_mult_matrix(&a.basis_vector(k))).collect(),
        }
    }

    pub fn act(&self, x: &[S]) -> Mat<S> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (c, b) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Restriction to a submodule with the given basis.
    pub fn submodule(&self, sub: &SubspaceBasis<S>) -> Result<Self> {
        let k = sub.dim();
        if k == 0 {
            return Ok(AlgebraModule {
                dim: 0,
                action: self.action.iter().map(|_| Mat::zeros(0, 0)).collect(),
            });
        }
        let u = Mat::from_columns(self.dim, sub.vectors());
        let li = u.left_inverse()?;
        let mut action = Vec::new();
        for b in &self.action {
            let img = b.mul(&u);
            for c in 0..k {
                if !sub.contains(&img.column(c)) {
                    return Err(Error::ClosureFailure("subspace is not a submodule".into()));
                }
            }
            action.push(li.mul(&img));
        }
        Ok(AlgebraModule { dim: k, action })
    }

    /// Quotient by a submodule, on a standard complement.
    pub fn quotient(&self, sub: &SubspaceBasis<S>) -> Result<Self> {
        let q = SubspaceBasis::full(self.dim).quotient(sub)?;
        let r = q.complement.len();
        let c = Mat::from_columns(self.dim, &q.complement);
        let action = self
            .action
            .iter()
            .map(|b| if r == 0 { Mat::zeros(0, 0) } else { q.projection.mul(&b.mul(&c)) })
            .collect();
        Ok(AlgebraModule { dim: r, action })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Exact(usize),
    /// Some resolution did not stop within the cap or the size budget.
    AtLeast(usize),
}

/// Context for resolving modules over `a`.
pub struct ModuleCategory<'a, S> {
    a: &'a AlgebraWithBasis<S>,
    j: SubspaceBasis<S>,
    /// Primitive idempotents, one per iso-class.
    reps: Vec<Vec<S>>,
    /// `A e_i` as modules and their bases in `A`.
    projectives: Vec<(AlgebraModule<S>, SubspaceBasis<S>)>,
}

impl<'a, S: Scalar> ModuleCategory<'a, S> {
    pub fn new(a: &'a AlgebraWithBasis<S>) -> Result<Self> {
        let pres = present_basic(a, 1)?;
        let n = pres.quiver.num_vertices();
        let reps: Vec<Vec<S>> = (0..n).map(|c| pres.idempotents_rep(c).to_vec()).collect();
        let j = radical(a)?;
        let reg = AlgebraModule::regular(a);
        let mut projectives = Vec::new();
        for e in &reps {
            let ae = SubspaceBasis::image_of(&a.right_mult_matrix(e));
            projectives.push((reg.submodule(&ae)?, ae));
        }
        Ok(ModuleCategory { a, j, reps, projectives })
    }

    pub fn num_simples(&self) -> usize {
        self.reps.len()
    }

    pub fn simple(&self, i: usize) -> Result<AlgebraModule<S>> {
        let (p, basis) = &self.projectives[i];
        // J e_i in the coordinates of A e_i
        let je = self.j.intersect(basis)?;
        let u = Mat::from_columns(self.a.dim(), basis.vectors());
        let li = u.left_inverse()?;
        let sub = SubspaceBasis::span(p.dim, je.vectors().iter().map(|v| li.mul_vec(v)));
        p.quotient(&sub)
    }

    /// First syzygy of a minimal projective cover.
    pub fn syzygy(&self, m: &AlgebraModule<S>) -> Result<AlgebraModule<S>> {
        if m.dim == 0 {
            return Ok(m.clone());
        }
        let jm = SubspaceBasis::span(
            m.dim,
            self.j.vectors().iter().flat_map(|x| {
                let act = m.act(x);
                (0..m.dim).map(move |c| act.column(c))
            }),
        );
        let mut blocks: Vec<Mat<S>> = Vec::new();
        let mut cover_parts: Vec<usize> = Vec::new();
        for (i, e) in self.reps.iter().enumerate() {
            let pe = m.act(e);
            let em = SubspaceBasis::image_of(&pe);
            let ejm = jm.image_under(&pe)?;
            let q = em.quotient(&ejm)?;
            for g in q.complement {
                // A e_i -> M, a e_i |-> a g
                let (_, basis) = &self.projectives[i];
                let bg: Vec<Vec<S>> = m.action.iter().map(|b| b.mul_vec(&g)).collect();
                let cols: Vec<Vec<S>> = basis.vectors().iter().map(|u| combine(m.dim, u, &bg)).collect();
                blocks.push(Mat::from_columns(m.dim, &cols));
                cover_parts.push(i);
            }
        }
        let mut pi = blocks[0].clone();
        for b in &blocks[1..] {
            pi = pi.hstack(b);
        }
        if pi.rank() != m.dim {
            return Err(Error::NotExact("projective cover is not surjective".into()));
        }
        let cover = self.direct_sum(&cover_parts);
        let k = SubspaceBasis::kernel_of(&pi);
        cover.submodule(&k)
    }

    fn direct_sum(&self, parts: &[usize]) -> AlgebraModule<S> {
        let dim: usize = parts.iter().map(|&i| self.projectives[i].0.dim).sum();
        let mut action = Vec::new();
        for b in 0..self.a.dim() {
            let mut m = Mat::zeros(dim, dim);
            let mut off = 0;
            for &i in parts {
                let p = &self.projectives[i].0;
                m.set_block(off, off, &p.action[b]);
                off += p.dim;
            }
            action.push(m);
        }
        AlgebraModule { dim, action }
    }

    pub fn projective_dimension(&self, m: &AlgebraModule<S>, cap: usize) -> Result<Dimension> {
        self.projective_dimension_within(m, cap, usize::MAX)
    }

    /// Like [`Self::projective_dimension`], but gives up with `AtLeast(n)`
    /// once the `n`-th syzygy is nonzero and larger than `max_dim`.
    pub fn projective_dimension_within(&self, m: &AlgebraModule<S>, cap: usize, max_dim: usize) -> Result<Dimension> {
        let mut cur = m.clone();
        for n in 0..=cap {
            let next = self.syzygy(&cur)?;
            if next.dim == 0 {
                return Ok(Dimension::Exact(n));
            }
            if next.dim > max_dim {
                return Ok(Dimension::AtLeast(n + 1));
            }
            cur = next;
        }
        Ok(Dimension::AtLeast(cap))
    }
}

fn combine<S: Scalar>(dim: usize, coeffs: &[S], vs: &[Vec<S>]) -> Vec<S> {
    let mut out = vec![S::zero(); dim];
    for (c, v) in coeffs.iter().zip(vs) {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

/// Maximum projective dimension of the simple modules.
pub fn global_dimension<S: Scalar>(a: &AlgebraWithBasis<S>, cap: usize) -> Result<Dimension> {
    global_dimension_within(a, cap, usize::MAX)
}

/// [`global_dimension`] with a bound on the size of the syzygies computed.
pub fn global_dimension_within<S: Scalar>(a: &AlgebraWithBasis<S>, cap: usize, max_dim: usize) -> Result<Dimension> {
    if a.dim() == 0 {
        return Ok(Dimension::Exact(0));
    }
    let cat = ModuleCategory::new(a)?;
    let mut best = 0;
    let mut open = false;
    for i in 0..cat.num_simples() {
        let s = cat.simple(i)?;
        match cat.projective_dimension_within(&s, cap, max_dim)? {
            Dimension::Exact(n) => best = best.max(n),
            Dimension::AtLeast(c) if c >= cap => return Ok(Dimension::AtLeast(c)),
            Dimension::AtLeast(c) => {
                best = best.max(c);
                open = true;
            }
        }
    }
    Ok(if open { Dimension::AtLeast(best) } else { Dimension::Exact(best) })
}

/// DOT drawing of a presentation's quiver.
pub fn presentation_dot<S: Scalar>(p: &Presentation<S>, name: &str) -> String {
    p.quiver.to_dot(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::build_path_algebra;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    /// Full matrix algebra `M_n` with basis `E_ij` (index `i*n + j`).
    fn matrix_algebra(n: usize) -> AlgebraWithBasis<Rational> {
        let d = n * n;
        let mut unit = vec![q(0); d];
        for i in 0..n {
            unit[i * n + i] = q(1);
        }
        AlgebraWithBasis::from_products((0..d).map(|k| format!("E{k}")).collect(), unit, |x, y| {
            let (i, j) = (x / n, x % n);
            let (k, l) = (y / n, y % n);
            let mut v = vec![q(0); d];
            if j == k {
                v[i * n + l] = q(1);
            }
            v
        })
        .unwrap()
    }

    fn upper_triangular() -> AlgebraWithBasis<Rational> {
        // basis E11, E12, E22
        let idx = |i: usize, j: usize| match (i, j) {
            (0, 0) => Some(0),
            (0, 1) => Some(1),
            (1, 1) => Some(2),
            _ => None,
        };
        let pairs = [(0, 0), (0, 1), (1, 1)];
        AlgebraWithBasis::from_products(
            vec!["E11".into(), "E12".into(), "E22".into()],
            vec![q(1), q(0), q(1)],
            |x, y| {
                let (i, j) = pairs[x];
                let (k, l) = pairs[y];
                let mut v = vec![q(0); 3];
                if j == k {
                    v[idx(i, l).unwrap()] = q(1);
                }
                v
            },
        )
        .unwrap()
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&upper_triangular()).unwrap().dim(), 1);
        assert_eq!(radical(&matrix_algebra(2)).unwrap().dim(), 0);
        let qv = Quiver::from_indices(1, &[(0, 0)]);
        let pa = build_path_algebra(&qv, &RelationSet::<Rational>::all_paths_of_length(&qv, 2), 2).unwrap();
        let j = radical(pa.algebra()).unwrap();
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&[q(0), q(1)]));
    }

    #[test]
    fn matrix_algebra_idempotents() {
        let a = matrix_algebra(2);
        let es = primitive_idempotents(&a).unwrap();
        assert_eq!(es.len(), 2);
        let p = present_basic(&a, 3).unwrap();
        assert_eq!(p.quiver.num_vertices(), 1);
        assert_eq!(p.multiplicities, vec![2]);
        assert_eq!(p.quiver.arrows().len(), 0);
        assert_eq!(global_dimension(&a, 4).unwrap(), Dimension::Exact(0));
    }

    #[test]
    fn a2_path_algebra_round_trip() {
        let qv = Quiver::from_indices(2, &[(0, 1)]);
        let pa = build_path_algebra(&qv, &RelationSet::<Rational>::empty(), 2).unwrap();
        let p = present_basic(pa.algebra(), 3).unwrap();
        assert_eq!(p.quiver.num_vertices(), 2);
        assert_eq!(p.quiver.arrows().len(), 1);
        assert_eq!(p.relation_space_dim, 0);
        assert!(p.paths_span_radical);
        assert_eq!(global_dimension(pa.algebra(), 4).unwrap(), Dimension::Exact(1));
        let semisimple = build_path_algebra(&Quiver::from_indices(3, &[]), &RelationSet::<Rational>::empty(), 1).unwrap();
        let ps = present_basic(semisimple.algebra(), 3).unwrap();
        let cmp = invariants_compare(&p.panel(), &ps.panel());
        assert!(!cmp.arrows);
        assert!(cmp.dim);
    }

    #[test]
    fn loop_with_square_zero_has_infinite_global_dimension() {
        let qv = Quiver::from_indices(1, &[(0, 0)]);
        let pa = build_path_algebra(&qv, &RelationSet::<Rational>::all_paths_of_length(&qv, 2), 2).unwrap();
        assert_eq!(global_dimension(pa.algebra(), 5).unwrap(), Dimension::AtLeast(5));
        let p = present_basic(pa.algebra(), 3).unwrap();
        assert_eq!(p.relation_space_dim, 2);
    }

    #[test]
    fn permutation_equality() {
        let a = vec![vec![0, 1], vec![0, 0]];
        let b = vec![vec![0, 0], vec![1, 0]];
        assert!(equal_up_to_permutation(&a, &b));
        assert!(!equal_up_to_permutation(&a, &[vec![1, 0], vec![0, 0]]));
    }

    #[test]
    fn cover_sequence_presentations() {
        let (mut ws, sd) = crate::orbit::tests::cover_sequence(vec![0]);
        let (s, _) = crate::orbit::build_subrings(&mut ws, &sd).unwrap();
        let l2 = present_basic(&s.lambda2.algebra, 2).unwrap().panel();
        assert_eq!(l2.vertices, 3);
        assert_eq!(l2.num_arrows, 4);
        assert_eq!(l2.dim, 11);
        // three independent quadratic relations
        assert_eq!(l2.relation_space_dim, 3);
        assert!(equal_up_to_permutation(&l2.arrows, &[vec![0, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]));
        let l1 = present_basic(&s.lambda1.algebra, 2).unwrap().panel();
        assert_eq!((l1.vertices, l1.num_arrows, l1.dim), (3, 3, 8));
        assert_eq!(l1.relation_space_dim, 1);
    }
}
