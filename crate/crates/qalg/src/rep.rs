//! Finite-dimensional weight representations: construction, tensor products,
//! duals, highest-weight vectors, decomposition, invariant pairings, and
//! Grothendieck-ring bookkeeping.
//!
//! Modules are concrete: an ordered basis of weight vectors plus one action
//! matrix per raising and lowering generator. The torus acts diagonally by
//! `nu^{(lambda, wt_k)}`, so it is derived from the stored weights instead of
//! being stored itself.
//!
//! Simple modules are built as cyclic submodules of tensor powers of the
//! q-deformed vector representation of the ambient classical type. Basis
//! vectors inside a cyclic submodule are produced by applying lowering words
//! in breadth-first order and keeping each vector that increases the exact
//! rank, which makes every constructed basis deterministic.

use crate::linalg::Matrix;
use crate::roots::{RootSystem, Type, Weight};
use crate::scalar::{FieldElement, QRat, ScalarContext};
use crate::uq::{AlgebraElement, Uq};
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("no q-deformed vector representation is implemented for type {0}")]
    UnsupportedType(String),
    #[error("weight {0:?} is not reachable from the available seed modules")]
    UnreachableWeight(Weight),
    #[error("modules live over different root systems or scalar fields")]
    ContextMismatch,
    #[error("dimension mismatch between operator and vector")]
    DimensionMismatch,
    #[error("decomposition audit failed: multiplicities do not account for the dimension")]
    InconsistentDecomposition,
    #[error("no nonzero invariant pairing exists")]
    NoInvariantPairing,
    #[error("invariant pairing is not unique up to scalar")]
    PairingNotUnique,
    #[error("no invariant inner product compatible with the star structure")]
    NoInvariantForm,
    #[error("subspace is not stable under the generator action")]
    NotInvariant,
    #[error("defining relation failed: {0}")]
    RelationFailure(String),
}

/// A finite-dimensional Type-1 module with a chosen basis of weight vectors.
#[derive(Clone, Debug)]
pub struct WeightModule {
    ctx: ScalarContext,
    rs: RootSystem,
    weights: Vec<Weight>,
    e: Vec<Matrix>,
    f: Vec<Matrix>,
    label: Option<Weight>,
}

impl WeightModule {
    /// Assemble a module from raw data. The caller asserts the defining
    /// relations; use [`WeightModule::verify_relations`] to audit.
    pub fn from_parts(
        ctx: ScalarContext,
        rs: RootSystem,
        weights: Vec<Weight>,
        e: Vec<Matrix>,
        f: Vec<Matrix>,
        label: Option<Weight>,
    ) -> WeightModule {
        WeightModule {
            ctx,
            rs,
            weights,
            e,
            f,
            label,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn scalars(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> &Weight {
        &self.weights[k]
    }

    pub fn label(&self) -> Option<&Weight> {
        self.label.as_ref()
    }

    pub fn e_mat(&self, i: usize) -> &Matrix {
        &self.e[i]
    }

    pub fn f_mat(&self, i: usize) -> &Matrix {
        &self.f[i]
    }

    /// Diagonal action of `K_lambda`.
    pub fn k_action(&self, lambda: &Weight) -> Matrix {
        let d = self.ctx.d();
        let mut m = Matrix::zeros(d, self.dim(), self.dim());
        for k in 0..self.dim() {
            let ex = self.rs.weight_form(lambda, &self.weights[k]);
            let v = self
                .ctx
                .nu_pow_rat(&ex)
                .expect("weight-form exponent fits the scalar denominator");
            m.set(k, k, v);
        }
        m
    }

    /// Indices of basis vectors of each weight.
    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(k);
        }
        out
    }

    /// Action matrix of a symbolic algebra element.
    pub fn act(&self, x: &AlgebraElement) -> Matrix {
        let n = self.dim();
        let d = self.ctx.d();
        let mut out = Matrix::zeros(d, n, n);
        for (mono, c) in x.terms() {
            let mut m = Matrix::identity(d, n);
            for &j in &mono.f {
                m = m.mul(&self.f[j]);
            }
            if !mono.k.is_zero() {
                m = m.mul(&self.k_action(&mono.k));
            }
            for &i in &mono.e {
                m = m.mul(&self.e[i]);
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    /// Apply a symbolic algebra element to a column vector.
    pub fn act_on(&self, x: &AlgebraElement, v: &Matrix) -> Result<Matrix, RepError> {
        if v.rows() != self.dim() || v.cols() != 1 {
            return Err(RepError::DimensionMismatch);
        }
        Ok(self.act(x).mul(v))
    }

    /// Check every defining relation as an exact matrix identity: weight
    /// shifts, the torus commutation (implied by the shifts), the
    /// raising/lowering commutators, and both quantum Serre relations.
    pub fn verify_relations(&self) -> Result<(), RepError> {
        let n = self.dim();
        let r = self.rank();
        let d = self.ctx.d();
        for i in 0..r {
            let alpha = self.rs.alpha_as_weight(i);
            for row in 0..n {
                for col in 0..n {
                    if !self.e[i].get(row, col).is_zero()
                        && self.weights[row] != self.weights[col].add(&alpha)
                    {
                        return Err(RepError::RelationFailure(format!(
                            "raising generator {i} breaks weight grading at ({row},{col})"
                        )));
                    }
                    if !self.f[i].get(row, col).is_zero()
                        && self.weights[row] != self.weights[col].sub(&alpha)
                    {
                        return Err(RepError::RelationFailure(format!(
                            "lowering generator {i} breaks weight grading at ({row},{col})"
                        )));
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let comm = self.e[i].mul(&self.f[j]).sub(&self.f[j].mul(&self.e[i]));
                let expect = if i == j {
                    let qi = self.ctx.nu_pow_int(self.rs.d(i));
                    let denom = (&qi - &qi.inv().unwrap()).inv().unwrap();
                    let ki = self.k_action(&self.rs.alpha_as_weight(i));
                    let ki_inv = self.k_action(&self.rs.alpha_as_weight(i).neg());
                    ki.sub(&ki_inv).scale(&denom)
                } else {
                    Matrix::zeros(d, n, n)
                };
                if comm != expect {
                    return Err(RepError::RelationFailure(format!(
                        "commutator of raising {i} with lowering {j} is wrong"
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let m = (1 - self.rs.a(i, j)) as u32;
                let deg = self.rs.d(i) as u32;
                for (mats, name) in [(&self.e, "Serre raising"), (&self.f, "Serre lowering")] {
                    let mut acc = Matrix::zeros(d, n, n);
                    let mut pow: Vec<Matrix> = vec![Matrix::identity(d, n)];
                    for _ in 0..m {
                        pow.push(pow.last().unwrap().mul(&mats[i]));
                    }
                    for k in 0..=m {
                        let mut c = self.ctx.qbinom(m, k, deg);
                        if k % 2 == 1 {
                            c = -&c;
                        }
                        let term = pow[(m - k) as usize].mul(&mats[j]).mul(&pow[k as usize]);
                        acc = acc.add(&term.scale(&c));
                    }
                    if !acc.is_zero() {
                        return Err(RepError::RelationFailure(format!(
                            "{name} relation fails for nodes {i},{j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn same_context(a: &WeightModule, b: &WeightModule) -> Result<(), RepError> {
    if a.ctx.d() != b.ctx.d() || a.rs.cartan() != b.rs.cartan() {
        return Err(RepError::ContextMismatch);
    }
    Ok(())
}

/// One-dimensional trivial module.
pub fn trivial_module(uq: &Uq) -> WeightModule {
    let rs = uq.root_system().clone();
    let d = uq.scalars().d();
    let r = rs.rank();
    WeightModule {
        ctx: uq.scalars().clone(),
        rs: rs.clone(),
        weights: vec![Weight::zero(r)],
        e: vec![Matrix::zeros(d, 1, 1); r],
        f: vec![Matrix::zeros(d, 1, 1); r],
        label: Some(Weight::zero(r)),
    }
}

/// Fundamental-weight coordinates of the standard basis weight `eps_k`
/// (1-based) of the vector representation of a classical type.
fn epsilon_weight(typ: Type, rank: usize, k: usize) -> Weight {
    let mut c = vec![0i64; rank];
    let chain_top = match typ {
        Type::A => rank,
        Type::B | Type::C => rank - 1,
        Type::D => rank - 1,
        _ => unreachable!(),
    };
    for i in 1..=chain_top {
        if i == k {
            c[i - 1] += 1;
        }
        if i == k - 1 {
            c[i - 1] -= 1;
        }
    }
    match typ {
        Type::A => {}
        Type::B => {
            if k == rank {
                c[rank - 1] += 2;
            }
        }
        Type::C => {
            if k == rank {
                c[rank - 1] += 1;
            }
        }
        Type::D => {
            if k == rank - 1 || k == rank {
                c[rank - 1] += 1;
            }
        }
        _ => unreachable!(),
    }
    Weight(c)
}

/// The q-deformed vector representation of a classical type. All structure
/// constants are 1 except across the middle of the odd orthogonal string,
/// where the raising generator picks up `[2]_nu`.
pub fn seed_module(uq: &Uq) -> Result<WeightModule, RepError> {
    let rs = uq.root_system().clone();
    let ctx = uq.scalars().clone();
    let d = ctx.d();
    let n = rs.rank();
    let typ = rs.typ();
    let (dim, weights): (usize, Vec<Weight>) = match typ {
        Type::A => (
            n + 1,
            (1..=n + 1).map(|k| epsilon_weight(typ, n, k)).collect(),
        ),
        Type::B => {
            let mut w: Vec<Weight> = (1..=n).map(|k| epsilon_weight(typ, n, k)).collect();
            w.push(Weight::zero(n));
            w.extend((1..=n).rev().map(|k| epsilon_weight(typ, n, k).neg()));
            (2 * n + 1, w)
        }
        Type::C | Type::D => {
            let mut w: Vec<Weight> = (1..=n).map(|k| epsilon_weight(typ, n, k)).collect();
            w.extend((1..=n).rev().map(|k| epsilon_weight(typ, n, k).neg()));
            (2 * n, w)
        }
        other => return Err(RepError::UnsupportedType(other.as_str().to_string())),
    };
    let mut e = vec![Matrix::zeros(d, dim, dim); n];
    let mut f = vec![Matrix::zeros(d, dim, dim); n];
    let one = ctx.one();
    // Index of v_{k'} (the weight -eps_k vector) in the bases above.
    let neg = |k: usize| match typ {
        Type::B => 2 * n + 1 - k,
        _ => 2 * n - k,
    };
    // Chain generators alpha_a = eps_a - eps_{a+1} (1-based a).
    let chain_top = if typ == Type::A { n } else { n - 1 };
    for a in 1..=chain_top {
        e[a - 1].set(a - 1, a, one.clone());
        f[a - 1].set(a, a - 1, one.clone());
        if typ != Type::A {
            e[a - 1].set(neg(a + 1), neg(a), one.clone());
            f[a - 1].set(neg(a), neg(a + 1), one.clone());
        }
    }
    match typ {
        Type::A => {}
        Type::B => {
            // alpha_n = eps_n, with the zero-weight vector at index n.
            let two = ctx.qnum(2, 1);
            e[n - 1].set(n - 1, n, two.clone());
            e[n - 1].set(n, n + 1, two);
            f[n - 1].set(n, n - 1, one.clone());
            f[n - 1].set(n + 1, n, one.clone());
        }
        Type::C => {
            // alpha_n = 2 eps_n.
            e[n - 1].set(n - 1, n, one.clone());
            f[n - 1].set(n, n - 1, one.clone());
        }
        Type::D => {
            // alpha_n = eps_{n-1} + eps_n.
            e[n - 1].set(n - 2, neg(n), one.clone());
            e[n - 1].set(n - 1, neg(n - 1), one.clone());
            f[n - 1].set(neg(n), n - 2, one.clone());
            f[n - 1].set(neg(n - 1), n - 1, one.clone());
        }
        _ => unreachable!(),
    }
    let m = WeightModule {
        ctx,
        rs,
        weights,
        e,
        f,
        label: Some(Weight::fundamental(n, 0)),
    };
    m.verify_relations()?;
    Ok(m)
}

/// Tensor product with the coproduct action:
/// `E_i -> E_i (x) 1 + K_i (x) E_i`, `F_i -> F_i (x) K_i^{-1} + 1 (x) F_i`.
/// Basis vector `u_a (x) v_b` has flat index `a * dim(n) + b`.
pub fn tensor(a: &WeightModule, b: &WeightModule) -> Result<WeightModule, RepError> {
    same_context(a, b)?;
    let d = a.ctx.d();
    let mut weights = Vec::with_capacity(a.dim() * b.dim());
    for wa in &a.weights {
        for wb in &b.weights {
            weights.push(wa.add(wb));
        }
    }
    let ida = Matrix::identity(d, a.dim());
    let idb = Matrix::identity(d, b.dim());
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..a.rank() {
        let alpha = a.rs.alpha_as_weight(i);
        let ka = a.k_action(&alpha);
        let kb_inv = b.k_action(&alpha.neg());
        e.push(a.e[i].kron(&idb).add(&ka.kron(&b.e[i])));
        f.push(a.f[i].kron(&kb_inv).add(&ida.kron(&b.f[i])));
    }
    Ok(WeightModule {
        ctx: a.ctx.clone(),
        rs: a.rs.clone(),
        weights,
        e,
        f,
        label: None,
    })
}

pub fn tensor_many(parts: &[&WeightModule]) -> Result<WeightModule, RepError> {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        out = tensor(&out, p)?;
    }
    Ok(out)
}

/// Direct sum, with the basis of `a` listed first.
pub fn direct_sum(a: &WeightModule, b: &WeightModule) -> Result<WeightModule, RepError> {
    same_context(a, b)?;
    let d = a.ctx.d();
    let na = a.dim();
    let nb = b.dim();
    let mut weights = a.weights.clone();
    weights.extend(b.weights.iter().cloned());
    let block = |x: &Matrix, y: &Matrix| -> Matrix {
        let mut m = Matrix::zeros(d, na + nb, na + nb);
        for r in 0..na {
            for c in 0..na {
                if !x.get(r, c).is_zero() {
                    m.set(r, c, x.get(r, c).clone());
                }
            }
        }
        for r in 0..nb {
            for c in 0..nb {
                if !y.get(r, c).is_zero() {
                    m.set(na + r, na + c, y.get(r, c).clone());
                }
            }
        }
        m
    };
    let e = (0..a.rank()).map(|i| block(&a.e[i], &b.e[i])).collect();
    let f = (0..a.rank()).map(|i| block(&a.f[i], &b.f[i])).collect();
    Ok(WeightModule {
        ctx: a.ctx.clone(),
        rs: a.rs.clone(),
        weights,
        e,
        f,
        label: None,
    })
}

/// Left dual with action `(a . f)(v) = f(S(a) v)`; generator matrices are
/// transposes of the antipode images.
pub fn dual(m: &WeightModule) -> WeightModule {
    dual_with(m, true)
}

/// Right dual, using the inverse antipode. The evaluation map
/// `V (x) V-dual -> C` is then a module map.
pub fn right_dual(m: &WeightModule) -> WeightModule {
    dual_with(m, false)
}

fn dual_with(m: &WeightModule, left: bool) -> WeightModule {
    let weights: Vec<Weight> = m.weights.iter().map(|w| w.neg()).collect();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..m.rank() {
        let alpha = m.rs.alpha_as_weight(i);
        let k = m.k_action(&alpha);
        let k_inv = m.k_action(&alpha.neg());
        let (se, sf) = if left {
            // S(E_i) = -K_i^{-1} E_i, S(F_i) = -F_i K_i
            (k_inv.mul(&m.e[i]).neg(), m.f[i].mul(&k).neg())
        } else {
            // S^{-1}(E_i) = -E_i K_i^{-1}, S^{-1}(F_i) = -K_i F_i
            (m.e[i].mul(&k_inv).neg(), k.mul(&m.f[i]).neg())
        };
        e.push(se.transpose());
        f.push(sf.transpose());
    }
    WeightModule {
        ctx: m.ctx.clone(),
        rs: m.rs.clone(),
        weights,
        e,
        f,
        label: None,
    }
}

/// Basis for `{v in M_lambda : E_i v = 0 for all listed nodes}` as matrix
/// columns in the ambient module.
pub fn highest_weight_vectors_levi(m: &WeightModule, nodes: &[usize], lambda: &Weight) -> Matrix {
    let d = m.ctx.d();
    let idx: Vec<usize> = (0..m.dim()).filter(|&k| &m.weights[k] == lambda).collect();
    if idx.is_empty() {
        return Matrix::zeros(d, m.dim(), 0);
    }
    let all_rows: Vec<usize> = (0..m.dim()).collect();
    let stacked: Vec<Matrix> = nodes
        .iter()
        .map(|&i| m.e[i].submatrix(&all_rows, &idx))
        .collect();
    if stacked.is_empty() {
        let mut out = Matrix::zeros(d, m.dim(), idx.len());
        for (c, &k) in idx.iter().enumerate() {
            out.set(k, c, m.ctx.one());
        }
        return out;
    }
    let refs: Vec<&Matrix> = stacked.iter().collect();
    let kernel = Matrix::vstack(&refs).kernel();
    let mut out = Matrix::zeros(d, m.dim(), kernel.cols());
    for c in 0..kernel.cols() {
        for (r, &k) in idx.iter().enumerate() {
            out.set(k, c, kernel.get(r, c).clone());
        }
    }
    out
}

pub fn highest_weight_vectors(m: &WeightModule, lambda: &Weight) -> Matrix {
    let nodes: Vec<usize> = (0..m.rank()).collect();
    highest_weight_vectors_levi(m, &nodes, lambda)
}

/// Basis of the smallest subspace containing `v` and stable under the
/// lowering operators of the listed nodes, produced breadth-first and
/// keeping each image that increases the exact rank. Columns are the basis.
pub fn cyclic_span_levi(m: &WeightModule, nodes: &[usize], v: &Matrix) -> Matrix {
    let mut basis: Vec<Matrix> = vec![v.clone()];
    let mut queue: VecDeque<Matrix> = VecDeque::from([v.clone()]);
    let mut span = v.clone();
    while let Some(w) = queue.pop_front() {
        for &j in nodes {
            let cand = m.f[j].mul(&w);
            if cand.is_zero() {
                continue;
            }
            let test = Matrix::hstack(&[&span, &cand]);
            if test.rank() > basis.len() {
                basis.push(cand.clone());
                queue.push_back(cand);
                span = test;
            }
        }
    }
    let refs: Vec<&Matrix> = basis.iter().collect();
    Matrix::hstack(&refs)
}

/// Cyclic submodule generated by a highest-weight vector under all lowering
/// operators, as a standalone module plus the inclusion matrix.
pub fn cyclic_submodule(
    m: &WeightModule,
    v: &Matrix,
    label: Option<Weight>,
) -> Result<(WeightModule, Matrix), RepError> {
    let nodes: Vec<usize> = (0..m.rank()).collect();
    let inc = cyclic_span_levi(m, &nodes, v);
    let mut sub = submodule_from_basis(m, &inc)?;
    sub.label = label;
    Ok((sub, inc))
}

/// Restrict the module structure to an invariant subspace spanned by the
/// columns of `basis`. Each column must be a weight vector.
pub fn submodule_from_basis(m: &WeightModule, basis: &Matrix) -> Result<WeightModule, RepError> {
    let nodes: Vec<usize> = (0..m.rank()).collect();
    levi_submodule_from_basis(m, &nodes, basis)
}

/// Like [`submodule_from_basis`], but the subspace only has to be stable
/// under the generators at the listed nodes; the remaining generators act
/// as zero on the result. Used for Levi-stable subspaces that are not
/// stable under the full algebra.
pub fn levi_submodule_from_basis(
    m: &WeightModule,
    nodes: &[usize],
    basis: &Matrix,
) -> Result<WeightModule, RepError> {
    let mut weights = Vec::with_capacity(basis.cols());
    for c in 0..basis.cols() {
        let k = (0..m.dim())
            .find(|&k| !basis.get(k, c).is_zero())
            .ok_or(RepError::NotInvariant)?;
        for r in 0..m.dim() {
            if !basis.get(r, c).is_zero() && m.weights[r] != m.weights[k] {
                return Err(RepError::NotInvariant);
            }
        }
        weights.push(m.weights[k].clone());
    }
    let d = m.ctx.d();
    let zero = Matrix::zeros(d, basis.cols(), basis.cols());
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..m.rank() {
        if !nodes.contains(&i) {
            e.push(zero.clone());
            f.push(zero.clone());
            continue;
        }
        e.push(
            basis
                .solve(&m.e[i].mul(basis))
                .ok_or(RepError::NotInvariant)?,
        );
        f.push(
            basis
                .solve(&m.f[i].mul(basis))
                .ok_or(RepError::NotInvariant)?,
        );
    }
    Ok(WeightModule {
        ctx: m.ctx.clone(),
        rs: m.rs.clone(),
        weights,
        e,
        f,
        label: None,
    })
}

/// Minimal tensor power of the seed module containing `V(omega_i)`;
/// `None` when the fundamental weight is not attainable (spin weights).
fn fundamental_level(typ: Type, rank: usize, i: usize) -> Option<usize> {
    match typ {
        Type::A | Type::C => Some(i + 1),
        Type::B => {
            if i + 1 < rank {
                Some(i + 1)
            } else {
                None
            }
        }
        Type::D => {
            if i + 1 <= rank - 2 {
                Some(i + 1)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// The simple module of dominant highest weight `lambda`, as the cyclic
/// submodule generated by the first highest-weight vector of weight
/// `lambda` inside a tensor power of the seed module.
pub fn simple_module(uq: &Uq, lambda: &Weight) -> Result<WeightModule, RepError> {
    assert!(lambda.is_dominant(), "highest weight must be dominant");
    let rs = uq.root_system();
    if lambda.is_zero() {
        return Ok(trivial_module(uq));
    }
    let typ = rs.typ();
    let mut level = 0usize;
    for (i, &m) in lambda.coeffs().iter().enumerate() {
        if m == 0 {
            continue;
        }
        match fundamental_level(typ, rs.rank(), i) {
            Some(l) => level += l * m as usize,
            None => return Err(RepError::UnreachableWeight(lambda.clone())),
        }
    }
    let seed = seed_module(uq)?;
    let parts: Vec<&WeightModule> = std::iter::repeat(&seed).take(level).collect();
    let big = tensor_many(&parts)?;
    let hw = highest_weight_vectors(&big, lambda);
    if hw.cols() == 0 {
        return Err(RepError::UnreachableWeight(lambda.clone()));
    }
    let first: Vec<usize> = vec![0];
    let all_rows: Vec<usize> = (0..big.dim()).collect();
    let v = hw.submatrix(&all_rows, &first);
    let (sub, _inc) = cyclic_submodule(&big, &v, Some(lambda.clone()))?;
    assert_eq!(
        sub.dim() as u64,
        rs.weyl_dimension(lambda),
        "cyclic submodule does not have the classical dimension"
    );
    Ok(sub)
}

/// Formal nonnegative sum of simple highest weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrothendieckElement {
    mult: BTreeMap<Weight, i64>,
}

impl GrothendieckElement {
    pub fn zero() -> GrothendieckElement {
        GrothendieckElement {
            mult: BTreeMap::new(),
        }
    }

    pub fn simple(lambda: Weight) -> GrothendieckElement {
        let mut m = BTreeMap::new();
        m.insert(lambda, 1);
        GrothendieckElement { mult: m }
    }

    pub fn multiplicity(&self, lambda: &Weight) -> i64 {
        self.mult.get(lambda).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.mult.iter().map(|(w, &m)| (w, m))
    }

    pub fn insert(&mut self, lambda: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mult.entry(lambda.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(&lambda);
        }
    }

    pub fn add(&self, other: &GrothendieckElement) -> GrothendieckElement {
        let mut out = self.clone();
        for (w, m) in other.entries() {
            out.insert(w.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &GrothendieckElement) -> GrothendieckElement {
        let mut out = self.clone();
        for (w, m) in other.entries() {
            out.insert(w.clone(), -m);
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.mult.values().all(|&m| m >= 0)
    }

    pub fn total_dimension(&self, rs: &RootSystem) -> i64 {
        self.entries()
            .map(|(w, m)| m * rs.weyl_dimension(w) as i64)
            .sum()
    }

    /// Product in the Grothendieck ring, via classical characters.
    pub fn mul(&self, other: &GrothendieckElement, rs: &RootSystem) -> GrothendieckElement {
        let mut char_a: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, m) in self.entries() {
            for (mu, k) in classical_weight_multiset(rs, w) {
                *char_a.entry(mu).or_insert(0) += m * k as i64;
            }
        }
        let mut char_b: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, m) in other.entries() {
            for (mu, k) in classical_weight_multiset(rs, w) {
                *char_b.entry(mu).or_insert(0) += m * k as i64;
            }
        }
        let mut prod: BTreeMap<Weight, i64> = BTreeMap::new();
        for (wa, ma) in &char_a {
            for (wb, mb) in &char_b {
                *prod.entry(wa.add(wb)).or_insert(0) += ma * mb;
            }
        }
        decompose_character(rs, prod).expect("product of characters decomposes")
    }
}

impl fmt::Display for GrothendieckElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        // Highest weights first.
        let mut items: Vec<(&Weight, i64)> = self.entries().collect();
        items.sort_by_key(|(w, _)| std::cmp::Reverse(w.coeffs().iter().sum::<i64>()));
        for (n, (w, m)) in items.iter().enumerate() {
            if n > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "V({:?})", w.coeffs())?;
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Multiplicities of all weights of the classical simple module `V(lambda)`,
/// by Freudenthal's recursion on dominant weights plus Weyl-orbit spreading.
pub fn classical_weight_multiset(rs: &RootSystem, lambda: &Weight) -> BTreeMap<Weight, u64> {
    assert!(lambda.is_dominant());
    let rho = rs.rho();
    let lam_rho = lambda.add(&rho);
    let lam_norm = rs.weight_form(&lam_rho, &lam_rho);
    // Candidate weights: mu <= lambda in the root order with
    // (mu + rho, mu + rho) <= (lambda + rho, lambda + rho). Track the
    // height of lambda - mu so dominants can be processed top-down.
    let mut seen: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([(lambda.clone(), 0usize)]);
    seen.insert(lambda.clone(), 0);
    while let Some((w, depth)) = queue.pop_front() {
        for j in 0..rs.rank() {
            let next = rs.weight_sub_alpha(&w, j);
            if seen.contains_key(&next) {
                continue;
            }
            let nr = next.add(&rho);
            if rs.weight_form(&nr, &nr) <= lam_norm {
                seen.insert(next.clone(), depth + 1);
                queue.push_back((next, depth + 1));
            }
        }
    }
    // Freudenthal on dominant candidates, from the top down.
    let mut by_depth: Vec<(usize, Weight)> = seen
        .iter()
        .filter(|(w, _)| w.is_dominant())
        .map(|(w, &d)| (d, w.clone()))
        .collect();
    by_depth.sort();
    let dominants: Vec<Weight> = by_depth.into_iter().map(|(_, w)| w).collect();
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for mu in &dominants {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mu_rho = mu.add(&rho);
        let denom = &lam_norm - &rs.weight_form(&mu_rho, &mu_rho);
        if denom.is_zero() {
            continue;
        }
        let mut num = QRat::zero();
        for beta in rs.positive_roots() {
            let beta_w = rs.root_to_weight(beta);
            let bb = rs.root_form(beta, beta);
            let mut k = 1i64;
            loop {
                let v = mu.add(&beta_w.scaled(k));
                // Weights of V(lambda) satisfy v <= lambda; stop once the
                // difference leaves the positive cone.
                let diff_ok = {
                    let diff = lambda.sub(&v);
                    in_positive_root_cone(rs, &diff)
                };
                if !diff_ok {
                    break;
                }
                let m_v = dominant_representative(rs, &v)
                    .and_then(|d| mult.get(&d).copied())
                    .unwrap_or(0);
                if m_v > 0 {
                    let form = rs.weight_root_form(mu, beta) + k * bb;
                    num += QRat::from_integer(BigInt::from(m_v as i64 * form));
                }
                k += 1;
            }
        }
        let m = (QRat::from_integer(BigInt::from(2)) * num) / denom.clone();
        assert!(m.is_integer(), "Freudenthal multiplicity must be integral");
        let m = i64::try_from(m.to_integer()).unwrap();
        assert!(m >= 0);
        if m > 0 {
            mult.insert(mu.clone(), m as u64);
        }
    }
    // Spread over Weyl orbits.
    let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
    for w in seen.keys() {
        if let Some(d) = dominant_representative(rs, w) {
            if let Some(&m) = mult.get(&d) {
                out.insert(w.clone(), m);
            }
        }
    }
    out
}

/// Is `diff` a nonnegative integer combination of simple roots?
fn in_positive_root_cone(rs: &RootSystem, diff: &Weight) -> bool {
    // Convert fundamental-weight coordinates to root coordinates.
    let n = rs.rank();
    let mut coords = vec![QRat::zero(); n];
    // Solve A c = diff exactly using the cached inverse.
    for i in 0..n {
        for j in 0..n {
            let inv = rs.cartan_inverse_entry(i, j);
            coords[i] += inv * QRat::from_integer(BigInt::from(diff.coeffs()[j]));
        }
    }
    coords.iter().all(|c| c.is_integer() && c >= &QRat::zero())
}

fn dominant_representative(rs: &RootSystem, w: &Weight) -> Option<Weight> {
    let mut v = w.clone();
    for _ in 0..10_000 {
        match (0..rs.rank()).find(|&i| v.coeffs()[i] < 0) {
            None => return Some(v),
            Some(i) => v = rs.reflect_weight(i, &v),
        }
    }
    None
}

/// Greedily peel dominant-led characters off a Weyl-invariant multiset.
pub fn decompose_character(
    rs: &RootSystem,
    mut ch: BTreeMap<Weight, i64>,
) -> Result<GrothendieckElement, RepError> {
    let mut out = GrothendieckElement::zero();
    loop {
        ch.retain(|_, v| *v != 0);
        let Some(top) = ch
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .max_by_key(|(w, _)| {
                w.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| c * rs.d(i))
                    .sum::<i64>()
            })
            .map(|(w, _)| w.clone())
        else {
            break;
        };
        let m = ch[&top];
        if m < 0 {
            return Err(RepError::InconsistentDecomposition);
        }
        for (w, k) in classical_weight_multiset(rs, &top) {
            *ch.entry(w).or_insert(0) -= m * k as i64;
        }
        out.insert(top, m);
    }
    if !ch.is_empty() {
        return Err(RepError::InconsistentDecomposition);
    }
    Ok(out)
}

/// Decompose with respect to the parabolic generated by `nodes`: returns
/// multiplicities of the `nodes`-dominant highest weights found by kernel
/// counting, with a dimension audit against the Levi Weyl formula.
pub fn decompose_levi(m: &WeightModule, nodes: &[usize]) -> Result<GrothendieckElement, RepError> {
    let mut out = GrothendieckElement::zero();
    let mut total = 0u64;
    for (w, _) in m.weight_spaces() {
        if nodes.iter().any(|&i| w.coeffs()[i] < 0) {
            continue;
        }
        let hw = highest_weight_vectors_levi(m, nodes, &w);
        if hw.cols() > 0 {
            total += hw.cols() as u64 * weyl_dimension_levi(&m.rs, nodes, &w);
            out.insert(w, hw.cols() as i64);
        }
    }
    if total != m.dim() as u64 {
        return Err(RepError::InconsistentDecomposition);
    }
    Ok(out)
}

pub fn decompose(m: &WeightModule) -> Result<GrothendieckElement, RepError> {
    let nodes: Vec<usize> = (0..m.rank()).collect();
    decompose_levi(m, &nodes)
}

/// Dimension of the simple module of the Levi subalgebra on `nodes` with
/// `nodes`-dominant highest weight `lambda` (ambient coordinates).
pub fn weyl_dimension_levi(rs: &RootSystem, nodes: &[usize], lambda: &Weight) -> u64 {
    let mut rho_s = Weight::zero(rs.rank());
    for &i in nodes {
        rho_s.0[i] = 1;
    }
    let lr = lambda.add(&rho_s);
    let mut acc = QRat::one();
    for beta in rs.positive_roots_supported(nodes) {
        let num = rs.weight_root_form(&lr, &beta);
        let den = rs.weight_root_form(&rho_s, &beta);
        acc *= QRat::new(BigInt::from(num), BigInt::from(den));
    }
    assert!(acc.is_integer());
    u64::try_from(acc.to_integer()).expect("dimension fits in u64")
}

/// Split a module into simple summands with respect to the Levi on `nodes`:
/// one `(highest weight, inclusion matrix)` pair per summand, in
/// deterministic order. The inclusions' columns are a basis of the module.
pub fn decompose_with_inclusions_levi(
    m: &WeightModule,
    nodes: &[usize],
) -> Result<Vec<(Weight, Matrix)>, RepError> {
    let mut parts: Vec<(Weight, Matrix)> = Vec::new();
    let mut total = 0usize;
    let mut space: Vec<(Weight, Matrix)> = m
        .weight_spaces()
        .into_iter()
        .map(|(w, _)| w)
        .filter(|w| nodes.iter().all(|&i| w.coeffs()[i] >= 0))
        .map(|w| {
            let hw = highest_weight_vectors_levi(m, nodes, &w);
            (w, hw)
        })
        .collect();
    // Process higher weights first so summand order is by descending height.
    space.sort_by_key(|(w, _)| {
        std::cmp::Reverse(
            w.coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| c * m.rs.d(i))
                .sum::<i64>(),
        )
    });
    for (w, hw) in space {
        for c in 0..hw.cols() {
            let cols = vec![c];
            let all_rows: Vec<usize> = (0..m.dim()).collect();
            let v = hw.submatrix(&all_rows, &cols);
            let inc = cyclic_span_levi(m, nodes, &v);
            total += inc.cols();
            parts.push((w.clone(), inc));
        }
    }
    if total != m.dim() {
        return Err(RepError::InconsistentDecomposition);
    }
    Ok(parts)
}

pub fn decompose_with_inclusions(m: &WeightModule) -> Result<Vec<(Weight, Matrix)>, RepError> {
    let nodes: Vec<usize> = (0..m.rank()).collect();
    decompose_with_inclusions_levi(m, &nodes)
}

/// Solve for all matrices `P` with `sum_k ops[k] vec(P) = 0` supported on
/// the allowed entry set; returns a deterministic basis.
fn solve_matrix_kernel(
    d: u32,
    rows: usize,
    cols: usize,
    ops: &[Matrix],
    allowed: &[(usize, usize)],
) -> Vec<Matrix> {
    let flat: Vec<usize> = allowed.iter().map(|&(i, j)| i * cols + j).collect();
    let stacked_refs: Vec<&Matrix> = ops.iter().collect();
    let stacked = Matrix::vstack(&stacked_refs);
    let restricted = stacked.columns(&flat);
    let kernel = restricted.kernel();
    (0..kernel.cols())
        .map(|c| {
            let mut p = Matrix::zeros(d, rows, cols);
            for (r, &(i, j)) in allowed.iter().enumerate() {
                p.set(i, j, kernel.get(r, c).clone());
            }
            p
        })
        .collect()
}

/// Invariant pairing `M (x) N -> C`: the matrix `P` with
/// `phi(u (x) v) = u^T P v` for the unique (up to scalar) module map to
/// the trivial module, normalized so its first nonzero entry is 1.
pub fn invariant_pairing(mneg: &WeightModule, mpos: &WeightModule) -> Result<Matrix, RepError> {
    same_context(mneg, mpos)?;
    let d = mneg.ctx.d();
    let allowed: Vec<(usize, usize)> = (0..mneg.dim())
        .flat_map(|i| (0..mpos.dim()).map(move |j| (i, j)))
        .filter(|&(i, j)| mneg.weights[i] == mpos.weights[j].neg())
        .collect();
    if allowed.is_empty() {
        return Err(RepError::NoInvariantPairing);
    }
    let idn = Matrix::identity(d, mneg.dim());
    let idp = Matrix::identity(d, mpos.dim());
    let mut ops = Vec::new();
    for i in 0..mneg.rank() {
        let alpha = mneg.rs.alpha_as_weight(i);
        // E_i: (E^M)^T P + (K^M)^T P E^N = 0
        let op_e = mneg.e[i]
            .transpose()
            .kron(&idp)
            .add(&mneg.k_action(&alpha).kron(&mpos.e[i].transpose()));
        // F_i: (F^M)^T P (K^N)^{-1} + P F^N = 0
        let op_f = mneg.f[i]
            .transpose()
            .kron(&mpos.k_action(&alpha.neg()).transpose())
            .add(&idn.kron(&mpos.f[i].transpose()));
        ops.push(op_e);
        ops.push(op_f);
    }
    let sols = solve_matrix_kernel(d, mneg.dim(), mpos.dim(), &ops, &allowed);
    match sols.len() {
        0 => Err(RepError::NoInvariantPairing),
        1 => {
            let p = &sols[0];
            let pivot = (0..p.rows())
                .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !p.get(i, j).is_zero())
                .expect("nonzero solution");
            let s = p.get(pivot.0, pivot.1).inv().unwrap();
            Ok(p.scale(&s))
        }
        _ => Err(RepError::PairingNotUnique),
    }
}

/// Basis of symmetric bilinear forms `G` on a module satisfying the
/// star-compatibility `(x u, w) = (u, x* w)`, i.e. for the generators
/// `E_i^T G = G K_i F_i` and `F_i^T G = G E_i K_i^{-1}`.
pub fn invariant_inner_products(m: &WeightModule) -> Vec<Matrix> {
    let d = m.ctx.d();
    let allowed: Vec<(usize, usize)> = (0..m.dim())
        .flat_map(|i| (0..m.dim()).map(move |j| (i, j)))
        .filter(|&(i, j)| m.weights[i] == m.weights[j])
        .collect();
    let id = Matrix::identity(d, m.dim());
    let mut ops = Vec::new();
    for i in 0..m.rank() {
        let alpha = m.rs.alpha_as_weight(i);
        let k = m.k_action(&alpha);
        let k_inv = m.k_action(&alpha.neg());
        let e_star = k.mul(&m.f[i]);
        let f_star = m.e[i].mul(&k_inv);
        ops.push(
            m.e[i]
                .transpose()
                .kron(&id)
                .sub(&id.kron(&e_star.transpose())),
        );
        ops.push(
            m.f[i]
                .transpose()
                .kron(&id)
                .sub(&id.kron(&f_star.transpose())),
        );
    }
    solve_matrix_kernel(d, m.dim(), m.dim(), &ops, &allowed)
}

/// Invariant inner product of a module that is simple (or isotypically
/// multiplicity-free with a chosen scale per summand): the first listed
/// scale multiplies the first summand in the deterministic decomposition
/// order, and so on.
pub fn invariant_inner_product(
    m: &WeightModule,
    scales: &[FieldElement],
) -> Result<Matrix, RepError> {
    let parts = decompose_with_inclusions(m)?;
    if parts.len() != scales.len() {
        return Err(RepError::NoInvariantForm);
    }
    let incs: Vec<&Matrix> = parts.iter().map(|(_, inc)| inc).collect();
    let p = Matrix::hstack(&incs);
    let p_inv = p.inverse().ok_or(RepError::InconsistentDecomposition)?;
    let d = m.ctx.d();
    let mut g = Matrix::zeros(d, m.dim(), m.dim());
    let mut row_off = 0;
    for ((_, inc), scale) in parts.iter().zip(scales) {
        let sub = submodule_from_basis(m, inc)?;
        let forms = invariant_inner_products(&sub);
        if forms.len() != 1 {
            return Err(RepError::NoInvariantForm);
        }
        let mut h = forms[0].clone();
        if h != h.transpose() {
            return Err(RepError::NoInvariantForm);
        }
        // Normalize so the first diagonal entry in the summand is 1.
        let pivot = (0..h.rows())
            .find(|&k| !h.get(k, k).is_zero())
            .ok_or(RepError::NoInvariantForm)?;
        h = h.scale(&h.get(pivot, pivot).inv().unwrap());
        let rows: Vec<usize> = (row_off..row_off + inc.cols()).collect();
        let all_cols: Vec<usize> = (0..m.dim()).collect();
        let proj = p_inv.submatrix(&rows, &all_cols);
        g = g.add(&proj.transpose().mul(&h).mul(&proj).scale(scale));
        row_off += inc.cols();
    }
    Ok(g)
}

/// The probe family: all constructible fundamental simple modules plus
/// their pairwise tensor products. Two symbolic elements that act equally
/// on every probe are declared equal.
pub fn probe_family(uq: &Uq) -> Vec<WeightModule> {
    let rs = uq.root_system();
    let mut fundamentals = Vec::new();
    for i in 0..rs.rank() {
        if fundamental_level(rs.typ(), rs.rank(), i).is_some() {
            let m = simple_module(uq, &Weight::fundamental(rs.rank(), i))
                .expect("reachable fundamental");
            fundamentals.push(m);
        }
    }
    let mut out = fundamentals.clone();
    for a in 0..fundamentals.len() {
        for b in a..fundamentals.len() {
            out.push(tensor(&fundamentals[a], &fundamentals[b]).unwrap());
        }
    }
    out
}

/// Equality of symbolic elements certified by action on a probe family.
pub fn probes_equal(probes: &[WeightModule], x: &AlgebraElement, y: &AlgebraElement) -> bool {
    probes.iter().all(|m| m.act(x) == m.act(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uq(t: Type, n: usize) -> Uq {
        Uq::new(RootSystem::new(t, n).unwrap())
    }

    #[test]
    fn rank_one_seed_matches_standard_matrices() {
        let u = uq(Type::A, 1);
        let m = seed_module(&u).unwrap();
        assert_eq!(m.dim(), 2);
        let one = u.scalars().one();
        assert_eq!(m.e_mat(0).get(0, 1), &one);
        assert!(m.e_mat(0).get(1, 0).is_zero());
        assert_eq!(m.f_mat(0).get(1, 0), &one);
        let k = m.k_action(&u.root_system().alpha_as_weight(0));
        assert_eq!(k.get(0, 0), &u.scalars().nu());
        assert_eq!(k.get(1, 1), &u.scalars().nu_pow_int(-1));
    }

    #[test]
    fn seed_modules_satisfy_relations_across_types() {
        for (t, n) in [
            (Type::A, 3),
            (Type::B, 2),
            (Type::B, 3),
            (Type::C, 2),
            (Type::C, 3),
            (Type::D, 4),
        ] {
            let u = uq(t, n);
            let m = seed_module(&u).unwrap();
            m.verify_relations().unwrap_or_else(|e| panic!("{t}{n}: {e}"));
        }
    }

    #[test]
    fn exceptional_seeds_are_rejected() {
        let u = uq(Type::G, 2);
        assert!(matches!(
            seed_module(&u),
            Err(RepError::UnsupportedType(_))
        ));
    }

    #[test]
    fn rank_one_four_dimensional_simple() {
        let u = uq(Type::A, 1);
        let m = simple_module(&u, &Weight(vec![3])).unwrap();
        assert_eq!(m.dim(), 4);
        m.verify_relations().unwrap();
        assert_eq!(
            m.weights().to_vec(),
            vec![
                Weight(vec![3]),
                Weight(vec![1]),
                Weight(vec![-1]),
                Weight(vec![-3])
            ]
        );
    }

    #[test]
    fn adjoint_simple_module_of_rank_two() {
        let u = uq(Type::A, 2);
        let m = simple_module(&u, &Weight(vec![1, 1])).unwrap();
        assert_eq!(m.dim(), 8);
        m.verify_relations().unwrap();
    }

    #[test]
    fn spin_weights_are_unreachable() {
        let u = uq(Type::B, 3);
        assert!(matches!(
            simple_module(&u, &Weight(vec![0, 0, 1])),
            Err(RepError::UnreachableWeight(_))
        ));
        let u = uq(Type::D, 4);
        assert!(matches!(
            simple_module(&u, &Weight(vec![0, 0, 0, 1])),
            Err(RepError::UnreachableWeight(_))
        ));
    }

    #[test]
    fn tensor_square_of_rank_one_decomposes() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vv = tensor(&v, &v).unwrap();
        let g = decompose(&vv).unwrap();
        assert_eq!(g.multiplicity(&Weight(vec![2])), 1);
        assert_eq!(g.multiplicity(&Weight(vec![0])), 1);
        assert_eq!(g.entries().count(), 2);
    }

    #[test]
    fn tensor_cube_of_rank_one_decomposes() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vvv = tensor_many(&[&v, &v, &v]).unwrap();
        let g = decompose(&vvv).unwrap();
        assert_eq!(g.multiplicity(&Weight(vec![3])), 1);
        assert_eq!(g.multiplicity(&Weight(vec![1])), 2);
    }

    #[test]
    fn evaluation_on_left_dual_is_a_module_map() {
        let u = uq(Type::A, 2);
        let v = seed_module(&u).unwrap();
        let vd = dual(&v);
        let t = tensor(&vd, &v).unwrap();
        // ev(phi_a (x) v_b) = delta_ab as a row vector.
        let d = u.scalars().d();
        let n = v.dim();
        let mut ev = Matrix::zeros(d, 1, n * n);
        for a in 0..n {
            ev.set(0, a * n + a, u.scalars().one());
        }
        for i in 0..u.rank() {
            assert!(ev.mul(t.e_mat(i)).is_zero(), "raising {i}");
            assert!(ev.mul(t.f_mat(i)).is_zero(), "lowering {i}");
        }
    }

    #[test]
    fn evaluation_on_right_dual_is_a_module_map() {
        let u = uq(Type::A, 2);
        let v = seed_module(&u).unwrap();
        let vd = right_dual(&v);
        let t = tensor(&v, &vd).unwrap();
        let d = u.scalars().d();
        let n = v.dim();
        let mut ev = Matrix::zeros(d, 1, n * n);
        for a in 0..n {
            ev.set(0, a * n + a, u.scalars().one());
        }
        for i in 0..u.rank() {
            assert!(ev.mul(t.e_mat(i)).is_zero(), "raising {i}");
            assert!(ev.mul(t.f_mat(i)).is_zero(), "lowering {i}");
        }
    }

    #[test]
    fn dual_of_rank_one_module_is_isomorphic_to_it() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vd = dual(&v);
        assert_eq!(decompose(&vd).unwrap(), decompose(&v).unwrap());
    }

    #[test]
    fn highest_weight_vector_counts() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vv = tensor(&v, &v).unwrap();
        assert_eq!(highest_weight_vectors(&vv, &Weight(vec![2])).cols(), 1);
        assert_eq!(highest_weight_vectors(&vv, &Weight(vec![0])).cols(), 1);
        assert_eq!(highest_weight_vectors(&v, &Weight(vec![-1])).cols(), 0);
    }

    #[test]
    fn invariant_pairing_of_dual_pair_matches_evaluation() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vd = dual(&v);
        let p = invariant_pairing(&vd, &v).unwrap();
        // The pairing must be a scalar multiple of evaluation: diagonal.
        assert!(!p.get(0, 0).is_zero());
        assert!(!p.get(1, 1).is_zero());
        assert!(p.get(0, 1).is_zero() && p.get(1, 0).is_zero());
    }

    #[test]
    fn inner_product_of_rank_one_seed_scales_by_q() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let g = invariant_inner_product(&v, &[u.scalars().one()]).unwrap();
        let q = u.scalars().nu();
        // (x2, x2) = q (x1, x1), off-diagonal zero.
        assert_eq!(g.get(0, 0), &u.scalars().one());
        assert_eq!(g.get(1, 1), &q);
        assert!(g.get(0, 1).is_zero());
    }

    #[test]
    fn grothendieck_product_matches_module_tensor() {
        let rs = RootSystem::new(Type::A, 2).unwrap();
        let u = Uq::new(rs.clone());
        let a = GrothendieckElement::simple(Weight(vec![1, 0]));
        let b = GrothendieckElement::simple(Weight(vec![0, 1]));
        let prod = a.mul(&b, &rs);
        // 3 (x) 3bar = 8 + 1.
        assert_eq!(prod.multiplicity(&Weight(vec![1, 1])), 1);
        assert_eq!(prod.multiplicity(&Weight(vec![0, 0])), 1);
        // Against the concrete modules.
        let v1 = simple_module(&u, &Weight(vec![1, 0])).unwrap();
        let v2 = simple_module(&u, &Weight(vec![0, 1])).unwrap();
        let t = tensor(&v1, &v2).unwrap();
        assert_eq!(decompose(&t).unwrap(), prod);
    }

    #[test]
    fn classical_characters_have_correct_sizes() {
        let rs = RootSystem::new(Type::A, 2).unwrap();
        let ch = classical_weight_multiset(&rs, &Weight(vec![1, 1]));
        let total: u64 = ch.values().sum();
        assert_eq!(total, 8);
        assert_eq!(ch[&Weight(vec![0, 0])], 2);
        let rs = RootSystem::new(Type::B, 2).unwrap();
        let ch = classical_weight_multiset(&rs, &Weight(vec![1, 0]));
        let total: u64 = ch.values().sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn levi_decomposition_of_adjoint() {
        let u = uq(Type::A, 2);
        let m = simple_module(&u, &Weight(vec![1, 1])).unwrap();
        // Restrict to the Levi on node 1 only: 8 = five summands.
        let g = decompose_levi(&m, &[1]).unwrap();
        let dims: i64 = g
            .entries()
            .map(|(w, k)| k * weyl_dimension_levi(&m.rs, &[1], w) as i64)
            .sum();
        assert_eq!(dims, 8);
    }

    #[test]
    fn probe_equality_certifies_serre() {
        let u = uq(Type::A, 2);
        let probes = probe_family(&u);
        assert_eq!(probes.len(), 5);
        // The quantum Serre element acts as zero though it is not the zero
        // normal form.
        let q = u.qi(0);
        let two = &q + &q.inv().unwrap();
        let serre = u
            .e_word(&[0, 0, 1])
            .sub(&u.e_word(&[0, 1, 0]).scale(&two))
            .add(&u.e_word(&[1, 0, 0]));
        assert!(!serre.is_zero());
        assert!(probes_equal(&probes, &serre, &u.zero()));
        // And a genuinely nonzero element is not declared zero.
        assert!(!probes_equal(&probes, &u.e(0), &u.zero()));
    }

    #[test]
    fn cyclic_submodule_of_tensor_square() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vv = tensor(&v, &v).unwrap();
        let hw = highest_weight_vectors(&vv, &Weight(vec![2]));
        let (sub, inc) = cyclic_submodule(&vv, &hw, Some(Weight(vec![2]))).unwrap();
        assert_eq!(sub.dim(), 3);
        assert_eq!(inc.cols(), 3);
        sub.verify_relations().unwrap();
    }
}
