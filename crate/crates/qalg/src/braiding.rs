//! Braidings, coboundary commutors, and the cactus-group action on tensor
//! powers.
//!
//! The braiding comes from the explicit quasi-R-matrix sum over tuples of
//! divided powers of quantum root vectors, truncated by nilpotency, followed
//! by the diagonal weight correction `nu^{(wt u, wt v)}` and the flip. The
//! commutor multiplies the braiding by a weight-correction operator `A`
//! obtained as a Lagrange polynomial in the double braiding, never by
//! operator square roots: over the exact field there is no polar
//! decomposition, and interpolation through the known isotypic eigenvalues
//! is the algebraic substitute.
//!
//! Everything takes an explicit node subset so the same machinery serves the
//! full quantized enveloping algebra and its Levi subalgebras; the weight
//! correction always uses the ambient form because the torus stays whole.

use crate::linalg::Matrix;
use crate::rep::{
    decompose_levi, decompose_with_inclusions_levi, tensor, RepError, WeightModule,
};
use crate::roots::Weight;
use crate::scalar::FieldElement;
use crate::uq::{Uq, UqError};
use num::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("two isotypic eigenvalues coincide; interpolation impossible")]
    EigenvalueCollision,
    #[error("slot indices out of range")]
    IndexOutOfRange,
    #[error("module is not simple (no highest-weight label)")]
    NotSimple,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Uq(#[from] UqError),
}

/// A linear map between two concrete modules, stored as sources, targets,
/// and an exact matrix.
#[derive(Clone, Debug)]
pub struct LinearMap {
    source: WeightModule,
    target: WeightModule,
    mat: Matrix,
}

impl LinearMap {
    pub fn new(source: WeightModule, target: WeightModule, mat: Matrix) -> LinearMap {
        assert_eq!(mat.cols(), source.dim());
        assert_eq!(mat.rows(), target.dim());
        LinearMap {
            source,
            target,
            mat,
        }
    }

    pub fn source(&self) -> &WeightModule {
        &self.source
    }

    pub fn target(&self) -> &WeightModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(other.target.dim(), self.source.dim());
        LinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            mat: self.mat.mul(&other.mat),
        }
    }

    /// Does the map intertwine the raising and lowering action of the
    /// listed nodes (and the whole torus, via weight homogeneity)?
    pub fn is_module_map_for(&self, nodes: &[usize]) -> bool {
        for &i in nodes {
            if self.mat.mul(self.source.e_mat(i)) != self.target.e_mat(i).mul(&self.mat) {
                return false;
            }
            if self.mat.mul(self.source.f_mat(i)) != self.target.f_mat(i).mul(&self.mat) {
                return false;
            }
        }
        for r in 0..self.mat.rows() {
            for c in 0..self.mat.cols() {
                if !self.mat.get(r, c).is_zero()
                    && self.target.weight(r) != self.source.weight(c)
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_module_map(&self) -> bool {
        let nodes: Vec<usize> = (0..self.source.rank()).collect();
        self.is_module_map_for(&nodes)
    }
}

fn check_context(a: &WeightModule, b: &WeightModule) -> Result<(), BraidError> {
    if a.scalars().d() != b.scalars().d() || a.root_system().cartan() != b.root_system().cartan() {
        return Err(BraidError::Rep(RepError::ContextMismatch));
    }
    Ok(())
}

/// Flip matrix `u (x) v -> v (x) u` for dimensions `(du, dv)`.
fn flip_matrix(d: u32, du: usize, dv: usize, ctx_one: &FieldElement) -> Matrix {
    let mut t = Matrix::zeros(d, du * dv, du * dv);
    for a in 0..du {
        for b in 0..dv {
            t.set(b * du + a, a * dv + b, ctx_one.clone());
        }
    }
    t
}

fn matrix_powers_until_zero(m: &Matrix, cap: usize) -> Vec<Matrix> {
    let mut pows = vec![Matrix::identity(m.d(), m.rows())];
    while !pows.last().unwrap().is_zero() && pows.len() <= cap {
        pows.push(pows.last().unwrap().mul(m));
    }
    assert!(
        pows.last().unwrap().is_zero(),
        "root vector action must be nilpotent"
    );
    pows
}

/// The braiding `R-hat: U (x) V -> V (x) U` relative to the subalgebra
/// generated by the listed nodes and the whole torus.
pub fn braiding_levi(
    u: &WeightModule,
    v: &WeightModule,
    nodes: &[usize],
) -> Result<LinearMap, BraidError> {
    check_context(u, v)?;
    let rs = u.root_system().clone();
    let ctx = u.scalars();
    let d = ctx.d();
    let all: Vec<usize> = (0..rs.rank()).collect();
    let word = if nodes == all.as_slice() {
        rs.longest_word()
    } else {
        rs.longest_word_levi(nodes)
    };
    let uqa = Uq::with_denominator(rs.clone(), d)?;
    let evecs = uqa.quantum_root_vectors(&word)?;
    let fvecs = uqa.quantum_root_vectors_f(&word)?;
    let chain = rs.roots_from_word(&word);
    let du = u.dim();
    let dv = v.dim();
    // Per chain position: action powers and scalar coefficients.
    let mut fpows = Vec::new();
    let mut epows = Vec::new();
    let mut coeffs: Vec<Vec<FieldElement>> = Vec::new();
    for j in 0..chain.len() {
        let fu = u.act(&fvecs[j]);
        let ev = v.act(&evecs[j]);
        let fp = matrix_powers_until_zero(&fu, du + 1);
        let ep = matrix_powers_until_zero(&ev, dv + 1);
        let tmax = fp.len().min(ep.len()) - 1;
        let db = rs.root_norm_half(&chain[j]);
        let base = &ctx.one() - &ctx.nu_pow_int(-2 * db);
        let mut cj = Vec::with_capacity(tmax);
        for t in 0..tmax as i64 {
            let c = base
                .pow(t)
                .unwrap()
                .div(&ctx.qfact(t as u32, db as u32))
                .unwrap();
            cj.push(&c * &ctx.nu_pow_int(db * t * (t + 1) / 2));
        }
        fpows.push(fp);
        epows.push(ep);
        coeffs.push(cj);
    }
    // Sum over tuples, accumulating the ordered products left-to-right as
    // the chain index grows (later chain roots multiply on the left).
    let mut quasi = Matrix::zeros(d, du * dv, du * dv);
    struct Frame {
        j: usize,
        accf: Matrix,
        acce: Matrix,
        coeff: FieldElement,
    }
    let mut stack = vec![Frame {
        j: 0,
        accf: Matrix::identity(d, du),
        acce: Matrix::identity(d, dv),
        coeff: ctx.one(),
    }];
    while let Some(fr) = stack.pop() {
        if fr.j == chain.len() {
            quasi = quasi.add(&fr.accf.kron(&fr.acce).scale(&fr.coeff));
            continue;
        }
        for t in 0..coeffs[fr.j].len() {
            let coeff = &fr.coeff * &coeffs[fr.j][t];
            if coeff.is_zero() {
                continue;
            }
            stack.push(Frame {
                j: fr.j + 1,
                accf: fr.accf.mul(&fpows[fr.j][t]),
                acce: fr.acce.mul(&epows[fr.j][t]),
                coeff,
            });
        }
    }
    // Diagonal weight correction, then flip.
    let mut bmat = Matrix::zeros(d, du * dv, du * dv);
    for a in 0..du {
        for b in 0..dv {
            let e = rs.weight_form(u.weight(a), v.weight(b));
            bmat.set(
                a * dv + b,
                a * dv + b,
                ctx.nu_pow_rat(&e)
                    .expect("weight pairing fits the scalar denominator"),
            );
        }
    }
    let tau = flip_matrix(d, du, dv, &ctx.one());
    let mat = tau.mul(&bmat).mul(&quasi);
    Ok(LinearMap::new(tensor(u, v)?, tensor(v, u)?, mat))
}

pub fn braiding(u: &WeightModule, v: &WeightModule) -> Result<LinearMap, BraidError> {
    let nodes: Vec<usize> = (0..u.rank()).collect();
    braiding_levi(u, v, &nodes)
}

/// Exponent data of the double braiding on `V(lambda) (x) V(lambda')`: one
/// `(mu, nu^{e_mu})` entry per constituent, pairwise distinct.
pub fn double_braiding_eigendata_levi(
    u: &WeightModule,
    v: &WeightModule,
    nodes: &[usize],
) -> Result<Vec<(Weight, FieldElement)>, BraidError> {
    check_context(u, v)?;
    let lam = u.label().ok_or(BraidError::NotSimple)?.clone();
    let lam2 = v.label().ok_or(BraidError::NotSimple)?.clone();
    let t = tensor(u, v)?;
    let g = decompose_levi(&t, nodes)?;
    let rs = u.root_system();
    let ctx = u.scalars();
    let positive = rs.positive_roots_supported(nodes);
    let base = rs.casimir_exponent_relative(&lam, &positive)
        + rs.casimir_exponent_relative(&lam2, &positive);
    let mut out = Vec::new();
    for (mu, _m) in g.entries() {
        let e = rs.casimir_exponent_relative(mu, &positive) - &base;
        let s = ctx
            .nu_pow_rat(&e)
            .expect("double-braiding exponent fits the scalar denominator");
        out.push((mu.clone(), s));
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if out[i].1 == out[j].1 {
                return Err(BraidError::EigenvalueCollision);
            }
        }
    }
    Ok(out)
}

pub fn double_braiding_eigendata(
    u: &WeightModule,
    v: &WeightModule,
) -> Result<Vec<(Weight, FieldElement)>, BraidError> {
    let nodes: Vec<usize> = (0..u.rank()).collect();
    double_braiding_eigendata_levi(u, v, &nodes)
}

/// Lagrange interpolation: the polynomial in `m` taking value `target_i`
/// on the `x_i`-eigenspace, as an exact matrix.
fn lagrange_in_matrix(m: &Matrix, pairs: &[(FieldElement, FieldElement)]) -> Matrix {
    let d = m.d();
    let n = m.rows();
    let mut acc = Matrix::zeros(d, n, n);
    for (i, (xi, ti)) in pairs.iter().enumerate() {
        let mut term = Matrix::identity(d, n);
        for (j, (xj, _)) in pairs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = (xi - xj).inv().expect("distinct interpolation nodes");
            let mut shift = m.clone();
            for k in 0..n {
                shift.set(k, k, shift.get(k, k) - xj);
            }
            term = term.mul(&shift.scale(&denom));
        }
        acc = acc.add(&term.scale(ti));
    }
    acc
}

/// Constituent weights of the span of `cols` (inside `t`), with respect to
/// the Levi on `nodes`: highest-weight vectors are counted inside the span.
fn block_constituents(t: &WeightModule, nodes: &[usize], cols: &Matrix) -> Vec<(Weight, usize)> {
    // Column weights.
    let mut col_weights = Vec::with_capacity(cols.cols());
    for c in 0..cols.cols() {
        let r = (0..t.dim())
            .find(|&r| !cols.get(r, c).is_zero())
            .expect("block basis column is nonzero");
        col_weights.push(t.weight(r).clone());
    }
    let mut seen: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (c, w) in col_weights.iter().enumerate() {
        seen.entry(w.clone()).or_default().push(c);
    }
    let mut out = Vec::new();
    for (w, idx) in seen {
        if nodes.iter().any(|&i| w.coeffs()[i] < 0) {
            continue;
        }
        let all_rows: Vec<usize> = (0..t.dim()).collect();
        let sub = cols.submatrix(&all_rows, &idx);
        let stacked: Vec<Matrix> = nodes.iter().map(|&i| t.e_mat(i).mul(&sub)).collect();
        let k = if stacked.is_empty() {
            sub.cols()
        } else {
            let refs: Vec<&Matrix> = stacked.iter().collect();
            Matrix::vstack(&refs).kernel().cols()
        };
        if k > 0 {
            out.push((w, k));
        }
    }
    out
}

/// The coboundary commutor `sigma: U (x) V -> V (x) U` relative to the Levi
/// on `nodes`: the braiding times the interpolated weight correction,
/// assembled blockwise over pairs of simple summands.
pub fn commutor_levi(
    u: &WeightModule,
    v: &WeightModule,
    nodes: &[usize],
) -> Result<LinearMap, BraidError> {
    let rhat = braiding_levi(u, v, nodes)?;
    let rback = braiding_levi(v, u, nodes)?;
    let db = rback.matrix().mul(rhat.matrix());
    let rs = u.root_system();
    let ctx = u.scalars();
    let positive = rs.positive_roots_supported(nodes);
    let dec_u = decompose_with_inclusions_levi(u, nodes)?;
    let dec_v = decompose_with_inclusions_levi(v, nodes)?;
    let t = rhat.source();
    let mut embed_cols: Vec<Matrix> = Vec::new();
    let mut image_cols: Vec<Matrix> = Vec::new();
    for (lam_a, inc_a) in &dec_u {
        for (lam_b, inc_b) in &dec_v {
            let c = inc_a.kron(inc_b);
            let dbc = db.mul(&c);
            let db_block = c
                .solve(&dbc)
                .expect("double braiding preserves summand blocks");
            let base = rs.casimir_exponent_relative(lam_a, &positive)
                + rs.casimir_exponent_relative(lam_b, &positive);
            // Distinct constituents may share a casimir exponent; equal
            // eigenvalues force equal interpolation targets, so such
            // constituents collapse to a single interpolation node.
            let mut pairs: Vec<(FieldElement, FieldElement)> = Vec::new();
            for (mu, _mult) in block_constituents(t, nodes, &c) {
                let e = rs.casimir_exponent_relative(&mu, &positive) - &base;
                let x = ctx
                    .nu_pow_rat(&e)
                    .expect("double-braiding exponent fits the scalar denominator");
                let half = -e / num::BigRational::from_integer(BigInt::from(2));
                let target = ctx
                    .nu_pow_rat(&half)
                    .expect("commutor exponent fits the scalar denominator");
                if let Some(prev) = pairs.iter().find(|(px, _)| *px == x) {
                    if prev.1 != target {
                        return Err(BraidError::EigenvalueCollision);
                    }
                } else {
                    pairs.push((x, target));
                }
            }
            let a_block = lagrange_in_matrix(&db_block, &pairs);
            embed_cols.push(c.clone());
            image_cols.push(c.mul(&a_block));
        }
    }
    let p_refs: Vec<&Matrix> = embed_cols.iter().collect();
    let p = Matrix::hstack(&p_refs);
    let p_inv = p.inverse().expect("summand embeddings are a basis");
    let img_refs: Vec<&Matrix> = image_cols.iter().collect();
    let a = Matrix::hstack(&img_refs).mul(&p_inv);
    Ok(LinearMap::new(
        rhat.source().clone(),
        rhat.target().clone(),
        rhat.matrix().mul(&a),
    ))
}

pub fn commutor(u: &WeightModule, v: &WeightModule) -> Result<LinearMap, BraidError> {
    let nodes: Vec<usize> = (0..u.rank()).collect();
    commutor_levi(u, v, &nodes)
}

/// The cactus generator `s_{p,t}` on `V^{(x) n}` (1-based slots), defined
/// recursively: adjacent generators are the commutor, and
/// `s_{p,t} = sigma_{p,(p+1..t)} o s_{p+1,t}`.
pub fn cactus_generator(
    v: &WeightModule,
    n: usize,
    p: usize,
    t: usize,
) -> Result<LinearMap, BraidError> {
    if !(1 <= p && p < t && t <= n) {
        return Err(BraidError::IndexOutOfRange);
    }
    let d = v.scalars().d();
    let dv = v.dim();
    // Tensor powers 1..n.
    let mut powers: Vec<WeightModule> = vec![v.clone()];
    for _ in 1..n {
        powers.push(tensor(powers.last().unwrap(), v)?);
    }
    let full = powers[n - 1].clone();
    let embed = |mat: &Matrix, pre: usize, post: usize| -> Matrix {
        let left = Matrix::identity(d, dv.pow(pre as u32));
        let right = Matrix::identity(d, dv.pow(post as u32));
        left.kron(mat).kron(&right)
    };
    // sigma_{V, V^{(x) k}} cache.
    let mut sig: Vec<Option<Matrix>> = vec![None; n];
    let mut sigma_block = |k: usize, powers: &[WeightModule]| -> Result<Matrix, BraidError> {
        if sig[k].is_none() {
            let s = commutor(v, &powers[k - 1])?;
            sig[k] = Some(s.matrix().clone());
        }
        Ok(sig[k].clone().unwrap())
    };
    let mut acc = Matrix::identity(d, full.dim());
    // Unroll the recursion: s_{p,t} = sigma_{p,(p+1..t)} o sigma_{p+1,(p+2..t)} o ... o sigma_{t-1,t}.
    for q in (p..t).rev() {
        let block = sigma_block(t - q, &powers)?;
        acc = embed(&block, q - 1, n - t).mul(&acc);
    }
    Ok(LinearMap::new(full.clone(), full, acc))
}
