//! Koszul boundary element and the Dolbeault-Dirac operator.
//!
//! The quantum symmetric algebra S_q(u_+) and the quantum exterior
//! algebra of the dual are Koszul dual, and the element
//! `e = sum_i x_i (x) y_i` of `S_q(u_+)^op (x) Lambda_q(u_-)` squares to
//! zero and is independent of the chosen dual bases. Mapping the first
//! leg into U_q(g) through `x_i -> S^{-1}(E_{xi_i})` and the second leg
//! into Clifford annihilation operators turns `e` into the Dolbeault
//! operator `eth` acting on `W (x) Lambda_q(u_+)` for any finite
//! dimensional module W. Together with its adjoint it yields the Dirac
//! operator `D = eth + eth*` with `D^2 = eth eth* + eth* eth`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clifford::{CliffError, CominusculeContext, StarStructure};
use crate::linalg::Matrix;
use crate::quadratic::{QuadError, QuadraticAlgebra};
use crate::rep::{self, RepError, WeightModule};
use crate::scalar::FieldElement;

#[derive(Debug, Error)]
pub enum DiracError {
    #[error("koszul boundary element has nonzero square")]
    NonzeroSquare,
    #[error("module carries no canonical invariant inner product")]
    MissingInnerProduct,
    #[error("operator identity fails: {0}")]
    IdentityFails(&'static str),
    #[error("specialization hits a pole or degenerate metric at the requested parameter")]
    PoleAtParameter,
    #[error(transparent)]
    Cliff(#[from] CliffError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Element of `S_q(u_+)^op (x) Lambda_q(u_-)` stored in normal form:
/// monomial keys are (weakly increasing symmetric word, strictly
/// increasing exterior subset) and zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement {
    terms: BTreeMap<(Vec<usize>, Vec<usize>), FieldElement>,
}

impl KoszulElement {
    pub fn zero() -> KoszulElement {
        KoszulElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, sym: Vec<usize>, ext: Vec<usize>, c: FieldElement) {
        assert!(sym.windows(2).all(|w| w[0] <= w[1]), "symmetric word must be sorted");
        assert!(ext.windows(2).all(|w| w[0] < w[1]), "exterior word must be strict");
        if c.is_zero() {
            return;
        }
        let key = (sym, ext);
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &FieldElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The canonical boundary element `sum_i x_i (x) y_i` over the dual
/// generator bases of the radical and its dual.
pub fn koszul_boundary(ctx: &CominusculeContext) -> KoszulElement {
    let mut e = KoszulElement::zero();
    for i in 0..ctx.radical_rank() {
        e.add_term(vec![i], vec![i], ctx.scalars().one());
    }
    e
}

/// The same element expanded from the transformed dual pair
/// `x'_j = sum_a P_{aj} x_a`, `y'_j = sum_b (P^{-T})_{bj} y_b`; equal to
/// [`koszul_boundary`] for every invertible `P`.
pub fn koszul_boundary_in_basis(ctx: &CominusculeContext, p: &Matrix) -> KoszulElement {
    let n = ctx.radical_rank();
    assert_eq!(p.rows(), n);
    assert_eq!(p.cols(), n);
    let q = p
        .inverse()
        .expect("change of basis must be invertible")
        .transpose();
    let mut e = KoszulElement::zero();
    for j in 0..n {
        for a in 0..n {
            if p.get(a, j).is_zero() {
                continue;
            }
            for b in 0..n {
                e.add_term(vec![a], vec![b], p.get(a, j) * q.get(b, j));
            }
        }
    }
    e
}

/// Check `e^2 = 0` exactly in `S^2_q(u_+) (x) Lambda^2_q(u_-)`: the sum
/// over all pairs of `(x_i x_j under opposite multiplication, reduced to
/// ordered symmetric monomials) (x) (y_i y_j reduced in the exterior
/// algebra)` must vanish coefficientwise.
pub fn verify_eth_squared_zero(ctx: &CominusculeContext) -> Result<(), DiracError> {
    let n = ctx.radical_rank();
    if n < 2 {
        // The exterior square of a line is zero, so e^2 vanishes for free.
        return Ok(());
    }
    let sym = QuadraticAlgebra::symmetric_levi(ctx.u_plus(), ctx.levi_nodes())?;
    let rules = sym.rewrite_to_ordered()?.rules;
    let ordered: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let sym_index: BTreeMap<(usize, usize), usize> = ordered
        .iter()
        .enumerate()
        .map(|(k, &ab)| (ab, k))
        .collect();

    let minus = ctx.minus_algebra();
    let ext_range = minus.degree_range(2);
    let d = ctx.scalars().d();
    let mut acc = Matrix::zeros(d, ordered.len(), ext_range.len());
    let gen_idx: Vec<usize> = (0..n)
        .map(|i| minus.index_of(&[i]).expect("generator subset"))
        .collect();

    for i in 0..n {
        for j in 0..n {
            // Opposite multiplication on the symmetric leg: x_i *op x_j
            // is the word (j, i) in S_q(u_+).
            let sym_terms: Vec<((usize, usize), FieldElement)> = if j <= i {
                vec![((j, i), ctx.scalars().one())]
            } else {
                rules.get(&(j, i)).expect("disordered pair has a rule").clone()
            };
            let ext_terms = minus.product_basis(gen_idx[i], gen_idx[j]);
            for (pair, sc) in &sym_terms {
                let row = sym_index[pair];
                for (t, ec) in ext_terms {
                    debug_assert!(ext_range.contains(t));
                    let col = t - ext_range.start;
                    let v = acc.get(row, col) + &(sc * ec);
                    acc.set(row, col, v);
                }
            }
        }
    }
    if acc.is_zero() {
        Ok(())
    } else {
        Err(DiracError::NonzeroSquare)
    }
}

/// Dolbeault and Dirac operators on `W (x) Lambda_q(u_+)` together with
/// the invariant inner product they are adjoint under.
#[derive(Clone, Debug)]
pub struct DiracMatrix {
    w_dim: usize,
    cl_dim: usize,
    eth: Matrix,
    eth_star: Matrix,
    dirac: Matrix,
    gram: Matrix,
}

impl DiracMatrix {
    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    pub fn cl_dim(&self) -> usize {
        self.cl_dim
    }

    pub fn dim(&self) -> usize {
        self.w_dim * self.cl_dim
    }

    pub fn eth(&self) -> &Matrix {
        &self.eth
    }

    pub fn eth_star(&self) -> &Matrix {
        &self.eth_star
    }

    pub fn d(&self) -> &Matrix {
        &self.dirac
    }

    /// Inner product on `W (x) Lambda_q(u_+)` (tensor product of the
    /// normalized invariant form on W with the Clifford star metric).
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }
}

/// Build `eth = sum_i S^{-1}(E_{xi_i}) (x) gamma_-(y_i)` on
/// `W (x) Lambda_q(u_+)`, its adjoint for the given Clifford star
/// structure, and their sum `D`.
pub fn dirac_element(
    ctx: &CominusculeContext,
    w: &WeightModule,
    star: &StarStructure,
) -> Result<DiracMatrix, DiracError> {
    assert_eq!(w.scalars().d(), ctx.scalars().d(), "scalar fields must agree");
    let forms = rep::invariant_inner_products(w);
    if forms.len() != 1 {
        return Err(DiracError::MissingInnerProduct);
    }
    let mut g = forms.into_iter().next().unwrap();
    let pivot = (0..w.dim())
        .find(|&i| !g.get(i, i).is_zero())
        .ok_or(DiracError::MissingInnerProduct)?;
    let scale = g.get(pivot, pivot).inv().expect("nonzero pivot");
    g = g.scale(&scale);
    let g_inv = g.inverse().ok_or(DiracError::MissingInnerProduct)?;

    let n = ctx.radical_rank();
    let dim = w.dim() * ctx.plus_algebra().dim();
    let d = ctx.scalars().d();
    let mut eth = Matrix::zeros(d, dim, dim);
    let mut eth_star = Matrix::zeros(d, dim, dim);
    for i in 0..n {
        let a = w.act(&ctx.uq().antipode_inv(ctx.schubert_generator(i)));
        let c = ctx.annihilation_generator(i);
        let a_star = g_inv.mul(&a.transpose()).mul(&g);
        eth = eth.add(&a.kron(&c));
        eth_star = eth_star.add(&a_star.kron(&star.adjoint(&c)));
    }
    let dirac = eth.add(&eth_star);
    Ok(DiracMatrix {
        w_dim: w.dim(),
        cl_dim: ctx.plus_algebra().dim(),
        eth,
        eth_star,
        dirac,
        gram: g.kron(star.gram()),
    })
}

/// [`dirac_element`] with the default star structure: the degreewise
/// tensor extension of the invariant form on u_+ with unit scales.
pub fn dirac_element_default(
    ctx: &CominusculeContext,
    w: &WeightModule,
) -> Result<DiracMatrix, DiracError> {
    let star = ctx.star_preset_a()?;
    dirac_element(ctx, w, &star)
}

/// Exact matrix checks `eth^2 = 0`, `(eth*)^2 = 0`, and
/// `D^2 = eth eth* + eth* eth`.
pub fn verify_dirac_square(dm: &DiracMatrix) -> Result<(), DiracError> {
    if !dm.eth.mul(&dm.eth).is_zero() {
        return Err(DiracError::IdentityFails("eth squared is nonzero"));
    }
    if !dm.eth_star.mul(&dm.eth_star).is_zero() {
        return Err(DiracError::IdentityFails("eth star squared is nonzero"));
    }
    let lhs = dm.dirac.mul(&dm.dirac);
    let rhs = dm.eth.mul(&dm.eth_star).add(&dm.eth_star.mul(&dm.eth));
    if !lhs.sub(&rhs).is_zero() {
        return Err(DiracError::IdentityFails("dirac square is not the anticommutator"));
    }
    Ok(())
}

/// Eigenvalues of `D^2` specialized at `nu = q0`, sorted ascending.
///
/// `D^2` is self adjoint for the stored inner product, so it is
/// symmetrized by conjugating with the metric square root before the
/// eigenvalue iteration; the residual asymmetry must stay below the
/// 1e-10 numeric tolerance.
pub fn dirac_spectrum(dm: &DiracMatrix, q0: f64) -> Result<Vec<f64>, DiracError> {
    let d2 = dm.dirac.mul(&dm.dirac);
    let d2n = specialize_matrix(&d2, q0)?;
    let gn = specialize_matrix(&dm.gram, q0)?;
    let n = d2n.len();

    let (gvals, gvecs) = jacobi_eigen(&symmetrize(&gn));
    let gscale = gvals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    if gvals.iter().any(|&l| l <= 1e-12 * gscale) {
        return Err(DiracError::PoleAtParameter);
    }
    let half = metric_power(&gvals, &gvecs, 0.5);
    let half_inv = metric_power(&gvals, &gvecs, -0.5);
    let s = matf_mul(&matf_mul(&half, &d2n), &half_inv);

    let mut scale = 1.0f64;
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(s[i][j].abs());
            dev = dev.max((s[i][j] - s[j][i]).abs());
        }
    }
    if dev > 1e-10 * scale {
        return Err(DiracError::IdentityFails("conjugated square is not symmetric"));
    }
    let (mut vals, _) = jacobi_eigen(&symmetrize(&s));
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}

fn specialize_matrix(m: &Matrix, q0: f64) -> Result<Vec<Vec<f64>>, DiracError> {
    let mut out = vec![vec![0.0f64; m.cols()]; m.rows()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[i][j] = m
                .get(i, j)
                .specialize_f64(q0)
                .map_err(|_| DiracError::PoleAtParameter)?;
        }
    }
    Ok(out)
}

fn symmetrize(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut s = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            s[i][j] = 0.5 * (a[i][j] + a[j][i]);
        }
    }
    s
}

fn matf_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0.0f64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            if ail == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

fn metric_power(vals: &[f64], vecs: &[Vec<f64>], e: f64) -> Vec<Vec<f64>> {
    let n = vals.len();
    let mut out = vec![vec![0.0f64; n]; n];
    for k in 0..n {
        let lk = vals[k].powf(e);
        for i in 0..n {
            for j in 0..n {
                out[i][j] += vecs[i][k] * lk * vecs[j][k];
            }
        }
    }
    out
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix; returns
/// eigenvalues and the orthogonal eigenvector columns.
fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut a = a.to_vec();
    let mut v = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        v[i][i] = 1.0;
    }
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    for _ in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| a[i][i]).collect();
    (vals, v)
}
