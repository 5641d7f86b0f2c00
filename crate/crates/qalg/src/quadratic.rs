//! Quantum symmetric and exterior squares, the quadratic algebras they
//! generate, Hilbert series, flatness certification, quadratic duality, and
//! the degree-3 collapsing comparison in the Grothendieck ring.
//!
//! All ranks and kernels are computed over the exact scalar field, so a
//! "generic" statement here means: true at formal `nu`. Numeric reruns at
//! special algebraic values can disagree and are a CLI concern, not this
//! module's.

use crate::braiding::{commutor_levi, BraidError};
use crate::linalg::Matrix;
use crate::rep::{
    decompose, decompose_character, submodule_from_basis, tensor_many, GrothendieckElement,
    RepError, WeightModule,
};
use crate::roots::Weight;
use crate::scalar::FieldElement;
use std::collections::BTreeMap;
use thiserror::Error;

/// Hard guard on the ambient tensor-power dimension for rank computations.
pub const DIMENSION_GUARD: usize = 20_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("tensor power dimension {0} exceeds the configured guard")]
    DegreeTooLarge(usize),
    #[error("ordered monomials do not complement the relation space")]
    NonGeneric,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Symmetric,
    Exterior,
}

/// A quadratic algebra `T(V)/<R>` presented by a generator module and a
/// basis of the relation subspace `R` inside `V (x) V`.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    v: WeightModule,
    nodes: Vec<usize>,
    kind: AlgebraKind,
    relations: Matrix,
}

/// Graded dimensions `h_0 .. h_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub dims: Vec<u64>,
}

/// Rewriting rules: each disordered quadratic monomial (pair of generator
/// indices) expressed over the ordered monomials.
#[derive(Clone, Debug)]
pub struct RewriteTable {
    pub rules: BTreeMap<(usize, usize), Vec<((usize, usize), FieldElement)>>,
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub flat: bool,
    pub witness_degree: Option<usize>,
    pub pbw_certified: bool,
    /// Rows of `(degree, quantum dimension, classical dimension)`.
    pub rows: Vec<(usize, u64, u64)>,
}

#[derive(Clone, Debug)]
pub struct CollapseReport {
    pub quantum: GrothendieckElement,
    pub classical: GrothendieckElement,
    pub equal: bool,
}

fn guard(dim: usize) -> Result<(), QuadError> {
    if dim > DIMENSION_GUARD {
        return Err(QuadError::DegreeTooLarge(dim));
    }
    Ok(())
}

/// Eigenspace basis of the commutor on `V (x) V` for eigenvalue `sign`.
fn commutor_eigenspace(
    v: &WeightModule,
    nodes: &[usize],
    sign: i64,
) -> Result<Matrix, QuadError> {
    let sigma = commutor_levi(v, v, nodes)?;
    let n = v.dim() * v.dim();
    let mut shifted = sigma.matrix().clone();
    let s = if sign >= 0 {
        v.scalars().one()
    } else {
        -&v.scalars().one()
    };
    for k in 0..n {
        shifted.set(k, k, shifted.get(k, k) - &s);
    }
    Ok(shifted.kernel())
}

/// Quantum symmetric square: the fixed space of the commutor.
pub fn sym_square_levi(v: &WeightModule, nodes: &[usize]) -> Result<Matrix, QuadError> {
    commutor_eigenspace(v, nodes, 1)
}

/// Quantum exterior square: the `-1` eigenspace of the commutor.
pub fn ext_square_levi(v: &WeightModule, nodes: &[usize]) -> Result<Matrix, QuadError> {
    commutor_eigenspace(v, nodes, -1)
}

pub fn sym_square(v: &WeightModule) -> Result<Matrix, QuadError> {
    let nodes: Vec<usize> = (0..v.rank()).collect();
    sym_square_levi(v, &nodes)
}

pub fn ext_square(v: &WeightModule) -> Result<Matrix, QuadError> {
    let nodes: Vec<usize> = (0..v.rank()).collect();
    ext_square_levi(v, &nodes)
}

/// `sigma` acting in slots `(j, j+1)` of `V^{(x) n}`, minus `sign` times
/// the identity; `j` is 0-based.
fn slot_operator(sigma: &Matrix, dv: usize, n: usize, j: usize, sign: i64, one: &FieldElement) -> Matrix {
    let d = sigma.d();
    let pre = Matrix::identity(d, dv.pow(j as u32));
    let post = Matrix::identity(d, dv.pow((n - j - 2) as u32));
    let mut m = pre.kron(sigma).kron(&post);
    let s = if sign >= 0 { one.clone() } else { -one };
    for k in 0..m.rows() {
        m.set(k, k, m.get(k, k) - &s);
    }
    m
}

fn graded_intersection(
    v: &WeightModule,
    nodes: &[usize],
    n: usize,
    sign: i64,
) -> Result<Matrix, QuadError> {
    assert!(n >= 2);
    let dv = v.dim();
    guard(dv.pow(n as u32))?;
    let sigma = commutor_levi(v, v, nodes)?;
    let one = v.scalars().one();
    let blocks: Vec<Matrix> = (0..n - 1)
        .map(|j| slot_operator(sigma.matrix(), dv, n, j, sign, &one))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(Matrix::vstack(&refs).kernel())
}

/// Degree-`n` quantum symmetric tensors: simultaneous fixed space of all
/// adjacent commutor placements.
pub fn symmetric_tensors_levi(
    v: &WeightModule,
    nodes: &[usize],
    n: usize,
) -> Result<Matrix, QuadError> {
    graded_intersection(v, nodes, n, 1)
}

pub fn antisymmetric_tensors_levi(
    v: &WeightModule,
    nodes: &[usize],
    n: usize,
) -> Result<Matrix, QuadError> {
    graded_intersection(v, nodes, n, -1)
}

pub fn symmetric_tensors(v: &WeightModule, n: usize) -> Result<Matrix, QuadError> {
    let nodes: Vec<usize> = (0..v.rank()).collect();
    symmetric_tensors_levi(v, &nodes, n)
}

pub fn antisymmetric_tensors(v: &WeightModule, n: usize) -> Result<Matrix, QuadError> {
    let nodes: Vec<usize> = (0..v.rank()).collect();
    antisymmetric_tensors_levi(v, &nodes, n)
}

impl QuadraticAlgebra {
    /// `S_q(V) = T(V)/<ext square>`.
    pub fn symmetric(v: &WeightModule) -> Result<QuadraticAlgebra, QuadError> {
        let nodes: Vec<usize> = (0..v.rank()).collect();
        QuadraticAlgebra::symmetric_levi(v, &nodes)
    }

    pub fn symmetric_levi(v: &WeightModule, nodes: &[usize]) -> Result<QuadraticAlgebra, QuadError> {
        let relations = ext_square_levi(v, nodes)?;
        Ok(QuadraticAlgebra {
            v: v.clone(),
            nodes: nodes.to_vec(),
            kind: AlgebraKind::Symmetric,
            relations,
        })
    }

    /// `Lambda_q(V) = T(V)/<sym square>`.
    pub fn exterior(v: &WeightModule) -> Result<QuadraticAlgebra, QuadError> {
        let nodes: Vec<usize> = (0..v.rank()).collect();
        QuadraticAlgebra::exterior_levi(v, &nodes)
    }

    pub fn exterior_levi(v: &WeightModule, nodes: &[usize]) -> Result<QuadraticAlgebra, QuadError> {
        let relations = sym_square_levi(v, nodes)?;
        Ok(QuadraticAlgebra {
            v: v.clone(),
            nodes: nodes.to_vec(),
            kind: AlgebraKind::Exterior,
            relations,
        })
    }

    /// Arbitrary relation subspace (columns of `relations` inside `V(x)V`).
    pub fn with_relations(
        v: &WeightModule,
        kind: AlgebraKind,
        relations: Matrix,
    ) -> QuadraticAlgebra {
        assert_eq!(relations.rows(), v.dim() * v.dim());
        let nodes: Vec<usize> = (0..v.rank()).collect();
        QuadraticAlgebra {
            v: v.clone(),
            nodes,
            kind,
            relations,
        }
    }

    pub fn generators(&self) -> &WeightModule {
        &self.v
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Basis of the degree-`n` component of the two-sided ideal `<R>`.
    pub fn ideal_component(&self, n: usize) -> Result<Matrix, QuadError> {
        assert!(n >= 2);
        let dv = self.v.dim();
        guard(dv.pow(n as u32))?;
        let d = self.v.scalars().d();
        let mut placements = Vec::new();
        for j in 0..n - 1 {
            let pre = Matrix::identity(d, dv.pow(j as u32));
            let post = Matrix::identity(d, dv.pow((n - j - 2) as u32));
            placements.push(pre.kron(&self.relations).kron(&post));
        }
        let refs: Vec<&Matrix> = placements.iter().collect();
        Ok(Matrix::hstack(&refs))
    }

    pub fn graded_dimension(&self, n: usize) -> Result<u64, QuadError> {
        match n {
            0 => Ok(1),
            1 => Ok(self.v.dim() as u64),
            _ => {
                let ideal = self.ideal_component(n)?;
                Ok((self.v.dim().pow(n as u32) - ideal.rank()) as u64)
            }
        }
    }

    pub fn hilbert_series(&self, cutoff: usize) -> Result<HilbertSeries, QuadError> {
        let mut dims = Vec::with_capacity(cutoff + 1);
        for n in 0..=cutoff {
            dims.push(self.graded_dimension(n)?);
        }
        Ok(HilbertSeries { dims })
    }

    /// Classical graded dimension of the undeformed counterpart.
    pub fn classical_dimension(&self, n: usize) -> u64 {
        let d = self.v.dim() as u64;
        match self.kind {
            AlgebraKind::Symmetric => binomial(d + n as u64 - 1, n as u64),
            AlgebraKind::Exterior => binomial(d, n as u64),
        }
    }

    /// Compare quantum against classical dimensions through degree `d`;
    /// flatness is PBW-certified when rewriting is generic and degrees up
    /// to 3 match.
    pub fn flatness(&self, cutoff: usize) -> Result<FlatnessReport, QuadError> {
        let mut rows = Vec::new();
        let mut witness = None;
        for n in 0..=cutoff {
            let q = self.graded_dimension(n)?;
            let c = self.classical_dimension(n);
            if q != c && witness.is_none() {
                witness = Some(n);
            }
            rows.push((n, q, c));
        }
        let degree3_ok = rows
            .iter()
            .take(4.min(rows.len()))
            .all(|&(_, q, c)| q == c);
        let pbw = witness.is_none()
            && cutoff >= 3
            && degree3_ok
            && self.rewrite_to_ordered().is_ok();
        Ok(FlatnessReport {
            flat: witness.is_none(),
            witness_degree: witness,
            pbw_certified: pbw,
            rows,
        })
    }

    /// Express each disordered quadratic monomial through ordered ones
    /// using the relation space; fails with NonGeneric when ordered
    /// monomials do not complement the relations.
    pub fn rewrite_to_ordered(&self) -> Result<RewriteTable, QuadError> {
        let dv = self.v.dim();
        let d = self.v.scalars().d();
        let ordered: Vec<(usize, usize)> = match self.kind {
            AlgebraKind::Symmetric => (0..dv)
                .flat_map(|i| (i..dv).map(move |j| (i, j)))
                .collect(),
            AlgebraKind::Exterior => (0..dv)
                .flat_map(|i| (i + 1..dv).map(move |j| (i, j)))
                .collect(),
        };
        let disordered: Vec<(usize, usize)> = match self.kind {
            AlgebraKind::Symmetric => (0..dv)
                .flat_map(|i| (0..i).map(move |j| (i, j)))
                .collect(),
            AlgebraKind::Exterior => (0..dv)
                .flat_map(|i| (0..=i).map(move |j| (i, j)))
                .collect(),
        };
        if ordered.len() + self.relations.cols() != dv * dv {
            return Err(QuadError::NonGeneric);
        }
        let mut cols = Vec::with_capacity(dv * dv);
        for &(i, j) in &ordered {
            let mut c = Matrix::zeros(d, dv * dv, 1);
            c.set(i * dv + j, 0, self.v.scalars().one());
            cols.push(c);
        }
        let col_refs: Vec<&Matrix> = cols.iter().collect();
        let basis = if col_refs.is_empty() {
            self.relations.clone()
        } else {
            Matrix::hstack(&[&Matrix::hstack(&col_refs), &self.relations])
        };
        let inv = basis.inverse().ok_or(QuadError::NonGeneric)?;
        let mut rules = BTreeMap::new();
        for &(i, j) in &disordered {
            let mut rhs = Matrix::zeros(d, dv * dv, 1);
            rhs.set(i * dv + j, 0, self.v.scalars().one());
            let x = inv.mul(&rhs);
            let mut expr = Vec::new();
            for (k, &(a, b)) in ordered.iter().enumerate() {
                let coeff = x.get(k, 0);
                if !coeff.is_zero() {
                    expr.push(((a, b), coeff.clone()));
                }
            }
            rules.insert((i, j), expr);
        }
        Ok(RewriteTable { rules })
    }

    /// Quadratic dual: generators `V^*`, relations the annihilator of `R`
    /// under the slot-reversing pairing.
    pub fn quadratic_dual(&self) -> QuadraticAlgebra {
        let vd = crate::rep::dual(&self.v);
        let pairing = reversed_pairing_matrix(&self.v, &self.v);
        let ann = self.relations.transpose().mul(&pairing).kernel();
        QuadraticAlgebra {
            v: vd,
            nodes: self.nodes.clone(),
            kind: match self.kind {
                AlgebraKind::Symmetric => AlgebraKind::Exterior,
                AlgebraKind::Exterior => AlgebraKind::Symmetric,
            },
            relations: ann,
        }
    }
}

/// Matrix of the pairing `<f (x) g, u (x) v> = g(u) f(v)` between
/// `A^* (x) B^*` (rows) and `B (x) A` (columns).
pub fn reversed_pairing_matrix(a: &WeightModule, b: &WeightModule) -> Matrix {
    let d = a.scalars().d();
    let da = a.dim();
    let db = b.dim();
    let mut m = Matrix::zeros(d, da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            m.set(i * db + j, j * da + i, a.scalars().one());
        }
    }
    m
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Both sides of the degree-3 collapsing comparison: the quantum
/// `[S^3_q V] - [Ext^3_q V]` and the classical `[S^3 V] - [Ext^3 V]`,
/// as elements of the Grothendieck ring.
pub fn collapse_deficit_degree3(v: &WeightModule) -> Result<CollapseReport, QuadError> {
    let cube = tensor_many(&[v, v, v])?;
    let s3 = symmetric_tensors(v, 3)?;
    let l3 = antisymmetric_tensors(v, 3)?;
    let gs = if s3.cols() > 0 {
        decompose(&submodule_from_basis(&cube, &s3)?)?
    } else {
        GrothendieckElement::zero()
    };
    let gl = if l3.cols() > 0 {
        decompose(&submodule_from_basis(&cube, &l3)?)?
    } else {
        GrothendieckElement::zero()
    };
    let quantum = gs.sub(&gl);
    // Classical side from the weight multiset of V itself.
    let rs = v.root_system();
    let w = v.weights();
    let mut ch_s: BTreeMap<Weight, i64> = BTreeMap::new();
    let mut ch_l: BTreeMap<Weight, i64> = BTreeMap::new();
    for a in 0..w.len() {
        for b in a..w.len() {
            for c in b..w.len() {
                let sum = w[a].add(&w[b]).add(&w[c]);
                *ch_s.entry(sum.clone()).or_insert(0) += 1;
                if a < b && b < c {
                    *ch_l.entry(sum).or_insert(0) += 1;
                }
            }
        }
    }
    let cs = decompose_character(rs, ch_s)?;
    let cl = decompose_character(rs, ch_l)?;
    let classical = cs.sub(&cl);
    let equal = quantum == classical;
    Ok(CollapseReport {
        quantum,
        classical,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{direct_sum, seed_module, simple_module, trivial_module, dual};
    use crate::roots::{RootSystem, Type};
    use crate::uq::Uq;

    fn uq(t: Type, n: usize) -> Uq {
        Uq::new(RootSystem::new(t, n).unwrap())
    }

    #[test]
    fn rank_one_squares_golden() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let s2 = sym_square(&v).unwrap();
        let l2 = ext_square(&v).unwrap();
        assert_eq!(s2.cols(), 3);
        assert_eq!(l2.cols(), 1);
        // Ext^2 spanned by -q^{-1} x1 (x) x2 + x2 (x) x1.
        let ctx = u.scalars();
        let mut expect = Matrix::zeros(ctx.d(), 4, 1);
        expect.set(1, 0, -&ctx.nu_pow_int(-1));
        expect.set(2, 0, ctx.one());
        assert!(Matrix::hstack(&[&l2, &expect]).rank() == 1);
        // Sym^2 contains q x1 (x) x2 + x2 (x) x1 and both squares.
        let mut sym_mid = Matrix::zeros(ctx.d(), 4, 1);
        sym_mid.set(1, 0, ctx.nu());
        sym_mid.set(2, 0, ctx.one());
        assert!(s2.span_contains(&sym_mid));
        let mut sq = Matrix::zeros(ctx.d(), 4, 1);
        sq.set(0, 0, ctx.one());
        assert!(s2.span_contains(&sq));
    }

    #[test]
    fn trivial_module_squares() {
        let u = uq(Type::A, 1);
        let v = trivial_module(&u);
        assert_eq!(sym_square(&v).unwrap().cols(), 1);
        assert_eq!(ext_square(&v).unwrap().cols(), 0);
    }

    #[test]
    fn squares_decompose_the_tensor_square() {
        for (t, n) in [(Type::A, 1), (Type::A, 2), (Type::C, 2)] {
            let u = uq(t, n);
            let v = seed_module(&u).unwrap();
            let s2 = sym_square(&v).unwrap();
            let l2 = ext_square(&v).unwrap();
            let total = v.dim() * v.dim();
            assert_eq!(s2.cols() + l2.cols(), total);
            assert_eq!(Matrix::hstack(&[&s2, &l2]).rank(), total);
        }
    }

    #[test]
    fn ext_square_is_range_of_commutor_minus_one() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let sigma = commutor_levi(&v, &v, &[0]).unwrap();
        let d = u.scalars().d();
        let id = Matrix::identity(d, 4);
        let range = sigma.matrix().sub(&id).column_space_basis();
        let l2 = ext_square(&v).unwrap();
        assert_eq!(range.cols(), l2.cols());
        assert_eq!(
            Matrix::hstack(&[&range, &l2]).rank(),
            l2.cols()
        );
    }

    #[test]
    fn cubic_symmetric_tensors_of_quantum_plane() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        assert_eq!(symmetric_tensors(&v, 3).unwrap().cols(), 4);
        assert_eq!(antisymmetric_tensors(&v, 3).unwrap().cols(), 0);
        // n = 2 agrees with the square.
        assert_eq!(
            symmetric_tensors(&v, 2).unwrap().cols(),
            sym_square(&v).unwrap().cols()
        );
    }

    #[test]
    fn quantum_plane_hilbert_series() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::symmetric(&v).unwrap();
        let h = a.hilbert_series(4).unwrap();
        assert_eq!(h.dims, vec![1, 2, 3, 4, 5]);
        let flat = a.flatness(4).unwrap();
        assert!(flat.flat);
        assert!(flat.pbw_certified);
        assert_eq!(flat.witness_degree, None);
    }

    #[test]
    fn exterior_algebra_hilbert_series() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::exterior(&v).unwrap();
        let h = a.hilbert_series(3).unwrap();
        assert_eq!(h.dims, vec![1, 2, 1, 0]);
        assert!(a.flatness(3).unwrap().flat);
    }

    #[test]
    fn doubled_module_is_not_flat_with_witness_three() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vv = direct_sum(&v, &v).unwrap();
        let a = QuadraticAlgebra::symmetric(&vv).unwrap();
        assert_eq!(a.graded_dimension(2).unwrap(), 10);
        // The cross-copy relations collapse four cubic dimensions at
        // generic nu, not just the one exhibited by the x1^2 y2 rewrite:
        // the commutor pair on the two-dimensional multiplicity space has
        // product trace -2(1+nu^4)/(1+nu^2)^2, so no joint eigenvectors
        // survive off nu = +-1 and the antisymmetric cube vanishes.
        assert_eq!(a.graded_dimension(3).unwrap(), 16);
        assert_eq!(antisymmetric_tensors(&vv, 3).unwrap().cols(), 0);
        assert_eq!(symmetric_tensors(&vv, 3).unwrap().cols(), 16);
        let flat = a.flatness(3).unwrap();
        assert!(!flat.flat);
        assert_eq!(flat.witness_degree, Some(3));
        assert!(!flat.pbw_certified);
    }

    #[test]
    fn doubled_module_extra_relation() {
        // x1^2 y2 = q x1 x2 y1 in degree 3: basis order (x1, x2, y1, y2).
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vv = direct_sum(&v, &v).unwrap();
        let a = QuadraticAlgebra::symmetric(&vv).unwrap();
        let ideal = a.ideal_component(3).unwrap();
        let ctx = u.scalars();
        let mut rel = Matrix::zeros(ctx.d(), 64, 1);
        // x1 (x) x1 (x) y2 at flat index (0,0,3); x1 (x) x2 (x) y1 at (0,1,2).
        rel.set(3, 0, ctx.one());
        rel.set(4 + 2, 0, -&ctx.nu());
        assert!(ideal.span_contains(&rel));
        // But x1^2 y2 alone is not a relation.
        let mut single = Matrix::zeros(ctx.d(), 64, 1);
        single.set(3, 0, ctx.one());
        assert!(!ideal.span_contains(&single));
    }

    #[test]
    fn doubled_module_rewrites_with_six_rules() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vv = direct_sum(&v, &v).unwrap();
        let a = QuadraticAlgebra::symmetric(&vv).unwrap();
        let table = a.rewrite_to_ordered().unwrap();
        assert_eq!(table.rules.len(), 6);
    }

    #[test]
    fn quantum_plane_rewrite_rule() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::symmetric(&v).unwrap();
        let table = a.rewrite_to_ordered().unwrap();
        let rule = &table.rules[&(1, 0)];
        assert_eq!(rule.len(), 1);
        assert_eq!(rule[0].0, (0, 1));
        assert_eq!(rule[0].1, u.scalars().nu_pow_int(-1));
    }

    #[test]
    fn radical_exterior_rewrite_for_projective_plane() {
        // Hand-built 2-dim Levi-string module: basis (y1, y2) with y2 the
        // local highest vector; relation y2 y1 -> -q^{-1} y1 y2.
        let u = uq(Type::A, 2);
        let rs = u.root_system().clone();
        let ctx = u.scalars().clone();
        let d = ctx.d();
        let weights = vec![Weight(vec![-1, -1]), Weight(vec![-2, 1])];
        let mut e1 = Matrix::zeros(d, 2, 2);
        e1.set(1, 0, ctx.one());
        let mut f1 = Matrix::zeros(d, 2, 2);
        f1.set(0, 1, ctx.one());
        let zero = Matrix::zeros(d, 2, 2);
        let m = WeightModule::from_parts(
            ctx.clone(),
            rs,
            weights,
            vec![zero.clone(), e1],
            vec![zero, f1],
            None,
        );
        let a = QuadraticAlgebra::exterior_levi(&m, &[1]).unwrap();
        let table = a.rewrite_to_ordered().unwrap();
        let rule = &table.rules[&(1, 0)];
        assert_eq!(rule.len(), 1);
        assert_eq!(rule[0].0, (0, 1));
        assert_eq!(rule[0].1, -&ctx.nu_pow_int(-1));
        // And the Levi symmetric algebra on the same module is flat.
        let s = QuadraticAlgebra::symmetric_levi(&m, &[1]).unwrap();
        let flat = s.flatness(3).unwrap();
        assert!(flat.flat && flat.pbw_certified);
    }

    #[test]
    fn quadratic_dual_swaps_squares() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::symmetric(&v).unwrap();
        let b = a.quadratic_dual();
        assert_eq!(b.kind(), AlgebraKind::Exterior);
        // Relations of the dual equal the symmetric square of V*.
        let vd = dual(&v);
        let s2d = sym_square(&vd).unwrap();
        assert_eq!(b.relations().cols(), s2d.cols());
        assert_eq!(
            Matrix::hstack(&[b.relations(), &s2d]).rank(),
            s2d.cols()
        );
    }

    #[test]
    fn double_dual_restores_relations() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::symmetric(&v).unwrap();
        let dd = a.quadratic_dual().quadratic_dual();
        assert_eq!(dd.relations().cols(), a.relations().cols());
        assert_eq!(
            Matrix::hstack(&[dd.relations(), a.relations()]).rank(),
            a.relations().cols()
        );
    }

    #[test]
    fn full_relations_dualize_to_free_algebra() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let d = u.scalars().d();
        let full = Matrix::identity(d, 4);
        let a = QuadraticAlgebra::with_relations(&v, AlgebraKind::Symmetric, full);
        let b = a.quadratic_dual();
        assert_eq!(b.relations().cols(), 0);
    }

    #[test]
    fn dual_pairing_orthogonality() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let vd = dual(&v);
        let s2 = sym_square(&v).unwrap();
        let l2d = ext_square(&vd).unwrap();
        let p = reversed_pairing_matrix(&v, &v);
        // <Ext^2 V*, Sym^2 V> = 0.
        assert!(l2d.transpose().mul(&p).mul(&s2).is_zero());
        let s2d = sym_square(&vd).unwrap();
        let l2 = ext_square(&v).unwrap();
        assert!(s2d.transpose().mul(&p).mul(&l2).is_zero());
    }

    #[test]
    fn direct_sum_audit_on_quantum_plane() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::symmetric(&v).unwrap();
        for n in 2..=4 {
            let sym = symmetric_tensors(&v, n).unwrap();
            let ideal = a.ideal_component(n).unwrap();
            assert_eq!(sym.cols() + ideal.rank(), v.dim().pow(n as u32));
        }
    }

    #[test]
    fn koszul_cubic_coefficient_identity() {
        for label in ["plane", "cubic"] {
            let u = uq(Type::A, 1);
            let v = if label == "plane" {
                seed_module(&u).unwrap()
            } else {
                simple_module(&u, &Weight(vec![3])).unwrap()
            };
            let a = |n: usize| symmetric_tensors(&v, n).unwrap().cols() as i64;
            let vd = dual(&v);
            let b = |n: usize| antisymmetric_tensors(&vd, n).unwrap().cols() as i64;
            let a1 = v.dim() as i64;
            let b1 = v.dim() as i64;
            let idy = a(3) - a(2) * b1 + a1 * b(2) - b(3);
            assert_eq!(idy, 0, "{label}");
        }
    }

    #[test]
    fn collapse_comparison_rank_one_seed() {
        let u = uq(Type::A, 1);
        let v = seed_module(&u).unwrap();
        let rep = collapse_deficit_degree3(&v).unwrap();
        assert!(rep.equal);
    }

    #[test]
    fn collapse_comparison_trivial() {
        let u = uq(Type::A, 1);
        let v = trivial_module(&u);
        let rep = collapse_deficit_degree3(&v).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.quantum.multiplicity(&Weight(vec![0])), 1);
    }

    #[test]
    fn collapse_comparison_cubic_has_square_deficit() {
        let u = uq(Type::A, 1);
        let v = simple_module(&u, &Weight(vec![3])).unwrap();
        let rep = collapse_deficit_degree3(&v).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.quantum.total_dimension(u.root_system()), 16);
        assert_eq!(rep.classical.total_dimension(u.root_system()), 16);
    }

    #[test]
    fn collapse_comparison_rank_two_vector() {
        let u = uq(Type::A, 2);
        let v = simple_module(&u, &Weight(vec![1, 0])).unwrap();
        let rep = collapse_deficit_degree3(&v).unwrap();
        assert!(rep.equal);
    }

    #[test]
    fn degree_guard_fires() {
        let u = uq(Type::A, 2);
        let v = seed_module(&u).unwrap();
        let a = QuadraticAlgebra::symmetric(&v).unwrap();
        assert!(matches!(
            a.graded_dimension(10),
            Err(QuadError::DegreeTooLarge(_))
        ));
    }
}
