//! Quantized exterior algebras and Clifford operators for a cominuscule
//! flag pair (g, s).
//!
//! The abelian nilradical u_+ of the parabolic crossing out the node `s`
//! quantizes to a module over the Levi subalgebra U_q(l), realized here
//! on the span of the twisted root vectors `E_{xi_1}, ..., E_{xi_N}`
//! attached to a reduced word through the Levi longest element. On top of
//! that span the module builds the flat exterior algebras of u_+ and of
//! its dual u_-, the degree-wise duality pairing between them, creation
//! and annihilation operators on the exterior algebra of u_+, Frobenius
//! dual bases, adjoint (star) structures from invariant inner products,
//! and straightened commutation relations between the two operator kinds.
//!
//! Every identity is certified exactly: symbolic claims about root
//! vectors are checked by their action on a family of probe modules, and
//! matrix claims are checked entrywise over the scalar field.

use std::collections::BTreeMap;

use num::BigInt;
use thiserror::Error;

use crate::braiding::{BraidError, LinearMap};
use crate::linalg::Matrix;
use crate::quadratic::{self, QuadError, QuadraticAlgebra};
use crate::rep::{self, RepError, WeightModule};
use crate::roots::{ParabolicDatum, Root, RootError, RootSystem, Type, Weight};
use crate::scalar::{FieldElement, QRat, ScalarContext};
use crate::uq::{AlgebraElement, Uq, UqError};

#[derive(Debug, Error)]
pub enum CliffError {
    #[error("highest root has coefficient > 1 at the node; parabolic is not cominuscule")]
    NotCominuscule,
    #[error("probe certification failed: a symbolic identity does not hold on the probe family")]
    ProbeMismatch,
    #[error("probe family does not determine the expansion coefficients")]
    ProbeUnderdetermined,
    #[error("duality pairing is singular in degree {0}")]
    SingularPairing(usize),
    #[error("top-degree multiplication is singular in degree {0}; no Frobenius dual basis")]
    NotFrobenius(usize),
    #[error("gram matrix is singular")]
    SingularGram,
    #[error("operator factorization matrix has rank {rank}, expected {size}")]
    RankDeficient { rank: usize, size: usize },
    #[error("rewriting did not terminate; relations are not a rewriting system")]
    RewriteDiverged,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Which of the two nilradical factors an exterior algebra is built on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Plus,
    Minus,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// An exterior algebra on `n` anticommuting-up-to-q generators, presented
/// by a full multiplication table over the subset basis. Basis elements
/// are indexed by subsets of `{0, ..., n-1}`, ordered by degree and then
/// lexicographically; the table stores each product of basis elements as
/// a combination of basis elements.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebraRep {
    side: Side,
    n: usize,
    ctx: ScalarContext,
    subsets: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    offsets: Vec<usize>,
    table: Vec<Vec<Vec<(usize, FieldElement)>>>,
}

/// Enumerate subsets of `{0..n}` ordered by (degree, lexicographic).
fn subset_basis(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..1usize << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Straighten a word in the generators to a combination of strictly
/// increasing words, using quadratic rewriting rules for every adjacent
/// disordered pair. Terminates for rewriting systems coming from flat
/// quadratic algebras; the fuel bound catches divergence.
fn straighten(
    ctx: &ScalarContext,
    rules: &BTreeMap<(usize, usize), Vec<((usize, usize), FieldElement)>>,
    index: &BTreeMap<Vec<usize>, usize>,
    word: &[usize],
    coeff: &FieldElement,
) -> Result<BTreeMap<usize, FieldElement>, CliffError> {
    let mut acc: BTreeMap<usize, FieldElement> = BTreeMap::new();
    let mut stack: Vec<(Vec<usize>, FieldElement)> = vec![(word.to_vec(), coeff.clone())];
    let mut fuel: u64 = 1 << 22;
    while let Some((w, c)) = stack.pop() {
        if fuel == 0 {
            return Err(CliffError::RewriteDiverged);
        }
        fuel -= 1;
        if c.is_zero() {
            continue;
        }
        match (0..w.len().saturating_sub(1)).find(|&p| w[p] >= w[p + 1]) {
            None => {
                let idx = *index.get(&w).expect("increasing word is a basis subset");
                let slot = acc.entry(idx).or_insert_with(|| ctx.zero());
                *slot = &*slot + &c;
            }
            Some(p) => {
                let rule = rules
                    .get(&(w[p], w[p + 1]))
                    .expect("every disordered pair has a rewriting rule");
                for ((a, b), r) in rule {
                    let mut nw = w.clone();
                    nw[p] = *a;
                    nw[p + 1] = *b;
                    stack.push((nw, &c * r));
                }
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(acc)
}

impl ExteriorAlgebraRep {
    fn from_rules(
        side: Side,
        n: usize,
        ctx: &ScalarContext,
        rules: &BTreeMap<(usize, usize), Vec<((usize, usize), FieldElement)>>,
    ) -> Result<ExteriorAlgebraRep, CliffError> {
        let subsets = subset_basis(n);
        let index: BTreeMap<Vec<usize>, usize> = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut offsets = vec![0usize; n + 2];
        for k in 0..=n {
            offsets[k + 1] = offsets[k] + binomial(n as u64, k as u64) as usize;
        }
        let dim = subsets.len();
        let one = ctx.one();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut word = subsets[a].clone();
                word.extend_from_slice(&subsets[b]);
                let combo = straighten(ctx, rules, &index, &word, &one)?;
                table[a][b] = combo.into_iter().collect();
            }
        }
        let alg = ExteriorAlgebraRep {
            side,
            n,
            ctx: ctx.clone(),
            subsets,
            index,
            offsets,
            table,
        };
        alg.check_associativity()?;
        Ok(alg)
    }

    /// Exhaustive associativity audit for small rank, pseudo-randomly
    /// sampled triples above.
    fn check_associativity(&self) -> Result<(), CliffError> {
        let dim = self.dim();
        let check = |a: usize, b: usize, c: usize| -> bool {
            let ab = self.table[a][b].clone();
            let bc = self.table[b][c].clone();
            let mut left = vec![self.ctx.zero(); dim];
            for (m, co) in &ab {
                for (t, co2) in &self.table[*m][c] {
                    left[*t] = &left[*t] + &(co * co2);
                }
            }
            let mut right = vec![self.ctx.zero(); dim];
            for (m, co) in &bc {
                for (t, co2) in &self.table[a][*m] {
                    right[*t] = &right[*t] + &(co * co2);
                }
            }
            left == right
        };
        if self.n <= 4 {
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        if !check(a, b, c) {
                            return Err(CliffError::ProbeMismatch);
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..128 {
                let mut next = || {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    state as usize % dim
                };
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(CliffError::ProbeMismatch);
                }
            }
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn subset(&self, idx: usize) -> &[usize] {
        &self.subsets[idx]
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.index.get(subset).copied()
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.subsets[idx].len()
    }

    /// Index range of the degree-`k` component in the basis order.
    pub fn degree_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.n)
            .map(|k| self.offsets[k + 1] - self.offsets[k])
            .collect()
    }

    pub fn top_index(&self) -> usize {
        self.dim() - 1
    }

    /// Structure constants of `basis[a] * basis[b]`.
    pub fn product_basis(&self, a: usize, b: usize) -> &[(usize, FieldElement)] {
        &self.table[a][b]
    }

    /// Product of dense coefficient vectors.
    pub fn product(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let dim = self.dim();
        let mut out = vec![self.ctx.zero(); dim];
        for a in 0..dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                if y[b].is_zero() {
                    continue;
                }
                let c = &x[a] * &y[b];
                for (t, s) in &self.table[a][b] {
                    out[*t] = &out[*t] + &(&c * s);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by a dense element.
    pub fn left_mult(&self, x: &[FieldElement]) -> Matrix {
        let dim = self.dim();
        let d = self.ctx.d();
        let mut m = Matrix::zeros(d, dim, dim);
        for a in 0..dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                for (t, s) in &self.table[a][b] {
                    let v = m.get(*t, b).clone();
                    m.set(*t, b, &v + &(&x[a] * s));
                }
            }
        }
        m
    }

    pub fn unit_vector(&self, idx: usize) -> Vec<FieldElement> {
        let mut v = vec![self.ctx.zero(); self.dim()];
        v[idx] = self.ctx.one();
        v
    }
}

/// Per-degree bridge between the degree-`k` component of the exterior
/// algebra and its lift inside the k-th tensor power: `basis` spans the
/// joint (-1)-eigenspace of the adjacent commutors, `quotient` is the
/// multiplication map from tensor words to the subset basis, and `lift`
/// is the section of `quotient` with image the eigenspace.
#[derive(Clone, Debug)]
struct DegreeData {
    quotient: Matrix,
    lift: Matrix,
}

/// All structure attached to a cominuscule pair: the parabolic datum, the
/// twisted root vectors spanning the nilradical, the Levi modules u_+ and
/// u_-, both exterior algebras, the duality pairing, and the exterior
/// algebra of u_+ as a graded Levi module.
pub struct CominusculeContext {
    uq: Uq,
    node: usize,
    parabolic: ParabolicDatum,
    schubert: Vec<AlgebraElement>,
    u_plus: WeightModule,
    u_minus: WeightModule,
    plus_alg: ExteriorAlgebraRep,
    minus_alg: ExteriorAlgebraRep,
    plus_deg: Vec<DegreeData>,
    minus_deg: Vec<DegreeData>,
    pairing: Vec<Matrix>,
    pairing_inv: Vec<Matrix>,
    lambda_plus: WeightModule,
    probes: Vec<WeightModule>,
}

/// Expand a symbolic element known to be proportional to a single basis
/// root vector (or zero when `target` is `None`) by acting on the probe
/// family.
fn probe_expand(
    probes: &[WeightModule],
    img: &AlgebraElement,
    target: Option<&AlgebraElement>,
) -> Result<Option<FieldElement>, CliffError> {
    match target {
        None => {
            for p in probes {
                if !p.act(img).is_zero() {
                    return Err(CliffError::ProbeMismatch);
                }
            }
            Ok(None)
        }
        Some(t) => {
            let acts_img: Vec<Matrix> = probes.iter().map(|p| p.act(img)).collect();
            let acts_t: Vec<Matrix> = probes.iter().map(|p| p.act(t)).collect();
            let mut coeff: Option<FieldElement> = None;
            for (mi, mt) in acts_img.iter().zip(&acts_t) {
                for r in 0..mt.rows() {
                    for c in 0..mt.cols() {
                        if !mt.get(r, c).is_zero() {
                            let q = mi
                                .get(r, c)
                                .div(mt.get(r, c))
                                .expect("nonzero denominator");
                            coeff = Some(q);
                            break;
                        }
                    }
                    if coeff.is_some() {
                        break;
                    }
                }
                if coeff.is_some() {
                    break;
                }
            }
            let coeff = coeff.ok_or(CliffError::ProbeUnderdetermined)?;
            for (mi, mt) in acts_img.iter().zip(&acts_t) {
                if *mi != mt.scale(&coeff) {
                    return Err(CliffError::ProbeMismatch);
                }
            }
            Ok(Some(coeff))
        }
    }
}

/// Solve a unique intertwiner between two Levi modules of equal dimension,
/// normalized and certified invertible and weight-preserving.
fn levi_intertwiner(
    a: &WeightModule,
    b: &WeightModule,
    nodes: &[usize],
) -> Result<Matrix, CliffError> {
    let na = a.dim();
    let nb = b.dim();
    if na != nb {
        return Err(CliffError::ProbeMismatch);
    }
    let d = a.scalars().d();
    let unknowns = na * nb;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let push_block = |ga: &Matrix, gb: &Matrix, rows: &mut Vec<Vec<FieldElement>>| {
        // Phi ga = gb Phi, Phi indexed row-major: Phi[r][j] at r * na + j.
        for r in 0..nb {
            for c in 0..na {
                let mut row = vec![a.scalars().zero(); unknowns];
                for j in 0..na {
                    let v = ga.get(j, c);
                    if !v.is_zero() {
                        row[r * na + j] = &row[r * na + j] + v;
                    }
                }
                for i in 0..nb {
                    let v = gb.get(r, i);
                    if !v.is_zero() {
                        row[i * na + c] = &row[i * na + c] - v;
                    }
                }
                rows.push(row);
            }
        }
    };
    for &j in nodes {
        push_block(a.e_mat(j), b.e_mat(j), &mut rows);
        push_block(a.f_mat(j), b.f_mat(j), &mut rows);
    }
    let system = if rows.is_empty() {
        Matrix::zeros(d, 1, unknowns)
    } else {
        Matrix::from_rows(d, rows)
    };
    let kernel = system.kernel();
    if kernel.cols() != 1 {
        return Err(CliffError::ProbeMismatch);
    }
    let mut phi = Matrix::zeros(d, nb, na);
    for r in 0..nb {
        for j in 0..na {
            phi.set(r, j, kernel.get(r * na + j, 0).clone());
        }
    }
    if phi.inverse().is_none() {
        return Err(CliffError::ProbeMismatch);
    }
    for r in 0..nb {
        for c in 0..na {
            if !phi.get(r, c).is_zero() && b.weight(r) != a.weight(c) {
                return Err(CliffError::ProbeMismatch);
            }
        }
    }
    Ok(phi)
}

/// Flat index of a tensor word, first slot most significant.
fn word_index(word: &[usize], n: usize) -> usize {
    word.iter().fold(0, |acc, &w| acc * n + w)
}

fn enumerate_words(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for i in 0..n {
                let mut nw = w.clone();
                nw.push(i);
                next.push(nw);
            }
        }
        out = next;
    }
    out
}

impl CominusculeContext {
    /// Assemble the full context for the pair `(type_rank, node)`; the node
    /// is a 0-based simple-root index and must be cominuscule.
    pub fn build(typ: Type, rank: usize, node: usize) -> Result<CominusculeContext, CliffError> {
        let rs = RootSystem::new(typ, rank)?;
        if !rs.cominuscule_nodes().contains(&node) {
            return Err(CliffError::NotCominuscule);
        }
        let parabolic = rs.parabolic(node)?;
        if !parabolic.is_cominuscule() {
            return Err(CliffError::NotCominuscule);
        }
        let uq = Uq::new(rs.clone());
        let ctx = uq.scalars().clone();
        let levi = parabolic.levi_nodes().to_vec();
        let full = parabolic.full_word();
        let m0 = parabolic.levi_word().len();
        let vectors = uq.quantum_root_vectors(&full)?;
        let schubert: Vec<AlgebraElement> = vectors[m0..].to_vec();
        let xi: Vec<Root> = parabolic.radical_roots().to_vec();
        let n = xi.len();
        let probes = rep::probe_family(&uq);

        // Matrices of the Levi adjoint action on the root-vector span. The
        // degree of E_j > E_{xi_k} is xi_k + alpha_j, which is either a
        // single radical root or not a root at all; likewise for F_j with
        // xi_k - alpha_j.
        let d = ctx.d();
        let zero_mat = Matrix::zeros(d, n, n);
        let mut e_mats = vec![zero_mat.clone(); rank];
        let mut f_mats = vec![zero_mat; rank];
        for &j in &levi {
            let alpha = Root::simple(rank, j);
            for k in 0..n {
                let up = xi[k].add(&alpha);
                let target = xi.iter().position(|r| *r == up);
                let img = uq.adjoint_e(j, &schubert[k]);
                if let Some(c) =
                    probe_expand(&probes, &img, target.map(|m| &schubert[m]))?
                {
                    e_mats[j].set(target.unwrap(), k, c);
                }
                let down = xi[k].sub(&alpha);
                let target = xi.iter().position(|r| *r == down);
                let img = uq.adjoint_f(j, &schubert[k]);
                if let Some(c) =
                    probe_expand(&probes, &img, target.map(|m| &schubert[m]))?
                {
                    f_mats[j].set(target.unwrap(), k, c);
                }
            }
        }
        let weights: Vec<Weight> = xi.iter().map(|r| rs.root_to_weight(r)).collect();
        let u_plus = WeightModule::from_parts(
            ctx.clone(),
            rs.clone(),
            weights,
            e_mats,
            f_mats,
            None,
        );

        // Invariants: K_{omega_s} is the scalar q^{d_s} on u_+, the weights
        // are exactly the radical roots with one-dimensional weight spaces.
        let omega = Weight::fundamental(rank, node);
        let ds = QRat::new(BigInt::from(rs.d(node)), BigInt::from(1));
        for w in u_plus.weights() {
            if rs.weight_form(&omega, w) != ds {
                return Err(CliffError::ProbeMismatch);
            }
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for w in u_plus.weights() {
                if !seen.insert(w.clone()) {
                    return Err(CliffError::ProbeMismatch);
                }
            }
        }
        let u_minus = rep::dual(&u_plus);
        for (w, r) in u_minus.weights().iter().zip(&xi) {
            if *w != rs.root_to_weight(r).neg() {
                return Err(CliffError::ProbeMismatch);
            }
        }

        // Certification against the abstract construction: the Levi-simple
        // module generated inside the adjoint representation by the weight
        // -alpha_s highest weight vector, dualized, must be isomorphic to
        // the root-vector module by a unique weight-preserving intertwiner.
        {
            let theta = rs.root_to_weight(rs.highest_root());
            let adj = rep::simple_module(&uq, &theta)?;
            let target = rs.alpha_as_weight(node).neg();
            let hw = rep::highest_weight_vectors_levi(&adj, &levi, &target);
            if hw.cols() != 1 {
                return Err(CliffError::ProbeMismatch);
            }
            let all_rows: Vec<usize> = (0..adj.dim()).collect();
            let v = hw.submatrix(&all_rows, &[0]);
            let span = rep::cyclic_span_levi(&adj, &levi, &v);
            let abstract_minus = rep::levi_submodule_from_basis(&adj, &levi, &span)?;
            let abstract_plus = rep::right_dual(&abstract_minus);
            levi_intertwiner(&abstract_plus, &u_plus, &levi)?;
        }

        // Exterior algebras on both sides, via quadratic rewriting.
        let plus_quad = QuadraticAlgebra::exterior_levi(&u_plus, &levi)?;
        let plus_rules = plus_quad.rewrite_to_ordered()?.rules;
        let plus_alg = ExteriorAlgebraRep::from_rules(Side::Plus, n, &ctx, &plus_rules)?;
        let minus_quad = QuadraticAlgebra::exterior_levi(&u_minus, &levi)?;
        let minus_rules = minus_quad.rewrite_to_ordered()?.rules;
        let minus_alg = ExteriorAlgebraRep::from_rules(Side::Minus, n, &ctx, &minus_rules)?;

        // Degree data and the duality pairing blocks.
        let plus_deg = degree_data(&u_plus, &levi, &plus_alg)?;
        let minus_deg = degree_data(&u_minus, &levi, &minus_alg)?;
        let mut pairing = Vec::with_capacity(n + 1);
        let mut pairing_inv = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let g = pairing_block(&ctx, n, k, &minus_deg[k], &plus_deg[k]);
            let g_inv = g.inverse().ok_or(CliffError::SingularPairing(k))?;
            pairing.push(g);
            pairing_inv.push(g_inv);
        }

        let lambda_plus = lambda_module(&u_plus, &plus_alg, &plus_deg)?;

        Ok(CominusculeContext {
            uq,
            node,
            parabolic,
            schubert,
            u_plus,
            u_minus,
            plus_alg,
            minus_alg,
            plus_deg,
            minus_deg,
            pairing,
            pairing_inv,
            lambda_plus,
            probes,
        })
    }

    pub fn uq(&self) -> &Uq {
        &self.uq
    }

    pub fn scalars(&self) -> &ScalarContext {
        self.uq.scalars()
    }

    pub fn root_system(&self) -> &RootSystem {
        self.uq.root_system()
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn parabolic(&self) -> &ParabolicDatum {
        &self.parabolic
    }

    pub fn levi_nodes(&self) -> &[usize] {
        self.parabolic.levi_nodes()
    }

    pub fn radical_rank(&self) -> usize {
        self.schubert.len()
    }

    pub fn xi(&self) -> &[Root] {
        self.parabolic.radical_roots()
    }

    pub fn schubert_generator(&self, k: usize) -> &AlgebraElement {
        &self.schubert[k]
    }

    pub fn u_plus(&self) -> &WeightModule {
        &self.u_plus
    }

    pub fn u_minus(&self) -> &WeightModule {
        &self.u_minus
    }

    pub fn plus_algebra(&self) -> &ExteriorAlgebraRep {
        &self.plus_alg
    }

    pub fn minus_algebra(&self) -> &ExteriorAlgebraRep {
        &self.minus_alg
    }

    /// Degree-`k` block of the pairing between the exterior algebras of
    /// u_- (rows) and u_+ (columns).
    pub fn pairing_block(&self, k: usize) -> &Matrix {
        &self.pairing[k]
    }

    /// Section of the degree-`k` multiplication map into the k-th tensor
    /// power of u_+, with image the joint commutor eigenspace.
    pub fn plus_lift(&self, k: usize) -> &Matrix {
        &self.plus_deg[k].lift
    }

    pub fn minus_lift(&self, k: usize) -> &Matrix {
        &self.minus_deg[k].lift
    }

    /// The exterior algebra of u_+ as a graded Levi module on the subset
    /// basis.
    pub fn lambda_plus(&self) -> &WeightModule {
        &self.lambda_plus
    }

    pub fn probes(&self) -> &[WeightModule] {
        &self.probes
    }

    /// Pair a dense element of the minus exterior algebra with a dense
    /// element of the plus exterior algebra.
    pub fn pair(&self, y: &[FieldElement], x: &[FieldElement]) -> FieldElement {
        let ctx = self.scalars();
        let mut acc = ctx.zero();
        let n = self.plus_alg.generators();
        for k in 0..=n {
            let range = self.plus_alg.degree_range(k);
            let g = &self.pairing[k];
            for (jr, j) in range.clone().enumerate() {
                if y[j].is_zero() {
                    continue;
                }
                for (ir, i) in range.clone().enumerate() {
                    if x[i].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(&y[j] * &x[i]) * g.get(jr, ir));
                }
            }
        }
        acc
    }

    /// Quadratic straightening relations among the twisted root vectors:
    /// for each pair `k < l` the combination
    /// `E_{xi_l} E_{xi_k} - q^{-(xi_k, xi_l)} E_{xi_k} E_{xi_l}` expands
    /// over the intermediate products `E_{xi_i} E_{xi_j}` with
    /// `k < i <= j < l`. Coefficients are solved and certified on the
    /// probe family.
    pub fn schubert_relations(&self) -> Result<Vec<SchubertRelation>, CliffError> {
        let rs = self.root_system();
        let ctx = self.scalars();
        let xi = self.xi();
        let n = xi.len();
        let mut out = Vec::new();
        for k in 0..n {
            for l in k + 1..n {
                let exponent = -rs.root_form(&xi[k], &xi[l]);
                let lhs = self
                    .uq
                    .mul(&self.schubert[l], &self.schubert[k])
                    .sub(
                        &self
                            .uq
                            .mul(&self.schubert[k], &self.schubert[l])
                            .scale(&ctx.nu_pow_int(exponent)),
                    );
                let mut candidates = Vec::new();
                let total = xi[k].add(&xi[l]);
                for i in k + 1..l {
                    for j in i..l {
                        if xi[i].add(&xi[j]) == total {
                            candidates.push((i, j));
                        }
                    }
                }
                let terms = self.solve_on_probes(&lhs, &candidates)?;
                out.push(SchubertRelation {
                    k,
                    l,
                    exponent,
                    terms,
                });
            }
        }
        Ok(out)
    }

    /// Expand `lhs` over the products `E_{xi_i} E_{xi_j}` for the listed
    /// index pairs by matching actions on the probe family.
    fn solve_on_probes(
        &self,
        lhs: &AlgebraElement,
        candidates: &[(usize, usize)],
    ) -> Result<Vec<(usize, usize, FieldElement)>, CliffError> {
        let d = self.scalars().d();
        let lhs_acts: Vec<Matrix> = self.probes.iter().map(|p| p.act(lhs)).collect();
        if candidates.is_empty() {
            if lhs_acts.iter().any(|m| !m.is_zero()) {
                return Err(CliffError::ProbeMismatch);
            }
            return Ok(Vec::new());
        }
        let cand_acts: Vec<Vec<Matrix>> = candidates
            .iter()
            .map(|&(i, j)| {
                let prod = self.uq.mul(&self.schubert[i], &self.schubert[j]);
                self.probes.iter().map(|p| p.act(&prod)).collect()
            })
            .collect();
        let rows: usize = lhs_acts.iter().map(|m| m.rows() * m.cols()).sum();
        let mut a = Matrix::zeros(d, rows, candidates.len());
        let mut b = Matrix::zeros(d, rows, 1);
        let mut row = 0;
        for (pi, m) in lhs_acts.iter().enumerate() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    b.set(row, 0, m.get(r, c).clone());
                    for (ci, acts) in cand_acts.iter().enumerate() {
                        a.set(row, ci, acts[pi].get(r, c).clone());
                    }
                    row += 1;
                }
            }
        }
        if a.rank() < candidates.len() {
            return Err(CliffError::ProbeUnderdetermined);
        }
        let x = a.solve(&b).ok_or(CliffError::ProbeMismatch)?;
        let mut terms = Vec::new();
        for (ci, &(i, j)) in candidates.iter().enumerate() {
            let c = x.get(ci, 0);
            if !c.is_zero() {
                terms.push((i, j, c.clone()));
            }
        }
        Ok(terms)
    }

    /// Left multiplication by a dense element of the plus exterior
    /// algebra, as an operator on that algebra.
    pub fn creation(&self, x: &[FieldElement]) -> Matrix {
        self.plus_alg.left_mult(x)
    }

    pub fn creation_generator(&self, i: usize) -> Matrix {
        let idx = self.plus_alg.index_of(&[i]).expect("generator index");
        self.creation(&self.plus_alg.unit_vector(idx))
    }

    /// Interior product against a dense element `y` of the minus exterior
    /// algebra: the unique operator with `<w, ann(y) x> = <w * y, x>` for
    /// all `w`.
    pub fn annihilation(&self, y: &[FieldElement]) -> Matrix {
        let ctx = self.scalars();
        let d = ctx.d();
        let n = self.plus_alg.generators();
        let dim = self.plus_alg.dim();
        let mut out = Matrix::zeros(d, dim, dim);
        for j in 0..=n {
            // Degree-j part of y maps degree k to degree k - j.
            let yr = self.minus_alg.degree_range(j);
            let part: Vec<(usize, FieldElement)> = yr
                .clone()
                .filter(|&idx| !y[idx].is_zero())
                .map(|idx| (idx, y[idx].clone()))
                .collect();
            if part.is_empty() {
                continue;
            }
            for k in j..=n {
                let src = self.plus_alg.degree_range(k);
                let dst = self.plus_alg.degree_range(k - j);
                let wsrc = self.minus_alg.degree_range(k - j);
                let gk = &self.pairing[k];
                let mut w = Matrix::zeros(d, dst.len(), src.len());
                for (wr, widx) in wsrc.clone().enumerate() {
                    // w_J * y in the minus algebra, then paired in degree k.
                    let mut wedge = vec![ctx.zero(); self.minus_alg.dim()];
                    for (yidx, yc) in &part {
                        for (t, s) in self.minus_alg.product_basis(widx, *yidx) {
                            wedge[*t] = &wedge[*t] + &(yc * s);
                        }
                    }
                    let krange = self.minus_alg.degree_range(k);
                    for (xr, _xidx) in src.clone().enumerate() {
                        let mut acc = ctx.zero();
                        for (tr, t) in krange.clone().enumerate() {
                            if wedge[t].is_zero() {
                                continue;
                            }
                            acc = &acc + &(&wedge[t] * gk.get(tr, xr));
                        }
                        w.set(wr, xr, acc);
                    }
                }
                let block = self.pairing_inv[k - j].mul(&w);
                for (br, tr) in dst.clone().enumerate() {
                    for (bc, sc) in src.clone().enumerate() {
                        let v = block.get(br, bc);
                        if !v.is_zero() {
                            let old = out.get(tr, sc).clone();
                            out.set(tr, sc, &old + v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn annihilation_generator(&self, i: usize) -> Matrix {
        let idx = self.minus_alg.index_of(&[i]).expect("generator index");
        self.annihilation(&self.minus_alg.unit_vector(idx))
    }

    /// The factorization matrix: columns are the flattened operators
    /// `ann(y_J) * cre(x_I)` over all basis subset pairs `(J, I)`, column
    /// index `J * 2^N + I`. An exact certificate of invertibility is
    /// produced by [`CominusculeContext::gamma_rank`].
    pub fn gamma_matrix(&self) -> Matrix {
        let d = self.scalars().d();
        let dim = self.plus_alg.dim();
        let anns: Vec<Matrix> = (0..dim)
            .map(|j| self.annihilation(&self.minus_alg.unit_vector(j)))
            .collect();
        let cres: Vec<Matrix> = (0..dim)
            .map(|i| self.creation(&self.plus_alg.unit_vector(i)))
            .collect();
        let mut out = Matrix::zeros(d, dim * dim, dim * dim);
        for j in 0..dim {
            for i in 0..dim {
                let prod = anns[j].mul(&cres[i]);
                let col = j * dim + i;
                for r in 0..dim {
                    for c in 0..dim {
                        let v = prod.get(r, c);
                        if !v.is_zero() {
                            out.set(r * dim + c, col, v.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Modular-evaluation rank certificate for the factorization matrix:
    /// the rank at any specialization bounds the generic rank from below,
    /// so reaching `4^N` proves invertibility exactly. Deficiency at
    /// several independent points is reported as an error.
    pub fn gamma_rank(&self) -> Result<usize, CliffError> {
        let dim = self.plus_alg.dim();
        let size = dim * dim;
        let anns: Vec<Matrix> = (0..dim)
            .map(|j| self.annihilation(&self.minus_alg.unit_vector(j)))
            .collect();
        let cres: Vec<Matrix> = (0..dim)
            .map(|i| self.creation(&self.plus_alg.unit_vector(i)))
            .collect();
        let mut best = 0usize;
        'points: for u0 in [2u64, 3, 5, 7] {
            let sp_ann: Vec<Option<Vec<Vec<(usize, u64)>>>> =
                anns.iter().map(|m| sparse_mod(m, u0)).collect();
            let sp_cre: Vec<Option<Vec<Vec<(usize, u64)>>>> =
                cres.iter().map(|m| sparse_mod(m, u0)).collect();
            if sp_ann.iter().any(|m| m.is_none()) || sp_cre.iter().any(|m| m.is_none()) {
                continue 'points;
            }
            let sp_ann: Vec<_> = sp_ann.into_iter().map(Option::unwrap).collect();
            let sp_cre: Vec<_> = sp_cre.into_iter().map(Option::unwrap).collect();
            // Dense modular matrix with columns ann_J * cre_I flattened.
            let mut rows = vec![vec![0u64; size]; size];
            for j in 0..dim {
                for i in 0..dim {
                    let col = j * dim + i;
                    // Column c of the product: ann applied to column c of cre.
                    for c in 0..dim {
                        let mut acc = vec![0u64; dim];
                        for &(k, v) in &sp_cre[i][c] {
                            for &(r, a) in &sp_ann[j][k] {
                                acc[r] = mod_add(acc[r], mod_mul(a, v));
                            }
                        }
                        for (r, v) in acc.into_iter().enumerate() {
                            if v != 0 {
                                rows[r * dim + c][col] = v;
                            }
                        }
                    }
                }
            }
            let rank = mod_rank(&mut rows);
            best = best.max(rank);
            if rank == size {
                return Ok(size);
            }
        }
        Err(CliffError::RankDeficient { rank: best, size })
    }

    /// Expand `cre(x_i) * ann(y_j)` over the basis of products
    /// `ann(y_J) * cre(x_I)`; coefficients indexed by subset pairs.
    pub fn commutation_relations(
        &self,
        i: usize,
        j: usize,
    ) -> Result<Vec<((usize, usize), FieldElement)>, CliffError> {
        let dim = self.plus_alg.dim();
        let gamma = self.gamma_matrix();
        let prod = self
            .creation_generator(i)
            .mul(&self.annihilation_generator(j));
        let d = self.scalars().d();
        let mut rhs = Matrix::zeros(d, dim * dim, 1);
        for r in 0..dim {
            for c in 0..dim {
                let v = prod.get(r, c);
                if !v.is_zero() {
                    rhs.set(r * dim + c, 0, v.clone());
                }
            }
        }
        let x = gamma
            .solve_unique(&rhs)
            .ok_or(CliffError::RankDeficient {
                rank: 0,
                size: dim * dim,
            })?;
        let mut out = Vec::new();
        for jj in 0..dim {
            for ii in 0..dim {
                let v = x.get(jj * dim + ii, 0);
                if !v.is_zero() {
                    out.push(((jj, ii), v.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Dual basis for the top-degree multiplication pairing: for each
    /// basis subset `J` the unique `z_J` of complementary degree with
    /// `x_I * z_J = delta_IJ * x_top` in matching degrees. Returned as
    /// dense coefficient vectors indexed like the subset basis.
    pub fn frobenius_dual_basis(&self, side: Side) -> Result<Vec<Vec<FieldElement>>, CliffError> {
        let alg = match side {
            Side::Plus => &self.plus_alg,
            Side::Minus => &self.minus_alg,
        };
        let ctx = self.scalars();
        let d = ctx.d();
        let n = alg.generators();
        let top = alg.top_index();
        let dim = alg.dim();
        let mut out = vec![vec![ctx.zero(); dim]; dim];
        for k in 0..=n {
            let rows = alg.degree_range(k);
            let cols = alg.degree_range(n - k);
            let mut t = Matrix::zeros(d, rows.len(), cols.len());
            for (ri, i) in rows.clone().enumerate() {
                for (ci, c) in cols.clone().enumerate() {
                    for (tgt, v) in alg.product_basis(i, c) {
                        if *tgt == top {
                            t.set(ri, ci, v.clone());
                        }
                    }
                }
            }
            let inv = t.inverse().ok_or(CliffError::NotFrobenius(k))?;
            for (ji, j) in rows.clone().enumerate() {
                for (ci, c) in cols.clone().enumerate() {
                    out[j][c] = inv.get(ci, ji).clone();
                }
            }
        }
        Ok(out)
    }

    /// Coefficient vector of the Frobenius functional: the coordinate of
    /// the top basis element.
    pub fn frobenius_functional(&self, side: Side) -> Vec<FieldElement> {
        let alg = match side {
            Side::Plus => &self.plus_alg,
            Side::Minus => &self.minus_alg,
        };
        let mut out = vec![self.scalars().zero(); alg.dim()];
        out[alg.top_index()] = self.scalars().one();
        out
    }

    /// Gram matrix of the multiplicative extension of the invariant inner
    /// product on u_+ (normalized so the first generator has square norm
    /// `alpha`), restricted to each exterior degree through the tensor
    /// lifts, with an optional extra scale per degree.
    pub fn inner_product_gram(
        &self,
        alpha: &FieldElement,
        degree_scales: &[FieldElement],
    ) -> Result<Matrix, CliffError> {
        let ctx = self.scalars();
        let d = ctx.d();
        let n = self.plus_alg.generators();
        if degree_scales.len() != n + 1 {
            return Err(CliffError::SingularGram);
        }
        let forms = rep::invariant_inner_products(&self.u_plus);
        if forms.len() != 1 {
            return Err(CliffError::SingularGram);
        }
        let mut g1 = forms[0].clone();
        let pivot = g1.get(0, 0).clone();
        if pivot.is_zero() {
            return Err(CliffError::SingularGram);
        }
        g1 = g1.scale(&pivot.inv().expect("nonzero pivot").clone());
        g1 = g1.scale(alpha);
        let dim = self.plus_alg.dim();
        let mut m = Matrix::zeros(d, dim, dim);
        m.set(0, 0, degree_scales[0].clone());
        let mut tensor_gram = Matrix::identity(d, 1);
        for k in 1..=n {
            tensor_gram = tensor_gram.kron(&g1);
            let lift = &self.plus_deg[k].lift;
            let block = lift.transpose().mul(&tensor_gram).mul(lift);
            let range = self.plus_alg.degree_range(k);
            for (br, r) in range.clone().enumerate() {
                for (bc, c) in range.clone().enumerate() {
                    let v = block.get(br, bc);
                    if !v.is_zero() {
                        m.set(r, c, v * &degree_scales[k]);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Adjoint structure `T -> M^{-1} T^t M` for a given Gram matrix.
    pub fn star_structure(&self, gram: Matrix) -> Result<StarStructure, CliffError> {
        let inv = gram.inverse().ok_or(CliffError::SingularGram)?;
        Ok(StarStructure { m: gram, m_inv: inv })
    }

    /// Inner product with unit norm on the first generator and no extra
    /// degree scales.
    pub fn star_preset_a(&self) -> Result<StarStructure, CliffError> {
        let ctx = self.scalars();
        let scales = vec![ctx.one(); self.plus_alg.generators() + 1];
        let gram = self.inner_product_gram(&ctx.one(), &scales)?;
        self.star_structure(gram)
    }

    /// Inner product with square norm `q_s^{-1}` on the first generator.
    pub fn star_preset_b(&self) -> Result<StarStructure, CliffError> {
        let ctx = self.scalars();
        let ds = self.root_system().d(self.node);
        let alpha = ctx.nu_pow_int(-ds);
        let scales = vec![ctx.one(); self.plus_alg.generators() + 1];
        let gram = self.inner_product_gram(&alpha, &scales)?;
        self.star_structure(gram)
    }

    /// Structural audits: creation and annihilation assemble to Levi
    /// module maps, multiplication is a Levi module map, and the graded
    /// dimensions are the binomial coefficients on both sides.
    pub fn audit(&self) -> Result<(), CliffError> {
        let n = self.plus_alg.generators();
        for (alg, _side) in [(&self.plus_alg, Side::Plus), (&self.minus_alg, Side::Minus)] {
            for k in 0..=n {
                if alg.degree_range(k).len() != binomial(n as u64, k as u64) as usize {
                    return Err(CliffError::ProbeMismatch);
                }
            }
        }
        let d = self.scalars().d();
        let dim = self.plus_alg.dim();

        // cre: u_+ (x) Lambda -> Lambda intertwines the Levi action.
        let src = rep::tensor(&self.u_plus, &self.lambda_plus)?;
        let mut m = Matrix::zeros(d, dim, self.u_plus.dim() * dim);
        for i in 0..self.u_plus.dim() {
            let cre = self.creation_generator(i);
            for b in 0..dim {
                for r in 0..dim {
                    let v = cre.get(r, b);
                    if !v.is_zero() {
                        m.set(r, i * dim + b, v.clone());
                    }
                }
            }
        }
        let map = LinearMap::new(src, self.lambda_plus.clone(), m);
        if !map.is_module_map_for(self.levi_nodes()) {
            return Err(CliffError::ProbeMismatch);
        }

        // ann: u_- (x) Lambda -> Lambda intertwines the Levi action.
        let src = rep::tensor(&self.u_minus, &self.lambda_plus)?;
        let mut m = Matrix::zeros(d, dim, self.u_minus.dim() * dim);
        for i in 0..self.u_minus.dim() {
            let ann = self.annihilation_generator(i);
            for b in 0..dim {
                for r in 0..dim {
                    let v = ann.get(r, b);
                    if !v.is_zero() {
                        m.set(r, i * dim + b, v.clone());
                    }
                }
            }
        }
        let map = LinearMap::new(src, self.lambda_plus.clone(), m);
        if !map.is_module_map_for(self.levi_nodes()) {
            return Err(CliffError::ProbeMismatch);
        }

        // Multiplication Lambda (x) Lambda -> Lambda is a module map.
        let src = rep::tensor(&self.lambda_plus, &self.lambda_plus)?;
        let mut m = Matrix::zeros(d, dim, dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                for (t, v) in self.plus_alg.product_basis(a, b) {
                    m.set(*t, a * dim + b, v.clone());
                }
            }
        }
        let map = LinearMap::new(src, self.lambda_plus.clone(), m);
        if !map.is_module_map_for(self.levi_nodes()) {
            return Err(CliffError::ProbeMismatch);
        }

        // Frobenius left-ideal criterion: every basis element multiplies
        // into the top degree from the left.
        for side in [Side::Plus, Side::Minus] {
            let alg = match side {
                Side::Plus => &self.plus_alg,
                Side::Minus => &self.minus_alg,
            };
            let top = alg.top_index();
            for a in 0..dim {
                let hit = (0..dim).any(|b| {
                    alg.product_basis(b, a)
                        .iter()
                        .any(|(t, v)| *t == top && !v.is_zero())
                });
                if !hit {
                    return Err(CliffError::ProbeMismatch);
                }
            }
        }
        Ok(())
    }
}

/// One straightening relation among twisted root vectors.
#[derive(Clone, Debug)]
pub struct SchubertRelation {
    pub k: usize,
    pub l: usize,
    /// `E_{xi_l} E_{xi_k} - nu^{exponent} E_{xi_k} E_{xi_l} = sum of terms`.
    pub exponent: i64,
    /// `(i, j, c)`: the term `c * E_{xi_i} E_{xi_j}` with `k < i <= j < l`.
    pub terms: Vec<(usize, usize, FieldElement)>,
}

/// Adjoint map data: `adjoint(T) = M^{-1} T^t M`.
pub struct StarStructure {
    m: Matrix,
    m_inv: Matrix,
}

impl StarStructure {
    pub fn gram(&self) -> &Matrix {
        &self.m
    }

    pub fn adjoint(&self, t: &Matrix) -> Matrix {
        self.m_inv.mul(&t.transpose()).mul(&self.m)
    }
}

/// Per-degree quotient and lift matrices for one exterior algebra.
fn degree_data(
    u: &WeightModule,
    nodes: &[usize],
    alg: &ExteriorAlgebraRep,
) -> Result<Vec<DegreeData>, CliffError> {
    let ctx = u.scalars();
    let d = ctx.d();
    let n = u.dim();
    let mut out = Vec::with_capacity(n + 1);
    out.push(DegreeData {
        quotient: Matrix::identity(d, 1),
        lift: Matrix::identity(d, 1),
    });
    if n == 0 {
        return Ok(out);
    }
    out.push(DegreeData {
        quotient: Matrix::identity(d, n),
        lift: Matrix::identity(d, n),
    });
    for k in 2..=n {
        let expected = binomial(n as u64, k as u64) as usize;
        let basis = quadratic::antisymmetric_tensors_levi(u, nodes, k)?;
        if basis.cols() != expected {
            return Err(CliffError::SingularPairing(k));
        }
        let words = enumerate_words(n, k);
        let mut quotient = Matrix::zeros(d, expected, words.len());
        let offset = alg.degree_range(k).start;
        let one = ctx.one();
        let mut rules: BTreeMap<(usize, usize), Vec<((usize, usize), FieldElement)>> =
            BTreeMap::new();
        // Recover pairwise rules from the table: products of single
        // generators express every length-2 word over the subset basis.
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    continue;
                }
                let a = alg.index_of(&[i]).expect("generator");
                let b = alg.index_of(&[j]).expect("generator");
                let expr = alg
                    .product_basis(a, b)
                    .iter()
                    .map(|(t, c)| {
                        let s = alg.subset(*t);
                        ((s[0], s[1]), c.clone())
                    })
                    .collect();
                rules.insert((i, j), expr);
            }
        }
        let index = &alg.index;
        for (wc, w) in words.iter().enumerate() {
            let combo = straighten(ctx, &rules, index, w, &one)?;
            for (idx, c) in combo {
                let deg = alg.degree(idx);
                if deg != k {
                    return Err(CliffError::SingularPairing(k));
                }
                quotient.set(idx - offset, wc, c);
            }
        }
        let pi = quotient.mul(&basis);
        let pi_inv = pi.inverse().ok_or(CliffError::SingularPairing(k))?;
        let lift = basis.mul(&pi_inv);
        out.push(DegreeData { quotient, lift });
    }
    Ok(out)
}

/// Degree-`k` block of the duality pairing: lift both sides into tensor
/// powers and contract with the order-reversing product pairing
/// `<y_{a_1} (x) ... (x) y_{a_k}, x_{b_1} (x) ... (x) x_{b_k}> =
/// prod delta(a_p, b_{k+1-p})`.
fn pairing_block(
    ctx: &ScalarContext,
    n: usize,
    k: usize,
    minus: &DegreeData,
    plus: &DegreeData,
) -> Matrix {
    let d = ctx.d();
    if k == 0 {
        return Matrix::identity(d, 1);
    }
    let words = enumerate_words(n, k);
    let size = words.len();
    let mut p = Matrix::zeros(d, size, size);
    for w in &words {
        let rev: Vec<usize> = w.iter().rev().copied().collect();
        p.set(word_index(&rev, n), word_index(w, n), ctx.one());
    }
    minus.lift.transpose().mul(&p).mul(&plus.lift)
}

/// The exterior algebra of `u` as a graded Levi module on the subset
/// basis: each degree carries the action transported from the commutor
/// eigenspace in the tensor power.
fn lambda_module(
    u: &WeightModule,
    alg: &ExteriorAlgebraRep,
    deg: &[DegreeData],
) -> Result<WeightModule, CliffError> {
    let ctx = u.scalars().clone();
    let rs = u.root_system().clone();
    let d = ctx.d();
    let n = u.dim();
    let dim = alg.dim();
    let rank = rs.rank();
    let mut weights = Vec::with_capacity(dim);
    for idx in 0..dim {
        let mut w = Weight::zero(rank);
        for &g in alg.subset(idx) {
            w = w.add(u.weight(g));
        }
        weights.push(w);
    }
    let mut e = vec![Matrix::zeros(d, dim, dim); rank];
    let mut f = vec![Matrix::zeros(d, dim, dim); rank];
    for k in 1..=n {
        let parts: Vec<&WeightModule> = std::iter::repeat(u).take(k).collect();
        let power = rep::tensor_many(&parts)?;
        let range = alg.degree_range(k);
        for i in 0..rank {
            let eb = deg[k].quotient.mul(power.e_mat(i)).mul(&deg[k].lift);
            let fb = deg[k].quotient.mul(power.f_mat(i)).mul(&deg[k].lift);
            for (br, r) in range.clone().enumerate() {
                for (bc, c) in range.clone().enumerate() {
                    let v = eb.get(br, bc);
                    if !v.is_zero() {
                        e[i].set(r, c, v.clone());
                    }
                    let v = fb.get(br, bc);
                    if !v.is_zero() {
                        f[i].set(r, c, v.clone());
                    }
                }
            }
        }
    }
    Ok(WeightModule::from_parts(ctx, rs, weights, e, f, None))
}

const MOD_P: u64 = (1 << 61) - 1;

fn mod_add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MOD_P {
        s - MOD_P
    } else {
        s
    }
}

fn mod_sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MOD_P - b
    }
}

fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a);
        }
        a = mod_mul(a, a);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64) -> Option<u64> {
    if a % MOD_P == 0 {
        None
    } else {
        Some(mod_pow(a % MOD_P, MOD_P - 2))
    }
}

fn qrat_mod(r: &QRat) -> Option<u64> {
    let p = BigInt::from(MOD_P);
    let num = ((r.numer() % &p) + &p) % &p;
    let den = ((r.denom() % &p) + &p) % &p;
    let num = u64::try_from(num).ok()?;
    let den = u64::try_from(den).ok()?;
    Some(mod_mul(num, mod_inv(den)?))
}

/// Evaluate a field element at `u = u0` in the prime field; `None` on a
/// pole or an inconvertible coefficient.
fn fe_mod(fe: &FieldElement, u0: u64) -> Option<u64> {
    let horner = |coeffs: &[QRat]| -> Option<u64> {
        let mut acc = 0u64;
        for c in coeffs.iter().rev() {
            acc = mod_add(mod_mul(acc, u0), qrat_mod(c)?);
        }
        Some(acc)
    };
    let num = horner(fe.numerator().coeffs())?;
    let den = horner(fe.denominator().coeffs())?;
    let den_inv = mod_inv(den)?;
    Some(mod_mul(num, den_inv))
}

/// Column-sparse modular image of a matrix; `None` if any entry has a
/// pole at the evaluation point.
fn sparse_mod(m: &Matrix, u0: u64) -> Option<Vec<Vec<(usize, u64)>>> {
    let mut cols = vec![Vec::new(); m.cols()];
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let v = m.get(r, c);
            if v.is_zero() {
                continue;
            }
            let x = fe_mod(v, u0)?;
            if x != 0 {
                cols[c].push((r, x));
            }
        }
    }
    Some(cols)
}

/// In-place row reduction over the prime field.
fn mod_rank(rows: &mut [Vec<u64>]) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = mod_inv(rows[rank][col]).expect("nonzero pivot");
        for c in col..ncols {
            rows[rank][c] = mod_mul(rows[rank][c], inv);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..ncols {
                    let sub = mod_mul(factor, rows[rank][c]);
                    rows[r][c] = mod_sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Lazily built contexts shared across in-crate test modules; the
/// Grassmannian build in particular is too slow to repeat per module.
#[cfg(test)]
pub(crate) mod shared_ctx {
    use super::CominusculeContext;
    use crate::roots::Type;
    use std::sync::OnceLock;

    pub(crate) fn a1() -> &'static CominusculeContext {
        static CTX: OnceLock<CominusculeContext> = OnceLock::new();
        CTX.get_or_init(|| CominusculeContext::build(Type::A, 1, 0).unwrap())
    }

    pub(crate) fn a2() -> &'static CominusculeContext {
        static CTX: OnceLock<CominusculeContext> = OnceLock::new();
        CTX.get_or_init(|| CominusculeContext::build(Type::A, 2, 0).unwrap())
    }

    pub(crate) fn gr24() -> &'static CominusculeContext {
        static CTX: OnceLock<CominusculeContext> = OnceLock::new();
        CTX.get_or_init(|| CominusculeContext::build(Type::A, 3, 1).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::shared_ctx::{a2, gr24};
    use super::*;

    fn cplus(ctx: &CominusculeContext) -> FieldElement {
        let q = ctx.scalars().nu();
        &q + &ctx.scalars().nu_pow_int(-1)
    }

    #[test]
    fn rejects_non_cominuscule_nodes() {
        assert!(matches!(
            CominusculeContext::build(Type::C, 2, 0),
            Err(CliffError::NotCominuscule)
        ));
        assert!(matches!(
            CominusculeContext::build(Type::G, 2, 0),
            Err(CliffError::NotCominuscule)
        ));
        assert!(matches!(
            CominusculeContext::build(Type::G, 2, 1),
            Err(CliffError::NotCominuscule)
        ));
        assert!(matches!(
            CominusculeContext::build(Type::B, 3, 2),
            Err(CliffError::NotCominuscule)
        ));
    }

    #[test]
    fn projective_line_clifford() {
        let ctx = shared_ctx::a1();
        assert_eq!(ctx.radical_rank(), 1);
        assert_eq!(ctx.plus_algebra().graded_dims(), vec![1, 1]);
        assert!(ctx.schubert_relations().unwrap().is_empty());
        assert_eq!(ctx.gamma_rank().unwrap(), 4);
        assert_eq!(ctx.gamma_matrix().rank(), 4);

        let one = ctx.scalars().one();
        let rel = ctx.commutation_relations(0, 0).unwrap();
        assert_eq!(rel, vec![((0, 0), one.clone()), ((1, 1), &ctx.scalars().zero() - &one)]);

        let z = ctx.frobenius_dual_basis(Side::Plus).unwrap();
        assert_eq!(z[0], ctx.plus_algebra().unit_vector(1));
        assert_eq!(z[1], ctx.plus_algebra().unit_vector(0));

        let star = ctx.star_preset_a().unwrap();
        assert_eq!(star.adjoint(&ctx.creation_generator(0)), ctx.annihilation_generator(0));
        ctx.audit().unwrap();
    }

    #[test]
    fn projective_plane_root_vectors_and_module() {
        let ctx = a2();
        let uq = ctx.uq();
        let q_inv = ctx.scalars().nu_pow_int(-1);
        let theta = Root::simple(2, 0).add(&Root::simple(2, 1));
        assert_eq!(ctx.xi(), &[theta, Root::simple(2, 0)]);

        let expected0 = uq
            .mul(&uq.e(0), &uq.e(1))
            .scale(&q_inv)
            .sub(&uq.mul(&uq.e(1), &uq.e(0)));
        assert!(ctx.schubert_generator(0).sub(&expected0).is_zero());
        assert!(ctx.schubert_generator(1).sub(&uq.e(0)).is_zero());

        let d = ctx.scalars().d();
        let one = ctx.scalars().one();
        let mut e1 = Matrix::zeros(d, 2, 2);
        e1.set(0, 1, &ctx.scalars().zero() - &one);
        let mut f1 = Matrix::zeros(d, 2, 2);
        f1.set(1, 0, &ctx.scalars().zero() - &one);
        assert_eq!(*ctx.u_plus().e_mat(1), e1);
        assert_eq!(*ctx.u_plus().f_mat(1), f1);
        assert!(ctx.u_plus().e_mat(0).is_zero());
        assert!(ctx.u_plus().f_mat(0).is_zero());

        let rels = ctx.schubert_relations().unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!((rels[0].k, rels[0].l, rels[0].exponent), (0, 1, -1));
        assert!(rels[0].terms.is_empty());
    }

    #[test]
    fn projective_plane_exterior_relations() {
        let ctx = a2();
        let q = ctx.scalars().nu();
        let qi = ctx.scalars().nu_pow_int(-1);
        let neg = |x: &FieldElement| &ctx.scalars().zero() - x;
        let plus = ctx.plus_algebra();
        assert_eq!(plus.graded_dims(), vec![1, 2, 1]);
        assert_eq!(plus.product_basis(2, 1), &[(3, neg(&q))]);
        assert_eq!(plus.product_basis(1, 2), &[(3, ctx.scalars().one())]);
        assert!(plus.product_basis(1, 1).is_empty());
        assert!(plus.product_basis(2, 2).is_empty());
        let minus = ctx.minus_algebra();
        assert_eq!(minus.product_basis(2, 1), &[(3, neg(&qi))]);
        assert_eq!(minus.product_basis(1, 2), &[(3, ctx.scalars().one())]);
    }

    #[test]
    fn projective_plane_lifts_and_pairing() {
        let ctx = a2();
        let s = ctx.scalars();
        let d = s.d();
        let c = cplus(ctx);
        let c_inv = c.inv().unwrap();
        let neg = |x: &FieldElement| &s.zero() - x;

        assert_eq!(*ctx.pairing_block(0), Matrix::identity(d, 1));
        assert_eq!(*ctx.pairing_block(1), Matrix::identity(d, 2));
        let mut g2 = Matrix::zeros(d, 1, 1);
        g2.set(0, 0, neg(&c_inv));
        assert_eq!(*ctx.pairing_block(2), g2);

        // Lift of the top wedge: (q^{-1} x1 (x) x2 - x2 (x) x1)/(q + q^{-1}).
        let lift = ctx.plus_lift(2);
        assert_eq!(lift.rows(), 4);
        assert!(lift.get(0, 0).is_zero());
        assert_eq!(*lift.get(1, 0), &s.nu_pow_int(-1) * &c_inv);
        assert_eq!(*lift.get(2, 0), neg(&c_inv));
        assert!(lift.get(3, 0).is_zero());
        let lift = ctx.minus_lift(2);
        assert_eq!(*lift.get(1, 0), &s.nu() * &c_inv);
        assert_eq!(*lift.get(2, 0), neg(&c_inv));
    }

    #[test]
    fn projective_plane_operator_matrices() {
        let ctx = a2();
        let s = ctx.scalars();
        let d = s.d();
        let one = s.one();
        let q = s.nu();
        let neg = |x: &FieldElement| &s.zero() - x;
        let c = cplus(ctx);
        let c_inv = c.inv().unwrap();
        let one_plus_q2 = (&s.one() + &s.nu_pow_int(2)).inv().unwrap();

        let mut cre0 = Matrix::zeros(d, 4, 4);
        cre0.set(1, 0, one.clone());
        cre0.set(3, 2, one.clone());
        assert_eq!(ctx.creation_generator(0), cre0);

        let mut cre1 = Matrix::zeros(d, 4, 4);
        cre1.set(2, 0, one.clone());
        cre1.set(3, 1, neg(&q));
        assert_eq!(ctx.creation_generator(1), cre1);

        let mut ann0 = Matrix::zeros(d, 4, 4);
        ann0.set(0, 1, one.clone());
        ann0.set(2, 3, one_plus_q2.clone());
        assert_eq!(ctx.annihilation_generator(0), ann0);

        let mut ann1 = Matrix::zeros(d, 4, 4);
        ann1.set(0, 2, one.clone());
        ann1.set(1, 3, neg(&c_inv));
        assert_eq!(ctx.annihilation_generator(1), ann1);

        // Annihilation kills the unit.
        for i in 0..2 {
            let m = ctx.annihilation_generator(i);
            for r in 0..4 {
                assert!(m.get(r, 0).is_zero());
            }
        }

        // Both operator families are algebra homomorphisms.
        let top_cre = ctx.creation(&ctx.plus_algebra().unit_vector(3));
        assert_eq!(cre0.mul(&cre1), top_cre);
        assert_eq!(cre1.mul(&cre0), top_cre.scale(&neg(&q)));
        let top_ann = ctx.annihilation(&ctx.minus_algebra().unit_vector(3));
        assert_eq!(ann0.mul(&ann1), top_ann);
        assert_eq!(ann1.mul(&ann0), top_ann.scale(&neg(&s.nu_pow_int(-1))));
    }

    #[test]
    fn projective_plane_commutation_relations() {
        let ctx = a2();
        let s = ctx.scalars();
        let d = s.d();
        let q = s.nu();
        let qi = s.nu_pow_int(-1);
        let c = cplus(ctx);
        let cre0 = ctx.creation_generator(0);
        let cre1 = ctx.creation_generator(1);
        let ann0 = ctx.annihilation_generator(0);
        let ann1 = ctx.annihilation_generator(1);
        let top_cre = ctx.creation(&ctx.plus_algebra().unit_vector(3));
        let top_ann = ctx.annihilation(&ctx.minus_algebra().unit_vector(3));

        // x1 y1 + x2 y2 = 1 + (q + q^{-1}) y12 x12.
        let lhs = cre0.mul(&ann0).add(&cre1.mul(&ann1));
        let rhs = Matrix::identity(d, 4).add(&top_ann.mul(&top_cre).scale(&c));
        assert_eq!(lhs, rhs);

        // q x1 y1 - q^{-1} x2 y2 = (q + q^{-1})(y2 x2 - y1 x1).
        let lhs = cre0.mul(&ann0).scale(&q).sub(&cre1.mul(&ann1).scale(&qi));
        let rhs = ann1.mul(&cre1).sub(&ann0.mul(&cre0)).scale(&c);
        assert_eq!(lhs, rhs);

        // x1 y2 = -(q + q^{-1}) y2 x1 and x2 y1 = -(q + q^{-1}) y1 x2.
        let neg_c = &s.zero() - &c;
        assert_eq!(cre0.mul(&ann1), ann1.mul(&cre0).scale(&neg_c));
        assert_eq!(cre1.mul(&ann0), ann0.mul(&cre1).scale(&neg_c));

        let rel = ctx.commutation_relations(0, 1).unwrap();
        assert_eq!(rel, vec![((2, 1), neg_c.clone())]);

        // Solved expansion reconstructs the product, with scalar part
        // q^{-1}/(q + q^{-1}).
        let rel = ctx.commutation_relations(0, 0).unwrap();
        let scalar = rel.iter().find(|(p, _)| *p == (0, 0)).unwrap();
        assert_eq!(scalar.1, &qi * &c.inv().unwrap());
        let mut recon = Matrix::zeros(d, 4, 4);
        for ((jj, ii), co) in &rel {
            let term = ctx
                .annihilation(&ctx.minus_algebra().unit_vector(*jj))
                .mul(&ctx.creation(&ctx.plus_algebra().unit_vector(*ii)));
            recon = recon.add(&term.scale(co));
        }
        assert_eq!(recon, cre0.mul(&ann0));
    }

    #[test]
    fn projective_plane_gamma_factorization() {
        let ctx = a2();
        assert_eq!(ctx.gamma_matrix().rank(), 16);
        assert_eq!(ctx.gamma_rank().unwrap(), 16);
    }

    #[test]
    fn projective_plane_frobenius_dual_bases() {
        let ctx = a2();
        let s = ctx.scalars();
        let neg = |x: &FieldElement| &s.zero() - x;
        let z = ctx.frobenius_dual_basis(Side::Plus).unwrap();
        assert_eq!(z[0], ctx.plus_algebra().unit_vector(3));
        assert_eq!(z[1], ctx.plus_algebra().unit_vector(2));
        let mut zm = vec![s.zero(); 4];
        zm[1] = neg(&s.nu_pow_int(-1));
        assert_eq!(z[2], zm);
        assert_eq!(z[3], ctx.plus_algebra().unit_vector(0));

        // x_I wedge z_I is exactly the top basis vector, and x_I wedge z_J
        // has no top component for I != J in matching degrees.
        let alg = ctx.plus_algebra();
        for i in 0..4 {
            let prod = alg.product(&alg.unit_vector(i), &z[i]);
            assert_eq!(prod, alg.unit_vector(alg.top_index()));
            for j in 0..4 {
                if j != i && alg.degree(j) == alg.degree(i) {
                    let prod = alg.product(&alg.unit_vector(j), &z[i]);
                    assert!(prod[alg.top_index()].is_zero());
                }
            }
        }

        let z = ctx.frobenius_dual_basis(Side::Minus).unwrap();
        assert_eq!(z[1], ctx.minus_algebra().unit_vector(2));
        let mut zm = vec![s.zero(); 4];
        zm[1] = neg(&s.nu());
        assert_eq!(z[2], zm);
    }

    #[test]
    fn projective_plane_star_presets() {
        let ctx = a2();
        let s = ctx.scalars();
        let d = s.d();
        let q = s.nu();
        let qi = s.nu_pow_int(-1);
        let c = cplus(ctx);
        let neg = |x: &FieldElement| &s.zero() - x;
        let cre0 = ctx.creation_generator(0);
        let cre1 = ctx.creation_generator(1);
        let ann0 = ctx.annihilation_generator(0);
        let ann1 = ctx.annihilation_generator(1);

        for (star, alpha) in [
            (ctx.star_preset_a().unwrap(), s.one()),
            (ctx.star_preset_b().unwrap(), qi.clone()),
        ] {
            // Gram: diag(1, alpha, q alpha, alpha^2/(q + q^{-1})).
            let gamma = &(&alpha * &alpha) * &c.inv().unwrap();
            let mut m = Matrix::zeros(d, 4, 4);
            m.set(0, 0, s.one());
            m.set(1, 1, alpha.clone());
            m.set(2, 2, &q * &alpha);
            m.set(3, 3, gamma.clone());
            assert_eq!(*star.gram(), m);

            // Adjoints of the creation operators in terms of (alpha, gamma).
            let mut adj0 = Matrix::zeros(d, 4, 4);
            adj0.set(0, 1, alpha.clone());
            adj0.set(2, 3, gamma.div(&(&q * &alpha)).unwrap());
            assert_eq!(star.adjoint(&cre0), adj0);
            let mut adj1 = Matrix::zeros(d, 4, 4);
            adj1.set(0, 2, &q * &alpha);
            adj1.set(1, 3, neg(&(&q * &gamma.div(&alpha).unwrap())));
            assert_eq!(star.adjoint(&cre1), adj1);

            // Involution and antihomomorphism.
            assert_eq!(star.adjoint(&star.adjoint(&cre1)), cre1);
            assert_eq!(
                star.adjoint(&cre0.mul(&cre1)),
                star.adjoint(&cre1).mul(&star.adjoint(&cre0))
            );
        }

        // Preset scalars relating starred creation to annihilation.
        let star = ctx.star_preset_a().unwrap();
        assert_eq!(star.adjoint(&cre0), ann0);
        assert_eq!(star.adjoint(&cre1), ann1.scale(&q));
        let star = ctx.star_preset_b().unwrap();
        assert_eq!(star.adjoint(&cre0), ann0.scale(&qi));
        assert_eq!(star.adjoint(&cre1), ann1);

        // The inner product is invariant for the compact real form: the
        // adjoint of E_j is K_j F_j and the adjoint of F_j is E_j K_j^{-1}
        // on the exterior algebra, for Levi nodes j.
        let star = ctx.star_preset_a().unwrap();
        let lambda = ctx.lambda_plus();
        let rs = ctx.root_system();
        for &j in ctx.levi_nodes() {
            let alpha_j = rs.alpha_as_weight(j);
            let mut k = Matrix::zeros(d, lambda.dim(), lambda.dim());
            let mut k_inv = Matrix::zeros(d, lambda.dim(), lambda.dim());
            for i in 0..lambda.dim() {
                let form = rs.weight_form(&alpha_j, lambda.weight(i));
                k.set(i, i, s.nu_pow_rat(&form).unwrap());
                k_inv.set(i, i, s.nu_pow_rat(&(-&form)).unwrap());
            }
            assert_eq!(star.adjoint(lambda.e_mat(j)), k.mul(lambda.f_mat(j)));
            assert_eq!(star.adjoint(lambda.f_mat(j)), lambda.e_mat(j).mul(&k_inv));
        }

        // Positivity spot check at q0 = 1.3.
        for i in 0..4 {
            let v = star.gram().get(i, i).specialize_f64(1.3).unwrap();
            assert!(v > 0.0);
        }
    }

    #[test]
    fn projective_plane_audit() {
        a2().audit().unwrap();
    }

    #[test]
    fn grassmannian_structure() {
        let ctx = gr24();
        assert_eq!(ctx.radical_rank(), 4);
        let theta = ctx.root_system().highest_root().clone();
        assert_eq!(ctx.xi()[0], theta);
        let mut sums: Vec<Vec<i64>> = ctx.xi().iter().map(|r| r.coeffs().to_vec()).collect();
        sums.sort();
        assert_eq!(
            sums,
            vec![
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![1, 1, 0],
                vec![1, 1, 1],
            ]
        );
        assert_eq!(ctx.plus_algebra().graded_dims(), vec![1, 4, 6, 4, 1]);
        assert_eq!(ctx.minus_algebra().graded_dims(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn lagrangian_grassmannian_structure() {
        // C2 with the long node crossed out: the radical has the three
        // roots a2, a1+a2, 2a1+a2 and both exterior algebras are flat.
        let ctx = CominusculeContext::build(Type::C, 2, 1).unwrap();
        assert_eq!(ctx.radical_rank(), 3);
        assert_eq!(ctx.xi()[0], ctx.root_system().highest_root().clone());
        assert_eq!(ctx.plus_algebra().graded_dims(), vec![1, 3, 3, 1]);
        assert_eq!(ctx.minus_algebra().graded_dims(), vec![1, 3, 3, 1]);
        assert_eq!(ctx.gamma_rank().unwrap(), 64);
        ctx.audit().unwrap();
    }

    #[test]
    fn grassmannian_schubert_relations() {
        let ctx = gr24();
        let rels = ctx.schubert_relations().unwrap();
        assert_eq!(rels.len(), 6);
        for r in &rels {
            if (r.k, r.l) == (0, 3) {
                assert_eq!(r.exponent, 0);
                assert_eq!(r.terms.len(), 1);
                assert_eq!((r.terms[0].0, r.terms[0].1), (1, 2));
                assert!(!r.terms[0].2.is_zero());
            } else {
                assert!(r.terms.is_empty(), "unexpected middle terms at {:?}", (r.k, r.l));
            }
        }
        let expected: Vec<i64> = rels
            .iter()
            .map(|r| -ctx.root_system().root_form(&ctx.xi()[r.k], &ctx.xi()[r.l]))
            .collect();
        let actual: Vec<i64> = rels.iter().map(|r| r.exponent).collect();
        assert_eq!(actual, expected);
        assert_eq!(actual.iter().filter(|&&e| e == -1).count(), 4);
        assert_eq!(actual.iter().filter(|&&e| e == 0).count(), 2);
    }

    #[test]
    fn grassmannian_gamma_factorization_rank() {
        assert_eq!(gr24().gamma_rank().unwrap(), 256);
    }

    #[test]
    fn grassmannian_audit() {
        gr24().audit().unwrap();
    }

    #[test]
    fn straightening_leading_terms() {
        // The straightened product y_l y_k has leading term
        // -nu^{-(xi_k, xi_l)} y_k y_l; residual terms are ordered pairs of
        // the same total weight.
        for ctx in [a2(), gr24()] {
            let rs = ctx.root_system();
            let xi = ctx.xi();
            let alg = ctx.minus_algebra();
            let n = alg.generators();
            for k in 0..n {
                for l in k + 1..n {
                    let a = alg.index_of(&[l]).unwrap();
                    let b = alg.index_of(&[k]).unwrap();
                    let expect = {
                        let e = -rs.root_form(&xi[k], &xi[l]);
                        &ctx.scalars().zero() - &ctx.scalars().nu_pow_int(e)
                    };
                    let mut saw_lead = false;
                    for (t, co) in alg.product_basis(a, b) {
                        let s = alg.subset(*t);
                        let (p, r) = (s[0], s[1]);
                        if (p, r) == (k, l) {
                            assert_eq!(*co, expect);
                            saw_lead = true;
                        } else {
                            assert!(p < r);
                            assert_eq!(xi[p].add(&xi[r]), xi[k].add(&xi[l]));
                        }
                    }
                    assert!(saw_lead);
                }
            }
        }

        // Plus side leading coefficient carries the opposite power.
        let ctx = a2();
        let lead = ctx.plus_algebra().product_basis(2, 1);
        let e = ctx.root_system().root_form(&ctx.xi()[0], &ctx.xi()[1]);
        assert_eq!(lead[0].1, &ctx.scalars().zero() - &ctx.scalars().nu_pow_int(e));
    }
}
