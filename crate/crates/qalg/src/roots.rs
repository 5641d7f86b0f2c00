//! Root systems, Weyl group combinatorics, and parabolic data.
//!
//! Conventions used throughout the crate:
//!
//! * Nodes of the Dynkin diagram are indexed `0..rank` following the usual
//!   Bourbaki numbering of each type (shifted down by one).
//! * The Cartan matrix entry is `a[i][j] = 2 (alpha_i, alpha_j) / (alpha_i,
//!   alpha_i)`, so the simple root `alpha_j` written in fundamental-weight
//!   coordinates is column `j` of the Cartan matrix.
//! * The invariant form is normalized so short roots have squared length 2;
//!   the symmetrizers `d_i = (alpha_i, alpha_i) / 2` lie in `{1, 2, 3}`.
//! * [`Root`] stores simple-root coordinates, [`Weight`] stores
//!   fundamental-weight coordinates. Both are integer vectors.

use crate::scalar::QRat;
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Simple Lie type labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Type {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Type {
    pub const ALL: [Type; 7] = [Type::A, Type::B, Type::C, Type::D, Type::E, Type::F, Type::G];

    pub fn parse(s: &str) -> Option<Type> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Type::A),
            "B" => Some(Type::B),
            "C" => Some(Type::C),
            "D" => Some(Type::D),
            "E" => Some(Type::E),
            "F" => Some(Type::F),
            "G" => Some(Type::G),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Type::A => "A",
            Type::B => "B",
            Type::C => "C",
            Type::D => "D",
            Type::E => "E",
            Type::F => "F",
            Type::G => "G",
        }
    }

    /// Ranks for which this type names a simple root system, avoiding the
    /// low-rank coincidences (B1, C1, D2, D3).
    pub fn valid_rank(&self, rank: usize) -> bool {
        match self {
            Type::A => rank >= 1,
            Type::B | Type::C => rank >= 2,
            Type::D => rank >= 4,
            Type::E => (6..=8).contains(&rank),
            Type::F => rank == 4,
            Type::G => rank == 2,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("rank {rank} is not valid for type {typ}")]
    InvalidRank { typ: String, rank: usize },
    #[error("node index {node} out of range for rank {rank}")]
    InvalidNode { node: usize, rank: usize },
    #[error("word is not reduced")]
    NotReduced,
}

/// A root in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root{:?}", self.0)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight{:?}", self.0)
    }
}

/// A finite irreducible root system with its Weyl-group machinery.
#[derive(Clone, Debug)]
pub struct RootSystem {
    typ: Type,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive: Vec<Root>,
    cartan_inv: Vec<Vec<QRat>>,
}

impl RootSystem {
    pub fn new(typ: Type, rank: usize) -> Result<RootSystem, RootError> {
        if !typ.valid_rank(rank) {
            return Err(RootError::InvalidRank {
                typ: typ.as_str().to_string(),
                rank,
            });
        }
        let (cartan, d) = cartan_and_symmetrizers(typ, rank);
        let cartan_inv = invert_integer_matrix(&cartan);
        let positive = enumerate_positive_roots(&cartan);
        Ok(RootSystem {
            typ,
            rank,
            cartan,
            d,
            positive,
            cartan_inv,
        })
    }

    pub fn typ(&self) -> Type {
        self.typ
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Symmetrizer `d_i = (alpha_i, alpha_i)/2`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    /// Entry of the inverse Cartan matrix, `(A^{-1})_{ij}`.
    pub fn cartan_inverse_entry(&self, i: usize, j: usize) -> &QRat {
        &self.cartan_inv[i][j]
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("nonempty root system")
    }

    /// Positive roots whose support lies inside the given node set.
    pub fn positive_roots_supported(&self, nodes: &[usize]) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|r| {
                r.0.iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || nodes.contains(&i))
            })
            .cloned()
            .collect()
    }

    /// `alpha_j` in fundamental-weight coordinates: column `j` of the Cartan
    /// matrix.
    pub fn alpha_as_weight(&self, j: usize) -> Weight {
        Weight((0..self.rank).map(|i| self.cartan[i][j]).collect())
    }

    /// Convert simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, r: &Root) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * r.0[j]).sum())
                .collect(),
        )
    }

    /// Invariant form of two roots; always an integer.
    pub fn root_form(&self, b: &Root, g: &Root) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += b.0[i] * self.d[i] * self.cartan[i][j] * g.0[j];
            }
        }
        acc
    }

    /// `(beta, beta)/2`, the symmetrizer of a root.
    pub fn root_norm_half(&self, b: &Root) -> i64 {
        let n = self.root_form(b, b);
        debug_assert_eq!(n % 2, 0);
        n / 2
    }

    /// Invariant form of a weight with a root; always an integer because
    /// `(omega_i, alpha_j) = d_j delta_ij`.
    pub fn weight_root_form(&self, l: &Weight, b: &Root) -> i64 {
        (0..self.rank).map(|j| l.0[j] * self.d[j] * b.0[j]).sum()
    }

    /// Invariant form of two weights, a rational number with denominator
    /// dividing the scalar denominator of the system.
    pub fn weight_form(&self, l: &Weight, m: &Weight) -> QRat {
        let mut acc = QRat::zero();
        for i in 0..self.rank {
            if l.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if m.0[j] == 0 {
                    continue;
                }
                acc += QRat::from_integer(BigInt::from(l.0[i] * self.d[i] * m.0[j]))
                    * &self.cartan_inv[i][j];
            }
        }
        acc
    }

    /// Half-sum of the positive roots.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// `(lambda, lambda + 2 rho)`, the Casimir exponent of the highest
    /// weight `lambda`.
    pub fn casimir_exponent(&self, l: &Weight) -> QRat {
        let mut acc = self.weight_form(l, l);
        for b in &self.positive {
            acc += QRat::from_integer(BigInt::from(self.weight_root_form(l, b)));
        }
        acc
    }

    /// Casimir exponent relative to a sub-root-system given by the listed
    /// positive roots: `(lambda, lambda) + sum_beta (lambda, beta)`.
    pub fn casimir_exponent_relative(&self, l: &Weight, positive: &[Root]) -> QRat {
        let mut acc = self.weight_form(l, l);
        for b in positive {
            acc += QRat::from_integer(BigInt::from(self.weight_root_form(l, b)));
        }
        acc
    }

    /// Least common denominator of the weight-form Gram matrix
    /// `(omega_i, omega_j)`; exponents of the deformation parameter on
    /// weight lattices lie in `(1/D) Z` for this `D`.
    pub fn scalar_denominator(&self) -> u32 {
        let mut lcm = BigInt::one();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let den = (QRat::from_integer(BigInt::from(self.d[i])) * &self.cartan_inv[i][j])
                    .denom()
                    .clone();
                lcm = num::integer::lcm(lcm, den.abs());
            }
        }
        u32::try_from(lcm).expect("scalar denominator fits in u32")
    }

    /// Apply the simple reflection `s_i` to a weight.
    pub fn reflect_weight(&self, i: usize, l: &Weight) -> Weight {
        let c = l.0[i];
        Weight(
            (0..self.rank)
                .map(|k| l.0[k] - c * self.cartan[k][i])
                .collect(),
        )
    }

    /// Apply the simple reflection `s_i` to a root.
    pub fn reflect_root(&self, i: usize, r: &Root) -> Root {
        let c: i64 = (0..self.rank).map(|j| self.cartan[i][j] * r.0[j]).sum();
        let mut v = r.0.clone();
        v[i] -= c;
        Root(v)
    }

    /// Subtract `alpha_j` from a weight (the weight shift of a lowering
    /// operator).
    pub fn weight_sub_alpha(&self, l: &Weight, j: usize) -> Weight {
        l.sub(&self.alpha_as_weight(j))
    }

    pub fn weight_add_alpha(&self, l: &Weight, j: usize) -> Weight {
        l.add(&self.alpha_as_weight(j))
    }

    /// Nodes whose simple root appears with coefficient one in the highest
    /// root.
    pub fn cominuscule_nodes(&self) -> Vec<usize> {
        let theta = self.highest_root();
        (0..self.rank).filter(|&i| theta.0[i] == 1).collect()
    }

    /// Dimension of the irreducible module with dominant highest weight
    /// `lambda`, by the product formula over positive roots.
    pub fn weyl_dimension(&self, l: &Weight) -> u64 {
        assert!(l.is_dominant(), "highest weight must be dominant");
        let rho = self.rho();
        let lr = l.add(&rho);
        let mut acc = QRat::one();
        for b in &self.positive {
            let num = self.weight_root_form(&lr, b);
            let den = self.weight_root_form(&rho, b);
            acc *= QRat::new(BigInt::from(num), BigInt::from(den));
        }
        assert!(acc.is_integer());
        u64::try_from(acc.to_integer()).expect("dimension fits in u64")
    }

    /// Greedy reduced word for the longest Weyl element: repeatedly reflect
    /// the Weyl vector at the smallest node where it is still positive. The
    /// returned word is in product order, leftmost factor first.
    pub fn longest_word(&self) -> Vec<usize> {
        self.longest_word_levi(&(0..self.rank).collect::<Vec<_>>())
    }

    /// Longest word of the parabolic subgroup generated by the listed nodes.
    pub fn longest_word_levi(&self, nodes: &[usize]) -> Vec<usize> {
        let mut v = self.rho();
        let mut appended = Vec::new();
        loop {
            let Some(&i) = nodes.iter().filter(|&&i| v.0[i] > 0).min() else {
                break;
            };
            v = self.reflect_weight(i, &v);
            appended.push(i);
        }
        appended.reverse();
        appended
    }

    /// The sequence `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})` attached
    /// to a word. For a reduced word of the longest element this enumerates
    /// the positive roots in a convex order.
    pub fn roots_from_word(&self, word: &[usize]) -> Vec<Root> {
        let mut out = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let mut r = Root::simple(self.rank, word[k]);
            for &i in word[..k].iter().rev() {
                r = self.reflect_root(i, &r);
            }
            out.push(r);
        }
        out
    }

    /// A word is reduced exactly when its attached root sequence consists of
    /// distinct positive roots.
    pub fn is_reduced_word(&self, word: &[usize]) -> bool {
        let roots = self.roots_from_word(word);
        let mut seen = BTreeSet::new();
        roots.iter().all(|r| r.is_positive() && seen.insert(r.clone()))
    }

    /// Build the Weyl element of a word in product order.
    pub fn weyl_element(&self, word: &[usize]) -> WeylElement {
        let mut w = WeylElement::identity(self.rank);
        for &i in word {
            w = w.mul(&WeylElement::simple(self, i));
        }
        w
    }

    /// Parabolic data for the maximal parabolic crossing out `node`.
    pub fn parabolic(&self, node: usize) -> Result<ParabolicDatum, RootError> {
        if node >= self.rank {
            return Err(RootError::InvalidNode {
                node,
                rank: self.rank,
            });
        }
        let levi_nodes: Vec<usize> = (0..self.rank).filter(|&i| i != node).collect();
        let levi_word = self.longest_word_levi(&levi_nodes);
        let w0 = self.weyl_element(&self.longest_word());
        let w0l = self.weyl_element(&levi_word);
        let wl = w0l.mul(&w0);
        let coset_word = wl.reduced_word(self);
        let mut full = levi_word.clone();
        full.extend_from_slice(&coset_word);
        if !self.is_reduced_word(&full) {
            return Err(RootError::NotReduced);
        }
        let chain = self.roots_from_word(&full);
        let radical_roots = chain[levi_word.len()..].to_vec();
        let cominuscule = self.highest_root().0[node] == 1;
        debug_assert!(radical_roots.iter().all(|r| r.0[node] >= 1));
        Ok(ParabolicDatum {
            node,
            levi_nodes,
            levi_word,
            coset_word,
            radical_roots,
            cominuscule,
        })
    }
}

/// An element of the Weyl group as a pair of mutually inverse integer
/// matrices acting on simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    mat: Vec<Vec<i64>>,
    inv: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        let id: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            mat: id.clone(),
            inv: id,
        }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> WeylElement {
        let n = rs.rank();
        let mut m = WeylElement::identity(n).mat;
        for j in 0..n {
            m[i][j] -= rs.a(i, j);
        }
        WeylElement {
            mat: m.clone(),
            inv: m,
        }
    }

    /// Composition: `self` applied after `other` becomes `self.mul(other)`
    /// reading words left to right.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            mat: mat_mul(&self.mat, &other.mat),
            inv: mat_mul(&other.inv, &self.inv),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
    }

    pub fn apply_root(&self, r: &Root) -> Root {
        Root(
            self.mat
                .iter()
                .map(|row| row.iter().zip(&r.0).map(|(a, c)| a * c).sum())
                .collect(),
        )
    }

    pub fn apply_root_inverse(&self, r: &Root) -> Root {
        Root(
            self.inv
                .iter()
                .map(|row| row.iter().zip(&r.0).map(|(a, c)| a * c).sum())
                .collect(),
        )
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|r| !self.apply_root(r).is_positive())
            .count()
    }

    /// Greedy reduced word in product order: repeatedly strip the smallest
    /// left descent.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while !w.is_identity() {
            let i = (0..rs.rank())
                .find(|&i| {
                    !w.apply_root_inverse(&Root::simple(rs.rank(), i))
                        .is_positive()
                })
                .expect("non-identity element has a left descent");
            word.push(i);
            w = WeylElement::simple(rs, i).mul(&w);
        }
        word
    }
}

/// Data of a maximal parabolic subalgebra: the crossed node, the Levi part,
/// factorized reduced words, and the roots of the nilradical in the order
/// induced by the word factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDatum {
    node: usize,
    levi_nodes: Vec<usize>,
    levi_word: Vec<usize>,
    coset_word: Vec<usize>,
    radical_roots: Vec<Root>,
    cominuscule: bool,
}

impl ParabolicDatum {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn levi_nodes(&self) -> &[usize] {
        &self.levi_nodes
    }

    pub fn levi_word(&self) -> &[usize] {
        &self.levi_word
    }

    pub fn coset_word(&self) -> &[usize] {
        &self.coset_word
    }

    /// Reduced word for the longest element factored through the parabolic:
    /// the Levi word followed by the coset word.
    pub fn full_word(&self) -> Vec<usize> {
        let mut w = self.levi_word.clone();
        w.extend_from_slice(&self.coset_word);
        w
    }

    /// Roots of the nilradical, `xi_1, ..., xi_m`, ordered by the word
    /// factorization; `xi_1` is the highest root for cominuscule nodes.
    pub fn radical_roots(&self) -> &[Root] {
        &self.radical_roots
    }

    pub fn is_cominuscule(&self) -> bool {
        self.cominuscule
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn cartan_and_symmetrizers(typ: Type, rank: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let single = |i: usize, j: usize, a: &mut Vec<Vec<i64>>| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let d;
    match typ {
        Type::A => {
            for i in 0..n.saturating_sub(1) {
                single(i, i + 1, &mut a);
            }
            d = vec![1; n];
        }
        Type::B => {
            // Nodes 0..n-2 long, node n-1 short.
            for i in 0..n - 1 {
                single(i, i + 1, &mut a);
            }
            a[n - 1][n - 2] = -2;
            let mut dd = vec![2; n];
            dd[n - 1] = 1;
            d = dd;
        }
        Type::C => {
            // Nodes 0..n-2 short, node n-1 long.
            for i in 0..n - 1 {
                single(i, i + 1, &mut a);
            }
            a[n - 2][n - 1] = -2;
            let mut dd = vec![1; n];
            dd[n - 1] = 2;
            d = dd;
        }
        Type::D => {
            for i in 0..n - 2 {
                single(i, i + 1, &mut a);
            }
            single(n - 3, n - 1, &mut a);
            d = vec![1; n];
        }
        Type::E => {
            let edges: Vec<(usize, usize)> = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
                .into_iter()
                .chain((6..n).map(|k| (k - 1, k)))
                .collect();
            for (i, j) in edges {
                single(i, j, &mut a);
            }
            d = vec![1; n];
        }
        Type::F => {
            // Nodes 0,1 long, nodes 2,3 short, double edge between 1 and 2.
            single(0, 1, &mut a);
            single(2, 3, &mut a);
            a[1][2] = -1;
            a[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        Type::G => {
            // Node 0 short, node 1 long.
            a[0][1] = -3;
            a[1][0] = -1;
            d = vec![1, 3];
        }
    }
    debug_assert!({
        let sym = (0..n).all(|i| (0..n).all(|j| d[i] * a[i][j] == d[j] * a[j][i]));
        sym
    });
    (a, d)
}

/// All roots are reachable from the simple roots by simple reflections, so
/// saturating the reflection action and keeping the nonnegative vectors
/// enumerates the positive roots.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut all: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    loop {
        let mut new = Vec::new();
        for r in &all {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| cartan[i][j] * r.0[j]).sum();
                let mut v = r.0.clone();
                v[i] -= c;
                let s = Root(v);
                if !all.contains(&s) {
                    new.push(s);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        all.extend(new);
    }
    let mut pos: Vec<Root> = all.into_iter().filter(|r| r.is_positive()).collect();
    pos.sort_by_key(|r| (r.height(), r.0.clone()));
    pos
}

fn invert_integer_matrix(m: &[Vec<i64>]) -> Vec<Vec<QRat>> {
    let n = m.len();
    let mut aug: Vec<Vec<QRat>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        QRat::from_integer(BigInt::from(m[i][j]))
                    } else {
                        QRat::from_integer(BigInt::from(i64::from(j - n == i)))
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("matrix is invertible");
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for j in 0..2 * n {
            aug[col][j] = &aug[col][j] / &p;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for j in 0..2 * n {
                let v = &aug[r][j] - &(&aug[col][j] * &f);
                aug[r][j] = v;
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: Type, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (Type::A, 3, 6),
            (Type::B, 3, 9),
            (Type::C, 3, 9),
            (Type::D, 4, 12),
            (Type::E, 6, 36),
            (Type::E, 7, 63),
            (Type::E, 8, 120),
            (Type::F, 4, 24),
            (Type::G, 2, 6),
        ];
        for (t, n, count) in cases {
            assert_eq!(rs(t, n).positive_roots().len(), count, "{t}{n}");
        }
    }

    #[test]
    fn highest_roots_match_known_tables() {
        let cases: Vec<(Type, usize, Vec<i64>)> = vec![
            (Type::A, 3, vec![1, 1, 1]),
            (Type::B, 3, vec![1, 2, 2]),
            (Type::C, 3, vec![2, 2, 1]),
            (Type::D, 4, vec![1, 2, 1, 1]),
            (Type::E, 6, vec![1, 2, 2, 3, 2, 1]),
            (Type::E, 7, vec![2, 2, 3, 4, 3, 2, 1]),
            (Type::E, 8, vec![2, 3, 4, 6, 5, 4, 3, 2]),
            (Type::F, 4, vec![2, 3, 4, 2]),
            (Type::G, 2, vec![3, 2]),
        ];
        for (t, n, coeffs) in cases {
            assert_eq!(rs(t, n).highest_root().coeffs(), &coeffs[..], "{t}{n}");
        }
    }

    #[test]
    fn cominuscule_node_census() {
        assert_eq!(rs(Type::A, 4).cominuscule_nodes(), vec![0, 1, 2, 3]);
        assert_eq!(rs(Type::B, 3).cominuscule_nodes(), vec![0]);
        assert_eq!(rs(Type::C, 3).cominuscule_nodes(), vec![2]);
        assert_eq!(rs(Type::D, 4).cominuscule_nodes(), vec![0, 2, 3]);
        assert_eq!(rs(Type::D, 5).cominuscule_nodes(), vec![0, 3, 4]);
        assert_eq!(rs(Type::E, 6).cominuscule_nodes(), vec![0, 5]);
        assert_eq!(rs(Type::E, 7).cominuscule_nodes(), vec![6]);
        assert!(rs(Type::E, 8).cominuscule_nodes().is_empty());
        assert!(rs(Type::F, 4).cominuscule_nodes().is_empty());
        assert!(rs(Type::G, 2).cominuscule_nodes().is_empty());
    }

    #[test]
    fn scalar_denominators() {
        assert_eq!(rs(Type::A, 1).scalar_denominator(), 2);
        assert_eq!(rs(Type::A, 2).scalar_denominator(), 3);
        assert_eq!(rs(Type::A, 3).scalar_denominator(), 4);
        assert_eq!(rs(Type::B, 2).scalar_denominator(), 1);
        assert_eq!(rs(Type::B, 3).scalar_denominator(), 2);
        assert_eq!(rs(Type::C, 2).scalar_denominator(), 1);
        assert_eq!(rs(Type::D, 4).scalar_denominator(), 2);
        assert_eq!(rs(Type::D, 5).scalar_denominator(), 4);
        assert_eq!(rs(Type::G, 2).scalar_denominator(), 1);
    }

    #[test]
    fn longest_word_enumerates_positive_roots() {
        for (t, n) in [
            (Type::A, 2),
            (Type::A, 3),
            (Type::B, 2),
            (Type::C, 3),
            (Type::D, 4),
            (Type::G, 2),
        ] {
            let r = rs(t, n);
            let w = r.longest_word();
            assert_eq!(w.len(), r.positive_roots().len(), "{t}{n}");
            assert!(r.is_reduced_word(&w), "{t}{n}");
            let mut chain = r.roots_from_word(&w);
            chain.sort();
            let mut pos = r.positive_roots().to_vec();
            pos.sort();
            assert_eq!(chain, pos, "{t}{n}");
            let w0 = r.weyl_element(&w);
            assert_eq!(w0.length(&r), r.positive_roots().len());
            assert!(w0.mul(&w0).is_identity());
        }
    }

    #[test]
    fn reduced_word_extraction_roundtrip() {
        let r = rs(Type::B, 3);
        let w = r.weyl_element(&[0, 1, 2, 1, 0]);
        let word = w.reduced_word(&r);
        assert!(r.is_reduced_word(&word));
        assert_eq!(r.weyl_element(&word), w);
        assert_eq!(word.len(), w.length(&r));
    }

    #[test]
    fn rank_two_parabolic_factorization() {
        // First node of the rank-2 type A system: Levi is the other node.
        let r = rs(Type::A, 2);
        let p = r.parabolic(0).unwrap();
        assert!(p.is_cominuscule());
        assert_eq!(p.levi_word(), &[1]);
        assert_eq!(p.coset_word(), &[0, 1]);
        assert_eq!(
            p.radical_roots(),
            &[Root(vec![1, 1]), Root(vec![1, 0])][..]
        );
    }

    #[test]
    fn symplectic_rank_two_parabolic() {
        let r = rs(Type::C, 2);
        let p = r.parabolic(1).unwrap();
        assert!(p.is_cominuscule());
        assert_eq!(
            p.radical_roots(),
            &[Root(vec![2, 1]), Root(vec![1, 1]), Root(vec![0, 1])][..]
        );
        let q = r.parabolic(0).unwrap();
        assert!(!q.is_cominuscule());
    }

    #[test]
    fn weyl_dimension_formula_samples() {
        assert_eq!(rs(Type::A, 1).weyl_dimension(&Weight(vec![3])), 4);
        assert_eq!(rs(Type::A, 2).weyl_dimension(&Weight(vec![1, 0])), 3);
        assert_eq!(rs(Type::A, 2).weyl_dimension(&Weight(vec![1, 1])), 8);
        assert_eq!(rs(Type::B, 2).weyl_dimension(&Weight(vec![0, 1])), 4);
        assert_eq!(rs(Type::G, 2).weyl_dimension(&Weight(vec![1, 0])), 7);
        assert_eq!(rs(Type::E, 8).weyl_dimension(&Weight(vec![0, 0, 0, 0, 0, 0, 0, 1])), 248);
    }

    #[test]
    fn adjoint_highest_weight_is_highest_root() {
        for (t, n, dim) in [
            (Type::A, 2, 8),
            (Type::B, 3, 21),
            (Type::C, 3, 21),
            (Type::D, 4, 28),
            (Type::G, 2, 14),
        ] {
            let r = rs(t, n);
            let theta = r.root_to_weight(r.highest_root());
            assert_eq!(r.weyl_dimension(&theta), dim, "{t}{n}");
        }
    }

    #[test]
    fn forms_are_symmetric_and_match_on_roots() {
        let r = rs(Type::G, 2);
        for b in r.positive_roots() {
            for g in r.positive_roots() {
                assert_eq!(r.root_form(b, g), r.root_form(g, b));
                let wb = r.root_to_weight(b);
                let wg = r.root_to_weight(g);
                assert_eq!(
                    r.weight_form(&wb, &wg),
                    QRat::from_integer(BigInt::from(r.root_form(b, g)))
                );
                assert_eq!(r.weight_root_form(&wb, g), r.root_form(b, g));
            }
        }
        assert_eq!(r.root_norm_half(r.highest_root()), 3);
        assert_eq!(r.root_norm_half(&Root(vec![1, 0])), 1);
    }

    #[test]
    fn levi_support_filter() {
        let r = rs(Type::A, 3);
        let sup = r.positive_roots_supported(&[0, 2]);
        assert_eq!(sup.len(), 2);
        assert!(sup.contains(&Root(vec![1, 0, 0])));
        assert!(sup.contains(&Root(vec![0, 0, 1])));
    }

    #[test]
    fn invalid_ranks_are_rejected() {
        assert!(RootSystem::new(Type::D, 3).is_err());
        assert!(RootSystem::new(Type::E, 9).is_err());
        assert!(RootSystem::new(Type::F, 3).is_err());
        assert!(RootSystem::new(Type::B, 1).is_err());
    }
}
