//! The quantized enveloping algebra attached to a root system.
//!
//! Elements are kept in a triangular normal form: every monomial is a word
//! of lowering generators, followed by a single torus element `K_lambda`
//! with `lambda` in the weight lattice, followed by a word of raising
//! generators. Products are straightened into this form with the defining
//! commutation rules
//!
//! ```text
//! K_lambda E_j = q^( (lambda, alpha_j)) E_j K_lambda
//! K_lambda F_j = q^(-(lambda, alpha_j)) F_j K_lambda
//! E_i F_j - F_j E_i = delta_ij (K_i - K_i^{-1}) / (q_i - q_i^{-1})
//! ```
//!
//! The raising and lowering words are left free: the Serre relations are not
//! rewritten away, so two expressions for the same algebra element can have
//! different normal forms. Identities that hold only modulo the Serre ideal
//! are certified by letting both sides act on a faithful family of modules
//! (see the representation module).

use crate::roots::{Root, RootSystem, Weight};
use crate::scalar::{FieldElement, ScalarContext};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum UqError {
    #[error("word is not reduced")]
    NotReduced,
    #[error("scalar denominator {given} is not a multiple of the minimal denominator {minimal}")]
    BadDenominator { given: u32, minimal: u32 },
}

/// Normal-form monomial: lowering word, torus weight, raising word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub f: Vec<usize>,
    pub k: Weight,
    pub e: Vec<usize>,
}

impl Monomial {
    fn unit(rank: usize) -> Monomial {
        Monomial {
            f: Vec::new(),
            k: Weight::zero(rank),
            e: Vec::new(),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &j in &self.f {
            write!(fm, "F{} ", j + 1)?;
        }
        if !self.k.is_zero() {
            write!(fm, "K{:?} ", self.k.coeffs())?;
        }
        for &i in &self.e {
            write!(fm, "E{} ", i + 1)?;
        }
        if self.f.is_empty() && self.k.is_zero() && self.e.is_empty() {
            write!(fm, "1")?;
        }
        Ok(())
    }
}

/// A linear combination of normal-form monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    rank: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl AlgebraElement {
    pub fn zero(rank: usize) -> AlgebraElement {
        AlgebraElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement::zero(self.rank);
        }
        AlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Homogeneous root-lattice degree, if the element is homogeneous.
    /// Raising letters contribute `+alpha_i`, lowering letters `-alpha_j`.
    pub fn degree(&self) -> Option<Root> {
        let mut deg: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let mut d = vec![0i64; self.rank];
            for &i in &m.e {
                d[i] += 1;
            }
            for &j in &m.f {
                d[j] -= 1;
            }
            match &deg {
                None => deg = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return None,
            }
        }
        deg.map(Root)
    }
}

/// Elements of the tensor square of the algebra, used for coproducts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    rank: usize,
    terms: BTreeMap<(Monomial, Monomial), FieldElement>,
}

impl TensorElement {
    pub fn zero(rank: usize) -> TensorElement {
        TensorElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &FieldElement)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: (Monomial, Monomial), c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

/// The quantized enveloping algebra: a root system together with the scalar
/// field the structure constants live in.
#[derive(Clone, Debug)]
pub struct Uq {
    rs: RootSystem,
    ctx: ScalarContext,
}

impl Uq {
    /// Use the smallest scalar denominator that accommodates all weight-form
    /// exponents of the root system.
    pub fn new(rs: RootSystem) -> Uq {
        let d = rs.scalar_denominator();
        Uq {
            rs,
            ctx: ScalarContext::new(d),
        }
    }

    /// Use an explicit scalar denominator; it must be a multiple of the
    /// minimal one.
    pub fn with_denominator(rs: RootSystem, d: u32) -> Result<Uq, UqError> {
        let minimal = rs.scalar_denominator();
        if d == 0 || d % minimal != 0 {
            return Err(UqError::BadDenominator { given: d, minimal });
        }
        Ok(Uq {
            rs,
            ctx: ScalarContext::new(d),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn scalars(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `q_i = nu^{d_i}`.
    pub fn qi(&self, i: usize) -> FieldElement {
        self.ctx.nu_pow_int(self.rs.d(i))
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.rank())
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(self.ctx.one())
    }

    pub fn scalar(&self, c: FieldElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.rank());
        out.insert(Monomial::unit(self.rank()), c);
        out
    }

    pub fn e(&self, i: usize) -> AlgebraElement {
        let mut m = Monomial::unit(self.rank());
        m.e.push(i);
        let mut out = AlgebraElement::zero(self.rank());
        out.insert(m, self.ctx.one());
        out
    }

    pub fn f(&self, j: usize) -> AlgebraElement {
        let mut m = Monomial::unit(self.rank());
        m.f.push(j);
        let mut out = AlgebraElement::zero(self.rank());
        out.insert(m, self.ctx.one());
        out
    }

    /// `K_lambda` for any integral weight `lambda`.
    pub fn k(&self, lambda: &Weight) -> AlgebraElement {
        let mut m = Monomial::unit(self.rank());
        m.k = lambda.clone();
        let mut out = AlgebraElement::zero(self.rank());
        out.insert(m, self.ctx.one());
        out
    }

    /// `K_i = K_{alpha_i}`.
    pub fn k_simple(&self, i: usize) -> AlgebraElement {
        self.k(&self.rs.alpha_as_weight(i))
    }

    pub fn k_simple_inv(&self, i: usize) -> AlgebraElement {
        self.k(&self.rs.alpha_as_weight(i).neg())
    }

    /// Raising word as a single monomial.
    pub fn e_word(&self, word: &[usize]) -> AlgebraElement {
        let mut m = Monomial::unit(self.rank());
        m.e = word.to_vec();
        let mut out = AlgebraElement::zero(self.rank());
        out.insert(m, self.ctx.one());
        out
    }

    pub fn f_word(&self, word: &[usize]) -> AlgebraElement {
        let mut m = Monomial::unit(self.rank());
        m.f = word.to_vec();
        let mut out = AlgebraElement::zero(self.rank());
        out.insert(m, self.ctx.one());
        out
    }

    /// Root-lattice degree of a raising word.
    fn e_word_degree(&self, e: &[usize]) -> Root {
        let mut d = vec![0i64; self.rank()];
        for &i in e {
            d[i] += 1;
        }
        Root(d)
    }

    /// Multiply a normal-form element by `E_i` on the right.
    fn times_e(&self, a: &AlgebraElement, i: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.rank());
        for (m, c) in &a.terms {
            let mut m2 = m.clone();
            m2.e.push(i);
            out.insert(m2, c.clone());
        }
        out
    }

    /// Multiply by `K_mu` on the right; the torus element commutes into the
    /// middle slot across the raising word with a power of `nu`.
    fn times_k(&self, a: &AlgebraElement, mu: &Weight) -> AlgebraElement {
        if mu.is_zero() {
            return a.clone();
        }
        let mut out = AlgebraElement::zero(self.rank());
        for (m, c) in &a.terms {
            let deg = self.e_word_degree(&m.e);
            let exponent = -self.rs.weight_root_form(mu, &deg);
            let scal = self.ctx.nu_pow_int(exponent);
            let mut m2 = m.clone();
            m2.k = m.k.add(mu);
            out.insert(m2, c * &scal);
        }
        out
    }

    /// Multiply by `F_j` on the right, straightening it through the raising
    /// word and the torus element.
    fn times_f(&self, a: &AlgebraElement, j: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.rank());
        for (m, c) in &a.terms {
            let contrib = self.mono_times_f(m, j);
            for (m2, c2) in &contrib.terms {
                out.insert(m2.clone(), c * c2);
            }
        }
        out
    }

    fn mono_times_f(&self, m: &Monomial, j: usize) -> AlgebraElement {
        if let Some((&i, rest)) = m.e.split_last() {
            let head = Monomial {
                f: m.f.clone(),
                k: m.k.clone(),
                e: rest.to_vec(),
            };
            let mut out = self.times_e(&self.mono_times_f(&head, j), i);
            if i == j {
                // E_i F_i = F_i E_i + (K_i - K_i^{-1}) / (q_i - q_i^{-1})
                let qi = self.qi(i);
                let denom = (&qi - &qi.inv().expect("q_i invertible"))
                    .inv()
                    .expect("q_i - q_i^{-1} is nonzero");
                let alpha = self.rs.alpha_as_weight(i);
                let mut head_elem = AlgebraElement::zero(self.rank());
                head_elem.insert(head.clone(), self.ctx.one());
                let plus = self.times_k(&head_elem, &alpha);
                let minus = self.times_k(&head_elem, &alpha.neg());
                out = out.add(&plus.sub(&minus).scale(&denom));
            }
            out
        } else {
            // f K_lambda F_j = nu^{-(lambda, alpha_j)} (f F_j) K_lambda
            let exponent = -self.rs.weight_root_form(&m.k, &Root::simple(self.rank(), j));
            let mut m2 = m.clone();
            m2.f.push(j);
            let mut out = AlgebraElement::zero(self.rank());
            out.insert(m2, self.ctx.nu_pow_int(exponent));
            out
        }
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.rank());
        for (m2, c2) in &b.terms {
            let mut x = a.clone();
            for &j in &m2.f {
                x = self.times_f(&x, j);
            }
            x = self.times_k(&x, &m2.k);
            for &i in &m2.e {
                x = self.times_e(&x, i);
            }
            for (m, c) in &x.terms {
                out.insert(m.clone(), c * c2);
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[AlgebraElement]) -> AlgebraElement {
        let mut out = self.one();
        for f in factors {
            out = self.mul(&out, f);
        }
        out
    }

    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Coproduct, computed letterwise:
    /// `E_j -> E_j (x) 1 + K_j (x) E_j`,
    /// `F_j -> F_j (x) K_j^{-1} + 1 (x) F_j`,
    /// `K_lambda -> K_lambda (x) K_lambda`.
    pub fn coproduct(&self, a: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(self.rank());
        for (m, c) in &a.terms {
            let mut acc = self.tensor_unit();
            for &j in &m.f {
                let df = self.tensor_pair(&self.f(j), &self.k_simple_inv(j)).add(
                    &self.tensor_pair(&self.one(), &self.f(j)),
                );
                acc = self.tensor_mul(&acc, &df);
            }
            let dk = self.tensor_pair(&self.k(&m.k), &self.k(&m.k));
            acc = self.tensor_mul(&acc, &dk);
            for &i in &m.e {
                let de = self.tensor_pair(&self.e(i), &self.one()).add(
                    &self.tensor_pair(&self.k_simple(i), &self.e(i)),
                );
                acc = self.tensor_mul(&acc, &de);
            }
            for (mm, cc) in &acc.terms {
                out.insert(mm.clone(), c * cc);
            }
        }
        out
    }

    pub fn tensor_unit(&self) -> TensorElement {
        self.tensor_pair(&self.one(), &self.one())
    }

    pub fn tensor_pair(&self, a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(self.rank());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.insert((ma.clone(), mb.clone()), ca * cb);
            }
        }
        out
    }

    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.rank());
        for ((a1, a2), ca) in &a.terms {
            let left = {
                let mut x = AlgebraElement::zero(self.rank());
                x.insert(a1.clone(), self.ctx.one());
                x
            };
            let right = {
                let mut x = AlgebraElement::zero(self.rank());
                x.insert(a2.clone(), self.ctx.one());
                x
            };
            for ((b1, b2), cb) in &b.terms {
                let l = self.mul(&left, &{
                    let mut x = AlgebraElement::zero(self.rank());
                    x.insert(b1.clone(), self.ctx.one());
                    x
                });
                let r = self.mul(&right, &{
                    let mut x = AlgebraElement::zero(self.rank());
                    x.insert(b2.clone(), self.ctx.one());
                    x
                });
                for (ml, cl) in &l.terms {
                    for (mr, cr) in &r.terms {
                        out.insert((ml.clone(), mr.clone()), &(&(ca * cb) * cl) * cr);
                    }
                }
            }
        }
        out
    }

    pub fn counit(&self, a: &AlgebraElement) -> FieldElement {
        let mut out = FieldElement::zero(self.ctx.d());
        for (m, c) in &a.terms {
            if m.e.is_empty() && m.f.is_empty() {
                out = &out + c;
            }
        }
        out
    }

    /// Antipode: `S(E_j) = -K_j^{-1} E_j`, `S(F_j) = -F_j K_j`,
    /// `S(K_lambda) = K_{-lambda}`, extended as an antihomomorphism.
    pub fn antipode(&self, a: &AlgebraElement) -> AlgebraElement {
        self.anti_extend(a, |u, i| u.mul(&u.k_simple_inv(i), &u.e(i)).neg(), |u, j| {
            u.mul(&u.f(j), &u.k_simple(j)).neg()
        })
    }

    /// Inverse antipode: `S^{-1}(E_j) = -E_j K_j^{-1}`,
    /// `S^{-1}(F_j) = -K_j F_j`, `S^{-1}(K_lambda) = K_{-lambda}`.
    pub fn antipode_inv(&self, a: &AlgebraElement) -> AlgebraElement {
        self.anti_extend(a, |u, i| u.mul(&u.e(i), &u.k_simple_inv(i)).neg(), |u, j| {
            u.mul(&u.k_simple(j), &u.f(j)).neg()
        })
    }

    /// Star structure of the compact real form: `E_j* = K_j F_j`,
    /// `F_j* = E_j K_j^{-1}`, `K_lambda* = K_lambda`. The deformation
    /// parameter is treated as real, so the map is linear over the scalar
    /// field and reverses products.
    pub fn star(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (m, c) in &a.terms {
            let mut acc = self.one();
            // Reverse the whole monomial E..E K F..F and image each letter.
            for &i in m.e.iter().rev() {
                acc = self.mul(&acc, &self.mul(&self.k_simple(i), &self.f(i)));
            }
            acc = self.mul(&acc, &self.k(&m.k));
            for &j in m.f.iter().rev() {
                acc = self.mul(&acc, &self.mul(&self.e(j), &self.k_simple_inv(j)));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    fn anti_extend(
        &self,
        a: &AlgebraElement,
        img_e: impl Fn(&Uq, usize) -> AlgebraElement,
        img_f: impl Fn(&Uq, usize) -> AlgebraElement,
    ) -> AlgebraElement {
        let mut out = self.zero();
        for (m, c) in &a.terms {
            let mut acc = self.one();
            for &i in m.e.iter().rev() {
                acc = self.mul(&acc, &img_e(self, i));
            }
            acc = self.mul(&acc, &self.k(&m.k.neg()));
            for &j in m.f.iter().rev() {
                acc = self.mul(&acc, &img_f(self, j));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Adjoint action of `E_j`: `E_j a - K_j a K_j^{-1} E_j`.
    pub fn adjoint_e(&self, j: usize, a: &AlgebraElement) -> AlgebraElement {
        let kj = self.k_simple(j);
        let kj_inv = self.k_simple_inv(j);
        let left = self.mul(&self.e(j), a);
        let right = self.mul(&self.mul(&kj, a), &self.mul(&kj_inv, &self.e(j)));
        left.sub(&right)
    }

    /// Adjoint action of `F_j`: `F_j a K_j - a F_j K_j`.
    pub fn adjoint_f(&self, j: usize, a: &AlgebraElement) -> AlgebraElement {
        let kj = self.k_simple(j);
        let left = self.mul(&self.mul(&self.f(j), a), &kj);
        let right = self.mul(a, &self.mul(&self.f(j), &kj));
        left.sub(&right)
    }

    /// Adjoint action of `K_lambda`: conjugation.
    pub fn adjoint_k(&self, lambda: &Weight, a: &AlgebraElement) -> AlgebraElement {
        self.mul(&self.mul(&self.k(lambda), a), &self.k(&lambda.neg()))
    }

    /// Divided power `E_i^{(n)} = E_i^n / [n]_{q_i}!`.
    pub fn e_divided(&self, i: usize, n: usize) -> AlgebraElement {
        let fact = self
            .ctx
            .qfact(n as u32, self.rs.d(i) as u32)
            .inv()
            .expect("factorial nonzero");
        self.e_word(&vec![i; n]).scale(&fact)
    }

    pub fn f_divided(&self, j: usize, n: usize) -> AlgebraElement {
        let fact = self
            .ctx
            .qfact(n as u32, self.rs.d(j) as u32)
            .inv()
            .expect("factorial nonzero");
        self.f_word(&vec![j; n]).scale(&fact)
    }

    /// Braid-group operator `T_i` on generators:
    ///
    /// ```text
    /// T_i(E_i) = -F_i K_i                 T_i(F_i) = -K_i^{-1} E_i
    /// T_i(K_lambda) = K_{s_i(lambda)}
    /// T_i(E_j) = sum_k (-1)^(k - a_ij) q_i^{-k} E_i^{(-a_ij - k)} E_j E_i^{(k)}
    /// T_i(F_j) = sum_k (-1)^(k - a_ij) q_i^{k}  F_i^{(k)} F_j F_i^{(-a_ij - k)}
    /// ```
    ///
    /// extended multiplicatively over normal-form monomials.
    pub fn lusztig_t(&self, i: usize, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (m, c) in &a.terms {
            let mut acc = self.one();
            for &j in &m.f {
                acc = self.mul(&acc, &self.t_of_f(i, j));
            }
            acc = self.mul(&acc, &self.k(&self.rs.reflect_weight(i, &m.k)));
            for &j in &m.e {
                acc = self.mul(&acc, &self.t_of_e(i, j));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    fn t_of_e(&self, i: usize, j: usize) -> AlgebraElement {
        if i == j {
            return self.mul(&self.f(i), &self.k_simple(i)).neg();
        }
        let a = self.rs.a(i, j);
        let m = (-a) as usize;
        let mut out = self.zero();
        for k in 0..=m {
            let mut coeff = self.ctx.nu_pow_int(-(k as i64) * self.rs.d(i));
            if (k + m) % 2 == 1 {
                coeff = -&coeff;
            }
            let term = self.mul_all(&[
                self.e_divided(i, m - k),
                self.e(j),
                self.e_divided(i, k),
            ]);
            out = out.add(&term.scale(&coeff));
        }
        out
    }

    fn t_of_f(&self, i: usize, j: usize) -> AlgebraElement {
        if i == j {
            return self.mul(&self.k_simple_inv(i), &self.e(i)).neg();
        }
        let a = self.rs.a(i, j);
        let m = (-a) as usize;
        let mut out = self.zero();
        for k in 0..=m {
            let mut coeff = self.ctx.nu_pow_int((k as i64) * self.rs.d(i));
            if (k + m) % 2 == 1 {
                coeff = -&coeff;
            }
            let term = self.mul_all(&[
                self.f_divided(i, k),
                self.f(j),
                self.f_divided(i, m - k),
            ]);
            out = out.add(&term.scale(&coeff));
        }
        out
    }

    /// Quantum root vectors `E_{beta_k} = T_{i_1} ... T_{i_{k-1}}(E_{i_k})`
    /// for a reduced word, in the convex order attached to the word.
    pub fn quantum_root_vectors(&self, word: &[usize]) -> Result<Vec<AlgebraElement>, UqError> {
        if !self.rs.is_reduced_word(word) {
            return Err(UqError::NotReduced);
        }
        let chain = self.rs.roots_from_word(word);
        let mut out = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let mut v = self.e(word[k]);
            for &i in word[..k].iter().rev() {
                v = self.lusztig_t(i, &v);
            }
            debug_assert_eq!(v.degree().as_ref(), Some(&chain[k]));
            out.push(v);
        }
        Ok(out)
    }

    /// Lowering counterparts `F_{beta_k} = T_{i_1} ... T_{i_{k-1}}(F_{i_k})`.
    pub fn quantum_root_vectors_f(&self, word: &[usize]) -> Result<Vec<AlgebraElement>, UqError> {
        if !self.rs.is_reduced_word(word) {
            return Err(UqError::NotReduced);
        }
        let mut out = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let mut v = self.f(word[k]);
            for &i in word[..k].iter().rev() {
                v = self.lusztig_t(i, &v);
            }
            out.push(v);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Type;

    fn uq(t: Type, n: usize) -> Uq {
        Uq::new(RootSystem::new(t, n).unwrap())
    }

    #[test]
    fn torus_commutation_with_raising() {
        let u = uq(Type::A, 1);
        let q = u.qi(0);
        // K E = q^2 E K since (alpha, alpha) = 2.
        let ke = u.mul(&u.k_simple(0), &u.e(0));
        let ek = u.mul(&u.e(0), &u.k_simple(0));
        assert_eq!(ke, ek.scale(&(&q * &q)));
    }

    #[test]
    fn ef_commutator_is_torus_difference() {
        let u = uq(Type::A, 2);
        let c = u.commutator(&u.e(0), &u.f(0));
        let q = u.qi(0);
        let denom = (&q - &q.inv().unwrap()).inv().unwrap();
        let expect = u
            .k_simple(0)
            .sub(&u.k_simple_inv(0))
            .scale(&denom);
        assert_eq!(c, expect);
        // Mixed generators commute.
        assert!(u.commutator(&u.e(0), &u.f(1)).is_zero());
    }

    #[test]
    fn straightening_is_associative() {
        let u = uq(Type::B, 2);
        let x = u.mul(&u.e(0), &u.f(1));
        let y = u.mul(&u.f(0), &u.k_simple(1));
        let z = u.mul(&u.e(1), &u.e(0));
        let left = u.mul(&u.mul(&x, &y), &z);
        let right = u.mul(&x, &u.mul(&y, &z));
        assert_eq!(left, right);
    }

    #[test]
    fn coproduct_is_an_algebra_map() {
        let u = uq(Type::A, 2);
        let a = u.mul(&u.e(0), &u.f(1));
        let b = u.mul(&u.k_simple(0), &u.e(1));
        let lhs = u.coproduct(&u.mul(&a, &b));
        let rhs = u.tensor_mul(&u.coproduct(&a), &u.coproduct(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_axiom_on_samples() {
        let u = uq(Type::A, 2);
        for x in [u.e(0), u.f(1), u.mul(&u.e(0), &u.e(1)), u.mul(&u.e(0), &u.f(0))] {
            let cop = u.coproduct(&x);
            let mut acc = u.zero();
            for ((m1, m2), c) in cop.terms() {
                let mut left = AlgebraElement::zero(u.rank());
                left.insert(m1.clone(), u.scalars().one());
                let mut right = AlgebraElement::zero(u.rank());
                right.insert(m2.clone(), u.scalars().one());
                acc = acc.add(&u.mul(&u.antipode(&left), &right).scale(c));
            }
            let expect = u.scalar(u.counit(&x));
            assert_eq!(acc, expect, "antipode axiom fails");
        }
    }

    #[test]
    fn antipode_inverse_roundtrip() {
        let u = uq(Type::A, 2);
        for x in [u.e(0), u.f(1), u.mul(&u.e(0), &u.f(1)), u.k_simple(0)] {
            assert_eq!(u.antipode_inv(&u.antipode(&x)), x);
            assert_eq!(u.antipode(&u.antipode_inv(&x)), x);
        }
    }

    #[test]
    fn star_is_involutive_on_samples() {
        let u = uq(Type::B, 2);
        for x in [u.e(0), u.f(1), u.mul(&u.e(0), &u.f(1)), u.k_simple(1)] {
            assert_eq!(u.star(&u.star(&x)), x);
        }
    }

    #[test]
    fn braid_operator_on_neighbor_raising_generator() {
        // Rank two type A: T_2(E_1) = q^{-1} E_1 E_2 - E_2 E_1.
        let u = uq(Type::A, 2);
        let t = u.lusztig_t(1, &u.e(0));
        let q_inv = u.qi(0).inv().unwrap();
        let expect = u
            .e_word(&[0, 1])
            .scale(&q_inv)
            .sub(&u.e_word(&[1, 0]));
        assert_eq!(t, expect);
    }

    #[test]
    fn braid_operator_fixes_torus_reflection() {
        let u = uq(Type::A, 2);
        let lam = Weight(vec![2, -1]);
        let t = u.lusztig_t(0, &u.k(&lam));
        let expect = u.k(&u.root_system().reflect_weight(0, &lam));
        assert_eq!(t, expect);
    }

    #[test]
    fn root_vector_degrees_follow_the_word() {
        for (t, n, node) in [(Type::A, 2, 0), (Type::C, 2, 1), (Type::B, 2, 0)] {
            let u = uq(t, n);
            let p = u.root_system().parabolic(node).unwrap();
            let word = p.full_word();
            let chain = u.root_system().roots_from_word(&word);
            let vecs = u.quantum_root_vectors(&word).unwrap();
            for (v, beta) in vecs.iter().zip(&chain) {
                assert_eq!(v.degree().as_ref(), Some(beta));
            }
        }
    }

    #[test]
    fn root_vectors_reject_non_reduced_words() {
        let u = uq(Type::A, 2);
        assert_eq!(
            u.quantum_root_vectors(&[0, 0]).unwrap_err(),
            UqError::NotReduced
        );
    }

    #[test]
    fn counit_kills_generators() {
        let u = uq(Type::A, 1);
        assert!(u.counit(&u.e(0)).is_zero());
        assert!(u.counit(&u.f(0)).is_zero());
        assert!(u.counit(&u.k_simple(0)).is_one());
    }
}
