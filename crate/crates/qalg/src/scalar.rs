//! Exact arithmetic in the field Q(nu^(1/D)).
//!
//! Every scalar in a computation is a rational function in the single
//! variable u = nu^(1/D), where nu is the formal deformation parameter and D
//! is a positive integer fixed once per root system so that every exponent of
//! nu that can appear (weight pairings, commutor half-sums) is an integer
//! multiple of 1/D.
//!
//! Canonical form invariant: a [`FieldElement`] always stores a fraction
//! num/den of polynomials in u with gcd(num, den) = 1 and den monic (den = 1
//! when num = 0). Structural equality therefore coincides with equality in
//! the field, and `Hash`/`Eq` may be used freely.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::Pow;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type QRat = BigRational;

/// Relative threshold below which a floating-point denominator evaluation is
/// treated as a pole. Used only by [`FieldElement::specialize_f64`]; the
/// exact-rational path detects poles exactly.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero in the scalar field")]
    DivisionByZero,
    #[error("exponent {num}/{den} is not an integer multiple of 1/{d}")]
    ExponentDenominatorMismatch { num: i64, den: i64, d: u32 },
    #[error("denominator vanishes at the specialization point q0 = {0}")]
    PoleAtParameter(String),
    #[error("cannot parse {0:?} as a canonical rational function")]
    ParseError(String),
}

/// Dense univariate polynomial over Q with ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<QRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QRat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(QRat::one())
    }

    pub fn constant(c: QRat) -> Self {
        Poly::new(vec![c])
    }

    /// c * u^k.
    pub fn monomial(c: QRat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![QRat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with deg 0 for constants; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&QRat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(QRat::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(QRat::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![QRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &QRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![QRat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= dd + 1 {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            if !c.is_zero() {
                quot[k] = c.clone();
                for (j, b) in div.coeffs.iter().enumerate() {
                    let idx = k + j;
                    let t = &c * b;
                    rem[idx] -= t;
                }
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = QRat::one() / l;
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &QRat) -> QRat {
        let mut acc = QRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({:?})", self.coeffs)
    }
}

/// The ambient scalar field Q(nu^(1/D)). `d` is the exponent denominator D;
/// `var` is a display name for nu and has no computational role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarContext {
    d: u32,
    var: String,
}

impl ScalarContext {
    pub fn new(d: u32) -> Self {
        assert!(d >= 1, "exponent denominator must be positive");
        ScalarContext {
            d,
            var: "nu".to_string(),
        }
    }

    pub fn with_var(d: u32, var: &str) -> Self {
        assert!(d >= 1, "exponent denominator must be positive");
        ScalarContext {
            d,
            var: var.to_string(),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(self.d)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self.d)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_rat(self.d, QRat::from_integer(BigInt::from(n)))
    }

    pub fn rat(&self, r: QRat) -> FieldElement {
        FieldElement::from_rat(self.d, r)
    }

    /// The formal parameter nu = u^D.
    pub fn nu(&self) -> FieldElement {
        self.nu_pow_int(1)
    }

    /// The generator u = nu^(1/D).
    pub fn u(&self) -> FieldElement {
        FieldElement::from_parts(self.d, Poly::monomial(QRat::one(), 1), Poly::one())
    }

    /// nu^e for an integer e.
    pub fn nu_pow_int(&self, e: i64) -> FieldElement {
        let k = e
            .checked_mul(self.d as i64)
            .expect("nu exponent overflow");
        self.u_pow_int(k)
    }

    /// u^k for an integer k.
    pub fn u_pow_int(&self, k: i64) -> FieldElement {
        if k >= 0 {
            FieldElement::from_parts(self.d, Poly::monomial(QRat::one(), k as usize), Poly::one())
        } else {
            FieldElement::from_parts(
                self.d,
                Poly::one(),
                Poly::monomial(QRat::one(), (-k) as usize),
            )
        }
    }

    /// nu^(num/den); the exponent must be an integer multiple of 1/D.
    pub fn nu_pow(&self, num: i64, den: i64) -> Result<FieldElement, ScalarError> {
        if den == 0 {
            return Err(ScalarError::ExponentDenominatorMismatch {
                num,
                den,
                d: self.d,
            });
        }
        let total_num = num
            .checked_mul(self.d as i64)
            .expect("nu exponent overflow");
        if total_num % den != 0 {
            return Err(ScalarError::ExponentDenominatorMismatch {
                num,
                den,
                d: self.d,
            });
        }
        Ok(self.u_pow_int(total_num / den))
    }

    /// nu^r for an exact rational exponent r; must be a multiple of 1/D.
    pub fn nu_pow_rat(&self, r: &QRat) -> Result<FieldElement, ScalarError> {
        let scaled = r * QRat::from_integer(BigInt::from(self.d));
        if !scaled.is_integer() {
            return Err(ScalarError::ExponentDenominatorMismatch {
                num: r.numer().to_i64().unwrap_or(i64::MAX),
                den: r.denom().to_i64().unwrap_or(i64::MAX),
                d: self.d,
            });
        }
        let k = scaled
            .to_integer()
            .to_i64()
            .expect("nu exponent overflow");
        Ok(self.u_pow_int(k))
    }

    /// The quantum integer [n] in base nu^deg: (nu^(deg*n) - nu^(-deg*n)) /
    /// (nu^deg - nu^(-deg)), telescoped to a Laurent polynomial.
    pub fn qnum(&self, n: i64, deg: u32) -> FieldElement {
        if n == 0 {
            return self.zero();
        }
        if n < 0 {
            return -&self.qnum(-n, deg);
        }
        let mut acc = self.zero();
        for k in 0..n {
            let e = (deg as i64) * (n - 1 - 2 * k);
            acc = &acc + &self.nu_pow_int(e);
        }
        acc
    }

    /// [n]! in base nu^deg.
    pub fn qfact(&self, n: u32, deg: u32) -> FieldElement {
        let mut acc = self.one();
        for k in 1..=n {
            acc = &acc * &self.qnum(k as i64, deg);
        }
        acc
    }

    /// The quantum binomial coefficient [n choose k] in base nu^deg.
    pub fn qbinom(&self, n: u32, k: u32, deg: u32) -> FieldElement {
        if k > n {
            return self.zero();
        }
        let num = self.qfact(n, deg);
        let den = &self.qfact(k, deg) * &self.qfact(n - k, deg);
        num.div(&den).expect("quantum factorials are nonzero")
    }

    /// Parse the canonical rendering produced by `Display`.
    pub fn parse(&self, s: &str) -> Result<FieldElement, ScalarError> {
        parse_canonical(self.d, s)
    }
}

/// An element of Q(nu^(1/D)) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    d: u32,
    num: Poly,
    den: Poly,
}

impl FieldElement {
    pub fn zero(d: u32) -> Self {
        FieldElement {
            d,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one(d: u32) -> Self {
        FieldElement {
            d,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_rat(d: u32, r: QRat) -> Self {
        FieldElement {
            d,
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    /// Build num/den and reduce to canonical form.
    pub fn from_parts(d: u32, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "field element with zero denominator");
        let mut x = FieldElement { d, num, den };
        x.canonicalize();
        x
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if !self.den.is_one() {
            let g = self.num.gcd(&self.den);
            if g.degree().unwrap_or(0) > 0 {
                self.num = self.num.divrem(&g).0;
                self.den = self.den.divrem(&g).0;
            }
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = QRat::one() / &lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn check_d(&self, other: &FieldElement) {
        assert_eq!(
            self.d, other.d,
            "mixing scalars from different scalar contexts (D = {} vs {})",
            self.d, other.d
        );
    }

    pub fn inv(&self) -> Result<FieldElement, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FieldElement::from_parts(
            self.d,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, ScalarError> {
        self.check_d(other);
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<FieldElement, ScalarError> {
        if e == 0 {
            return Ok(FieldElement::one(self.d));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one(self.d);
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Exact specialization at nu = q0 > 0 (u = q0^(1/D)). When q0 is a
    /// perfect D-th power of a rational the evaluation and the pole check are
    /// exact; otherwise evaluation falls back to floating point with
    /// [`POLE_TOLERANCE`].
    pub fn specialize(&self, q0: &QRat) -> Result<f64, ScalarError> {
        assert!(q0.is_positive(), "specialization requires q0 > 0");
        if let Some(u0) = exact_dth_root(q0, self.d) {
            let den = self.den.eval(&u0);
            if den.is_zero() {
                return Err(ScalarError::PoleAtParameter(q0.to_string()));
            }
            let val = self.num.eval(&u0) / den;
            return Ok(val.to_f64().unwrap_or(f64::NAN));
        }
        self.specialize_f64(q0.to_f64().unwrap_or(f64::NAN))
    }

    /// Floating-point specialization at nu = q0 > 0.
    pub fn specialize_f64(&self, q0: f64) -> Result<f64, ScalarError> {
        assert!(q0 > 0.0, "specialization requires q0 > 0");
        let u0 = q0.powf(1.0 / self.d as f64);
        let den = self.den.eval_f64(u0);
        let scale: f64 = self
            .den
            .coeffs()
            .iter()
            .map(|c| c.to_f64().unwrap_or(0.0).abs())
            .sum::<f64>()
            .max(1.0)
            * u0.max(1.0).powi(self.den.degree().unwrap_or(0) as i32);
        if den.abs() <= POLE_TOLERANCE * scale {
            return Err(ScalarError::PoleAtParameter(format!("{q0}")));
        }
        Ok(self.num.eval_f64(u0) / den)
    }

    /// Canonical rendering "p(u)" or "(p(u))/(q(u))" with integer
    /// coefficients, descending powers, and content reduced.
    pub fn to_canonical_string(&self) -> String {
        let (n, d) = integer_scaled(&self.num, &self.den);
        if d.len() == 1 && d[0] == BigInt::one() {
            int_poly_string(&n)
        } else {
            format!("({})/({})", int_poly_string(&n), int_poly_string(&d))
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement[D={}]({})", self.d, self)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, other: &FieldElement) -> FieldElement {
        self.check_d(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        FieldElement::from_parts(self.d, num, den)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, other: &FieldElement) -> FieldElement {
        self + &(-other)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, other: &FieldElement) -> FieldElement {
        self.check_d(other);
        if self.is_zero() || other.is_zero() {
            return FieldElement::zero(self.d);
        }
        // Cross-reduce before multiplying to keep intermediate degrees low.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.degree().unwrap_or(0) > 0 {
            self.num.divrem(&g1).0
        } else {
            self.num.clone()
        };
        let d2 = if g1.degree().unwrap_or(0) > 0 {
            other.den.divrem(&g1).0
        } else {
            other.den.clone()
        };
        let n2 = if g2.degree().unwrap_or(0) > 0 {
            other.num.divrem(&g2).0
        } else {
            other.num.clone()
        };
        let d1 = if g2.degree().unwrap_or(0) > 0 {
            self.den.divrem(&g2).0
        } else {
            self.den.clone()
        };
        FieldElement::from_parts(self.d, n1.mul(&n2), d1.mul(&d2))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            d: self.d,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

/// Exact rational D-th root when it exists.
fn exact_dth_root(q0: &QRat, d: u32) -> Option<QRat> {
    if d == 1 {
        return Some(q0.clone());
    }
    let n = q0.numer();
    let m = q0.denom();
    let rn = n.nth_root(d);
    let rm = m.nth_root(d);
    if &Pow::pow(rn.clone(), d) == n && &Pow::pow(rm.clone(), d) == m {
        Some(QRat::new(rn, rm))
    } else {
        None
    }
}

/// Scale a fraction of rational polynomials to coprime integer polynomials.
fn integer_scaled(num: &Poly, den: &Poly) -> (Vec<BigInt>, Vec<BigInt>) {
    if num.is_zero() {
        return (vec![BigInt::zero()], vec![BigInt::one()]);
    }
    let mut l = BigInt::one();
    for c in num.coeffs().iter().chain(den.coeffs()) {
        l = l.lcm(c.denom());
    }
    let scale = |p: &Poly| -> Vec<BigInt> {
        p.coeffs()
            .iter()
            .map(|c| (c * QRat::from_integer(l.clone())).to_integer())
            .collect()
    };
    let mut n = scale(num);
    let mut d = scale(den);
    let mut g = BigInt::zero();
    for c in n.iter().chain(d.iter()) {
        g = g.gcd(c);
    }
    if !g.is_one() && !g.is_zero() {
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c /= &g;
        }
    }
    (n, d)
}

fn int_poly_string(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    let mut first = true;
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let unit = mag.is_one();
        match (k, unit) {
            (0, _) => out.push_str(&mag.to_string()),
            (1, true) => out.push('u'),
            (1, false) => {
                out.push_str(&mag.to_string());
                out.push_str("*u");
            }
            (_, true) => out.push_str(&format!("u^{k}")),
            (_, false) => out.push_str(&format!("{mag}*u^{k}")),
        }
    }
    if first {
        out.push('0');
    }
    out
}

fn parse_int_poly(s: &str) -> Result<Poly, ScalarError> {
    let err = || ScalarError::ParseError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    let mut coeffs: Vec<QRat> = vec![];
    let mut set = |k: usize, c: QRat| {
        if coeffs.len() <= k {
            coeffs.resize(k + 1, QRat::zero());
        }
        coeffs[k] = &coeffs[k] + c;
    };
    // Tokenize on +/- at term boundaries.
    let bytes = t.as_bytes();
    let mut terms: Vec<(i32, String)> = vec![];
    let mut sign = 1i32;
    let mut cur = String::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                terms.push((sign, cur.trim().to_string()));
            }
            sign = if ch == '-' { -1 } else { 1 };
            cur = String::new();
        } else {
            cur.push(ch);
        }
        i += 1;
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(err());
    }
    for (sgn, term) in terms {
        let (coeff_str, pow): (String, usize) = if let Some(pos) = term.find('u') {
            let coeff_part = term[..pos].trim().trim_end_matches('*').trim();
            let rest = term[pos + 1..].trim();
            let k = if rest.is_empty() {
                1
            } else if let Some(stripped) = rest.strip_prefix('^') {
                stripped.trim().parse::<usize>().map_err(|_| err())?
            } else {
                return Err(err());
            };
            (coeff_part.to_string(), k)
        } else {
            (term.trim().to_string(), 0)
        };
        let c: BigInt = if coeff_str.is_empty() {
            BigInt::one()
        } else {
            coeff_str.parse().map_err(|_| err())?
        };
        let c = QRat::from_integer(c * BigInt::from(sgn));
        set(pow, c);
    }
    Ok(Poly::new(coeffs))
}

fn parse_canonical(d: u32, s: &str) -> Result<FieldElement, ScalarError> {
    let t = s.trim();
    if let Some(idx) = t.find(")/(") {
        let num_part = t[..idx]
            .trim()
            .strip_prefix('(')
            .ok_or_else(|| ScalarError::ParseError(s.to_string()))?;
        let den_part = t[idx + 3..]
            .trim()
            .strip_suffix(')')
            .ok_or_else(|| ScalarError::ParseError(s.to_string()))?;
        let num = parse_int_poly(num_part)?;
        let den = parse_int_poly(den_part)?;
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FieldElement::from_parts(d, num, den))
    } else {
        let num = parse_int_poly(t)?;
        Ok(FieldElement::from_parts(d, num, Poly::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx1() -> ScalarContext {
        ScalarContext::new(1)
    }

    fn ctx2() -> ScalarContext {
        ScalarContext::new(2)
    }

    #[test]
    fn quantum_number_two_is_nu_plus_nu_inverse() {
        let c = ctx1();
        let expected = &c.nu_pow_int(1) + &c.nu_pow_int(-1);
        assert_eq!(c.qnum(2, 1), expected);
        assert_eq!(c.qnum(2, 1).to_canonical_string(), "(u^2 + 1)/(u)");
    }

    #[test]
    fn quantum_number_small_values() {
        let c = ctx1();
        assert!(c.qnum(0, 1).is_zero());
        assert!(c.qnum(1, 1).is_one());
        assert_eq!(c.qnum(-3, 1), -&c.qnum(3, 1));
    }

    #[test]
    fn quantum_binomial_four_two() {
        let c = ctx1();
        // nu^4 + nu^2 + 2 + nu^-2 + nu^-4, assembled term by term.
        let mut expected = c.int(2);
        for e in [4i64, 2, -2, -4] {
            expected = &expected + &c.nu_pow_int(e);
        }
        assert_eq!(c.qbinom(4, 2, 1), expected);
    }

    #[test]
    fn specialization_golden_values() {
        let c = ctx1();
        let x = c.qnum(2, 1); // nu + nu^-1
        assert_eq!(x.specialize(&QRat::from_integer(2.into())).unwrap(), 2.5);

        let pole = c.one().div(&(&c.nu() - &c.one())).unwrap();
        assert!(matches!(
            pole.specialize(&QRat::from_integer(1.into())),
            Err(ScalarError::PoleAtParameter(_))
        ));

        // 2 nu / (1 + nu^2) evaluates to 1 at the classical point.
        let two_nu = &c.int(2) * &c.nu();
        let denom = &c.one() + &c.nu().pow(2).unwrap();
        let x = two_nu.div(&denom).unwrap();
        assert_eq!(x.specialize(&QRat::from_integer(1.into())).unwrap(), 1.0);
    }

    #[test]
    fn half_integer_powers_with_even_denominator() {
        let c = ctx2();
        let x = c.nu_pow(3, 2).unwrap();
        assert_eq!(x.to_canonical_string(), "u^3");
        assert!(matches!(
            c.nu_pow(1, 3),
            Err(ScalarError::ExponentDenominatorMismatch { .. })
        ));
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx1();
        let a = &c.nu() - &c.nu_pow_int(-1);
        let b = &c.nu() + &c.nu_pow_int(-1);
        let expected = &c.nu_pow_int(2) - &c.nu_pow_int(-2);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn inverse_clears_denominators() {
        let c = ctx1();
        let x = c.qnum(2, 1); // (u^2+1)/u
        let inv = x.inv().unwrap();
        assert_eq!(inv.to_canonical_string(), "(u)/(u^2 + 1)");
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn quantum_number_has_no_pole_at_one() {
        let c = ctx1();
        for n in 1..8i64 {
            let v = c.qnum(n, 1).specialize(&QRat::from_integer(1.into())).unwrap();
            assert_eq!(v, n as f64);
        }
    }

    #[test]
    fn canonical_string_roundtrip_samples() {
        let c = ctx2();
        let samples = [
            c.zero(),
            c.one(),
            c.int(-7),
            c.qnum(5, 2),
            c.qbinom(4, 2, 1),
            c.u_pow_int(-3),
            (&c.int(3) * &c.u()).div(&(&c.one() + &c.u_pow_int(4))).unwrap(),
        ];
        for x in samples {
            let s = x.to_canonical_string();
            let back = c.parse(&s).unwrap();
            assert_eq!(back, x, "roundtrip failed for {s}");
        }
    }

    fn arb_field_element() -> impl Strategy<Value = FieldElement> {
        let coeff = -4i64..5;
        let poly = proptest::collection::vec(coeff, 1..5);
        (poly.clone(), poly).prop_map(|(n, d)| {
            let num = Poly::new(n.into_iter().map(|x| QRat::from_integer(x.into())).collect());
            let mut den = Poly::new(d.into_iter().map(|x| QRat::from_integer(x.into())).collect());
            if den.is_zero() {
                den = Poly::one();
            }
            FieldElement::from_parts(2, num, den)
        })
    }

    proptest! {
        #[test]
        fn mul_then_divide_recovers(x in arb_field_element(), y in arb_field_element()) {
            prop_assume!(!y.is_zero());
            let prod = &x * &y;
            let back = prod.div(&y).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn specialization_is_multiplicative(x in arb_field_element(), y in arb_field_element()) {
            let q0 = QRat::new(BigInt::from(9), BigInt::from(4)); // u0 = 3/2 exactly
            let prod = &x * &y;
            let sx = x.specialize(&q0);
            let sy = y.specialize(&q0);
            let sp = prod.specialize(&q0);
            if let (Ok(a), Ok(b), Ok(p)) = (sx, sy, sp) {
                prop_assert!((a * b - p).abs() < 1e-9 * (1.0 + p.abs()));
            }
        }

        #[test]
        fn addition_commutes_and_associates(
            x in arb_field_element(),
            y in arb_field_element(),
            z in arb_field_element()
        ) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        }

        #[test]
        fn canonical_string_roundtrip(x in arb_field_element()) {
            let c = ScalarContext::new(2);
            prop_assert_eq!(c.parse(&x.to_canonical_string()).unwrap(), x);
        }
    }
}
