//! Integer Laurent polynomials in one variable and the integer-polynomial
//! arithmetic behind their gcds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `sum c_k t^k` over integer exponents `k`, with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// Builds `sum coeffs[k] t^k` for `k = 0, 1, ...`.
    pub fn from_coefficients<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, c.clone().into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Representative up to units `±t^k`: lowest exponent 0 and positive
    /// constant term. The zero polynomial is its own normal form.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.coefficient(0).is_negative() {
            -p
        } else {
            p
        }
    }

    /// Coefficients from exponent `min_exponent` upward, zeros included.
    pub fn dense_coefficients(&self) -> Vec<BigInt> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coefficient(e)).collect(),
            _ => Vec::new(),
        }
    }

    /// Associates up to `±t^k`.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// gcd in `Z[t, t^-1]`, normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        let a = self.to_poly();
        let b = other.to_poly();
        from_poly(&poly_gcd(&a, &b)).normalized()
    }

    /// Shifted into an ordinary polynomial (lowest exponent 0), dense ascending.
    pub(crate) fn to_poly(&self) -> Vec<BigInt> {
        match self.min_exponent() {
            None => Vec::new(),
            Some(_) => self.dense_coefficients(),
        }
    }
}

pub(crate) fn from_poly(p: &[BigInt]) -> LaurentPolynomial {
    LaurentPolynomial::from_coefficients(p)
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

// Dense integer polynomials, coefficient of t^k at index k, no trailing zeros.

pub(crate) fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
            x - y
        })
        .collect();
    trim(out)
}

/// `a / b` when `b` divides `a` exactly in `Z[t]`.
pub(crate) fn poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    poly_checked_div(a, b).expect("inexact polynomial division")
}

/// `a / b` when `b` divides `a` over the integers.
pub(crate) fn poly_checked_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return None;
    }
    let mut q = vec![BigInt::zero(); rem.len() - db];
    let lead = b.last().unwrap();
    for k in (0..q.len()).rev() {
        let c = &rem[k + db];
        if c.is_zero() {
            continue;
        }
        let (quo, r) = c.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &quo * y;
        }
        q[k] = quo;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(q))
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(Signed::is_negative) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b` (multiplies `a` by a power of lead(b)).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        for x in &mut r {
            *x *= &lead;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        r = trim(r);
    }
    r
}

/// gcd in `Z[t]` via the primitive remainder sequence; leading coefficient positive.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() {
        return primitive_with_content(&b);
    }
    if b.is_empty() {
        return primitive_with_content(&a);
    }
    let c = content(&a).gcd(&content(&b));
    let (mut x, mut y) = (primitive(&a), primitive(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    x.iter().map(|v| v * &c).collect()
}

fn primitive_with_content(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = p.to_vec();
    if out.last().is_some_and(Signed::is_negative) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// Determinant of a square matrix over `Z[t]` by fraction-free elimination.
pub(crate) fn poly_determinant(mut m: Vec<Vec<Vec<BigInt>>>) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut negate = false;
    let mut prev = vec![BigInt::one()];
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_empty()) else {
            return Vec::new();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = poly_sub(&poly_mul(&m[k][k], &m[i][j]), &poly_mul(&m[i][k], &m[k][j]));
                m[i][j] = poly_exact_div(&num, &prev);
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.into_iter().map(|c| -c).collect()
    } else {
        det
    }
}
