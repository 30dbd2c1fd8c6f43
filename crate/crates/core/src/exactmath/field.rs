//! Prime and extension finite fields `F_{p^e}`.
//!
//! Elements are encoded as `u32` integers `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` are the coefficients of the residue polynomial modulo the
//! field's modulus. Multiplication and inversion go through discrete
//! log/exp tables built once per field; the tables are shared behind an
//! `Arc`, so cloning a field is cheap.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Encoded field element.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{degree} exceeds the supported bound 2^20")]
    TooLarge { p: u64, degree: u32 },
    #[error("cannot embed F_{p}^{from} into F_{p}^{into}")]
    NoEmbedding { p: u32, from: u32, into: u32 },
}

struct Inner {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus, coefficients from degree 0 upwards (length `degree + 1`).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.inner.p, self.inner.degree, self.inner.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `n = p^e` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let (mut m, mut e) = (n, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

// Polynomials over F_p as coefficient vectors, lowest degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn decode(mut x: u32, p: u32, degree: u32) -> Vec<u32> {
    let mut out = vec![0; degree as usize];
    for c in out.iter_mut() {
        *c = x % p;
        x /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, modulus, p)
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = decode(code as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// `F_{p^degree}` with the lexicographically smallest monic irreducible modulus
    /// (lower coefficients compared as the integer `Σ c_i p^i`).
    pub fn new(p: u32, degree: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order64 = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if order64 > MAX_ORDER {
            return Err(FieldError::TooLarge { p: p as u64, degree });
        }
        let order = order64 as u32;
        let modulus = (0..order)
            .map(|code| {
                let mut f = decode(code, p, degree);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self::with_modulus(p, degree, modulus))
    }

    /// Builds a field from the prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p as u32, e)
    }

    fn with_modulus(p: u32, degree: u32, modulus: Vec<u32>) -> Self {
        let order = p.pow(degree);
        let n = order - 1;
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; order as usize];
        // smallest primitive element by encoding
        'search: for g in 1..order {
            let gpoly = decode(g, p, degree);
            let mut x = vec![1u32];
            for (k, slot) in exp.iter_mut().enumerate() {
                let code = encode(&pad(&x, degree), p);
                if k > 0 && code == 1 {
                    continue 'search;
                }
                *slot = code;
                x = poly_mulmod(&x, &gpoly, &modulus, p);
            }
            // no proper power of g hit 1, so g has order n
            break;
        }
        for (k, &code) in exp.iter().enumerate() {
            log[code as usize] = k as u32;
        }
        FiniteField { inner: Arc::new(Inner { p, degree, order, modulus, exp, log }) }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    /// Coefficients over the prime field, constant term first.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        decode(a, self.inner.p, self.inner.degree)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        let p = self.inner.p;
        let c: Vec<u32> = (0..self.inner.degree as usize)
            .map(|i| coeffs.get(i).copied().unwrap_or(0) % p)
            .collect();
        encode(&c, p)
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        if self.inner.order == 2 {
            1
        } else {
            self.inner.exp[1]
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if self.inner.degree == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.inner.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if self.inner.degree == 1 {
            return (p - a) % p;
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.inner.degree {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.inner.degree == 1 {
            return ((a as u64 * b as u64) % self.inner.p as u64) as u32;
        }
        let n = self.inner.order - 1;
        let s = self.inner.log[a as usize] + self.inner.log[b as usize];
        self.inner.exp[(s % n) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let n = self.inner.order - 1;
        let l = self.inner.log[a as usize];
        Some(self.inner.exp[((n - l) % n) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.inner.order - 1) as u64;
        let l = self.inner.log[a as usize] as u64;
        self.inner.exp[((l * (e % n)) % n) as usize]
    }

    /// Every element, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.order
    }

    /// Finds a field embedding `self -> larger` by locating a root of
    /// `self`'s modulus in `larger`; returns the image of every element,
    /// indexed by encoding.
    pub fn embed_into(&self, larger: &FiniteField) -> Result<Embedding, FieldError> {
        let err = FieldError::NoEmbedding {
            p: self.inner.p,
            from: self.inner.degree,
            into: larger.inner.degree,
        };
        if self.inner.p != larger.inner.p || !larger.inner.degree.is_multiple_of(self.inner.degree) {
            return Err(err);
        }
        let root = larger
            .elements()
            .find(|&x| {
                let mut acc = 0;
                for &c in self.inner.modulus.iter().rev() {
                    acc = larger.add(larger.mul(acc, x), c);
                }
                acc == 0
            })
            .ok_or(err)?;
        let images = self
            .elements()
            .map(|a| {
                let mut acc = 0;
                for c in self.coefficients(a).into_iter().rev() {
                    acc = larger.add(larger.mul(acc, root), c);
                }
                acc
            })
            .collect();
        Ok(Embedding { images })
    }
}

fn pad(x: &[u32], degree: u32) -> Vec<u32> {
    let mut v = x.to_vec();
    v.resize(degree as usize, 0);
    v
}

/// A field homomorphism given by its table of images.
#[derive(Debug, Clone)]
pub struct Embedding {
    images: Vec<Elem>,
}

impl Embedding {
    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a as usize]
    }
}
