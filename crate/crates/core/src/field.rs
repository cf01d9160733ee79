//! Exact arithmetic over prime fields, their finite extensions, and the
//! rationals.
//!
//! A [`Field`] is a cheap, shareable context; elements are plain [`Elem`]
//! values and every operation goes through the field that owns them. Values
//! are always kept canonical (reduced residues, reduced fractions with a
//! positive denominator) so that structural equality is field equality.
//!
//! Extension elements are packed into a single `u64` as the base-`p` number
//! whose digits are the polynomial coefficients, lowest degree first. This
//! keeps finite-field elements `Copy`-cheap and gives a natural enumeration
//! order: the element with index `i` is `Elem::Fin(i)`.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_DEG: usize = 64;

/// An element of some [`Field`]. Meaningless without its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Residue (prime field) or packed coefficient vector (extension).
    Fin(u64),
    Rat(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime {
        p: u64,
    },
    /// `modulus` holds the coefficients of a monic irreducible polynomial of
    /// degree `degree`, lowest first, including the leading 1.
    Extension {
        p: u64,
        degree: usize,
        modulus: Vec<u64>,
    },
    Rational,
}

/// JSON descriptor of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Prime {
        p: i64,
    },
    Ext {
        p: i64,
        deg: usize,
        #[serde(rename = "mod")]
        modulus: Vec<i64>,
    },
    Rational,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_i64(x: i64, p: u64) -> u64 {
    (x as i128).rem_euclid(p as i128) as u64
}

// Polynomials over F_p as coefficient vectors, lowest first, no trailing zeros.
fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let lead = *b.last().expect("nonzero divisor");
    let lead_inv = pow_mod(lead, p - 2, p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().copied().unwrap_or(0) * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let sub = c * bi % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % p) as u128;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Exhaustive search for a monic factor of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut f = unpack_vec(idx, p, d);
            f.push(1);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn unpack_vec(mut x: u64, p: u64, deg: usize) -> Vec<u64> {
    let mut out = vec![0; deg];
    for c in out.iter_mut() {
        *c = x % p;
        x /= p;
    }
    out
}

fn unpack(mut x: u64, p: u64, deg: usize) -> [u64; MAX_DEG] {
    let mut out = [0u64; MAX_DEG];
    for c in out.iter_mut().take(deg) {
        *c = x % p;
        x /= p;
    }
    out
}

fn pack(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &d| acc * p + d)
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as i64));
        }
        if p >= 1 << 32 {
            return Err(Error::BadDescriptor(format!("prime {p} too large")));
        }
        Ok(Field(Arc::new(FieldKind::Prime { p })))
    }

    /// `modulus` lists coefficients lowest first; integers are reduced mod `p`.
    pub fn extension(p: u64, modulus: &[i64]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as i64));
        }
        if modulus.len() < 2 {
            return Err(Error::BadDescriptor("modulus must have degree >= 1".into()));
        }
        let degree = modulus.len() - 1;
        let fits = (p as u128)
            .checked_pow(degree as u32)
            .is_some_and(|q| q < (1u128 << 63));
        if !fits || degree >= MAX_DEG {
            return Err(Error::BadDescriptor(format!(
                "F_{p}^{degree} is too large for packed elements"
            )));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| reduce_i64(c, p)).collect();
        if modulus[degree] != 1 {
            return Err(Error::BadDescriptor("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(Field(Arc::new(FieldKind::Extension {
            p,
            degree,
            modulus,
        })))
    }

    /// F_{p^d} presented by the first monic irreducible polynomial of degree
    /// `d` in index order.
    pub fn extension_of_degree(p: u64, d: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as i64));
        }
        if d == 0 {
            return Err(Error::BadDescriptor("degree must be >= 1".into()));
        }
        if d == 1 {
            return Field::prime(p);
        }
        let count = (p as u128).pow(d as u32);
        if count >= 1 << 63 {
            return Err(Error::BadDescriptor(format!("F_{p}^{d} is too large")));
        }
        for idx in 0..count as u64 {
            let mut f = unpack_vec(idx, p, d);
            f.push(1);
            if is_irreducible(&f, p) {
                let m: Vec<i64> = f.iter().map(|&c| c as i64).collect();
                return Field::extension(p, &m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn rational() -> Field {
        Field(Arc::new(FieldKind::Rational))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field> {
        match desc {
            FieldDescriptor::Prime { p } => {
                if *p < 2 {
                    return Err(Error::NotPrime(*p));
                }
                Field::prime(*p as u64)
            }
            FieldDescriptor::Ext { p, deg, modulus } => {
                if *p < 2 {
                    return Err(Error::NotPrime(*p));
                }
                if modulus.len() != deg + 1 {
                    return Err(Error::BadDescriptor(format!(
                        "degree {deg} needs {} modulus coefficients, got {}",
                        deg + 1,
                        modulus.len()
                    )));
                }
                Field::extension(*p as u64, modulus)
            }
            FieldDescriptor::Rational => Ok(Field::rational()),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self.kind() {
            FieldKind::Prime { p } => FieldDescriptor::Prime { p: *p as i64 },
            FieldKind::Extension {
                p,
                degree,
                modulus,
            } => FieldDescriptor::Ext {
                p: *p as i64,
                deg: *degree,
                modulus: modulus.iter().map(|&c| c as i64).collect(),
            },
            FieldKind::Rational => FieldDescriptor::Rational,
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn name(&self) -> String {
        match self.kind() {
            FieldKind::Prime { p } => format!("F_{p}"),
            FieldKind::Extension { p, degree, .. } => format!("F_{}", p.pow(*degree as u32)),
            FieldKind::Rational => "Q".to_string(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
            FieldKind::Rational => 0,
        }
    }

    /// Number of elements; `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self.kind() {
            FieldKind::Prime { p } => Some(*p),
            FieldKind::Extension { p, degree, .. } => Some(p.pow(*degree as u32)),
            FieldKind::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Degree over the prime field (1 for prime fields and the rationals).
    pub fn degree(&self) -> usize {
        match self.kind() {
            FieldKind::Extension { degree, .. } => *degree,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.kind() {
            FieldKind::Rational => Elem::Rat(BigRational::zero()),
            _ => Elem::Fin(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self.kind() {
            FieldKind::Rational => Elem::Rat(BigRational::one()),
            _ => Elem::Fin(1),
        }
    }

    pub fn from_i64(&self, x: i64) -> Elem {
        match self.kind() {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => Elem::Fin(reduce_i64(x, *p)),
            FieldKind::Rational => Elem::Rat(BigRational::from_integer(BigInt::from(x))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(x) => *x == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    fn fin(a: &Elem) -> u64 {
        match a {
            Elem::Fin(x) => *x,
            Elem::Rat(_) => panic!("rational element used in a finite field"),
        }
    }

    fn rat(a: &Elem) -> &BigRational {
        match a {
            Elem::Rat(r) => r,
            Elem::Fin(_) => panic!("finite-field element used in the rationals"),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match self.kind() {
            FieldKind::Prime { p } => {
                let s = Self::fin(a) + Self::fin(b);
                Elem::Fin(if s >= *p { s - p } else { s })
            }
            FieldKind::Extension { p, degree, .. } => {
                let (x, y) = (unpack(Self::fin(a), *p, *degree), unpack(Self::fin(b), *p, *degree));
                let mut z = [0u64; MAX_DEG];
                for i in 0..*degree {
                    z[i] = (x[i] + y[i]) % p;
                }
                Elem::Fin(pack(&z[..*degree], *p))
            }
            FieldKind::Rational => Elem::Rat(Self::rat(a) + Self::rat(b)),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match self.kind() {
            FieldKind::Prime { p } => {
                let x = Self::fin(a);
                Elem::Fin(if x == 0 { 0 } else { p - x })
            }
            FieldKind::Extension { p, degree, .. } => {
                let x = unpack(Self::fin(a), *p, *degree);
                let mut z = [0u64; MAX_DEG];
                for i in 0..*degree {
                    z[i] = (p - x[i]) % p;
                }
                Elem::Fin(pack(&z[..*degree], *p))
            }
            FieldKind::Rational => Elem::Rat(-Self::rat(a)),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self.kind() {
            FieldKind::Prime { p } => {
                Elem::Fin(((Self::fin(a) as u128 * Self::fin(b) as u128) % *p as u128) as u64)
            }
            FieldKind::Extension {
                p,
                degree,
                modulus,
            } => {
                let (p, d) = (*p, *degree);
                let (x, y) = (unpack(Self::fin(a), p, d), unpack(Self::fin(b), p, d));
                let mut prod = [0u64; 2 * MAX_DEG];
                for i in 0..d {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..d {
                        prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
                    }
                }
                // x^d = -(m_0 + ... + m_{d-1} x^{d-1})
                for t in (d..2 * d - 1).rev() {
                    let c = prod[t];
                    if c == 0 {
                        continue;
                    }
                    prod[t] = 0;
                    for s in 0..d {
                        let sub = c * modulus[s] % p;
                        prod[t - d + s] = (prod[t - d + s] + p - sub) % p;
                    }
                }
                Elem::Fin(pack(&prod[..d], p))
            }
            FieldKind::Rational => Elem::Rat(Self::rat(a) * Self::rat(b)),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match self.kind() {
            FieldKind::Prime { p } => Elem::Fin(pow_mod(Self::fin(a), p - 2, *p)),
            FieldKind::Extension { .. } => {
                let q = self.order().expect("finite");
                self.pow(a, q - 2)
            }
            FieldKind::Rational => Elem::Rat(Self::rat(a).recip()),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        match self.kind() {
            FieldKind::Rational => a.clone(),
            _ => self.pow(a, self.characteristic()),
        }
    }

    /// The element with enumeration index `i` (finite fields only).
    pub fn element(&self, i: u64) -> Elem {
        debug_assert!(self.order().is_some_and(|q| i < q));
        Elem::Fin(i)
    }

    pub fn index_of(&self, a: &Elem) -> u64 {
        Self::fin(a)
    }

    /// All elements in index order (finite fields only).
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let q = self.order().expect("finite field");
        (0..q).map(Elem::Fin)
    }

    /// Image of `x ∈ self` in `dst`. Supported: identity, and a prime field
    /// into any extension of the same characteristic.
    pub fn embed(&self, dst: &Field, x: &Elem) -> Result<Elem> {
        if self == dst {
            return Ok(x.clone());
        }
        match (self.kind(), dst.kind()) {
            (FieldKind::Prime { p }, FieldKind::Extension { p: q, .. }) if p == q => {
                // constants are the packed values below p
                Ok(x.clone())
            }
            _ => Err(Error::NoEmbedding(self.name(), dst.name())),
        }
    }

    pub fn can_embed_into(&self, dst: &Field) -> bool {
        self.embed(dst, &self.one()).is_ok()
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read {s:?} as an element of {}", self.name()));
        match self.kind() {
            FieldKind::Prime { p } => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                let r = ((n % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Ok(Elem::Fin(r.to_u64().expect("reduced residue")))
            }
            FieldKind::Extension { p, degree, .. } => {
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() > *degree {
                    return Err(bad());
                }
                let mut coeffs = vec![0u64; *degree];
                for (c, part) in coeffs.iter_mut().zip(parts) {
                    let n: i64 = part.trim().parse().map_err(|_| bad())?;
                    *c = reduce_i64(n, *p);
                }
                Ok(Elem::Fin(pack(&coeffs, *p)))
            }
            FieldKind::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Elem::Rat(BigRational::new(num, den)))
            }
        }
    }

    /// Canonical string form: residues as integers, extension elements as
    /// comma-separated coefficients (lowest first), rationals as `num/den`.
    pub fn format_elem(&self, a: &Elem) -> String {
        match (self.kind(), a) {
            (FieldKind::Prime { .. }, Elem::Fin(x)) => x.to_string(),
            (FieldKind::Extension { p, degree, .. }, Elem::Fin(x)) => unpack_vec(*x, *p, *degree)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            (FieldKind::Rational, Elem::Rat(r)) => {
                let r = if r.denom().is_negative() {
                    BigRational::new(-r.numer().clone(), -r.denom().clone())
                } else {
                    r.clone()
                };
                format!("{}/{}", r.numer(), r.denom())
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    /// Whether `a` is a square in this (finite) field.
    pub fn is_square(&self, a: &Elem) -> bool {
        match self.order() {
            Some(q) if self.characteristic() != 2 => {
                self.is_zero(a) || self.is_one(&self.pow(a, (q - 1) / 2))
            }
            Some(_) => true,
            None => panic!("square test needs a finite field"),
        }
    }
}

/// An element bundled with its field, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    pub field: Field,
    pub value: Elem,
}

impl FieldElem {
    pub fn new(field: &Field, value: Elem) -> Self {
        FieldElem {
            field: field.clone(),
            value,
        }
    }

    fn same(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(FieldElem::new(&self.field, self.field.add(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(FieldElem::new(&self.field, self.field.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem::new(&self.field, self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(FieldElem::new(&self.field, self.field.inv(&self.value)?))
    }

    pub fn equals(&self, other: &FieldElem) -> Result<bool> {
        self.same(other)?;
        Ok(self.value == other.value)
    }

    pub fn embed(&self, dst: &Field) -> Result<FieldElem> {
        Ok(FieldElem::new(dst, self.field.embed(dst, &self.value)?))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(&self.value))
    }
}
