// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in GF(p^e) for small prime powers.
//!
//! An element is stored as the integer whose base-p digits are the
//! coefficients (low degree first) of its residue modulo the field's
//! defining polynomial. Every field also carries a canonical element ordering
//! `α_0 = 0, α_i = ζ^(i-1)` where ζ is the smallest primitive element; point
//! indices in [`crate::rm`] are built from positions in this ordering.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Tables for addition are only materialised up to this order.
const ADD_TABLE_LIMIT: u32 = 256;

/// Raw field element value. Only meaningful together with a [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    zeta: Fe,
    /// exp[i] = ζ^i, stored for i in [0, 2(q-1)) so log sums need no reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
    /// Canonical ordering α_0..α_{q-1}.
    order: Vec<Fe>,
    /// Position of each value in the canonical ordering.
    position: Vec<u32>,
    add_table: Option<Vec<u16>>,
    neg_table: Vec<u16>,
}

/// Descriptor of GF(p^e). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.e)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.inner.p, self.inner.e)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p) as coefficient vectors, low degree first.
// Only used while building a field.
mod prime_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db && !(r.len() == 1 && r[0] == 0) {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            if c != 0 {
                for (i, &bi) in b.iter().enumerate() {
                    let idx = dr - db + i;
                    r[idx] = (r[idx] + p * p - c * bi % p) % p;
                }
            }
            r.pop();
            trim(&mut r);
            if r.len() <= db {
                break;
            }
        }
        trim(&mut r);
        r
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut k = p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            k >>= 1;
        }
        r as u32
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
    pub fn monic(deg: u32, mut code: u32, p: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            v.push(code % p);
            code /= p;
        }
        v.push(1);
        v
    }
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = (modulus.len() - 1) as u32;
    for deg in 1..=e / 2 {
        for code in 0..p.pow(deg) {
            let divisor = prime_poly::monic(deg, code, p);
            if prime_poly::is_zero(&prime_poly::rem(modulus, &divisor, p)) {
                return false;
            }
        }
    }
    true
}

fn digits(value: u32, p: u32, e: u32) -> Vec<u32> {
    let mut v = value;
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let e = (modulus.len() - 1) as u32;
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let mut prod = vec![0u32; (2 * e) as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = prime_poly::rem(&prod, modulus, p);
    r.resize(e as usize, 0);
    from_digits(&r, p)
}

fn digit_add(a: u32, b: u32, p: u32, e: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..e {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn digit_neg(a: u32, p: u32, e: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut a = a;
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..e {
        out += ((p - a % p) % p) * scale;
        a /= p;
        scale *= p;
    }
    out
}

impl Field {
    /// Builds GF(p^e). Without an explicit modulus the lexicographically
    /// smallest monic irreducible of degree `e` is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidParameters("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64);
        let q = q.ok_or(Error::FieldTooLarge { p, e })? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidModulus(format!("expected degree {e}, got {} coefficients", m.len())));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(m));
                }
                m
            }
            None => (0..p.pow(e))
                .map(|code| prime_poly::monic(e, code, p))
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial exists in every degree"),
        };

        let zeta = Self::smallest_primitive(p, q, &modulus);

        let n = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur as u16;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, zeta, p, &modulus);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let mut order = Vec::with_capacity(q as usize);
        order.push(Fe::ZERO);
        order.extend((0..n).map(|i| Fe(exp[i])));
        let mut position = vec![0u32; q as usize];
        for (i, a) in order.iter().enumerate() {
            position[a.0 as usize] = i as u32;
        }

        let add_table = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, e) as u16;
                }
            }
            t
        });
        let neg_table = (0..q).map(|a| digit_neg(a, p, e) as u16).collect();

        Ok(Field {
            inner: Arc::new(Inner {
                p,
                e,
                q,
                modulus,
                zeta: Fe(zeta as u16),
                exp,
                log,
                order,
                position,
                add_table,
                neg_table,
            }),
        })
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        Field::new(p, e, None)
    }

    fn smallest_primitive(p: u32, q: u32, modulus: &[u32]) -> u32 {
        if q == 2 {
            return 1;
        }
        let factors = prime_factors(q - 1);
        let pow = |mut base: u32, mut k: u32| {
            let mut r = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    r = slow_mul(r, base, p, modulus);
                }
                base = slow_mul(base, base, p, modulus);
                k >>= 1;
            }
            r
        };
        (2..q)
            .find(|&v| factors.iter().all(|&r| pow(v, (q - 1) / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Parses `"p^e"`, `"q"` or `"p^e mod=c0,c1,...,ce"` (coefficients low degree first).
    pub fn parse(spec: &str) -> Result<Field> {
        let mut parts = spec.split(|c: char| c.is_whitespace() || c == ';').filter(|s| !s.is_empty());
        let head = parts.next().ok_or_else(|| Error::Parse("empty field spec".into()))?;
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (
                p.parse::<u32>().map_err(|_| Error::Parse(format!("bad prime in '{head}'")))?,
                e.parse::<u32>().map_err(|_| Error::Parse(format!("bad degree in '{head}'")))?,
            ),
            None => {
                let q = head.parse::<u32>().map_err(|_| Error::Parse(format!("bad field order '{head}'")))?;
                prime_power(q).ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
            }
        };
        let mut modulus = None;
        for part in parts {
            let coeffs = part
                .strip_prefix("mod=")
                .ok_or_else(|| Error::Parse(format!("unexpected token '{part}' in field spec")))?;
            let v = coeffs
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient '{c}'"))))
                .collect::<Result<Vec<_>>>()?;
            modulus = Some(v);
        }
        Field::new(p, e, modulus)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.inner.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }
    /// Characteristic (same as `p`).
    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }
    #[inline]
    pub fn zeta(&self) -> Fe {
        self.inner.zeta
    }

    /// Canonical ordering α_0 = 0, α_i = ζ^(i-1).
    pub fn elements(&self) -> &[Fe] {
        &self.inner.order
    }

    /// The i-th element α_i of the canonical ordering.
    #[inline]
    pub fn alpha(&self, i: usize) -> Fe {
        self.inner.order[i]
    }

    /// Position of `a` in the canonical ordering.
    #[inline]
    pub fn index_of(&self, a: Fe) -> usize {
        self.inner.position[a.0 as usize] as usize
    }

    pub fn elem(&self, value: u32) -> Result<Fe> {
        if value < self.inner.q {
            Ok(Fe(value as u16))
        } else {
            Err(Error::NotAnElement { value, q: self.inner.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.inner.p as i64) as u16)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.inner;
        if inner.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &inner.add_table {
            Some(t) => Fe(t[a.0 as usize * inner.q as usize + b.0 as usize]),
            None => Fe(digit_add(a.0 as u32, b.0 as u32, inner.p, inner.e) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.inner.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let inner = &*self.inner;
        Fe(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        Ok(Fe(inner.exp[((n - inner.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`, with `0^0 = 1`.
    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let inner = &*self.inner;
        let n = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64 * (k % n) % n;
        Fe(inner.exp[l as usize])
    }

    /// `a + c·b`, the inner step of every elimination.
    #[inline]
    pub fn mul_add(&self, a: Fe, c: Fe, b: Fe) -> Fe {
        self.add(a, self.mul(c, b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Fe) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[a.0 as usize];
        Ok(n / gcd(n, l))
    }

    /// Wraps a raw value as a field-checked [`Element`].
    pub fn element(&self, value: u32) -> Result<Element> {
        Ok(Element { field: self.clone(), value: self.elem(value)? })
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decomposes `q = p^e`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

/// A field element that remembers its field, so mixing fields is caught.
///
/// Operator impls panic on a field mismatch; the `try_*` methods return
/// [`Error::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: Field,
    value: Fe,
}

impl Element {
    pub fn new(field: &Field, value: Fe) -> Element {
        Element { field: field.clone(), value }
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn value(&self) -> Fe {
        self.value
    }

    fn same_field(&self, other: &Element) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(Element::new(&self.field, self.field.add(self.value, other.value)))
    }
    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(Element::new(&self.field, self.field.sub(self.value, other.value)))
    }
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(Element::new(&self.field, self.field.mul(self.value, other.value)))
    }
    pub fn inv(&self) -> Result<Element> {
        Ok(Element::new(&self.field, self.field.inv(self.value)?))
    }
    pub fn pow(&self, k: u64) -> Element {
        Element::new(&self.field, self.field.pow(self.value, k))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("field mismatch")
    }
}
impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("field mismatch")
    }
}
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("field mismatch")
    }
}
impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(&self.field, self.field.neg(self.value))
    }
}
