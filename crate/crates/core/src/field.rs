//! Arithmetic in GF(p^e) on a polynomial basis over the prime field.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of
//! its coefficient vector, so GF(2^e) elements are plain bit masks. Fields of
//! order up to [`TABLE_LIMIT`] carry log/antilog tables; larger fields multiply
//! by schoolbook polynomial products followed by reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, is_prime, prime_factors};
use crate::error::{Error, Result};

pub const TABLE_LIMIT: u64 = 1 << 22;

/// Largest field order representable by the `u32` element encoding.
pub const MAX_ORDER: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldId(u64);

/// An element tagged with the field it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldId,
    value: u32,
    log: Option<u32>,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field_id(&self) -> FieldId {
        self.field
    }

    /// Discrete logarithm to the field's primitive element; `None` for zero
    /// or when the field has no tables.
    pub fn log(&self) -> Option<u32> {
        self.log
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(order-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

pub struct Field {
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    order: u64,
    generator: u32,
    generator_is_x: bool,
    tables: Option<Tables>,
    id: FieldId,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl Field {
    /// Builds GF(p^e) from a monic polynomial of degree `e`, given in ascending
    /// coefficient order. Irreducibility is verified; if the class of `x` is not
    /// primitive the smallest generator (by encoding) is used instead.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::CoefficientOutOfRange { coeff: c as u64, p });
        }
        let mut modulus = modulus.to_vec();
        while modulus.len() > 1 && modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        let degree = (modulus.len() - 1) as u32;
        let order = checked_pow(p as u64, degree)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(u64::MAX))?;
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(p));
        }

        let mut field = Field {
            p,
            degree,
            modulus,
            order,
            generator: 0,
            generator_is_x: false,
            tables: None,
            id: FieldId(0),
        };
        let x = field.class_of_x();
        let factors = prime_factors(order - 1);
        if field.has_order(x, order - 1, &factors) {
            field.generator = x;
            field.generator_is_x = true;
        } else {
            field.generator = (1..order as u32)
                .find(|&g| field.has_order(g, order - 1, &factors))
                .expect("the multiplicative group of a finite field is cyclic");
        }
        if order <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        field.id = field.compute_id();
        Ok(field)
    }

    /// GF(p^e) with the default defining polynomial.
    pub fn with_default_poly(p: u32, degree: u32) -> Result<Field> {
        let poly = default_defining_poly(p, degree)?;
        Field::new(p, &poly)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn generator_is_x(&self) -> bool {
        self.generator_is_x
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value as u64 >= self.order {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { field: self.id, value, log: self.log(value) })
    }

    /// Checks that a tagged element belongs to this field and returns its value.
    pub fn value_of(&self, e: &FieldElement) -> Result<u32> {
        if e.field != self.id {
            return Err(Error::FieldMismatch);
        }
        Ok(e.value)
    }

    /// Embeds a prime-field constant.
    pub fn constant(&self, c: u64) -> u32 {
        (c % self.p as u64) as u32
    }

    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut a = a;
        for _ in 0..self.degree {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        debug_assert!(coeffs.len() <= self.degree as usize);
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    fn digitwise(&self, mut a: u32, mut b: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
        let p = self.p;
        let mut out = 0u32;
        let mut place = 1u32;
        for i in 0..self.degree {
            out += op(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            if i + 1 < self.degree {
                place *= p;
            }
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook product reduced modulo the defining polynomial.
    pub fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let ca = self.coefficients(a);
        let cb = self.coefficients(b);
        let d = self.degree as usize;
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                prod[k - d + i] = (prod[k - d + i] + t * (p - m as u64)) % p;
            }
        }
        let low: Vec<u32> = prod[..d].iter().map(|&c| c as u32).collect();
        self.from_coefficients(&low)
    }

    /// Multiplies by the class of `x`.
    fn mul_by_x(&self, a: u32) -> u32 {
        if self.degree == 1 {
            return self.mul_slow(a, self.class_of_x());
        }
        let p = self.p as u64;
        let top_place = checked_pow(p, self.degree - 1).unwrap();
        let a = a as u64;
        let top = a / top_place;
        let shifted = (a % top_place) * p;
        if top == 0 {
            return shifted as u32;
        }
        let mut out = shifted as u32;
        // subtract top * (modulus without its leading term)
        let correction: Vec<u32> = self.modulus[..self.degree as usize]
            .iter()
            .map(|&m| ((m as u64 * top) % p) as u32)
            .collect();
        out = self.sub(out, self.from_coefficients(&correction));
        out
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = self.order as u32 - 1;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
            None => self.pow(a, self.order - 2),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^k` for a non-negative exponent.
    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.order - 1;
        if let Some(t) = &self.tables {
            let e = (t.log[a as usize] as u64 * (k % n)) % n;
            return t.exp[e as usize];
        }
        let mut k = k % n;
        if k == 0 {
            return 1;
        }
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^k` for any integer exponent, reduced modulo the group order.
    pub fn pow_signed(&self, a: u32, k: i64) -> Result<u32> {
        if a == 0 {
            return match k {
                0 => Ok(1),
                k if k > 0 => Ok(0),
                _ => Err(Error::ZeroToNegativePower),
            };
        }
        let n = (self.order - 1) as i128;
        let e = (k as i128).rem_euclid(n) as u64;
        Ok(self.pow(a, e))
    }

    /// `g^i` for the field's primitive element `g`.
    pub fn exp(&self, i: u64) -> u32 {
        let n = self.order - 1;
        match &self.tables {
            Some(t) => t.exp[(i % n) as usize],
            None => self.pow(self.generator, i % n),
        }
    }

    /// Discrete log to the primitive element, when tables are present.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a as usize])
    }

    /// Discrete log, falling back to a linear search without tables.
    pub fn log_search(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(l) = self.log(a) {
            return Some(l as u64);
        }
        let mut acc = 1u32;
        for i in 0..self.order - 1 {
            if acc == a {
                return Some(i);
            }
            acc = self.mul_slow(acc, self.generator);
        }
        None
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let n = self.order - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord % r == 0 && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        ord
    }

    /// `a^(p^times)`.
    pub fn frobenius(&self, a: u32, times: u32) -> u32 {
        let mut out = a;
        for _ in 0..times {
            out = self.pow(out, self.p as u64);
        }
        out
    }

    /// Encoding of the residue class of `x`.
    pub fn class_of_x(&self) -> u32 {
        if self.degree == 1 {
            (self.p - self.modulus[0]) % self.p
        } else {
            self.p
        }
    }

    /// Renders an element as a power of the primitive element, e.g. `w^2`.
    /// Prime fields render as integers.
    pub fn render(&self, a: u32, symbol: &str) -> String {
        if self.degree == 1 {
            return a.to_string();
        }
        match a {
            0 => "0".to_string(),
            1 => "1".to_string(),
            _ => match self.log_search(a) {
                Some(1) => symbol.to_string(),
                Some(j) => format!("{symbol}^{j}"),
                None => unreachable!("nonzero element without a logarithm"),
            },
        }
    }

    fn has_order(&self, g: u32, n: u64, factors: &[u64]) -> bool {
        if g == 0 {
            return false;
        }
        if self.pow_slow(g, n) != 1 {
            return false;
        }
        factors.iter().all(|&r| self.pow_slow(g, n / r) != 1)
    }

    fn pow_slow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.order as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            exp[i + n] = acc;
            log[acc as usize] = i as u32;
            acc = if self.generator_is_x {
                self.mul_by_x(acc)
            } else {
                self.mul_slow(acc, self.generator)
            };
        }
        debug_assert_eq!(acc, 1);
        Tables { exp, log }
    }

    fn compute_id(&self) -> FieldId {
        // FNV-1a over the defining data
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        feed(self.p as u64);
        feed(self.degree as u64);
        for &c in &self.modulus {
            feed(c as u64);
        }
        feed(self.generator as u64);
        FieldId(h)
    }
}

/// The lexicographically least primitive polynomial of the given degree over
/// GF(p). Candidates `x^e + c_{e-1} x^{e-1} + ... + c_0` are scanned by the
/// integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` in ascending order and the
/// first primitive one is returned (ascending coefficients, monic).
pub fn default_defining_poly(p: u32, degree: u32) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if degree == 0 {
        return Err(Error::NotMonic);
    }
    let order = checked_pow(p as u64, degree)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or(Error::FieldTooLarge(u64::MAX))?;
    let factors = prime_factors(order - 1);
    for code in 0..order {
        let mut poly = Vec::with_capacity(degree as usize + 1);
        let mut c = code;
        for _ in 0..degree {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if poly[0] == 0 && degree > 1 {
            continue;
        }
        if fp::is_primitive(&poly, p, order - 1, &factors) {
            return Ok(poly);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Polynomials over the prime field as coefficient vectors, used only to
/// certify defining polynomials.
mod fp {
    use crate::arith::prime_factors;

    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let inv_lead = inv(f[df], p);
        while r.len() > df {
            let k = r.len() - 1;
            let t = r[k] * inv_lead % p;
            for i in 0..=df {
                let idx = k - df + i;
                r[idx] = (r[idx] + (p - t) * f[i]) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn inv(a: u64, p: u64) -> u64 {
        crate::arith::pow_mod(a, p - 2, p)
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, f, p)
    }

    fn powmod(base: &[u64], mut k: u128, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while k > 0 {
            if k & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            k >>= 1;
        }
        rem(&acc, f, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// x^(p^k) mod f
    fn x_pow_p_pow(k: u32, f: &[u64], p: u64) -> Vec<u64> {
        let mut cur = rem(&[0, 1], f, p);
        for _ in 0..k {
            cur = powmod(&cur, p as u128, f, p);
        }
        cur
    }

    fn minus_x(a: &[u64], p: u64) -> Vec<u64> {
        let mut out = a.to_vec();
        if out.len() < 2 {
            out.resize(2, 0);
        }
        out[1] = (out[1] + p - 1) % p;
        trim(&mut out);
        out
    }

    /// Rabin's test: `x^(p^e) = x mod f` and `gcd(x^(p^(e/r)) - x, f) = 1` for
    /// every prime `r | e`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let p = p as u64;
        let f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let e = (f.len() - 1) as u32;
        if e == 1 {
            return true;
        }
        let full = minus_x(&x_pow_p_pow(e, &f, p), p);
        if !full.is_empty() {
            return false;
        }
        for r in prime_factors(e as u64) {
            let h = minus_x(&x_pow_p_pow(e / r as u32, &f, p), p);
            let g = gcd(&f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Irreducible and `x` has order `n = p^e - 1` modulo `f`.
    pub fn is_primitive(f: &[u32], p: u32, n: u64, factors: &[u64]) -> bool {
        if !is_irreducible(f, p) {
            return false;
        }
        let pp = p as u64;
        let fv: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let x = [0u64, 1];
        let one = vec![1u64];
        if powmod(&x, n as u128, &fv, pp) != one {
            return false;
        }
        factors.iter().all(|&r| powmod(&x, (n / r) as u128, &fv, pp) != one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> Field {
        Field::new(2, &[1, 1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn gf16_class_of_x_is_primitive() {
        let f = gf16();
        assert_eq!(f.order(), 16);
        assert!(f.generator_is_x());
        let a = f.generator();
        // a^4 = a + 1
        assert_eq!(f.pow(a, 4), f.add(a, 1));
    }

    #[test]
    fn prime_field_from_linear_poly() {
        let f = Field::new(2, &[1, 1]).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.generator(), 1);
        let f3 = Field::new(3, &[1, 1]).unwrap();
        assert_eq!(f3.generator(), 2);
        assert_eq!(f3.mul(2, 2), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(2, &[1, 0, 1]).unwrap_err(), Error::NotIrreducible(2));
        assert_eq!(Field::new(4, &[1, 1]).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(3, &[1, 2, 2]).unwrap_err(), Error::NotMonic);
        assert_eq!(Field::new(2, &[1]).unwrap_err(), Error::NotMonic);
        assert!(matches!(
            Field::new(2, &[1, 3, 1]).unwrap_err(),
            Error::CoefficientOutOfRange { .. }
        ));
    }

    #[test]
    fn default_polys() {
        assert_eq!(default_defining_poly(2, 4).unwrap(), vec![1, 1, 0, 0, 1]);
        assert_eq!(default_defining_poly(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(default_defining_poly(3, 2).unwrap(), vec![2, 1, 1]);
    }

    /// Exhaustive scan with an independent primitivity check: a monic
    /// polynomial of degree e is primitive iff its root generates a cyclic
    /// group of order p^e - 1, i.e. the powers of x modulo f visit every
    /// nonzero residue.
    fn brute_default(p: u32, e: u32) -> Vec<u32> {
        let order = (p as u64).pow(e);
        for code in 0..order {
            let mut poly = Vec::new();
            let mut c = code;
            for _ in 0..e {
                poly.push((c % p as u64) as u32);
                c /= p as u64;
            }
            poly.push(1);
            // walk x^i mod f as coefficient vectors
            let mut seen = std::collections::HashSet::new();
            let mut cur = vec![0u32; e as usize];
            cur[0] = 1;
            let mut ok = true;
            for _ in 0..order - 1 {
                if !seen.insert(cur.clone()) || cur.iter().all(|&x| x == 0) {
                    ok = false;
                    break;
                }
                let top = cur[e as usize - 1];
                let mut next = vec![0u32; e as usize];
                for i in (1..e as usize).rev() {
                    next[i] = cur[i - 1];
                }
                for i in 0..e as usize {
                    next[i] = (next[i] + (p - poly[i]) * top) % p;
                }
                cur = next;
            }
            let back_to_one = cur[0] == 1 && cur[1..].iter().all(|&x| x == 0);
            if ok && back_to_one && seen.len() as u64 == order - 1 {
                return poly;
            }
        }
        unreachable!()
    }

    #[test]
    fn default_poly_matches_brute_force_scan() {
        for (p, e) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)] {
            assert_eq!(default_defining_poly(p, e).unwrap(), brute_default(p, e), "p={p} e={e}");
        }
    }

    #[test]
    fn pow_cycle_examples() {
        let f = gf16();
        let a = f.generator();
        assert_eq!(f.pow(a, 15), 1);
        assert_eq!(f.pow(a, 0), 1);
        // a^7 = a^3 + a + 1 -> bits 0b1011
        assert_eq!(f.pow(a, 7), 0b1011);
        let mut acc = 1;
        for _ in 0..7 {
            acc = f.mul_slow(acc, a);
        }
        assert_eq!(acc, 0b1011);
        assert_eq!(f.pow_signed(0, -1), Err(Error::ZeroToNegativePower));
        assert_eq!(f.pow_signed(a, -1).unwrap(), f.inv(a).unwrap());
    }

    #[test]
    fn non_primitive_irreducible_gets_a_generator() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible over GF(2) but x has order 5
        let f = Field::new(2, &[1, 1, 1, 1, 1]).unwrap();
        assert!(!f.generator_is_x());
        assert_eq!(f.element_order(f.generator()), 15);
        assert_eq!(f.element_order(f.class_of_x()), 5);
    }

    #[test]
    fn slow_and_table_multiplication_agree() {
        for (p, poly) in [(2u32, vec![1u32, 0, 1, 0, 0, 1]), (3, vec![2, 1, 1]), (5, default_defining_poly(5, 3).unwrap())] {
            let f = Field::new(p, &poly).unwrap();
            for a in 0..f.order() as u32 {
                for b in 0..f.order() as u32 {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn tables_are_deterministic() {
        let a = Field::new(3, &[2, 1, 0, 0, 1, 0, 0, 0, 1]);
        let b = Field::new(3, &[2, 1, 0, 0, 1, 0, 0, 0, 1]);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a.id(), b.id());
                for i in 0..a.group_order() {
                    assert_eq!(a.exp(i), b.exp(i));
                }
            }
            (Err(e1), Err(e2)) => assert_eq!(e1, e2),
            _ => panic!("construction is not deterministic"),
        }
    }

    #[test]
    fn tagged_elements() {
        let f = gf16();
        let g = Field::new(2, &[1, 0, 1, 1]).unwrap();
        let e = f.element(5).unwrap();
        assert_eq!(f.value_of(&e).unwrap(), 5);
        assert_eq!(g.value_of(&e), Err(Error::FieldMismatch));
        assert_eq!(f.element(16), Err(Error::FieldMismatch));
        assert_eq!(f.element(0).unwrap().log(), None);
    }
}
