//! Dense univariate polynomials over a [`Field`], ascending coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficients are field encodings, `coeffs[i]` multiplies `x^i`. The zero
/// polynomial has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<u32>,
}

/// JSON form `{"p": 2, "coeffs": [1, 1, 0, 0, 1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub p: u32,
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: &Field, n: usize) -> Poly {
        let mut c = vec![0u32; n + 1];
        c[0] = field.neg(1);
        c[n] = 1;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, c: u32) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, f: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.lead()).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), Poly::new(rem)));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let t = rem[k];
            if t == 0 {
                continue;
            }
            let c = f.mul(t, inv_lead);
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, f: &Field, divisor: &Poly) -> Result<Poly> {
        self.divrem(f, divisor).map(|(_, r)| r)
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self, f: &Field) -> Poly {
        match f.inv(self.lead()) {
            Some(inv) => self.scale(f, inv),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0u32, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `x^deg * p(1/x)`.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// Renders in descending order, e.g. `x^4 + x + 1` or `x^3 + w^2*x + w`.
    /// Coefficients of non-prime fields use `symbol^j` for the powers of the
    /// field's primitive element.
    pub fn render(&self, f: &Field, symbol: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coef = f.render(c, symbol);
            terms.push(match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono,
                (_, false) => format!("{coef}*{mono}"),
            });
        }
        terms.join(" + ")
    }

    /// Parses the text format. Terms are joined by `+` or `-` in any order;
    /// a term is `c*x^k`, `cx^k`, `x^k`, `x` or a constant, where `c` is an
    /// integer (reduced mod p), `symbol`, `symbol^j`, or a product of those.
    pub fn parse(f: &Field, symbol: &str, text: &str) -> Result<Poly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (idx, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(idx > 0 && cur.ends_with('^')) {
                if !cur.is_empty() {
                    terms.push((negative, std::mem::take(&mut cur)));
                } else if idx > 0 {
                    return Err(Error::Parse(format!("dangling sign in {text:?}")));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {text:?}")));
        }
        terms.push((negative, cur));

        let mut coeffs: Vec<u32> = Vec::new();
        for (neg, term) in terms {
            let (c, k) = parse_term(f, symbol, &term)?;
            let c = if neg { f.neg(c) } else { c };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = f.add(coeffs[k], c);
        }
        Ok(Poly::new(coeffs))
    }

    pub fn to_json(&self, f: &Field) -> PolyJson {
        PolyJson { p: f.characteristic(), coeffs: self.coeffs.clone() }
    }

    pub fn from_json(f: &Field, json: &PolyJson) -> Result<Poly> {
        if json.p != f.characteristic() {
            return Err(Error::InconsistentInput(format!(
                "polynomial is over characteristic {}, field has {}",
                json.p,
                f.characteristic()
            )));
        }
        if let Some(&c) = json.coeffs.iter().find(|&&c| c as u64 >= f.order()) {
            return Err(Error::CoefficientOutOfRange { coeff: c as u64, p: f.characteristic() });
        }
        Ok(Poly::new(json.coeffs.clone()))
    }
}

fn parse_term(f: &Field, symbol: &str, term: &str) -> Result<(u32, usize)> {
    let bad = || Error::Parse(format!("cannot read term {term:?}"));
    // split off the x-power: the last 'x' not belonging to the symbol
    let (coef_part, exp) = match term.rfind('x') {
        Some(pos) if symbol != "x" => {
            let rest = &term[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
            };
            let mut coef = &term[..pos];
            coef = coef.strip_suffix('*').unwrap_or(coef);
            (coef, exp)
        }
        _ => (term, 0),
    };
    if coef_part.is_empty() {
        return Ok((1, exp));
    }
    let mut value = 1u32;
    for factor in coef_part.split('*') {
        let v = if let Some(rest) = factor.strip_prefix(symbol) {
            let j: i64 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            f.pow_signed(f.generator(), j)?
        } else {
            let c: u64 = factor.parse().map_err(|_| bad())?;
            f.constant(c)
        };
        value = f.mul(value, v);
    }
    Ok((value, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2() -> Field {
        Field::with_default_poly(2, 1).unwrap()
    }

    #[test]
    fn parse_and_render_binary() {
        let f = gf2();
        let p = Poly::parse(&f, "w", "x^4+x+1").unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(p.render(&f, "w"), "x^4 + x + 1");
        let q = Poly::parse(&f, "w", "1 + x + x^4").unwrap();
        assert_eq!(p, q);
        assert_eq!(Poly::parse(&f, "w", "x^2 + x^2").unwrap(), Poly::zero());
    }

    #[test]
    fn parse_over_gf4() {
        let f = Field::with_default_poly(2, 2).unwrap();
        let w = f.generator();
        let p = Poly::parse(&f, "w", "x^18 + w^2*x^17 + w*x^16").unwrap();
        assert_eq!(p.coeff(18), 1);
        assert_eq!(p.coeff(17), f.mul(w, w));
        assert_eq!(p.coeff(16), w);
        assert_eq!(p.render(&f, "w"), "x^18 + w^2*x^17 + w*x^16");
        let r = Poly::parse(&f, "w", "w^2x^3 + w").unwrap();
        assert_eq!(r.coeff(3), f.mul(w, w));
    }

    #[test]
    fn parse_odd_characteristic_signs() {
        let f = Field::with_default_poly(3, 1).unwrap();
        let p = Poly::parse(&f, "w", "x^2 - x - 1").unwrap();
        assert_eq!(p.coeffs(), &[2, 2, 1]);
        assert_eq!(p.render(&f, "w"), "x^2 + 2*x + 2");
        assert!(Poly::parse(&f, "w", "x^2 +").is_err());
        assert!(Poly::parse(&f, "w", "x^a").is_err());
    }

    #[test]
    fn x15_minus_one_factor() {
        let f = gf2();
        let big = Poly::x_n_minus_one(&f, 15);
        let g = Poly::parse(&f, "w", "x^10+x^5+1").unwrap();
        let (quot, rem) = big.divrem(&f, &g).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot.render(&f, "w"), "x^5 + 1");
        assert_eq!(g.gcd(&f, &big), g);
    }

    fn arb_poly(p: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..p, 0..max_len)
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(5, 12), b in arb_poly(5, 8)) {
            let f = Field::with_default_poly(5, 1).unwrap();
            let a = Poly::new(a);
            let b = Poly::new(b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&f, &b).unwrap();
            prop_assert_eq!(q.mul(&f, &b).add(&f, &r), a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(3, 10), b in arb_poly(3, 10)) {
            let f = Field::with_default_poly(3, 1).unwrap();
            let a = Poly::new(a);
            let b = Poly::new(b);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&f, &b);
            prop_assert!(a.rem(&f, &g).unwrap().is_zero());
            prop_assert!(b.rem(&f, &g).unwrap().is_zero());
            prop_assert_eq!(g.lead(), 1);
        }

        #[test]
        fn render_parse_roundtrip(a in arb_poly(4, 9)) {
            let f = Field::with_default_poly(2, 2).unwrap();
            let a = Poly::new(a);
            let text = a.render(&f, "w");
            if a.is_zero() {
                prop_assert_eq!(text, "0");
            } else {
                prop_assert_eq!(Poly::parse(&f, "w", &text).unwrap(), a);
            }
        }
    }
}
