//! Low-uniformity monomial families and their difference distribution tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{checked_pow, gcd};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Inverse,
    Gold,
    Welch,
    Kasami,
    Niho1,
    Niho2,
    Dobbertin,
    BrackenLeander,
    Q23,
    RawExponent,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Inverse,
        Family::Gold,
        Family::Welch,
        Family::Kasami,
        Family::Niho1,
        Family::Niho2,
        Family::Dobbertin,
        Family::BrackenLeander,
        Family::Q23,
        Family::RawExponent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Inverse => "inverse",
            Family::Gold => "gold",
            Family::Welch => "welch",
            Family::Kasami => "kasami",
            Family::Niho1 => "niho1",
            Family::Niho2 => "niho2",
            Family::Dobbertin => "dobbertin",
            Family::BrackenLeander => "bracken_leander",
            Family::Q23 => "q23",
            Family::RawExponent => "raw_exponent",
        }
    }

    /// Families defined over GF(2^m) only.
    pub fn binary_only(self) -> bool {
        matches!(
            self,
            Family::Welch | Family::Kasami | Family::Niho1 | Family::Niho2 | Family::Dobbertin | Family::BrackenLeander
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm || (norm == "raw" && *f == Family::RawExponent) || (norm == "bl" && *f == Family::BrackenLeander))
            .ok_or_else(|| Error::InvalidParams(format!("unknown function family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    /// Base field order `q`.
    pub q: u64,
    pub m: u32,
    pub h: Option<u32>,
    /// Only for [`Family::RawExponent`].
    pub exponent: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub uniformity: u64,
    pub precondition_met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionSpec {
    pub family: Family,
    pub params: Params,
    pub exponent: u64,
    pub claim: Option<Claim>,
}

fn need_h(params: &Params) -> Result<u32> {
    match params.h {
        Some(h) if h >= 1 => Ok(h),
        _ => Err(Error::InvalidParams("this family needs h >= 1".into())),
    }
}

fn pow2(e: u32) -> Result<u64> {
    checked_pow(2, e).ok_or_else(|| Error::InvalidParams(format!("2^{e} overflows")))
}

fn sum(terms: &[u64]) -> Result<u64> {
    terms
        .iter()
        .try_fold(0u64, |acc, &t| acc.checked_add(t))
        .ok_or_else(|| Error::InvalidParams("exponent overflows".into()))
}

/// Resolves the exponent and the uniformity claim with its precondition.
pub fn resolve(family: Family, params: Params) -> Result<FunctionSpec> {
    let Params { q, m, .. } = params;
    if m == 0 || q < 2 {
        return Err(Error::InvalidParams("need q >= 2 and m >= 1".into()));
    }
    if family.binary_only() && q != 2 {
        return Err(Error::InvalidParams(format!("{family} is defined over GF(2^m) only")));
    }
    let order = checked_pow(q, m).ok_or_else(|| Error::InvalidParams("q^m overflows".into()))?;
    let (exponent, claim) = match family {
        Family::Inverse => {
            let claim = (q == 2).then(|| Claim { uniformity: if m % 2 == 1 { 2 } else { 4 }, precondition_met: true });
            (order - 2, claim)
        }
        Family::Gold => {
            let h = need_h(&params)?;
            let e = sum(&[checked_pow(q, h).ok_or_else(|| Error::InvalidParams("q^h overflows".into()))?, 1])?;
            let g = gcd(m as u64, h as u64);
            let claim = if q == 2 {
                if m % 2 == 1 && g == 1 {
                    Claim { uniformity: 2, precondition_met: true }
                } else if m % 4 == 2 && g == 2 {
                    Claim { uniformity: 4, precondition_met: true }
                } else {
                    Claim { uniformity: 2, precondition_met: false }
                }
            } else {
                Claim { uniformity: 1, precondition_met: (m as u64 / g) % 2 == 1 && q % 2 == 1 }
            };
            (e, Some(claim))
        }
        Family::Welch => {
            let h = need_h(&params)?;
            let met = m % 2 == 1 && 2 * h + 1 == m;
            (sum(&[pow2(h)?, 3])?, Some(Claim { uniformity: 2, precondition_met: met }))
        }
        Family::Kasami => {
            let h = need_h(&params)?;
            let met = m % 2 == 1 && gcd(m as u64, h as u64) == 1;
            let e = pow2(2 * h)? - pow2(h)? + 1;
            (e, Some(Claim { uniformity: 2, precondition_met: met }))
        }
        Family::Niho1 => {
            let h = need_h(&params)?;
            if h % 2 == 1 {
                return Err(Error::InvalidParams("niho1 needs h even".into()));
            }
            let met = m == 2 * h + 1;
            (sum(&[pow2(h)?, pow2(h / 2)?])? - 1, Some(Claim { uniformity: 2, precondition_met: met }))
        }
        Family::Niho2 => {
            let h = need_h(&params)?;
            if h % 2 == 0 {
                return Err(Error::InvalidParams("niho2 needs h odd".into()));
            }
            let met = m == 2 * h + 1;
            (sum(&[pow2(h)?, pow2((3 * h + 1) / 2)?])? - 1, Some(Claim { uniformity: 2, precondition_met: met }))
        }
        Family::Dobbertin => {
            let h = need_h(&params)?;
            let met = m % 2 == 1 && m == 5 * h;
            let e = sum(&[pow2(4 * h)?, pow2(3 * h)?, pow2(2 * h)?, pow2(h)?])? - 1;
            (e, Some(Claim { uniformity: 2, precondition_met: met }))
        }
        Family::BrackenLeander => {
            let h = need_h(&params)?;
            let met = m == 4 * h && h % 2 == 1;
            (sum(&[pow2(2 * h)?, pow2(h)?, 1])?, Some(Claim { uniformity: 4, precondition_met: met }))
        }
        Family::Q23 => (sum(&[q * q, q, 1])?, None),
        Family::RawExponent => {
            let e = params.exponent.ok_or_else(|| Error::InvalidParams("raw_exponent needs an exponent".into()))?;
            (e, None)
        }
    };
    Ok(FunctionSpec { family, params, exponent, claim })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DdtSummary {
    pub delta: u64,
    /// entry value -> number of `(a, b)` pairs with `a != 0`
    pub histogram: BTreeMap<u64, u64>,
    pub field_order: u64,
}

pub const DDT_LIMIT: u64 = 1 << 16;

/// Difference distribution table of `x -> x^d` (with `0 -> 0`), folded to
/// its maximum and value histogram.
pub fn ddt(spec: &FunctionSpec, field: &Field) -> Result<DdtSummary> {
    let order = field.order();
    if order > DDT_LIMIT {
        return Err(Error::FieldTooLarge(order));
    }
    if spec.params.q.checked_pow(spec.params.m) != Some(order) {
        return Err(Error::FieldMismatch);
    }
    let d = spec.exponent % (order - 1);
    let table: Vec<u32> = (0..order as u32)
        .map(|x| if x == 0 { 0 } else if d == 0 { 1 } else { field.pow(x, d) })
        .collect();
    let rows: Vec<BTreeMap<u64, u64>> = (1..order as u32)
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0u32; order as usize];
            for x in 0..order as u32 {
                let y = field.add(x, a);
                counts[field.sub(table[y as usize], table[x as usize]) as usize] += 1;
            }
            debug_assert_eq!(counts.iter().map(|&c| c as u64).sum::<u64>(), order);
            let mut hist = BTreeMap::new();
            for c in counts {
                *hist.entry(c as u64).or_insert(0) += 1;
            }
            hist
        })
        .collect();
    let mut histogram = BTreeMap::new();
    for row in rows {
        for (v, c) in row {
            *histogram.entry(v).or_insert(0) += c;
        }
    }
    let delta = *histogram.keys().next_back().unwrap_or(&0);
    Ok(DdtSummary { delta, histogram, field_order: order })
}

pub fn differential_uniformity(spec: &FunctionSpec, field: &Field) -> Result<u64> {
    ddt(spec, field).map(|s| s.delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u64, m: u32, h: u32) -> Params {
        Params { q, m, h: Some(h), exponent: None }
    }

    fn delta(family: Family, q: u64, m: u32, h: u32) -> u64 {
        let spec = resolve(family, params(q, m, h)).unwrap();
        let p = crate::arith::prime_factors(q)[0] as u32;
        let s = (q as f64).log(p as f64).round() as u32;
        let field = Field::with_default_poly(p, s * m).unwrap();
        differential_uniformity(&spec, &field).unwrap()
    }

    #[test]
    fn resolved_exponents() {
        let k = resolve(Family::Kasami, params(2, 9, 2)).unwrap();
        assert_eq!(k.exponent, 13);
        assert!(k.claim.unwrap().precondition_met);
        let g = resolve(Family::Gold, params(2, 5, 1)).unwrap();
        assert_eq!((g.exponent, g.claim.unwrap()), (3, Claim { uniformity: 2, precondition_met: true }));
        let bl = resolve(Family::BrackenLeander, params(2, 4, 1)).unwrap();
        assert_eq!((bl.exponent, bl.claim.unwrap()), (7, Claim { uniformity: 4, precondition_met: true }));
        assert_eq!(resolve(Family::Q23, params(4, 6, 3)).unwrap().exponent, 21);
        assert!(resolve(Family::Niho1, params(2, 7, 3)).is_err());
        assert!(resolve(Family::Kasami, params(3, 5, 1)).is_err());
    }

    #[test]
    fn small_ddts() {
        assert_eq!(delta(Family::Gold, 2, 5, 1), 2);
        assert_eq!(delta(Family::BrackenLeander, 2, 4, 1), 4);
        assert_eq!(delta(Family::Inverse, 2, 5, 1), 2);
        assert_eq!(delta(Family::Inverse, 2, 6, 1), 4);
        // planar Gold over GF(3^3)
        assert_eq!(delta(Family::Gold, 3, 3, 1), 1);
    }

    #[test]
    fn linear_function_rows() {
        let field = Field::with_default_poly(2, 4).unwrap();
        let spec = resolve(Family::RawExponent, Params { q: 2, m: 4, h: None, exponent: Some(1) }).unwrap();
        let s = ddt(&spec, &field).unwrap();
        assert_eq!(s.delta, 16);
        // one entry of 16 per row, the rest zero
        assert_eq!(s.histogram, BTreeMap::from([(0, 15 * 15), (16, 15)]));
    }

    #[test]
    fn binary_entries_are_even_and_rows_sum_to_order() {
        let field = Field::with_default_poly(2, 6).unwrap();
        for d in [3u64, 5, 7, 13, 62] {
            let spec = resolve(Family::RawExponent, Params { q: 2, m: 6, h: None, exponent: Some(d) }).unwrap();
            let s = ddt(&spec, &field).unwrap();
            assert!(s.histogram.keys().all(|v| v % 2 == 0));
            let total: u64 = s.histogram.iter().map(|(v, c)| v * c).sum();
            assert_eq!(total, 63 * 64);
        }
    }

    #[test]
    fn too_large() {
        let field = Field::with_default_poly(2, 17).unwrap();
        let spec = resolve(Family::Gold, params(2, 17, 1)).unwrap();
        assert_eq!(ddt(&spec, &field), Err(Error::FieldTooLarge(1 << 17)));
    }
}
