//! Closed-form predictors for spans, minimal polynomials and distance bounds.
//!
//! Every profile is strict about its range: parameters outside the stated
//! conditions return `ConditionUnmet` instead of an extrapolated formula.
//! Formulas are encoded exactly as printed, so disagreements with the
//! empirical pipeline show up when the two are compared.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith::{gcd, gcd_u128, not_divisible};
use crate::cyclotomic::{coset_of, coset_size, minimal_poly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::tower::Tower;

/// `N_q(x)`: 0 if `q | x`, else 1.
pub fn indicator_nq(q: u64, x: u64) -> u64 {
    assert!(q >= 2, "indicator_nq needs q >= 2");
    not_divisible(q, x)
}

/// Number of odd `ε_a^(t)` over odd `a ≤ 2^t - 1`, by the closed formula.
pub fn count_nt(t: u32) -> u64 {
    assert!((1..63).contains(&t), "count_nt needs 1 <= t < 63");
    if t == 1 {
        return 1;
    }
    let two_t = 1i128 << t;
    let sign = if (t - 1) % 2 == 0 { 1 } else { -1 };
    ((two_t + sign) / 3) as u64
}

/// `ε_a^(t)` and `κ_a^(t)` for every odd `a ≤ T = 2^t - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonTable {
    pub t: u32,
    pub big_t: u64,
    /// odd a -> (ε, κ)
    pub entries: BTreeMap<u64, (u32, u32)>,
}

impl EpsilonTable {
    pub fn new(t: u32) -> EpsilonTable {
        assert!((1..=24).contains(&t), "epsilon table needs 1 <= t <= 24");
        let big_t = (1u64 << t) - 1;
        let entries = (1..=big_t)
            .step_by(2)
            .map(|a| {
                let e = epsilon(a, big_t);
                (a, (e, e % 2))
            })
            .collect();
        EpsilonTable { t, big_t, entries }
    }

    pub fn epsilon(&self, a: u64) -> Option<u32> {
        self.entries.get(&a).map(|e| e.0)
    }

    pub fn kappa(&self, a: u64) -> Option<u32> {
        self.entries.get(&a).map(|e| e.1)
    }

    /// Brute-force count of odd ε.
    pub fn odd_count(&self) -> u64 {
        self.entries.values().filter(|e| e.1 == 1).count() as u64
    }
}

/// Number of k ≥ 0 with `a·2^k ≤ T`.
fn epsilon(a: u64, big_t: u64) -> u32 {
    let mut k = 0;
    let mut v = a;
    while v <= big_t {
        k += 1;
        v <<= 1;
    }
    k
}

fn kappa(a: u64, t: u32) -> u32 {
    epsilon(a, (1u64 << t) - 1) % 2
}

fn pow_u128(base: u64, exp: u32) -> Result<u128> {
    (base as u128)
        .checked_pow(exp)
        .ok_or_else(|| Error::InvalidParams(format!("{base}^{exp} overflows")))
}

/// `gcd(q^h+1, (q^m-1)/(q^g-1))` with `g = gcd(m,h)`, checked against
/// `gcd(q^{2h}-1, q^m-1) / gcd(q^h-1, q^m-1)`.
pub fn gcd_identity_tower(q: u64, m: u32, h: u32) -> Result<u128> {
    if q < 2 || m == 0 || h == 0 {
        return Err(Error::InvalidParams("need q >= 2 and m, h >= 1".into()));
    }
    let g = gcd(m as u64, h as u64) as u32;
    let qm = pow_u128(q, m)? - 1;
    let left = gcd_u128(pow_u128(q, h)? + 1, qm / (pow_u128(q, g)? - 1));
    let right = gcd_u128(pow_u128(q, 2 * h)? - 1, qm) / gcd_u128(pow_u128(q, h)? - 1, qm);
    if left != right {
        return Err(Error::InconsistentInput(format!(
            "gcd identity fails at (q,m,h)=({q},{m},{h}): {left} != {right}"
        )));
    }
    Ok(left)
}

/// `gcd(a^l+1, a^h-1)` by the three-case formula, checked against direct evaluation.
pub fn gcd_identity_plus_one(a: u64, l: u32, h: u32) -> Result<u128> {
    if a < 2 || h == 0 {
        return Err(Error::InvalidParams("need a >= 2 and h >= 1".into()));
    }
    let g = gcd(l as u64, h as u64) as u32;
    let ratio = h / g;
    let formula = if ratio % 2 == 1 {
        if a % 2 == 0 {
            1
        } else {
            2
        }
    } else {
        pow_u128(a, g)? + 1
    };
    let direct = gcd_u128(pow_u128(a, l)? + 1, pow_u128(a, h)? - 1);
    if formula != direct {
        return Err(Error::InconsistentInput(format!(
            "gcd(a^l+1, a^h-1) formula fails at (a,l,h)=({a},{l},{h}): {formula} != {direct}"
        )));
    }
    Ok(formula)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    /// The factor is `m_{α^{-exponent}}(x)`.
    pub exponent: u64,
    pub expected_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub lemma: String,
    pub condition: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanProfile {
    pub q: u64,
    pub m: u32,
    pub span: u64,
    pub factors: Vec<Factor>,
    pub x_minus_one: u32,
    pub applicability: Applicability,
}

/// A coset whose real size differs from the size the profile expects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeMismatch {
    pub exponent: u64,
    pub expected: u64,
    pub actual: u64,
}

impl SpanProfile {
    pub fn n(&self) -> u64 {
        self.q.pow(self.m) - 1
    }

    /// `(x-1)` multiplicity plus the expected factor degrees.
    pub fn declared_degree(&self) -> u64 {
        self.x_minus_one as u64 + self.factors.iter().map(|f| f.expected_size).sum::<u64>()
    }

    pub fn is_consistent(&self) -> bool {
        self.span == self.declared_degree()
    }

    pub fn size_mismatches(&self) -> Vec<SizeMismatch> {
        let n = self.n();
        self.factors
            .iter()
            .filter_map(|f| {
                let actual = coset_size(self.q, n, (n - f.exponent % n) % n) as u64;
                (actual != f.expected_size).then_some(SizeMismatch {
                    exponent: f.exponent,
                    expected: f.expected_size,
                    actual,
                })
            })
            .collect()
    }

    /// Exponents listed more than once up to coset membership.
    pub fn repeated_cosets(&self) -> Vec<u64> {
        let n = self.n();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for f in &self.factors {
            let l = crate::cyclotomic::leader(self.q, n, (n - f.exponent % n) % n);
            if !seen.insert(l) {
                out.push(f.exponent);
            }
        }
        out
    }

    /// The monic product `(x-1)^e Π m_{α^{-i}}(x)` in the tower's base field.
    pub fn generator(&self, tower: &Tower) -> Result<Poly> {
        if tower.q() != self.q || tower.m() != self.m {
            return Err(Error::FieldMismatch);
        }
        let f = tower.base();
        let n = tower.n();
        let mut acc = Poly::one();
        let x_minus_one = Poly::new(vec![f.neg(1), 1]);
        for _ in 0..self.x_minus_one {
            acc = acc.mul(f, &x_minus_one);
        }
        for fac in &self.factors {
            acc = acc.mul(f, &minimal_poly(tower, (n - fac.exponent % n) % n)?);
        }
        Ok(acc)
    }
}

fn applicability(lemma: &str, condition: impl Into<String>) -> Applicability {
    Applicability { lemma: lemma.into(), condition: condition.into() }
}

fn unmet(what: &str, m: u32, h: u32) -> Error {
    Error::ConditionUnmet(format!("{what} does not hold for (m,h)=({m},{h})"))
}

fn full(exps: impl IntoIterator<Item = u64>, size: u64) -> Vec<Factor> {
    exps.into_iter().map(|exponent| Factor { exponent, expected_size: size }).collect()
}

/// Gold exponent `2^h+1` over GF(2).
pub fn gold_profile(q: u64, m: u32, h: u32) -> Result<SpanProfile> {
    if q != 2 || h == 0 || h >= m {
        return Err(unmet("binary Gold setting", m, h));
    }
    let g = gcd(m as u64, h as u64);
    let e = (1u64 << h) + 1;
    if m % 2 == 1 && g == 1 {
        Ok(SpanProfile {
            q,
            m,
            span: m as u64 + 1,
            factors: full([e], m as u64),
            x_minus_one: 1,
            applicability: applicability("gold-apn", "m odd, gcd(m,h)=1"),
        })
    } else if m % 4 == 2 && g == 2 {
        Ok(SpanProfile {
            q,
            m,
            span: m as u64,
            factors: full([e], m as u64),
            x_minus_one: 0,
            applicability: applicability("gold-4-uniform", "m = 2 mod 4, gcd(m,h)=2"),
        })
    } else {
        Err(unmet("(m odd, gcd(m,h)=1) or (m = 2 mod 4, gcd(m,h)=2)", m, h))
    }
}

/// `m mod 4` with 0 read as 4.
fn residue4(m: u32) -> u32 {
    match m % 4 {
        0 => 4,
        r => r,
    }
}

/// The standing Kasami condition `1 ≤ h ≤ (m-r)/2`.
pub fn kasami_standing(m: u32, h: u32) -> bool {
    h >= 1 && m >= residue4(m) && 2 * h <= m - residue4(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KasamiRegime {
    /// `h ≤ (m-r)/4`.
    Low,
    /// `m ≥ 3h` and `4h > m-r`.
    Mid,
    /// `m < 3h` and `5h < 2m+3`.
    High,
    /// `2m+3 ≤ 5h`: no formula is known.
    Unsolved,
}

impl KasamiRegime {
    pub fn name(self) -> &'static str {
        match self {
            KasamiRegime::Low => "low",
            KasamiRegime::Mid => "mid",
            KasamiRegime::High => "high",
            KasamiRegime::Unsolved => "unsolved",
        }
    }
}

/// Regime of `(m,h)` under the standing condition, or `None` outside it.
pub fn kasami_regime(m: u32, h: u32) -> Option<KasamiRegime> {
    if !kasami_standing(m, h) {
        return None;
    }
    let r = residue4(m);
    Some(if 4 * h <= m - r {
        KasamiRegime::Low
    } else if 3 * h <= m {
        KasamiRegime::Mid
    } else if 5 * h < 2 * m + 3 {
        KasamiRegime::High
    } else {
        KasamiRegime::Unsolved
    })
}

/// Kasami exponent `2^{2h} - 2^h + 1`.
pub fn kasami_exponent(h: u32) -> u64 {
    (1u64 << (2 * h)) - (1u64 << h) + 1
}

/// Odd `2j+1` in `[3, 2^h-1]` with `κ^(h) = 1`.
fn kappa_odds(h: u32) -> Vec<u64> {
    (3..(1u64 << h)).step_by(2).filter(|&a| kappa(a, h) == 1).collect()
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Expansion(format!("{num}/{den} is not an integer")));
    }
    Ok(num / den)
}

fn to_span(v: i64) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Expansion(format!("negative span {v}")))
}

/// Kasami profile for `h ≤ (m-r)/4`, with the `(x-1)^{N_2(m)}` correction.
pub fn kasami_profile_low(m: u32, h: u32) -> Result<SpanProfile> {
    if kasami_regime(m, h) != Some(KasamiRegime::Low) {
        return Err(unmet("1 <= h <= (m-r)/4", m, h));
    }
    let (mi, p4) = (m as i64, 1i64 << (h + 2));
    let n2 = indicator_nq(2, m as u64) as i64;
    let span = if h % 2 == 0 {
        exact_div(mi * (p4 - 1) + 3 * n2, 3)?
    } else {
        exact_div(mi * (p4 - 5) + 3 * n2, 3)?
    };
    let top = 1u64 << (m - h);
    let start = if h % 2 == 0 { 0 } else { 1 };
    let mut exps: Vec<u64> = (start..(1u64 << h)).map(|i| i + top).collect();
    exps.extend(kappa_odds(h));
    Ok(SpanProfile {
        q: 2,
        m,
        span: to_span(span)?,
        factors: full(exps, m as u64),
        x_minus_one: n2 as u32,
        applicability: applicability("kasami-low", "1 <= h <= (m-r)/4, r = m mod 4 in {1,2,3,4}"),
    })
}

/// Expected size of `C_j` for `j ∈ B` per the coset-size lemma.
fn expected_b_size(m: u32, h: u32, j: u64) -> u64 {
    let m64 = m as u64;
    let g6 = gcd(6, m64);
    let top = 1u64 << (m - h);
    let half = (m % 2 == 0 && m / 2 >= h).then(|| (1u64 << (m / 2 - h)) + top);
    let third = (m % 3 == 0 && m / 3 >= h).then(|| (1u64 << (m / 3 - h)) + (1u64 << (2 * m / 3 - h)) + top);
    let half_applies = match g6 {
        2 => 4 * h >= m + 2,
        6 => 4 * h >= m + 2,
        _ => false,
    };
    let third_applies = matches!(g6, 3 | 6) && 6 * h >= 2 * m + 3;
    if half_applies && Some(j) == half {
        m64 / 2
    } else if third_applies && Some(j) == third {
        m64 / 3
    } else {
        m64
    }
}

/// The Kasami exponent bookkeeping sets.
#[derive(Clone, Debug, Serialize)]
pub struct KasamiIndexSets {
    pub m: u32,
    pub h: u32,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub b_star: Vec<u64>,
    /// Materialized in the mid regime (`4h > m-r`, `m ≥ 3h`).
    pub b2_prime: Option<Vec<u64>>,
    /// Materialized when `4h > m-r` and `m < 3h`.
    pub b2_double_prime: Option<Vec<u64>>,
    /// `u_(i)` for `i ∈ A`.
    pub u: Vec<u32>,
    /// `v_(i)` for `i ∈ A`, undefined at 0.
    pub v: Vec<Option<u32>>,
}

fn u_of(i: u64) -> u32 {
    64 - i.leading_zeros()
}

fn v_of(i: u64) -> Option<u32> {
    (i != 0).then(|| i.trailing_zeros())
}

pub fn build_kasami_sets(m: u32, h: u32) -> Result<KasamiIndexSets> {
    if !kasami_standing(m, h) {
        return Err(unmet("1 <= h <= (m-r)/2", m, h));
    }
    let (mi, hi) = (m as i64, h as i64);
    let top = 1u64 << (m - h);
    let a: Vec<u64> = (0..(1u64 << h)).collect();
    let b: Vec<u64> = a.iter().map(|i| i + top).collect();
    let u: Vec<u32> = a.iter().map(|&i| u_of(i)).collect();
    let v: Vec<Option<u32>> = a.iter().map(|&i| v_of(i)).collect();
    let b_star = a
        .iter()
        .filter(|&&i| match v_of(i) {
            Some(vi) => vi as i64 >= mi - 2 * hi + 1 && (u_of(i) as i64) <= 3 * hi - mi - 2,
            None => false,
        })
        .map(|i| i + top)
        .collect();
    let beyond_low = kasami_regime(m, h) != Some(KasamiRegime::Low);
    let b2_prime = (beyond_low && m >= 3 * h).then(|| {
        let excluded = (m % 2 == 0 && 4 * h >= m).then(|| (1u64 << (2 * h - m / 2)) + top);
        (1..=(4 * hi - mi - 1).max(0))
            .map(|i| (1u64 << (mi - 3 * hi + i)) + top)
            .filter(|&j| Some(j) != excluded)
            .collect()
    });
    let b2_double_prime = (beyond_low && m < 3 * h).then(|| {
        let excluded = (m % 2 == 0).then(|| (1u64 << (m / 2 - h)) + top);
        (0..=(m - 2 * h))
            .map(|i| (1u64 << i) + top)
            .filter(|&j| Some(j) != excluded)
            .collect()
    });
    Ok(KasamiIndexSets { m, h, a, b, b_star, b2_prime, b2_double_prime, u, v })
}

/// One claim checked by direct computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl KasamiIndexSets {
    pub fn b2(&self) -> Vec<u64> {
        self.b.iter().copied().filter(|j| j.count_ones() == 2).collect()
    }

    /// Cardinality identities and basic containments.
    pub fn checks(&self) -> Vec<Check> {
        let (m, h) = (self.m as i64, self.h as i64);
        let n2 = indicator_nq(2, self.m as u64 + 1) as i64;
        let mut out = vec![
            Check::new("|A| = |B| = 2^h", self.a.len() == 1 << self.h && self.b.len() == 1 << self.h, ""),
            Check::new(
                "u > v",
                self.u.iter().zip(&self.v).all(|(u, v)| v.map_or(true, |v| *u > v)),
                "",
            ),
            Check::new("B* within B", self.b_star.iter().all(|j| self.b.contains(j)), ""),
        ];
        if 3 * h <= m + 1 {
            out.push(Check::new("B* empty when 3h <= m+1", self.b_star.is_empty(), format!("{:?}", self.b_star)));
        }
        if let Some(s) = &self.b2_prime {
            let want = 4 * h - m - 1 - n2;
            out.push(Check::new(
                "|B2'| = 4h-m-1-N_2(m+1)",
                s.len() as i64 == want,
                format!("direct {} formula {}", s.len(), want),
            ));
        }
        if let Some(s) = &self.b2_double_prime {
            let want = m - 2 * h - n2;
            out.push(Check::new(
                "|B2''| = m-2h-N_2(m+1)",
                s.len() as i64 == want,
                format!("direct {} formula {}", s.len(), want),
            ));
        }
        out
    }
}

/// Shared span and factor assembly for the mid and high regimes.
fn kasami_split_profile(m: u32, h: u32, removed: &[u64], lemma: &str, condition: &str, span: i64) -> Result<SpanProfile> {
    let top = 1u64 << (m - h);
    let sets = build_kasami_sets(m, h)?;
    let mut exps: Vec<u64> = sets
        .b
        .iter()
        .copied()
        .filter(|j| !removed.contains(j) && (h % 2 == 0 || *j != top))
        .collect();
    exps.extend(kappa_odds(h));
    let factors = exps
        .into_iter()
        .map(|e| {
            let expected_size = if e >= top { expected_b_size(m, h, e) } else { m as u64 };
            Factor { exponent: e, expected_size }
        })
        .collect();
    Ok(SpanProfile {
        q: 2,
        m,
        span: to_span(span)?,
        factors,
        x_minus_one: indicator_nq(2, m as u64) as u32,
        applicability: applicability(lemma, condition),
    })
}

/// Kasami profile for `m ≥ 3h > 3(m-r)/4`.
pub fn kasami_profile_mid(m: u32, h: u32) -> Result<SpanProfile> {
    if kasami_regime(m, h) != Some(KasamiRegime::Mid) {
        return Err(unmet("m >= 3h > 3(m-r)/4", m, h));
    }
    let (mi, hi, p4) = (m as i64, h as i64, 1i64 << (h + 2));
    let g_odd = gcd(6, m as u64) % 2 == 1;
    let span = match (g_odd, h % 2 == 1) {
        (true, true) => exact_div(mi * (p4 - 2), 3)? - (4 * hi - mi) * mi + 1,
        (true, false) => exact_div(mi * (p4 + 2), 3)? - (4 * hi - mi) * mi + 1,
        (false, true) => exact_div(mi * (p4 + 1), 3)? - (4 * hi - mi) * mi - mi / 2,
        (false, false) if m != 3 * h => exact_div(mi * (p4 + 5), 3)? - (4 * hi - mi) * mi - mi / 2,
        (false, false) => exact_div(3 * hi * (p4 + 5), 3)? - 3 * hi * hi,
    };
    let sets = build_kasami_sets(m, h)?;
    let removed = sets.b2_prime.unwrap_or_default();
    kasami_split_profile(m, h, &removed, "kasami-mid", "m >= 3h > 3(m-r)/4", span)
}

/// Kasami profile for `m < 3h`, `5h < 2m+3`.
pub fn kasami_profile_high(m: u32, h: u32) -> Result<SpanProfile> {
    if kasami_regime(m, h) != Some(KasamiRegime::High) {
        return Err(unmet("m < 3h and 5h < 2m+3", m, h));
    }
    let (mi, hi, p4) = (m as i64, h as i64, 1i64 << (h + 2));
    let odd_h = h % 2 == 1;
    let c = if odd_h { 8 } else { 4 };
    let c2 = if odd_h { 5 } else { 1 };
    let span = match gcd(6, m as u64) {
        1 => exact_div(mi * (p4 - c), 3)? - (mi - 2 * hi) * mi + 1,
        2 => exact_div(mi * (p4 - c2), 3)? - exact_div(3 * mi - 4 * hi, 2)? * mi,
        3 => exact_div(mi * (p4 - c), 3)? - exact_div(4 * mi - 6 * hi, 3)? * mi + 1,
        _ => exact_div(mi * (p4 - c2), 3)? - exact_div(13 * mi - 12 * hi, 6)? * mi,
    };
    let sets = build_kasami_sets(m, h)?;
    let removed = sets.b2_double_prime.unwrap_or_default();
    kasami_split_profile(m, h, &removed, "kasami-high", "m < 3h, 5h < 2m+3", span)
}

/// Dispatch on the regime of `(m,h)`.
pub fn kasami_profile(m: u32, h: u32) -> Result<SpanProfile> {
    match kasami_regime(m, h) {
        Some(KasamiRegime::Low) => kasami_profile_low(m, h),
        Some(KasamiRegime::Mid) => kasami_profile_mid(m, h),
        Some(KasamiRegime::High) => kasami_profile_high(m, h),
        Some(KasamiRegime::Unsolved) => Err(unmet("a solved regime (5h < 2m+3)", m, h)),
        None => Err(unmet("1 <= h <= (m-r)/2", m, h)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceBounds {
    pub lower: u64,
    pub upper: Option<u64>,
}

/// The regime's stated lower bound on `d`.
pub fn kasami_distance_bounds(m: u32, h: u32, regime: KasamiRegime) -> Result<DistanceBounds> {
    if kasami_regime(m, h) != Some(regime) {
        return Err(unmet(&format!("the {} regime", regime.name()), m, h));
    }
    let (h_even, m_even) = (h % 2 == 0, m % 2 == 0);
    let lower = match regime {
        KasamiRegime::Low => (1u64 << h) + if !h_even { 0 } else if m_even { 1 } else { 2 },
        KasamiRegime::Mid => (1u64 << (m - 3 * h + 1)) + if !h_even { 0 } else if m_even { 1 } else { 2 },
        KasamiRegime::High => (1u64 << h) - (1u64 << (m - 2 * h)),
        KasamiRegime::Unsolved => return Err(unmet("a solved regime (5h < 2m+3)", m, h)),
    };
    Ok(DistanceBounds { lower, upper: None })
}

/// Bracken–Leander exponent `2^{2h}+2^h+1` with `m = 4h`, `h` odd.
pub fn bracken_leander_profile(m: u32) -> Result<SpanProfile> {
    if m % 4 != 0 || (m / 4) % 2 == 0 {
        return Err(Error::ConditionUnmet(format!("m = 4h with h odd fails for m = {m}")));
    }
    let h = m / 4;
    let m64 = m as u64;
    Ok(SpanProfile {
        q: 2,
        m,
        span: 5 * m64 / 2,
        factors: vec![
            Factor { exponent: 1, expected_size: m64 },
            Factor { exponent: 1 + (1 << (2 * h)), expected_size: m64 / 2 },
            Factor { exponent: 1 + (1 << h) + (1 << (2 * h)), expected_size: m64 },
        ],
        x_minus_one: 0,
        applicability: applicability("bracken-leander", "m = 4h, h odd"),
    })
}

/// The stated distance of the Bracken–Leander codes.
pub const BRACKEN_LEANDER_DISTANCE: u64 = 3;

/// A stated window `lower ≤ d ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceWindow {
    pub lower: u64,
    pub upper: u64,
    pub case: String,
}

impl DistanceWindow {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, d: u64) -> bool {
        (self.lower..=self.upper).contains(&d)
    }
}

/// Whether `x` has a divisor `η` with `t < η < x`.
pub fn has_proper_factor_above(x: u64, t: u64) -> bool {
    (t + 1..x).any(|eta| x % eta == 0)
}

/// Range on `m` for the `x^{q^2+q+1}` family: `m ≥ 7` for odd `m`, `m ≥ 6` for even.
pub fn q23_range(m: u32) -> bool {
    if m % 2 == 1 {
        m >= 7
    } else {
        m >= 6
    }
}

/// Profile and distance window for `f(x) = x^{q^2+q+1}` over GF(q), `q = p^s`.
pub fn q23_profile(p: u32, s: u32, m: u32) -> Result<(SpanProfile, DistanceWindow)> {
    if !crate::arith::is_prime(p as u64) || s == 0 {
        return Err(Error::InvalidParams(format!("q = {p}^{s} is not a prime power")));
    }
    if !q23_range(m) {
        return Err(Error::ConditionUnmet(format!(
            "m >= 7 (m odd) or m >= 6 (m even) fails for m = {m}"
        )));
    }
    let q = (p as u64)
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidParams("q overflows".into()))?;
    let np = indicator_nq(p as u64, m as u64) as u32;
    let m64 = m as u64;
    let all = [1, 1 + q, 1 + q * q, 1 + q + q * q];
    let exps: Vec<u64> = match p {
        2 => all.iter().copied().filter(|&e| e != 1 + q).collect(),
        3 => all.iter().copied().filter(|&e| e != 1).collect(),
        _ => all.to_vec(),
    };
    let span = if p == 2 || p == 3 { 3 * m64 } else { 4 * m64 } + np as u64;
    let profile = SpanProfile {
        q,
        m,
        span,
        factors: full(exps, m64),
        x_minus_one: np,
        applicability: applicability("q23", "q = p^s, m >= 7 (m odd) or m >= 6 (m even)"),
    };
    let window = q23_window(p, s, m, q);
    Ok((profile, window))
}

fn q23_window(p: u32, s: u32, m: u32, q: u64) -> DistanceWindow {
    let np = indicator_nq(p as u64, m as u64);
    let m_even = m % 2 == 0;
    let (upper, case) = match p {
        2 if s % 2 == 1 && m_even => (3, "p=2, s odd, m even"),
        2 if s % 4 == 2 && m_even => (5, "p=2, s = 2 mod 4, m even"),
        2 if s % 4 == 0 && m_even => (4, "p=2, s = 0 mod 4, m even"),
        2 if s % 2 == 0 => (5, "p=2, s even, m odd"),
        2 if has_proper_factor_above(q - 1, 4) => (5, "p=2, s odd, m odd, proper factor > 4"),
        2 => (8, "p=2, s odd, m odd, no proper factor > 4"),
        3 if np == 0 && has_proper_factor_above(q - 1, 3) => (3, "p=3, N_p(m)=0, proper factor > 3"),
        3 if np == 0 => (6, "p=3, N_p(m)=0, no proper factor > 3"),
        3 if has_proper_factor_above(q - 1, 3) => (4, "p=3, N_p(m)=1, proper factor > 3"),
        3 => (8, "p=3, N_p(m)=1, no proper factor > 3"),
        5 if np == 0 => (4, "p=5, N_p(m)=0"),
        5 if has_proper_factor_above(q - 1, 4) => (5, "p=5, N_p(m)=1, proper factor > 4"),
        5 => (4, "p=5, N_p(m)=1, no proper factor > 4"),
        _ if np == 0 => (4, "p>5, N_p(m)=0"),
        _ => (5, "p>5, N_p(m)=1"),
    };
    DistanceWindow { lower: 3, upper, case: case.into() }
}

/// Ternary `f(x) = x^{(3^3+1)/2}` with `m` even, `gcd(3,m)=1`, `m ≥ 7`.
pub fn ternary_h3_profile(m: u32) -> Result<(SpanProfile, DistanceWindow)> {
    if m < 7 || m % 2 == 1 || m % 3 == 0 {
        return Err(Error::ConditionUnmet(format!(
            "m even, gcd(3,m)=1, m >= 7 fails for m = {m}"
        )));
    }
    let m64 = m as u64;
    let profile = SpanProfile {
        q: 3,
        m,
        span: 7 * m64 + 1,
        factors: full([1, 2, 5, 10, 11, 13, 14], m64),
        x_minus_one: 1,
        applicability: applicability("ternary-h3", "q=3, m even, gcd(3,m)=1, m >= 7"),
    };
    Ok((profile, DistanceWindow { lower: 5, upper: 8, case: "ternary h=3, m even".into() }))
}

/// `1 + x^{n/3} + x^{2n/3}`, a weight-3 word when `3 | n`.
pub fn cube_root_witness(n: u64) -> Option<Poly> {
    if n % 3 != 0 {
        return None;
    }
    let mut c = vec![0u32; (2 * n / 3 + 1) as usize];
    c[0] = 1;
    c[(n / 3) as usize] = 1;
    c[(2 * n / 3) as usize] = 1;
    Some(Poly::new(c))
}

/// `Σ_{i<8} (-1)^{i+1} x^{i·n/8}` over GF(3), a weight-8 word when `8 | n`.
pub fn eighth_root_witness(field: &Field, n: u64) -> Option<Poly> {
    if n % 8 != 0 || field.characteristic() != 3 || field.degree() != 1 {
        return None;
    }
    let step = (n / 8) as usize;
    let mut c = vec![0u32; 7 * step + 1];
    for i in 0..8 {
        c[i * step] = if i % 2 == 0 { 2 } else { 1 };
    }
    Some(Poly::new(c))
}

/// Direct check of the coset lemmas for one `(m,h)`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub m: u32,
    pub h: u32,
    pub checks: Vec<Check>,
}

impl CosetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Each coset lemma whose range contains `(m,h)` is checked against the actual cosets.
pub fn coset_structure_checks(m: u32, h: u32) -> Result<CosetReport> {
    let sets = build_kasami_sets(m, h)?;
    let regime = kasami_regime(m, h).expect("standing condition checked above");
    let n = (1u64 << m) - 1;
    let top = 1u64 << (m - h);
    let leader = |j: u64| crate::cyclotomic::leader(2, n, j % n);
    let odd_a: Vec<u64> = sets.a.iter().copied().filter(|j| j % 2 == 1).collect();
    let mut checks = Vec::new();

    if regime == KasamiRegime::Low {
        let sizes_ok = sets.b.iter().all(|&j| coset_size(2, n, j) == m as usize);
        let leaders: BTreeSet<u64> = sets.b.iter().map(|&j| leader(j)).collect();
        checks.push(Check::new("|C_j| = m for j in B", sizes_ok, ""));
        checks.push(Check::new("cosets of B pairwise disjoint", leaders.len() == sets.b.len(), ""));
    }

    // m+2 ≤ 3h under the standing condition; the trivial pair (0,1) is set aside.
    if 3 * h >= m + 2 {
        let bad: Vec<(u64, u64)> = sets
            .a
            .iter()
            .flat_map(|&i| odd_a.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| (i, j) != (0, 1))
            .filter(|&(i, j)| leader(i + top) == leader(j) && !sets.b_star.contains(&(i + top)))
            .collect();
        checks.push(Check::new(
            "C_{i+2^{m-h}} meets C_j only for B*",
            bad.is_empty(),
            format!("violations {:?}", bad),
        ));
    }

    if 5 * h < 2 * m + 3 {
        let bad: Vec<(u64, u64)> = sets
            .a
            .iter()
            .flat_map(|&i| odd_a.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| (leader(i + top) == leader(j)) != ((i, j) == (0, 1)))
            .collect();
        checks.push(Check::new(
            "C_{i+2^{m-h}} meets odd C_j iff (i,j) = (0,1)",
            bad.is_empty(),
            format!("violations {:?}", bad),
        ));
    }

    if regime != KasamiRegime::Low {
        let bad: Vec<(u64, u64, usize)> = sets
            .b
            .iter()
            .map(|&j| (j, expected_b_size(m, h, j), coset_size(2, n, j)))
            .filter(|&(_, e, a)| e != a as u64)
            .collect();
        checks.push(Check::new("coset sizes over B", bad.is_empty(), format!("(j, expected, actual) {:?}", bad)));

        let b_set: BTreeSet<u64> = sets.b.iter().copied().collect();
        let c_prime = |j: u64| -> Vec<u64> {
            coset_of(2, n, j).map(|c| c.members.into_iter().filter(|x| b_set.contains(x)).collect()).unwrap_or_default()
        };
        let b2 = sets.b2();
        let outside_b2: Vec<u64> = sets.b.iter().copied().filter(|j| !b2.contains(j)).collect();
        let ls: BTreeSet<u64> = outside_b2.iter().map(|&j| leader(j)).collect();
        checks.push(Check::new("B \\ B2 pairwise disjoint", ls.len() == outside_b2.len(), ""));

        let mut weight_ok = true;
        let mut size_ok = true;
        let mut iff_bad = Vec::new();
        let marked = if 3 * h <= m { sets.b2_prime.clone() } else { sets.b2_double_prime.clone() }.unwrap_or_default();
        for &j in &sets.b {
            let cp = c_prime(j);
            if cp.len() > 1 {
                weight_ok &= j.count_ones() == 2;
                size_ok &= cp.len() == 2;
            }
            if (cp.len() == 2) != marked.contains(&j) {
                iff_bad.push(j);
            }
        }
        checks.push(Check::new("|C'_j| > 1 implies wt(j) = 2", weight_ok, ""));
        checks.push(Check::new("|C'_j| > 1 implies |C'_j| = 2", size_ok, ""));
        let which = if 3 * h <= m { "B2'" } else { "B2''" };
        checks.push(Check::new(
            &format!("|C'_j| = 2 iff j in {which}"),
            iff_bad.is_empty(),
            format!("violations {:?}", iff_bad),
        ));
    }

    Ok(CosetReport { m, h, checks })
}
