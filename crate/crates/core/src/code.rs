//! Cyclic codes of length `n = q^m - 1` over GF(q): construction from a
//! sequence, duals, the BCH bound and minimum-distance search.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::partition;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::sequence::{PeriodicSequence, SpanResult};
use crate::tower::Tower;

#[derive(Clone, Debug)]
pub struct CyclicCode {
    tower: Arc<Tower>,
    g: Poly,
    k: usize,
    /// Coset leaders `j` with `g(α^j) = 0`.
    defining_set: Vec<u64>,
    /// Set when built from the all-zero sequence.
    pub zero_sequence: bool,
}

impl CyclicCode {
    /// The code generated by `g`, which must be monic and divide `x^n - 1`.
    pub fn new(tower: Arc<Tower>, g: Poly) -> Result<CyclicCode> {
        let base = tower.base().clone();
        let n = tower.n() as usize;
        if g.is_zero() || g.lead() != 1 {
            return Err(Error::NotMonic);
        }
        let deg = g.degree().unwrap();
        if deg > n || !Poly::x_n_minus_one(&base, n).rem(&base, &g)?.is_zero() {
            return Err(Error::InconsistentInput("generator does not divide x^n - 1".into()));
        }
        let ext = tower.ext();
        let lifted: Vec<u32> = g.coeffs().iter().map(|&c| tower.embed(c)).collect();
        let part = partition(tower.q(), n as u64)?;
        let mut defining_set = Vec::new();
        let mut covered = 0usize;
        for l in part.leaders() {
            let x = ext.exp(l);
            let v = lifted.iter().rev().fold(0u32, |acc, &c| ext.add(ext.mul(acc, x), c));
            if v == 0 {
                defining_set.push(l);
                covered += part.coset(l).size();
            }
        }
        if covered != deg {
            return Err(Error::InconsistentInput("defining set does not match deg g".into()));
        }
        Ok(CyclicCode { tower, g, k: n - deg, defining_set, zero_sequence: false })
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn field(&self) -> &Field {
        self.tower.base()
    }

    pub fn n(&self) -> usize {
        self.tower.n() as usize
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    pub fn defining_set_leaders(&self) -> &[u64] {
        &self.defining_set
    }

    /// Every exponent of the defining set, sorted.
    pub fn defining_set(&self) -> Vec<u64> {
        let part = partition(self.q(), self.n() as u64).expect("valid code");
        let mut out: Vec<u64> = self
            .defining_set
            .iter()
            .flat_map(|&l| part.coset(l).members.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Check polynomial `h = (x^n - 1) / g`.
    pub fn check_poly(&self) -> Poly {
        let f = self.field();
        Poly::x_n_minus_one(f, self.n()).divrem(f, &self.g).unwrap().0
    }

    /// Whether `word` (as a polynomial of degree < n) is a codeword.
    pub fn contains(&self, word: &Poly) -> bool {
        if word.degree().is_some_and(|d| d >= self.n()) {
            return false;
        }
        word.rem(self.field(), &self.g).unwrap().is_zero()
    }
}

/// `g = (x^n - 1) / gcd(S(x), x^n - 1)` with `S(x) = Σ s_i x^i`.
pub fn code_from_sequence(tower: Arc<Tower>, seq: &PeriodicSequence) -> Result<CyclicCode> {
    let n = tower.n();
    if seq.period != n || seq.values.len() as u64 != n || seq.q != tower.q() {
        return Err(Error::InconsistentInput("sequence does not match the tower".into()));
    }
    let f = tower.base().clone();
    let big = Poly::x_n_minus_one(&f, n as usize);
    let s = Poly::new(seq.values.clone());
    let d = if s.is_zero() { big.clone() } else { s.gcd(&f, &big) };
    let g = big.divrem(&f, &d)?.0.monic(&f);
    let mut code = CyclicCode::new(tower, g)?;
    code.zero_sequence = s.is_zero();
    Ok(code)
}

pub fn agree_with_minimal_poly(code: &CyclicCode, span: &SpanResult) -> bool {
    code.generator() == &span.monic_form
}

/// The dual code, generated by the monic reciprocal of the check polynomial.
pub fn dual(code: &CyclicCode) -> CyclicCode {
    let f = code.field();
    let g = code.check_poly().reciprocal().monic(f);
    CyclicCode::new(code.tower.clone(), g).expect("reciprocal of h divides x^n - 1")
}

/// Largest `δ` with `δ - 1` cyclically consecutive exponents in the defining
/// set. The zero code (every exponent) reports `n + 1`.
pub fn bch_bound(code: &CyclicCode) -> u64 {
    let n = code.n();
    let z = code.defining_set();
    if z.len() == n {
        return n as u64 + 1;
    }
    let mut member = vec![false; n];
    for &j in &z {
        member[j as usize] = true;
    }
    // start right after a gap so circular runs are counted once
    let gap = member.iter().position(|&b| !b).unwrap();
    let mut best = 0usize;
    let mut run = 0usize;
    for step in 1..=n {
        if member[(gap + step) % n] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best as u64 + 1
}

/// Counts of codewords by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight with a codeword, `None` for the zero code.
    pub fn min_distance(&self) -> Option<u64> {
        self.counts.iter().skip(1).position(|c| !c.is_zero()).map(|i| i as u64 + 1)
    }
}

/// Krawtchouk values `K_j(i)` for `j = 0 ..= j_max`.
fn krawtchouk_column(n: u64, q: u64, i: u64, j_max: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(j_max as usize + 1);
    let qm1 = BigInt::from(q - 1);
    out.push(BigInt::one());
    if j_max == 0 {
        return out;
    }
    // K_1(i) = (q-1)(n-i) - i
    out.push(&qm1 * BigInt::from(n - i) - BigInt::from(i));
    for j in 1..j_max {
        let a = BigInt::from(j) + &qm1 * BigInt::from(n - j) - BigInt::from(q * i);
        let next = (a * &out[j as usize] - &qm1 * BigInt::from(n - j + 1) * &out[j as usize - 1])
            / BigInt::from(j + 1);
        out.push(next);
    }
    out
}

fn check_distribution(wd: &WeightDistribution, n: u64, k: u64, q: u64) -> Result<BigUint> {
    if wd.counts.len() as u64 != n + 1 {
        return Err(Error::InconsistentInput(format!(
            "distribution has {} entries for length {n}",
            wd.counts.len()
        )));
    }
    let size = BigUint::from(q).pow(k as u32);
    if wd.total() != size || !wd.counts[0].is_one() {
        return Err(Error::InconsistentInput("distribution does not describe a linear code".into()));
    }
    Ok(size)
}

/// Dual weight distribution by the MacWilliams identity.
pub fn macwilliams(wd: &WeightDistribution, n: u64, k: u64, q: u64) -> Result<WeightDistribution> {
    let size = BigInt::from(check_distribution(wd, n, k, q)?);
    let support: Vec<(u64, BigInt)> = wd
        .counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, BigInt::from(c.clone())))
        .collect();
    let columns: Vec<Vec<BigInt>> = support.iter().map(|(i, _)| krawtchouk_column(n, q, *i, n)).collect();
    let mut counts = Vec::with_capacity(n as usize + 1);
    for j in 0..=n as usize {
        let sum: BigInt = support.iter().zip(&columns).map(|((_, a), col)| a * &col[j]).sum();
        if sum.is_negative() || !(&sum % &size).is_zero() {
            return Err(Error::InconsistentInput("MacWilliams transform is not integral".into()));
        }
        counts.push((sum / &size).to_biguint().unwrap());
    }
    Ok(WeightDistribution { counts })
}

/// First nonzero weight of the dual of the code whose distribution is `wd`,
/// stopping the transform at the first nonzero entry.
fn macwilliams_min_distance(wd: &WeightDistribution, n: u64, k: u64, q: u64) -> Result<Option<u64>> {
    let size = BigInt::from(check_distribution(wd, n, k, q)?);
    let support: Vec<(u64, BigInt)> = wd
        .counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, BigInt::from(c.clone())))
        .collect();
    let qm1 = BigInt::from(q - 1);
    // run the three-term recurrence for every i in lockstep over j
    let mut prev: Vec<BigInt> = vec![BigInt::zero(); support.len()];
    let mut cur: Vec<BigInt> = vec![BigInt::one(); support.len()];
    for j in 0..n {
        let next: Vec<BigInt> = support
            .iter()
            .enumerate()
            .map(|(idx, (i, _))| {
                if j == 0 {
                    &qm1 * BigInt::from(n - i) - BigInt::from(*i)
                } else {
                    let a = BigInt::from(j) + &qm1 * BigInt::from(n - j) - BigInt::from(q * i);
                    (a * &cur[idx] - &qm1 * BigInt::from(n - j + 1) * &prev[idx]) / BigInt::from(j + 1)
                }
            })
            .collect();
        let sum: BigInt = support.iter().zip(&next).map(|((_, a), kv)| a * kv).sum();
        if !(&sum % &size).is_zero() || sum.is_negative() {
            return Err(Error::InconsistentInput("MacWilliams transform is not integral".into()));
        }
        if !sum.is_zero() {
            return Ok(Some(j + 1));
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(None)
}

/// Largest `d` allowed by the sphere-packing bound, also applied to the
/// code punctured once when `d` is even (an `[n, k, d]` code gives an
/// `[n-1, k, d-1]` one).
pub fn sphere_packing_ceiling(n: u64, k: u64, q: u64) -> u64 {
    assert!(k <= n, "dimension exceeds length");
    let volume = |len: u64, radius: u64| -> BigUint {
        let mut total = BigUint::zero();
        let mut binom = BigUint::one();
        let mut qpow = BigUint::one();
        for i in 0..=radius.min(len) {
            if i > 0 {
                binom = binom * BigUint::from(len - i + 1) / BigUint::from(i);
                qpow *= BigUint::from(q - 1);
            }
            total += &binom * &qpow;
        }
        total
    };
    let feasible = |d: u64| -> bool {
        let r = n - k;
        if volume(n, (d - 1) / 2) > BigUint::from(q).pow(r as u32) {
            return false;
        }
        if d % 2 == 0 {
            if r == 0 {
                return false;
            }
            return volume(n - 1, (d - 2) / 2) <= BigUint::from(q).pow(r as u32 - 1);
        }
        true
    };
    let mut d = 1;
    while d <= n && feasible(d + 1) {
        d += 1;
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// Exact enumeration when small enough, bounds otherwise.
    Exact,
    /// BCH lower bound and sampled upper bound only.
    Bounds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceConfig {
    pub mode: DistanceMode,
    /// Exhaustive enumeration when the enumerated code has at most
    /// `2^threshold_bits` words.
    pub threshold_bits: u32,
    /// Information-set sampling iterations.
    pub budget: u64,
    pub seed: u64,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        DistanceConfig { mode: DistanceMode::Exact, threshold_bits: 24, budget: 200, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceRecord {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    pub method: Vec<String>,
}

impl DistanceRecord {
    /// Lowers the upper bound with a known codeword.
    pub fn add_witness(&mut self, code: &CyclicCode, word: &Poly, tag: &str) -> bool {
        if word.is_zero() || !code.contains(word) {
            return false;
        }
        let w = word.weight() as u64;
        if self.upper.map_or(true, |u| w < u) {
            self.upper = Some(w);
            self.method.push(tag.to_string());
        }
        self.settle();
        true
    }

    pub fn raise_lower(&mut self, lower: u64, tag: &str) {
        if lower > self.lower {
            self.lower = lower;
            self.method.push(tag.to_string());
        }
        self.settle();
    }

    fn settle(&mut self) {
        if self.upper == Some(self.lower) {
            self.exact = true;
        }
    }
}

fn fits(q: u64, dim: usize, bits: u32) -> bool {
    (dim as f64) * (q as f64).log2() <= bits as f64 + 1e-9
}

pub fn min_distance(code: &CyclicCode, cfg: &DistanceConfig) -> DistanceRecord {
    let n = code.n() as u64;
    let k = code.k();
    if k == 0 {
        return DistanceRecord { lower: n + 1, upper: None, exact: true, method: vec!["zero-code".into()] };
    }
    if cfg.mode == DistanceMode::Exact {
        if fits(code.q(), k, cfg.threshold_bits) {
            let d = weight_distribution(code).min_distance().unwrap();
            return DistanceRecord { lower: d, upper: Some(d), exact: true, method: vec!["exhaustive".into()] };
        }
        if fits(code.q(), code.n() - k, cfg.threshold_bits) {
            let dc = dual(code);
            let wd = weight_distribution(&dc);
            let d = macwilliams_min_distance(&wd, n, dc.k() as u64, code.q())
                .expect("dual distribution is consistent")
                .expect("nonzero code has a nonzero word");
            return DistanceRecord { lower: d, upper: Some(d), exact: true, method: vec!["dual-macwilliams".into()] };
        }
    }
    let mut rec = DistanceRecord { lower: bch_bound(code), upper: None, exact: false, method: vec!["bch".into()] };
    if let Some((w, iters)) = information_set_search(code, cfg, rec.lower) {
        rec.upper = Some(w);
        rec.method.push(format!("information-set({iters})"));
    }
    rec.settle();
    rec
}

/// Full weight distribution by enumerating all `q^k` codewords.
pub fn weight_distribution(code: &CyclicCode) -> WeightDistribution {
    let n = code.n();
    let k = code.k();
    let counts: Vec<u64> = if code.q() == 2 {
        enumerate_binary(&binary_rows(code), n, k)
    } else {
        enumerate_qary(code)
    };
    WeightDistribution { counts: counts.into_iter().map(BigUint::from).collect() }
}

fn binary_rows(code: &CyclicCode) -> Vec<Vec<u64>> {
    let n = code.n();
    let words = n.div_ceil(64);
    (0..code.k())
        .map(|shift| {
            let mut row = vec![0u64; words];
            for (i, &c) in code.generator().coeffs().iter().enumerate() {
                if c != 0 {
                    let pos = i + shift;
                    row[pos / 64] |= 1 << (pos % 64);
                }
            }
            row
        })
        .collect()
}

const CHUNK_BITS: usize = 12;

fn enumerate_binary(rows: &[Vec<u64>], n: usize, k: usize) -> Vec<u64> {
    let words = n.div_ceil(64);
    let chunk_bits = k.min(CHUNK_BITS);
    let chunks = 1u64 << (k - chunk_bits);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut hist = vec![0u64; n + 1];
            let start = chunk << chunk_bits;
            let gray = start ^ (start >> 1);
            let mut word = vec![0u64; words];
            for (b, row) in rows.iter().enumerate() {
                if gray >> b & 1 == 1 {
                    for (w, r) in word.iter_mut().zip(row) {
                        *w ^= r;
                    }
                }
            }
            hist[word.iter().map(|w| w.count_ones() as usize).sum::<usize>()] += 1;
            for i in start + 1..start + (1u64 << chunk_bits) {
                let b = i.trailing_zeros() as usize;
                for (w, r) in word.iter_mut().zip(&rows[b]) {
                    *w ^= r;
                }
                hist[word.iter().map(|w| w.count_ones() as usize).sum::<usize>()] += 1;
            }
            hist
        })
        .reduce(|| vec![0u64; n + 1], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        })
}

/// Odometer over information vectors; stepping digit `j` from element
/// `e_a` to `e_{a+1}` adds the precomputed row `(e_{a+1} - e_a) g x^j`.
fn enumerate_qary(code: &CyclicCode) -> Vec<u64> {
    let f = code.field();
    let n = code.n();
    let k = code.k();
    let q = code.q() as usize;
    let g = code.generator().coeffs();
    let steps: Vec<u32> = (0..q as u32).map(|a| f.sub(((a as usize + 1) % q) as u32, a)).collect();
    // delta[j][a] as sparse (position, value)
    let delta: Vec<Vec<Vec<(usize, u32)>>> = (0..k)
        .map(|j| {
            steps
                .iter()
                .map(|&s| {
                    g.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i + j, f.mul(s, c)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let top = k - 1;
    (0..q)
        .into_par_iter()
        .map(|lead| {
            let mut hist = vec![0u64; n + 1];
            let mut word = vec![0u32; n];
            let mut weight = 0usize;
            let apply = |word: &mut Vec<u32>, weight: &mut usize, d: &[(usize, u32)]| {
                for &(pos, v) in d {
                    let old = word[pos];
                    let new = f.add(old, v);
                    word[pos] = new;
                    *weight = *weight + usize::from(new != 0) - usize::from(old != 0);
                }
            };
            for a in 0..lead {
                apply(&mut word, &mut weight, &delta[top][a]);
            }
            let mut digits = vec![0usize; top];
            loop {
                hist[weight] += 1;
                let mut j = 0;
                loop {
                    if j == top {
                        return hist;
                    }
                    let a = digits[j];
                    apply(&mut word, &mut weight, &delta[j][a]);
                    digits[j] = (a + 1) % q;
                    if digits[j] != 0 {
                        break;
                    }
                    j += 1;
                }
            }
        })
        .reduce(|| vec![0u64; n + 1], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        })
}

const ISD_BATCH: u64 = 8;
const ISD_WORK_CAP: f64 = (1u64 << 26) as f64;

/// Lightest codeword found by information-set sampling: eliminate a
/// column-permuted parity-check matrix and try every information word of
/// small weight. Returns the weight and the number of iterations used.
fn information_set_search(code: &CyclicCode, cfg: &DistanceConfig, lower: u64) -> Option<(u64, u64)> {
    if cfg.budget == 0 {
        return None;
    }
    let f = code.field();
    let n = code.n();
    let r = n - code.k();
    // parity-check rows x^i h*(x), i < n - k
    let hstar = code.check_poly().reciprocal();
    let h_rows: Vec<Vec<u32>> = (0..r)
        .map(|shift| {
            let mut row = vec![0u32; n];
            for (i, &c) in hstar.coeffs().iter().enumerate() {
                row[i + shift] = c;
            }
            row
        })
        .collect();

    let mut best: Option<u64> = None;
    let mut used = 0u64;
    while used < cfg.budget {
        let batch: Vec<u64> = (used..(used + ISD_BATCH).min(cfg.budget)).collect();
        let found = batch
            .par_iter()
            .filter_map(|&it| isd_iteration(f, &h_rows, n, cfg.seed, it))
            .min();
        used += batch.len() as u64;
        if let Some(w) = found {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
        if best.is_some_and(|b| b <= lower) {
            break;
        }
    }
    best.map(|b| (b, used))
}

fn isd_iteration(f: &Field, h_rows: &[Vec<u32>], n: usize, seed: u64, iteration: u64) -> Option<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let r = h_rows.len();
    let mut m: Vec<Vec<u32>> = h_rows.iter().map(|row| perm.iter().map(|&c| row[c]).collect()).collect();

    // reduced row echelon form; pivots become the redundancy positions
    let mut is_pivot = vec![false; n];
    let mut row = 0;
    for col in 0..n {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, p);
        let inv = f.inv(m[row][col]).unwrap();
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != row && other[col] != 0 {
                let c = other[col];
                for (x, &y) in other.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        is_pivot[col] = true;
        row += 1;
    }
    let info: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let columns: Vec<Vec<u32>> = info.iter().map(|&c| m.iter().map(|row| row[c]).collect()).collect();
    if f.order() == 2 {
        let packed: Vec<Vec<u64>> = columns
            .iter()
            .map(|col| {
                let mut words = vec![0u64; r.div_ceil(64)];
                for (i, &v) in col.iter().enumerate() {
                    if v != 0 {
                        words[i / 64] |= 1 << (i % 64);
                    }
                }
                words
            })
            .collect();
        low_weight_binary(&packed)
    } else {
        low_weight_qary(f, &columns)
    }
}

fn choose(k: f64, w: u32) -> f64 {
    (0..w).fold(1.0, |acc, i| acc * (k - i as f64) / (i as f64 + 1.0))
}

fn max_info_weight(k: usize, words: usize, q: u64) -> u32 {
    (1..=3)
        .rev()
        .find(|&w| choose(k as f64, w) * (q as f64 - 1.0).powi(w as i32 - 1) * words as f64 <= ISD_WORK_CAP)
        .unwrap_or(1)
}

fn low_weight_binary(cols: &[Vec<u64>]) -> Option<u64> {
    let k = cols.len();
    let words = cols.first()?.len();
    let wmax = max_info_weight(k, words, 2);
    let pop = |v: &[u64]| v.iter().map(|x| x.count_ones() as u64).sum::<u64>();
    let mut best = u64::MAX;
    let mut tmp = vec![0u64; words];
    for a in 0..k {
        best = best.min(1 + pop(&cols[a]));
        if wmax < 2 {
            continue;
        }
        for b in a + 1..k {
            for (t, (x, y)) in tmp.iter_mut().zip(cols[a].iter().zip(&cols[b])) {
                *t = x ^ y;
            }
            best = best.min(2 + pop(&tmp));
            if wmax < 3 {
                continue;
            }
            for c in cols.iter().skip(b + 1) {
                let w = 3 + tmp.iter().zip(c).map(|(x, y)| (x ^ y).count_ones() as u64).sum::<u64>();
                best = best.min(w);
            }
        }
    }
    Some(best)
}

fn low_weight_qary(f: &Field, cols: &[Vec<u32>]) -> Option<u64> {
    let k = cols.len();
    let r = cols.first()?.len();
    let q = f.order() as u32;
    let wmax = max_info_weight(k, r, q as u64);
    let weight = |v: &[u32]| v.iter().filter(|&&x| x != 0).count() as u64;
    let combine = |acc: &[u32], col: &[u32], c: u32| -> Vec<u32> {
        acc.iter().zip(col).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
    };
    let mut best = u64::MAX;
    for a in 0..k {
        best = best.min(1 + weight(&cols[a]));
        if wmax < 2 {
            continue;
        }
        for b in a + 1..k {
            for cb in 1..q {
                let ab = combine(&cols[a], &cols[b], cb);
                best = best.min(2 + weight(&ab));
                if wmax < 3 {
                    continue;
                }
                for col in cols.iter().skip(b + 1) {
                    for cc in 1..q {
                        best = best.min(3 + weight(&combine(&ab, col, cc)));
                    }
                }
            }
        }
    }
    Some(best)
}

/// The entries as `u64`, when they all fit.
pub fn counts_u64(wd: &WeightDistribution) -> Option<Vec<u64>> {
    wd.counts.iter().map(|c| c.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn binary_tower(m: u32) -> Arc<Tower> {
        Arc::new(Tower::new(2, 1, m, None, None).unwrap())
    }

    fn code(tower: &Arc<Tower>, text: &str) -> CyclicCode {
        let g = Poly::parse(tower.base(), "w", text).unwrap();
        CyclicCode::new(tower.clone(), g).unwrap()
    }

    #[test]
    fn hamming_7_4() {
        let t = binary_tower(3);
        let c = code(&t, "x^3+x+1");
        assert_eq!(c.k(), 4);
        let wd = weight_distribution(&c);
        assert_eq!(counts_u64(&wd).unwrap(), vec![1, 0, 0, 7, 7, 0, 0, 1]);
        assert_eq!(bch_bound(&c), 3);
        let d = dual(&c);
        assert_eq!(d.k(), 3);
        assert_eq!(dual(&d).generator(), c.generator());
        let dual_wd = macwilliams(&wd, 7, 4, 2).unwrap();
        assert_eq!(dual_wd, weight_distribution(&d));
        assert_eq!(counts_u64(&dual_wd).unwrap(), vec![1, 0, 0, 0, 7, 0, 0, 0]);
    }

    #[test]
    fn repetition_code_macwilliams() {
        let wd = WeightDistribution { counts: [1u32, 0, 0, 1].iter().map(|&c| BigUint::from(c)).collect() };
        let d = macwilliams(&wd, 3, 1, 2).unwrap();
        assert_eq!(counts_u64(&d).unwrap(), vec![1, 0, 3, 0]);
        let bad = WeightDistribution { counts: [1u32, 1, 0, 1].iter().map(|&c| BigUint::from(c)).collect() };
        assert!(matches!(macwilliams(&bad, 3, 1, 2), Err(Error::InconsistentInput(_))));
    }

    #[test]
    fn full_and_zero_codes() {
        let t = binary_tower(3);
        let full = code(&t, "1");
        assert_eq!(full.k(), 7);
        assert_eq!(bch_bound(&full), 1);
        let wd = weight_distribution(&full);
        let dual_wd = macwilliams(&wd, 7, 7, 2).unwrap();
        assert_eq!(counts_u64(&dual_wd).unwrap(), vec![1, 0, 0, 0, 0, 0, 0, 0]);
        let zero = dual(&full);
        assert_eq!(zero.k(), 0);
        assert_eq!(min_distance(&zero, &DistanceConfig::default()).upper, None);
    }

    #[test]
    fn sphere_packing_examples() {
        assert_eq!(sphere_packing_ceiling(31, 26, 2), 3);
        assert_eq!(sphere_packing_ceiling(31, 25, 2), 4);
        assert_eq!(sphere_packing_ceiling(7, 4, 2), 3);
        assert_eq!(sphere_packing_ceiling(7, 3, 2), 4);
        assert_eq!(sphere_packing_ceiling(9, 9, 3), 1);
    }

    #[test]
    fn zero_sequence_gives_full_code() {
        let t = binary_tower(3);
        let seq = PeriodicSequence { q: 2, period: 7, values: vec![0; 7] };
        let c = code_from_sequence(t, &seq).unwrap();
        assert_eq!(c.k(), 7);
        assert!(c.zero_sequence);
        assert_eq!(c.generator(), &Poly::one());
    }

    #[test]
    fn enumeration_routes_agree_ternary() {
        let t = Arc::new(Tower::new(3, 1, 3, None, None).unwrap());
        let part = partition(3, 26).unwrap();
        let f = t.base().clone();
        // a few generators assembled from cosets
        for leaders in [vec![0u64, 1, 2, 4, 5], vec![1, 2, 4, 5], vec![2, 5, 7, 8, 13], vec![1, 2, 7, 8, 13]] {
            let g = leaders
                .iter()
                .map(|&l| crate::cyclotomic::minimal_poly(&t, l).unwrap())
                .fold(Poly::one(), |a, m| a.mul(&f, &m));
            let c = CyclicCode::new(t.clone(), g).unwrap();
            assert_eq!(c.defining_set_leaders(), leaders.as_slice());
            assert_eq!(c.n() - c.k(), leaders.iter().map(|&l| part.coset(l).size()).sum::<usize>());
            let direct = weight_distribution(&c);
            let via_dual = macwilliams(&weight_distribution(&dual(&c)), 26, (26 - c.k()) as u64, 3).unwrap();
            assert_eq!(direct, via_dual);
            let d = direct.min_distance().unwrap();
            assert!(bch_bound(&c) <= d);
            assert!(d <= sphere_packing_ceiling(26, c.k() as u64, 3));
        }
    }

    #[test]
    fn sampling_finds_hamming_weight() {
        let t = binary_tower(5);
        let c = code(&t, "x^5+x^2+1");
        let cfg = DistanceConfig { mode: DistanceMode::Bounds, ..DistanceConfig::default() };
        let rec = min_distance(&c, &cfg);
        assert_eq!((rec.lower, rec.upper, rec.exact), (3, Some(3), true));
        assert_eq!(rec, min_distance(&c, &cfg));
    }
}
