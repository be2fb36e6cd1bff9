//! Trace sequences of monomials, their exponential-sum expansion and linear
//! span, plus Berlekamp–Massey over GF(q) as an independent check.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::binomial_mod_p;
use crate::cyclotomic::{coset_of, minimal_poly, partition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::tower::Tower;

/// `f(x) = x^d` with `f(0) = 0`. The exponent is kept reduced mod `q^m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialFunction {
    pub exponent: u64,
    pub name: String,
}

impl MonomialFunction {
    pub fn new(exponent: u64, n: u64, name: impl Into<String>) -> MonomialFunction {
        MonomialFunction { exponent: exponent % n, name: name.into() }
    }

    /// Exponent used for the binomial expansion; `x^0` and `x^n` agree on
    /// nonzero arguments, and only `x^n` also vanishes at zero.
    fn expansion_exponent(&self, n: u64) -> u64 {
        if self.exponent == 0 {
            n
        } else {
            self.exponent
        }
    }

    pub fn apply(&self, field: &Field, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            field.pow(x, self.exponent)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicSequence {
    pub q: u64,
    pub period: u64,
    /// One period, base-field encodings.
    pub values: Vec<u32>,
}

impl PeriodicSequence {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// `s_t = Tr(f(α^t + 1))` for `t = 0 .. n-1`.
pub fn generate(tower: &Tower, f: &MonomialFunction) -> PeriodicSequence {
    let ext = tower.ext();
    let n = tower.n();
    let values = (0..n)
        .map(|t| {
            let x = ext.add(ext.exp(t), 1);
            tower.trace(f.apply(ext, x))
        })
        .collect();
    PeriodicSequence { q: tower.q(), period: n, values }
}

/// `s_t = Σ_{i ∈ I} c_i α^{it}` with every `c_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceExpansion {
    pub n: u64,
    pub q: u64,
    /// `i -> c_i` as extension-field encodings.
    pub terms: BTreeMap<u64, u32>,
}

impl TraceExpansion {
    pub fn span(&self) -> usize {
        self.terms.len()
    }

    pub fn index_set(&self) -> Vec<u64> {
        self.terms.keys().copied().collect()
    }

    /// Leaders of the cosets making up `I`, each with its coefficient.
    pub fn leaders(&self) -> Vec<(u64, u32)> {
        let part = partition(self.q, self.n).expect("validated at construction");
        self.terms
            .iter()
            .filter(|(&i, _)| part.leader_of(i) == i)
            .map(|(&i, &c)| (i, c))
            .collect()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&0)
    }

    /// `Σ c_i α^{it}` projected to GF(q).
    pub fn evaluate(&self, tower: &Tower, t: u64) -> Result<u32> {
        let ext = tower.ext();
        let n = self.n;
        let mut acc = 0u32;
        for (&i, &c) in &self.terms {
            let e = ((i as u128 * t as u128) % n as u128) as u64;
            acc = ext.add(acc, ext.mul(c, ext.exp(e)));
        }
        tower
            .project(acc)
            .ok_or_else(|| Error::Expansion(format!("term sum at t = {t} leaves GF(q)")))
    }

    pub fn reconstruct(&self, tower: &Tower) -> Result<PeriodicSequence> {
        let values = (0..self.n).map(|t| self.evaluate(tower, t)).collect::<Result<_>>()?;
        Ok(PeriodicSequence { q: self.q, period: self.n, values })
    }
}

/// Expands `Tr((x+1)^d)` at `x = α^t`: Lucas' theorem gives the surviving
/// binomial terms `x^e`, and the trace spreads each over `e q^k`.
pub fn expand_symbolic(tower: &Tower, f: &MonomialFunction) -> Result<TraceExpansion> {
    let n = tower.n();
    let q = tower.q();
    let p = tower.p() as u64;
    let ext = tower.ext();
    let d = f.expansion_exponent(n);

    let mut digits = Vec::new();
    let mut rest = d;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }

    let mut acc: BTreeMap<u64, u32> = BTreeMap::new();
    let mut push = |e: u64, c: u64| {
        let mut idx = e % n;
        for _ in 0..tower.m() {
            let slot = acc.entry(idx).or_insert(0);
            *slot = ext.add(*slot, ext.constant(c));
            idx = ((idx as u128 * q as u128) % n as u128) as u64;
        }
    };

    // odometer over digit vectors e_i <= d_i
    let mut e_digits = vec![0u64; digits.len()];
    loop {
        let mut e = 0u64;
        let mut place = 1u64;
        for &ed in &e_digits {
            e += ed * place;
            place = place.saturating_mul(p);
        }
        let c = binomial_mod_p(d, e, p);
        if c != 0 {
            push(e, c);
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return finish(tower, acc);
            }
            if e_digits[k] < digits[k] {
                e_digits[k] += 1;
                break;
            }
            e_digits[k] = 0;
            k += 1;
        }
    }
}

fn finish(tower: &Tower, acc: BTreeMap<u64, u32>) -> Result<TraceExpansion> {
    let n = tower.n();
    let q = tower.q();
    let ext = tower.ext();
    let terms: BTreeMap<u64, u32> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    for (&i, &c) in &terms {
        let j = ((i as u128 * q as u128) % n as u128) as u64;
        let cj = terms.get(&j).copied().unwrap_or(0);
        if cj != ext.pow(c, q) {
            return Err(Error::Expansion(format!(
                "coefficient of index {j} is not the q-th power of that of {i}"
            )));
        }
        let coset = coset_of(q, n, i)?;
        if !coset.members.iter().all(|k| terms.contains_key(k)) {
            return Err(Error::Expansion(format!("coset of {i} is only partly present")));
        }
    }
    Ok(TraceExpansion { n, q, terms })
}

/// Shortest LFSR generating `seq` (over `field`), as `(L, C(x))` with
/// `C(0) = 1`. Uses the first `terms` values, repeating the period as needed.
pub fn berlekamp_massey(field: &Field, seq: &[u32], terms: usize) -> Result<(usize, Poly)> {
    if terms < 2 {
        return Err(Error::InsufficientTerms(terms));
    }
    if seq.is_empty() {
        return Err(Error::InsufficientTerms(0));
    }
    let s = |i: usize| seq[i % seq.len()];
    let mut c = vec![1u32];
    let mut b = vec![1u32];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_disc = 1u32;
    for i in 0..terms {
        let mut disc = s(i);
        for j in 1..=l.min(c.len() - 1) {
            disc = field.add(disc, field.mul(c[j], s(i - j)));
        }
        if disc == 0 {
            shift += 1;
            continue;
        }
        let coef = field.div(disc, last_disc).unwrap();
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            c[j + shift] = field.sub(c[j + shift], field.mul(coef, bj));
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            last_disc = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(l + 1);
    Ok((l, Poly::new(c)))
}

/// Linear span with both normalizations of the minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanResult {
    pub span: usize,
    /// `Π (1 - α^i x)`, constant term 1.
    pub paper_form: Poly,
    /// `Π (x - α^{-i})`.
    pub monic_form: Poly,
}

pub fn span_from_expansion(tower: &Tower, exp: &TraceExpansion) -> Result<SpanResult> {
    let base = tower.base();
    let n = exp.n;
    let mut monic = Poly::one();
    for (i, _) in exp.leaders() {
        monic = monic.mul(base, &minimal_poly(tower, (n - i) % n)?);
    }
    let c0 = monic.coeff(0);
    let paper_form = monic.scale(base, base.inv(c0).expect("roots are nonzero"));
    Ok(SpanResult { span: exp.span(), paper_form, monic_form: monic })
}

/// The same result read off a Berlekamp–Massey run over two periods.
pub fn span_from_sequence(tower: &Tower, seq: &PeriodicSequence) -> Result<SpanResult> {
    let base = tower.base();
    let (l, c) = berlekamp_massey(base, &seq.values, 2 * seq.values.len())?;
    let monic_form = c.monic(base);
    Ok(SpanResult { span: l, paper_form: c, monic_form })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u32, m: u32, poly: &[u32]) -> Tower {
        Tower::new(p, 1, m, None, Some(poly)).unwrap()
    }

    /// Smallest L admitting a recurrence, by exhaustive search over all
    /// binary connection vectors of each length.
    fn brute_span_binary(seq: &[u32]) -> usize {
        let n = seq.len();
        for l in 0..=n {
            for mask in 0u64..(1 << l) {
                let ok = (0..2 * n).skip(l).all(|t| {
                    let mut acc = 0;
                    for j in 0..l {
                        if mask >> j & 1 == 1 {
                            acc ^= seq[(t - j - 1) % n];
                        }
                    }
                    acc == seq[t % n]
                });
                if ok {
                    return l;
                }
            }
        }
        n
    }

    #[test]
    fn bm_small_cases() {
        let f = Field::with_default_poly(2, 1).unwrap();
        assert_eq!(berlekamp_massey(&f, &[0; 7], 14).unwrap().0, 0);
        let t = tower(2, 3, &[1, 1, 0, 1]);
        let m_seq: Vec<u32> = (0..7).map(|i| t.trace(t.ext().exp(i))).collect();
        assert_eq!(brute_span_binary(&m_seq), 3);
        let (l, c) = berlekamp_massey(&f, &m_seq, 14).unwrap();
        assert_eq!(l, 3);
        assert_eq!(c.coeff(0), 1);
        assert_eq!(berlekamp_massey(&f, &m_seq, 1), Err(Error::InsufficientTerms(1)));
    }

    #[test]
    fn bm_matches_brute_force_on_random_binary() {
        use rand::{Rng, SeedableRng};
        let f = Field::with_default_poly(2, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for len in [3usize, 5, 7, 9] {
            for _ in 0..20 {
                let seq: Vec<u32> = (0..len).map(|_| rng.gen_range(0..2)).collect();
                assert_eq!(berlekamp_massey(&f, &seq, 2 * len).unwrap().0, brute_span_binary(&seq));
            }
        }
    }

    #[test]
    fn identity_function_complements_m_sequence() {
        let t = tower(2, 3, &[1, 1, 0, 1]);
        let seq = generate(&t, &MonomialFunction::new(1, 7, "identity"));
        for (i, &v) in seq.values.iter().enumerate() {
            assert_eq!(v, t.trace(t.ext().exp(i as u64)) ^ 1);
        }
    }

    #[test]
    fn gold_m5_span_six() {
        let t = tower(2, 5, &[1, 0, 1, 0, 0, 1]);
        let f = MonomialFunction::new(3, 31, "gold");
        let seq = generate(&t, &f);
        let exp = expand_symbolic(&t, &f).unwrap();
        assert_eq!(exp.span(), 6);
        assert!(exp.has_constant_term());
        assert_eq!(exp.reconstruct(&t).unwrap(), seq);
        let bm = span_from_sequence(&t, &seq).unwrap();
        let sym = span_from_expansion(&t, &exp).unwrap();
        assert_eq!(bm, sym);
    }

    #[test]
    fn bracken_leander_m4_half_coset_cancels() {
        // the coset of 1 + 2^(2h) has size m/2, so its trace term vanishes
        let t = tower(2, 4, &[1, 1, 0, 0, 1]);
        let f = MonomialFunction::new(7, 15, "bracken_leander");
        let exp = expand_symbolic(&t, &f).unwrap();
        let leaders: Vec<u64> = exp.leaders().into_iter().map(|(i, _)| i).collect();
        assert_eq!(leaders, vec![1, 7]);
        let span = span_from_expansion(&t, &exp).unwrap();
        let bm = span_from_sequence(&t, &generate(&t, &f)).unwrap();
        assert_eq!(bm.span, 8);
        assert_eq!(bm.monic_form, span.monic_form);
    }

    #[test]
    fn empty_and_constant_expansions() {
        let t = tower(2, 3, &[1, 1, 0, 1]);
        let empty = TraceExpansion { n: 7, q: 2, terms: BTreeMap::new() };
        let r = span_from_expansion(&t, &empty).unwrap();
        assert_eq!((r.span, r.monic_form.clone()), (0, Poly::one()));
        let constant = TraceExpansion { n: 7, q: 2, terms: BTreeMap::from([(0, 1)]) };
        let r = span_from_expansion(&t, &constant).unwrap();
        assert_eq!(r.paper_form.render(t.base(), "w"), "x + 1");
        assert_eq!(r.monic_form.render(t.base(), "w"), "x + 1");
    }

    #[test]
    fn odd_characteristic_expansion_reconstructs() {
        for (p, s, m, d) in [(3u32, 1u32, 3u32, 5u64), (3, 1, 4, 14), (5, 1, 2, 7), (3, 2, 2, 13), (2, 2, 3, 21)] {
            let t = Tower::new(p, s, m, None, None).unwrap();
            let f = MonomialFunction::new(d, t.n(), "raw");
            let seq = generate(&t, &f);
            let exp = expand_symbolic(&t, &f).unwrap();
            assert_eq!(exp.reconstruct(&t).unwrap(), seq, "p={p} s={s} m={m} d={d}");
            let bm = span_from_sequence(&t, &seq).unwrap();
            let sym = span_from_expansion(&t, &exp).unwrap();
            assert_eq!(bm.span, sym.span);
            assert_eq!(bm.monic_form, sym.monic_form);
            assert_eq!(sym.paper_form.coeff(0), 1);
        }
    }
}
