//! Per-parameter cells for `verify` and `sweep`.

use std::sync::Arc;

use anyhow::{anyhow, Result};
use rayon::prelude::*;
use serde::Serialize;

use cyclocode::catalog::{resolve, Family, FunctionSpec, Params};
use cyclocode::closed_forms::{
    self, build_kasami_sets, coset_structure_checks, kasami_distance_bounds, kasami_regime, DistanceWindow, KasamiRegime,
    SpanProfile,
};
use cyclocode::code::{agree_with_minimal_poly, code_from_sequence, min_distance, CyclicCode, DistanceConfig, DistanceRecord};
use cyclocode::poly::Poly;
use cyclocode::sequence::{expand_symbolic, generate, span_from_expansion, span_from_sequence, MonomialFunction};
use cyclocode::tower::Tower;

/// Sequence-side facts for one `(tower, exponent)`.
pub struct Empirical {
    pub code: CyclicCode,
    pub span_bm: usize,
    pub span_symbolic: usize,
    /// Monic minimal polynomial from the symbolic route.
    pub minimal: Poly,
    pub paper_form: Poly,
    pub leaders: Vec<u64>,
    pub head: Vec<u32>,
    pub routes_agree: bool,
    /// The code generator equals the monic minimal polynomial.
    pub generator_agrees: bool,
}

pub fn empirical(tower: &Arc<Tower>, exponent: u64, head: usize) -> Result<Empirical> {
    let f = MonomialFunction::new(exponent, tower.n(), "f");
    let seq = generate(tower, &f);
    let expansion = expand_symbolic(tower, &f)?;
    let sym = span_from_expansion(tower, &expansion)?;
    let bm = span_from_sequence(tower, &seq)?;
    let code = code_from_sequence(tower.clone(), &seq)?;
    Ok(Empirical {
        routes_agree: sym.span == bm.span && sym.monic_form == bm.monic_form,
        generator_agrees: agree_with_minimal_poly(&code, &sym),
        span_bm: bm.span,
        span_symbolic: sym.span,
        minimal: sym.monic_form,
        paper_form: sym.paper_form,
        leaders: expansion.leaders().into_iter().map(|(i, _)| i).collect(),
        head: seq.values.iter().copied().take(head).collect(),
        code,
    })
}

/// Closed-form description attached to a function, when one applies.
pub struct Prediction {
    pub profile: SpanProfile,
    pub window: Option<DistanceWindow>,
    pub regime: Option<String>,
    /// Stated lower bound on the distance.
    pub lower: Option<u64>,
}

pub fn prediction(spec: &FunctionSpec, p: u32, s: u32) -> Option<Prediction> {
    let Params { q, m, h, .. } = spec.params;
    let plain = |profile| Prediction { profile, window: None, regime: None, lower: None };
    match (spec.family, h) {
        (Family::Kasami, Some(h)) if q == 2 => {
            let regime = kasami_regime(m, h)?;
            let profile = closed_forms::kasami_profile(m, h).ok()?;
            Some(Prediction {
                profile,
                window: None,
                regime: Some(regime.name().to_string()),
                lower: kasami_distance_bounds(m, h, regime).ok().map(|b| b.lower),
            })
        }
        (Family::Gold, Some(h)) if q == 2 => closed_forms::gold_profile(2, m, h).ok().map(plain),
        (Family::BrackenLeander, Some(h)) if q == 2 && m == 4 * h => {
            closed_forms::bracken_leander_profile(m).ok().map(|profile| Prediction {
                lower: Some(closed_forms::BRACKEN_LEANDER_DISTANCE),
                ..plain(profile)
            })
        }
        (Family::Q23, _) => closed_forms::q23_profile(p, s, m).ok().map(|(profile, w)| Prediction {
            lower: Some(w.lower),
            window: Some(w),
            ..plain(profile)
        }),
        (Family::RawExponent, _) if q == 3 && spec.exponent == 14 => {
            closed_forms::ternary_h3_profile(m).ok().map(|(profile, w)| Prediction {
                lower: Some(w.lower),
                window: Some(w),
                ..plain(profile)
            })
        }
        _ => None,
    }
}

/// Distance record plus the structural witness words that belong to the code.
pub fn distance(code: &CyclicCode, cfg: &DistanceConfig) -> DistanceRecord {
    let mut rec = min_distance(code, cfg);
    if !rec.exact {
        let n = code.n() as u64;
        if let Some(w) = closed_forms::cube_root_witness(n) {
            rec.add_witness(code, &w, "cube-root-word");
        }
        if let Some(w) = closed_forms::eighth_root_witness(code.field(), n) {
            rec.add_witness(code, &w, "eighth-root-word");
        }
    }
    rec
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Gold,
    KasamiLow,
    KasamiMid,
    KasamiHigh,
    Kasami,
    BrackenLeander,
    Q23,
    TernaryH3,
    /// Every catalog family: both span routes and the generator identity.
    Families,
    Sets,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub lemma: String,
    pub function: String,
    pub q: u64,
    pub m: u32,
    pub h: Option<u32>,
    pub predicted_span: Option<u64>,
    pub symbolic_span: Option<usize>,
    pub bm_span: Option<usize>,
    /// Closed-form factor product equals the empirical minimal polynomial.
    pub generator_match: Option<bool>,
    /// Declared span equals the sum of its factor degrees.
    pub consistent: Option<bool>,
    pub passed: bool,
    pub note: String,
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    lemma: Lemma,
    family: Family,
    p: u32,
    s: u32,
    m: u32,
    h: Option<u32>,
    exponent: Option<u64>,
}

impl Cell {
    fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }

    fn key(&self) -> (Lemma, u64, u32, Option<u32>, Family) {
        (self.lemma, self.q(), self.m, self.h, self.family)
    }
}

fn order(p: u32, s: u32, m: u32) -> Option<u64> {
    (p as u64).checked_pow(s * m)
}

fn cells(lemma: Lemma, m_min: u32, m_max: u32, max_order: u64) -> Vec<Cell> {
    let fits = |p: u32, s: u32, m: u32| order(p, s, m).is_some_and(|o| o <= max_order);
    let ms = || m_min.max(2)..=m_max;
    let binary = |family, m, h| Cell { lemma, family, p: 2, s: 1, m, h: Some(h), exponent: None };
    let mut out = Vec::new();
    match lemma {
        Lemma::Gold => {
            for m in ms().filter(|&m| fits(2, 1, m)) {
                out.extend((1..m).filter(|&h| closed_forms::gold_profile(2, m, h).is_ok()).map(|h| binary(Family::Gold, m, h)));
            }
        }
        Lemma::KasamiLow | Lemma::KasamiMid | Lemma::KasamiHigh | Lemma::Kasami => {
            for m in ms().filter(|&m| fits(2, 1, m)) {
                for h in 1..m {
                    let Some(r) = kasami_regime(m, h) else { continue };
                    let keep = match lemma {
                        Lemma::KasamiLow => r == KasamiRegime::Low,
                        Lemma::KasamiMid => r == KasamiRegime::Mid,
                        Lemma::KasamiHigh => r == KasamiRegime::High,
                        _ => r != KasamiRegime::Unsolved,
                    };
                    if keep {
                        out.push(binary(Family::Kasami, m, h));
                    }
                }
            }
        }
        Lemma::Sets => {
            for m in ms() {
                out.extend((1..m).filter(|&h| kasami_regime(m, h).is_some()).map(|h| binary(Family::Kasami, m, h)));
            }
        }
        Lemma::BrackenLeander => {
            for m in ms().filter(|&m| fits(2, 1, m) && closed_forms::bracken_leander_profile(m).is_ok()) {
                out.push(binary(Family::BrackenLeander, m, m / 4));
            }
        }
        Lemma::Q23 => {
            for p in [2u32, 3, 5, 7, 11, 13] {
                for s in 1..=4 {
                    for m in ms().filter(|&m| closed_forms::q23_range(m) && fits(p, s, m)) {
                        out.push(Cell { lemma, family: Family::Q23, p, s, m, h: None, exponent: None });
                    }
                }
            }
        }
        Lemma::TernaryH3 => {
            for m in ms().filter(|&m| fits(3, 1, m) && closed_forms::ternary_h3_profile(m).is_ok()) {
                out.push(Cell { lemma, family: Family::RawExponent, p: 3, s: 1, m, h: None, exponent: Some(14) });
            }
        }
        Lemma::Families => {
            for (p, s) in [(2u32, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
                let q = (p as u64).pow(s);
                for m in ms().filter(|&m| fits(p, s, m)) {
                    for family in Family::ALL {
                        if family == Family::RawExponent {
                            continue;
                        }
                        let hs: Vec<Option<u32>> = match family {
                            Family::Inverse | Family::Q23 => vec![None],
                            _ => (1..m).map(Some).collect(),
                        };
                        for h in hs {
                            let Ok(spec) = resolve(family, Params { q, m, h, exponent: None }) else { continue };
                            let valid = match (family, spec.claim) {
                                (Family::Gold | Family::Kasami, _) => true,
                                (_, Some(c)) => c.precondition_met,
                                (_, None) => true,
                            };
                            if valid {
                                out.push(Cell { lemma, family, p, s, m, h, exponent: None });
                            }
                        }
                    }
                }
            }
        }
        Lemma::All => {
            for l in [
                Lemma::Gold,
                Lemma::Kasami,
                Lemma::BrackenLeander,
                Lemma::Q23,
                Lemma::TernaryH3,
                Lemma::Families,
                Lemma::Sets,
            ] {
                out.extend(cells(l, m_min, m_max, max_order));
            }
        }
    }
    out
}

fn failed_checks(checks: impl IntoIterator<Item = closed_forms::Check>) -> Vec<String> {
    checks
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| if c.detail.is_empty() { c.name } else { format!("{} ({})", c.name, c.detail) })
        .collect()
}

fn sets_row(cell: &Cell) -> VerifyRow {
    let (m, h) = (cell.m, cell.h.unwrap_or(0));
    let mut failed = Vec::new();
    match build_kasami_sets(m, h) {
        Ok(s) => failed.extend(failed_checks(s.checks())),
        Err(e) => failed.push(e.to_string()),
    }
    if m <= 13 {
        match coset_structure_checks(m, h) {
            Ok(r) => failed.extend(failed_checks(r.checks)),
            Err(e) => failed.push(e.to_string()),
        }
    }
    VerifyRow {
        lemma: "kasami-sets".into(),
        function: "kasami".into(),
        q: 2,
        m,
        h: Some(h),
        predicted_span: None,
        symbolic_span: None,
        bm_span: None,
        generator_match: None,
        consistent: None,
        passed: failed.is_empty(),
        note: failed.join("; "),
    }
}

fn verify_cell(cell: &Cell) -> VerifyRow {
    if cell.lemma == Lemma::Sets {
        return sets_row(cell);
    }
    let q = cell.q();
    let mut row = VerifyRow {
        lemma: format!("{:?}", cell.lemma).to_lowercase(),
        function: cell.family.name().to_string(),
        q,
        m: cell.m,
        h: cell.h,
        predicted_span: None,
        symbolic_span: None,
        bm_span: None,
        generator_match: None,
        consistent: None,
        passed: false,
        note: String::new(),
    };
    let spec = match resolve(cell.family, Params { q, m: cell.m, h: cell.h, exponent: cell.exponent }) {
        Ok(s) => s,
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    };
    let built = Tower::new(cell.p, cell.s, cell.m, None, None)
        .map_err(anyhow::Error::from)
        .map(Arc::new)
        .and_then(|t| empirical(&t, spec.exponent, 0).map(|e| (t, e)));
    let (tower, emp) = match built {
        Ok(v) => v,
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    };
    row.symbolic_span = Some(emp.span_symbolic);
    row.bm_span = Some(emp.span_bm);
    let mut notes = Vec::new();
    if !emp.routes_agree {
        notes.push("symbolic and BM routes disagree".to_string());
    }
    if !emp.generator_agrees {
        notes.push("code generator differs from the minimal polynomial".to_string());
    }
    let predicted = if cell.lemma == Lemma::Families { None } else { prediction(&spec, cell.p, cell.s) };
    match predicted {
        Some(Prediction { profile, .. }) => {
            row.lemma = profile.applicability.lemma.clone();
            row.predicted_span = Some(profile.span);
            let generator_match = profile.generator(&tower).ok().as_ref() == Some(&emp.minimal);
            row.generator_match = Some(generator_match);
            row.consistent = Some(profile.is_consistent());
            if profile.span as usize != emp.span_bm {
                notes.push(format!("span predicted {} measured {}", profile.span, emp.span_bm));
            }
            if !generator_match {
                notes.push("factor product differs from the minimal polynomial".into());
            }
            if !profile.is_consistent() {
                notes.push(format!(
                    "declared span {} but factor degrees sum to {}",
                    profile.span,
                    profile.declared_degree()
                ));
            }
            let sizes: Vec<_> = profile.size_mismatches().iter().map(|s| (s.exponent, s.expected, s.actual)).collect();
            if !sizes.is_empty() {
                notes.push(format!("coset sizes (exponent, stated, actual) {sizes:?}"));
            }
        }
        None if cell.lemma != Lemma::Families => notes.push("no closed form applies".into()),
        None => {}
    }
    row.passed = notes.is_empty();
    row.note = notes.join("; ");
    row
}

/// Every cell of `lemma` with `m_min ≤ m ≤ m_max` and field order at most
/// `max_order`, sorted by `(lemma, q, m, h)`.
pub fn verify(lemma: Lemma, m_min: u32, m_max: u32, max_order: u64) -> Vec<VerifyRow> {
    let mut cells = cells(lemma, m_min, m_max, max_order);
    cells.sort_by_key(Cell::key);
    cells.par_iter().map(verify_cell).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub m: u32,
    pub h: Option<u32>,
    pub q: u64,
    pub n: u64,
    pub k: usize,
    #[serde(rename = "L_s")]
    pub span: usize,
    pub d_lower: u64,
    pub d_upper: Option<u64>,
    pub exact: bool,
    #[serde(rename = "predicted_L_s")]
    pub predicted_span: Option<u64>,
    pub regime: Option<String>,
}

pub struct SweepOptions {
    pub family: Family,
    pub p: u32,
    pub s: u32,
    pub m_min: u32,
    pub m_max: u32,
    pub exponent: Option<u64>,
    pub max_order: u64,
    pub distance: DistanceConfig,
}

fn sweep_cells(opts: &SweepOptions) -> Vec<(u32, Option<u32>)> {
    let q = (opts.p as u64).pow(opts.s);
    let mut out = Vec::new();
    for m in opts.m_min.max(2)..=opts.m_max {
        if order(opts.p, opts.s, m).map_or(true, |o| o > opts.max_order) {
            continue;
        }
        let params = |h| Params { q, m, h, exponent: opts.exponent };
        match opts.family {
            Family::Inverse | Family::Q23 | Family::RawExponent => {
                if resolve(opts.family, params(None)).is_ok() {
                    out.push((m, None));
                }
            }
            Family::Kasami if q == 2 => out.extend((1..m).filter(|&h| kasami_regime(m, h).is_some()).map(|h| (m, Some(h)))),
            Family::Gold if q == 2 => {
                out.extend((1..m).filter(|&h| closed_forms::gold_profile(2, m, h).is_ok()).map(|h| (m, Some(h))))
            }
            fam => out.extend(
                (1..m)
                    .filter(|&h| resolve(fam, params(Some(h))).is_ok_and(|s| s.claim.is_some_and(|c| c.precondition_met)))
                    .map(|h| (m, Some(h))),
            ),
        }
    }
    out
}

fn sweep_row(opts: &SweepOptions, m: u32, h: Option<u32>) -> Result<SweepRow> {
    let q = (opts.p as u64).pow(opts.s);
    let spec = resolve(opts.family, Params { q, m, h, exponent: opts.exponent })?;
    let tower = Arc::new(Tower::new(opts.p, opts.s, m, None, None)?);
    let emp = empirical(&tower, spec.exponent, 0)?;
    if !emp.routes_agree {
        return Err(anyhow!("symbolic and BM routes disagree at m={m} h={h:?}"));
    }
    let rec = distance(&emp.code, &opts.distance);
    let pred = prediction(&spec, opts.p, opts.s);
    Ok(SweepRow {
        m,
        h,
        q,
        n: tower.n(),
        k: emp.code.k(),
        span: emp.span_bm,
        d_lower: rec.lower,
        d_upper: rec.upper,
        exact: rec.exact,
        predicted_span: pred.as_ref().map(|p| p.profile.span),
        regime: pred.and_then(|p| p.regime),
    })
}

/// Empirical table for one family, sorted by `(m, h)`.
pub fn sweep(opts: &SweepOptions) -> Result<Vec<SweepRow>> {
    let cells = sweep_cells(opts);
    cells.par_iter().map(|&(m, h)| sweep_row(opts, m, h)).collect()
}
