//! Generator polynomials of the worked examples, reproduced from their
//! stated defining polynomials.

use std::sync::Arc;

use cyclocode::closed_forms::{bracken_leander_profile, kasami_exponent, kasami_profile, q23_profile, ternary_h3_profile};
use cyclocode::code::{agree_with_minimal_poly, code_from_sequence, CyclicCode};
use cyclocode::field::Field;
use cyclocode::poly::Poly;
use cyclocode::sequence::{expand_symbolic, generate, span_from_expansion, span_from_sequence, MonomialFunction};
use cyclocode::tower::Tower;

fn build(p: u32, s: u32, m: u32, poly: &str, d: u64) -> CyclicCode {
    let base = Field::with_default_poly(p, s).unwrap();
    let ext_poly = Poly::parse(&base, "w", poly).unwrap();
    let t = Arc::new(Tower::new(p, s, m, None, Some(ext_poly.coeffs())).unwrap());
    let f = MonomialFunction::new(d, t.n(), "f");
    let seq = generate(&t, &f);
    let code = code_from_sequence(t.clone(), &seq).unwrap();
    let sym = span_from_expansion(&t, &expand_symbolic(&t, &f).unwrap()).unwrap();
    let bm = span_from_sequence(&t, &seq).unwrap();
    assert_eq!(sym.span, bm.span);
    assert_eq!(sym.monic_form, bm.monic_form);
    assert!(agree_with_minimal_poly(&code, &sym));
    code
}

fn expect(code: &CyclicCode, text: &str, n: usize, k: usize) {
    let want = Poly::parse(code.field(), "w", text).unwrap();
    assert_eq!(code.generator(), &want, "got {}", code.generator().render(code.field(), "w"));
    assert_eq!((code.n(), code.k()), (n, k));
}

#[test]
fn kasami_5_2() {
    let c = build(2, 1, 5, "x^5+x^2+1", kasami_exponent(2));
    expect(&c, "x^16+x^14+x^10+x^9+x^8+x^7+x^5+x^4+x^3+x^2+x+1", 31, 15);
    assert_eq!(&kasami_profile(5, 2).unwrap().generator(c.tower()).unwrap(), c.generator());
}

#[test]
fn kasami_7_2() {
    let c = build(2, 1, 7, "x^7+x+1", kasami_exponent(2));
    expect(&c, "x^36+x^28+x^27+x^23+x^21+x^20+x^18+x^13+x^12+x^9+x^7+x^6+x^5+1", 127, 91);
    assert_eq!(&kasami_profile(7, 2).unwrap().generator(c.tower()).unwrap(), c.generator());
}

#[test]
fn kasami_9_2() {
    let c = build(2, 1, 9, "x^9+x^4+1", kasami_exponent(2));
    expect(
        &c,
        "x^46 + x^45 + x^42 + x^41 + x^40 + x^39 + x^38 + x^37 + x^36 + x^35 + x^31 + x^28 + x^27 \
         + x^24 + x^23 + x^22 + x^21 + x^20 + x^18 + x^15 + x^14 + x^12 + x^9 + x^6 + x^3 + x^2 + x + 1",
        511,
        465,
    );
    assert_eq!(&kasami_profile(9, 2).unwrap().generator(c.tower()).unwrap(), c.generator());
}

#[test]
fn bracken_leander_4_sequence_and_closed_form_differ() {
    let c = build(2, 1, 4, "x^4+x+1", 7);
    // The Tr(x^{1+2^{2h}}) term vanishes: its coset has size m/2.
    expect(&c, "x^8+x^7+x^5+x^4+x^3+x+1", 15, 7);
    let printed = Poly::parse(c.field(), "w", "x^10+x^5+1").unwrap();
    assert_eq!(bracken_leander_profile(4).unwrap().generator(c.tower()).unwrap(), printed);
}

#[test]
fn q23_binary_6() {
    let c = build(2, 1, 6, "x^6+x^4+x^3+x+1", 7);
    expect(&c, "x^18 + x^16 + x^8 + x^7 + x^5 + x^2 + 1", 63, 45);
    let (p, _) = q23_profile(2, 1, 6).unwrap();
    assert_eq!(&p.generator(c.tower()).unwrap(), c.generator());
}

#[test]
fn q23_quaternary_6() {
    let c = build(2, 2, 6, "x^6+x^5+w*x^4+w^2*x^3+x^2+x+w", 21);
    expect(
        &c,
        "x^18 + w^2*x^17 + w*x^16 + w*x^15 + x^12 + w*x^11 + w^2*x^10 + w^2*x^9 + w^2*x^6 + x^5 + w*x^4 + w^2*x + 1",
        4095,
        4077,
    );
    let (p, _) = q23_profile(2, 2, 6).unwrap();
    assert_eq!(&p.generator(c.tower()).unwrap(), c.generator());
}

#[test]
fn q23_quaternary_7() {
    let c = build(2, 2, 7, "x^7+x^4+x^2+w*x+w", 21);
    expect(
        &c,
        "x^22 + w^2*x^21 + w^2*x^19 + x^18 + x^16 + w^2*x^13 + w*x^12 + w*x^11 + w^2*x^10 + x^8 + w*x^7 \
         + x^6 + x^5 + w*x^3 + x + 1",
        16383,
        16361,
    );
}

#[test]
fn ternary_8() {
    let c = build(3, 1, 8, "x^8+2*x^5+x^4+2*x^2+2*x+2", 14);
    expect(
        &c,
        "x^57 + 2x^56 + x^55 + 2x^53 + 2x^52 + 2x^51 + x^50 + 2x^49 + 2x^48 + x^47 + x^41 + 2x^40 + 2x^39 \
         + 2x^36 + 2x^35 + 2x^33 + x^32 + 2x^31 + 2x^30 + x^26 + x^25 + x^24 + x^22 + x^21 + x^20 + x^19 \
         + x^17 + 2x^15 + 2x^14 + x^13 + x^12 + 2x^10 + x^9 + 2x^7 + 2x^6 + 2x^4 + 2x^3 + x + 2",
        6560,
        6503,
    );
    let (p, _) = ternary_h3_profile(8).unwrap();
    assert_eq!(&p.generator(c.tower()).unwrap(), c.generator());
}
