use std::sync::Arc;

use proptest::prelude::*;

use cyclocode::closed_forms::{count_nt, gcd_identity_plus_one, gcd_identity_tower, kasami_profile, kasami_regime, EpsilonTable};
use cyclocode::code::{bch_bound, code_from_sequence, dual, min_distance, sphere_packing_ceiling, DistanceConfig};
use cyclocode::cyclotomic::partition;
use cyclocode::field::Field;
use cyclocode::poly::Poly;
use cyclocode::sequence::{expand_symbolic, generate, span_from_expansion, span_from_sequence, MonomialFunction};
use cyclocode::tower::Tower;

/// Small towers `(p, s, m)`.
fn small_tower() -> impl Strategy<Value = (u32, u32, u32)> {
    prop_oneof![
        (Just(2u32), Just(1u32), 2u32..=8),
        (Just(3u32), Just(1u32), 2u32..=5),
        (Just(5u32), Just(1u32), 2u32..=3),
        (Just(2u32), Just(2u32), 2u32..=4),
        (Just(3u32), Just(2u32), 2u32..=2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_laws((p, deg) in prop_oneof![(Just(2u32), 1u32..=10), (Just(3u32), 1u32..=6), (Just(7u32), 1u32..=3)],
                  a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::with_default_poly(p, deg).unwrap();
        let o = f.order() as u32;
        let (a, b, c) = (a % o, b % o, c % o);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.frobenius(a, deg), a);
    }

    #[test]
    fn cosets_partition_the_residues((p, s, m) in small_tower()) {
        let q = (p as u64).pow(s);
        let n = q.pow(m) - 1;
        let part = partition(q, n).unwrap();
        let total: usize = part.cosets.values().map(|c| c.size()).sum();
        prop_assert_eq!(total as u64, n);
        for c in part.cosets.values() {
            prop_assert_eq!(c.members[0], c.leader);
            prop_assert_eq!(m as usize % c.size(), 0);
            prop_assert!(c.members.iter().all(|&i| part.leader_of(i) == c.leader && c.contains(i * q % n)));
        }
    }

    #[test]
    fn span_routes_agree((p, s, m) in small_tower(), d in 0u64..100_000) {
        let t = Arc::new(Tower::new(p, s, m, None, None).unwrap());
        let f = MonomialFunction::new(d, t.n(), "f");
        let seq = generate(&t, &f);
        let exp = expand_symbolic(&t, &f).unwrap();
        prop_assert_eq!(&exp.reconstruct(&t).unwrap(), &seq);
        let sym = span_from_expansion(&t, &exp).unwrap();
        let bm = span_from_sequence(&t, &seq).unwrap();
        prop_assert_eq!(sym.span, bm.span);
        prop_assert_eq!(&sym.monic_form, &bm.monic_form);
        prop_assert_eq!(sym.monic_form.degree().unwrap_or(0), sym.span);
    }

    #[test]
    fn code_invariants((p, s, m) in prop_oneof![(Just(2u32), Just(1u32), 3u32..=6), (Just(3u32), Just(1u32), 2u32..=3), (Just(2u32), Just(2u32), 2u32..=2)],
                       d in 1u64..5_000) {
        let t = Arc::new(Tower::new(p, s, m, None, None).unwrap());
        let f = MonomialFunction::new(d, t.n(), "f");
        let seq = generate(&t, &f);
        prop_assume!(!seq.is_zero());
        let code = code_from_sequence(t.clone(), &seq).unwrap();
        let base = t.base();
        let xn = Poly::x_n_minus_one(base, code.n());
        prop_assert!(xn.rem(base, code.generator()).unwrap().is_zero());
        let back = dual(&dual(&code));
        prop_assert_eq!(back.generator(), code.generator());
        prop_assert_eq!(dual(&code).k(), code.n() - code.k());
        let rec = min_distance(&code, &DistanceConfig::default());
        if rec.exact && code.k() > 0 {
            prop_assert!(bch_bound(&code) <= rec.lower);
            prop_assert!(rec.lower <= sphere_packing_ceiling(code.n() as u64, code.k() as u64, code.q()));
        }
    }

    #[test]
    fn gcd_identities_hold(q in prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(7), Just(8)], m in 1u32..=14, h in 1u32..=14,
                           a in 2u64..=9, l in 1u32..=12) {
        prop_assert!(gcd_identity_tower(q, m, h).is_ok());
        prop_assert!(gcd_identity_plus_one(a, l, h.min(12)).is_ok());
    }

    #[test]
    fn epsilon_table(t in 1u32..=14) {
        let table = EpsilonTable::new(t);
        for (&a, &(eps, kappa)) in &table.entries {
            prop_assert_eq!(kappa, eps % 2);
            prop_assert!(a << (eps - 1) <= table.big_t && a << eps > table.big_t);
        }
        prop_assert_eq!(table.odd_count(), count_nt(t));
    }

    #[test]
    fn low_regime_profiles_are_consistent(m in 4u32..=20, h in 1u32..=5) {
        prop_assume!(kasami_regime(m, h).is_some_and(|r| r.name() == "low"));
        let profile = kasami_profile(m, h).unwrap();
        prop_assert!(profile.is_consistent());
        prop_assert!(profile.size_mismatches().is_empty());
        prop_assert_eq!(profile.x_minus_one, m % 2);
    }
}
