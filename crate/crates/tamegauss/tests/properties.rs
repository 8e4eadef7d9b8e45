use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tamegauss::exactnum::arith::gcd;
use tamegauss::exactnum::ring::Ring;
use tamegauss::exactnum::unram::effective_log_precision;
use tamegauss::exactnum::{RootOfUnity, UnramInt, UnramRing};
use tamegauss::gauss::{gauss_abelian, gauss_with_unit, NonabelianGauss};
use tamegauss::groups::characters::induce_between;
use tamegauss::groups::{brauer_subgroups, induce, linear_characters, CharTable, MetacyclicGroup, VirtualChar};
use tamegauss::krings::{self, star};
use tamegauss::lattices::{build_nib, group_ring_inverse};
use tamegauss::localfields::{artin_dict, FieldDesc, MulChar, TameExtDesc, UnitGroupPres};
use tamegauss::suite::{run_suite, Config, FamilySpec, SuiteName};
use tamegauss::tower::{homw_check_linear, tau_tower_linear, TypeWChar};
use tamegauss::Cyc;

const LEVELS: [u64; 7] = [3, 4, 5, 8, 9, 12, 15];
const FAMILIES: [(u64, u64, u64); 4] = [(3, 4, 2), (5, 3, 2), (3, 13, 3), (7, 9, 3)];

fn cyc(level: u64, coeffs: &[i64]) -> Cyc {
    Cyc::from_dense(level, coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

fn cyc_triple() -> impl Strategy<Value = (u64, Cyc, Cyc, Cyc)> {
    prop::sample::select(LEVELS.to_vec()).prop_flat_map(|l| {
        let v = prop::collection::vec(-5i64..6, l as usize);
        (Just(l), v.clone(), v.clone(), v).prop_map(|(l, a, b, c)| (l, cyc(l, &a), cyc(l, &b), cyc(l, &c)))
    })
}

fn unram_triple() -> impl Strategy<Value = (Arc<UnramRing>, UnramInt, UnramInt, UnramInt)> {
    (prop::sample::select(vec![3u64, 5]), 1u32..4).prop_flat_map(|(p, f)| {
        let v = prop::collection::vec(-1000i128..1000, f as usize);
        (Just((p, f)), v.clone(), v.clone(), v).prop_map(|((p, f), a, b, c)| {
            let r = UnramRing::get(p, f, 6).unwrap();
            let (x, y, z) = (r.element(6, &a), r.element(6, &b), r.element(6, &c));
            (r, x, y, z)
        })
    })
}

fn table(i: usize) -> Arc<CharTable> {
    let (p, e, f) = FAMILIES[i];
    Arc::new(CharTable::new(Arc::new(MetacyclicGroup::new(p, e, f).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms((_l, a, b, c) in cyc_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn galois_action_is_a_ring_map((l, a, b, _c) in cyc_triple(), k in 1i64..60) {
        prop_assert_eq!(a.galois(1).unwrap(), a.clone());
        let k = (1..).map(|j| k + j - 1).find(|&j| gcd(j as u64, l) == 1).unwrap();
        let lhs = (&a * &b).galois(k).unwrap();
        prop_assert_eq!(lhs, &a.galois(k).unwrap() * &b.galois(k).unwrap());
    }

    #[test]
    fn complex_embedding_agrees((_l, a, b, _c) in cyc_triple()) {
        let exact = (&a * &b).to_complex();
        let approx = a.to_complex() * b.to_complex();
        prop_assert!((exact - approx).norm() <= 1e-9 * (1.0 + exact.norm()));
    }

    #[test]
    fn unramified_ring_axioms((r, a, b, c) in unram_triple()) {
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
    }

    #[test]
    fn frobenius_has_order_f((r, a, b, _c) in unram_triple()) {
        let f = a.coeffs().len() as u32;
        prop_assert_eq!(r.frobenius_pow(&a, f), a.clone());
        prop_assert_eq!(r.frobenius(&r.mul(&a, &b)), r.mul(&r.frobenius(&a), &r.frobenius(&b)));
    }

    #[test]
    fn log_is_additive((r, a, b, _c) in unram_triple()) {
        let one = r.element(6, &[1]);
        let u = r.add(&one, &r.mul_p(&a));
        let v = r.add(&one, &r.mul_p(&b));
        let luv = r.log(&r.mul(&u, &v)).unwrap();
        let sum = r.add(&r.log(&u).unwrap().value, &r.log(&v).unwrap().value);
        let n = luv.effective_prec;
        prop_assert_eq!(n, effective_log_precision(6, r.p));
        prop_assert_eq!(r.at_prec(&luv.value, n), r.at_prec(&sum, n));
    }

    #[test]
    fn unit_group_dlog_round_trip(p in prop::sample::select(vec![3u64, 5]), f in 1u32..3, m in 1u32..4, seed: u64) {
        let pres = UnitGroupPres::get(FieldDesc::new(p, f).unwrap(), m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exps: Vec<u64> = pres.orders.iter().map(|&o| rand::Rng::gen_range(&mut rng, 0..o)).collect();
        prop_assert_eq!(pres.dlog(&pres.element(&exps)).unwrap(), exps);
        prop_assert_eq!(pres.size(), (pres.field.q - 1) * pres.field.q.pow(m - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orthogonality(i in 0..FAMILIES.len()) {
        let t = table(i);
        let n = t.len();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(t.inner(&t.irr[a].values, &t.irr[b].values).unwrap(), (a == b) as i64);
            }
        }
        let g = &t.group;
        for x in g.elements().step_by(3) {
            for y in g.elements().step_by(5) {
                let s = t.irr.iter().fold(Cyc::zero(1), |acc, c| &acc + &(&c.values.value(x) * &c.values.value(y).conj()));
                let centraliser = g.elements().filter(|&h| g.mul(h, x) == g.mul(x, h)).count() as i64;
                let expect = if t.class_of[x] == t.class_of[y] { centraliser } else { 0 };
                prop_assert_eq!(s.normalized(), Cyc::from_int(expect));
            }
        }
    }

    #[test]
    fn degree_zero_decompositions_recompose(i in 0..FAMILIES.len(), coeffs in prop::collection::vec(-3i64..4, 16)) {
        let t = table(i);
        let ng = NonabelianGauss::new(TameExtDesc::over_qp(FAMILIES[i].0, FAMILIES[i].1, FAMILIES[i].2).unwrap()).unwrap();
        let v = VirtualChar { coeffs: (0..t.len()).map(|j| coeffs[j % coeffs.len()]).collect() };
        let v0 = ng.degree_zero(&v);
        let d = ng.decompose(&v).unwrap();
        prop_assert!(d.recompose(&t).same_values(&t.class_fn(&v0)));
    }

    #[test]
    fn determinants_are_multiplicative(i in 0..FAMILIES.len(), a: prop::sample::Index, b: prop::sample::Index) {
        let t = table(i);
        let g = &t.group;
        let (x, y) = (a.index(g.order()), b.index(g.order()));
        for chi in &t.irr {
            prop_assert_eq!(chi.det(g.mul(x, y)), chi.det(x).mul(&chi.det(y)));
        }
    }

    #[test]
    fn induction_is_transitive(i in 0..FAMILIES.len(), pick: prop::sample::Index, lam: prop::sample::Index) {
        let t = table(i);
        let subs = brauer_subgroups(&t.group, true, true);
        let chains: Vec<_> = subs.iter().flat_map(|u| subs.iter().filter(move |v| u.is_subgroup_of(v)).map(move |v| (u, v))).collect();
        let (u, v) = chains[pick.index(chains.len())];
        let chars = linear_characters(u, t.level);
        let vals = chars[lam.index(chars.len())].values();
        let direct = induce(u, &vals, t.level);
        let staged = induce(v, &induce_between(u, v, &vals), t.level);
        prop_assert!(direct.same_values(&staged));
    }

    #[test]
    fn artin_transport_respects_products(i in 0..FAMILIES.len(), a: prop::sample::Index, b: prop::sample::Index) {
        let (p, e, f) = FAMILIES[i];
        let ext = TameExtDesc::over_qp(p, e, f).unwrap();
        let t = CharTable::new(ext.group.clone());
        let subs = brauer_subgroups(&ext.group, false, true);
        let u = &subs[a.index(subs.len())];
        let chars = linear_characters(u, t.level);
        let (x, y) = (&chars[a.index(chars.len())], &chars[b.index(chars.len())]);
        let lhs = artin_dict(&ext, &x.mul(y)).unwrap();
        let rhs = artin_dict(&ext, x).unwrap().mul(&artin_dict(&ext, y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

fn any_char(p: u64, f: u32, m: u32, idx: usize) -> MulChar {
    let all = MulChar::enumerate(FieldDesc::new(p, f).unwrap(), m, RootOfUnity::one()).unwrap();
    all[idx % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conductors_of_products(p in prop::sample::select(vec![3u64, 5]), f in 1u32..3, a in 0usize..10_000, b in 0usize..10_000, o in 1u64..9, j in 0u64..9) {
        let x = any_char(p, f, 3, a);
        let y = any_char(p, f, 2, b);
        let (cx, cy) = (x.conductor(), y.conductor());
        let cxy = x.mul(&y).conductor();
        prop_assert!(cxy <= cx.max(cy));
        if cx != cy {
            prop_assert_eq!(cxy, cx.max(cy));
        }
        let rho = MulChar::unramified(x.field, RootOfUnity::new(o, j as i64));
        prop_assert_eq!(x.mul(&rho).conductor(), cx);
    }

    #[test]
    fn gauss_sums_are_nonzero_and_unit_independent(p in prop::sample::select(vec![3u64, 5]), f in 1u32..3, a in 0usize..10_000, seed: u64) {
        let chi = any_char(p, f, 2, a);
        let tau = gauss_abelian(&chi).unwrap().value;
        prop_assert!(!tau.is_zero());
        if chi.conductor() > 0 {
            let pres = UnitGroupPres::get(chi.field, chi.conductor()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let exps: Vec<u64> = pres.orders.iter().map(|&o| rand::Rng::gen_range(&mut rng, 0..o)).collect();
            prop_assert_eq!(gauss_with_unit(&chi, &pres.element(&exps)).unwrap(), tau);
        }
    }

    #[test]
    fn tower_exponent_is_twist_invariant(p in prop::sample::select(vec![3u64, 5]), f in 1u32..3, a in 0usize..10_000, r in 0u64..25) {
        let chi = any_char(p, f, 2, a);
        let rho = TypeWChar::new(p, RootOfUnity::new(p * p, r as i64)).unwrap();
        let (lhs, rhs) = homw_check_linear(&chi, &rho).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.exponent, tau_tower_linear(&chi).unwrap().exponent);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn basis_criteria_agree(p in prop::sample::select(vec![3u64, 5]), f in 1u32..3, n in 1usize..3, seed: u64) {
        let s = build_nib(p, f, n, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let x = s.random_element(n, &mut rng);
            prop_assert_eq!(s.trace_criterion(n, &x), s.circulant_criterion(n, &x));
        }
        for (_, x) in s.corrupted(n) {
            prop_assert!(!s.trace_criterion(n, &x) && !s.circulant_criterion(n, &x));
        }
    }

    #[test]
    fn group_ring_units_are_nonzero_augmentation(seed: u64, zero_aug: bool) {
        let (p, n) = (3u64, 1usize);
        let s = build_nib(p, 1, n, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = &s.tower;
        let mut x: Vec<Vec<u32>> = (0..p as usize).map(|_| s.random_element(n, &mut rng)).collect();
        if zero_aug {
            let rest = x[1..].iter().fold(t.zero(n), |acc, c| t.add(n, &acc, c));
            x[0] = t.sub(n, &t.zero(n), &rest);
        }
        let aug = x.iter().fold(t.zero(n), |acc, c| t.add(n, &acc, c));
        prop_assert_eq!(group_ring_inverse(&s, n, &x).is_some(), !t.is_zero(&aug));
    }

    #[test]
    fn reduced_norms_are_multiplicative(i in 0..2usize, seed: u64) {
        let (p, e, f) = FAMILIES[i];
        let t = CharTable::new(krings::layer_group(p, 1, e, f, 1).unwrap());
        let ring = krings::CycGroupRing::new(t.group.clone(), tamegauss::exactnum::CycRing::default());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = krings::random_integral(&t.group, &mut rng);
        let y = krings::random_integral(&t.group, &mut rng);
        let nxy = krings::nrd(&t, &ring.mul(&x, &y));
        let (nx, ny) = (krings::nrd(&t, &x), krings::nrd(&t, &y));
        for k in 0..t.len() {
            prop_assert_eq!(&nxy[k], &(&nx[k] * &ny[k]).normalized());
        }
        let g = rand::Rng::gen_range(&mut rng, 0..t.group.order());
        for c in krings::nrd(&t, &krings::element(&t.group, g)) {
            prop_assert!(krings::is_p_unit(&c, p));
        }
    }

    #[test]
    fn star_agrees_off_zero(vals in prop::collection::vec(-2i64..3, 1..12)) {
        let comps: Vec<Cyc> = vals.iter().map(|&v| Cyc::from_int(v)).collect();
        let s = star(&comps);
        prop_assert!(s.consistent());
        for (c, v) in s.components.iter().zip(&vals) {
            prop_assert!(c.inverse().is_some());
            if *v != 0 {
                prop_assert_eq!(c, &Cyc::from_int(*v));
            }
        }
    }

    #[test]
    fn correction_verdict_is_stable(i in 0..2usize, n in 0u32..2, lo in 2u32..7, extra in 1u32..4) {
        let (p, e, f) = FAMILIES[i];
        let r = krings::correction_layer_check(p, e, f, n, [lo, lo + extra]).unwrap();
        prop_assert!(r.stable);
        prop_assert_eq!(r.invertible[0], r.invertible[1]);
        prop_assert!(r.pass());
    }

    #[test]
    fn config_family_rules(p in prop::sample::select(vec![3u64, 5, 7]), e in 1u64..30, f in 1u64..4) {
        let mut c = Config::default();
        c.families = vec![FamilySpec { p, e, f }];
        let ok = gcd(e, p) == 1 && (p.pow(f as u32) - 1) % e == 0;
        prop_assert_eq!(c.validate().is_ok(), ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_are_deterministic(seed: u64, jobs in 1usize..4) {
        let mut c = Config::default();
        c.seed = seed;
        c.primes = vec![3];
        c.residue_degrees = vec![2];
        c.conductor_max = 1;
        c.families = vec![FamilySpec { p: 3, e: 4, f: 2 }];
        c.gauss.checks = vec!["twist".into(), "unit_independence".into()];
        c.gauss.twist_samples = 6;
        let a = run_suite(SuiteName::Gauss, &c).unwrap();
        c.jobs = jobs;
        let b = run_suite(SuiteName::Gauss, &c).unwrap();
        prop_assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        prop_assert!(a.passed());
        prop_assert_eq!(a.passed(), a.records.iter().all(|r| r.verdict));
    }
}
