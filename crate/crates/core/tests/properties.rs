use proptest::prelude::*;
use sesq_core::darrow::{da_isomorphic, form_of_herm, q_of_form, GMode, MorphismSpace, Search};
use sesq_core::decide::{isometry_bruteforce, random_automorphism, trial_rng, DEFAULT_CAP};
use sesq_core::endoring::{congruence_decide, endo_of_form, transfer_along};
use sesq_core::fixtures::{round_trip_library, system};
use sesq_core::form::{is_isometry, random_elem, random_form};
use sesq_core::module::{dual_hom, dual_module, evaluation_map, hom_space, RightModule};
use sesq_core::{DAMorphism, Elem, Matrix};

fn library() -> Vec<RightModule> {
    round_trip_library()
}

fn random_hom(v: &RightModule, w: &RightModule, seed: u64) -> Matrix {
    let k = v.field();
    let hom = hom_space(v, w).unwrap();
    let mut rng = trial_rng(seed, 1);
    let c: Vec<Elem> = (0..hom.dim()).map(|_| random_elem(k, &mut rng)).collect();
    hom.combine(k, &c)
}

/// Pairs of library modules over the same algebra.
fn same_algebra_pairs() -> Vec<(RightModule, RightModule)> {
    let lib = library();
    let mut out = Vec::new();
    for a in &lib {
        for b in &lib {
            if a.same_algebra(b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_map_is_natural(pair in 0usize..1000, seed in any::<u64>()) {
        let pairs = same_algebra_pairs();
        let (v, w) = &pairs[pair % pairs.len()];
        let k = v.field();
        let t = random_hom(v, w, seed);
        let (vd, wd) = (dual_module(v), dual_module(w));
        let (vdd, wdd) = (dual_module(vd.module()), dual_module(wd.module()));
        let t_star = dual_hom(&t, &vd, &wd);
        let t_star_star = dual_hom(&t_star, &wdd, &vdd);
        let ev = evaluation_map(v, &vd, &vdd);
        let ew = evaluation_map(w, &wd, &wdd);
        prop_assert_eq!(ew.mul(k, &t), t_star_star.mul(k, &ev));
    }

    #[test]
    fn dual_reverses_composition(a in 0usize..1000, b in 0usize..1000, seed in any::<u64>()) {
        let pairs = same_algebra_pairs();
        let (u_src, v) = &pairs[a % pairs.len()];
        let lib = library();
        let targets: Vec<_> = lib.iter().filter(|w| w.same_algebra(v)).collect();
        let w = targets[b % targets.len()];
        let k = v.field();
        let u = random_hom(u_src, v, seed);
        let t = random_hom(v, w, seed.wrapping_add(1));
        let (ud, vd, wd) = (dual_module(u_src), dual_module(v), dual_module(w));
        let lhs = dual_hom(&t.mul(k, &u), &ud, &wd);
        let rhs = dual_hom(&u, &ud, &vd).mul(k, &dual_hom(&t, &vd, &wd));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn functor_round_trip(idx in 0usize..1000, seed in any::<u64>()) {
        let lib = library();
        let s = random_form(&lib[idx % lib.len()], seed, false, 1).unwrap();
        let q = q_of_form(&system(&s)).unwrap();
        let back = form_of_herm(&q.object, &q.duals, &q.eta, GMode::First).unwrap();
        prop_assert_eq!(&back.forms()[0], &s);
        let second = form_of_herm(&q.object, &q.duals, &q.eta, GMode::Second).unwrap();
        prop_assert_eq!(&second.forms()[0], &s.sigma_transpose());
    }

    #[test]
    fn transported_forms_are_isometric(idx in 0usize..1000, seed in any::<u64>()) {
        let lib = library();
        let v = &lib[idx % lib.len()];
        prop_assume!(v.dim() <= 2);
        let s = random_form(v, seed, false, 1).unwrap();
        let mut rng = trial_rng(seed, 2);
        let phi = random_automorphism(v, &mut rng);
        let t = s.transport(&phi, v).unwrap();
        prop_assert!(is_isometry(&s, &t, &phi));
        let st = isometry_bruteforce(&system(&s), &system(&t), DEFAULT_CAP).unwrap();
        let ts = isometry_bruteforce(&system(&t), &system(&s), DEFAULT_CAP).unwrap();
        let phi_st = st.verdict.witness().expect("s ≅ t").clone();
        let phi_ts = ts.verdict.witness().expect("t ≅ s").clone();
        prop_assert!(is_isometry(&s, &t, &phi_st));
        prop_assert!(is_isometry(&t, &s, &phi_ts));
        prop_assert!(is_isometry(&s, &s, &phi_ts.mul(v.field(), &phi_st)));
    }

    #[test]
    fn morphisms_compose(idx in 0usize..1000, seed in any::<u64>()) {
        let lib = library();
        let v = &lib[idx % lib.len()];
        let k = v.field();
        let s = random_form(v, seed, false, 1).unwrap();
        let q = q_of_form(&system(&s)).unwrap();
        let space = MorphismSpace::new(&q.object, &q.object).unwrap();
        let mut rng = trial_rng(seed, 3);
        let mut draw = || {
            let c: Vec<Elem> = (0..space.dim()).map(|_| random_elem(k, &mut rng)).collect();
            space.combine(k, &c)
        };
        let (a, b) = (draw(), draw());
        let ab = a.compose(k, &b);
        prop_assert!(space.coords(k, &ab).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The class `η₀⁻¹ η_M` changes only by congruence when the chosen
    /// isomorphism `q(s) → Q₀` is twisted by an automorphism.
    #[test]
    fn transfer_class_is_independent_of_the_isomorphism(idx in 0usize..1000, seed in any::<u64>()) {
        let lib: Vec<_> = library().into_iter().filter(|m| m.dim() <= 2).collect();
        let v = &lib[idx % lib.len()];
        let k = v.field().clone();
        let s = random_form(v, seed, false, 1).unwrap();
        let mut rng = trial_rng(seed, 4);
        let phi = random_automorphism(v, &mut rng);
        let t = s.transport(&phi, v).unwrap();
        let q0 = q_of_form(&system(&s)).unwrap();
        let qt = q_of_form(&system(&t)).unwrap();
        let e = endo_of_form(&q0).unwrap();
        let alg = e.to_algebra().unwrap();
        let iso = match da_isomorphic(&qt.object, &q0.object, DEFAULT_CAP, 0, 0).unwrap() {
            Search::Found(iso) => iso,
            other => return Err(TestCaseError::fail(format!("no isomorphism: {other:?}"))),
        };
        let auts = MorphismSpace::new(&qt.object, &qt.object).unwrap();
        let twist: DAMorphism = loop {
            let c: Vec<Elem> = (0..auts.dim()).map(|_| random_elem(&k, &mut rng)).collect();
            let m = auts.combine(&k, &c);
            if m.is_invertible(&k) {
                break m;
            }
        };
        let f1 = transfer_along(qt.clone(), &q0, &e, iso.clone()).unwrap().class;
        let f2 = transfer_along(qt, &q0, &e, iso.compose(&k, &twist)).unwrap().class;
        prop_assert!(congruence_decide(&alg, &f1, &f2, DEFAULT_CAP).unwrap().is_some());
    }
}
