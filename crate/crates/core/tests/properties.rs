//! Randomized invariants across modules, complexes, Ext and splittings.

use std::sync::Arc;

use proptest::prelude::*;

use ghostforge::algebra::conflation::Conflation;
use ghostforge::algebra::ext::ExtSpace;
use ghostforge::algebra::standard::{a2, dual_numbers, field};
use ghostforge::algebra::Algebra;
use ghostforge::complex::ce::ComplexConflation;
use ghostforge::complex::homology::{homology_dims, homology_map, is_exact};
use ghostforge::complex::homotopy::Homotopy;
use ghostforge::complex::resolution::dg_projective_resolution;
use ghostforge::complex::random::{random_chain_map, random_map};
use ghostforge::complex::{cone, ChainMap};
use ghostforge::ghost::acyclic::factors_through_acyclic;
use ghostforge::ghost::verify::{case_rng, psi_verify, random_ghost, random_module, random_test_complex};
use ghostforge::ghost::TestSet;
use ghostforge::ghost::{basic_modules, is_ghost_chain};
use ghostforge::oracle::{brute_ext, rank_acyclic};
use ghostforge::splitting::{
    adjust_splitting, is_trivial_arrow_conflation, random_morphism, random_trivial_conflation,
};

fn algebra(k: usize) -> Arc<Algebra> {
    [field(2), dual_numbers(2), a2(2)][k % 3].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_of_homology(k in 0usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let x = random_test_complex(&mut case_rng(seed, 0), &alg, &pool).unwrap();
        let sign = |n: i64| if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let chi: i64 = x.degrees().map(|n| sign(n) * x.dim(n) as i64).sum();
        let chi_h: i64 = homology_dims(&x).iter().map(|&(n, d)| sign(n) * d as i64).sum();
        prop_assert_eq!(chi, chi_h);
        prop_assert_eq!(is_exact(&x), rank_acyclic(&x));
    }

    #[test]
    fn shifts_and_cones(k in 0usize..3, seed in any::<u64>(), s in -3i64..=3) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let x = random_test_complex(&mut case_rng(seed, 1), &alg, &pool).unwrap();
        prop_assert_eq!(x.shift(s).shift(-s), x.clone());
        let c = cone(&ChainMap::identity(&x));
        prop_assert!(rank_acyclic(&c.complex));
        prop_assert!(c.proj.after(&c.incl).is_zero());
    }

    #[test]
    fn ghosts_compose_to_ghosts_and_witnesses_verify(k in 0usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let mut rng = case_rng(seed, 2);
        let x = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let y = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let z = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let f = random_ghost(&mut rng, &x, &y);
        let g = random_chain_map(&mut rng, &y, &z);
        prop_assert!(is_ghost_chain(&f).is_some());
        prop_assert!(is_ghost_chain(&g.after(&f)).is_some());
        if let Some(w) = factors_through_acyclic(&g.after(&f)).unwrap() {
            prop_assert!(w.verify_acyclic(&g.after(&f)));
        }
    }

    #[test]
    fn ext_dimension_matches_enumeration(k in 1usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let mut rng = case_rng(seed, 3);
        let c = random_module(&mut rng, &alg, &pool, 1);
        let a = random_module(&mut rng, &alg, &pool, 2);
        prop_assume!(a.dim() + c.dim() <= 4);
        let ext = ExtSpace::new(&c, &a).unwrap();
        prop_assert_eq!(Some(ext.dim()), brute_ext(&c, &a).unwrap().dim);
        for b in ext.basis() {
            let xi = ext.to_conflation(&b).unwrap();
            prop_assert_eq!(ext.from_conflation(&xi).unwrap(), b);
        }
    }

    #[test]
    fn adjustments_compose_additively(k in 0usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let mut rng = case_rng(seed, 4);
        let a = random_module(&mut rng, &alg, &pool, 2);
        let c = random_module(&mut rng, &alg, &pool, 2);
        let xi: Conflation = random_trivial_conflation(&mut rng, &a, &c);
        let sp = xi.splitting().unwrap();
        let d1 = random_map(&mut rng, &c, &a).mat;
        let d2 = random_map(&mut rng, &c, &a).mat;
        let twice = adjust_splitting(&adjust_splitting(&sp, &d1).unwrap(), &d2).unwrap();
        let once = adjust_splitting(&sp, &d1.add(&d2)).unwrap();
        prop_assert_eq!(twice.r.mat, once.r.mat);
        prop_assert_eq!(twice.s.mat, once.s.mat);
    }

    #[test]
    fn arrow_triviality_does_not_depend_on_the_splittings(k in 0usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let mut rng = case_rng(seed, 5);
        let conf = |rng: &mut _| {
            let a = random_module(rng, &alg, &pool, 2);
            let c = random_module(rng, &alg, &pool, 2);
            random_trivial_conflation(rng, &a, &c)
        };
        let x = conf(&mut rng);
        let y = conf(&mut rng);
        let f = random_morphism(&mut rng, &x, &y);
        let (sx, sy) = (x.splitting().unwrap(), y.splitting().unwrap());
        let dx = random_map(&mut rng, x.cokernel_object(), x.kernel_object()).mat;
        let dy = random_map(&mut rng, y.cokernel_object(), y.kernel_object()).mat;
        let (tx, ty) = (adjust_splitting(&sx, &dx).unwrap(), adjust_splitting(&sy, &dy).unwrap());
        let first = is_trivial_arrow_conflation(&f, &sx, &sy).unwrap().is_some();
        let second = is_trivial_arrow_conflation(&f, &tx, &ty).unwrap().is_some();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn null_homotopic_maps_vanish_on_homology(k in 0usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let mut rng = case_rng(seed, 6);
        let x = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let y = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let lo = x.lo().min(y.lo()) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        let comps = (lo..=hi).map(|n| (n, random_map(&mut rng, x.obj(n), y.obj(n + 1)).mat)).collect();
        let s = Homotopy { source: x.clone(), target: y.clone(), maps: comps };
        let f = s.boundary();
        for n in lo..=hi {
            prop_assert!(homology_map(&f, n).is_zero());
        }
    }

    #[test]
    fn cone_conflations_split_degreewise(k in 0usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let mut rng = case_rng(seed, 7);
        let x = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let y = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let c = cone(&random_chain_map(&mut rng, &x, &y));
        prop_assert!(ComplexConflation::new(c.incl, c.proj).unwrap().is_degreewise_split());
    }

    #[test]
    fn dg_resolutions_are_quasi_isomorphisms_below_the_truncation(k in 1usize..3, seed in any::<u64>()) {
        let alg = algebra(k);
        let pool = basic_modules(&alg).unwrap();
        let x = random_test_complex(&mut case_rng(seed, 8), &alg, &pool).unwrap();
        let t = x.hi() + 2;
        let r = dg_projective_resolution(&x, t).unwrap();
        prop_assert!(r.complex.is_degreewise_projective().unwrap());
        for n in x.lo() - 1..t {
            prop_assert!(homology_map(&r.map, n).is_iso(), "H_{} not iso", n);
        }
    }
}

/// Long composites of FP-ghosts over the dual numbers land in ⟨Inj⟩ (the
/// one-sided containment checkable at finite length).
#[test]
fn long_fp_ghost_composites_factor_through_injectives() {
    let d = dual_numbers(2);
    let indecs = TestSet::complete(basic_modules(&d).unwrap());
    for n in 3..=5 {
        let r = psi_verify(&d, n, 60, 11, &indecs).unwrap();
        assert!(r.passed(), "n = {n}: {}/{}", r.factoring, r.samples);
    }
}
