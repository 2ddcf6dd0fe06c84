//! Sampling verifiers: powers of the ghost ideal against ⟨Acyc⟩ for complexes,
//! and composites of FP-ghosts against ⟨Inj⟩ for modules.
//!
//! Samples are independent and seeded per case (`seed`, index), so the reports
//! do not depend on how the work is scheduled.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::acyclic::factors_through_acyclic;
use super::{basic_modules, chain_ghost_basis, compose_power_chain, compose_power_module, module_ghost_basis, TestSet};
use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::projective::{factors_through_injective, global_dimension, projective_resolution, ProjDim, DIM_CAP};
use crate::algebra::Algebra;
use crate::complex::random::{random_coeffs, random_complex};
use crate::complex::{ChainMap, Complex};
use crate::error::Result;
use crate::linalg::Mat;
use crate::oracle::{witness_search_ghost_not_acyclic, SearchBudget};

/// The generator for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Global dimension, with semisimple algebras without a radical reported as 0.
pub fn global_dim(alg: &Arc<Algebra>) -> Result<ProjDim> {
    if alg.radical().is_none() && alg.is_semisimple()? {
        return Ok(ProjDim::Finite { value: 0 });
    }
    global_dimension(alg, DIM_CAP)
}

/// A direct sum of `1..=max_parts` modules from the pool.
pub fn random_module<R: Rng>(rng: &mut R, alg: &Arc<Algebra>, pool: &[Module], max_parts: usize) -> Module {
    let k = rng.gen_range(1..=max_parts);
    let parts: Vec<&Module> = (0..k).map(|_| pool.choose(rng).expect("nonempty pool")).collect();
    Module::direct_sum(alg, &parts).module
}

/// A random bounded complex: either random differentials on random objects, or
/// a shifted truncated projective resolution of a pool module.
pub fn random_test_complex<R: Rng>(rng: &mut R, alg: &Arc<Algebra>, pool: &[Module]) -> Result<Complex> {
    let lo = rng.gen_range(0..=1);
    if alg.radical().is_some() && rng.gen_bool(0.3) {
        let m = pool.choose(rng).expect("nonempty pool");
        let len = rng.gen_range(0..=2);
        let res = projective_resolution(m, len)?;
        let objects: Vec<Module> = res.modules.clone();
        let mut diffs = vec![Mat::zeros(alg.field(), 0, objects[0].dim())];
        diffs.extend(res.diffs.iter().map(|d| d.mat.clone()));
        return Ok(Complex::new(alg, 0, objects, diffs)?.shift(lo));
    }
    let len = rng.gen_range(1..=3);
    let objects: Vec<Module> = (0..len).map(|_| random_module(rng, alg, pool, 2)).collect();
    Ok(random_complex(rng, lo, &objects))
}

/// A random bounded complex of projectives.
pub fn random_projective_complex<R: Rng>(rng: &mut R, alg: &Arc<Algebra>, projectives: &[Module]) -> Complex {
    let len = rng.gen_range(1..=3);
    let lo = rng.gen_range(0..=1);
    let objects: Vec<Module> = (0..len).map(|_| random_module(rng, alg, projectives, 2)).collect();
    random_complex(rng, lo, &objects)
}

/// A uniformly random ghost `X -> Y`.
pub fn random_ghost<R: Rng>(rng: &mut R, x: &Complex, y: &Complex) -> ChainMap {
    let basis = chain_ghost_basis(x, y);
    let c = random_coeffs(rng, x.field().p(), basis.len());
    let mut acc = ChainMap::zero(x, y);
    for (b, v) in basis.iter().zip(c) {
        if v != 0 {
            acc = acc.add(&b.scale(v)).expect("parallel maps");
        }
    }
    acc
}

/// A uniformly random `S`-ghost `M -> N`.
pub fn random_module_ghost<R: Rng>(rng: &mut R, m: &Module, n: &Module, set: &TestSet<Module>) -> Result<ModuleMap> {
    let basis = module_ghost_basis(m, n, set)?;
    let c = random_coeffs(rng, m.field().p(), basis.len());
    let mut acc = ModuleMap::zero(m, n);
    for (b, v) in basis.iter().zip(c) {
        if v != 0 {
            acc = acc.add(&b.scale(v))?;
        }
    }
    Ok(acc)
}

/// One sampled composite of `factors` random ghosts between random complexes.
pub fn sample_ghost_composite(alg: &Arc<Algebra>, pool: &[Module], factors: usize, rng: &mut ChaCha8Rng) -> Result<ChainMap> {
    let mut objects = vec![random_test_complex(rng, alg, pool)?];
    let mut maps = Vec::new();
    for _ in 0..factors {
        let y = random_test_complex(rng, alg, pool)?;
        maps.push(random_ghost(rng, objects.last().expect("nonempty"), &y));
        objects.push(y);
    }
    Ok(compose_power_chain(&maps)?.map)
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub status: String,
    pub factors: usize,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
}

/// Report of [`ggh_verify`].
#[derive(Clone, Debug, Serialize)]
pub struct GghReport {
    pub operation: String,
    pub algebra: String,
    pub n: usize,
    pub global_dimension: String,
    pub seed: u64,
    pub samples: usize,
    pub nonzero_composites: usize,
    pub factoring: usize,
    pub fraction: f64,
    /// True when `gl.dim <= n`, so every composite must factor.
    pub expect_all: bool,
    /// Sample indices that failed although `expect_all` holds.
    pub defects: Vec<usize>,
    pub converse: Option<WitnessSummary>,
    pub budget: SearchBudget,
}

impl GghReport {
    pub fn passed(&self) -> bool {
        if self.expect_all {
            self.defects.is_empty() && self.factoring == self.samples
        } else {
            self.converse.as_ref().is_some_and(|w| w.status == "found")
        }
    }
}

/// Samples `(n+1)`-fold ghost composites and tests membership in ⟨Acyc⟩; when
/// `gl.dim > n` also searches for a composite outside it.
pub fn ggh_verify(alg: &Arc<Algebra>, n: usize, samples: usize, seed: u64, budget: &SearchBudget) -> Result<GghReport> {
    let gl = global_dim(alg)?;
    let pool = basic_modules(alg)?;
    let results: Vec<(bool, bool)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let comp = sample_ghost_composite(alg, &pool, n + 1, &mut rng)?;
            Ok((!comp.is_zero(), factors_through_acyclic(&comp)?.is_some()))
        })
        .collect::<Result<_>>()?;
    let factoring = results.iter().filter(|r| r.1).count();
    let expect_all = gl.at_most(n);
    let defects = if expect_all { results.iter().enumerate().filter(|(_, r)| !r.1).map(|(i, _)| i).collect() } else { vec![] };
    let converse = if expect_all {
        None
    } else {
        let s = witness_search_ghost_not_acyclic(alg, n + 1, budget)?;
        Some(match s.found() {
            Some(w) => WitnessSummary {
                status: "found".into(),
                factors: w.factors.len(),
                source_dims: w.composite.source.dims(),
                target_dims: w.composite.target.dims(),
            },
            None => WitnessSummary { status: s.label().into(), factors: n + 1, source_dims: vec![], target_dims: vec![] },
        })
    };
    Ok(GghReport {
        operation: "ggh verify".into(),
        algebra: alg.name().into(),
        n,
        global_dimension: gl.to_string(),
        seed,
        samples,
        nonzero_composites: results.iter().filter(|r| r.0).count(),
        factoring,
        fraction: if samples == 0 { 1.0 } else { factoring as f64 / samples as f64 },
        expect_all,
        defects,
        converse,
        budget: *budget,
    })
}

/// Report of [`psi_verify`].
#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub operation: String,
    pub algebra: String,
    pub n: usize,
    pub radical_nilpotency: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub nonzero_composites: usize,
    pub factoring: usize,
    pub fraction: f64,
    /// Whether the indecomposable list is complete, so FP-ghost verdicts are decisive.
    pub decisive: bool,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.factoring == self.samples
    }
}

/// Samples composable `n`-tuples of FP-ghosts between sums of indecomposables
/// and checks that each composite factors through an injective.
pub fn psi_verify(alg: &Arc<Algebra>, n: usize, samples: usize, seed: u64, indecs: &TestSet<Module>) -> Result<PsiReport> {
    let results: Vec<(bool, bool)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let mut current = random_module(&mut rng, alg, &indecs.members, 3);
            let mut maps = Vec::new();
            for _ in 0..n {
                let next = random_module(&mut rng, alg, &indecs.members, 3);
                maps.push(random_module_ghost(&mut rng, &current, &next, indecs)?);
                current = next;
            }
            let comp = compose_power_module(&maps, indecs)?.map;
            Ok((!comp.is_zero(), factors_through_injective(&comp)?.is_some()))
        })
        .collect::<Result<_>>()?;
    let factoring = results.iter().filter(|r| r.1).count();
    let nilpotency = alg.radical().map(|_| alg.radical_powers().map(|v| v.len())).transpose()?;
    Ok(PsiReport {
        operation: "psi verify".into(),
        algebra: alg.name().into(),
        n,
        radical_nilpotency: nilpotency,
        seed,
        samples,
        nonzero_composites: results.iter().filter(|r| r.0).count(),
        factoring,
        fraction: if samples == 0 { 1.0 } else { factoring as f64 / samples as f64 },
        decisive: indecs.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;

    fn small() -> SearchBudget {
        SearchBudget { max_middle_dim: 6, max_enumerated_maps: 20_000, time_cap_seconds: 60, seed: 0 }
    }

    #[test]
    fn field_single_ghosts_factor() {
        let r = ggh_verify(&field(2), 0, 20, 1, &small()).unwrap();
        assert!(r.expect_all && r.passed(), "{r:?}");
    }

    #[test]
    fn a2_double_composites_factor_and_singles_have_a_witness() {
        let a = a2(2);
        assert!(ggh_verify(&a, 1, 20, 2, &small()).unwrap().passed());
        let single = ggh_verify(&a, 0, 5, 2, &small()).unwrap();
        assert!(!single.expect_all);
        assert_eq!(single.converse.unwrap().status, "found");
    }

    #[test]
    fn psi_on_dual_numbers() {
        let d = dual_numbers(2);
        let indecs = TestSet::complete(basic_modules(&d).unwrap());
        let r = psi_verify(&d, 2, 20, 3, &indecs).unwrap();
        assert!(r.passed());
        assert_eq!(r.radical_nilpotency, Some(2));
    }
}
