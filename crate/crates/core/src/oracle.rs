//! Brute-force oracles over `F_2` at tiny dimensions.
//!
//! Nothing here calls the Ext or factorization fast paths: extensions are
//! enumerated as block-triangular module structures, module isomorphism is
//! decided by trying every invertible matrix, and factorizations are searched
//! over enumerated middle objects.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::conflation::Conflation;
use crate::algebra::hom::{solve_combination, HomSpace};
use crate::algebra::module::{from_representation, Module, ModuleMap};
use crate::algebra::projective::indec_injectives;
use crate::algebra::Algebra;
use crate::complex::homotopy::ChainHom;
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::ghost::acyclic::factors_through_acyclic;
use crate::ghost::{chain_ghost_basis, is_ghost_chain};
use crate::linalg::{all_vectors, Mat, PrimeField};

/// Explicit limits for every enumeration; recorded in each report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SearchBudget {
    pub max_middle_dim: usize,
    pub max_enumerated_maps: u64,
    pub time_cap_seconds: u64,
    pub seed: u64,
}

impl SearchBudget {
    /// The budget of the tiny cross-check suite: middles up to dimension 6.
    pub fn tiny() -> Self {
        Self { max_middle_dim: 6, max_enumerated_maps: 1 << 22, time_cap_seconds: 600, seed: 0 }
    }

    fn deadline(&self) -> Instant {
        Instant::now() + Duration::from_secs(self.time_cap_seconds)
    }
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Every candidate within the budget was examined.
    Exhausted,
    /// The budget ran out first; no conclusion.
    BudgetExceeded,
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Search::Found(_) => "found",
            Search::Exhausted => "exhausted",
            Search::BudgetExceeded => "budget exceeded",
        }
    }
}

fn require_f2(field: PrimeField) -> Result<()> {
    if field.p() != 2 {
        return Err(Error::Precondition("oracle enumerations run over F_2 only".into()));
    }
    Ok(())
}

fn mats_from_bits(field: PrimeField, rows: usize, cols: usize, count: usize, bits: &[u8]) -> Vec<Mat> {
    bits.chunks(rows * cols).take(count).map(|c| Mat::from_vec(field, rows, cols, c.to_vec())).collect()
}

/// Every module structure on `F_2^n`, up to isomorphism. Quiver algebras are
/// enumerated as representations (one matrix per arrow, every dimension
/// vector); other algebras by every action of the basis.
pub fn enumerate_modules(alg: &Arc<Algebra>, n: usize) -> Result<Vec<Module>> {
    let field = alg.field();
    require_f2(field)?;
    if n == 0 {
        return Ok(vec![Module::zero(alg.clone())]);
    }
    let mut out: Vec<Module> = Vec::new();
    let mut keep = |m: Module| {
        if !out.iter().any(|o| brute_isomorphic(o, &m)) {
            out.push(m);
        }
    };
    match alg.radical() {
        Some(rad) => {
            let arrows = &rad.quiver.arrows;
            for dims in dimension_vectors(rad.quiver.vertices.len(), n) {
                let sizes: Vec<(usize, usize)> = arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
                let total: usize = sizes.iter().map(|(r, c)| r * c).sum();
                for bits in all_vectors(field, total) {
                    let mut rest = bits.as_slice();
                    let mats: Vec<Mat> = sizes
                        .iter()
                        .map(|&(r, c)| {
                            let (head, tail) = rest.split_at(r * c);
                            rest = tail;
                            Mat::from_vec(field, r, c, head.to_vec())
                        })
                        .collect();
                    if let Ok(m) = from_representation(alg, &dims, &mats) {
                        keep(m);
                    }
                }
            }
        }
        None => {
            let d = alg.dim();
            for bits in all_vectors(field, d * n * n) {
                if let Ok(m) = Module::new(alg.clone(), mats_from_bits(field, n, n, d, &bits)) {
                    keep(m);
                }
            }
        }
    }
    Ok(out)
}

fn dimension_vectors(vertices: usize, n: usize) -> Vec<Vec<usize>> {
    if vertices == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=n)
        .flat_map(|first| {
            dimension_vectors(vertices - 1, n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Isomorphism by trying every invertible matrix.
pub fn brute_isomorphic(m: &Module, n: &Module) -> bool {
    if m.dim() != n.dim() {
        return false;
    }
    let d = m.dim();
    all_vectors(m.field(), d * d).any(|bits| {
        let t = Mat::from_vec(m.field(), d, d, bits);
        t.rank() == d && (0..m.algebra().dim()).all(|b| t.mul(m.act(b)) == n.act(b).mul(&t))
    })
}

/// Extension classes found by enumeration.
#[derive(Clone, Debug)]
pub struct BruteExt {
    pub classes: usize,
    /// `log_p` of the class count, when it is a power of `p`.
    pub dim: Option<usize>,
    pub representatives: Vec<Conflation>,
}

/// Enumerates all module structures on `A ⊕ C` of the form `[[a, φ], [0, c]]`
/// and counts them up to equivalence `φ ~ φ + h c - a h`.
pub fn brute_ext(c: &Module, a: &Module) -> Result<BruteExt> {
    let field = a.field();
    require_f2(field)?;
    if a.dim() + c.dim() > 4 {
        return Err(Error::Precondition("brute Ext needs dim A + dim C <= 4".into()));
    }
    let alg = a.algebra().clone();
    let (da, dc, d) = (a.dim(), c.dim(), alg.dim());
    let block = |phi: &[Mat], b: usize| {
        Mat::block(field, &[da, dc], &[da, dc], &[vec![Some(a.act(b)), Some(&phi[b])], vec![None, Some(c.act(b))]])
    };
    let mut valid: Vec<Vec<u8>> = Vec::new();
    for bits in all_vectors(field, d * da * dc) {
        let phi = mats_from_bits(field, da, dc, d, &bits);
        let action: Vec<Mat> = (0..d).map(|b| block(&phi, b)).collect();
        if Module::new(alg.clone(), action).is_ok() {
            valid.push(bits);
        }
    }
    valid.sort();
    let valid = valid;
    let index = |bits: &[u8]| valid.binary_search_by(|v| v.as_slice().cmp(bits)).ok();
    let mut parent: Vec<usize> = (0..valid.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let hs: Vec<Mat> = all_vectors(field, da * dc).map(|b| Mat::from_vec(field, da, dc, b)).collect();
    for k in 0..valid.len() {
        let phi = mats_from_bits(field, da, dc, d, &valid[k]);
        for h in &hs {
            let moved: Vec<u8> =
                (0..d).flat_map(|b| phi[b].add(&h.mul(c.act(b))).sub(&a.act(b).mul(h)).vectorize()).collect();
            if let Some(j) = index(&moved) {
                let (rk, rj) = (root(&mut parent, k), root(&mut parent, j));
                parent[rk.max(rj)] = rk.min(rj);
            }
        }
    }
    let mut reps = Vec::new();
    for k in 0..valid.len() {
        if root(&mut parent, k) == k {
            let phi = mats_from_bits(field, da, dc, d, &valid[k]);
            let middle = Module::new(alg.clone(), (0..d).map(|b| block(&phi, b)).collect())?;
            let mut im = Mat::zeros(field, da + dc, da);
            im.paste(0, 0, &Mat::identity(field, da));
            let mut pm = Mat::zeros(field, dc, da + dc);
            pm.paste(0, da, &Mat::identity(field, dc));
            let i = ModuleMap::new(a.clone(), middle.clone(), im)?;
            let p = ModuleMap::new(middle, c.clone(), pm)?;
            reps.push(Conflation::new(i, p)?);
        }
    }
    let classes = reps.len();
    let q = field.p() as usize;
    let dim = (0..=16).find(|&e| q.pow(e as u32) == classes);
    Ok(BruteExt { classes, dim, representatives: reps })
}

/// Rank-based acyclicity, independent of the homology modules.
pub fn rank_acyclic(x: &Complex) -> bool {
    x.degrees().all(|n| x.dim(n) == x.d(n).rank() + x.d(n + 1).rank())
}

/// All complexes supported in `[lo, hi]` with nonzero end terms, objects taken
/// from `catalog` (indexed by dimension), total dimension at most `max_dim`.
pub fn enumerate_complexes(
    alg: &Arc<Algebra>,
    catalog: &[Vec<Module>],
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> Vec<Complex> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in a..=hi {
            let len = (b - a + 1) as usize;
            let mut objs: Vec<Module> = Vec::new();
            objects_rec(catalog, len, max_dim, &mut objs, &mut |objs| {
                if objs[0].dim() == 0 || objs[len - 1].dim() == 0 {
                    return;
                }
                diffs_rec(alg, objs, 1, &mut vec![Mat::zeros(alg.field(), 0, objs[0].dim())], &mut |diffs| {
                    if let Ok(c) = Complex::new(alg, a, objs.to_vec(), diffs.to_vec()) {
                        out.push(c);
                    }
                });
            });
        }
    }
    out
}

fn objects_rec(
    catalog: &[Vec<Module>],
    len: usize,
    budget: usize,
    objs: &mut Vec<Module>,
    emit: &mut dyn FnMut(&[Module]),
) {
    if objs.len() == len {
        emit(objs);
        return;
    }
    for (dim, mods) in catalog.iter().enumerate() {
        if dim > budget {
            break;
        }
        for m in mods {
            objs.push(m.clone());
            objects_rec(catalog, len, budget - dim, objs, emit);
            objs.pop();
        }
    }
}

fn diffs_rec(alg: &Arc<Algebra>, objs: &[Module], k: usize, diffs: &mut Vec<Mat>, emit: &mut dyn FnMut(&[Mat])) {
    if k == objs.len() {
        emit(diffs);
        return;
    }
    let hom = HomSpace::new(&objs[k], &objs[k - 1]);
    for c in all_vectors(alg.field(), hom.dim()) {
        let d = hom.element(&c).mat;
        if k >= 2 && !diffs[k - 1].mul(&d).is_zero() {
            continue;
        }
        diffs.push(d);
        diffs_rec(alg, objs, k + 1, diffs, emit);
        diffs.pop();
    }
}

/// Modules up to isomorphism of every dimension `0..=max`.
pub fn module_catalog(alg: &Arc<Algebra>, max: usize) -> Result<Vec<Vec<Module>>> {
    (0..=max).map(|n| enumerate_modules(alg, n)).collect()
}

/// `f = g ∘ h` through an enumerated middle.
#[derive(Clone, Debug)]
pub struct BruteFactorization {
    pub middle: Complex,
    pub h: ChainMap,
    pub g: ChainMap,
}

impl BruteFactorization {
    pub fn verify(&self, f: &ChainMap) -> bool {
        rank_acyclic(&self.middle) && self.g.after(&self.h) == *f
    }
}

/// Candidate acyclic middles for maps between complexes in a fixed window.
#[derive(Clone, Debug)]
pub struct AcyclicCatalog {
    pub lo: i64,
    pub hi: i64,
    pub max_dim: usize,
    pub middles: Vec<Complex>,
}

impl AcyclicCatalog {
    /// Acyclic complexes supported in `[lo, hi]` (at most three degrees) with
    /// total dimension `<= max_dim`, up to isomorphism, ordered by total
    /// dimension. A bounded exact complex of length at most three is a short
    /// exact sequence `A -> B -> C`, so the middles are the identities of
    /// modules and the enumerated extension classes of `C` by `A`.
    pub fn new(alg: &Arc<Algebra>, lo: i64, hi: i64, max_dim: usize) -> Result<Self> {
        if hi - lo > 2 {
            return Err(Error::Unsupported("acyclic catalogs cover at most three degrees".into()));
        }
        let half = max_dim / 2;
        if hi > lo + 1 && half > 4 {
            return Err(Error::Unsupported("acyclic catalogs need dim A + dim C <= 4".into()));
        }
        let catalog = module_catalog(alg, half)?;
        let field = alg.field();
        let mut middles = Vec::new();
        for top in lo + 1..=hi {
            for m in catalog.iter().flatten().filter(|m| m.dim() > 0) {
                let d = vec![Mat::zeros(field, 0, m.dim()), Mat::identity(field, m.dim())];
                middles.push(Complex::new(alg, top - 1, vec![m.clone(), m.clone()], d)?);
            }
        }
        if hi >= lo + 2 {
            for (da, dc) in (1..=half).flat_map(|a| (1..=half - a).map(move |c| (a, c))) {
                for a in &catalog[da] {
                    for c in &catalog[dc] {
                        for xi in brute_ext(c, a)?.representatives {
                            let (i, p) = (&xi.i, &xi.p);
                            let objs = vec![c.clone(), i.target.clone(), a.clone()];
                            let d = vec![Mat::zeros(field, 0, dc), p.mat.clone(), i.mat.clone()];
                            middles.push(Complex::new(alg, lo, objs, d)?);
                        }
                    }
                }
            }
        }
        middles.sort_by_key(Complex::total_dim);
        Ok(Self { lo, hi, max_dim, middles })
    }
}

fn chain_vec(m: &ChainMap, degs: &[i64]) -> Vec<u8> {
    degs.iter().flat_map(|&n| m.at(n).vectorize()).collect()
}

/// Searches for `f = g ∘ h` over the middles in `catalog` (which must cover
/// `[lo(X), hi(Y)]`): one of `h`, `g` is enumerated and the other solved linearly.
pub fn brute_factor_through_acyclic(
    f: &ChainMap,
    catalog: &AcyclicCatalog,
    budget: &SearchBudget,
) -> Search<BruteFactorization> {
    brute_factor_pair(std::slice::from_ref(f), catalog, budget).pop().expect("one result per map")
}

/// [`brute_factor_through_acyclic`] for several maps `X -> Y` with common ends,
/// sharing the enumeration. The witness for each map is the first one in the
/// canonical order: middles by catalog position, then enumerated maps
/// lexicographically.
pub fn brute_factor_pair(
    maps: &[ChainMap],
    catalog: &AcyclicCatalog,
    budget: &SearchBudget,
) -> Vec<Search<BruteFactorization>> {
    let Some(first) = maps.first() else { return vec![] };
    let (x, y) = (&first.source, &first.target);
    let mut results: Vec<Option<Search<BruteFactorization>>> = maps
        .iter()
        .map(|f| {
            if f.is_zero() {
                let zero = Complex::zero(x.algebra());
                Some(Search::Found(BruteFactorization {
                    middle: zero.clone(),
                    h: ChainMap::zero(x, &zero),
                    g: ChainMap::zero(&zero, y),
                }))
            } else if is_ghost_chain(f).is_none() {
                // Acyclic middles kill homology, so a non-ghost cannot factor.
                Some(Search::Exhausted)
            } else {
                None
            }
        })
        .collect();
    let field = x.field();
    let degs: Vec<i64> = x.degrees().collect();
    let targets: Vec<Mat> = maps.iter().map(|f| Mat::column_vector(field, &chain_vec(f, &degs))).collect();
    let deadline = budget.deadline();
    let mut complete = true;
    let mut spent = 0u64;
    'middles: for w in catalog.middles.iter().filter(|w| w.total_dim() <= budget.max_middle_dim) {
        if results.iter().all(Option::is_some) {
            break;
        }
        let into = ChainHom::new(x, w);
        let out = ChainHom::new(w, y);
        if into.dim() == 0 || out.dim() == 0 {
            continue;
        }
        let enumerate_h = into.dim() <= out.dim();
        let (fixed, free) = if enumerate_h { (&into, &out) } else { (&out, &into) };
        let q = field.p() as u64;
        if q.checked_pow(fixed.dim() as u32).is_none_or(|n| spent.saturating_add(n) > budget.max_enumerated_maps) {
            complete = false;
            continue;
        }
        for c in all_vectors(field, fixed.dim()).skip(1) {
            spent += 1;
            if Instant::now() > deadline {
                complete = false;
                break 'middles;
            }
            let e = fixed.element(&c);
            let compose = |b: &ChainMap| if enumerate_h { b.after(&e) } else { e.after(b) };
            let images: Vec<Mat> =
                free.basis.iter().map(|b| Mat::column_vector(field, &chain_vec(&compose(b), &degs))).collect();
            for (k, slot) in results.iter_mut().enumerate() {
                if slot.is_some() {
                    continue;
                }
                if let Some(sol) = solve_combination(&images, &targets[k]) {
                    let other = free.element(&sol);
                    let (h, g) = if enumerate_h { (e.clone(), other) } else { (other, e.clone()) };
                    let fact = BruteFactorization { middle: w.clone(), h, g };
                    if fact.verify(&maps[k]) {
                        *slot = Some(Search::Found(fact));
                    }
                }
            }
        }
    }
    let rest = if complete { Search::Exhausted } else { Search::BudgetExceeded };
    results.into_iter().map(|r| r.unwrap_or_else(|| rest.clone())).collect()
}

/// A factorization of a module map through an injective module.
#[derive(Clone, Debug)]
pub struct BruteInjectiveFactorization {
    pub middle: Module,
    pub h: ModuleMap,
    pub g: ModuleMap,
}

/// Searches sums of indecomposable injectives up to the middle bound.
pub fn brute_factor_through_injective(f: &ModuleMap, budget: &SearchBudget) -> Result<Search<BruteInjectiveFactorization>> {
    let alg = f.source.algebra().clone();
    require_f2(alg.field())?;
    let injs = indec_injectives(&alg)?;
    let mut middles: Vec<Module> = vec![Module::zero(alg.clone())];
    let mut frontier: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((parts, dim)) = frontier.pop() {
        let start = parts.last().copied().unwrap_or(0);
        for k in start..injs.len() {
            let nd = dim + injs[k].dim();
            if nd > budget.max_middle_dim {
                continue;
            }
            let mut next = parts.clone();
            next.push(k);
            let refs: Vec<&Module> = next.iter().map(|&i| &injs[i]).collect();
            middles.push(Module::direct_sum(&alg, &refs).module);
            frontier.push((next, nd));
        }
    }
    middles.sort_by_key(Module::dim);
    let field = alg.field();
    let mut spent = 0u64;
    for w in middles {
        let into = HomSpace::new(&f.source, &w);
        let out = HomSpace::new(&w, &f.target);
        for c in all_vectors(field, into.dim()) {
            spent += 1;
            if spent > budget.max_enumerated_maps {
                return Ok(Search::BudgetExceeded);
            }
            let h = into.element(&c);
            if let Some(g) = out.solve_linear(|m| m.mul(&h.mat), &f.mat) {
                if g.after(&h) == *f {
                    return Ok(Search::Found(BruteInjectiveFactorization { middle: w, h, g }));
                }
            }
        }
    }
    Ok(Search::Exhausted)
}

/// An `n`-fold composite of ghosts that does not factor through an acyclic complex.
#[derive(Clone, Debug)]
pub struct GhostChainWitness {
    pub factors: Vec<ChainMap>,
    pub composite: ChainMap,
}

impl GhostChainWitness {
    /// Every factor is a ghost, the composite is their product and it is not in ⟨Acyc⟩.
    pub fn verify(&self) -> Result<bool> {
        let mut acc = ChainMap::identity(&self.factors[0].source);
        for f in &self.factors {
            if is_ghost_chain(f).is_none() {
                return Ok(false);
            }
            acc = f.compose(&acc)?;
        }
        Ok(acc == self.composite && factors_through_acyclic(&self.composite)?.is_none())
    }
}

/// The structured family searched for ghost-composite witnesses: truncated
/// projective resolutions of the small indecomposables, their shifts, and spheres.
pub fn witness_family(alg: &Arc<Algebra>, n: usize) -> Result<Vec<Complex>> {
    let mut out: Vec<Complex> = Vec::new();
    let basics = crate::ghost::basic_modules(alg)?;
    for m in &basics {
        if alg.radical().is_none() {
            break;
        }
        let res = crate::algebra::projective::projective_resolution(m, n + 2)?;
        for len in 0..res.modules.len() {
            let objects: Vec<Module> = res.modules[..=len].to_vec();
            let mut diffs = vec![Mat::zeros(alg.field(), 0, objects[0].dim())];
            diffs.extend(res.diffs[..len].iter().map(|d| d.mat.clone()));
            let c = Complex::new(alg, 0, objects, diffs)?;
            for s in 0..=n as i64 {
                let shifted = c.shift(s);
                if !out.contains(&shifted) {
                    out.push(shifted);
                }
            }
        }
    }
    for m in &basics {
        for s in 0..=n as i64 {
            let sp = Complex::sphere(s, m);
            if !out.contains(&sp) {
                out.push(sp);
            }
        }
    }
    Ok(out)
}

fn ghost_elements(x: &Complex, y: &Complex, cap: u64) -> Vec<ChainMap> {
    let basis = chain_ghost_basis(x, y);
    let q = x.field().p() as u64;
    if q.checked_pow(basis.len() as u32).is_some_and(|n| n <= cap) {
        let hom_dims = basis.len();
        all_vectors(x.field(), hom_dims)
            .filter(|c| c.iter().any(|&v| v != 0))
            .map(|c| {
                let mut acc = ChainMap::zero(x, y);
                for (b, &v) in basis.iter().zip(&c) {
                    if v != 0 {
                        acc = acc.add(&b.scale(v)).expect("parallel maps");
                    }
                }
                acc
            })
            .collect()
    } else {
        basis
    }
}

/// Depth-first search for an `n`-fold ghost composite outside ⟨Acyc⟩ over the
/// structured family, pruning prefixes that already factor (⟨Acyc⟩ is an ideal).
pub fn witness_search_ghost_not_acyclic(alg: &Arc<Algebra>, n: usize, budget: &SearchBudget) -> Result<Search<GhostChainWitness>> {
    if n == 0 {
        return Err(Error::Precondition("composites need at least one factor".into()));
    }
    let family = witness_family(alg, n)?;
    let deadline = budget.deadline();
    let mut spent = 0u64;
    let mut stack: Vec<(Vec<ChainMap>, ChainMap)> = Vec::new();
    for x in &family {
        stack.clear();
        stack.push((vec![], ChainMap::identity(x)));
        while let Some((factors, comp)) = stack.pop() {
            if factors.len() == n {
                return Ok(Search::Found(GhostChainWitness { factors, composite: comp }));
            }
            let here = comp.target.clone();
            let mut next = Vec::new();
            for y in &family {
                for g in ghost_elements(&here, y, 64) {
                    spent += 1;
                    if spent > budget.max_enumerated_maps || Instant::now() > deadline {
                        return Ok(Search::BudgetExceeded);
                    }
                    let c = g.compose(&comp)?;
                    if factors_through_acyclic(&c)?.is_none() {
                        let mut fs = factors.clone();
                        fs.push(g);
                        next.push((fs, c));
                    }
                }
            }
            // Depth-first in canonical order: the first candidate is explored first.
            next.reverse();
            stack.extend(next);
        }
    }
    Ok(Search::Exhausted)
}

/// A single FP-ghost that does not factor through an injective module.
#[derive(Clone, Debug)]
pub struct FpGhostWitness {
    pub map: ModuleMap,
}

/// Exhaustive search over FP-ghosts `M -> N` between sums of the listed
/// indecomposables with `dim M, dim N <= max_dim`.
pub fn fp_ghost_witness_search(
    indecs: &crate::ghost::TestSet<Module>,
    max_dim: usize,
    budget: &SearchBudget,
) -> Result<Search<FpGhostWitness>> {
    let Some(first) = indecs.members.first() else { return Ok(Search::Exhausted) };
    let alg = first.algebra().clone();
    let sums = sums_up_to(&alg, &indecs.members, max_dim);
    let mut spent = 0u64;
    for m in &sums {
        for n in &sums {
            for f in all_elements(&crate::ghost::module_ghost_basis(m, n, indecs)?, m, n) {
                spent += 1;
                if spent > budget.max_enumerated_maps {
                    return Ok(Search::BudgetExceeded);
                }
                if crate::algebra::projective::factors_through_injective(&f)?.is_none() {
                    return Ok(Search::Found(FpGhostWitness { map: f }));
                }
            }
        }
    }
    Ok(Search::Exhausted)
}

fn all_elements(basis: &[ModuleMap], m: &Module, n: &Module) -> Vec<ModuleMap> {
    all_vectors(m.field(), basis.len())
        .map(|c| {
            let mut acc = ModuleMap::zero(m, n);
            for (b, &v) in basis.iter().zip(&c) {
                if v != 0 {
                    acc = acc.add(&b.scale(v)).expect("parallel maps");
                }
            }
            acc
        })
        .collect()
}

/// Direct sums of the given modules (with repetition) of total dimension `<= max_dim`.
pub fn sums_up_to(alg: &Arc<Algebra>, parts: &[Module], max_dim: usize) -> Vec<Module> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((idx, dim)) = stack.pop() {
        if !idx.is_empty() {
            let refs: Vec<&Module> = idx.iter().map(|&i| &parts[i]).collect();
            out.push(Module::direct_sum(alg, &refs).module);
        }
        let start = idx.last().copied().unwrap_or(0);
        for k in start..parts.len() {
            if dim + parts[k].dim() <= max_dim {
                let mut next = idx.clone();
                next.push(k);
                stack.push((next, dim + parts[k].dim()));
            }
        }
    }
    out.sort_by_key(Module::dim);
    out
}

/// Agreement counts for the tiny cross-check suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CrosscheckReport {
    pub algebra: String,
    pub ext_cases: usize,
    pub ext_agree: usize,
    pub factor_cases: usize,
    pub factor_agree: usize,
    pub ghost_cases: usize,
    pub disagreements: Vec<String>,
}

impl CrosscheckReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty() && self.ext_agree == self.ext_cases && self.factor_agree == self.factor_cases
    }
}

/// Ext dimensions for all modules of dimension `<= 2`, and the acyclic
/// factorization verdict for every chain map between complexes in degrees
/// `[0, 2]` with `dim X + dim Y <= 4`.
pub fn tiny_suite(alg: &Arc<Algebra>, budget: &SearchBudget) -> Result<CrosscheckReport> {
    let mut report = CrosscheckReport { algebra: alg.name().to_string(), ..Default::default() };
    let catalog = module_catalog(alg, 2)?;
    let mods: Vec<&Module> = catalog.iter().skip(1).flatten().collect();
    for c in &mods {
        for a in &mods {
            let fast = crate::algebra::ext::ExtSpace::new(c, a)?.dim();
            let brute = brute_ext(c, a)?;
            report.ext_cases += 1;
            if brute.dim == Some(fast) {
                report.ext_agree += 1;
            } else {
                report.disagreements.push(format!("Ext dim {fast} vs {} classes (dims {}, {})", brute.classes, c.dim(), a.dim()));
            }
        }
    }
    let complexes = enumerate_complexes(alg, &catalog, 0, 2, 4);
    let middles = AcyclicCatalog::new(alg, 0, 2, budget.max_middle_dim)?;
    let mut pairs = Vec::new();
    for x in &complexes {
        for y in &complexes {
            if x.total_dim() + y.total_dim() > 4 {
                continue;
            }
            let hom = ChainHom::new(x, y);
            pairs.push(all_vectors(alg.field(), hom.dim()).map(|c| hom.element(&c)).collect::<Vec<_>>());
        }
    }
    let results: Vec<Vec<(bool, Search<BruteFactorization>, bool)>> = pairs
        .par_iter()
        .map(|maps| {
            let brute = brute_factor_pair(maps, &middles, budget);
            maps.iter()
                .zip(brute)
                .map(|(f, b)| {
                    let fast = factors_through_acyclic(f).map(|w| w.is_some()).unwrap_or(false);
                    (fast, b, is_ghost_chain(f).is_some())
                })
                .collect()
        })
        .collect();
    for (f, (fast, brute, ghost)) in pairs.iter().flatten().zip(results.into_iter().flatten()) {
        report.factor_cases += 1;
        report.ghost_cases += usize::from(ghost);
        let agree = matches!((&brute, fast), (Search::Found(_), true) | (Search::Exhausted, false));
        if agree {
            report.factor_agree += 1;
        } else {
            report.disagreements.push(format!(
                "factorization: fast {fast}, brute {} (dims {:?} -> {:?})",
                brute.label(),
                f.source.dims(),
                f.target.dims()
            ));
        }
    }
    Ok(report)
}
