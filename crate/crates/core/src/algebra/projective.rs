//! Projective covers, resolutions, simple modules and injective hulls.
//!
//! Everything here needs the radical data of a quiver algebra. Injectives are
//! obtained by duality: `M -> I` is the dual of a projective cover of `D M`
//! over the opposite algebra.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::Mat;

use super::hom::{extend, find_isomorphism};
use super::module::{DirectSum, Module, ModuleMap, Quot, Sub};
use super::Algebra;

/// A projective cover `P -> M` with `P` a direct sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: Module,
    pub epi: ModuleMap,
    /// Vertex of each indecomposable summand, in order.
    pub summands: Vec<usize>,
}

/// A finite projective resolution `P_L -> ... -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub target: Module,
    pub modules: Vec<Module>,
    /// `diffs[k-1]` is `d_k: P_k -> P_{k-1}`.
    pub diffs: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// True when the last syzygy computed was zero, so the resolution is complete.
    pub complete: bool,
}

/// Projective dimension up to a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjDim {
    Finite { value: usize },
    /// No projective syzygy within `cap` steps; `periodic` records a repeated syzygy.
    AtLeast { cap: usize, periodic: bool },
}

impl ProjDim {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, ProjDim::Finite { value } if value <= n)
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite { value } => write!(f, "{value}"),
            ProjDim::AtLeast { cap, periodic: true } => write!(f, ">= {cap} (periodic syzygies, infinite)"),
            ProjDim::AtLeast { cap, periodic: false } => write!(f, ">= {cap}"),
        }
    }
}

/// Default cap for resolution lengths.
pub const DIM_CAP: usize = 8;

fn vertex_idempotent(alg: &Algebra, v: usize) -> Result<Vec<u8>> {
    Ok(alg.require_radical()?.idempotents[v].clone())
}

/// `A e_v` with the coordinates of `e_v` inside it.
pub fn indec_projective_with_generator(alg: &Arc<Algebra>, v: usize) -> Result<(Sub, Vec<u8>)> {
    let e = vertex_idempotent(alg, v)?;
    let sub = Module::left_ideal(alg.clone(), &e);
    let gen = sub
        .incl
        .mat
        .solve(&Mat::column_vector(alg.field(), &e))?
        .expect("e_v lies in A e_v")
        .column(0);
    Ok((sub, gen))
}

pub fn indec_projective(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    Ok(indec_projective_with_generator(alg, v)?.0.module)
}

/// The radical `J M` as a submodule.
pub fn radical_submodule(m: &Module) -> Result<Sub> {
    let rad = m.algebra().require_radical()?;
    let f = m.field();
    let mut cols = Vec::new();
    for r in rad.basis.columns() {
        cols.extend(m.act_elem(&r).columns());
    }
    let span = Mat::from_columns(f, m.dim(), &cols);
    m.submodule(&span)
}

/// `M / J M`.
pub fn top(m: &Module) -> Result<Quot> {
    let j = radical_submodule(m)?;
    m.quotient(&j.incl.mat)
}

/// The simple module at vertex `v`, `A e_v / J e_v`.
pub fn simple(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    Ok(top(&indec_projective(alg, v)?)?.module)
}

pub fn simple_modules(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    (0..alg.vertex_count()?).map(|v| simple(alg, v)).collect()
}

pub fn indec_projectives(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    (0..alg.vertex_count()?).map(|v| indec_projective(alg, v)).collect()
}

/// `D(e_v A)`: the injective envelope of the simple at `v`.
pub fn indec_injective(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    let op = alg.opposite();
    Ok(indec_projective(&op, v)?.dual())
}

pub fn indec_injectives(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    (0..alg.vertex_count()?).map(|v| indec_injective(alg, v)).collect()
}

/// Minimal projective cover, built greedily vertex by vertex from `M / J M`.
pub fn projective_cover(m: &Module) -> Result<ProjectiveCover> {
    let alg = m.algebra().clone();
    let rad = alg.require_radical()?;
    let f = m.field();
    let mut covered = radical_submodule(m)?.incl.mat;
    let mut chosen: Vec<(usize, Vec<u8>)> = Vec::new();
    for v in 0..rad.vertices.len() {
        let ev = m.act_elem(&rad.idempotents[v]).image_basis();
        for y in ev.columns() {
            let yv = Mat::column_vector(f, &y);
            if covered.spans(&yv) {
                continue;
            }
            let gen = m.generated(&yv).incl.mat;
            covered = covered.hstack(&gen);
            chosen.push((v, y));
        }
    }
    let mut parts = Vec::new();
    let mut blocks = Vec::new();
    for (v, y) in &chosen {
        let (sub, _) = indec_projective_with_generator(&alg, *v)?;
        let yv = Mat::column_vector(f, y);
        // a e_v |-> a y for every basis vector a e_v of A e_v.
        let cols: Vec<Vec<u8>> = sub
            .incl
            .mat
            .columns()
            .iter()
            .map(|u| m.act_elem(u).mul(&yv).column(0))
            .collect();
        blocks.push(Mat::from_columns(f, m.dim(), &cols));
        parts.push(sub.module);
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let sum = Module::direct_sum(&alg, &refs);
    let mut mat = Mat::zeros(f, m.dim(), sum.module.dim());
    let mut off = 0;
    for b in &blocks {
        mat.paste(0, off, b);
        off += b.cols();
    }
    let epi = ModuleMap::new_unchecked(sum.module.clone(), m.clone(), mat);
    debug_assert!(epi.intertwines() && epi.is_surjective());
    Ok(ProjectiveCover { module: sum.module, epi, summands: chosen.iter().map(|c| c.0).collect() })
}

/// Direct sum of indecomposable projectives at the given vertices.
pub fn projective_sum(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<DirectSum> {
    let parts: Vec<Module> = vertices.iter().map(|&v| indec_projective(alg, v)).collect::<Result<_>>()?;
    let refs: Vec<&Module> = parts.iter().collect();
    Ok(Module::direct_sum(alg, &refs))
}

/// Projectivity test; over a semisimple algebra every module is projective.
pub fn is_projective(m: &Module) -> Result<bool> {
    if m.algebra().radical().is_none() && m.algebra().is_semisimple()? {
        return Ok(true);
    }
    Ok(projective_cover(m)?.module.dim() == m.dim())
}

pub fn is_injective(m: &Module) -> Result<bool> {
    if m.algebra().radical().is_none() && m.algebra().is_semisimple()? {
        return Ok(true);
    }
    is_projective(&m.dual())
}

/// The first syzygy `ker(P -> M)` with its inclusion into the cover.
pub fn syzygy(m: &Module) -> Result<(ProjectiveCover, Sub)> {
    let cover = projective_cover(m)?;
    let k = cover.epi.kernel();
    Ok((cover, k))
}

/// Minimal projective resolution of length at most `len`.
pub fn projective_resolution(m: &Module, len: usize) -> Result<ProjectiveResolution> {
    let (cover, mut kernel) = syzygy(m)?;
    let mut modules = vec![cover.module.clone()];
    let mut diffs = Vec::new();
    let augmentation = cover.epi;
    let mut complete = kernel.module.dim() == 0;
    for _ in 0..len {
        if complete {
            break;
        }
        let (c, k) = syzygy(&kernel.module)?;
        diffs.push(kernel.incl.after(&c.epi));
        modules.push(c.module);
        complete = k.module.dim() == 0;
        kernel = k;
    }
    Ok(ProjectiveResolution { target: m.clone(), modules, diffs, augmentation, complete })
}

/// Projective dimension with cap, detecting periodic syzygies.
pub fn projective_dimension(m: &Module, cap: usize) -> Result<ProjDim> {
    let mut seen: Vec<Module> = Vec::new();
    let mut current = m.clone();
    for k in 0..=cap {
        if is_projective(&current)? {
            return Ok(ProjDim::Finite { value: k });
        }
        let next = syzygy(&current)?.1.module;
        seen.push(current);
        for s in &seen {
            if find_isomorphism(s, &next).unwrap_or(None).is_some() {
                return Ok(ProjDim::AtLeast { cap, periodic: true });
            }
        }
        current = next;
    }
    Ok(ProjDim::AtLeast { cap, periodic: false })
}

/// Global dimension: the supremum of projective dimensions of the simples.
pub fn global_dimension(alg: &Arc<Algebra>, cap: usize) -> Result<ProjDim> {
    let mut best = ProjDim::Finite { value: 0 };
    for s in simple_modules(alg)? {
        let d = projective_dimension(&s, cap)?;
        best = match (best, d) {
            (ProjDim::AtLeast { .. }, _) => best,
            (_, ProjDim::AtLeast { .. }) => d,
            (ProjDim::Finite { value: a }, ProjDim::Finite { value: b }) => ProjDim::Finite { value: a.max(b) },
        };
    }
    Ok(best)
}

/// Injective hull `M -> I`, dual to a projective cover of `D M`.
pub fn injective_hull(m: &Module) -> Result<ModuleMap> {
    let cover = projective_cover(&m.dual())?;
    let i = cover.module.dual();
    let mat = cover.epi.mat.transpose();
    Ok(ModuleMap::new_unchecked(m.clone(), i, mat))
}

/// Witness that a map factors through an injective module.
#[derive(Clone, Debug)]
pub struct InjectiveFactorization {
    pub middle: Module,
    pub h: ModuleMap,
    pub g: ModuleMap,
}

/// Decides whether `f` factors through an injective: it does iff it extends along
/// an injective hull of its source.
pub fn factors_through_injective(f: &ModuleMap) -> Result<Option<InjectiveFactorization>> {
    let hull = injective_hull(&f.source)?;
    Ok(extend(&hull, f).map(|g| InjectiveFactorization { middle: hull.target.clone(), h: hull, g }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom::HomSpace;
    use crate::algebra::standard::*;

    #[test]
    fn field_case() {
        let a = field(2);
        let s = simple_modules(&a).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].dim(), 1);
        assert!(is_projective(&s[0]).unwrap());
        assert!(is_injective(&s[0]).unwrap());
        assert_eq!(global_dimension(&a, DIM_CAP).unwrap(), ProjDim::Finite { value: 0 });
    }

    #[test]
    fn dual_numbers_is_self_injective() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let p = indec_projective(&d, 0).unwrap();
        assert_eq!((k.dim(), p.dim()), (1, 2));
        assert!(is_injective(&p).unwrap());
        assert!(!is_projective(&k).unwrap());
        assert!(!is_injective(&k).unwrap());
        assert_eq!(indec_injective(&d, 0).unwrap().dim(), 2);
        let res = projective_resolution(&k, 4).unwrap();
        assert_eq!(res.modules.len(), 5);
        assert!(res.modules.iter().all(|m| m.dim() == 2));
        for w in res.diffs.windows(2) {
            assert!(w[0].after(&w[1]).is_zero());
        }
        assert_eq!(
            projective_dimension(&k, DIM_CAP).unwrap(),
            ProjDim::AtLeast { cap: DIM_CAP, periodic: true }
        );
    }

    #[test]
    fn a2_projectives_and_injectives() {
        let a = a2(2);
        let p: Vec<usize> = indec_projectives(&a).unwrap().iter().map(Module::dim).collect();
        assert_eq!(p, vec![2, 1]);
        let i: Vec<usize> = indec_injectives(&a).unwrap().iter().map(Module::dim).collect();
        assert_eq!(i, vec![1, 2]);
        let s = simple_modules(&a).unwrap();
        assert!(is_projective(&s[1]).unwrap());
        assert!(is_injective(&s[0]).unwrap());
        let res = projective_resolution(&s[1], 3).unwrap();
        assert_eq!(res.modules.len(), 1);
        assert!(res.complete);
        assert_eq!(projective_dimension(&s[0], DIM_CAP).unwrap(), ProjDim::Finite { value: 1 });
        assert_eq!(global_dimension(&a, DIM_CAP).unwrap(), ProjDim::Finite { value: 1 });
    }

    #[test]
    fn cover_of_sum_is_minimal() {
        let a = a2(3);
        let s = simple_modules(&a).unwrap();
        let p1 = indec_projective(&a, 0).unwrap();
        let m = Module::direct_sum(&a, &[&s[0], &p1, &s[1]]).module;
        let c = projective_cover(&m).unwrap();
        assert_eq!(c.summands, vec![0, 0, 1]);
        assert!(c.epi.is_surjective());
        // Kernel lies in the radical of the cover.
        let k = c.epi.kernel();
        let j = radical_submodule(&c.module).unwrap();
        assert!(j.incl.mat.spans(&k.incl.mat));
    }

    #[test]
    fn injective_factorization_over_dual_numbers() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        assert!(factors_through_injective(&ModuleMap::identity(&k)).unwrap().is_none());
        assert!(factors_through_injective(&ModuleMap::zero(&k, &k)).unwrap().is_some());
        let dd = indec_projective(&d, 0).unwrap();
        let h = HomSpace::new(&dd, &k);
        let w = factors_through_injective(&h.basis[0]).unwrap().expect("source injective");
        assert_eq!(w.g.after(&w.h), h.basis[0]);
    }
}
