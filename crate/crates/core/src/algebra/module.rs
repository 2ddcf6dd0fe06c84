//! Finite-dimensional left modules given by action matrices, and module maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField, Subspace};

use super::Algebra;

/// A left module: one `m x m` action matrix per algebra basis element.
#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<Algebra>,
    dim: usize,
    action: Arc<Vec<Mat>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && (Arc::ptr_eq(&self.action, &other.action) || self.action == other.action)
            && (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg)
    }
}

impl Eq for Module {}

/// A homomorphism of left modules; `mat` is `target.dim x source.dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub mat: Mat,
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub incl: Vec<ModuleMap>,
    pub proj: Vec<ModuleMap>,
}

/// A submodule together with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Module,
    pub incl: ModuleMap,
}

/// A quotient module with its projection and a linear (not module) section.
#[derive(Clone, Debug)]
pub struct Quot {
    pub module: Module,
    pub proj: ModuleMap,
    pub section: Mat,
}

impl Module {
    /// Validates the module axioms.
    pub fn new(alg: Arc<Algebra>, action: Vec<Mat>) -> Result<Self> {
        let m = Self::new_unchecked(alg, action)?;
        m.validate()?;
        Ok(m)
    }

    /// Shape checks only; used internally when the axioms hold by construction.
    pub fn new_unchecked(alg: Arc<Algebra>, action: Vec<Mat>) -> Result<Self> {
        if action.len() != alg.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                alg.dim(),
                action.len()
            )));
        }
        let dim = action.first().map_or(0, Mat::rows);
        if action.iter().any(|a| a.rows() != dim || a.cols() != dim || a.field() != alg.field()) {
            return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
        }
        Ok(Self { alg, dim, action: Arc::new(action) })
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        if self.act_elem(alg.unit()) != Mat::identity(alg.field(), self.dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act_elem(&alg.left_mult_basis(i).column(j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let f = alg.field();
        let action = vec![Mat::zeros(f, 0, 0); alg.dim()];
        Self { alg, dim: 0, action: Arc::new(action) }
    }

    /// The left regular module `A`.
    pub fn regular(alg: Arc<Algebra>) -> Self {
        let action = (0..alg.dim()).map(|i| alg.left_mult_basis(i).clone()).collect();
        let dim = alg.dim();
        Self { alg, dim, action: Arc::new(action) }
    }

    /// The cyclic left ideal `A u`, as a submodule of the regular module.
    pub fn left_ideal(alg: Arc<Algebra>, u: &[u8]) -> Sub {
        let r = Self::regular(alg.clone());
        let span = alg.right_mult(u);
        r.submodule(&span).expect("left ideals are submodules")
    }

    #[inline]
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }
    #[inline]
    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }
    pub fn act(&self, i: usize) -> &Mat {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act_elem(&self, u: &[u8]) -> Mat {
        crate::linalg::combine(self.field(), self.dim, self.dim, u, &self.action)
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg
    }

    /// Conjugates the action by an invertible matrix `t` (new basis = columns of `t^-1`),
    /// returning the new module and the isomorphism `self -> new` with matrix `t`.
    pub fn transport(&self, t: &Mat) -> Result<ModuleMap> {
        let inv = t
            .inverse()
            .ok_or_else(|| Error::InvalidMap("transport matrix is not invertible".into()))?;
        let action = self.action.iter().map(|a| t.mul(a).mul(&inv)).collect();
        let target = Module::new_unchecked(self.alg.clone(), action)?;
        Ok(ModuleMap { source: self.clone(), target, mat: t.clone() })
    }

    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[&Module]) -> DirectSum {
        let f = alg.field();
        let action: Vec<Mat> = (0..alg.dim())
            .map(|i| Mat::block_diag(f, &parts.iter().map(|m| m.act(i)).collect::<Vec<_>>()))
            .collect();
        let module = Module::new_unchecked(alg.clone(), action).expect("block diagonal action");
        let total = module.dim;
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut off = 0;
        for m in parts {
            let mut i = Mat::zeros(f, total, m.dim);
            i.paste(off, 0, &Mat::identity(f, m.dim));
            let p = i.transpose();
            incl.push(ModuleMap { source: (*m).clone(), target: module.clone(), mat: i });
            proj.push(ModuleMap { source: module.clone(), target: (*m).clone(), mat: p });
            off += m.dim;
        }
        DirectSum { module, incl, proj }
    }

    /// `n` copies of `self`.
    pub fn power(&self, n: usize) -> DirectSum {
        let parts: Vec<&Module> = std::iter::repeat_n(self, n).collect();
        Module::direct_sum(&self.alg, &parts)
    }

    fn is_invariant(&self, sub: &Subspace) -> bool {
        self.action.iter().all(|a| sub.quotient.mul(&a.mul(&sub.basis)).is_zero())
    }

    /// The submodule spanned by the columns of `span`, which must be invariant.
    pub fn submodule(&self, span: &Mat) -> Result<Sub> {
        let sub = Subspace::new(span);
        if !self.is_invariant(&sub) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let action = self.action.iter().map(|a| sub.coords.mul(&a.mul(&sub.basis))).collect();
        let module = Module::new_unchecked(self.alg.clone(), action)?;
        let incl = ModuleMap { source: module.clone(), target: self.clone(), mat: sub.basis };
        Ok(Sub { module, incl })
    }

    /// The submodule generated by the columns of `gens`.
    pub fn generated(&self, gens: &Mat) -> Sub {
        let f = self.field();
        let mut cols = Vec::new();
        for a in self.action.iter() {
            cols.extend(a.mul(gens).columns());
        }
        let span = Mat::from_columns(f, self.dim, &cols);
        self.submodule(&span).expect("generated subspaces are invariant")
    }

    /// The quotient by the submodule spanned by the columns of `span`.
    pub fn quotient(&self, span: &Mat) -> Result<Quot> {
        let sub = Subspace::new(span);
        if !self.is_invariant(&sub) {
            return Err(Error::InvalidModule("cannot quotient by a non-submodule".into()));
        }
        let action = self
            .action
            .iter()
            .map(|a| sub.quotient.mul(&a.mul(&sub.complement)))
            .collect();
        let module = Module::new_unchecked(self.alg.clone(), action)?;
        let proj = ModuleMap { source: self.clone(), target: module.clone(), mat: sub.quotient };
        Ok(Quot { module, proj, section: sub.complement })
    }

    /// The dual `Hom_k(M, k)`, a left module over the opposite algebra.
    pub fn dual(&self) -> Module {
        let op = self.alg.opposite();
        let action = self.action.iter().map(Mat::transpose).collect();
        Module::new_unchecked(op, action).expect("dual module")
    }
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, mat: Mat) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::Mismatch("modules over different algebras".into()));
        }
        if mat.rows() != target.dim || mat.cols() != source.dim {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                target.dim,
                source.dim
            )));
        }
        let f = ModuleMap { source, target, mat };
        if !f.intertwines() {
            return Err(Error::InvalidMap("matrix does not commute with the action".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, mat: Mat) -> Self {
        debug_assert_eq!((mat.rows(), mat.cols()), (target.dim, source.dim));
        ModuleMap { source, target, mat }
    }

    pub fn intertwines(&self) -> bool {
        (0..self.source.alg.dim())
            .all(|i| self.mat.mul(self.source.act(i)) == self.target.act(i).mul(&self.mat))
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), mat: Mat::identity(m.field(), m.dim) }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            mat: Mat::zeros(source.field(), target.dim, source.dim),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ModuleMap) -> Result<ModuleMap> {
        if f.target != self.source {
            return Err(Error::Mismatch("composition of non-composable maps".into()));
        }
        Ok(ModuleMap { source: f.source.clone(), target: self.target.clone(), mat: self.mat.mul(&f.mat) })
    }

    /// `self ∘ f`, panicking if the maps are not composable.
    pub fn after(&self, f: &ModuleMap) -> ModuleMap {
        self.compose(f).expect("composable maps")
    }

    fn check_parallel(&self, other: &ModuleMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_parallel(other)?;
        Ok(ModuleMap { mat: self.mat.add(&other.mat), ..self.clone() })
    }

    pub fn sub(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_parallel(other)?;
        Ok(ModuleMap { mat: self.mat.sub(&other.mat), ..self.clone() })
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap { mat: self.mat.neg(), ..self.clone() }
    }

    pub fn scale(&self, c: u8) -> ModuleMap {
        ModuleMap { mat: self.mat.scale(c), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let inv = self.mat.inverse()?;
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), mat: inv })
    }

    pub fn kernel(&self) -> Sub {
        self.source.submodule(&self.mat.kernel_basis()).expect("kernels are submodules")
    }

    /// Image as a submodule of the target, with the corestriction `source -> image`.
    pub fn image(&self) -> (Sub, ModuleMap) {
        let sub = self.target.submodule(&self.mat).expect("images are submodules");
        let co = sub.incl.mat.solve(&self.mat).expect("shapes").expect("image contains columns");
        let corestriction = ModuleMap { source: self.source.clone(), target: sub.module.clone(), mat: co };
        (sub, corestriction)
    }

    pub fn cokernel(&self) -> Quot {
        self.target.quotient(&self.mat).expect("images are submodules")
    }

    /// The dual map `D(target) -> D(source)` over the opposite algebra.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap { source: self.target.dual(), target: self.source.dual(), mat: self.mat.transpose() }
    }
}

/// Block map `[f_1 ... f_n]` out of a direct sum into a common target.
pub fn map_from_sum(sum: &DirectSum, maps: &[&ModuleMap]) -> Result<ModuleMap> {
    let target = maps
        .first()
        .map(|m| m.target.clone())
        .ok_or_else(|| Error::Mismatch("empty map list".into()))?;
    let f = target.field();
    let mut mat = Mat::zeros(f, target.dim(), sum.module.dim());
    let mut off = 0;
    for (m, part) in maps.iter().zip(&sum.incl) {
        if m.source != part.source || m.target != target {
            return Err(Error::Mismatch("summand mismatch".into()));
        }
        mat.paste(0, off, &m.mat);
        off += m.source.dim();
    }
    Ok(ModuleMap { source: sum.module.clone(), target, mat })
}

/// Block map `[f_1; ...; f_n]` from a common source into a direct sum.
pub fn map_into_sum(sum: &DirectSum, maps: &[&ModuleMap]) -> Result<ModuleMap> {
    let source = maps
        .first()
        .map(|m| m.source.clone())
        .ok_or_else(|| Error::Mismatch("empty map list".into()))?;
    let f = source.field();
    let mut mat = Mat::zeros(f, sum.module.dim(), source.dim());
    let mut off = 0;
    for (m, part) in maps.iter().zip(&sum.proj) {
        if m.target != part.target || m.source != source {
            return Err(Error::Mismatch("summand mismatch".into()));
        }
        mat.paste(off, 0, &m.mat);
        off += m.target.dim();
    }
    Ok(ModuleMap { source, target: sum.module.clone(), mat })
}

/// `f_1 ⊕ ... ⊕ f_n` between direct sums.
pub fn sum_of_maps(src: &DirectSum, tgt: &DirectSum, maps: &[&ModuleMap]) -> ModuleMap {
    let f = src.module.field();
    let blocks: Vec<&Mat> = maps.iter().map(|m| &m.mat).collect();
    ModuleMap { source: src.module.clone(), target: tgt.module.clone(), mat: Mat::block_diag(f, &blocks) }
}

/// Module from a quiver representation: one space per vertex and one matrix per arrow
/// (`dim target x dim source`). Basis vectors are ordered vertex by vertex.
pub fn from_representation(alg: &Arc<Algebra>, dims: &[usize], arrows: &[Mat]) -> Result<Module> {
    let rad = alg.require_radical()?;
    let quiver = &rad.quiver;
    let f = alg.field();
    if dims.len() != quiver.vertices.len() || arrows.len() != quiver.arrows.len() {
        return Err(Error::InvalidModule("representation shape does not match the quiver".into()));
    }
    let offs: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    for (a, m) in quiver.arrows.iter().zip(arrows) {
        if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
            return Err(Error::InvalidModule(format!("arrow '{}' matrix has the wrong shape", a.name)));
        }
    }
    let mut action = Vec::new();
    for (start, path) in &rad.paths {
        let mut mat = Mat::zeros(f, total, total);
        let mut m = Mat::identity(f, dims[*start]);
        let mut end = *start;
        for &ai in path {
            m = arrows[ai].mul(&m);
            end = quiver.arrows[ai].target;
        }
        mat.paste(offs[end], offs[*start], &m);
        action.push(mat);
    }
    Module::new(alg.clone(), action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;

    #[test]
    fn regular_module_is_valid() {
        for a in [field(2), dual_numbers(2), a2(3), matrix2(2)] {
            let r = Module::regular(a.clone());
            assert!(r.validate().is_ok());
            assert_eq!(r.dim(), a.dim());
        }
    }

    #[test]
    fn left_ideals_of_a2() {
        let a = a2(2);
        // A e1 = {e1, a}, A e2 = {e2}.
        assert_eq!(Module::left_ideal(a.clone(), &[1, 0, 0]).module.dim(), 2);
        assert_eq!(Module::left_ideal(a.clone(), &[0, 1, 0]).module.dim(), 1);
    }

    #[test]
    fn column_module_of_matrix_algebra() {
        let m = matrix2(2);
        let col = Module::left_ideal(m.clone(), &[1, 0, 0, 0]).module;
        assert_eq!(col.dim(), 2);
        assert!(col.validate().is_ok());
    }

    #[test]
    fn invalid_action_is_rejected() {
        let d = dual_numbers(2);
        let f = d.field();
        // x acting as the identity violates x^2 = 0.
        let bad = Module::new(d.clone(), vec![Mat::identity(f, 1), Mat::identity(f, 1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn kernel_image_cokernel_dimensions() {
        let d = dual_numbers(2);
        let r = Module::regular(d.clone());
        let x = ModuleMap::new(r.clone(), r.clone(), d.right_mult(&[0, 1])).unwrap();
        assert_eq!(x.kernel().module.dim(), 1);
        assert_eq!(x.image().0.module.dim(), 1);
        assert_eq!(x.cokernel().module.dim(), 1);
    }

    #[test]
    fn representation_matches_projective() {
        let a = a2(2);
        let f = a.field();
        let p1 = from_representation(&a, &[1, 1], &[Mat::identity(f, 1)]).unwrap();
        assert_eq!(p1.dim(), 2);
        assert!(p1.validate().is_ok());
    }

    #[test]
    fn dual_is_module_over_opposite() {
        let a = a2(2);
        let p = Module::left_ideal(a.clone(), &[1, 0, 0]).module;
        let dp = p.dual();
        assert!(dp.validate().is_ok());
        assert_eq!(*dp.algebra().clone(), *a.opposite());
        assert_eq!(dp.dual(), p);
    }
}
