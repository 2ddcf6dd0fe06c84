//! Ext¹ as a quotient of cocycles, computed from a projective presentation.
//!
//! With `Ω C -> P_0 -> C` the cover sequence of `C`, `Ext(C, A)` is
//! `Hom(Ω C, A)` modulo restrictions of maps `P_0 -> A`. Classes are coordinate
//! vectors along a fixed complement of the coboundaries.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};

use super::conflation::Conflation;
use super::hom::{lift, HomSpace};
use super::module::{Module, ModuleMap, Sub};
use super::projective::{projective_cover, ProjectiveCover};

/// The cover sequence `Ω C -> P_0 -> C`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cover: ProjectiveCover,
    pub syzygy: Sub,
}

impl Presentation {
    pub fn new(c: &Module) -> Result<Self> {
        let cover = projective_cover(c)?;
        let syzygy = cover.epi.kernel();
        Ok(Self { cover, syzygy })
    }

    pub fn conflation(&self) -> Conflation {
        Conflation { i: self.syzygy.incl.clone(), p: self.cover.epi.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub c: Module,
    pub a: Module,
    pub presentation: Presentation,
    pub cocycles: HomSpace,
    /// Coordinates (in the cocycle basis) spanning the coboundaries.
    pub coboundaries: Mat,
    quotient: Subspace,
}

/// An element of an [`ExtSpace`], given by coordinates in its class basis.
pub type ExtClass = Vec<u8>;

impl ExtSpace {
    pub fn new(c: &Module, a: &Module) -> Result<Self> {
        Self::with_presentation(Presentation::new(c)?, a)
    }

    pub fn with_presentation(presentation: Presentation, a: &Module) -> Result<Self> {
        let c = presentation.cover.epi.target.clone();
        if !c.same_algebra(a) {
            return Err(Error::Mismatch("Ext of modules over different algebras".into()));
        }
        let omega = &presentation.syzygy;
        let cocycles = HomSpace::new(&omega.module, a);
        let f = a.field();
        let restrictions: Vec<Vec<u8>> = HomSpace::new(&presentation.cover.module, a)
            .basis
            .iter()
            .map(|g| cocycles.coordinates(&g.mat.mul(&omega.incl.mat)).expect("restrictions are cocycles"))
            .collect();
        let coboundaries = Mat::from_columns(f, cocycles.dim(), &restrictions);
        let quotient = Subspace::new(&coboundaries);
        Ok(Self { c, a: a.clone(), presentation, cocycles, coboundaries, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.codim()
    }

    pub fn zero(&self) -> ExtClass {
        vec![0; self.dim()]
    }

    /// Class of a cocycle `Ω C -> A` given as a matrix.
    pub fn class_of_cocycle(&self, phi: &Mat) -> Result<ExtClass> {
        let coords = self
            .cocycles
            .coordinates(phi)
            .ok_or_else(|| Error::InvalidMap("not a cocycle".into()))?;
        Ok(self.quotient.quotient.mul(&Mat::column_vector(phi.field(), &coords)).column(0))
    }

    /// The representative cocycle of a class.
    pub fn cocycle(&self, class: &[u8]) -> ModuleMap {
        let f = self.a.field();
        let coords = self.quotient.complement.mul(&Mat::column_vector(f, class)).column(0);
        self.cocycles.element(&coords)
    }

    /// Basis vectors of the class space.
    pub fn basis(&self) -> Vec<ExtClass> {
        (0..self.dim())
            .map(|k| {
                let mut v = vec![0; self.dim()];
                v[k] = 1;
                v
            })
            .collect()
    }

    /// The pushout of the cover sequence along the representative cocycle.
    pub fn to_conflation(&self, class: &[u8]) -> Result<Conflation> {
        let phi = self.cocycle(class);
        Ok(self.presentation.conflation().pushout(&phi)?.conflation)
    }

    /// Lifts the identity of `C` through the conflation and restricts to `Ω C`.
    pub fn from_conflation(&self, xi: &Conflation) -> Result<ExtClass> {
        if *xi.kernel_object() != self.a || *xi.cokernel_object() != self.c {
            return Err(Error::Mismatch("conflation end terms differ from the Ext space".into()));
        }
        let eps = &self.presentation.cover.epi;
        let lam = lift(&xi.p, eps).ok_or_else(|| Error::Invariant("cover does not lift".into()))?;
        let restricted = lam.mat.mul(&self.presentation.syzygy.incl.mat);
        let phi = xi
            .i
            .mat
            .solve(&restricted)?
            .ok_or_else(|| Error::Invariant("lift does not land in the kernel".into()))?;
        self.class_of_cocycle(&phi)
    }

    /// Matrix of `Ext(C, f): Ext(C, A) -> Ext(C, X)` on class bases.
    pub fn map_right(&self, f: &ModuleMap, target: &ExtSpace) -> Result<Mat> {
        if f.source != self.a || f.target != target.a || target.c != self.c {
            return Err(Error::Mismatch("Ext(C, f) with mismatched objects".into()));
        }
        let cols: Vec<Vec<u8>> = self
            .basis()
            .iter()
            .map(|b| target.class_of_cocycle(&f.mat.mul(&self.cocycle(b).mat)))
            .collect::<Result<_>>()?;
        Ok(Mat::from_columns(f.mat.field(), target.dim(), &cols))
    }

    /// Matrix of `Ext(g, A): Ext(C, A) -> Ext(Y, A)` for `g: Y -> C`.
    pub fn map_left(&self, g: &ModuleMap, target: &ExtSpace) -> Result<Mat> {
        if g.target != self.c || g.source != target.c || target.a != self.a {
            return Err(Error::Mismatch("Ext(g, A) with mismatched objects".into()));
        }
        let (py, pc) = (&target.presentation, &self.presentation);
        let g0 = lift(&pc.cover.epi, &g.after(&py.cover.epi)).ok_or_else(|| Error::Invariant("lift failed".into()))?;
        let g1 = pc
            .syzygy
            .incl
            .mat
            .solve(&g0.mat.mul(&py.syzygy.incl.mat))?
            .ok_or_else(|| Error::Invariant("lift does not preserve syzygies".into()))?;
        let cols: Vec<Vec<u8>> = self
            .basis()
            .iter()
            .map(|b| target.class_of_cocycle(&self.cocycle(b).mat.mul(&g1)))
            .collect::<Result<_>>()?;
        Ok(Mat::from_columns(g.mat.field(), target.dim(), &cols))
    }
}

/// `Ext(C, f)` on class bases.
pub fn ext_on_map(c: &Module, f: &ModuleMap) -> Result<Mat> {
    let pres = Presentation::new(c)?;
    let src = ExtSpace::with_presentation(pres.clone(), &f.source)?;
    let tgt = ExtSpace::with_presentation(pres, &f.target)?;
    src.map_right(f, &tgt)
}

/// `Ext(g, A)` on class bases.
pub fn ext_on_map_left(g: &ModuleMap, a: &Module) -> Result<Mat> {
    let src = ExtSpace::new(&g.target, a)?;
    let tgt = ExtSpace::new(&g.source, a)?;
    src.map_left(g, &tgt)
}

/// True when `Ext(C, f) = 0`.
pub fn ext_kills(c: &Module, f: &ModuleMap) -> Result<bool> {
    Ok(ext_on_map(c, f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::projective::{indec_projective, simple, simple_modules};
    use crate::algebra::standard::*;

    #[test]
    fn field_has_no_extensions() {
        let a = field(2);
        let m = Module::regular(a);
        assert_eq!(ExtSpace::new(&m, &m).unwrap().dim(), 0);
    }

    #[test]
    fn dual_numbers_ext() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let e = ExtSpace::new(&k, &k).unwrap();
        assert_eq!(e.dim(), 1);
        let xi = e.to_conflation(&[1]).unwrap();
        assert!(!xi.is_trivial());
        assert_eq!(e.from_conflation(&xi).unwrap(), vec![1]);
        assert!(e.to_conflation(&[0]).unwrap().is_trivial());
        let dd = indec_projective(&d, 0).unwrap();
        assert_eq!(ExtSpace::new(&k, &dd).unwrap().dim(), 0);
    }

    #[test]
    fn a2_ext_orientation() {
        let a = a2(2);
        let s = simple_modules(&a).unwrap();
        assert_eq!(ExtSpace::new(&s[0], &s[1]).unwrap().dim(), 1);
        assert_eq!(ExtSpace::new(&s[1], &s[0]).unwrap().dim(), 0);
    }

    #[test]
    fn functoriality_examples() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let dd = indec_projective(&d, 0).unwrap();
        let id = ModuleMap::identity(&k);
        assert_eq!(ext_on_map(&k, &id).unwrap(), Mat::identity(d.field(), 1));
        assert!(ext_on_map(&k, &ModuleMap::zero(&k, &k)).unwrap().is_zero());
        // Ext(k, x: D -> D) is the zero map on the zero space Ext(k, D).
        let x = ModuleMap::new(dd.clone(), dd.clone(), d.right_mult(&[0, 1])).unwrap();
        let m = ext_on_map(&k, &x).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }
}
