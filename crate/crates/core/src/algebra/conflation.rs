//! Conflations (short exact sequences of modules), their splittings, and the
//! pushout, pullback and Baer sum constructions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::hom::HomSpace;
use super::module::{map_from_sum, map_into_sum, sum_of_maps, Module, ModuleMap};
use super::Algebra;

/// `A --i--> B --p--> C`, exact with `i` injective and `p` surjective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflation {
    pub i: ModuleMap,
    pub p: ModuleMap,
}

/// A retraction-section pair of a conflation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub conflation: Conflation,
    pub r: ModuleMap,
    pub s: ModuleMap,
}

/// A pushed-out or pulled-back conflation with the comparison map of middle terms.
#[derive(Clone, Debug)]
pub struct Transported {
    pub conflation: Conflation,
    /// `B -> B'` for pushouts, `B' -> B` for pullbacks.
    pub middle: ModuleMap,
}

impl Conflation {
    pub fn new(i: ModuleMap, p: ModuleMap) -> Result<Self> {
        if i.target != p.source {
            return Err(Error::InvalidConflation("inflation and deflation are not composable".into()));
        }
        if !i.is_injective() {
            return Err(Error::InvalidConflation("inflation is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(Error::InvalidConflation("deflation is not surjective".into()));
        }
        if !p.after(&i).is_zero() || i.target.dim() != i.source.dim() + p.target.dim() {
            return Err(Error::InvalidConflation("image of i is not the kernel of p".into()));
        }
        Ok(Self { i, p })
    }

    pub fn kernel_object(&self) -> &Module {
        &self.i.source
    }
    pub fn middle(&self) -> &Module {
        &self.i.target
    }
    pub fn cokernel_object(&self) -> &Module {
        &self.p.target
    }

    /// `A -> A ⊕ C -> C`.
    pub fn direct_sum(a: &Module, c: &Module) -> Self {
        let sum = Module::direct_sum(a.algebra(), &[a, c]);
        Self { i: sum.incl[0].clone(), p: sum.proj[1].clone() }
    }

    /// The conflation `ker p -> B -> C` determined by a surjection.
    pub fn from_deflation(p: &ModuleMap) -> Result<Self> {
        Self::new(p.kernel().incl, p.clone())
    }

    /// The conflation `A -> B -> coker i` determined by an injection.
    pub fn from_inflation(i: &ModuleMap) -> Result<Self> {
        Self::new(i.clone(), i.cokernel().proj)
    }

    /// Some splitting if the conflation is trivial: `r` by a linear solve over
    /// `Hom(B, A)`, then `s` as the unique map with `s p = 1 - i r`.
    pub fn splitting(&self) -> Option<Splitting> {
        let a = self.kernel_object();
        let f = a.field();
        let r = HomSpace::new(self.middle(), a).solve_linear(|h| h.mul(&self.i.mat), &Mat::identity(f, a.dim()))?;
        Some(self.splitting_from_retraction(r))
    }

    /// Completes a retraction `r` (with `r i = 1`) to a splitting.
    pub fn splitting_from_retraction(&self, r: ModuleMap) -> Splitting {
        let f = r.mat.field();
        let t = Mat::identity(f, self.middle().dim()).sub(&self.i.mat.mul(&r.mat));
        let s = self.p.mat.solve_left(&t).expect("shapes").expect("1 - ir vanishes on ker p");
        let s = ModuleMap::new_unchecked(self.cokernel_object().clone(), self.middle().clone(), s);
        Splitting { conflation: self.clone(), r, s }
    }

    pub fn is_trivial(&self) -> bool {
        self.splitting().is_some()
    }

    /// Pushout along `f: A -> X`: the middle term is `coker(A -> B ⊕ X, a |-> (-i a, f a))`.
    pub fn pushout(&self, f: &ModuleMap) -> Result<Transported> {
        if f.source != *self.kernel_object() {
            return Err(Error::Mismatch("pushout map must start at the kernel object".into()));
        }
        let alg = self.middle().algebra().clone();
        let sum = Module::direct_sum(&alg, &[self.middle(), &f.target]);
        let rel = map_into_sum(&sum, &[&self.i.neg(), f])?;
        let q = rel.cokernel();
        let inflation = q.proj.after(&sum.incl[1]);
        let zero = ModuleMap::zero(&f.target, self.cokernel_object());
        let induced = map_from_sum(&sum, &[&self.p, &zero])?;
        let p = ModuleMap::new_unchecked(q.module.clone(), self.cokernel_object().clone(), induced.mat.mul(&q.section));
        debug_assert!(p.intertwines());
        let middle = q.proj.after(&sum.incl[0]);
        Ok(Transported { conflation: Conflation::new(inflation, p)?, middle })
    }

    /// Pullback along `g: Y -> C`: the middle term is `ker(B ⊕ Y -> C, (b, y) |-> p b - g y)`.
    pub fn pullback(&self, g: &ModuleMap) -> Result<Transported> {
        if g.target != *self.cokernel_object() {
            return Err(Error::Mismatch("pullback map must end at the cokernel object".into()));
        }
        let alg = self.middle().algebra().clone();
        let sum = Module::direct_sum(&alg, &[self.middle(), &g.source]);
        let diff = map_from_sum(&sum, &[&self.p, &g.neg()])?;
        let e = diff.kernel();
        let a = self.kernel_object();
        let zero = ModuleMap::zero(a, &g.source);
        let into_sum = map_into_sum(&sum, &[&self.i, &zero])?;
        let coords = e.incl.mat.solve(&into_sum.mat)?.expect("(i a, 0) lies in the pullback");
        let inflation = ModuleMap::new_unchecked(a.clone(), e.module.clone(), coords);
        let p = sum.proj[1].after(&e.incl);
        let middle = sum.proj[0].after(&e.incl);
        Ok(Transported { conflation: Conflation::new(inflation, p)?, middle })
    }

    /// Direct sum of conflations.
    pub fn sum(alg: &Arc<Algebra>, parts: &[&Conflation]) -> Result<Conflation> {
        let a: Vec<&Module> = parts.iter().map(|c| c.kernel_object()).collect();
        let b: Vec<&Module> = parts.iter().map(|c| c.middle()).collect();
        let c: Vec<&Module> = parts.iter().map(|c| c.cokernel_object()).collect();
        let (sa, sb, sc) = (Module::direct_sum(alg, &a), Module::direct_sum(alg, &b), Module::direct_sum(alg, &c));
        let is: Vec<&ModuleMap> = parts.iter().map(|c| &c.i).collect();
        let ps: Vec<&ModuleMap> = parts.iter().map(|c| &c.p).collect();
        Conflation::new(sum_of_maps(&sa, &sb, &is), sum_of_maps(&sb, &sc, &ps))
    }

    /// Baer sum: pull the direct sum back along the diagonal of `C` and push it out
    /// along the codiagonal of `A`.
    pub fn baer_sum(&self, other: &Conflation) -> Result<Conflation> {
        let (a, c) = (self.kernel_object(), self.cokernel_object());
        if other.kernel_object() != a || other.cokernel_object() != c {
            return Err(Error::Mismatch("Baer sum needs conflations with equal end terms".into()));
        }
        let alg = a.algebra().clone();
        let sum = Conflation::sum(&alg, &[self, other])?;
        let cc = c.power(2);
        let id_c = ModuleMap::identity(c);
        let diagonal = map_into_sum(&cc, &[&id_c, &id_c])?;
        let pulled = sum.pullback(&diagonal)?.conflation;
        let aa = a.power(2);
        let id_a = ModuleMap::identity(a);
        let codiagonal = map_from_sum(&aa, &[&id_a, &id_a])?;
        Ok(pulled.pushout(&codiagonal)?.conflation)
    }
}

impl Splitting {
    /// Checks `r i = 1`, `p s = 1` and `i r + s p = 1`.
    pub fn validate(&self) -> Result<()> {
        let Conflation { i, p } = &self.conflation;
        let f = i.mat.field();
        let ok = self.r.mat.mul(&i.mat) == Mat::identity(f, i.source.dim())
            && p.mat.mul(&self.s.mat) == Mat::identity(f, p.target.dim())
            && i.mat.mul(&self.r.mat).add(&self.s.mat.mul(&p.mat)) == Mat::identity(f, i.target.dim())
            && self.r.intertwines()
            && self.s.intertwines();
        if ok {
            Ok(())
        } else {
            Err(Error::Invariant("splitting identities fail".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::projective::{indec_projective, simple};
    use crate::algebra::standard::*;

    fn d_generator() -> Conflation {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let dd = indec_projective(&d, 0).unwrap();
        let p = HomSpace::new(&dd, &k).basis[0].clone();
        Conflation::from_deflation(&p).unwrap()
    }

    #[test]
    fn direct_sum_splits_canonically() {
        let a = a2(2);
        let s = crate::algebra::projective::simple_modules(&a).unwrap();
        let c = Conflation::direct_sum(&s[0], &s[1]);
        let sp = c.splitting().unwrap();
        sp.validate().unwrap();
    }

    #[test]
    fn dual_number_generator_does_not_split() {
        let c = d_generator();
        assert!(c.splitting().is_none());
        let zero = ModuleMap::zero(c.kernel_object(), c.kernel_object());
        assert!(c.pushout(&zero).unwrap().conflation.is_trivial());
        let id = ModuleMap::identity(c.kernel_object());
        assert!(!c.pushout(&id).unwrap().conflation.is_trivial());
        assert!(!c.pullback(&ModuleMap::identity(c.cokernel_object())).unwrap().conflation.is_trivial());
    }

    #[test]
    fn semisimple_conflations_split() {
        let a = field_product(3);
        let m = Module::regular(a.clone());
        let c = Conflation::direct_sum(&m, &m);
        let t = Mat::from_rows(a.field(), &[vec![1, 0, 2, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let iso = c.middle().transport(&t).unwrap();
        let twisted = Conflation::new(iso.after(&c.i), c.p.after(&iso.inverse().unwrap())).unwrap();
        twisted.splitting().unwrap().validate().unwrap();
    }

    #[test]
    fn baer_sum_of_generator_with_itself_splits_in_char_two() {
        let c = d_generator();
        assert!(c.baer_sum(&c).unwrap().is_trivial());
    }
}
