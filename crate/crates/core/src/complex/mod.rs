//! Bounded chain complexes of modules and chain maps.
//!
//! Degrees are homological: `d_n: X_n -> X_{n-1}`. A complex stores its window
//! `[lo, hi]` explicitly and is trimmed so that both ends are nonzero.

pub mod ce;
pub mod homology;
pub mod homotopy;
pub mod random;
pub mod resolution;

use std::sync::Arc;

use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};

#[derive(Clone, Debug)]
pub struct Complex {
    alg: Arc<Algebra>,
    lo: i64,
    objects: Vec<Module>,
    /// `diffs[k]` is `d_{lo+k}`; `diffs[0]` has no rows.
    diffs: Vec<Mat>,
    zero: Module,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg
            && self.objects.len() == other.objects.len()
            && (self.objects.is_empty()
                || (self.lo == other.lo && self.objects == other.objects && self.diffs == other.diffs))
    }
}

impl Eq for Complex {}

fn sign(field: PrimeField, k: i64) -> u8 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        field.neg(1)
    }
}

impl Complex {
    /// Validates shapes, intertwining and `d^2 = 0`, then trims zero ends.
    pub fn new(alg: &Arc<Algebra>, lo: i64, objects: Vec<Module>, diffs: Vec<Mat>) -> Result<Self> {
        if objects.len() != diffs.len() {
            return Err(Error::InvalidComplex("need one differential per object".into()));
        }
        if objects.iter().any(|m| m.algebra() != alg) {
            return Err(Error::InvalidComplex("objects over different algebras".into()));
        }
        let c = Self::from_parts(alg, lo, objects, diffs);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts(alg: &Arc<Algebra>, lo: i64, objects: Vec<Module>, diffs: Vec<Mat>) -> Self {
        let mut c = Self { alg: alg.clone(), lo, objects, diffs, zero: Module::zero(alg.clone()) };
        c.trim();
        c
    }

    /// Builds a complex over `[lo, hi]` from closures, trimming zero ends.
    pub(crate) fn from_fn(
        alg: &Arc<Algebra>,
        lo: i64,
        hi: i64,
        mut obj: impl FnMut(i64) -> Module,
        mut d: impl FnMut(i64, &Module, &Module) -> Mat,
    ) -> Self {
        let zero = Module::zero(alg.clone());
        let mut objects = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            objects.push(obj(n));
        }
        for (k, n) in (lo..=hi).enumerate() {
            let below = if k == 0 { &zero } else { &objects[k - 1] };
            diffs.push(d(n, &objects[k], below));
        }
        Self::from_parts(alg, lo, objects, diffs)
    }

    fn trim(&mut self) {
        while self.objects.last().is_some_and(|m| m.dim() == 0) {
            self.objects.pop();
            self.diffs.pop();
        }
        let lead = self.objects.iter().take_while(|m| m.dim() == 0).count();
        if lead > 0 {
            self.objects.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as i64;
            if let Some(d) = self.diffs.first_mut() {
                *d = Mat::zeros(d.field(), 0, d.cols());
            }
        }
        if self.objects.is_empty() {
            self.lo = 0;
        }
    }

    pub fn validate(&self) -> Result<()> {
        for n in self.lo()..=self.hi() {
            let d = self.d(n);
            let (src, tgt) = (self.obj(n), self.obj(n - 1));
            if d.rows() != tgt.dim() || d.cols() != src.dim() {
                return Err(Error::InvalidComplex(format!("d_{n} has the wrong shape")));
            }
            if !(0..self.alg.dim()).all(|b| d.mul(src.act(b)) == tgt.act(b).mul(&d)) {
                return Err(Error::InvalidComplex(format!("d_{n} is not a module map")));
            }
            if !self.d(n - 1).mul(&d).is_zero() {
                return Err(Error::InvalidComplex(format!("d_{} d_{n} is not zero", n - 1)));
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self::from_parts(alg, 0, vec![], vec![])
    }

    /// `S^n(M)`: `M` in degree `n`.
    pub fn sphere(n: i64, m: &Module) -> Self {
        Self::from_parts(m.algebra(), n, vec![m.clone()], vec![Mat::zeros(m.field(), 0, m.dim())])
    }

    /// `D^n(M)`: `M --1--> M` in degrees `n`, `n-1`.
    pub fn disc(n: i64, m: &Module) -> Self {
        let f = m.field();
        Self::from_parts(
            m.algebra(),
            n - 1,
            vec![m.clone(), m.clone()],
            vec![Mat::zeros(f, 0, m.dim()), Mat::identity(f, m.dim())],
        )
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }
    pub fn is_zero(&self) -> bool {
        self.objects.is_empty()
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn obj(&self, n: i64) -> &Module {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.objects.len() {
            &self.objects[k as usize]
        } else {
            &self.zero
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.obj(n).dim()
    }

    pub fn total_dim(&self) -> usize {
        self.objects.iter().map(Module::dim).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.objects.iter().map(Module::dim).collect()
    }

    /// `d_n: X_n -> X_{n-1}` (zero outside the window).
    pub fn d(&self, n: i64) -> Mat {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            Mat::zeros(self.field(), self.dim(n - 1), self.dim(n))
        }
    }

    pub fn d_map(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.obj(n).clone(), self.obj(n - 1).clone(), self.d(n))
    }

    /// `Σ^k X`: `(Σ^k X)_n = X_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        let s = sign(self.field(), k);
        Self::from_parts(
            &self.alg,
            self.lo + k,
            self.objects.clone(),
            self.diffs.iter().map(|d| d.scale(s)).collect(),
        )
    }

    /// The complex with every differential multiplied by `-1`; isomorphic to `self`.
    pub fn negated(&self) -> Self {
        Self::from_parts(&self.alg, self.lo, self.objects.clone(), self.diffs.iter().map(Mat::neg).collect())
    }

    pub fn is_degreewise_projective(&self) -> Result<bool> {
        for m in &self.objects {
            if !crate::algebra::projective::is_projective(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn direct_sum(parts: &[&Complex]) -> ComplexSum {
        let alg = parts.first().map(|c| c.alg.clone()).expect("at least one summand");
        let lo = parts.iter().filter(|c| !c.is_zero()).map(|c| c.lo()).min().unwrap_or(0);
        let hi = parts.iter().filter(|c| !c.is_zero()).map(|c| c.hi()).max().unwrap_or(-1);
        let f = alg.field();
        let sums: Vec<_> = (lo..=hi)
            .map(|n| {
                let ms: Vec<&Module> = parts.iter().map(|c| c.obj(n)).collect();
                Module::direct_sum(&alg, &ms)
            })
            .collect();
        let at = |n: i64| &sums[(n - lo) as usize];
        let complex = Complex::from_fn(
            &alg,
            lo,
            hi,
            |n| at(n).module.clone(),
            |n, _, _| {
                let ds: Vec<Mat> = parts.iter().map(|c| c.d(n)).collect();
                Mat::block_diag(f, &ds.iter().collect::<Vec<_>>())
            },
        );
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for (k, c) in parts.iter().enumerate() {
            incl.push(ChainMap::from_parts(c, &complex, |n| {
                if (lo..=hi).contains(&n) { at(n).incl[k].mat.clone() } else { Mat::zeros(f, 0, c.dim(n)) }
            }));
            proj.push(ChainMap::from_parts(&complex, c, |n| {
                if (lo..=hi).contains(&n) { at(n).proj[k].mat.clone() } else { Mat::zeros(f, c.dim(n), 0) }
            }));
        }
        ComplexSum { complex, incl, proj }
    }

    /// Quotient by the subcomplex spanned (degreewise) by the given columns, which
    /// must be a subcomplex of submodules.
    pub fn quotient(&self, spans: &[(i64, Mat)]) -> Result<Quotient> {
        let f = self.field();
        let span_at = |n: i64| {
            spans
                .iter()
                .find(|(k, _)| *k == n)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| Mat::zeros(f, self.dim(n), 0))
        };
        let quots: Vec<_> = self
            .degrees()
            .map(|n| self.obj(n).quotient(&span_at(n)))
            .collect::<Result<_>>()?;
        let lo = self.lo;
        let at = |n: i64| &quots[(n - lo) as usize];
        for n in self.degrees() {
            let moved = self.d(n).mul(&span_at(n));
            if !span_at(n - 1).spans(&moved) {
                return Err(Error::InvalidComplex("spans do not form a subcomplex".into()));
            }
        }
        let complex = Complex::from_fn(
            &self.alg,
            self.lo,
            self.hi(),
            |n| at(n).module.clone(),
            |n, src, tgt| {
                if n == lo {
                    Mat::zeros(f, tgt.dim(), src.dim())
                } else {
                    at(n - 1).proj.mat.mul(&self.d(n)).mul(&at(n).section)
                }
            },
        );
        let proj = ChainMap::from_parts(self, &complex, |n| {
            if self.degrees().contains(&n) { at(n).proj.mat.clone() } else { Mat::zeros(f, complex.dim(n), self.dim(n)) }
        });
        let sections = self.degrees().map(|n| (n, at(n).section.clone())).collect();
        Ok(Quotient { complex, proj, sections })
    }
}

/// A direct sum of complexes with structure maps.
#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: Complex,
    pub incl: Vec<ChainMap>,
    pub proj: Vec<ChainMap>,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    pub proj: ChainMap,
    /// Linear sections of the projection, by degree.
    pub sections: Vec<(i64, Mat)>,
}

impl Quotient {
    pub fn section(&self, n: i64) -> Mat {
        self.sections
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Mat::zeros(self.complex.field(), self.proj.source.dim(n), self.complex.dim(n)))
    }
}

/// A chain map; components are stored over the union of both windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    lo: i64,
    mats: Vec<Mat>,
}

/// The smallest degree range covering both complexes (`(0, -1)` if both are zero).
pub(crate) fn span(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

impl ChainMap {
    /// Validates shapes, intertwining and commutation with differentials.
    pub fn new(source: &Complex, target: &Complex, comps: impl FnMut(i64) -> Mat) -> Result<Self> {
        let f = Self::from_parts(source, target, comps);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_parts(source: &Complex, target: &Complex, mut comps: impl FnMut(i64) -> Mat) -> Self {
        let (lo, hi) = span(source, target);
        let mats = (lo..=hi).map(&mut comps).collect();
        Self { source: source.clone(), target: target.clone(), lo, mats }
    }

    /// Builds a chain map from components given over an explicit starting degree.
    pub fn from_components(source: &Complex, target: &Complex, lo: i64, mats: Vec<Mat>) -> Result<Self> {
        let f = source.field();
        Self::new(source, target, |n| {
            let k = n - lo;
            if k >= 0 && (k as usize) < mats.len() {
                mats[k as usize].clone()
            } else {
                Mat::zeros(f, target.dim(n), source.dim(n))
            }
        })
    }

    pub fn validate(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        if x.alg != y.alg {
            return Err(Error::Mismatch("chain map between complexes over different algebras".into()));
        }
        let (lo, hi) = span(x, y);
        for n in lo..=hi + 1 {
            let fm = self.at(n);
            if fm.rows() != y.dim(n) || fm.cols() != x.dim(n) {
                return Err(Error::InvalidMap(format!("component {n} has the wrong shape")));
            }
            if !(0..x.alg.dim()).all(|b| fm.mul(x.obj(n).act(b)) == y.obj(n).act(b).mul(&fm)) {
                return Err(Error::InvalidMap(format!("component {n} is not a module map")));
            }
            if y.d(n).mul(&fm) != self.at(n - 1).mul(&x.d(n)) {
                return Err(Error::InvalidMap(format!("component {n} does not commute with d")));
            }
        }
        Ok(())
    }

    /// Component `f_n` as a matrix (zero outside the windows).
    pub fn at(&self, n: i64) -> Mat {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.mats.len() {
            self.mats[k as usize].clone()
        } else {
            Mat::zeros(self.source.field(), self.target.dim(n), self.source.dim(n))
        }
    }

    pub fn component(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.obj(n).clone(), self.target.obj(n).clone(), self.at(n))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        let (lo, hi) = span(&self.source, &self.target);
        lo..=hi
    }

    pub fn identity(x: &Complex) -> Self {
        Self::from_parts(x, x, |n| Mat::identity(x.field(), x.dim(n)))
    }

    pub fn zero(x: &Complex, y: &Complex) -> Self {
        Self::from_parts(x, y, |n| Mat::zeros(x.field(), y.dim(n), x.dim(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> Result<Self> {
        if f.target != self.source {
            return Err(Error::Mismatch("chain maps are not composable".into()));
        }
        Ok(self.after(f))
    }

    /// `self ∘ f`, panicking on mismatched complexes.
    pub fn after(&self, f: &ChainMap) -> Self {
        assert!(f.target == self.source, "chain maps are not composable");
        Self::from_parts(&f.source, &self.target, |n| self.at(n).mul(&f.at(n)))
    }

    fn same_ends(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("chain maps with different ends".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<Self> {
        self.same_ends(other)?;
        Ok(Self::from_parts(&self.source, &self.target, |n| self.at(n).add(&other.at(n))))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<Self> {
        self.same_ends(other)?;
        Ok(Self::from_parts(&self.source, &self.target, |n| self.at(n).sub(&other.at(n))))
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(&self.source, &self.target, |n| self.at(n).neg())
    }

    pub fn scale(&self, c: u8) -> Self {
        Self::from_parts(&self.source, &self.target, |n| self.at(n).scale(c))
    }

    /// `Σ^k f` (no sign on components).
    pub fn shift(&self, k: i64) -> Self {
        Self::from_parts(&self.source.shift(k), &self.target.shift(k), |n| self.at(n - k))
    }

    pub fn is_iso(&self) -> bool {
        self.degrees().all(|n| self.component(n).is_iso())
    }

    /// Degreewise inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Self> {
        let invs: Vec<(i64, Mat)> = self
            .degrees()
            .map(|n| self.at(n).inverse().map(|m| (n, m)))
            .collect::<Option<_>>()?;
        Some(Self::from_parts(&self.target, &self.source, |n| {
            invs.iter()
                .find(|(k, _)| *k == n)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| Mat::zeros(self.source.field(), self.source.dim(n), self.target.dim(n)))
        }))
    }

    /// The degreewise kernel with its inclusion.
    pub fn kernel(&self) -> (Complex, ChainMap) {
        let x = &self.source;
        let f = x.field();
        let subs: Vec<_> = x.degrees().map(|n| self.component(n).kernel()).collect();
        let lo = x.lo();
        let at = |n: i64| &subs[(n - lo) as usize];
        let k = Complex::from_fn(
            x.algebra(),
            x.lo(),
            x.hi(),
            |n| at(n).module.clone(),
            |n, src, tgt| {
                if n == lo {
                    Mat::zeros(f, tgt.dim(), src.dim())
                } else {
                    let moved = x.d(n).mul(&at(n).incl.mat);
                    at(n - 1).incl.mat.solve(&moved).expect("shapes").expect("kernel is a subcomplex")
                }
            },
        );
        let incl = ChainMap::from_parts(&k, x, |n| {
            if x.degrees().contains(&n) { at(n).incl.mat.clone() } else { Mat::zeros(f, x.dim(n), k.dim(n)) }
        });
        (k, incl)
    }

    /// The degreewise cokernel with its projection.
    pub fn cokernel(&self) -> Quotient {
        let spans: Vec<(i64, Mat)> = self.target.degrees().map(|n| (n, self.at(n))).collect();
        self.target.quotient(&spans).expect("images form a subcomplex")
    }

    /// `(f_1, ..., f_k): ⊕ X_i -> Y` from a sum of complexes.
    pub fn from_sum(sum: &ComplexSum, maps: &[&ChainMap]) -> Result<Self> {
        let target = &maps.first().ok_or_else(|| Error::Mismatch("empty map list".into()))?.target;
        let f = target.field();
        Self::new(&sum.complex, target, |n| {
            let mut m = Mat::zeros(f, target.dim(n), 0);
            for g in maps {
                m = m.hstack(&g.at(n));
            }
            m
        })
    }

    /// `(f_1; ...; f_k): X -> ⊕ Y_i` into a sum of complexes.
    pub fn into_sum(sum: &ComplexSum, maps: &[&ChainMap]) -> Result<Self> {
        let source = &maps.first().ok_or_else(|| Error::Mismatch("empty map list".into()))?.source;
        let f = source.field();
        Self::new(source, &sum.complex, |n| {
            let mut m = Mat::zeros(f, 0, source.dim(n));
            for g in maps {
                m = m.vstack(&g.at(n));
            }
            m
        })
    }

    /// `f ⊕ g ⊕ ...` between sums.
    pub fn sum_of(src: &ComplexSum, tgt: &ComplexSum, maps: &[&ChainMap]) -> Self {
        let f = src.complex.field();
        Self::from_parts(&src.complex, &tgt.complex, |n| {
            let blocks: Vec<Mat> = maps.iter().map(|g| g.at(n)).collect();
            Mat::block_diag(f, &blocks.iter().collect::<Vec<_>>())
        })
    }
}

/// The cone of `f: X -> Y` with its canonical conflation `Y -> cone(f) -> ΣX`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

/// `cone(f)_n = Y_n ⊕ X_{n-1}` with differential `[[d^Y, f], [0, -d^X]]`.
pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (&f.source, &f.target);
    let sx = x.shift(1);
    let alg = x.algebra().clone();
    let fld = x.field();
    let (lo, hi) = span(y, &sx);
    let sums: Vec<_> = (lo..=hi).map(|n| Module::direct_sum(&alg, &[y.obj(n), x.obj(n - 1)])).collect();
    let at = |n: i64| &sums[(n - lo) as usize];
    let complex = Complex::from_fn(
        &alg,
        lo,
        hi,
        |n| at(n).module.clone(),
        |n, _, _| {
            Mat::block(
                fld,
                &[y.dim(n - 1), x.dim(n - 2)],
                &[y.dim(n), x.dim(n - 1)],
                &[vec![Some(&y.d(n)), Some(&f.at(n - 1))], vec![None, Some(&x.d(n - 1).neg())]],
            )
        },
    );
    let incl = ChainMap::from_parts(y, &complex, |n| {
        let mut m = Mat::zeros(fld, y.dim(n) + x.dim(n - 1), y.dim(n));
        m.paste(0, 0, &Mat::identity(fld, y.dim(n)));
        m
    });
    let proj = ChainMap::from_parts(&complex, &sx, |n| {
        let mut m = Mat::zeros(fld, x.dim(n - 1), y.dim(n) + x.dim(n - 1));
        m.paste(0, y.dim(n), &Mat::identity(fld, x.dim(n - 1)));
        m
    });
    Cone { complex, incl, proj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::projective::{indec_projective, simple};
    use crate::algebra::standard::*;

    pub(crate) fn d_two_term() -> Complex {
        // D --x--> D in degrees 1, 0.
        let d = dual_numbers(2);
        let dd = indec_projective(&d, 0).unwrap();
        let x = d.right_mult(&[0, 1]);
        Complex::new(&d, 0, vec![dd.clone(), dd], vec![Mat::zeros(d.field(), 0, 2), x]).unwrap()
    }

    #[test]
    fn construction_and_trimming() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let z = Module::zero(d.clone());
        let c = Complex::new(&d, -2, vec![z.clone(), k.clone(), z], vec![Mat::zeros(d.field(), 0, 0), Mat::zeros(d.field(), 0, 1), Mat::zeros(d.field(), 1, 0)]).unwrap();
        assert_eq!(c, Complex::sphere(-1, &k));
        assert_eq!((c.lo(), c.hi()), (-1, -1));
        let disc = Complex::disc(3, &k);
        assert_eq!((disc.lo(), disc.hi()), (2, 3));
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = dual_numbers(3);
        let dd = indec_projective(&d, 0).unwrap();
        let one = Mat::identity(d.field(), 2);
        let r = Complex::new(&d, 0, vec![dd.clone(), dd.clone(), dd], vec![Mat::zeros(d.field(), 0, 2), one.clone(), one]);
        assert!(r.is_err());
    }

    #[test]
    fn shift_twice_restores_differentials() {
        let c = d_two_term();
        let back = c.shift(1).shift(-1);
        assert_eq!(back, c);
        let d3 = dual_numbers(3);
        let dd = indec_projective(&d3, 0).unwrap();
        let x = d3.right_mult(&[0, 1]);
        let c3 = Complex::new(&d3, 0, vec![dd.clone(), dd], vec![Mat::zeros(d3.field(), 0, 2), x.clone()]).unwrap();
        assert_eq!(c3.shift(1).d(2), x.neg());
        assert_eq!(c3.shift(2).d(3), x);
    }

    #[test]
    fn cone_of_identity_and_sums() {
        let c = d_two_term();
        let cn = cone(&ChainMap::identity(&c));
        cn.complex.validate().unwrap();
        cn.incl.validate().unwrap();
        cn.proj.validate().unwrap();
        assert_eq!(cn.complex.total_dim(), 2 * c.total_dim());
        let s = Complex::direct_sum(&[&c, &cn.complex]);
        s.complex.validate().unwrap();
        for m in s.incl.iter().chain(&s.proj) {
            m.validate().unwrap();
        }
    }

    #[test]
    fn kernel_and_cokernel() {
        let c = d_two_term();
        let fld = c.field();
        let x = c.algebra().right_mult(&[0, 1]);
        let f = ChainMap::new(&c, &c, |n| if (0..=1).contains(&n) { x.clone() } else { Mat::zeros(fld, 0, 0) }).unwrap();
        let (k, incl) = f.kernel();
        incl.validate().unwrap();
        assert_eq!(k.total_dim(), 2);
        let q = f.cokernel();
        q.proj.validate().unwrap();
        assert_eq!(q.complex.total_dim(), 2);
    }
}
