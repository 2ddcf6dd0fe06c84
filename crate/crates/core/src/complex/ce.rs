//! Short exact sequences of complexes, the Cartan-Eilenberg exact structure and the
//! sphere/disc decomposition of CE-projective and CE-injective complexes.

use serde::Serialize;

use crate::algebra::conflation::Conflation;
use crate::algebra::module::Module;
use crate::algebra::projective::{is_injective, is_projective};
use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::homology::{induced_with, Functor, Functors};
use super::homotopy::ChainHom;
use super::{ChainMap, Complex, ComplexSum};

/// `X --i--> Y --p--> Z`, degreewise a conflation.
#[derive(Clone, Debug)]
pub struct ComplexConflation {
    pub i: ChainMap,
    pub p: ChainMap,
}

/// Per-functor exactness of `F_n(Ξ)` over all degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CeReport {
    pub via_z: bool,
    pub via_b: bool,
    pub via_h: bool,
    pub via_c: bool,
}

impl CeReport {
    pub fn agree(&self) -> bool {
        self.via_z == self.via_b && self.via_b == self.via_h && self.via_h == self.via_c
    }
}

/// A comparison of middle terms produced by a pushout or pullback.
#[derive(Clone, Debug)]
pub struct TransportedComplex {
    pub conflation: ComplexConflation,
    pub middle: ChainMap,
}

impl ComplexConflation {
    pub fn new(i: ChainMap, p: ChainMap) -> Result<Self> {
        let c = Self { i, p };
        c.validate()?;
        Ok(c)
    }

    pub fn left(&self) -> &Complex {
        &self.i.source
    }
    pub fn middle(&self) -> &Complex {
        &self.i.target
    }
    pub fn right(&self) -> &Complex {
        &self.p.target
    }

    pub fn validate(&self) -> Result<()> {
        if self.i.target != self.p.source {
            return Err(Error::InvalidConflation("maps are not composable".into()));
        }
        self.i.validate()?;
        self.p.validate()?;
        for n in self.i.degrees().chain(self.p.degrees()) {
            Conflation::new(self.i.component(n), self.p.component(n))
                .map_err(|e| Error::InvalidConflation(format!("degree {n}: {e}")))?;
        }
        Ok(())
    }

    /// The conflation in degree `n`.
    pub fn degree(&self, n: i64) -> Conflation {
        Conflation { i: self.i.component(n), p: self.p.component(n) }
    }

    /// Exactness of `F_n(X) -> F_n(Y) -> F_n(Z)` for every `n`, per functor.
    pub fn ce_report(&self) -> CeReport {
        let (x, y, z) = (self.left(), self.middle(), self.right());
        let (lo, hi) = super::span(y, &Complex::direct_sum(&[x, z]).complex);
        let mut ok = [true; 4];
        for n in lo - 1..=hi + 1 {
            let (fx, fy, fz) = (Functors::new(x, n), Functors::new(y, n), Functors::new(z, n));
            for (k, w) in Functor::ALL.into_iter().enumerate() {
                let fi = induced_with(&self.i, w, &fx, &fy);
                let fp = induced_with(&self.p, w, &fy, &fz);
                let exact = fi.rank() == fi.source.dim()
                    && fp.rank() == fp.target.dim()
                    && fy.object(w).dim() == fi.source.dim() + fp.target.dim();
                ok[k] &= exact;
            }
        }
        CeReport { via_z: ok[0], via_b: ok[1], via_h: ok[2], via_c: ok[3] }
    }

    /// CE-exactness; disagreement between the four criteria is an invariant violation.
    pub fn is_ce_exact(&self) -> Result<bool> {
        let r = self.ce_report();
        if !r.agree() {
            return Err(Error::Invariant(format!("CE criteria disagree: {r:?}")));
        }
        Ok(r.via_z)
    }

    /// Whether every degree splits.
    pub fn is_degreewise_split(&self) -> bool {
        self.i.degrees().all(|n| self.degree(n).is_trivial())
    }

    /// A chain-map retraction `r` with `r i = 1`, if the sequence splits as complexes.
    pub fn retraction(&self) -> Option<ChainMap> {
        let hom = ChainHom::new(self.middle(), self.left());
        let f = self.left().field();
        let images: Vec<Mat> = hom
            .basis
            .iter()
            .map(|r| {
                let comp = r.after(&self.i);
                let parts: Vec<u8> = self.left().degrees().flat_map(|n| comp.at(n).vectorize()).collect();
                Mat::column_vector(f, &parts)
            })
            .collect();
        let target: Vec<u8> =
            self.left().degrees().flat_map(|n| Mat::identity(f, self.left().dim(n)).vectorize()).collect();
        crate::algebra::hom::solve_combination(&images, &Mat::column_vector(f, &target)).map(|c| hom.element(&c))
    }

    /// Pushout along `f: X -> X'`: middle `coker(X -> Y ⊕ X', x |-> (-i x, f x))`.
    pub fn pushout(&self, f: &ChainMap) -> Result<TransportedComplex> {
        if f.source != *self.left() {
            return Err(Error::Mismatch("pushout map must start at the left term".into()));
        }
        let sum = Complex::direct_sum(&[self.middle(), &f.target]);
        let rel = ChainMap::into_sum(&sum, &[&self.i.neg(), f])?;
        let q = rel.cokernel();
        let inflation = q.proj.after(&sum.incl[1]);
        let zero = ChainMap::zero(&f.target, self.right());
        let induced = ChainMap::from_sum(&sum, &[&self.p, &zero])?;
        let p = ChainMap::new(&q.complex, self.right(), |n| induced.at(n).mul(&q.section(n)))?;
        let middle = q.proj.after(&sum.incl[0]);
        Ok(TransportedComplex { conflation: ComplexConflation::new(inflation, p)?, middle })
    }

    /// Pullback along `g: Z' -> Z`: middle `ker(Y ⊕ Z' -> Z, (y, z) |-> p y - g z)`.
    pub fn pullback(&self, g: &ChainMap) -> Result<TransportedComplex> {
        if g.target != *self.right() {
            return Err(Error::Mismatch("pullback map must end at the right term".into()));
        }
        let sum = Complex::direct_sum(&[self.middle(), &g.source]);
        let diff = ChainMap::from_sum(&sum, &[&self.p, &g.neg()])?;
        let (e, incl) = diff.kernel();
        let zero = ChainMap::zero(self.left(), &g.source);
        let into = ChainMap::into_sum(&sum, &[&self.i, &zero])?;
        let inflation = ChainMap::new(self.left(), &e, |n| {
            incl.at(n).solve(&into.at(n)).expect("shapes").expect("(i x, 0) lies in the pullback")
        })?;
        let p = sum.proj[1].after(&incl);
        let middle = sum.proj[0].after(&incl);
        Ok(TransportedComplex { conflation: ComplexConflation::new(inflation, p)?, middle })
    }

    /// Direct sum of conflations of complexes.
    pub fn sum(parts: &[&ComplexConflation]) -> Result<Self> {
        let xs: Vec<&Complex> = parts.iter().map(|c| c.left()).collect();
        let ys: Vec<&Complex> = parts.iter().map(|c| c.middle()).collect();
        let zs: Vec<&Complex> = parts.iter().map(|c| c.right()).collect();
        let (sx, sy, sz) = (Complex::direct_sum(&xs), Complex::direct_sum(&ys), Complex::direct_sum(&zs));
        let is: Vec<&ChainMap> = parts.iter().map(|c| &c.i).collect();
        let ps: Vec<&ChainMap> = parts.iter().map(|c| &c.p).collect();
        Self::new(ChainMap::sum_of(&sx, &sy, &is), ChainMap::sum_of(&sy, &sz, &ps))
    }
}

/// `X ≅ ⊕ S^n(H_n) ⊕ D^n(B_{n-1})` with the explicit isomorphism from the sum.
#[derive(Clone, Debug)]
pub struct SphereDiscDecomposition {
    pub spheres: Vec<(i64, Module)>,
    pub discs: Vec<(i64, Module)>,
    pub sum: ComplexSum,
    pub iso: ChainMap,
}

/// Decomposes `X` when every `B_n -> Z_n -> H_n` and `Z_n -> X_n -> B_{n-1}` splits.
pub fn sphere_disc_decomposition(x: &Complex) -> Result<Option<SphereDiscDecomposition>> {
    let f = x.field();
    let fun: Vec<Functors> = (x.lo() - 1..=x.hi() + 1).map(|n| Functors::new(x, n)).collect();
    let at = |n: i64| &fun[(n - x.lo() + 1) as usize];
    let mut h_sections = Vec::new();
    let mut d_sections = Vec::new();
    for n in x.degrees() {
        let fn_ = at(n);
        let zh = Conflation::new(fn_.boundaries_in_cycles(), fn_.h.proj.clone())?;
        let Some(sp) = zh.splitting() else { return Ok(None) };
        h_sections.push(fn_.z.incl.mat.mul(&sp.s.mat));
        // d_n corestricted to B_{n-1}.
        let below = at(n - 1);
        let onto = below.b.incl.mat.solve(&x.d(n)).expect("shapes").expect("image of d_n is B_{n-1}");
        let onto = crate::algebra::module::ModuleMap::new_unchecked(x.obj(n).clone(), below.b.module.clone(), onto);
        let xb = Conflation::new(fn_.z.incl.clone(), onto)?;
        let Some(sp) = xb.splitting() else { return Ok(None) };
        d_sections.push(sp.s.mat.clone());
    }
    let mut spheres = Vec::new();
    let mut discs = Vec::new();
    let mut parts = Vec::new();
    // Components from each summand into X, keyed by degree.
    let mut pieces: Vec<Vec<(i64, Mat)>> = Vec::new();
    for (k, n) in x.degrees().enumerate() {
        let h = at(n).h.module.clone();
        if h.dim() > 0 {
            parts.push(Complex::sphere(n, &h));
            pieces.push(vec![(n, h_sections[k].clone())]);
            spheres.push((n, h));
        }
        let b = at(n - 1).b.module.clone();
        if b.dim() > 0 {
            parts.push(Complex::disc(n, &b));
            pieces.push(vec![(n, d_sections[k].clone()), (n - 1, at(n - 1).b.incl.mat.clone())]);
            discs.push((n, b));
        }
    }
    let refs: Vec<&Complex> = parts.iter().collect();
    let sum = if refs.is_empty() { Complex::direct_sum(&[&Complex::zero(x.algebra())]) } else { Complex::direct_sum(&refs) };
    let maps: Vec<ChainMap> = parts
        .iter()
        .zip(&pieces)
        .map(|(c, ps)| {
            ChainMap::new(c, x, |n| {
                ps.iter()
                    .find(|(k, _)| *k == n)
                    .map(|(_, m)| m.clone())
                    .unwrap_or_else(|| Mat::zeros(f, x.dim(n), c.dim(n)))
            })
        })
        .collect::<Result<_>>()?;
    let iso = if maps.is_empty() {
        ChainMap::zero(&sum.complex, x)
    } else {
        ChainMap::from_sum(&sum, &maps.iter().collect::<Vec<_>>())?
    };
    if !iso.is_iso() {
        return Err(Error::Invariant("sphere/disc comparison map is not an isomorphism".into()));
    }
    Ok(Some(SphereDiscDecomposition { spheres, discs, sum, iso }))
}

fn all_functor_values(x: &Complex, pred: impl Fn(&Module) -> Result<bool>) -> Result<bool> {
    for n in x.lo() - 1..=x.hi() + 1 {
        let fs = Functors::new(x, n);
        for w in Functor::ALL {
            if !pred(fs.object(w))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// CE-projectivity test with the disc/sphere decomposition on success.
pub fn classify_ce_projective(x: &Complex) -> Result<Option<SphereDiscDecomposition>> {
    if !all_functor_values(x, is_projective)? {
        return Ok(None);
    }
    sphere_disc_decomposition(x)
}

/// CE-injectivity test with the disc/sphere decomposition on success.
pub fn classify_ce_injective(x: &Complex) -> Result<Option<SphereDiscDecomposition>> {
    if !all_functor_values(x, is_injective)? {
        return Ok(None);
    }
    sphere_disc_decomposition(x)
}
