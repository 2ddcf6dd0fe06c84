//! Factorization of chain maps through acyclic and contractible complexes.
//!
//! Let `p: P -> X` be a truncated dg-projective resolution with `T ≥ hi(Y) + 2`.
//! Then `f: X -> Y` factors through an acyclic complex iff `f p ≃ 0`. Given
//! `f p = d s + s d`, put `W = cone(p) / Z_{T+1}(cone(p))`, `h(x) = [(x, 0)]` and
//! `g[(x, q)] = f x + s q`; `g` is well defined because `Y_{T+1} = 0`.

use crate::complex::homology::is_exact;
use crate::complex::homotopy::null_homotopy;
use crate::complex::resolution::dg_projective_resolution;
use crate::complex::{cone, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// `f = g ∘ h` through the middle complex `w`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub middle: Complex,
    pub h: ChainMap,
    pub g: ChainMap,
}

impl Factorization {
    pub fn composes_to(&self, f: &ChainMap) -> bool {
        self.h.target == self.middle && self.g.source == self.middle && self.g.after(&self.h) == *f
    }

    /// Composition identity and acyclicity of the middle.
    pub fn verify_acyclic(&self, f: &ChainMap) -> bool {
        self.composes_to(f) && is_exact(&self.middle)
    }

    /// Composition identity, degreewise projective middle and `1_W ≃ 0`.
    pub fn verify_contractible(&self, f: &ChainMap) -> Result<bool> {
        Ok(self.composes_to(f)
            && self.middle.is_degreewise_projective()?
            && null_homotopy(&ChainMap::identity(&self.middle)).is_some())
    }
}

/// For `f = d s + s d`: `X -> cone(1_X) -> Y`, `x ↦ (x, 0)`, `(x, x') ↦ f x + s x'`.
fn through_cone_of_identity(f: &ChainMap, s: &crate::complex::homotopy::Homotopy) -> Result<Factorization> {
    let x = &f.source;
    let c = cone(&ChainMap::identity(x));
    let g = ChainMap::new(&c.complex, &f.target, |n| f.at(n).hstack(&s.at(n - 1)))?;
    Ok(Factorization { middle: c.complex, h: c.incl, g })
}

/// Decides `f ∈ ⟨Acyc⟩`, returning a verified witness when it holds.
pub fn factors_through_acyclic(f: &ChainMap) -> Result<Option<Factorization>> {
    let (x, y) = (&f.source, &f.target);
    if x.is_zero() || y.is_zero() {
        let zero = Complex::zero(x.algebra());
        return Ok(Some(Factorization {
            middle: zero.clone(),
            h: ChainMap::zero(x, &zero),
            g: ChainMap::zero(&zero, y),
        }));
    }
    if let Some(s) = null_homotopy(f) {
        let w = through_cone_of_identity(f, &s)?;
        return check(w, f).map(Some);
    }
    let t = y.hi().max(x.hi()) + 2;
    let res = dg_projective_resolution(x, t)?;
    let fp = f.after(&res.map);
    let Some(s) = null_homotopy(&fp) else { return Ok(None) };
    let c = cone(&res.map);
    let top = t + 1;
    let cycles = c.complex.d(top).kernel_basis();
    let q = c.complex.quotient(&[(top, cycles)])?;
    let h = q.proj.after(&c.incl);
    let fld = x.field();
    let g = ChainMap::new(&q.complex, y, |n| {
        let on_cone = if n > y.hi() {
            Mat::zeros(fld, y.dim(n), x.dim(n) + res.complex.dim(n - 1))
        } else {
            f.at(n).hstack(&s.at(n - 1))
        };
        on_cone.mul(&q.section(n))
    })?;
    check(Factorization { middle: q.complex, h, g }, f).map(Some)
}

fn check(w: Factorization, f: &ChainMap) -> Result<Factorization> {
    if !w.verify_acyclic(f) {
        return Err(Error::Invariant("acyclic factorization failed to verify".into()));
    }
    Ok(w)
}

/// Decides whether `f` factors through a projective object of the category of
/// complexes (a contractible complex of projectives), i.e. whether `f ≃ 0`.
/// Needs a degreewise projective source.
pub fn factors_through_contractible(f: &ChainMap) -> Result<Option<Factorization>> {
    if !f.source.is_degreewise_projective()? {
        return Err(Error::Precondition("source must be degreewise projective".into()));
    }
    let Some(s) = null_homotopy(f) else { return Ok(None) };
    let w = through_cone_of_identity(f, &s)?;
    if !w.verify_contractible(f)? {
        return Err(Error::Invariant("contractible factorization failed to verify".into()));
    }
    Ok(Some(w))
}
