//! Filtrations by CE-projective complexes for dg-projective complexes whose
//! homology and cycle modules have bounded projective dimension.
//!
//! Base case: projective `H_i` and `Z_i` make `X` itself CE-projective. Step:
//! take a CE-exact `T -> P -> X` with `P` CE-projective, push out along
//! `T -> cone(1_T)` to get `cone(1_T) -> Z -> X`. That conflation splits since
//! `cone(1_T)` is contractible, so `X` is a summand of `Z`, and `P -> Z -> ΣT`
//! exhibits the filtration.

use crate::algebra::hom::solve_combination;
use crate::algebra::projective::{projective_cover, projective_dimension, DIM_CAP};
use crate::complex::ce::{classify_ce_projective, ComplexConflation, SphereDiscDecomposition};
use crate::complex::homology::{Functor, Functors};
use crate::complex::homotopy::ChainHom;
use crate::complex::{cone, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// `0 = F_0 ⊆ F_1 ⊆ ... ⊆ F_m = Z` with CE-projective factors and a split
/// embedding `X -> Z`.
#[derive(Clone, Debug)]
pub struct FiltCertificate {
    pub z: Complex,
    /// Inclusions `F_k -> Z` for `k = 1..=m`.
    pub steps: Vec<ChainMap>,
    /// Sphere/disc decomposition of each factor `F_k / F_{k-1}`.
    pub factors: Vec<SphereDiscDecomposition>,
    pub section: ChainMap,
    pub retraction: ChainMap,
}

impl FiltCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-checks the split embedding, the nesting of steps and every factor.
    pub fn verify(&self, x: &Complex) -> Result<bool> {
        if self.section.source != *x || self.retraction.after(&self.section) != ChainMap::identity(x) {
            return Ok(false);
        }
        let Some(last) = self.steps.last() else { return Ok(false) };
        if !last.is_iso() {
            return Ok(false);
        }
        let mut prev: Option<&ChainMap> = None;
        for (k, step) in self.steps.iter().enumerate() {
            let quotient = match prev {
                None => step.source.clone(),
                Some(p) => {
                    let into = ChainHom::new(&p.source, &step.source);
                    let Some(e) = solve_chain(&into, |m| step.after(m), p) else { return Ok(false) };
                    e.cokernel().complex
                }
            };
            if classify_ce_projective(&quotient)?.is_none() || self.factors.len() <= k {
                return Ok(false);
            }
            prev = Some(step);
        }
        Ok(true)
    }
}

/// Outcome of [`filt_bound_check`].
#[derive(Clone, Debug)]
pub enum FiltBound {
    PreconditionFailed(String),
    Certificate(FiltCertificate),
}

/// Solves `φ(c) = target` over a basis of chain maps.
fn solve_chain(hom: &ChainHom, phi: impl Fn(&ChainMap) -> ChainMap, target: &ChainMap) -> Option<ChainMap> {
    let f = target.source.field();
    let degs: Vec<i64> = target.source.degrees().collect();
    let flat = |m: &ChainMap| Mat::column_vector(f, &degs.iter().flat_map(|&n| m.at(n).vectorize()).collect::<Vec<_>>());
    if hom.basis.is_empty() {
        return target.is_zero().then(|| hom.element(&[]));
    }
    let images: Vec<Mat> = hom.basis.iter().map(|b| flat(&phi(b))).collect();
    solve_combination(&images, &flat(target)).map(|c| hom.element(&c))
}

fn check_precondition(x: &Complex, n: usize) -> Result<Option<String>> {
    if !x.is_degreewise_projective()? {
        return Ok(Some("complex is not degreewise projective".into()));
    }
    for i in x.degrees() {
        let fs = Functors::new(x, i);
        for (which, m) in [(Functor::H, fs.object(Functor::H)), (Functor::Z, fs.object(Functor::Z))] {
            if !projective_dimension(m, DIM_CAP)?.at_most(n) {
                return Ok(Some(format!("{which:?}_{i} has projective dimension above {n}")));
            }
        }
    }
    Ok(None)
}

/// A CE-exact `T -> P -> X` with `P = ⊕ S^i(P(Z_i)) ⊕ D^i(X_i)`.
fn ce_projective_presentation(x: &Complex) -> Result<ComplexConflation> {
    let mut parts: Vec<Complex> = Vec::new();
    let mut maps: Vec<Box<dyn Fn(&Complex) -> Result<ChainMap>>> = Vec::new();
    for i in x.degrees() {
        let fs = Functors::new(x, i);
        let cover = projective_cover(&fs.z.module)?;
        if cover.module.dim() > 0 {
            let into = fs.z.incl.after(&cover.epi).mat;
            parts.push(Complex::sphere(i, &cover.module));
            let xc = x.clone();
            maps.push(Box::new(move |s| ChainMap::new(s, &xc, |n| if n == i { into.clone() } else { Mat::zeros(xc.field(), xc.dim(n), s.dim(n)) })));
        }
        if x.dim(i) > 0 {
            parts.push(Complex::disc(i, x.obj(i)));
            let xc = x.clone();
            maps.push(Box::new(move |s| {
                ChainMap::new(s, &xc, |n| {
                    if n == i {
                        Mat::identity(xc.field(), xc.dim(i))
                    } else if n == i - 1 {
                        xc.d(i)
                    } else {
                        Mat::zeros(xc.field(), xc.dim(n), s.dim(n))
                    }
                })
            }));
        }
    }
    let refs: Vec<&Complex> = parts.iter().collect();
    let sum = Complex::direct_sum(&refs);
    let comps: Vec<ChainMap> = parts.iter().zip(&maps).map(|(c, m)| m(c)).collect::<Result<_>>()?;
    let comp_refs: Vec<&ChainMap> = comps.iter().collect();
    let pi = ChainMap::from_sum(&sum, &comp_refs)?;
    let (_, incl) = pi.kernel();
    let conf = ComplexConflation::new(incl, pi)?;
    if !conf.is_ce_exact()? {
        return Err(Error::Invariant("CE-projective presentation is not CE-exact".into()));
    }
    Ok(conf)
}

/// Runs the constructive induction for `n <= 1` (filtrations of length at most 2).
pub fn filt_bound_check(x: &Complex, n: usize) -> Result<FiltBound> {
    if let Some(reason) = check_precondition(x, n)? {
        return Ok(FiltBound::PreconditionFailed(reason));
    }
    if let Some(dec) = classify_ce_projective(x)? {
        // Pad with zero factors so the filtration has exactly n + 1 steps.
        let id = ChainMap::identity(x);
        let zero = classify_ce_projective(&Complex::zero(x.algebra()))?
            .ok_or_else(|| Error::Invariant("zero complex is not CE-projective".into()))?;
        let mut factors = vec![dec];
        factors.extend(std::iter::repeat_n(zero, n));
        return Ok(FiltBound::Certificate(FiltCertificate {
            z: x.clone(),
            steps: vec![id.clone(); n + 1],
            factors,
            section: id.clone(),
            retraction: id,
        }));
    }
    if n == 0 {
        return Err(Error::Invariant("projective homology and cycles but not CE-projective".into()));
    }
    let pres = ce_projective_presentation(x)?;
    let t = pres.left().clone();
    if classify_ce_projective(&t)?.is_none() {
        return Err(Error::Unsupported("filtrations longer than two steps are not constructed".into()));
    }
    let c = cone(&ChainMap::identity(&t));
    let pushed = pres.pushout(&c.incl)?;
    let z = pushed.conflation.middle().clone();
    let deflation = pushed.conflation.p.clone();
    let section = solve_chain(&ChainHom::new(x, &z), |s| deflation.after(s), &ChainMap::identity(x))
        .ok_or_else(|| Error::Invariant("pushed-out conflation does not split".into()))?;
    let p_into_z = pushed.middle.clone();
    let quotient = p_into_z.cokernel();
    let first = classify_ce_projective(pres.middle())?
        .ok_or_else(|| Error::Invariant("presentation middle is not CE-projective".into()))?;
    let second = classify_ce_projective(&quotient.complex)?
        .ok_or_else(|| Error::Invariant("top factor is not CE-projective".into()))?;
    let cert = FiltCertificate {
        z: z.clone(),
        steps: vec![p_into_z, ChainMap::identity(&z)],
        factors: vec![first, second],
        section,
        retraction: deflation,
    };
    if !cert.verify(x)? {
        return Err(Error::Invariant("filtration certificate failed to verify".into()));
    }
    Ok(FiltBound::Certificate(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::projective::{indec_projective, indec_projectives};
    use crate::algebra::standard::*;
    use crate::complex::random::random_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn projective_sphere_is_its_own_filtration() {
        let a = a2(2);
        let p = indec_projective(&a, 0).unwrap();
        match filt_bound_check(&Complex::sphere(0, &p), 0).unwrap() {
            FiltBound::Certificate(c) => assert_eq!(c.len(), 1),
            FiltBound::PreconditionFailed(r) => panic!("{r}"),
        }
    }

    #[test]
    fn a2_complexes_get_two_step_filtrations() {
        let a = a2(2);
        let ps = indec_projectives(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = random_complex(&mut rng, 0, &[ps[1].clone(), ps[0].clone(), ps[1].clone()]);
            match filt_bound_check(&x, 1).unwrap() {
                FiltBound::Certificate(c) => {
                    assert!(c.verify(&x).unwrap());
                    assert_eq!(c.len(), 2);
                }
                FiltBound::PreconditionFailed(r) => panic!("{r}"),
            }
        }
    }

    #[test]
    fn precondition_is_reported() {
        let d = dual_numbers(2);
        let dd = indec_projective(&d, 0).unwrap();
        let x = random_complex(&mut ChaCha8Rng::seed_from_u64(2), 0, &[dd.clone(), dd.clone()]);
        if crate::complex::homology::homology_dims(&x).iter().any(|(_, h)| *h == 1) {
            assert!(matches!(filt_bound_check(&x, 1).unwrap(), FiltBound::PreconditionFailed(_)));
        }
    }
}
