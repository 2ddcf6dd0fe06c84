//! Truncated dg-projective resolutions of bounded complexes.
//!
//! Built degree by degree from the bottom: `P_n` covers
//! `K_n = {(x, q) ∈ X_n ⊕ P_{n-1} : d x = p q, d q = 0}`. After step `n`,
//! `H_n(p)` is onto and `H_{n-1}(p)` is injective, so stopping at `T` leaves a
//! quasi-isomorphism in degrees `≤ T - 1`.
//!
//! For `f: X -> Y`, the null-homotopy equations of `f p` only involve `P_n` for
//! `n ≤ hi(Y)`, so any `T ≥ hi(Y) + 2` decides `f p ≃ 0` exactly as the
//! untruncated resolution would.

use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::projective::projective_cover;
use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::{ChainMap, Complex};

#[derive(Clone, Debug)]
pub struct DgResolution {
    pub complex: Complex,
    pub map: ChainMap,
    pub truncation: i64,
}

pub fn dg_projective_resolution(x: &Complex, t: i64) -> Result<DgResolution> {
    if t < x.hi() + 2 {
        return Err(Error::Precondition(format!("truncation degree {t} is below hi(X) + 2 = {}", x.hi() + 2)));
    }
    if x.is_degreewise_projective()? {
        return Ok(DgResolution { complex: x.clone(), map: ChainMap::identity(x), truncation: t });
    }
    let alg = x.algebra().clone();
    let f = x.field();
    let lo = x.lo();
    let mut objects: Vec<Module> = Vec::new();
    let mut diffs: Vec<Mat> = Vec::new();
    let mut comps: Vec<Mat> = Vec::new();
    let zero = Module::zero(alg.clone());
    for n in lo..=t {
        let prev = objects.last().unwrap_or(&zero).clone();
        let prev_p = comps.last().cloned().unwrap_or_else(|| Mat::zeros(f, x.dim(n - 1), 0));
        let prev_d = diffs.last().cloned().unwrap_or_else(|| Mat::zeros(f, 0, 0));
        let prev2_dim = if objects.len() >= 2 { objects[objects.len() - 2].dim() } else { 0 };
        // (x, q) |-> (d x - p q, d q) into X_{n-1} ⊕ P_{n-2}.
        let src = Module::direct_sum(&alg, &[x.obj(n), &prev]);
        let below2 = if objects.len() >= 2 { objects[objects.len() - 2].clone() } else { zero.clone() };
        let tgt = Module::direct_sum(&alg, &[x.obj(n - 1), &below2]);
        let top = x.d(n).hstack(&prev_p.neg());
        let bottom = Mat::zeros(f, prev2_dim, x.dim(n)).hstack(&prev_d);
        let cond = ModuleMap::new_unchecked(src.module.clone(), tgt.module.clone(), top.vstack(&bottom));
        debug_assert!(cond.intertwines());
        let k = cond.kernel();
        let cover = projective_cover(&k.module)?;
        let into = k.incl.after(&cover.epi);
        let pn = src.proj[0].after(&into);
        let dn = src.proj[1].after(&into);
        objects.push(cover.module);
        diffs.push(dn.mat);
        comps.push(pn.mat);
    }
    if let Some(d) = diffs.first_mut() {
        *d = Mat::zeros(f, 0, d.cols());
    }
    let complex = Complex::new(&alg, lo, objects, diffs)?;
    let map = ChainMap::new(&complex, x, |n| {
        let k = n - lo;
        if k >= 0 && (k as usize) < comps.len() && complex.dim(n) > 0 {
            comps[k as usize].clone()
        } else {
            Mat::zeros(f, x.dim(n), complex.dim(n))
        }
    })?;
    Ok(DgResolution { complex, map, truncation: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::projective::simple;
    use crate::algebra::standard::*;
    use crate::complex::homology::{homology_map, is_exact};
    use crate::complex::tests::d_two_term;

    fn check_quasi_iso(r: &DgResolution) {
        assert!(r.complex.is_degreewise_projective().unwrap());
        for n in r.complex.lo() - 1..=r.truncation - 1 {
            assert!(homology_map(&r.map, n).is_iso(), "degree {n}");
        }
    }

    #[test]
    fn resolution_of_simple_over_dual_numbers() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let r = dg_projective_resolution(&Complex::sphere(0, &k), 2).unwrap();
        assert_eq!(r.complex.dims(), vec![2, 2, 2]);
        check_quasi_iso(&r);
    }

    #[test]
    fn projective_complexes_resolve_to_themselves() {
        let c = d_two_term();
        let r = dg_projective_resolution(&c, 3).unwrap();
        assert_eq!(r.complex, c);
    }

    #[test]
    fn exact_and_mixed_complexes() {
        let a = a2(2);
        let s = crate::algebra::projective::simple_modules(&a).unwrap();
        let x = Complex::disc(1, &s[0]);
        let r = dg_projective_resolution(&x, 3).unwrap();
        check_quasi_iso(&r);
        for n in r.complex.lo()..r.truncation {
            assert_eq!(crate::complex::homology::Functors::new(&r.complex, n).h.module.dim(), 0);
        }
        assert!(is_exact(&x));
        let y = Complex::direct_sum(&[&Complex::sphere(0, &s[0]), &Complex::sphere(1, &s[1])]).complex;
        check_quasi_iso(&dg_projective_resolution(&y, 3).unwrap());
    }
}
