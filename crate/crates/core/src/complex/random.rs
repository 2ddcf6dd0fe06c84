//! Seeded random generators for modules maps, complexes and chain maps.

use rand::Rng;

use crate::algebra::hom::HomSpace;
use crate::algebra::module::{Module, ModuleMap};
use crate::linalg::Mat;

use super::homotopy::ChainHom;
use super::{ChainMap, Complex};

pub fn random_coeffs<R: Rng>(rng: &mut R, p: u8, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

/// A uniformly random element of `Hom(M, N)`.
pub fn random_map<R: Rng>(rng: &mut R, m: &Module, n: &Module) -> ModuleMap {
    let hom = HomSpace::new(m, n);
    let c = random_coeffs(rng, m.field().p(), hom.dim());
    hom.element(&c)
}

/// A random complex on the given objects (degrees `lo, lo+1, ...`): each `d_n` is a
/// random map into `ker d_{n-1}`.
pub fn random_complex<R: Rng>(rng: &mut R, lo: i64, objects: &[Module]) -> Complex {
    let alg = objects[0].algebra().clone();
    let f = alg.field();
    let mut diffs = vec![Mat::zeros(f, 0, objects[0].dim())];
    for k in 1..objects.len() {
        let below = ModuleMap::new_unchecked(
            objects[k - 1].clone(),
            if k >= 2 { objects[k - 2].clone() } else { Module::zero(alg.clone()) },
            diffs[k - 1].clone(),
        );
        let ker = below.kernel();
        let g = random_map(rng, &objects[k], &ker.module);
        diffs.push(ker.incl.mat.mul(&g.mat));
    }
    Complex::new(&alg, lo, objects.to_vec(), diffs).expect("random complex is valid")
}

/// A uniformly random chain map `X -> Y`.
pub fn random_chain_map<R: Rng>(rng: &mut R, x: &Complex, y: &Complex) -> ChainMap {
    let hom = ChainHom::new(x, y);
    let c = random_coeffs(rng, x.field().p(), hom.dim());
    hom.element(&c)
}
