//! Hom spaces as solution spaces of the intertwining equations.

use crate::error::Result;
use crate::linalg::{combine, Mat};

use super::module::{Module, ModuleMap};

/// A basis of `Hom_A(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModuleMap>,
}

impl HomSpace {
    pub fn new(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let (m, n) = (source.dim(), target.dim());
        let unknowns = n * m;
        let alg = source.algebra();
        let mut eqs = Mat::zeros(f, alg.dim() * unknowns, unknowns);
        // Unknown X (n x m) stored row-major; equation X A_b - B_b X = 0.
        for b in 0..alg.dim() {
            let a = source.act(b);
            let bb = target.act(b);
            for r in 0..n {
                for c in 0..m {
                    let row = b * unknowns + r * m + c;
                    for k in 0..m {
                        let v = a.get(k, c);
                        if v != 0 {
                            let col = r * m + k;
                            eqs.set(row, col, f.add(eqs.get(row, col), v));
                        }
                    }
                    for k in 0..n {
                        let v = bb.get(r, k);
                        if v != 0 {
                            let col = k * m + c;
                            eqs.set(row, col, f.sub(eqs.get(row, col), v));
                        }
                    }
                }
            }
        }
        let kernel = eqs.kernel_basis();
        let basis = kernel
            .columns()
            .into_iter()
            .map(|v| ModuleMap::new_unchecked(source.clone(), target.clone(), Mat::from_vec(f, n, m, v)))
            .collect();
        Self { source: source.clone(), target: target.clone(), basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[u8]) -> ModuleMap {
        let mats: Vec<Mat> = self.basis.iter().map(|b| b.mat.clone()).collect();
        let mat = combine(self.source.field(), self.target.dim(), self.source.dim(), coeffs, &mats);
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), mat)
    }

    /// Coordinates of a module map in this basis.
    pub fn coordinates(&self, f: &Mat) -> Option<Vec<u8>> {
        let images: Vec<Mat> = self.basis.iter().map(|b| b.mat.clone()).collect();
        solve_combination(&images, f)
    }

    /// Finds `h` in this space with `phi(h) = target`, where `phi` is linear.
    pub fn solve_linear(&self, phi: impl Fn(&Mat) -> Mat, target: &Mat) -> Option<ModuleMap> {
        let images: Vec<Mat> = self.basis.iter().map(|b| phi(&b.mat)).collect();
        solve_combination(&images, target).map(|c| self.element(&c))
    }
}

/// Coefficients `c` with `sum c_i images_i = target`, or `None`.
pub fn solve_combination(images: &[Mat], target: &Mat) -> Option<Vec<u8>> {
    let f = target.field();
    let len = target.rows() * target.cols();
    if images.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let cols: Vec<Vec<u8>> = images.iter().map(Mat::vectorize).collect();
    let a = Mat::from_columns(f, len, &cols);
    let b = Mat::column_vector(f, &target.vectorize());
    a.solve(&b).ok().flatten().map(|x| x.column(0))
}

/// Lifts `g: P -> C` through a map `p: B -> C` (for `P` projective and `p` onto, always possible).
pub fn lift(p: &ModuleMap, g: &ModuleMap) -> Option<ModuleMap> {
    HomSpace::new(&g.source, &p.source).solve_linear(|h| p.mat.mul(h), &g.mat)
}

/// Extends `f: A -> N` along `i: A -> I`, i.e. finds `g: I -> N` with `g ∘ i = f`.
pub fn extend(i: &ModuleMap, f: &ModuleMap) -> Option<ModuleMap> {
    HomSpace::new(&i.target, &f.target).solve_linear(|h| h.mul(&i.mat), &f.mat)
}


/// Some isomorphism `M -> N`, found by exhaustive search of the Hom space when it is
/// small enough and by a deterministic pseudo-random search otherwise.
pub fn find_isomorphism(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let hom = HomSpace::new(m, n);
    let f = m.field();
    let p = f.p() as u64;
    let size = p.checked_pow(hom.dim() as u32);
    if size.is_some_and(|s| s <= 1 << 16) {
        for c in crate::linalg::all_vectors(f, hom.dim()) {
            let g = hom.element(&c);
            if g.is_iso() {
                return Ok(Some(g));
            }
        }
        return Ok(None);
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1505_u64);
    for _ in 0..4096 {
        let c: Vec<u8> = (0..hom.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        let g = hom.element(&c);
        if g.is_iso() {
            return Ok(Some(g));
        }
    }
    Err(crate::error::Error::Unsupported("isomorphism search exceeded its budget".into()))
}
