//! The functors `Z_n`, `B_n`, `H_n`, `C_n` and the maps they induce.

use serde::Serialize;

use crate::algebra::module::{Module, ModuleMap, Quot, Sub};
use crate::linalg::Mat;

use super::{ChainMap, Complex};

/// Which of the four functors to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functor {
    Z,
    B,
    H,
    C,
}

impl Functor {
    pub const ALL: [Functor; 4] = [Functor::Z, Functor::B, Functor::H, Functor::C];
}

/// `Z_n = ker d_n`, `B_n = im d_{n+1}`, `H_n = Z_n / B_n`, `C_n = X_n / B_n`.
#[derive(Clone, Debug)]
pub struct Functors {
    pub degree: i64,
    pub z: Sub,
    pub b: Sub,
    /// Quotient of `Z_n`.
    pub h: Quot,
    /// Quotient of `X_n`.
    pub c: Quot,
    /// `B_n` inside `Z_n`.
    b_in_z: Mat,
}

impl Functors {
    pub fn new(x: &Complex, n: i64) -> Self {
        let z = x.d_map(n).kernel();
        let b = x.d_map(n + 1).image().0;
        let b_in_z = z.incl.mat.solve(&b.incl.mat).expect("shapes").expect("boundaries are cycles");
        let h = z.module.quotient(&b_in_z).expect("B_n is a submodule of Z_n");
        let c = x.obj(n).quotient(&b.incl.mat).expect("B_n is a submodule of X_n");
        Self { degree: n, z, b, h, c, b_in_z }
    }

    pub fn object(&self, which: Functor) -> &Module {
        match which {
            Functor::Z => &self.z.module,
            Functor::B => &self.b.module,
            Functor::H => &self.h.module,
            Functor::C => &self.c.module,
        }
    }

    /// The inclusion `B_n -> Z_n`.
    pub fn boundaries_in_cycles(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.b.module.clone(), self.z.module.clone(), self.b_in_z.clone())
    }
}

/// All functor values of a complex over its window, plus the neighbouring degrees.
pub fn functors(x: &Complex) -> Vec<Functors> {
    (x.lo() - 1..=x.hi() + 1).map(|n| Functors::new(x, n)).collect()
}

/// `F_n(f)` given precomputed functors of source and target at degree `n`.
pub fn induced_with(f: &ChainMap, which: Functor, fx: &Functors, fy: &Functors) -> ModuleMap {
    let n = fx.degree;
    let fm = f.at(n);
    let restrict = |a: &Sub, b: &Sub| {
        b.incl.mat.solve(&fm.mul(&a.incl.mat)).expect("shapes").expect("chain maps preserve the subobject")
    };
    let mat = match which {
        Functor::Z => restrict(&fx.z, &fy.z),
        Functor::B => restrict(&fx.b, &fy.b),
        Functor::H => fy.h.proj.mat.mul(&restrict(&fx.z, &fy.z)).mul(&fx.h.section),
        Functor::C => fy.c.proj.mat.mul(&fm).mul(&fx.c.section),
    };
    ModuleMap::new_unchecked(fx.object(which).clone(), fy.object(which).clone(), mat)
}

pub fn induced(f: &ChainMap, which: Functor, n: i64) -> ModuleMap {
    induced_with(f, which, &Functors::new(&f.source, n), &Functors::new(&f.target, n))
}

/// `H_n(f)`.
pub fn homology_map(f: &ChainMap, n: i64) -> ModuleMap {
    induced(f, Functor::H, n)
}

/// Dimensions of `H_n` over the window.
pub fn homology_dims(x: &Complex) -> Vec<(i64, usize)> {
    x.degrees().map(|n| (n, Functors::new(x, n).h.module.dim())).collect()
}

pub fn is_exact(x: &Complex) -> bool {
    x.degrees().all(|n| Functors::new(x, n).h.module.dim() == 0)
}

/// `H_n(f)` for every degree in the span of source and target.
pub fn homology_maps(f: &ChainMap) -> Vec<(i64, ModuleMap)> {
    f.degrees().map(|n| (n, homology_map(f, n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::projective::simple;
    use crate::algebra::standard::*;
    use crate::complex::{cone, tests::d_two_term};

    #[test]
    fn sphere_and_disc() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let s = Complex::sphere(0, &k);
        let fs = Functors::new(&s, 0);
        assert_eq!((fs.z.module.dim(), fs.b.module.dim(), fs.h.module.dim(), fs.c.module.dim()), (1, 0, 1, 1));
        assert!(is_exact(&Complex::disc(2, &k)));
        assert_eq!(homology_dims(&Complex::sphere(3, &k)), vec![(3, 1)]);
    }

    #[test]
    fn two_term_complex_over_dual_numbers() {
        let c = d_two_term();
        assert_eq!(homology_dims(&c), vec![(0, 1), (1, 1)]);
        let id = ChainMap::identity(&c);
        assert_eq!(homology_map(&id, 1).mat, Mat::identity(c.field(), 1));
        assert!(is_exact(&cone(&id).complex));
    }

    #[test]
    fn functoriality() {
        let c = d_two_term();
        let x = c.algebra().right_mult(&[0, 1]);
        let fld = c.field();
        let f = ChainMap::new(&c, &c, |n| if (0..=1).contains(&n) { x.clone() } else { Mat::zeros(fld, 0, 0) }).unwrap();
        let g = ChainMap::identity(&c).add(&f).unwrap();
        for n in 0..=1 {
            for w in Functor::ALL {
                let lhs = induced(&g.after(&f), w, n).mat;
                let rhs = induced(&g, w, n).mat.mul(&induced(&f, w, n).mat);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
