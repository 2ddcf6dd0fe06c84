//! Null-homotopies, spaces of chain maps, `Hom` in the homotopy category and
//! `Ext¹` against degreewise projective complexes.
//!
//! For `S` degreewise projective every short exact sequence ending in `S` is
//! degreewise split, so `Ext(S, A) ≅ Hom_K(Σ⁻¹S, A)`; a class `u` is realized by
//! `A -> cone(u) -> S`.

use crate::algebra::hom::HomSpace;
use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField, Subspace};

use super::ce::ComplexConflation;
use super::{cone, ChainMap, Complex};

/// Linear system whose unknowns are module maps contributing to several equation
/// blocks; every block is vectorized row-major and stacked.
struct BlockSystem {
    field: PrimeField,
    offsets: Vec<(i64, usize, usize, usize)>,
    rows: usize,
    columns: Vec<Vec<u8>>,
}

impl BlockSystem {
    fn new(field: PrimeField, blocks: impl Iterator<Item = (i64, usize, usize)>) -> Self {
        let mut offsets = Vec::new();
        let mut rows = 0;
        for (key, r, c) in blocks {
            offsets.push((key, r, c, rows));
            rows += r * c;
        }
        Self { field, offsets, rows, columns: Vec::new() }
    }

    fn vector(&self, parts: &[(i64, Mat)]) -> Vec<u8> {
        let mut v = vec![0u8; self.rows];
        for (key, m) in parts {
            if let Some(&(_, r, c, off)) = self.offsets.iter().find(|o| o.0 == *key) {
                debug_assert_eq!((m.rows(), m.cols()), (r, c));
                for (k, x) in m.vectorize().into_iter().enumerate() {
                    v[off + k] = self.field.add(v[off + k], x);
                }
            }
        }
        v
    }

    fn push(&mut self, parts: &[(i64, Mat)]) {
        let v = self.vector(parts);
        self.columns.push(v);
    }

    fn matrix(&self) -> Mat {
        Mat::from_columns(self.field, self.rows, &self.columns)
    }

    fn solve(&self, target: &[(i64, Mat)]) -> Option<Vec<u8>> {
        let b = Mat::column_vector(self.field, &self.vector(target));
        self.matrix().solve(&b).expect("shapes").map(|x| x.column(0))
    }
}

/// `s_n: X_n -> Y_{n+1}` for each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    pub maps: Vec<(i64, Mat)>,
}

impl Homotopy {
    pub fn at(&self, n: i64) -> Mat {
        self.maps
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Mat::zeros(self.source.field(), self.target.dim(n + 1), self.source.dim(n)))
    }

    /// The null-homotopic map `d s + s d`.
    pub fn boundary(&self) -> ChainMap {
        let (x, y) = (&self.source, &self.target);
        ChainMap::from_parts(x, y, |n| y.d(n + 1).mul(&self.at(n)).add(&self.at(n - 1).mul(&x.d(n))))
    }

    pub fn witnesses(&self, f: &ChainMap) -> bool {
        self.boundary() == *f
    }
}

fn homotopy_unknowns(x: &Complex, y: &Complex) -> Vec<(i64, crate::algebra::module::ModuleMap)> {
    let mut out = Vec::new();
    for n in x.degrees() {
        if y.dim(n + 1) == 0 {
            continue;
        }
        for h in HomSpace::new(x.obj(n), y.obj(n + 1)).basis {
            out.push((n, h));
        }
    }
    out
}

fn homotopy_parts(x: &Complex, y: &Complex, n: i64, h: &Mat) -> Vec<(i64, Mat)> {
    vec![(n, y.d(n + 1).mul(h)), (n + 1, h.mul(&x.d(n + 1)))]
}

/// Some `s` with `f = d s + s d`, solving over all degrees at once.
pub fn null_homotopy(f: &ChainMap) -> Option<Homotopy> {
    let (x, y) = (&f.source, &f.target);
    let mut sys = BlockSystem::new(x.field(), x.degrees().map(|n| (n, y.dim(n), x.dim(n))));
    let unknowns = homotopy_unknowns(x, y);
    for (n, h) in &unknowns {
        sys.push(&homotopy_parts(x, y, *n, &h.mat));
    }
    let target: Vec<(i64, Mat)> = x.degrees().map(|n| (n, f.at(n))).collect();
    let coeffs = sys.solve(&target)?;
    let mut maps: Vec<(i64, Mat)> = Vec::new();
    for ((n, h), c) in unknowns.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let term = h.mat.scale(c);
        match maps.iter_mut().find(|(k, _)| k == n) {
            Some((_, m)) => *m = m.add(&term),
            None => maps.push((*n, term)),
        }
    }
    let s = Homotopy { source: x.clone(), target: y.clone(), maps };
    debug_assert!(s.witnesses(f));
    Some(s)
}

pub fn is_null_homotopic(f: &ChainMap) -> bool {
    null_homotopy(f).is_some()
}

/// A basis of the space of chain maps `X -> Y`.
#[derive(Clone, Debug)]
pub struct ChainHom {
    pub source: Complex,
    pub target: Complex,
    pub basis: Vec<ChainMap>,
}

impl ChainHom {
    pub fn new(x: &Complex, y: &Complex) -> Self {
        let f = x.field();
        let mut sys = BlockSystem::new(f, x.degrees().map(|n| (n, y.dim(n - 1), x.dim(n))));
        let mut unknowns = Vec::new();
        for n in x.degrees() {
            if y.dim(n) == 0 {
                continue;
            }
            for h in HomSpace::new(x.obj(n), y.obj(n)).basis {
                sys.push(&[(n, y.d(n).mul(&h.mat)), (n + 1, h.mat.mul(&x.d(n + 1)).neg())]);
                unknowns.push((n, h.mat));
            }
        }
        let kernel = sys.matrix().kernel_basis();
        let basis = kernel
            .columns()
            .iter()
            .map(|coeffs| {
                ChainMap::from_parts(x, y, |n| {
                    let mut m = Mat::zeros(f, y.dim(n), x.dim(n));
                    for ((k, h), &c) in unknowns.iter().zip(coeffs) {
                        if *k == n && c != 0 {
                            m = m.add(&h.scale(c));
                        }
                    }
                    m
                })
            })
            .collect();
        Self { source: x.clone(), target: y.clone(), basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectorize(&self, f: &ChainMap) -> Vec<u8> {
        self.source.degrees().flat_map(|n| f.at(n).vectorize()).collect()
    }

    fn coordinate_matrix(&self) -> Mat {
        let len = self.source.degrees().map(|n| self.source.dim(n) * self.target.dim(n)).sum();
        let cols: Vec<Vec<u8>> = self.basis.iter().map(|b| self.vectorize(b)).collect();
        Mat::from_columns(self.source.field(), len, &cols)
    }

    pub fn coordinates(&self, f: &ChainMap) -> Option<Vec<u8>> {
        let b = Mat::column_vector(self.source.field(), &self.vectorize(f));
        self.coordinate_matrix().solve(&b).expect("shapes").map(|x| x.column(0))
    }

    pub fn element(&self, coeffs: &[u8]) -> ChainMap {
        let mut out = ChainMap::zero(&self.source, &self.target);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                out = out.add(&b.scale(c)).expect("same ends");
            }
        }
        out
    }
}

/// `Hom_K(X, Y)`: chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomK {
    pub maps: ChainHom,
    /// Null-homotopic maps, in chain-map coordinates.
    pub null: Subspace,
}

impl HomK {
    pub fn new(x: &Complex, y: &Complex) -> Self {
        let maps = ChainHom::new(x, y);
        let f = x.field();
        let cols: Vec<Vec<u8>> = homotopy_unknowns(x, y)
            .iter()
            .map(|(n, h)| {
                let s = Homotopy { source: x.clone(), target: y.clone(), maps: vec![(*n, h.mat.clone())] };
                maps.coordinates(&s.boundary()).expect("null-homotopic maps are chain maps")
            })
            .collect();
        let null = Subspace::new(&Mat::from_columns(f, maps.dim(), &cols));
        Self { maps, null }
    }

    pub fn dim(&self) -> usize {
        self.null.codim()
    }

    pub fn class_of(&self, f: &ChainMap) -> Result<Vec<u8>> {
        let c = self.maps.coordinates(f).ok_or_else(|| Error::InvalidMap("not a chain map between these complexes".into()))?;
        Ok(self.null.quotient.mul(&Mat::column_vector(f.source.field(), &c)).column(0))
    }

    pub fn representative(&self, class: &[u8]) -> ChainMap {
        let f = self.maps.source.field();
        let c = self.null.complement.mul(&Mat::column_vector(f, class)).column(0);
        self.maps.element(&c)
    }
}

/// `Ext¹(S, A)` for `S` degreewise projective, as `Hom_K(Σ⁻¹S, A)`.
#[derive(Clone, Debug)]
pub struct ComplexExt {
    pub s: Complex,
    pub a: Complex,
    pub hom: HomK,
}

impl ComplexExt {
    pub fn new(s: &Complex, a: &Complex) -> Result<Self> {
        if !s.is_degreewise_projective()? {
            return Err(Error::Precondition("complex Ext needs a degreewise projective first argument".into()));
        }
        Ok(Self { s: s.clone(), a: a.clone(), hom: HomK::new(&s.shift(-1), a) })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn basis(&self) -> Vec<Vec<u8>> {
        (0..self.dim())
            .map(|k| {
                let mut v = vec![0; self.dim()];
                v[k] = 1;
                v
            })
            .collect()
    }

    /// `A -> cone(u) -> S` for the representative `u` of the class.
    pub fn to_conflation(&self, class: &[u8]) -> ComplexConflation {
        let u = self.hom.representative(class);
        let c = cone(&u);
        ComplexConflation { i: c.incl, p: c.proj }
    }

    /// Matrix of `Ext(S, f)` for `f: A -> A'`.
    pub fn map_right(&self, f: &ChainMap, target: &ComplexExt) -> Result<Mat> {
        if f.source != self.a || f.target != target.a || target.s != self.s {
            return Err(Error::Mismatch("Ext(S, f) with mismatched complexes".into()));
        }
        let cols: Vec<Vec<u8>> = self
            .basis()
            .iter()
            .map(|b| target.hom.class_of(&f.after(&self.hom.representative(b))))
            .collect::<Result<_>>()?;
        Ok(Mat::from_columns(f.source.field(), target.dim(), &cols))
    }
}

/// `Ext(S, f)` on class bases.
pub fn complex_ext_on_map(s: &Complex, f: &ChainMap) -> Result<Mat> {
    let src = ComplexExt::new(s, &f.source)?;
    let tgt = ComplexExt::new(s, &f.target)?;
    src.map_right(f, &tgt)
}
