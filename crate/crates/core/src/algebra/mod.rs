//! Finite-dimensional algebras over `F_p`, their modules and the Ext¹ calculus.
//!
//! An [`Algebra`] is stored through its left multiplication matrices: column `j`
//! of `left[i]` holds the coordinates of `b_i * b_j`. Algebras compiled from a
//! quiver additionally carry vertex idempotents and the arrow ideal, which the
//! radical-dependent operations (covers, simples, injective hulls) require.

pub mod conflation;
pub mod ext;
pub mod filtration;
pub mod hom;
pub mod module;
pub mod projective;
pub mod quiver;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};

pub use quiver::Quiver;

/// Radical data available for algebras compiled from a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalData {
    /// Columns span the Jacobson radical (paths of length at least one).
    pub basis: Mat,
    /// Smallest `n` with `J^n = 0`.
    pub nilpotency: usize,
    /// Vertex labels and the basis index of each vertex idempotent.
    pub vertices: Vec<String>,
    pub idempotents: Vec<Vec<u8>>,
    /// The quiver the algebra was compiled from.
    pub quiver: Quiver,
    /// Each basis element as a path: start vertex and arrows in traversal order.
    pub paths: Vec<(usize, Vec<usize>)>,
}

impl RadicalData {
    /// Radical data of the opposite algebra: arrows and paths reversed.
    fn opposite(&self) -> RadicalData {
        let mut quiver = self.quiver.clone();
        for a in &mut quiver.arrows {
            std::mem::swap(&mut a.source, &mut a.target);
        }
        for r in &mut quiver.relations {
            for (_, path) in &mut r.terms {
                path.reverse();
            }
        }
        let paths = self
            .paths
            .iter()
            .map(|(start, arrows)| {
                let end = arrows.last().map_or(*start, |&a| self.quiver.arrows[a].target);
                (end, arrows.iter().rev().copied().collect())
            })
            .collect();
        RadicalData { quiver, paths, ..self.clone() }
    }
}

#[derive(Debug)]
pub struct Algebra {
    name: String,
    field: PrimeField,
    labels: Vec<String>,
    left: Vec<Mat>,
    unit: Vec<u8>,
    radical: Option<RadicalData>,
    /// Extra named elements (for instance matrix units) usable to build cyclic modules.
    named: Vec<(String, Vec<u8>)>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field && self.unit == other.unit && self.left == other.left)
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds an algebra from structure constants `c[i][j]` = coordinates of `b_i * b_j`,
    /// verifying associativity and the unit law on all basis elements.
    pub fn from_structure_constants(
        name: impl Into<String>,
        field: PrimeField,
        labels: Vec<String>,
        products: Vec<Vec<Vec<u8>>>,
        unit: Vec<u8>,
    ) -> Result<Self> {
        let d = labels.len();
        if products.len() != d || products.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidAlgebra("product table must be d x d".into()));
        }
        if unit.len() != d || products.iter().flatten().any(|v| v.len() != d) {
            return Err(Error::InvalidAlgebra("coordinate vectors must have length d".into()));
        }
        let left: Vec<Mat> = (0..d)
            .map(|i| Mat::from_columns(field, d, &products[i]))
            .collect();
        let alg = Self {
            name: name.into(),
            field,
            labels,
            left,
            unit,
            radical: None,
            named: Vec::new(),
            opposite: OnceLock::new(),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let prod = self.left[i].mul(&self.left[j]);
                let bij = self.left[i].column(j);
                if prod != self.left_mult(&bij) {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails for ({}, {}, -)",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        let id = Mat::identity(self.field, d);
        if self.left_mult(&self.unit) != id || self.right_mult(&self.unit) != id {
            return Err(Error::InvalidAlgebra("unit law fails".into()));
        }
        Ok(())
    }

    pub(crate) fn with_radical(mut self, radical: RadicalData) -> Result<Self> {
        let d = self.dim();
        let basis = &radical.basis;
        // Two-sided ideal: b_i J and J b_i stay inside J.
        for i in 0..d {
            let l = self.left[i].mul(basis);
            let r = self.right_mult_basis(i).mul(basis);
            if !basis.spans(&l) || !basis.spans(&r) {
                return Err(Error::InvalidAlgebra("radical is not a two-sided ideal".into()));
            }
        }
        if self.radical_power_dims(basis).last() != Some(&0) {
            return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
        }
        self.radical = Some(radical);
        Ok(self)
    }

    /// Attaches named elements (for example idempotents of a matrix algebra).
    pub fn with_named_elements(mut self, named: Vec<(String, Vec<u8>)>) -> Result<Self> {
        for (name, v) in &named {
            if v.len() != self.dim() {
                return Err(Error::InvalidAlgebra(format!("element {name} has wrong length")));
            }
        }
        self.named = named;
        Ok(self)
    }

    /// Dimensions of `J, J^2, ...` down to the first zero power.
    fn radical_power_dims(&self, basis: &Mat) -> Vec<usize> {
        let mut dims = vec![basis.rank()];
        let mut power = basis.image_basis();
        for _ in 0..=self.dim() {
            if power.cols() == 0 {
                break;
            }
            let mut cols = Vec::new();
            for r in basis.columns() {
                let lr = self.left_mult(&r);
                cols.extend(lr.mul(&power).columns());
            }
            power = if cols.is_empty() {
                Mat::zeros(self.field, self.dim(), 0)
            } else {
                Mat::from_columns(self.field, self.dim(), &cols).image_basis()
            };
            dims.push(power.cols());
        }
        dims
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[u8] {
        &self.unit
    }
    pub fn radical(&self) -> Option<&RadicalData> {
        self.radical.as_ref()
    }
    pub fn named_elements(&self) -> &[(String, Vec<u8>)] {
        &self.named
    }

    /// Radical data, or an error for algebras not compiled from a quiver.
    pub fn require_radical(&self) -> Result<&RadicalData> {
        self.radical.as_ref().ok_or_else(|| {
            Error::Unsupported(format!(
                "algebra '{}' has no quiver presentation; radical-dependent operations need one",
                self.name
            ))
        })
    }

    /// Size `n` of a full system of matrix units among the named elements: elements
    /// `e{i}{j}` (1-based) with `e_ij e_kl = δ_jk e_il`, `Σ e_ii = 1` and `n^2 = dim`.
    /// Such a system proves `A ≅ M_n(F_p)`.
    pub fn matrix_units(&self) -> Option<usize> {
        let n = (1..=self.dim()).find(|n| n * n >= self.dim()).filter(|n| n * n == self.dim())?;
        let lookup = |i: usize, j: usize| {
            let key = format!("e{}{}", i + 1, j + 1);
            self.named.iter().find(|(k, _)| *k == key).map(|(_, v)| v.clone())
        };
        let mut units = vec![vec![Vec::new(); n]; n];
        for (i, row) in units.iter_mut().enumerate() {
            for (j, u) in row.iter_mut().enumerate() {
                *u = lookup(i, j)?;
            }
        }
        let zero = vec![0u8; self.dim()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let prod = self.mul(&units[i][j], &units[k][l]);
                        if prod != if j == k { units[i][l].clone() } else { zero.clone() } {
                            return None;
                        }
                    }
                }
            }
        }
        let mut sum = zero;
        for (i, row) in units.iter().enumerate() {
            sum = sum.iter().zip(&row[i]).map(|(a, b)| self.field.add(*a, *b)).collect();
        }
        let cols: Vec<Vec<u8>> = units.concat();
        (sum == self.unit && Mat::from_columns(self.field, self.dim(), &cols).rank() == self.dim()).then_some(n)
    }

    /// Whether the algebra is semisimple: zero radical for quiver algebras, or a full
    /// system of matrix units otherwise.
    pub fn is_semisimple(&self) -> Result<bool> {
        match &self.radical {
            Some(r) => Ok(r.basis.cols() == 0),
            None if self.matrix_units().is_some() => Ok(true),
            None => self.require_radical().map(|_| false),
        }
    }

    /// Number of vertices (quiver algebras only).
    pub fn vertex_count(&self) -> Result<usize> {
        Ok(self.require_radical()?.vertices.len())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Left multiplication matrix by the basis element `b_i`.
    pub fn left_mult_basis(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    /// Right multiplication matrix by `b_i`: column `j` holds `b_j * b_i`.
    pub fn right_mult_basis(&self, i: usize) -> Mat {
        let cols: Vec<Vec<u8>> = (0..self.dim()).map(|j| self.left[j].column(i)).collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mult(&self, u: &[u8]) -> Mat {
        let d = self.dim();
        crate::linalg::combine(self.field, d, d, u, &self.left)
    }

    /// Right multiplication by an arbitrary element.
    pub fn right_mult(&self, u: &[u8]) -> Mat {
        let d = self.dim();
        let mats: Vec<Mat> = (0..d).map(|i| self.right_mult_basis(i)).collect();
        crate::linalg::combine(self.field, d, d, u, &mats)
    }

    pub fn mul(&self, u: &[u8], v: &[u8]) -> Vec<u8> {
        self.left_mult(u).mul(&Mat::column_vector(self.field, v)).column(0)
    }

    /// The opposite algebra, built by transposing structure constants; cached.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let d = self.dim();
                let left: Vec<Mat> = (0..d).map(|i| self.right_mult_basis(i)).collect();
                Arc::new(Algebra {
                    name: format!("{}^op", self.name),
                    field: self.field,
                    labels: self.labels.clone(),
                    left,
                    unit: self.unit.clone(),
                    radical: self.radical.as_ref().map(RadicalData::opposite),
                    named: self.named.clone(),
                    opposite: OnceLock::new(),
                })
            })
            .clone()
    }

    /// Dimension of each radical power `J^k`, ending with zero.
    pub fn radical_powers(&self) -> Result<Vec<usize>> {
        Ok(self.radical_power_dims(&self.require_radical()?.basis))
    }

    /// Checks associativity and the unit law again and returns a short report.
    pub fn check(&self) -> Result<AlgebraReport> {
        self.validate()?;
        let (nil, powers) = match &self.radical {
            Some(r) => (Some(r.nilpotency), Some(self.radical_power_dims(&r.basis))),
            None => (None, None),
        };
        Ok(AlgebraReport {
            name: self.name.clone(),
            prime: self.field.p() as u64,
            dim: self.dim(),
            basis: self.labels.clone(),
            associative: true,
            unital: true,
            radical_dim: self.radical.as_ref().map(|r| r.basis.cols()),
            radical_power_dims: powers,
            nilpotency_index: nil,
            vertices: self.radical.as_ref().map(|r| r.vertices.clone()),
        })
    }
}

/// Summary produced by [`Algebra::check`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct AlgebraReport {
    pub name: String,
    pub prime: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    pub associative: bool,
    pub unital: bool,
    pub radical_dim: Option<usize>,
    pub radical_power_dims: Option<Vec<usize>>,
    pub nilpotency_index: Option<usize>,
    pub vertices: Option<Vec<String>>,
}

/// Small algebras used throughout tests and examples.
pub mod standard {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).expect("prime")
    }

    /// The ground field `F_p` as a one-vertex quiver algebra.
    pub fn field(p: u64) -> Arc<Algebra> {
        Arc::new(Quiver::new(vec!["1".into()], vec![], vec![]).build("F", f(p)).expect("field"))
    }

    /// Dual numbers `F_p[x]/(x^2)`.
    pub fn dual_numbers(p: u64) -> Arc<Algebra> {
        let q = Quiver::parse(&["1"], &[("x", "1", "1")], &["x*x"]).expect("quiver");
        Arc::new(q.build("D", f(p)).expect("dual numbers"))
    }

    /// Path algebra of `1 -> 2` (arrow `a`).
    pub fn a2(p: u64) -> Arc<Algebra> {
        let q = Quiver::parse(&["1", "2"], &[("a", "1", "2")], &[]).expect("quiver");
        Arc::new(q.build("A2", f(p)).expect("A2"))
    }

    /// `F_p x F_p` as two isolated vertices.
    pub fn field_product(p: u64) -> Arc<Algebra> {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![], vec![]);
        Arc::new(q.build("FxF", f(p)).expect("product"))
    }

    /// The matrix algebra `M_2(F_p)` from structure constants, basis `e11, e12, e21, e22`,
    /// with the matrix units attached as named elements.
    pub fn matrix2(p: u64) -> Arc<Algebra> {
        let labels: Vec<String> = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut products = vec![vec![vec![0u8; 4]; 4]; 4];
        for (i, j, k, l) in (0..2).flat_map(|i| {
            (0..2).flat_map(move |j| (0..2).flat_map(move |k| (0..2).map(move |l| (i, j, k, l))))
        }) {
            if j == k {
                products[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
            }
        }
        let alg = Algebra::from_structure_constants("M2", f(p), labels.clone(), products, vec![1, 0, 0, 1])
            .expect("matrix algebra");
        let named = (0..4)
            .map(|i| {
                let mut v = vec![0; 4];
                v[i] = 1;
                (labels[i].clone(), v)
            })
            .collect();
        Arc::new(alg.with_named_elements(named).expect("named"))
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn field_algebra() {
        let a = field(2);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.require_radical().unwrap().basis.cols(), 0);
        assert_eq!(a.require_radical().unwrap().nilpotency, 1);
    }

    #[test]
    fn matrix_units_certify_semisimplicity() {
        assert_eq!(matrix2(2).matrix_units(), Some(2));
        assert!(matrix2(3).is_semisimple().unwrap());
        assert!(field_product(2).is_semisimple().unwrap());
        assert!(!dual_numbers(2).is_semisimple().unwrap());
    }

    #[test]
    fn dual_numbers_basis() {
        let d = dual_numbers(2);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.labels(), &["e1".to_string(), "x".to_string()]);
        // x * x reduces to zero.
        assert_eq!(d.mul(&[0, 1], &[0, 1]), vec![0, 0]);
        assert_eq!(d.require_radical().unwrap().nilpotency, 2);
        assert_eq!(d.radical_powers().unwrap(), vec![1, 0]);
    }

    #[test]
    fn a2_basis() {
        let a = a2(2);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1".to_string(), "e2".to_string(), "a".to_string()]);
        // a = a e1 = e2 a, and e1 a = a e2 = 0.
        assert_eq!(a.mul(&[0, 0, 1], &[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(a.mul(&[0, 1, 0], &[0, 0, 1]), vec![0, 0, 1]);
        assert_eq!(a.mul(&[1, 0, 0], &[0, 0, 1]), vec![0, 0, 0]);
        assert_eq!(a.unit(), &[1, 1, 0]);
    }

    #[test]
    fn matrix_algebra_is_valid() {
        let m = matrix2(2);
        assert_eq!(m.dim(), 4);
        assert!(m.require_radical().is_err());
        assert!(m.check().is_ok());
    }

    #[test]
    fn bad_structure_constants_rejected() {
        let f2 = PrimeField::new(2).unwrap();
        // b0 = 1, b1 * b1 = b0 + b1 over F2 is a field; break associativity instead.
        let products = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 1]],
        ];
        assert!(Algebra::from_structure_constants("F4", f2, vec!["1".into(), "w".into()], products, vec![1, 0]).is_ok());
        let bad = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 0]],
        ];
        assert!(Algebra::from_structure_constants("x", f2, vec!["1".into(), "w".into()], bad, vec![0, 1]).is_err());
    }

    #[test]
    fn opposite_of_a2() {
        let a = a2(3);
        let op = a.opposite();
        // In the opposite algebra e1 * a = a.
        assert_eq!(op.mul(&[1, 0, 0], &[0, 0, 1]), vec![0, 0, 1]);
        assert_eq!(*op.opposite(), *a);
    }
}
