//! Quivers with relations and their compilation to structure constants.
//!
//! Paths are stored in traversal order (first arrow first). The algebra
//! product follows composition: `p * q` is "`p` after `q`", nonzero only when
//! `q` ends where `p` starts. Relation words are written the same way, so
//! `b*a` means "`a`, then `b`".

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};

use super::{Algebra, RadicalData};

/// Search depth for a power of the arrow ideal inside the relation ideal.
pub const DEPTH_CAP: usize = 32;
const PATH_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// An `F_p`-linear combination of parallel paths; coefficients are raw integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Path {
    len: usize,
    /// Vertex index for trivial paths, arrow indices otherwise.
    key: Vec<usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Self {
        Self { vertices, arrows, relations }
    }

    /// Convenience constructor from labels, `(name, source, target)` triples and relation strings.
    pub fn parse(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let vidx = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex '{v}'")))
        };
        let mut arr = Vec::new();
        for (name, s, t) in arrows {
            arr.push(Arrow { name: name.to_string(), source: vidx(s)?, target: vidx(t)? });
        }
        let mut q = Quiver::new(vertices.clone(), arr, vec![]);
        for r in relations {
            let rel = q.parse_relation(r)?;
            q.relations.push(rel);
        }
        Ok(q)
    }

    /// Parses a signed path word expression such as `"b*a - 2 d*c"`.
    pub fn parse_relation(&self, text: &str) -> Result<Relation> {
        let err = |m: &str| Error::InvalidAlgebra(format!("relation '{text}': {m}"));
        let mut terms = Vec::new();
        let mut rest = text.trim();
        let mut sign = 1i64;
        if rest.is_empty() {
            return Err(err("empty"));
        }
        loop {
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
                continue;
            }
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
                continue;
            }
            let end = rest[1..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
            let term = rest[..end].trim();
            let mut coef = 1i64;
            let mut word = term;
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            if !digits.is_empty() {
                coef = digits.parse().map_err(|_| err("bad coefficient"))?;
                word = term[digits.len()..].trim_start().trim_start_matches('*').trim();
            }
            let mut path = Vec::new();
            for name in word.split('*').map(str::trim) {
                let a = self
                    .arrows
                    .iter()
                    .position(|a| a.name == name)
                    .ok_or_else(|| err(&format!("unknown arrow '{name}'")))?;
                path.push(a);
            }
            // Written in product order; store in traversal order.
            path.reverse();
            terms.push((sign * coef, path));
            sign = 1;
            rest = rest[end..].trim_start();
            if rest.is_empty() {
                break;
            }
        }
        Ok(Relation { terms })
    }

    fn source(&self, p: &Path) -> usize {
        if p.len == 0 {
            p.key[0]
        } else {
            self.arrows[p.key[0]].source
        }
    }

    fn target(&self, p: &Path) -> usize {
        if p.len == 0 {
            p.key[0]
        } else {
            self.arrows[*p.key.last().unwrap()].target
        }
    }

    /// Algebra product `p * q` ("p after q").
    fn product(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.target(q) != self.source(p) {
            return None;
        }
        Some(match (p.len, q.len) {
            (0, _) => q.clone(),
            (_, 0) => p.clone(),
            _ => {
                let mut key = q.key.clone();
                key.extend_from_slice(&p.key);
                Path { len: p.len + q.len, key }
            }
        })
    }

    fn arrow_path(&self, arrows: &[usize]) -> Path {
        Path { len: arrows.len(), key: arrows.to_vec() }
    }

    /// All paths of length at most `max_len`, sorted by length then lexicographically.
    fn paths_up_to(&self, max_len: usize) -> Result<Vec<Path>> {
        let mut all: Vec<Path> = (0..self.vertices.len()).map(|v| Path { len: 0, key: vec![v] }).collect();
        let mut frontier: Vec<Path> = self.arrows.iter().enumerate().map(|(i, _)| self.arrow_path(&[i])).collect();
        let mut len = 1;
        while len <= max_len && !frontier.is_empty() {
            frontier.sort();
            all.extend(frontier.iter().cloned());
            if all.len() > PATH_LIMIT {
                return Err(Error::InfiniteDimensional(len));
            }
            let mut next = Vec::new();
            for p in &frontier {
                let t = self.target(p);
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut key = p.key.clone();
                        key.push(ai);
                        next.push(Path { len: len + 1, key });
                    }
                }
            }
            frontier = next;
            len += 1;
        }
        Ok(all)
    }

    fn validate_relations(&self, field: PrimeField) -> Result<Vec<Vec<(u8, Path)>>> {
        let mut out = Vec::new();
        for rel in &self.relations {
            let mut ends = None;
            let mut terms: Vec<(u8, Path)> = Vec::new();
            for (c, arrows) in &rel.terms {
                if arrows.len() < 2 {
                    return Err(Error::NotAdmissible("relation terms must have length at least 2".into()));
                }
                for w in arrows.windows(2) {
                    if self.arrows[w[0]].target != self.arrows[w[1]].source {
                        return Err(Error::NotAdmissible("relation term is not a path".into()));
                    }
                }
                let p = self.arrow_path(arrows);
                let e = (self.source(&p), self.target(&p));
                if *ends.get_or_insert(e) != e {
                    return Err(Error::NotAdmissible("relation paths are not parallel".into()));
                }
                let c = field.reduce(*c);
                if let Some(t) = terms.iter_mut().find(|(_, q)| *q == p) {
                    t.0 = field.add(t.0, c);
                } else {
                    terms.push((c, p));
                }
            }
            terms.retain(|(c, _)| *c != 0);
            if !terms.is_empty() {
                out.push(terms);
            }
        }
        Ok(out)
    }

    /// All elements `u * rho * w` whose terms have length at most `max_len`.
    fn ideal_generators(
        &self,
        rels: &[Vec<(u8, Path)>],
        paths: &[Path],
        max_len: usize,
        truncate_below: Option<usize>,
    ) -> Vec<Vec<(u8, Path)>> {
        let mut gens = Vec::new();
        for rel in rels {
            let shortest = rel.iter().map(|(_, p)| p.len).min().unwrap();
            let longest = rel.iter().map(|(_, p)| p.len).max().unwrap();
            let room = match truncate_below {
                Some(l) => l.saturating_sub(shortest + 1),
                None => max_len.saturating_sub(longest),
            };
            if truncate_below.map_or(longest > max_len, |l| shortest >= l) {
                continue;
            }
            for u in paths.iter().filter(|u| u.len <= room) {
                for w in paths.iter().filter(|w| u.len + w.len <= room) {
                    let mut g = Vec::new();
                    for (c, p) in rel {
                        let Some(pw) = self.product(p, w) else { continue };
                        let Some(upw) = self.product(u, &pw) else { continue };
                        if truncate_below.is_some_and(|l| upw.len >= l) {
                            continue;
                        }
                        g.push((*c, upw));
                    }
                    if !g.is_empty() {
                        gens.push(g);
                    }
                }
            }
        }
        gens
    }

    /// Finds `L` with every path of length `L` in the relation ideal.
    fn find_nilpotency_bound(&self, field: PrimeField, rels: &[Vec<(u8, Path)>]) -> Result<usize> {
        let max_rel = rels.iter().flatten().map(|(_, p)| p.len).max().unwrap_or(0);
        for depth in 1..=DEPTH_CAP + max_rel {
            let paths = self.paths_up_to(depth)?;
            let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let gens = self.ideal_generators(rels, &paths, depth, None);
            let cols: Vec<Vec<u8>> = gens
                .iter()
                .map(|g| {
                    let mut v = vec![0u8; paths.len()];
                    for (c, p) in g {
                        let i = index[p];
                        v[i] = field.add(v[i], *c);
                    }
                    v
                })
                .collect();
            let span = Mat::from_columns(field, paths.len(), &cols);
            for l in 1..=depth {
                let all_in = paths
                    .iter()
                    .filter(|p| p.len == l)
                    .all(|p| {
                        let mut e = vec![0u8; paths.len()];
                        e[index[p]] = 1;
                        span.spans(&Mat::column_vector(field, &e))
                    });
                if all_in {
                    return Ok(l);
                }
            }
        }
        Err(Error::InfiniteDimensional(DEPTH_CAP))
    }

    /// Compiles the quotient `kQ / I` to structure constants over `field`.
    pub fn build(&self, name: &str, field: PrimeField) -> Result<Algebra> {
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::InvalidAlgebra(format!("arrow '{}' has an unknown endpoint", a.name)));
            }
        }
        if self.vertices.is_empty() {
            return Err(Error::InvalidAlgebra("quiver has no vertices".into()));
        }
        let rels = self.validate_relations(field)?;
        let bound = self.find_nilpotency_bound(field, &rels)?;
        let paths = self.paths_up_to(bound - 1)?;
        let n = paths.len();
        // Columns ordered from the largest path down, so pivots land on large paths
        // and the surviving basis consists of the smallest normal words.
        let rev = |i: usize| n - 1 - i;
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let gens = self.ideal_generators(&rels, &paths, bound - 1, Some(bound));
        let rows: Vec<Vec<u8>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![0u8; n];
                for (c, p) in g {
                    let i = rev(index[p]);
                    v[i] = field.add(v[i], *c);
                }
                v
            })
            .collect();
        let rref = if rows.is_empty() {
            None
        } else {
            let m = Mat::from_columns(field, n, &rows).transpose();
            Some(m.rref())
        };
        let pivots: Vec<usize> = rref.as_ref().map_or(vec![], |r| r.pivots.clone());
        let basis_idx: Vec<usize> = (0..n).filter(|&i| !pivots.contains(&rev(i))).collect();
        let position: HashMap<usize, usize> = basis_idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let d = basis_idx.len();

        let reduce = |p: &Path| -> Vec<u8> {
            let mut v = vec![0u8; d];
            if p.len >= bound {
                return v;
            }
            let i = index[p];
            if let Some(&k) = position.get(&i) {
                v[k] = 1;
                return v;
            }
            let r = rref.as_ref().expect("pivot implies relations");
            let row = r.pivots.iter().position(|&c| c == rev(i)).expect("pivot row");
            for (k, &j) in basis_idx.iter().enumerate() {
                v[k] = field.neg(r.mat.get(row, rev(j)));
            }
            v
        };

        let basis: Vec<&Path> = basis_idx.iter().map(|&i| &paths[i]).collect();
        let products: Vec<Vec<Vec<u8>>> = basis
            .iter()
            .map(|bi| {
                basis
                    .iter()
                    .map(|bj| self.product(bi, bj).map_or(vec![0u8; d], |p| reduce(&p)))
                    .collect()
            })
            .collect();
        let labels: Vec<String> = basis.iter().map(|p| self.label(p)).collect();
        let mut unit = vec![0u8; d];
        let mut idempotents = Vec::new();
        for (k, p) in basis.iter().enumerate() {
            if p.len == 0 {
                unit[k] = 1;
                let mut e = vec![0u8; d];
                e[k] = 1;
                idempotents.push(e);
            }
        }
        let rad_cols: Vec<Vec<u8>> = basis
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len > 0)
            .map(|(k, _)| {
                let mut e = vec![0u8; d];
                e[k] = 1;
                e
            })
            .collect();
        let alg = Algebra::from_structure_constants(name, field, labels, products, unit)?;
        let rad_basis = Mat::from_columns(field, d, &rad_cols);
        let dims = alg.radical_power_dims(&rad_basis);
        let nilpotency = dims.iter().position(|&x| x == 0).map_or(dims.len() + 1, |i| i + 1);
        alg.with_radical(RadicalData {
            basis: rad_basis,
            nilpotency,
            vertices: self.vertices.clone(),
            idempotents,
            quiver: self.clone(),
            paths: basis.iter().map(|p| (self.source(p), if p.len == 0 { vec![] } else { p.key.clone() })).collect(),
        })
    }

    fn label(&self, p: &Path) -> String {
        if p.len == 0 {
            format!("e{}", self.vertices[p.key[0]])
        } else {
            p.key.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn loop_without_relation_is_rejected() {
        let q = Quiver::parse(&["1"], &[("x", "1", "1")], &[]).unwrap();
        assert!(matches!(q.build("k[x]", f2()), Err(Error::InfiniteDimensional(_))));
    }

    #[test]
    fn non_admissible_relations_are_rejected() {
        let q = Quiver::parse(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a"]).unwrap();
        assert!(matches!(q.build("bad", f2()), Err(Error::NotAdmissible(_))));
        let q = Quiver::parse(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a*b - b*a"]).unwrap();
        assert!(matches!(q.build("bad", f2()), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn non_monomial_relation_that_is_not_admissible() {
        // x^2 - x^3 generates an ideal containing no power of x.
        let q = Quiver::parse(&["1"], &[("x", "1", "1")], &["x*x - x*x*x"]).unwrap();
        assert!(matches!(q.build("bad", f2()), Err(Error::InfiniteDimensional(_))));
    }

    #[test]
    fn truncated_polynomial_ring() {
        let q = Quiver::parse(&["1"], &[("x", "1", "1")], &["x*x*x"]).unwrap();
        let a = q.build("k[x]/x^3", PrimeField::new(3).unwrap()).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.require_radical().unwrap().nilpotency, 3);
    }

    #[test]
    fn commutativity_relation() {
        // Square 1 -> 2 -> 4, 1 -> 3 -> 4 with b*a = d*c: dimension 4 + 4 + 1 = 9.
        let q = Quiver::parse(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
            &["b*a - d*c"],
        )
        .unwrap();
        let a = q.build("square", f2()).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.check().is_ok());
    }

    #[test]
    fn nontrivial_reduction() {
        // Two loops with x*y = y*x and squares zero: k<x,y>/(x^2, y^2, xy - yx), dim 4.
        let q = Quiver::parse(&["1"], &[("x", "1", "1"), ("y", "1", "1")], &["x*x", "y*y", "x*y - y*x"]).unwrap();
        let a = q.build("ext", PrimeField::new(3).unwrap()).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.require_radical().unwrap().nilpotency, 3);
    }

    #[test]
    fn relation_parsing() {
        let q = Quiver::parse(&["1"], &[("x", "1", "1"), ("y", "1", "1")], &[]).unwrap();
        let r = q.parse_relation("2 x*y - y*x + x*x").unwrap();
        assert_eq!(r.terms, vec![(2, vec![1, 0]), (-1, vec![0, 1]), (1, vec![0, 0])]);
        assert!(q.parse_relation("x*z").is_err());
    }
}
