//! File formats: TOML for algebras, JSON documents for everything else.
//!
//! Every JSON document carries `"schema": "ghostforge/1"`, a `"kind"` tag and
//! the path of its algebra TOML, resolved relative to the document. Modules may
//! be given by name (`"simple:0"`, `"projective:1"`, `"injective:0"`,
//! `"basic:2"`, `"regular"`, `"zero"`), as a quiver representation, or by the
//! full action matrices of the algebra basis.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::conflation::Conflation;
use crate::algebra::module::{from_representation, Module, ModuleMap};
use crate::algebra::projective::{indec_injective, indec_projective, simple};
use crate::algebra::quiver::Quiver;
use crate::algebra::Algebra;
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};
use crate::splitting::ConflationMorphism;

pub const SCHEMA: &str = "ghostforge/1";
pub const ALGEBRA_SCHEMA: &str = "ghostforge-algebra/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureSpec {
    pub labels: Vec<String>,
    pub unit: Vec<i64>,
    /// `products[i][j]` = coordinates of `b_i * b_j`.
    pub products: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub named: BTreeMap<String, Vec<i64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct IndecomposablesSpec {
    /// Asserts that the simple, indecomposable projective and indecomposable
    /// injective modules are all the indecomposables.
    #[serde(default)]
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraToml {
    pub schema: String,
    pub name: String,
    pub field: u64,
    pub quiver: Option<QuiverSpec>,
    pub structure: Option<StructureSpec>,
    #[serde(default)]
    pub indecomposables: IndecomposablesSpec,
}

/// A loaded algebra definition.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub path: PathBuf,
    pub algebra: Arc<Algebra>,
    pub indecomposables_complete: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn parse_algebra(text: &str) -> Result<(Algebra, bool)> {
    let spec: AlgebraToml = toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if spec.schema != ALGEBRA_SCHEMA {
        return Err(Error::Schema(format!("expected schema '{ALGEBRA_SCHEMA}', found '{}'", spec.schema)));
    }
    let field = PrimeField::new(spec.field)?;
    let alg = match (&spec.quiver, &spec.structure) {
        (Some(q), None) => {
            let vs: Vec<&str> = q.vertices.iter().map(String::as_str).collect();
            let arrows: Vec<(&str, &str, &str)> =
                q.arrows.iter().map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str())).collect();
            let rels: Vec<&str> = q.relations.iter().map(String::as_str).collect();
            Quiver::parse(&vs, &arrows, &rels)?.build(&spec.name, field)?
        }
        (None, Some(s)) => {
            let red = |v: &Vec<i64>| v.iter().map(|&x| field.reduce(x)).collect::<Vec<u8>>();
            let products = s.products.iter().map(|row| row.iter().map(red).collect()).collect();
            let alg = Algebra::from_structure_constants(&spec.name, field, s.labels.clone(), products, red(&s.unit))?;
            alg.with_named_elements(s.named.iter().map(|(k, v)| (k.clone(), red(v))).collect())?
        }
        _ => return Err(Error::Schema("give exactly one of [quiver] or [structure]".into())),
    };
    Ok((alg, spec.indecomposables.complete))
}

pub fn load_algebra(path: &Path) -> Result<AlgebraFile> {
    let (alg, complete) = parse_algebra(&read(path)?)?;
    Ok(AlgebraFile { path: path.to_path_buf(), algebra: Arc::new(alg), indecomposables_complete: complete })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Named { named: String },
    Representation { dims: Vec<usize>, arrows: Vec<Mat> },
    Action { action: Vec<Mat> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapSpec {
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    pub matrix: Mat,
}

/// `diffs[k]` is `d_{lo+k+1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub lo: i64,
    pub objects: Vec<ModuleSpec>,
    pub diffs: Vec<Mat>,
}

/// `components[k]` is `f_{lo+k}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainMapSpec {
    pub source: ComplexSpec,
    pub target: ComplexSpec,
    pub lo: i64,
    pub components: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConflationSpec {
    pub i: MapSpec,
    pub p: MapSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Module { module: ModuleSpec },
    Map(MapSpec),
    Complex(ComplexSpec),
    ChainMap(ChainMapSpec),
    Conflation(ConflationSpec),
    ConflationMorphism { x: ConflationSpec, y: ConflationSpec, f1: Mat, f0: Mat, fm1: Mat },
    /// Factors in the order they are applied.
    GhostComposite { factors: Vec<ChainMapSpec> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub algebra: String,
    #[serde(flatten)]
    pub body: Body,
}

/// A resolved document.
#[derive(Clone, Debug)]
pub enum Object {
    Module(Module),
    Map(ModuleMap),
    Complex(Complex),
    ChainMap(ChainMap),
    Conflation(Conflation),
    ConflationMorphism(ConflationMorphism),
    GhostComposite(Vec<ChainMap>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Module(_) => "module",
            Object::Map(_) => "map",
            Object::Complex(_) => "complex",
            Object::ChainMap(_) => "chain-map",
            Object::Conflation(_) => "conflation",
            Object::ConflationMorphism(_) => "conflation-morphism",
            Object::GhostComposite(_) => "ghost-composite",
        }
    }
}

pub fn module(alg: &Arc<Algebra>, spec: &ModuleSpec) -> Result<Module> {
    match spec {
        ModuleSpec::Named { named } => named_module(alg, named),
        ModuleSpec::Representation { dims, arrows } => from_representation(alg, dims, arrows),
        ModuleSpec::Action { action } => Module::new(alg.clone(), action.clone()),
    }
}

/// Looks up `simple:v`, `projective:v`, `injective:v`, `basic:k`, `regular` or `zero`.
pub fn named_module(alg: &Arc<Algebra>, name: &str) -> Result<Module> {
    let (kind, idx) = match name.split_once(':') {
        Some((k, i)) => (k, Some(i.parse::<usize>().map_err(|_| Error::Schema(format!("bad index in '{name}'")))?)),
        None => (name, None),
    };
    let need = |i: Option<usize>| i.ok_or_else(|| Error::Schema(format!("'{name}' needs an index")));
    match kind {
        "regular" => Ok(Module::regular(alg.clone())),
        "zero" => Ok(Module::zero(alg.clone())),
        "simple" => simple(alg, need(idx)?),
        "projective" => indec_projective(alg, need(idx)?),
        "injective" => indec_injective(alg, need(idx)?),
        "basic" => {
            let all = crate::ghost::basic_modules(alg)?;
            let i = need(idx)?;
            all.get(i).cloned().ok_or_else(|| Error::Schema(format!("only {} basic modules", all.len())))
        }
        _ => Err(Error::Schema(format!("unknown module name '{name}'"))),
    }
}

pub fn map(alg: &Arc<Algebra>, spec: &MapSpec) -> Result<ModuleMap> {
    ModuleMap::new(module(alg, &spec.source)?, module(alg, &spec.target)?, spec.matrix.clone())
}

pub fn complex(alg: &Arc<Algebra>, spec: &ComplexSpec) -> Result<Complex> {
    let objects: Vec<Module> = spec.objects.iter().map(|m| module(alg, m)).collect::<Result<_>>()?;
    if spec.diffs.len() + 1 != objects.len().max(1) {
        return Err(Error::Schema("a complex needs one differential between consecutive objects".into()));
    }
    if objects.is_empty() {
        return Ok(Complex::zero(alg));
    }
    let mut diffs = vec![Mat::zeros(alg.field(), 0, objects[0].dim())];
    diffs.extend(spec.diffs.iter().cloned());
    Complex::new(alg, spec.lo, objects, diffs)
}

pub fn chain_map(alg: &Arc<Algebra>, spec: &ChainMapSpec) -> Result<ChainMap> {
    let src = complex(alg, &spec.source)?;
    let tgt = complex(alg, &spec.target)?;
    ChainMap::from_components(&src, &tgt, spec.lo, spec.components.clone())
}

pub fn conflation(alg: &Arc<Algebra>, spec: &ConflationSpec) -> Result<Conflation> {
    Conflation::new(map(alg, &spec.i)?, map(alg, &spec.p)?)
}

pub fn resolve(alg: &Arc<Algebra>, body: &Body) -> Result<Object> {
    Ok(match body {
        Body::Module { module: m } => Object::Module(module(alg, m)?),
        Body::Map(m) => Object::Map(map(alg, m)?),
        Body::Complex(c) => Object::Complex(complex(alg, c)?),
        Body::ChainMap(c) => Object::ChainMap(chain_map(alg, c)?),
        Body::Conflation(c) => Object::Conflation(conflation(alg, c)?),
        Body::ConflationMorphism { x, y, f1, f0, fm1 } => {
            let (x, y) = (conflation(alg, x)?, conflation(alg, y)?);
            let f1 = ModuleMap::new(x.kernel_object().clone(), y.kernel_object().clone(), f1.clone())?;
            let f0 = ModuleMap::new(x.middle().clone(), y.middle().clone(), f0.clone())?;
            let fm1 = ModuleMap::new(x.cokernel_object().clone(), y.cokernel_object().clone(), fm1.clone())?;
            Object::ConflationMorphism(ConflationMorphism::new(x, y, f1, f0, fm1)?)
        }
        Body::GhostComposite { factors } => {
            Object::GhostComposite(factors.iter().map(|f| chain_map(alg, f)).collect::<Result<_>>()?)
        }
    })
}

/// A document with its algebra, resolved.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub path: PathBuf,
    pub algebra: AlgebraFile,
    pub object: Object,
    pub bytes: Vec<u8>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if doc.schema != SCHEMA {
        return Err(Error::Schema(format!("expected schema '{SCHEMA}', found '{}'", doc.schema)));
    }
    Ok(doc)
}

pub fn load_document(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let doc = parse_document(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let algebra = load_algebra(&base.join(&doc.algebra))?;
    let object = resolve(&algebra.algebra, &doc.body)?;
    Ok(Loaded { path: path.to_path_buf(), algebra, object, bytes: text.into_bytes() })
}

pub fn module_spec(m: &Module) -> ModuleSpec {
    ModuleSpec::Action { action: m.actions().to_vec() }
}

pub fn map_spec(f: &ModuleMap) -> MapSpec {
    MapSpec { source: module_spec(&f.source), target: module_spec(&f.target), matrix: f.mat.clone() }
}

pub fn complex_spec(c: &Complex) -> ComplexSpec {
    if c.is_zero() {
        return ComplexSpec { lo: 0, objects: vec![], diffs: vec![] };
    }
    ComplexSpec {
        lo: c.lo(),
        objects: c.degrees().map(|n| module_spec(c.obj(n))).collect(),
        diffs: c.degrees().skip(1).map(|n| c.d(n)).collect(),
    }
}

pub fn chain_map_spec(f: &ChainMap) -> ChainMapSpec {
    let (lo, hi) = match (f.source.is_zero(), f.target.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (f.target.lo(), f.target.hi()),
        (false, true) => (f.source.lo(), f.source.hi()),
        (false, false) => (f.source.lo().min(f.target.lo()), f.source.hi().max(f.target.hi())),
    };
    ChainMapSpec {
        source: complex_spec(&f.source),
        target: complex_spec(&f.target),
        lo,
        components: (lo..=hi).map(|n| f.at(n)).collect(),
    }
}

pub fn conflation_spec(c: &Conflation) -> ConflationSpec {
    ConflationSpec { i: map_spec(&c.i), p: map_spec(&c.p) }
}

/// Serializes a document; output is deterministic for equal inputs.
pub fn document_json(algebra_path: &str, body: Body) -> String {
    let doc = Document { schema: SCHEMA.into(), algebra: algebra_path.into(), body };
    serde_json::to_string_pretty(&doc).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;

    const D_TOML: &str = r#"
schema = "ghostforge-algebra/1"
name = "D"
field = 2
[quiver]
vertices = ["1"]
arrows = [{ name = "x", from = "1", to = "1" }]
relations = ["x*x"]
[indecomposables]
complete = true
"#;

    #[test]
    fn quiver_toml_matches_the_builtin() {
        let (alg, complete) = parse_algebra(D_TOML).unwrap();
        assert!(complete);
        assert_eq!(alg, *dual_numbers(2));
    }

    #[test]
    fn structure_toml_builds_matrix_units() {
        let text = r#"
schema = "ghostforge-algebra/1"
name = "F2xF2"
field = 2
[structure]
labels = ["a", "b"]
unit = [1, 1]
products = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
"#;
        let (alg, complete) = parse_algebra(text).unwrap();
        assert!(!complete);
        assert_eq!(alg.dim(), 2);
        assert!(parse_algebra(&text.replace("ghostforge-algebra/1", "v0")).is_err());
    }

    #[test]
    fn chain_maps_round_trip() {
        let d = dual_numbers(2);
        let k = simple(&d, 0).unwrap();
        let dd = indec_projective(&d, 0).unwrap();
        let x = Complex::new(&d, 0, vec![dd.clone(), dd.clone()], vec![
            Mat::zeros(d.field(), 0, 2),
            crate::algebra::hom::HomSpace::new(&dd, &dd).basis.into_iter().find(|h| h.rank() == 1).unwrap().mat,
        ])
        .unwrap();
        let y = Complex::sphere(0, &k);
        let f = crate::complex::random::random_chain_map(&mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4), &x, &y);
        let text = document_json("d.toml", Body::ChainMap(chain_map_spec(&f)));
        let doc = parse_document(&text).unwrap();
        match resolve(&d, &doc.body).unwrap() {
            Object::ChainMap(g) => assert_eq!(g, f),
            other => panic!("unexpected {}", other.kind()),
        }
    }

    #[test]
    fn named_modules() {
        let a = a2(2);
        assert_eq!(named_module(&a, "projective:0").unwrap().dim(), 2);
        assert_eq!(named_module(&a, "basic:2").unwrap().dim(), 2);
        assert!(named_module(&a, "simple").is_err());
        assert!(named_module(&a, "tilting:0").is_err());
    }
}
