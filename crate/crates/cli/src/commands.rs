//! Subcommand implementations. Each returns a [`Report`]; the caller prints it.

use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use ghostforge::algebra::ext::ExtSpace;
use ghostforge::algebra::hom::HomSpace;
use ghostforge::algebra::module::{Module, ModuleMap};
use ghostforge::algebra::projective::{factors_through_injective, simple_modules};
use ghostforge::algebra::standard::{a2, dual_numbers};
use ghostforge::algebra::Algebra;
use ghostforge::complex::random::random_coeffs;
use ghostforge::complex::ce::classify_ce_projective;
use ghostforge::complex::homology::{homology_dims, is_exact};
use ghostforge::complex::{ChainMap, Complex};
use ghostforge::ghost::acyclic::factors_through_acyclic;
use ghostforge::ghost::verify::{ggh_verify, global_dim, psi_verify};
use ghostforge::ghost::{
    basic_modules, coghost_report, complex_preenvelope, compose_power_chain, compose_power_module, is_fp_ghost,
    is_ghost_chain, is_s_ghost_complex, is_s_ghost_module, module_preenvelope, spheres_for, TestSet,
};
use ghostforge::io::{self, Body, Loaded, Object};
use ghostforge::oracle::{fp_ghost_witness_search, tiny_suite, witness_search_ghost_not_acyclic, Search};
use ghostforge::splitting::{adjust_splitting, connecting_map, downward_adjust, is_trivial_arrow_conflation, ConflationMorphism};
use rand::SeedableRng;

use crate::report::{write_file, Input, Report, Verdict};
use crate::{AlgebraCmd, CliError, Command, ComplexCmd, GhostCmd, GhostMode, IdealCmd, ObjectIdeal, OracleCmd, SplittingArgs, VerifyCmd};

type Res<T> = Result<T, CliError>;

pub fn run(cmd: &Command) -> Res<Report> {
    match cmd {
        Command::Algebra { action: AlgebraCmd::Check { toml } } => algebra_check(toml),
        Command::Complex { action: ComplexCmd::Check { doc } } => complex_check(doc),
        Command::Ext { c, a } => ext(c, a),
        Command::Ghost { action } => match action {
            GhostCmd::Test { f, mode, set } => ghost_test(f, *mode, set),
            GhostCmd::Preenvelope { a, set } => preenvelope(a, set),
            GhostCmd::Power { factors, set } => power(factors, set),
        },
        Command::Ideal { action: IdealCmd::Member { f, object_ideal } } => ideal_member(f, *object_ideal),
        Command::Ggh { action: VerifyCmd::Verify { algebra, n, budget, seed, search } } => {
            ggh(algebra, *n, *budget, *seed, &search.budget(*seed))
        }
        Command::Psi { action: VerifyCmd::Verify { algebra, n, budget, seed, .. } } => psi(algebra, *n, *budget, *seed),
        Command::Splitting(args) => splitting(args),
        Command::Oracle { action } => match action {
            OracleCmd::Crosscheck { algebra, search, .. } => crosscheck(algebra, &search.budget(0)),
            OracleCmd::Witness { algebra, n, write, search } => witness(algebra, *n, write.as_deref(), &search.budget(0)),
            OracleCmd::FpWitness { algebra, max_dim, write, search } => {
                fp_witness(algebra, *max_dim, write.as_deref(), &search.budget(0))
            }
        },
    }
}

fn load(path: &Path) -> Res<(Loaded, Input)> {
    let loaded = io::load_document(path)?;
    let input = Input::file(path, &loaded.bytes);
    Ok((loaded, input))
}

fn load_algebra(path: &Path) -> Res<(io::AlgebraFile, Input)> {
    let file = io::load_algebra(path)?;
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok((file, Input::file(path, &bytes)))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn chain_json(f: &ChainMap) -> Value {
    to_value(&io::chain_map_spec(f))
}

fn map_json(f: &ModuleMap) -> Value {
    to_value(&io::map_spec(f))
}

fn wrong_kind(path: &Path, got: &Object, want: &str) -> CliError {
    CliError::Input(format!("{}: expected {want}, found {}", path.display(), got.kind()))
}

/// A chain map, composing a ghost-composite document first applied first.
fn chain_map_of(path: &Path, obj: &Object) -> Res<Option<ChainMap>> {
    match obj {
        Object::ChainMap(f) => Ok(Some(f.clone())),
        Object::GhostComposite(fs) => {
            let (first, rest) = fs.split_first().ok_or_else(|| CliError::Input(format!("{}: no factors", path.display())))?;
            let mut acc = first.clone();
            for g in rest {
                acc = g.compose(&acc)?;
            }
            Ok(Some(acc))
        }
        _ => Ok(None),
    }
}

fn module_set(alg: &Arc<Algebra>, entries: &[String], inputs: &mut Vec<Input>) -> Res<(TestSet<Module>, Vec<String>)> {
    if entries.is_empty() {
        let simples = simple_modules(alg)?;
        let names = (0..simples.len()).map(|v| format!("simple:{v}")).collect();
        return Ok((TestSet::new(simples), names));
    }
    let mut members = Vec::new();
    for e in entries {
        if e.ends_with(".json") {
            let (loaded, input) = load(Path::new(e))?;
            inputs.push(input);
            match loaded.object {
                Object::Module(m) if m.algebra() == alg => members.push(m),
                Object::Module(_) => return Err(CliError::Input(format!("{e}: module over a different algebra"))),
                other => return Err(wrong_kind(Path::new(e), &other, "module")),
            }
        } else {
            members.push(io::named_module(alg, e)?);
        }
    }
    Ok((TestSet::new(members), entries.to_vec()))
}

fn algebra_check(path: &Path) -> Res<Report> {
    let (file, input) = load_algebra(path)?;
    let alg = &file.algebra;
    let check = alg.check()?;
    let gl = global_dim(alg)?;
    let basics = basic_modules(alg)?;
    let body = json!({
        "algebra": to_value(&check),
        "global_dimension": gl.to_string(),
        "indecomposables_complete": file.indecomposables_complete,
        "basic_module_dims": basics.iter().map(Module::dim).collect::<Vec<_>>(),
    });
    let summary = format!("{} of dimension {}, gl.dim {gl}", check.name, check.dim);
    Ok(Report::new("algebra check", Verdict::Positive, summary, vec![input], body))
}

fn complex_json(x: &Complex) -> Res<Value> {
    x.validate()?;
    Ok(json!({
        "lo": x.lo(),
        "dims": x.dims(),
        "homology_dims": homology_dims(x),
        "exact": is_exact(x),
        "degreewise_projective": x.is_degreewise_projective()?,
        "ce_projective": classify_ce_projective(x)?.is_some(),
    }))
}

fn complex_check(path: &Path) -> Res<Report> {
    let (loaded, input) = load(path)?;
    let body = match &loaded.object {
        Object::Complex(x) => json!({"kind": "complex", "complex": complex_json(x)?}),
        Object::ChainMap(f) => {
            f.validate()?;
            json!({
                "kind": "chain-map",
                "source": complex_json(&f.source)?,
                "target": complex_json(&f.target)?,
            })
        }
        other => return Err(wrong_kind(path, other, "complex or chain-map")),
    };
    Ok(Report::new("complex check", Verdict::Positive, "valid", vec![input], body))
}

fn ext(c: &Path, a: &Path) -> Res<Report> {
    let (lc, ic) = load(c)?;
    let (la, ia) = load(a)?;
    let (Object::Module(cm), Object::Module(am)) = (&lc.object, &la.object) else {
        return Err(CliError::Input("ext takes two module documents".into()));
    };
    if cm.algebra() != am.algebra() {
        return Err(CliError::Input("modules live over different algebras".into()));
    }
    let space = ExtSpace::new(cm, am)?;
    let basis: Vec<Value> = space
        .basis()
        .iter()
        .map(|b| Ok(to_value(&io::conflation_spec(&space.to_conflation(b)?))))
        .collect::<Res<_>>()?;
    let body = json!({"dim": space.dim(), "prime": cm.field().p(), "basis_conflations": basis});
    Ok(Report::new("ext", Verdict::Positive, format!("dim Ext = {}", space.dim()), vec![ic, ia], body))
}

fn ghost_test(path: &Path, mode: Option<GhostMode>, set: &[String]) -> Res<Report> {
    let (loaded, input) = load(path)?;
    let mut inputs = vec![input];
    let alg = loaded.algebra.algebra.clone();
    let chain = chain_map_of(path, &loaded.object)?;
    let mode = mode.unwrap_or(if chain.is_some() { GhostMode::Chain } else { GhostMode::SGhost });
    let (ghost, body) = match (mode, chain, &loaded.object) {
        (GhostMode::Chain, Some(f), _) => {
            let w = is_ghost_chain(&f);
            (w.is_some(), json!({"mode": "chain", "ghost": w.is_some(), "witness": to_value(&w)}))
        }
        (GhostMode::SGhost, Some(f), _) => {
            let w = is_s_ghost_complex(&f, &spheres_for(&f))?;
            (w.is_some(), json!({"mode": "s-ghost", "set": "spheres", "ghost": w.is_some(), "witness": to_value(&w)}))
        }
        (GhostMode::CoghostCrosscheck, Some(f), _) => {
            let r = coghost_report(&f)?;
            if !r.agree() {
                return Err(ghostforge::Error::Invariant(format!("ghost criteria disagree: {r:?}")).into());
            }
            (r.homology, json!({"mode": "coghost-crosscheck", "ghost": r.homology, "criteria": to_value(&r)}))
        }
        (GhostMode::SGhost, None, Object::Map(f)) => {
            let (set, names) = module_set(&alg, set, &mut inputs)?;
            let w = is_s_ghost_module(f, &set)?;
            (w.is_some(), json!({"mode": "s-ghost", "set": names, "ghost": w.is_some(), "witness": to_value(&w)}))
        }
        (GhostMode::Fp, None, Object::Map(f)) => {
            let indecs = TestSet { members: basic_modules(&alg)?, complete: loaded.algebra.indecomposables_complete };
            let r = is_fp_ghost(f, &indecs)?;
            let ghost = r.witness.is_some();
            let mut body = json!({"mode": "fp", "ghost": ghost, "decisive": r.decisive, "witness": to_value(&r.witness)});
            if !r.decisive {
                body["note"] = json!("relative to supplied list");
            }
            (ghost, body)
        }
        (m, _, obj) => {
            return Err(CliError::Input(format!("mode {m:?} does not apply to a {} document", obj.kind())));
        }
    };
    Ok(Report::new("ghost test", Verdict::from_bool(ghost), format!("ghost: {ghost}"), inputs, body))
}

fn preenvelope(path: &Path, set: &[String]) -> Res<Report> {
    let (loaded, input) = load(path)?;
    let mut inputs = vec![input];
    let alg = loaded.algebra.algebra.clone();
    let body = match &loaded.object {
        Object::Module(a) => {
            let (set, names) = module_set(&alg, set, &mut inputs)?;
            let pre = module_preenvelope(a, &set)?;
            json!({
                "set": names,
                "j": map_json(pre.j()),
                "p": map_json(&pre.conflation.p),
                "summands": pre.summands.iter().map(|&k| names[k].clone()).collect::<Vec<_>>(),
                "decomposition": to_value(&pre.decomposition.mat),
                "witness": to_value(&pre.witness),
            })
        }
        Object::Complex(a) => {
            let r = Module::regular(alg.clone());
            let degrees: Vec<i64> = if set.is_empty() {
                if a.is_zero() { vec![] } else { (a.lo() + 1..=a.hi() + 1).collect() }
            } else {
                set.iter()
                    .map(|e| {
                        e.strip_prefix("sphere:")
                            .and_then(|n| n.parse::<i64>().ok())
                            .ok_or_else(|| CliError::Input(format!("complex test objects are 'sphere:n', found '{e}'")))
                    })
                    .collect::<Res<_>>()?
            };
            let set = TestSet::new(degrees.iter().map(|&n| Complex::sphere(n, &r)).collect());
            let pre = complex_preenvelope(a, &set)?;
            json!({
                "set": degrees.iter().map(|n| format!("sphere:{n}")).collect::<Vec<_>>(),
                "j": chain_json(pre.j()),
                "summands": pre.summands.iter().map(|&k| format!("sphere:{}", degrees[k])).collect::<Vec<_>>(),
                "witness": to_value(&pre.witness),
            })
        }
        other => return Err(wrong_kind(path, other, "module or complex")),
    };
    let n = body["summands"].as_array().map_or(0, Vec::len);
    Ok(Report::new("ghost preenvelope", Verdict::Positive, format!("{n} summands in W"), inputs, body))
}

fn power(paths: &[PathBuf], set: &[String]) -> Res<Report> {
    let mut inputs = Vec::new();
    let mut chains = Vec::new();
    let mut maps = Vec::new();
    let mut alg = None;
    for p in paths {
        let (loaded, input) = load(p)?;
        inputs.push(input);
        alg.get_or_insert_with(|| loaded.algebra.algebra.clone());
        match loaded.object {
            Object::ChainMap(f) => chains.push(f),
            Object::GhostComposite(fs) => chains.extend(fs),
            Object::Map(f) => maps.push(f),
            other => return Err(wrong_kind(p, &other, "map or chain map")),
        }
    }
    let alg = alg.ok_or_else(|| CliError::Input("no factors given".into()))?;
    let body = match (chains.is_empty(), maps.is_empty()) {
        (false, true) => {
            let c = compose_power_chain(&chains)?;
            json!({"power": c.power(), "composite": chain_json(&c.map), "certificates": to_value(&c.certificates)})
        }
        (true, false) => {
            let (set, names) = module_set(&alg, set, &mut inputs)?;
            let c = compose_power_module(&maps, &set)?;
            json!({"power": c.power(), "set": names, "composite": map_json(&c.map), "certificates": to_value(&c.certificates)})
        }
        _ => return Err(CliError::Input("factors must all be module maps or all chain maps".into())),
    };
    let summary = format!("element of the power {}", body["power"]);
    Ok(Report::new("ghost power", Verdict::Positive, summary, inputs, body))
}

fn ideal_member(path: &Path, ideal: ObjectIdeal) -> Res<Report> {
    let (loaded, input) = load(path)?;
    let (member, body) = match ideal {
        ObjectIdeal::Acyc => {
            let f = chain_map_of(path, &loaded.object)?.ok_or_else(|| wrong_kind(path, &loaded.object, "chain map"))?;
            match factors_through_acyclic(&f)? {
                Some(w) => {
                    if !w.verify_acyclic(&f) {
                        return Err(ghostforge::Error::Invariant("factorization does not re-verify".into()).into());
                    }
                    let body = json!({
                        "object_ideal": "acyc",
                        "member": true,
                        "middle": to_value(&io::complex_spec(&w.middle)),
                        "h": chain_json(&w.h),
                        "g": chain_json(&w.g),
                    });
                    (true, body)
                }
                None => (false, json!({"object_ideal": "acyc", "member": false})),
            }
        }
        ObjectIdeal::Inj => {
            let Object::Map(f) = &loaded.object else { return Err(wrong_kind(path, &loaded.object, "module map")) };
            match factors_through_injective(f)? {
                Some(w) => {
                    if w.g.after(&w.h) != *f {
                        return Err(ghostforge::Error::Invariant("factorization does not re-verify".into()).into());
                    }
                    let body = json!({
                        "object_ideal": "inj",
                        "member": true,
                        "middle": to_value(&io::module_spec(&w.middle)),
                        "h": to_value(&w.h.mat),
                        "g": to_value(&w.g.mat),
                    });
                    (true, body)
                }
                None => (false, json!({"object_ideal": "inj", "member": false})),
            }
        }
    };
    Ok(Report::new("ideal member", Verdict::from_bool(member), format!("member: {member}"), vec![input], body))
}

fn ggh(path: &Path, n: usize, samples: usize, seed: u64, budget: &ghostforge::oracle::SearchBudget) -> Res<Report> {
    let (file, input) = load_algebra(path)?;
    let r = ggh_verify(&file.algebra, n, samples, seed, budget)?;
    let verdict = if r.passed() {
        Verdict::Positive
    } else if r.expect_all {
        Verdict::Violated
    } else {
        match r.converse.as_ref().map(|w| w.status.as_str()) {
            Some("budget exceeded") => Verdict::Undetermined,
            _ => Verdict::Negative,
        }
    };
    let summary = format!("{}/{} composites in <Acyc>, gl.dim {}", r.factoring, r.samples, r.global_dimension);
    Ok(Report::new("ggh verify", verdict, summary, vec![input], to_value(&r)))
}

fn psi(path: &Path, n: usize, samples: usize, seed: u64) -> Res<Report> {
    let (file, input) = load_algebra(path)?;
    let indecs = TestSet { members: basic_modules(&file.algebra)?, complete: file.indecomposables_complete };
    let r = psi_verify(&file.algebra, n, samples, seed, &indecs)?;
    let nilpotent = r.radical_nilpotency.is_none_or(|k| k <= n);
    let verdict = match (r.passed(), nilpotent) {
        (true, _) => Verdict::Positive,
        (false, true) => Verdict::Violated,
        (false, false) => Verdict::Negative,
    };
    let summary = format!("{}/{} composites in <Inj>", r.factoring, r.samples);
    Ok(Report::new("psi verify", verdict, summary, vec![input], to_value(&r)))
}

fn splitting_json(sp: &ghostforge::algebra::conflation::Splitting) -> Value {
    json!({"r": to_value(&sp.r.mat), "s": to_value(&sp.s.mat)})
}

fn splitting(args: &SplittingArgs) -> Res<Report> {
    let (loaded, input) = load(&args.xi)?;
    let mut inputs = vec![input];
    let Object::Conflation(xi) = &loaded.object else { return Err(wrong_kind(&args.xi, &loaded.object, "conflation")) };
    let Some(sp) = xi.splitting() else {
        let body = json!({"trivial": false});
        return Ok(Report::new("splitting", Verdict::Negative, "conflation does not split", inputs, body));
    };
    let mut body = json!({"trivial": true, "splitting": splitting_json(&sp)});
    let mut verdict = Verdict::Positive;
    let mut summary = "conflation splits".to_string();
    if args.adjust {
        let hom = HomSpace::new(xi.cokernel_object(), xi.kernel_object());
        let mut rng = seeded_rng(args.seed);
        let delta = hom.element(&random_coeffs(&mut rng, xi.kernel_object().field().p(), hom.dim())).mat;
        let adjusted = adjust_splitting(&sp, &delta)?;
        // The identity morphism measured against (sp, adjusted) recovers -Δ.
        let back = connecting_map(&ConflationMorphism::identity(xi), &sp, &adjusted)?.delta;
        if back != delta.neg() {
            return Err(ghostforge::Error::Invariant("connecting map of the identity is not -Δ".into()).into());
        }
        body["delta"] = to_value(&delta);
        body["adjusted"] = splitting_json(&adjusted);
        body["identities_hold"] = json!(true);
        summary = "adjusted splitting verified".into();
    }
    if let Some(path) = &args.arrow {
        let (lf, input) = load(path)?;
        inputs.push(input);
        let Object::ConflationMorphism(f) = &lf.object else { return Err(wrong_kind(path, &lf.object, "conflation-morphism")) };
        if f.x != *xi {
            return Err(CliError::Input("the morphism does not start at the given conflation".into()));
        }
        let Some(sy) = f.y.splitting() else {
            body["arrow"] = json!({"target_trivial": false});
            return Ok(Report::new("splitting", Verdict::Negative, "target conflation does not split", inputs, body));
        };
        let delta = connecting_map(f, &sp, &sy)?.delta;
        let arrow = is_trivial_arrow_conflation(f, &sp, &sy)?;
        let down = downward_adjust(f, &sp, &sy)?;
        body["arrow"] = json!({
            "target_splitting": splitting_json(&sy),
            "connecting_map": to_value(&delta),
            "arrow_trivial": arrow.is_some(),
            "arrow_splitting": arrow.as_ref().map(|a| json!({
                "delta_x": to_value(&a.delta_x),
                "delta_y": to_value(&a.delta_y),
                "x": splitting_json(&a.split_x),
                "y": splitting_json(&a.split_y),
            })),
            "downward": down.as_ref().map(splitting_json),
        });
        verdict = Verdict::from_bool(arrow.is_some());
        summary = format!("arrow conflation trivial: {}", arrow.is_some());
    }
    Ok(Report::new("splitting", verdict, summary, inputs, body))
}

fn seeded_rng(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}

fn crosscheck(paths: &[PathBuf], budget: &ghostforge::oracle::SearchBudget) -> Res<Report> {
    let mut inputs = Vec::new();
    let mut algebras = Vec::new();
    if paths.is_empty() {
        for alg in [dual_numbers(2), a2(2)] {
            inputs.push(Input::builtin(alg.name()));
            algebras.push(alg);
        }
    }
    for p in paths {
        let (file, input) = load_algebra(p)?;
        inputs.push(input);
        algebras.push(file.algebra);
    }
    let reports = algebras.iter().map(|a| tiny_suite(a, budget)).collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.all_agree());
    let summary = reports
        .iter()
        .map(|r| format!("{}: ext {}/{}, factor {}/{}", r.algebra, r.ext_agree, r.ext_cases, r.factor_agree, r.factor_cases))
        .collect::<Vec<_>>()
        .join("; ");
    let body = json!({"suite": "tiny", "budget": to_value(budget), "all_agree": ok, "algebras": to_value(&reports)});
    Ok(Report::new("oracle crosscheck", if ok { Verdict::Positive } else { Verdict::Violated }, summary, inputs, body))
}

/// `target` relative to the directory `from`.
fn relative_path(target: &Path, from: &Path) -> Res<String> {
    let abs = |p: &Path| {
        std::fs::canonicalize(p).map_err(|e| CliError::Input(format!("cannot resolve {}: {e}", p.display())))
    };
    let (t, f) = (abs(target)?, abs(from)?);
    let tc: Vec<Component> = t.components().collect();
    let fc: Vec<Component> = f.components().collect();
    let common = tc.iter().zip(&fc).take_while(|(a, b)| a == b).count();
    let mut out = PathBuf::new();
    for _ in common..fc.len() {
        out.push("..");
    }
    for c in &tc[common..] {
        out.push(c.as_os_str());
    }
    Ok(out.to_string_lossy().replace('\\', "/"))
}

fn write_document(doc: &Path, algebra: &Path, body: Body) -> Res<()> {
    let dir = doc.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    let text = io::document_json(&relative_path(algebra, dir)?, body) + "\n";
    write_file(doc, text.as_bytes())
}

fn search_verdict<T>(s: &Search<T>) -> Verdict {
    match s {
        Search::Found(_) => Verdict::Positive,
        Search::Exhausted => Verdict::Negative,
        Search::BudgetExceeded => Verdict::Undetermined,
    }
}

fn witness(path: &Path, n: usize, write: Option<&Path>, budget: &ghostforge::oracle::SearchBudget) -> Res<Report> {
    let (file, input) = load_algebra(path)?;
    let s = witness_search_ghost_not_acyclic(&file.algebra, n, budget)?;
    let mut body = json!({"n": n, "status": s.label(), "budget": to_value(budget)});
    if let Some(w) = s.found() {
        if !w.verify()? {
            return Err(ghostforge::Error::Invariant("witness does not re-verify".into()).into());
        }
        body["factors"] = Value::Array(w.factors.iter().map(chain_json).collect());
        body["composite"] = chain_json(&w.composite);
        if let Some(doc) = write {
            let factors = w.factors.iter().map(io::chain_map_spec).collect();
            write_document(doc, path, Body::GhostComposite { factors })?;
        }
    }
    Ok(Report::new("oracle witness", search_verdict(&s), s.label(), vec![input], body))
}

fn fp_witness(path: &Path, max_dim: usize, write: Option<&Path>, budget: &ghostforge::oracle::SearchBudget) -> Res<Report> {
    let (file, input) = load_algebra(path)?;
    let indecs = TestSet { members: basic_modules(&file.algebra)?, complete: file.indecomposables_complete };
    let s = fp_ghost_witness_search(&indecs, max_dim, budget)?;
    let mut body = json!({
        "max_dim": max_dim,
        "status": s.label(),
        "decisive": indecs.complete,
        "budget": to_value(budget),
    });
    if let Some(w) = s.found() {
        body["map"] = map_json(&w.map);
        if let Some(doc) = write {
            write_document(doc, path, Body::Map(io::map_spec(&w.map)))?;
        }
    }
    Ok(Report::new("oracle fp-witness", search_verdict(&s), s.label(), vec![input], body))
}
