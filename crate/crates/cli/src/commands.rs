use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::{json, Value};

use cihomol_core::construct::{avoiding_family, cx1_family, h_family, random_modules, FamilySpec};
use cihomol_core::gk::{divisibility_report, gclass as class_of, subgroup_over};
use cihomol_core::homalg::{self, cache};
use cihomol_core::module::{iso_test, quotient_by_form_power, read_module_file, write_module_file};
use cihomol_core::ring::{enumerate_points, regular_module};
use cihomol_core::suites::{self, SuiteParams, SuiteReport};
use cihomol_core::support::{locate_periodic_support, rank_point_membership, supports_disjoint, DisjointVerdict};
use cihomol_core::{CIRing, Error, IsoVerdict, LinearForm, Mat, Module};

use crate::output::{CliError, Output};
use crate::Common;

type Res = Result<Output, CliError>;

pub struct Ctx {
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// A/(g), ..., A/(g^{r-1}).
    H,
    /// Certified family grown from the quotients A/(X_i^j).
    Axis,
    /// Axis quotients, their syzygies up to --depth, and sums.
    SyzygyClosure,
    /// Axis quotients plus --count random extensions.
    ExtensionClosure,
    /// Certified family grown from A/(X_i^{k u_i}).
    RestrictionChain,
    /// Certified family avoiding the support point of A/(g).
    Avoiding,
    /// Uncertified random modules.
    Random,
    /// The residue field k.
    Residue,
    /// A as a module over itself.
    Regular,
    /// A/(g^j).
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    /// H-family lengths, syzygy pairing and common support.
    LemmaH,
    /// Tor vanishing for A/(x) and A/(y).
    Disjoint,
    /// dim Tor_1(X, H) + mu(H) l(X) = 2 l(H ⊗ X).
    LengthIdentity,
    /// Betti numbers of A/(g^s) and power-quotient sequences.
    PowerFiltration,
    /// p divides the length of certified bounded-Betti modules.
    Divisibility,
    /// Lengths of modules avoiding a support point form a proper subgroup.
    Gap,
}

pub fn configure_cache(c: &Common) {
    cache::configure(if c.no_cache {
        cache::CacheConfig { memory: false, dir: None }
    } else {
        cache::CacheConfig {
            memory: true,
            dir: Some(c.cache_dir.clone()),
        }
    });
}

fn parse_ring(spec: &str) -> Result<Arc<CIRing>, CliError> {
    CIRing::parse(spec).map_err(|e| CliError::usage(format!("--ring: {e}")))
}

fn ring_arg(ctx: &Ctx) -> Result<Arc<CIRing>, CliError> {
    match &ctx.common.ring {
        Some(s) => parse_ring(s),
        None => Err(CliError::usage("--ring is required")),
    }
}

fn read_module(path: &Path) -> Result<Module, CliError> {
    read_module_file(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Loads `--module` (or `--module2`), checking it against `--ring` when given.
fn module_arg(ctx: &Ctx, second: bool) -> Result<Module, CliError> {
    let (flag, path) = if second {
        ("--module2", &ctx.common.module2)
    } else {
        ("--module", &ctx.common.module)
    };
    let path = path.as_ref().ok_or_else(|| CliError::usage(format!("{flag} is required")))?;
    let m = read_module(path)?;
    if let Some(spec) = &ctx.common.ring {
        let r = parse_ring(spec)?;
        if r.spec_string() != m.ring().spec_string() {
            return Err(CliError::usage(format!(
                "{}: module is over {} but --ring is {}",
                path.display(),
                m.ring().spec_string(),
                r.spec_string()
            )));
        }
    }
    Ok(m)
}

fn form_arg(ring: &CIRing, g: Option<&str>, default: Option<usize>) -> Result<LinearForm, CliError> {
    match (g, default) {
        (Some(s), _) => LinearForm::parse(s, ring).map_err(|e| CliError::usage(format!("--g: {e}"))),
        (None, Some(i)) => Ok(LinearForm::variable(ring.c(), i)),
        (None, None) => Err(CliError::usage("--g is required")),
    }
}

fn module_json(m: &Module) -> Value {
    serde_json::from_str(&m.to_json_string()).expect("module json")
}

fn matrix_rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn ring_info(ctx: &Ctx) -> Res {
    let r = ring_arg(ctx)?;
    let vars: Vec<String> = (0..r.c()).map(|i| r.var_name(i)).collect();
    let points = enumerate_points(&r).len();
    let json = json!({
        "command": "ring-info",
        "ring": r.spec_string(),
        "p": r.field().p(),
        "c": r.c(),
        "exps": r.exps(),
        "variables": vars,
        "length": r.length(),
        "projective_points": points,
    });
    let text = format!(
        "ring {}\nvariables {}\nlength {}\nprojective points {}\n",
        r.spec_string(),
        vars.join(","),
        r.length(),
        points
    );
    Ok(Output::new(json, text))
}

fn parse_powers(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("--u: expected comma-separated integers, got {s:?}")))
}

pub fn gen(ctx: &Ctx, family: Family, g: Option<String>, j: u32, depth: usize, count: usize, u: Option<String>) -> Res {
    let r = ring_arg(ctx)?;
    let c = &ctx.common;
    let out = c.out.clone().ok_or_else(|| CliError::usage("--out is required for gen"))?;
    let cx1 = |spec: FamilySpec| -> Result<Vec<(Module, Value)>, CliError> {
        Ok(cx1_family(&r, &spec, c.budget, c.seed)?
            .into_iter()
            .map(|(m, v)| (m, serde_json::to_value(&v.verdict).expect("verdict json")))
            .collect())
    };
    let bare = |ms: Vec<Module>| ms.into_iter().map(|m| (m, Value::Null)).collect::<Vec<_>>();
    let members: Vec<(Module, Value)> = match family {
        Family::H => bare(h_family(&r, &form_arg(&r, g.as_deref(), None)?)?),
        Family::Axis => cx1(FamilySpec::AxisQuotients)?,
        Family::SyzygyClosure => cx1(FamilySpec::SyzygyClosure { depth })?,
        Family::ExtensionClosure => cx1(FamilySpec::ExtensionClosure { count, seed: c.seed })?,
        Family::RestrictionChain => {
            let u = u.ok_or_else(|| CliError::usage("--u is required for restriction-chain"))?;
            cx1(FamilySpec::RestrictionChain { u: parse_powers(&u)? })?
        }
        Family::Avoiding => bare(avoiding_family(&r, &form_arg(&r, g.as_deref(), None)?, c.budget, c.seed)?),
        Family::Random => bare(random_modules(&r, count, c.seed)?),
        Family::Residue => bare(vec![Module::residue_field(&r)]),
        Family::Regular => bare(vec![regular_module(&r)]),
        Family::Quotient => bare(vec![quotient_by_form_power(&r, &form_arg(&r, g.as_deref(), None)?, j)?]),
    };
    let single_file = members.len() == 1 && out.extension().is_some_and(|e| e == "json");
    if !single_file {
        std::fs::create_dir_all(&out)?;
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    for (idx, (m, cert)) in members.iter().enumerate() {
        let path = if single_file {
            out.clone()
        } else {
            out.join(format!("{idx:03}_{}.json", &m.content_hash()[..12]))
        };
        write_module_file(&path, m)?;
        text.push_str(&format!("{} dim={} hash={}\n", path.display(), m.dim(), m.content_hash()));
        rows.push(json!({
            "file": path.display().to_string(),
            "hash": m.content_hash(),
            "dim": m.dim(),
            "certificate": cert,
        }));
    }
    let fam_name = family.to_possible_value().expect("named").get_name().to_string();
    let json = json!({
        "command": "gen",
        "ring": r.spec_string(),
        "family": fam_name,
        "seed": c.seed,
        "count": rows.len(),
        "modules": rows,
    });
    Ok(Output::new(json, text))
}

pub fn resolve(ctx: &Ctx) -> Res {
    let m = module_arg(ctx, false)?;
    let n = ctx.common.max_degree;
    let res = homalg::resolve(&m, n);
    let dims: Vec<usize> = (0..=n).map(|i| res.syzygy(i).dim()).collect();
    let hashes: Vec<String> = (0..=n).map(|i| res.syzygy(i).content_hash().to_string()).collect();
    let mut files = Vec::new();
    if let Some(dir) = &ctx.common.out {
        std::fs::create_dir_all(dir)?;
        for i in 0..=n {
            let path = dir.join(format!("syzygy_{i}.json"));
            write_module_file(&path, res.syzygy(i))?;
            files.push(path.display().to_string());
        }
    }
    let json = json!({
        "command": "resolve",
        "ring": m.ring().spec_string(),
        "hash": m.content_hash(),
        "max_degree": n,
        "betti": res.betti(),
        "syzygy_dims": dims,
        "syzygy_hashes": hashes,
        "files": files,
    });
    let text = format!("betti {}\nsyzygy dims {}\n", list(&res.betti()), list(&dims));
    Ok(Output::new(json, text))
}

pub fn betti(ctx: &Ctx) -> Res {
    let m = module_arg(ctx, false)?;
    let n = ctx.common.max_degree;
    let b = homalg::resolve(&m, n).betti();
    let json = json!({
        "command": "betti",
        "ring": m.ring().spec_string(),
        "hash": m.content_hash(),
        "max_degree": n,
        "betti": b,
    });
    Ok(Output::new(json, list(&b)))
}

fn module_result(ctx: &Ctx, command: &str, inputs: &[&Module], m: &Module, extra: Value) -> Res {
    let mut file = Value::Null;
    if let Some(path) = &ctx.common.out {
        write_module_file(path, m)?;
        file = json!(path.display().to_string());
    }
    let mut json = json!({
        "command": command,
        "ring": m.ring().spec_string(),
        "inputs": inputs.iter().map(|x| x.content_hash()).collect::<Vec<_>>(),
        "hash": m.content_hash(),
        "dim": m.dim(),
        "min_generators": m.min_generators(),
        "file": file,
        "module": module_json(m),
    });
    if let (Value::Object(o), Value::Object(e)) = (&mut json, extra) {
        o.extend(e);
    }
    let mut text = format!("{command}: dim {} hash {}\n", m.dim(), m.content_hash());
    if ctx.common.out.is_none() {
        text.push_str(&m.to_json_string());
    }
    Ok(Output::new(json, text))
}

pub fn syzygy(ctx: &Ctx, i: usize, co: bool) -> Res {
    let m = module_arg(ctx, false)?;
    let mut cur = m.clone();
    for _ in 0..i {
        cur = if co { homalg::cosyzygy(&cur) } else { homalg::syzygy(&cur) };
    }
    let name = if co { "cosyzygy" } else { "syzygy" };
    module_result(ctx, name, &[&m], &cur, json!({"steps": i}))
}

pub fn tensor(ctx: &Ctx) -> Res {
    let (m, n) = (module_arg(ctx, false)?, module_arg(ctx, true)?);
    let t = homalg::tensor(&m, &n)?;
    module_result(ctx, "tensor", &[&m, &n], &t, json!({}))
}

pub fn tor(ctx: &Ctx, i: Option<usize>) -> Res {
    let (m, n) = (module_arg(ctx, false)?, module_arg(ctx, true)?);
    let upto = i.unwrap_or(ctx.common.max_degree);
    let all = homalg::tor_dims(&m, &n, upto)?;
    let degrees: Vec<usize> = match i {
        Some(i) => vec![i],
        None => (0..=upto).collect(),
    };
    let dims: Vec<usize> = degrees.iter().map(|&d| all[d]).collect();
    let json = json!({
        "command": "tor",
        "ring": m.ring().spec_string(),
        "inputs": [m.content_hash(), n.content_hash()],
        "degrees": degrees,
        "dims": dims,
    });
    let text = match i {
        Some(i) => format!("dim Tor_{i} = {}", dims[0]),
        None => format!("dim Tor_0..{upto} = {}", list(&dims)),
    };
    Ok(Output::new(json, text))
}

pub fn iso(ctx: &Ctx) -> Res {
    let (m, n) = (module_arg(ctx, false)?, module_arg(ctx, true)?);
    let v = iso_test(&m, &n, ctx.common.trials, ctx.common.seed)?;
    let (code, extra, text) = match &v {
        IsoVerdict::Iso(phi) => (0, json!({"map": matrix_rows(phi.matrix())}), "iso".to_string()),
        IsoVerdict::NotIso(w) => (
            1,
            json!({"witness": w}),
            format!("not iso ({})", serde_json::to_string(w).expect("witness json")),
        ),
        IsoVerdict::Unknown => (3, json!({}), "unknown".to_string()),
    };
    let mut json = json!({
        "command": "iso",
        "ring": m.ring().spec_string(),
        "inputs": [m.content_hash(), n.content_hash()],
        "verdict": v.label(),
    });
    if let (Value::Object(o), Value::Object(e)) = (&mut json, extra) {
        o.extend(e);
    }
    Ok(Output::new(json, text).code(code))
}

pub fn support(ctx: &Ctx, point: Option<String>) -> Res {
    let m = module_arg(ctx, false)?;
    let c = &ctx.common;
    if let Some(p) = point {
        let alpha = LinearForm::parse(&p, m.ring()).map_err(|e| CliError::usage(format!("--point: {e}")))?;
        let member = rank_point_membership(&m, &alpha)?;
        let json = json!({
            "command": "support",
            "ring": m.ring().spec_string(),
            "input": m.content_hash(),
            "method": "rank_variety",
            "point": alpha.to_string(),
            "member": member,
        });
        let text = format!("{alpha} {} the rank variety", if member { "is in" } else { "is not in" });
        return Ok(Output::new(json, text));
    }
    let base = json!({
        "command": "support",
        "ring": m.ring().spec_string(),
        "input": m.content_hash(),
    });
    let (loc, code, text) = match locate_periodic_support(&m, c.max_degree, c.trials, c.seed) {
        Ok(loc) => {
            let code = if loc.point.is_some() { 0 } else { 3 };
            let text = match &loc.point {
                Some(p) => format!("support point {p}"),
                None => "support point undetermined".to_string(),
            };
            (serde_json::to_value(&loc).expect("location json"), code, text)
        }
        Err(Error::Precondition(msg)) => (
            json!({"point": null, "members": [], "method": null, "diagnostics": [msg.clone()]}),
            3,
            format!("support point undetermined: {msg}"),
        ),
        Err(e) => return Err(e.into()),
    };
    let mut json = base;
    if let (Value::Object(o), Value::Object(e)) = (&mut json, loc) {
        o.extend(e);
    }
    Ok(Output::new(json, text).code(code))
}

pub fn disjoint(ctx: &Ctx) -> Res {
    let (m, n) = (module_arg(ctx, false)?, module_arg(ctx, true)?);
    let c = &ctx.common;
    let v = supports_disjoint(&m, &n, c.max_degree, c.trials, c.seed)?;
    let (code, text) = match v {
        DisjointVerdict::Disjoint => (0, "disjoint".to_string()),
        DisjointVerdict::NotDisjoint { degree } => (1, format!("not disjoint (Tor_{degree} is nonzero)")),
        DisjointVerdict::Undetermined => (3, format!("undetermined up to degree {}", c.max_degree)),
    };
    let json = json!({
        "command": "disjoint",
        "ring": m.ring().spec_string(),
        "inputs": [m.content_hash(), n.content_hash()],
        "max_degree": c.max_degree,
        "result": v,
    });
    Ok(Output::new(json, text).code(code))
}

pub fn gclass(ctx: &Ctx) -> Res {
    let m = module_arg(ctx, false)?;
    let g = class_of(&m);
    let json = json!({
        "command": "gclass",
        "ring": m.ring().spec_string(),
        "input": m.content_hash(),
        "length": m.length(),
        "value": g.value,
        "modulus": g.modulus,
    });
    Ok(Output::new(json, format!("{} mod {}", g.value, g.modulus)))
}

fn expand_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|e| e == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

pub fn subgroup(ctx: &Ctx, paths: &[PathBuf], p: Option<usize>) -> Res {
    let mut files = expand_paths(paths)?;
    if let Some(m) = &ctx.common.module {
        files.insert(0, m.clone());
    }
    let modules = files.iter().map(|f| read_module(f)).collect::<Result<Vec<_>, _>>()?;
    let modulus = match (&ctx.common.ring, modules.first()) {
        (Some(s), _) => parse_ring(s)?.length(),
        (None, Some(m)) => m.ring().length(),
        (None, None) => return Err(CliError::usage("no modules given; pass --ring for the empty family")),
    };
    let sub = subgroup_over(modulus, &modules)?;
    let mut json = json!({
        "command": "subgroup",
        "count": modules.len(),
        "generator": sub.generator,
        "index": sub.index,
        "modulus": sub.modulus,
    });
    let mut text = format!(
        "subgroup generated by {} in Z/{} (index {}, {} modules)\n",
        sub.generator, sub.modulus, sub.index,
        modules.len()
    );
    let mut code = 0;
    let mut csv = None;
    if let Some(d) = p {
        let rep = divisibility_report(&modules, d)?;
        text.push_str(&format!(
            "divisibility by {d}: {} ({} failures)\n",
            if rep.pass { "pass" } else { "FAIL" },
            rep.failures.len()
        ));
        if !rep.pass {
            code = 1;
        }
        csv = Some(rep.to_csv());
        json["divisibility"] = serde_json::to_value(&rep).expect("report json");
    }
    let mut out = Output::new(json, text).code(code);
    out.csv = csv;
    Ok(out)
}

pub fn verify(ctx: &Ctx, suite: SuiteName, g: Option<String>, p: Option<u32>, sample: Option<usize>) -> Res {
    let c = &ctx.common;
    let default_ring = match suite {
        SuiteName::LemmaH | SuiteName::LengthIdentity | SuiteName::PowerFiltration => "p=5;exps=2,4",
        SuiteName::Disjoint => "p=5;exps=3,4",
        SuiteName::Divisibility => "p=5;exps=5,5",
        SuiteName::Gap => "p=5;exps=2,2",
    };
    let r = parse_ring(c.ring.as_deref().unwrap_or(default_ring))?;
    let params = SuiteParams {
        max_deg: c.max_degree,
        trials: c.trials,
        seed: c.seed,
        budget: c.budget,
    };
    let last = Some(r.c() - 1);
    let report: SuiteReport = match suite {
        SuiteName::LemmaH => suites::suite_lemma_h(&r, &form_arg(&r, g.as_deref(), last)?, params)?,
        SuiteName::Disjoint => suites::suite_disjoint(&r, params)?,
        SuiteName::LengthIdentity => {
            suites::suite_length_identity(&r, &form_arg(&r, g.as_deref(), last)?, sample.unwrap_or(100), params)?
        }
        SuiteName::PowerFiltration => {
            suites::suite_power_filtration(&r, &form_arg(&r, g.as_deref(), last)?, sample.unwrap_or(8), params)?
        }
        SuiteName::Divisibility => {
            let d = p.unwrap_or(r.field().p());
            suites::suite_bounded_betti_divisibility(&r, d, params)?
        }
        SuiteName::Gap => suites::suite_avoiding_gap(&r, &form_arg(&r, g.as_deref(), last)?, params)?,
    };
    let code = if report.passed() { 0 } else { 1 };
    let raw = report.to_json();
    let mut out = Output::new(serde_json::from_str(&raw).expect("report json"), report.to_text()).code(code);
    out.raw_json = Some(raw);
    Ok(out)
}

pub fn cache_gc(ctx: &Ctx) -> Res {
    let dir = &ctx.common.cache_dir;
    let rep = cache::gc(dir)?;
    let json = json!({
        "command": "cache-gc",
        "dir": dir.display().to_string(),
        "kept": rep.kept,
        "removed": rep.removed,
    });
    let text = format!("kept {} removed {}", rep.kept, rep.removed.len());
    Ok(Output::new(json, text))
}
