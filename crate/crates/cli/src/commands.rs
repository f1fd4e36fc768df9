//! Subcommand implementations: building codes, computing bases and
//! polytopes, and rendering everything as JSON.

use std::fs;
use std::path::PathBuf;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use codetoric::codes::{pair_code, path_code, star_code, to_abstract, NeuralCode};
use codetoric::exactgeom::face_lattice;
use codetoric::nestedsets::{
    conjecture_report, maximal_nested_sets, star_graph_building, vertex_count_formula,
};
use codetoric::statepoly::{state_polytope_alg35, state_polytope_fibers};
use codetoric::toric::{code_matrix, degree_census, graver, reduced_gb, ugb, WeightOrder};
use codetoric::Error;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cache::Cache;

/// Wall-clock guard for the conjecture pipeline, which folds Minkowski
/// sums of unknown size.
const CONJECTURE_TIMEOUT: Duration = Duration::from_secs(120);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Star,
    Pair,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Alg35,
    Fibers,
    Both,
}

impl Method {
    fn tag(self) -> &'static str {
        match self {
            Method::Alg35 => "alg35",
            Method::Fibers => "fibers",
            Method::Both => "both",
        }
    }
}

/// How a subcommand picks its input code: a named family plus size
/// parameters, or a file in either supported format.
#[derive(Args)]
pub struct CodeSel {
    /// Code family to build.
    #[arg(long = "code", value_enum)]
    pub family: Option<Family>,

    /// Family size, for the star and pair families.
    #[arg(long)]
    pub n: Option<usize>,

    /// Comma-separated path component lengths, for the path family.
    #[arg(long, value_delimiter = ',')]
    pub l: Option<Vec<u32>>,

    /// Read the code from a file instead: 0/1 words one per line, or
    /// JSON {"n": ..., "words": [...]}.
    #[arg(long, conflicts_with_all = ["family", "n", "l"])]
    pub file: Option<PathBuf>,
}

impl CodeSel {
    /// Builds the selected code. The second component is a stable tag
    /// naming the input, used in cache keys.
    pub fn resolve(&self) -> Result<(NeuralCode, String)> {
        if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading code file {}", path.display()))?;
            let code = parse_code_text(&text)?;
            let mut h = Sha256::new();
            h.update(text.as_bytes());
            let digest = h.finalize();
            let short: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
            return Ok((code, format!("file-{short}")));
        }
        match self.family {
            Some(Family::Star) => {
                let n = self.n.ok_or_else(|| anyhow!("--code star needs --n"))?;
                if self.l.is_some() {
                    bail!("--l only applies to --code path");
                }
                Ok((star_code(n)?, format!("star-{n}")))
            }
            Some(Family::Pair) => {
                let n = self.n.ok_or_else(|| anyhow!("--code pair needs --n"))?;
                if self.l.is_some() {
                    bail!("--l only applies to --code path");
                }
                Ok((pair_code(n)?, format!("pair-{n}")))
            }
            Some(Family::Path) => {
                let l = self.l.clone().ok_or_else(|| anyhow!("--code path needs --l"))?;
                if self.n.is_some() {
                    bail!("--n only applies to --code star and --code pair");
                }
                let tag: Vec<String> = l.iter().map(u32::to_string).collect();
                Ok((path_code(&l)?, format!("path-{}", tag.join(","))))
            }
            None => bail!("pass --code {{star|pair|path}} or --file"),
        }
    }
}

fn parse_code_text(text: &str) -> Result<NeuralCode> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        Ok(NeuralCode::from_lines(text)?)
    }
}

/// What a subcommand hands back for printing: JSON honoring --pretty,
/// or preformatted text emitted verbatim.
pub enum Rendered {
    Json(Value),
    Text(String),
}

pub fn cmd_code(sel: &CodeSel, as_json: bool) -> Result<Rendered> {
    let (code, _) = sel.resolve()?;
    if as_json {
        Ok(Rendered::Json(serde_json::to_value(&code)?))
    } else {
        Ok(Rendered::Text(code.to_lines()))
    }
}

pub fn cmd_gb(sel: &CodeSel, weight: Option<Vec<i64>>, degree_bound: u32) -> Result<Rendered> {
    let (code, _) = sel.resolve()?;
    let m = code_matrix(&code);
    let pool = graver(&m, degree_bound)?;
    let w = match weight {
        Some(w) => {
            if w.len() != m.ncols() {
                bail!("--weight needs {} entries, got {}", m.ncols(), w.len());
            }
            w
        }
        None => vec![1; m.ncols()],
    };
    let gb = reduced_gb(&pool.elements, &WeightOrder::from_ints(&w))?;
    Ok(Rendered::Json(json!({
        "arity": m.ncols(),
        "weight": w,
        "pool_certified": pool.complete_certified,
        "basis": serde_json::to_value(&gb)?,
    })))
}

pub fn cmd_graver(sel: &CodeSel, degree_bound: u32) -> Result<Rendered> {
    let (code, _) = sel.resolve()?;
    let m = code_matrix(&code);
    let g = graver(&m, degree_bound)?;
    let census = degree_census(&g.elements);
    Ok(Rendered::Json(json!({
        "arity": m.ncols(),
        "graver": serde_json::to_value(&g)?,
        "degree_census": census,
    })))
}

pub fn cmd_ugb(sel: &CodeSel, degree_bound: u32) -> Result<Rendered> {
    let (code, _) = sel.resolve()?;
    let m = code_matrix(&code);
    let r = ugb(&m, degree_bound)?;
    let census = r.degree_census();
    let mut obj = as_object(serde_json::to_value(&r)?)?;
    obj.insert("arity".into(), json!(m.ncols()));
    obj.insert("degree_census".into(), json!(census));
    Ok(Rendered::Json(Value::Object(obj)))
}

pub fn cmd_state_polytope(
    sel: &CodeSel,
    method: Method,
    degree_bound: u32,
    cache_dir: Option<PathBuf>,
) -> Result<Rendered> {
    let (code, tag) = sel.resolve()?;
    let key = format!("state-polytope/{tag}/{}/bound-{degree_bound}", method.tag());
    let cache = cache_dir.map(|d| Cache::open(&d)).transpose()?;
    if let Some(c) = &cache {
        if let Some(hit) = c.load(&key) {
            return Ok(Rendered::Json(hit));
        }
    }

    let m = code_matrix(&code);
    let u = ugb(&m, degree_bound)?;
    let mut obj = Map::new();
    obj.insert("code".into(), json!(tag));
    obj.insert("method".into(), json!(method.tag()));
    obj.insert("route".into(), serde_json::to_value(u.route)?);
    obj.insert("certified".into(), json!(u.certified));
    let mut alg_count = None;
    if matches!(method, Method::Alg35 | Method::Both) {
        let st = state_polytope_alg35(&m, &u.elements)?;
        alg_count = Some(st.polytope.vertex_count());
        obj.insert("alg35".into(), serde_json::to_value(&st)?);
    }
    if matches!(method, Method::Fibers | Method::Both) {
        let f = state_polytope_fibers(&m, &u.elements)?;
        if let Some(c) = alg_count {
            obj.insert("vertex_counts_equal".into(), json!(c == f.vertex_count()));
        }
        obj.insert("fibers".into(), serde_json::to_value(&f)?);
    }
    let payload = Value::Object(obj);
    if let Some(c) = &cache {
        c.store(&key, &payload)?;
    }
    Ok(Rendered::Json(payload))
}

pub fn cmd_pierced(sel: &CodeSel, k: usize) -> Result<Rendered> {
    let (code, _) = sel.resolve()?;
    let d = to_abstract(&code)?;
    let steps = d.is_inductively_pierced(k)?;
    Ok(Rendered::Json(json!({
        "k": k,
        "neurons": code.n_neurons(),
        "pierced": steps.is_some(),
        "steps": steps,
    })))
}

pub fn cmd_nested(n: usize) -> Result<Rendered> {
    if n > 8 {
        return Err(Error::GuardExceeded(format!(
            "nested-set enumeration is capped at n = 8; got {n}"
        ))
        .into());
    }
    let b = star_graph_building(n)?;
    let ms = maximal_nested_sets(&b)?;
    let formula = vertex_count_formula(n);
    Ok(Rendered::Json(json!({
        "n": n,
        "building": b.member_sets(),
        "count": ms.len(),
        "formula": formula,
        "matches": ms.len() as u64 == formula,
        "maximal_nested_sets": ms.iter().map(|s| s.member_sets()).collect::<Vec<_>>(),
    })))
}

pub fn cmd_conjecture(l: Vec<u32>, n: Option<usize>, degree_bound: u32) -> Result<Rendered> {
    let ell: Vec<u32> = match n {
        Some(0) => bail!("--n must be at least 1"),
        Some(k) if l.len() == 1 => {
            let mut v = vec![0u32; k];
            v[0] = l[0];
            v
        }
        Some(k) if k == l.len() => l,
        Some(k) => bail!("--n {k} conflicts with --l of {} components", l.len()),
        None => l,
    };
    if ell.is_empty() {
        bail!("--l needs at least one component length");
    }
    let total: u32 = ell.iter().sum();
    if total > 6 || ell.len() > 4 {
        return Err(Error::GuardExceeded(format!(
            "conjecture runs are capped at total length 6 and 4 components; got total {total} over {} components",
            ell.len()
        ))
        .into());
    }

    // The hull fold's cost is hard to bound a priori, so the pipeline
    // runs on a worker with a wall-clock cutoff. On timeout the worker
    // is abandoned; the process exits right after.
    let (tx, rx) = mpsc::channel();
    let ell_for_worker = ell.clone();
    thread::spawn(move || {
        let _ = tx.send(conjecture_pipeline(&ell_for_worker, degree_bound));
    });
    match rx.recv_timeout(CONJECTURE_TIMEOUT) {
        Ok(res) => res.map(Rendered::Json),
        Err(_) => Err(Error::GuardExceeded(format!(
            "conjecture run exceeded the {} s wall-clock guard",
            CONJECTURE_TIMEOUT.as_secs()
        ))
        .into()),
    }
}

fn conjecture_pipeline(ell: &[u32], degree_bound: u32) -> Result<Value> {
    let started = Instant::now();
    let code = path_code(ell)?;
    let m = code_matrix(&code);
    let u = ugb(&m, degree_bound)?;
    let st = state_polytope_fibers(&m, &u.elements)?;
    let fl = face_lattice(&st)?;
    let report = conjecture_report(ell.len(), &fl.f_vector);
    Ok(json!({
        "l": ell,
        "n": ell.len(),
        "variables": m.ncols(),
        "route": serde_json::to_value(u.route)?,
        "certified": u.certified,
        "f_vector": fl.f_vector,
        "report": report,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    }))
}

fn as_object(v: Value) -> Result<Map<String, Value>> {
    match v {
        Value::Object(o) => Ok(o),
        _ => bail!("expected a JSON object"),
    }
}
