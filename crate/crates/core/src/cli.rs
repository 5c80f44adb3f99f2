//! The `kirbylab` command line: argument grammar, algebra/z/link specs, and report output.
//!
//! [`run`] never touches the process; the binary forwards its outcome to stdout, stderr and
//! the exit status. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use crate::evaluator::{self, tau_link, tau_manifold_unchecked};
use crate::families::{cyclic_ribbon, divisors, hn_zd, radford_hn, CyclicRibbon, HnSpec};
use crate::field::{parse_rational, Fe, Field, FieldDescriptor};
use crate::fusion::{self, fusion_from_modules, FusionData};
use crate::hopf::{AxiomReport, Elem, HopfAlgebra, HopfData};
use crate::io::AlgebraFile;
use crate::kirby::{compute_subspaces, Kirby};
use crate::links::{chain, hopf_link, trefoil, unknot, LinkDiagram};
use crate::ribbon::{verify_quasitriangular, verify_ribbon, Rep, RibbonHopf};

#[derive(Parser, Debug)]
#[command(name = "kirbylab", version, about = "Kirby elements and 3-manifold invariants from ribbon Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check the Hopf, quasitriangular and ribbon axioms.
    Verify {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// Integrals, distinguished grouplikes and the special grouplike element.
    Integrals {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// Kirby membership of a candidate (`check`) or the subspaces L, Z, N, V2 (`subspaces`).
    Kirby {
        #[arg(value_enum)]
        action: KirbyAction,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        z: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The 3-manifold invariant of surgery on a framed link.
    Invariant {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        link: String,
        /// Evaluate even when z is not a normalized Kirby element.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reshetikhin-Turaev-type invariant from the simple modules of a cyclic algebra.
    Rt {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        link: String,
        #[command(flatten)]
        common: Common,
    },
    /// Traces obtained from T-fixed elements of L(H).
    Traces {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// Fusion data: axioms, closed label subsets, necessary conditions and normalizations.
    Fusion {
        /// "pointed:<N>" or a fusion JSON file; omit when --algebra is given.
        source: Option<String>,
        /// A cyclic algebra whose characters supply the fusion data.
        #[arg(long)]
        algebra: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate every (algebra, z, link) row of a manifest.
    Batch {
        manifest: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KirbyAction {
    Check,
    Subspaces,
}

/// What [`run`] produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn domain(m: impl ToString) -> CliError {
    CliError::Domain(m.to_string())
}

/// One report line: a scalar keeps its field so the table can add an advisory decimal.
enum Entry {
    Scalar(Fe),
    Checks(AxiomReport),
    Plain(Value),
}

#[derive(Default)]
struct Report {
    entries: Vec<(String, Entry)>,
}

impl Report {
    fn put(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), Entry::Plain(v.into())));
        self
    }

    fn scalar(&mut self, key: &str, v: &Fe) -> &mut Self {
        self.entries.push((key.to_string(), Entry::Scalar(v.clone())));
        self
    }

    fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (k, e) in &self.entries {
            let v = match e {
                Entry::Scalar(x) => x.to_json(),
                Entry::Checks(a) => a.to_json(),
                Entry::Plain(v) => v.clone(),
            };
            m.insert(k.clone(), v);
        }
        Value::Object(m)
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        for (k, e) in &self.entries {
            let v = match e {
                Entry::Scalar(x) => scalar_text(x),
                Entry::Checks(a) if a.all_pass() => format!("pass ({} checks)", a.checks.len()),
                Entry::Checks(a) => format!("FAIL ({})", a.failed().join("; ")),
                Entry::Plain(Value::String(s)) => s.clone(),
                Entry::Plain(v) => v.to_string(),
            };
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.to_json()).expect("json")),
            Format::Table => self.to_table(),
        }
    }
}

fn scalar_text(x: &Fe) -> String {
    if x.as_rational().is_some() {
        return x.to_string();
    }
    // six decimals; tiny values print as 0 rather than -0
    let tidy = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
    let (re, im) = x.approx();
    let (re, im) = (tidy(re), tidy(im));
    format!("{x}  [approx, advisory: {re:.6}{im:+.6}i]")
}

fn report_checks(r: &mut Report, key: &str, a: &AxiomReport) {
    r.entries.push((key.to_string(), Entry::Checks(a.clone())));
}

// ---------------------------------------------------------------- specs

/// A loaded algebra together with what its URI says about it.
enum Loaded {
    Hn(HnSpec, RibbonHopf),
    Cyclic(CyclicRibbon),
    File(HopfAlgebra, Option<RibbonHopf>),
}

impl Loaded {
    fn hopf(&self) -> &HopfAlgebra {
        match self {
            Loaded::Hn(_, rh) => &rh.hopf,
            Loaded::Cyclic(c) => &c.ribbon.hopf,
            Loaded::File(h, _) => h,
        }
    }

    fn ribbon(&self) -> Result<&RibbonHopf, CliError> {
        match self {
            Loaded::Hn(_, rh) => Ok(rh),
            Loaded::Cyclic(c) => Ok(&c.ribbon),
            Loaded::File(_, Some(rh)) => Ok(rh),
            Loaded::File(_, None) => Err(domain("the algebra file has no ribbon structure (R, theta)")),
        }
    }
}

enum AlgebraSpec {
    Hn(HnSpec),
    Cyclic { order: u64, q_exp: u64 },
    File(PathBuf),
}

fn parse_algebra_spec(uri: &str) -> Result<AlgebraSpec, CliError> {
    let bad = |m: &str| usage(format!("--algebra {uri}: {m}"));
    let mut parts = uri.split(':');
    let head = parts.next().unwrap_or("");
    let int = |s: &str, what: &str| s.trim().parse::<u64>().map_err(|_| bad(&format!("{what} must be a non-negative integer")));
    match head {
        "sweedler" if uri == "sweedler" => Ok(AlgebraSpec::Hn(HnSpec::new(1).map_err(domain)?)),
        "hn" => {
            let n = int(parts.next().ok_or_else(|| bad("expected hn:<n>"))?, "n")?;
            let mut spec = HnSpec::new(n).map_err(domain)?;
            for opt in parts {
                let (k, v) = opt.split_once('=').ok_or_else(|| bad("options are key=value"))?;
                spec = match k {
                    "s" => spec.with_s(int(v, "s")?),
                    "beta" => spec.with_beta(parse_rational(v).map_err(|_| bad("beta must be rational"))?),
                    "p" => {
                        let f = Field::new(FieldDescriptor::Prime { p: int(v, "p")? }).map_err(domain)?;
                        spec.with_field(f)
                    }
                    _ => return Err(bad(&format!("unknown option {k}"))),
                };
            }
            Ok(AlgebraSpec::Hn(spec))
        }
        "cyclic" => {
            let order = int(parts.next().ok_or_else(|| bad("expected cyclic:<N>"))?, "N")?;
            let mut q_exp = 1;
            for opt in parts {
                match opt.split_once('=') {
                    Some(("q", v)) => q_exp = int(v, "q")?,
                    _ => return Err(bad(&format!("unknown option {opt}"))),
                }
            }
            Ok(AlgebraSpec::Cyclic { order, q_exp })
        }
        _ => {
            let path = uri.strip_prefix('@').unwrap_or(uri);
            if Path::new(path).exists() {
                Ok(AlgebraSpec::File(PathBuf::from(path)))
            } else {
                Err(bad("expected hn:<n>[:s=<s>][:beta=<b>], cyclic:<N>[:q=<k>], sweedler, or an algebra file"))
            }
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn read_algebra_file(path: &Path) -> Result<AlgebraFile, CliError> {
    let v: Value = serde_json::from_str(&read_file(path)?).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    AlgebraFile::from_json(&v).map_err(domain)
}

fn load_algebra(uri: &str) -> Result<Loaded, CliError> {
    match parse_algebra_spec(uri)? {
        AlgebraSpec::Hn(spec) => {
            let rh = radford_hn(&spec).map_err(domain)?;
            Ok(Loaded::Hn(spec, rh))
        }
        AlgebraSpec::Cyclic { order, q_exp } => Ok(Loaded::Cyclic(cyclic_ribbon(order, q_exp).map_err(domain)?)),
        AlgebraSpec::File(p) => {
            let (h, rh) = read_algebra_file(&p)?.build().map_err(domain)?;
            Ok(Loaded::File(h, rh))
        }
    }
}

/// Elements accepted by `--z`.
fn parse_z(alg: &Loaded, spec: &str) -> Result<Elem, CliError> {
    let h = alg.hopf();
    let bad = |m: &str| usage(format!("--z {spec}: {m}"));
    if let Some(d) = spec.strip_prefix("zd:") {
        let d: u64 = d.parse().map_err(|_| bad("expected zd:<d>"))?;
        return match alg {
            Loaded::Hn(s, _) => hn_zd(s, d).map_err(domain),
            _ => Err(domain("zd:<d> needs an hn algebra")),
        };
    }
    if let Some(j) = spec.strip_prefix("module:") {
        let j: usize = j.parse().map_err(|_| bad("expected module:<j>"))?;
        let Loaded::Cyclic(c) = alg else { return Err(domain("module:<j> needs a cyclic algebra")) };
        let chars = c.characters();
        let rho = chars.get(j).ok_or_else(|| domain(format!("no character {j}")))?;
        return Kirby::new(&c.ribbon).z_module(rho).map_err(domain);
    }
    if let Some(text) = spec.strip_prefix("coords:") {
        let v: Value = serde_json::from_str(text).map_err(|_| bad("coords:<json array>"))?;
        return coords_elem(h, &v).map_err(|m| bad(&m));
    }
    if let Some(path) = spec.strip_prefix('@') {
        let v: Value = serde_json::from_str(&read_file(Path::new(path))?).map_err(|e| domain(format!("{path}: {e}")))?;
        return coords_elem(h, &v).map_err(domain);
    }
    match spec {
        "unit" | "1" => Ok(h.one()),
        "s-integral" => Ok(h.antipode(h.left_integral())),
        "integral" => Ok(h.left_integral().clone()),
        "premodular" => {
            let Loaded::Cyclic(c) = alg else { return Err(domain("premodular needs a cyclic algebra")) };
            Kirby::new(&c.ribbon).z_premodular(&c.characters()).map_err(domain)
        }
        _ => Err(bad("expected zd:<d>, unit, s-integral, integral, module:<j>, premodular, coords:[...] or @file.json")),
    }
}

fn coords_elem(h: &HopfAlgebra, v: &Value) -> Result<Elem, String> {
    let a = v.as_array().ok_or("expected a coordinate array")?;
    if a.len() != h.dim() {
        return Err(format!("expected {} coordinates, got {}", h.dim(), a.len()));
    }
    a.iter().map(|c| h.field().parse_json(c).map_err(|e| e.to_string())).collect()
}

fn parse_framing(s: &str) -> Option<i64> {
    s.trim().strip_prefix('+').unwrap_or(s.trim()).parse().ok()
}

/// Links accepted by `--link`.
fn parse_link(spec: &str) -> Result<LinkDiagram, CliError> {
    let bad = |m: &str| usage(format!("--link {spec}: {m}"));
    if let Some(path) = spec.strip_prefix('@') {
        return LinkDiagram::parse(&read_file(Path::new(path))?).map_err(domain);
    }
    let (kind, args) = spec.split_once(':').ok_or_else(|| bad("expected <kind>:<framings> or @file"))?;
    let framings: Vec<i64> =
        args.split(',').map(parse_framing).collect::<Option<_>>().ok_or_else(|| bad("framings must be integers"))?;
    match (kind, framings.as_slice()) {
        ("unknot", [f]) => Ok(unknot(*f)),
        ("hopf", [a, b]) => Ok(hopf_link(*a, *b)),
        ("trefoil", [s]) if s.abs() == 1 => Ok(trefoil(*s as i8)),
        ("chain", fs) if !fs.is_empty() => Ok(chain(fs.len(), fs)),
        _ => Err(bad("expected unknot:<f>, hopf:<f1>,<f2>, trefoil:<+1|-1>, chain:<f1>,...,<fk> or @file")),
    }
}

// ---------------------------------------------------------------- verbs

fn verify(uri: &str) -> Result<(Report, bool), CliError> {
    let mut r = Report::default();
    r.put("algebra", uri);
    let (data, ribbon_parts): (HopfData, _) = match parse_algebra_spec(uri)? {
        AlgebraSpec::File(p) => {
            let f = read_algebra_file(&p)?;
            (f.data, f.r.zip(f.theta))
        }
        _ => {
            let rh = load_algebra(uri)?.ribbon()?.clone();
            (rh.hopf.data.clone(), Some((rh.r, rh.theta)))
        }
    };
    r.put("dim", data.dim);
    let hopf_report = data.verify().map_err(domain)?;
    report_checks(&mut r, "hopf", &hopf_report);
    let mut ok = hopf_report.all_pass();
    if ok {
        let h = HopfAlgebra::new(data).map_err(domain)?;
        r.put("unimodular", h.is_unimodular());
        if let Some((rm, theta)) = ribbon_parts {
            let qt = verify_quasitriangular(&h, &rm).map_err(domain)?;
            report_checks(&mut r, "quasitriangular", &qt);
            ok &= qt.all_pass();
            if qt.all_pass() {
                let rb = verify_ribbon(&h, &rm, &theta);
                report_checks(&mut r, "ribbon", &rb);
                ok &= rb.all_pass();
            }
        }
    }
    r.put("all checks pass", ok);
    Ok((r, ok))
}

fn integrals(uri: &str) -> Result<Report, CliError> {
    let alg = load_algebra(uri)?;
    let h = alg.hopf();
    let mut r = Report::default();
    r.put("algebra", uri);
    r.put("dim", h.dim());
    r.put("basis", h.basis_names().join(" "));
    r.put("left integral", h.format_elem(h.left_integral()));
    r.put("right cointegral", format_form(h, h.right_cointegral()));
    r.scalar("lambda(Lambda)", &h.lambda(h.left_integral()));
    r.scalar("lambda(S(Lambda))", &h.lambda(&h.antipode(h.left_integral())));
    r.put("g", h.format_elem(h.distinguished_grouplike()));
    r.put("nu", format_form(h, h.distinguished_character()));
    r.put("unimodular", h.is_unimodular());
    if let Ok(rh) = alg.ribbon() {
        r.put("G", h.format_elem(&rh.g_special));
        r.put("h_nu", h.format_elem(&rh.h_nu));
        r.put("theta", h.format_elem(&rh.theta));
    }
    Ok(r)
}

/// A linear form as "basis -> value" pairs on the basis elements where it is nonzero.
fn format_form(h: &HopfAlgebra, f: &[Fe]) -> String {
    let parts: Vec<String> = f
        .iter()
        .zip(h.basis_names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| format!("{n} -> {c}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

fn elem_list(h: &HopfAlgebra, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(h.format_elem(e))).collect())
}

fn kirby_check(uri: &str, z: Option<&str>) -> Result<Report, CliError> {
    let z = z.ok_or_else(|| usage("kirby check requires --z"))?;
    let alg = load_algebra(uri)?;
    let rh = alg.ribbon()?;
    let k = Kirby::new(rh);
    let elem = parse_z(&alg, z)?;
    let c = k.is_kirby(&elem);
    let mut r = Report::default();
    r.put("algebra", uri).put("z", z).put("element", rh.hopf.format_elem(&elem));
    r.put("in L(H)", c.in_l).put("condition (a)", c.condition_a).put("condition (b)", c.condition_b);
    r.scalar("theta+", &c.theta_plus).scalar("theta-", &c.theta_minus);
    r.put("in I(H)", c.is_kirby()).put("in I(H)^norm", c.is_normalized());
    Ok(r)
}

fn kirby_subspaces(uri: &str) -> Result<Report, CliError> {
    let alg = load_algebra(uri)?;
    let rh = alg.ribbon()?;
    let h = &rh.hopf;
    let s = compute_subspaces(rh);
    let mut r = Report::default();
    r.put("algebra", uri);
    r.put("dim L", s.l_basis.len()).put("dim Z", s.z_basis.len()).put("dim N", s.n_basis.len());
    r.put("dim V2", s.v2_basis.len());
    r.put("L", elem_list(h, &s.l_basis)).put("Z", elem_list(h, &s.z_basis)).put("N", elem_list(h, &s.n_basis));
    if let Loaded::Hn(spec, _) = &alg {
        r.put("families zd", Value::Array(divisors(spec.n).into_iter().map(|d| format!("zd:{d}").into()).collect()));
    }
    Ok(r)
}

fn invariant_report(uri: &str, z: &str, link: &str, force: bool) -> Result<Report, CliError> {
    let alg = load_algebra(uri)?;
    let rh = alg.ribbon()?;
    let elem = parse_z(&alg, z)?;
    let l = parse_link(link)?;
    let k = Kirby::new(rh);
    let c = k.is_kirby(&elem);
    if !c.is_normalized() && !force {
        return Err(domain(format!("z = {z} is not in I(H)^norm; pass --force to evaluate anyway")));
    }
    let ld = l.linking_data();
    let mut r = Report::default();
    r.put("algebra", uri).put("z", z).put("link", link);
    r.put("components", l.num_components()).put("crossings", l.num_crossings());
    r.put("linking matrix", serde_json::json!(ld.matrix)).put("b_minus", ld.b_minus);
    r.scalar("theta+", &c.theta_plus).scalar("theta-", &c.theta_minus);
    if c.is_normalized() {
        r.scalar("tau(link)", &tau_link(rh, &l, &elem).map_err(domain)?);
        r.scalar("invariant", &tau_manifold_unchecked(rh, &l, &elem).map_err(domain)?);
    } else {
        r.put("status", "not an invariant");
        match tau_link(rh, &l, &elem) {
            Ok(v) => r.scalar("tau(link)", &v),
            Err(e) => r.put("tau(link)", e.to_string()),
        };
        match tau_manifold_unchecked(rh, &l, &elem) {
            Ok(v) => r.scalar("normalized value (not an invariant)", &v),
            Err(e) => r.put("normalized value (not an invariant)", e.to_string()),
        };
    }
    Ok(r)
}

fn simple_modules(alg: &Loaded) -> Result<(&RibbonHopf, Vec<Rep>), CliError> {
    match alg {
        Loaded::Cyclic(c) => Ok((&c.ribbon, c.characters())),
        _ => Err(domain("no list of simple modules is known for this algebra (use cyclic:<N>)")),
    }
}

fn rt(uri: &str, link: &str) -> Result<Report, CliError> {
    let alg = load_algebra(uri)?;
    let (rh, mods) = simple_modules(&alg)?;
    let l = parse_link(link)?;
    let (dp, dm) = evaluator::delta_pm(rh, &mods).map_err(domain)?;
    let mut r = Report::default();
    r.put("algebra", uri).put("link", link).put("modules", mods.len());
    r.scalar("Delta+", &dp).scalar("Delta-", &dm);
    r.scalar("rt", &evaluator::rt_invariant(rh, &mods, &l).map_err(domain)?);
    Ok(r)
}

fn traces(uri: &str) -> Result<Report, CliError> {
    let alg = load_algebra(uri)?;
    let rh = alg.ribbon()?;
    let h = &rh.hopf;
    let k = Kirby::new(rh);
    let fixed = k.t_fixed_basis();
    let forms = k.traces_basis().map_err(domain)?;
    let rank = crate::linalg::rank(h.field(), h.dim(), forms.iter().map(|t| crate::linalg::sparse_from_dense(t)));
    let mut r = Report::default();
    r.put("algebra", uri).put("dim T-fixed L", fixed.len());
    r.put("T-fixed basis", elem_list(h, &fixed)).put("traces", Value::Array(forms.iter().map(|t| format_form(h, t).into()).collect()));
    r.put("injective", rank == fixed.len());
    Ok(r)
}

fn fusion_report(source: Option<&str>, algebra: Option<&str>) -> Result<Report, CliError> {
    let data = match (source, algebra) {
        (Some(_), Some(_)) => return Err(usage("fusion takes either a source or --algebra, not both")),
        (None, None) => return Err(usage("fusion needs a source (pointed:<N> or a file) or --algebra")),
        (None, Some(uri)) => {
            let alg = load_algebra(uri)?;
            let (rh, mods) = simple_modules(&alg)?;
            let labels = (0..mods.len()).map(|j| format!("chi{j}")).collect();
            fusion_from_modules(rh, &mods, labels).map_err(domain)?
        }
        (Some(src), None) => {
            if let Some(n) = src.strip_prefix("pointed:") {
                let n: usize = n.parse().map_err(|_| usage(format!("{src}: expected pointed:<N>")))?;
                if n == 0 {
                    return Err(usage("pointed:<N> needs N >= 1"));
                }
                fusion::pointed_cyclic_trivial(n)
            } else {
                let path = src.strip_prefix('@').unwrap_or(src);
                let v: Value = serde_json::from_str(&read_file(Path::new(path))?).map_err(|e| domain(format!("{path}: {e}")))?;
                FusionData::from_json(&v).map_err(domain)?
            }
        }
    };
    let mut r = Report::default();
    r.put("labels", data.labels.join(" "));
    let axioms = fusion::check_fusion(&data);
    report_checks(&mut r, "axioms", &axioms);
    if !axioms.all_pass() {
        return Err(domain(format!("fusion axiom failed: {}", axioms.failed().join(", "))));
    }
    let subsets = fusion::closed_subsets(&data).map_err(domain)?;
    let mut rows = Vec::new();
    for e in &subsets {
        let nec = fusion::kirby_necessary(&data, &data.subset_sum(e));
        let d = fusion::delta_pm(&data, e).map_err(domain)?;
        rows.push(serde_json::json!({
            "subset": e.iter().map(|&l| data.labels[l].clone()).collect::<Vec<_>>(),
            "kirby": nec.label(),
            "delta_plus": d.plus.to_json(),
            "delta_minus": d.minus.to_json(),
            "delta_nonzero": d.nonzero,
        }));
    }
    r.put("closed subsets", Value::Array(rows));
    Ok(r)
}

/// One manifest row.
#[derive(Debug, Clone, serde::Deserialize)]
struct Row {
    algebra: String,
    z: String,
    link: String,
    #[serde(default)]
    force: bool,
}

/// JSON array of rows, or text with one `algebra z link` triple per line (`#` comments).
fn parse_manifest(text: &str) -> Result<Vec<Result<Row, String>>, CliError> {
    if text.trim_start().starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(text).map_err(|e| domain(format!("manifest: {e}")))?;
        return Ok(items.into_iter().map(|v| serde_json::from_value(v).map_err(|e| format!("malformed row: {e}"))).collect());
    }
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            match parts.as_slice() {
                [a, z, link] => Ok(Row { algebra: a.to_string(), z: z.to_string(), link: link.to_string(), force: false }),
                _ => Err(format!("malformed row: {l}")),
            }
        })
        .collect())
}

fn batch(path: &Path, format: Format) -> Result<(String, bool), CliError> {
    let rows = parse_manifest(&read_file(path)?)?;
    let results: Vec<Result<(Row, Fe), String>> = rows
        .par_iter()
        .map(|row| {
            let row = row.clone()?;
            let alg = load_algebra(&row.algebra).map_err(cli_message)?;
            let rh = alg.ribbon().map_err(cli_message)?;
            let z = parse_z(&alg, &row.z).map_err(cli_message)?;
            let l = parse_link(&row.link).map_err(cli_message)?;
            if !row.force && !Kirby::new(rh).is_kirby(&z).is_normalized() {
                return Err(format!("z = {} is not in I(H)^norm", row.z));
            }
            let v = tau_manifold_unchecked(rh, &l, &z).map_err(|e| e.to_string())?;
            Ok((row, v))
        })
        .collect();
    let all_ok = results.iter().all(Result::is_ok);
    let out = match format {
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .enumerate()
                .map(|(i, r)| match r {
                    Ok((row, v)) => serde_json::json!({"row": i + 1, "algebra": row.algebra, "z": row.z, "link": row.link, "value": v.to_json()}),
                    Err(e) => serde_json::json!({"row": i + 1, "error": e}),
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&serde_json::json!({"rows": rows})).expect("json"))
        }
        Format::Table => {
            let mut s = String::from("row\talgebra\tz\tlink\tvalue\n");
            for (i, r) in results.iter().enumerate() {
                match r {
                    Ok((row, v)) => s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", i + 1, row.algebra, row.z, row.link, v)),
                    Err(e) => s.push_str(&format!("{}\terror: {e}\n", i + 1)),
                }
            }
            s
        }
    };
    Ok((out, all_ok))
}

fn cli_message(e: CliError) -> String {
    match e {
        CliError::Usage(m) | CliError::Domain(m) => m,
    }
}

fn emit(common: &Common, text: String) -> Result<String, CliError> {
    match &common.out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| domain(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn dispatch(verb: Verb) -> Result<(String, bool), CliError> {
    let single = |common: &Common, r: Result<Report, CliError>| -> Result<(String, bool), CliError> {
        Ok((emit(common, r?.render(common.format))?, true))
    };
    match verb {
        Verb::Verify { algebra, common } => {
            let (r, ok) = verify(&algebra)?;
            Ok((emit(&common, r.render(common.format))?, ok))
        }
        Verb::Integrals { algebra, common } => single(&common, integrals(&algebra)),
        Verb::Kirby { action: KirbyAction::Check, algebra, z, common } => single(&common, kirby_check(&algebra, z.as_deref())),
        Verb::Kirby { action: KirbyAction::Subspaces, algebra, z, common } => {
            if z.is_some() {
                return Err(usage("--z is not used by kirby subspaces"));
            }
            single(&common, kirby_subspaces(&algebra))
        }
        Verb::Invariant { algebra, z, link, force, common } => single(&common, invariant_report(&algebra, &z, &link, force)),
        Verb::Rt { algebra, link, common } => single(&common, rt(&algebra, &link)),
        Verb::Traces { algebra, common } => single(&common, traces(&algebra)),
        Verb::Fusion { source, algebra, common } => single(&common, fusion_report(source.as_deref(), algebra.as_deref())),
        Verb::Batch { manifest, common } => {
            let (text, ok) = batch(&manifest, common.format)?;
            Ok((emit(&common, text)?, ok))
        }
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.verb) {
        Ok((stdout, true)) => Outcome { code: 0, stdout, stderr: String::new() },
        Ok((stdout, false)) => Outcome { code: 1, stdout, stderr: String::new() },
        Err(CliError::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("usage error: {m}\n") },
        Err(CliError::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}
