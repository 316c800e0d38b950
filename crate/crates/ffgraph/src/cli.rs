//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ffgraph_core::crit::{self, first_order_boundary, Sweep};
use ffgraph_core::family::EvalPath;
use ffgraph_core::{ent, Boundary, ModelFamily, Range, SignConvention};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{AppError, AppResult};
use crate::format::{self, Format};
use crate::scan::{self, Axis, Flag, HMethod, Quantity, ScanRow, ScanSpec, Table};
use crate::suite::{self, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "ffgraph", version, about = "Ground-state fidelity and criticality of fermions on variable-range graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-particle energies at one point.
    Spectrum(Opts),
    /// Grid of F_min, h_crit, entanglement and spectral quantities.
    Map(Opts),
    /// Zeros of det Z along a one-dimensional sweep.
    Boundary(Opts),
    /// h_crit curves and peak positions for a list of sizes.
    Scaling(Opts),
    /// Rescaled curves ((mu - 1) L, h_crit / L^2).
    Collapse(Opts),
    /// Randomized comparison against exact diagonalization.
    OracleCheck(Opts),
    /// Large-L closed forms.
    Tdl(Opts),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Map(_) => "map",
            Command::Boundary(_) => "boundary",
            Command::Scaling(_) => "scaling",
            Command::Collapse(_) => "collapse",
            Command::OracleCheck(_) => "oracle-check",
            Command::Tdl(_) => "tdl",
        }
    }

    fn opts(&self) -> &Opts {
        match self {
            Command::Spectrum(o)
            | Command::Map(o)
            | Command::Boundary(o)
            | Command::Scaling(o)
            | Command::Collapse(o)
            | Command::OracleCheck(o)
            | Command::Tdl(o) => o,
        }
    }
}

/// Flags shared by every subcommand. A JSON config file may set any of them
/// under the same key; flags win over the file.
#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// JSON file with default values for any of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Named parameter set: fidelity-map, h-map, cyclic-scaling, free-scaling.
    #[arg(long)]
    pub preset: Option<String>,
    /// System size(s): `n`, `n1,n2,...` or `a:b:step`.
    #[arg(long = "L")]
    pub l: Option<String>,
    /// Coupling range: an integer or `full`.
    #[arg(long)]
    pub range: Option<String>,
    /// `cyclic` or `free`.
    #[arg(long)]
    pub boundary: Option<String>,
    /// `s3` or `s4`.
    #[arg(long)]
    pub sign: Option<String>,
    /// `a:b:n` or a single value.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// `a:b:n` or a single value.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub dmu: Option<String>,
    #[arg(long)]
    pub dgamma: Option<String>,
    /// Finite-difference step for h_crit.
    #[arg(long = "fd-step")]
    pub fd_step: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `csv`, `jsonl` or `gnuplot`.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub threads: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Comma-separated subset of F_min,h_crit,log10_h,detZ,gap,E0,n,Si,parity.
    #[arg(long)]
    pub quantities: Option<String>,
    /// `analytic` or `fd`.
    #[arg(long = "h-method")]
    pub h_method: Option<String>,
    /// `auto`, `dense` or `circulant`.
    #[arg(long)]
    pub path: Option<String>,
    /// Bracketing grid size for peak searches.
    #[arg(long)]
    pub grid: Option<String>,
    /// Rescaled abscissae `(mu - 1) L` as `a:b:n`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// CSV table to read (collapse).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Random pairs per configuration (oracle-check).
    #[arg(long)]
    pub samples: Option<String>,
    /// Keep h_crit next to the line mu = 1 - L.
    #[arg(long = "include-trivial-line")]
    pub include_trivial_line: bool,
}

const KEYS: &[&str] = &[
    "preset", "L", "range", "boundary", "sign", "mu", "gamma", "dmu", "dgamma", "fd-step", "out", "format",
    "threads", "seed", "quantities", "h-method", "path", "grid", "x", "input", "samples", "include-trivial-line",
];

/// Flag values merged over config-file values over preset values.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn resolve(opts: &Opts) -> AppResult<Self> {
        let mut values = BTreeMap::new();
        if let Some(path) = &opts.config {
            let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| AppError::Parameter(format!("{}: {e}", path.display())))?;
            let obj = v
                .as_object()
                .ok_or_else(|| AppError::Parameter(format!("{}: expected a JSON object", path.display())))?;
            for (k, v) in obj {
                if !KEYS.contains(&k.as_str()) {
                    return Err(AppError::Parameter(format!("{}: unknown key '{k}'", path.display())));
                }
                let s = match v {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    Value::Bool(b) => b.to_string(),
                    Value::Array(a) => a.iter().map(|x| x.to_string().trim_matches('"').to_string()).collect::<Vec<_>>().join(","),
                    _ => return Err(AppError::Parameter(format!("{}: bad value for '{k}'", path.display()))),
                };
                values.insert(k.clone(), s);
            }
        }
        let flags: [(&str, Option<String>); 21] = [
            ("preset", opts.preset.clone()),
            ("L", opts.l.clone()),
            ("range", opts.range.clone()),
            ("boundary", opts.boundary.clone()),
            ("sign", opts.sign.clone()),
            ("mu", opts.mu.clone()),
            ("gamma", opts.gamma.clone()),
            ("dmu", opts.dmu.clone()),
            ("dgamma", opts.dgamma.clone()),
            ("fd-step", opts.fd_step.clone()),
            ("out", opts.out.as_ref().map(|p| p.display().to_string())),
            ("format", opts.format.clone()),
            ("threads", opts.threads.clone()),
            ("seed", opts.seed.clone()),
            ("quantities", opts.quantities.clone()),
            ("h-method", opts.h_method.clone()),
            ("path", opts.path.clone()),
            ("grid", opts.grid.clone()),
            ("x", opts.x.clone()),
            ("input", opts.input.as_ref().map(|p| p.display().to_string())),
            ("samples", opts.samples.clone()),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                values.insert(k.to_string(), v);
            }
        }
        if opts.include_trivial_line {
            values.insert("include-trivial-line".into(), "true".into());
        }
        let mut s = Settings { values };
        if let Some(p) = s.values.get("preset").cloned() {
            for (k, v) in preset(&p)? {
                s.values.entry(k.to_string()).or_insert_with(|| v.to_string());
            }
        }
        Ok(s)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> AppResult<Option<T>> {
        self.get(key)
            .map(|s| s.trim().parse::<T>().map_err(|_| AppError::Parameter(format!("--{key}: cannot parse '{s}'"))))
            .transpose()
    }

    fn or<T: std::str::FromStr>(&self, key: &str, default: T) -> AppResult<T> {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    fn require(&self, key: &str) -> AppResult<&str> {
        self.get(key).ok_or_else(|| AppError::Parameter(format!("--{key} is required")))
    }

    pub fn sizes(&self) -> AppResult<Vec<usize>> {
        parse_sizes(self.require("L")?)
    }

    pub fn boundary(&self) -> AppResult<Boundary> {
        match self.get("boundary").unwrap_or("cyclic") {
            "cyclic" => Ok(Boundary::Cyclic),
            "free" => Ok(Boundary::FreeEnds),
            s => Err(AppError::Parameter(format!("--boundary: expected cyclic or free, got '{s}'"))),
        }
    }

    pub fn sign(&self) -> AppResult<SignConvention> {
        match self.get("sign").unwrap_or("s4") {
            "s3" => Ok(SignConvention::Unflipped),
            "s4" => Ok(SignConvention::Flipped),
            s => Err(AppError::Parameter(format!("--sign: expected s3 or s4, got '{s}'"))),
        }
    }

    pub fn range(&self) -> AppResult<Range> {
        match self.get("range").unwrap_or("full") {
            "full" => Ok(Range::Full),
            s => s
                .parse()
                .map(Range::Fixed)
                .map_err(|_| AppError::Parameter(format!("--range: expected an integer or full, got '{s}'"))),
        }
    }

    pub fn axis(&self, key: &str) -> AppResult<Axis> {
        self.require(key)?.parse()
    }

    pub fn format(&self) -> AppResult<Format> {
        self.get("format").unwrap_or("csv").parse()
    }

    pub fn out(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }

    pub fn threads(&self) -> AppResult<Option<usize>> {
        self.parse("threads")
    }

    pub fn path(&self) -> AppResult<EvalPath> {
        match self.get("path").unwrap_or("auto") {
            "auto" => Ok(EvalPath::Auto),
            "dense" => Ok(EvalPath::Dense),
            "circulant" => Ok(EvalPath::Circulant),
            s => Err(AppError::Parameter(format!("--path: expected auto, dense or circulant, got '{s}'"))),
        }
    }

    pub fn h_method(&self) -> AppResult<HMethod> {
        match self.get("h-method").unwrap_or("analytic") {
            "analytic" => Ok(HMethod::Analytic),
            "fd" => Ok(HMethod::FiniteDifference),
            s => Err(AppError::Parameter(format!("--h-method: expected analytic or fd, got '{s}'"))),
        }
    }

    pub fn quantities(&self, default: &[Quantity]) -> AppResult<Vec<Quantity>> {
        match self.get("quantities") {
            None => Ok(default.to_vec()),
            Some(s) => s.split(',').map(|q| q.trim().parse()).collect(),
        }
    }

    pub fn scan_spec(&self, default_quantities: &[Quantity]) -> AppResult<ScanSpec> {
        let mut spec = ScanSpec::new(
            self.sizes()?,
            self.boundary()?,
            self.axis("mu")?,
            self.axis("gamma")?,
            self.quantities(default_quantities)?,
        );
        spec.range = self.range()?;
        spec.sign = self.sign()?;
        spec.dmu = self.or("dmu", 0.1)?;
        spec.dgamma = self.or("dgamma", 0.1)?;
        spec.fd_step = self.parse("fd-step")?;
        spec.h_method = self.h_method()?;
        spec.path = self.path()?;
        spec.seed = self.or("seed", 0)?;
        spec.include_trivial_line = self.or("include-trivial-line", false)?;
        Ok(spec)
    }
}

/// `n`, `n1,n2,...` or `a:b:step`.
pub fn parse_sizes(s: &str) -> AppResult<Vec<usize>> {
    let bad = || AppError::Parameter(format!("--L: cannot parse '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    let out: Vec<usize> = match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step): (usize, usize, usize) =
                (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?, step.parse().map_err(|_| bad())?);
            if step == 0 || b < a {
                return Err(bad());
            }
            (a..=b).step_by(step).collect()
        }
        [_] => s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<AppResult<_>>()?,
        _ => return Err(bad()),
    };
    if out.is_empty() || out.iter().any(|&l| l < 2) {
        return Err(AppError::Parameter("--L: sizes must be at least 2".into()));
    }
    Ok(out)
}

/// Named parameter sets. Grid resolutions are recorded in the metadata.
pub fn preset(name: &str) -> AppResult<Vec<(&'static str, &'static str)>> {
    let common = [("L", "1001"), ("boundary", "cyclic"), ("range", "full"), ("sign", "s4"), ("mu", "-1:3:201"), ("gamma", "-2:2:201")];
    let mut v: Vec<(&str, &str)> = common.to_vec();
    match name {
        "fidelity-map" => v.extend([("dmu", "0.1"), ("dgamma", "0.1"), ("quantities", "F_min")]),
        "h-map" => v.extend([("quantities", "h_crit,log10_h")]),
        "cyclic-scaling" => {
            v = vec![("L", "101:1001:100"), ("boundary", "cyclic"), ("range", "full"), ("sign", "s4"), ("gamma", "1.5"), ("x", "-20:20:201")]
        }
        "free-scaling" => {
            v = vec![("L", "100:1000:100"), ("boundary", "free"), ("range", "full"), ("sign", "s4"), ("gamma", "1.5"), ("x", "-4:2:61")]
        }
        _ => return Err(AppError::Parameter(format!("unknown preset '{name}', expected fidelity-map, h-map, cyclic-scaling or free-scaling"))),
    }
    Ok(v)
}

fn metadata(command: &str, s: &Settings, extra: Value) -> Value {
    let settings: serde_json::Map<String, Value> =
        s.values.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "tool": "ffgraph",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "settings": settings,
        "ordering": "L outermost, then gamma, mu fastest",
        "details": extra,
    })
}

fn finish(command: &str, s: &Settings, table: &Table, extra: Value) -> AppResult<()> {
    let out = s.out();
    format::emit(table, s.format()?, out.as_deref())?;
    if let Some(p) = &out {
        format::write_meta(p, &metadata(command, s, extra))?;
    }
    Ok(())
}

fn note(msg: impl AsRef<str>) {
    let _ = writeln!(std::io::stderr(), "{}", msg.as_ref());
}

pub fn run(cli: Cli) -> AppResult<()> {
    let s = Settings::resolve(cli.command.opts())?;
    let threads = s.threads()?;
    if let Some(n) = threads {
        // the global pool serves every parallel section; an existing pool is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let name = cli.command.name();
    match &cli.command {
        Command::Spectrum(_) => spectrum(name, &s),
        Command::Map(_) => map(name, &s, threads),
        Command::Boundary(_) => boundary(name, &s),
        Command::Scaling(_) => scaling(name, &s),
        Command::Collapse(_) => collapse(name, &s),
        Command::OracleCheck(_) => oracle_check(&s),
        Command::Tdl(_) => tdl(name, &s),
    }
}

fn spectrum(name: &str, s: &Settings) -> AppResult<()> {
    let (mu, gamma) = (single(s, "mu")?, single(s, "gamma")?);
    let path = s.path()?;
    let mut table = Table::new(vec!["j".into(), "lambda".into()]);
    for l in s.sizes()? {
        let fam = ModelFamily::new(l, s.range()?, s.boundary()?, s.sign()?);
        let st = fam.ground_state(mu, gamma, path)?;
        note(format!(
            "L={l} mu={mu} gamma={gamma}: E0={} gap={} parity={} well_defined={}",
            format::fmt_f64(st.e0),
            format::fmt_f64(st.gap),
            st.parity,
            st.well_defined
        ));
        for (j, lam) in st.lambda().into_iter().enumerate() {
            table.rows.push(ScanRow { l, mu, gamma, values: vec![j as f64, lam], flags: vec![] });
        }
    }
    finish(name, s, &table, json!({}))
}

fn single(s: &Settings, key: &str) -> AppResult<f64> {
    let a = s.axis(key)?;
    if a.count != 1 {
        return Err(AppError::Parameter(format!("--{key}: expected a single value")));
    }
    Ok(a.start)
}

fn map(name: &str, s: &Settings, threads: Option<usize>) -> AppResult<()> {
    let spec = s.scan_spec(&[Quantity::FMin, Quantity::HCrit, Quantity::Log10H])?;
    let table = scan::run_scan(&spec, threads)?;
    let flagged = table.rows.iter().filter(|r| !r.flags.is_empty()).count();
    note(format!("{} rows, {flagged} flagged", table.rows.len()));
    finish(name, s, &table, json!({ "grid": [spec.mu.count, spec.gamma.count], "rows": table.rows.len() }))
}

fn boundary(name: &str, s: &Settings) -> AppResult<()> {
    let (mu, gamma) = (s.axis("mu")?, s.axis("gamma")?);
    let sweep = match (mu.count, gamma.count) {
        (n, 1) if n >= 2 => Sweep::along_mu(gamma.start, mu.start, mu.end, n),
        (1, n) if n >= 2 => Sweep::along_gamma(mu.start, gamma.start, gamma.end, n),
        _ => return Err(AppError::Parameter("boundary: sweep exactly one of --mu, --gamma (a:b:n, n >= 2)".into())),
    };
    let mut table = Table::new(vec!["parity_before".into(), "parity_after".into()]);
    for l in s.sizes()? {
        let fam = ModelFamily::new(l, s.range()?, s.boundary()?, s.sign()?);
        for p in first_order_boundary(&fam, &sweep, s.path()?)? {
            table.rows.push(ScanRow {
                l,
                mu: p.mu,
                gamma: p.gamma,
                values: vec![p.parity_before.into(), p.parity_after.into()],
                flags: vec![],
            });
        }
    }
    note(format!("{} boundary points", table.rows.len()));
    finish(name, s, &table, json!({ "tolerance": crit::BOUNDARY_TOL }))
}

/// `h_crit` by the configured method.
fn h_value(s: &Settings, fam: &ModelFamily, mu: f64, gamma: f64) -> AppResult<ffgraph_core::Result<f64>> {
    let path = s.path()?;
    let fd = s.parse("fd-step")?;
    Ok(match s.h_method()? {
        HMethod::Analytic => crit::hessian_analytic(fam, mu, gamma, path),
        HMethod::FiniteDifference => crit::hessian_fd(fam, mu, gamma, fd, path),
    }
    .map(|h| h.h_crit))
}

fn scaling(name: &str, s: &Settings) -> AppResult<()> {
    let sizes = s.sizes()?;
    let gamma = single(s, "gamma")?;
    let xs = s.get("x").unwrap_or("-20:20:201").parse::<Axis>()?;
    xs.validate("x")?;
    let grid: usize = s.or("grid", crit::BRACKET_POINTS)?;
    let (range, bnd, sign) = (s.range()?, s.boundary()?, s.sign()?);
    let fam = |l| ModelFamily::new(l, range, bnd, sign);
    let window = |l: usize| {
        let lf = l as f64;
        match bnd {
            Boundary::Cyclic => (1.0 - 5.0 / lf, 1.0 + 5.0 / lf),
            Boundary::FreeEnds => (1.0 - 4.0 / lf, 1.0 + 2.0 / lf),
        }
    };
    // curves
    let points: Vec<(usize, f64)> =
        sizes.iter().flat_map(|&l| xs.values().into_iter().map(move |x| (l, 1.0 + x / l as f64))).collect();
    let rows = points
        .par_iter()
        .map(|&(l, mu)| -> AppResult<ScanRow> {
            let (values, flags) = match h_value(s, &fam(l), mu, gamma)? {
                Ok(h) => (vec![h], vec![]),
                Err(e) => (vec![f64::NAN], vec![Flag::from_error(&e)]),
            };
            Ok(ScanRow { l, mu, gamma, values, flags })
        })
        .collect::<AppResult<Vec<_>>>()?;
    let table = Table { quantities: vec!["h_crit".into()], rows };
    // peaks
    let peaks: Vec<(usize, f64, f64)> = sizes
        .par_iter()
        .map(|&l| -> AppResult<(usize, f64, f64)> {
            let f = fam(l);
            let (lo, hi) = window(l);
            let (m, h) = crit::locate_minimum(
                |mu| h_value(s, &f, mu, gamma).and_then(|r| r.map_err(AppError::from)).map_err(to_core),
                lo,
                hi,
                grid,
                crit::GOLDEN_TOL,
            )?;
            Ok((l, m, h))
        })
        .collect::<AppResult<Vec<_>>>()?;
    let lf: Vec<f64> = peaks.iter().map(|p| p.0 as f64).collect();
    let depth: Vec<f64> = peaks.iter().map(|p| p.2).collect();
    let fit = crit::loglog_fit(&lf, &depth);
    for (l, m, h) in &peaks {
        note(format!("L={l} mu_min={} h_min={}", format::fmt_f64(*m), format::fmt_f64(*h)));
    }
    note(format!("log-log slope of |h_min| vs L: {:.4} (R^2 {:.6})", fit.slope, fit.r2));
    let offsets: Vec<f64> = peaks.iter().map(|p| 1.0 - p.1).collect();
    let inv = crit::inverse_l_fit(&sizes, &offsets);
    note(format!("1 - mu_min = c/L: c = {:.6}, max relative residual {:.4}", inv.c, inv.max_relative_residual));
    let peaks_json: Vec<Value> = peaks.iter().map(|(l, m, h)| json!({ "L": l, "mu_min": m, "h_min": h })).collect();
    finish(name, s, &table, json!({ "gamma": gamma, "peaks": peaks_json, "slope": fit.slope, "inverse_l_c": inv.c }))
}

fn to_core(e: AppError) -> ffgraph_core::Error {
    match e {
        AppError::Core(c) => c,
        _ => ffgraph_core::Error::Consistency("unexpected error in a peak search"),
    }
}

/// `((mu - 1) L, h / L^2)` for every row of a table with an `h_crit` column.
pub fn collapse_table(input: &Table) -> AppResult<Table> {
    let col = input
        .column("h_crit")
        .ok_or_else(|| AppError::Parameter("collapse: input has no h_crit column".into()))?;
    let mut out = Table::new(vec!["x".into(), "h_over_L2".into()]);
    for r in &input.rows {
        let lf = r.l as f64;
        out.rows.push(ScanRow {
            l: r.l,
            mu: r.mu,
            gamma: r.gamma,
            values: vec![(r.mu - 1.0) * lf, r.values[col] / (lf * lf)],
            flags: r.flags.clone(),
        });
    }
    Ok(out)
}

fn collapse(name: &str, s: &Settings) -> AppResult<()> {
    let table = match s.get("input") {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| AppError::io(p, e))?;
            collapse_table(&format::read_csv(&text)?)?
        }
        None => {
            let sizes = s.sizes()?;
            let gamma = single(s, "gamma")?;
            let xs = s.get("x").unwrap_or("-20:20:201").parse::<Axis>()?;
            xs.validate("x")?;
            let (range, bnd, sign) = (s.range()?, s.boundary()?, s.sign()?);
            let mut t = Table::new(vec!["h_crit".into()]);
            for &l in &sizes {
                let fam = ModelFamily::new(l, range, bnd, sign);
                for x in xs.values() {
                    let mu = 1.0 + x / l as f64;
                    let (values, flags) = match h_value(s, &fam, mu, gamma)? {
                        Ok(h) => (vec![h], vec![]),
                        Err(e) => (vec![f64::NAN], vec![Flag::from_error(&e)]),
                    };
                    t.rows.push(ScanRow { l, mu, gamma, values, flags });
                }
            }
            collapse_table(&t)?
        }
    };
    if let Some(dev) = collapse_spread(&table, 20.0) {
        note(format!("sup-norm spread relative to the largest L over |x| <= 20: {dev:.4}"));
    }
    finish(name, s, &table, json!({}))
}

/// Largest `sup |c_L - c_Lmax| / sup |c_Lmax|` when all sizes share abscissae.
pub fn collapse_spread(collapsed: &Table, xmax: f64) -> Option<f64> {
    let mut curves: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for r in &collapsed.rows {
        curves.entry(r.l).or_default().push((r.values[0], r.values[1]));
    }
    let list: Vec<Vec<(f64, f64)>> = curves.into_values().collect();
    let n = list.first()?.len();
    if list.iter().any(|c| c.len() != n) {
        return None;
    }
    Some(crit::collapse_deviation(&list, list.len() - 1, xmax))
}

fn oracle_check(s: &Settings) -> AppResult<()> {
    let sizes = match s.get("L") {
        Some(v) => parse_sizes(v)?,
        None => (2..=8).collect(),
    };
    let (lo, hi) = (*sizes.iter().min().unwrap(), *sizes.iter().max().unwrap());
    if hi > ffgraph_core::oracle::MAX_ORACLE_L {
        return Err(AppError::Parameter(format!("oracle-check: L <= {}", ffgraph_core::oracle::MAX_ORACLE_L)));
    }
    let opts = SuiteOptions {
        sizes: (lo, hi),
        samples: s.or("samples", 50)?,
        seed: s.or("seed", 0)?,
        sign: s.sign()?,
        ..SuiteOptions::default()
    };
    let r = suite::run_oracle_suite(&opts)?;
    let report = json!({
        "points": r.points,
        "pairs": r.pairs,
        "skipped_degenerate": r.skipped_degenerate,
        "skipped_parity": r.skipped_parity,
        "max_fidelity_error": r.max_fidelity_error,
        "max_energy_error": r.max_energy_error,
        "parity_mismatches": r.parity_mismatches,
        "ansatz_points": r.ansatz_points,
        "min_ansatz_overlap": r.min_ansatz_overlap,
        "max_annihilation": r.max_annihilation,
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    format::write_with(s.out().as_deref(), |w| writeln!(w, "{text}"))?;
    let ok = r.max_fidelity_error < 1e-9
        && r.max_energy_error < 1e-9
        && r.parity_mismatches == 0
        && r.min_ansatz_overlap > 1.0 - 1e-10
        && r.max_annihilation < 1e-9;
    if ok {
        Ok(())
    } else {
        Err(AppError::Consistency("solver and oracle disagree".into()))
    }
}

fn tdl(name: &str, s: &Settings) -> AppResult<()> {
    let sizes = s.sizes()?;
    let (mus, gammas) = (s.axis("mu")?, s.axis("gamma")?);
    mus.validate("mu")?;
    gammas.validate("gamma")?;
    let mut table = Table::new(vec!["h_asym".into(), "Tii_tdl".into(), "Si_tdl".into()]);
    for &l in &sizes {
        for g in gammas.values() {
            for m in mus.values() {
                let mut flags = Vec::new();
                let mut val = |r: ffgraph_core::Result<f64>| match r {
                    Ok(v) => v,
                    Err(e) => {
                        flags.push(Flag::from_error(&e));
                        f64::NAN
                    }
                };
                let h = val(crit::h_asymptotic(l, m, g));
                let t = val(ent::tii_tdl(m, g));
                let si = val(ent::single_site_tdl(m, g).map(|r| r.si));
                flags.sort();
                flags.dedup();
                table.rows.push(ScanRow { l, mu: m, gamma: g, values: vec![h, t, si], flags });
            }
        }
    }
    finish(name, s, &table, json!({}))
}

/// Read a table and return it, for tools that post-process scan output.
pub fn load_table(path: &Path) -> AppResult<Table> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    format::read_csv(&text)
}
