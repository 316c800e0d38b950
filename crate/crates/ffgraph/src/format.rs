//! Table output (CSV, JSON lines, gnuplot blocks) and CSV input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{AppError, AppResult};
use crate::scan::{Flag, ScanRow, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
    Gnuplot,
}

impl FromStr for Format {
    type Err = AppError;

    fn from_str(s: &str) -> AppResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            "gnuplot" => Ok(Format::Gnuplot),
            _ => Err(AppError::Parameter(format!("unknown format '{s}', expected csv, jsonl or gnuplot"))),
        }
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:?}")
    }
}

fn header(table: &Table) -> Vec<String> {
    let mut h = vec!["L".to_string(), "mu".into(), "gamma".into()];
    h.extend(table.quantities.iter().cloned());
    h.push("status".into());
    h
}

fn fields(row: &ScanRow) -> Vec<String> {
    let mut f = vec![row.l.to_string(), fmt_f64(row.mu), fmt_f64(row.gamma)];
    f.extend(row.values.iter().map(|&v| fmt_f64(v)));
    f.push(row.status());
    f
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn write_table<W: Write + ?Sized>(table: &Table, format: Format, w: &mut W) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "{}", header(table).join(","))?;
            for row in &table.rows {
                writeln!(w, "{}", fields(row).join(","))?;
            }
        }
        Format::Jsonl => {
            for row in &table.rows {
                let mut obj = Map::new();
                obj.insert("L".into(), Value::from(row.l));
                obj.insert("mu".into(), json_number(row.mu));
                obj.insert("gamma".into(), json_number(row.gamma));
                for (q, &v) in table.quantities.iter().zip(&row.values) {
                    obj.insert(q.clone(), json_number(v));
                }
                obj.insert("status".into(), Value::from(row.status()));
                writeln!(w, "{}", Value::Object(obj))?;
            }
        }
        Format::Gnuplot => {
            writeln!(w, "# {}", header(table).join(" "))?;
            let mut prev: Option<(usize, f64)> = None;
            for row in &table.rows {
                let key = (row.l, row.gamma);
                if prev.is_some_and(|p| p != key) {
                    writeln!(w)?;
                }
                prev = Some(key);
                writeln!(w, "{}", fields(row).join(" "))?;
            }
        }
    }
    Ok(())
}

/// Write to `path`, or to standard output when `path` is `None`.
pub fn emit(table: &Table, format: Format, path: Option<&Path>) -> AppResult<()> {
    write_with(path, |w| write_table(table, format, w))
}

pub fn write_with(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> AppResult<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| AppError::io(p, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|_| w.flush()).map_err(|e| AppError::io(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w).and_then(|_| w.flush()).map_err(|e| AppError::io("<stdout>", e))
        }
    }
}

/// `<path>.meta.json`
pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn write_meta(path: &Path, meta: &Value) -> AppResult<()> {
    let p = meta_path(path);
    let text = serde_json::to_string_pretty(meta).expect("metadata serializes");
    std::fs::write(&p, text + "\n").map_err(|e| AppError::io(&p, e))
}

/// Parse a CSV table written by [`write_table`].
pub fn read_csv(text: &str) -> AppResult<Table> {
    let bad = |line: usize, what: &str| AppError::Parameter(format!("CSV line {line}: {what}"));
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, head) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let cols: Vec<&str> = head.split(',').collect();
    if cols.len() < 4 || cols[..3] != ["L", "mu", "gamma"] || cols.last() != Some(&"status") {
        return Err(bad(1, "header must be L,mu,gamma,...,status"));
    }
    let quantities: Vec<String> = cols[3..cols.len() - 1].iter().map(|s| s.to_string()).collect();
    let mut table = Table::new(quantities);
    for (i, line) in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != cols.len() {
            return Err(bad(i + 1, "wrong number of fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1, "not a number"));
        let l = f[0].parse::<usize>().map_err(|_| bad(i + 1, "L is not an integer"))?;
        let values = f[3..f.len() - 1].iter().map(|s| num(s)).collect::<AppResult<Vec<f64>>>()?;
        let status = f[f.len() - 1];
        let flags = if status == "ok" {
            Vec::new()
        } else {
            status
                .split(';')
                .map(|s| Flag::from_name(s).ok_or_else(|| bad(i + 1, "unknown status flag")))
                .collect::<AppResult<Vec<Flag>>>()?
        };
        table.rows.push(ScanRow { l, mu: num(f[1])?, gamma: num(f[2])?, values, flags });
    }
    Ok(table)
}
