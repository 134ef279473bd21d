//! Line-oriented job files.
//!
//! ```text
//! # comment
//! vars x, y, z
//! params s, t
//! seed 7
//! trunc 12
//! poly P = y^2 + x^4
//! family F = contact (y^2+x^4)+s*x*(y+x^3)+t*(y+x^4)
//! ideal I = y, x^2
//! chart C = y, x^2 ; order lex y>x ; names k, l, m, n
//! task eqs = hilb-eq family=F chart=C
//! task sing = sing ideal=@eqs compare="t, l, n, s*m^2+s*k+k^2+m^2"
//! ```
//!
//! A trailing `\` continues a line. `@name` passes the polynomials produced by
//! task `name`. Every name lives in one ring: the declared variables and
//! parameters, then chart coordinates in declaration order.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde_json::{json, Value};

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::io::ops::{self, Arg, Args, Env};
use crate::local::DEFAULT_TRUNCATION;
use crate::par::Exec;
use crate::sample;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Poly { name: String, src: String },
    Family { name: String, kind: String, src: String },
    Ideal { name: String, src: String },
    Chart { name: String, monomials: String, order: String, names: Option<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskArg {
    Text(String),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    pub name: String,
    pub op: String,
    pub args: BTreeMap<String, TaskArg>,
}

impl TaskSpec {
    pub fn dependencies(&self) -> BTreeSet<&str> {
        self.args
            .values()
            .filter_map(|a| match a {
                TaskArg::Ref(r) => Some(r.as_str()),
                TaskArg::Text(_) => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobFile {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub seed: Option<u64>,
    pub trunc: Option<u32>,
    pub decls: Vec<Decl>,
    pub tasks: Vec<TaskSpec>,
}

fn job_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Job(format!("line {line}: {msg}"))
}

fn names_list(s: &str) -> Vec<String> {
    s.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect()
}

fn valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '\'')
}

/// Split `key=value` tokens at whitespace; double quotes group.
fn tokenize(s: &str, line: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut started = false;
    for c in s.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                started = true;
            }
            c if c.is_whitespace() && !quoted => {
                if started {
                    out.push(std::mem::take(&mut cur));
                    started = false;
                }
            }
            c => {
                cur.push(c);
                started = true;
            }
        }
    }
    if quoted {
        return Err(job_err(line, "unterminated quote"));
    }
    if started {
        out.push(cur);
    }
    Ok(out)
}

fn parse_task(name: &str, rhs: &str, line: usize) -> Result<TaskSpec> {
    let toks = tokenize(rhs, line)?;
    let (op, rest) = toks.split_first().ok_or_else(|| job_err(line, "task without operation"))?;
    if !ops::OPS.contains(&op.as_str()) {
        return Err(job_err(line, format!("unknown operation `{op}`")));
    }
    let mut args = BTreeMap::new();
    for t in rest {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| job_err(line, format!("expected key=value, got `{t}`")))?;
        let arg = match v.strip_prefix('@') {
            Some(r) => TaskArg::Ref(r.to_string()),
            None => TaskArg::Text(v.to_string()),
        };
        if args.insert(k.to_string(), arg).is_some() {
            return Err(job_err(line, format!("argument `{k}` given twice")));
        }
    }
    Ok(TaskSpec {
        name: name.to_string(),
        op: op.clone(),
        args,
    })
}

pub fn parse_job(text: &str) -> Result<JobFile> {
    let mut job = JobFile::default();
    let mut logical: Vec<(usize, String)> = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim_end();
        let (start, mut acc) = pending.take().unwrap_or((i + 1, String::new()));
        if let Some(body) = line.strip_suffix('\\') {
            acc.push_str(body);
            acc.push(' ');
            pending = Some((start, acc));
            continue;
        }
        acc.push_str(line);
        if !acc.trim().is_empty() {
            logical.push((start, acc.trim().to_string()));
        }
    }
    if let Some((start, _)) = pending {
        return Err(job_err(start, "dangling line continuation"));
    }

    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (n, line) in logical {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line.as_str(), ""));
        let rest = rest.trim();
        let mut define = |kind: &str| -> Result<(String, String)> {
            let (name, rhs) = rest
                .split_once('=')
                .ok_or_else(|| job_err(n, format!("expected `{kind} NAME = ...`")))?;
            let name = name.trim().to_string();
            if !valid_name(&name) {
                return Err(job_err(n, format!("invalid name `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(job_err(n, format!("`{name}` defined twice")));
            }
            Ok((name, rhs.trim().to_string()))
        };
        match head {
            "vars" => job.vars.extend(names_list(rest)),
            "params" => job.params.extend(names_list(rest)),
            "seed" => job.seed = Some(rest.parse().map_err(|_| job_err(n, "seed must be a 64-bit integer"))?),
            "trunc" => job.trunc = Some(rest.parse().map_err(|_| job_err(n, "trunc must be a positive integer"))?),
            "poly" => {
                let (name, src) = define("poly")?;
                job.decls.push(Decl::Poly { name, src });
            }
            "ideal" => {
                let (name, src) = define("ideal")?;
                job.decls.push(Decl::Ideal { name, src });
            }
            "family" => {
                let (name, rhs) = define("family")?;
                let (kind, src) = rhs.split_once(char::is_whitespace).unwrap_or((rhs.as_str(), ""));
                if kind != "contact" && kind != "interior" {
                    return Err(job_err(n, "family kind must be `contact` or `interior`"));
                }
                job.decls.push(Decl::Family {
                    name,
                    kind: kind.to_string(),
                    src: src.trim().to_string(),
                });
            }
            "chart" => {
                let (name, rhs) = define("chart")?;
                let mut parts = rhs.split(';');
                let monomials = parts.next().unwrap_or("").trim().to_string();
                let mut order = "lex".to_string();
                let mut names = None;
                for p in parts {
                    let p = p.trim();
                    if let Some(o) = p.strip_prefix("order") {
                        order = o.trim().to_string();
                    } else if let Some(ns) = p.strip_prefix("names") {
                        names = Some(names_list(ns));
                    } else if !p.is_empty() {
                        return Err(job_err(n, format!("unknown chart option `{p}`")));
                    }
                }
                job.decls.push(Decl::Chart {
                    name,
                    monomials,
                    order,
                    names,
                });
            }
            "task" => {
                let (name, rhs) = define("task")?;
                job.tasks.push(parse_task(&name, &rhs, n)?);
            }
            other => return Err(job_err(n, format!("unknown directive `{other}`"))),
        }
    }
    job.check_graph()?;
    Ok(job)
}

impl JobFile {
    /// Every reference resolves and the task graph is acyclic. Returns the
    /// tasks grouped into layers that depend only on earlier layers.
    pub fn check_graph(&self) -> Result<Vec<Vec<&TaskSpec>>> {
        let by_name: BTreeMap<&str, &TaskSpec> = self.tasks.iter().map(|t| (t.name.as_str(), t)).collect();
        for t in &self.tasks {
            for d in t.dependencies() {
                if !by_name.contains_key(d) {
                    return Err(Error::Job(format!("task `{}` references unknown task `{d}`", t.name)));
                }
            }
        }
        let mut done: BTreeSet<&str> = BTreeSet::new();
        let mut layers = Vec::new();
        while done.len() < self.tasks.len() {
            let layer: Vec<&TaskSpec> = self
                .tasks
                .iter()
                .filter(|t| !done.contains(t.name.as_str()))
                .filter(|t| t.dependencies().iter().all(|d| done.contains(d)))
                .collect();
            if layer.is_empty() {
                let stuck: Vec<&str> = self
                    .tasks
                    .iter()
                    .map(|t| t.name.as_str())
                    .filter(|n| !done.contains(n))
                    .collect();
                return Err(Error::Job(format!("cyclic task references among: {}", stuck.join(", "))));
            }
            done.extend(layer.iter().map(|t| t.name.as_str()));
            layers.push(layer);
        }
        Ok(layers)
    }

    /// Declarations evaluated in order into an environment.
    pub fn environment(&self, opts: &RunOptions) -> Result<Env> {
        let mut names = if self.vars.is_empty() {
            vec!["x".to_string(), "y".to_string()]
        } else {
            self.vars.clone()
        };
        for p in &self.params {
            if names.contains(p) {
                return Err(Error::Job(format!("`{p}` declared both as variable and parameter")));
            }
            names.push(p.clone());
        }
        let mut uniq = BTreeSet::new();
        if let Some(d) = names.iter().find(|n| !uniq.insert(n.as_str())) {
            return Err(Error::Job(format!("variable `{d}` declared twice")));
        }
        let mut env = Env::new(Ring::new(names));
        env.params = self.params.clone();
        env.seed = opts.seed.or(self.seed).unwrap_or(0);
        env.trunc = opts.trunc.or(self.trunc).unwrap_or(DEFAULT_TRUNCATION);
        env.exec = opts.exec;
        for d in &self.decls {
            let r = match d {
                Decl::Poly { name, src } => env.declare_poly(name, src),
                Decl::Ideal { name, src } => env.declare_ideal(name, src),
                Decl::Family { name, kind, src } => env.declare_family(name, kind, src),
                Decl::Chart {
                    name,
                    monomials,
                    order,
                    names,
                } => env.declare_chart(name, monomials, order, names.clone()),
            };
            let name = match d {
                Decl::Poly { name, .. } | Decl::Ideal { name, .. } | Decl::Family { name, .. } | Decl::Chart { name, .. } => name,
            };
            r.map_err(|e| Error::Job(format!("declaration `{name}`: {e}")))?;
        }
        env.finalize()?;
        Ok(env)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the job's `seed` line.
    pub seed: Option<u64>,
    /// Overrides the job's `trunc` line.
    pub trunc: Option<u32>,
    pub exec: Exec,
    /// Record wall-clock time per task. Off by default so that reports are
    /// reproducible byte for byte.
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub tasks: BTreeMap<String, Value>,
    pub failures: usize,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "failures": self.failures,
            "tasks": self.tasks,
        })
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Status entry for one operation, as used in reports and by the CLI.
pub fn task_entry(op: &str, result: &Result<ops::Output>, elapsed_ms: Option<u128>) -> Value {
    let mut v = match result {
        Ok(out) => json!({"op": op, "status": "ok", "result": out.value}),
        Err(e) => json!({"op": op, "status": "error", "error": e.to_string()}),
    };
    if let Some(ms) = elapsed_ms {
        v["elapsed_ms"] = json!(ms as u64);
    }
    v
}

/// Execute all tasks. Invalid jobs (bad declarations, unknown references,
/// cycles) are errors; failures of individual tasks are recorded in the report.
pub fn run_job(job: &JobFile, opts: &RunOptions) -> Result<Report> {
    let layers = job.check_graph()?;
    let env = job.environment(opts)?;
    let mut outputs: BTreeMap<String, Result<ops::Output>> = BTreeMap::new();
    let mut entries = BTreeMap::new();
    for layer in layers {
        let results = opts.exec.map(&layer, |t| {
            let start = Instant::now();
            let r = run_task(t, &env, &outputs);
            let ms = opts.timing.then(|| start.elapsed().as_millis());
            (r, ms)
        });
        for (t, (r, ms)) in layer.iter().zip(results) {
            entries.insert(t.name.clone(), task_entry(&t.op, &r, ms));
            outputs.insert(t.name.clone(), r);
        }
    }
    let failures = outputs.values().filter(|r| r.is_err()).count();
    Ok(Report {
        seed: env.seed,
        tasks: entries,
        failures,
    })
}

fn run_task(t: &TaskSpec, env: &Env, outputs: &BTreeMap<String, Result<ops::Output>>) -> Result<ops::Output> {
    let mut args = Args::new();
    for (k, a) in &t.args {
        let v = match a {
            TaskArg::Text(s) => Arg::Text(s.clone()),
            TaskArg::Ref(r) => match &outputs[r] {
                Ok(out) => Arg::Polys(out.polys.clone()),
                Err(_) => return Err(Error::Job(format!("dependency `{r}` failed"))),
            },
        };
        args.insert(k.clone(), v);
    }
    ops::run(&t.op, &args, env, sample::sub_seed(env.seed, &t.name))
}
