//! Named bindings and the command language shared by scripts and the REPL.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use superring::expr::ParseError;
use superring::ideal::{
    is_cinfty_superreduced, is_split, radical_membership, IdealError, Membership, QuotientSuperRing, RadicalVerdict,
    SplitVerdict, SuperIdeal, SuperreducedVerdict,
};
use superring::morphism::{coproduct, Morphism, MorphismError};
use superring::spectrum::{fairfication, psi_kernel_test, PsiVerdict, RPoint};
use superring::structure::{
    apply_smooth_with, associated_graded, check_composition_axiom, check_projection_axiom, check_ring_compatibility,
    Expansion, SplitSuperRing, StructureError,
};
use superring::verdict::{Bounds, Provenance, Settings};
use superring::{Func, SmoothExpr, SuperElement};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("`{0}` is not defined")]
    Unbound(String),
    #[error("`{0}` is already defined")]
    Redefined(String),
    #[error("`{name}` is not a {expected}")]
    WrongKind { name: String, expected: &'static str },
    #[error("no ring in scope; define one with `ring`")]
    NoRing,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl CommandError {
    /// Usage and parse errors abort a script; the rest are recorded as failures.
    pub fn is_usage(&self) -> bool {
        !matches!(self, CommandError::Ideal(_) | CommandError::Morphism(_) | CommandError::Structure(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// One executed command.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: String,
    pub provenance: Option<Provenance>,
    pub witnesses: Value,
    pub elapsed_ms: u64,
    pub status: Status,
    /// Text shown in the REPL.
    #[serde(skip)]
    pub output: String,
}

pub enum Outcome {
    Nothing,
    Quit,
    Done(Box<Record>),
}

enum Binding {
    Ring(QuotientSuperRing),
    Element { ring: String, value: SuperElement },
    Morphism(Box<Morphism>),
}

pub struct Session {
    settings: Settings,
    timings: bool,
    bindings: HashMap<String, Binding>,
    current_ring: Option<String>,
    pub records: Vec<Record>,
    pub results: BTreeMap<String, String>,
    pub point_sets: Vec<(String, Vec<RPoint>)>,
}

/// Split at `sep` outside parentheses and brackets.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(msg: impl Into<String>) -> CommandError {
    CommandError::Syntax(msg.into())
}

/// `lhs = rhs`, splitting at the first top-level `=` that is not part of `==`.
fn split_assignment(rest: &str) -> Result<(&str, &str), CommandError> {
    let (l, r) = rest.split_once('=').ok_or_else(|| syntax("expected `=`"))?;
    Ok((l.trim(), r.trim()))
}

fn parse_ring(text: &str) -> Result<SplitSuperRing, CommandError> {
    let inner = text
        .trim()
        .strip_prefix("C(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| syntax(format!("expected C(p|q), found `{text}`")))?;
    let (p, q) = inner.split_once('|').ok_or_else(|| syntax("expected C(p|q)"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| syntax(format!("bad dimension `{s}`")));
    Ok(SplitSuperRing::new(num(p)?, num(q)?))
}

fn parse_range(text: &str) -> Result<(f64, f64), CommandError> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| syntax(format!("expected lo..hi, found `{text}`")))?;
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| syntax(format!("bad number `{s}`")));
    Ok((num(lo)?, num(hi)?))
}

fn option<'a>(args: &[&'a str], key: &str) -> Option<&'a str> {
    args.iter().find_map(|a| a.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

fn provenance_of_membership(m: &Membership) -> Option<Provenance> {
    match m {
        Membership::Member { provenance } | Membership::NotMember { provenance, .. } => Some(*provenance),
        Membership::Unknown => None,
    }
}

impl Session {
    pub fn new(settings: Settings, timings: bool) -> Self {
        Session {
            settings,
            timings,
            bindings: HashMap::new(),
            current_ring: None,
            records: Vec::new(),
            results: BTreeMap::new(),
            point_sets: Vec::new(),
        }
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn any_failure(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    /// Runs every `;`-separated statement of a line.
    pub fn execute_line(&mut self, line: &str) -> Result<Vec<Outcome>, CommandError> {
        split_top(strip_comment(line), ';').into_iter().map(|s| self.execute(s)).collect()
    }

    pub fn execute(&mut self, statement: &str) -> Result<Outcome, CommandError> {
        let statement = statement.trim();
        if statement.is_empty() {
            return Ok(Outcome::Nothing);
        }
        let (cmd, rest) = statement.split_once(char::is_whitespace).unwrap_or((statement, ""));
        let rest = rest.trim();
        let start = Instant::now();
        let result = match cmd {
            "quit" | "exit" => return Ok(Outcome::Quit),
            "ring" => self.cmd_ring(rest),
            "quotient" => self.cmd_quotient(rest),
            "elem" => self.cmd_elem(rest),
            "set" => self.cmd_set(rest),
            "print" => self.cmd_print(rest),
            "apply" => self.cmd_apply(rest),
            "nf" => self.cmd_nf(rest),
            "member" => self.cmd_member(rest),
            "radical" => self.cmd_radical(rest),
            "split" => self.cmd_split(rest),
            "superreduced" => self.cmd_superreduced(rest),
            "graded" => self.cmd_graded(rest),
            "points" => self.cmd_points(rest),
            "psi" => self.cmd_psi(rest),
            "fair" => self.cmd_fair(rest),
            "axioms" => self.cmd_axioms(rest),
            "morph" => self.cmd_morph(rest),
            "map" => self.cmd_map(rest),
            "coproduct" => self.cmd_coproduct(rest),
            "check" => self.cmd_check(rest),
            other => return Err(CommandError::UnknownCommand(other.to_string())),
        };
        let mut record = match result {
            Ok(r) => r,
            Err(e) if !e.is_usage() => Record {
                command: cmd.to_string(),
                inputs: vec![rest.to_string()],
                verdict: "error".into(),
                provenance: None,
                witnesses: json!({ "error": e.to_string() }),
                elapsed_ms: 0,
                status: Status::Fail,
                output: format!("error: {e}"),
            },
            Err(e) => return Err(e),
        };
        if self.timings {
            record.elapsed_ms = start.elapsed().as_millis() as u64;
        }
        self.records.push(record.clone());
        Ok(Outcome::Done(Box::new(record)))
    }

    fn record(&mut self, command: &str, inputs: Vec<String>, verdict: String) -> Record {
        Record {
            command: command.to_string(),
            inputs,
            output: verdict.clone(),
            verdict,
            provenance: None,
            witnesses: Value::Null,
            elapsed_ms: 0,
            status: Status::Ok,
        }
    }

    fn bind(&mut self, name: &str, b: Binding) -> Result<(), CommandError> {
        if !is_identifier(name) {
            return Err(syntax(format!("`{name}` is not a valid name")));
        }
        if self.bindings.contains_key(name) {
            return Err(CommandError::Redefined(name.to_string()));
        }
        self.bindings.insert(name.to_string(), b);
        Ok(())
    }

    fn ring(&self, name: &str) -> Result<&QuotientSuperRing, CommandError> {
        match self.bindings.get(name) {
            Some(Binding::Ring(q)) => Ok(q),
            Some(_) => Err(CommandError::WrongKind { name: name.to_string(), expected: "ring" }),
            None => Err(CommandError::Unbound(name.to_string())),
        }
    }

    fn morphism(&self, name: &str) -> Result<&Morphism, CommandError> {
        match self.bindings.get(name) {
            Some(Binding::Morphism(m)) => Ok(m),
            Some(_) => Err(CommandError::WrongKind { name: name.to_string(), expected: "morphism" }),
            None => Err(CommandError::Unbound(name.to_string())),
        }
    }

    fn current(&self) -> Result<&str, CommandError> {
        self.current_ring.as_deref().ok_or(CommandError::NoRing)
    }

    /// A bound element name or an expression over `ring`.
    fn element(&self, ring: &str, text: &str) -> Result<SuperElement, CommandError> {
        let text = text.trim();
        if let Some(Binding::Element { value, .. }) = self.bindings.get(text) {
            return Ok(value.clone());
        }
        Ok(self.ring(ring)?.parse_element(text)?)
    }

    /// `RING EXPR` with the ring name first.
    fn ring_and_expr<'a>(&self, rest: &'a str) -> Result<(&'a str, &'a str), CommandError> {
        let (r, e) = rest.split_once(char::is_whitespace).ok_or_else(|| syntax("expected RING EXPR"))?;
        Ok((r, e.trim()))
    }

    fn cmd_ring(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (name, def) = split_assignment(rest)?;
        let ring = parse_ring(def)?;
        self.bind(name, Binding::Ring(QuotientSuperRing::free(ring)))?;
        self.current_ring = Some(name.to_string());
        Ok(self.record("ring", vec![name.into(), def.into()], ring.to_string()))
    }

    fn cmd_quotient(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (name, def) = split_assignment(rest)?;
        let (base, gens) = def.split_once('/').ok_or_else(|| syntax("expected BASE / (g1, ...)"))?;
        let base = self.ring(base.trim())?.clone();
        let list = gens.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| syntax("generators go in parentheses"))?;
        let mut generators = base.ideal().generators().to_vec();
        for g in split_top(list, ',').into_iter().filter(|g| !g.trim().is_empty()) {
            generators.push(base.parse_element(g.trim())?);
        }
        let q = QuotientSuperRing::new(SuperIdeal::new(base.ring(), generators)?);
        let shown = describe(&q);
        self.bind(name, Binding::Ring(q))?;
        self.current_ring = Some(name.to_string());
        Ok(self.record("quotient", vec![name.into(), def.into()], shown))
    }

    fn cmd_elem(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (lhs, expr) = split_assignment(rest)?;
        let (name, ring) = match lhs.split_once(" in ") {
            Some((n, r)) => (n.trim(), r.trim().to_string()),
            None => (lhs, self.current()?.to_string()),
        };
        let value = self.ring(&ring)?.parse_element(expr)?;
        let shown = value.to_string();
        self.bind(name, Binding::Element { ring, value })?;
        Ok(self.record("elem", vec![name.into(), expr.into()], shown))
    }

    fn cmd_set(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (key, value) = rest.split_once('=').ok_or_else(|| syntax("expected set KEY=VALUE"))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || syntax(format!("bad value `{value}` for {key}"));
        let s = &mut self.settings;
        match key {
            "tol-abs" => s.tol.abs = value.parse().map_err(|_| bad())?,
            "tol-rel" => s.tol.rel = value.parse().map_err(|_| bad())?,
            "jet-order" => s.jet_order = value.parse().map_err(|_| bad())?,
            "seed" => s.seed = value.parse().map_err(|_| bad())?,
            "grid" => s.grid = value.parse().map_err(|_| bad())?,
            "box" => {
                let (lo, hi) = parse_range(value)?;
                s.bounds = Bounds::cube(lo, hi, 1);
            }
            _ => return Err(syntax(format!("unknown setting `{key}`"))),
        }
        Ok(self.record("set", vec![key.into(), value.into()], format!("{key} = {value}")))
    }

    fn cmd_print(&mut self, rest: &str) -> Result<Record, CommandError> {
        let shown = match self.bindings.get(rest) {
            Some(Binding::Ring(q)) => describe(q),
            Some(Binding::Element { value, .. }) => value.to_string(),
            Some(Binding::Morphism(m)) => m.to_string(),
            None => return Err(CommandError::Unbound(rest.to_string())),
        };
        Ok(self.record("print", vec![rest.into()], shown))
    }

    fn cmd_apply(&mut self, rest: &str) -> Result<Record, CommandError> {
        let mut words = rest.split_whitespace();
        let h = words.next().ok_or_else(|| syntax("expected apply H ARG..."))?;
        let args: Vec<&str> = words.collect();
        if args.is_empty() {
            return Err(syntax("apply needs at least one argument"));
        }
        let ring = match self.bindings.get(args[0]) {
            Some(Binding::Element { ring, .. }) => ring.clone(),
            _ => self.current()?.to_string(),
        };
        let values = args.iter().map(|a| self.element(&ring, a)).collect::<Result<Vec<_>, _>>()?;
        let f = match Func::from_name(h) {
            Some(f) => SmoothExpr::apply(f, (0..f.arity()).map(SmoothExpr::var).collect()),
            None => SmoothExpr::parse(h, args.len())?,
        };
        let out = self.ring(&ring)?.normal_form(&apply_smooth_with(&f, &values, Expansion::Full)?);
        let key = format!("apply {rest}");
        self.results.insert(key, out.to_string());
        let mut inputs = vec![h.to_string()];
        inputs.extend(args.iter().map(|a| a.to_string()));
        Ok(self.record("apply", inputs, out.to_string()))
    }

    fn cmd_nf(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (r, e) = self.ring_and_expr(rest)?;
        let q = self.ring(r)?;
        let out = q.normal_form(&self.element(r, e)?);
        let provenance = q.is_complete().then_some(Provenance::Exact);
        self.results.insert(e.to_string(), out.to_string());
        let mut rec = self.record("nf", vec![r.into(), e.into()], out.to_string());
        rec.provenance = provenance;
        Ok(rec)
    }

    fn cmd_member(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (r, e) = self.ring_and_expr(rest)?;
        let m = self.ring(r)?.membership(&self.element(r, e)?, &self.settings);
        let verdict = match &m {
            Membership::Member { .. } => "Member",
            Membership::NotMember { .. } => "NotMember",
            Membership::Unknown => "Unknown",
        };
        self.results.insert(format!("member {e}"), verdict.into());
        let mut rec = self.record("member", vec![r.into(), e.into()], verdict.into());
        rec.provenance = provenance_of_membership(&m);
        rec.witnesses = serde_json::to_value(&m).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_radical(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (r, e) = self.ring_and_expr(rest)?;
        let v = radical_membership(&self.element(r, e)?, self.ring(r)?.ideal(), &self.settings);
        let (verdict, provenance) = match &v {
            RadicalVerdict::In { provenance } => ("In", Some(*provenance)),
            RadicalVerdict::Out { provenance, .. } => ("Out", Some(*provenance)),
            RadicalVerdict::Unknown => ("Unknown", None),
        };
        self.results.insert(format!("radical {e}"), verdict.into());
        let mut rec = self.record("radical", vec![r.into(), e.into()], verdict.into());
        rec.provenance = provenance;
        rec.witnesses = serde_json::to_value(&v).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_split(&mut self, rest: &str) -> Result<Record, CommandError> {
        let v = is_split(self.ring(rest)?, &self.settings);
        let (verdict, provenance) = match &v {
            SplitVerdict::Split { provenance, .. } => ("Split", Some(*provenance)),
            SplitVerdict::NotSplit { provenance, .. } => ("NotSplit", Some(*provenance)),
            SplitVerdict::Unknown => ("Unknown", None),
        };
        self.results.insert("split".into(), verdict.into());
        let mut rec = self.record("split", vec![rest.into()], verdict.into());
        rec.provenance = provenance;
        rec.witnesses = serde_json::to_value(&v).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_superreduced(&mut self, rest: &str) -> Result<Record, CommandError> {
        let q = self.ring(rest)?;
        let v = is_cinfty_superreduced(q, &self.settings);
        let (verdict, provenance) = match &v {
            SuperreducedVerdict::Yes { provenance } => ("Yes", Some(*provenance)),
            SuperreducedVerdict::No { provenance, .. } => ("No", Some(*provenance)),
            SuperreducedVerdict::Unknown => ("Unknown", None),
        };
        let reduced = describe(&q.superreduced());
        self.results.insert("superreduced".into(), verdict.into());
        self.results.insert("reduced ring".into(), reduced.clone());
        let mut rec = self.record("superreduced", vec![rest.into()], format!("{verdict}; reduced ring {reduced}"));
        rec.verdict = verdict.into();
        rec.provenance = provenance;
        rec.witnesses = serde_json::to_value(&v).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_graded(&mut self, rest: &str) -> Result<Record, CommandError> {
        let gr = associated_graded(self.ring(rest)?);
        self.results.insert("graded".into(), gr.to_string());
        let mut rec = self.record("graded", vec![rest.into()], gr.to_string());
        rec.witnesses = serde_json::to_value(&gr).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_points(&mut self, rest: &str) -> Result<Record, CommandError> {
        let args: Vec<&str> = rest.split_whitespace().collect();
        let name = *args.first().ok_or_else(|| syntax("expected points RING"))?;
        let mut settings = self.settings.clone();
        if let Some(b) = option(&args, "box") {
            let (lo, hi) = parse_range(b)?;
            settings.bounds = Bounds::cube(lo, hi, 1);
        }
        if let Some(g) = option(&args, "grid") {
            settings.grid = g.parse().map_err(|_| syntax(format!("bad grid `{g}`")))?;
        }
        let points = self.ring(name)?.rpoints(&settings);
        let coords: Vec<&Vec<f64>> = points.iter().map(|p| &p.coords).collect();
        let list = serde_json::to_value(&coords).unwrap_or(Value::Null);
        self.results.insert(format!("points {name}"), points.len().to_string());
        let mut rec = self.record("points", args.iter().map(|a| a.to_string()).collect(), format!("{} points", points.len()));
        rec.output = list.to_string();
        rec.provenance = Some(Provenance::Sampled);
        rec.witnesses = list;
        self.point_sets.push((name.to_string(), points));
        Ok(rec)
    }

    fn cmd_psi(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (r, e) = self.ring_and_expr(rest)?;
        let v = psi_kernel_test(&self.element(r, e)?, self.ring(r)?, &self.settings);
        let (verdict, provenance) = match &v {
            PsiVerdict::Zero { provenance } => ("Zero", Some(*provenance)),
            PsiVerdict::NonZero { provenance, .. } => ("NonZero", Some(*provenance)),
            PsiVerdict::Unknown => ("Unknown", None),
        };
        self.results.insert(format!("psi {e}"), verdict.into());
        let mut rec = self.record("psi", vec![r.into(), e.into()], verdict.into());
        rec.provenance = provenance;
        rec.witnesses = serde_json::to_value(&v).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_fair(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (r, list) = self.ring_and_expr(rest)?;
        let list = list.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| syntax("probes go in brackets"))?;
        let probes = split_top(list, ',').into_iter().map(|p| self.element(r, p)).collect::<Result<Vec<_>, _>>()?;
        let report = fairfication(self.ring(r)?, &probes, &self.settings);
        let verdict = if report.fair_on_probes() { "fair" } else { "not fair" };
        self.results.insert(format!("fair {r}"), verdict.into());
        let mut rec = self.record("fair", vec![r.into(), list.into()], verdict.into());
        rec.provenance = Some(Provenance::Sampled);
        rec.witnesses = serde_json::to_value(&report).unwrap_or(Value::Null);
        Ok(rec)
    }

    fn cmd_axioms(&mut self, rest: &str) -> Result<Record, CommandError> {
        let args: Vec<&str> = rest.split_whitespace().collect();
        let name = *args.first().ok_or_else(|| syntax("expected axioms RING"))?;
        let ring = self.ring(name)?.ring();
        let trials = match option(&args, "trials") {
            Some(t) => t.parse().map_err(|_| syntax(format!("bad trials `{t}`")))?,
            None => 50,
        };
        let expansion = match option(&args, "expansion") {
            None | Some("full") => Expansion::Full,
            Some("first-order") => Expansion::FirstOrder,
            Some(other) => return Err(syntax(format!("unknown expansion `{other}`"))),
        };
        let seed = self.settings.seed;
        let reports = [
            check_projection_axiom(ring, trials, seed, expansion),
            check_composition_axiom(ring, trials, seed, expansion),
            check_ring_compatibility(ring, trials, seed, expansion),
        ];
        let passed = reports.iter().all(|r| r.passed());
        let verdict = if passed { "pass" } else { "FAIL" };
        let provenance = reports.iter().fold(Provenance::Exact, |p, r| p.and(r.provenance()));
        let key = match expansion {
            Expansion::Full => format!("axioms {name}"),
            Expansion::FirstOrder => format!("axioms {name} first-order"),
        };
        self.results.insert(key, verdict.into());
        let mut rec = self.record("axioms", args.iter().map(|a| a.to_string()).collect(), verdict.into());
        rec.provenance = Some(provenance);
        rec.witnesses = serde_json::to_value(&reports).unwrap_or(Value::Null);
        rec.status = if passed { Status::Ok } else { Status::Fail };
        Ok(rec)
    }

    fn cmd_morph(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (head, images) = split_assignment(rest)?;
        let (name, arrow) = head.split_once(':').ok_or_else(|| syntax("expected morph NAME : DOM -> COD = images"))?;
        let (dom, cod) = arrow.split_once("->").ok_or_else(|| syntax("expected DOM -> COD"))?;
        let (dom, cod) = (self.ring(dom.trim())?.clone(), self.ring(cod.trim())?.clone());
        let images: Vec<&str> = split_top(images, ',').into_iter().map(str::trim).filter(|s| !s.is_empty()).collect();
        let p = dom.ring().p;
        if images.len() != p + dom.ring().q {
            return Err(syntax(format!("expected {} images, got {}", p + dom.ring().q, images.len())));
        }
        let phi = Morphism::parse(dom, cod, &images[..p], &images[p..], &self.settings)?;
        let shown = phi.to_string();
        let mut rec = self.record("morph", vec![name.trim().into(), images.join(", ")], shown);
        rec.provenance = Some(phi.provenance());
        rec.witnesses = serde_json::to_value(phi.summary()).unwrap_or(Value::Null);
        self.bind(name.trim(), Binding::Morphism(Box::new(phi)))?;
        Ok(rec)
    }

    fn cmd_map(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (m, e) = self.ring_and_expr(rest)?;
        let phi = self.morphism(m)?;
        let a = match self.bindings.get(e) {
            Some(Binding::Element { value, .. }) => value.clone(),
            _ => phi.domain().parse_element(e)?,
        };
        let out = phi.apply(&a)?;
        self.results.insert(format!("map {m} {e}"), out.to_string());
        Ok(self.record("map", vec![m.into(), e.into()], out.to_string()))
    }

    fn cmd_coproduct(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (name, def) = split_assignment(rest)?;
        let (a, b) = def.split_once('+').ok_or_else(|| syntax("expected coproduct NAME = A + B"))?;
        let c = coproduct(self.ring(a.trim())?, self.ring(b.trim())?, &self.settings)?;
        let shown = describe(&c.ring);
        let mut rec = self.record("coproduct", vec![name.into(), def.into()], shown);
        rec.witnesses = json!({ "alpha": c.alpha.summary(), "beta": c.beta.summary() });
        self.bind(name, Binding::Ring(c.ring))?;
        self.current_ring = Some(name.to_string());
        Ok(rec)
    }

    fn cmd_check(&mut self, rest: &str) -> Result<Record, CommandError> {
        let (key, expected) = rest.split_once("==").ok_or_else(|| syntax("expected check KEY == VALUE"))?;
        let (key, expected) = (key.trim(), expected.trim());
        let actual = self.results.get(key).cloned();
        let ok = actual.as_deref() == Some(expected);
        let mut rec = self.record("check", vec![key.into(), expected.into()], if ok { "pass".into() } else { "FAIL".into() });
        rec.witnesses = json!({ "expected": expected, "actual": actual });
        rec.status = if ok { Status::Ok } else { Status::Fail };
        if !ok {
            rec.output = format!("FAIL: {key} is {}, expected {expected}", actual.as_deref().unwrap_or("undefined"));
        }
        Ok(rec)
    }
}

fn describe(q: &QuotientSuperRing) -> String {
    let gens: Vec<String> = q.ideal().generators().iter().map(|g| g.to_string()).collect();
    if gens.is_empty() {
        q.ring().to_string()
    } else {
        format!("{}/({})", q.ring(), gens.join(", "))
    }
}
