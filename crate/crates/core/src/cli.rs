//! Command-line front end. Everything here is pure: [`run`] takes argv and
//! returns the exit code with the text for stdout and stderr, so the binary
//! and the tests share one code path.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{validate, BallRecord, FacetedBall};
use crate::engine::{build, dual_link_check, Build};
use crate::error::{Error, Result};
use crate::generators::random_instances;
use crate::heegaard::heegaard_report;
use crate::invariants::{h1, pi1, AbelianInvariants};
use crate::pairing::{attach_multipliers, edge_cycles, validate_pairing, FacePairing, Instance, InstanceRecord};
use crate::surgery::{
    attach_scallops, connected_sum, connected_sum_via_bridge, h1_from_link, lens_from_multipliers, multipliers_from_lens,
    reflection_link, rolfsen_twist, scallop, simplify, slam_dunk, FramedLink, ReflectionDiagram,
};

pub const DEFAULT_CAP: usize = 4000;

#[derive(Parser, Debug)]
#[command(name = "bitwist", version, about = "Bitwisted face-pairing 3-manifolds")]
pub struct Cli {
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Compare the JSON report with FILE; exit 1 when they differ.
    #[arg(long, global = true, value_name = "FILE")]
    pub golden: Option<PathBuf>,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Size cap (darts) for the vertex-link isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a ball, pairing and multiplier map.
    Validate { file: PathBuf },
    /// Edge cycles of a face-pairing with their traces.
    Cycles { file: PathBuf },
    /// Subdivide, bitwist, take the quotient and certify it.
    Build { file: PathBuf },
    /// Fundamental group presentation and first homology.
    Invariants { file: PathBuf },
    /// Edge-pairing surface, meridian systems and cylinders.
    Heegaard { file: PathBuf },
    /// Lens space parameters from p/q or from scallop multipliers.
    Lens {
        #[arg(long, value_name = "P/Q", conflicts_with = "multipliers", required_unless_present = "multipliers")]
        pq: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        multipliers: Option<Vec<i64>>,
    },
    /// Framed link operations.
    Surgery {
        #[command(subcommand)]
        action: SurgeryAction,
    },
    /// Connected sum of two instances along an edge of each.
    Consum {
        first: PathBuf,
        first_edge: String,
        second: PathBuf,
        second_edge: String,
        /// Join through the two-face bridge ball instead of directly.
        #[arg(long)]
        bridge: bool,
    },
    /// Change framings of edge cycles, attaching scallops where needed.
    Reframe {
        file: PathBuf,
        #[arg(long = "alpha", value_name = "EDGE=P/Q", required = true)]
        alpha: Vec<String>,
    },
    /// Builds random instances from the seed and checks each one.
    Sweep {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurgeryAction {
    /// Slam-dunk meridians and clear +-1/t edge components.
    Simplify { file: PathBuf },
    /// First homology from the linking matrix.
    H1 { file: PathBuf },
    /// Rolfsen twist about an unknotted component.
    Twist {
        file: PathBuf,
        #[arg(long)]
        component: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Slam-dunk a meridian component.
    SlamDunk {
        file: PathBuf,
        #[arg(long)]
        component: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub subcommand: String,
    pub input_digest: String,
    pub result: Value,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Short human summary: one line per top-level result field.
    pub fn summary(&self) -> String {
        let mut out = format!("{} ({})\n", self.subcommand, &self.input_digest[..12]);
        if let Value::Object(m) = &self.result {
            for (k, v) in m {
                let text = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {text}\n"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<RunReport>,
}

/// Hashes every input in order; files by content, other arguments by text.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        self.add(&text);
        Ok(text)
    }

    fn add(&mut self, s: &str) {
        self.hasher.update((s.len() as u64).to_le_bytes());
        self.hasher.update(s.as_bytes());
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads an instance, or a reflection diagram (a disk with `labels`),
/// which is doubled into its reflection instance.
pub fn load_instance(text: &str) -> Result<Instance> {
    let v = parse_json(text)?;
    if v.get("pairing").is_none() && v.get("labels").is_some() {
        return ReflectionDiagram::from_json(text)?.instance();
    }
    Instance::from_json(text)
}

fn h1_of(b: &Build) -> AbelianInvariants {
    h1(&pi1(&b.quotient))
}

fn certified(inst: &Instance) -> Result<Build> {
    let b = build(inst)?;
    if !b.certificate.pass {
        return Err(Error::Quotient(b.certificate.reasons.join("; ")));
    }
    Ok(b)
}

fn validate_text(text: &str) -> Result<Value> {
    let v = parse_json(text)?;
    if v.get("pairing").is_none() {
        let rec: BallRecord = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        let ball = FacetedBall::from_record(&rec)?;
        let r = validate(&ball);
        return Ok(json!({ "valid": r.is_ok(), "ball": r.violations }));
    }
    let rec: InstanceRecord = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    let ball = FacetedBall::from_record(&rec.ball)?;
    let ball_report = validate(&ball);
    let pairing = FacePairing::from_records(ball, &rec.pairing)?;
    let pairing_report = validate_pairing(&pairing);
    let mut multipliers = Vec::new();
    let mut cycles = Vec::new();
    if pairing_report.is_ok() {
        let c = edge_cycles(&pairing);
        cycles = c.cycles.iter().map(|c| c.rep.clone()).collect();
        if let Err(e) = attach_multipliers(&pairing.base, &c, &rec.multipliers) {
            multipliers.push(e.to_string());
        }
    }
    let valid = ball_report.is_ok() && pairing_report.is_ok() && multipliers.is_empty();
    Ok(json!({
        "valid": valid,
        "ball": ball_report.violations,
        "pairing": pairing_report.violations,
        "multipliers": multipliers,
        "cycles": cycles,
    }))
}

pub fn cycles_report(inst: &Instance) -> Value {
    let cycles: Vec<Value> = inst
        .cycles
        .cycles
        .iter()
        .map(|c| {
            json!({
                "rep": c.rep,
                "length": c.len(),
                "edges": c.edges.iter().map(|&e| inst.ball().edges[e].id.clone()).collect::<Vec<_>>(),
                "multiplier": inst.mul.of_edge(c.edges[0]),
                "trace": c.trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "lengths": inst.cycles.lengths(), "cycles": cycles })
}

pub fn build_report(inst: &Instance, cap: usize) -> Result<Value> {
    let b = build(inst)?;
    let (v, e, f, c3) = b.quotient.cell_vector();
    let (sv, se, sf) = b.sub.cell_counts();
    let traces: Vec<Value> = b
        .quotient
        .edge_orbits
        .iter()
        .map(|o| {
            json!({
                "edges": o.edges.len(),
                "hops": o.trace.len(),
                "trace": o.trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "cycle_lengths": inst.cycles.lengths(),
        "subdivided": { "v": sv, "e": se, "f": sf, "stickers": b.sub.stickers() },
        "cells": { "v": v, "e": e, "f": f, "c3": c3 },
        "euler": b.certificate.euler,
        "certificate": to_value(&b.certificate),
        "edge_orbit_traces": traces,
        "dual_link": to_value(&dual_link_check(inst, cap)?),
    }))
}

pub fn invariants_report(inst: &Instance) -> Result<Value> {
    let b = build(inst)?;
    let p = pi1(&b.quotient);
    let r = p.reduced();
    let h = h1(&p);
    Ok(json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(|w| p.word_string(w)).collect::<Vec<_>>(),
        "reduced": r.relators.iter().map(|w| r.word_string(w)).collect::<Vec<_>>(),
        "h1": h.to_string(),
        "h1_invariants": to_value(&h),
        "euler": b.certificate.euler,
    }))
}

pub fn lens_report(pq: Option<&str>, m: Option<&[i64]>) -> Result<Value> {
    let params = match (pq, m) {
        (Some(pq), _) => {
            let x: BigRational = pq.trim().parse().map_err(|_| Error::Parse(format!("bad fraction {pq:?}")))?;
            let to = |v: &num_bigint::BigInt| i64::try_from(v).map_err(|_| Error::Lens("value out of range".into()));
            let forward = multipliers_from_lens(to(x.numer())?, to(x.denom())?)?;
            lens_from_multipliers(&forward.m)?
        }
        (None, Some(m)) => lens_from_multipliers(m)?,
        (None, None) => return Err(Error::Input("give --pq or --multipliers".into())),
    };
    let d = scallop(&params.m)?;
    let engine = h1_of(&certified(&d.instance()?)?);
    let (link, moves) = simplify(&reflection_link(&d, 1)?)?;
    let via_link = h1_from_link(&link)?;
    Ok(json!({
        "p": params.p,
        "q": params.q,
        "pq": format!("{}/{}", params.p, params.q),
        "entries": params.a,
        "multipliers": params.m,
        "engine_h1": engine.to_string(),
        "link_h1": via_link.to_string(),
        "simplified_link": to_value(&link),
        "moves": moves,
    }))
}

fn surgery_report(action: &SurgeryAction, inputs: &mut Inputs) -> Result<(String, Value)> {
    let load = |inputs: &mut Inputs, file: &Path| -> Result<FramedLink> { FramedLink::from_json(&inputs.read(file)?) };
    Ok(match action {
        SurgeryAction::Simplify { file } => {
            let l = load(inputs, file)?;
            let (out, moves) = simplify(&l)?;
            let h = h1_from_link(&out)?;
            ("surgery simplify".into(), json!({ "link": to_value(&out), "moves": moves, "h1": h.to_string() }))
        }
        SurgeryAction::H1 { file } => {
            let l = load(inputs, file)?;
            let h = h1_from_link(&l)?;
            ("surgery h1".into(), json!({ "h1": h.to_string(), "h1_invariants": to_value(&h) }))
        }
        SurgeryAction::Twist { file, component, n } => {
            let l = load(inputs, file)?;
            inputs.add(&format!("{component} {n}"));
            let out = rolfsen_twist(&l, component, *n)?;
            let h = if out.framings_only { None } else { Some(h1_from_link(&out.without_infinite())?.to_string()) };
            ("surgery twist".into(), json!({ "link": to_value(&out), "h1": h }))
        }
        SurgeryAction::SlamDunk { file, component } => {
            let l = load(inputs, file)?;
            inputs.add(component);
            let out = slam_dunk(&l, component)?;
            let h = h1_from_link(&out.without_infinite())?;
            ("surgery slam-dunk".into(), json!({ "link": to_value(&out), "h1": h.to_string() }))
        }
    })
}

pub fn consum_report(a: &Instance, ea: &str, b: &Instance, eb: &str, via_bridge: bool) -> Result<Value> {
    let s = if via_bridge { connected_sum_via_bridge(a, ea, b, eb)? } else { connected_sum(a, ea, b, eb)? };
    let bs = build(&s)?;
    let (ha, hb) = (h1_of(&certified(a)?), h1_of(&certified(b)?));
    let h = h1_of(&bs);
    let ball = s.ball();
    Ok(json!({
        "faces": ball.faces.len(),
        "edges": ball.edges.len(),
        "vertices": ball.vertices.len(),
        "cycle_lengths": s.cycles.lengths(),
        "certificate": to_value(&bs.certificate),
        "h1": h.to_string(),
        "summands": [ha.to_string(), hb.to_string()],
        "additive": h == ha.sum(&hb),
    }))
}

pub fn parse_alpha(items: &[String]) -> Result<BTreeMap<String, BigRational>> {
    let mut out = BTreeMap::new();
    for it in items {
        let (k, v) = it.split_once('=').ok_or_else(|| Error::Parse(format!("expected EDGE=P/Q, got {it:?}")))?;
        let x: BigRational = v.trim().parse().map_err(|_| Error::Parse(format!("bad fraction {v:?}")))?;
        out.insert(k.trim().to_string(), x);
    }
    Ok(out)
}

pub fn reframe_report(inst: &Instance, alpha: &BTreeMap<String, BigRational>) -> Result<Value> {
    let r = attach_scallops(&inst.pairing, alpha)?;
    let b = build(&r.instance)?;
    Ok(json!({
        "steps": to_value(&r.steps),
        "faces": r.instance.ball().faces.len(),
        "cycle_lengths": r.instance.cycles.lengths(),
        "certificate": to_value(&b.certificate),
        "h1": h1_of(&b).to_string(),
    }))
}

fn sweep_report(seed: u64, count: usize, bound: i64) -> Result<Value> {
    let mut failures = Vec::new();
    let mut winding_ok = 0;
    for (i, inst) in random_instances(seed, count, bound).iter().enumerate() {
        let b = build(inst)?;
        if !b.certificate.pass {
            failures.push(format!("instance {i}: {}", b.certificate.reasons.join("; ")));
            continue;
        }
        let h = heegaard_report(&b)?;
        if h.cylinders.iter().all(|c| c.winding == Some(c.multiplier)) && h.genus == inst.pairing.pairs.len() {
            winding_ok += 1;
        } else {
            failures.push(format!("instance {i}: cylinder windings or genus off"));
        }
    }
    Ok(json!({ "count": count, "certified_and_wound": winding_ok, "failures": failures }))
}

fn dispatch(cli: &Cli) -> Result<RunReport> {
    let mut inputs = Inputs::new();
    let (name, result): (String, Value) = match &cli.command {
        Command::Validate { file } => ("validate".into(), validate_text(&inputs.read(file)?)?),
        Command::Cycles { file } => ("cycles".into(), cycles_report(&load_instance(&inputs.read(file)?)?)),
        Command::Build { file } => {
            let inst = load_instance(&inputs.read(file)?)?;
            inputs.add(&format!("cap={}", cli.cap));
            ("build".into(), build_report(&inst, cli.cap)?)
        }
        Command::Invariants { file } => ("invariants".into(), invariants_report(&load_instance(&inputs.read(file)?)?)?),
        Command::Heegaard { file } => {
            let b = build(&load_instance(&inputs.read(file)?)?)?;
            ("heegaard".into(), to_value(&heegaard_report(&b)?))
        }
        Command::Lens { pq, multipliers } => {
            inputs.add(&format!("pq={pq:?} m={multipliers:?}"));
            ("lens".into(), lens_report(pq.as_deref(), multipliers.as_deref())?)
        }
        Command::Surgery { action } => surgery_report(action, &mut inputs)?,
        Command::Consum { first, first_edge, second, second_edge, bridge } => {
            let a = load_instance(&inputs.read(first)?)?;
            let b = load_instance(&inputs.read(second)?)?;
            inputs.add(&format!("{first_edge} {second_edge} bridge={bridge}"));
            ("consum".into(), consum_report(&a, first_edge, &b, second_edge, *bridge)?)
        }
        Command::Reframe { file, alpha } => {
            let inst = load_instance(&inputs.read(file)?)?;
            for a in alpha {
                inputs.add(a);
            }
            ("reframe".into(), reframe_report(&inst, &parse_alpha(alpha)?)?)
        }
        Command::Sweep { count, bound } => {
            inputs.add(&format!("seed={} count={count} bound={bound}", cli.seed));
            ("sweep".into(), sweep_report(cli.seed, *count, *bound)?)
        }
    };
    Ok(RunReport {
        version: format!("bitwist {}", env!("CARGO_PKG_VERSION")),
        subcommand: name,
        input_digest: inputs.digest(),
        result,
    })
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// First differing line between a golden file and fresh output.
fn first_difference(expected: &str, actual: &str) -> Option<usize> {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.trim_end().lines().collect(), actual.trim_end().lines().collect());
    (0..e.len().max(a.len())).find(|&i| e.get(i) != a.get(i)).map(|i| i + 1)
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), ..Outcome::default() };
            }
            let text = e.to_string();
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("bad arguments");
            return Outcome { code: 2, stderr: format!("{}\n", one_line(first)), ..Outcome::default() };
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => return Outcome { code: 2, stderr: format!("error: {}\n", one_line(&e.to_string())), ..Outcome::default() },
    };
    let text = report.to_json();
    let stdout = if cli.json { text.clone() } else { report.summary() };
    let mut out = Outcome { code: 0, stdout, stderr: String::new(), report: Some(report) };
    if let Some(path) = &cli.golden {
        match fs::read_to_string(path) {
            Err(e) => {
                out.code = 2;
                out.stderr = format!("error: {}: {}\n", path.display(), one_line(&e.to_string()));
            }
            Ok(expected) => {
                if let Some(line) = first_difference(&expected, &text) {
                    out.code = 1;
                    out.stderr = format!("golden mismatch: {} differs at line {line}\n", path.display());
                }
            }
        }
    }
    if out.code == 0 {
        if let Some(r) = &out.report {
            if r.subcommand == "validate" && r.result["valid"] == Value::Bool(false) {
                out.code = 2;
                out.stderr = "error: input is not valid (see report)\n".into();
            }
        }
    }
    out
}
