//! `spets`: batch driver for the identity checks in `spets-core`.
//!
//! Every subcommand expands a parameter grid, runs one check per grid point
//! in parallel and prints one record per point, in grid order.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use spets_core::arith::{divisors, find_split_q, is_prime, pow_u64, val};
use spets_core::error::Error;
use spets_core::monomial::check_reflection_stabilizers;
use spets_core::owc::{clark_ewing_check, owc_check_aguade, owc_check_gerl, OwcReport};
use spets_core::partition::{core_tower_decompose, core_tower_reconstruct, multipartitions};
use spets_core::reflection::{irr_spectrum, sylow_check, GroupDescriptor, AGUADE_INDICES};
use spets_core::tables::{bad_prime_table, g12_a1_record, verify_family_tables, z_from_degrees, StLabel};
use spets_core::torus::{centralizer_shape, class_shapes, ws_phis, valuation_identity};
use spets_core::weights::{awc_check, level_census, wreath_irr0, wreath_irr0_oracle};

const SCHEMA: u64 = 1;

#[derive(Parser)]
#[command(name = "spets", version, about = "Exact checks of weight and defect counting identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Enumeration cap (torus vectors, class shapes).
    #[arg(long, default_value_t = 1_000_000, global = true)]
    cap: u64,
    /// Treat skipped records as failures.
    #[arg(long, global = true)]
    strict: bool,
    /// Accept a grid that expands to no records.
    #[arg(long, global = true)]
    allow_empty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Clone, Default)]
struct Grid {
    #[arg(long, value_delimiter = ',')]
    e: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    ell: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Weight count of the G(e,r,n) fusion system against |Irr(G(e,r,n))|.
    Awc(Grid),
    /// Per-defect weight counts against local class sums.
    Owc {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        /// Aguadé group indices.
        #[arg(long, value_delimiter = ',')]
        index: Option<Vec<u32>>,
    },
    /// Sylow ℓ-order of G(e,r,n) spetses, structural against polynomial.
    Sylow(Grid),
    /// Embedded family tables and bad primes.
    Tables,
    /// Class shapes, centraliser cosets, the valuation identity and torus stabilisers.
    Centralizers(Grid),
    /// Oracle and property suites.
    Selftest {
        #[arg(long, value_delimiter = ',')]
        suite: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    All,
    Gerl,
    Aguade,
    ClarkEwing,
}

struct UsageError(String);

type Job = Box<dyn Fn() -> Value + Send + Sync>;

fn record(command: &str, identity: &str, params: Value, result: Result<Value, Error>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("identity".into(), json!(identity));
    m.insert("params".into(), params);
    match result {
        Ok(Value::Object(body)) => {
            let pass = body.get("pass").and_then(Value::as_bool).unwrap_or(false);
            m.insert("status".into(), json!(if pass { "pass" } else { "fail" }));
            for (k, v) in body {
                m.insert(k, v);
            }
            m.insert("pass".into(), json!(pass));
        }
        Ok(other) => {
            m.insert("status".into(), json!("fail"));
            m.insert("result".into(), other);
            m.insert("pass".into(), json!(false));
        }
        Err(Error::CapExceeded { what, needed, cap }) => {
            m.insert("status".into(), json!("skipped"));
            m.insert("reason".into(), json!(format!("{what}: {needed} exceeds cap {cap}")));
            m.insert("pass".into(), json!(false));
        }
        Err(e) => {
            m.insert("status".into(), json!("fail"));
            m.insert("error".into(), json!(e.to_string()));
            m.insert("pass".into(), json!(false));
        }
    }
    Value::Object(m)
}

fn to_value<T: serde::Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("serialisable report")
}

fn check_primes(ells: &[u64]) -> Result<(), UsageError> {
    if let Some(&p) = ells.iter().find(|&&p| !is_prime(p)) {
        return Err(UsageError(format!("ell = {p} is not prime")));
    }
    if ells.contains(&2) {
        return Err(UsageError("ell = 2 is outside the supported range".into()));
    }
    Ok(())
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

/// (e, r, n, ℓ) with r | e | ℓ − 1, in lexicographic order of (ℓ, e, r, n).
fn ern_grid(g: &Grid, default_e: &[u64], default_n: &[u64], default_ell: &[u64]) -> Result<Vec<(u64, u64, u64, u64)>, UsageError> {
    let es = sorted(g.e.clone().unwrap_or_else(|| default_e.to_vec()));
    let ns = sorted(g.n.clone().unwrap_or_else(|| default_n.to_vec()));
    let ells = sorted(g.ell.clone().unwrap_or_else(|| default_ell.to_vec()));
    check_primes(&ells)?;
    if es.contains(&0) {
        return Err(UsageError("e must be positive".into()));
    }
    let mut out = Vec::new();
    for &ell in &ells {
        for &e in &es {
            if (ell - 1) % e != 0 {
                continue;
            }
            let rs = match &g.r {
                Some(rs) => sorted(rs.clone()).into_iter().filter(|&r| r > 0 && e % r == 0).collect(),
                None => divisors(e),
            };
            for r in rs {
                for &n in &ns {
                    out.push((e, r, n, ell));
                }
            }
        }
    }
    Ok(out)
}

fn awc_jobs(g: &Grid) -> Result<Vec<Job>, UsageError> {
    let grid = ern_grid(g, &[1, 2, 3, 4, 6], &[1, 2, 3, 4, 5, 6], &[3, 5, 7, 13])?;
    Ok(grid
        .into_iter()
        .map(|(e, r, n, ell)| -> Job {
            Box::new(move || {
                record(
                    "awc",
                    "weight count of the G(e,r,n) fusion system equals |Irr(G(e,r,n))|",
                    json!({"e": e, "r": r, "n": n, "ell": ell}),
                    awc_check(e, r, n as u32, ell).map(to_value),
                )
            })
        })
        .collect())
}

fn owc_value(rep: OwcReport) -> Value {
    to_value(rep)
}

fn owc_jobs(g: &Grid, family: Family, index: &Option<Vec<u32>>) -> Result<Vec<Job>, UsageError> {
    let mut jobs: Vec<Job> = Vec::new();
    let explicit = g.e.is_some() || g.ell.is_some() || g.r.is_some() || g.a.is_some();
    if matches!(family, Family::All | Family::Gerl) {
        let default: Vec<(u64, u64, u64, u32)> = vec![
            (2, 1, 3, 1),
            (2, 2, 3, 1),
            (2, 1, 3, 2),
            (2, 2, 3, 2),
            (4, 1, 5, 1),
            (4, 2, 5, 1),
            (4, 4, 5, 1),
            (2, 1, 5, 1),
        ];
        let points = if explicit {
            let a_list = g.a.clone().unwrap_or_else(|| vec![1]);
            let base = ern_grid(&Grid { n: Some(vec![0]), ..g.clone() }, &[2, 4], &[0], &[3, 5])?;
            let mut pts = Vec::new();
            for (e, r, _, ell) in base {
                if e < 2 {
                    continue;
                }
                for &a in &a_list {
                    pts.push((e, r, ell, a));
                }
            }
            pts
        } else {
            default
        };
        for (e, r, ell, a) in points {
            jobs.push(Box::new(move || {
                record(
                    "owc",
                    "per-defect weight count of G(e,r,ell) equals the sum over ell-element classes",
                    json!({"family": "gerl", "e": e, "r": r, "ell": ell, "a": a}),
                    owc_check_gerl(e, r, ell, a, u64::MAX).map(owc_value),
                )
            }));
        }
    }
    if matches!(family, Family::All | Family::Aguade) {
        let idx = index.clone().unwrap_or_else(|| AGUADE_INDICES.to_vec());
        let a_list = g.a.clone().unwrap_or_else(|| vec![1, 2]);
        for i in idx {
            if !AGUADE_INDICES.contains(&i) {
                return Err(UsageError(format!("G{i} is not an Aguadé group")));
            }
            for &a in &a_list {
                if i == 12 && a == 1 {
                    continue;
                }
                jobs.push(Box::new(move || {
                    record(
                        "owc",
                        "per-defect weight count of an Aguade group exceeds the class sum by ell at defect 2",
                        json!({"family": "aguade", "index": i, "a": a}),
                        owc_check_aguade(i, a).map(owc_value),
                    )
                }));
            }
        }
    }
    if matches!(family, Family::All | Family::ClarkEwing) {
        let grid = ern_grid(g, &[1, 2, 3, 4, 6], &[1, 2, 3, 4], &[5, 7, 13])?;
        let a_list = g.a.clone().unwrap_or_else(|| vec![1]);
        for (e, r, n, ell) in grid {
            let order = pow_u64(e, n as u32) as u128 * (1..=n as u128).product::<u128>() / r as u128;
            if n == 0 || val((1..=n as u128).product::<u128>(), ell) != 0 || order > 10_000 {
                continue;
            }
            for &a in &a_list {
                jobs.push(Box::new(move || {
                    record(
                        "owc",
                        "with abelian Sylow subgroup, Irr of the torus normaliser equals the sum over torus classes",
                        json!({"family": "clark_ewing", "e": e, "r": r, "n": n, "ell": ell, "a": a}),
                        clark_ewing_check(e, r, n as usize, ell, a, u64::MAX).map(owc_value),
                    )
                }));
            }
        }
    }
    Ok(jobs)
}

fn sylow_jobs(g: &Grid) -> Result<Vec<Job>, UsageError> {
    let grid = ern_grid(g, &[1, 2, 3, 4, 6], &[1, 2, 3, 4, 5, 6], &[3, 5, 7, 13])?;
    let qs = sorted(g.q.clone().unwrap_or_else(|| vec![2, 3, 4, 7, 19]));
    if qs.iter().any(|&q| q < 2) {
        return Err(UsageError("q must be at least 2".into()));
    }
    let mut jobs: Vec<Job> = Vec::new();
    for (e, r, n, ell) in grid {
        for &q in &qs {
            if q % ell == 0 || n == 0 {
                continue;
            }
            jobs.push(Box::new(move || {
                record(
                    "sylow",
                    "Sylow order from torus rank and relative Weyl group equals the l-part of the order polynomial",
                    json!({"e": e, "r": r, "n": n, "ell": ell, "q": q}),
                    sylow_check(e, r, n, ell, q).map(to_value),
                )
            }));
        }
    }
    Ok(jobs)
}

fn tables_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![
        Box::new(|| {
            record(
                "tables",
                "z-values of the embedded family tables sum to |Irr(W)| (plus one for Aguade groups)",
                json!({"table": "families"}),
                verify_family_tables().map(to_value),
            )
        }),
        Box::new(|| {
            record(
                "tables",
                "G12 at a = 1: weights from S, V1, V2 sum to |Irr(W)| + 1",
                json!({"table": "g12_a1"}),
                g12_a1_record().map(|rec| {
                    let sum: u64 = rec.rows.iter().map(|r| r.z).sum();
                    json!({"z_sum": sum, "irr_total": rec.irr_total, "pass": sum == rec.irr_total + 1})
                }),
            )
        }),
    ];
    let cases: Vec<(StLabel, u64, bool)> = vec![
        (StLabel::Imprimitive { e: 6, r: 6, n: 2 }, 3, true),
        (StLabel::Exceptional(37), 5, true),
        (StLabel::Exceptional(24), 2, true),
        (StLabel::Imprimitive { e: 2, r: 1, n: 4 }, 3, false),
    ];
    for (label, ell, expected) in cases {
        jobs.push(Box::new(move || {
            let bad = bad_prime_table(&label, ell);
            record(
                "tables",
                "bad-prime lookup",
                json!({"group": to_value(label), "ell": ell}),
                Ok(json!({"bad": bad, "expected": expected, "pass": bad == expected})),
            )
        }));
    }
    jobs
}

fn centralizer_jobs(g: &Grid, cap: u64) -> Result<Vec<Job>, UsageError> {
    let es = sorted(g.e.clone().unwrap_or_else(|| vec![1, 2, 4]));
    let ns = sorted(g.n.clone().unwrap_or_else(|| (1..=8).collect()));
    let ells = sorted(g.ell.clone().unwrap_or_else(|| vec![3, 5]));
    let a_list: Vec<u32> = {
        let mut v = g.a.clone().unwrap_or_else(|| vec![1, 2]);
        v.sort_unstable();
        v.dedup();
        v
    };
    check_primes(&ells)?;
    let mut jobs: Vec<Job> = Vec::new();
    for &ell in &ells {
        for &e in &es {
            if e == 0 || (ell - 1) % e != 0 {
                continue;
            }
            for &n in &ns {
                if e * n > 8 || n == 0 {
                    continue;
                }
                for &a in &a_list {
                    let q_given = g.q.clone();
                    jobs.push(Box::new(move || {
                        record(
                            "centralizers",
                            "l-part of the ambient centraliser order equals the l-part of the centraliser coset order polynomial",
                            json!({"e": e, "n": n, "ell": ell, "a": a}),
                            centralizer_point(e, n, ell, a, q_given.as_deref(), cap as u128),
                        )
                    }));
                }
            }
        }
    }
    // Stabiliser reflection property on small groups at a = 1.
    for &ell in &ells {
        for &e in &es {
            if e == 0 || (ell - 1) % e != 0 {
                continue;
            }
            for r in divisors(e) {
                for &n in &ns {
                    let order = pow_u64(e, n as u32) as u128 * (1..=n as u128).product::<u128>() / r as u128;
                    if order > 10_000 || pow_u64(ell, n as u32) > cap {
                        continue;
                    }
                    jobs.push(Box::new(move || {
                        record(
                            "centralizers",
                            "torus stabilisers in G(e,r,n) are generated by reflections",
                            json!({"e": e, "r": r, "n": n, "ell": ell, "a": 1, "kind": "stabilizers"}),
                            check_reflection_stabilizers(e, r, n as usize, ell, 1, cap).map(to_value),
                        )
                    }));
                }
            }
        }
    }
    Ok(jobs)
}

fn centralizer_point(e: u64, n: u64, ell: u64, a: u32, qs: Option<&[u64]>, cap: u128) -> Result<Value, Error> {
    let q = match qs {
        Some(list) => *list
            .iter()
            .find(|&&q| q % ell == 1 && val((q - 1) as u128, ell) == a)
            .ok_or_else(|| Error::InvalidParams(format!("no q in the list with valuation {a} at {ell}")))?,
        None => find_split_q(ell, a).ok_or_else(|| Error::InvalidParams("no split q".into()))?,
    };
    let shapes = class_shapes(e, ell, a, n, cap)?;
    let mut failures = Vec::new();
    for (shape, _) in &shapes {
        centralizer_shape(shape)?;
        ws_phis(shape, 1)?;
        let v = valuation_identity(shape, q)?;
        if !v.equal {
            failures.push(to_value(&v));
        }
    }
    let ambient_total: u128 = shapes.iter().map(|(_, c)| c).sum();
    Ok(json!({
        "q": q,
        "shapes": shapes.len(),
        "ambient_classes": ambient_total.to_string(),
        "failures": failures,
        "pass": failures.is_empty(),
    }))
}

fn selftest_jobs(suites: &Option<Vec<String>>) -> Result<Vec<Job>, UsageError> {
    const ALL: [&str; 6] = ["level_census", "wreath", "core_tower", "positive_defect", "tables", "irr_totals"];
    let chosen: Vec<String> = match suites {
        Some(s) => {
            if let Some(bad) = s.iter().find(|x| !ALL.contains(&x.as_str())) {
                return Err(UsageError(format!("unknown suite {bad}; expected one of {ALL:?}")));
            }
            s.clone()
        }
        None => ALL.iter().map(|s| s.to_string()).collect(),
    };
    let mut jobs: Vec<Job> = Vec::new();
    for s in chosen {
        match s.as_str() {
            "level_census" => jobs.push(Box::new(|| {
                let mut bad = Vec::new();
                for ell in [3u64, 5, 7] {
                    for d in 0..=4 {
                        if level_census(ell, d) != pow_u64(ell, d) {
                            bad.push(json!({"ell": ell, "d": d}));
                        }
                    }
                }
                record("selftest", "level census equals ell^d", json!({"suite": "level_census"}),
                    Ok(json!({"failures": bad.clone(), "pass": bad.is_empty()})))
            })),
            "wreath" => jobs.push(Box::new(|| {
                let groups: [(&str, Vec<u64>, u64); 5] = [
                    ("C1", vec![1], 1),
                    ("C2", vec![1, 1], 2),
                    ("C4", vec![1; 4], 4),
                    ("S3", vec![1, 1, 2], 6),
                    ("D8", vec![1, 1, 1, 1, 2], 8),
                ];
                let mut bad = Vec::new();
                let mut checked = 0;
                for (name, degs, order) in &groups {
                    for ell in [3u64, 5] {
                        let z = z_from_degrees(degs, *order as u128, ell).unwrap_or(0);
                        for n in 0..=4 {
                            let a = wreath_irr0(&[z], n, ell, 1, None);
                            let b = wreath_irr0_oracle(degs, *order, n, ell);
                            checked += 1;
                            if a.as_ref().ok() != b.as_ref().ok() || a.is_err() {
                                bad.push(json!({"group": name, "ell": ell, "n": n}));
                            }
                        }
                    }
                }
                record("selftest", "defect-zero count of a wreath product from cores equals the count from character degrees",
                    json!({"suite": "wreath"}), Ok(json!({"checked": checked, "failures": bad.clone(), "pass": bad.is_empty()})))
            })),
            "core_tower" => jobs.push(Box::new(|| {
                let mut checked = 0u64;
                let mut ok = true;
                for e in 1..=3usize {
                    for n in 0..=5 {
                        for mu in multipartitions(e, n) {
                            let t = core_tower_decompose(&mu, 3);
                            ok &= core_tower_reconstruct(&t, 3).map(|m| m == mu).unwrap_or(false)
                                && t.weight() == n as u64;
                            checked += 1;
                        }
                    }
                }
                record("selftest", "core tower decomposition inverts", json!({"suite": "core_tower"}),
                    Ok(json!({"checked": checked, "pass": ok})))
            })),
            "positive_defect" => jobs.push(Box::new(|| {
                let mut bad = Vec::new();
                for ell in [3u64, 5, 7] {
                    let s = irr_spectrum(&GroupDescriptor::Symmetric { n: ell }, ell);
                    if s.map(|s| s.total() - s.z()).ok() != Some(ell) {
                        bad.push(json!({"group": format!("S{ell}"), "ell": ell}));
                    }
                    for e in divisors(ell - 1) {
                        for r in divisors(e) {
                            let g = GroupDescriptor::Imprimitive { e, r, n: ell };
                            let s = irr_spectrum(&g, ell);
                            if s.map(|s| s.total() - s.z()).ok() != Some(e * ell / r) {
                                bad.push(json!({"group": g.to_string(), "ell": ell}));
                            }
                        }
                    }
                }
                record("selftest", "characters of positive defect number e*ell/r", json!({"suite": "positive_defect"}),
                    Ok(json!({"failures": bad.clone(), "pass": bad.is_empty()})))
            })),
            "tables" => jobs.push(Box::new(|| {
                record("selftest", "embedded tables verify", json!({"suite": "tables"}),
                    verify_family_tables().map(|r| json!({"pass": r.pass})))
            })),
            "irr_totals" => jobs.push(Box::new(|| {
                let mut ok = true;
                for e in 1..=4u64 {
                    for n in 1..=4u32 {
                        let g = GroupDescriptor::Imprimitive { e, r: 1, n: n as u64 };
                        ok &= irr_spectrum(&g, 5).map(|s| s.total()).ok() == Some(multipartitions(e as usize, n).len() as u64);
                    }
                }
                record("selftest", "|Irr(G(e,1,n))| counts e-multipartitions of n", json!({"suite": "irr_totals"}),
                    Ok(json!({"pass": ok})))
            })),
            _ => unreachable!(),
        }
    }
    Ok(jobs)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_records(records: &[Value], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).expect("json"))?;
            }
        }
        Format::Tsv => {
            let mut keys: Vec<String> = records
                .iter()
                .filter_map(Value::as_object)
                .flat_map(|m| m.keys().cloned())
                .collect();
            keys.sort();
            keys.dedup();
            writeln!(out, "{}", keys.join("\t"))?;
            for r in records {
                let row: Vec<String> = keys.iter().map(|k| r.get(k).map(scalar).unwrap_or_default()).collect();
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    let common = cli.common.clone();
    let jobs = match &cli.command {
        Command::Awc(g) => awc_jobs(g)?,
        Command::Owc { grid, family, index } => owc_jobs(grid, *family, index)?,
        Command::Sylow(g) => sylow_jobs(g)?,
        Command::Tables => tables_jobs(),
        Command::Centralizers(g) => centralizer_jobs(g, common.cap)?,
        Command::Selftest { suite } => selftest_jobs(suite)?,
    };
    if jobs.is_empty() && !common.allow_empty {
        return Err(UsageError("the parameter grid is empty (pass --allow-empty to accept)".into()));
    }
    let records: Vec<Value> = jobs.par_iter().map(|j| j()).collect();
    let mut sink: Box<dyn Write> = match &common.out {
        Some(p) => Box::new(File::create(p).map_err(|e| UsageError(format!("cannot open {}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    write_records(&records, common.format, &mut sink).map_err(|e| UsageError(format!("write failed: {e}")))?;
    let status = |r: &Value| r.get("status").and_then(Value::as_str).unwrap_or("fail").to_string();
    let failed = records.iter().any(|r| status(r) == "fail");
    let skipped = records.iter().any(|r| status(r) == "skipped");
    Ok(if failed || (skipped && common.strict) { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("spets: {msg}");
            ExitCode::from(2)
        }
    }
}
