use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pds_core::construction::{build_denniston, expected_params, paley_pds, quadric_pds};
use pds_core::cyclotomy::{
    class_modulus, default_subspace, random_subspace, trace_zero_index_set, SubspaceR,
};
use pds_core::export::{index_lines, SetExport};
use pds_core::gf_tower::DEFAULT_SIZE_CAP;
use pds_core::verify::{verify, CheckLevel, Method, VerifyOptions, VerifyReport};
use pds_core::{FieldTable, PdsSet};

/// Instances with v·k above this many terms are swept with counts only.
const SWEEP_COST_LIMIT: u128 = 1_000_000_000;

#[derive(Parser)]
#[command(name = "pds", version, about = "Construct and verify partial difference sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a set and print its export
    Construct {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify a constructed or saved set
    Verify {
        /// Saved set (JSON export); otherwise the set is built from the flags
        #[arg(long, conflicts_with_all = ["p", "s", "m", "r", "modulus", "basis", "seed", "kind"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Verify the Denniston-parameter set for every (m, r) with q fixed
    Sweep {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        max_m: u32,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Describe the field tower
    FieldInfo {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        size_cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Re-serialize a saved set
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        size_cap: u64,
    },
}

#[derive(Args)]
struct SetArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    m: Option<u32>,
    /// Dimension of R over F_q
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Modulus coefficients over F_p, constant term first
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Basis of R as discrete logs to base α
    #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
    basis: Option<Vec<u64>>,
    /// Seed for a random R
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Kind::Denniston)]
    kind: Kind,
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: u64,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = Level::All)]
    check_level: Level,
    /// Evaluate characters with the p-ary transform
    #[arg(long)]
    fast_transform: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings in reports
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Denniston,
    Paley,
    Quadric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Counts,
    Chars,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Level> for CheckLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Counts => CheckLevel::Counts,
            Level::Chars => CheckLevel::Chars,
            Level::All => CheckLevel::All,
        }
    }
}

impl CheckArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            level: self.check_level.into(),
            method: if self.fast_transform { Method::Fast } else { Method::Naive },
            timings: self.timings,
        }
    }
}

fn table(p: u32, s: u32, m: u32, modulus: Option<&[u32]>, cap: u64) -> Result<FieldTable> {
    FieldTable::new(p, s, m, modulus, cap).context("building the field tower")
}

impl SetArgs {
    fn build(&self) -> Result<(FieldTable, PdsSet)> {
        let (Some(p), Some(m)) = (self.p, self.m) else {
            bail!("--p and --m are required unless --input is given");
        };
        let t = table(p, self.s, m, self.modulus.as_deref(), self.size_cap)?;
        let set = match self.kind {
            Kind::Denniston => {
                let r = match (&self.basis, self.seed) {
                    (Some(b), _) => {
                        if b.len() != self.r as usize {
                            bail!("--basis has {} vectors but --r is {}", b.len(), self.r);
                        }
                        SubspaceR::from_dlogs(&t, b)?
                    }
                    (None, Some(seed)) => random_subspace(&t, self.r, seed)?,
                    (None, None) => default_subspace(&t, self.r)?,
                };
                build_denniston(&t, &r)?
            }
            Kind::Paley => paley_pds(&t)?,
            Kind::Quadric => quadric_pds(&t)?,
        };
        Ok((t, set))
    }
}

fn load(path: &PathBuf, cap: u64) -> Result<(FieldTable, PdsSet)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let export = SetExport::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(export.load(cap)?)
}

fn emit_set(t: &FieldTable, set: &PdsSet, format: Format) {
    match format {
        Format::Json => print!("{}", SetExport::new(t, set).to_json()),
        Format::Text => print!("{}", index_lines(set)),
    }
}

fn emit_report(report: &VerifyReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn field_info(t: &FieldTable, format: Format) {
    let spec = t.spec();
    let orders: Vec<u64> = (1..=spec.d)
        .filter(|c| spec.d.is_multiple_of(*c))
        .map(|c| (spec.p as u64).pow(c))
        .collect();
    let subfields: Vec<serde_json::Value> = orders
        .iter()
        .map(|&o| {
            let sub = t.subfield(o).expect("divisor degrees give subfields");
            let basis: Vec<u32> = sub.basis().iter().filter_map(|b| b.dlog()).collect();
            serde_json::json!({
                "order": o,
                "degree": sub.degree(),
                "step": sub.step(),
                "basis_dlogs": basis,
            })
        })
        .collect();
    let iset = trace_zero_index_set(t);
    let omega = t.omega().dlog().expect("omega is nonzero");
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema": 1,
                "field": spec,
                "q": t.q(),
                "order": t.order(),
                "omega_dlog": omega,
                "class_modulus": class_modulus(t),
                "trace_zero_indices": iset.members,
                "subfields": subfields,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json value serializes"));
        }
        Format::Text => {
            println!("field      {spec}");
            println!("omega      a^{omega}");
            println!("N          {}", class_modulus(t));
            println!("I          {:?}", iset.members);
            for s in &subfields {
                println!(
                    "subfield   order {} degree {} step {} basis {}",
                    s["order"], s["degree"], s["step"], s["basis_dlogs"]
                );
            }
        }
    }
}

fn sweep(p: u32, s: u32, max_m: u32, check: &CheckArgs) -> Result<bool> {
    let q = (p as u64).pow(s);
    let mut rows = Vec::new();
    let mut all_pass = true;
    for m in 2..=max_m {
        let t = match FieldTable::new(p, s, m, None, DEFAULT_SIZE_CAP) {
            Ok(t) => t,
            Err(pds_core::Error::SizeCapExceeded { .. }) => {
                rows.push(serde_json::json!({ "q": q, "m": m, "skipped": "size cap" }));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for r in 1..m {
            let params = expected_params(q, m, r)?;
            let mut opts = check.options();
            let cost = params.v as u128 * params.k as u128;
            let downgraded = opts.level != CheckLevel::Counts && cost > SWEEP_COST_LIMIT;
            if downgraded {
                opts.level = CheckLevel::Counts;
            }
            let set = build_denniston(&t, &default_subspace(&t, r)?)?;
            let report = verify(&t, &set, opts)?;
            all_pass &= report.passed();
            rows.push(serde_json::json!({
                "q": q,
                "m": m,
                "r": r,
                "params": params.to_string(),
                "level": opts.level,
                "downgraded": downgraded,
                "verdict": report.verdict,
                "pass": report.passed(),
            }));
        }
    }
    match check.format {
        Format::Json => {
            let doc = serde_json::json!({ "schema": 1, "rows": rows });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json value serializes"));
        }
        Format::Text => {
            for row in &rows {
                if let Some(why) = row.get("skipped") {
                    println!("q={} m={}  skipped ({})", q, row["m"], why.as_str().unwrap_or(""));
                    continue;
                }
                let status = if row["pass"] == true { "pass" } else { "FAIL" };
                let mut line = format!(
                    "q={} m={} r={}  {}  PDS: {status}",
                    q,
                    row["m"],
                    row["r"],
                    row["params"].as_str().unwrap_or("")
                );
                if row["downgraded"] == true {
                    line.push_str("  (downgraded to counts: v·k above 1e9)");
                }
                println!("{line}");
            }
        }
    }
    Ok(all_pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct { set, format } => {
            let (t, d) = set.build()?;
            emit_set(&t, &d, format);
            Ok(true)
        }
        Command::Verify { input, set, check } => {
            let (t, d) = match &input {
                Some(path) => load(path, set.size_cap)?,
                None => set.build()?,
            };
            let report = verify(&t, &d, check.options())?;
            emit_report(&report, check.format);
            Ok(report.passed())
        }
        Command::Sweep { p, s, max_m, check } => sweep(p, s, max_m, &check),
        Command::FieldInfo {
            p,
            s,
            m,
            modulus,
            size_cap,
            format,
        } => {
            let t = table(p, s, m, modulus.as_deref(), size_cap)?;
            field_info(&t, format);
            Ok(true)
        }
        Command::Export {
            input,
            format,
            size_cap,
        } => {
            let (t, d) = load(&input, size_cap)?;
            emit_set(&t, &d, format);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
