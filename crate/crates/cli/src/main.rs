//! `phigroup`: build finite groups, inspect their invariants and lattices,
//! and verify the section criterion for nilpotency.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use phigroup::invariants::profile;
use phigroup::lattice::{all_subgroups, SubgroupLattice};
use phigroup::nilpotency::{is_nilpotent_lcs, is_nilpotent_sylow, is_schmidt, schmidt_certificate};
use phigroup::report::{to_canonical_json, to_canonical_value};
use phigroup::verifier::{
    check_condition2, default_catalog, find_witness, run_suite, verify_theorem, CatalogItem,
};
use phigroup::{build_group, sections, Error, FiniteGroup, GroupSpec, Limits};

#[derive(Parser)]
#[command(
    name = "phigroup",
    version,
    about = "Finite group invariants and the section criterion for nilpotency"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Maximum number of group elements to enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().element_cap)]
    cap: usize,
    /// Maximum number of subgroups in a lattice.
    #[arg(long = "lattice-cap", global = true, default_value_t = Limits::default().lattice_cap)]
    lattice_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Profile, nilpotency verdicts and Schmidt certificate.
    Analyze { spec: String },
    /// List every subgroup.
    Subgroups { spec: String },
    /// List every section H/N with its quotient profile.
    Sections { spec: String },
    /// Check nilpotency against phi over all sections.
    Verify { spec: String },
    /// First section whose quotient has phi = 0.
    Witness { spec: String },
    /// Run `verify` over a catalog of group expressions (one per line).
    Suite {
        catalog: Option<PathBuf>,
        /// Use the built-in catalog.
        #[arg(long)]
        default: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::LatticeCapExceeded { .. } => 3,
            Error::NilpotencyTestDisagreement { .. } | Error::CertificateFailure { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn limits(g: &Global) -> Limits {
    Limits {
        element_cap: g.cap,
        lattice_cap: g.lattice_cap,
        ..Limits::default()
    }
}

fn load(spec: &str, limits: &Limits) -> Result<(FiniteGroup, SubgroupLattice), Failure> {
    let spec: GroupSpec = spec.parse()?;
    let g = build_group(&spec, limits)?;
    let l = all_subgroups(&g, limits.lattice_cap)?;
    Ok((g, l))
}

fn emit(global: &Global, text: String) -> Result<(), Failure> {
    match &global.out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let global = &cli.global;
    let limits = limits(global);
    match &cli.command {
        Command::Analyze { spec } => analyze(global, &limits, spec),
        Command::Subgroups { spec } => {
            let (g, l) = load(spec, &limits)?;
            let rows: Vec<Value> = l
                .subgroups()
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    json!({
                        "index": i,
                        "order": h.order(),
                        "normal": h.normal_flag(),
                        "maximal": h.maximal_flag(),
                        "generators": h.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let out = if global.json {
                to_canonical_json(&json!({
                    "group": g.name(),
                    "summary": l.summary(),
                    "subgroups": rows,
                }))
            } else {
                let s = l.summary();
                let mut t = format!(
                    "{}: {} subgroups ({} normal, {} maximal)\n",
                    g.name(),
                    s.subgroup_count,
                    s.normal_count,
                    s.maximal_count
                );
                for r in rows {
                    t.push_str(&format!(
                        "H#{} order {} normal {} maximal {} gens {}\n",
                        r["index"], r["order"], r["normal"], r["maximal"], r["generators"]
                    ));
                }
                t.trim_end().to_string()
            };
            emit(global, out)?;
            Ok(0)
        }
        Command::Sections { spec } => {
            let (g, l) = load(spec, &limits)?;
            let rows: Vec<Value> = sections(&g, &l, limits.table_limit)
                .map(|s| {
                    json!({
                        "section": s.id(),
                        "h_order": s.h.group.order(),
                        "n_order": s.n.order(),
                        "quotient": profile(&s.quotient),
                    })
                })
                .collect();
            let out = if global.json {
                to_canonical_json(&json!({ "group": g.name(), "sections": rows }))
            } else {
                let mut t = format!("{}: {} sections\n", g.name(), rows.len());
                for r in rows {
                    t.push_str(&format!(
                        "{} |H|={} |N|={} exponent {} phi {}\n",
                        r["section"].as_str().unwrap_or_default(),
                        r["h_order"],
                        r["n_order"],
                        r["quotient"]["exponent"],
                        r["quotient"]["phi"]
                    ));
                }
                t.trim_end().to_string()
            };
            emit(global, out)?;
            Ok(0)
        }
        Command::Verify { spec } => {
            let (g, l) = load(spec, &limits)?;
            let report = verify_theorem(&g, &l, &limits)?;
            let violations = report.violations();
            let out = if global.json {
                to_canonical_json(&report)
            } else {
                let mut t = format!(
                    "{} (order {})\n  nilpotent: {}\n  sections checked: {}\n  all sections phi != 0: {}\n  condition2 (all subgroups phi != 0): {}\n  condition3 (phi(G) != 0): {}\n",
                    report.group,
                    report.order,
                    report.nilpotent,
                    report.sections_checked,
                    report.all_sections_phi_nonzero,
                    report.condition2,
                    report.condition3
                );
                match &report.witness {
                    Some(w) => t.push_str(&format!(
                        "  witness: {} (order {}, exponent {}, phi {})\n",
                        w.section, w.profile.order, w.profile.exponent, w.profile.phi
                    )),
                    None => t.push_str("  witness: none\n"),
                }
                t.push_str(&format!(
                    "  theorem consistent: {}",
                    report.theorem_consistent && violations.is_empty()
                ));
                t
            };
            emit(global, out)?;
            for v in &violations {
                eprintln!("mismatch: {v}");
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Witness { spec } => {
            let (g, l) = load(spec, &limits)?;
            let w = find_witness(&g, &l, &limits).map(|s| {
                json!({
                    "section": s.id(),
                    "h_order": s.h.group.order(),
                    "n_order": s.n.order(),
                    "profile": profile(&s.quotient),
                })
            });
            let out = if global.json {
                to_canonical_json(&json!({ "group": g.name(), "witness": w }))
            } else {
                match w {
                    Some(w) => format!(
                        "{}: witness {} (|H|={}, |N|={}, quotient exponent {}, phi {})",
                        g.name(),
                        w["section"].as_str().unwrap_or_default(),
                        w["h_order"],
                        w["n_order"],
                        w["profile"]["exponent"],
                        w["profile"]["phi"]
                    ),
                    None => format!("{}: no section with phi = 0", g.name()),
                }
            };
            emit(global, out)?;
            Ok(0)
        }
        Command::Suite {
            catalog,
            default,
            jobs,
        } => suite(global, &limits, catalog.as_ref(), *default, *jobs),
    }
}

fn analyze(global: &Global, limits: &Limits, spec: &str) -> Result<u8, Failure> {
    let (g, l) = load(spec, limits)?;
    let prof = profile(&g);
    let sylow = is_nilpotent_sylow(&g, &l);
    let lcs = is_nilpotent_lcs(&g);
    let schmidt = is_schmidt(&g, &l);
    let (certificate, cert_error) = if schmidt {
        match schmidt_certificate(&g, &l) {
            Ok(c) => (Some(c.summary(&g)), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let condition2 = check_condition2(&g, &l, limits);
    let agree = sylow == lcs.nilpotent;
    let out = if global.json {
        to_canonical_json(&json!({
            "group": g.name(),
            "profile": prof,
            "lattice": l.summary(),
            "nilpotent": sylow && agree,
            "nilpotent_sylow": sylow,
            "nilpotent_lcs": lcs.nilpotent,
            "nilpotency_class": lcs.class,
            "schmidt": schmidt,
            "certificate": certificate,
            "certificate_error": cert_error,
            "condition2": condition2,
            "condition3": prof.phi != 0,
        }))
    } else {
        let hist: Vec<String> = prof
            .histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        let mut t = format!(
            "{}\n  order: {}\n  exponent: {}\n  phi: {}\n  element orders: {{{}}}\n  subgroups: {}\n  nilpotent (sylow): {}\n  nilpotent (lower central series): {}\n",
            g.name(),
            prof.order,
            prof.exponent,
            prof.phi,
            hist.join(", "),
            l.len(),
            sylow,
            lcs.nilpotent
        );
        if let Some(c) = lcs.class {
            t.push_str(&format!("  nilpotency class: {c}\n"));
        }
        t.push_str(&format!("  schmidt: {schmidt}\n"));
        if let Some(c) = &certificate {
            let checks: Vec<String> = c
                .checklist
                .iter()
                .map(|(k, v)| format!("({k}) {}", if *v { "ok" } else { "FAIL" }))
                .collect();
            t.push_str(&format!(
                "  certificate: p={} q={} m={} n={} r={}; |G/Z| = {}, exp {}, phi {}\n    {}\n",
                c.p,
                c.q,
                c.m,
                c.n,
                c.r,
                c.quotient_order,
                c.quotient_exponent,
                c.quotient_phi,
                checks.join(" ")
            ));
        }
        if let Some(e) = &cert_error {
            t.push_str(&format!("  certificate error: {e}\n"));
        }
        t.push_str(&format!(
            "  condition2 (all subgroups phi != 0): {condition2}\n  condition3 (phi(G) != 0): {}",
            prof.phi != 0
        ));
        t
    };
    emit(global, out)?;
    Ok(if agree && cert_error.is_none() { 0 } else { 1 })
}

fn suite(
    global: &Global,
    limits: &Limits,
    catalog: Option<&PathBuf>,
    default: bool,
    jobs: usize,
) -> Result<u8, Failure> {
    let items: Vec<CatalogItem> = match (catalog, default) {
        (None, true) => default_catalog()
            .into_iter()
            .map(CatalogItem::Spec)
            .collect(),
        (Some(path), false) => {
            let text = fs::read_to_string(path).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", path.display()),
            })?;
            parse_catalog(&text)
        }
        _ => {
            return Err(Failure {
                code: 2,
                message: "give either a catalog path or --default".into(),
            })
        }
    };
    if items.is_empty() {
        eprintln!("warning: catalog is empty");
    }
    for item in &items {
        if let CatalogItem::Invalid { line, error, .. } = item {
            eprintln!("warning: line {line}: {error}");
        }
    }
    let report = run_suite(&items, limits, jobs.max(1));
    let value = to_canonical_value(&report);
    emit(global, serde_json::to_string_pretty(&value).expect("json"))?;
    Ok(if report.summary.failures == 0 { 0 } else { 1 })
}

/// One expression per line; blank lines and `#` comments are skipped.
fn parse_catalog(text: &str) -> Vec<CatalogItem> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| match l.trim().parse::<GroupSpec>() {
            Ok(spec) => CatalogItem::Spec(spec),
            Err(error) => CatalogItem::Invalid {
                line: i + 1,
                text: l.trim().to_string(),
                error,
            },
        })
        .collect()
}
