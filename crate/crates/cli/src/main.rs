//! Command-line front end.
//!
//! Exit codes are a stable scripting contract: 0 for success or a positive
//! answer, 1 for a definite negative (not a member, verification failed,
//! enumeration disagreement), 2 for any error (parse, dimension, io).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use majority_closure::balance::{
    is_balanced, is_partition_plus_balanced, is_pseudo_balanced, is_weight_balanced,
    partition_violation,
};
use majority_closure::choice::pairs;
use majority_closure::fileformat::{
    parse_profile, parse_tournament, render_profile, render_tournament,
};
use majority_closure::generators::{self, FamilyKind};
use majority_closure::realize::{
    bias_certificate, decide_membership, BiasCertificate, MembershipReason,
};
use majority_closure::synthesis::{mcgarvey_classic, realize_target_traced, SynthesisTrace};
use majority_closure::valency::{valencies, valency_signature, PointSet};
use majority_closure::verify::{enumerate_check, verify_integer, EnumMode, PairOutcome};
use majority_closure::ChoiceFunction;

#[derive(Parser)]
#[command(
    name = "majcl",
    about = "Decide and construct strict-majority realizations of tournaments over permutation-closed voter families",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print valencies, point sets, balance predicates, and certificate
    /// status of a tournament file.
    Analyze { path: PathBuf },
    /// Decide whether the target is majority-realizable from the family.
    Decide {
        /// Path to a generator tournament file, or `linear` / `cyclic`
        /// (candidate count taken from the target).
        #[arg(long)]
        family: String,
        /// Path to the target tournament file.
        #[arg(long)]
        target: PathBuf,
    },
    /// Construct a verified voter profile realizing the target.
    Synthesize {
        #[arg(long)]
        family: String,
        #[arg(long)]
        target: PathBuf,
        /// Where to write the profile file.
        #[arg(long)]
        out: PathBuf,
        /// Also write the stage-by-stage synthesis trace.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Use the classical two-voters-per-pair construction
        /// (linear family only).
        #[arg(long = "classic-mcgarvey")]
        classic_mcgarvey: bool,
    },
    /// Check a profile file against a target, pair by pair.
    Verify {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Run an exhaustive sweep and print its report.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// decide-vs-oracle | synthesize-all | classify
        #[arg(long)]
        mode: String,
        /// Also write the report to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a built-in generator tournament.
    Generate {
        /// linear | cyclic | random
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &PathBuf, content: &str) -> Result<(), String> {
    fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_tournament(path: &PathBuf) -> Result<ChoiceFunction, String> {
    parse_tournament(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// A family is either a builtin keyword or a tournament file.
fn load_family(selector: &str, n_from_target: usize) -> Result<ChoiceFunction, String> {
    match selector {
        "linear" => generators::linear(n_from_target).map_err(|e| e.to_string()),
        "cyclic" => generators::cyclic(n_from_target).map_err(|e| e.to_string()),
        path => load_tournament(&PathBuf::from(path)),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Analyze { path } => {
            let c = load_tournament(&path)?;
            print!("{}", analyze_report(&c)?);
            Ok(0)
        }
        Command::Decide { family, target } => {
            let target = load_tournament(&target)?;
            let generator = load_family(&family, target.n())?;
            let answer = decide_membership(&generator, &target).map_err(|e| e.to_string())?;
            let reason = match answer.reason {
                MembershipReason::UnbalancedGenerator => "unbalanced generator",
                MembershipReason::PseudoBalancedTarget => "pseudo-balanced target",
                MembershipReason::NotPseudoBalanced => "target not pseudo-balanced",
            };
            println!("member: {}", if answer.member { "yes" } else { "no" });
            println!("reason: {reason}");
            if let Some(cert) = &answer.certificate {
                print!("{}", certificate_lines(cert));
            }
            Ok(if answer.member { 0 } else { 1 })
        }
        Command::Synthesize {
            family,
            target,
            out,
            trace,
            classic_mcgarvey,
        } => {
            let target_fn = load_tournament(&target)?;
            if classic_mcgarvey {
                if family != "linear" {
                    return Err("--classic-mcgarvey requires --family linear".into());
                }
                let profile =
                    mcgarvey_classic(target_fn.n(), &target_fn).map_err(|e| e.to_string())?;
                write_file(&out, &render_profile(&profile))?;
                println!(
                    "wrote {} ({} voters)",
                    out.display(),
                    profile.total()
                );
                if let Some(trace_path) = trace {
                    write_file(
                        &trace_path,
                        "classic construction: two opposed orders per decided pair\n",
                    )?;
                }
                return Ok(0);
            }
            let generator = load_family(&family, target_fn.n())?;
            match realize_target_traced(&generator, &target_fn) {
                Ok((profile, synth_trace)) => {
                    write_file(&out, &render_profile(&profile))?;
                    println!(
                        "wrote {} ({} voters, {} distinct)",
                        out.display(),
                        profile.total(),
                        profile.distinct()
                    );
                    if let Some(trace_path) = trace {
                        write_file(&trace_path, &trace_text(&synth_trace))?;
                    }
                    Ok(0)
                }
                Err(majority_closure::Error::NotRealizable) => {
                    println!("not realizable");
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify { profile, target } => {
            let profile =
                parse_profile(&read_file(&profile)?).map_err(|e| format!("{e}"))?;
            let target = load_tournament(&target)?;
            let report = verify_integer(&profile, &target).map_err(|e| e.to_string())?;
            for t in &report.per_pair {
                let (x, y) = t.pair;
                let outcome = match t.outcome {
                    PairOutcome::Win(w) => format!("winner {w}"),
                    PairOutcome::Tie => "tie".to_string(),
                };
                let flag = if report.mismatches.contains(&t.pair) {
                    " [MISMATCH]"
                } else {
                    ""
                };
                println!(
                    "pair {{{x},{y}}}: toward {y} = {}, toward {x} = {}, outcome: {outcome}{flag}",
                    t.mass_high, t.mass_low
                );
            }
            println!("result: {}", if report.pass { "pass" } else { "fail" });
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Enumerate { n, mode, out } => {
            let mode: EnumMode = mode.parse().map_err(|e: majority_closure::Error| e.to_string())?;
            let report = enumerate_check(n, mode).map_err(|e| e.to_string())?;
            let text = report.to_string();
            print!("{text}");
            if let Some(path) = out {
                write_file(&path, &text)?;
            }
            Ok(if report.disagreements.is_empty() { 0 } else { 1 })
        }
        Command::Generate { kind, n, seed, out } => {
            let kind: FamilyKind = kind.parse().map_err(|e: majority_closure::Error| e.to_string())?;
            let c = generators::generate_family(kind, n, seed).map_err(|e| e.to_string())?;
            let text = render_tournament(&c);
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn point_set_line(label: &str, set: &PointSet) -> String {
    if set.is_empty() {
        return format!("{label}: (empty)\n");
    }
    let entries: Vec<String> = set
        .iter()
        .map(|(p, ws)| {
            let witnesses: Vec<String> =
                ws.iter().map(|(a, b)| format!("({a},{b})")).collect();
            format!("({}, {}) via {}", p.0, p.1, witnesses.join(" "))
        })
        .collect();
    format!("{label}: {}\n", entries.join("; "))
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn certificate_lines(cert: &BiasCertificate) -> String {
    let mut out = String::new();
    out.push_str("certificate: found\n");
    out.push_str(&format!(
        "  masses: side-0 = {}, side-1 = {}\n",
        cert.r0, cert.r1
    ));
    for (label, entries) in [("side-0", &cert.support0), ("side-1", &cert.support1)] {
        if entries.is_empty() {
            out.push_str(&format!("  {label} support: (none)\n"));
            continue;
        }
        let parts: Vec<String> = entries
            .iter()
            .map(|e| {
                format!(
                    "point ({}, {}) weight {} witness ({}, {})",
                    e.point.0, e.point.1, e.weight, e.witness.0, e.witness.1
                )
            })
            .collect();
        out.push_str(&format!("  {label} support: {}\n", parts.join("; ")));
    }
    out
}

fn analyze_report(c: &ChoiceFunction) -> Result<String, String> {
    let n = c.n();
    let mut out = String::new();
    out.push_str(&format!("n: {n}\n"));
    out.push_str(&format!(
        "decided pairs: {} of {}\n",
        c.decided_count(),
        n * (n - 1) / 2
    ));
    out.push_str(&format!("full: {}\n", yesno(c.is_full())));
    let vals: Vec<String> = valencies(c).iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("valencies: {}\n", vals.join(" ")));
    out.push_str(&format!("balanced: {}\n", yesno(is_balanced(c))));
    out.push_str(&format!(
        "pseudo-balanced: {}\n",
        yesno(is_pseudo_balanced(c))
    ));
    let violation = partition_violation(c, false).map_err(|e| e.to_string())?;
    out.push_str(&format!(
        "partition-balanced: {}\n",
        yesno(violation.is_none())
    ));
    if let Some(mask) = violation {
        let members: Vec<String> = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| v.to_string())
            .collect();
        out.push_str(&format!(
            "  first uneven cut: {{{}}}\n",
            members.join(", ")
        ));
    }
    out.push_str(&format!(
        "partition+-balanced: {}\n",
        yesno(is_partition_plus_balanced(c).map_err(|e| e.to_string())?)
    ));
    out.push_str(&format!(
        "weight-balanced: {}\n",
        yesno(is_weight_balanced(c))
    ));
    if c.is_full() {
        out.push_str(&format!("unbalanced generator: {}\n", yesno(!is_balanced(c))));
        match bias_certificate(c).map_err(|e| e.to_string())? {
            Some(cert) => out.push_str(&certificate_lines(&cert)),
            None => out.push_str("certificate: none\n"),
        }
    } else {
        out.push_str("unbalanced generator: n/a (partial)\n");
        out.push_str("certificate: n/a (partial)\n");
    }
    let sig = valency_signature(c);
    out.push_str(&point_set_line("V0", &sig.v0));
    out.push_str(&point_set_line("V1", &sig.v1));
    out.push_str(&point_set_line("V1/2", &sig.vhalf));
    out.push_str(&point_set_line("V0*", &sig.v0star));
    out.push_str(&point_set_line("V1*", &sig.v1star));
    Ok(out)
}

fn trace_text(trace: &SynthesisTrace) -> String {
    let mut out = String::new();
    for stage in &trace.stages {
        out.push_str(&format!("stage: {}\n", stage.label));
        for (voter, weight) in stage.profile.voters() {
            let edges: Vec<String> = voter
                .tor_edges()
                .iter()
                .map(|(u, v)| format!("{u} {v}"))
                .collect();
            out.push_str(&format!(
                "  voter weight {}: {}\n",
                weight,
                if edges.is_empty() {
                    "(abstains everywhere)".to_string()
                } else {
                    edges.join(", ")
                }
            ));
        }
        out.push_str("  induced matrix:\n");
        let n = stage.matrix.n();
        for (x, y) in pairs(n) {
            out.push_str(&format!("    t[{x}][{y}] = {}\n", stage.matrix.get(x, y)));
        }
    }
    out.push_str(&format!(
        "final profile: {} voters, {} distinct\n",
        trace.final_profile.total(),
        trace.final_profile.distinct()
    ));
    out
}
