//! The `sqflow` command line: one verb per pipeline, JSON in and out.
//!
//! Exit codes: 0 when the checked statement holds (or nothing was checked),
//! 1 when a relation fails or patterns are unbalanced, 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::basis::{reconstruct_value, BasisAssignment};
use crate::error::{Error, Result};
use crate::flows::fg_value_capped;
use crate::lindstrom::{compile_matrix_to_network, flow_matrix, ExactMatrix};
use crate::network::{network_from_json, network_to_json, PlanarNetwork};
use crate::patterns::{is_balanced, matching_multiset, MatchingMultiset, SetContext, TwoPattern};
use crate::relations::{evaluate_sq, symbolic_weights, RelationInstance};
use crate::schur::{schur_spec, verify_schur_identity, Partition, SchurIdentity};
use crate::semiring::{value_to_json, SemiringSpec};
use crate::witness::demonstrate_violation;

#[derive(Debug, Parser)]
#[command(name = "sqflow", version, about = "Stable quadratic relations of flow-generated functions")]
pub struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide balancedness of a pattern pair.
    CheckBalance {
        #[arg(long)]
        patterns: PathBuf,
    },
    /// Evaluate both sides of the relation on a network.
    VerifyRelation(VerifyArgs),
    /// Build the counterexample network for an unbalanced pair.
    Witness {
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long)]
        sets: PathBuf,
        /// Also write the annotated network on its own.
        #[arg(long)]
        network_out: Option<PathBuf>,
    },
    /// Evaluate f(I|I') on a network.
    EvalFg {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        args: PathBuf,
        #[arg(long, default_value = "integers")]
        semiring: String,
    },
    /// Compile a rational matrix into a planar network.
    CompileMatrix {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Check a Schur function identity.
    Schur {
        #[arg(long, value_enum)]
        identity: IdentityKind,
        /// `i,j,k,l` for the two-row identities, a partition for condensation.
        #[arg(long)]
        params: String,
        /// Fixed partition for the prefixed identity.
        #[arg(long)]
        prefix: Option<String>,
        /// Number of variables.
        #[arg(long)]
        n: usize,
    },
    /// Recover a flow-generated value from its basis values.
    Reconstruct {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "")]
        target_prime: String,
    },
    /// Check acyclicity, terminal order and planarity of a network file.
    ValidateNetwork {
        #[arg(long)]
        network: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub patterns: PathBuf,
    #[arg(long, default_value = "integers")]
    pub semiring: String,
    #[arg(long)]
    pub network: PathBuf,
    /// A single context; every consistent context is tried when absent.
    #[arg(long)]
    pub sets: Option<PathBuf>,
    /// Sample at most this many contexts (seeded).
    #[arg(long)]
    pub max_contexts: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    Tworow,
    Condensation,
    Prefixed,
}

/// Report plus exit status of one verb.
struct Outcome {
    report: Json,
    holds: bool,
}

fn read_json(path: &Path) -> Result<Json> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, j: &Json) -> Result<()> {
    fs::write(path, render(j)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn render(j: &Json) -> String {
    let mut s = serde_json::to_string_pretty(j).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses `"1,3"`; the empty string is the empty set.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad number `{t}` in `{s}`"))))
        .collect()
}

fn read_patterns(path: &Path) -> Result<(TwoPattern, TwoPattern)> {
    let j = read_json(path)?;
    let side = |key: &str| {
        j.get(key)
            .ok_or_else(|| Error::Parse(format!("pattern file needs `{key}`")))
            .and_then(TwoPattern::from_json)
    };
    Ok((side("lhs")?, side("rhs")?))
}

fn multiset_json(ms: &MatchingMultiset) -> Json {
    Json::Array(
        ms.iter()
            .map(|(m, k)| json!({"matching": m.to_json(), "text": m.to_string(), "mult": k}))
            .collect(),
    )
}

fn check_balance(patterns: &Path) -> Result<Outcome> {
    let (a0, b0) = read_patterns(patterns)?;
    let report = is_balanced(&a0, &b0)?;
    let (y, yp) = a0.ground();
    let witness = report.witness.as_ref().map(|(m, ca, cb)| {
        json!({"matching": m.to_json(), "text": m.to_string(), "lhs_count": ca, "rhs_count": cb})
    });
    Ok(Outcome {
        report: json!({
            "verdict": if report.balanced { "balanced" } else { "unbalanced" },
            "balanced": report.balanced,
            "witness": witness,
            "lhs_matchings": multiset_json(&matching_multiset(&y, &yp, &a0)?),
            "rhs_matchings": multiset_json(&matching_multiset(&y, &yp, &b0)?),
        }),
        holds: report.balanced,
    })
}

/// Reads a network; the polynomial semiring gets one variable `w_<id>` per weight slot.
fn load_network(path: &Path, semiring: &str) -> Result<(PlanarNetwork, SemiringSpec)> {
    let spec: SemiringSpec = semiring.parse()?;
    let j = read_json(path)?;
    if matches!(spec.base(), SemiringSpec::PolynomialInt(_)) {
        let g = network_from_json(&j, &SemiringSpec::Rationals)?;
        let (g, poly) = symbolic_weights(&g);
        let spec = if matches!(spec, SemiringSpec::StarExtended(_)) { SemiringSpec::star(poly) } else { poly };
        return Ok((g, spec));
    }
    Ok((network_from_json(&j, &spec)?, spec))
}

fn verify_relation(a: &VerifyArgs, seed: u64) -> Result<Outcome> {
    let (a0, b0) = read_patterns(&a.patterns)?;
    let (g, spec) = load_network(&a.network, &a.semiring)?;
    let mut contexts = match &a.sets {
        Some(p) => vec![SetContext::from_json(&read_json(p)?)?],
        None => SetContext::enumerate(g.n(), g.n_prime(), a0.m, a0.m_prime),
    };
    if let Some(k) = a.max_contexts {
        if contexts.len() > k {
            contexts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            contexts.truncate(k);
        }
    }
    let cap = g.num_vertices();
    let mut cases = Vec::new();
    let mut all = true;
    for ctx in contexts {
        let ri = RelationInstance::from_patterns(spec.clone(), g.clone(), ctx.clone(), &a0, &b0)?.with_cap(cap);
        let out = evaluate_sq(&ri)?;
        all &= out.equal;
        let mut case = out.to_json(&spec);
        case["sets"] = ctx.to_json();
        cases.push(case);
    }
    Ok(Outcome {
        report: json!({"semiring": spec.name(), "all_equal": all, "cases": cases}),
        holds: all,
    })
}

fn witness(patterns: &Path, sets: &Path, network_out: Option<&Path>) -> Result<Outcome> {
    let (a0, b0) = read_patterns(patterns)?;
    let ctx = SetContext::from_json(&read_json(sets)?)?;
    if is_balanced(&a0, &b0)?.balanced {
        return Ok(Outcome {
            report: json!({"balanced": true, "witness": null}),
            holds: true,
        });
    }
    let v = demonstrate_violation(&a0, &b0, &ctx)?;
    if let Some(p) = network_out {
        write_json(p, &v.witness.to_json())?;
    }
    let mut report = v.to_json();
    report["balanced"] = json!(false);
    report["vertices"] = json!(v.witness.network.num_vertices());
    report["edges"] = json!(v.witness.network.edges.len());
    Ok(Outcome { report, holds: false })
}

fn usize_set(j: Option<&Json>, key: &str) -> Result<Vec<usize>> {
    match j {
        None => Ok(Vec::new()),
        Some(Json::Array(a)) => a
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("bad element {x} in `{key}`"))))
            .collect(),
        Some(other) => Err(Error::Parse(format!("bad `{key}`: {other}"))),
    }
}

fn eval_fg(network: &Path, args: &Path, semiring: &str) -> Result<Outcome> {
    let (g, spec) = load_network(network, semiring)?;
    let j = read_json(args)?;
    let i = usize_set(j.get("I"), "I")?;
    let ip = usize_set(j.get("Iprime"), "Iprime")?;
    let v = fg_value_capped(&spec, &g, &i, &ip, g.num_vertices())?;
    Ok(Outcome {
        report: json!({"semiring": spec.name(), "I": i, "Iprime": ip, "value": value_to_json(&spec, &v)}),
        holds: true,
    })
}

fn compile_matrix(matrix: &Path) -> Result<Outcome> {
    let m = ExactMatrix::from_json(&read_json(matrix)?)?;
    let (g, chain) = compile_matrix_to_network(&m)?;
    let spec = SemiringSpec::Rationals;
    let back = flow_matrix(&g, &spec)?;
    let ok = back.equal(&m.to_rationals()?);
    Ok(Outcome {
        report: json!({
            "factors": chain.to_json(),
            "network": network_to_json(&g, &spec),
            "flow_matrix": back.to_json(),
            "round_trip": ok,
        }),
        holds: ok,
    })
}

fn four(params: &str) -> Result<(usize, usize, usize, usize)> {
    match parse_list(params)?.as_slice() {
        &[i, j, k, l] => Ok((i, j, k, l)),
        _ => Err(Error::BadParams(format!("expected i,j,k,l, got `{params}`"))),
    }
}

fn schur(identity: IdentityKind, params: &str, prefix: Option<&str>, n: usize) -> Result<Outcome> {
    let kind = match identity {
        IdentityKind::Tworow => {
            let (i, j, k, l) = four(params)?;
            SchurIdentity::TwoRowProduct { i, j, k, l }
        }
        IdentityKind::Condensation => SchurIdentity::Condensation(Partition::new(parse_list(params)?)?),
        IdentityKind::Prefixed => {
            let (i, j, k, l) = four(params)?;
            let prefix = prefix.ok_or_else(|| Error::BadParams("the prefixed identity needs --prefix".into()))?;
            SchurIdentity::PrefixedTwoRow {
                prefix: Partition::new(parse_list(prefix)?)?,
                i,
                j,
                k,
                l,
            }
        }
    };
    let check = verify_schur_identity(&kind, n)?;
    let spec = schur_spec(n);
    let mut report = check.to_json();
    report["lhs"] = json!(spec.display(&check.lhs));
    report["rhs"] = json!(spec.display(&check.rhs));
    report["n"] = json!(n);
    Ok(Outcome {
        report,
        holds: check.equal,
    })
}

fn reconstruct(basis: &Path, target: &str, target_prime: &str) -> Result<Outcome> {
    let a = BasisAssignment::from_json(&read_json(basis)?)?;
    let (s, sp) = (parse_list(target)?, parse_list(target_prime)?);
    let v = reconstruct_value(&a, &s, &sp)?;
    Ok(Outcome {
        report: json!({"semiring": a.spec.name(), "target": s, "target_prime": sp, "value": value_to_json(&a.spec, &v)}),
        holds: true,
    })
}

fn validate_network(network: &Path) -> Result<Outcome> {
    let g = network_from_json(&read_json(network)?, &SemiringSpec::Rationals)?;
    let r = g.validate();
    Ok(Outcome {
        report: json!({
            "ok": r.is_ok(),
            "acyclic": r.acyclic(),
            "cycle": r.cycle,
            "terminals_ok": r.terminals_ok(),
            "terminal_issues": r.terminal_issues,
            "planar": r.planar(),
            "crossings": r.crossings,
            "vertices": g.num_vertices(),
            "edges": g.edges.len(),
            "sources": g.n(),
            "sinks": g.n_prime(),
        }),
        holds: r.is_ok(),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::CheckBalance { patterns } => check_balance(patterns),
        Command::VerifyRelation(a) => verify_relation(a, cli.seed),
        Command::Witness {
            patterns,
            sets,
            network_out,
        } => witness(patterns, sets, network_out.as_deref()),
        Command::EvalFg {
            network,
            args,
            semiring,
        } => eval_fg(network, args, semiring),
        Command::CompileMatrix { matrix } => compile_matrix(matrix),
        Command::Schur {
            identity,
            params,
            prefix,
            n,
        } => schur(*identity, params, prefix.as_deref(), *n),
        Command::Reconstruct {
            basis,
            target,
            target_prime,
        } => reconstruct(basis, target, target_prime),
        Command::ValidateNetwork { network } => validate_network(network),
    }
}

/// Runs one command line (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = render(&outcome.report);
    let written = match &cli.out {
        Some(p) => fs::write(p, &text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if outcome.holds {
        0
    } else {
        1
    }
}
