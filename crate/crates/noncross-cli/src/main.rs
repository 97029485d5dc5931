//! Command line front end. Machine-first output: key=value lines, element
//! and word grammars on stdin arguments, JSON behind `--json`. Exit codes:
//! 0 success, 1 falsified property (with a witness printed), 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use noncross::absolute_order::{
    balanced_cycle_profile, below_coxeter_c, leq, reduced_factorizations, Interval,
    LatticeCertificate,
};
use noncross::complex::{build_complex, euler_characteristic, homology};
use noncross::dual_monoid::{
    check_cancellation, check_nine_element_lemma, format_word, greedy_normal_form, parse_word,
    positively_equal, word_problem, CheckScope,
};
use noncross::presentations::{
    abelianization, artin_presentation, derived_generator_words, poset_presentation,
    reflection_presentation, verify_phi, verify_theta_identities, GroupPresentation,
};
use noncross::signed_perm::{
    coxeter_element, parse_element_in, GroupType, Reflection, SignedPerm,
};

#[derive(Parser)]
#[command(name = "noncross", version, about = "Noncrossing partition lattices and dual monoids of types C and D", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    /// Group type: C or D
    #[arg(long = "type", value_parser = parse_type)]
    group: char,
    /// Rank
    #[arg(long)]
    n: usize,
}

fn parse_type(s: &str) -> Result<char, String> {
    match s {
        "C" | "c" => Ok('C'),
        "D" | "d" => Ok('D'),
        _ => Err(format!("unknown group type `{s}` (expected C or D)")),
    }
}

impl GroupArgs {
    fn group_type(&self) -> Result<GroupType, Failure> {
        GroupType::new(self.group, self.n).map_err(|e| Failure::usage(e.to_string()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    /// Reflection length
    Refl,
    /// Dimension of the fixed subspace
    Fixed,
    /// Length over all transpositions of the doubled symmetric group
    Transposition,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresentKind {
    Artin,
    Poset,
    Reflection,
    Derived,
}

#[derive(Subcommand)]
enum Command {
    /// Length measures of an element
    Len {
        #[command(flatten)]
        group: GroupArgs,
        element: String,
        #[arg(long, value_enum, default_value = "refl")]
        measure: Measure,
    },
    /// Absolute-order comparison of two elements (second defaults to the
    /// Coxeter element)
    Leq {
        #[command(flatten)]
        group: GroupArgs,
        u: String,
        w: Option<String>,
        /// Decide via the orientation/noncrossing test (type C, top element
        /// only)
        #[arg(long)]
        geometric: bool,
    },
    /// Enumerate the interval below a top element
    Interval {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Certify that the interval is a lattice
    LatticeCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        gamma: Option<String>,
        /// Also run the cancellation and nine-element suites
        #[arg(long)]
        suites: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
    },
    /// Greatest lower bound of two interval elements
    Meet {
        #[command(flatten)]
        group: GroupArgs,
        a: String,
        b: String,
        #[arg(long)]
        gamma: Option<String>,
        /// Use the structured type-D case analysis instead of the table
        #[arg(long)]
        structured: bool,
    },
    /// Least upper bound of two interval elements
    Join {
        #[command(flatten)]
        group: GroupArgs,
        a: String,
        b: String,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// All shortest reflection factorizations of an element (default: the
    /// Coxeter element); factorizations of a Coxeter element also have
    /// their balanced-cycle profiles validated
    Factorizations {
        #[command(flatten)]
        group: GroupArgs,
        element: Option<String>,
        /// Print only the count
        #[arg(long)]
        count: bool,
        /// Split the search by first reflection across threads
        #[arg(long)]
        parallel: bool,
    },
    /// Greedy normal form of a positive word
    Nf {
        #[command(flatten)]
        group: GroupArgs,
        word: String,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Word problem: are two positive words equal in the monoid?
    Wp {
        #[command(flatten)]
        group: GroupArgs,
        a: String,
        b: String,
        #[arg(long)]
        gamma: Option<String>,
        /// Decide with the breadth-first rewriting oracle instead of normal
        /// forms
        #[arg(long)]
        oracle: bool,
    },
    /// Face vector and Euler characteristic of the quotient complex
    Complex {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Homology of the quotient complex
    Homology {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, default_value_t = 1)]
        up_to: usize,
    },
    /// Emit a presentation
    Present {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        kind: PresentKind,
        #[arg(long)]
        gamma: Option<String>,
        /// Append the abelianization
        #[arg(long)]
        abelianization: bool,
    },
    /// Check the generator map against every Artin relator and witness its
    /// surjectivity
    VerifyPhi {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Check the derived-generator identities, the conjugation table, and
    /// lift normalization
    VerifyTheta {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Interval size, factorization count, and maximal chain count
    Counts {
        #[command(flatten)]
        group: GroupArgs,
    },
}

/// Failures carry the exit code: 1 for falsified properties, 2 for bad
/// input.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn falsified(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn element_arg(s: &str, gt: GroupType) -> Result<SignedPerm, Failure> {
    parse_element_in(s, gt).map_err(|e| Failure::usage(e.to_string()))
}

fn interval_for(gt: GroupType, gamma: &Option<String>) -> Result<Interval, Failure> {
    let top = match gamma {
        Some(s) => element_arg(s, gt)?,
        None => coxeter_element(gt),
    };
    Interval::new(gt, &top).map_err(|e| Failure::usage(e.to_string()))
}

fn certified(iv: &Interval) -> Result<LatticeCertificate, Failure> {
    iv.certify_lattice().map_err(|f| {
        Failure::falsified(format!(
            "not_a_lattice op={} a={} b={} witnesses={},{}",
            f.op,
            iv.name(f.a),
            iv.name(f.b),
            iv.name(f.w1),
            iv.name(f.w2)
        ))
    })
}

fn member_id(iv: &Interval, s: &str) -> Result<usize, Failure> {
    let p = element_arg(s, iv.group())?;
    iv.id_of(&p)
        .ok_or_else(|| Failure::usage(format!("element {p} is not in the interval")))
}

fn run(cmd: &Command) -> Result<String, Failure> {
    match cmd {
        Command::Len { group, element, measure } => {
            let gt = group.group_type()?;
            let p = element_arg(element, gt)?;
            let value = match measure {
                Measure::Refl => p.reflection_length(),
                Measure::Fixed => p.fixed_space_dim(),
                Measure::Transposition => p.transposition_length(),
            };
            Ok(format!("{value}\n"))
        }
        Command::Leq { group, u, w, geometric } => {
            let gt = group.group_type()?;
            let pu = element_arg(u, gt)?;
            let pw = match w {
                Some(s) => element_arg(s, gt)?,
                None => coxeter_element(gt),
            };
            let answer = if *geometric {
                if gt.is_d() || pw != coxeter_element(gt) {
                    return Err(Failure::usage(
                        "--geometric applies to type C with the Coxeter element on the right",
                    ));
                }
                below_coxeter_c(&pu)
            } else {
                leq(&pu, &pw)
            };
            Ok(format!("{answer}\n"))
        }
        Command::Interval { group, gamma, json } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            if *json {
                let cert = iv.certify_lattice().ok();
                let doc = iv.export_json(cert.as_ref());
                Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
            } else {
                let top = iv.length(iv.gamma_id());
                let mut by_length = vec![0usize; top + 1];
                for i in 0..iv.len() {
                    by_length[iv.length(i)] += 1;
                }
                let hist: Vec<String> = by_length.iter().map(|c| c.to_string()).collect();
                Ok(format!(
                    "elements={} rank={} by_length={}\n",
                    iv.len(),
                    top,
                    hist.join(",")
                ))
            }
        }
        Command::LatticeCheck { group, gamma, suites, samples, seed } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let cert = certified(&iv)?;
            let mut out = format!("certified elements={}\n", iv.len());
            if *suites {
                let scope = if iv.len() <= 8 {
                    CheckScope::Exhaustive { max_letters: 2 }
                } else {
                    CheckScope::Sampled { cases: *samples, max_letters: 3, seed: *seed }
                };
                let c = check_cancellation(&iv, &cert, scope);
                if !c.ok() {
                    return Err(Failure::falsified(format!(
                        "cancellation violated: {}",
                        c.violations.join("; ")
                    )));
                }
                writeln!(out, "cancellation=ok cases={} nontrivial={}", c.cases, c.nontrivial)
                    .unwrap();
                let nine = check_nine_element_lemma(&iv, &cert, scope);
                if !nine.ok() {
                    return Err(Failure::falsified(format!(
                        "nine-element lemma violated: {}",
                        nine.violations.join("; ")
                    )));
                }
                writeln!(out, "nine_element=ok cases={}", nine.cases).unwrap();
            }
            Ok(out)
        }
        Command::Meet { group, a, b, gamma, structured } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let (ia, ib) = (member_id(&iv, a)?, member_id(&iv, b)?);
            let m = if *structured {
                iv.meet_d_structured(ia, ib).map_err(|e| Failure::usage(e.to_string()))?
            } else {
                iv.meet(ia, ib).map_err(|f| {
                    Failure::falsified(format!(
                        "not_a_lattice op=meet a={a} b={b} witnesses={},{}",
                        iv.name(f.w1),
                        iv.name(f.w2)
                    ))
                })?
            };
            Ok(format!("{}\n", iv.name(m)))
        }
        Command::Join { group, a, b, gamma } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let (ia, ib) = (member_id(&iv, a)?, member_id(&iv, b)?);
            let j = iv.join(ia, ib).map_err(|f| {
                Failure::falsified(format!(
                    "not_a_lattice op=join a={a} b={b} witnesses={},{}",
                    iv.name(f.w1),
                    iv.name(f.w2)
                ))
            })?;
            Ok(format!("{}\n", iv.name(j)))
        }
        Command::Factorizations { group, element, count, parallel } => {
            let gt = group.group_type()?;
            let target = match element {
                Some(s) => element_arg(s, gt)?,
                None => coxeter_element(gt),
            };
            let facts = if *parallel {
                factorizations_parallel(&target, gt)
            } else {
                reduced_factorizations(&target, gt)
            };
            for f in &facts {
                if let Err(v) = balanced_cycle_profile(f, gt.rank()) {
                    return Err(Failure::falsified(format!(
                        "profile violation in {}: {v}",
                        format_factorization(f)
                    )));
                }
            }
            if *count {
                return Ok(format!("count={}\n", facts.len()));
            }
            let mut out = String::new();
            for f in &facts {
                writeln!(out, "{}", format_factorization(f)).unwrap();
            }
            Ok(out)
        }
        Command::Nf { group, word, gamma } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let cert = certified(&iv)?;
            let w = parse_word(word, &iv).map_err(|e| Failure::usage(e.to_string()))?;
            let nf = greedy_normal_form(&w, &iv, &cert);
            Ok(format!("{}\n", format_word(nf.letters(), &iv)))
        }
        Command::Wp { group, a, b, gamma, oracle } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let wa = parse_word(a, &iv).map_err(|e| Failure::usage(e.to_string()))?;
            let wb = parse_word(b, &iv).map_err(|e| Failure::usage(e.to_string()))?;
            let answer = if *oracle {
                positively_equal(&wa, &wb, &iv)
                    .map_err(|e| Failure::falsified(e.to_string()))?
            } else {
                let cert = certified(&iv)?;
                word_problem(&wa, &wb, &iv, &cert)
            };
            Ok(format!("{answer}\n"))
        }
        Command::Complex { group, gamma, json } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let cx = build_complex(&iv);
            if *json {
                let doc = noncross::complex::export_json(&cx, &iv);
                Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
            } else {
                let fv: Vec<String> =
                    cx.face_vector().iter().map(|c| c.to_string()).collect();
                Ok(format!(
                    "face_vector={} chi={}\n",
                    fv.join(","),
                    euler_characteristic(&cx)
                ))
            }
        }
        Command::Homology { group, gamma, up_to } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, gamma)?;
            let cx = build_complex(&iv);
            let groups = homology(&cx, &iv, *up_to).map_err(|e| Failure::usage(e.to_string()))?;
            let parts: Vec<String> =
                groups.iter().enumerate().map(|(k, g)| format!("H{k}={g}")).collect();
            Ok(format!("{}\n", parts.join(" ")))
        }
        Command::Present { group, kind, gamma, abelianization: ab } => {
            let gt = group.group_type()?;
            let presentation: Option<GroupPresentation> = match kind {
                PresentKind::Artin => {
                    Some(artin_presentation(gt).map_err(|e| Failure::usage(e.to_string()))?)
                }
                PresentKind::Poset => Some(poset_presentation(&interval_for(gt, gamma)?)),
                PresentKind::Reflection => {
                    Some(reflection_presentation(&interval_for(gt, gamma)?))
                }
                PresentKind::Derived => None,
            };
            match presentation {
                Some(p) => {
                    let mut out = p.to_string();
                    if *ab {
                        writeln!(out, "abelianization={}", abelianization(&p)).unwrap();
                    }
                    Ok(out)
                }
                None => {
                    if *ab {
                        return Err(Failure::usage(
                            "--abelianization applies to artin/poset/reflection presentations",
                        ));
                    }
                    let ids = derived_generator_words(gt)
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    let mut out = String::new();
                    for identity in ids {
                        writeln!(out, "{identity}").unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::VerifyPhi { group } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, &None)?;
            let cert = certified(&iv)?;
            let report = verify_phi(&iv, &cert).map_err(|e| Failure::falsified(e.to_string()))?;
            if report.ok() {
                Ok(format!("ok checks={}\n", report.checks))
            } else {
                Err(Failure::falsified(report.failures.join("; ")))
            }
        }
        Command::VerifyTheta { group } => {
            let gt = group.group_type()?;
            let iv = interval_for(gt, &None)?;
            let cert = certified(&iv)?;
            let report = verify_theta_identities(&iv, &cert)
                .map_err(|e| Failure::falsified(e.to_string()))?;
            if report.ok() {
                Ok(format!("ok checks={}\n", report.checks))
            } else {
                Err(Failure::falsified(report.failures.join("; ")))
            }
        }
        Command::Counts { group } => {
            let gt = group.group_type()?;
            let gamma = coxeter_element(gt);
            let iv = interval_for(gt, &None)?;
            let facts = reduced_factorizations(&gamma, gt).len();
            let chains = iv.maximal_chain_count();
            Ok(format!(
                "interval={} factorizations={} chains_max={}\n",
                iv.len(),
                facts,
                chains
            ))
        }
    }
}

fn format_factorization(f: &[Reflection]) -> String {
    f.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
}

/// Same search as the sequential depth-first enumeration, split by first
/// reflection across threads and merged in enumeration order.
fn factorizations_parallel(w: &SignedPerm, gt: GroupType) -> Vec<Vec<Reflection>> {
    let refls = noncross::signed_perm::reflections(gt);
    let lw = w.reflection_length();
    if lw == 0 {
        return vec![vec![]];
    }
    let mut branches: Vec<(Reflection, SignedPerm)> = Vec::new();
    for r in &refls {
        let rp = r.to_perm(gt.rank()).expect("valid rank");
        let rest = rp.compose(w).expect("same rank");
        if rest.reflection_length() + 1 == lw {
            branches.push((*r, rest));
        }
    }
    let results: Vec<Vec<Vec<Reflection>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = branches
            .iter()
            .map(|(_, rest)| scope.spawn(move || reduced_factorizations(rest, gt)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::new();
    for ((first, _), tails) in branches.iter().zip(results) {
        for tail in tails {
            let mut f = Vec::with_capacity(lw);
            f.push(*first);
            f.extend(tail);
            out.push(f);
        }
    }
    out
}

/// Dispatch coverage: every public library operation is reachable from a
/// subcommand, directly or through the code path noted here.
#[allow(dead_code)]
const OPERATION_COVERAGE: &[(&str, &str)] = &[
    ("compose", "leq"),
    ("inverse", "leq"),
    ("decompose", "len"),
    ("reflections", "interval"),
    ("reflection_length", "len"),
    ("fixed_space_dim", "len"),
    ("transposition_length", "len"),
    ("is_member", "len"),
    ("coxeter_element", "counts"),
    ("leq", "leq"),
    ("reflection_below", "meet"),
    ("is_consistently_oriented", "leq"),
    ("is_noncrossing", "leq"),
    ("below_coxeter_c", "leq"),
    ("interval", "interval"),
    ("meet", "meet"),
    ("meet_d_structured", "meet"),
    ("join", "join"),
    ("certify_lattice", "lattice-check"),
    ("to_ncp", "interval"),
    ("reduced_factorizations", "factorizations"),
    ("balanced_cycle_profile", "factorizations"),
    ("relations", "present"),
    ("positively_equal", "wp"),
    ("greedy_normal_form", "nf"),
    ("word_problem", "wp"),
    ("check_cancellation", "lattice-check"),
    ("check_nine_element_lemma", "lattice-check"),
    ("build_complex", "complex"),
    ("euler_characteristic", "complex"),
    ("homology", "homology"),
    ("poset_presentation", "present"),
    ("reflection_presentation", "present"),
    ("artin_presentation", "present"),
    ("phi", "verify-phi"),
    ("verify_phi", "verify-phi"),
    ("derived_generator_words", "present"),
    ("verify_theta_identities", "verify-theta"),
    ("abelianization", "present"),
];
