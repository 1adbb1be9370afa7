//! `zgkit`: command-line front end for the decision procedures.
//!
//! Exit codes: 0 affirmative or verified, 1 negative with a witness, 2 usage
//! or input error, 3 resource cap reached.

// A closed stdout (e.g. piping into `head`) ends the process quietly.
macro_rules! println {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use zgkit_core::automata::{self, Dfa, DfaError, DfaRecord, Roundtrip};
use zgkit_core::category::build_category;
use zgkit_core::congruence::DEFAULT_SIGNATURE_CAP;
use zgkit_core::delay::{self, Compatibility, DEFAULT_STATE_CAP};
use zgkit_core::enumeration::{self, CorpusCheck, EnumCaps, EnumError, EnumSpec};
use zgkit_core::fixtures;
use zgkit_core::threshold::{self, ThresholdError};
use zgkit_core::varieties::{self, Variety, VarietyError, VarietyVerdict};
use zgkit_core::{Alphabet, CayleyTable, FiniteSemigroup};

#[derive(Parser)]
#[command(name = "zgkit", version, about = "Decision procedures for the variety ZG and its locality")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Input file, or the name of a built-in fixture (z3, b2_1, rz2, ...).
    #[arg(long)]
    input: String,
    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Membership of a Cayley table in every standard variety.
    ClassifyMonoid {
        #[command(flatten)]
        common: Common,
        /// Period parameter; defaults to the period of the input.
        #[arg(long)]
        p: Option<u32>,
    },
    /// Classifies the syntactic monoid and semigroup of a DFA.
    ClassifyLanguage {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Syntactic monoid of a DFA as a Cayley table.
    Syntactic {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Shuffle decomposition of a language with syntactic monoid in ZG.
    DecomposeZg {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SIGNATURE_CAP)]
        cap: usize,
    },
    /// Decomposes and checks that the union of the terms is the language.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SIGNATURE_CAP)]
        cap: usize,
    },
    /// The category of idempotents of a semigroup.
    Category {
        #[command(flatten)]
        common: Common,
        /// Write the category in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compatibility of the n,p-congruence with the category of idempotents.
    DelayCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
    },
    /// Compares the compatibility checker with the equational test.
    CrossValidate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
    },
    /// Enumerates semigroups of a fixed order as JSON lines.
    Enumerate(EnumArgs),
    /// Runs the corpus cross-checks over an enumeration.
    VerifyCorpus {
        #[command(flatten)]
        spec: EnumArgs,
        /// Checks to run (default: all). One of zg-definition, lzg-local,
        /// omega-distrib, period-divides(P), mnil, interleave.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Distant rare-frequent thresholds for a pair of words.
    Threshold {
        /// First word; omit both words to sample a random pair from --seed.
        #[arg(long)]
        u1: Option<String>,
        #[arg(long)]
        u2: Option<String>,
        /// Alphabet letters; defaults to the letters of the words.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper bound for the scan for the least distant threshold.
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct EnumArgs {
    #[arg(long)]
    order: usize,
    /// Keep only tables with an identity.
    #[arg(long)]
    monoids: bool,
    /// One representative per isomorphism class.
    #[arg(long)]
    iso: bool,
    /// Keep only members of this variety (repeatable).
    #[arg(long = "filter")]
    filters: Vec<String>,
    /// Largest order accepted (default 4, or 5 with --iso).
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Input(String),
    Cap(String),
}

type Outcome = Result<u8, Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read_input(input: &str) -> Result<String, Failure> {
    fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))
}

fn load_semigroup(input: &str) -> Result<FiniteSemigroup, Failure> {
    if !Path::new(input).exists() {
        if let Some(s) = fixtures::by_name(input) {
            return Ok(s);
        }
    }
    let table: CayleyTable = serde_json::from_str(&read_input(input)?).map_err(input_err)?;
    table.into_semigroup().map_err(input_err)
}

fn load_dfa(input: &str) -> Result<Dfa, Failure> {
    if !Path::new(input).exists() {
        let sample = match input {
            "even_a" => Some(automata::samples::even_a()),
            "acastar" => Some(automata::samples::a_c_a()),
            "abastar" => Some(automata::samples::a_b_a_three()),
            "abstar" => Some(automata::samples::ab_star()),
            _ => None,
        };
        if let Some(d) = sample {
            return Ok(d);
        }
    }
    let record: DfaRecord = serde_json::from_str(&read_input(input)?).map_err(input_err)?;
    Dfa::from_record(record).map_err(input_err)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn describe_verdict(v: &VarietyVerdict, s: &FiniteSemigroup) -> String {
    let mut line = format!("{:<10} {}", v.variety, if v.member { "yes" } else { "no" });
    if let Some(w) = &v.witness {
        let assignment: Vec<String> = w.assignment.iter().map(|(k, &x)| format!("{k}={}", s.name(x))).collect();
        line.push_str(&format!("  witness {} [{}]", w.identity_name, assignment.join(", ")));
    }
    line.push_str(&format!("  ({})", v.method));
    line
}

/// Verdicts for every applicable standard variety; monoid varieties are
/// skipped on semigroups without an identity.
fn classify(s: &FiniteSemigroup, p: u32) -> Result<Vec<VarietyVerdict>, Failure> {
    let mut out = Vec::new();
    for v in Variety::standard_list(p) {
        match varieties::is_in(s, v) {
            Ok(r) => out.push(r),
            Err(VarietyError::RequiresMonoid(_)) => {}
            Err(e @ VarietyError::ArityMismatch { .. }) => return Err(Failure::Cap(e.to_string())),
            Err(e) => return Err(input_err(e)),
        }
    }
    Ok(out)
}

fn print_verdicts(verdicts: &[VarietyVerdict], s: &FiniteSemigroup, json: bool) {
    if json {
        print_json(&verdicts);
    } else {
        for v in verdicts {
            println!("{}", describe_verdict(v, s));
        }
    }
}

fn dfa_failure(e: DfaError) -> Failure {
    match e {
        DfaError::SizeCapExceeded(_) | DfaError::ResourceExceeded { .. } => Failure::Cap(e.to_string()),
        other => input_err(other),
    }
}

fn not_in_zg(w: &zgkit_core::Witness, json: bool) -> u8 {
    if json {
        print_json(&json!({ "result": "not_in_zg", "witness": w }));
    } else {
        let assignment: Vec<String> = w.assignment.iter().map(|(k, x)| format!("{k}={x}")).collect();
        println!("not in ZG: {} fails at [{}]", w.identity_name, assignment.join(", "));
    }
    1
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::ClassifyMonoid { common, p } => {
            let s = load_semigroup(&common.input)?;
            let p = p.unwrap_or(s.semigroup_period() as u32);
            print_verdicts(&classify(&s, p)?, &s, common.json);
            Ok(0)
        }
        Command::ClassifyLanguage { common, p, cap } => {
            let d = load_dfa(&common.input)?;
            let sm = automata::syntactic_monoid(&d, cap).map_err(dfa_failure)?;
            let p = p.unwrap_or(sm.monoid.semigroup_period() as u32);
            let verdicts =
                automata::classify_language(&d, &Variety::standard_list(p), cap).map_err(dfa_failure)?;
            if common.json {
                print_json(&verdicts);
            } else {
                let semigroup = automata::syntactic_semigroup(&d, cap).map_err(dfa_failure)?;
                for v in &verdicts {
                    let monoid_variety = v.variety.parse::<Variety>().map(|x| x.is_monoid_variety()).unwrap_or(true);
                    let names = if monoid_variety { &sm.monoid } else { &semigroup };
                    println!("{}", describe_verdict(v, names));
                }
            }
            Ok(0)
        }
        Command::Syntactic { common, cap } => {
            let d = load_dfa(&common.input)?;
            let sm = automata::syntactic_monoid(&d, cap).map_err(dfa_failure)?;
            let images: Vec<(String, usize)> = d
                .alphabet()
                .symbols()
                .iter()
                .cloned()
                .zip(sm.morphism.images().iter().copied())
                .collect();
            if common.json {
                print_json(&json!({
                    "monoid": sm.monoid.to_cayley(),
                    "images": images.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
                    "accepting": sm.accepting,
                }));
            } else {
                println!("order {}", sm.monoid.order());
                for x in sm.monoid.elements() {
                    let row: Vec<String> = sm.monoid.elements().map(|y| sm.monoid.name(sm.monoid.mul(x, y))).collect();
                    println!("{:>6} | {}", sm.monoid.name(x), row.join(" "));
                }
                for (a, x) in &images {
                    println!("h({a}) = {}", sm.monoid.name(*x));
                }
                let acc: Vec<String> = sm.accepting.iter().map(|&x| sm.monoid.name(x)).collect();
                println!("accepting: {}", acc.join(" "));
            }
            Ok(0)
        }
        Command::DecomposeZg { common, cap } => {
            let d = load_dfa(&common.input)?;
            match automata::zg_decompose(&d, cap) {
                Ok(dec) => {
                    let terms: Vec<_> = dec.terms.iter().map(|t| t.to_record(d.alphabet())).collect();
                    if common.json {
                        print_json(&json!({ "n": dec.n, "p": dec.p, "terms": terms }));
                    } else {
                        println!("n = {}, p = {}, {} terms", dec.n, dec.p, terms.len());
                        for t in &terms {
                            let res: Vec<String> = t.residues.iter().map(|(a, r)| format!("{a}:{r:?}")).collect();
                            println!(
                                "  rare \"{}\" frequent {{{}}} residues {{{}}}",
                                t.rare_word,
                                t.frequent_alphabet.join(","),
                                res.join(" ")
                            );
                        }
                    }
                    Ok(0)
                }
                Err(DfaError::NotInZG(w)) => Ok(not_in_zg(&w, common.json)),
                Err(e) => Err(dfa_failure(e)),
            }
        }
        Command::Roundtrip { common, cap } => {
            let d = load_dfa(&common.input)?;
            match automata::decomposition_roundtrip(&d, cap) {
                Ok(Roundtrip::Pass { terms }) => {
                    if common.json {
                        print_json(&json!({ "result": "pass", "terms": terms }));
                    } else {
                        println!("pass: {terms} terms reproduce the language");
                    }
                    Ok(0)
                }
                Ok(Roundtrip::Mismatch(w)) => {
                    let word = d.alphabet().decode(&w);
                    if common.json {
                        print_json(&json!({ "result": "mismatch", "word": word }));
                    } else {
                        println!("mismatch on \"{word}\"");
                    }
                    Ok(1)
                }
                Err(DfaError::NotInZG(w)) => Ok(not_in_zg(&w, common.json)),
                Err(e) => Err(dfa_failure(e)),
            }
        }
        Command::Category { common, dot } => {
            let s = load_semigroup(&common.input)?;
            let cat = build_category(&s);
            if let Some(path) = &dot {
                fs::write(path, cat.to_dot(&[])).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let objects: Vec<String> = cat.objects().iter().map(|&e| s.name(e)).collect();
            let arrows: Vec<String> = (0..cat.arrows().len()).map(|i| cat.arrow_name(i)).collect();
            if common.json {
                print_json(&json!({ "objects": objects, "arrows": arrows }));
            } else {
                println!("{} objects: {}", objects.len(), objects.join(" "));
                println!("{} arrows:", arrows.len());
                for a in &arrows {
                    println!("  {a}");
                }
            }
            Ok(0)
        }
        Command::DelayCheck { common, p, n, cap } => {
            if n == 0 || p == 0 {
                return Err(Failure::Input("n and p must be at least 1".into()));
            }
            let s = load_semigroup(&common.input)?;
            let report = delay::check_compatibility(&s, n, p, cap);
            if common.json {
                print_json(&report);
            } else {
                match &report.outcome {
                    Compatibility::Compatible => println!("compatible at n={n}, p={p}"),
                    Compatibility::Incompatible(pair) => {
                        println!("incompatible at n={n}, p={p}");
                        println!("  {}", pair.left_rendered);
                        println!("  {}", pair.right_rendered);
                        println!(
                            "  values {} and {}",
                            s.name(pair.left_value.label),
                            s.name(pair.right_value.label)
                        );
                    }
                    Compatibility::ResourceExceeded => println!("state cap {cap} reached"),
                }
                println!("{} states explored", report.explored_states);
            }
            Ok(match report.outcome {
                Compatibility::Compatible => 0,
                Compatibility::Incompatible(_) => 1,
                Compatibility::ResourceExceeded => 3,
            })
        }
        Command::CrossValidate { common, p, max_n, cap } => {
            if max_n == 0 || p == 0 {
                return Err(Failure::Input("max-n and p must be at least 1".into()));
            }
            let s = load_semigroup(&common.input)?;
            let cv = delay::cross_validate(&s, p, max_n, cap);
            if common.json {
                print_json(&cv);
            } else {
                println!("{}", describe_verdict(&cv.verdict, &s));
                for r in &cv.reports {
                    let what = match &r.outcome {
                        Compatibility::Compatible => "compatible".to_string(),
                        Compatibility::Incompatible(pair) => {
                            format!("incompatible: {} | {}", pair.left_rendered, pair.right_rendered)
                        }
                        Compatibility::ResourceExceeded => "state cap reached".to_string(),
                    };
                    println!("  n={}: {what} ({} states)", r.n, r.explored_states);
                }
                if cv.theory_violation {
                    println!("theory violation: compatible congruence for a non-member");
                }
            }
            Ok(if cv.theory_violation {
                1
            } else if !cv.conclusive() {
                3
            } else if cv.verdict.member {
                0
            } else {
                1
            })
        }
        Command::Enumerate(args) => {
            let corpus = run_enumeration(&args)?;
            if args.json {
                let stdout = std::io::stdout();
                if let Err(e) = enumeration::write_jsonl(&corpus, stdout.lock()) {
                    if e.kind() != std::io::ErrorKind::BrokenPipe {
                        return Err(input_err(e));
                    }
                }
            } else {
                println!("{} structures", corpus.len());
            }
            Ok(0)
        }
        Command::VerifyCorpus { spec, checks } => {
            let checks = if checks.is_empty() {
                CorpusCheck::all()
            } else {
                checks
                    .iter()
                    .map(|c| c.parse::<CorpusCheck>())
                    .collect::<Result<_, _>>()
                    .map_err(input_err)?
            };
            let corpus = run_enumeration(&spec)?;
            let report = enumeration::verify_structures(&corpus, &checks);
            if spec.json {
                print_json(&report);
            } else {
                println!("{} structures", report.structures);
                for c in &report.checks {
                    println!("  {:<20} applied {:>6}  violations {}", c.check, c.applicable, c.violations.len());
                    for v in c.violations.iter().take(5) {
                        println!("    #{} {:?}: {}", v.index, v.table, v.detail);
                    }
                }
            }
            Ok(if report.violation_count() == 0 { 0 } else { 1 })
        }
        Command::Threshold { u1, u2, alphabet, m, seed, cap, json } => {
            let (u1, u2) = match (u1, u2) {
                (Some(a), Some(b)) => (a, b),
                (None, None) => random_pair(seed),
                _ => return Err(Failure::Input("give both --u1 and --u2, or neither".into())),
            };
            let letters = alphabet.unwrap_or_else(|| {
                let mut cs: Vec<char> = u1.chars().chain(u2.chars()).collect();
                cs.sort_unstable();
                cs.dedup();
                if cs.is_empty() {
                    cs.push('a');
                }
                cs.into_iter().collect()
            });
            let sigma = Alphabet::from_chars(&letters).map_err(input_err)?;
            let (w1, w2) = (sigma.encode(&u1).map_err(input_err)?, sigma.encode(&u2).map_err(input_err)?);
            let t = threshold::find_distant_threshold(&w1, &w2, sigma.len(), m).map_err(|e| match e {
                ThresholdError::Overflow { .. } => Failure::Cap(e.to_string()),
                other => input_err(other),
            })?;
            let least = threshold::minimal_distant_threshold(&w1, &w2, m, cap);
            if json {
                print_json(&json!({
                    "u1": u1,
                    "u2": u2,
                    "m": m,
                    "threshold": t,
                    "within_bound": t.within_bound(sigma.len()),
                    "least": least,
                }));
            } else {
                println!("u1 = \"{u1}\", u2 = \"{u2}\", m = {m}");
                println!("threshold {} = {}^{}", t.value, t.base, t.exponent);
                match least {
                    Some(n) => println!("least distant threshold {n}"),
                    None => println!("no distant threshold up to {cap}"),
                }
            }
            Ok(0)
        }
    }
}

fn random_pair(seed: u64) -> (String, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = || -> String {
        let mut w: Vec<char> = Vec::new();
        for c in ['a', 'b'] {
            let k = if rng.gen_bool(0.5) { rng.gen_range(0..4) } else { rng.gen_range(10..40) };
            w.extend(std::iter::repeat(c).take(k));
        }
        for i in (1..w.len()).rev() {
            w.swap(i, rng.gen_range(0..=i));
        }
        w.into_iter().collect()
    };
    let u1 = word();
    (u1, word())
}

fn run_enumeration(args: &EnumArgs) -> Result<Vec<FiniteSemigroup>, Failure> {
    let filters = args
        .filters
        .iter()
        .map(|f| f.parse::<Variety>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(input_err)?;
    let spec = EnumSpec {
        order: args.order,
        require_identity: args.monoids,
        up_to_isomorphism: args.iso,
        filters,
    };
    let mut caps = EnumCaps::default();
    if let Some(c) = args.cap {
        caps.labeled = c;
        caps.isomorphism = c;
    }
    enumeration::enumerate_with_caps(&spec, caps).map_err(|e| match e {
        EnumError::CapExceeded { .. } => Failure::Cap(e.to_string()),
        other => input_err(other),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("resource cap: {msg}");
            ExitCode::from(3)
        }
    }
}
