use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use regsep::algebra::{common_morphism, transition_monoid};
use regsep::automata::parse_pattern;
use regsep::deciders::{
    brute_force_refuter, brute_force_separator, cover_fomod, cover_mod, cover_mod_bounded,
    cover_su, decide_fo, separate_fomod, separate_mod, separate_mod_bounded, separate_su, Problem,
    Stratum, Verdict,
};
use regsep::enrichment::{mod_partition, tag_word};
use regsep::random::{random_dfa, rng};
use regsep::transfer::{element_names, reduce_instance, SfAlphabet};
use regsep::{Alphabet, Dfa, Limits};

#[derive(Parser)]
#[command(
    name = "regsep",
    version,
    about = "Separation and covering for regular languages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Read inputs as inline patterns over --alphabet instead of .aut files.
    #[arg(long, global = true)]
    pattern: bool,
    /// Alphabet for patterns and words: "ab" for single letters, or a
    /// comma-separated list of names.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[arg(long, global = true, default_value_t = 4096)]
    max_monoid: usize,
    /// Longest word the enumerating oracles look at.
    #[arg(long, global = true, default_value_t = 10)]
    max_enum: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Mod,
    ModBrute,
    Su,
    Fo,
    FoMod,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some language of the class contains L1 and avoids L2.
    Separate {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Largest modulus tried by mod-brute.
        #[arg(long, default_value_t = 30)]
        max_d: usize,
        l1: String,
        l2: String,
    },
    /// Decide whether the target has a cover separating the cuts.
    Cover {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 30)]
        max_d: usize,
        target: String,
        cuts: Vec<String>,
    },
    /// Write the stably-formed instance of a target and its cuts.
    Reduce {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Syntactic monoid facts about one language.
    Info {
        input: String,
        /// Also write the syntactic morphism as a .mon file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Tag words with the classes of the length-modulo-d partition.
    Tag {
        #[arg(long = "mod")]
        modulus: usize,
        /// Comma-separated class names, one per residue.
        #[arg(long)]
        names: Option<String>,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Brute-force search in a finite stratum, on two inputs or on seeded
    /// random pairs checked against the exact deciders.
    Oracle {
        /// `su:k` or `mod:d`.
        #[arg(long)]
        stratum: String,
        /// Number of random pairs to check instead of reading inputs.
        #[arg(long, conflicts_with = "inputs")]
        random: Option<usize>,
        inputs: Vec<String>,
    },
}

#[derive(Debug)]
struct Failure(String);

impl From<regsep::Error> for Failure {
    fn from(e: regsep::Error) -> Self {
        Failure(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Failure(msg.into()))
}

/// Output of one run: what to print and the exit code.
enum Report {
    Json(Value, u8),
    Lines(Vec<String>),
}

impl Options {
    fn limits(&self) -> Limits {
        Limits {
            max_monoid: self.max_monoid,
            ..Limits::default()
        }
    }

    fn alphabet(&self) -> Result<Alphabet> {
        let Some(text) = &self.alphabet else {
            return fail("--alphabet is required here");
        };
        let parsed = if text.contains(',') {
            Alphabet::new(text.split(','))
        } else {
            Alphabet::from_chars(text)
        };
        Ok(parsed?)
    }

    fn load(&self, input: &str) -> Result<Dfa> {
        if self.pattern {
            return Ok(parse_pattern(input, &self.alphabet()?)?);
        }
        let text =
            fs::read_to_string(input).map_err(|e| Failure(format!("cannot read {input}: {e}")))?;
        let dfa = Dfa::from_aut_json(&text)?;
        if self.alphabet.is_some() {
            self.alphabet()?.ensure_same(dfa.alphabet(), input)?;
        }
        Ok(dfa)
    }

    fn load_all<'a>(&self, inputs: impl IntoIterator<Item = &'a String>) -> Result<Vec<Dfa>> {
        let dfas = inputs
            .into_iter()
            .map(|i| self.load(i))
            .collect::<Result<Vec<_>>>()?;
        for d in dfas.iter().skip(1) {
            dfas[0]
                .alphabet()
                .ensure_same(d.alphabet(), "input automata")?;
        }
        Ok(dfas)
    }
}

fn verdict_report(v: Verdict) -> Report {
    let code = if v.is_positive() { 0 } else { 1 };
    Report::Json(v.to_json(), code)
}

fn decide(
    problem: Problem,
    class: ClassArg,
    max_d: usize,
    target: &Dfa,
    cuts: &[Dfa],
    limits: &Limits,
) -> Result<Verdict> {
    let refs: Vec<&Dfa> = cuts.iter().collect();
    let v = match (problem, class) {
        (Problem::Separation, ClassArg::Mod) => separate_mod(target, &cuts[0])?,
        (Problem::Separation, ClassArg::ModBrute) => separate_mod_bounded(target, &cuts[0], max_d)?,
        (Problem::Separation, ClassArg::Su) => separate_su(target, &cuts[0], limits)?,
        (Problem::Separation, ClassArg::FoMod) => separate_fomod(target, &cuts[0], limits)?,
        (Problem::Covering, ClassArg::Mod) => cover_mod(target, cuts)?,
        (Problem::Covering, ClassArg::ModBrute) => cover_mod_bounded(target, cuts, max_d)?,
        (Problem::Covering, ClassArg::Su) => cover_su(target, cuts, limits)?,
        (Problem::Covering, ClassArg::FoMod) => cover_fomod(target, cuts, limits)?,
        (_, ClassArg::Fo) => decide_fo(problem, target, &refs, limits)?,
    };
    Ok(v)
}

fn info(opts: &Options, input: &str, out: Option<&Path>) -> Result<Report> {
    let limits = opts.limits();
    let lang = opts.load(input)?.minimize();
    let (eta, _) = transition_monoid(&lang, &limits)?;
    let sf = SfAlphabet::new(&eta)?;
    let monoid = eta.monoid();
    let report = json!({
        "monoid_size": monoid.size(),
        "stability_index": sf.stability_index(),
        "stable": element_names(&sf, sf.stable()),
        "aperiodic": monoid.is_aperiodic(None)?,
        "quasi_aperiodic": monoid.is_aperiodic(Some(sf.stable()))?,
    });
    if let Some(path) = out {
        write_json(path, &eta.to_mon_value())?;
    }
    Ok(Report::Json(report, 0))
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn reduce(opts: &Options, inputs: &[String], out: &Path) -> Result<Report> {
    let limits = opts.limits();
    let dfas = opts.load_all(inputs)?;
    let named: Vec<(String, Dfa)> = dfas
        .into_iter()
        .enumerate()
        .map(|(i, d)| (format!("L{i}"), d))
        .collect();
    let family = common_morphism(&named, &limits)?;
    let cuts: Vec<String> = named[1..].iter().map(|(n, _)| n.clone()).collect();
    let instance = reduce_instance(&family, "L0", &cuts)?;
    fs::create_dir_all(out)
        .map_err(|e| Failure(format!("cannot create {}: {e}", out.display())))?;
    write_json(&out.join("eta.mon"), &family.morphism.to_mon_value())?;
    let mut images = Vec::new();
    for ((name, image), source) in instance.images.iter().zip(inputs) {
        let file = format!("{name}.aut");
        fs::write(out.join(&file), image.to_aut_json() + "\n")
            .map_err(|e| Failure(format!("cannot write {file}: {e}")))?;
        images.push(json!({ "name": name, "file": file, "source": source }));
    }
    let manifest = json!({
        "s": instance.stability_index(),
        "stable": element_names(&instance.sf, instance.stable()),
        "alphabet": instance.sf.alphabet().names(),
        "images": images,
    });
    write_json(&out.join("instance.json"), &manifest)?;
    Ok(Report::Json(manifest, 0))
}

fn tag(opts: &Options, modulus: usize, names: Option<&str>, words: &[String]) -> Result<Report> {
    let alphabet = opts.alphabet()?;
    let mut part = mod_partition(&alphabet, modulus)?;
    if let Some(names) = names {
        part = part.with_class_names(names.split(',').map(String::from).collect())?;
    }
    let tagged = words
        .iter()
        .map(|w| {
            Ok(part
                .tagged_alphabet()
                .render(&tag_word(&part, &alphabet.word(w)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    if opts.json || opts.pretty {
        Ok(Report::Json(json!(tagged), 0))
    } else {
        Ok(Report::Lines(tagged))
    }
}

fn oracle_pair(opts: &Options, stratum: Stratum, text: &str, inputs: &[String]) -> Result<Report> {
    let [l1, l2] = inputs else {
        return fail("oracle takes exactly two inputs");
    };
    let limits = opts.limits();
    let dfas = opts.load_all([l1, l2])?;
    let separator = brute_force_separator(stratum, &dfas[0], &dfas[1], &limits)?;
    let refuter = brute_force_refuter(&dfas[0], &dfas[1], stratum, opts.max_enum, &limits)?;
    let alphabet = dfas[0].alphabet();
    let code = if separator.is_some() { 0 } else { 1 };
    Ok(Report::Json(
        json!({
            "stratum": text,
            "separator": separator.map(|c| c.to_json()),
            "refuter": refuter.map(|w| w.to_json(alphabet)),
            "max_len": opts.max_enum,
        }),
        code,
    ))
}

/// Cross-checks the exact decider of the stratum's class against the
/// brute-force search on seeded random pairs.
fn oracle_random(opts: &Options, stratum: Stratum, text: &str, cases: usize) -> Result<Report> {
    let limits = opts.limits();
    let alphabet = match &opts.alphabet {
        Some(_) => opts.alphabet()?,
        None => Alphabet::from_chars("ab")?,
    };
    let mut r = rng(opts.seed);
    let (mut brute_yes, mut decider_yes) = (0, 0);
    let mut disagreements = Vec::new();
    for case in 0..cases {
        let l1 = random_dfa(&mut r, &alphabet, 4);
        let l2 = random_dfa(&mut r, &alphabet, 4);
        let brute = brute_force_separator(stratum, &l1, &l2, &limits)?.is_some();
        let (decided, agrees) = match stratum {
            Stratum::Su(k) => {
                let v = separate_su(&l1, &l2, &limits)?;
                let within = matches!(v.certificate, Some(regsep::deciders::Certificate::Su { k: found, .. }) if found <= k);
                (v.is_positive(), within == brute)
            }
            Stratum::Mod(_) => {
                let v = separate_mod(&l1, &l2)?;
                (v.is_positive(), v.is_positive() || !brute)
            }
        };
        brute_yes += brute as usize;
        decider_yes += decided as usize;
        if !agrees {
            disagreements
                .push(json!({ "case": case, "l1": l1.to_aut_value(), "l2": l2.to_aut_value() }));
        }
    }
    let code = if disagreements.is_empty() { 0 } else { 1 };
    Ok(Report::Json(
        json!({
            "stratum": text,
            "seed": opts.seed,
            "cases": cases,
            "brute_separable": brute_yes,
            "decider_separable": decider_yes,
            "disagreements": disagreements,
        }),
        code,
    ))
}

fn run(cli: &Cli) -> Result<Report> {
    let opts = &cli.opts;
    let limits = opts.limits();
    match &cli.command {
        Command::Separate {
            class,
            max_d,
            l1,
            l2,
        } => {
            let dfas = opts.load_all([l1, l2])?;
            Ok(verdict_report(decide(
                Problem::Separation,
                *class,
                *max_d,
                &dfas[0],
                &dfas[1..],
                &limits,
            )?))
        }
        Command::Cover {
            class,
            max_d,
            target,
            cuts,
        } => {
            let dfas = opts.load_all(std::iter::once(target).chain(cuts))?;
            Ok(verdict_report(decide(
                Problem::Covering,
                *class,
                *max_d,
                &dfas[0],
                &dfas[1..],
                &limits,
            )?))
        }
        Command::Reduce { inputs, out } => reduce(opts, inputs, out),
        Command::Info { input, out } => info(opts, input, out.as_deref()),
        Command::Tag {
            modulus,
            names,
            words,
        } => tag(opts, *modulus, names.as_deref(), words),
        Command::Oracle {
            stratum,
            random,
            inputs,
        } => {
            let Some(parsed) = Stratum::parse(stratum) else {
                return fail(format!("bad stratum `{stratum}`, expected su:k or mod:d"));
            };
            match random {
                Some(n) => oracle_random(opts, parsed, stratum, *n),
                None => oracle_pair(opts, parsed, stratum, inputs),
            }
        }
    }
}

fn print_json(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            print_json(&json!({ "error": e.to_string().trim_end() }), false);
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(Report::Json(value, code)) => {
            print_json(&value, cli.opts.pretty);
            ExitCode::from(code)
        }
        Ok(Report::Lines(lines)) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            print_json(&json!({ "error": msg }), cli.opts.pretty);
            ExitCode::from(2)
        }
    }
}
