mod input;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stillman_core::derivations::{enough_witness, hasse};
use stillman_core::experiments::{
    betti_census, pd_experiment, small_subalgebra_with, threshold_search, ExperimentReport, Limits, Mode,
    SubalgebraConfig,
};
use stillman_core::families::{constant_betti_open_with, regseq_stabilization_with, regular_locus_with, truncate_limit};
use stillman_core::gb::Budget;
use stillman_core::ideal::{algebraically_independent, is_regular_sequence_with, Ideal, RegSeqMethod};
use stillman_core::poly::monicize;
use stillman_core::resolution::{minimal_free_resolution_with, BettiTable};
use stillman_core::strength::{collective_strength_with, StrengthOracle};
use stillman_core::{Error, Poly, Result};

use input::{parse_field, read_limits, read_polys, PolyDoc};

#[derive(Parser)]
#[command(name = "stillman", version, about = "Strength, regular sequences and Betti tables over small fields")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON input document (default: standard input)
    #[arg(long, global = true)]
    input: Option<String>,
    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of S-pairs per Gröbner computation
    #[arg(long, global = true)]
    budget_pairs: Option<usize>,
    /// Maximum S-pair degree per Gröbner computation
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
    /// Truncation level or scan bound, depending on the command
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Suppress notices on standard error (errors are always reported)
    #[arg(long, global = true)]
    quiet: bool,
    /// Record wall-clock time in experiment reports
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Form degrees, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    /// QQ, F<p> or F4
    #[arg(long, default_value = "F2")]
    field: String,
    /// Sample this many tuples instead of enumerating all of them
    #[arg(long)]
    samples: Option<usize>,
    /// Largest tuple space an exhaustive run may enumerate
    #[arg(long)]
    max_tuples: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact strength of the first polynomial, with a certificate
    Strength,
    /// Collective strength of the polynomials
    Cstrength,
    /// Regular sequence test by both codimension and Koszul criteria
    Regseq,
    /// Codimension of the ideal
    Codim,
    /// Eliminate variables from the ideal
    Eliminate {
        /// Variable names to eliminate, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Algebraic independence of the polynomials
    Indep,
    /// Graded Betti table of R/(polys) or of the cokernel of "matrix"
    Betti,
    /// Hasse derivative of the first polynomial
    Hasse {
        #[arg(long)]
        var: String,
        #[arg(long)]
        order: u32,
    },
    /// Least variable whose partial derivative of the first polynomial is nonzero
    Witness,
    /// Linear change of coordinates making the first polynomial monic in a variable
    Monicize {
        #[arg(long)]
        var: String,
    },
    /// Truncate limit elements to --max-n variables
    Truncate,
    /// First truncation level at which limit elements form a regular sequence
    Stabilize,
    /// Open set of parameters where the family stays a regular sequence
    RegularLocus,
    /// Open set of parameters with constant Betti table
    ConstantBetti,
    /// Threshold search over all (or sampled) tuples
    Threshold {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long)]
        n: usize,
    },
    /// Regular sequence generating a subalgebra that contains the polynomials
    Subalgebra,
    /// Projective dimension against subalgebra size over random tuples
    PdExp {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Numbers of variables, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Distinct Betti tables over all (or sampled) tuples
    Census {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long)]
        n: usize,
    },
}

/// A command's result in the three output formats.
struct Output {
    json: Value,
    text: String,
    csv: Option<String>,
    /// Preformatted JSON, used instead of `json` when present.
    json_text: Option<String>,
}

impl Output {
    fn simple(json: Value, text: String) -> Output {
        Output { json, text, csv: None, json_text: None }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json if self.json_text.is_some() => self.json_text.clone().expect("checked"),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone().unwrap_or_else(|| flat_csv(&self.json)),
        }
    }
}

/// `key,value` lines for results without a natural table.
fn flat_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(m) = v {
        for (k, x) in m {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            if s.contains([',', '"', '\n']) {
                out.push_str(&format!("{k},\"{}\"\n", s.replace('"', "\"\"")));
            } else {
                out.push_str(&format!("{k},{s}\n"));
            }
        }
    }
    out
}

fn budget(c: &Common) -> Budget {
    let d = Budget::default();
    Budget { max_pairs: c.budget_pairs.or(d.max_pairs), max_degree: c.budget_degree.or(d.max_degree) }
}

fn read_input(c: &Common) -> Result<String> {
    let mut s = String::new();
    match &c.input {
        Some(path) => {
            s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        }
        None => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn polys(c: &Common) -> Result<PolyDoc> {
    read_polys(&read_input(c)?)
}

fn var_index(doc: &PolyDoc, name: &str) -> Result<usize> {
    doc.ring.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn betti_output(t: &BettiTable) -> Output {
    Output {
        json: json!({"betti": t.to_entries(), "hash": t.hash()}),
        text: t.to_text(true),
        csv: Some(t.to_csv()),
        json_text: None,
    }
}

fn report_output(r: ExperimentReport) -> Output {
    Output { json: Value::Null, text: r.to_text(), csv: Some(r.to_csv()), json_text: Some(r.to_json()) }
}

fn limits(c: &Common, exp: &ExperimentArgs) -> Limits {
    let d = Limits::default();
    Limits { budget: budget(c), max_tuples: exp.max_tuples.unwrap_or(d.max_tuples), ..d }
}

fn mode(c: &Common, exp: &ExperimentArgs) -> Mode {
    match exp.samples {
        Some(count) => Mode::Sample { count, seed: c.seed },
        None => Mode::Exhaustive,
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let c = &cli.common;
    let b = budget(c);
    let start = Instant::now();
    let timed = |mut r: ExperimentReport| {
        if c.timing {
            r.timing_seconds = Some(start.elapsed().as_secs_f64());
        }
        report_output(r)
    };
    Ok(match &cli.command {
        Command::Strength => {
            let doc = polys(c)?;
            let f = doc.first()?;
            let r = StrengthOracle::default().strength(f)?;
            let cert = r.certificate.as_ref().map(|c| {
                c.pairs.iter().map(|(g, h)| json!([g.to_string(), h.to_string()])).collect::<Vec<_>>()
            });
            let mut text = format!("strength: {}\n", r.value);
            if let Some(cert) = &r.certificate {
                if !cert.pairs.is_empty() {
                    let terms: Vec<String> = cert.pairs.iter().map(|(g, h)| format!("({g})*({h})")).collect();
                    text.push_str(&format!("certificate: {}\n", terms.join(" + ")));
                }
            }
            Output::simple(json!({"strength": r.value, "certificate": cert}), text)
        }
        Command::Cstrength => {
            let doc = polys(c)?;
            let cs = collective_strength_with(&doc.polys, &StrengthOracle::default())?;
            let k = doc.ring.field().clone();
            let witness = cs.witness.as_ref().map(|(coeffs, g)| {
                json!({"coefficients": coeffs.iter().map(|x| k.format(x)).collect::<Vec<_>>(), "combination": g.to_string()})
            });
            let mut text = format!("collective strength: {}\n", cs.value);
            if let Some((_, g)) = &cs.witness {
                text.push_str(&format!("witness: {g}\n"));
            }
            Output::simple(json!({"collective_strength": cs.value, "witness": witness}), text)
        }
        Command::Regseq => {
            let doc = polys(c)?;
            let a = is_regular_sequence_with(&doc.polys, RegSeqMethod::Codim, b)?;
            let k = is_regular_sequence_with(&doc.polys, RegSeqMethod::Koszul, b)?;
            let text = format!("regular: {a}\nmethod agreement: {}\n", a == k);
            Output::simple(json!({"regular": a, "method_agreement": a == k}), text)
        }
        Command::Codim => {
            let doc = polys(c)?;
            let codim = Ideal::new(&doc.ring, doc.polys.clone())?.with_budget(b).codimension()?;
            Output::simple(json!({"codim": codim}), format!("codim: {codim}\n"))
        }
        Command::Eliminate { vars } => {
            let doc = polys(c)?;
            let drop = vars.iter().map(|v| var_index(&doc, v)).collect::<Result<Vec<_>>>()?;
            let j = Ideal::new(&doc.ring, doc.polys.clone())?.with_budget(b).eliminate(&drop)?;
            let gens = strings(j.generators());
            let names: Vec<&str> = j.ring().vars().iter().map(|v| v.name.as_str()).collect();
            let text = format!("ring: {}\n{}", names.join(","), gens.iter().map(|g| format!("{g}\n")).collect::<String>());
            Output::simple(json!({"vars": names, "generators": gens}), text)
        }
        Command::Indep => {
            let doc = polys(c)?;
            let r = algebraically_independent(&doc.polys)?;
            let rel = r.relation.as_ref().map(|p| p.to_string());
            let mut text = format!("independent: {}\n", r.independent);
            if let Some(rel) = &rel {
                text.push_str(&format!("relation: {rel}\n"));
            }
            Output::simple(json!({"independent": r.independent, "relation": rel}), text)
        }
        Command::Betti => {
            let doc = polys(c)?;
            betti_output(&minimal_free_resolution_with(&doc.presentation()?, b)?.betti())
        }
        Command::Hasse { var, order } => {
            let doc = polys(c)?;
            let d = hasse(doc.first()?, var_index(&doc, var)?, *order)?;
            Output::simple(json!({"result": d.to_string()}), format!("{d}\n"))
        }
        Command::Witness => {
            let doc = polys(c)?;
            let w = enough_witness(doc.first()?)?;
            let name = w.map(|j| doc.ring.vars()[j].name.clone());
            let text = match &name {
                Some(n) => format!("witness: {n}\n"),
                None => "witness: none (a p-th power)\n".into(),
            };
            Output::simple(json!({"witness": name, "index": w}), text)
        }
        Command::Monicize { var } => {
            let doc = polys(c)?;
            let m = monicize(doc.first()?, var_index(&doc, var)?)?;
            let k = doc.ring.field();
            let shifts: Vec<String> = m.shifts.iter().map(|a| k.format(a)).collect();
            let json = json!({"shifts": shifts, "unit": k.format(&m.unit), "image": m.image.to_string(), "monic": m.monic.to_string()});
            let text = format!("shifts: {}\nunit: {}\nmonic: {}\n", shifts.join(","), k.format(&m.unit), m.monic);
            Output::simple(json, text)
        }
        Command::Truncate => {
            let es = read_limits(&read_input(c)?)?;
            let n = c.max_n.ok_or_else(|| Error::Parse("truncate needs --max-n".into()))?;
            let ts: Vec<Poly> = es.iter().map(|e| truncate_limit(e, n)).collect();
            let text = ts.iter().map(|t| format!("{t}\n")).collect();
            Output::simple(json!({"n": n, "truncations": strings(&ts)}), text)
        }
        Command::Stabilize => {
            let es = read_limits(&read_input(c)?)?;
            let n_max = c.max_n.unwrap_or(8);
            let s = regseq_stabilization_with(&es, n_max, b)?;
            let text = format!("stabilizes at n = {} (checked up to {n_max})\n", s.n);
            Output::simple(serde_json::to_value(&s).expect("serializable"), text)
        }
        Command::RegularLocus => {
            let doc = polys(c)?;
            let n = c.max_n.unwrap_or(doc.ring.nvars());
            let u = regular_locus_with(&doc.polys, n, b)?;
            Output::simple(json!({"open": u, "n": n}), format!("regular on D({u})\n"))
        }
        Command::ConstantBetti => {
            let doc = polys(c)?;
            let cb = constant_betti_open_with(&doc.presentation()?, b)?;
            let text = format!("constant on D({})\n{}", cb.open, cb.table.to_text(true));
            Output {
                json: serde_json::to_value(&cb).expect("serializable"),
                text,
                csv: Some(cb.table.to_csv()),
                json_text: None,
            }
        }
        Command::Threshold { exp, n } => {
            let k = parse_field(&exp.field)?;
            timed(threshold_search(&exp.degrees, &k, *n, mode(c, exp), limits(c, exp))?)
        }
        Command::Subalgebra => {
            let doc = polys(c)?;
            let cfg = SubalgebraConfig { limits: Limits { budget: b, ..Limits::default() }, ..Default::default() };
            let r = small_subalgebra_with(&doc.polys, &StrengthOracle::default(), cfg)?;
            let json = json!({"s": r.s, "gs": strings(&r.gs), "expressions": strings(&r.expressions), "trace": r.trace});
            let mut text = format!("s = {}\n", r.s);
            for (j, g) in r.gs.iter().enumerate() {
                text.push_str(&format!("Y{} = {g}\n", j + 1));
            }
            for (f, e) in doc.polys.iter().zip(&r.expressions) {
                text.push_str(&format!("{f} = {e}\n"));
            }
            Output::simple(json, text)
        }
        Command::PdExp { exp, n } => {
            let k = parse_field(&exp.field)?;
            let samples = exp.samples.unwrap_or(50);
            timed(pd_experiment(&exp.degrees, &k, n, samples, c.seed, limits(c, exp))?)
        }
        Command::Census { exp, n } => {
            let k = parse_field(&exp.field)?;
            timed(betti_census(&exp.degrees, &k, *n, mode(c, exp), limits(c, exp))?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let s = out.render(cli.common.format);
            let written = match &cli.common.output {
                Some(path) => std::fs::write(path, s).map_err(|e| format!("cannot write {path}: {e}")).map(|()| {
                    if !cli.common.quiet {
                        eprintln!("wrote {path}");
                    }
                }),
                None => {
                    print!("{s}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(msg) => {
                    eprintln!("{}", json!({"error": "io", "message": msg}));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            let kind = if e.is_budget() { "budget" } else { "input" };
            eprintln!("{}", json!({"error": kind, "message": e.to_string()}));
            ExitCode::from(if e.is_budget() { 2 } else { 1 })
        }
    }
}
