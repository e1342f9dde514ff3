use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mimzv::algebra::rational_to_f64;
use mimzv::evaluation::{
    eval_exact, eval_float, eval_word_f64, tail_bound_lincomb, EvalMode, EvalResult, EvalTarget, EvalValue,
};
use mimzv::identities::{run_suite, SuiteConfig, Verdict};
use mimzv::interpolation::{partition_decompose, s_operator};
use mimzv::products::{interp_product, shuffle, star_product, stuffle};
use mimzv::series::{theta_coeffs, SeriesMethod};
use mimzv::{Composition, Error, LinComb, Marker, TAssignment, TWord};

#[derive(Parser)]
#[command(name = "mimzv", version, about = "Multi-interpolated multiple zeta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    S,
    Stuffle,
    Star,
    Shuffle,
    Interp,
    Partition,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an index or a word.
    Eval {
        /// Index such as `2,1,1`, evaluated with weak chains.
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        index: Option<String>,
        /// Word such as `z2 t z1`, evaluated with strict chains.
        #[arg(long)]
        word: Option<String>,
        /// Truncation; selects exact mode by default.
        #[arg(long, conflicts_with = "eps", required_unless_present = "eps")]
        n: Option<u64>,
        /// Target accuracy; selects float mode.
        #[arg(long)]
        eps: Option<f64>,
        /// Sequence for a marker as `[marker=]spec`; repeat for several markers.
        #[arg(long = "t")]
        t: Vec<String>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        json: bool,
    },
    /// Expand an operator or product into canonical form.
    Expand {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of the generating series of `{s}_k`.
    Series {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u64,
        #[arg(long = "K")]
        k_max: usize,
        #[arg(long = "t")]
        t: Vec<String>,
        #[arg(long, default_value = "product")]
        method: String,
        /// Compute with every method and fail unless all agree.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a suite of identity checks.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::UnknownSuite(_) | Error::Io(_) => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

fn parse_t(specs: &[String]) -> Result<TAssignment, Error> {
    specs.iter().try_fold(TAssignment::new(), |t, s| t.parse_into(s))
}

fn parse_word(s: &str) -> Result<TWord, Error> {
    s.parse()
}

fn terms_json(x: &LinComb) -> serde_json::Value {
    x.sorted_terms()
        .into_iter()
        .map(|(w, c)| json!({"word": w.to_string(), "coeff": c.to_string()}))
        .collect()
}

fn eval_cmd(
    index: Option<String>,
    word: Option<String>,
    n: Option<u64>,
    eps: Option<f64>,
    t: &[String],
    mode: Option<Mode>,
    json_out: bool,
) -> Result<u8, Error> {
    let t = parse_t(t)?;
    let target = match (index, word) {
        (Some(i), _) => EvalTarget::Index(i.parse::<Composition>()?),
        (_, Some(w)) => EvalTarget::Word(parse_word(&w)?),
        _ => unreachable!("clap requires one of --index, --word"),
    };
    let result = match (n, eps, mode) {
        (Some(n), _, None | Some(Mode::Exact)) => eval_exact(&target, n, &t)?,
        (Some(n), _, Some(Mode::Float)) => eval_float_at(&target, n, &t)?,
        (None, Some(eps), None | Some(Mode::Float)) => eval_float(&target, &t, eps)?,
        (None, Some(_), Some(Mode::Exact)) => {
            return Err(Error::Parse("exact mode needs --n".into()));
        }
        _ => unreachable!("clap requires one of --n, --eps"),
    };
    if json_out {
        println!("{}", result.to_json());
    } else {
        match &result.value {
            EvalValue::Exact(q) => println!("{q}"),
            EvalValue::Float { value, tail_bound } => {
                println!("{value:.15}");
                eprintln!("n = {}, tail bound = {tail_bound:.3e}", result.n);
            }
        }
    }
    Ok(0)
}

/// Float value at a fixed truncation, with the tail bound at that truncation.
fn eval_float_at(target: &EvalTarget, n: u64, t: &TAssignment) -> Result<EvalResult, Error> {
    let x = match target {
        EvalTarget::Index(idx) => s_operator(&LinComb::from_word(idx.to_word()), Marker::TAU),
        EvalTarget::Word(w) => LinComb::from_word(w.clone()),
    };
    t.check_bounded(n)?;
    let value = x.iter().map(|(w, c)| rational_to_f64(c) * eval_word_f64(w, n, t)).sum();
    Ok(EvalResult {
        value: EvalValue::Float { value, tail_bound: tail_bound_lincomb(&x, n) },
        n,
        mode: EvalMode::Float,
    })
}

fn expand_cmd(op: Op, lhs: &str, rhs: Option<&str>, json_out: bool) -> Result<u8, Error> {
    let x = LinComb::from_word(parse_word(lhs)?);
    let y = || -> Result<LinComb, Error> {
        let r = rhs.ok_or_else(|| Error::Parse("this operation needs --rhs".into()))?;
        Ok(LinComb::from_word(parse_word(r)?))
    };
    let out = match op {
        Op::S => s_operator(&x, Marker::TAU),
        Op::Stuffle => stuffle(&x, &y()?),
        Op::Star => star_product(&x, &y()?),
        Op::Shuffle => shuffle(&x, &y()?),
        Op::Interp => interp_product(&x, &y()?, Marker::TAU)?,
        Op::Partition => {
            let w = parse_word(lhs)?;
            if !w.is_plain() {
                return Err(Error::NotPlain);
            }
            partition_decompose(&w.index())?
        }
    };
    if json_out {
        println!("{}", json!({ "terms": terms_json(&out) }));
    } else {
        println!("{out}");
    }
    Ok(0)
}

fn series_cmd(s: u32, n: u64, k_max: usize, t: &[String], method: &str, check: bool, json_out: bool) -> Result<u8, Error> {
    if s == 0 {
        return Err(Error::Parse("--s must be positive".into()));
    }
    let method: SeriesMethod = method.parse()?;
    let t = parse_t(t)?;
    let coeffs = theta_coeffs(method, s, n, &t, k_max).coeffs;
    let mut code = 0;
    if check {
        let methods = [SeriesMethod::Product, SeriesMethod::ExpLog, SeriesMethod::Bell, SeriesMethod::Conv];
        for m in methods {
            if theta_coeffs(m, s, n, &t, k_max).coeffs != coeffs {
                eprintln!("method {m:?} disagrees");
                code = EXIT_FAIL;
            }
        }
        for (k, ck) in coeffs.iter().enumerate().skip(1) {
            let idx = Composition::new(vec![s; k])?;
            if mimzv::evaluation::eval_multi_interp_direct(&idx, n, &t)? != *ck {
                eprintln!("direct evaluation disagrees at k = {k}");
                code = EXIT_FAIL;
            }
        }
    }
    if json_out {
        let arr: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        println!("{}", json!(arr));
    } else {
        for c in &coeffs {
            println!("{c}");
        }
    }
    Ok(code)
}

fn verify_cmd(suite: &str, seed: u64, jobs: usize, json_out: bool) -> Result<u8, Error> {
    let reports = run_suite(suite, SuiteConfig { seed, jobs })?;
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (pass, fail, inconclusive) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Inconclusive));
    if json_out {
        let out = json!({
            "suite": suite,
            "seed": seed,
            "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "summary": {"pass": pass, "fail": fail, "inconclusive": inconclusive},
        });
        println!("{out}");
    } else {
        for r in &reports {
            println!("{r}");
        }
        let exploratory = count(Verdict::Exploratory);
        print!("{pass} passed, {fail} failed, {inconclusive} inconclusive");
        if exploratory > 0 {
            print!(", {exploratory} exploratory");
        }
        println!();
    }
    Ok(if fail > 0 {
        EXIT_FAIL
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { index, word, n, eps, t, mode, json } => eval_cmd(index, word, n, eps, &t, mode, json),
        Command::Expand { op, lhs, rhs, json } => expand_cmd(op, &lhs, rhs.as_deref(), json),
        Command::Series { s, n, k_max, t, method, check, json } => series_cmd(s, n, k_max, &t, &method, check, json),
        Command::Verify { suite, seed, jobs, json } => verify_cmd(&suite, seed, jobs, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
