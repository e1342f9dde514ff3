//! Named, parameterized identity checks producing [`Report`]s, and the
//! seeded suites that bundle them.
//!
//! Checks that hold at every truncation compare rationals for equality.
//! Sum formulas hold only in the limit; they are compared in floating point
//! against a tolerance that must dominate the rigorous tail bound of both
//! sides, otherwise the verdict is inconclusive.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{int, rat, rational_to_f64, Block, Composition, LinComb, Marker, Rational, TWord};
use crate::error::{Error, Result};
use crate::evaluation::{
    eval_fast_uniform_exact, eval_multi_interp_direct, eval_word_f64, even_odd_parts, tail_bound_chain,
    tail_bound_index, SequenceRule, TAssignment, TruncatedEvaluator, Uniform,
};
use crate::interpolation::{
    compositions, contract_index, normalize_indexed, s_minus_identity_pow, s_operator, s_operator_contraction,
    s_operator_sum, u_interpolation, v_map, UWeights,
};
use crate::products::{interp_product, stuffle};
use crate::series::{
    complete_bell, convolution_value, bell_value, modified_bell_det, theta_coeffs_explog,
    theta_coeffs_product,
};

/// Allowance for floating-point rounding in numeric checks, added to every
/// tail bound.
pub const ROUNDING_ALLOWANCE: f64 = 1e-10;

/// Default ratio of tolerance to tail bound in numeric checks.
pub const SAFETY_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
    Symbolic(String),
}

impl Value {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Exact(q) => json!(q.to_string()),
            Value::Float(x) => json!(x),
            Value::Symbolic(s) => json!(s),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Float(x) => write!(f, "{x:.12e}"),
            Value::Symbolic(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckMode {
    Exact,
    Numeric { tolerance: f64, tail_bound: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The tolerance does not cover the tail bound.
    Inconclusive,
    /// Reported without asserting anything.
    Exploratory,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Exploratory => "exploratory",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub mode: CheckMode,
    pub lhs: Value,
    pub rhs: Value,
    pub verdict: Verdict,
    pub elapsed: Duration,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn exact(identity: &str, params: BTreeMap<String, String>, lhs: Value, rhs: Value, start: Instant) -> Report {
        let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
        Report {
            identity: identity.to_string(),
            params,
            mode: CheckMode::Exact,
            lhs,
            rhs,
            verdict,
            elapsed: start.elapsed(),
        }
    }

    fn numeric(
        identity: &str,
        params: BTreeMap<String, String>,
        lhs: f64,
        rhs: f64,
        tail_bound: f64,
        tol: Option<f64>,
        start: Instant,
    ) -> Report {
        let tail_bound = tail_bound + ROUNDING_ALLOWANCE;
        let tolerance = tol.unwrap_or(SAFETY_FACTOR * tail_bound);
        let verdict = if !tail_bound.is_finite() || tolerance < tail_bound {
            Verdict::Inconclusive
        } else if (lhs - rhs).abs() <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report {
            identity: identity.to_string(),
            params,
            mode: CheckMode::Numeric { tolerance, tail_bound },
            lhs: Value::Float(lhs),
            rhs: Value::Float(rhs),
            verdict,
            elapsed: start.elapsed(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = json!({
            "identity": self.identity,
            "params": self.params,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "pass": self.pass(),
            "verdict": self.verdict.to_string(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        });
        match self.mode {
            CheckMode::Exact => obj["mode"] = json!("exact"),
            CheckMode::Numeric { tolerance, tail_bound } => {
                obj["mode"] = json!("numeric");
                obj["tolerance"] = json!(tolerance);
                obj["tail_bound"] = json!(tail_bound);
            }
        }
        obj
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "[{}] {} ({})", self.verdict, self.identity, params.join(", "))?;
        if let CheckMode::Numeric { tolerance, .. } = self.mode {
            if let (Value::Float(a), Value::Float(b)) = (&self.lhs, &self.rhs) {
                write!(f, " |lhs-rhs|={:.3e} tol={:.3e}", (a - b).abs(), tolerance)?;
            }
        }
        Ok(())
    }
}

macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = BTreeMap::new();
        $(m.insert($k.to_string(), $v.to_string());)*
        m
    }};
}

fn t_label(t: &TAssignment) -> String {
    match t.rule(Marker::TAU) {
        Some(r) => format!("{r:?}"),
        None => "none".into(),
    }
}

fn multi_interp_or_one(idx: &Composition, n: u64, t: &TAssignment) -> Rational {
    if idx.is_empty() {
        Rational::one()
    } else {
        eval_multi_interp_direct(idx, n, t).expect("non-empty")
    }
}

/// `ζ_n^t(S(x ⋆ y))` against `ζ_n^t(x) · ζ_n^t(y)`, the latter from the
/// weak-chain definition.
pub fn check_product_homomorphism(x: &Composition, y: &Composition, n: u64, t: &TAssignment) -> Report {
    let start = Instant::now();
    let product = interp_product(&x.to_word().into(), &y.to_word().into(), Marker::TAU).expect("plain inputs");
    let lhs = TruncatedEvaluator::new(n, t).lincomb(&s_operator(&product, Marker::TAU));
    let rhs = multi_interp_or_one(x, n, t) * multi_interp_or_one(y, n, t);
    Report::exact(
        "product-homomorphism",
        params!("x" => x, "y" => y, "n" => n, "t" => t_label(t)),
        Value::Exact(lhs),
        Value::Exact(rhs),
        start,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaPart {
    /// `S` equals the sum of weighted contractions.
    A,
    /// `(S - 1)^n` annihilates words of length `n`.
    B,
    /// `S^{t1 + t2} = S^{t1} S^{t2}`, both orders.
    C,
}

impl std::str::FromStr for LemmaPart {
    type Err = Error;
    fn from_str(s: &str) -> Result<LemmaPart> {
        match s {
            "a" => Ok(LemmaPart::A),
            "b" => Ok(LemmaPart::B),
            "c" => Ok(LemmaPart::C),
            _ => Err(Error::Parse(format!("unknown lemma part `{s}`"))),
        }
    }
}

pub fn check_s_lemma(word: &TWord, part: LemmaPart) -> Result<Report> {
    let start = Instant::now();
    let x = LinComb::from_word(word.clone());
    let (t1, t2) = (Marker::indexed(1), Marker::indexed(2));
    let (id, lhs, rhs) = match part {
        LemmaPart::A => (
            "s-lemma-a",
            s_operator(&x, Marker::TAU),
            s_operator_contraction(word, Marker::TAU)?,
        ),
        LemmaPart::B => ("s-lemma-b", s_minus_identity_pow(&x, Marker::TAU, word.depth()), LinComb::zero()),
        LemmaPart::C => {
            let combined = s_operator_sum(&x, &[t1, t2]);
            let one_two = s_operator(&s_operator(&x, t2), t1);
            let two_one = s_operator(&s_operator(&x, t1), t2);
            if one_two != two_one {
                return Ok(Report::exact(
                    "s-lemma-c",
                    params!("word" => word, "order" => "t1 after t2 vs t2 after t1"),
                    Value::Symbolic(one_two.to_string()),
                    Value::Symbolic(two_one.to_string()),
                    start,
                ));
            }
            ("s-lemma-c", combined, one_two)
        }
    };
    Ok(Report::exact(
        id,
        params!("word" => word),
        Value::Symbolic(lhs.to_string()),
        Value::Symbolic(rhs.to_string()),
        start,
    ))
}

/// Admissible indices of the given weight and depth.
pub fn admissible_indices(weight: u32, depth: usize) -> Vec<Composition> {
    fn go(rem: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(Composition::new(prefix.clone()).expect("positive"));
            }
            return;
        }
        let lo = if prefix.is_empty() { 2 } else { 1 };
        let hi = rem.saturating_sub(slots as u32 - 1);
        for p in lo..=hi {
            prefix.push(p);
            go(rem - p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if depth > 0 {
        go(weight, depth, &mut Vec::new(), &mut out);
    }
    out
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Float value of `Σ c · ζ_n(word)`.
fn lincomb_f64(x: &LinComb, n: u64, t: &TAssignment) -> f64 {
    x.iter().map(|(w, c)| rational_to_f64(c) * eval_word_f64(w, n, t)).sum()
}

fn multi_interp_f64(idx: &Composition, n: u64, t: &TAssignment) -> f64 {
    lincomb_f64(&s_operator(&LinComb::from_word(idx.to_word()), Marker::TAU), n, t)
}

fn zeta_f64(k: u32, n: u64) -> f64 {
    eval_word_f64(&TWord::plain(&[k]).expect("k >= 1"), n, &TAssignment::new())
}

/// Interpolated sum formula at constant `t`:
/// `Σ_{adm, weight k, depth nd} ζ^t = ζ(k) Σ_j C(k-1, j) t^j (1-t)^{nd-1-j}`.
pub fn check_sum_formula(k: u32, nd: usize, t_value: &Rational, n: u64, tol: Option<f64>) -> Result<Report> {
    if k as usize <= nd || nd == 0 {
        return Err(Error::OutOfRange(format!("sum formula needs k > nd >= 1, got k={k}, nd={nd}")));
    }
    if rational_to_f64(t_value).abs() > 1.0 {
        return Err(Error::OutOfRange("t must lie in [-1, 1]".into()));
    }
    let start = Instant::now();
    let t = TAssignment::constant(t_value.clone());
    let tv = rational_to_f64(t_value);
    let mut lhs = 0.0;
    let mut bound = 0.0;
    for idx in admissible_indices(k, nd) {
        lhs += multi_interp_f64(&idx, n, &t);
        bound += tail_bound_index(&idx, n);
    }
    let poly: f64 = (0..nd as u64)
        .map(|j| binomial(u64::from(k) - 1, j) * tv.powi(j as i32) * (1.0 - tv).powi((nd as u64 - 1 - j) as i32))
        .sum();
    let rhs = zeta_f64(k, n) * poly;
    bound += poly.abs() * tail_bound_chain(k, 1, n);
    Ok(Report::numeric(
        "sum-formula",
        params!("k" => k, "depth" => nd, "t" => t_value, "N" => n),
        lhs,
        rhs,
        bound,
        tol,
        start,
    ))
}

/// Refined sum formula: `Σ_{adm idx} Σ_{p: nd - L(p) = i} ζ(p(idx)) = C(k-nd+i-1, k-nd-1) ζ(k)`.
pub fn check_refined_identity(k: u32, nd: usize, i: usize, n: u64, tol: Option<f64>) -> Result<Report> {
    if k as usize <= nd || nd == 0 {
        return Err(Error::OutOfRange(format!("refined identity needs k > nd >= 1, got k={k}, nd={nd}")));
    }
    if i >= nd {
        return Err(Error::OutOfRange(format!("i must be in 0..={}, got {i}", nd - 1)));
    }
    let start = Instant::now();
    let none = TAssignment::new();
    let parts: Vec<Composition> = compositions(nd as u32)?
        .into_iter()
        .filter(|p| nd - p.depth() == i)
        .collect();
    let mut lhs = 0.0;
    let mut bound = 0.0;
    for idx in admissible_indices(k, nd) {
        for p in &parts {
            let w = contract_index(&idx, p).to_word();
            lhs += eval_word_f64(&w, n, &none);
            bound += tail_bound_chain(w.blocks()[0].letter_index(), w.depth(), n);
        }
    }
    let c = binomial(u64::from(k) - nd as u64 + i as u64 - 1, u64::from(k) - nd as u64 - 1);
    let rhs = c * zeta_f64(k, n);
    bound += c * tail_bound_chain(k, 1, n);
    Ok(Report::numeric(
        "refined-sum-formula",
        params!("k" => k, "depth" => nd, "i" => i, "N" => n),
        lhs,
        rhs,
        bound,
        tol,
        start,
    ))
}

fn t_weighted_zeta_f64(k: u32, power: i32, n: u64, t: &TAssignment) -> f64 {
    let mut acc = 0.0;
    for l in (1..=n).rev() {
        acc += t.value_f64(Marker::TAU, l).powi(power) * (l as f64).powi(-(k as i32));
    }
    acc
}

/// Depth-two multi-interpolated sum formula:
/// `Σ_{k1=2}^{k-1} ζ^t(k1, k-k1) = ζ(k) + (k-2) ζ(k t)`.
pub fn check_depth2_multi_sum(k: u32, n: u64, t: &TAssignment, tol: Option<f64>) -> Result<Report> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("depth-two sum formula needs k >= 3, got {k}")));
    }
    let start = Instant::now();
    let mut lhs = 0.0;
    let mut bound = 0.0;
    for idx in admissible_indices(k, 2) {
        lhs += multi_interp_f64(&idx, n, t);
        bound += tail_bound_index(&idx, n);
    }
    let rhs = zeta_f64(k, n) + f64::from(k - 2) * t_weighted_zeta_f64(k, 1, n, t);
    bound += f64::from(k - 1) * tail_bound_chain(k, 1, n);
    Ok(Report::numeric(
        "depth2-multi-sum-formula",
        params!("k" => k, "N" => n, "t" => t_label(t)),
        lhs,
        rhs,
        bound,
        tol,
        start,
    ))
}

/// Reports the defect of the depth-three analogue
/// `Σ ζ^t(k1, k2, k3) ≈ Σ_m a_m ζ(k t^m)`, where `a_m` are the coefficients
/// of the constant-`t` sum formula polynomial. Asserts nothing.
pub fn explore_depth3_multi_sum(k: u32, n: u64, t: &TAssignment) -> Result<Report> {
    if k < 4 {
        return Err(Error::OutOfRange(format!("depth-three sums need k >= 4, got {k}")));
    }
    let start = Instant::now();
    let mut lhs = 0.0;
    let mut bound = 0.0;
    for idx in admissible_indices(k, 3) {
        lhs += multi_interp_f64(&idx, n, t);
        bound += tail_bound_index(&idx, n);
    }
    // (1-t)^2 + 2(k-1) t (1-t) + C(k-1, 2) t^2 in powers of t
    let c1 = binomial(u64::from(k) - 1, 1);
    let c2 = binomial(u64::from(k) - 1, 2);
    let a = [1.0, c1 - 2.0, 1.0 - c1 + c2];
    let rhs: f64 = (0..3).map(|m| a[m] * t_weighted_zeta_f64(k, m as i32, n, t)).sum();
    let mut r = Report::numeric(
        "depth3-multi-sum-exploratory",
        params!("k" => k, "N" => n, "t" => t_label(t)),
        lhs,
        rhs,
        bound,
        None,
        start,
    );
    r.verdict = Verdict::Exploratory;
    Ok(r)
}

/// `u`-interpolation against `V(S(idx))`, both evaluated exactly at `n`;
/// with `u_m = t^m` also against the constant-`t` value.
pub fn check_u_interpolation(idx: &Composition, u: &UWeights, n: u64) -> Result<Report> {
    let start = Instant::now();
    let lhs_sum = u_interpolation(idx, u)?;
    let rhs_sum = v_map(&s_operator(&LinComb::from_word(idx.to_word()), Marker::TAU), u)?;
    let none = TAssignment::new();
    let mut ev = TruncatedEvaluator::new(n, &none);
    let lhs = ev.indexed_sum(&lhs_sum);
    let rhs = ev.indexed_sum(&rhs_sum);
    let mut params = params!("index" => idx, "n" => n, "u" => u.to_string());
    let symbolic_ok = normalize_indexed(&lhs_sum) == rhs_sum;
    params.insert("symbolic_match".into(), symbolic_ok.to_string());
    let mut report = Report::exact("u-interpolation", params, Value::Exact(lhs.clone()), Value::Exact(rhs), start);
    if let UWeights::Powers(t) = u {
        let scalar = eval_multi_interp_direct(idx, n, &TAssignment::constant(t.clone()))?;
        report.params.insert("scalar_value".into(), scalar.to_string());
        if scalar != lhs {
            report.verdict = Verdict::Fail;
        }
    }
    if !symbolic_ok {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// `V(ζ^t(x) ζ^t(y))` and `V(ζ^t(x)) V(ζ^t(y))` at truncation `n`, as exact
/// rationals.
pub fn v_product_sides(x: &Composition, y: &Composition, u: &UWeights, n: u64) -> Result<(Rational, Rational)> {
    let sx = s_operator(&LinComb::from_word(x.to_word()), Marker::TAU);
    let sy = s_operator(&LinComb::from_word(y.to_word()), Marker::TAU);
    let none = TAssignment::new();
    let mut ev = TruncatedEvaluator::new(n, &none);
    let joint = ev.indexed_sum(&v_map(&stuffle(&sx, &sy), u)?);
    let separate = ev.indexed_sum(&v_map(&sx, u)?) * ev.indexed_sum(&v_map(&sy, u)?);
    Ok((joint, separate))
}

/// Searches depth <= 2 admissible indices and seeded random `u` for a pair
/// where `V` fails to be multiplicative. Passes iff one is found.
pub fn check_v_not_multiplicative(seed: u64, n: u64) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = Vec::new();
    for a in 2..=3 {
        words.push(Composition::new(vec![a]).expect("positive"));
        for b in 1..=2 {
            words.push(Composition::new(vec![a, b]).expect("positive"));
        }
    }
    for _ in 0..8 {
        let u = UWeights::table((0..4).map(|_| random_rational(&mut rng, 5)).collect());
        // u_m = t^m (including t = 0) is multiplicative by construction
        if u.get(2) == &u.get(1) * &u.get(1) {
            continue;
        }
        for x in &words {
            for y in &words {
                let (lhs, rhs) = v_product_sides(x, y, &u, n).expect("admissible, TAU only");
                if lhs != rhs {
                    let mut r = Report::exact(
                        "v-not-multiplicative",
                        params!("x" => x, "y" => y, "u" => u.to_string(), "n" => n),
                        Value::Exact(lhs),
                        Value::Exact(rhs),
                        start,
                    );
                    r.verdict = Verdict::Pass;
                    return r;
                }
            }
        }
    }
    Report {
        identity: "v-not-multiplicative".into(),
        params: params!("n" => n, "seed" => seed),
        mode: CheckMode::Exact,
        lhs: Value::Symbolic("no counterexample".into()),
        rhs: Value::Symbolic("no counterexample".into()),
        verdict: Verdict::Fail,
        elapsed: start.elapsed(),
    }
}

/// `ζ_n^{t_E,t_O}(i1, i2) = ζ_n(i1, i2) + t_E · even part + t_O · odd part`.
pub fn check_even_odd_split(i1: u32, i2: u32, even: &Rational, odd: &Rational, n: u64) -> Report {
    let start = Instant::now();
    let t = TAssignment::tau(SequenceRule::EvenOdd { even: even.clone(), odd: odd.clone() });
    let idx = Composition::new(vec![i1, i2]).expect("positive");
    let lhs = eval_multi_interp_direct(&idx, n, &t).expect("non-empty");
    let (ev, od) = even_odd_parts(i1 + i2, n);
    let plain = TruncatedEvaluator::new(n, &t).word(&idx.to_word());
    let rhs = plain + even * ev + odd * od;
    Report::exact(
        "even-odd-split",
        params!("index" => idx, "tE" => even, "tO" => odd, "n" => n),
        Value::Exact(lhs),
        Value::Exact(rhs),
        start,
    )
}

/// All five routes to `ζ_n^t({s}_k)` for `k = 0..=k_max` must coincide.
pub fn check_five_way(s: u32, k_max: usize, n: u64, t: &TAssignment) -> Report {
    let start = Instant::now();
    let product = theta_coeffs_product(s, n, t, k_max).coeffs;
    let explog = theta_coeffs_explog(s, n, t, k_max).coeffs;
    let mut mismatch = None;
    for k in 0..=k_max {
        let direct = if k == 0 {
            Rational::one()
        } else {
            eval_multi_interp_direct(&Composition::new(vec![s; k]).expect("s >= 1"), n, t).expect("k >= 1")
        };
        let routes = [
            ("product", product[k].clone()),
            ("explog", explog[k].clone()),
            ("convolution", convolution_value(s, k, n, t)),
            ("bell", bell_value(s, k, n, t)),
        ];
        if let Some((name, v)) = routes.into_iter().find(|(_, v)| *v != direct) {
            mismatch = Some((k, name, v, direct));
            break;
        }
    }
    let p = params!("s" => s, "K" => k_max, "n" => n, "t" => t_label(t));
    match mismatch {
        None => Report::exact(
            "five-way-series",
            p,
            Value::Exact(product[k_max].clone()),
            Value::Exact(product[k_max].clone()),
            start,
        ),
        Some((k, name, v, direct)) => {
            let mut p = p;
            p.insert("k".into(), k.to_string());
            p.insert("route".into(), name.into());
            Report::exact("five-way-series", p, Value::Exact(v), Value::Exact(direct), start)
        }
    }
}

/// `Q_k(xs) · k! = B_k(0! x_1, ..., (k-1)! x_k)`.
pub fn check_modified_bell(xs: &[Rational]) -> Result<Report> {
    let start = Instant::now();
    let k = xs.len();
    let mut fact = Rational::one();
    let mut scaled = Vec::with_capacity(k);
    for (j, x) in xs.iter().enumerate() {
        if j > 0 {
            fact *= Rational::from_integer(BigInt::from(j));
        }
        scaled.push(&fact * x);
    }
    let k_fact = (1..=k).fold(Rational::one(), |a, j| a * Rational::from_integer(BigInt::from(j)));
    let lhs = modified_bell_det(xs)? * k_fact;
    let rhs = complete_bell(&scaled);
    Ok(Report::exact(
        "modified-bell-determinant",
        params!("k" => k),
        Value::Exact(lhs),
        Value::Exact(rhs),
        start,
    ))
}

/// `eval_fast_uniform` against the general word evaluators.
pub fn check_fast_uniform(s: u32, k: usize, n: u64, t: &TAssignment, star: bool) -> Report {
    let start = Instant::now();
    let u = if star {
        Uniform::plain(s, k).star().transform(int(1), int(0))
    } else {
        Uniform::plain(s, k)
    };
    let fast = eval_fast_uniform_exact(&u, n, t);
    let mut ev = TruncatedEvaluator::new(n, t);
    let slow = if star {
        ev.word_star(&TWord::from_blocks(vec![Block::letter(s).with_exponent(Marker::TAU, 1); k]))
    } else {
        ev.word(&TWord::plain(&vec![s; k]).expect("s >= 1"))
    };
    Report::exact(
        "fast-uniform",
        params!("s" => s, "k" => k, "n" => n, "star" => star, "t" => t_label(t)),
        Value::Exact(fast),
        Value::Exact(slow),
        start,
    )
}

/// A rational `p/q` in `[-1, 1]` with `1 <= q <= max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-q..=q);
    rat(p, q)
}

/// A table of `len` random values in `[-1, 1]` for the marker `t`.
pub fn random_assignment<R: Rng>(rng: &mut R, len: usize) -> TAssignment {
    TAssignment::tau(SequenceRule::Table {
        values: (0..len).map(|_| random_rational(rng, 7)).collect(),
        default: Rational::zero(),
    })
}

pub fn random_composition<R: Rng>(rng: &mut R, depth: usize, max_letter: u32) -> Composition {
    Composition::new((0..depth).map(|_| rng.gen_range(1..=max_letter)).collect()).expect("positive")
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { seed: 1, jobs: 1 }
    }
}

type Check = Box<dyn Fn() -> Report + Send + Sync>;

fn exact_core_checks(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: Vec<Check> = Vec::new();
    for _ in 0..20 {
        let dx = rng.gen_range(0..=3);
        let dy = rng.gen_range(0..=3);
        let x = random_composition(&mut rng, dx, 4);
        let y = random_composition(&mut rng, dy, 4);
        let n = rng.gen_range(1..=12);
        let t = random_assignment(&mut rng, n as usize);
        checks.push(Box::new(move || check_product_homomorphism(&x, &y, n, &t)));
    }
    for letters in [vec![1, 2, 3], vec![2, 1, 1, 3], vec![3, 1, 2, 2, 1]] {
        let w = TWord::plain(&letters).expect("positive");
        for part in [LemmaPart::A, LemmaPart::B, LemmaPart::C] {
            let w = w.clone();
            checks.push(Box::new(move || check_s_lemma(&w, part).expect("plain word")));
        }
    }
    for s in 1..=3 {
        let n = rng.gen_range(1..=10);
        let t = random_assignment(&mut rng, n as usize);
        checks.push(Box::new(move || check_five_way(s, 4, n, &t)));
    }
    for k in 1..=6 {
        let xs: Vec<Rational> = (0..k).map(|_| random_rational(&mut rng, 9)).collect();
        checks.push(Box::new(move || check_modified_bell(&xs).expect("k >= 1")));
    }
    for idx in [vec![2, 1, 1], vec![3, 2], vec![2, 2, 1, 1]] {
        let idx = Composition::new(idx).expect("positive");
        let u = UWeights::table((0..3).map(|_| random_rational(&mut rng, 5)).collect());
        let idx2 = idx.clone();
        checks.push(Box::new(move || check_u_interpolation(&idx, &u, 8).expect("admissible")));
        checks.push(Box::new(move || check_u_interpolation(&idx2, &UWeights::powers(rat(1, 2)), 8).expect("admissible")));
    }
    let v_seed = rng.gen();
    checks.push(Box::new(move || check_v_not_multiplicative(v_seed, 6)));
    for (i1, i2) in [(2, 1), (3, 2), (2, 4)] {
        let (e, o) = (random_rational(&mut rng, 5), random_rational(&mut rng, 5));
        checks.push(Box::new(move || check_even_odd_split(i1, i2, &e, &o, 20)));
    }
    for star in [false, true] {
        let t = random_assignment(&mut rng, 12);
        checks.push(Box::new(move || check_fast_uniform(2, 3, 12, &t, star)));
    }
    checks
}

/// The `(k, depth)` pairs used by the numeric sum-formula suite.
pub const SUM_FORMULA_CASES: [(u32, usize); 7] = [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (6, 3), (7, 3)];

/// Truncation used by the numeric suite.
pub const NUMERIC_TRUNCATION: u64 = 10_000;

fn numeric_checks() -> Vec<Check> {
    let n = NUMERIC_TRUNCATION;
    let mut checks: Vec<Check> = Vec::new();
    for (k, nd) in SUM_FORMULA_CASES {
        for t in [int(0), rat(1, 2), int(1)] {
            checks.push(Box::new(move || check_sum_formula(k, nd, &t, n, None).expect("valid case")));
        }
        for i in 0..nd {
            checks.push(Box::new(move || check_refined_identity(k, nd, i, n, None).expect("valid case")));
        }
    }
    for k in 3..=7 {
        checks.push(Box::new(move || {
            check_depth2_multi_sum(k, n, &TAssignment::tau(SequenceRule::Inverse), None).expect("k >= 3")
        }));
        checks.push(Box::new(move || {
            let t = TAssignment::tau(SequenceRule::EvenOdd { even: rat(1, 2), odd: rat(-1, 3) });
            check_depth2_multi_sum(k, n, &t, None).expect("k >= 3")
        }));
    }
    checks
}

fn exploratory_checks() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for k in 4..=7 {
        checks.push(Box::new(move || {
            explore_depth3_multi_sum(k, NUMERIC_TRUNCATION, &TAssignment::tau(SequenceRule::Inverse)).expect("k >= 4")
        }));
    }
    checks
}

fn run_checks(checks: Vec<Check>, jobs: usize) -> Vec<Report> {
    let jobs = jobs.max(1).min(checks.len().max(1));
    if jobs == 1 {
        return checks.iter().map(|c| c()).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Report>>> = Mutex::new(vec![None; checks.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= checks.len() {
                    break;
                }
                let r = checks[i]();
                slots.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|r| r.expect("every check ran"))
        .collect()
}

/// Suites: `exact-core`, `numeric-sum-formulas`, `exploratory`, `all`
/// (the first two). Reports come back in submission order.
pub fn run_suite(name: &str, config: SuiteConfig) -> Result<Vec<Report>> {
    let checks = match name {
        "exact-core" => exact_core_checks(config.seed),
        "numeric-sum-formulas" => numeric_checks(),
        "exploratory" => exploratory_checks(),
        "all" => {
            let mut c = exact_core_checks(config.seed);
            c.extend(numeric_checks());
            c
        }
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(run_checks(checks, config.jobs))
}
