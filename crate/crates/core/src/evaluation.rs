//! Truncated and floating-point evaluation of words, indices and uniform
//! strings `{s}_k` for concrete rational `t`-sequences.
//!
//! Word evaluation uses strict chains `n >= l_1 > ... > l_k >= 1`; the
//! multi-interpolated value of an index and the star values use weak chains.
//! Every evaluator is a single sweep over `l = 1..n` keeping one running sum
//! per suffix of the word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{parse_rational, rational_to_f64, Block, Composition, LinComb, Marker, Rational, TWord};
use crate::error::{Error, Result};
use crate::interpolation::{s_operator, IndexedSum};

/// How one marker's sequence `t_1, t_2, ...` is produced.
#[derive(Clone)]
pub enum SequenceRule {
    Constant(Rational),
    /// `t_l = t_E` for even `l`, `t_O` for odd `l`.
    EvenOdd { even: Rational, odd: Rational },
    /// `t_l = c_{(l - 1) mod p + 1}`.
    Periodic(Vec<Rational>),
    /// Explicit `t_1, t_2, ...`, then `default`.
    Table { values: Vec<Rational>, default: Rational },
    /// `t_l = 1 / l`.
    Inverse,
    Rule(Arc<dyn Fn(u64) -> Rational + Send + Sync>),
}

impl fmt::Debug for SequenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceRule::Constant(c) => write!(f, "const:{c}"),
            SequenceRule::EvenOdd { even, odd } => write!(f, "evenodd:{even},{odd}"),
            SequenceRule::Periodic(v) => write!(f, "periodic:{}", join(v)),
            SequenceRule::Table { values, default } => {
                write!(f, "table:[{}] default:{default}", join(values))
            }
            SequenceRule::Inverse => write!(f, "inv"),
            SequenceRule::Rule(_) => write!(f, "rule"),
        }
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl SequenceRule {
    pub fn value(&self, l: u64) -> Rational {
        debug_assert!(l >= 1);
        match self {
            SequenceRule::Constant(c) => c.clone(),
            SequenceRule::EvenOdd { even, odd } => {
                if l.is_multiple_of(2) {
                    even.clone()
                } else {
                    odd.clone()
                }
            }
            SequenceRule::Periodic(v) => v[((l - 1) % v.len() as u64) as usize].clone(),
            SequenceRule::Table { values, default } => values
                .get((l - 1) as usize)
                .cloned()
                .unwrap_or_else(|| default.clone()),
            SequenceRule::Inverse => Rational::new(BigInt::one(), BigInt::from(l)),
            SequenceRule::Rule(f) => f(l),
        }
    }

    pub fn value_f64(&self, l: u64) -> f64 {
        match self {
            SequenceRule::Inverse => 1.0 / l as f64,
            _ => rational_to_f64(&self.value(l)),
        }
    }

    /// `Some(true)` if every value is known to lie in `[-1, 1]`; `None` for
    /// callable rules, which are checked value by value.
    fn bounded_by_one(&self) -> Option<bool> {
        let ok = |q: &Rational| q.abs() <= Rational::one();
        match self {
            SequenceRule::Constant(c) => Some(ok(c)),
            SequenceRule::EvenOdd { even, odd } => Some(ok(even) && ok(odd)),
            SequenceRule::Periodic(v) => Some(v.iter().all(ok)),
            SequenceRule::Table { values, default } => Some(values.iter().all(ok) && ok(default)),
            SequenceRule::Inverse => Some(true),
            SequenceRule::Rule(_) => None,
        }
    }

    /// Parses the t-spec grammar: `const:<q>`, `evenodd:<qE>,<qO>`,
    /// `periodic:<q1>,...`, `list:<q1>,...` (zero afterwards),
    /// `table:<file>`, `inv`.
    pub fn parse(spec: &str) -> Result<SequenceRule> {
        let spec = spec.trim();
        if spec == "inv" {
            return Ok(SequenceRule::Inverse);
        }
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("invalid t-spec `{spec}`")))?;
        let list = |body: &str| -> Result<Vec<Rational>> {
            body.split(',').map(parse_rational).collect()
        };
        match kind {
            "const" => Ok(SequenceRule::Constant(parse_rational(body)?)),
            "evenodd" => match list(body)?.as_slice() {
                [e, o] => Ok(SequenceRule::EvenOdd { even: e.clone(), odd: o.clone() }),
                _ => Err(Error::Parse("evenodd takes exactly two values".into())),
            },
            "periodic" => Ok(SequenceRule::Periodic(list(body)?)),
            "list" => Ok(SequenceRule::Table { values: list(body)?, default: Rational::zero() }),
            "table" => {
                let text = std::fs::read_to_string(Path::new(body))
                    .map_err(|e| Error::Io(format!("{body}: {e}")))?;
                SequenceRule::parse_table(&text)
            }
            _ => Err(Error::Parse(format!("unknown t-spec kind `{kind}`"))),
        }
    }

    /// One rational per line for `l = 1, 2, ...`, optional `default:<q>`
    /// footer (zero otherwise). Blank lines and `#` comments are skipped.
    pub fn parse_table(text: &str) -> Result<SequenceRule> {
        let mut values = Vec::new();
        let mut default = Rational::zero();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(d) = line.strip_prefix("default:") {
                default = parse_rational(d)?;
            } else {
                values.push(parse_rational(line)?);
            }
        }
        Ok(SequenceRule::Table { values, default })
    }
}

/// A sequence rule per marker. Markers without a rule evaluate to zero.
#[derive(Clone, Debug, Default)]
pub struct TAssignment {
    rules: BTreeMap<Marker, SequenceRule>,
}

impl TAssignment {
    pub fn new() -> TAssignment {
        TAssignment::default()
    }

    /// The assignment giving `rule` to the default marker `t`.
    pub fn tau(rule: SequenceRule) -> TAssignment {
        TAssignment::new().with(Marker::TAU, rule)
    }

    pub fn constant(c: Rational) -> TAssignment {
        TAssignment::tau(SequenceRule::Constant(c))
    }

    pub fn with(mut self, m: Marker, rule: SequenceRule) -> TAssignment {
        self.rules.insert(m, rule);
        self
    }

    pub fn rule(&self, m: Marker) -> Option<&SequenceRule> {
        self.rules.get(&m)
    }

    pub fn value(&self, m: Marker, l: u64) -> Rational {
        self.rules.get(&m).map_or_else(Rational::zero, |r| r.value(l))
    }

    pub fn value_f64(&self, m: Marker, l: u64) -> f64 {
        self.rules.get(&m).map_or(0.0, |r| r.value_f64(l))
    }

    /// Parses `[<marker>=]<t-spec>`; the marker defaults to `t`.
    pub fn parse_into(mut self, spec: &str) -> Result<TAssignment> {
        let (marker, body) = match spec.split_once('=') {
            Some((m, body)) => (m.trim().parse()?, body),
            None => (Marker::TAU, spec),
        };
        self.rules.insert(marker, SequenceRule::parse(body)?);
        Ok(self)
    }

    pub fn parse(spec: &str) -> Result<TAssignment> {
        TAssignment::new().parse_into(spec)
    }

    pub fn check_bounded(&self, n: u64) -> Result<()> {
        for (m, rule) in &self.rules {
            let ok = match rule.bounded_by_one() {
                Some(ok) => ok,
                None => (1..=n).all(|l| rule.value(l).abs() <= Rational::one()),
            };
            if !ok {
                return Err(Error::OutOfRange(format!(
                    "values of marker `{m}` must lie in [-1, 1] for non-truncated evaluation"
                )));
            }
        }
        Ok(())
    }
}

/// Exact evaluation at a fixed truncation, with cached sequence values and
/// inverse powers.
pub struct TruncatedEvaluator<'a> {
    n: u64,
    t: &'a TAssignment,
    tvals: HashMap<Marker, Vec<Rational>>,
    inv_pow: HashMap<u32, Vec<Rational>>,
}

impl<'a> TruncatedEvaluator<'a> {
    pub fn new(n: u64, t: &'a TAssignment) -> TruncatedEvaluator<'a> {
        TruncatedEvaluator { n, t, tvals: HashMap::new(), inv_pow: HashMap::new() }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn ensure_marker(&mut self, m: Marker) {
        let (n, t) = (self.n, self.t);
        self.tvals
            .entry(m)
            .or_insert_with(|| (1..=n).map(|l| t.value(m, l)).collect());
    }

    fn ensure_power(&mut self, i: u32) {
        let n = self.n;
        self.inv_pow.entry(i).or_insert_with(|| {
            (1..=n)
                .map(|l| Rational::new(BigInt::one(), num_traits::pow(BigInt::from(l), i as usize)))
                .collect()
        });
    }

    /// Per-index weights `Π_m t_m(l)^{e_m} / l^i` of a block, `l = 1..n`.
    fn block_weights(&mut self, b: &Block) -> Vec<Rational> {
        self.ensure_power(b.letter_index());
        for &(m, _) in b.exponents() {
            self.ensure_marker(m);
        }
        let base = &self.inv_pow[&b.letter_index()];
        (0..self.n as usize)
            .map(|k| {
                let mut w = base[k].clone();
                for &(m, e) in b.exponents() {
                    w *= num_traits::pow(self.tvals[&m][k].clone(), e as usize);
                }
                w
            })
            .collect()
    }

    /// Strict-chain value of a word.
    pub fn word(&mut self, w: &TWord) -> Rational {
        let weights: Vec<Vec<Rational>> = w.blocks().iter().map(|b| self.block_weights(b)).collect();
        chain_sum_exact(&weights, self.n, false)
    }

    /// Weak-chain value of a word.
    pub fn word_star(&mut self, w: &TWord) -> Rational {
        let weights: Vec<Vec<Rational>> = w.blocks().iter().map(|b| self.block_weights(b)).collect();
        chain_sum_exact(&weights, self.n, true)
    }

    pub fn lincomb(&mut self, x: &LinComb) -> Rational {
        let mut total = Rational::zero();
        for (w, c) in x.iter() {
            total += c * self.word(w);
        }
        total
    }

    /// The multi-interpolated value `ζ_n^t(idx)` as the defining weak-chain
    /// sum, each equality `l_r = l_{r+1} = j` weighted by `t_j` (`t` = TAU).
    #[allow(clippy::needless_range_loop)]
    pub fn multi_interp_direct(&mut self, idx: &Composition) -> Rational {
        let k = idx.depth();
        for &i in idx.parts() {
            self.ensure_power(i);
        }
        self.ensure_marker(Marker::TAU);
        // acc[r] = sum over weak chains of positions r..k with values below l
        let mut acc = vec![Rational::zero(); k + 1];
        acc[k] = Rational::one();
        for l in 0..self.n as usize {
            let t = &self.tvals[&Marker::TAU][l];
            let old = acc.clone();
            for r in 0..k {
                // run r..=s all at value l: Π l^{-i_q} · t^{s - r}
                let mut run = Rational::one();
                for s in r..k {
                    if s > r {
                        run *= t;
                    }
                    run *= &self.inv_pow[&idx.parts()[s]][l];
                    if run.is_zero() {
                        break;
                    }
                    acc[r] += &run * &old[s + 1];
                }
            }
        }
        std::mem::take(&mut acc[0])
    }

    /// `Σ c · ζ_n(index)` with classical (marker-free) strict values.
    pub fn indexed_sum(&mut self, sum: &IndexedSum) -> Rational {
        let mut total = Rational::zero();
        for (c, idx) in sum {
            if !c.is_zero() {
                total += c * self.word(&idx.to_word());
            }
        }
        total
    }
}

/// Sweep over `l = 1..n`: `acc[j]` holds the chain sum over positions
/// `j..k` with all indices `<= l`. Strict chains read the previous level of
/// `acc[j + 1]`, weak chains the current one.
#[allow(clippy::needless_range_loop)]
fn chain_sum_exact(weights: &[Vec<Rational>], n: u64, weak: bool) -> Rational {
    let k = weights.len();
    let mut acc = vec![Rational::zero(); k + 1];
    acc[k] = Rational::one();
    for l in 0..n as usize {
        if weak {
            for j in (0..k).rev() {
                let add = &weights[j][l] * &acc[j + 1];
                acc[j] += add;
            }
        } else {
            for j in 0..k {
                let add = &weights[j][l] * &acc[j + 1];
                acc[j] += add;
            }
        }
    }
    std::mem::take(&mut acc[0])
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Default, Debug)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn one() -> Compensated {
        Compensated { sum: 1.0, comp: 0.0 }
    }

    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn chain_sum_f64<F: FnMut(usize, u64) -> f64>(k: usize, n: u64, weak: bool, mut weight: F) -> f64 {
    let compensate = n > 100_000;
    let mut acc = vec![Compensated::default(); k + 1];
    acc[k] = Compensated::one();
    let mut step = |acc: &mut Vec<Compensated>, j: usize, l: u64| {
        let add = weight(j, l) * acc[j + 1].value();
        if compensate {
            acc[j].add(add);
        } else {
            acc[j].sum += add;
        }
    };
    for l in 1..=n {
        if weak {
            for j in (0..k).rev() {
                step(&mut acc, j, l);
            }
        } else {
            for j in 0..k {
                step(&mut acc, j, l);
            }
        }
    }
    acc[0].value()
}

/// Strict-chain float value of a word truncated at `n`.
pub fn eval_word_f64(w: &TWord, n: u64, t: &TAssignment) -> f64 {
    let blocks = w.blocks();
    chain_sum_f64(blocks.len(), n, false, |j, l| block_weight_f64(&blocks[j], l, t))
}

fn block_weight_f64(b: &Block, l: u64, t: &TAssignment) -> f64 {
    let mut w = (l as f64).powi(-(b.letter_index() as i32));
    for &(m, e) in b.exponents() {
        w *= t.value_f64(m, l).powi(e as i32);
    }
    w
}

/// `ζ_n` of a word with markers: strict chains, empty word `1`.
pub fn eval_word_truncated(w: &TWord, n: u64, t: &TAssignment) -> Rational {
    TruncatedEvaluator::new(n, t).word(w)
}

pub fn eval_lincomb_truncated(x: &LinComb, n: u64, t: &TAssignment) -> Rational {
    TruncatedEvaluator::new(n, t).lincomb(x)
}

/// `ζ_n^t(idx)` straight from the weak-chain definition.
pub fn eval_multi_interp_direct(idx: &Composition, n: u64, t: &TAssignment) -> Result<Rational> {
    if idx.is_empty() {
        return Err(Error::EmptyComposition);
    }
    Ok(TruncatedEvaluator::new(n, t).multi_interp_direct(idx))
}

/// `ζ^⋆_n` of a marker-weighted word: weak chains.
pub fn eval_star_truncated(w: &TWord, n: u64, t: &TAssignment) -> Rational {
    TruncatedEvaluator::new(n, t).word_star(w)
}

/// Parameters of a uniform string `{s · (α t + β)}_k`, with `t` the TAU
/// sequence.
#[derive(Debug, Clone)]
pub struct Uniform {
    pub s: u32,
    pub k: usize,
    pub star: bool,
    pub alpha: Rational,
    pub beta: Rational,
}

impl Uniform {
    /// `{s}_k`, strict.
    pub fn plain(s: u32, k: usize) -> Uniform {
        Uniform { s, k, star: false, alpha: Rational::zero(), beta: Rational::one() }
    }

    pub fn star(mut self) -> Uniform {
        self.star = true;
        self
    }

    pub fn transform(mut self, alpha: Rational, beta: Rational) -> Uniform {
        self.alpha = alpha;
        self.beta = beta;
        self
    }
}

/// `ζ_n({s (α t + β)}_k)` or its star version in one `O(n k)` sweep.
pub fn eval_fast_uniform_exact(u: &Uniform, n: u64, t: &TAssignment) -> Rational {
    let mut acc = vec![Rational::zero(); u.k + 1];
    acc[u.k] = Rational::one();
    for l in 1..=n {
        let tl = t.value(Marker::TAU, l);
        let w = (&u.alpha * tl + &u.beta) / Rational::from_integer(num_traits::pow(BigInt::from(l), u.s as usize));
        if w.is_zero() {
            continue;
        }
        if u.star {
            for j in (0..u.k).rev() {
                let add = &w * &acc[j + 1];
                acc[j] += add;
            }
        } else {
            for j in 0..u.k {
                let add = &w * &acc[j + 1];
                acc[j] += add;
            }
        }
    }
    std::mem::take(&mut acc[0])
}

pub fn eval_fast_uniform_f64(u: &Uniform, n: u64, t: &TAssignment) -> f64 {
    let (alpha, beta) = (rational_to_f64(&u.alpha), rational_to_f64(&u.beta));
    let s = u.s as i32;
    chain_sum_f64(u.k, n, u.star, |_, l| {
        (alpha * t.value_f64(Marker::TAU, l) + beta) * (l as f64).powi(-s)
    })
}

/// Value of an evaluation, exact or floating with a truncation bound.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalValue {
    Exact(Rational),
    Float { value: f64, tail_bound: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub value: EvalValue,
    pub n: u64,
    pub mode: EvalMode,
}

impl EvalResult {
    pub fn as_f64(&self) -> f64 {
        match &self.value {
            EvalValue::Exact(q) => rational_to_f64(q),
            EvalValue::Float { value, .. } => *value,
        }
    }

    pub fn tail_bound(&self) -> f64 {
        match &self.value {
            EvalValue::Exact(_) => 0.0,
            EvalValue::Float { tail_bound, .. } => *tail_bound,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.value {
            EvalValue::Exact(q) => serde_json::json!({
                "mode": "exact", "n": self.n, "value": q.to_string(),
            }),
            EvalValue::Float { value, tail_bound } => serde_json::json!({
                "mode": "float", "n": self.n, "value": value, "tail_bound": tail_bound,
            }),
        }
    }
}

/// Upper bound on `Σ_{l > n}` of a strict chain with leading letter `lead`,
/// depth `depth`, all sequence values in `[-1, 1]`.
///
/// The inner chain is at most `H_{l-1}^m / m! <= (1 + ln l)^m / m!` with
/// `m = depth - 1`, and the outer sum is bounded by the integral of
/// `(1 + ln x)^m x^{-lead}` from `n`, which is
/// `n^{1-lead} Σ_{j=0}^m (1 + ln n)^{m-j} / ((m-j)! (lead-1)^{j+1})`.
/// The integral comparison needs the integrand to decrease past `n`, i.e.
/// `ln n >= m / lead - 1`; below that, and for `lead < 2`, the bound is
/// infinite.
pub fn tail_bound_chain(lead: u32, depth: usize, n: u64) -> f64 {
    if depth == 0 {
        return 0.0;
    }
    if lead < 2 || n == 0 {
        return f64::INFINITY;
    }
    let m = depth - 1;
    let ln_n = (n as f64).ln();
    if ln_n < m as f64 / lead as f64 - 1.0 {
        return f64::INFINITY;
    }
    let a = f64::from(lead - 1);
    let lg = 1.0 + ln_n;
    let mut total = 0.0;
    let mut fact = 1.0; // (m - j)!
    for q in 1..=m {
        fact *= q as f64;
    }
    for j in 0..=m {
        total += lg.powi((m - j) as i32) / (fact * a.powi(j as i32 + 1));
        if m - j > 0 {
            fact /= (m - j) as f64;
        }
    }
    total * (n as f64).powf(1.0 - f64::from(lead))
}

/// Tail bound of a strict word.
pub fn tail_bound_word(w: &TWord, n: u64) -> f64 {
    match w.first() {
        None => 0.0,
        Some(b) => tail_bound_chain(b.letter_index(), w.depth(), n),
    }
}

/// `Σ |c| · tail_bound_word(w)` over the terms of a combination.
pub fn tail_bound_lincomb(x: &LinComb, n: u64) -> f64 {
    x.iter()
        .map(|(w, c)| rational_to_f64(&c.abs()) * tail_bound_word(w, n))
        .sum()
}

/// Tail bound of the multi-interpolated value of an index, through its
/// expansion into strict words.
pub fn tail_bound_index(idx: &Composition, n: u64) -> f64 {
    tail_bound_lincomb(&s_operator(&LinComb::from_word(idx.to_word()), Marker::TAU), n)
}

/// Tail bound of `Σ c · ζ(index)`.
pub fn tail_bound_indexed_sum(sum: &IndexedSum, n: u64) -> f64 {
    sum.iter()
        .map(|(c, idx)| rational_to_f64(&c.abs()) * tail_bound_word(&idx.to_word(), n))
        .sum()
}

/// Smallest truncation (up to doubling granularity, then bisection) whose
/// bound is at most `eps`.
pub fn truncation_for<F: Fn(u64) -> f64>(bound: F, eps: f64) -> Result<u64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::OutOfRange("eps must be positive".into()));
    }
    const LIMIT: u64 = 1 << 34;
    let mut hi = 1u64;
    while bound(hi) > eps {
        hi *= 2;
        if hi > LIMIT {
            return Err(Error::OutOfRange(format!("eps = {eps} needs a truncation beyond {LIMIT}")));
        }
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// What `eval_float` evaluates.
#[derive(Debug, Clone)]
pub enum EvalTarget {
    /// The multi-interpolated value of an index.
    Index(Composition),
    /// A single marker word, strict chains.
    Word(TWord),
}

impl EvalTarget {
    fn expansion(&self) -> LinComb {
        match self {
            EvalTarget::Index(idx) => s_operator(&LinComb::from_word(idx.to_word()), Marker::TAU),
            EvalTarget::Word(w) => LinComb::from_word(w.clone()),
        }
    }

    fn is_admissible(&self) -> bool {
        match self {
            EvalTarget::Index(idx) => idx.is_admissible(),
            EvalTarget::Word(w) => w.first().is_none_or(|b| b.letter_index() >= 2),
        }
    }
}

/// Non-truncated value to within `eps`: picks the smallest truncation whose
/// tail bound is at most `eps`.
pub fn eval_float(target: &EvalTarget, t: &TAssignment, eps: f64) -> Result<EvalResult> {
    if !target.is_admissible() {
        return Err(Error::Inadmissible);
    }
    let x = target.expansion();
    let n = truncation_for(|n| tail_bound_lincomb(&x, n), eps)?;
    t.check_bounded(n)?;
    let value = x
        .iter()
        .map(|(w, c)| rational_to_f64(c) * eval_word_f64(w, n, t))
        .sum();
    Ok(EvalResult {
        value: EvalValue::Float { value, tail_bound: tail_bound_lincomb(&x, n) },
        n,
        mode: EvalMode::Float,
    })
}

/// Exact truncated value of a target.
pub fn eval_exact(target: &EvalTarget, n: u64, t: &TAssignment) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::OutOfRange("truncation n must be at least 1".into()));
    }
    let value = match target {
        EvalTarget::Index(idx) => eval_multi_interp_direct(idx, n, t)?,
        EvalTarget::Word(w) => eval_word_truncated(w, n, t),
    };
    Ok(EvalResult { value: EvalValue::Exact(value), n, mode: EvalMode::Exact })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HoffmanMode {
    /// `(1 - 2^{-i}) ζ(i)` with `ζ(i)` to within `eps`.
    ClosedForm { eps: f64 },
    /// `Σ_{odd l <= n} l^{-i}`.
    Truncated(u64),
}

/// Hoffman's depth-one `t`-value `Σ_{l odd} l^{-i}`.
pub fn hoffman_t(i: u32, mode: HoffmanMode) -> Result<EvalValue> {
    if i < 2 {
        return Err(Error::OutOfRange(format!("t-value needs i >= 2, got {i}")));
    }
    match mode {
        HoffmanMode::Truncated(n) => {
            let mut total = Rational::zero();
            for l in (1..=n).step_by(2) {
                total += Rational::new(BigInt::one(), num_traits::pow(BigInt::from(l), i as usize));
            }
            Ok(EvalValue::Exact(total))
        }
        HoffmanMode::ClosedForm { eps } => {
            let z = eval_float(
                &EvalTarget::Word(TWord::plain(&[i]).expect("i >= 2")),
                &TAssignment::new(),
                eps,
            )?;
            let factor = 1.0 - 2f64.powi(-(i as i32));
            Ok(EvalValue::Float { value: factor * z.as_f64(), tail_bound: factor * z.tail_bound() })
        }
    }
}

/// `(Σ_{even l <= n} l^{-w}, Σ_{odd l <= n} l^{-w})`.
pub fn even_odd_parts(weight: u32, n: u64) -> (Rational, Rational) {
    let mut even = Rational::zero();
    let mut odd = Rational::zero();
    for l in 1..=n {
        let term = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(l), weight as usize));
        if l.is_multiple_of(2) {
            even += term;
        } else {
            odd += term;
        }
    }
    (even, odd)
}
