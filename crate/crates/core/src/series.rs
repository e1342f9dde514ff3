//! The truncated generating function `Σ_k ζ_n^t({s}_k) z^k` and the
//! Bell-polynomial forms of its coefficients.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Block, Marker, Rational, TWord};
use crate::error::{Error, Result};
use crate::evaluation::{eval_fast_uniform_exact, eval_star_truncated, TAssignment, Uniform};

/// Coefficients `c_0..=c_K` of the truncated generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoeffs {
    pub coeffs: Vec<Rational>,
    pub s: u32,
    pub n: u64,
    pub k_max: usize,
    pub t_id: String,
}

impl SeriesCoeffs {
    fn new(coeffs: Vec<Rational>, s: u32, n: u64, t: &TAssignment) -> SeriesCoeffs {
        debug_assert!(coeffs[0].is_one());
        let k_max = coeffs.len() - 1;
        SeriesCoeffs { coeffs, s, n, k_max, t_id: format!("{:?}", t.rule(Marker::TAU)) }
    }
}

fn inv_pow(m: u64, e: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(m), e))
}

/// Product of two dense series truncated at degree `cap`.
fn mul_trunc(a: &[Rational], b: &[Rational], cap: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cap + 1];
    for (i, x) in a.iter().enumerate().take(cap + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(cap + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `exp(L)` for a series with `L(0) = 0`, via `k c_k = Σ_j j l_j c_{k-j}`.
fn exp_series(l: &[Rational], cap: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); cap + 1];
    c[0] = Rational::one();
    for k in 1..=cap {
        let mut acc = Rational::zero();
        for j in 1..=k {
            if let Some(lj) = l.get(j) {
                acc += Rational::from_integer(BigInt::from(j)) * lj * &c[k - j];
            }
        }
        c[k] = acc / Rational::from_integer(BigInt::from(k));
    }
    c
}

/// Coefficients of `Π_{m=1}^n (1 + (z/m^s) / (1 - z t_m / m^s))` up to `z^K`.
pub fn theta_coeffs_product(s: u32, n: u64, t: &TAssignment, k_max: usize) -> SeriesCoeffs {
    let mut acc = vec![Rational::zero(); k_max + 1];
    acc[0] = Rational::one();
    for m in 1..=n {
        let tm = t.value(Marker::TAU, m);
        // 1 + Σ_{j>=1} t_m^{j-1} z^j / m^{sj}
        let mut factor = vec![Rational::one()];
        let mut tpow = Rational::one();
        for j in 1..=k_max {
            factor.push(&tpow * inv_pow(m, s as usize * j));
            tpow *= &tm;
        }
        acc = mul_trunc(&acc, &factor, k_max);
    }
    SeriesCoeffs::new(acc, s, n, t)
}

/// Truncated power sums `p_j = Σ_{m<=n} (t_m^j - (t_m - 1)^j) / m^{js}`, `j = 1..=K`
/// (index 0 unused).
pub fn power_sums(s: u32, n: u64, t: &TAssignment, k_max: usize) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); k_max + 1];
    for m in 1..=n {
        let tm = t.value(Marker::TAU, m);
        let tm1 = &tm - Rational::one();
        for (j, pj) in p.iter_mut().enumerate().skip(1) {
            let num = num_traits::pow(tm.clone(), j) - num_traits::pow(tm1.clone(), j);
            *pj += num * inv_pow(m, s as usize * j);
        }
    }
    p
}

/// The same coefficients via `exp(Σ_j p_j z^j / j)`.
pub fn theta_coeffs_explog(s: u32, n: u64, t: &TAssignment, k_max: usize) -> SeriesCoeffs {
    let p = power_sums(s, n, t, k_max);
    let l: Vec<Rational> = p
        .iter()
        .enumerate()
        .map(|(j, pj)| if j == 0 { Rational::zero() } else { pj / Rational::from_integer(BigInt::from(j)) })
        .collect();
    SeriesCoeffs::new(exp_series(&l, k_max), s, n, t)
}

fn binomials(k: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for r in 1..=k {
        let prev = &rows[r - 1];
        let mut row = vec![BigInt::one(); r + 1];
        for j in 1..r {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Complete Bell polynomial `B_k(x_1, ..., x_k)`, `k = xs.len()`, via
/// `B_{k+1} = Σ_j C(k, j) B_{k-j} x_{j+1}`.
pub fn complete_bell(xs: &[Rational]) -> Rational {
    let k = xs.len();
    let binom = binomials(k);
    let mut b = vec![Rational::one()];
    for r in 0..k {
        let mut next = Rational::zero();
        for j in 0..=r {
            next += Rational::from_integer(binom[r][j].clone()) * &b[r - j] * &xs[j];
        }
        b.push(next);
    }
    b.pop().unwrap_or_else(Rational::one)
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Modified Bell polynomial `Q_k` as `det(M) / k!`, where `M` has
/// `x_{i-j+1}` on and below the diagonal and `-1, ..., -(k-1)` above it.
pub fn modified_bell_det(xs: &[Rational]) -> Result<Rational> {
    let k = xs.len();
    if k == 0 {
        return Err(Error::OutOfRange("modified Bell polynomial needs k >= 1".into()));
    }
    let m: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if j <= i {
                        xs[i - j].clone()
                    } else if j == i + 1 {
                        -Rational::from_integer(BigInt::from(i + 1))
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(m) / Rational::from_integer(factorial(k)))
}

fn uniform_word(s: u32, len: usize) -> TWord {
    TWord::from_blocks(vec![Block::letter(s).with_exponent(Marker::TAU, 1); len])
}

/// `Σ_{l=0}^k ζ^⋆_n({s t}_l) · ζ_n({s (1 - t)}_{k-l})`.
pub fn convolution_value(s: u32, k: usize, n: u64, t: &TAssignment) -> Rational {
    let minus_one = -Rational::one();
    (0..=k)
        .map(|l| {
            let star = eval_star_truncated(&uniform_word(s, l), n, t);
            let strict = eval_fast_uniform_exact(
                &Uniform::plain(s, k - l).transform(minus_one.clone(), Rational::one()),
                n,
                t,
            );
            star * strict
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// `B_k(x_1, ..., x_k) / k!` with `x_j = (j-1)! p_j`.
pub fn bell_value(s: u32, k: usize, n: u64, t: &TAssignment) -> Rational {
    let p = power_sums(s, n, t, k);
    let xs: Vec<Rational> = (1..=k)
        .map(|j| Rational::from_integer(factorial(j - 1)) * &p[j])
        .collect();
    complete_bell(&xs) / Rational::from_integer(factorial(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMethod {
    Product,
    ExpLog,
    Bell,
    Conv,
}

impl FromStr for SeriesMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<SeriesMethod> {
        match s {
            "product" => Ok(SeriesMethod::Product),
            "explog" => Ok(SeriesMethod::ExpLog),
            "bell" => Ok(SeriesMethod::Bell),
            "conv" => Ok(SeriesMethod::Conv),
            _ => Err(Error::Parse(format!("unknown series method `{s}`"))),
        }
    }
}

pub fn theta_coeffs(method: SeriesMethod, s: u32, n: u64, t: &TAssignment, k_max: usize) -> SeriesCoeffs {
    match method {
        SeriesMethod::Product => theta_coeffs_product(s, n, t, k_max),
        SeriesMethod::ExpLog => theta_coeffs_explog(s, n, t, k_max),
        SeriesMethod::Bell => SeriesCoeffs::new(
            (0..=k_max).map(|k| bell_value(s, k, n, t)).collect(),
            s,
            n,
            t,
        ),
        SeriesMethod::Conv => SeriesCoeffs::new(
            (0..=k_max).map(|k| convolution_value(s, k, n, t)).collect(),
            s,
            n,
            t,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Composition};
    use crate::evaluation::{eval_multi_interp_direct, SequenceRule};

    fn list(v: &[Rational]) -> TAssignment {
        TAssignment::tau(SequenceRule::Table { values: v.to_vec(), default: Rational::zero() })
    }

    #[test]
    fn product_examples() {
        let one = TAssignment::constant(int(1));
        assert_eq!(theta_coeffs_product(2, 2, &one, 2).coeffs, vec![int(1), rat(5, 4), rat(21, 16)]);
        assert_eq!(theta_coeffs_product(2, 2, &one, 0).coeffs, vec![int(1)]);
        let t = list(&[rat(1, 2), rat(-1, 3), rat(2, 5)]);
        let c = theta_coeffs_product(2, 3, &t, 3);
        for k in 1..=3 {
            let idx = Composition::new(vec![2; k]).unwrap();
            assert_eq!(c.coeffs[k], eval_multi_interp_direct(&idx, 3, &t).unwrap());
        }
    }

    #[test]
    fn explog_examples() {
        let one = TAssignment::constant(int(1));
        assert_eq!(theta_coeffs_explog(2, 2, &one, 2).coeffs, vec![int(1), rat(5, 4), rat(21, 16)]);
        let zero = TAssignment::constant(int(0));
        assert_eq!(theta_coeffs_explog(3, 4, &zero, 1).coeffs[1], rat(1, 1) + rat(1, 8) + rat(1, 27) + rat(1, 64));
        let star = eval_star_truncated(&uniform_word(2, 3), 5, &one);
        assert_eq!(theta_coeffs_explog(2, 5, &one, 3).coeffs[3], star);
    }

    #[test]
    fn bell_examples() {
        assert_eq!(complete_bell(&[int(3)]), int(3));
        assert_eq!(complete_bell(&[int(1), int(2)]), int(3));
        assert_eq!(complete_bell(&[int(1), int(1), int(1)]), int(5));
        assert_eq!(complete_bell(&[]), int(1));
        assert_eq!(modified_bell_det(&[int(2)]).unwrap(), int(2));
        assert_eq!(modified_bell_det(&[int(1), int(2)]).unwrap(), rat(3, 2));
        assert!(modified_bell_det(&[]).is_err());
        let xs = [rat(1, 2), rat(-3, 7), rat(5, 3)];
        let scaled = [xs[0].clone(), xs[1].clone(), int(2) * &xs[2]];
        assert_eq!(modified_bell_det(&xs).unwrap(), complete_bell(&scaled) / int(6));
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(m), int(-1));
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(m), int(0));
    }

    #[test]
    fn convolution_and_bell_examples() {
        let t = list(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(convolution_value(2, 0, 5, &t), int(1));
        let one = TAssignment::constant(int(1));
        assert_eq!(convolution_value(2, 3, 4, &one), eval_star_truncated(&uniform_word(2, 3), 4, &one));
        let idx = Composition::new(vec![2, 2]).unwrap();
        assert_eq!(convolution_value(2, 2, 2, &t), eval_multi_interp_direct(&idx, 2, &t).unwrap());
        assert_eq!(bell_value(2, 0, 3, &t), int(1));
        assert_eq!(bell_value(3, 1, 3, &t), rat(1, 1) + rat(1, 27) + rat(1, 8));
        let t = list(&[rat(-2, 3), rat(1, 5), rat(3, 4), rat(1, 7)]);
        let idx = Composition::new(vec![2, 2, 2]).unwrap();
        assert_eq!(bell_value(2, 3, 4, &t), eval_multi_interp_direct(&idx, 4, &t).unwrap());
    }
}
