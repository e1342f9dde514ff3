//! Test-only oracles and generators. The oracles enumerate chains directly
//! from the defining sums and share no code with the evaluators.

#![allow(dead_code)]

use mimzv::algebra::{rat, Block, Composition, LinComb, Marker, Rational, TWord};
use mimzv::evaluation::{SequenceRule, TAssignment};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

/// All chains `n >= l_1 > l_2 > ... > l_k >= 1` (strict) or with `>=`
/// (weak), in lexicographic order.
pub fn chains(n: u64, k: usize, weak: bool) -> Vec<Vec<u64>> {
    fn go(hi: u64, k: usize, weak: bool, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for l in 1..=hi {
            prefix.push(l);
            go(if weak { l } else { l - 1 }, k - 1, weak, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, weak, &mut Vec::new(), &mut out);
    out
}

fn inv_pow(l: u64, e: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(l).pow(e))
}

fn block_weight(b: &Block, l: u64, t: &TAssignment) -> Rational {
    let mut w = inv_pow(l, b.letter_index());
    for &(m, p) in b.exponents() {
        w *= num_traits::pow(t.value(m, l), p as usize);
    }
    w
}

/// `Σ_chains Π_r (marker weights) / l_r^{i_r}` over strict or weak chains.
pub fn brute_word(w: &TWord, n: u64, t: &TAssignment, weak: bool) -> Rational {
    let mut total = Rational::zero();
    for chain in chains(n, w.depth(), weak) {
        let mut term = Rational::one();
        for (b, &l) in w.blocks().iter().zip(&chain) {
            term *= block_weight(b, l, t);
        }
        total += term;
    }
    total
}

pub fn brute_lincomb(x: &LinComb, n: u64, t: &TAssignment) -> Rational {
    x.iter().map(|(w, c)| c * brute_word(w, n, t, false)).sum()
}

/// Weak chains where every equality `l_r = l_{r+1} = j` contributes `t_j`.
pub fn brute_multi_interp(idx: &Composition, n: u64, t: &TAssignment) -> Rational {
    let mut total = Rational::zero();
    for chain in chains(n, idx.depth(), true) {
        let mut term = Rational::one();
        for (r, (&i, &l)) in idx.parts().iter().zip(&chain).enumerate() {
            term *= inv_pow(l, i);
            if r + 1 < chain.len() && chain[r + 1] == l {
                term *= t.value(Marker::TAU, l);
            }
        }
        total += term;
    }
    total
}

/// Substitutes the constant `c` for marker `m`: `m^p` becomes the
/// coefficient `c^p`.
pub fn specialize(x: &LinComb, m: Marker, c: &Rational) -> LinComb {
    let mut out = LinComb::zero();
    for (w, coeff) in x.iter() {
        let mut factor = coeff.clone();
        let blocks: Vec<Block> = w
            .blocks()
            .iter()
            .map(|b| {
                let p = b.exponent(m);
                factor *= num_traits::pow(c.clone(), p as usize);
                let rest: Vec<(Marker, u32)> = b.exponents().iter().copied().filter(|&(k, _)| k != m).collect();
                Block::new(b.letter_index(), &rest).unwrap()
            })
            .collect();
        out.add_term(TWord::from_blocks(blocks), factor);
    }
    out
}

pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    rat(rng.gen_range(-q..=q), q)
}

/// A `t` table of length `len` with values in `[-1, 1]`, optionally also
/// assigning `t1`.
pub fn random_t<R: Rng>(rng: &mut R, len: usize, with_t1: bool) -> TAssignment {
    let table = |rng: &mut R| SequenceRule::Table {
        values: (0..len).map(|_| random_rational(rng, 7)).collect(),
        default: Rational::zero(),
    };
    let t = TAssignment::tau(table(rng));
    if with_t1 {
        t.with(Marker::indexed(1), table(rng))
    } else {
        t
    }
}

pub fn random_composition<R: Rng>(rng: &mut R, depth: usize, max_letter: u32) -> Composition {
    Composition::new((0..depth).map(|_| rng.gen_range(1..=max_letter)).collect()).unwrap()
}

/// A word with letters `<= max_letter` and each block carrying `t` and `t1`
/// to powers `<= max_exp`.
pub fn random_word<R: Rng>(rng: &mut R, depth: usize, max_letter: u32, max_exp: u32) -> TWord {
    let blocks = (0..depth)
        .map(|_| {
            let exps = [
                (Marker::TAU, rng.gen_range(0..=max_exp)),
                (Marker::indexed(1), rng.gen_range(0..=max_exp)),
            ];
            Block::new(rng.gen_range(1..=max_letter), &exps).unwrap()
        })
        .collect();
    TWord::from_blocks(blocks)
}

/// All plain words of the given depth with letters in `1..=max_letter`.
pub fn all_plain_words(depth: usize, max_letter: u32) -> Vec<TWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                (1..=max_letter).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| TWord::plain(&v).unwrap()).collect()
}
