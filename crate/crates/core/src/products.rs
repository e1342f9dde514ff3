//! Quasi-shuffle products on words: stuffle, star, shuffle, and the
//! multi-interpolated product.
//!
//! All four share one recursion on the leading letters `x = a u`, `y = b v`:
//!
//! ```text
//! x . y = a (u . y) + b (x . v) + <diamond terms built from a ◇ b and u . v>
//! ```
//!
//! and differ only in the diamond terms. The recursion is evaluated bottom-up
//! over pairs of suffixes, so no call stack grows with the word length.

use num_traits::One;

use crate::algebra::{Block, LinComb, Marker, Rational, TWord};
use crate::error::{Error, Result};

/// The diamond product of two letter blocks: `z_i ◇ z_j = z_{i+j}`, marker
/// exponents add.
pub fn diamond(a: &Block, b: &Block) -> Block {
    a.diamond(b)
}

/// `a ◇ w`: merges `a` into the leading block of `w`. Zero for the unit word.
pub fn diamond_into_word(a: &Block, w: &TWord) -> LinComb {
    match w.diamond_front(a) {
        Some(word) => LinComb::from_word(word),
        None => LinComb::zero(),
    }
}

/// Linear extension of [`diamond_into_word`].
pub fn diamond_into(a: &Block, x: &LinComb) -> LinComb {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        if let Some(word) = w.diamond_front(a) {
            out.add_term(word, c.clone());
        }
    }
    out
}

/// Which diamond correction a quasi-shuffle uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `+ (a ◇ b)(u * v)`
    Stuffle,
    /// `- (a ◇ b)(u ⋆ v)`
    Star,
    /// no diamond term
    Shuffle,
    /// `+ (1 - 2m)(a ◇ b)(u ⋆ v) + (m^2 - m)(a ◇ b) ◇ (u ⋆ v)`
    Interpolated(Marker),
}

fn prepend_all(b: &Block, x: &LinComb, out: &mut LinComb) {
    for (w, c) in x.iter() {
        out.add_term(w.prepend(b), c.clone());
    }
}

fn diamond_terms(kind: Kind, ab: &Block, rest: &LinComb, out: &mut LinComb) {
    match kind {
        Kind::Shuffle => {}
        Kind::Stuffle => prepend_all(ab, rest, out),
        Kind::Star => {
            let mut tmp = LinComb::zero();
            prepend_all(ab, rest, &mut tmp);
            out.add_scaled(&tmp, &-Rational::one());
        }
        Kind::Interpolated(m) => {
            let two = Rational::from_integer(2.into());
            let one = Rational::one();
            // (1 - 2m) (a ◇ b)(u ⋆ v)
            prepend_all(ab, rest, out);
            let mut tmp = LinComb::zero();
            prepend_all(&ab.clone().with_exponent(m, 1), rest, &mut tmp);
            out.add_scaled(&tmp, &-two);
            // (m^2 - m) (a ◇ b) ◇ (u ⋆ v)
            out.add_scaled(&diamond_into(&ab.clone().with_exponent(m, 2), rest), &one);
            out.add_scaled(&diamond_into(&ab.clone().with_exponent(m, 1), rest), &-one);
        }
    }
}

/// The product of two single words under `kind`.
pub fn quasi_shuffle_words(x: &TWord, y: &TWord, kind: Kind) -> LinComb {
    let xs = x.blocks();
    let ys = y.blocks();
    let (nx, ny) = (xs.len(), ys.len());
    let suffix = |bs: &[Block], k: usize| TWord::from_blocks(bs[k..].to_vec());
    // table[i][j] = x[i..] . y[j..]
    let mut table: Vec<Vec<LinComb>> = vec![vec![LinComb::zero(); ny + 1]; nx + 1];
    for i in (0..=nx).rev() {
        for j in (0..=ny).rev() {
            let entry = if i == nx {
                LinComb::from_word(suffix(ys, j))
            } else if j == ny {
                LinComb::from_word(suffix(xs, i))
            } else {
                let mut out = LinComb::zero();
                prepend_all(&xs[i], &table[i + 1][j], &mut out);
                prepend_all(&ys[j], &table[i][j + 1], &mut out);
                let ab = xs[i].diamond(&ys[j]);
                diamond_terms(kind, &ab, &table[i + 1][j + 1], &mut out);
                out
            };
            table[i][j] = entry;
        }
        // rows below i + 1 are no longer needed
        if i + 2 <= nx {
            table[i + 2] = Vec::new();
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Bilinear extension of [`quasi_shuffle_words`].
pub fn quasi_shuffle(x: &LinComb, y: &LinComb, kind: Kind) -> LinComb {
    let mut out = LinComb::zero();
    for (u, a) in x.iter() {
        for (v, b) in y.iter() {
            out.add_scaled(&quasi_shuffle_words(u, v, kind), &(a * b));
        }
    }
    out
}

/// The stuffle (harmonic) product `*`, extended to marker-carrying words by
/// letting the diamond add marker exponents.
pub fn stuffle(x: &LinComb, y: &LinComb) -> LinComb {
    quasi_shuffle(x, y, Kind::Stuffle)
}

/// The star product `⋆`.
pub fn star_product(x: &LinComb, y: &LinComb) -> LinComb {
    quasi_shuffle(x, y, Kind::Star)
}

/// The shuffle product.
pub fn shuffle(x: &LinComb, y: &LinComb) -> LinComb {
    quasi_shuffle(x, y, Kind::Shuffle)
}

/// The multi-interpolated product `⋆^m` on combinations of words free of `m`.
pub fn interp_product(x: &LinComb, y: &LinComb, m: Marker) -> Result<LinComb> {
    if x.contains_marker(m) || y.contains_marker(m) {
        return Err(Error::MarkerInInput(m));
    }
    Ok(quasi_shuffle(x, y, Kind::Interpolated(m)))
}

/// The same recursion as [`interp_product`] without the input restriction:
/// a leading marker power `m^p` travels with its letter, and the diamond adds
/// it to the product's marker terms. On `m`-free inputs this is
/// `interp_product`; in general `S^m` maps it to the stuffle product.
pub fn interp_product_extended(x: &LinComb, y: &LinComb, m: Marker) -> LinComb {
    quasi_shuffle(x, y, Kind::Interpolated(m))
}
