//! The contraction operator `S^m` and the index-level interpolations built
//! on ordered partitions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Block, Composition, LinComb, Marker, Rational, TWord};
use crate::error::{Error, Result};
use crate::products::diamond_into;

/// `S^{m_1 + ... + m_r}` on a single word. With one marker this is `S^m`:
///
/// `S(m^p a u) = m^p a S(u) + m^{p+1} a ◇ S(u)`, `S(1) = 1`.
fn s_word(w: &TWord, markers: &[Marker]) -> LinComb {
    let mut acc = LinComb::one();
    for b in w.blocks().iter().rev() {
        let mut next = LinComb::zero();
        for (v, c) in acc.iter() {
            next.add_term(v.prepend(b), c.clone());
        }
        for &m in markers {
            next += &diamond_into(&b.clone().with_exponent(m, 1), &acc);
        }
        acc = next;
    }
    acc
}

/// The operator `S^m`, extended linearly. Accepts marker-carrying words.
pub fn s_operator(x: &LinComb, m: Marker) -> LinComb {
    x.map_words(|w| s_word(w, &[m]))
}

/// The operator whose recursion carries the prefix `m_1 + ... + m_r` in place
/// of a single marker.
pub fn s_operator_sum(x: &LinComb, markers: &[Marker]) -> LinComb {
    x.map_words(|w| s_word(w, markers))
}

/// `(S^m - id)^n x`.
pub fn s_minus_identity_pow(x: &LinComb, m: Marker, n: usize) -> LinComb {
    let mut cur = x.clone();
    for _ in 0..n {
        cur = &s_operator(&cur, m) - &cur;
        if cur.is_zero() {
            break;
        }
    }
    cur
}

/// A subsequence `0 = r_0 < r_1 < ... < r_s = n` of `(0, ..., n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionPattern {
    r: Vec<usize>,
}

impl ContractionPattern {
    pub fn new(r: Vec<usize>, n: usize) -> Result<ContractionPattern> {
        let ok = r.len() >= 2
            && r[0] == 0
            && *r.last().unwrap() == n
            && r.windows(2).all(|p| p[0] < p[1]);
        if !ok {
            return Err(Error::OutOfRange(format!("{r:?} is not a contraction pattern of {n}")));
        }
        Ok(ContractionPattern { r })
    }

    /// All `2^{n-1}` patterns for words of length `n >= 1`.
    pub fn all(n: usize) -> Vec<ContractionPattern> {
        assert!(n >= 1);
        (0u64..1 << (n - 1))
            .map(|mask| {
                let mut r = vec![0];
                r.extend((1..n).filter(|&k| mask >> (k - 1) & 1 == 1));
                r.push(n);
                ContractionPattern { r }
            })
            .collect()
    }

    pub fn points(&self) -> &[usize] {
        &self.r
    }

    /// The weighted contraction `m^{r_1 - r_0 - 1} b_1 ... m^{r_s - r_{s-1} - 1} b_s`.
    pub fn contract(&self, x: &TWord, m: Marker) -> TWord {
        let letters = x.letters();
        let blocks = self
            .r
            .windows(2)
            .map(|seg| {
                let letter = letters[seg[0]..seg[1]].iter().sum();
                Block::letter(letter).with_exponent(m, (seg[1] - seg[0] - 1) as u32)
            })
            .collect();
        TWord::from_blocks(blocks)
    }
}

/// `S^m(x)` for a plain word as the sum of all weighted contractions.
pub fn s_operator_contraction(x: &TWord, m: Marker) -> Result<LinComb> {
    if !x.is_plain() {
        return Err(Error::NotPlain);
    }
    if x.is_unit() {
        return Ok(LinComb::one());
    }
    Ok(LinComb::from_terms(
        ContractionPattern::all(x.depth())
            .into_iter()
            .map(|r| (r.contract(x, m), Rational::one())),
    ))
}

/// All ordered partitions of `k`, lexicographic by parts.
pub fn compositions(k: u32) -> Result<Vec<Composition>> {
    if k == 0 {
        return Err(Error::OutOfRange("compositions of 0".into()));
    }
    fn go(k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if k == 0 {
            out.push(Composition::new(prefix.clone()).expect("positive parts"));
            return;
        }
        for first in 1..=k {
            prefix.push(first);
            go(k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(1 << (k - 1).min(20));
    go(k, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `p(i_1, ..., i_k)`: sums the entries of `idx` over the consecutive groups
/// given by the ordered partition `p` of `k`.
pub fn contract_index(idx: &Composition, p: &Composition) -> Composition {
    let mut out = Vec::with_capacity(p.depth());
    let mut pos = 0;
    for &len in p.parts() {
        let len = len as usize;
        out.push(idx.parts()[pos..pos + len].iter().sum());
        pos += len;
    }
    Composition::new(out).expect("sums of positive parts")
}

/// The ordered-partition expansion of the multi-interpolated value: one word
/// per composition `p` of the depth, with letters summed over each part and
/// `t^{p_j - 1}` on the `j`-th block.
pub fn partition_decompose(idx: &Composition) -> Result<LinComb> {
    if idx.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let mut out = LinComb::zero();
    for p in compositions(idx.depth() as u32)? {
        let contracted = contract_index(idx, &p);
        let blocks = contracted
            .parts()
            .iter()
            .zip(p.parts())
            .map(|(&letter, &len)| Block::letter(letter).with_exponent(Marker::TAU, len - 1))
            .collect();
        out.add_term(TWord::from_blocks(blocks), Rational::one());
    }
    Ok(out)
}

/// Weights `u_0 = 1, u_1, u_2, ...` attached to parts of size `1, 2, 3, ...`.
#[derive(Debug, Clone, PartialEq)]
pub enum UWeights {
    /// `u_1, u_2, ...` listed explicitly; entries past the list are zero.
    Table(Vec<Rational>),
    /// `u_m = t^m`.
    Powers(Rational),
}

impl std::fmt::Display for UWeights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UWeights::Table(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            UWeights::Powers(t) => write!(f, "powers of {t}"),
        }
    }
}

impl UWeights {
    pub fn table(higher: Vec<Rational>) -> UWeights {
        UWeights::Table(higher)
    }

    pub fn powers(t: Rational) -> UWeights {
        UWeights::Powers(t)
    }

    /// `u_j`; always `1` for `j = 0`.
    pub fn get(&self, j: u32) -> Rational {
        if j == 0 {
            return Rational::one();
        }
        match self {
            UWeights::Table(v) => v.get(j as usize - 1).cloned().unwrap_or_else(Rational::zero),
            UWeights::Powers(t) => num_traits::pow(t.clone(), j as usize),
        }
    }
}

/// A formal sum `Σ c · ζ(index)` of classical values.
pub type IndexedSum = Vec<(Rational, Composition)>;

/// Merges equal indices and drops zero coefficients; sorted by index.
pub fn normalize_indexed(sum: &IndexedSum) -> IndexedSum {
    let mut map: BTreeMap<Composition, Rational> = BTreeMap::new();
    for (c, idx) in sum {
        *map.entry(idx.clone()).or_insert_with(Rational::zero) += c;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| (c, idx))
        .collect()
}

/// The `u`-interpolated expansion: for each composition `p` of the depth, the
/// coefficient `Π_m u_{m-1}^{N_m(p)}` on the contracted index `p(idx)`.
pub fn u_interpolation(idx: &Composition, u: &UWeights) -> Result<IndexedSum> {
    if idx.is_empty() {
        return Err(Error::EmptyComposition);
    }
    if !idx.is_admissible() {
        return Err(Error::Inadmissible);
    }
    let mut out = Vec::new();
    for p in compositions(idx.depth() as u32)? {
        let coeff = p
            .parts()
            .iter()
            .fold(Rational::one(), |acc, &size| acc * u.get(size - 1));
        out.push((coeff, contract_index(idx, &p)));
    }
    Ok(out)
}

/// The map `V`: `t^{j_1} z_{i_1} ... t^{j_k} z_{i_k} ↦ Π u_{j_l} · ζ(i_1, ..., i_k)`.
pub fn v_map(x: &LinComb, u: &UWeights) -> Result<IndexedSum> {
    let mut out = Vec::new();
    for (w, c) in x.iter() {
        let mut coeff = c.clone();
        for b in w.blocks() {
            if b.exponents().iter().any(|(m, _)| !m.is_tau()) {
                return Err(Error::ForeignMarker);
            }
            coeff *= u.get(b.exponent(Marker::TAU));
        }
        out.push((coeff, w.index()));
    }
    Ok(normalize_indexed(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn w(s: &str) -> TWord {
        s.parse().unwrap()
    }
    fn l(s: &str) -> LinComb {
        LinComb::from_word(w(s))
    }
    fn lc(terms: &[&str]) -> LinComb {
        LinComb::from_terms(terms.iter().map(|s| (w(s), int(1))))
    }
    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn s_operator_depth_three() {
        // (i, j, k) = (2, 3, 5)
        let got = s_operator(&l("z2 z3 z5"), Marker::TAU);
        assert_eq!(got, lc(&["z2 z3 z5", "z2 t z8", "t z5 z5", "t^2 z10"]));
    }

    #[test]
    fn s_operator_base_cases() {
        assert_eq!(s_operator(&LinComb::one(), Marker::TAU), LinComb::one());
        assert_eq!(s_operator(&l("z4"), Marker::TAU), l("z4"));
        assert_eq!(s_operator(&l("z2 z1"), Marker::TAU), lc(&["z2 z1", "t z3"]));
    }

    #[test]
    fn s_operator_on_marker_words() {
        assert_eq!(s_operator(&l("t z2 t^2 z1"), Marker::TAU), lc(&["t z2 t^2 z1", "t^4 z3"]));
    }

    #[test]
    fn contraction_examples() {
        let x = w("z2 z3 z5");
        assert_eq!(
            s_operator_contraction(&x, Marker::TAU).unwrap(),
            s_operator(&LinComb::from_word(x), Marker::TAU)
        );
        assert_eq!(s_operator_contraction(&w("z5"), Marker::TAU).unwrap(), l("z5"));
        let four = s_operator_contraction(&w("z1 z1 z1 z1"), Marker::TAU).unwrap();
        assert_eq!(four.len(), 8);
        assert!(four.iter().all(|(_, c)| *c == int(1)));
        assert_eq!(s_operator_contraction(&w("t z1"), Marker::TAU), Err(Error::NotPlain));
        assert_eq!(ContractionPattern::all(5).len(), 16);
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(compositions(1).unwrap(), vec![comp(&[1])]);
        assert_eq!(
            compositions(3).unwrap(),
            vec![comp(&[1, 1, 1]), comp(&[1, 2]), comp(&[2, 1]), comp(&[3])]
        );
        assert_eq!(compositions(6).unwrap().len(), 32);
        assert!(compositions(0).is_err());
    }

    #[test]
    fn partition_decompose_examples() {
        assert_eq!(
            partition_decompose(&comp(&[3, 4, 6])).unwrap(),
            lc(&["z3 z4 z6", "z3 t z10", "t z7 z6", "t^2 z13"])
        );
        assert_eq!(partition_decompose(&comp(&[4])).unwrap(), l("z4"));
        assert_eq!(partition_decompose(&comp(&[2, 1])).unwrap(), lc(&["z2 z1", "t z3"]));
        assert_eq!(partition_decompose(&Composition::default()), Err(Error::EmptyComposition));
    }

    #[test]
    fn u_interpolation_depth_three_shape() {
        let u = UWeights::table(vec![rat(1, 3), rat(2, 7)]);
        let got = normalize_indexed(&u_interpolation(&comp(&[2, 3, 4]), &u).unwrap());
        let expected = normalize_indexed(&vec![
            (int(1), comp(&[2, 3, 4])),
            (rat(1, 3), comp(&[5, 4])),
            (rat(1, 3), comp(&[2, 7])),
            (rat(2, 7), comp(&[9])),
        ]);
        assert_eq!(got, expected);
        assert_eq!(u_interpolation(&comp(&[1, 2]), &u), Err(Error::Inadmissible));
        assert_eq!(u_interpolation(&comp(&[5]), &u).unwrap(), vec![(int(1), comp(&[5]))]);
    }

    #[test]
    fn u_powers_give_scalar_interpolation() {
        let t = rat(2, 5);
        let idx = comp(&[3, 1, 2, 1]);
        for (c, contracted) in u_interpolation(&idx, &UWeights::powers(t.clone())).unwrap() {
            let drop = idx.depth() - contracted.depth();
            assert_eq!(c, num_traits::pow(t.clone(), drop));
        }
    }

    #[test]
    fn v_map_examples() {
        let u = UWeights::table(vec![rat(1, 4)]);
        assert_eq!(v_map(&l("t z3"), &u).unwrap(), vec![(rat(1, 4), comp(&[3]))]);
        assert_eq!(v_map(&l("z2 z1"), &u).unwrap(), vec![(int(1), comp(&[2, 1]))]);
        assert_eq!(v_map(&l("t1 z2"), &u), Err(Error::ForeignMarker));
        let idx = comp(&[2, 1, 3]);
        let s = s_operator(&LinComb::from_word(idx.to_word()), Marker::TAU);
        let u = UWeights::table(vec![rat(-1, 2), rat(5, 3)]);
        assert_eq!(
            v_map(&s, &u).unwrap(),
            normalize_indexed(&u_interpolation(&idx, &u).unwrap())
        );
    }

    #[test]
    fn s_minus_identity_small() {
        assert!(s_minus_identity_pow(&l("z2"), Marker::TAU, 1).is_zero());
        assert!(!s_minus_identity_pow(&l("z2 z1"), Marker::TAU, 1).is_zero());
        assert!(s_minus_identity_pow(&l("z2 t z1"), Marker::TAU, 2).is_zero());
    }
}
