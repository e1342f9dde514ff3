mod common;

use common::*;
use mimzv::algebra::{Block, Composition, LinComb, Marker, TWord};
use mimzv::interpolation::*;
use mimzv::products::{diamond_into, interp_product, interp_product_extended, stuffle};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn l(w: &TWord) -> LinComb {
    LinComb::from_word(w.clone())
}

fn s(x: &LinComb) -> LinComb {
    s_operator(x, Marker::TAU)
}

#[test]
fn recursion_equals_contraction_sum_exhaustively() {
    for depth in 0..=5 {
        for w in all_plain_words(depth, 3) {
            assert_eq!(s(&l(&w)), s_operator_contraction(&w, Marker::TAU).unwrap(), "{w}");
        }
    }
}

#[test]
fn s_minus_identity_is_nilpotent() {
    for depth in 1..=5 {
        for w in all_plain_words(depth, 2) {
            assert!(s_minus_identity_pow(&l(&w), Marker::TAU, depth).is_zero(), "{w}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for depth in 1..=5 {
        for _ in 0..10 {
            let w = random_word(&mut rng, depth, 3, 2);
            assert!(s_minus_identity_pow(&l(&w), Marker::TAU, depth).is_zero(), "{w}");
            if depth > 1 {
                // the exponent is sharp on plain words
                let p = TWord::plain(&w.letters()).unwrap();
                assert!(!s_minus_identity_pow(&l(&p), Marker::TAU, depth - 1).is_zero(), "{p}");
            }
        }
    }
}

#[test]
fn combined_marker_operator_factors_in_both_orders() {
    let (t1, t2) = (Marker::indexed(1), Marker::indexed(2));
    let mut words: Vec<TWord> = (0..=4).flat_map(|d| all_plain_words(d, 2)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for depth in 1..=4 {
        for _ in 0..5 {
            words.push(random_word(&mut rng, depth, 3, 1));
        }
    }
    for w in words {
        let x = l(&w);
        let combined = s_operator_sum(&x, &[t1, t2]);
        assert_eq!(combined, s_operator(&s_operator(&x, t2), t1), "{w}");
        assert_eq!(combined, s_operator(&s_operator(&x, t1), t2), "{w}");
    }
}

#[test]
fn homomorphism_exhaustive_small_depth() {
    let words: Vec<TWord> = (0..=3).flat_map(|d| all_plain_words(d, 2)).collect();
    for x in &words {
        for y in &words {
            if x.depth() + y.depth() > 5 {
                continue;
            }
            let p = interp_product(&l(x), &l(y), Marker::TAU).unwrap();
            assert_eq!(s(&p), stuffle(&s(&l(x)), &s(&l(y))), "{x} ⋆ {y}");
        }
    }
}

#[test]
fn homomorphism_random_larger_depth() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for total in 6..=8 {
        for _ in 0..3 {
            let dx = rng.gen_range(1..total);
            let x = random_composition(&mut rng, dx, 3).to_word();
            let y = random_composition(&mut rng, total - dx, 3).to_word();
            let p = interp_product(&l(&x), &l(&y), Marker::TAU).unwrap();
            assert_eq!(s(&p), stuffle(&s(&l(&x)), &s(&l(&y))), "{x} ⋆ {y}");
        }
    }
}

#[test]
fn extended_product_is_mapped_to_stuffle_on_marker_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..30 {
        let (dx, dy) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let x = l(&random_word(&mut rng, dx, 3, 2));
        let y = l(&random_word(&mut rng, dy, 3, 2));
        assert_eq!(s(&interp_product_extended(&x, &y, Marker::TAU)), stuffle(&s(&x), &s(&y)), "{x} ⋆ {y}");
    }
}

#[test]
fn partition_decomposition_equals_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for depth in 1..=6 {
        let count = if depth <= 3 { 20 } else { 6 };
        for _ in 0..count {
            let idx = random_composition(&mut rng, depth, 4);
            assert_eq!(partition_decompose(&idx).unwrap(), s(&l(&idx.to_word())), "{idx}");
        }
    }
    for w in all_plain_words(4, 2) {
        assert_eq!(partition_decompose(&w.index()).unwrap(), s(&l(&w)));
    }
}

#[test]
fn u_interpolation_matches_v_of_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for depth in 1..=5 {
        for _ in 0..6 {
            let mut parts = random_composition(&mut rng, depth, 3).parts().to_vec();
            parts[0] = parts[0].max(2);
            let idx = Composition::new(parts).unwrap();
            let u = UWeights::table((0..depth).map(|_| random_rational(&mut rng, 6)).collect());
            let direct = normalize_indexed(&u_interpolation(&idx, &u).unwrap());
            assert_eq!(direct, v_map(&s(&l(&idx.to_word())), &u).unwrap(), "{idx}");
        }
    }
}

fn letter() -> impl Strategy<Value = Block> {
    (1u32..=3, 0u32..=1).prop_map(|(a, p)| Block::letter(a).with_exponent(Marker::TAU, p))
}

fn word(max_depth: usize) -> impl Strategy<Value = TWord> {
    prop::collection::vec(letter(), 0..=max_depth).prop_map(TWord::from_blocks)
}

fn prepend(b: &Block, x: &LinComb) -> LinComb {
    x.map_words(|w| LinComb::from_word(w.prepend(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // (a ◇ U) * (bV) = a ◇ (U * bV) + b((a ◇ U) * V) - (a ◇ b)(U * V)
    #[test]
    fn exchange_left(a in letter(), b in letter(), u in word(2), v in word(2)) {
        let (u, v) = (l(&u), l(&v));
        let bv = prepend(&b, &v);
        let au = diamond_into(&a, &u);
        let lhs = stuffle(&au, &bv);
        let rhs = diamond_into(&a, &stuffle(&u, &bv)) + prepend(&b, &stuffle(&au, &v))
            - prepend(&a.diamond(&b), &stuffle(&u, &v));
        prop_assert_eq!(lhs, rhs);
    }

    // (aU) * (b ◇ V) = b ◇ ((aU) * V) + a(U * (b ◇ V)) - (a ◇ b)(U * V)
    #[test]
    fn exchange_right(a in letter(), b in letter(), u in word(2), v in word(2)) {
        let (u, v) = (l(&u), l(&v));
        let au = prepend(&a, &u);
        let bv = diamond_into(&b, &v);
        let lhs = stuffle(&au, &bv);
        let rhs = diamond_into(&b, &stuffle(&au, &v)) + prepend(&a, &stuffle(&u, &bv))
            - prepend(&a.diamond(&b), &stuffle(&u, &v));
        prop_assert_eq!(lhs, rhs);
    }

    // (a ◇ U) * (b ◇ V) = a ◇ (U * (b ◇ V)) + b ◇ ((a ◇ U) * V) - (a ◇ b) ◇ (U * V)
    #[test]
    fn exchange_both(a in letter(), b in letter(), u in word(2), v in word(2)) {
        let (u, v) = (l(&u), l(&v));
        let au = diamond_into(&a, &u);
        let bv = diamond_into(&b, &v);
        let lhs = stuffle(&au, &bv);
        let rhs = diamond_into(&a, &stuffle(&u, &bv)) + diamond_into(&b, &stuffle(&au, &v))
            - diamond_into(&a.diamond(&b), &stuffle(&u, &v));
        prop_assert_eq!(lhs, rhs);
    }
}
