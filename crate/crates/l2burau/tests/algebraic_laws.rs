//! Property suites for the symbolic core: Fox calculus identities, the
//! braid action anti-homomorphism law, and oracle normal-form laws.

use l2burau::{fox_derivative, BraidWord, GroupOracle, GroupRingElt, Word};
use proptest::prelude::*;

fn word_strategy(rank: i32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        (1..=rank, prop::bool::ANY).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
    .prop_map(Word::from_letters)
}

fn braid_strategy(strands: u32, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(
        (1..strands as i32, prop::bool::ANY).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
    .prop_map(move |letters| BraidWord::new(strands, letters).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// d(uv)/dx_i = du/dx_i + u * dv/dx_i.
    #[test]
    fn fox_product_rule(
        u in word_strategy(3, 10),
        v in word_strategy(3, 10),
        i in 1u32..=3,
    ) {
        let lhs = fox_derivative(&u.concat(&v), i);
        let rhs = fox_derivative(&u, i)
            .add(&GroupRingElt::from_word(u.clone()).mul(&fox_derivative(&v, i)));
        prop_assert_eq!(lhs, rhs);
    }

    /// sum_i (dw/dx_i)(x_i - 1) = w - 1.
    #[test]
    fn fox_fundamental_identity(w in word_strategy(4, 14)) {
        let mut acc = GroupRingElt::zero();
        for i in 1..=4u32 {
            let factor = GroupRingElt::from_word(Word::generator(i)).sub(&GroupRingElt::one());
            acc = acc.add(&fox_derivative(&w, i).mul(&factor));
        }
        let expected = GroupRingElt::from_word(w).sub(&GroupRingElt::one());
        prop_assert_eq!(acc, expected);
    }
}

proptest! {
    /// The action reverses products: h_{ab}(x_j) = h_b(h_a(x_j)).
    #[test]
    fn action_reverses_products(
        a in braid_strategy(4, 8),
        b in braid_strategy(4, 8),
        j in 1u32..=4,
    ) {
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(ab.act_on_x(j), b.act_on_x_word(&a.act_on_x(j)));
    }

    /// Inserting a defining relation anywhere leaves the action, the normal
    /// form, and the permutation unchanged.
    #[test]
    fn relation_insertion_is_invisible(
        b in braid_strategy(4, 8),
        pos_seed in 0usize..100,
        which in 0usize..4,
    ) {
        let relation: Vec<i32> = match which {
            0 => vec![1, -1],
            1 => vec![-2, 2],
            2 => vec![1, 2, 1, -2, -1, -2],
            _ => vec![1, 3, -1, -3],
        };
        let letters = b.letters();
        let pos = pos_seed % (letters.len() + 1);
        let mut spliced = letters[..pos].to_vec();
        spliced.extend_from_slice(&relation);
        spliced.extend_from_slice(&letters[pos..]);
        let c = BraidWord::new(4, spliced).unwrap();
        for j in 1..=4 {
            prop_assert_eq!(b.act_on_x(j), c.act_on_x(j));
        }
        prop_assert_eq!(b.permutation(), c.permutation());
        prop_assert_eq!(l2burau::garside_nf(&b), l2burau::garside_nf(&c));
    }

    /// Acting in the g-alphabet agrees with acting in the x-alphabet after
    /// the change of generators g_j = x_1 .. x_j.
    #[test]
    fn g_action_matches_x_action(b in braid_strategy(4, 8), j in 1u32..=4) {
        let g_as_x: Vec<Word> = (1..=4u32)
            .map(|k| Word::from_letters((1..=k as i32).collect::<Vec<_>>()))
            .collect();
        let lhs = b.act_on_g(j).rewrite_alphabet(&g_as_x).unwrap();
        let rhs = b.act_on_x_word(&g_as_x[j as usize - 1]);
        prop_assert_eq!(lhs, rhs);
    }
}

fn oracles() -> Vec<GroupOracle> {
    vec![
        GroupOracle::free(3).unwrap(),
        GroupOracle::free_abelian(3).unwrap(),
        GroupOracle::braid(4).unwrap(),
        GroupOracle::torus_knot(2, 3).unwrap(),
        GroupOracle::torus_knot(3, 4).unwrap(),
    ]
}

fn fit_alphabet(w: &Word, size: u32) -> Word {
    Word::from_letters(w.letters().iter().map(|&l| {
        let a = ((l.unsigned_abs() - 1) % size + 1) as i32;
        if l < 0 {
            -a
        } else {
            a
        }
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// normalize is idempotent and a homomorphism for products, and
    /// preserves the weight grading.
    #[test]
    fn normal_form_laws(
        u0 in word_strategy(3, 10),
        v0 in word_strategy(3, 10),
    ) {
        for oracle in oracles() {
            let u = fit_alphabet(&u0, oracle.alphabet_size());
            let v = fit_alphabet(&v0, oracle.alphabet_size());
            let nu = oracle.normalize(&u).unwrap();
            prop_assert_eq!(oracle.normalize(&nu).unwrap(), nu.clone());
            let direct = oracle.normalize(&u.concat(&v)).unwrap();
            let split = oracle
                .normalize(&nu.concat(&oracle.normalize(&v).unwrap()))
                .unwrap();
            prop_assert_eq!(direct, split);
            prop_assert_eq!(oracle.psi(&nu).unwrap(), oracle.psi(&u).unwrap());
        }
    }
}

#[test]
fn balls_are_nested_and_monotone() {
    for oracle in oracles() {
        let mut previous: Option<Vec<(Word, u32)>> = None;
        for radius in 0..=3 {
            let ball = oracle.ball(radius, 1_000_000).unwrap();
            assert_eq!(ball[0].0, Word::identity());
            assert_eq!(ball[0].1, 0);
            if let Some(prev) = &previous {
                assert!(prev.len() <= ball.len());
                let set: std::collections::HashSet<&Word> =
                    ball.iter().map(|(w, _)| w).collect();
                for (w, _) in prev {
                    assert!(set.contains(w), "{} lost at radius {radius}", w);
                }
            }
            previous = Some(ball);
        }
    }
}
