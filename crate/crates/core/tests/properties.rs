use grothendieck_core::format::{from_json, to_json, to_text};
use grothendieck_core::grothendieck::{big_g_jt, small_g_jt, upper_c};
use grothendieck_core::ring::{det, exact_divide, Assignment, Context, Monomial, TruncPoly, VarId};
use grothendieck_core::shapes::{contains, DentedPartition, FlagPair, GenPartition, MarkSet, Partition};
use grothendieck_core::symfunc::{e_pleth, h_pleth, schur, schur_expand, skew_h_det, Alphabet, Block};
use grothendieck_core::tableaux::{left_to_right, MarkVariant, RppSetup};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;

const CTX: Context = Context { n: 3, d: 4 };

fn poly_from(terms: Vec<([u32; 3], u32, u32, i64)>, ctx: Context) -> TruncPoly {
    let terms = terms.into_iter().map(|(x, a, b, c)| {
        let mut pairs: Vec<(VarId, u32)> = (0..3).map(|i| (VarId::x(i as u32 + 1), x[i])).collect();
        pairs.push((VarId::alpha(1), a));
        pairs.push((VarId::beta(2), b));
        (Monomial::from_pairs(pairs.into_iter().filter(|&(_, e)| e > 0)), BigInt::from(c))
    });
    TruncPoly::from_terms(ctx, terms).unwrap()
}

fn poly() -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(([0u32..3, 0..3, 0..3], 0u32..2, 0u32..2, -4i64..5), 0..6)
        .prop_map(|t| poly_from(t, CTX))
}

fn partition(max: u32) -> impl Strategy<Value = Partition> {
    let all = Partition::all_up_to(max);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn alphabet() -> impl Strategy<Value = Alphabet> {
    let block = prop_oneof![
        (1u32..=3, 0u32..3).prop_map(|(r, k)| Block::XInterval(r, (r + k).min(3))),
        (0i64..=3).prop_map(Block::APrefix),
        (0i64..=3).prop_map(Block::BPrefix),
        (-2i64..=2, 1u32..=2).prop_map(|(m, i)| Block::ConstMultiple(m, VarId::beta(i))),
        (1u32..=3).prop_map(|i| Block::Single(VarId::alpha(i))),
    ];
    prop::collection::vec((block, any::<bool>()), 1..4).prop_map(|blocks| {
        blocks.into_iter().fold(Alphabet::zero(), |z, (b, plus)| {
            if plus {
                z + Alphabet::block(b)
            } else {
                z - Alphabet::block(b)
            }
        })
    })
}

fn single_var() -> impl Strategy<Value = VarId> {
    prop_oneof![(1u32..=3).prop_map(VarId::x), (1u32..=3).prop_map(VarId::alpha), (1u32..=3).prop_map(VarId::beta)]
}

/// Permutation-sum determinant.
fn naive_det(m: &[Vec<TruncPoly>], ctx: Context) -> TruncPoly {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut sum = TruncPoly::zero(ctx);
    for p in perms(m.len()) {
        let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]);
        let sign = if inversions.count() % 2 == 0 { 1 } else { -1 };
        let prod = p.iter().enumerate().fold(TruncPoly::one(ctx), |acc, (i, &j)| &acc * &m[i][j]);
        sum += &prod.scale_i64(sign);
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn truncation_coherent(lambda in partition(4), n in 1u32..=3, d in 0u32..=4, extra in 1u32..=3) {
        prop_assume!(lambda.len() <= n as usize);
        let low = big_g_jt(&lambda, Context::new(n, d)).unwrap();
        let high = big_g_jt(&lambda, Context::new(n, d + extra)).unwrap();
        prop_assert_eq!(high.truncate(d), low.lift(Context::new(n, d + extra)).unwrap().truncate(d));
        prop_assert_eq!(high.truncate(d).lift(Context::new(n, d)).unwrap(), low);
    }

    #[test]
    fn det_matches_permutation_sum(size in 0usize..=4, entries in prop::collection::vec(poly(), 16)) {
        let m: Vec<Vec<TruncPoly>> = (0..size).map(|i| entries[i * size..(i + 1) * size].to_vec()).collect();
        prop_assert_eq!(det(CTX, &m).unwrap(), naive_det(&m, CTX));
    }

    #[test]
    fn exact_division(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let guard = q.max_x_degree().unwrap();
        let wide = Context::new(3, 4 + guard);
        let pw = p.lift(wide).unwrap();
        let qw = q.lift(wide).unwrap();
        prop_assert_eq!(exact_divide(&(&pw * &qw), &qw, guard).unwrap(), p);
    }

    #[test]
    fn containment_is_partial_order(a in partition(5), b in partition(5), c in partition(5)) {
        prop_assert!(contains(&a, &a));
        if contains(&a, &b) && contains(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if contains(&a, &b) && contains(&b, &c) {
            prop_assert!(contains(&a, &c));
        }
    }

    #[test]
    fn shifted_generalized_partitions(lambda in prop::collection::vec(-3i64..4, 3), mu in prop::collection::vec(-3i64..4, 3)) {
        let sorted = |mut v: Vec<i64>| { v.sort_by(|a, b| b.cmp(a)); GenPartition::new(v).unwrap() };
        let (l, m) = (sorted(lambda), sorted(mu));
        prop_assume!(m.is_contained_in(&l));
        let k = m.part(3);
        let (ls, ms) = (l.shift(-k).to_partition().unwrap(), m.shift(-k).to_partition().unwrap());
        prop_assert!(ms.is_contained_in(&ls));
        prop_assert_eq!(ls.size() as i64 - ms.size() as i64, l.size() - m.size());
    }

    #[test]
    fn plethysm_convolution_and_sign(z1 in alphabet(), z2 in alphabet(), m in 0i64..=4) {
        let ctx = Context::new(3, 4);
        let mut sum = TruncPoly::zero(ctx);
        for a in 0..=m {
            sum += &(&h_pleth(a, &z1, ctx).unwrap() * &h_pleth(m - a, &z2, ctx).unwrap());
        }
        prop_assert_eq!(h_pleth(m, &(z1.clone() + z2), ctx).unwrap(), sum);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(h_pleth(m, &-z1.clone(), ctx).unwrap(), e_pleth(m, &z1, ctx).unwrap().scale_i64(sign));
    }

    #[test]
    fn single_variable_recurrences(z in alphabet(), v in single_var(), m in 0i64..=4) {
        let ctx = Context::new(3, 4);
        let zv = TruncPoly::var(ctx, v).unwrap();
        let rest = z.clone() - Alphabet::single(v);
        prop_assert_eq!(
            h_pleth(m, &z, ctx).unwrap(),
            &h_pleth(m, &rest, ctx).unwrap() + &(&zv * &h_pleth(m - 1, &z, ctx).unwrap())
        );
        prop_assert_eq!(
            e_pleth(m, &z, ctx).unwrap(),
            &e_pleth(m, &rest, ctx).unwrap() + &(&zv * &e_pleth(m - 1, &rest, ctx).unwrap())
        );
    }

    #[test]
    fn skew_determinant_vanishes_and_factors(
        lambda in prop::collection::vec(0i64..4, 3),
        mu in prop::collection::vec(0i64..4, 3),
    ) {
        let sorted = |mut v: Vec<i64>| { v.sort_by(|a, b| b.cmp(a)); v };
        let (l, m) = (sorted(lambda), sorted(mu));
        let ctx = Context::new(3, 10);
        let x = Alphabet::x_all(3);
        let whole = skew_h_det(&l, &m, &x, ctx).unwrap();
        if l.iter().zip(&m).any(|(a, b)| b > a) {
            prop_assert!(whole.is_zero());
        } else if let Some(k) = (1..3).find(|&k| l[k] == m[k]) {
            let top = skew_h_det(&l[..k], &m[..k], &x, ctx).unwrap();
            let bottom = skew_h_det(&l[k..], &m[k..], &x, ctx).unwrap();
            prop_assert_eq!(whole, &top * &bottom);
        }
    }

    #[test]
    fn grothendieck_stability(lambda in partition(4), n in 1u32..=2) {
        prop_assume!(lambda.len() <= n as usize);
        let d = lambda.size() + 2;
        let big = big_g_jt(&lambda, Context::new(n + 1, d)).unwrap();
        prop_assert_eq!(big.restrict_x(n).lift(Context::new(n, d)).unwrap(), big_g_jt(&lambda, Context::new(n, d)).unwrap());
        let small = small_g_jt(&lambda, Context::new(n + 1, d)).unwrap();
        prop_assert_eq!(small.restrict_x(n).lift(Context::new(n, d)).unwrap(), small_g_jt(&lambda, Context::new(n, d)).unwrap());
    }

    #[test]
    fn schur_specialization(lambda in partition(4), n in 1u32..=3) {
        prop_assume!(lambda.len() <= n as usize);
        let ctx = Context::new(n, lambda.size() + 2);
        let s = schur(&lambda, ctx).unwrap();
        prop_assert_eq!(big_g_jt(&lambda, ctx).unwrap().specialize(&Assignment::schur()).unwrap(), s.clone());
        prop_assert_eq!(small_g_jt(&lambda, ctx).unwrap().specialize(&Assignment::schur()).unwrap(), s);
    }

    #[test]
    fn schur_expansion_of_g_is_triangular(lambda in partition(3)) {
        let n = 3u32;
        let d = lambda.size() + 2;
        prop_assume!(lambda.len() <= n as usize);
        let exp = schur_expand(&big_g_jt(&lambda, Context::new(n, d)).unwrap(), d).unwrap();
        let mut expect = BTreeMap::new();
        for mu in Partition::all_up_to(d).into_iter().filter(|mu| mu.len() <= n as usize && lambda.is_contained_in(mu)) {
            let c = upper_c(&lambda, &mu).unwrap();
            if !c.is_zero() {
                expect.insert(mu, c);
            }
        }
        prop_assert_eq!(exp, expect);
    }

    #[test]
    fn left_to_right_preserves_weight(outer in partition(4), inner in partition(2), n in 1u32..=2) {
        prop_assume!(inner.is_contained_in(&outer));
        let rows = outer.len().max(1);
        let setup = RppSetup::straight(&outer, &inner, &FlagPair::finite(vec![1; rows], vec![n; rows]).unwrap(), n).unwrap();
        let ctx = Context::new(n, 8);
        for t in setup.marked(MarkVariant::Left, ctx).unwrap() {
            let u = left_to_right(&t);
            prop_assert_eq!(setup.weight(&t, MarkVariant::Left, ctx).unwrap(), setup.weight(&u, MarkVariant::Right, ctx).unwrap());
        }
    }

    #[test]
    fn empty_mark_set_is_plain_flagged(lambda in partition(4), r in prop::collection::vec(1u32..=3, 3), s in prop::collection::vec(1u32..=3, 3)) {
        prop_assume!(lambda.len() <= 3);
        let ctx = Context::new(3, lambda.size());
        let flags = FlagPair::finite(r.clone(), s.clone()).unwrap();
        let dented = DentedPartition::from_partition(&lambda, 3).unwrap();
        let marked = RppSetup::new(&dented, &Partition::empty(), &flags, Some(&MarkSet::default()), 3).unwrap();
        let plain = RppSetup::straight(&lambda, &Partition::empty(), &flags, 3).unwrap();
        let got = marked.generating_function(MarkVariant::Left, ctx).unwrap();
        if r.iter().zip(&s).all(|(a, b)| a <= b) {
            prop_assert_eq!(got, plain.generating_function(MarkVariant::Left, ctx).unwrap());
        } else {
            prop_assert!(got.is_zero());
        }
    }

    #[test]
    fn structured_output_round_trips(p in poly()) {
        let s = to_json(&p);
        prop_assert_eq!(from_json(&s).unwrap(), p.clone());
        prop_assert_eq!(to_json(&from_json(&s).unwrap()), s);
        prop_assert_eq!(to_text(&p), to_text(&p.clone()));
    }
}

#[test]
fn schur_expansion_of_schur() {
    for lambda in Partition::all_up_to(5) {
        let n = lambda.len().max(1) as u32;
        let ctx = Context::new(n, lambda.size());
        let exp = schur_expand(&schur(&lambda, ctx).unwrap(), lambda.size()).unwrap();
        let expect: BTreeMap<Partition, TruncPoly> =
            [(lambda.clone(), TruncPoly::one(Context::params()))].into_iter().collect();
        assert_eq!(exp, expect, "{}", lambda);
    }
}
