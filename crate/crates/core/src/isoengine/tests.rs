use super::*;
use crate::abelian::AbelianAut;
use crate::cayley::{direct_product, families, quotient_with_section};
use crate::cohomology::{coboundary_witness, extract_extension_data};
use crate::config::Caps;
use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arc(g: CayleyGroup) -> Arc<CayleyGroup> {
    Arc::new(g)
}

fn shuffled(g: &CayleyGroup, seed: u64) -> Arc<CayleyGroup> {
    let mut perm: Vec<usize> = g.elements().collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    arc(g.relabel(&perm))
}

fn config() -> EngineConfig {
    EngineConfig { caps: Caps::default(), reduce_inner: true, oracle_check: false }
}

fn scalar(p: u64, k: usize, c: u32) -> Mat {
    (0..k).map(|i| (0..k).map(|j| if i == j { c % p as u32 } else { 0 }).collect()).collect()
}

fn unit(k: usize, i: usize, j: usize) -> Mat {
    (0..k).map(|r| (0..k).map(|c| u32::from(r == i && c == j)).collect()).collect()
}

#[test]
fn cyclicity_of_algebra_over_itself() {
    let pair = AlgebraModulePair { p: 3, k: 2, u: vec![scalar(3, 2, 1)], v: vec![scalar(3, 2, 1)] };
    assert!(pair.is_valid());
    assert_eq!(module_cyclicity_test(&pair, &Caps::default()).unwrap(), Some(scalar(3, 2, 1)));
    let all: Vec<Mat> = (0..2).flat_map(|i| (0..2).map(move |j| unit(2, i, j))).collect();
    let full = AlgebraModulePair { p: 2, k: 2, u: all.clone(), v: all };
    let gen = module_cyclicity_test(&full, &Caps::default()).unwrap().unwrap();
    assert!(gfp::inverse(2, &gen).is_some());
}

#[test]
fn cyclicity_of_zero_module() {
    let pair = AlgebraModulePair { p: 2, k: 2, u: vec![scalar(2, 2, 1)], v: Vec::new() };
    assert_eq!(module_cyclicity_test(&pair, &Caps::default()).unwrap(), Some(scalar(2, 2, 0)));
}

#[test]
fn scalars_do_not_generate_all_matrices() {
    let v: Vec<Mat> = (0..2).flat_map(|i| (0..2).map(move |j| unit(2, i, j))).collect();
    let pair = AlgebraModulePair { p: 2, k: 2, u: vec![scalar(2, 2, 1)], v };
    assert!(pair.is_valid());
    assert_eq!(module_cyclicity_test(&pair, &Caps::default()).unwrap(), None);
}

#[test]
fn cyclicity_respects_cap() {
    let v: Vec<Mat> = (0..2).flat_map(|i| (0..2).map(move |j| unit(2, i, j))).collect();
    let pair = AlgebraModulePair { p: 5, k: 2, u: vec![scalar(5, 2, 1)], v };
    let caps = Caps { cyclicity: 100, ..Caps::default() };
    assert!(matches!(module_cyclicity_test(&pair, &caps), Err(Error::CapExceeded { .. })));
}

#[test]
fn central_radical_flagship() {
    let sl = arc(families::sl2(5));
    let z2a5 = arc(direct_product(&families::cyclic(2), &families::alternating(5)));
    let c = config();
    assert!(iso_central_radical(&sl, &sl, &c).unwrap().is_isomorphic());
    let v = iso_central_radical(&sl, &z2a5, &c).unwrap();
    assert!(!v.is_isomorphic());
    assert!(brute_force_iso(&sl, &z2a5, &c.caps).unwrap().is_none());
    for (g, seed) in [(&sl, 1), (&z2a5, 2)] {
        let r = shuffled(g, seed);
        let v = iso_central_radical(g, &r, &c).unwrap();
        assert!(v.witness.unwrap().is_isomorphism(g, &r));
    }
}

#[test]
fn central_radical_without_inner_reduction() {
    let sl = arc(families::sl2(5));
    let r = shuffled(&sl, 7);
    let c = EngineConfig { reduce_inner: false, ..config() };
    assert!(iso_central_radical(&sl, &r, &c).unwrap().is_isomorphic());
}

#[test]
fn central_radical_needs_central_radical() {
    let s4 = arc(families::symmetric(4));
    assert!(matches!(iso_central_radical(&s4, &s4, &config()), Err(Error::StrategyInapplicable { .. })));
}

#[test]
fn central_radical_with_cyclic_center_of_order_four() {
    // Z4 x A5 against Z2 x Z2 x A5 and a relabelled copy
    let a5 = families::alternating(5);
    let g = arc(direct_product(&families::cyclic(4), &a5));
    let h = arc(direct_product(&families::elementary_abelian(2, 2), &a5));
    let c = config();
    assert!(!iso_central_radical(&g, &h, &c).unwrap().is_isomorphic());
    let r = shuffled(&g, 3);
    assert!(iso_central_radical(&g, &r, &c).unwrap().is_isomorphic());
}

#[test]
fn elementary_radical_examples() {
    let c = config();
    let s3 = arc(families::symmetric(3));
    let z3z2 = arc(families::cyclic_semidirect(3, 2, 2));
    assert!(iso_elem_abelian_radical(&z3z2, &s3, &c).unwrap().is_isomorphic());
    let z4 = arc(families::cyclic(4));
    let v4 = arc(families::elementary_abelian(2, 2));
    assert!(!iso_elem_abelian_radical(&z4, &v4, &c).unwrap().is_isomorphic());
    let z6 = arc(families::cyclic(6));
    assert!(!iso_elem_abelian_radical(&s3, &z6, &c).unwrap().is_isomorphic());
}

#[test]
fn elementary_radical_with_nontrivial_action() {
    // Z3 x| S5 through the sign, against Z3 x S5
    let s5 = arc(families::symmetric(5));
    let a = crate::abelian::primary_decomposition(arc(families::cyclic(3))).unwrap();
    let even = s5.commutator_subgroup();
    let sign: Vec<AbelianAut> =
        s5.elements().map(|x| AbelianAut { matrix: vec![vec![if even.contains(x) { 1 } else { 2 }]] }).collect();
    let twisted = arc(crate::builders::semidirect_product(&a, s5.clone(), sign).unwrap());
    let direct = arc(direct_product(&families::cyclic(3), &s5));
    let c = config();
    assert!(!iso_elem_abelian_radical(&twisted, &direct, &c).unwrap().is_isomorphic());
    let r = shuffled(&twisted, 11);
    assert!(iso_elem_abelian_radical(&twisted, &r, &c).unwrap().is_isomorphic());
}

#[test]
fn elementary_radical_matches_central_on_sl25() {
    let c = config();
    let sl = arc(families::sl2(5));
    let z2a5 = arc(direct_product(&families::cyclic(2), &families::alternating(5)));
    for (g, h) in [(&sl, &z2a5), (&sl, &sl), (&z2a5, &z2a5)] {
        let a = iso_elem_abelian_radical(g, h, &c).unwrap().is_isomorphic();
        let b = iso_central_radical(g, h, &c).unwrap().is_isomorphic();
        assert_eq!(a, b);
    }
}

#[test]
fn rescaled_generator_matches_class() {
    let c = config();
    let g = arc(families::alternating(4));
    let h = shuffled(&g, 5);
    let inst = beta_instances(&g, &h, &c).unwrap();
    assert!(!inst.is_empty());
    let mut hits = 0;
    for i in &inst {
        if let Some(alpha) = i.decide(&c.caps).unwrap() {
            hits += 1;
            let a = crate::abelian::primary_decomposition(arc(families::elementary_abelian(i.p as usize, i.k))).unwrap();
            let q = i.quotient();
            let trivial = vec![AbelianAut::identity(i.k); q.order()];
            let n = q.order();
            let ok = coboundary_witness(&a, q, &trivial, |_, _| vec![0; i.k]).is_some();
            assert!(ok);
            // [alpha f_1] = [f_2] with the action of H
            let action: Vec<AbelianAut> = i.theta2().iter().map(|m| to_aut(m)).collect();
            let w = coboundary_witness(&a, q, &action, |x, y| {
                (0..i.k)
                    .map(|r| {
                        let af: u64 = (0..i.k).map(|j| alpha[r][j] as u64 * i.f1[j][x * n + y] as u64).sum();
                        (af + i.p * i.p - i.f2()[r][x * n + y] as u64) % i.p
                    })
                    .collect()
            });
            assert!(w.is_some());
        }
    }
    assert!(hits > 0);
}

#[test]
fn auto_examples() {
    let c = config();
    let z6 = arc(families::cyclic(6));
    let v = iso_auto(&z6, &arc(families::abelian(&[2, 3])), &c).unwrap();
    assert!(v.is_isomorphic());
    assert_eq!(v.strategy, "abelian");
    let v = iso_auto(&arc(families::cyclic(4)), &arc(families::elementary_abelian(2, 2)), &c).unwrap();
    assert!(!v.is_isomorphic());
    let sl = arc(families::sl2(5));
    let z2a5 = arc(direct_product(&families::cyclic(2), &families::alternating(5)));
    assert!(!iso_auto(&sl, &z2a5, &c).unwrap().is_isomorphic());
    let r = shuffled(&sl, 9);
    let v = iso_auto(&sl, &r, &c).unwrap();
    assert!(v.is_isomorphic());
    assert_eq!(v.strategy, "ss-product-1");
}

#[test]
fn oracle_check_annotates() {
    let c = EngineConfig { oracle_check: true, ..config() };
    let d4 = arc(families::dihedral(4));
    let q8 = arc(families::quaternion());
    let v = iso_auto(&d4, &q8, &c).unwrap();
    assert!(!v.is_isomorphic());
    let v = iso_with_strategy(&d4, &shuffled(&d4, 4), Strategy::Brute, &c).unwrap();
    assert!(v.certificate[0].starts_with("oracle"));
}

#[test]
fn strategy_names_round_trip() {
    for s in ["auto", "central-radical", "elem-abelian-radical", "ss-product-1", "ss-product-2", "brute"] {
        assert_eq!(s.parse::<Strategy>().unwrap().label(), s);
    }
    assert!("fast".parse::<Strategy>().is_err());
}

#[test]
fn semisimple_strategies_on_one_factor() {
    let c = config();
    let sl = arc(families::sl2(5));
    let z2a5 = arc(direct_product(&families::cyclic(2), &families::alternating(5)));
    let a5 = arc(families::alternating(5));
    for (g, h, expect) in [(&sl, &z2a5, false), (&sl, &shuffled(&sl, 2), true), (&z2a5, &shuffled(&z2a5, 3), true), (&a5, &shuffled(&a5, 4), true)] {
        let v1 = iso_semisimple_product_small_aut_a(g, h, &c).unwrap();
        let v2 = iso_semisimple_product_code(g, h, &c).unwrap();
        assert_eq!(v1.is_isomorphic(), expect);
        assert_eq!(v2.is_isomorphic(), expect);
    }
}

#[test]
fn semisimple_needs_product_quotient() {
    let s5 = arc(families::symmetric(5));
    let c = config();
    assert!(matches!(iso_semisimple_product_small_aut_a(&s5, &s5, &c), Err(Error::StrategyInapplicable { .. })));
    assert!(iso_central_radical(&s5, &shuffled(&s5, 1), &c).unwrap().is_isomorphic());
}

#[test]
fn non_pc_fixture_for_two() {
    let fx = non_pc_fixture(2);
    assert_eq!(fx.group.order(), 128);
    assert!(non_pc_regression(&fx, &Caps::default()).unwrap());
    let id = carrying_automorphism(&fx.group, &fx.image1, &fx.image1, &Caps::default()).unwrap();
    assert!(id.is_some());
    assert!(p_times_top_order_count(&fx.group, &fx.image1, 2) > 0);
    assert_eq!(p_times_top_order_count(&fx.group, &fx.image2, 2), 0);
}

fn sl25_sides() -> (ExtensionData, Arc<CayleyGroup>) {
    let g = arc(families::sl2(5));
    let z = g.center();
    let qp = quotient_with_section(g, &z).unwrap();
    (extract_extension_data(&qp).unwrap(), qp.quotient)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn class_test_ignores_coboundary_perturbation(seed in any::<u64>()) {
        let (ed, q) = sl25_sides();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: Vec<u64> = q.elements().map(|x| if x == q.identity() { 0 } else { rand::Rng::gen_range(&mut rng, 0..2) }).collect();
        let n = q.order();
        let mut moved = ed.clone();
        for x in 0..n {
            for y in 0..n {
                let d = (u[x] + u[y] + 2 - u[q.mul(x, y)]) % 2;
                moved.cocycle.rows[0][x * n + y] = (moved.cocycle.rows[0][x * n + y] + d) % 2;
            }
        }
        let auts = crate::cayley::enumerate_automorphisms(&q, &Caps::default()).unwrap();
        let beta = auts[seed as usize % auts.len()].clone();
        prop_assert_eq!(central_class_test(&ed, &ed, &beta).unwrap(), central_class_test(&ed, &moved, &beta).unwrap());
        prop_assert!(central_class_test(&ed, &moved, &beta).unwrap());
    }
}
