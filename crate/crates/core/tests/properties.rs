use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use tateres::chains::{ce_diff, ce_diff_trivial, map_i, wedge_push, Adjoint, Chain, LinComb, MultiloopBasis, Wedge};
use tateres::cube::{SignString, Slot};
use tateres::opalg::Ideal;
use tateres::random::{exponent, full_operator, laurent, lie_element, operator_in, prng, small_rational};
use tateres::rational::q;
use tateres::residue::residue_with;
use tateres::{parshin_oracle, Idempotents, LieAlgebra, Q};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ad_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = prng(seed);
        for alg in [LieAlgebra::sl2(), LieAlgebra::heisenberg3()] {
            let alg = Arc::new(alg);
            let x = lie_element(&mut rng, &alg);
            let y = lie_element(&mut rng, &alg);
            let lhs = x.bracket(&y).unwrap().ad();
            prop_assert_eq!(lhs, x.ad().commutator(&y.ad()));
        }
    }

    #[test]
    fn oracle_is_multilinear_and_alternating(seed in any::<u64>()) {
        let mut rng = prng(seed);
        let n = 2;
        let f: Vec<_> = (0..=n).map(|_| laurent(&mut rng, n, 3, 2)).collect();
        let g0 = laurent(&mut rng, n, 3, 2);
        let base = parshin_oracle(&f[0], &f[1..]).unwrap();
        let other = parshin_oracle(&g0, &f[1..]).unwrap();
        prop_assert_eq!(parshin_oracle(&f[0].add(&g0).unwrap(), &f[1..]).unwrap(), &base + &other);
        let swapped = [f[2].clone(), f[1].clone()];
        prop_assert_eq!(parshin_oracle(&f[0], &swapped).unwrap(), -&base);
        let repeated = [f[1].clone(), f[1].clone()];
        prop_assert_eq!(parshin_oracle(&f[0], &repeated).unwrap(), Q::from_integer(0.into()));
    }

    #[test]
    fn residue_is_multilinear(seed in any::<u64>()) {
        let mut rng = prng(seed);
        let n = 1;
        let idem = Idempotents::standard(n);
        let f0 = laurent(&mut rng, n, 3, 3);
        let f1 = laurent(&mut rng, n, 3, 3);
        let g1 = laurent(&mut rng, n, 3, 3);
        let c = small_rational(&mut rng);
        let a = residue_with(&f0, std::slice::from_ref(&f1), &idem).unwrap().residue.0;
        let b = residue_with(&f0, std::slice::from_ref(&g1), &idem).unwrap().residue.0;
        let mixed = f1.add(&g1.scale(&c)).unwrap();
        prop_assert_eq!(residue_with(&f0, &[mixed], &idem).unwrap().residue.0, a + b * c);
    }

    #[test]
    fn operator_algebra(seed in any::<u64>()) {
        let mut rng = prng(seed);
        let n = rng.gen_range(1..=2);
        let d = if rng.gen_bool(0.5) { 1 } else { 2 };
        let a = full_operator(&mut rng, n, d);
        let b = full_operator(&mut rng, n, d);
        let c = full_operator(&mut rng, n, d);
        prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        let jac = a.commutator(&b.commutator(&c).unwrap()).unwrap()
            .add(&b.commutator(&c.commutator(&a).unwrap()).unwrap()).unwrap()
            .add(&c.commutator(&a.commutator(&b).unwrap()).unwrap()).unwrap();
        prop_assert!(jac.is_zero());

        let zero = SignString(vec![Slot::Zero; n]);
        let t = operator_in(&mut rng, &zero, d, 2);
        prop_assert!(t.in_trace_ideal());
        prop_assert_eq!(t.compose(&a).unwrap().trace().unwrap(), a.compose(&t).unwrap().trace().unwrap());
        prop_assert_eq!(t.commutator(&a).unwrap().trace().unwrap(), Q::from_integer(0.into()));

        let mut plus = zero.clone();
        plus.0 = vec![Slot::Plus; n];
        let p = operator_in(&mut rng, &plus, d, 2);
        for axis in 0..n {
            prop_assert!(p.compose(&a).unwrap().in_ideal(axis, Ideal::Plus));
            prop_assert!(a.compose(&p).unwrap().in_ideal(axis, Ideal::Plus));
        }
    }

    #[test]
    fn chain_differentials(seed in any::<u64>()) {
        let mut rng = prng(seed);
        let basis = MultiloopBasis { algebra: Arc::new(LieAlgebra::sl2()) };
        let adj = Adjoint(&basis);
        let gen = |rng: &mut _| (Rng::gen_range(rng, 0..3usize), exponent(rng, 1, 2));
        let r = rng.gen_range(2..=3);
        let mut chain: Chain<_, LinComb<_>> = Chain::new();
        let mut wedge = Wedge::new();
        for _ in 0..2 {
            let head = gen(&mut rng);
            let tail: Vec<_> = (0..r).map(|_| gen(&mut rng)).collect();
            let c = small_rational(&mut rng);
            chain.push(&adj, LinComb::from([(head.clone(), c.clone())]), tail.clone());
            let mut all = vec![head];
            all.extend(tail);
            wedge_push(&mut wedge, all, c);
        }
        let d1 = ce_diff(&basis, &adj, &chain).unwrap();
        prop_assert!(ce_diff(&basis, &adj, &d1).unwrap().is_zero(&adj));
        prop_assert!(ce_diff_trivial(&basis, &ce_diff_trivial(&basis, &wedge)).is_empty());

        let lhs = map_i(&d1);
        let mut rhs = Wedge::new();
        for (t, c) in ce_diff_trivial(&basis, &map_i(&chain)) {
            wedge_push(&mut rhs, t, -c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_antisymmetry(seed in any::<u64>()) {
        let mut rng = prng(seed);
        let gens: Vec<_> = (0..3).map(|_| exponent(&mut rng, 2, 3)).collect();
        let mut w = Wedge::new();
        wedge_push(&mut w, gens.clone(), q(1));
        let mut swapped = gens.clone();
        swapped.swap(1, 2);
        wedge_push(&mut w, swapped, q(1));
        prop_assert!(w.is_empty());
    }
}
