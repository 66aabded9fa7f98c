use proptest::prelude::*;

use interdep::exact::{self, mr_exact, mr_exhaustive};
use interdep::generators::{gen_regular, gen_type1, gen_type2};
use interdep::heuristics::{greedy, randomized_rounding, sa1, sa2, SaParams};
use interdep::lp::{self, Fixings};
use interdep::{cascade, InterdependentNetwork, NodeSet};

const LP_TOL: f64 = 1e-6;

fn fast_sa(seed: u64) -> SaParams {
    SaParams {
        t_final: 1e-2,
        r: 0.8,
        inner_loop: Some(20),
        ..SaParams::with_seed(seed)
    }
}

fn small_net() -> impl Strategy<Value = InterdependentNetwork> {
    (4usize..=10, 1u32..=4, any::<u64>())
        .prop_map(|(n, k, seed)| gen_type1(n, k.min(n as u32) as f64, seed).unwrap())
}

fn failed_b(net: &InterdependentNetwork, removal: &NodeSet) -> usize {
    cascade(net, removal).unwrap().failed_b.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_networks_round_trip(half in 2usize..=6, k in 1u32..=3, seed: u64) {
        let n = 2 * half;
        let k = k.min(n as u32) as f64;
        for net in [
            gen_type1(n, k, seed).unwrap(),
            gen_type2(n, 1.0, k, seed).unwrap(),
            gen_regular(n, k as usize, seed).unwrap(),
        ] {
            prop_assert!(net.is_valid());
            let back: InterdependentNetwork = net.to_text().parse().unwrap();
            prop_assert_eq!(&back, &net);
        }
    }

    #[test]
    fn exact_witness_is_sound(net in small_net()) {
        for d in 0..=net.n_b() {
            let r = mr_exact(&net, d).unwrap();
            prop_assert_eq!(r.witness.len(), r.value);
            prop_assert!(failed_b(&net, &r.witness) >= d);
        }
    }

    #[test]
    fn lp_below_exact_below_heuristics(net in small_net(), seed: u64) {
        for d in 1..=net.n_b() {
            let opt = mr_exhaustive(&net, d).unwrap().value;
            let relax = lp::solve_relaxation(&net, d, &Fixings::none()).unwrap();
            prop_assert!(relax.objective <= opt as f64 + LP_TOL);
            let g = greedy(&net, d, seed).unwrap();
            let r = randomized_rounding(&net, d, seed, 10).unwrap();
            for h in [&g, &r] {
                prop_assert!(h.size >= opt);
                prop_assert_eq!(h.removal.len(), h.size);
                prop_assert!(failed_b(&net, &h.removal) >= d);
            }
        }
    }

    #[test]
    fn annealing_never_worse_than_greedy(net in small_net(), seed: u64) {
        let d = 1 + seed as usize % net.n_b();
        let g = greedy(&net, d, seed).unwrap();
        let params = fast_sa(seed);
        for h in [sa1(&net, d, &params, None).unwrap(), sa2(&net, d, &params, None).unwrap()] {
            prop_assert!(h.size <= g.size);
            prop_assert!(failed_b(&net, &h.removal) >= d);
            let traj = h.trajectory.unwrap();
            prop_assert!(traj.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn mr_curve_is_monotone_and_mrb_below_mr(net in small_net()) {
        let curve = exact::mr_curve(&net).unwrap().values;
        prop_assert!(curve.windows(2).all(|w| w[0] <= w[1]));
        for (d, &mr) in curve.iter().enumerate() {
            let mrb = exact::mrb_exact(&net, d).unwrap();
            prop_assert!(mrb <= mr && mrb <= d);
        }
    }

    #[test]
    fn seeded_heuristics_repeat(net in small_net(), seed: u64) {
        let d = 1 + seed as usize % net.n_b();
        let params = fast_sa(seed);
        prop_assert_eq!(greedy(&net, d, seed).unwrap().removal, greedy(&net, d, seed).unwrap().removal);
        prop_assert_eq!(
            randomized_rounding(&net, d, seed, 5).unwrap().removal,
            randomized_rounding(&net, d, seed, 5).unwrap().removal
        );
        prop_assert_eq!(sa1(&net, d, &params, None).unwrap().removal, sa1(&net, d, &params, None).unwrap().removal);
        prop_assert_eq!(sa2(&net, d, &params, None).unwrap().removal, sa2(&net, d, &params, None).unwrap().removal);
    }
}

/// Among all bidirectional star networks with 4 nodes per side and 8 edges,
/// MR(1) = 2 exactly when every B-node has degree 2.
#[test]
fn regular_networks_maximize_mr1() {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    let mut best_other = 0;
    let mut regular_seen = 0;
    for m in 0u32..1 << 16 {
        if m.count_ones() != 8 {
            continue;
        }
        let edges: Vec<_> = (0..16)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let Ok(net) = InterdependentNetwork::bidirectional_star(4, 4, edges) else {
            continue;
        };
        if !net.is_valid() {
            continue;
        }
        let mr1 = mr_exact(&net, 1).unwrap().value;
        let regular = (0..4).all(|b| net.neighbors_of_b(b).len() == 2);
        if regular {
            regular_seen += 1;
            assert_eq!(mr1, 2);
        } else {
            best_other = best_other.max(mr1);
        }
    }
    assert!(regular_seen > 0);
    assert!(best_other < 2);
}
