//! Acceptance gate: golden-table reproduction plus the randomized and
//! exhaustive cross-checking suites. One test per criterion; each prints a
//! pass line (visible with `--nocapture`) after its assertions hold. All
//! comparisons are exact (tolerance zero).

mod common;

use common::*;
use harmful_rum::{
    all_justifications, choice_prob_closed, choice_prob_direct, classify, composes,
    composing_orders, correlation_bound, degree_of_self_punishment, enumerate_orders, is_harmful,
    is_rum, is_single_peaked, simulate, simulate_rum, support_set, GroundSet, HarmfulWeights,
    IdentificationClass, LinearOrder, Menu, StochasticChoice, Tolerance, DEFAULT_SIZE_GUARD,
};
use rand::Rng;

fn exact() -> Tolerance {
    Tolerance::exact()
}

fn assert_tables_equal(actual: &StochasticChoice, expected: &StochasticChoice, label: &str) {
    for ((menu_a, row_a), (menu_e, row_e)) in actual.menus().zip(expected.menus()) {
        assert_eq!(menu_a, menu_e, "{label}: menu sets differ");
        for (pos, (a, e)) in row_a.iter().zip(row_e).enumerate() {
            assert_eq!(
                a,
                e,
                "{label}: entry for item {} in menu {:?}",
                menu_a.items()[pos],
                menu_a.items()
            );
        }
    }
    assert_eq!(actual, expected, "{label}: tables differ");
}

#[test]
fn criterion_01_dictator_simulation_reproduces_golden_table() {
    let expected = dictator_shares();
    let ground = expected.ground().clone();
    let order = LinearOrder::from_labels(&ground, &["100", "70", "50"]).unwrap();
    let weights = HarmfulWeights::new(
        vec![rat("0.5"), rat("0.3"), rat("0.2")],
        &exact(),
    )
    .unwrap();
    let simulated = simulate(&ground, &order, &weights).unwrap();
    assert_tables_equal(&simulated, &expected, "dictator shares");
    println!("criterion 01 (dictator-share table reproduced exactly): pass");
}

#[test]
fn criterion_02_diet_elicitation_recovers_the_taste_order_and_weights() {
    let rho = diet();
    let tol = exact();
    let ground = rho.ground();
    let expected_order = LinearOrder::from_labels(ground, &["p", "f", "s"]).unwrap();
    assert_eq!(composing_orders(&rho, &tol), vec![expected_order.clone()]);
    let justs = all_justifications(&rho, &tol);
    assert_eq!(justs.len(), 1);
    assert_eq!(justs[0].order, expected_order);
    assert_eq!(justs[0].order.label_string(ground), "p,f,s");
    assert_eq!(
        justs[0].weights.weights(),
        &[rat("3/10"), rat("1/10"), rat("3/5")]
    );
    assert_eq!(classify(&rho, &tol).unwrap(), IdentificationClass::Unique);
    println!("criterion 02 (diet table elicitation: unique justification p,f,s with weights 3/10,1/10,3/5): pass");
}

#[test]
fn criterion_03_task_simulation_reproduces_golden_table() {
    let expected = task_rewards();
    let ground = expected.ground().clone();
    let order = LinearOrder::from_labels(&ground, &["h", "m", "l"]).unwrap();
    let weights = HarmfulWeights::new(
        vec![rat("0.4"), rat("0.2"), rat("0.4")],
        &exact(),
    )
    .unwrap();
    let simulated = simulate(&ground, &order, &weights).unwrap();
    assert_tables_equal(&simulated, &expected, "task rewards");
    println!("criterion 03 (task-reward table reproduced exactly): pass");
}

#[test]
fn criterion_04_paired_reversal_identification() {
    let rho = paired_reversals();
    let tol = exact();
    let ground = rho.ground();
    let wxyz = LinearOrder::from_labels(ground, &["w", "x", "y", "z"]).unwrap();
    let wzyx = LinearOrder::from_labels(ground, &["w", "z", "y", "x"]).unwrap();
    assert_eq!(composing_orders(&rho, &tol), vec![wxyz.clone(), wzyx.clone()]);

    let justs = all_justifications(&rho, &tol);
    assert_eq!(justs.len(), 2);
    let expected_weights = [rat("0"), rat("1/2"), rat("0"), rat("1/2")];
    for j in &justs {
        assert_eq!(j.weights.weights(), &expected_weights);
    }
    assert_eq!(
        classify(&rho, &tol).unwrap(),
        IdentificationClass::TwoStarPaired { j: 2 }
    );
    assert_eq!(justs[0].order.star_order(2).unwrap(), justs[1].order);
    assert_eq!(justs[0].induced_lottery(), justs[1].induced_lottery());
    println!("criterion 04 (paired suffix-reversal case: two justifications, weights 0,1/2,0,1/2, rank-2 pairing, one induced lottery): pass");
}

#[test]
fn criterion_05_unexplained_rum_is_rejected_but_rationalizable() {
    let rho = unexplained_rum();
    assert!(!is_harmful(&rho, &exact()));
    let feasibility = is_rum(&rho, DEFAULT_SIZE_GUARD).unwrap();
    assert!(feasibility.feasible);
    let witness = feasibility.witness.expect("feasible comes with a witness");
    assert_tables_equal(
        &simulate_rum(rho.ground(), &witness).unwrap(),
        &rho,
        "rationalizing witness",
    );
    println!("criterion 05 (non-harmful table: rejected by detection, rationalized exactly by a lottery witness): pass");
}

#[test]
fn criterion_06_concentrated_table_separation() {
    let rho = concentrated();
    let tol = exact();
    assert!(is_harmful(&rho, &tol));
    let justs = all_justifications(&rho, &tol);
    assert_eq!(justs.len(), 1);
    assert_eq!(
        justs[0].weights.weights(),
        &[rat("19/20"), rat("1/20"), rat("0")]
    );
    let order = LinearOrder::from_labels(rho.ground(), &["x", "y", "z"]).unwrap();
    let bound = correlation_bound(&rho, &order).unwrap();
    assert_eq!(bound, rat("29/20"));
    assert_eq!(bound, rat("1.45"));

    let report = degree_of_self_punishment(&rho, &tol).unwrap();
    assert_eq!(report.degree, 1);
    assert!(report.method_agreement);
    // independent oracle: minimize the max positive index over all
    // justifications enumerated from scratch
    let oracle = justs
        .iter()
        .map(|j| j.weights.max_positive_index().unwrap())
        .min()
        .unwrap();
    assert_eq!(oracle, 1);
    println!("criterion 06 (concentrated table: harmful with weights 19/20,1/20,0; correlation bound 29/20; degree 1): pass");
}

#[test]
fn criterion_07_selection_probability_routes_agree_everywhere() {
    let mut rng = rng(700);
    let tol = exact();
    let mut checked: u64 = 0;
    for n in 1..=5usize {
        let orders: Vec<LinearOrder> = enumerate_orders(n).collect();
        let menus = Menu::all_menus(n);
        for _ in 0..200 {
            let strictly_positive = rng.gen_bool(0.5);
            let weights = random_weights(&mut rng, n, strictly_positive);
            for order in &orders {
                for menu in &menus {
                    for &item in menu.items() {
                        let direct = choice_prob_direct(order, &weights, menu, item).unwrap();
                        let closed = choice_prob_closed(order, &weights, menu, item).unwrap();
                        assert!(
                            tol.eq(&direct, &closed) && direct == closed,
                            "n={n} order={order:?} menu={:?} item={item}",
                            menu.items()
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    println!("criterion 07 (definitional and closed-form routes identical on {checked} evaluations, n = 1..5, 200 weight vectors per n): pass");
}

fn round_trip_instances() -> Vec<(GroundSet, LinearOrder, HarmfulWeights)> {
    let mut rng = rng(800);
    let mut instances = Vec::with_capacity(500);
    for n in 3..=6usize {
        for k in 0..125 {
            let ground = letters(n);
            let order = random_order(&mut rng, n);
            let weights = random_weights(&mut rng, n, k % 2 == 0);
            instances.push((ground, order, weights));
        }
    }
    instances
}

#[test]
fn criterion_08_simulation_round_trip_recovers_the_justification() {
    let tol = exact();
    for (ground, order, weights) in round_trip_instances() {
        let rho = simulate(&ground, &order, &weights).unwrap();
        let justs = all_justifications(&rho, &tol);
        assert!(
            justs
                .iter()
                .any(|j| j.order == order && j.weights == weights),
            "generating pair not recovered: order={order:?}"
        );
        if support_set(&rho).len() >= 3 {
            assert_eq!(justs.len(), 1, "support ≥ 3 must identify uniquely");
        }
    }
    println!("criterion 08 (500 simulate→detect round trips recover the generating pair; unique whenever ≥3 items supported): pass");
}

#[test]
fn criterion_09_search_matches_brute_force_and_counts_match_tags() {
    let mut rng = rng(900);
    let tol = exact();
    for n in 3..=5usize {
        for case in 0..200 {
            let ground = letters(n);
            let order = random_order(&mut rng, n);
            let weights = random_weights(&mut rng, n, case % 2 == 0);
            let simulated = simulate(&ground, &order, &weights).unwrap();
            let rho = if case % 2 == 0 {
                simulated
            } else {
                perturb(&simulated, &mut rng)
            };

            let searched = composing_orders(&rho, &tol);
            let brute: Vec<LinearOrder> = enumerate_orders(n)
                .filter(|o| composes(&rho, o, &tol))
                .collect();
            assert_eq!(searched, brute, "n={n} case={case}");

            let tag = classify(&rho, &tol).unwrap();
            match tag {
                IdentificationClass::NotHarmful => assert_eq!(brute.len(), 0),
                IdentificationClass::Unique => assert_eq!(brute.len(), 1),
                IdentificationClass::TwoStarPaired { .. } => assert_eq!(brute.len(), 2),
                IdentificationClass::Degenerate { count } => {
                    assert_eq!(count, brute.len());
                    assert!(count >= n);
                }
            }
        }
    }
    println!("criterion 09 (600 datasets: prefix search equals brute-force enumeration; classification tags match justification counts): pass");
}

#[test]
fn criterion_10_degree_routes_agree_on_all_round_trip_instances() {
    let tol = exact();
    for (ground, order, weights) in round_trip_instances() {
        let rho = simulate(&ground, &order, &weights).unwrap();
        let report = degree_of_self_punishment(&rho, &tol).unwrap();
        assert!(report.method_agreement, "order={order:?}");
        if support_set(&rho).len() >= 2 {
            assert_eq!(report.degree, weights.max_positive_index().unwrap());
        } else {
            assert_eq!(report.degree, 0);
        }
    }
    println!("criterion 10 (degree: rank-scan route equals max-index route on every harmful instance; zero on single-item support): pass");
}

#[test]
fn criterion_11_distortion_family_invariants_exhaustive() {
    for n in 1..=5usize {
        let orders: Vec<LinearOrder> = enumerate_orders(n).collect();
        // distinct indices give distinct distortions
        for order in &orders {
            let family = order.all_distortions();
            for i in 0..n {
                for j in i + 1..n {
                    assert_ne!(family[i], family[j], "n={n} order={order:?}");
                }
            }
        }
        // the same index applied to distinct orders gives distinct distortions
        for a in 0..orders.len() {
            for b in a + 1..orders.len() {
                for i in 0..n {
                    assert_ne!(
                        orders[a].harmful_distortion(i).unwrap(),
                        orders[b].harmful_distortion(i).unwrap(),
                        "n={n} i={i}"
                    );
                }
            }
        }
        // every distortion is single peaked with respect to its source
        for order in &orders {
            for distortion in order.all_distortions() {
                assert!(is_single_peaked(&distortion, order).unwrap());
            }
        }
    }
    println!("criterion 11 (index identifiability, same-index injectivity, single-peaked support: exhaustive for n ≤ 5): pass");
}
