//! Shared fixtures and generators for the integration suites: the worked
//! golden tables, deterministic RNG plumbing, and random instance builders.
#![allow(dead_code)]

use harmful_rum::{
    GroundSet, HarmfulWeights, LinearOrder, Menu, Rational, RawDataset, StochasticChoice,
    Tolerance,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(s: &str) -> Rational {
    harmful_rum::parse_rational(s).unwrap()
}

pub fn table(items: &[&str], menus: &[(&str, &[(&str, &str)])]) -> StochasticChoice {
    let raw = RawDataset {
        items: items.iter().map(|s| s.to_string()).collect(),
        menus: menus
            .iter()
            .map(|(key, entries)| {
                (
                    key.to_string(),
                    entries
                        .iter()
                        .map(|(i, p)| (i.to_string(), p.to_string()))
                        .collect(),
                )
            })
            .collect(),
    };
    StochasticChoice::validate(&raw, &Tolerance::exact()).unwrap()
}

/// Dictator-game shares: guilt shifts the selfish splits to the bottom.
pub fn dictator_shares() -> StochasticChoice {
    table(
        &["100", "70", "50"],
        &[
            ("100,50,70", &[("100", "0.5"), ("70", "0.3"), ("50", "0.2")]),
            ("100,70", &[("100", "0.5"), ("70", "0.5")]),
            ("100,50", &[("100", "0.5"), ("50", "0.5")]),
            ("50,70", &[("70", "0.8"), ("50", "0.2")]),
        ],
    )
}

/// Dieting over pizza, fettuccine, salad.
pub fn diet() -> StochasticChoice {
    table(
        &["p", "f", "s"],
        &[
            ("f,p,s", &[("p", "0.3"), ("f", "0.1"), ("s", "0.6")]),
            ("f,p", &[("p", "0.3"), ("f", "0.7")]),
            ("p,s", &[("p", "0.3"), ("s", "0.7")]),
            ("f,s", &[("f", "0.4"), ("s", "0.6")]),
        ],
    )
}

/// Task choice under low self-esteem: high/medium/low reward.
pub fn task_rewards() -> StochasticChoice {
    table(
        &["h", "m", "l"],
        &[
            ("h,l,m", &[("h", "0.4"), ("m", "0.2"), ("l", "0.4")]),
            ("h,m", &[("h", "0.4"), ("m", "0.6")]),
            ("h,l", &[("h", "0.4"), ("l", "0.6")]),
            ("l,m", &[("m", "0.6"), ("l", "0.4")]),
        ],
    )
}

/// Four items, two composing orders paired by a suffix reversal.
pub fn paired_reversals() -> StochasticChoice {
    table(
        &["w", "x", "y", "z"],
        &[
            ("w,x,y,z", &[("w", "0"), ("x", "0.5"), ("y", "0"), ("z", "0.5")]),
            ("w,x,y", &[("w", "0"), ("x", "0.5"), ("y", "0.5")]),
            ("w,y,z", &[("w", "0"), ("y", "0.5"), ("z", "0.5")]),
            ("w,x,z", &[("w", "0"), ("x", "0.5"), ("z", "0.5")]),
            ("x,y,z", &[("x", "0.5"), ("y", "0"), ("z", "0.5")]),
            ("w,x", &[("w", "0"), ("x", "1")]),
            ("w,y", &[("w", "0"), ("y", "1")]),
            ("w,z", &[("w", "0"), ("z", "1")]),
            ("x,y", &[("x", "0.5"), ("y", "0.5")]),
            ("x,z", &[("x", "0.5"), ("z", "0.5")]),
            ("y,z", &[("y", "0.5"), ("z", "0.5")]),
        ],
    )
}

/// Rationalizable by a lottery over orders, but by no self-punishment pair.
pub fn unexplained_rum() -> StochasticChoice {
    table(
        &["x", "y", "z"],
        &[
            ("x,y,z", &[("x", "0.2"), ("y", "0.2"), ("z", "0.6")]),
            ("x,y", &[("x", "0.6"), ("y", "0.4")]),
            ("x,z", &[("x", "0.2"), ("z", "0.8")]),
            ("y,z", &[("y", "0.4"), ("z", "0.6")]),
        ],
    )
}

/// Mild self-punishment with a correlation bound above 1.
pub fn concentrated() -> StochasticChoice {
    table(
        &["x", "y", "z"],
        &[
            ("x,y,z", &[("x", "0.95"), ("y", "0.05"), ("z", "0")]),
            ("x,y", &[("x", "0.95"), ("y", "0.05")]),
            ("x,z", &[("x", "0.95"), ("z", "0.05")]),
            ("y,z", &[("y", "1"), ("z", "0")]),
        ],
    )
}

/// Ground set `a, b, c, ...` of size `n`.
pub fn letters(n: usize) -> GroundSet {
    let labels: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    GroundSet::new(labels).unwrap()
}

pub fn random_order(rng: &mut ChaCha8Rng, n: usize) -> LinearOrder {
    let mut items: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        let other = rng.gen_range(0..=k);
        items.swap(k, other);
    }
    LinearOrder::new(items).unwrap()
}

/// A random exact-rational weight vector: small integer numerators over their
/// sum. `strictly_positive` forces every entry above zero.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize, strictly_positive: bool) -> HarmfulWeights {
    loop {
        let numerators: Vec<u64> = (0..n)
            .map(|_| {
                if strictly_positive {
                    rng.gen_range(1..=12)
                } else {
                    rng.gen_range(0..=12)
                }
            })
            .collect();
        let total: u64 = numerators.iter().sum();
        if total == 0 {
            continue;
        }
        let weights = numerators
            .iter()
            .map(|&a| Rational::new(a.into(), total.into()))
            .collect();
        return HarmfulWeights::new(weights, &Tolerance::exact()).unwrap();
    }
}

/// Moves half of one positive entry to another item within one random menu of
/// size ≥ 2, preserving validity (rows still sum to 1) while generically
/// destroying any composition structure.
pub fn perturb(rho: &StochasticChoice, rng: &mut ChaCha8Rng) -> StochasticChoice {
    let mut rows: BTreeMap<Menu, Vec<Rational>> = rho
        .menus()
        .map(|(menu, row)| (menu.clone(), row.to_vec()))
        .collect();
    let candidates: Vec<Menu> = rows
        .keys()
        .filter(|menu| menu.len() >= 2)
        .cloned()
        .collect();
    let menu = candidates[rng.gen_range(0..candidates.len())].clone();
    let row = rows.get_mut(&menu).unwrap();
    let positives: Vec<usize> = (0..row.len())
        .filter(|&pos| num_traits::Signed::is_positive(&row[pos]))
        .collect();
    let donor = positives[rng.gen_range(0..positives.len())];
    let mut recipient = rng.gen_range(0..row.len());
    if recipient == donor {
        recipient = (recipient + 1) % row.len();
    }
    let half = &row[donor] / Rational::from_integer(2.into());
    row[donor] -= &half;
    row[recipient] += &half;
    StochasticChoice::from_table(rho.ground().clone(), rows).unwrap()
}
