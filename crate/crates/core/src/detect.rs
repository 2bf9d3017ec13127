//! Detection of self-punishment structure.
//!
//! A linear order *composes* a dataset when the probability of every item in
//! every menu can be reconstructed from the grand-menu row alone: with `j`
//! the item's rank and `P[k]` the grand-row prefix sums along the order,
//!
//! ```text
//! ρ(x_j, A) = P[j]  −  P[g]  (if some member of A outranks x_j; g = rank of
//!                             the worst such member)
//!                   +  T − P[j]  (if no member of A ranks below x_j; T = grand
//!                                 row total, 1 for exact tables)
//! ```
//!
//! A dataset is harmful exactly when some order composes it. The search for
//! composing orders extends rank prefixes depth-first: a candidate item for
//! the next rank survives only if every menu containing it already satisfies
//! the equality above, which depends on nothing beyond the prefix. Every
//! qualifying candidate is branched on, so *all* composing orders are found;
//! each leaf is re-checked against the full equality set.

use num_traits::Zero;

use crate::choice::{Menu, Rational, StochasticChoice, Tolerance};
use crate::orders::{enumerate_orders, LinearOrder};

/// One reconstruction equality, kept for reporting: the observed probability
/// (`lhs`) and the value rebuilt from the grand-menu row (`rhs`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionCheck {
    pub menu: Menu,
    pub item: usize,
    pub rank: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// An order that composes the dataset, together with the full check log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionWitness {
    pub order: LinearOrder,
    pub checks: Vec<CompositionCheck>,
}

/// Grand-row prefix sums along `order`: `P[k] = Σ_{r ≤ k} ρ(x_r, X)`,
/// `P[0] = 0`.
fn prefix_sums(rho: &StochasticChoice, order: &LinearOrder) -> Vec<Rational> {
    let mut sums = Vec::with_capacity(order.n() + 1);
    sums.push(Rational::zero());
    for rank in 1..=order.n() {
        let next = sums.last().unwrap() + rho.rho_grand(order.item_at_rank(rank));
        sums.push(next);
    }
    sums
}

/// The reconstructed probability of the rank-`j` item in `menu`, given the
/// ranks of all menu members. `total` is the full grand-row sum.
fn reconstructed(
    prefix: &[Rational],
    total: &Rational,
    menu_ranks: &[usize],
    j: usize,
) -> Rational {
    let mut worst_above: Option<usize> = None;
    let mut any_below = false;
    for &r in menu_ranks {
        if r < j {
            worst_above = Some(worst_above.map_or(r, |g| g.max(r)));
        } else if r > j {
            any_below = true;
        }
    }
    let mut value = prefix[j].clone();
    if let Some(g) = worst_above {
        value -= &prefix[g];
    }
    if !any_below {
        value += total - &prefix[j];
    }
    value
}

/// Whether `order` composes `rho`: every reconstruction equality holds
/// exactly (or within the tolerance).
pub fn composes(rho: &StochasticChoice, order: &LinearOrder, tol: &Tolerance) -> bool {
    let prefix = prefix_sums(rho, order);
    let total = prefix.last().unwrap().clone();
    for (menu, row) in rho.menus() {
        let ranks: Vec<usize> = menu.items().iter().map(|&x| order.rank_of(x)).collect();
        for (pos, &item) in menu.items().iter().enumerate() {
            let rhs = reconstructed(&prefix, &total, &ranks, order.rank_of(item));
            if !tol.eq(&row[pos], &rhs) {
                return false;
            }
        }
    }
    true
}

/// Like [`composes`], but returns the full check log when the order composes.
pub fn composition_witness(
    rho: &StochasticChoice,
    order: &LinearOrder,
    tol: &Tolerance,
) -> Option<CompositionWitness> {
    let prefix = prefix_sums(rho, order);
    let total = prefix.last().unwrap().clone();
    let mut checks = Vec::new();
    for (menu, row) in rho.menus() {
        let ranks: Vec<usize> = menu.items().iter().map(|&x| order.rank_of(x)).collect();
        for (pos, &item) in menu.items().iter().enumerate() {
            let rank = order.rank_of(item);
            let rhs = reconstructed(&prefix, &total, &ranks, rank);
            if !tol.eq(&row[pos], &rhs) {
                return None;
            }
            checks.push(CompositionCheck {
                menu: menu.clone(),
                item,
                rank,
                lhs: row[pos].clone(),
                rhs,
            });
        }
    }
    Some(CompositionWitness {
        order: order.clone(),
        checks,
    })
}

struct Search<'a> {
    rho: &'a StochasticChoice,
    tol: &'a Tolerance,
    total: Rational,
    stop_after_first: bool,
    prefix: Vec<usize>,
    prefix_sums: Vec<Rational>,
    used: Vec<bool>,
    found: Vec<LinearOrder>,
}

impl<'a> Search<'a> {
    fn new(rho: &'a StochasticChoice, tol: &'a Tolerance, stop_after_first: bool) -> Self {
        let total = rho
            .grand_row()
            .iter()
            .fold(Rational::zero(), |acc, v| acc + v);
        Search {
            rho,
            tol,
            total,
            stop_after_first,
            prefix: Vec::new(),
            prefix_sums: vec![Rational::zero()],
            used: vec![false; rho.n()],
            found: Vec::new(),
        }
    }

    /// Checks every menu containing `candidate` under the equality for the
    /// rank the candidate would take. The right-hand side only involves the
    /// prefix: members above the candidate must already be placed, members
    /// below are exactly the unplaced ones.
    fn candidate_survives(&self, candidate: usize, candidate_sum: &Rational) -> bool {
        for (menu, row) in self.rho.menus() {
            let pos = match menu.position(candidate) {
                Some(pos) => pos,
                None => continue,
            };
            let mut worst_above: Option<usize> = None;
            let mut any_below = false;
            for &y in menu.items() {
                if y == candidate {
                    continue;
                }
                match self.prefix.iter().position(|&p| p == y) {
                    Some(placed) => {
                        let r = placed + 1;
                        worst_above = Some(worst_above.map_or(r, |g| g.max(r)));
                    }
                    None => any_below = true,
                }
            }
            let mut rhs = candidate_sum.clone();
            if let Some(g) = worst_above {
                rhs -= &self.prefix_sums[g];
            }
            if !any_below {
                rhs += &self.total - candidate_sum;
            }
            if !self.tol.eq(&row[pos], &rhs) {
                return false;
            }
        }
        true
    }

    fn run(&mut self) {
        if self.prefix.len() == self.rho.n() {
            let order = LinearOrder::new(self.prefix.clone()).expect("prefix is a permutation");
            // leaf acceptance re-runs the full equality set
            if composes(self.rho, &order, self.tol) {
                self.found.push(order);
            }
            return;
        }
        for candidate in 0..self.rho.n() {
            if self.used[candidate] {
                continue;
            }
            if self.stop_after_first && !self.found.is_empty() {
                return;
            }
            let candidate_sum =
                self.prefix_sums.last().unwrap() + self.rho.rho_grand(candidate);
            if !self.candidate_survives(candidate, &candidate_sum) {
                continue;
            }
            self.prefix.push(candidate);
            self.prefix_sums.push(candidate_sum);
            self.used[candidate] = true;
            self.run();
            self.used[candidate] = false;
            self.prefix_sums.pop();
            self.prefix.pop();
        }
    }
}

/// Every order that composes `rho`, in lexicographic order. Ground sets with
/// fewer than three items are handled by exhaustive enumeration; larger ones
/// by the prefix-extension search.
pub fn composing_orders(rho: &StochasticChoice, tol: &Tolerance) -> Vec<LinearOrder> {
    search(rho, tol, false)
}

/// The lexicographically first composing order, if any.
pub fn first_composing_order(rho: &StochasticChoice, tol: &Tolerance) -> Option<LinearOrder> {
    search(rho, tol, true).into_iter().next()
}

/// Whether the dataset is explained by self-punishment at all.
pub fn is_harmful(rho: &StochasticChoice, tol: &Tolerance) -> bool {
    first_composing_order(rho, tol).is_some()
}

fn search(rho: &StochasticChoice, tol: &Tolerance, stop_after_first: bool) -> Vec<LinearOrder> {
    if rho.n() < 3 {
        let mut found = Vec::new();
        for order in enumerate_orders(rho.n()) {
            if composes(rho, &order, tol) {
                found.push(order);
                if stop_after_first {
                    break;
                }
            }
        }
        return found;
    }
    let mut state = Search::new(rho, tol, stop_after_first);
    state.run();
    state.found
}
