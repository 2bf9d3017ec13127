//! The degree of self-punishment: the minimum, over every justification of
//! the data, of the largest distortion index carrying positive weight. It is
//! a lower bound on how many top alternatives the decision maker denied
//! herself for sure.
//!
//! Two routes compute it. The rank-scan route looks for the smallest rank
//! `j` such that some composing order puts all of the grand-menu mass on its
//! first `j` ranks with rank `j` itself positive; the degree is then `j - 1`
//! (and 0 whenever a single item absorbs the whole grand row). The
//! justification route takes the max positive index of each recovered weight
//! vector and minimizes. The report records whether the routes agree, and,
//! when at least two items are supported, whether every justification yields
//! the same max index, which is what makes the measure well defined.

use thiserror::Error;

use crate::choice::{StochasticChoice, Tolerance};
use crate::detect::composing_orders;
use crate::identify::all_justifications;
use crate::orders::LinearOrder;

#[derive(Debug, Error)]
pub enum DegreeError {
    #[error("dataset is not explained by self-punishment")]
    NotHarmful,
    #[error("no rank admits an ordered composition although the data is harmful")]
    RankScanFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Degree of self-punishment, in `0..n`.
    pub degree: usize,
    /// A composing order realizing the degree.
    pub witness_order: LinearOrder,
    /// Whether the rank-scan route and the justification route agree (and,
    /// with two or more supported items, whether every justification shares
    /// one max positive index).
    pub method_agreement: bool,
}

/// A composing order whose rank-`j` item is chosen from the grand menu with
/// nonzero probability while every worse rank is chosen with probability
/// zero, if such an order exists. `j` is 1-based.
pub fn has_jth_ordered_composition(
    rho: &StochasticChoice,
    j: usize,
    tol: &Tolerance,
) -> Option<LinearOrder> {
    let n = rho.n();
    assert!(j >= 1 && j <= n, "rank {j} out of range");
    composing_orders(rho, tol).into_iter().find(|order| {
        let at_j = rho.rho_grand(order.item_at_rank(j));
        if tol.is_zero(at_j) {
            return false;
        }
        (j + 1..=n).all(|l| tol.is_zero(rho.rho_grand(order.item_at_rank(l))))
    })
}

/// Computes the degree of self-punishment of a harmful dataset.
pub fn degree_of_self_punishment(
    rho: &StochasticChoice,
    tol: &Tolerance,
) -> Result<DegreeReport, DegreeError> {
    let justifications = all_justifications(rho, tol);
    if justifications.is_empty() {
        return Err(DegreeError::NotHarmful);
    }
    let n = rho.n();
    let supported = rho
        .grand_row()
        .iter()
        .filter(|v| !tol.is_zero(v))
        .count();

    // justification route: min over justifications of the max positive index
    let max_indices: Vec<usize> = justifications
        .iter()
        .map(|j| {
            j.weights
                .weights()
                .iter()
                .rposition(|w| !tol.is_zero(w))
                .unwrap_or(0)
        })
        .collect();
    let from_justifications = *max_indices.iter().min().expect("nonempty");

    // rank-scan route
    let (degree, witness_order) = if supported == 1 {
        // the whole grand row sits on one item; the order topping that item
        // composes and needs no distortion at all
        let witness = justifications
            .iter()
            .map(|j| &j.order)
            .find(|order| !tol.is_zero(rho.rho_grand(order.best())))
            .cloned()
            .ok_or(DegreeError::RankScanFailed)?;
        (0, witness)
    } else {
        let mut found = None;
        for j in 1..=n {
            if let Some(order) = has_jth_ordered_composition(rho, j, tol) {
                found = Some((j - 1, order));
                break;
            }
        }
        found.ok_or(DegreeError::RankScanFailed)?
    };

    let invariant_across_justifications =
        supported < 2 || max_indices.iter().all(|&m| m == max_indices[0]);
    Ok(DegreeReport {
        degree,
        witness_order,
        method_agreement: degree == from_justifications && invariant_across_justifications,
    })
}
