//! Identification: recovering the randomization from data, enumerating every
//! justification by self-punishment, and classifying how uniquely the
//! decision maker's preference is pinned down.
//!
//! The classification tag is derived twice: from the structural conditions
//! on the grand-menu support, and from the enumerated justification count.
//! The two derivations must agree; a mismatch is surfaced as an error.

use thiserror::Error;

use crate::choice::{support_set, StochasticChoice, Tolerance};
use crate::detect::composing_orders;
use crate::forward::{choice_prob_direct, induced_lottery, GeneralLottery, HarmfulWeights};
use crate::orders::LinearOrder;

#[derive(Debug, Error)]
pub enum IdentifyError {
    #[error(
        "classification tag `{tag}` disagrees with the enumerated justification count {count}"
    )]
    TagCountMismatch { tag: String, count: usize },
    #[error("paired justification is not the suffix reversal at rank {j}")]
    StarPairingViolated { j: usize },
}

/// A preference together with the distortion weights that reproduce the
/// dataset it annotates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub order: LinearOrder,
    pub weights: HarmfulWeights,
}

impl Justification {
    /// The lottery over plain linear orders this justification induces
    /// (distortion `i` carries weight `w[i]`; zero weights dropped).
    pub fn induced_lottery(&self) -> GeneralLottery {
        induced_lottery(&self.order, &self.weights)
    }
}

/// How uniquely the data pins down the justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentificationClass {
    /// No order composes the data.
    NotHarmful,
    /// Exactly one justification exists.
    Unique,
    /// Exactly two justifications, paired by the suffix reversal at rank `j`
    /// (the non-bottom rank chosen with positive probability).
    TwoStarPaired { j: usize },
    /// A single item absorbs the grand-menu row; identification vanishes and
    /// at least `n` justifications exist.
    Degenerate { count: usize },
}

impl IdentificationClass {
    pub fn name(&self) -> &'static str {
        match self {
            IdentificationClass::NotHarmful => "NotHarmful",
            IdentificationClass::Unique => "Unique",
            IdentificationClass::TwoStarPaired { .. } => "TwoStarPaired",
            IdentificationClass::Degenerate { .. } => "Degenerate",
        }
    }
}

/// Reads the distortion weights off the grand-menu row: the weight of the
/// distortion of index `i` is the probability of choosing the rank-`i+1` item
/// from the grand menu.
pub fn weights_from_data(rho: &StochasticChoice, order: &LinearOrder) -> HarmfulWeights {
    HarmfulWeights::from_validated_row(
        (1..=order.n())
            .map(|rank| rho.rho_grand(order.item_at_rank(rank)).clone())
            .collect(),
    )
}

/// Every justification by self-punishment of `rho`: one per composing order,
/// each verified to reproduce the table entry for entry (within `tol`).
pub fn all_justifications(rho: &StochasticChoice, tol: &Tolerance) -> Vec<Justification> {
    composing_orders(rho, tol)
        .into_iter()
        .filter_map(|order| {
            let weights = weights_from_data(rho, &order);
            let verified = rho.menus().all(|(menu, row)| {
                menu.items().iter().enumerate().all(|(pos, &item)| {
                    let replay = choice_prob_direct(&order, &weights, menu, item)
                        .expect("member of its own menu");
                    tol.eq(&replay, &row[pos])
                })
            });
            debug_assert!(
                verified || !tol.is_exact(),
                "a composing order must reproduce the table exactly"
            );
            verified.then_some(Justification { order, weights })
        })
        .collect()
}

/// Classifies identification uniqueness. The tag follows the structural
/// conditions (size of the grand-menu support, and whether the composing
/// order's bottom item is in it) and is cross-validated against the
/// enumerated justification count.
pub fn classify(rho: &StochasticChoice, tol: &Tolerance) -> Result<IdentificationClass, IdentifyError> {
    let justifications = all_justifications(rho, tol);
    if justifications.is_empty() {
        return Ok(IdentificationClass::NotHarmful);
    }
    let count = justifications.len();
    let n = rho.n();
    let star = support_set(rho);
    let base = &justifications[0].order;
    let tag = if star.len() >= 3 || (star.len() == 2 && !star.contains(base.worst())) {
        IdentificationClass::Unique
    } else if star.len() == 2 {
        // the non-bottom rank with positive grand-menu probability
        let j = (1..n)
            .find(|&rank| star.contains(base.item_at_rank(rank)))
            .expect("a second supported rank exists");
        IdentificationClass::TwoStarPaired { j }
    } else {
        IdentificationClass::Degenerate { count }
    };
    match &tag {
        IdentificationClass::Unique if count != 1 => Err(IdentifyError::TagCountMismatch {
            tag: tag.name().to_owned(),
            count,
        }),
        IdentificationClass::TwoStarPaired { j } => {
            if count != 2 {
                return Err(IdentifyError::TagCountMismatch {
                    tag: tag.name().to_owned(),
                    count,
                });
            }
            let paired = base.star_order(*j).expect("rank in range");
            if justifications[1].order != paired {
                return Err(IdentifyError::StarPairingViolated { j: *j });
            }
            Ok(tag)
        }
        IdentificationClass::Degenerate { count } if *count < n => {
            Err(IdentifyError::TagCountMismatch {
                tag: "Degenerate".to_owned(),
                count: *count,
            })
        }
        _ => Ok(tag),
    }
}
