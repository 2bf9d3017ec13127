//! Forward evaluation: the choice probabilities induced by a preference
//! together with a randomization over its harmful distortions, computed by
//! two independent routes, plus whole-table simulation (including general
//! lotteries over arbitrary linear orders, for oracle use).
//!
//! The two routes are deliberately separate code paths:
//! - [`choice_prob_direct`] sums the weights of every distortion that ranks
//!   the item first in the menu (the definitional route);
//! - [`choice_prob_closed`] evaluates the closed form driven by the item's
//!   rank, the menu members above it, and the menu members below it.
//!
//! Their equality on all inputs is enforced by the test suites.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::choice::{ChoiceError, Menu, Rational, StochasticChoice, Tolerance};
use crate::orders::{GroundSet, LinearOrder};

#[derive(Debug, Error)]
pub enum ForwardError {
    #[error("item {item} is not a member of the menu")]
    ItemNotInMenu { item: usize },
    #[error("weight vector has {got} entries, expected {expected}")]
    WeightCountMismatch { got: usize, expected: usize },
    #[error("weights must be nonnegative")]
    NegativeWeight,
    #[error("weights sum to {sum}, expected 1")]
    WeightSumViolation { sum: String },
    #[error("lottery support is empty")]
    EmptySupport,
    #[error("lottery mixes orders over ground sets of different sizes")]
    MixedSupport,
    #[error(transparent)]
    Choice(#[from] ChoiceError),
}

/// A probability vector over distortion indices `0..n-1`: entry `i` is the
/// probability that the decision maker judges by the distortion of index `i`
/// (index 0 = the undistorted preference).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmfulWeights {
    weights: Vec<Rational>,
}

impl HarmfulWeights {
    pub fn new(weights: Vec<Rational>, tol: &Tolerance) -> Result<Self, ForwardError> {
        if weights.is_empty() {
            return Err(ForwardError::EmptySupport);
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(ForwardError::NegativeWeight);
        }
        let sum = weights.iter().fold(Rational::zero(), |acc, w| acc + w);
        if !tol.eq(&sum, &Rational::one()) {
            return Err(ForwardError::WeightSumViolation {
                sum: crate::choice::render_rational(&sum),
            });
        }
        Ok(Self { weights })
    }

    /// Point mass on the undistorted preference.
    pub fn point_mass(n: usize, index: usize) -> Self {
        assert!(index < n);
        let mut weights = vec![Rational::zero(); n];
        weights[index] = Rational::one();
        Self { weights }
    }

    /// Wraps a row of an already-validated table (nonnegative, sums to 1
    /// within that table's tolerance) without re-checking.
    pub(crate) fn from_validated_row(weights: Vec<Rational>) -> Self {
        debug_assert!(!weights.is_empty());
        debug_assert!(weights.iter().all(|w| !w.is_negative()));
        Self { weights }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    /// Largest index carrying strictly positive weight.
    pub fn max_positive_index(&self) -> Option<usize> {
        self.weights.iter().rposition(|w| w.is_positive())
    }
}

/// A finitely supported probability distribution over linear orders, in
/// canonical form: zero weights dropped, support nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralLottery {
    entries: BTreeMap<LinearOrder, Rational>,
    n: usize,
}

impl GeneralLottery {
    pub fn new<I>(entries: I, tol: &Tolerance) -> Result<Self, ForwardError>
    where
        I: IntoIterator<Item = (LinearOrder, Rational)>,
    {
        let mut map: BTreeMap<LinearOrder, Rational> = BTreeMap::new();
        let mut n = None;
        for (order, weight) in entries {
            if weight.is_negative() {
                return Err(ForwardError::NegativeWeight);
            }
            match n {
                None => n = Some(order.n()),
                Some(n) if n != order.n() => return Err(ForwardError::MixedSupport),
                _ => {}
            }
            if weight.is_zero() {
                continue;
            }
            *map.entry(order).or_insert_with(Rational::zero) += weight;
        }
        let n = n.ok_or(ForwardError::EmptySupport)?;
        if map.is_empty() {
            return Err(ForwardError::EmptySupport);
        }
        let sum = map.values().fold(Rational::zero(), |acc, w| acc + w);
        if !tol.eq(&sum, &Rational::one()) {
            return Err(ForwardError::WeightSumViolation {
                sum: crate::choice::render_rational(&sum),
            });
        }
        Ok(Self { entries: map, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> impl Iterator<Item = (&LinearOrder, &Rational)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LinearOrder> {
        self.entries.keys()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn weight_of(&self, order: &LinearOrder) -> Rational {
        self.entries.get(order).cloned().unwrap_or_else(Rational::zero)
    }
}

/// The lottery over plain linear orders induced by a preference and its
/// distortion weights: distortion `i` receives weight `w[i]`.
pub fn induced_lottery(order: &LinearOrder, weights: &HarmfulWeights) -> GeneralLottery {
    assert_eq!(order.n(), weights.n());
    GeneralLottery::new(
        order
            .all_distortions()
            .into_iter()
            .zip(weights.weights().iter().cloned()),
        &Tolerance::exact(),
    )
    .expect("distortion weights form a lottery")
}

fn is_max_in(order: &LinearOrder, item: usize, menu: &Menu) -> bool {
    menu.items()
        .iter()
        .all(|&y| y == item || order.prefers(item, y))
}

/// Definitional route: the summed weight of every distortion ranking `item`
/// first within `menu`.
pub fn choice_prob_direct(
    order: &LinearOrder,
    weights: &HarmfulWeights,
    menu: &Menu,
    item: usize,
) -> Result<Rational, ForwardError> {
    assert_eq!(order.n(), weights.n());
    if !menu.contains(item) {
        return Err(ForwardError::ItemNotInMenu { item });
    }
    let mut total = Rational::zero();
    for (i, distortion) in order.all_distortions().iter().enumerate() {
        if is_max_in(distortion, item, menu) {
            total += weights.get(i);
        }
    }
    Ok(total)
}

/// Closed-form route. With `j` the item's rank, the value is the weight of
/// indices `0..j`, minus the weight of indices `0..g` whenever some menu
/// member outranks the item (`g` = rank of the worst such member), plus the
/// weight of indices `j..n` whenever no menu member ranks below the item.
pub fn choice_prob_closed(
    order: &LinearOrder,
    weights: &HarmfulWeights,
    menu: &Menu,
    item: usize,
) -> Result<Rational, ForwardError> {
    assert_eq!(order.n(), weights.n());
    if !menu.contains(item) {
        return Err(ForwardError::ItemNotInMenu { item });
    }
    let j = order.rank_of(item);
    let mut worst_above: Option<usize> = None; // g
    let mut any_below = false;
    for &y in menu.items() {
        let r = order.rank_of(y);
        if r < j {
            worst_above = Some(worst_above.map_or(r, |g| g.max(r)));
        } else if r > j {
            any_below = true;
        }
    }
    let sum_range = |range: std::ops::Range<usize>| {
        weights.weights()[range]
            .iter()
            .fold(Rational::zero(), |acc, w| acc + w)
    };
    let mut value = sum_range(0..j);
    if let Some(g) = worst_above {
        value -= sum_range(0..g);
    }
    if !any_below {
        value += sum_range(j..weights.n());
    }
    Ok(value)
}

/// Simulates the full choice table of a justification over every nonempty
/// menu, via the definitional route.
pub fn simulate(
    ground: &GroundSet,
    order: &LinearOrder,
    weights: &HarmfulWeights,
) -> Result<StochasticChoice, ForwardError> {
    let n = ground.len();
    if order.n() != n {
        return Err(ForwardError::WeightCountMismatch {
            got: order.n(),
            expected: n,
        });
    }
    if weights.n() != n {
        return Err(ForwardError::WeightCountMismatch {
            got: weights.n(),
            expected: n,
        });
    }
    let distortions = order.all_distortions();
    let mut table = BTreeMap::new();
    for menu in Menu::all_menus(n) {
        let mut row = vec![Rational::zero(); menu.len()];
        for (i, distortion) in distortions.iter().enumerate() {
            let chosen = best_in(distortion, &menu);
            let pos = menu.position(chosen).expect("chosen item is a member");
            row[pos] += weights.get(i);
        }
        table.insert(menu, row);
    }
    Ok(StochasticChoice::from_rows_unchecked(ground.clone(), table))
}

/// Simulates the choice table of an arbitrary lottery over linear orders:
/// each order picks its maximum in every menu.
pub fn simulate_rum(
    ground: &GroundSet,
    lottery: &GeneralLottery,
) -> Result<StochasticChoice, ForwardError> {
    let n = ground.len();
    if lottery.n() != n {
        return Err(ForwardError::WeightCountMismatch {
            got: lottery.n(),
            expected: n,
        });
    }
    let mut table = BTreeMap::new();
    for menu in Menu::all_menus(n) {
        let mut row = vec![Rational::zero(); menu.len()];
        for (order, weight) in lottery.entries() {
            let chosen = best_in(order, &menu);
            let pos = menu.position(chosen).expect("chosen item is a member");
            row[pos] += weight;
        }
        table.insert(menu, row);
    }
    Ok(StochasticChoice::from_rows_unchecked(ground.clone(), table))
}

fn best_in(order: &LinearOrder, menu: &Menu) -> usize {
    *menu
        .items()
        .iter()
        .min_by_key(|&&item| order.rank_of(item))
        .expect("menus are nonempty")
}
