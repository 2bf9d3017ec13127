//! Probes situating a dataset in the wider random-utility landscape: exact
//! rationalizability by *some* lottery over linear orders, the correlation
//! bound index, and single-peakedness of a justification's support.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::choice::{Menu, Rational, StochasticChoice, Tolerance};
use crate::feasibility::feasible_point;
use crate::forward::GeneralLottery;
use crate::identify::Justification;
use crate::orders::{enumerate_orders, is_single_peaked, LinearOrder};

/// Default ceiling on the ground-set size for probes that scan all `n!`
/// orders (120 lottery variables at `n = 5`).
pub const DEFAULT_SIZE_GUARD: usize = 5;

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("ground set of size {n} exceeds the size guard {max_n}")]
    SizeGuardExceeded { n: usize, max_n: usize },
    #[error("correlation bounds need at least 3 items, got {n}")]
    GroundSetTooSmall { n: usize },
}

/// Outcome of the exact rationalizability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RumFeasibility {
    pub feasible: bool,
    /// A rationalizing lottery when one exists.
    pub witness: Option<GeneralLottery>,
}

/// Decides, by exact linear feasibility over nonnegative weights on all `n!`
/// orders, whether some lottery over linear orders reproduces every entry of
/// the table. One equation per (menu of size ≥ 2, member) plus the simplex
/// normalization.
pub fn is_rum(rho: &StochasticChoice, max_n: usize) -> Result<RumFeasibility, ProbeError> {
    let n = rho.n();
    if n > max_n {
        return Err(ProbeError::SizeGuardExceeded { n, max_n });
    }
    let orders: Vec<LinearOrder> = enumerate_orders(n).collect();
    let mut matrix: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (menu, row) in rho.menus() {
        if menu.is_singleton() {
            continue;
        }
        for (pos, &item) in menu.items().iter().enumerate() {
            let coeffs = orders
                .iter()
                .map(|order| {
                    let tops = menu
                        .items()
                        .iter()
                        .all(|&y| y == item || order.prefers(item, y));
                    if tops {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            matrix.push(coeffs);
            rhs.push(row[pos].clone());
        }
    }
    matrix.push(vec![Rational::one(); orders.len()]);
    rhs.push(Rational::one());

    match feasible_point(&matrix, &rhs) {
        None => Ok(RumFeasibility {
            feasible: false,
            witness: None,
        }),
        Some(weights) => {
            let lottery = GeneralLottery::new(
                orders.into_iter().zip(weights),
                &Tolerance::exact(),
            )
            .expect("feasible weights form a lottery");
            Ok(RumFeasibility {
                feasible: true,
                witness: Some(lottery),
            })
        }
    }
}

/// The correlation bound of `order`: the summed probability of choosing the
/// order's maximum, over every menu of size ≥ 2 except the pair
/// {order's best, order's worst}, divided by (number of such menus − 1).
/// Values ≤ 1 for every order characterize choice driven by lotteries over
/// rationality-violating deterministic rules.
pub fn correlation_bound(
    rho: &StochasticChoice,
    order: &LinearOrder,
) -> Result<Rational, ProbeError> {
    let n = rho.n();
    if n < 3 {
        return Err(ProbeError::GroundSetTooSmall { n });
    }
    let excluded = Menu::new(vec![order.best(), order.worst()], n).expect("pair menu");
    let mut total = Rational::zero();
    let mut counted: usize = 0;
    for (menu, row) in rho.menus() {
        if menu.is_singleton() || *menu == excluded {
            continue;
        }
        let best_pos = menu
            .items()
            .iter()
            .enumerate()
            .min_by_key(|(_, &item)| order.rank_of(item))
            .map(|(pos, _)| pos)
            .expect("menus are nonempty");
        total += &row[best_pos];
        counted += 1;
    }
    Ok(total / Rational::from_integer((counted as i64 - 1).into()))
}

/// The largest correlation bound across all orders, with an order attaining
/// it. Scans `n!` orders, hence guarded.
pub fn max_correlation_bound(
    rho: &StochasticChoice,
    max_n: usize,
) -> Result<(LinearOrder, Rational), ProbeError> {
    let n = rho.n();
    if n > max_n {
        return Err(ProbeError::SizeGuardExceeded { n, max_n });
    }
    if n < 3 {
        return Err(ProbeError::GroundSetTooSmall { n });
    }
    let mut best: Option<(LinearOrder, Rational)> = None;
    for order in enumerate_orders(n) {
        let value = correlation_bound(rho, &order)?;
        match &best {
            Some((_, current)) if *current >= value => {}
            _ => best = Some((order, value)),
        }
    }
    Ok(best.expect("at least one order"))
}

/// Whether every distortion carrying positive weight in the justification is
/// single peaked with respect to the underlying preference. Holds for every
/// justification; kept as a regression tripwire.
pub fn single_peaked_support(justification: &Justification) -> bool {
    let order = &justification.order;
    justification
        .weights
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_positive())
        .all(|(i, _)| {
            let distortion = order.harmful_distortion(i).expect("index in range");
            is_single_peaked(&distortion, order).expect("same ground set")
        })
}
