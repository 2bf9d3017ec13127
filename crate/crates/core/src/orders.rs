//! Linear orders over a finite labeled ground set, and the order surgery the
//! rest of the crate is built on: harmful distortions (the top block moved to
//! the bottom in reverse), suffix reversals, distortion preimages, and
//! single-peakedness with respect to a reference line.
//!
//! Items are addressed by index into the ground set's label list; a
//! [`LinearOrder`] is a permutation of those indices, best first. Ranks are
//! 1-based (rank 1 = best), distortion indices are 0-based (index 0 = the
//! undistorted order).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("ground set must contain at least one item")]
    EmptyGroundSet,
    #[error("item labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate item label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown item label `{0}`")]
    UnknownLabel(String),
    #[error("ranking is not a permutation of the ground set")]
    NotAPermutation,
    #[error("distortion index {index} out of bounds for {n} items")]
    DistortionIndexOutOfBounds { index: usize, n: usize },
    #[error("rank {rank} out of bounds for {n} items")]
    RankOutOfBounds { rank: usize, n: usize },
    #[error("orders range over ground sets of different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
}

/// A finite, nonempty set of alternatives with distinct string labels.
///
/// The position of a label in the list is the item's index everywhere else in
/// the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(OrderError::EmptyGroundSet);
        }
        for (k, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(OrderError::EmptyLabel);
            }
            if labels[..k].contains(label) {
                return Err(OrderError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    #[allow(clippy::len_without_is_empty)] // never empty by construction
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, item: usize) -> &str {
        &self.labels[item]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A strict total ranking of the ground set, stored best-to-worst as a
/// permutation of item indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrder {
    ranking: Vec<usize>,
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOrder{:?}", self.ranking)
    }
}

impl LinearOrder {
    /// Builds an order from a best-first permutation of `0..n`.
    pub fn new(ranking: Vec<usize>) -> Result<Self, OrderError> {
        let n = ranking.len();
        if n == 0 {
            return Err(OrderError::EmptyGroundSet);
        }
        let mut seen = vec![false; n];
        for &item in &ranking {
            if item >= n || seen[item] {
                return Err(OrderError::NotAPermutation);
            }
            seen[item] = true;
        }
        Ok(Self { ranking })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ranking: (0..n).collect(),
        }
    }

    /// Builds an order from labels listed best first; every ground-set label
    /// must appear exactly once.
    pub fn from_labels<S: AsRef<str>>(ground: &GroundSet, labels: &[S]) -> Result<Self, OrderError> {
        if labels.len() != ground.len() {
            return Err(OrderError::NotAPermutation);
        }
        let ranking = labels
            .iter()
            .map(|l| {
                ground
                    .index_of(l.as_ref())
                    .ok_or_else(|| OrderError::UnknownLabel(l.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ranking)
    }

    pub fn n(&self) -> usize {
        self.ranking.len()
    }

    /// The item holding 1-based `rank` (rank 1 = best).
    pub fn item_at_rank(&self, rank: usize) -> usize {
        assert!(rank >= 1 && rank <= self.n(), "rank {rank} out of range");
        self.ranking[rank - 1]
    }

    /// The 1-based rank of `item`.
    pub fn rank_of(&self, item: usize) -> usize {
        self.ranking
            .iter()
            .position(|&x| x == item)
            .expect("item outside ground set")
            + 1
    }

    /// The most preferred item.
    pub fn best(&self) -> usize {
        self.ranking[0]
    }

    /// The least preferred item.
    pub fn worst(&self) -> usize {
        self.ranking[self.n() - 1]
    }

    /// Whether `a` is strictly preferred to `b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank_of(a) < self.rank_of(b)
    }

    pub fn as_ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Comma-joined labels, best first (the wire form, e.g. `p,f,s`).
    pub fn label_string(&self, ground: &GroundSet) -> String {
        self.ranking
            .iter()
            .map(|&item| ground.label(item))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The harmful distortion of index `i`: the top `i` items are moved to the
    /// bottom in reverse order, the remaining `n - i` items keep their
    /// relative ranking. Index 0 returns the order unchanged.
    pub fn harmful_distortion(&self, i: usize) -> Result<Self, OrderError> {
        let n = self.n();
        if i >= n {
            return Err(OrderError::DistortionIndexOutOfBounds { index: i, n });
        }
        let mut ranking = Vec::with_capacity(n);
        ranking.extend_from_slice(&self.ranking[i..]);
        ranking.extend(self.ranking[..i].iter().rev());
        Ok(Self { ranking })
    }

    /// All `n` harmful distortions, indexed by distortion index.
    pub fn all_distortions(&self) -> Vec<Self> {
        (0..self.n())
            .map(|i| self.harmful_distortion(i).expect("index in range"))
            .collect()
    }

    /// Keeps ranks `1..j` fixed and reverses the ranking of the remaining
    /// `n - j + 1` items. `j = 1` reverses the whole order, `j = n` is the
    /// identity.
    pub fn star_order(&self, j: usize) -> Result<Self, OrderError> {
        let n = self.n();
        if j < 1 || j > n {
            return Err(OrderError::RankOutOfBounds { rank: j, n });
        }
        let mut ranking = self.ranking.clone();
        ranking[j - 1..].reverse();
        Ok(Self { ranking })
    }
}

/// The unique order whose `j`-th harmful distortion equals `target`.
///
/// Ranks `1..=j` of the result take the last `j` items of `target` in reverse,
/// ranks `j+1..=n` take the first `n - j` items of `target` in order; applying
/// the distortion of index `j` then reproduces `target` exactly.
pub fn distortion_preimage(target: &LinearOrder, j: usize) -> Result<LinearOrder, OrderError> {
    let n = target.n();
    if j >= n {
        return Err(OrderError::DistortionIndexOutOfBounds { index: j, n });
    }
    let mut ranking = Vec::with_capacity(n);
    ranking.extend(target.ranking[n - j..].iter().rev());
    ranking.extend_from_slice(&target.ranking[..n - j]);
    Ok(LinearOrder { ranking })
}

/// Whether `candidate` is single peaked with respect to the line given by
/// `reference`: wherever `x` lies strictly between `y` and the candidate's
/// peak on the reference line, the candidate must prefer `x` to `y`.
pub fn is_single_peaked(
    candidate: &LinearOrder,
    reference: &LinearOrder,
) -> Result<bool, OrderError> {
    let n = candidate.n();
    if n != reference.n() {
        return Err(OrderError::SizeMismatch {
            left: n,
            right: reference.n(),
        });
    }
    let peak_rank = reference.rank_of(candidate.best());
    for x in 0..n {
        let rx = reference.rank_of(x);
        for y in 0..n {
            if x == y {
                continue;
            }
            let ry = reference.rank_of(y);
            let between = (ry < rx && rx < peak_rank) || (peak_rank < rx && rx < ry);
            if between && !candidate.prefers(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Iterator over all `n!` linear orders in lexicographic ranking order,
/// starting from the identity permutation.
pub fn enumerate_orders(n: usize) -> Orders {
    Orders {
        next: if n == 0 { None } else { Some((0..n).collect()) },
    }
}

pub struct Orders {
    next: Option<Vec<usize>>,
}

impl Iterator for Orders {
    type Item = LinearOrder;

    fn next(&mut self) -> Option<LinearOrder> {
        let current = self.next.take()?;
        self.next = next_permutation(&current);
        Some(LinearOrder { ranking: current })
    }
}

fn next_permutation(v: &[usize]) -> Option<Vec<usize>> {
    let mut v = v.to_vec();
    let n = v.len();
    if n < 2 {
        return None;
    }
    let pivot = (0..n - 1).rev().find(|&k| v[k] < v[k + 1])?;
    let swap = (pivot + 1..n).rev().find(|&k| v[k] > v[pivot]).unwrap();
    v.swap(pivot, swap);
    v[pivot + 1..].reverse();
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn order(ranking: &[usize]) -> LinearOrder {
        LinearOrder::new(ranking.to_vec()).unwrap()
    }

    fn pfs() -> (GroundSet, LinearOrder) {
        let ground = GroundSet::new(["p", "f", "s"]).unwrap();
        let ord = LinearOrder::from_labels(&ground, &["p", "f", "s"]).unwrap();
        (ground, ord)
    }

    #[test]
    fn ground_set_rejects_duplicates_and_empty() {
        assert_eq!(
            GroundSet::new(["a", "a"]).unwrap_err(),
            OrderError::DuplicateLabel("a".into())
        );
        assert_eq!(
            GroundSet::new(Vec::<String>::new()).unwrap_err(),
            OrderError::EmptyGroundSet
        );
        assert_eq!(GroundSet::new(["a", ""]).unwrap_err(), OrderError::EmptyLabel);
    }

    #[test]
    fn distortion_moves_top_block_to_bottom_reversed() {
        let (ground, ord) = pfs();
        let d1 = ord.harmful_distortion(1).unwrap();
        assert_eq!(d1.label_string(&ground), "f,s,p");
        let d2 = ord.harmful_distortion(2).unwrap();
        assert_eq!(d2.label_string(&ground), "s,f,p");
    }

    #[test]
    fn distortion_zero_is_identity() {
        let ord = order(&[2, 0, 3, 1]);
        assert_eq!(ord.harmful_distortion(0).unwrap(), ord);
    }

    #[test]
    fn maximal_distortion_is_full_reversal() {
        let ord = order(&[0, 1, 2, 3]);
        assert_eq!(ord.harmful_distortion(3).unwrap(), order(&[3, 2, 1, 0]));
    }

    #[test]
    fn distortion_index_bounds_checked() {
        let ord = order(&[0, 1, 2]);
        assert_eq!(
            ord.harmful_distortion(3).unwrap_err(),
            OrderError::DistortionIndexOutOfBounds { index: 3, n: 3 }
        );
    }

    #[test]
    fn star_order_keeps_prefix_and_reverses_suffix() {
        let ord = order(&[0, 1, 2, 3]); // w,x,y,z
        assert_eq!(ord.star_order(2).unwrap(), order(&[0, 3, 2, 1])); // w,z,y,x
        assert_eq!(ord.star_order(1).unwrap(), order(&[3, 2, 1, 0]));
        let pfs = order(&[0, 1, 2]);
        assert_eq!(pfs.star_order(3).unwrap(), pfs);
        assert_eq!(
            pfs.star_order(0).unwrap_err(),
            OrderError::RankOutOfBounds { rank: 0, n: 3 }
        );
        assert_eq!(
            pfs.star_order(4).unwrap_err(),
            OrderError::RankOutOfBounds { rank: 4, n: 3 }
        );
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        assert_eq!(enumerate_orders(1).count(), 1);
        assert_eq!(enumerate_orders(3).count(), 6);
        let all: Vec<_> = enumerate_orders(4).collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], LinearOrder::identity(4));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }

    #[test]
    fn single_peaked_examples() {
        let reference = order(&[0, 1, 2]);
        assert!(is_single_peaked(&reference, &reference).unwrap());
        // distortion of index 1 w.r.t. p,f,s
        let (_, pfs) = pfs();
        let d1 = pfs.harmful_distortion(1).unwrap();
        assert!(is_single_peaked(&d1, &pfs).unwrap());
        // x,z,y against the line x,y,z: peak x, x>y>z demands y over z
        assert!(!is_single_peaked(&order(&[0, 2, 1]), &order(&[0, 1, 2])).unwrap());
        assert_eq!(
            is_single_peaked(&order(&[0, 1]), &order(&[0, 1, 2])).unwrap_err(),
            OrderError::SizeMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn preimage_round_trips_small_cases() {
        let target = order(&[1, 0, 2]);
        for j in 0..3 {
            let pre = distortion_preimage(&target, j).unwrap();
            assert_eq!(pre.harmful_distortion(j).unwrap(), target);
        }
        assert_eq!(distortion_preimage(&target, 0).unwrap(), target);
    }

    fn random_order() -> impl Strategy<Value = LinearOrder> {
        (1usize..8)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|ranking| LinearOrder::new(ranking).unwrap())
    }

    proptest! {
        #[test]
        fn distortion_matches_positional_rule(ord in random_order(), i_raw in any::<usize>()) {
            let n = ord.n();
            let i = i_raw % n;
            let d = ord.harmful_distortion(i).unwrap();
            for j in 1..=n {
                let expected = if j <= n - i {
                    ord.item_at_rank(i + j)
                } else {
                    ord.item_at_rank(n - j + 1)
                };
                prop_assert_eq!(d.item_at_rank(j), expected);
            }
        }

        #[test]
        fn star_order_is_involutive(ord in random_order()) {
            for j in 1..=ord.n() {
                let star = ord.star_order(j).unwrap();
                prop_assert_eq!(star.star_order(j).unwrap(), ord.clone());
            }
        }

        #[test]
        fn preimage_inverts_distortion(target in random_order(), j_raw in any::<usize>()) {
            let j = j_raw % target.n();
            let pre = distortion_preimage(&target, j).unwrap();
            prop_assert_eq!(pre.harmful_distortion(j).unwrap(), target);
        }

        #[test]
        fn distinct_indices_give_distinct_distortions(ord in random_order()) {
            let all = ord.all_distortions();
            for i in 0..all.len() {
                for j in i + 1..all.len() {
                    prop_assert_ne!(&all[i], &all[j]);
                }
            }
        }
    }
}
