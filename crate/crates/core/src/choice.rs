//! Stochastic choice tables: for every nonempty menu of the ground set, a
//! probability distribution over its members, stored as exact rationals.
//!
//! Datasets arrive as JSON (`{"items": [...], "menus": {"f,p": {"f": "0.7",
//! "p": "0.3"}, ...}}`) or CSV (`menu,item,probability` rows). All numbers in
//! files are strings so that finite decimals and `a/b` fractions parse without
//! rounding. Menus are keyed by their labels sorted lexicographically and
//! joined by commas; singleton menus carry no information and may be omitted
//! (validation fills them in).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orders::{GroundSet, OrderError};

/// Exact rational scalar used for every probability in the crate.
pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum ChoiceError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("invalid rational `{0}`")]
    InvalidNumber(String),
    #[error("negative probability for item `{item}` in menu `{menu}`")]
    NegativeProbability { menu: String, item: String },
    #[error("menu `{menu}`: probabilities sum to {sum} (off by {deficit})")]
    RowSumViolation {
        menu: String,
        sum: String,
        deficit: String,
    },
    #[error("missing menu `{0}`")]
    MissingMenu(String),
    #[error("item `{item}` is foreign to menu `{menu}`")]
    ForeignItem { menu: String, item: String },
    #[error("menu `{menu}` has no entry for item `{item}`")]
    MissingEntry { menu: String, item: String },
    #[error("menu `{0}` appears more than once after canonicalization")]
    DuplicateMenu(String),
    #[error("menu key lists item `{item}` twice")]
    DuplicateItem { item: String },
    #[error("empty menu")]
    EmptyMenu,
    #[error("item index {item} out of bounds for {n} items")]
    ItemOutOfBounds { item: usize, n: usize },
    #[error("ground set of {n} items is too large for a full-table dataset (limit 32)")]
    GroundSetTooLarge { n: usize },
    #[error("tolerance must be nonnegative")]
    NegativeTolerance,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv row {row}: expected menu,item,probability")]
    CsvShape { row: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parses `a/b` fractions, finite decimals, and decimals with a power-of-ten
/// exponent (`1e-9`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ChoiceError> {
    let bad = || ChoiceError::InvalidNumber(s.to_owned());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    numer *= sign;
    let mut denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    if exponent >= 0 {
        numer *= BigInt::from(10u32).pow(exponent as u32);
    } else {
        denom *= BigInt::from(10u32).pow(exponent.unsigned_abs());
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form of a rational: `a` when integral, `a/b` otherwise,
/// always in lowest terms.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Comparison mode for every equality test in validation and detection.
/// Exact (`ε = 0`) by default; a positive ε relaxes `lhs = rhs` to
/// `|lhs − rhs| ≤ ε` for noisy field data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolerance {
    epsilon: Rational,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::exact()
    }
}

impl Tolerance {
    pub fn exact() -> Self {
        Self {
            epsilon: Rational::zero(),
        }
    }

    pub fn new(epsilon: Rational) -> Result<Self, ChoiceError> {
        if epsilon.is_negative() {
            return Err(ChoiceError::NegativeTolerance);
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn is_exact(&self) -> bool {
        self.epsilon.is_zero()
    }

    pub fn eq(&self, lhs: &Rational, rhs: &Rational) -> bool {
        (lhs - rhs).abs() <= self.epsilon
    }

    /// `value = 0` up to the tolerance.
    pub fn is_zero(&self, value: &Rational) -> bool {
        value.abs() <= self.epsilon
    }

    /// `lhs ≥ rhs` with ε slack.
    pub fn ge(&self, lhs: &Rational, rhs: &Rational) -> bool {
        *lhs >= rhs - &self.epsilon
    }
}

/// A nonempty subset of the ground set, stored as sorted item indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Menu {
    items: Vec<usize>,
}

impl Menu {
    pub fn new(mut items: Vec<usize>, n: usize) -> Result<Self, ChoiceError> {
        if items.is_empty() {
            return Err(ChoiceError::EmptyMenu);
        }
        items.sort_unstable();
        for window in items.windows(2) {
            if window[0] == window[1] {
                return Err(ChoiceError::DuplicateItem {
                    item: window[0].to_string(),
                });
            }
        }
        if let Some(&last) = items.last() {
            if last >= n {
                return Err(ChoiceError::ItemOutOfBounds { item: last, n });
            }
        }
        Ok(Self { items })
    }

    /// The grand menu containing every item.
    pub fn grand(n: usize) -> Self {
        Self {
            items: (0..n).collect(),
        }
    }

    /// Every nonempty menu over `n` items.
    pub fn all_menus(n: usize) -> Vec<Menu> {
        assert!(n <= 32, "menu enumeration limited to 32 items");
        let mut menus = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u64..(1 << n) {
            menus.push(Menu::from_mask(mask));
        }
        menus
    }

    pub(crate) fn from_mask(mask: u64) -> Menu {
        Menu {
            items: (0..64).filter(|&b| mask >> b & 1 == 1).collect(),
        }
    }

    pub(crate) fn mask(&self) -> u64 {
        self.items.iter().fold(0u64, |m, &item| m | 1 << item)
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn is_singleton(&self) -> bool {
        self.items.len() == 1
    }

    pub fn contains(&self, item: usize) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    /// Position of `item` within the sorted member list.
    pub fn position(&self, item: usize) -> Option<usize> {
        self.items.binary_search(&item).ok()
    }

    /// Canonical key: member labels sorted lexicographically, comma-joined.
    pub fn key(&self, ground: &GroundSet) -> String {
        let mut labels: Vec<&str> = self.items.iter().map(|&i| ground.label(i)).collect();
        labels.sort_unstable();
        labels.join(",")
    }

    pub fn parse_key(key: &str, ground: &GroundSet) -> Result<Menu, ChoiceError> {
        let mut seen = BTreeSet::new();
        let mut items = Vec::new();
        for token in key.split(',') {
            let label = token.trim();
            if label.is_empty() {
                return Err(ChoiceError::EmptyMenu);
            }
            if !seen.insert(label.to_owned()) {
                return Err(ChoiceError::DuplicateItem {
                    item: label.to_owned(),
                });
            }
            let item = ground
                .index_of(label)
                .ok_or_else(|| ChoiceError::ForeignItem {
                    menu: key.to_owned(),
                    item: label.to_owned(),
                })?;
            items.push(item);
        }
        Menu::new(items, ground.len())
    }
}

/// The on-disk shape of a dataset; probabilities stay strings until
/// validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDataset {
    pub items: Vec<String>,
    pub menus: BTreeMap<String, BTreeMap<String, String>>,
}

impl RawDataset {
    pub fn from_json(text: &str) -> Result<Self, ChoiceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serializes")
    }

    /// `menu,item,probability` rows; the ground set is the sorted union of
    /// item labels (every item occurs in the grand-menu rows).
    pub fn from_csv(text: &str) -> Result<Self, ChoiceError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut menus: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut labels: BTreeSet<String> = BTreeSet::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record?;
            if record.len() != 3 {
                return Err(ChoiceError::CsvShape { row: idx + 2 });
            }
            let (menu, item, prob) = (&record[0], &record[1], &record[2]);
            labels.insert(item.to_owned());
            menus
                .entry(menu.to_owned())
                .or_default()
                .insert(item.to_owned(), prob.to_owned());
        }
        Ok(RawDataset {
            items: labels.into_iter().collect(),
            menus,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["menu", "item", "probability"])
            .expect("csv header");
        for (menu, row) in &self.menus {
            for (item, prob) in row {
                writer
                    .write_record([menu.as_str(), item.as_str(), prob.as_str()])
                    .expect("csv row");
            }
        }
        String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv utf8")
    }
}

/// A validated stochastic choice function: every nonempty menu is present and
/// its row is a probability distribution over exactly its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticChoice {
    ground: GroundSet,
    table: BTreeMap<Menu, Vec<Rational>>,
}

impl StochasticChoice {
    /// Validates a raw dataset: all menus of size ≥ 2 must be present with
    /// rows summing to 1 (within `tol`); singleton menus are completed
    /// automatically.
    pub fn validate(raw: &RawDataset, tol: &Tolerance) -> Result<Self, ChoiceError> {
        let ground = GroundSet::new(raw.items.iter().cloned())?;
        let n = ground.len();
        if n > 32 {
            return Err(ChoiceError::GroundSetTooLarge { n });
        }
        let one = Rational::one();
        let mut table: BTreeMap<Menu, Vec<Rational>> = BTreeMap::new();
        for (key, row) in &raw.menus {
            let menu = Menu::parse_key(key, &ground)?;
            let canonical = menu.key(&ground);
            if table.contains_key(&menu) {
                return Err(ChoiceError::DuplicateMenu(canonical));
            }
            let mut probs: Vec<Option<Rational>> = vec![None; menu.len()];
            for (label, value) in row {
                let item = ground
                    .index_of(label)
                    .ok_or_else(|| ChoiceError::ForeignItem {
                        menu: canonical.clone(),
                        item: label.clone(),
                    })?;
                let pos = menu
                    .position(item)
                    .ok_or_else(|| ChoiceError::ForeignItem {
                        menu: canonical.clone(),
                        item: label.clone(),
                    })?;
                let v = parse_rational(value)?;
                if v.is_negative() {
                    return Err(ChoiceError::NegativeProbability {
                        menu: canonical.clone(),
                        item: label.clone(),
                    });
                }
                probs[pos] = Some(v);
            }
            let mut values = Vec::with_capacity(menu.len());
            for (pos, prob) in probs.into_iter().enumerate() {
                match prob {
                    Some(v) => values.push(v),
                    None => {
                        return Err(ChoiceError::MissingEntry {
                            menu: canonical.clone(),
                            item: ground.label(menu.items()[pos]).to_owned(),
                        })
                    }
                }
            }
            let sum = values
                .iter()
                .fold(Rational::zero(), |acc, v| acc + v);
            if !tol.eq(&sum, &one) {
                return Err(ChoiceError::RowSumViolation {
                    menu: canonical,
                    sum: render_rational(&sum),
                    deficit: render_rational(&(&one - &sum)),
                });
            }
            table.insert(menu, values);
        }
        for menu in Menu::all_menus(n) {
            if table.contains_key(&menu) {
                continue;
            }
            if menu.is_singleton() {
                table.insert(menu, vec![one.clone()]);
            } else {
                return Err(ChoiceError::MissingMenu(menu.key(&ground)));
            }
        }
        Ok(Self { ground, table })
    }

    /// Builds a table directly from exact rows (used by the simulators);
    /// enforces the same invariants with zero tolerance.
    pub fn from_table(
        ground: GroundSet,
        table: BTreeMap<Menu, Vec<Rational>>,
    ) -> Result<Self, ChoiceError> {
        let n = ground.len();
        let one = Rational::one();
        for menu in Menu::all_menus(n) {
            let row = table
                .get(&menu)
                .ok_or_else(|| ChoiceError::MissingMenu(menu.key(&ground)))?;
            if row.len() != menu.len() {
                return Err(ChoiceError::MissingEntry {
                    menu: menu.key(&ground),
                    item: String::new(),
                });
            }
            let mut sum = Rational::zero();
            for (pos, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(ChoiceError::NegativeProbability {
                        menu: menu.key(&ground),
                        item: ground.label(menu.items()[pos]).to_owned(),
                    });
                }
                sum += v;
            }
            if sum != one {
                return Err(ChoiceError::RowSumViolation {
                    menu: menu.key(&ground),
                    sum: render_rational(&sum),
                    deficit: render_rational(&(&one - &sum)),
                });
            }
        }
        Ok(Self { ground, table })
    }

    /// Constructor for simulated tables, whose rows sum to the weight total
    /// structurally (each order contributes its weight to exactly one member
    /// per menu). Skips the arithmetic re-check so that weight vectors
    /// admitted under a nonzero tolerance still simulate.
    pub(crate) fn from_rows_unchecked(
        ground: GroundSet,
        table: BTreeMap<Menu, Vec<Rational>>,
    ) -> Self {
        debug_assert_eq!(table.len(), (1usize << ground.len()) - 1);
        debug_assert!(table.iter().all(|(menu, row)| row.len() == menu.len()));
        Self { ground, table }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// The probability of choosing `item` from `menu`; zero for non-members.
    pub fn rho(&self, item: usize, menu: &Menu) -> Rational {
        match menu.position(item) {
            Some(pos) => self.table[menu][pos].clone(),
            None => Rational::zero(),
        }
    }

    /// The grand-menu row indexed by item (the grand menu's sorted members
    /// coincide with item indices).
    pub fn grand_row(&self) -> &[Rational] {
        &self.table[&Menu::grand(self.n())]
    }

    pub fn rho_grand(&self, item: usize) -> &Rational {
        &self.grand_row()[item]
    }

    pub fn menus(&self) -> impl Iterator<Item = (&Menu, &[Rational])> {
        self.table.iter().map(|(m, row)| (m, row.as_slice()))
    }

    pub fn menu_count(&self) -> usize {
        self.table.len()
    }

    /// Canonical raw form: menus of size ≥ 2 with reduced-rational strings;
    /// singletons are left implicit.
    pub fn to_raw(&self) -> RawDataset {
        let mut menus = BTreeMap::new();
        for (menu, row) in &self.table {
            if menu.is_singleton() {
                continue;
            }
            let mut entries = BTreeMap::new();
            for (pos, v) in row.iter().enumerate() {
                entries.insert(
                    self.ground.label(menu.items()[pos]).to_owned(),
                    render_rational(v),
                );
            }
            menus.insert(menu.key(&self.ground), entries);
        }
        RawDataset {
            items: self.ground.labels().to_vec(),
            menus,
        }
    }
}

/// The set of items chosen from the grand menu with strictly positive
/// probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    items: Vec<usize>,
}

impl SupportSet {
    pub fn items(&self) -> &[usize] {
        &self.items
    }

    #[allow(clippy::len_without_is_empty)] // nonempty: the grand row sums to 1
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.items.binary_search(&item).is_ok()
    }
}

pub fn support_set(rho: &StochasticChoice) -> SupportSet {
    let items = rho
        .grand_row()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_positive())
        .map(|(item, _)| item)
        .collect();
    SupportSet { items }
}

/// Monotonicity under menu inclusion: `ρ(x,A) ≥ ρ(x,B)` for every `x ∈ A ⊆ B`
/// (with ε slack in tolerance mode). Necessary for any random utility model.
pub fn is_regular(rho: &StochasticChoice, tol: &Tolerance) -> bool {
    let mut by_mask: BTreeMap<u64, &Vec<Rational>> = BTreeMap::new();
    for (menu, _) in rho.menus() {
        by_mask.insert(menu.mask(), &rho.table[menu]);
    }
    for (menu, row) in rho.menus() {
        let bmask = menu.mask();
        // proper nonempty submenus of `menu`
        let mut sub = (bmask - 1) & bmask;
        while sub != 0 {
            let sub_menu = Menu::from_mask(sub);
            let sub_row = by_mask[&sub];
            for (pos, item) in sub_menu.items().iter().enumerate() {
                let in_b = menu.position(*item).expect("subset member");
                if !tol.ge(&sub_row[pos], &row[in_b]) {
                    return false;
                }
            }
            sub = (sub - 1) & bmask;
        }
    }
    true
}
