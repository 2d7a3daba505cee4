//! Diagrams, fillings and periodic standard Young tableaux.
//!
//! Cells are 1-based `(row, col)` in English notation and the content of a
//! cell is `col - row`, so contents grow to the right and shrink downwards.
//! Everything indexed by "cell number" uses row-major reading order.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error("rank {n} is below the minimum {min} for this base shape")]
    InvalidRank { n: usize, min: usize },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("malformed filling: {0}")]
    MalformedFilling(String),
    #[error("malformed tableau: {0}")]
    MalformedTableau(String),
    #[error("inverse rotation needs index n to carry a positive power")]
    NotInvertible,
}

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(TableauError::MalformedPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::MalformedPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|lambda| + lambda_1`, the smallest rank at which `lambda^(n)` is a partition.
    pub fn min_rank(&self) -> usize {
        self.size() + self.0.first().copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.row <= self.0.len() && c.col <= self.0[c.row - 1]
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| Cell::new(r + 1, c)))
            .collect()
    }

    /// Row-major number of a cell.
    pub fn cell_number(&self, c: Cell) -> usize {
        self.0[..c.row - 1].iter().sum::<usize>() + c.col - 1
    }

    /// Cells numbered down successive columns, leftmost column first.
    pub fn column_standard_order(&self) -> Vec<Cell> {
        let width = self.0.first().copied().unwrap_or(0);
        let mut out = Vec::with_capacity(self.size());
        for col in 1..=width {
            for row in 1..=self.0.len() {
                if self.0[row - 1] >= col {
                    out.push(Cell::new(row, col));
                }
            }
        }
        out
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn hook_count(&self) -> u128 {
        let n = self.size();
        let mut num: u128 = (1..=n as u128).product();
        let conj = self.conjugate();
        let mut den: u128 = 1;
        for c in self.cells() {
            let arm = self.0[c.row - 1] - c.col;
            let leg = conj.0[c.col - 1] - c.row;
            den *= (arm + leg + 1) as u128;
        }
        num /= den;
        num
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// Dominance order on partitions of the same size.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0usize, 0usize);
        let len = self.0.len().max(other.0.len());
        for k in 0..len {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// `lambda^(n) = (n - |lambda|, lambda_1, ..., lambda_r)`.
pub fn extended_shape(lambda: &Partition, n: usize) -> Result<Partition, TableauError> {
    let min = lambda.min_rank();
    if n < min {
        return Err(TableauError::InvalidRank { n, min });
    }
    let first = n - lambda.size();
    let mut parts = Vec::with_capacity(lambda.len() + 1);
    if first > 0 {
        parts.push(first);
    }
    parts.extend_from_slice(&lambda.0);
    Ok(Partition(parts))
}

/// A cell `(row, col)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn content(self) -> i64 {
        content(self)
    }
}

pub fn content(c: Cell) -> i64 {
    c.col as i64 - c.row as i64
}

/// Non-negative integer labelling of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillingKind {
    /// Weakly decreasing along rows and down columns.
    Ryt,
    /// Weakly decreasing along rows, strictly down columns.
    Rssyt,
}

impl Filling {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())
            .map_err(|e| TableauError::MalformedFilling(e.to_string()))?;
        Ok(Self { shape, rows })
    }

    pub fn zero(shape: &Partition) -> Self {
        Self { shape: shape.clone(), rows: shape.0.iter().map(|&l| vec![0; l]).collect() }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, c: Cell) -> u32 {
        self.rows[c.row - 1][c.col - 1]
    }

    pub fn set(&mut self, c: Cell, v: u32) {
        self.rows[c.row - 1][c.col - 1] = v;
    }

    pub fn degree(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&v| v == 0)
    }

    pub fn is_ryt(&self) -> bool {
        self.check(false)
    }

    pub fn is_rssyt(&self) -> bool {
        self.check(true)
    }

    pub fn is_kind(&self, kind: FillingKind) -> bool {
        match kind {
            FillingKind::Ryt => self.is_ryt(),
            FillingKind::Rssyt => self.is_rssyt(),
        }
    }

    fn check(&self, strict_columns: bool) -> bool {
        for c in self.shape.cells() {
            let v = self.get(c);
            if c.col > 1 && self.get(Cell::new(c.row, c.col - 1)) < v {
                return false;
            }
            if c.row > 1 {
                let above = self.get(Cell::new(c.row - 1, c.col));
                if above < v || (strict_columns && above == v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn require_ryt(&self) -> Result<(), TableauError> {
        if self.is_ryt() {
            Ok(())
        } else {
            Err(TableauError::MalformedFilling(format!("{self} is not weakly decreasing along rows and columns")))
        }
    }

    /// Appends `extra` zero cells to the first row.
    pub fn extend_first_row(&self, extra: usize) -> Filling {
        let mut rows = self.rows.clone();
        if rows.is_empty() {
            rows.push(Vec::new());
        }
        rows[0].extend(std::iter::repeat(0).take(extra));
        if rows[0].is_empty() {
            rows.clear();
        }
        Filling::from_rows(rows).expect("extending the first row keeps a partition shape")
    }

    /// Drops `count` cells from the end of the first row; `None` if the
    /// result is not a partition or a dropped cell is nonzero.
    pub fn shrink_first_row(&self, count: usize) -> Option<Filling> {
        if count == 0 {
            return Some(self.clone());
        }
        let mut rows = self.rows.clone();
        let first = rows.first_mut()?;
        if first.len() < count {
            return None;
        }
        let cut = first.split_off(first.len() - count);
        if cut.iter().any(|&v| v != 0) {
            return None;
        }
        if rows[0].is_empty() {
            rows.remove(0);
            if !rows.is_empty() {
                return None;
            }
        }
        Filling::from_rows(rows).ok()
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).unwrap())
    }
}

impl Serialize for Filling {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Filling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        Filling::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// The formal product `index * q^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicLabel {
    #[serde(rename = "i")]
    pub index: usize,
    #[serde(rename = "b")]
    pub power: u32,
}

impl PeriodicLabel {
    pub const fn new(index: usize, power: u32) -> Self {
        Self { index, power }
    }
}

impl Ord for PeriodicLabel {
    /// `j q^m < k q^l` iff `m > l`, or `m = l` and `j < k`.
    fn cmp(&self, other: &Self) -> Ordering {
        other.power.cmp(&self.power).then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for PeriodicLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PeriodicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}q^{}", self.index, self.power)
    }
}

/// A periodic standard Young tableau.
///
/// `cells[k]` is the cell holding index `k + 1`, which makes position and
/// weight lookups constant time; `labels` holds the same data by cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicTableau {
    shape: Partition,
    labels: Vec<Vec<PeriodicLabel>>,
    cells: Vec<Cell>,
}

impl PeriodicTableau {
    pub fn from_rows(rows: Vec<Vec<PeriodicLabel>>) -> Result<Self, TableauError> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())
            .map_err(|e| TableauError::MalformedTableau(e.to_string()))?;
        let n = shape.size();
        let mut cells = vec![Cell::new(0, 0); n];
        let mut seen = vec![false; n];
        for (r, row) in rows.iter().enumerate() {
            for (c, l) in row.iter().enumerate() {
                if l.index == 0 || l.index > n || seen[l.index - 1] {
                    return Err(TableauError::MalformedTableau(format!("index {} repeated or out of range", l.index)));
                }
                seen[l.index - 1] = true;
                cells[l.index - 1] = Cell::new(r + 1, c + 1);
            }
        }
        let tab = Self { shape, labels: rows, cells };
        if !tab.is_increasing() {
            return Err(TableauError::MalformedTableau(format!("{tab} is not increasing along rows and columns")));
        }
        Ok(tab)
    }

    /// The standard tableau with the given index at each cell and all powers zero.
    pub fn standard(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|i| PeriodicLabel::new(i, 0)).collect())
                .collect(),
        )
    }

    /// Places index `k + 1` in `order[k]` with powers taken from `powers`.
    pub fn from_cell_order(powers: &Filling, order: &[Cell]) -> Self {
        let shape = powers.shape().clone();
        let mut labels: Vec<Vec<PeriodicLabel>> =
            shape.parts().iter().map(|&l| vec![PeriodicLabel::new(0, 0); l]).collect();
        for (k, &c) in order.iter().enumerate() {
            labels[c.row - 1][c.col - 1] = PeriodicLabel::new(k + 1, powers.get(c));
        }
        Self { shape, labels, cells: order.to_vec() }
    }

    fn is_increasing(&self) -> bool {
        self.shape.cells().into_iter().all(|c| {
            let l = self.label(c);
            (c.col == 1 || self.label(Cell::new(c.row, c.col - 1)) < l)
                && (c.row == 1 || self.label(Cell::new(c.row - 1, c.col)) < l)
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn rows(&self) -> &[Vec<PeriodicLabel>] {
        &self.labels
    }

    pub fn label(&self, c: Cell) -> PeriodicLabel {
        self.labels[c.row - 1][c.col - 1]
    }

    /// Cell holding index `i` (1-based).
    pub fn cell_of(&self, i: usize) -> Cell {
        self.cells[i - 1]
    }

    /// Cells ordered by index.
    pub fn cells_by_index(&self) -> &[Cell] {
        &self.cells
    }

    /// `w_tau(i)`, the power attached to index `i`.
    pub fn weight(&self, i: usize) -> u32 {
        self.label(self.cell_of(i)).power
    }

    /// `c_tau(i)`, the content of the cell holding index `i`.
    pub fn content_of(&self, i: usize) -> i64 {
        self.cell_of(i).content()
    }

    /// Forgets indices, keeping powers.
    pub fn filling(&self) -> Filling {
        Filling {
            shape: self.shape.clone(),
            rows: self.labels.iter().map(|r| r.iter().map(|l| l.power).collect()).collect(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.labels.iter().flatten().all(|l| l.power == 0)
    }

    pub fn total_power(&self) -> u32 {
        self.labels.iter().flatten().map(|l| l.power).sum()
    }

    /// Index rows with the powers dropped.
    pub fn index_rows(&self) -> Vec<Vec<usize>> {
        self.labels.iter().map(|r| r.iter().map(|l| l.index).collect()).collect()
    }
}

impl fmt::Display for PeriodicTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.labels.iter().enumerate() {
            if r > 0 {
                write!(f, " / ")?;
            }
            for (k, l) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for PeriodicTableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodicTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<PeriodicLabel>>::deserialize(d)?;
        PeriodicTableau::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// All of `PSYT(lambda; T)`: the index assignments compatible with the powers
/// in `filling`, in lexicographic order of the index-to-cell vector.
pub fn enumerate_psyt(filling: &Filling) -> Result<Vec<PeriodicTableau>, TableauError> {
    filling.require_ryt()?;
    let mut out = Vec::new();
    for_each_psyt(filling, |order| {
        out.push(PeriodicTableau::from_cell_order(filling, order));
        true
    });
    Ok(out)
}

/// Standard Young tableaux of a shape, in the same deterministic order.
pub fn standard_tableaux(shape: &Partition) -> Vec<PeriodicTableau> {
    enumerate_psyt(&Filling::zero(shape)).expect("zero filling is valid")
}

/// Drives a backtracking search over linear extensions of the filling's
/// equal-power cell poset. `visit` receives the cells in index order and
/// returns `false` to stop the search.
pub(crate) fn for_each_psyt<F: FnMut(&[Cell]) -> bool>(filling: &Filling, mut visit: F) {
    let cells = filling.shape().cells();
    let n = cells.len();
    // preds[k]: row-major numbers of same-power left/up neighbours of cell k
    let preds: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| {
            let mut p = Vec::new();
            let v = filling.get(c);
            if c.col > 1 {
                let l = Cell::new(c.row, c.col - 1);
                if filling.get(l) == v {
                    p.push(filling.shape().cell_number(l));
                }
            }
            if c.row > 1 {
                let u = Cell::new(c.row - 1, c.col);
                if filling.get(u) == v {
                    p.push(filling.shape().cell_number(u));
                }
            }
            p
        })
        .collect();
    let mut placed = vec![false; n];
    let mut order: Vec<Cell> = Vec::with_capacity(n);
    fn rec<F: FnMut(&[Cell]) -> bool>(
        cells: &[Cell],
        preds: &[Vec<usize>],
        placed: &mut [bool],
        order: &mut Vec<Cell>,
        visit: &mut F,
    ) -> bool {
        if order.len() == cells.len() {
            return visit(order);
        }
        for k in 0..cells.len() {
            if placed[k] || !preds[k].iter().all(|&p| placed[p]) {
                continue;
            }
            placed[k] = true;
            order.push(cells[k]);
            let go_on = rec(cells, preds, placed, order, visit);
            order.pop();
            placed[k] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(&cells, &preds, &mut placed, &mut order, &mut visit);
}

/// The rotation: index `k >= 2` becomes `k - 1`, index 1 becomes `n` with its
/// power raised by one.
pub fn psi(tau: &PeriodicTableau) -> PeriodicTableau {
    let n = tau.n();
    let labels = tau
        .labels
        .iter()
        .map(|r| {
            r.iter()
                .map(|l| {
                    if l.index == 1 {
                        PeriodicLabel::new(n, l.power + 1)
                    } else {
                        PeriodicLabel::new(l.index - 1, l.power)
                    }
                })
                .collect()
        })
        .collect();
    let mut cells = tau.cells[1..].to_vec();
    cells.push(tau.cells[0]);
    PeriodicTableau { shape: tau.shape.clone(), labels, cells }
}

pub fn psi_inv(tau: &PeriodicTableau) -> Result<PeriodicTableau, TableauError> {
    let n = tau.n();
    if n == 0 || tau.weight(n) == 0 {
        return Err(TableauError::NotInvertible);
    }
    let labels = tau
        .labels
        .iter()
        .map(|r| {
            r.iter()
                .map(|l| {
                    if l.index == n {
                        PeriodicLabel::new(1, l.power - 1)
                    } else {
                        PeriodicLabel::new(l.index + 1, l.power)
                    }
                })
                .collect()
        })
        .collect();
    let mut cells = vec![tau.cells[n - 1]];
    cells.extend_from_slice(&tau.cells[..n - 1]);
    Ok(PeriodicTableau { shape: tau.shape.clone(), labels, cells })
}

/// Swaps indices `i` and `i + 1` keeping the powers in place; `None` if the
/// result is not a periodic standard tableau.
pub fn si_move(tau: &PeriodicTableau, i: usize) -> Option<PeriodicTableau> {
    if i == 0 || i >= tau.n() {
        return None;
    }
    let (a, b) = (tau.cell_of(i), tau.cell_of(i + 1));
    let (la, lb) = (tau.label(a), tau.label(b));
    let mut labels = tau.labels.clone();
    labels[a.row - 1][a.col - 1] = PeriodicLabel::new(i + 1, la.power);
    labels[b.row - 1][b.col - 1] = PeriodicLabel::new(i, lb.power);
    let mut cells = tau.cells.clone();
    cells.swap(i - 1, i);
    let out = PeriodicTableau { shape: tau.shape.clone(), labels, cells };
    // Only the two touched cells can break monotonicity.
    let ok = [a, b].iter().all(|&c| {
        let l = out.label(c);
        let left = c.col == 1 || out.label(Cell::new(c.row, c.col - 1)) < l;
        let up = c.row == 1 || out.label(Cell::new(c.row - 1, c.col)) < l;
        let right = !out.shape.contains(Cell::new(c.row, c.col + 1)) || l < out.label(Cell::new(c.row, c.col + 1));
        let down = !out.shape.contains(Cell::new(c.row + 1, c.col)) || l < out.label(Cell::new(c.row + 1, c.col));
        left && up && right && down
    });
    ok.then_some(out)
}

/// Whether `s_i(tau) > tau` is one of the covering relations: the move is
/// valid and either `w(i) < w(i+1)`, or the weights agree and
/// `c(i) - c(i+1) > 1`.
pub fn cover_compare(tau: &PeriodicTableau, i: usize) -> bool {
    if si_move(tau, i).is_none() {
        return false;
    }
    let (wi, wj) = (tau.weight(i), tau.weight(i + 1));
    wi < wj || (wi == wj && tau.content_of(i) - tau.content_of(i + 1) > 1)
}

/// Cells sorted by value descending, ties broken by column-standard order.
fn s_order(filling: &Filling) -> Vec<Cell> {
    let mut cells = filling.shape().column_standard_order();
    // stable sort keeps column-standard order among equal values
    cells.sort_by(|a, b| filling.get(*b).cmp(&filling.get(*a)));
    cells
}

/// `Top(T)`: index `S(T)(cell)` with power `T(cell)` at every cell.
pub fn top_closed_form(filling: &Filling) -> PeriodicTableau {
    PeriodicTableau::from_cell_order(filling, &s_order(filling))
}

/// `Min(T)`: indices placed by power ascending, then row-major.
pub fn min_closed_form(filling: &Filling) -> PeriodicTableau {
    let mut cells = filling.shape().cells();
    cells.sort_by_key(|&c| filling.get(c));
    PeriodicTableau::from_cell_order(filling, &cells)
}

/// No `s_i` move inside `PSYT(lambda;T)` raises `tau`.
pub fn is_locally_maximal(tau: &PeriodicTableau) -> bool {
    (1..tau.n()).all(|i| !cover_compare(tau, i))
}

/// No `s_i` move inside `PSYT(lambda;T)` lowers `tau`.
pub fn is_locally_minimal(tau: &PeriodicTableau) -> bool {
    (1..tau.n()).all(|i| match si_move(tau, i) {
        Some(sigma) => !cover_compare(&sigma, i),
        None => true,
    })
}

/// The minimum and maximum of `PSYT(lambda;T)`.
///
/// The closed forms are certified against the covering relations; if a
/// certificate fails the extremes are found by exhaustive search.
pub fn min_top(filling: &Filling) -> Result<(PeriodicTableau, PeriodicTableau), TableauError> {
    filling.require_ryt()?;
    let mut min = min_closed_form(filling);
    let mut top = top_closed_form(filling);
    if !is_locally_minimal(&min) || !is_locally_maximal(&top) {
        let all = enumerate_psyt(filling)?;
        let mins: Vec<_> = all.iter().filter(|t| is_locally_minimal(t)).collect();
        let tops: Vec<_> = all.iter().filter(|t| is_locally_maximal(t)).collect();
        if mins.len() != 1 || tops.len() != 1 {
            return Err(TableauError::MalformedFilling(format!(
                "{filling} has {} minimal and {} maximal periodic tableaux",
                mins.len(),
                tops.len()
            )));
        }
        min = mins[0].clone();
        top = tops[0].clone();
    }
    Ok((min, top))
}

/// `S(T)`, `nu(T)`, `b_T` and `mu(T)` of a reverse Young tableau.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingStats {
    pub standard: PeriodicTableau,
    pub nu: Vec<u32>,
    pub b: i64,
    pub mu: Vec<usize>,
}

pub fn s_tableau(filling: &Filling) -> PeriodicTableau {
    PeriodicTableau::from_cell_order(&Filling::zero(filling.shape()), &s_order(filling))
}

pub fn nu(filling: &Filling) -> Vec<u32> {
    let mut v: Vec<u32> = filling.rows().iter().flatten().copied().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Composition of `n` recording runs of consecutive indices that sit in the
/// same row of `tau` with the same power, i.e. the `s_i` fixing `tau`.
pub fn row_runs(tau: &PeriodicTableau) -> Vec<usize> {
    let n = tau.n();
    let mut out = Vec::new();
    let mut run = 0;
    for i in 1..=n {
        run += 1;
        if i == n || tau.cell_of(i).row != tau.cell_of(i + 1).row || tau.weight(i) != tau.weight(i + 1) {
            out.push(run);
            run = 0;
        }
    }
    out
}

pub fn stats(filling: &Filling) -> Result<FillingStats, TableauError> {
    filling.require_ryt()?;
    let standard = s_tableau(filling);
    let nu = nu(filling);
    let b = nu
        .iter()
        .enumerate()
        .map(|(k, &v)| v as i64 * (standard.content_of(k + 1) + k as i64))
        .sum();
    let (min, _) = min_top(filling)?;
    Ok(FillingStats { standard, nu, b, mu: row_runs(&min) })
}

/// Inversion pairs `(c1, c2)`: `S(T)(c1) < S(T)(c2)` but the index at `c1`
/// exceeds the index at `c2`, where `T` is the power filling of `tau`.
pub fn inversions(tau: &PeriodicTableau) -> Vec<(Cell, Cell)> {
    inversions_against(tau, &s_order(&tau.filling()))
}

/// Inversions of `tau` relative to an explicit cell ordering.
pub(crate) fn inversions_against(tau: &PeriodicTableau, order: &[Cell]) -> Vec<(Cell, Cell)> {
    let mut out = Vec::new();
    for (x, &c1) in order.iter().enumerate() {
        let i1 = tau.label(c1).index;
        for &c2 in &order[x + 1..] {
            if i1 > tau.label(c2).index {
                out.push((c1, c2));
            }
        }
    }
    out.sort();
    out
}

/// `I(T)`, the inversions of `Min(T)`.
pub fn min_inversions(filling: &Filling) -> Result<Vec<(Cell, Cell)>, TableauError> {
    let (min, _) = min_top(filling)?;
    Ok(inversions(&min))
}

/// All fillings of `shape` of the given kind with entries summing to `degree`,
/// in lexicographic order of the row-major value vector.
pub fn enumerate_fillings(shape: &Partition, degree: u32, kind: FillingKind) -> Vec<Filling> {
    let cells = shape.cells();
    let mut out = Vec::new();
    let mut cur = Filling::zero(shape);
    fn rec(
        k: usize,
        left: u32,
        cells: &[Cell],
        kind: FillingKind,
        cur: &mut Filling,
        out: &mut Vec<Filling>,
    ) {
        if k == cells.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let c = cells[k];
        let mut hi = left;
        if c.col > 1 {
            hi = hi.min(cur.get(Cell::new(c.row, c.col - 1)));
        }
        if c.row > 1 {
            let above = cur.get(Cell::new(c.row - 1, c.col));
            match kind {
                FillingKind::Ryt => hi = hi.min(above),
                FillingKind::Rssyt => {
                    if above == 0 {
                        return;
                    }
                    hi = hi.min(above - 1);
                }
            }
        }
        for v in 0..=hi {
            cur.set(c, v);
            rec(k + 1, left - v, cells, kind, cur, out);
        }
        cur.set(c, 0);
    }
    rec(0, degree, &cells, kind, &mut cur, &mut out);
    out
}

/// Every tableau reachable from `start` by covering moves inside
/// `PSYT(lambda;T)`, going up (`upward = true`) or down.
pub fn reachable_by_moves(start: &PeriodicTableau, upward: bool) -> HashSet<PeriodicTableau> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(tau) = queue.pop_front() {
        for i in 1..tau.n() {
            let Some(next) = si_move(&tau, i) else { continue };
            let is_step = if upward { cover_compare(&tau, i) } else { cover_compare(&next, i) };
            if is_step && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn fill(rows: &[&[u32]]) -> Filling {
        Filling::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ptab(rows: &[&[(usize, u32)]]) -> PeriodicTableau {
        PeriodicTableau::from_rows(
            rows.iter().map(|r| r.iter().map(|&(i, b)| PeriodicLabel::new(i, b)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn extended_shapes() {
        assert_eq!(extended_shape(&part(&[2, 1]), 5).unwrap(), part(&[2, 2, 1]));
        assert_eq!(extended_shape(&part(&[]), 3).unwrap(), part(&[3]));
        assert_eq!(extended_shape(&part(&[6, 5, 4, 2]), 23).unwrap(), part(&[6, 6, 5, 4, 2]));
        assert_eq!(
            extended_shape(&part(&[2, 1]), 4),
            Err(TableauError::InvalidRank { n: 4, min: 5 })
        );
    }

    #[test]
    fn contents() {
        assert_eq!(content(Cell::new(1, 1)), 0);
        assert_eq!(content(Cell::new(1, 3)), 2);
        assert_eq!(content(Cell::new(4, 1)), -3);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn psyt_of_one_row() {
        let all = enumerate_psyt(&fill(&[&[1, 0]])).unwrap();
        assert_eq!(all, vec![ptab(&[&[(1, 1), (2, 0)]]), ptab(&[&[(2, 1), (1, 0)]])]);
    }

    #[test]
    fn psyt_of_one_column() {
        let all = enumerate_psyt(&fill(&[&[1], &[0]])).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn zero_filling_gives_syt() {
        for p in [&[3, 2][..], &[2, 2, 1], &[4, 1, 1]] {
            let shape = part(p);
            assert_eq!(standard_tableaux(&shape).len() as u128, shape.hook_count());
        }
    }

    #[test]
    fn enumerate_rejects_non_ryt() {
        assert!(enumerate_psyt(&fill(&[&[0, 1]])).is_err());
    }

    #[test]
    fn psi_on_small_row() {
        let tau = ptab(&[&[(1, 0), (2, 0)]]);
        let rotated = psi(&tau);
        assert_eq!(rotated, ptab(&[&[(2, 1), (1, 0)]]));
        assert_eq!(psi_inv(&rotated).unwrap(), tau);
        assert_eq!(psi_inv(&tau), Err(TableauError::NotInvertible));
    }

    #[test]
    fn si_moves_and_covers() {
        let tau = ptab(&[&[(2, 1), (1, 0)]]);
        let up = si_move(&tau, 1).unwrap();
        assert_eq!(up, ptab(&[&[(1, 1), (2, 0)]]));
        assert!(cover_compare(&tau, 1));
        assert!(!cover_compare(&up, 1));
        // equal powers in the same row cannot be swapped
        assert!(si_move(&ptab(&[&[(1, 0), (2, 0)]]), 1).is_none());
        // SYT with 2 and 3 far apart
        let syt = ptab(&[&[(1, 0), (2, 0)], &[(3, 0)]]);
        assert!(cover_compare(&syt, 2));
    }

    #[test]
    fn min_top_small_row() {
        let (min, top) = min_top(&fill(&[&[1, 0]])).unwrap();
        assert_eq!(min, ptab(&[&[(2, 1), (1, 0)]]));
        assert_eq!(top, ptab(&[&[(1, 1), (2, 0)]]));
    }

    #[test]
    fn stats_small_row() {
        let s = stats(&fill(&[&[1, 0]])).unwrap();
        assert_eq!(s.standard, ptab(&[&[(1, 0), (2, 0)]]));
        assert_eq!(s.nu, vec![1, 0]);
        assert_eq!(s.b, 0);
        // indices 1 and 2 share a row but not a power
        assert_eq!(s.mu, vec![1, 1]);
    }

    #[test]
    fn inversions_small_row() {
        let (min, top) = min_top(&fill(&[&[1, 0]])).unwrap();
        assert_eq!(inversions(&min), vec![(Cell::new(1, 1), Cell::new(1, 2))]);
        assert!(inversions(&top).is_empty());
    }

    #[test]
    fn filling_enumeration() {
        assert_eq!(enumerate_fillings(&part(&[2]), 1, FillingKind::Rssyt), vec![fill(&[&[1, 0]])]);
        assert_eq!(enumerate_fillings(&part(&[1]), 4, FillingKind::Ryt), vec![fill(&[&[4]])]);
        assert_eq!(
            enumerate_fillings(&part(&[2, 1]), 0, FillingKind::Rssyt),
            Vec::<Filling>::new(),
            "a column of two cells cannot be strictly decreasing with zeros"
        );
        assert_eq!(enumerate_fillings(&part(&[2, 1]), 0, FillingKind::Ryt), vec![fill(&[&[0, 0], &[0]])]);
    }

    #[test]
    fn label_order() {
        assert!(PeriodicLabel::new(5, 2) < PeriodicLabel::new(1, 1));
        assert!(PeriodicLabel::new(1, 1) < PeriodicLabel::new(2, 1));
    }

    #[test]
    fn json_shapes() {
        let tau = ptab(&[&[(1, 1), (2, 0)]]);
        let js = serde_json::to_string(&tau).unwrap();
        assert_eq!(js, r#"[[{"i":1,"b":1},{"i":2,"b":0}]]"#);
        let back: PeriodicTableau = serde_json::from_str(&js).unwrap();
        assert_eq!(back, tau);
        assert_eq!(serde_json::to_string(&fill(&[&[2, 1], &[0]])).unwrap(), "[[2,1],[0]]");
    }
}
