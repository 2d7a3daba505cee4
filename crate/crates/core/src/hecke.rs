//! The finite Hecke algebra with `(T_i - 1)(T_i + t) = 0` acting on
//! seminormal irreducible modules spanned by standard Young tableaux.

use std::collections::HashMap;

use crate::coeffs::Scalar;
use crate::linalg::{axpy, SparseVec};
use crate::tableaux::{si_move, standard_tableaux, Cell, Partition, PeriodicTableau};

/// Vector in a seminormal module; keys index into [`SeminormalModule::basis`].
pub type SeminormalElement = SparseVec<usize>;

/// Generator indices `i_1 .. i_r`, meaning `T_{i_1} ... T_{i_r}`.
pub type HeckeWord = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("generator index {i} out of range for rank {n}")]
    BadIndex { i: usize, n: usize },
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: Partition, got: Partition },
}

type Column = Vec<(usize, Scalar)>;

/// The module `lambda` with its basis of standard tableaux and precomputed
/// matrices of every `T_i` and `T_i^{-1}`.
#[derive(Debug, Clone)]
pub struct SeminormalModule {
    shape: Partition,
    basis: Vec<PeriodicTableau>,
    lookup: HashMap<PeriodicTableau, usize>,
    t: Vec<Vec<Column>>,
    t_inv: Vec<Vec<Column>>,
}

impl SeminormalModule {
    pub fn new(shape: &Partition) -> Self {
        let basis = standard_tableaux(shape);
        let lookup = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        let n = shape.size();
        let mut m = Self { shape: shape.clone(), basis, lookup, t: Vec::new(), t_inv: Vec::new() };
        for i in 1..n {
            let cols: Vec<Column> = (0..m.basis.len()).map(|k| m.t_column(i, k)).collect();
            let t = Scalar::t();
            let t_inv = t.inv().unwrap();
            let shift = &t - &Scalar::one();
            // T_i^{-1} = t^{-1}(T_i + t - 1)
            let inv_cols = cols
                .iter()
                .enumerate()
                .map(|(k, col)| {
                    let mut v: SparseVec<usize> = col.iter().cloned().collect();
                    axpy(&mut v, &shift, &SparseVec::from([(k, Scalar::one())]));
                    v.into_iter().map(|(j, c)| (j, &c * &t_inv)).collect()
                })
                .collect();
            m.t.push(cols);
            m.t_inv.push(inv_cols);
        }
        m
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    pub fn basis(&self) -> &[PeriodicTableau] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, tau: &PeriodicTableau) -> Option<usize> {
        self.lookup.get(tau).copied()
    }

    pub fn basis_vector(&self, k: usize) -> SeminormalElement {
        SparseVec::from([(k, Scalar::one())])
    }

    /// `T_i` on the basis tableau `k`, built from the seminormal block.
    fn t_column(&self, i: usize, k: usize) -> Column {
        let tau = &self.basis[k];
        let (ci, cj) = (tau.content_of(i), tau.content_of(i + 1));
        let (ri, rj) = (tau.cell_of(i).row, tau.cell_of(i + 1).row);
        if ri == rj {
            return vec![(k, Scalar::one())];
        }
        if tau.cell_of(i).col == tau.cell_of(i + 1).col {
            return vec![(k, -Scalar::t())];
        }
        let a = Scalar::t_pow(ci);
        let b = Scalar::t_pow(cj);
        let tm1 = Scalar::t() - Scalar::one();
        let diff = &a - &b;
        let diag = &(&tm1 * &a) / &(&b - &a);
        let mut out = vec![(k, diag)];
        let sigma = si_move(tau, i).expect("labels in different rows and columns can swap");
        let j = self.lookup[&sigma];
        let off = if ci - cj > 1 {
            // sigma is above tau
            Scalar::one()
        } else {
            // tau is above sigma; a, b are the contents of sigma swapped
            let ab = &a * &b;
            Scalar::t() - &(&(&tm1 * &tm1) * &ab) / &(&diff * &diff)
        };
        out.push((j, off));
        out.sort_by_key(|&(x, _)| x);
        out
    }

    #[cfg(test)]
    pub(crate) fn scale_off_diagonal(&mut self, c: &Scalar) {
        for cols in self.t.iter_mut() {
            for (k, col) in cols.iter_mut().enumerate() {
                for (j, x) in col.iter_mut() {
                    if *j != k {
                        *x = &*x * c;
                    }
                }
            }
        }
    }

    fn check(&self, i: usize) -> Result<(), HeckeError> {
        if i == 0 || i >= self.n() {
            return Err(HeckeError::BadIndex { i, n: self.n() });
        }
        Ok(())
    }

    /// Image of basis tableau `k` under `T_i` (or `T_i^{-1}`).
    pub fn generator_column(&self, i: usize, k: usize, inverse: bool) -> &[(usize, Scalar)] {
        if inverse {
            &self.t_inv[i - 1][k]
        } else {
            &self.t[i - 1][k]
        }
    }

    fn apply_cols(cols: &[Column], v: &SeminormalElement) -> SeminormalElement {
        let mut out = SeminormalElement::new();
        for (&k, c) in v {
            for (j, x) in &cols[k] {
                let add = c * x;
                let e = out.entry(*j).or_default();
                *e += &add;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn act_t(&self, i: usize, v: &SeminormalElement) -> Result<SeminormalElement, HeckeError> {
        self.check(i)?;
        Ok(Self::apply_cols(&self.t[i - 1], v))
    }

    pub fn act_t_inv(&self, i: usize, v: &SeminormalElement) -> Result<SeminormalElement, HeckeError> {
        self.check(i)?;
        Ok(Self::apply_cols(&self.t_inv[i - 1], v))
    }

    /// Diagonal action `t^{c_tau(i)}`.
    pub fn act_theta_bar(&self, i: usize, v: &SeminormalElement) -> Result<SeminormalElement, HeckeError> {
        if i == 0 || i > self.n() {
            return Err(HeckeError::BadIndex { i, n: self.n() });
        }
        Ok(v.iter()
            .map(|(&k, c)| (k, c * &Scalar::t_pow(self.basis[k].content_of(i))))
            .collect())
    }

    /// `T_{i_1} ... T_{i_r}`, so the last letter acts first.
    pub fn act_word(&self, w: &[usize], v: &SeminormalElement) -> Result<SeminormalElement, HeckeError> {
        let mut cur = v.clone();
        for &i in w.iter().rev() {
            cur = self.act_t(i, &cur)?;
        }
        Ok(cur)
    }

    /// Restriction to `lambda^(n)` of a vector on `lambda^(n+1)`: tableaux with
    /// `n + 1` in the cell `target` lacks are truncated, all others vanish.
    pub fn restrict_to(&self, target: &SeminormalModule, v: &SeminormalElement) -> Result<SeminormalElement, HeckeError> {
        let added = added_cell(&self.shape, &target.shape)?;
        let n = self.n();
        let mut out = SeminormalElement::new();
        for (&k, c) in v {
            let tau = &self.basis[k];
            if tau.cell_of(n) != added {
                continue;
            }
            let j = target.lookup[&truncate_last(tau, &target.shape)];
            out.insert(j, c.clone());
        }
        Ok(out)
    }
}

/// The unique cell of `big` missing from `small`.
pub(crate) fn added_cell(big: &Partition, small: &Partition) -> Result<Cell, HeckeError> {
    let mismatch = || HeckeError::ShapeMismatch { expected: big.clone(), got: small.clone() };
    if big.size() != small.size() + 1 {
        return Err(mismatch());
    }
    let mut found = None;
    for (r, &len) in big.parts().iter().enumerate() {
        let other = small.parts().get(r).copied().unwrap_or(0);
        if other + 1 == len && found.is_none() {
            found = Some(Cell::new(r + 1, len));
        } else if other != len {
            return Err(mismatch());
        }
    }
    found.ok_or_else(mismatch)
}

/// Drops the cell holding the largest index.
pub(crate) fn truncate_last(tau: &PeriodicTableau, shape: &Partition) -> PeriodicTableau {
    let order = &tau.cells_by_index()[..tau.n() - 1];
    let powers = crate::tableaux::Filling::from_rows(
        shape
            .parts()
            .iter()
            .enumerate()
            .map(|(r, &len)| (1..=len).map(|c| tau.label(Cell::new(r + 1, c)).power).collect())
            .collect(),
    )
    .expect("shape is a partition");
    PeriodicTableau::from_cell_order(&powers, order)
}

/// All permutations of `0..n` in lexicographic order of one-line notation.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else { break };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
    out
}

pub fn inversion_count(perm: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                c += 1;
            }
        }
    }
    c
}

/// Lexicographically first reduced word `(i_1, .., i_r)` with
/// `perm = s_{i_1} ... s_{i_r}` (one-line notation, 0-based values).
pub fn reduced_word(perm: &[usize]) -> HeckeWord {
    let n = perm.len();
    let mut inv = vec![0; n];
    for (pos, &v) in perm.iter().enumerate() {
        inv[v] = pos;
    }
    let mut word = Vec::new();
    // left descents of perm are i with perm^{-1}(i) > perm^{-1}(i+1)
    while let Some(i) = (0..n.saturating_sub(1)).find(|&i| inv[i] > inv[i + 1]) {
        word.push(i + 1);
        inv.swap(i, i + 1);
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn scale(v: &SeminormalElement, c: &Scalar) -> SeminormalElement {
        v.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect()
    }

    fn add(a: &SeminormalElement, b: &SeminormalElement) -> SeminormalElement {
        let mut out = a.clone();
        axpy(&mut out, &Scalar::one(), b);
        out
    }

    #[test]
    fn row_and_column_rules() {
        let m = SeminormalModule::new(&part(&[2, 1]));
        let row = PeriodicTableau::standard(vec![vec![1, 2], vec![3]]).unwrap();
        let k = m.index_of(&row).unwrap();
        assert_eq!(m.act_t(1, &m.basis_vector(k)).unwrap(), m.basis_vector(k));
        let col = SeminormalModule::new(&part(&[1, 1]));
        assert_eq!(col.act_t(1, &col.basis_vector(0)).unwrap(), scale(&col.basis_vector(0), &-Scalar::t()));
    }

    #[test]
    fn quadratic_relation_on_hook() {
        let m = SeminormalModule::new(&part(&[2, 1]));
        for k in 0..m.dim() {
            let v = m.basis_vector(k);
            let tv = m.act_t(2, &v).unwrap();
            let ttv = m.act_t(2, &tv).unwrap();
            // T^2 = (1 - t) T + t
            let rhs = add(&scale(&tv, &(Scalar::one() - Scalar::t())), &scale(&v, &Scalar::t()));
            assert_eq!(ttv, rhs);
        }
    }

    #[test]
    fn theta_bar_contents() {
        let m = SeminormalModule::new(&part(&[2, 1]));
        let row = PeriodicTableau::standard(vec![vec![1, 2], vec![3]]).unwrap();
        let v = m.basis_vector(m.index_of(&row).unwrap());
        assert_eq!(m.act_theta_bar(1, &v).unwrap(), v);
        assert_eq!(m.act_theta_bar(2, &v).unwrap(), scale(&v, &Scalar::t()));
        let col = SeminormalModule::new(&part(&[1, 1]));
        let w = col.basis_vector(0);
        assert_eq!(col.act_theta_bar(2, &w).unwrap(), scale(&w, &Scalar::t_pow(-1)));
    }

    #[test]
    fn inverse_generator() {
        let m = SeminormalModule::new(&part(&[3, 2]));
        for i in 1..5 {
            for k in 0..m.dim() {
                let v = m.basis_vector(k);
                assert_eq!(m.act_t_inv(i, &m.act_t(i, &v).unwrap()).unwrap(), v);
            }
        }
    }

    #[test]
    fn words_and_permutations() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(reduced_word(&[0, 1, 2]), Vec::<usize>::new());
        assert_eq!(reduced_word(&[1, 0, 2]), vec![1]);
        assert_eq!(reduced_word(&[2, 1, 0]).len(), 3);
        for p in permutations(4) {
            assert_eq!(reduced_word(&p).len(), inversion_count(&p));
        }
    }

    #[test]
    fn restriction_keeps_added_cell() {
        let big = SeminormalModule::new(&part(&[3]));
        let small = SeminormalModule::new(&part(&[2]));
        let r = big.restrict_to(&small, &big.basis_vector(0)).unwrap();
        assert_eq!(r, small.basis_vector(0));
        let big = SeminormalModule::new(&part(&[2, 1]));
        let small = SeminormalModule::new(&part(&[1, 1]));
        let row = PeriodicTableau::standard(vec![vec![1, 3], vec![2]]).unwrap();
        let other = PeriodicTableau::standard(vec![vec![1, 2], vec![3]]).unwrap();
        let r = big.restrict_to(&small, &big.basis_vector(big.index_of(&row).unwrap())).unwrap();
        assert_eq!(r, small.basis_vector(0));
        let r = big.restrict_to(&small, &big.basis_vector(big.index_of(&other).unwrap())).unwrap();
        assert!(r.is_empty());
    }
}
