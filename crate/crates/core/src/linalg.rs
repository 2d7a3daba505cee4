//! Sparse Gaussian elimination over `Q(q,t)`.
//!
//! Vectors are sorted maps from an ordered coordinate key to a nonzero
//! scalar. Only what the verification routines need is provided: rank of a
//! family and expressing a target in terms of a family.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeffs::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// `dst += c * src`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(dst: &mut SparseVec<K>, c: &Scalar, src: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let add = c * v;
        match dst.get_mut(k) {
            Some(e) => {
                *e += &add;
                if e.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    dst.insert(k.clone(), add);
                }
            }
        }
    }
}

struct Pivot<K> {
    key: K,
    row: SparseVec<K>,
    combo: Vec<Scalar>,
}

/// Row-echelon basis that remembers how each basis row was built from the
/// inserted vectors.
pub struct Echelon<K> {
    pivots: Vec<Pivot<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self { pivots: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &mut SparseVec<K>, combo: &mut Vec<Scalar>) {
        for p in &self.pivots {
            let Some(c) = v.get(&p.key).cloned() else { continue };
            let neg = -c;
            axpy(v, &neg, &p.row);
            for (slot, x) in combo.iter_mut().zip(&p.combo) {
                if !x.is_zero() {
                    *slot += &(&neg * x);
                }
            }
        }
    }

    /// Inserts the next vector of the family; returns `true` when it was
    /// independent of the previous ones.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        for p in self.pivots.iter_mut() {
            p.combo.push(Scalar::zero());
        }
        let mut row = v.clone();
        let mut combo = vec![Scalar::zero(); self.inserted];
        combo[idx] = Scalar::one();
        self.reduce(&mut row, &mut combo);
        let Some((key, lead)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("pivot is nonzero");
        for x in row.values_mut() {
            *x = &*x * &inv;
        }
        for x in combo.iter_mut() {
            *x = &*x * &inv;
        }
        self.pivots.push(Pivot { key, row, combo });
        true
    }

    /// Coefficients `x` with `target = sum_j x_j v_j` over the inserted
    /// vectors, or `None` if `target` is outside their span. When the family
    /// is dependent the dependent members get coefficient zero.
    pub fn express(&self, target: &SparseVec<K>) -> Option<Vec<Scalar>> {
        let mut row = target.clone();
        let mut combo = vec![Scalar::zero(); self.inserted];
        self.reduce(&mut row, &mut combo);
        if !row.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|c| -c).collect())
    }
}

/// Coefficients of `target` over `vectors`, or `None` when `target` is
/// outside their span.
///
/// Vectors are peeled off while some key is held by exactly one remaining
/// vector. What is left is solved on a square set of keys picked by
/// elimination at a sample point, where a nonzero sample determinant shows
/// the block is independent; only if that fails does the full elimination
/// run. The final residual is checked exactly.
pub fn express_in_family<K: Ord + Clone>(vectors: &[&SparseVec<K>], target: &SparseVec<K>) -> Option<Vec<Scalar>> {
    let mut holders: BTreeMap<&K, usize> = BTreeMap::new();
    for v in vectors {
        for k in v.keys() {
            *holders.entry(k).or_default() += 1;
        }
    }
    let mut alive = vec![true; vectors.len()];
    let mut coeffs = vec![Scalar::zero(); vectors.len()];
    let mut residual = target.clone();
    loop {
        let found = holders
            .iter()
            .filter(|&(_, &c)| c == 1)
            .find_map(|(k, _)| (0..vectors.len()).find(|&j| alive[j] && vectors[j].contains_key(*k)).map(|j| (j, *k)));
        let Some((j, key)) = found else { break };
        let c = match residual.get(key) {
            Some(r) => r / &vectors[j][key],
            None => Scalar::zero(),
        };
        axpy(&mut residual, &-&c, vectors[j]);
        coeffs[j] = c;
        alive[j] = false;
        for k in vectors[j].keys() {
            *holders.get_mut(k).unwrap() -= 1;
        }
    }
    let rest: Vec<usize> = (0..vectors.len()).filter(|&j| alive[j]).collect();
    if !rest.is_empty() {
        let keys = sample_pivots(&rest.iter().map(|&j| vectors[j]).collect::<Vec<_>>());
        let restrict = |v: &SparseVec<K>| -> SparseVec<K> {
            v.iter().filter(|(k, _)| keys.as_ref().is_none_or(|ks| ks.contains(*k))).map(|(k, c)| (k.clone(), c.clone())).collect()
        };
        let mut block = Echelon::new();
        for &j in &rest {
            block.insert(&restrict(vectors[j]));
        }
        let solved = block.express(&restrict(&residual))?;
        for (&j, c) in rest.iter().zip(solved) {
            axpy(&mut residual, &-&c, vectors[j]);
            coeffs[j] = c;
        }
    }
    residual.is_empty().then_some(coeffs)
}

/// Keys on which the family is independent at a sample point, one per
/// vector; `None` if the sample is degenerate.
fn sample_pivots<K: Ord + Clone>(vectors: &[&SparseVec<K>]) -> Option<BTreeSet<K>> {
    let mut span = SampleSpan::new();
    for v in vectors {
        if !span.insert(v)? {
            return None;
        }
    }
    Some(span.pivots.into_iter().map(|(k, _)| k).collect())
}

/// Incremental elimination of vectors evaluated at a fixed rational point.
/// The rank found is a lower bound for the rank over `Q(q,t)`.
#[derive(Debug, Clone)]
pub struct SampleSpan<K> {
    pivots: Vec<(K, BTreeMap<K, BigRational>)>,
}

impl<K: Ord + Clone> Default for SampleSpan<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SampleSpan<K> {
    pub fn new() -> Self {
        Self { pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether `v` raised the rank; `None` if some coefficient has a pole at
    /// the sample point.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<bool> {
        let q = BigRational::new(13.into(), 7.into());
        let t = BigRational::new((-11).into(), 5.into());
        let mut row = BTreeMap::new();
        for (k, c) in v.iter() {
            let x = c.eval(&q, &t)?;
            if !x.is_zero() {
                row.insert(k.clone(), x);
            }
        }
        for (pk, prow) in &self.pivots {
            if let Some(c) = row.get(pk).cloned() {
                for (k, x) in prow {
                    let e = row.entry(k.clone()).or_insert_with(BigRational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        let Some((k, lead)) = row.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return Some(false);
        };
        for x in row.values_mut() {
            *x /= &lead;
        }
        self.pivots.push((k, row));
        Some(true)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
