//! Connecting maps between consecutive ranks `lambda^(n+1) -> lambda^(n)`,
//! fillings of the infinite diagram, and the recentred operators `Delta_l`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::coeffs::Scalar;
use crate::daha::{scale, sub, DahaError, DahaModule, VElement};
use crate::hecke::{added_cell, HeckeError};
use crate::linalg::SampleSpan;
use crate::spherical::{act_p0l, epsilon};
use crate::tableaux::{enumerate_fillings, extended_shape, Cell, Filling, FillingKind, Partition, TableauError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LimitsError {
    #[error(transparent)]
    Daha(#[from] DahaError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("{0} is not the extension of a base shape by a first row")]
    NotExtended(String),
    #[error("{filling} is not strictly decreasing down columns")]
    NotRssyt { filling: String },
    #[error("rank {n} is below the filling's rank {rank}")]
    BelowRank { n: usize, rank: usize },
}

impl From<HeckeError> for LimitsError {
    fn from(e: HeckeError) -> Self {
        LimitsError::Daha(e.into())
    }
}

/// `Phi`: drops every term with `alpha_{n+1} > 0` and restricts the tableau
/// factor of the rest to `lambda^(n)`.
pub fn phi_map(big: &DahaModule, small: &DahaModule, v: &VElement) -> Result<VElement, LimitsError> {
    let cell = added_cell(big.shape(), small.shape())?;
    if cell.row != 1 {
        return Err(LimitsError::NotExtended(big.shape().to_string()));
    }
    let n = small.n();
    let mut by_alpha: BTreeMap<Vec<u32>, crate::hecke::SeminormalElement> = BTreeMap::new();
    for ((alpha, k), c) in v {
        if alpha[n] != 0 {
            continue;
        }
        by_alpha.entry(alpha[..n].to_vec()).or_default().insert(*k, c.clone());
    }
    let mut out = VElement::new();
    for (alpha, u) in by_alpha {
        for (j, c) in big.hecke().restrict_to(small.hecke(), &u)? {
            out.insert((alpha.clone(), j), c);
        }
    }
    Ok(out)
}

/// `sum_{cells of shape} t^{l c(cell)}`.
pub fn content_sum(shape: &Partition, l: u32) -> Scalar {
    shape
        .cells()
        .into_iter()
        .fold(Scalar::zero(), |acc, c| &acc + &Scalar::t_pow(l as i64 * c.content()))
}

/// `P_{0,l}` recentred by the content sum, on a symmetric vector.
pub fn delta_truncated(m: &DahaModule, l: u32, v: &VElement) -> VElement {
    sub(&act_p0l(m, l, v), &scale(v, &content_sum(m.shape(), l)))
}

/// The modules `V_{lambda^(n)}` for one base shape, built on demand.
#[derive(Debug)]
pub struct Tower {
    base: Partition,
    modules: Mutex<HashMap<usize, Arc<DahaModule>>>,
}

impl Tower {
    pub fn new(base: &Partition) -> Self {
        Self { base: base.clone(), modules: Mutex::new(HashMap::new()) }
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn at(&self, n: usize) -> Result<Arc<DahaModule>, LimitsError> {
        if let Some(m) = self.modules.lock().unwrap().get(&n) {
            return Ok(m.clone());
        }
        let shape = extended_shape(&self.base, n)?;
        let m = Arc::new(DahaModule::new(&shape));
        Ok(self.modules.lock().unwrap().entry(n).or_insert(m).clone())
    }

    /// `Phi` from rank `n + 1` down to rank `n`.
    pub fn phi(&self, n: usize, v: &VElement) -> Result<VElement, LimitsError> {
        let (big, small) = (self.at(n + 1)?, self.at(n)?);
        phi_map(&big, &small, v)
    }

    /// Checks `Phi (P_{0,l} - c_{n+1}) = (P_{0,l} - c_n) Phi` on symmetrized
    /// basis vectors of rank `n + 1` up to the given degree. In each degree
    /// the vectors are taken until their rank at a sample point reaches the
    /// number of RSSYT, the dimension of the symmetric part, so the checked
    /// vectors span it.
    pub fn intertwine_check(&self, n: usize, l: u32, degree: u32) -> Result<IntertwineReport, LimitsError> {
        let big = self.at(n + 1)?;
        let small = self.at(n)?;
        let mut report = IntertwineReport { n, l, checked: 0, failed: 0 };
        for d in 0..=degree {
            let dim = enumerate_fillings(big.shape(), d, FillingKind::Rssyt).len();
            let mut span = SampleSpan::new();
            for (alpha, k) in big.basis_of_degree(d) {
                if span.rank() == dim {
                    break;
                }
                let w = epsilon(&big, &big.basis_element(alpha, k));
                if w.is_empty() || span.insert(&w) == Some(false) {
                    continue;
                }
                let lhs = phi_map(&big, &small, &delta_truncated(&big, l, &w))?;
                let rhs = delta_truncated(&small, l, &phi_map(&big, &small, &w)?);
                report.checked += 1;
                if lhs != rhs {
                    report.failed += 1;
                }
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntertwineReport {
    pub n: usize,
    pub l: u32,
    pub checked: usize,
    pub failed: usize,
}

impl IntertwineReport {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

/// Minimal `n >= |lambda| + lambda_1` such that `filling`, given on some
/// `lambda^(m)`, vanishes outside `lambda^(n)`.
pub fn rank_of_filling(base: &Partition, filling: &Filling) -> Result<usize, LimitsError> {
    let m = filling.shape().size();
    if extended_shape(base, m).ok().as_ref() != Some(filling.shape()) {
        return Err(LimitsError::NotExtended(filling.shape().to_string()));
    }
    let first = filling.rows().first().map(|r| r.as_slice()).unwrap_or(&[]);
    let last_nonzero = first.iter().rposition(|&v| v != 0).map_or(0, |p| p + 1);
    Ok(base.min_rank().max(base.size() + last_nonzero))
}

/// A filling of the infinite diagram `lambda^(infinity)` with finitely many
/// nonzero entries whose restriction to every `lambda^(n)` is strictly
/// decreasing down columns. Stored on `lambda^(rank)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OmegaFilling {
    base: Partition,
    filling: Filling,
}

impl OmegaFilling {
    pub fn new(base: &Partition, filling: &Filling) -> Result<Self, LimitsError> {
        let rank = rank_of_filling(base, filling)?;
        let trimmed = filling
            .shrink_first_row(filling.shape().size() - rank)
            .expect("entries beyond the rank are zero");
        if !trimmed.is_rssyt() {
            return Err(LimitsError::NotRssyt { filling: filling.to_string() });
        }
        Ok(Self { base: base.clone(), filling: trimmed })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.filling.shape().size()
    }

    pub fn degree(&self) -> u32 {
        self.filling.degree()
    }

    /// Restriction to `lambda^(n)`, `n >= rank`.
    pub fn at_rank(&self, n: usize) -> Result<Filling, LimitsError> {
        let rank = self.rank();
        if n < rank {
            return Err(LimitsError::BelowRank { n, rank });
        }
        Ok(self.filling.extend_first_row(n - rank))
    }

    /// The nonzero cells with their values.
    pub fn support(&self) -> Vec<(Cell, u32)> {
        self.filling.shape().cells().into_iter().map(|c| (c, self.filling.get(c))).filter(|&(_, v)| v > 0).collect()
    }

    /// Eigenvalue of `Delta_l`: `sum (q^{l T} - 1) t^{l c}` over nonzero cells.
    pub fn delta_eigenvalue(&self, l: u32) -> Scalar {
        let l = l as i64;
        self.support().into_iter().fold(Scalar::zero(), |acc, (c, v)| {
            &acc + &(&(&Scalar::q_pow(l * v as i64) - &Scalar::one()) * &Scalar::t_pow(l * c.content()))
        })
    }
}

/// `rk(T)`.
pub fn rank_of(t: &OmegaFilling) -> usize {
    t.rank()
}

/// All elements of `Omega(lambda)` of the given degree.
pub fn enumerate_omega(base: &Partition, degree: u32) -> Vec<OmegaFilling> {
    let n = base.min_rank() + degree as usize;
    let shape = extended_shape(base, n).expect("rank is at least the minimum");
    let mut out: Vec<OmegaFilling> = enumerate_fillings(&shape, degree, FillingKind::Rssyt)
        .into_iter()
        .map(|f| OmegaFilling::new(base, &f).expect("enumerated fillings are valid"))
        .collect();
    out.sort();
    out
}

/// Truncations `n -> v_n` of one element of the inverse limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleFamily {
    pub base: Partition,
    pub entries: BTreeMap<usize, VElement>,
}

impl CompatibleFamily {
    /// `Phi(v_{n+1}) = v_n` for every consecutive pair in the window.
    pub fn is_compatible(&self, tower: &Tower) -> Result<bool, LimitsError> {
        for (&n, v) in &self.entries {
            if let Some(next) = self.entries.get(&(n + 1)) {
                if tower.phi(n, next)? != *v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
