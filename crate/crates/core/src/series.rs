//! Asymptotic periodic tableaux on `lambda^(infinity)` and truncated-series
//! checks of the product-sum identities they index.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{t_series_expand, Scalar, TLaurentSeries};
use crate::hecke::truncate_last;
use crate::limits::{rank_of, LimitsError, OmegaFilling};
use crate::spherical::composition_factorial;
use crate::tableaux::{self, extended_shape, inversions, Cell, Filling, PeriodicLabel, PeriodicTableau, TableauError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("inversion factor of {tableau} has a zero denominator")]
    PoleInTerm { tableau: String },
    #[error("tail pair of {tableau} changed the inversion set")]
    TailInversion { tableau: String },
    #[error("window {cap} reached without stabilizing through order {order}")]
    Inconclusive { cap: usize, order: i64 },
}

/// A tableau on `lambda^(infinity)` stored on a finite window `lambda^(m)`;
/// boxes beyond the window carry `(m+1)q^0, (m+2)q^0, ..` along the first row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AsymptoticTableau {
    base: tableaux::Partition,
    window: PeriodicTableau,
}

impl AsymptoticTableau {
    /// Wraps a window tableau, shrinking it to its minimal window.
    pub fn new(base: &tableaux::Partition, window: PeriodicTableau) -> Result<Self, SeriesError> {
        let m = window.n();
        if extended_shape(base, m)? != *window.shape() {
            return Err(LimitsError::NotExtended(window.shape().to_string()).into());
        }
        let mut t = Self { base: base.clone(), window };
        while let Some(smaller) = t.shrink() {
            t = smaller;
        }
        Ok(t)
    }

    fn shrink(&self) -> Option<Self> {
        let m = self.window.n();
        if m == 0 || m <= self.base.min_rank() {
            return None;
        }
        let last = Cell::new(1, m - self.base.size());
        if self.window.label(last) != PeriodicLabel::new(m, 0) {
            return None;
        }
        let shape = extended_shape(&self.base, m - 1).ok()?;
        Some(Self { base: self.base.clone(), window: truncate_last(&self.window, &shape) })
    }

    pub fn base(&self) -> &tableaux::Partition {
        &self.base
    }

    /// The minimal window, `rk(tau)`.
    pub fn rank(&self) -> usize {
        self.window.n()
    }

    pub fn window(&self) -> &PeriodicTableau {
        &self.window
    }

    pub fn filling(&self) -> Result<OmegaFilling, SeriesError> {
        Ok(OmegaFilling::new(&self.base, &self.window.filling())?)
    }

    pub fn inversions(&self) -> Vec<(Cell, Cell)> {
        inversions(&self.window)
    }

    pub fn inv(&self) -> usize {
        self.inversions().len()
    }
}

/// All of `APSYT(lambda; T)` with minimal window at most `m` and at most
/// `max_inv` inversions, in canonical form.
pub fn enumerate_apsyt_bounded(t: &OmegaFilling, max_inv: usize, m: usize) -> Result<Vec<AsymptoticTableau>, SeriesError> {
    let filling = t.at_rank(m)?;
    let mut out = Vec::new();
    for tau in tableaux::enumerate_psyt(&filling)? {
        if inversions(&tau).len() <= max_inv {
            out.push(AsymptoticTableau::new(t.base(), tau)?);
        }
    }
    out.sort();
    Ok(out)
}

fn qt_binomial(a: i64, b: i64) -> Scalar {
    &Scalar::one() - &Scalar::qt(a, b)
}

/// Left side: the product over `lambda^(rk T)`, the `(1-t)^rk [mu_T]_t!`
/// normalization and the product over `I(T)`, as an exact rational function.
pub fn lhs_function(t: &OmegaFilling) -> Result<Scalar, SeriesError> {
    let rk = rank_of(t);
    let f = t.at_rank(rk)?;
    let shift = rk as i64 - t.base().size() as i64;
    let mut acc = Scalar::one();
    for c in f.shape().cells() {
        acc = &acc * &qt_binomial(-(f.get(c) as i64), shift - c.content());
    }
    let mu = tableaux::stats(&f)?.mu;
    let one_minus_t = qt_binomial(0, 1);
    let mut den = composition_factorial(&mu);
    for _ in 0..rk {
        den = &den * &one_minus_t;
    }
    acc = &acc / &den;
    for (c1, c2) in tableaux::min_inversions(&f)? {
        let a = f.get(c2) as i64 - f.get(c1) as i64;
        let b = c2.content() - c1.content();
        acc = &acc * &(&qt_binomial(a, b) / &qt_binomial(a, b + 1));
    }
    Ok(acc)
}

pub fn lhs_series(t: &OmegaFilling, order: i64) -> Result<TLaurentSeries, SeriesError> {
    Ok(t_series_expand(&lhs_function(t)?, order))
}

/// `t^{inv} prod (1 - q^a t^{b-1}) / (1 - q^a t^{b+1})` for one tableau.
pub fn rhs_term(tau: &PeriodicTableau) -> Result<Scalar, SeriesError> {
    let f = tau.filling();
    let inv = inversions(tau);
    let mut acc = Scalar::t_pow(inv.len() as i64);
    for (c1, c2) in inv {
        let a = f.get(c2) as i64 - f.get(c1) as i64;
        let b = c2.content() - c1.content();
        let den = qt_binomial(a, b + 1);
        if den.is_zero() {
            return Err(SeriesError::PoleInTerm { tableau: tau.to_string() });
        }
        acc = &acc * &(&qt_binomial(a, b - 1) / &den);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Right side through `t^order`, summed window by window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsSum {
    pub series: TLaurentSeries,
    /// Largest window that contributed a term nonzero through `order`.
    pub window: usize,
    /// Window whose new tableaux all vanish through `order`.
    pub certified_at: usize,
    pub tableaux: usize,
}

pub const DEFAULT_WINDOW_CAP: usize = 40;

/// Sums the right side, adding at each window `m` the tableaux whose minimal
/// window is exactly `m`. Stops once every new tableau of a window vanishes
/// through `order`; tableaux already seen are checked to keep their
/// inversion set when the window grows.
pub fn rhs_series(t: &OmegaFilling, order: i64, cap: usize) -> Result<RhsSum, SeriesError> {
    let base = t.base();
    let start = rank_of(t).max(base.min_rank());
    let mut series = TLaurentSeries::zero(order);
    let mut window = start;
    let mut count = 0;
    for m in start..=cap {
        let all = tableaux::enumerate_psyt(&t.at_rank(m)?)?;
        let last = Cell::new(1, m - base.size());
        let (old, new): (Vec<_>, Vec<_>) =
            all.into_iter().partition(|tau| m > start && tau.label(last) == PeriodicLabel::new(m, 0));
        if m > start {
            let shape = extended_shape(base, m - 1)?;
            for tau in &old {
                if inversions(tau) != inversions(&truncate_last(tau, &shape)) {
                    return Err(SeriesError::TailInversion { tableau: tau.to_string() });
                }
            }
        }
        let terms: Vec<Result<TLaurentSeries, SeriesError>> =
            new.par_iter().map(|tau| Ok(t_series_expand(&rhs_term(tau)?, order))).collect();
        let mut contributed = false;
        for term in terms {
            let term = term?;
            if !term.is_zero() {
                contributed = true;
                series = series.add(&term);
            }
        }
        count += new.len();
        if contributed || m == start {
            window = m;
        } else {
            return Ok(RhsSum { series, window, certified_at: m, tableaux: count });
        }
    }
    Err(SeriesError::Inconclusive { cap, order })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub filling: OmegaFilling,
    pub order: i64,
    /// Exponent of the first listed coefficient.
    pub lowest: i64,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub verdict: bool,
    pub window: usize,
    pub certified_at: usize,
    pub tableaux: usize,
}

fn coefficient_strings(s: &TLaurentSeries, from: i64, order: i64) -> Vec<String> {
    (from..=order).map(|k| s.coeff(k).map(|c| c.to_string()).unwrap_or_default()).collect()
}

/// Compares both sides coefficientwise through `t^order`.
pub fn verify_identity(t: &OmegaFilling, order: i64, cap: usize) -> Result<IdentityReport, SeriesError> {
    let lhs = lhs_series(t, order)?;
    let rhs = rhs_series(t, order, cap)?;
    let verdict = lhs.agrees_through(&rhs.series, order);
    let lowest = lhs.valuation().min(rhs.series.valuation()).min(0);
    Ok(IdentityReport {
        filling: t.clone(),
        order,
        lowest,
        lhs: coefficient_strings(&lhs, lowest, order),
        rhs: coefficient_strings(&rhs.series, lowest, order),
        verdict,
        window: rhs.window,
        certified_at: rhs.certified_at,
        tableaux: rhs.tableaux,
    })
}

/// The filling `T` on `lambda^(m)` as an element of `Omega(lambda)`.
pub fn omega(base: &[usize], rows: Vec<Vec<u32>>) -> Result<OmegaFilling, SeriesError> {
    let base = tableaux::Partition::new(base.to_vec())?;
    Ok(OmegaFilling::new(&base, &Filling::from_rows(rows)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn one_row_lhs() {
        let t = omega(&[], vec![vec![1]]).unwrap();
        assert_eq!(lhs_function(&t).unwrap(), rf("(1-q^-1*t)/(1-t)"));
        let s = lhs_series(&t, 2).unwrap();
        assert_eq!(s.coeffs_from(0), vec![rf("1"), rf("1-1/q"), rf("1-1/q")]);
        assert_eq!(lhs_function(&omega(&[], vec![vec![0]]).unwrap()).unwrap(), Scalar::one());
    }

    #[test]
    fn one_row_tableaux() {
        let t = omega(&[], vec![vec![1]]).unwrap();
        let taus = enumerate_apsyt_bounded(&t, 10, 3).unwrap();
        let mut invs: Vec<usize> = taus.iter().map(|a| a.inv()).collect();
        invs.sort();
        assert_eq!(invs, vec![0, 1, 2]);
        for a in &taus {
            assert_eq!(a.rank(), a.inv() + 1);
        }
        let zero = omega(&[], vec![vec![0, 0]]).unwrap();
        let only = enumerate_apsyt_bounded(&zero, 10, 4).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].inv(), 0);
    }

    #[test]
    fn one_row_terms() {
        // term k: t^k prod_{j=1}^{k} (1 - q^-1 t^{j-1}) / (1 - q^-1 t^{j+1})
        let t = omega(&[], vec![vec![1]]).unwrap();
        for a in enumerate_apsyt_bounded(&t, 4, 5).unwrap() {
            let k = a.inv() as i64;
            let mut expect = Scalar::t_pow(k);
            for j in 1..=k {
                expect = &expect * &(&qt_binomial(-1, j - 1) / &qt_binomial(-1, j + 1));
            }
            assert_eq!(rhs_term(a.window()).unwrap(), expect);
        }
    }

    #[test]
    fn identities_small() {
        let t = omega(&[], vec![vec![1]]).unwrap();
        let r = verify_identity(&t, 6, DEFAULT_WINDOW_CAP).unwrap();
        assert!(r.verdict, "{r:?}");
        let zero = omega(&[], vec![vec![0]]).unwrap();
        assert!(verify_identity(&zero, 5, DEFAULT_WINDOW_CAP).unwrap().verdict);
        let one = omega(&[1], vec![vec![1], vec![0]]).unwrap();
        let r = verify_identity(&one, 4, DEFAULT_WINDOW_CAP).unwrap();
        assert!(r.verdict);
        // a pole at t = 0 on both sides
        assert_eq!(r.lowest, -1);
    }
}
