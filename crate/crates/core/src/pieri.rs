//! Expansion of `e_r[X_1 + .. + X_n] P_T` in the `P_S` basis: the closed
//! formula, a linear-algebra oracle, and the stable coefficients.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{t_factorial, Scalar};
use crate::daha::{DahaModule, VElement, VKey};
use crate::limits::{LimitsError, OmegaFilling, Tower};
use crate::linalg::Echelon;
use crate::spherical::{expansion_coefficient, k_coeff, normalizer_factor, p_formula, SphericalError};
use crate::tableaux::{enumerate_fillings, enumerate_psyt, inversions, psi, Filling, FillingKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PieriError {
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error("r = {r} must lie in 1..={n}")]
    BadDegree { r: usize, n: usize },
    #[error("{target} is not obtained from {source_filling} by adding {r} ones")]
    NotCandidate { target: String, source_filling: String, r: usize },
    #[error("{0} does not match the module shape")]
    ShapeMismatch(String),
    #[error("e_{r} P_T for T = {filling} is not in the span of the P_S")]
    Residual { filling: String, r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieriEntry {
    pub source: Filling,
    pub target: Filling,
    pub r: usize,
    pub n: usize,
    pub coefficient: Scalar,
}

/// Every RSSYT obtained by adding one to `r` distinct cells of `filling`.
pub fn candidates(filling: &Filling, r: usize) -> Vec<Filling> {
    let cells = filling.shape().cells();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(cells: &[crate::tableaux::Cell], start: usize, r: usize, chosen: &mut Vec<usize>, base: &Filling, out: &mut Vec<Filling>) {
        if chosen.len() == r {
            let mut s = base.clone();
            for &k in chosen.iter() {
                s.set(cells[k], base.get(cells[k]) + 1);
            }
            if s.is_rssyt() {
                out.push(s);
            }
            return;
        }
        for k in start..cells.len() {
            chosen.push(k);
            rec(cells, k + 1, r, chosen, base, out);
            chosen.pop();
        }
    }
    if r >= 1 {
        rec(&cells, 0, r, &mut chosen, filling, &mut out);
    }
    out.sort();
    out
}

/// `e_r(1, t, .., t^{n-1})`.
pub fn e_r_principal(r: usize, n: usize) -> Scalar {
    // coefficient extraction from prod_i (1 + z t^i), one power of z at a time
    let mut e = vec![Scalar::one()];
    for i in 0..n {
        let ti = Scalar::t_pow(i as i64);
        let mut next = e.clone();
        next.push(Scalar::zero());
        for k in 0..e.len() {
            next[k + 1] = &next[k + 1] + &(&e[k] * &ti);
        }
        e = next;
    }
    e.get(r).cloned().unwrap_or_else(Scalar::zero)
}

/// `[n choose r]_t`.
pub fn gaussian_binomial(n: usize, r: usize) -> Scalar {
    if r > n {
        return Scalar::zero();
    }
    &t_factorial(n) / &(&t_factorial(r) * &t_factorial(n - r))
}

fn check_degree(filling: &Filling, r: usize) -> Result<usize, PieriError> {
    let n = filling.shape().size();
    if r == 0 || r > n {
        return Err(PieriError::BadDegree { r, n });
    }
    Ok(n)
}

/// `d^{(r)}_{S,T}` from the sum over `tau in PSYT(T)` with `Psi^r(tau)` of
/// filling `S`.
pub fn coeff_formula(target: &Filling, source: &Filling, r: usize) -> Result<Scalar, PieriError> {
    let n = check_degree(source, r)?;
    if !candidates(source, r).contains(target) {
        return Err(PieriError::NotCandidate { target: target.to_string(), source_filling: source.to_string(), r });
    }
    let taus = enumerate_psyt(source).map_err(SphericalError::from)?;
    let terms: Vec<Option<Scalar>> = taus
        .par_iter()
        .map(|tau| {
            let mut moved = tau.clone();
            for _ in 0..r {
                moved = psi(&moved);
            }
            if moved.filling() != *target {
                return None;
            }
            let shift: i64 = (1..=r).map(|i| tau.content_of(i)).sum();
            let mut c = &Scalar::t_pow(shift) * &expansion_coefficient(tau);
            for pair in inversions(&moved) {
                c = &c / &normalizer_factor(target, &pair);
            }
            Some(c)
        })
        .collect();
    let sum = terms.into_iter().flatten().fold(Scalar::zero(), |acc, c| &acc + &c);
    // e_r(1, .., t^{n-1}) already carries the factor t^{C(r,2)}
    let norm = &e_r_principal(r, n) * &k_coeff(target)?;
    Ok(&sum * &norm)
}

/// `e_r P_T` solved against all `P_S` of the target degree; the residual
/// must vanish. Returns the nonzero coefficients in `S` order.
pub fn bruteforce_expansion(m: &DahaModule, source: &Filling, r: usize) -> Result<Vec<(Filling, Scalar)>, PieriError> {
    check_degree(source, r)?;
    if source.shape() != m.shape() {
        return Err(PieriError::ShapeMismatch(source.to_string()));
    }
    let lhs: VElement = m.act_e(r, &p_formula(m, source)?.element);
    let targets = enumerate_fillings(m.shape(), source.degree() + r as u32, FillingKind::Rssyt);
    let mut basis: Echelon<VKey> = Echelon::new();
    for s in &targets {
        let independent = basis.insert(&p_formula(m, s)?.element);
        debug_assert!(independent, "P_S are linearly independent");
    }
    let coords = basis
        .express(&lhs)
        .ok_or_else(|| PieriError::Residual { filling: source.to_string(), r })?;
    Ok(targets.into_iter().zip(coords).filter(|(_, c)| !c.is_zero()).collect())
}

/// One coefficient read off the oracle expansion.
pub fn coeff_bruteforce(m: &DahaModule, target: &Filling, source: &Filling, r: usize) -> Result<Scalar, PieriError> {
    Ok(bruteforce_expansion(m, source, r)?
        .into_iter()
        .find(|(s, _)| s == target)
        .map_or_else(Scalar::zero, |(_, c)| c))
}

/// The closed-formula table over all candidates.
pub fn pieri_table(source: &Filling, r: usize) -> Result<Vec<PieriEntry>, PieriError> {
    let n = check_degree(source, r)?;
    candidates(source, r)
        .into_iter()
        .map(|target| {
            let coefficient = coeff_formula(&target, source, r)?;
            Ok(PieriEntry { source: source.clone(), target, r, n, coefficient })
        })
        .collect()
}

/// Outcome of a formula-against-oracle comparison at one rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieriCheck {
    pub entries: Vec<PieriEntry>,
    pub formula_matches: bool,
    pub support_in_candidates: bool,
}

pub fn compare_with_oracle(m: &DahaModule, source: &Filling, r: usize) -> Result<PieriCheck, PieriError> {
    let entries = pieri_table(source, r)?;
    let oracle = bruteforce_expansion(m, source, r)?;
    let cands: Vec<&Filling> = entries.iter().map(|e| &e.target).collect();
    let support_in_candidates = oracle.iter().all(|(s, _)| cands.contains(&s));
    let formula_matches = entries.iter().all(|e| {
        let o = oracle.iter().find(|(s, _)| *s == e.target).map_or_else(Scalar::zero, |(_, c)| c.clone());
        o == e.coefficient
    });
    Ok(PieriCheck { entries, formula_matches, support_in_candidates })
}

/// Stable coefficient at rank `rk(T) + r`, with the comparison one rank up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableCoeff {
    pub value: Scalar,
    pub rank: usize,
    pub stable: bool,
}

pub fn stable_coeff(target: &OmegaFilling, source: &OmegaFilling, r: usize) -> Result<StableCoeff, PieriError> {
    let rank = source.rank() + r;
    let at = |n: usize| -> Result<Scalar, PieriError> {
        let (s, t) = (target.at_rank(n)?, source.at_rank(n)?);
        if candidates(&t, r).contains(&s) {
            coeff_formula(&s, &t, r)
        } else {
            Ok(Scalar::zero())
        }
    };
    let value = at(rank)?;
    let stable = at(rank + 1)? == value;
    Ok(StableCoeff { value, rank, stable })
}

/// Stable targets of `e_r` on `T`, as elements of `Omega(lambda)`.
pub fn stable_candidates(source: &OmegaFilling, r: usize) -> Result<Vec<OmegaFilling>, PieriError> {
    let t = source.at_rank(source.rank() + r)?;
    let mut out = Vec::new();
    for s in candidates(&t, r) {
        out.push(OmegaFilling::new(source.base(), &s)?);
    }
    Ok(out)
}

/// Formula against oracle for every RSSYT source of the given degree on
/// `lambda^(n)`; returns the number of checked sources and the failures.
pub fn sweep(tower: &Tower, n: usize, degree: u32, r: usize) -> Result<(usize, Vec<String>), PieriError> {
    let m = tower.at(n)?;
    let mut failures = Vec::new();
    let sources = enumerate_fillings(m.shape(), degree, FillingKind::Rssyt);
    for t in &sources {
        let check = compare_with_oracle(&m, t, r)?;
        if !check.formula_matches || !check.support_in_candidates {
            failures.push(format!("n={n} r={r} T={t}"));
        }
    }
    Ok((sources.len(), failures))
}
