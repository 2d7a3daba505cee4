use std::fmt;

use super::poly::PolynomialQT;
use super::ratfun::RationalFunctionQT;

/// A Laurent series in `t` over `Q(q)`, known exactly up to and including
/// `t^order`.
///
/// `coeffs[k]` is the coefficient of `t^(valuation + k)`. The leading stored
/// coefficient is nonzero unless the series is zero through `order`, in which
/// case `valuation = order + 1` and nothing is stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TLaurentSeries {
    valuation: i64,
    order: i64,
    coeffs: Vec<RationalFunctionQT>,
}

impl TLaurentSeries {
    pub fn zero(order: i64) -> Self {
        Self { valuation: order + 1, order, coeffs: Vec::new() }
    }

    pub fn one(order: i64) -> Self {
        Self::from_coeffs(0, order, vec![RationalFunctionQT::one()])
    }

    /// Builds a series from coefficients starting at `t^valuation`; coefficients
    /// beyond `order` are dropped and missing ones are zero.
    pub fn from_coeffs(valuation: i64, order: i64, mut coeffs: Vec<RationalFunctionQT>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.is_t_free()), "series coefficients must not contain t");
        let keep = (order - valuation + 1).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = Self { valuation, order, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.valuation = self.order + 1;
                self.coeffs.clear();
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`; `None` past the truncation order.
    pub fn coeff(&self, k: i64) -> Option<RationalFunctionQT> {
        if k > self.order {
            return None;
        }
        if k < self.valuation {
            return Some(RationalFunctionQT::zero());
        }
        Some(self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_default())
    }

    /// Coefficients of `t^from ..= t^order`.
    pub fn coeffs_from(&self, from: i64) -> Vec<RationalFunctionQT> {
        (from..=self.order).map(|k| self.coeff(k).unwrap()).collect()
    }

    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot raise the truncation order");
        Self::from_coeffs(self.valuation, order, self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let lo = self.valuation.min(other.valuation);
        if lo > order {
            return Self::zero(order);
        }
        let coeffs = (lo..=order)
            .map(|k| self.coeff(k).unwrap() + other.coeff(k).unwrap())
            .collect();
        Self::from_coeffs(lo, order, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Known range of the product: errors enter at order + other valuation.
        let order = match (self.is_zero(), other.is_zero()) {
            (true, true) => self.order + other.order,
            (true, false) => self.order + other.valuation,
            (false, true) => other.order + self.valuation,
            (false, false) => (self.order + other.valuation).min(other.order + self.valuation),
        };
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let val = self.valuation + other.valuation;
        let len = (order - val + 1).max(0) as usize;
        let mut coeffs = vec![RationalFunctionQT::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Self::from_coeffs(val, order, coeffs)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { valuation: self.valuation + k, order: self.order + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplies every coefficient by a `t`-free scalar.
    pub fn scale(&self, c: &RationalFunctionQT) -> Self {
        assert!(c.is_t_free());
        Self::from_coeffs(self.valuation, self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Coefficientwise equality for all powers up to `n`.
    pub fn agrees_through(&self, other: &Self, n: i64) -> bool {
        assert!(n <= self.order && n <= other.order, "comparison beyond known order");
        let lo = self.valuation.min(other.valuation);
        (lo..=n).all(|k| self.coeff(k) == other.coeff(k))
    }
}

/// Expands `f` as a Laurent series in `t` through `t^order`.
///
/// After pulling the largest power of `t` out of numerator and denominator the
/// denominator has a nonzero constant term in `Q[q]`, which is a unit of
/// `Q(q)[[t]]`; every element of `Q(q,t)` is therefore expandable.
pub fn t_series_expand(f: &RationalFunctionQT, order: i64) -> TLaurentSeries {
    if f.is_zero() {
        return TLaurentSeries::zero(order);
    }
    let (num, den) = (f.numer(), f.denom());
    let vn = num.t_valuation();
    let vd = den.t_valuation();
    let num = num.unshift(0, vn);
    let den = den.unshift(0, vd);
    let val = vn as i64 - vd as i64;
    let len = (order - val + 1).max(0) as usize;
    let d0 = den.t_coeff(0);
    // c_k = e_k / d0^(k+1) with e_k = a_k d0^k - sum_{j>=1} d_j e_{k-j} d0^(j-1)
    let mut d0_pows: Vec<PolynomialQT> = vec![PolynomialQT::one()];
    let mut e: Vec<PolynomialQT> = Vec::with_capacity(len);
    let mut coeffs = Vec::with_capacity(len);
    for k in 0..len {
        while d0_pows.len() <= k + 1 {
            let next = d0_pows.last().unwrap().mul(&d0);
            d0_pows.push(next);
        }
        let mut ek = num.t_coeff(k).mul(&d0_pows[k]);
        for j in 1..=k {
            let dj = den.t_coeff(j);
            if dj.is_zero() || e[k - j].is_zero() {
                continue;
            }
            ek = ek.sub(&dj.mul(&e[k - j]).mul(&d0_pows[j - 1]));
        }
        coeffs.push(
            RationalFunctionQT::new(ek.clone(), d0_pows[k + 1].clone()).expect("d0 is nonzero"),
        );
        e.push(ek);
    }
    TLaurentSeries::from_coeffs(val, order, coeffs)
}

impl fmt::Display for TLaurentSeries {
    /// `t^v*((c0) + (c1)*t + (c2)*t^2 + ...)`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "t^{}*(", self.valuation)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        write!(f, ")")
    }
}
