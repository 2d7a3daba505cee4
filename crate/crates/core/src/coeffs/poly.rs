//! Integer polynomials in `q` and `t`.
//!
//! Storage is dense: `rows[j][i]` is the coefficient of `q^i t^j`. Both
//! levels are trimmed so the zero polynomial is the empty vector and no row
//! ends in a zero coefficient. GCDs run on the ring viewed as `Z[q][t]`
//! with a primitive remainder sequence in `t` and the same algorithm one
//! level down for the contents in `Z[q]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate integer polynomials in `q`, lowest degree first.
pub(crate) mod upoly {
    use super::*;

    pub type UPoly = Vec<BigInt>;

    pub fn trim(a: &mut UPoly) {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }

    pub fn add(a: &[BigInt], b: &[BigInt]) -> UPoly {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, s) in out.iter_mut().zip(short) {
            *o += s;
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigInt], b: &[BigInt]) -> UPoly {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), BigInt::zero());
        }
        for (o, s) in out.iter_mut().zip(b) {
            *o -= s;
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[BigInt], c: &BigInt) -> UPoly {
        if c.is_zero() {
            return Vec::new();
        }
        a.iter().map(|x| x * c).collect()
    }

    pub fn content(a: &[BigInt]) -> BigInt {
        let mut g = BigInt::zero();
        for c in a {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar(a: &[BigInt], c: &BigInt) -> UPoly {
        if c.is_one() {
            return a.to_vec();
        }
        a.iter().map(|x| x / c).collect()
    }

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPoly> {
        assert!(!b.is_empty(), "division by the zero polynomial");
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        if b.len() == 1 {
            let c = &b[0];
            let mut out = Vec::with_capacity(a.len());
            for x in a {
                let (quo, rem) = x.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                out.push(quo);
            }
            return Some(out);
        }
        let mut rem = a.to_vec();
        let db = b.len() - 1;
        let lb = &b[db];
        let mut quo = vec![BigInt::zero(); a.len() - db];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let (c, r) = rem[dr].div_rem(lb);
            if !r.is_zero() {
                return None;
            }
            let shift = dr - db;
            for (j, y) in b.iter().enumerate() {
                rem[shift + j] -= &c * y;
            }
            quo[shift] = c;
            trim(&mut rem);
        }
        if rem.is_empty() {
            trim(&mut quo);
            Some(quo)
        } else {
            None
        }
    }

    fn prem(a: &[BigInt], b: &[BigInt]) -> UPoly {
        let db = b.len() - 1;
        let lb = &b[db];
        let mut r = a.to_vec();
        while r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for x in r.iter_mut() {
                *x *= lb;
            }
            let shift = dr - db;
            for (j, y) in b.iter().enumerate() {
                r[shift + j] -= &lr * y;
            }
            trim(&mut r);
        }
        r
    }

    pub fn primitive(a: &[BigInt]) -> UPoly {
        let c = content(a);
        if c.is_zero() {
            return Vec::new();
        }
        let mut p = div_scalar(a, &c);
        if p.last().is_some_and(|x| x.is_negative()) {
            p.iter_mut().for_each(|x| *x = -&*x);
        }
        p
    }

    pub fn norm(a: &[BigInt]) -> BigInt {
        a.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
        a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Digits of `v` in base `xi` with the symmetric remainder range.
    pub fn xi_adic(mut v: BigInt, xi: &BigInt) -> UPoly {
        let mut out = Vec::new();
        while !v.is_zero() {
            let mut d = v.mod_floor(xi);
            if &d * 2 > *xi {
                d -= xi;
            }
            v = (v - &d) / xi;
            out.push(d);
        }
        out
    }

    /// Starting evaluation point for the heuristic gcd; large enough that a
    /// reconstructed common divisor is the greatest one.
    pub fn heuristic_point(na: &BigInt, nb: &BigInt) -> BigInt {
        na.min(nb) * 2 + 29
    }

    pub fn grow_point(xi: &BigInt) -> BigInt {
        xi * 73794 / 27011
    }

    fn gcd_heuristic(x: &[BigInt], y: &[BigInt]) -> Option<UPoly> {
        let mut xi = heuristic_point(&norm(x), &norm(y));
        for _ in 0..6 {
            let g = eval(x, &xi).gcd(&eval(y, &xi));
            if !g.is_zero() {
                let cand = primitive(&xi_adic(g, &xi));
                if !cand.is_empty() && div_exact(x, &cand).is_some() && div_exact(y, &cand).is_some() {
                    return Some(cand);
                }
            }
            xi = grow_point(&xi);
        }
        None
    }

    /// GCD with positive leading coefficient.
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
        if a.is_empty() {
            return normalize_sign(b.to_vec());
        }
        if b.is_empty() {
            return normalize_sign(a.to_vec());
        }
        let c = content(a).gcd(&content(b));
        if a.len() == 1 || b.len() == 1 {
            return vec![c];
        }
        let (mut x, mut y) = (primitive(a), primitive(b));
        if let Some(g) = gcd_heuristic(&x, &y) {
            return scale(&g, &c);
        }
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        loop {
            if y.len() == 1 {
                return vec![c];
            }
            let r = prem(&x, &y);
            if r.is_empty() {
                return scale(&y, &c);
            }
            x = y;
            y = primitive(&r);
        }
    }

    pub fn normalize_sign(mut a: UPoly) -> UPoly {
        if a.last().is_some_and(|x| x.is_negative()) {
            a.iter_mut().for_each(|x| *x = -&*x);
        }
        a
    }
}

use upoly::UPoly;

/// A polynomial in `q` and `t` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolynomialQT {
    rows: Vec<UPoly>,
}

impl PolynomialQT {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, q_exp: u32, t_exp: u32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut row = vec![BigInt::zero(); q_exp as usize + 1];
        row[q_exp as usize] = c;
        let mut rows = vec![Vec::new(); t_exp as usize + 1];
        rows[t_exp as usize] = row;
        Self { rows }
    }

    /// Builds a polynomial from `((q_exp, t_exp), coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), C)>,
        C: Into<BigInt>,
    {
        let mut rows: Vec<UPoly> = Vec::new();
        for ((qe, te), c) in terms {
            let (qe, te) = (qe as usize, te as usize);
            if rows.len() <= te {
                rows.resize(te + 1, Vec::new());
            }
            let row = &mut rows[te];
            if row.len() <= qe {
                row.resize(qe + 1, BigInt::zero());
            }
            row[qe] += c.into();
        }
        Self::from_rows(rows)
    }

    pub(crate) fn from_rows(mut rows: Vec<UPoly>) -> Self {
        for r in rows.iter_mut() {
            upoly::trim(r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Self { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].len() == 1 && self.rows[0][0].is_one()
    }

    /// The constant value, if the polynomial has no `q` or `t`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.rows.as_slice() {
            [] => Some(BigInt::zero()),
            [r] if r.len() == 1 => Some(r[0].clone()),
            _ => None,
        }
    }

    /// Degree in `t`, `None` for zero.
    pub fn deg_t(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Degree in `q`, `None` for zero.
    pub fn deg_q(&self) -> Option<usize> {
        self.rows.iter().map(|r| r.len()).max().and_then(|l| l.checked_sub(1))
    }

    pub fn has_t(&self) -> bool {
        self.rows.len() > 1
    }

    /// Largest `k` with `t^k` dividing `self`; 0 for zero.
    pub fn t_valuation(&self) -> usize {
        self.rows.iter().position(|r| !r.is_empty()).unwrap_or(0)
    }

    /// Largest `k` with `q^k` dividing `self`; 0 for zero.
    pub fn q_valuation(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().position(|c| !c.is_zero()).unwrap())
            .min()
            .unwrap_or(0)
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.rows.iter().flatten().filter(|c| !c.is_zero()).count()
    }

    /// Nonzero terms in canonical order: `q` exponent, then `t` exponent, ascending.
    pub fn terms(&self) -> Vec<((u32, u32), BigInt)> {
        let mut out: Vec<((u32, u32), BigInt)> = Vec::with_capacity(self.num_terms());
        for (te, row) in self.rows.iter().enumerate() {
            for (qe, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push(((qe as u32, te as u32), c.clone()));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn coeff(&self, q_exp: u32, t_exp: u32) -> BigInt {
        self.rows
            .get(t_exp as usize)
            .and_then(|r| r.get(q_exp as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of the largest term: highest `t` power, then highest `q` power.
    pub fn leading_coeff(&self) -> BigInt {
        self.rows
            .last()
            .and_then(|r| r.last())
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of `t^j`, as a polynomial in `q` alone.
    pub fn t_coeff(&self, j: usize) -> PolynomialQT {
        match self.rows.get(j) {
            Some(r) if !r.is_empty() => Self { rows: vec![r.clone()] },
            _ => Self::zero(),
        }
    }

    /// Gcd of all integer coefficients (non-negative).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for r in &self.rows {
            g = g.gcd(&upoly::content(r));
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { rows: self.rows.iter().map(|r| upoly::scale(r, c)).collect() }
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self { rows: self.rows.iter().map(|r| upoly::div_scalar(r, c)).collect() }
    }

    /// Multiplies by `q^a t^b`.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); b];
        for r in &self.rows {
            if r.is_empty() {
                rows.push(Vec::new());
            } else {
                let mut nr = vec![BigInt::zero(); a];
                nr.extend(r.iter().cloned());
                rows.push(nr);
            }
        }
        Self { rows }
    }

    /// Divides by `q^a t^b`, which must divide `self`.
    pub fn unshift(&self, a: usize, b: usize) -> Self {
        let rows = self.rows[b.min(self.rows.len())..]
            .iter()
            .map(|r| if r.is_empty() { Vec::new() } else { r[a..].to_vec() })
            .collect();
        Self::from_rows(rows)
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.rows.len() >= other.rows.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut rows = long.rows.clone();
        for (r, s) in rows.iter_mut().zip(&short.rows) {
            if !s.is_empty() {
                *r = upoly::add(r, s);
            }
        }
        Self::from_rows(rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut rows = self.rows.clone();
        if rows.len() < other.rows.len() {
            rows.resize(other.rows.len(), Vec::new());
        }
        for (r, s) in rows.iter_mut().zip(&other.rows) {
            if !s.is_empty() {
                *r = upoly::sub(r, s);
            }
        }
        Self::from_rows(rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut rows: Vec<UPoly> = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if b.is_empty() {
                    continue;
                }
                let prod = upoly::mul(a, b);
                let slot = &mut rows[i + j];
                *slot = if slot.is_empty() { prod } else { upoly::add(slot, &prod) };
            }
        }
        Self::from_rows(rows)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = other.as_constant() {
            let mut rows = Vec::with_capacity(self.rows.len());
            for r in &self.rows {
                rows.push(upoly::div_exact(r, &[c.clone()])?);
            }
            return Some(Self { rows });
        }
        if other.rows.len() == 1 {
            let d = &other.rows[0];
            let mut rows = Vec::with_capacity(self.rows.len());
            for r in &self.rows {
                rows.push(upoly::div_exact(r, d)?);
            }
            return Some(Self::from_rows(rows));
        }
        let db = other.rows.len() - 1;
        if self.rows.len() <= db {
            return None;
        }
        let lb = &other.rows[db];
        let mut rem = self.rows.clone();
        let mut quo: Vec<UPoly> = vec![Vec::new(); self.rows.len() - db];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let c = upoly::div_exact(&rem[dr], lb)?;
            let shift = dr - db;
            for (j, y) in other.rows.iter().enumerate() {
                if !y.is_empty() {
                    rem[shift + j] = upoly::sub(&rem[shift + j], &upoly::mul(&c, y));
                }
            }
            quo[shift] = c;
            while rem.last().is_some_and(|r| r.is_empty()) {
                rem.pop();
            }
        }
        if rem.is_empty() {
            Some(Self::from_rows(quo))
        } else {
            None
        }
    }

    /// Content with respect to `t`: the gcd in `Z[q]` of all `t`-coefficients.
    fn t_content(&self) -> UPoly {
        let mut g: UPoly = Vec::new();
        for r in &self.rows {
            if r.is_empty() {
                continue;
            }
            g = upoly::gcd(&g, r);
            if g.len() == 1 && g[0].is_one() {
                break;
            }
        }
        g
    }

    fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
        let db = b.len() - 1;
        let lb = &b[db];
        let mut r = a.to_vec();
        while r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for x in r.iter_mut() {
                if !x.is_empty() {
                    *x = upoly::mul(x, lb);
                }
            }
            let shift = dr - db;
            for (j, y) in b.iter().enumerate() {
                if !y.is_empty() {
                    r[shift + j] = upoly::sub(&r[shift + j], &upoly::mul(&lr, y));
                }
            }
            while r.last().is_some_and(|x| x.is_empty()) {
                r.pop();
            }
        }
        r
    }

    fn t_primitive(rows: &[UPoly]) -> Vec<UPoly> {
        let p = Self { rows: rows.to_vec() };
        let c = p.t_content();
        rows.iter()
            .map(|r| if r.is_empty() { Vec::new() } else { upoly::div_exact(r, &c).expect("content divides") })
            .collect()
    }

    /// Sign-normalized so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Greatest common divisor, with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone().normalize_sign();
        }
        if other.is_zero() {
            return self.clone().normalize_sign();
        }
        if self.is_one() || other.is_one() {
            return Self::one();
        }
        // Monomial factors split off exactly.
        let vq = self.q_valuation().min(other.q_valuation());
        let vt = self.t_valuation().min(other.t_valuation());
        let a = self.unshift(self.q_valuation(), self.t_valuation());
        let b = other.unshift(other.q_valuation(), other.t_valuation());
        let core = Self::gcd_no_monomial(&a, &b);
        core.shift(vq, vt)
    }

    fn gcd_no_monomial(a: &Self, b: &Self) -> Self {
        if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
            return Self::constant(x.gcd(&y));
        }
        if a.num_terms() == 1 || b.num_terms() == 1 {
            // After stripping monomials a single term is an integer constant.
            let c = a.integer_content().gcd(&b.integer_content());
            return Self::constant(c);
        }
        if a.rows.len() == 1 || b.rows.len() == 1 {
            // one side is free of q: fold it against the rows of the other
            let (single, other) = if b.rows.len() == 1 { (b, a) } else { (a, b) };
            let mut g = single.rows[0].clone();
            for r in other.rows.iter().filter(|r| !r.is_empty()) {
                g = upoly::gcd(&g, r);
                if g.len() == 1 && g[0].is_one() {
                    break;
                }
            }
            return Self { rows: vec![g] }.normalize_sign();
        }
        if let Some(g) = Self::gcd_heuristic(a, b) {
            return g;
        }
        let ca = a.t_content();
        let cb = b.t_content();
        let c = upoly::gcd(&ca, &cb);
        let content_part = Self { rows: vec![c] };
        if a.rows.len() == 1 || b.rows.len() == 1 {
            return content_part;
        }
        let mut x = Self::t_primitive(&a.rows);
        let mut y = Self::t_primitive(&b.rows);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        // Cheap check for the common case where one divides the other.
        let py = Self { rows: y.clone() };
        if (Self { rows: x.clone() }).div_exact(&py).is_some() {
            return py.mul(&content_part).normalize_sign();
        }
        loop {
            if y.len() == 1 {
                return content_part.normalize_sign();
            }
            let r = Self::prem(&x, &y);
            if r.is_empty() {
                return Self { rows: y }.mul(&content_part).normalize_sign();
            }
            x = y;
            y = Self::t_primitive(&r);
        }
    }

    /// Evaluates `q` at an integer, reconstructs a candidate from the
    /// univariate gcd in `t` and keeps it only if it divides both inputs.
    fn gcd_heuristic(a: &Self, b: &Self) -> Option<Self> {
        let (ca, cb) = (a.integer_content(), b.integer_content());
        let (x, y) = (a.div_scalar(&ca), b.div_scalar(&cb));
        let norm = |p: &Self| p.rows.iter().map(|r| upoly::norm(r)).max().unwrap_or_default();
        let mut xi = upoly::heuristic_point(&norm(&x), &norm(&y));
        for _ in 0..6 {
            let ex: UPoly = x.rows.iter().map(|r| upoly::eval(r, &xi)).collect();
            let ey: UPoly = y.rows.iter().map(|r| upoly::eval(r, &xi)).collect();
            let g = upoly::gcd(&ex, &ey);
            if !g.is_empty() {
                let cand = Self::from_rows(g.into_iter().map(|c| upoly::xi_adic(c, &xi)).collect());
                let cand = cand.div_scalar(&cand.integer_content());
                if !cand.is_zero() && x.div_exact(&cand).is_some() && y.div_exact(&cand).is_some() {
                    return Some(cand.scale(&ca.gcd(&cb)).normalize_sign());
                }
            }
            xi = upoly::grow_point(&xi);
        }
        None
    }

    /// Evaluates at rational `q`, `t`.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for row in self.rows.iter().rev() {
            let mut inner = BigRational::zero();
            for c in row.iter().rev() {
                inner = inner * q + BigRational::from_integer(c.clone());
            }
            acc = acc * t + inner;
        }
        acc
    }

    /// Total order on polynomials used for deterministic tie-breaking.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.terms().cmp(&other.terms())
    }
}

impl fmt::Display for PolynomialQT {
    /// Terms `c*q^a*t^b` joined by `+`, in canonical order; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((qe, te), c)) in self.terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*q^{qe}*t^{te}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
