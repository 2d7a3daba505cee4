//! The induced module `V_lambda` with basis `X^alpha (x) tau` and the action
//! of `X_i`, `T_i`, `pi_n`, `theta_i`, plus the weight basis `F_tau`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::coeffs::{PolynomialQT, Scalar};
use crate::hecke::{HeckeError, SeminormalElement, SeminormalModule};
use crate::linalg::SparseVec;
use crate::tableaux::{self, cover_compare, psi_inv, si_move, Filling, Partition, PeriodicTableau, TableauError};

/// Exponent vector of a monomial in `X_1 .. X_n`.
pub type Exponent = Vec<u32>;

/// Basis key `(alpha, k)` for `X^alpha (x) basis[k]`.
pub type VKey = (Exponent, usize);

/// Vector in `V_lambda`.
pub type VElement = SparseVec<VKey>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DahaError {
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("exponent vector has length {got}, rank is {n}")]
    RankMismatch { got: usize, n: usize },
    #[error("tableau {0} does not have the module's shape")]
    WrongShape(String),
    #[error("weight vector for {tableau} failed the theta-spectrum check at i = {i}")]
    Spectrum { tableau: String, i: usize },
}

/// `V_lambda` for `|lambda| = n`, with a cache of constructed `F_tau`.
#[derive(Debug)]
pub struct DahaModule {
    hecke: SeminormalModule,
    /// `t^{n-1} T_1^{-1} ... T_{n-1}^{-1}` on each basis tableau.
    pi_fin: Vec<SeminormalElement>,
    /// `t^{1-n} T_{n-1} ... T_1` on each basis tableau.
    pi_inv_fin: Vec<SeminormalElement>,
    weights: RwLock<HashMap<PeriodicTableau, Arc<VElement>>>,
}

fn add_into(out: &mut VElement, key: VKey, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&key) {
        Some(e) => {
            *e += &c;
            if e.is_zero() {
                out.remove(&key);
            }
        }
        None => {
            out.insert(key, c);
        }
    }
}

pub fn scale(v: &VElement, c: &Scalar) -> VElement {
    if c.is_zero() {
        return VElement::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

pub fn add(a: &VElement, b: &VElement) -> VElement {
    let mut out = a.clone();
    crate::linalg::axpy(&mut out, &Scalar::one(), b);
    out
}

pub fn sub(a: &VElement, b: &VElement) -> VElement {
    let mut out = a.clone();
    crate::linalg::axpy(&mut out, &-Scalar::one(), b);
    out
}

/// Largest total degree of a term, `None` for zero.
pub fn degree(v: &VElement) -> Option<u32> {
    v.keys().map(|(a, _)| a.iter().sum()).max()
}

impl DahaModule {
    pub fn new(shape: &Partition) -> Self {
        Self::from_hecke(SeminormalModule::new(shape))
    }

    pub(crate) fn from_hecke(hecke: SeminormalModule) -> Self {
        let n = hecke.n();
        let t = Scalar::t();
        let mut pi_fin = Vec::with_capacity(hecke.dim());
        let mut pi_inv_fin = Vec::with_capacity(hecke.dim());
        for k in 0..hecke.dim() {
            let mut u = hecke.basis_vector(k);
            for i in (1..n).rev() {
                u = hecke.act_t_inv(i, &u).unwrap();
            }
            pi_fin.push(u.into_iter().map(|(j, c)| (j, &c * &t.pow(n as i64 - 1).unwrap())).collect());
            let mut u = hecke.basis_vector(k);
            for i in 1..n {
                u = hecke.act_t(i, &u).unwrap();
            }
            pi_inv_fin.push(u.into_iter().map(|(j, c)| (j, &c * &t.pow(1 - n as i64).unwrap())).collect());
        }
        Self { hecke, pi_fin, pi_inv_fin, weights: RwLock::new(HashMap::new()) }
    }

    pub fn hecke(&self) -> &SeminormalModule {
        &self.hecke
    }

    pub fn shape(&self) -> &Partition {
        self.hecke.shape()
    }

    pub fn n(&self) -> usize {
        self.hecke.n()
    }

    /// `1 (x) tau` for a standard tableau.
    pub fn pure(&self, tau: &PeriodicTableau) -> Result<VElement, DahaError> {
        let k = self.hecke.index_of(tau).ok_or_else(|| DahaError::WrongShape(tau.to_string()))?;
        Ok(VElement::from([((vec![0; self.n()], k), Scalar::one())]))
    }

    pub fn basis_element(&self, alpha: Exponent, k: usize) -> VElement {
        VElement::from([((alpha, k), Scalar::one())])
    }

    /// Every `X^alpha (x) tau` with `|alpha| = d`.
    pub fn basis_of_degree(&self, d: u32) -> Vec<VKey> {
        let mut out = Vec::new();
        for alpha in compositions(d, self.n()) {
            for k in 0..self.hecke.dim() {
                out.push((alpha.clone(), k));
            }
        }
        out
    }

    pub fn act_x(&self, alpha: &[u32], v: &VElement) -> Result<VElement, DahaError> {
        if alpha.len() != self.n() {
            return Err(DahaError::RankMismatch { got: alpha.len(), n: self.n() });
        }
        Ok(v.iter()
            .map(|((a, k), c)| ((a.iter().zip(alpha).map(|(x, y)| x + y).collect(), *k), c.clone()))
            .collect())
    }

    /// `X_i` alone, `1 <= i <= n`.
    pub fn act_xi(&self, i: usize, v: &VElement) -> VElement {
        v.iter()
            .map(|((a, k), c)| {
                let mut a = a.clone();
                a[i - 1] += 1;
                ((a, *k), c.clone())
            })
            .collect()
    }

    /// `T_i (f (x) u) = s_i f (x) T_i u - (t-1) X_i (f - s_i f)/(X_i - X_{i+1}) (x) u`.
    pub fn act_t(&self, i: usize, v: &VElement) -> Result<VElement, DahaError> {
        if i == 0 || i >= self.n() {
            return Err(HeckeError::BadIndex { i, n: self.n() }.into());
        }
        let tm1 = Scalar::t() - Scalar::one();
        let mut out = VElement::new();
        for ((alpha, k), c) in v {
            let mut swapped = alpha.clone();
            swapped.swap(i - 1, i);
            for (j, x) in self.hecke.generator_column(i, *k, false) {
                add_into(&mut out, (swapped.clone(), *j), c * x);
            }
            let (a, b) = (alpha[i - 1], alpha[i]);
            if a == b {
                continue;
            }
            let (lo, hi, coeff) = if a > b { (b, a, -(c * &tm1)) } else { (a, b, c * &tm1) };
            for m in lo + 1..=hi {
                let mut gamma = alpha.clone();
                gamma[i - 1] = m;
                gamma[i] = lo + hi - m;
                add_into(&mut out, (gamma, *k), coeff.clone());
            }
        }
        Ok(out)
    }

    /// `T_i^{-1} = t^{-1}(T_i + t - 1)`.
    pub fn act_t_inv(&self, i: usize, v: &VElement) -> Result<VElement, DahaError> {
        let mut out = self.act_t(i, v)?;
        crate::linalg::axpy(&mut out, &(Scalar::t() - Scalar::one()), v);
        Ok(scale(&out, &Scalar::t_pow(-1)))
    }

    /// `tT_i^{-1} = T_i + t - 1`.
    pub fn act_s(&self, i: usize, v: &VElement) -> Result<VElement, DahaError> {
        let mut out = self.act_t(i, v)?;
        crate::linalg::axpy(&mut out, &(Scalar::t() - Scalar::one()), v);
        Ok(out)
    }

    /// `pi (X^alpha (x) u) = q^{alpha_n} X^{(alpha_n, alpha_1, ..)} (x) t^{n-1} T_1^{-1} .. T_{n-1}^{-1} u`.
    pub fn act_pi(&self, v: &VElement) -> VElement {
        let n = self.n();
        let mut out = VElement::new();
        for ((alpha, k), c) in v {
            let mut rot = Vec::with_capacity(n);
            rot.push(alpha[n - 1]);
            rot.extend_from_slice(&alpha[..n - 1]);
            let c = c * &Scalar::q_pow(alpha[n - 1] as i64);
            for (j, x) in &self.pi_fin[*k] {
                add_into(&mut out, (rot.clone(), *j), &c * x);
            }
        }
        out
    }

    /// `pi^{-1} (X^alpha (x) u) = q^{-alpha_1} X^{(alpha_2, .., alpha_n, alpha_1)} (x) t^{1-n} T_{n-1} .. T_1 u`.
    pub fn act_pi_inv(&self, v: &VElement) -> VElement {
        let mut out = VElement::new();
        for ((alpha, k), c) in v {
            let mut rot = alpha[1..].to_vec();
            rot.push(alpha[0]);
            let c = c * &Scalar::q_pow(-(alpha[0] as i64));
            for (j, x) in &self.pi_inv_fin[*k] {
                add_into(&mut out, (rot.clone(), *j), &c * x);
            }
        }
        out
    }

    /// `theta_1 = t^{1-n} pi T_{n-1} .. T_1`; unrolling
    /// `theta_{i+1} = t T_i^{-1} theta_i T_i^{-1}` gives
    /// `theta_i = t^{i-n} T_{i-1}^{-1} .. T_1^{-1} pi T_{n-1} .. T_i`.
    pub fn act_theta(&self, i: usize, v: &VElement) -> Result<VElement, DahaError> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(HeckeError::BadIndex { i, n }.into());
        }
        let mut cur = v.clone();
        for j in i..n {
            cur = self.act_t(j, &cur)?;
        }
        cur = self.act_pi(&cur);
        for j in 1..i {
            cur = self.act_t_inv(j, &cur)?;
        }
        Ok(scale(&cur, &Scalar::t_pow(i as i64 - n as i64)))
    }

    /// Multiplication by `sum_m c_m X^m`.
    pub fn act_polynomial(&self, poly: &[(Exponent, Scalar)], v: &VElement) -> VElement {
        let mut out = VElement::new();
        for (m, a) in poly {
            for ((alpha, k), c) in v {
                let key = (alpha.iter().zip(m).map(|(x, y)| x + y).collect(), *k);
                add_into(&mut out, key, a * c);
            }
        }
        out
    }

    /// Multiplication by `e_r(X_1, .., X_n)`.
    pub fn act_e(&self, r: usize, v: &VElement) -> VElement {
        self.act_polynomial(&elementary(r, self.n()), v)
    }

    /// Multiplication by `p_l(X_1, .., X_n)`.
    pub fn act_p(&self, l: u32, v: &VElement) -> VElement {
        self.act_polynomial(&power_sum(l, self.n()), v)
    }

    /// The weight vector `F_tau`, cached; not spectrum-checked.
    pub fn f_vector(&self, tau: &PeriodicTableau) -> Result<Arc<VElement>, DahaError> {
        if tau.shape() != self.shape() {
            return Err(DahaError::WrongShape(tau.to_string()));
        }
        if let Some(v) = self.weights.read().unwrap().get(tau) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.build_step(tau, false, &mut |s| self.f_vector(s))?);
        self.weights.write().unwrap().entry(tau.clone()).or_insert_with(|| v.clone());
        Ok(v)
    }

    /// `F_tau` with the full theta-spectrum certificate.
    pub fn build_f(&self, tau: &PeriodicTableau) -> Result<WeightVector, DahaError> {
        let v = self.f_vector(tau)?;
        self.check_spectrum(tau, &v)?;
        Ok(WeightVector { tableau: tau.clone(), element: (*v).clone() })
    }

    /// `F_tau` by an uncached recursion that descends along the last available
    /// `s_i` instead of the first; used to test path independence.
    pub fn f_vector_alternate(&self, tau: &PeriodicTableau) -> Result<VElement, DahaError> {
        self.build_step(tau, true, &mut |s| self.f_vector_alternate(s).map(Arc::new))
    }

    fn build_step(
        &self,
        tau: &PeriodicTableau,
        last: bool,
        rec: &mut dyn FnMut(&PeriodicTableau) -> Result<Arc<VElement>, DahaError>,
    ) -> Result<VElement, DahaError> {
        if tau.is_standard() {
            return self.pure(tau);
        }
        let n = tau.n();
        let mut candidates = (1..n).filter_map(|i| {
            let sigma = si_move(tau, i)?;
            cover_compare(&sigma, i).then_some((i, sigma))
        });
        let pick = if last { candidates.last() } else { candidates.next() };
        if let Some((i, sigma)) = pick {
            let f = rec(&sigma)?;
            let a = eigenvalue(&sigma, i);
            let b = eigenvalue(&sigma, i + 1);
            let shift = &(&(Scalar::t() - Scalar::one()) * &b) / &(&a - &b);
            let mut out = self.act_s(i, &f)?;
            crate::linalg::axpy(&mut out, &shift, &f);
            return Ok(out);
        }
        let sigma = psi_inv(tau)?;
        let f = rec(&sigma)?;
        let pulled = self.act_pi_inv(&f);
        Ok(scale(&self.act_xi(n, &pulled), &Scalar::q_pow(sigma.weight(1) as i64)))
    }

    /// Checks `theta_i F = q^{w(i)} t^{c(i)} F` for every `i`.
    pub fn check_spectrum(&self, tau: &PeriodicTableau, v: &VElement) -> Result<(), DahaError> {
        // the check is linear, and polynomial coefficients keep gcds small
        let v = &clear_denominators(v);
        for i in 1..=self.n() {
            let lhs = self.act_theta(i, v)?;
            if lhs != scale(v, &eigenvalue(tau, i)) {
                return Err(DahaError::Spectrum { tableau: tau.to_string(), i });
            }
        }
        Ok(())
    }

    /// Checks the defining relations on every basis vector of degree at most
    /// `degree`.
    pub fn relation_suite(&self, degree: u32) -> RelationReport {
        let n = self.n();
        let mut report = RelationReport::default();
        let t = Scalar::t();
        let q = Scalar::q();
        let mut basis = Vec::new();
        for d in 0..=degree {
            basis.extend(self.basis_of_degree(d));
        }
        for (alpha, k) in basis {
            let v = self.basis_element(alpha, k);
            let tt = |i: usize, w: &VElement| self.act_t(i, w).unwrap();
            let ti = |i: usize, w: &VElement| self.act_t_inv(i, w).unwrap();
            let th = |i: usize, w: &VElement| self.act_theta(i, w).unwrap();
            for i in 1..n {
                // T_i^2 = (1 - t) T_i + t
                let tv = tt(i, &v);
                let lhs = tt(i, &tv);
                let rhs = add(&scale(&tv, &(Scalar::one() - &t)), &scale(&v, &t));
                report.record("hecke quadratic", lhs == rhs);
                report.record("inverse generator", ti(i, &tv) == v);
                if i + 1 < n {
                    let l = tt(i, &tt(i + 1, &tv));
                    let r = tt(i + 1, &tt(i, &tt(i + 1, &v)));
                    report.record("braid", l == r);
                }
                for j in i + 2..n {
                    report.record("far commutation", tt(i, &tt(j, &v)) == tt(j, &tv));
                }
                // X_{i+1} = t T_i^{-1} X_i T_i^{-1}
                let lhs = self.act_xi(i + 1, &v);
                let rhs = scale(&ti(i, &self.act_xi(i, &ti(i, &v))), &t);
                report.record("X cross relation", lhs == rhs);
                for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                    report.record("T commutes with far X", tt(i, &self.act_xi(j, &v)) == self.act_xi(j, &tv));
                    report.record("T commutes with far theta", tt(i, &th(j, &v)) == th(j, &tv));
                }
                // theta_{i+1} = t T_i^{-1} theta_i T_i^{-1}
                let lhs = th(i + 1, &v);
                let rhs = scale(&ti(i, &th(i, &ti(i, &v))), &t);
                report.record("theta cross relation", lhs == rhs);
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    report.record("theta commute", th(i, &th(j, &v)) == th(j, &th(i, &v)));
                    report.record(
                        "X commute",
                        self.act_xi(i, &self.act_xi(j, &v)) == self.act_xi(j, &self.act_xi(i, &v)),
                    );
                }
            }
            let pv = self.act_pi(&v);
            for i in 1..n {
                report.record("pi shifts X", self.act_pi(&self.act_xi(i, &v)) == self.act_xi(i + 1, &pv));
            }
            report.record("pi wraps X", self.act_pi(&self.act_xi(n, &v)) == scale(&self.act_xi(1, &pv), &q));
            report.record("pi inverse", self.act_pi_inv(&pv) == v);
            // pi = t^{n-1} theta_1 T_1^{-1} .. T_{n-1}^{-1}
            let mut w = v.clone();
            for i in (1..n).rev() {
                w = ti(i, &w);
            }
            let rhs = scale(&th(1, &w), &Scalar::t_pow(n as i64 - 1));
            report.record("pi from theta", pv == rhs);
        }
        report
    }

    /// Checks that `F_{Top(T)}` has leading term `t^{-b_T} X^{nu(T)} (x) S(T)`
    /// and every other term lies strictly below it.
    pub fn triangularity(&self, filling: &Filling) -> Result<bool, DahaError> {
        let (_, top) = tableaux::min_top(filling)?;
        let stats = tableaux::stats(filling)?;
        let f = self.f_vector(&top)?;
        let nu = stats.nu.clone();
        let s_idx = self.hecke.index_of(&stats.standard).ok_or_else(|| DahaError::WrongShape(stats.standard.to_string()))?;
        let lead_key = (nu.clone(), s_idx);
        if f.get(&lead_key) != Some(&Scalar::t_pow(-stats.b)) {
            return Ok(false);
        }
        let nu_part = sorted_partition(&nu);
        for (alpha, k) in f.keys() {
            if (alpha, k) == (&nu, &s_idx) {
                continue;
            }
            let sorted = sorted_partition(alpha);
            let below = if sorted == nu_part { alpha != &nu } else { sorted.dominated_by(&nu_part) };
            if !below {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `F_tau` expressed as rows of the basis, for reports.
    pub fn describe(&self, v: &VElement) -> Vec<VTerm> {
        v.iter()
            .map(|((alpha, k), c)| VTerm {
                alpha: alpha.clone(),
                tableau: self.hecke.basis()[*k].index_rows(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// A multiple of `v` by a common denominator of its coefficients.
pub fn clear_denominators(v: &VElement) -> VElement {
    let mut d = PolynomialQT::one();
    for c in v.values() {
        let g = d.gcd(c.denom());
        d = d.mul(&c.denom().div_exact(&g).expect("gcd divides"));
    }
    v.iter()
        .map(|(k, c)| {
            let cofactor = d.div_exact(c.denom()).expect("common multiple");
            (k.clone(), Scalar::from_poly(c.numer().mul(&cofactor)))
        })
        .collect()
}

/// `q^{w_tau(i)} t^{c_tau(i)}`.
pub fn eigenvalue(tau: &PeriodicTableau, i: usize) -> Scalar {
    Scalar::qt(tau.weight(i) as i64, tau.content_of(i))
}

fn sorted_partition(alpha: &[u32]) -> Partition {
    let mut v: Vec<usize> = alpha.iter().filter(|&&a| a > 0).map(|&a| a as usize).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(v).expect("sorted positive parts")
}

/// All weak compositions of `d` into `n` parts, lexicographically descending.
pub fn compositions(d: u32, n: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        let n = cur.len();
        if k + 1 == n {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[k] = v;
            rec(k + 1, left - v, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Monomials of `e_r(X_1, .., X_n)`.
pub fn elementary(r: usize, n: usize) -> Vec<(Exponent, Scalar)> {
    compositions(r as u32, n)
        .into_iter()
        .filter(|a| a.iter().all(|&x| x <= 1))
        .map(|a| (a, Scalar::one()))
        .collect()
}

/// Monomials of `p_l(X_1, .., X_n)`.
pub fn power_sum(l: u32, n: usize) -> Vec<(Exponent, Scalar)> {
    (0..n)
        .map(|i| {
            let mut a = vec![0; n];
            a[i] = l;
            (a, Scalar::one())
        })
        .collect()
}

/// `F_tau` together with its tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub tableau: PeriodicTableau,
    pub element: VElement,
}

/// One term of a rendered `V` element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VTerm {
    pub alpha: Exponent,
    pub tableau: Vec<Vec<usize>>,
    pub coeff: String,
}

/// Pass and fail counts per relation family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: BTreeMap<String, (usize, usize)>,
}

impl RelationReport {
    fn record(&mut self, name: &str, ok: bool) {
        let e = self.checks.entry(name.to_string()).or_default();
        if ok {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|&(_, fail)| fail == 0)
    }
}
