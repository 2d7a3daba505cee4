//! The symmetrizing idempotent, symmetric vector-valued Macdonald
//! polynomials `P_T`, the Pieri normalizer `K_T` and the operators
//! `P_{0,l}`, `P_{l,0}` on the spherical subspace.

use serde::Serialize;

use crate::coeffs::{t_factorial, Scalar};
use crate::daha::{clear_denominators, scale, DahaError, DahaModule, VElement, VKey};
use crate::hecke::{inversion_count, permutations, reduced_word};
use crate::linalg::{axpy, express_in_family, Echelon};
use crate::tableaux::{self, Cell, Filling, PeriodicTableau};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SphericalError {
    #[error(transparent)]
    Daha(#[from] DahaError),
    #[error("{0} is not strictly decreasing down columns")]
    NotRssyt(String),
    #[error("the symmetrized span of U_T has dimension {0}, expected 1")]
    Dimension(usize),
}

impl From<tableaux::TableauError> for SphericalError {
    fn from(e: tableaux::TableauError) -> Self {
        SphericalError::Daha(e.into())
    }
}

/// `t^{C(n,2)} / [n]_t!`.
fn epsilon_prefactor(n: usize) -> Scalar {
    let c2 = (n * n.saturating_sub(1) / 2) as i64;
    &Scalar::t_pow(c2) / &t_factorial(n)
}

/// `epsilon = [n]_t!^{-1} sum_sigma t^{C(n,2) - l(sigma)} T_sigma`, evaluated
/// through the coset factorization
/// `sum_sigma u^{l(sigma)} T_sigma = R_2 R_3 .. R_n` with
/// `R_k = 1 + u T_{k-1} + u^2 T_{k-1} T_{k-2} + .. ` and `u = t^{-1}`.
pub fn epsilon(m: &DahaModule, v: &VElement) -> VElement {
    let n = m.n();
    let u = Scalar::t_pow(-1);
    let mut cur = v.clone();
    for k in (2..=n).rev() {
        // Horner form: v + u T_{k-1}(v + u T_{k-2}(.. (v + u T_1 v)))
        let mut acc = cur.clone();
        for j in 1..k {
            let mut next = scale(&m.act_t(j, &acc).unwrap(), &u);
            axpy(&mut next, &Scalar::one(), &cur);
            acc = next;
        }
        cur = acc;
    }
    scale(&cur, &epsilon_prefactor(n))
}

/// The same idempotent summed over all permutations with their
/// lexicographically first reduced words.
pub fn epsilon_direct(m: &DahaModule, v: &VElement) -> VElement {
    let n = m.n();
    let c2 = (n * n.saturating_sub(1) / 2) as i64;
    let mut out = VElement::new();
    for perm in permutations(n) {
        let word = reduced_word(&perm);
        let mut w = v.clone();
        for &i in word.iter().rev() {
            w = m.act_t(i, &w).unwrap();
        }
        axpy(&mut out, &Scalar::t_pow(c2 - inversion_count(&perm) as i64), &w);
    }
    scale(&out, &t_factorial(n).inv().unwrap())
}

/// `T_i v = v` for every `i`.
pub fn is_symmetric(m: &DahaModule, v: &VElement) -> bool {
    (1..m.n()).all(|i| m.act_t(i, v).unwrap() == *v)
}

/// Inversion factor `(q^a t^{c+1} - q^b t^d) / (q^a t^c - q^b t^d)` for a pair
/// `(c1, c2)` with values `a = T(c1)`, `b = T(c2)`.
fn expansion_factor(filling: &Filling, pair: &(Cell, Cell)) -> Scalar {
    let (c1, c2) = pair;
    let x = Scalar::qt(filling.get(*c1) as i64, c1.content());
    let y = Scalar::qt(filling.get(*c2) as i64, c2.content());
    &(&(&x * &Scalar::t()) - &y) / &(&x - &y)
}

/// `(q^a t^c - q^b t^{d+1}) / (q^a t^c - q^b t^d)`.
pub(crate) fn normalizer_factor(filling: &Filling, pair: &(Cell, Cell)) -> Scalar {
    let (c1, c2) = pair;
    let x = Scalar::qt(filling.get(*c1) as i64, c1.content());
    let y = Scalar::qt(filling.get(*c2) as i64, c2.content());
    &(&x - &(&y * &Scalar::t())) / &(&x - &y)
}

/// Coefficient of `F_tau` in `P_T`: the product of expansion factors over
/// the inversions of `tau`.
pub fn expansion_coefficient(tau: &PeriodicTableau) -> Scalar {
    let filling = tau.filling();
    tableaux::inversions(tau)
        .iter()
        .fold(Scalar::one(), |acc, p| &acc * &expansion_factor(&filling, p))
}

/// `P_T` written in the weight basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacdonaldP {
    pub filling: Filling,
    /// `(tau, coefficient of F_tau)` over `PSYT(lambda; T)`.
    pub expansion: Vec<(PeriodicTableau, Scalar)>,
    pub element: VElement,
}

fn require_rssyt(filling: &Filling) -> Result<(), SphericalError> {
    if filling.is_rssyt() {
        Ok(())
    } else {
        Err(SphericalError::NotRssyt(filling.to_string()))
    }
}

/// `P_T` from the explicit expansion over `PSYT(lambda; T)`.
pub fn p_formula(m: &DahaModule, filling: &Filling) -> Result<MacdonaldP, SphericalError> {
    require_rssyt(filling)?;
    let mut element = VElement::new();
    let mut expansion = Vec::new();
    for tau in tableaux::enumerate_psyt(filling)? {
        let c = expansion_coefficient(&tau);
        let f = m.f_vector(&tau)?;
        axpy(&mut element, &c, &f);
        expansion.push((tau, c));
    }
    Ok(MacdonaldP { filling: filling.clone(), expansion, element })
}

/// Dimension of `epsilon(U_T)` and, when it is a line, its generator
/// normalized to have `F_{Top(T)}`-coefficient 1.
pub fn p_projection(m: &DahaModule, filling: &Filling) -> Result<(usize, Option<MacdonaldP>), SphericalError> {
    let taus = tableaux::enumerate_psyt(filling)?;
    let (_, top) = tableaux::min_top(filling)?;
    let mut fs = Vec::with_capacity(taus.len());
    let mut images: Echelon<VKey> = Echelon::new();
    let mut generator = None;
    for tau in &taus {
        let f = m.f_vector(tau)?;
        // rescaling each F_tau leaves the span of the images unchanged
        let img = epsilon(m, &clear_denominators(&f));
        if images.insert(&img) && generator.is_none() {
            generator = Some(img);
        }
        fs.push(f);
    }
    let dim = images.rank();
    if dim != 1 {
        return Ok((dim, None));
    }
    let g = generator.expect("rank one has a generator");
    let refs: Vec<&VElement> = fs.iter().map(|f| f.as_ref()).collect();
    let coords = express_in_family(&refs, &g).expect("symmetrized vectors stay in U_T");
    let top_pos = taus.iter().position(|t| *t == top).unwrap();
    let norm = coords[top_pos].inv().map_err(|_| SphericalError::Dimension(0))?;
    let expansion = taus.iter().cloned().zip(coords.iter().map(|c| c * &norm)).collect();
    Ok((1, Some(MacdonaldP { filling: filling.clone(), expansion, element: scale(&g, &norm) })))
}

/// `[mu]_t! = prod_i [mu_i]_t!`.
pub fn composition_factorial(mu: &[usize]) -> Scalar {
    mu.iter().fold(Scalar::one(), |acc, &m| &acc * &t_factorial(m))
}

/// `K_T = [mu(T)]_t! / [n]_t! * prod over I(T)`.
pub fn k_coeff(filling: &Filling) -> Result<Scalar, SphericalError> {
    require_rssyt(filling)?;
    let stats = tableaux::stats(filling)?;
    let n = filling.shape().size();
    let mut k = &composition_factorial(&stats.mu) / &t_factorial(n);
    for pair in tableaux::min_inversions(filling)? {
        k = &k * &normalizer_factor(filling, &pair);
    }
    Ok(k)
}

/// `sum_{cells} q^{l T(cell)} t^{l c(cell)}`.
pub fn p0l_eigenvalue(filling: &Filling, l: u32) -> Scalar {
    let l = l as i64;
    filling
        .shape()
        .cells()
        .into_iter()
        .fold(Scalar::zero(), |acc, c| &acc + &Scalar::qt(l * filling.get(c) as i64, l * c.content()))
}

/// `sum_i theta_i^l` applied to `v`; equals `P_{0,l}` on symmetric vectors.
pub fn act_p0l(m: &DahaModule, l: u32, v: &VElement) -> VElement {
    let mut out = VElement::new();
    for i in 1..=m.n() {
        let mut w = v.clone();
        for _ in 0..l {
            w = m.act_theta(i, &w).unwrap();
        }
        axpy(&mut out, &Scalar::one(), &w);
    }
    out
}

/// `P_{0,l}` with the trailing idempotent kept.
pub fn act_p0l_projected(m: &DahaModule, l: u32, v: &VElement) -> VElement {
    epsilon(m, &act_p0l(m, l, v))
}

/// `P_{l,0} = q^l epsilon p_l(X)` on symmetric vectors.
pub fn act_pl0(m: &DahaModule, l: u32, v: &VElement) -> VElement {
    scale(&epsilon(m, &m.act_p(l, v)), &Scalar::q_pow(l as i64))
}

/// `p_l(X)` multiplication scaled by `q^l` without the idempotent.
pub fn act_pl0_unprojected(m: &DahaModule, l: u32, v: &VElement) -> VElement {
    scale(&m.act_p(l, v), &Scalar::q_pow(l as i64))
}

/// Report row for one `P_T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionRow {
    pub tau: PeriodicTableau,
    pub coeff: String,
}

impl MacdonaldP {
    pub fn rows(&self) -> Vec<ExpansionRow> {
        self.expansion
            .iter()
            .map(|(tau, c)| ExpansionRow { tau: tau.clone(), coeff: c.to_string() })
            .collect()
    }

    /// `v` is a scalar multiple of this `P_T` with the given factor.
    pub fn is_eigenvector(&self, image: &VElement, value: &Scalar) -> bool {
        *image == scale(&self.element, value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha::add;
    use crate::tableaux::{enumerate_fillings, FillingKind, Partition};

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn rf(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn fill(rows: &[&[u32]]) -> Filling {
        Filling::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn epsilon_on_two_variables() {
        let m = DahaModule::new(&part(&[2]));
        let one = m.basis_element(vec![0, 0], 0);
        assert_eq!(epsilon(&m, &one), one);
        let x1 = m.basis_element(vec![1, 0], 0);
        let expect = scale(&add(&x1, &m.basis_element(vec![0, 1], 0)), &rf("1/(1+t)"));
        assert_eq!(epsilon(&m, &x1), expect);
    }

    #[test]
    fn factorized_epsilon_matches_direct_sum() {
        let m = DahaModule::new(&part(&[2, 1]));
        for key in m.basis_of_degree(2) {
            let v = m.basis_element(key.0, key.1);
            let e = epsilon(&m, &v);
            assert_eq!(e, epsilon_direct(&m, &v));
            assert!(is_symmetric(&m, &e));
            assert_eq!(epsilon(&m, &e), e);
        }
    }

    #[test]
    fn p_for_one_row() {
        let m = DahaModule::new(&part(&[2]));
        let p = p_formula(&m, &fill(&[&[1, 0]])).unwrap();
        let expect = add(&m.basis_element(vec![1, 0], 0), &m.basis_element(vec![0, 1], 0));
        assert_eq!(p.element, expect);
        assert_eq!(p.expansion[0].1, rf("1"));
        assert_eq!(p.expansion[1].1, rf("t*(q-1)/(q-t)"));
        let (dim, proj) = p_projection(&m, &fill(&[&[1, 0]])).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(proj.unwrap().element, expect);
    }

    #[test]
    fn projection_agrees_with_formula() {
        for shape in [part(&[2, 1]), part(&[3])] {
            let m = DahaModule::new(&shape);
            for d in 0..=2 {
                for f in enumerate_fillings(&shape, d, FillingKind::Ryt) {
                    let (dim, proj) = p_projection(&m, &f).unwrap();
                    if f.is_rssyt() {
                        assert_eq!(dim, 1, "{f}");
                        assert_eq!(proj.unwrap(), p_formula(&m, &f).unwrap(), "{f}");
                    } else {
                        assert_eq!(dim, 0, "{f}");
                    }
                }
            }
        }
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_coeff(&fill(&[&[1, 0]])).unwrap(), rf("(q-t^2)/((1+t)*(q-t))"));
        assert_eq!(k_coeff(&fill(&[&[0]])).unwrap(), rf("1"));
    }

    #[test]
    fn p0l_spectrum_one_row() {
        let m = DahaModule::new(&part(&[2]));
        let f = fill(&[&[1, 0]]);
        let p = p_formula(&m, &f).unwrap();
        assert_eq!(p0l_eigenvalue(&f, 1), rf("q+t"));
        for l in 1..=2 {
            let img = act_p0l(&m, l, &p.element);
            assert!(p.is_eigenvector(&img, &p0l_eigenvalue(&f, l)));
            assert_eq!(img, act_p0l_projected(&m, l, &p.element));
        }
    }
}
