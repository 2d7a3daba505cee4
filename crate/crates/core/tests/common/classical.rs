//! Classical Macdonald polynomials at `(q^-1, t)` by Gram-Schmidt on the
//! monomial basis under the `q,t` power-sum pairing. Shares nothing with the
//! library beyond the scalar field.

use std::collections::BTreeMap;

use macvv::coeffs::Scalar;

/// A polynomial in `n` variables, exponent vector to coefficient.
pub type Poly = BTreeMap<Vec<u32>, Scalar>;

/// Partitions of `d` in reverse lexicographic order (largest first).
pub fn partitions(d: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

fn add_term(p: &mut Poly, e: Vec<u32>, c: &Scalar) {
    let slot = p.entry(e.clone()).or_insert_with(Scalar::zero);
    *slot = &*slot + c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, &(ca * cb));
        }
    }
    out
}

fn power_sum(k: u32, n: usize) -> Poly {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = k;
            (e, Scalar::one())
        })
        .collect()
}

/// `e_r(x_1, .., x_n)`.
pub fn elementary(r: usize, n: usize) -> Poly {
    let mut out = Poly::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == r {
            let e = (0..n).map(|i| (mask >> i) & 1).collect();
            out.insert(e, Scalar::one());
        }
    }
    out
}

/// `m_nu(x_1, .., x_n)`; zero when `nu` has more than `n` parts.
pub fn monomial(nu: &[u32], n: usize) -> Poly {
    let mut out = Poly::new();
    if nu.len() > n {
        return out;
    }
    let mut e: Vec<u32> = nu.to_vec();
    e.resize(n, 0);
    e.sort();
    loop {
        out.insert(e.clone(), Scalar::one());
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| e[i] < e[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| e[j] > e[i]).unwrap();
        e.swap(i, j);
        e[i + 1..].reverse();
    }
    out
}

fn z_factor(rho: &[u32]) -> Scalar {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &r in rho {
        *counts.entry(r).or_default() += 1;
    }
    let mut z = Scalar::one();
    for (&r, &m) in &counts {
        for k in 1..=m {
            z = &z * &Scalar::from_int((r * k) as i64);
        }
    }
    // the pairing at (q^-1, t)
    for &r in rho {
        let num = &Scalar::one() - &Scalar::q_pow(-(r as i64));
        let den = &Scalar::one() - &Scalar::t_pow(r as i64);
        z = &(&z * &num) / &den;
    }
    z
}

fn solve(mut m: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let k = m.len();
    let mut inv: Vec<Vec<Scalar>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero()).expect("p to m is invertible");
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].inv().unwrap();
        for j in 0..k {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..k {
                    m[r][j] = &m[r][j] - &(&f * &m[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
    }
    inv
}

/// Macdonald `P_mu` at `(q^-1, t)` in the monomial basis, for every
/// partition of `d`.
pub struct Classical {
    pub parts: Vec<Vec<u32>>,
    /// `p[mu]`: coefficients over `parts`.
    pub p: Vec<Vec<Scalar>>,
}

impl Classical {
    pub fn new(d: u32) -> Self {
        let parts = partitions(d);
        let k = parts.len();
        let nvars = d as usize;
        // rows: p_rho in the monomial basis
        let pm: Vec<Vec<Scalar>> = parts
            .iter()
            .map(|rho| {
                let mut prod: Poly = [(vec![0; nvars], Scalar::one())].into_iter().collect();
                for &r in rho {
                    prod = mul(&prod, &power_sum(r, nvars));
                }
                parts
                    .iter()
                    .map(|nu| {
                        let mut e = nu.clone();
                        e.resize(nvars, 0);
                        prod.get(&e).cloned().unwrap_or_else(Scalar::zero)
                    })
                    .collect()
            })
            .collect();
        // p = pm m, so m_lambda = sum_rho a[lambda][rho] p_rho with a = pm^-1
        let a = solve(pm);
        let z: Vec<Scalar> = parts.iter().map(|r| z_factor(r)).collect();
        let gram = |u: &[Scalar], v: &[Scalar]| -> Scalar {
            // <u, v> for u, v in the monomial basis
            let mut acc = Scalar::zero();
            for rho in 0..k {
                let mut ur = Scalar::zero();
                let mut vr = Scalar::zero();
                for l in 0..k {
                    ur = &ur + &(&u[l] * &a[l][rho]);
                    vr = &vr + &(&v[l] * &a[l][rho]);
                }
                acc = &acc + &(&(&ur * &vr) * &z[rho]);
            }
            acc
        };
        let mut p: Vec<Vec<Scalar>> = vec![Vec::new(); k];
        for mu in (0..k).rev() {
            let mut v: Vec<Scalar> = (0..k).map(|j| if j == mu { Scalar::one() } else { Scalar::zero() }).collect();
            for nu in mu + 1..k {
                let c = &gram(&v, &p[nu]) / &gram(&p[nu], &p[nu]);
                for j in 0..k {
                    v[j] = &v[j] - &(&c * &p[nu][j]);
                }
            }
            p[mu] = v;
        }
        Self { parts, p }
    }

    /// `P_mu(x_1, .., x_n)` as a polynomial.
    pub fn polynomial(&self, mu: &[u32], n: usize) -> Poly {
        let idx = self.parts.iter().position(|p| p == mu).expect("partition of the right size");
        let mut out = Poly::new();
        for (j, nu) in self.parts.iter().enumerate() {
            let c = &self.p[idx][j];
            if c.is_zero() {
                continue;
            }
            for (e, one) in monomial(nu, n) {
                add_term(&mut out, e, &(c * &one));
            }
        }
        out
    }
}

/// Expands a symmetric polynomial in `n` variables in the classical `P_nu`
/// basis by peeling off dominant monomials.
pub fn expand_in_p(f: &Poly, n: usize, tables: &BTreeMap<u32, Classical>) -> BTreeMap<Vec<u32>, Scalar> {
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest
        .keys()
        .filter(|e| e.windows(2).all(|w| w[0] >= w[1]))
        .max()
        .cloned()
    {
        let c = rest[&top].clone();
        let mu: Vec<u32> = top.iter().copied().filter(|&x| x > 0).collect();
        let d: u32 = mu.iter().sum();
        let p = tables[&d].polynomial(&mu, n);
        for (e, pc) in &p {
            add_term(&mut rest, e.clone(), &-(&c * pc));
        }
        out.insert(mu, c);
    }
    assert!(rest.is_empty(), "input was not symmetric");
    out
}
