//! Exact constants, closed-form clique counts of colex Turán graphs, and
//! extremal-number calculators.
//!
//! `β_r` and `c_{r,s}` are irrational in general but have rational squares, so
//! every identity here is squared and checked in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::colex::binomial;
use crate::constructions::{colex_turan_edges, colex_turan_graph, turan_graph, turan_number};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("parameters must satisfy {0}")]
    Parameters(&'static str),
    #[error("r = {r} does not divide n = {n}")]
    NotDivisible { r: usize, n: usize },
}

/// A nonnegative real held exactly through its square.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSquareScalar {
    pub square: BigRational,
    pub float_value: f64,
}

impl ExactSquareScalar {
    pub fn from_square(square: BigRational) -> Self {
        assert!(!square.is_negative(), "square must be nonnegative");
        let float_value = ratio_to_f64(&square).sqrt();
        ExactSquareScalar { square, float_value }
    }
}

impl Serialize for ExactSquareScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ExactSquareScalar", 2)?;
        st.serialize_field("square", &self.square.to_string())?;
        st.serialize_field("value", &self.float_value)?;
        st.end()
    }
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    // scale to keep both parts in range for huge numerators/denominators
    let (n, d) = (q.numer(), q.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
            let a = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

fn int(x: u128) -> BigInt {
    BigInt::from(x)
}

fn rat(n: u128, d: u128) -> BigRational {
    BigRational::new(int(n), int(d))
}

fn binom_big(n: usize, k: usize) -> BigInt {
    match binomial(n as u64, k as u64) {
        Some(b) => int(b),
        None => {
            let mut acc = BigInt::one();
            for i in 0..k {
                acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
            }
            acc
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `β_r`, with `β_r² = 2(r-1)/r`.
pub fn beta(r: usize) -> Result<ExactSquareScalar, ExtremalError> {
    if r < 1 {
        return Err(ExtremalError::Parameters("r >= 1"));
    }
    Ok(ExactSquareScalar::from_square(rat(2 * (r as u128 - 1), r as u128)))
}

/// `c_{r,s} = binom(r,s) / binom(r,2)^{s/2}`; zero when `s > r`.
pub fn c_rs(r: usize, s: usize) -> Result<ExactSquareScalar, ExtremalError> {
    if r < 2 || s < 2 {
        return Err(ExtremalError::Parameters("r >= 2 and s >= 2"));
    }
    let num = binom_big(r, s);
    let den = binom_big(r, 2).pow(s as u32);
    Ok(ExactSquareScalar::from_square(BigRational::new(&num * &num, den)))
}

/// Both sides of each squared identity, for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop22Check {
    pub identity_lhs: BigRational,
    pub identity_rhs: BigRational,
    pub bound_lhs: BigRational,
    pub bound_rhs: BigRational,
}

impl Prop22Check {
    pub fn holds(&self) -> bool {
        self.identity_lhs == self.identity_rhs && self.bound_lhs <= self.bound_rhs
    }
}

/// Evaluates, squared,
/// `binom(r-1,s-1)/(r-1)^{s-1} · β_r^{s-2} = (s/2) c_{r,s}` and
/// `c_{r,s} <= 2^{s/2}(r-2) / (s!(r-1))`.
pub fn prop22_sides(r: usize, s: usize) -> Result<Prop22Check, ExtremalError> {
    if r < 2 || s < 3 {
        return Err(ExtremalError::Parameters("r >= 2 and s >= 3"));
    }
    let beta_sq = beta(r)?.square;
    let c_sq = c_rs(r, s)?.square;
    let head = BigRational::new(binom_big(r - 1, s - 1), BigInt::from(r - 1).pow(s as u32 - 1));
    let identity_lhs = &head * &head * beta_sq.pow(s as i32 - 2);
    let identity_rhs = rat((s * s) as u128, 4) * &c_sq;
    let bound_num = BigInt::from(2).pow(s as u32) * BigInt::from((r - 2) * (r - 2));
    let bound_den = {
        let f = factorial(s) * BigInt::from(r - 1);
        &f * &f
    };
    Ok(Prop22Check {
        identity_lhs,
        identity_rhs,
        bound_lhs: c_sq,
        bound_rhs: BigRational::new(bound_num, bound_den),
    })
}

pub fn verify_prop22(r: usize, s: usize) -> Result<bool, ExtremalError> {
    Ok(prop22_sides(r, s)?.holds())
}

/// `ex_{K_t}(n, K_{r+1}) = κ_t(T_r(n))`.
pub fn zykov_ex(n: usize, t: usize, r: usize) -> Result<u128, ExtremalError> {
    if !(n >= r && r >= t && t >= 2) {
        return Err(ExtremalError::Parameters("n >= r >= t >= 2"));
    }
    Ok(turan_graph(r, n).count_cliques(t).expect("t >= 2"))
}

/// `mex_{K_s}(m, K_{r+1}) = κ_s(CT_r(m))`.
pub fn mex_clique(m: usize, s: usize, r: usize) -> Result<u128, ExtremalError> {
    if !(r >= s && s >= 2) {
        return Err(ExtremalError::Parameters("r >= s >= 2"));
    }
    let g = colex_turan_graph(r, m).expect("r >= 2");
    Ok(g.count_cliques(s).expect("s >= 2"))
}

/// `mex_clique(m, s, r)` for `m = 1..=m_max`, built edge by edge: the `m`-th
/// edge `{u, v}` adds the `K_{s-2}`s in the common neighbourhood.
pub fn mex_profile(r: usize, s: usize, m_max: usize) -> Result<Vec<u128>, ExtremalError> {
    if !(r >= s && s >= 2) {
        return Err(ExtremalError::Parameters("r >= s >= 2"));
    }
    let mut g = Graph::empty(0);
    let mut total: u128 = 0;
    let mut out = Vec::with_capacity(m_max);
    for (u, v) in colex_turan_edges(r).expect("r >= 2").take(m_max) {
        g.add_edge(u, v);
        total += g.common_neighborhood_cliques(u, v, s - 2);
        out.push(total);
    }
    Ok(out)
}

/// Exact check that, for `r | n` and `m = t_r(n)`, `m = (n/r)² binom(r,2)` and
/// `κ_s(CT_r(m))² = c_{r,s}² m^s`.
pub fn closed_form_check(r: usize, s: usize, n: usize) -> Result<bool, ExtremalError> {
    if !(r >= s && s >= 2) {
        return Err(ExtremalError::Parameters("r >= s >= 2"));
    }
    if n % r != 0 {
        return Err(ExtremalError::NotDivisible { r, n });
    }
    let m = turan_number(r, n);
    let q = n / r;
    let edges_ok = m as u128 == (q * q) as u128 * binomial(r as u64, 2).unwrap();
    let kappa = mex_clique(m, s, r)?;
    let lhs = BigRational::from_integer(int(kappa) * int(kappa));
    let rhs = c_rs(r, s)?.square * BigRational::from_integer(BigInt::from(m).pow(s as u32));
    Ok(edges_ok && lhs == rhs)
}

/// `binom(x, s)` where `binom(x, 2) = m`, clamped to 0 for `x < s - 1`: an
/// upper bound on `κ_s` of any graph with `m` edges.
///
/// The result carries at most about `1e-9` relative error.
pub fn lovasz_kk_bound(m: usize, s: usize) -> f64 {
    let x = (1.0 + (1.0 + 8.0 * m as f64).sqrt()) / 2.0;
    if x < (s as f64) - 1.0 {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..s {
        acc *= (x - i as f64) / (i as f64 + 1.0);
    }
    acc.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn betas() {
        assert_eq!(beta(2).unwrap().square, q(1, 1));
        assert_eq!(beta(3).unwrap().square, q(4, 3));
        assert_eq!(beta(4).unwrap().square, q(3, 2));
        let b3 = beta(3).unwrap();
        assert!((b3.float_value * b3.float_value / (4.0 / 3.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clique_constants() {
        assert_eq!(c_rs(3, 3).unwrap().square, q(1, 27));
        assert_eq!(c_rs(2, 2).unwrap().square, q(1, 1));
        assert_eq!(c_rs(3, 5).unwrap().square, q(0, 1));
        assert_eq!(c_rs(3, 5).unwrap().float_value, 0.0);
        assert!(c_rs(1, 3).is_err());
        for r in 2..=12 {
            for s in 2..=13 {
                let c = c_rs(r, s).unwrap();
                let back = c.float_value * c.float_value;
                let exact = ratio_to_f64(&c.square);
                assert!(exact == 0.0 || (back / exact - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn prop22_instances() {
        assert!(verify_prop22(3, 3).unwrap());
        let degenerate = prop22_sides(2, 3).unwrap();
        assert!(degenerate.identity_lhs.is_zero() && degenerate.identity_rhs.is_zero());
        assert!(degenerate.holds());
        assert!(verify_prop22(12, 5).unwrap());
        assert!(verify_prop22(2, 2).is_err());
    }

    #[test]
    fn zykov_values() {
        assert_eq!(zykov_ex(6, 3, 3).unwrap(), 8);
        assert_eq!(zykov_ex(4, 2, 2).unwrap(), 4);
        assert_eq!(zykov_ex(5, 3, 3).unwrap(), 4);
        assert!(zykov_ex(2, 3, 3).is_err());
        assert!(zykov_ex(6, 4, 3).is_err());
    }

    #[test]
    fn mex_values() {
        assert_eq!(mex_clique(12, 3, 3).unwrap(), 8);
        assert_eq!(mex_clique(25, 3, 3).unwrap(), 22);
        assert_eq!(mex_clique(24, 3, 3).unwrap(), 20);
        assert_eq!(mex_clique(1, 3, 3).unwrap(), 0);
        assert_eq!(mex_clique(0, 3, 3).unwrap(), 0);
        assert!(mex_clique(10, 4, 3).is_err());
    }

    #[test]
    fn mex_profiles() {
        assert_eq!(mex_profile(3, 3, 3).unwrap(), vec![0, 0, 1]);
        assert_eq!(mex_profile(3, 3, 7).unwrap()[6], 3);
        assert!(mex_profile(3, 3, 0).unwrap().is_empty());
        assert_eq!(mex_profile(4, 2, 5).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn mex_profile_agrees_with_direct_counts() {
        for r in 2..=4 {
            for s in 2..=r {
                let profile = mex_profile(r, s, 60).unwrap();
                for (i, &v) in profile.iter().enumerate() {
                    assert_eq!(v, mex_clique(i + 1, s, r).unwrap(), "r={r} s={s} m={}", i + 1);
                }
                assert!(profile.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert!(closed_form_check(3, 3, 6).unwrap());
        assert!(closed_form_check(2, 2, 4).unwrap());
        assert!(closed_form_check(4, 3, 8).unwrap());
        assert_eq!(mex_clique(turan_number(4, 8), 3, 4).unwrap(), 32);
        assert_eq!(closed_form_check(3, 3, 7), Err(ExtremalError::NotDivisible { r: 3, n: 7 }));
    }

    #[test]
    fn lovasz_bounds() {
        assert!((lovasz_kk_bound(3, 3) - 1.0).abs() < 1e-9);
        assert!((lovasz_kk_bound(6, 3) - 4.0).abs() < 1e-9);
        assert!((lovasz_kk_bound(10, 4) - 5.0).abs() < 1e-9);
        // x = (1 + √33)/2; binom(x, 3) by hand
        let x = (1.0 + 33f64.sqrt()) / 2.0;
        let expected = x * (x - 1.0) * (x - 2.0) / 6.0;
        assert!((lovasz_kk_bound(4, 3) - expected).abs() < 1e-12);
        assert!((lovasz_kk_bound(4, 3) - 1.829).abs() < 1e-3);
        assert_eq!(lovasz_kk_bound(1, 4), 0.0);
        assert_eq!(lovasz_kk_bound(0, 3), 0.0);
    }
}
