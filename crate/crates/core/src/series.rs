//! Truncated formal power series in `t` over [`Rational`].
//!
//! Coefficients are ordinary: index `k` holds the coefficient of `t^k`, not the
//! divided-factorial `a_k` with `f(t) = sum a_k t^k / k!`. The factorials only
//! appear inside the umbral pairing.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Rational};
use crate::{Error, Result};

/// A series known exactly up to and including `t^N`, where `N = trunc_order()`.
///
/// `coeffs.len() == N + 1` always holds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(k: usize, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series whose coefficients are `cs` followed by zeros up to `order`.
    /// Coefficients past `order` are dropped.
    pub fn from_poly_coeffs(cs: &[Rational], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(cs) {
            *slot = c.clone();
        }
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient; `None` if every stored one is zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.min(self.trunc_order()) + 1, Rational::zero());
        Self { coeffs }
    }

    /// Coefficientwise equality up to the smaller truncation order.
    pub fn eq_up_to_common_order(&self, other: &Series) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }

    pub fn add(&self, other: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.trunc_order().min(other.trunc_order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    /// Multiplication by `t^k`; the truncation order is unchanged.
    pub fn mul_t_pow(&self, k: usize) -> Series {
        let n = self.trunc_order();
        let mut out = vec![Rational::zero(); n + 1];
        for i in k..=n {
            out[i] = self.coeffs[i - k].clone();
        }
        Series { coeffs: out }
    }

    /// Multiplicative inverse via the triangular recurrence
    /// `g_0 = 1/f_0`, `g_k = -(1/f_0) sum_{j=1..k} f_j g_{k-j}`.
    pub fn recip(&self) -> Result<Series> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = f0.recip();
        let n = self.trunc_order();
        let mut g: Vec<Rational> = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let fj = &self.coeffs[j];
                if !fj.is_zero() {
                    acc += fj * &g[k - j];
                }
            }
            g.push(-acc * &inv0);
        }
        Ok(Series { coeffs: g })
    }

    /// `f^a` for any integer `a`; negative powers go through [`Series::recip`].
    pub fn int_pow(&self, a: i64) -> Result<Series> {
        let base = if a < 0 { self.recip()? } else { self.clone() };
        let mut acc = Series::one(self.trunc_order());
        for _ in 0..a.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Formal exponential of a series with zero constant term.
    ///
    /// Uses `E' = h' E`, i.e. `k E_k = sum_{j=1..k} j h_j E_{k-j}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpRequiresPositiveOrder);
        }
        let n = self.trunc_order();
        let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
        e.push(Rational::one());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let hj = &self.coeffs[j];
                if !hj.is_zero() {
                    acc += hj * int(j as i64) * &e[k - j];
                }
            }
            e.push(acc / int(k as i64));
        }
        Ok(Series { coeffs: e })
    }

    /// `f(t) / t`; the truncation order drops by one.
    pub fn divide_by_t(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.coeffs.len() == 1 {
            // only t^0 is known, so nothing is known about f/t
            return Err(Error::InsufficientTruncation { needed: 1, available: 0 });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Formal derivative `d/dt`; the truncation order drops by one (floored at zero).
    pub fn derivative(&self) -> Series {
        if self.coeffs.len() == 1 {
            return Series::zero(0);
        }
        Series {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect(),
        }
    }

    /// `f(t / alpha)`: coefficient `k` is divided by `alpha^k`.
    pub fn rescale(&self, alpha: &Rational) -> Result<Series> {
        if alpha.is_zero() {
            return Err(Error::AlphaZero);
        }
        let inv = alpha.recip();
        let mut p = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p *= &inv;
        }
        Ok(Series { coeffs: out })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(t^{})]", self.trunc_order() + 1)
    }
}

/// The kernels the families are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedSeries {
    /// `e^t`
    Exp,
    /// `e^t - 1`
    Expm1,
    /// `(t / (e^t - 1))^a`
    BernoulliGf(i64),
    /// `e^(-v t^2 / 2)`
    Gaussian(Rational),
    /// `-v t`, the linear deformation `h(t, v)`.
    Linear(Rational),
}

impl NamedSeries {
    pub fn build(&self, order: usize) -> Series {
        match self {
            NamedSeries::Exp => exp_scaled(&Rational::one(), order),
            NamedSeries::Expm1 => {
                let mut s = exp_scaled(&Rational::one(), order);
                s.coeffs[0] = Rational::zero();
                s
            }
            NamedSeries::BernoulliGf(a) => {
                // (e^t - 1)/t needs one extra order of e^t - 1
                let quotient = NamedSeries::Expm1
                    .build(order + 1)
                    .divide_by_t()
                    .expect("e^t - 1 has zero constant term");
                quotient.int_pow(-a).expect("(e^t - 1)/t is invertible")
            }
            NamedSeries::Gaussian(v) => {
                let h = Series::monomial(2, -v / int(2), order);
                h.exp().expect("-v t^2/2 has positive order")
            }
            NamedSeries::Linear(v) => Series::monomial(1, -v, order),
        }
    }
}

/// `e^(y t)`, coefficients `y^k / k!`.
pub fn exp_scaled(y: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut yp = Rational::one();
    for k in 0..=order {
        coeffs.push(&yp / factorial(k));
        yp *= y;
    }
    Series { coeffs }
}
