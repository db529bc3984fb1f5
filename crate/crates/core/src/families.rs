//! Concrete polynomial families, each realized as a kernel series acting on `x^n`.
//!
//! | family | kernel |
//! |---|---|
//! | `B_n^(a)(x)` | `(t/(e^t-1))^a` |
//! | `H_n^(v)(x)` | `e^(-v t^2/2)` |
//! | `beta_n^(a)(x; h)` | `(t/(e^t-1))^a e^(h(t))` |
//! | `Hbeta_n^(a)(x, v)` | `(t/(e^t-1))^a e^(-v t^2/2)` |
//! | `Phi_n(x; f, h)` | `f(t) e^(h(t))` |
//!
//! Functions without an explicit order use the guard `n + |a| + 4`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Poly, Rational};
use crate::series::{NamedSeries, Series};
use crate::umbral::{apply, pair};
use crate::{Error, Result};

fn guard(n: usize, a: i64) -> usize {
    crate::default_guard(n, a.unsigned_abs() as usize)
}

fn member(kernel: &Series, n: usize) -> Poly {
    apply(kernel, &Poly::x_pow(n)).expect("kernel built at guard order")
}

/// `(t/(e^t-1))^a e^(-v t^2/2)` at `order`.
pub fn h_beta_kernel(a: i64, v: &Rational, order: usize) -> Series {
    NamedSeries::BernoulliGf(a).build(order).mul(&NamedSeries::Gaussian(v.clone()).build(order))
}

/// Higher-order Bernoulli polynomial `B_n^(a)(x)`.
pub fn bernoulli_higher(n: usize, a: i64) -> Poly {
    member(&NamedSeries::BernoulliGf(a).build(guard(n, a)), n)
}

/// `B_n^(a) = B_n^(a)(0)`.
pub fn bernoulli_number(n: usize, a: i64) -> Rational {
    bernoulli_higher(n, a).eval(&Rational::zero())
}

/// Hermite polynomial `H_n^(v)(x)`, generated by `e^(x t - v t^2/2)`.
pub fn hermite(n: usize, v: &Rational) -> Poly {
    member(&NamedSeries::Gaussian(v.clone()).build(guard(n, 0)), n)
}

/// `H_n^(v)(0)`: zero for odd `n`, `(2m)! (-v/2)^m / m!` for `n = 2m`.
pub fn hermite_number(n: usize, v: &Rational) -> Rational {
    hermite(n, v).eval(&Rational::zero())
}

/// `beta_n^(a)(x; v)` for a deformation series `h` of positive order.
/// The result is exact for `n <= h.trunc_order()`.
pub fn beta_general(n: usize, a: i64, h: &Series) -> Result<Poly> {
    let kernel = NamedSeries::BernoulliGf(a).build(h.trunc_order()).mul(&h.exp()?);
    apply(&kernel, &Poly::x_pow(n))
}

/// The Bernoulli-Hermite polynomial `Hbeta_n^(a)(x, v)`.
pub fn h_beta(n: usize, a: i64, v: &Rational) -> Poly {
    member(&h_beta_kernel(a, v, guard(n, a)), n)
}

/// `Phi_n(x)` generated by `f(t) e^(x t + h(t))`.
pub fn phi_general(n: usize, f: &Series, h: &Series) -> Result<Poly> {
    apply(&f.mul(&h.exp()?), &Poly::x_pow(n))
}

/// `S(n, k)` through the pairing `<(e^t-1)^k | x^n> / k!`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    let order = n.max(1);
    let power = NamedSeries::Expm1.build(order).int_pow(k as i64).expect("nonnegative power");
    pair(&power, &Poly::x_pow(n)).expect("series built at order n") / factorial(k)
}

/// Table of `S(n, k)` for `n, k <= n_max` from
/// `S(n,k) = k S(n-1,k) + S(n-1,k-1)`, `S(0,0) = 1`.
#[derive(Clone, Debug)]
pub struct Stirling2Table {
    rows: Vec<Vec<Rational>>,
}

impl Stirling2Table {
    pub fn new(n_max: usize) -> Self {
        let mut rows = vec![vec![Rational::zero(); n_max + 1]; n_max + 1];
        rows[0][0] = Rational::one();
        for n in 1..=n_max {
            for k in 1..=n {
                rows[n][k] = int(k as i64) * &rows[n - 1][k] + &rows[n - 1][k - 1];
            }
        }
        Self { rows }
    }

    /// `S(n, k)`; zero outside the table's triangle.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Shape of the deformation `h(t, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HKind {
    None,
    /// `h = -v t`
    Linear,
    /// `h = -v t^2 / 2`
    Gaussian,
    Custom(Series),
}

/// `(a, v, h)`: selects a concrete member of the generalized family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: i64,
    pub v: Rational,
    h_kind: HKind,
}

impl FamilyParams {
    pub fn new(a: i64, v: Rational, h_kind: HKind) -> Result<Self> {
        if let HKind::Custom(h) = &h_kind {
            if h.order() == Some(0) {
                return Err(Error::InvalidParameter("custom h must have zero constant term".into()));
            }
        }
        Ok(Self { a, v, h_kind })
    }

    pub fn h_kind(&self) -> &HKind {
        &self.h_kind
    }

    /// `h(t, v)` at `order`. A custom series shorter than `order` is padded
    /// with zeros, i.e. read as a polynomial in `t`.
    pub fn h_series(&self, order: usize) -> Series {
        match &self.h_kind {
            HKind::None => Series::zero(order),
            HKind::Linear => NamedSeries::Linear(self.v.clone()).build(order),
            HKind::Gaussian => Series::monomial(2, -&self.v / int(2), order),
            HKind::Custom(h) => Series::from_poly_coeffs(h.coeffs(), order),
        }
    }
}

/// Family identifiers exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Bernoulli,
    Hermite,
    BetaLinear,
    HBeta,
    PhiCustom,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] =
        [FamilyId::Bernoulli, FamilyId::Hermite, FamilyId::BetaLinear, FamilyId::HBeta, FamilyId::PhiCustom];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Bernoulli => "bernoulli",
            FamilyId::Hermite => "hermite",
            FamilyId::BetaLinear => "beta-linear",
            FamilyId::HBeta => "hbeta",
            FamilyId::PhiCustom => "phi-custom",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(alloc::format!("unknown family {s:?}")))
    }
}

/// A fully specified family: identifier plus parameters. For `phi-custom`,
/// `f` and `h` are ordinary coefficient lists read as polynomials in `t`.
#[derive(Clone, Debug)]
pub struct Family {
    pub id: FamilyId,
    pub a: i64,
    pub v: Rational,
    pub f: Vec<Rational>,
    pub h: Vec<Rational>,
}

impl Family {
    pub fn new(id: FamilyId, a: i64, v: Rational) -> Self {
        Self { id, a, v, f: vec![Rational::one()], h: Vec::new() }
    }

    fn params(&self) -> Result<FamilyParams> {
        let h_kind = match self.id {
            FamilyId::Bernoulli => HKind::None,
            FamilyId::Hermite | FamilyId::HBeta => HKind::Gaussian,
            FamilyId::BetaLinear => HKind::Linear,
            FamilyId::PhiCustom if self.h.is_empty() => HKind::None,
            FamilyId::PhiCustom => HKind::Custom(Series::from_coeffs(self.h.clone())?),
        };
        let a = if self.id == FamilyId::Hermite { 0 } else { self.a };
        FamilyParams::new(a, self.v.clone(), h_kind)
    }

    /// Smallest sensible truncation order for members up to index `n`.
    pub fn default_guard(&self, n: usize) -> usize {
        guard(n, self.a)
    }

    /// Kernel series `f(t) e^(h(t))` at `order`.
    pub fn kernel(&self, order: usize) -> Result<Series> {
        let params = self.params()?;
        let f = match self.id {
            FamilyId::PhiCustom => Series::from_poly_coeffs(&self.f, order),
            _ => NamedSeries::BernoulliGf(params.a).build(order),
        };
        Ok(f.mul(&params.h_series(order).exp()?))
    }

    /// The member of index `n`, using `order` (or the default guard).
    pub fn member(&self, n: usize, order: Option<usize>) -> Result<Poly> {
        let order = order.unwrap_or_else(|| self.default_guard(n));
        apply(&self.kernel(order)?, &Poly::x_pow(n))
    }
}
