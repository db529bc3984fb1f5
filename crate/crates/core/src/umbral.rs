//! The umbral pairing, series acting as operators on polynomials, and Appell
//! sequences for pairs `(g(t), t)`.
//!
//! A series `f(t) = sum c_k t^k` acts on `x^n` in two ways:
//!
//! * as a functional: `<f(t) | x^n> = n! c_n`,
//! * as an operator: `t^k x^n = (n)_k x^(n-k)`, i.e. `t = d/dx`.
//!
//! Both refuse to run when the series is not known up to the degree of the
//! polynomial, since silently truncating would produce a wrong rational.

use alloc::string::String;
use alloc::vec;

use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Poly, Rational};
use crate::series::Series;
use crate::{Error, Result};

fn check_truncation(f: &Series, p: &Poly) -> Result<()> {
    match p.degree() {
        Some(d) if d > f.trunc_order() => {
            Err(Error::InsufficientTruncation { needed: d, available: f.trunc_order() })
        }
        _ => Ok(()),
    }
}

/// `<f(t) | p(x)> = sum_n p_n n! c_n`.
pub fn pair(f: &Series, p: &Poly) -> Result<Rational> {
    check_truncation(f, p)?;
    let mut acc = Rational::zero();
    let mut fact = Rational::one();
    for (n, pn) in p.coeffs().iter().enumerate() {
        if n > 0 {
            fact *= int(n as i64);
        }
        if !pn.is_zero() {
            acc += pn * &fact * f.coeff(n);
        }
    }
    Ok(acc)
}

/// `f(t) p(x)`, with `t` acting as `d/dx`.
pub fn apply(f: &Series, p: &Poly) -> Result<Poly> {
    check_truncation(f, p)?;
    let Some(deg) = p.degree() else {
        return Ok(Poly::zero());
    };
    let mut out = vec![Rational::zero(); deg + 1];
    for (n, pn) in p.coeffs().iter().enumerate() {
        if pn.is_zero() {
            continue;
        }
        // (n)_k runs n, n(n-1), ... as k grows
        let mut ff = Rational::one();
        for k in 0..=n {
            if k > 0 {
                ff *= int((n - k + 1) as i64);
            }
            let ck = f.coeff(k);
            if !ck.is_zero() {
                out[n - k] += pn * ck * &ff;
            }
        }
    }
    Ok(Poly::from_coeffs(out))
}

/// `(1/t)^j p(x)` on the monomial basis: `x^n -> x^(n+j) n!/(n+j)!`.
///
/// This is a right inverse of `t^j` only: `t (1/t) p = p`, but
/// `(1/t) t p = p - p(0)`. On an Appell sequence use [`AppellSpec::inv_t`],
/// which conjugates by the sequence kernel.
pub fn apply_inv_t(p: &Poly, j: usize) -> Poly {
    let mut out = vec![Rational::zero(); p.coeffs().len() + j];
    for (n, pn) in p.coeffs().iter().enumerate() {
        if pn.is_zero() {
            continue;
        }
        let mut denom = Rational::one();
        for m in n + 1..=n + j {
            denom *= int(m as i64);
        }
        out[n + j] = pn / denom;
    }
    Poly::from_coeffs(out)
}

/// An Appell pair `(g(t), t)`; the sequence is `s_n(x) = g(t)^(-1) x^n`.
#[derive(Clone, Debug)]
pub struct AppellSpec {
    g: Series,
    g_inv: Series,
    /// `g'(t)/g(t)`
    log_deriv: Series,
    pub label: String,
}

impl AppellSpec {
    pub fn new(g: Series, label: impl Into<String>) -> Result<Self> {
        let g_inv = g.recip()?;
        let log_deriv = g.derivative().mul(&g_inv);
        Ok(Self { g, g_inv, log_deriv, label: label.into() })
    }

    /// The pair for the Bernoulli-Hermite family,
    /// `g(t) = ((e^t - 1)/t)^a e^(v t^2 / 2)`.
    pub fn bernoulli_hermite(a: i64, v: &Rational, order: usize) -> Self {
        let expm1 = crate::series::NamedSeries::Expm1.build(order + 1);
        let quotient = expm1.divide_by_t().expect("zero constant term");
        let bern = quotient.int_pow(a).expect("invertible");
        let gauss = Series::monomial(2, v / int(2), order).exp().expect("positive order");
        Self::new(bern.mul(&gauss), alloc::format!("((e^t-1)/t)^{a} e^({v} t^2/2)"))
            .expect("constant term is 1")
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn g_inv(&self) -> &Series {
        &self.g_inv
    }

    pub fn trunc_order(&self) -> usize {
        self.g.trunc_order()
    }

    /// `s_n(x) = g(t)^(-1) x^n`.
    pub fn poly(&self, n: usize) -> Result<Poly> {
        apply(&self.g_inv, &Poly::x_pow(n))
    }

    /// `s_(n+1) = (x - g'(t)/g(t)) s_n`.
    pub fn next(&self, s_n: &Poly) -> Result<Poly> {
        let correction = apply(&self.log_deriv, s_n)?;
        Ok(&s_n.mul_x() - &correction)
    }

    /// `<g(t) t^k | s_n(x)> - n! delta_(n,k)`; zero iff orthogonality holds.
    pub fn orthogonality_defect(&self, n: usize, k: usize) -> Result<Rational> {
        let s_n = self.poly(n)?;
        let lhs = pair(&self.g.mul_t_pow(k), &s_n)?;
        let delta = if n == k { factorial(n) } else { Rational::zero() };
        Ok(lhs - delta)
    }

    /// `s_n(alpha x) - alpha^n (g(t)/g(t/alpha)) s_n(x)`; zero iff the
    /// multiplication formula holds.
    pub fn multiplication_defect(&self, n: usize, alpha: &Rational) -> Result<Poly> {
        if alpha.is_zero() {
            return Err(Error::AlphaZero);
        }
        let s_n = self.poly(n)?;
        let lhs = s_n.scale_arg(alpha);
        let rhs = Self::apply_multiplication(&self.multiplication_operator(alpha)?, alpha, &s_n)?;
        Ok(&lhs - &rhs)
    }

    /// `g(t) / g(t/alpha)`.
    pub fn multiplication_operator(&self, alpha: &Rational) -> Result<Series> {
        if alpha.is_zero() {
            return Err(Error::AlphaZero);
        }
        Ok(self.g.mul(&self.g.rescale(alpha)?.recip()?))
    }

    /// `alpha^n (g(t)/g(t/alpha)) s_n(x)` given the operator from
    /// [`AppellSpec::multiplication_operator`]; `n` is read off the degree of `s_n`.
    pub fn apply_multiplication(operator: &Series, alpha: &Rational, s_n: &Poly) -> Result<Poly> {
        let n = s_n.degree().unwrap_or(0);
        let mut alpha_n = Rational::one();
        for _ in 0..n {
            alpha_n *= alpha;
        }
        Ok(apply(operator, s_n)?.scale(&alpha_n))
    }

    /// `(1/t)^j` on the span of this sequence: strip the kernel, integrate the
    /// monomials, restore the kernel. Sends `s_n` to `s_(n+j) n!/(n+j)!`.
    pub fn inv_t(&self, p: &Poly, j: usize) -> Result<Poly> {
        let bare = apply(&self.g, p)?;
        let lifted = apply_inv_t(&bare, j);
        if let Some(d) = lifted.degree() {
            if d > self.g_inv.trunc_order() {
                return Err(Error::InsufficientTruncation { needed: d, available: self.g_inv.trunc_order() });
            }
        }
        apply(&self.g_inv, &lifted)
    }
}

/// `s_n(x)` for `spec`.
pub fn appell_poly(spec: &AppellSpec, n: usize) -> Result<Poly> {
    spec.poly(n)
}

/// One step of `s_(n+1) = (x - g'(t)/g(t)) s_n`.
pub fn appell_next(spec: &AppellSpec, s_n: &Poly) -> Result<Poly> {
    spec.next(s_n)
}

pub fn orthogonality_defect(spec: &AppellSpec, n: usize, k: usize) -> Result<Rational> {
    spec.orthogonality_defect(n, k)
}

pub fn multiplication_defect(spec: &AppellSpec, n: usize, alpha: &Rational) -> Result<Poly> {
    spec.multiplication_defect(n, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::series::{exp_scaled, NamedSeries};
    use proptest::prelude::*;

    fn bern_spec(order: usize) -> AppellSpec {
        let g = NamedSeries::Expm1.build(order + 1).divide_by_t().unwrap();
        AppellSpec::new(g, "bernoulli").unwrap()
    }

    fn b2() -> Poly {
        Poly::from_coeffs(vec![rat(1, 6), int(-1), int(1)])
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&exp_scaled(&int(2), 3), &Poly::x_pow(2)).unwrap(), int(4));
        assert_eq!(pair(&Series::monomial(1, int(1), 1), &Poly::x_pow(1)).unwrap(), int(1));
        // 2! S(3,2) = 6
        let e = NamedSeries::Expm1.build(3);
        assert_eq!(pair(&e.mul(&e), &Poly::x_pow(3)).unwrap(), int(6));
    }

    #[test]
    fn pair_rejects_short_series() {
        let err = pair(&NamedSeries::Exp.build(2), &Poly::x_pow(3)).unwrap_err();
        assert_eq!(err, Error::InsufficientTruncation { needed: 3, available: 2 });
        assert!(apply(&NamedSeries::Exp.build(2), &Poly::x_pow(3)).is_err());
        assert_eq!(pair(&NamedSeries::Exp.build(0), &Poly::zero()).unwrap(), int(0));
    }

    #[test]
    fn apply_examples() {
        let t = Series::monomial(1, int(1), 6);
        assert_eq!(apply(&t, &Poly::x_pow(5)).unwrap(), Poly::monomial(4, int(5)));
        assert_eq!(apply(&NamedSeries::Exp.build(2), &Poly::x_pow(2)).unwrap(), Poly::from_ints(&[1, 2, 1]));
        let v = rat(3, 4);
        let got = apply(&NamedSeries::Gaussian(v.clone()).build(2), &b2()).unwrap();
        assert_eq!(got, &b2() - &Poly::constant(v));
    }

    #[test]
    fn inv_t_examples() {
        assert_eq!(apply_inv_t(&Poly::x_pow(2), 1), Poly::monomial(3, rat(1, 3)));
        assert_eq!(apply_inv_t(&Poly::one(), 2), Poly::monomial(2, rat(1, 2)));
        let p = Poly::from_ints(&[0, -1, 0, 5]);
        let t = Series::monomial(1, int(1), 5);
        assert_eq!(apply(&t, &apply_inv_t(&p, 1)).unwrap(), p);
    }

    #[test]
    fn plain_inv_t_loses_the_constant_on_appell_sequences() {
        // integrating B_1 from 0 gives (B_2 - B_2(0))/2, not B_2/2
        let spec = bern_spec(6);
        let b1 = spec.poly(1).unwrap();
        let b2_half = spec.poly(2).unwrap().scale(&rat(1, 2));
        assert_eq!(&b2_half - &apply_inv_t(&b1, 1), Poly::constant(rat(1, 12)));
        assert_eq!(spec.inv_t(&b1, 1).unwrap(), b2_half);
    }

    #[test]
    fn appell_poly_examples() {
        assert_eq!(bern_spec(4).poly(1).unwrap(), Poly::from_coeffs(vec![rat(-1, 2), int(1)]));
        let id = AppellSpec::new(Series::one(6), "id").unwrap();
        for n in 0..=6 {
            assert_eq!(id.poly(n).unwrap(), Poly::x_pow(n));
        }
        for v in [int(-2), int(0), rat(1, 2), int(3)] {
            let spec = AppellSpec::bernoulli_hermite(1, &v, 6);
            let expected = &b2() - &Poly::constant(v.clone());
            assert_eq!(spec.poly(2).unwrap(), expected);
            let cross = apply(&NamedSeries::Gaussian(v.clone()).build(2), &bern_spec(4).poly(2).unwrap()).unwrap();
            assert_eq!(cross, expected);
        }
        assert!(AppellSpec::new(Series::monomial(1, int(1), 3), "t").is_err());
    }

    #[test]
    fn appell_next_examples() {
        let spec = bern_spec(6);
        assert_eq!(spec.next(&Poly::one()).unwrap(), spec.poly(1).unwrap());
        let id = AppellSpec::new(Series::one(6), "id").unwrap();
        assert_eq!(id.next(&Poly::x_pow(4)).unwrap(), Poly::x_pow(5));
        let hb = AppellSpec::bernoulli_hermite(1, &int(1), 6);
        let s1 = Poly::from_coeffs(vec![rat(-1, 2), int(1)]);
        assert_eq!(hb.next(&s1).unwrap(), &b2() - &Poly::one());
    }

    #[test]
    fn orthogonality_examples() {
        let spec = bern_spec(8);
        assert!(spec.orthogonality_defect(2, 2).unwrap().is_zero());
        assert!(spec.orthogonality_defect(3, 1).unwrap().is_zero());
        let id = AppellSpec::new(Series::one(8), "id").unwrap();
        for n in 0..=8 {
            assert!(id.orthogonality_defect(n, n).unwrap().is_zero());
        }
    }

    #[test]
    fn multiplication_examples() {
        let spec = bern_spec(8);
        for n in 0..=6 {
            assert!(spec.multiplication_defect(n, &int(1)).unwrap().is_zero());
        }
        // left side independently: substitute x -> 2x in B_2
        let b2_2x = Poly::from_coeffs(vec![rat(1, 6), int(-2), int(4)]);
        assert_eq!(spec.poly(2).unwrap().scale_arg(&int(2)), b2_2x);
        assert!(spec.multiplication_defect(2, &int(2)).unwrap().is_zero());
        let id = AppellSpec::new(Series::one(5), "id").unwrap();
        assert!(id.multiplication_defect(3, &int(-1)).unwrap().is_zero());
        assert_eq!(spec.multiplication_defect(2, &int(0)), Err(Error::AlphaZero));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
    }

    fn series_of(order: usize) -> impl Strategy<Value = Series> {
        proptest::collection::vec(small_rat(), order + 1).prop_map(|cs| Series::from_coeffs(cs).unwrap())
    }

    fn poly_of(max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pairing_is_adjoint_to_operator(f in series_of(7), g in series_of(7), p in poly_of(7)) {
            prop_assert_eq!(pair(&f.mul(&g), &p).unwrap(), pair(&f, &apply(&g, &p).unwrap()).unwrap());
        }

        #[test]
        fn exponential_evaluates_and_shifts(y in small_rat(), p in poly_of(7)) {
            let e = exp_scaled(&y, 7);
            prop_assert_eq!(pair(&e, &p).unwrap(), p.eval(&y));
            prop_assert_eq!(apply(&e, &p).unwrap(), p.shift(&y));
        }

        #[test]
        fn apply_does_not_raise_degree(f in series_of(7), p in poly_of(7)) {
            let q = apply(&f, &p).unwrap();
            prop_assert!(q.degree() <= p.degree());
        }

        #[test]
        fn appell_sequences_are_monic_and_differentiate(a in -2i64..=3, v in small_rat(), n in 1usize..=7) {
            let spec = AppellSpec::bernoulli_hermite(a, &v, 9);
            let s_n = spec.poly(n).unwrap();
            prop_assert!(s_n.is_monic());
            prop_assert_eq!(s_n.degree(), Some(n));
            let t = Series::monomial(1, int(1), 9);
            prop_assert_eq!(apply(&t, &s_n).unwrap(), spec.poly(n - 1).unwrap().scale(&int(n as i64)));
            prop_assert_eq!(spec.next(&spec.poly(n - 1).unwrap()).unwrap(), s_n);
        }
    }
}
