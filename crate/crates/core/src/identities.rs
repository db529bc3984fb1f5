//! One checker per identity. Each evaluates both sides exactly at every grid
//! point, through different code paths wherever the statement allows, and
//! records every mismatch.
//!
//! Two statements are checked in two variants: the closed form as published,
//! and the variant obtained by redoing the derivation. Exactly one member of
//! each pair is expected to hold; if both or neither do, that points at the
//! engine rather than at the formula.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{binomial, factorial, falling_factorial, int, rat, Poly, Rational};
use crate::families::{h_beta_kernel, hermite_number, Stirling2Table};
use crate::series::{exp_scaled, NamedSeries, Series};
use crate::umbral::{apply, pair, AppellSpec};
use crate::{Error, Result};

macro_rules! identity_ids {
    ($($variant:ident => $tag:literal),* $(,)?) => {
        /// Catalog key of a checked statement.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IdentityId {
            $($variant),*
        }

        impl IdentityId {
            /// Every identity, in catalog order.
            pub const ALL: [IdentityId; 18] = [$(IdentityId::$variant),*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $tag),*
                }
            }
        }
    };
}

identity_ids! {
    A1Pairing => "a1-pairing",
    A3Orthogonality => "a3-orthogonality",
    A6Derivative => "a6-derivative",
    A7InvT => "a7-inv-t",
    A8Step => "a8-step",
    MultFormula => "mult-formula",
    BetaLinearH => "beta-linear-h",
    ThmBetaBH => "thm-beta-BH",
    ThmDbeta => "thm-dbeta",
    Lemma2 => "lemma2",
    CorollaryB4 => "corollary-b4",
    ThmShift => "thm-shift",
    Lemma3 => "lemma3",
    ThmRecurrencePaper => "thm-recurrence-paper",
    ThmRecurrenceCorrected => "thm-recurrence-corrected",
    ThmStirlingPaper => "thm-stirling-paper",
    ThmStirlingCorrected => "thm-stirling-corrected",
    ThmExpRelation => "thm-exp-relation",
}

impl IdentityId {
    /// The other member of a published/derived pair.
    pub fn partner(self) -> Option<IdentityId> {
        use IdentityId::*;
        match self {
            ThmRecurrencePaper => Some(ThmRecurrenceCorrected),
            ThmRecurrenceCorrected => Some(ThmRecurrencePaper),
            ThmStirlingPaper => Some(ThmStirlingCorrected),
            ThmStirlingCorrected => Some(ThmStirlingPaper),
            _ => None,
        }
    }

    pub fn is_conjecture(self) -> bool {
        self.partner().is_some()
    }

    pub fn is_published_variant(self) -> bool {
        matches!(self, IdentityId::ThmRecurrencePaper | IdentityId::ThmStirlingPaper)
    }

    pub fn is_v_dependent(self) -> bool {
        self != IdentityId::A1Pairing
    }

    /// Upper bound on the degree in `v` of either side, over the grid.
    fn v_degree_bound(self, n_max: usize) -> usize {
        use IdentityId::*;
        match self {
            A1Pairing => 0,
            BetaLinearH | ThmDbeta => n_max,
            ThmStirlingPaper => 2 * (n_max / 2),
            _ => n_max / 2,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown identity {s:?}")))
    }
}

/// Parameter grid for a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckGrid {
    pub n_max: usize,
    pub a_values: Vec<i64>,
    pub v_values: Vec<Rational>,
    /// Largest `k` in `<(e^t-1)^k | .>`; only the Stirling checks use it.
    pub k_max: usize,
}

impl Default for CheckGrid {
    fn default() -> Self {
        Self {
            n_max: 10,
            a_values: (-1..=4).collect(),
            v_values: vec![int(-2), int(-1), int(0), rat(1, 2), int(1), int(3)],
            k_max: 6,
        }
    }
}

impl CheckGrid {
    fn distinct_v(&self) -> Vec<Rational> {
        let mut vs = self.v_values.clone();
        vs.sort();
        vs.dedup();
        vs
    }

    fn distinct_a(&self) -> Vec<i64> {
        let mut a = self.a_values.clone();
        a.sort_unstable();
        a.dedup();
        a
    }

    fn a_abs_max(&self) -> usize {
        self.a_values.iter().map(|a| a.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// `a` values whose predecessor `a - 1` stays inside the grid's range.
    fn a_with_predecessor(&self) -> Vec<i64> {
        let a = self.distinct_a();
        let lo = a.first().copied().unwrap_or(0);
        a.into_iter().filter(|&x| x - 1 >= lo).collect()
    }

    /// `(a, k)` with `k > a >= 1` and `k <= k_max`.
    fn stirling_pairs(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for a in self.distinct_a().into_iter().filter(|&a| a >= 1) {
            for k in (a as usize + 1)..=self.k_max {
                out.push((a, k));
            }
        }
        out
    }

    /// Rejects grids on which `id` cannot be evaluated meaningfully.
    pub fn validate_for(&self, id: IdentityId) -> Result<()> {
        if self.n_max < 2 {
            return Err(Error::InvalidGrid(format!("n_max must be at least 2, got {}", self.n_max)));
        }
        if self.a_values.is_empty() {
            return Err(Error::InvalidGrid("a_values is empty".into()));
        }
        if id.is_v_dependent() && self.v_values.is_empty() {
            return Err(Error::InvalidGrid(format!("{id} depends on v but v_values is empty")));
        }
        match id {
            IdentityId::Lemma2 | IdentityId::CorollaryB4 | IdentityId::ThmShift
                if self.a_with_predecessor().is_empty() =>
            {
                Err(Error::InvalidGrid(format!("{id} needs some a with a-1 inside the a range")))
            }
            IdentityId::ThmStirlingPaper | IdentityId::ThmStirlingCorrected if self.stirling_pairs().is_empty() => {
                Err(Error::InvalidGrid(format!("{id} needs some a >= 1 and k with a < k <= k_max")))
            }
            _ => Ok(()),
        }
    }

    pub fn validate(&self, ids: &[IdentityId]) -> Result<()> {
        ids.iter().try_for_each(|&id| self.validate_for(id))
    }
}

/// A grid-point coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Rational(Rational),
    Text(&'static str),
}

/// One side of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    Poly(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub params: Vec<(&'static str, ParamValue)>,
    /// Left side, computed through the operator machinery.
    pub expected: Value,
    /// Right side, the closed form under test.
    pub actual: Value,
}

impl Failure {
    pub fn param(&self, name: &str) -> Option<&ParamValue> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: IdentityId,
    pub grid: CheckGrid,
    pub total_points: usize,
    /// Points excluded because the statement is undefined there.
    pub skipped_points: usize,
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
    pub note: String,
}

struct Recorder {
    total: usize,
    skipped: usize,
    failures: Vec<Failure>,
}

impl Recorder {
    fn new() -> Self {
        Self { total: 0, skipped: 0, failures: Vec::new() }
    }

    fn poly(&mut self, params: Vec<(&'static str, ParamValue)>, expected: Poly, actual: Poly) {
        self.total += 1;
        if expected != actual {
            self.failures.push(Failure { params, expected: Value::Poly(expected), actual: Value::Poly(actual) });
        }
    }

    fn scalar(&mut self, params: Vec<(&'static str, ParamValue)>, expected: Rational, actual: Rational) {
        self.total += 1;
        if expected != actual {
            self.failures.push(Failure { params, expected: Value::Scalar(expected), actual: Value::Scalar(actual) });
        }
    }
}

fn n_(n: usize) -> (&'static str, ParamValue) {
    ("n", ParamValue::Int(n as i64))
}
fn a_(a: i64) -> (&'static str, ParamValue) {
    ("a", ParamValue::Int(a))
}
fn v_(v: &Rational) -> (&'static str, ParamValue) {
    ("v", ParamValue::Rational(v.clone()))
}

/// Kernels shared across the points of one check, built once at a common order.
struct Workspace {
    order: usize,
    h_beta: BTreeMap<(i64, Rational), Series>,
    bernoulli: BTreeMap<i64, Series>,
    appell: BTreeMap<(i64, Rational), AppellSpec>,
}

impl Workspace {
    fn new(grid: &CheckGrid) -> Self {
        // room for index n_max + 1 and order |a| + 1
        let order = crate::default_guard(grid.n_max + 1, grid.a_abs_max() + 1);
        Self { order, h_beta: BTreeMap::new(), bernoulli: BTreeMap::new(), appell: BTreeMap::new() }
    }

    /// `Hbeta_n^(a)(x, v)` from the product kernel.
    fn h_beta(&mut self, n: usize, a: i64, v: &Rational) -> Poly {
        let order = self.order;
        let kernel = self.h_beta.entry((a, v.clone())).or_insert_with(|| h_beta_kernel(a, v, order));
        apply(kernel, &Poly::x_pow(n)).expect("workspace order covers the grid")
    }

    /// `B_n^(a)(x)`.
    fn bernoulli(&mut self, n: usize, a: i64) -> Poly {
        let order = self.order;
        let kernel = self.bernoulli.entry(a).or_insert_with(|| NamedSeries::BernoulliGf(a).build(order));
        apply(kernel, &Poly::x_pow(n)).expect("workspace order covers the grid")
    }

    fn bernoulli_kernel(&mut self, a: i64) -> Series {
        let order = self.order;
        self.bernoulli.entry(a).or_insert_with(|| NamedSeries::BernoulliGf(a).build(order)).clone()
    }

    /// The Appell pair `g(t) = ((e^t-1)/t)^a e^(v t^2/2)`.
    fn appell(&mut self, a: i64, v: &Rational) -> &AppellSpec {
        let order = self.order;
        self.appell.entry((a, v.clone())).or_insert_with(|| AppellSpec::bernoulli_hermite(a, v, order))
    }
}

const A1_CASES_PER_DEGREE: usize = 4;
const A1_SEED: u64 = 0x0a1_5eed;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

/// Random series of the given order, for the pairing/operator laws.
pub fn random_series(rng: &mut ChaCha8Rng, order: usize) -> Series {
    Series::from_coeffs((0..=order).map(|_| random_rational(rng)).collect()).expect("nonempty")
}

/// Random polynomial of exact degree `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    let mut cs: Vec<Rational> = (0..=deg).map(|_| random_rational(rng)).collect();
    if cs[deg].is_zero() {
        cs[deg] = Rational::one();
    }
    Poly::from_coeffs(cs)
}

fn check_pairing_laws(grid: &CheckGrid, rec: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(A1_SEED);
    let order = grid.n_max;
    let ys = [int(-2), rat(-1, 3), int(0), int(1), rat(5, 2)];
    for deg in 0..=grid.n_max {
        for case in 0..A1_CASES_PER_DEGREE {
            let f = random_series(&mut rng, order);
            let g = random_series(&mut rng, order);
            let p = random_poly(&mut rng, deg);
            let at = |law: &'static str| {
                vec![("law", ParamValue::Text(law)), ("deg", ParamValue::Int(deg as i64)), ("case", ParamValue::Int(case as i64))]
            };
            rec.scalar(at("product"), pair(&f.mul(&g), &p)?, pair(&f, &apply(&g, &p)?)?);
            for y in &ys {
                let e = exp_scaled(y, order);
                let mut params = at("evaluation");
                params.push(("y", ParamValue::Rational(y.clone())));
                rec.scalar(params.clone(), pair(&e, &p)?, p.eval(y));
                params[0] = ("law", ParamValue::Text("translation"));
                rec.poly(params, apply(&e, &p)?, p.shift(y));
            }
        }
    }
    Ok(())
}

fn alphas() -> [Rational; 4] {
    [int(2), int(-1), rat(1, 2), rat(-3, 2)]
}

/// Right side of the recurrence closed form; `last_factor` multiplies the
/// `n(n+1) Hbeta_(n-1)` term.
fn recurrence_rhs(ws: &mut Workspace, n: usize, a: i64, v: &Rational, last_factor: &Rational) -> Poly {
    let np1 = int(n as i64 + 1);
    let s_n = ws.h_beta(n, a, v);
    let x_minus_a = Poly::from_coeffs(vec![int(-a), Rational::one()]);
    let first = (&x_minus_a * &s_n).scale(&np1);
    let second = ws.h_beta(n + 1, a + 1, v).scale(&int(a));
    let third = if n == 0 {
        Poly::zero()
    } else {
        ws.h_beta(n - 1, a, v).scale(&(int(n as i64) * &np1 * last_factor))
    };
    (&(&first - &second) - &third).scale(&int(n as i64 - a + 1).recip())
}

/// Right side of the Stirling pairing closed form; `coeff(m)` is the
/// `v`-dependent factor of the `m`-th term.
fn stirling_rhs(table: &Stirling2Table, n: usize, k: usize, a: usize, coeff: impl Fn(usize) -> Rational) -> Rational {
    let mut sum = Rational::zero();
    let mut m = 0;
    while 2 * m + a <= n {
        let term = coeff(m) * factorial(k - a) * falling_factorial(&int(n as i64), 2 * m + a)
            / (factorial(m) * int(1i64 << m))
            * table.get(n - 2 * m - a, k - a);
        sum += term;
        m += 1;
    }
    sum
}

fn pow(base: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * base)
}

fn run_points(id: IdentityId, grid: &CheckGrid, rec: &mut Recorder) -> Result<()> {
    use IdentityId::*;
    let mut ws = Workspace::new(grid);
    let n_max = grid.n_max;
    let avs: Vec<(i64, Rational)> = {
        let vs = grid.distinct_v();
        grid.distinct_a().into_iter().flat_map(|a| vs.iter().map(move |v| (a, v.clone()))).collect()
    };
    let t = Series::monomial(1, Rational::one(), ws.order);
    match id {
        A1Pairing => check_pairing_laws(grid, rec)?,
        A3Orthogonality => {
            for (a, v) in &avs {
                let spec = ws.appell(*a, v).clone();
                for n in 0..=n_max {
                    let s_n = spec.poly(n)?;
                    for k in 0..=n_max {
                        let lhs = pair(&spec.g().mul_t_pow(k), &s_n)?;
                        let delta = if n == k { factorial(n) } else { Rational::zero() };
                        rec.scalar(vec![n_(n), ("k", ParamValue::Int(k as i64)), a_(*a), v_(v)], delta, lhs);
                    }
                }
            }
        }
        A6Derivative => {
            for (a, v) in &avs {
                for n in 0..=n_max {
                    let lhs = apply(&t, &ws.h_beta(n, *a, v))?;
                    let rhs = if n == 0 { Poly::zero() } else { ws.appell(*a, v).poly(n - 1)?.scale(&int(n as i64)) };
                    rec.poly(vec![n_(n), a_(*a), v_(v)], lhs, rhs);
                }
            }
        }
        A7InvT => {
            for (a, v) in &avs {
                for n in 0..n_max {
                    let s_n = ws.h_beta(n, *a, v);
                    let lhs = ws.appell(*a, v).inv_t(&s_n, 1)?;
                    let rhs = ws.h_beta(n + 1, *a, v).scale(&int(n as i64 + 1).recip());
                    rec.poly(vec![n_(n), a_(*a), v_(v)], lhs, rhs);
                }
            }
        }
        A8Step => {
            for (a, v) in &avs {
                let spec = ws.appell(*a, v).clone();
                let mut s = Poly::one();
                for n in 0..=n_max {
                    if n > 0 {
                        s = spec.next(&s)?;
                    }
                    let direct = spec.poly(n)?;
                    rec.poly(vec![("law", ParamValue::Text("recurrence")), n_(n), a_(*a), v_(v)], direct.clone(), s.clone());
                    let family = ws.h_beta(n, *a, v);
                    rec.poly(vec![("law", ParamValue::Text("construction")), n_(n), a_(*a), v_(v)], direct, family);
                }
            }
        }
        MultFormula => {
            for (a, v) in &avs {
                let spec = ws.appell(*a, v).clone();
                for alpha in alphas() {
                    let operator = spec.multiplication_operator(&alpha)?;
                    for n in 0..=n_max {
                        let s_n = spec.poly(n)?;
                        let lhs = s_n.scale_arg(&alpha);
                        let rhs = AppellSpec::apply_multiplication(&operator, &alpha, &s_n)?;
                        rec.poly(vec![n_(n), a_(*a), v_(v), ("alpha", ParamValue::Rational(alpha.clone()))], lhs, rhs);
                    }
                }
            }
        }
        BetaLinearH => {
            for (a, v) in &avs {
                let kernel = ws.bernoulli_kernel(*a).mul(&NamedSeries::Linear(v.clone()).build(ws.order).exp()?);
                for n in 0..=n_max {
                    let lhs = apply(&kernel, &Poly::x_pow(n))?;
                    let mut sum = Poly::zero();
                    for j in 0..=n {
                        let c = binomial(n, j) * pow(&-v, n - j);
                        sum = &sum + &ws.bernoulli(j, *a).scale(&c);
                    }
                    rec.poly(vec![("law", ParamValue::Text("binomial-sum")), n_(n), a_(*a), v_(v)], lhs.clone(), sum);
                    let shifted = ws.bernoulli(n, *a).shift(&-v);
                    rec.poly(vec![("law", ParamValue::Text("shift")), n_(n), a_(*a), v_(v)], lhs, shifted);
                }
            }
        }
        ThmBetaBH => {
            for (a, v) in &avs {
                let h = Series::monomial(2, -v / int(2), ws.order);
                let kernel = ws.bernoulli_kernel(*a).mul(&h.exp()?);
                let hermite_numbers: Vec<Rational> = (0..=n_max).map(|m| hermite_number(m, v)).collect();
                for n in 0..=n_max {
                    let lhs = apply(&kernel, &Poly::x_pow(n))?;
                    let mut sum = Poly::zero();
                    for j in 0..=n {
                        sum = &sum + &ws.bernoulli(j, *a).scale(&(binomial(n, j) * &hermite_numbers[n - j]));
                    }
                    rec.poly(vec![n_(n), a_(*a), v_(v)], lhs, sum);
                }
            }
        }
        ThmDbeta => {
            for (a, v) in &avs {
                for (shape, h) in [
                    ("linear", NamedSeries::Linear(v.clone()).build(ws.order)),
                    ("gaussian", Series::monomial(2, -v / int(2), ws.order)),
                ] {
                    let kernel = ws.bernoulli_kernel(*a).mul(&h.exp()?);
                    for n in 0..=n_max {
                        let lhs = apply(&kernel, &Poly::x_pow(n))?.derivative();
                        let rhs = if n == 0 {
                            Poly::zero()
                        } else {
                            apply(&kernel, &Poly::x_pow(n - 1))?.scale(&int(n as i64))
                        };
                        rec.poly(vec![("h", ParamValue::Text(shape)), n_(n), a_(*a), v_(v)], lhs, rhs);
                    }
                }
            }
        }
        Lemma2 | CorollaryB4 | ThmShift => {
            let a_ok = grid.a_with_predecessor();
            let expm1 = NamedSeries::Expm1.build(ws.order);
            let exp = NamedSeries::Exp.build(ws.order);
            for (a, v) in avs.iter().filter(|(a, _)| a_ok.contains(a)) {
                for n in 0..=n_max {
                    let s_n = ws.h_beta(n, *a, v);
                    let lowered =
                        if n == 0 { Poly::zero() } else { ws.h_beta(n - 1, a - 1, v).scale(&int(n as i64)) };
                    let (lhs, rhs) = match id {
                        Lemma2 => (apply(&expm1, &s_n)?, lowered),
                        CorollaryB4 => (apply(&exp, &s_n)?, &lowered + &s_n),
                        _ => (s_n.shift(&Rational::one()), &lowered + &s_n),
                    };
                    rec.poly(vec![n_(n), a_(*a), v_(v)], lhs, rhs);
                }
            }
        }
        Lemma3 => {
            let bern1 = NamedSeries::BernoulliGf(1).build(ws.order);
            for (a, v) in &avs {
                for n in 0..n_max {
                    let s_n = ws.h_beta(n, *a, v);
                    // 1/(e^t - 1) = (t/(e^t - 1)) (1/t)
                    let integrated = ws.appell(*a, v).inv_t(&s_n, 1)?;
                    let lhs = apply(&bern1, &integrated)?;
                    let rhs = ws.h_beta(n + 1, a + 1, v).scale(&int(n as i64 + 1).recip());
                    rec.poly(vec![n_(n), a_(*a), v_(v)], lhs, rhs);
                }
            }
        }
        ThmRecurrencePaper | ThmRecurrenceCorrected => {
            for (a, v) in &avs {
                for n in 0..n_max {
                    if n as i64 - a + 1 == 0 {
                        rec.skipped += 1;
                        continue;
                    }
                    let lhs = ws.appell(*a, v).poly(n + 1)?;
                    let factor = if id == ThmRecurrencePaper { Rational::one() } else { v.clone() };
                    let rhs = recurrence_rhs(&mut ws, n, *a, v, &factor);
                    rec.poly(vec![n_(n), a_(*a), v_(v)], lhs, rhs);
                }
            }
        }
        ThmStirlingPaper | ThmStirlingCorrected => {
            let table = Stirling2Table::new(n_max);
            let vs = grid.distinct_v();
            for (a, k) in grid.stirling_pairs() {
                let power = NamedSeries::Expm1.build(n_max).int_pow(k as i64)?;
                for n in 0..=n_max {
                    for v in &vs {
                        let lhs = pair(&power, &ws.h_beta(n, a, v))?;
                        let rhs = if id == ThmStirlingPaper {
                            stirling_rhs(&table, n, k, a as usize, |m| pow(&-v, 2 * m))
                        } else {
                            stirling_rhs(&table, n, k, a as usize, |m| pow(&-v, m))
                        };
                        rec.scalar(vec![n_(n), ("k", ParamValue::Int(k as i64)), a_(a), v_(v)], lhs, rhs);
                    }
                }
            }
        }
        ThmExpRelation => {
            let gaussians: Vec<(Rational, Series)> = grid
                .distinct_v()
                .into_iter()
                .map(|v| {
                    let g = NamedSeries::Gaussian(v.clone()).build(ws.order);
                    (v, g)
                })
                .collect();
            for a in grid.distinct_a() {
                for (v, gauss) in &gaussians {
                    for n in 0..=n_max {
                        let lhs = apply(gauss, &ws.bernoulli(n, a))?;
                        rec.poly(vec![n_(n), a_(a), v_(v)], lhs, ws.h_beta(n, a, v));
                    }
                }
            }
        }
    }
    Ok(())
}

fn note_for(id: IdentityId, grid: &CheckGrid, verdict: Verdict) -> String {
    let mut parts: Vec<String> = Vec::new();
    if id.is_conjecture() {
        parts.push(if id.is_published_variant() { "as published".into() } else { "derived variant".into() });
    }
    if id.is_v_dependent() {
        let distinct = grid.distinct_v().len();
        let degree = id.v_degree_bound(grid.n_max);
        if distinct > degree {
            if verdict == Verdict::Pass {
                parts.push(format!(
                    "holds identically in v: both sides have degree <= {degree} in v and agree at {distinct} distinct values"
                ));
            }
        } else {
            parts.push(format!(
                "sampled at {distinct} distinct v values; {} needed to conclude an identity in v",
                degree + 1
            ));
        }
    }
    parts.join("; ")
}

/// Evaluates `id` on every point of `grid`.
pub fn check_identity(id: IdentityId, grid: &CheckGrid) -> Result<CheckReport> {
    grid.validate_for(id)?;
    let mut rec = Recorder::new();
    run_points(id, grid, &mut rec)?;
    let verdict = if rec.failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(CheckReport {
        id,
        grid: grid.clone(),
        total_points: rec.total,
        skipped_points: rec.skipped,
        failures: rec.failures,
        verdict,
        note: note_for(id, grid, verdict),
    })
}

/// Runs `ids` in catalog order. The grid is validated up front; an error
/// inside one check becomes a failing report instead of aborting the run.
pub fn run_selected(ids: &[IdentityId], grid: &CheckGrid) -> Result<Vec<CheckReport>> {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    grid.validate(&ids)?;
    Ok(ids.into_iter().map(|id| check_identity_recorded(id, grid)).collect())
}

/// Like [`check_identity`], but an evaluation error becomes a failing report
/// whose note carries the error.
pub fn check_identity_recorded(id: IdentityId, grid: &CheckGrid) -> CheckReport {
    check_identity(id, grid).unwrap_or_else(|e| CheckReport {
        id,
        grid: grid.clone(),
        total_points: 0,
        skipped_points: 0,
        failures: Vec::new(),
        verdict: Verdict::Fail,
        note: format!("error: {e}"),
    })
}

pub fn run_all(grid: &CheckGrid) -> Result<Vec<CheckReport>> {
    run_selected(&IdentityId::ALL, grid)
}

/// Outcome of running both variants of a published/derived pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjudication {
    PublishedHolds,
    DerivedHolds,
    /// Both or neither variant passed.
    EngineError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteVerdict {
    pub pass: bool,
    /// `(published, derived, outcome)` for each pair present in the run.
    pub adjudications: Vec<(IdentityId, IdentityId, Adjudication)>,
}

/// Passes iff every non-conjecture report passes and every complete
/// published/derived pair has exactly one passing member. A variant run
/// without its partner must pass on its own.
pub fn aggregate(reports: &[CheckReport]) -> SuiteVerdict {
    let find = |id: IdentityId| reports.iter().find(|r| r.id == id);
    let mut pass = true;
    let mut adjudications = Vec::new();
    for r in reports {
        match r.id.partner() {
            None => pass &= r.verdict == Verdict::Pass,
            Some(partner) => match find(partner) {
                None => pass &= r.verdict == Verdict::Pass,
                Some(other) if r.id.is_published_variant() => {
                    let outcome = match (r.verdict, other.verdict) {
                        (Verdict::Pass, Verdict::Fail) => Adjudication::PublishedHolds,
                        (Verdict::Fail, Verdict::Pass) => Adjudication::DerivedHolds,
                        _ => Adjudication::EngineError,
                    };
                    pass &= outcome != Adjudication::EngineError;
                    adjudications.push((r.id, other.id, outcome));
                }
                Some(_) => {}
            },
        }
    }
    SuiteVerdict { pass, adjudications }
}
