//! Exact coefficients.
//!
//! [`BaseNumber`] is an element of the field ℚ(i, √2), stored on the basis
//! `1, i, √2, i√2`. [`Scalar`] is a sparse polynomial in the deformation
//! parameters `mu1..mun` with `BaseNumber` coefficients. Every operator the
//! engine builds has coefficients in this ring, so equality is exact and
//! needs no GCDs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}

/// Binary operation selector for the checked entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `c[0] + c[1]·i + c[2]·√2 + c[3]·i√2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BaseNumber {
    c: [BigRational; 4],
}

// Multiplication table on the basis 1, i, √2, i√2: (index, factor).
const MUL_TABLE: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, -1), (3, 1), (2, -1)],
    [(2, 1), (3, 1), (0, 2), (1, 2)],
    [(3, 1), (2, -1), (1, 2), (0, -2)],
];

impl BaseNumber {
    pub fn new(p: BigRational, q: BigRational, r: BigRational, s: BigRational) -> Self {
        BaseNumber { c: [p, q, r, s] }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(p: BigRational) -> Self {
        BaseNumber {
            c: [p, BigRational::zero(), BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn i() -> Self {
        Self::basis(1)
    }

    pub fn sqrt2() -> Self {
        Self::basis(2)
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        Self::sqrt2().scale(&rat(1, 2))
    }

    fn basis(k: usize) -> Self {
        let mut b = Self::zero();
        b.c[k] = BigRational::one();
        b
    }

    /// Components on the basis `1, i, √2, i√2`.
    pub fn components(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when the irrational components vanish.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        BaseNumber {
            c: [&self.c[0] * k, &self.c[1] * k, &self.c[2] * k, &self.c[3] * k],
        }
    }

    /// Complex conjugation (i → −i, √2 fixed).
    pub fn conj(&self) -> Self {
        BaseNumber {
            c: [self.c[0].clone(), -&self.c[1], self.c[2].clone(), -&self.c[3]],
        }
    }

    /// The Galois conjugate √2 → −√2.
    fn conj_sqrt2(&self) -> Self {
        BaseNumber {
            c: [self.c[0].clone(), self.c[1].clone(), -&self.c[2], -&self.c[3]],
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // a·σ(a) lies in ℚ(i); then divide by its complex norm.
        let sigma = self.conj_sqrt2();
        let w = self * &sigma;
        debug_assert!(w.c[2].is_zero() && w.c[3].is_zero());
        let norm = &w.c[0] * &w.c[0] + &w.c[1] * &w.c[1];
        let w_inv = w.conj().scale(&norm.recip());
        Ok(&sigma * &w_inv)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn combine(&self, rhs: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    fn nonzero_components(&self) -> usize {
        self.c.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<'a> Add<&'a BaseNumber> for &'a BaseNumber {
    type Output = BaseNumber;
    fn add(self, rhs: &BaseNumber) -> BaseNumber {
        BaseNumber {
            c: std::array::from_fn(|k| &self.c[k] + &rhs.c[k]),
        }
    }
}

impl<'a> Sub<&'a BaseNumber> for &'a BaseNumber {
    type Output = BaseNumber;
    fn sub(self, rhs: &BaseNumber) -> BaseNumber {
        BaseNumber {
            c: std::array::from_fn(|k| &self.c[k] - &rhs.c[k]),
        }
    }
}

impl<'a> Mul<&'a BaseNumber> for &'a BaseNumber {
    type Output = BaseNumber;
    fn mul(self, rhs: &BaseNumber) -> BaseNumber {
        let mut out = BaseNumber::zero();
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (idx, f) = MUL_TABLE[j][k];
                let prod = a * b;
                if f == 1 {
                    out.c[idx] += prod;
                } else {
                    out.c[idx] += prod * int(f);
                }
            }
        }
        out
    }
}

impl Neg for &BaseNumber {
    type Output = BaseNumber;
    fn neg(self) -> BaseNumber {
        BaseNumber {
            c: std::array::from_fn(|k| -&self.c[k]),
        }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $trait:ident, $method:ident) => {
        impl $trait<$t> for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a $t> for $t {
            type Output = $t;
            fn $method(self, rhs: &'a $t) -> $t {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(BaseNumber, Add, add);
forward_owned_binop!(BaseNumber, Sub, sub);
forward_owned_binop!(BaseNumber, Mul, mul);

impl Neg for BaseNumber {
    type Output = BaseNumber;
    fn neg(self) -> BaseNumber {
        -&self
    }
}

impl fmt::Display for BaseNumber {
    /// Renders as e.g. `3/2`, `-i`, `1/2*sqrt2`, `(1 + i*sqrt2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<(bool, String)> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.is_negative(), render_component(&c.abs(), k)))
            .collect();
        let grouped = parts.len() > 1;
        if grouped {
            write!(f, "(")?;
        }
        for (n, (neg, body)) in parts.iter().enumerate() {
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        if grouped {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn render_component(c: &BigRational, basis: usize) -> String {
    let unit = ["", "i", "sqrt2", "i*sqrt2"][basis];
    if basis == 0 {
        c.to_string()
    } else if c.is_one() {
        unit.to_string()
    } else {
        format!("{c}*{unit}")
    }
}

type Exponents = Vec<u32>;

/// Polynomial in `mu1..mun` over ℚ(i, √2). The arity `n` is part of the value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    nparams: usize,
    terms: BTreeMap<Exponents, BaseNumber>,
}

impl Scalar {
    pub fn zero(nparams: usize) -> Self {
        Scalar {
            nparams,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nparams: usize) -> Self {
        Self::constant(nparams, BaseNumber::one())
    }

    pub fn constant(nparams: usize, c: BaseNumber) -> Self {
        let mut s = Self::zero(nparams);
        if !c.is_zero() {
            s.terms.insert(vec![0; nparams], c);
        }
        s
    }

    pub fn from_rational(nparams: usize, q: BigRational) -> Self {
        Self::constant(nparams, BaseNumber::from_rational(q))
    }

    pub fn from_int(nparams: usize, n: i64) -> Self {
        Self::constant(nparams, BaseNumber::from_int(n))
    }

    /// The parameter `mu_{index+1}` (zero-based index).
    pub fn param(nparams: usize, index: usize) -> Self {
        assert!(index < nparams, "parameter index {index} out of range");
        let mut e = vec![0; nparams];
        e[index] = 1;
        let mut s = Self::zero(nparams);
        s.terms.insert(e, BaseNumber::one());
        s
    }

    /// Builds a scalar from raw terms, normalizing (merging and pruning zeros).
    pub fn from_terms<I>(nparams: usize, terms: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = (Vec<u32>, BaseNumber)>,
    {
        let mut s = Self::zero(nparams);
        for (e, c) in terms {
            if e.len() != nparams {
                return Err(ScalarError::ArityMismatch {
                    expected: nparams,
                    found: e.len(),
                });
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BaseNumber)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value when the scalar does not depend on any parameter.
    pub fn as_constant(&self) -> Option<BaseNumber> {
        match self.terms.len() {
            0 => Some(BaseNumber::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Exponents, c: BaseNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), ScalarError> {
        if self.nparams == other.nparams {
            Ok(())
        } else {
            Err(ScalarError::ArityMismatch {
                expected: self.nparams,
                found: other.nparams,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check_arity(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check_arity(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check_arity(rhs)?;
        let mut out = Self::zero(self.nparams);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn combine(&self, rhs: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        match op {
            ArithOp::Add => self.checked_add(rhs),
            ArithOp::Sub => self.checked_sub(rhs),
            ArithOp::Mul => self.checked_mul(rhs),
            ArithOp::Div => self.div_exact(rhs),
        }
    }

    pub fn scale(&self, k: &BaseNumber) -> Self {
        if k.is_zero() {
            return Self::zero(self.nparams);
        }
        Scalar {
            nparams: self.nparams,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nparams);
        }
        Scalar {
            nparams: self.nparams,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scale(k))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nparams);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Self {
        Scalar {
            nparams: self.nparams,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    /// Full substitution `mu_k = values[k]`.
    pub fn evaluate(&self, values: &[BigRational]) -> Result<BaseNumber, ScalarError> {
        if values.len() != self.nparams {
            return Err(ScalarError::ArityMismatch {
                expected: self.nparams,
                found: values.len(),
            });
        }
        let mut acc = BaseNumber::zero();
        for (e, c) in &self.terms {
            let mut m = BigRational::one();
            for (v, &k) in values.iter().zip(e) {
                m *= num_traits::pow(v.clone(), k as usize);
            }
            acc = acc + c.scale(&m);
        }
        Ok(acc)
    }

    /// Substitutes the leading `values.len()` parameters; the rest stay symbolic.
    pub fn substitute_prefix(&self, values: &[BigRational]) -> Result<Self, ScalarError> {
        if values.len() > self.nparams {
            return Err(ScalarError::ArityMismatch {
                expected: self.nparams,
                found: values.len(),
            });
        }
        let mut out = Self::zero(self.nparams);
        for (e, c) in &self.terms {
            let mut m = BigRational::one();
            let mut rest = e.clone();
            for (k, v) in values.iter().enumerate() {
                m *= num_traits::pow(v.clone(), e[k] as usize);
                rest[k] = 0;
            }
            out.add_term(rest, c.scale(&m));
        }
        Ok(out)
    }

    /// Exact division, lexicographic leading terms. `Ok` only if `rhs`
    /// divides `self` in the polynomial ring.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check_arity(rhs)?;
        let (lead_e, lead_c) = rhs.terms.iter().next_back().ok_or(ScalarError::DivisionByZero)?;
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nparams);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Err(ScalarError::DivisionByZero);
            }
            let qe: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c * &lead_inv;
            let t = Scalar {
                nparams: self.nparams,
                terms: BTreeMap::from([(qe, qc)]),
            };
            rem = &rem - &(&t * rhs);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// `Some(q)` when `rhs` divides `self` exactly.
    pub fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs).ok()
    }

    /// True when the scalar is a single product `c·mu^e` with `c` on one basis element.
    pub fn is_atomic(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.nonzero_components() == 1)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar arity")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar arity")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar arity")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            nparams: self.nparams,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

forward_owned_binop!(Scalar, Add, add);
forward_owned_binop!(Scalar, Sub, sub);
forward_owned_binop!(Scalar, Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.nparams, rhs.nparams, "scalar arity");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.nparams, rhs.nparams, "scalar arity");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

fn render_params(e: &[u32]) -> Vec<String> {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("mu{}", i + 1)
            } else {
                format!("mu{}^{}", i + 1, k)
            }
        })
        .collect()
}

/// Renders a single term as (negative?, magnitude). The magnitude never starts with `-`.
pub(crate) fn render_scalar_term(e: &[u32], c: &BaseNumber) -> (bool, String) {
    let params = render_params(e);
    let (neg, coeff) = if c.nonzero_components() == 1 {
        let neg = c.c.iter().any(|x| x.is_negative());
        let mag = if neg { -c } else { c.clone() };
        (neg, mag)
    } else {
        (false, c.clone())
    };
    let body = if params.is_empty() {
        coeff.to_string()
    } else if coeff.is_one() {
        params.join("*")
    } else {
        format!("{}*{}", coeff, params.join("*"))
    };
    (neg, body)
}

impl fmt::Display for Scalar {
    /// Terms in ascending lexicographic order of the exponent vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let (neg, body) = render_scalar_term(e, c);
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(n: usize, i: usize) -> Scalar {
        Scalar::param(n, i)
    }

    #[test]
    fn quadratic_norm() {
        let a = BaseNumber::one() + BaseNumber::sqrt2();
        let b = BaseNumber::one() - BaseNumber::sqrt2();
        assert_eq!(a.combine(&b, ArithOp::Mul).unwrap(), BaseNumber::from_int(-1));
    }

    #[test]
    fn i_over_i() {
        let i = BaseNumber::i();
        assert_eq!(i.combine(&i, ArithOp::Div).unwrap(), BaseNumber::one());
    }

    #[test]
    fn inverse_sqrt2_squared() {
        // 1/√2 = √2/2, so (√2/2)² = 2/4.
        let h = BaseNumber::sqrt2().inv().unwrap();
        assert_eq!(h, BaseNumber::inv_sqrt2());
        assert_eq!(&h * &h, BaseNumber::from_rational(rat(1, 2)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = BaseNumber::i();
        assert_eq!(
            a.combine(&BaseNumber::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn binomial_square() {
        let s = &mu(2, 0) + &mu(2, 1);
        let sq = &s * &s;
        let expected = Scalar::from_terms(
            2,
            [
                (vec![2, 0], BaseNumber::one()),
                (vec![1, 1], BaseNumber::from_int(2)),
                (vec![0, 2], BaseNumber::one()),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn cancellation_gives_empty_map() {
        let z = &mu(2, 0) - &mu(2, 0);
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn gamma2_assembly() {
        let two = Scalar::from_int(2, 2);
        let g2 = &(&two * &mu(2, 0).pow(2)) - &(&two * &mu(2, 1).pow(2));
        assert_eq!(g2.to_string(), "-2*mu2^2 + 2*mu1^2");
    }

    #[test]
    fn arity_mismatch() {
        assert_eq!(
            mu(2, 0).checked_mul(&mu(3, 0)),
            Err(ScalarError::ArityMismatch { expected: 2, found: 3 })
        );
        assert!(mu(2, 0).evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let v = [rat(1, 3), rat(1, 2)];
        let s = &mu(2, 0) + &mu(2, 1);
        assert_eq!(s.evaluate(&v).unwrap(), BaseNumber::from_rational(rat(5, 6)));
        assert_eq!(Scalar::zero(2).evaluate(&v).unwrap(), BaseNumber::zero());
        // 1/9 - 1/4 = -5/36
        let d = &mu(2, 0).pow(2) - &mu(2, 1).pow(2);
        assert_eq!(d.evaluate(&v).unwrap(), BaseNumber::from_rational(rat(-5, 36)));
    }

    #[test]
    fn partial_substitution_keeps_rest_symbolic() {
        let s = &mu(3, 0) * &mu(3, 2);
        let t = s.substitute_prefix(&[rat(1, 2)]).unwrap();
        assert_eq!(t, mu(3, 2).scale_rational(&rat(1, 2)));
    }

    #[test]
    fn exact_division() {
        let a = &mu(2, 0) + &Scalar::from_rational(2, rat(1, 2));
        let b = &mu(2, 1) - &mu(2, 0);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(a.try_div(&b).is_none());
        assert!(a.div_exact(&Scalar::zero(2)).is_err());
    }

    #[test]
    fn rendering() {
        let s = &Scalar::constant(1, BaseNumber::inv_sqrt2()) - &mu(1, 0).scale(&BaseNumber::i());
        assert_eq!(s.to_string(), "1/2*sqrt2 - i*mu1");
        let c = BaseNumber::one() + BaseNumber::i();
        assert_eq!(c.to_string(), "(1 + i)");
    }
}
