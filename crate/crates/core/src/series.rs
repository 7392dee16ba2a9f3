//! Truncated formal power series.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `z^0 ..= z^N`; everything above `z^N` is unknown. Every operation is
//! exact through the order it reports and never extends it. Binary
//! operations truncate to the smaller order.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// Builds a series from `coeffs[k]` = coefficient of `z^k`. The order is
    /// `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one coefficient".into(),
            ));
        }
        Self::checked(coeffs)
    }

    fn checked(coeffs: Vec<C>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// `c z^k`, or the zero series when `k` exceeds the order.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `z`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `z^k`. Panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        Self::checked(
            (0..=n)
                .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        Self::checked(
            (0..=n)
                .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Result<Self> {
        Self::checked(self.coeffs.iter().map(|c| s.clone() * c.clone()).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = C::zero();
            for j in 0..=k {
                acc = acc + self.coeffs[j].clone() * other.coeffs[k - j].clone();
            }
            out.push(acc);
        }
        Self::checked(out)
    }

    /// The quotient `q` with `q * other = self` through the smaller order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order().min(other.order());
        let mut q: Vec<C> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = acc - other.coeffs[j].clone() * q[k - j].clone();
            }
            q.push(acc / b0.clone());
        }
        Self::checked(q)
    }

    /// `log(u)` for a unit series `u(0) = 1`, from `L' = u'/u`:
    /// `k L_k = k u_k - sum_{j=1}^{k-1} j L_j u_{k-j}`.
    pub fn log_unit(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantNotOne);
        }
        let n = self.order();
        let mut log = vec![C::zero(); n + 1];
        for k in 1..=n {
            let mut acc = C::from_i64(k as i64) * self.coeffs[k].clone();
            for j in 1..k {
                acc = acc - C::from_i64(j as i64) * log[j].clone() * self.coeffs[k - j].clone();
            }
            log[k] = acc / C::from_i64(k as i64);
        }
        Self::checked(log)
    }

    /// `exp(v)` for `v(0) = 0`, from `E' = v' E`:
    /// `k E_k = sum_{j=1}^{k} j v_j E_{k-j}`.
    pub fn exp_zero(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantNonZero);
        }
        let n = self.order();
        let mut exp = vec![C::zero(); n + 1];
        exp[0] = C::one();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + C::from_i64(j as i64) * self.coeffs[j].clone() * exp[k - j].clone();
            }
            exp[k] = acc / C::from_i64(k as i64);
        }
        Self::checked(exp)
    }

    /// `outer(inner(z))` by Horner's scheme, truncated to the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ComposeInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Self::checked(acc.coeffs)
    }

    /// Term-wise derivative; the result has order one less.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() < 1 {
            return Err(Error::InsufficientOrder { have: 0, need: 1 });
        }
        Self::checked(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| C::from_i64(k as i64) * c.clone())
                .collect(),
        )
    }

    /// `f(z) - f(-z)`: odd coefficients doubled, even ones zeroed.
    pub fn odd_part_reflect(&self) -> Self {
        let two = C::from_i64(2);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { two.clone() * c.clone() } else { C::zero() })
                .collect(),
        }
    }

    /// `f(-z)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// `f(z)/z`, known through one order less. Requires `f(0) = 0`.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDivisibleByZ);
        }
        if self.order() < 1 {
            return Err(Error::InsufficientOrder { have: 0, need: 1 });
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `z f(z)`, keeping the same order (the top coefficient falls off).
    pub fn mul_z(&self) -> Self {
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs[..n].iter().cloned());
        Self { coeffs }
    }

    /// Evaluates the truncated polynomial at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + c.to_complex())
    }

    pub fn to_float(&self) -> TruncatedSeries<Complex64> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(Coeff::to_complex).collect(),
        }
    }
}

impl TruncatedSeries<BigRational> {
    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(p, q)| BigRational::from_ratio(p, q)).collect())
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigRational::from_i64(v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ints(v: &[i64]) -> TruncatedSeries<BigRational> {
        TruncatedSeries::from_integers(v).unwrap()
    }

    fn ratios(v: &[(i64, i64)]) -> TruncatedSeries<BigRational> {
        TruncatedSeries::from_ratios(v).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(ints(&[1, 1]).add(&ints(&[1, -1])).unwrap(), ints(&[2, 0]));
        let f = ints(&[0, 1, 3, -2]);
        assert_eq!(f.add(&TruncatedSeries::zero(3)).unwrap(), f);
        assert_eq!(
            ints(&[0, 1, 1, 0]).add(&ints(&[0, 0, 1, 1])).unwrap(),
            ints(&[0, 1, 2, 1])
        );
        // result order is the smaller one
        assert_eq!(ints(&[1, 2, 3]).add(&ints(&[1, 1])).unwrap().order(), 1);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ints(&[1, 1, 0]).mul(&ints(&[1, -1, 0])).unwrap(), ints(&[1, 0, -1]));
        let f = ints(&[0, 1, 5, 7]);
        assert_eq!(f.mul(&TruncatedSeries::one(3)).unwrap(), f);
        let g = ints(&[0, 1, 1, 0, 0]);
        assert_eq!(g.mul(&g).unwrap(), ints(&[0, 0, 1, 2, 1]));
    }

    #[test]
    fn div_examples() {
        assert_eq!(
            TruncatedSeries::one(3).div(&ints(&[1, -1, 0, 0])).unwrap(),
            ints(&[1, 1, 1, 1])
        );
        let a = ints(&[2, 3, -1, 4]);
        assert_eq!(a.div(&a).unwrap(), TruncatedSeries::one(3));
        assert_eq!(ints(&[1, 0, -1]).div(&ints(&[1, -1, 0])).unwrap(), ints(&[1, 1, 0]));
        assert_eq!(ints(&[1, 1]).div(&ints(&[0, 1])), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn log_examples() {
        assert_eq!(
            ints(&[1, 1, 1, 1]).log_unit().unwrap(),
            ratios(&[(0, 1), (1, 1), (1, 2), (1, 3)])
        );
        assert_eq!(TruncatedSeries::<BigRational>::one(5).log_unit().unwrap(), TruncatedSeries::zero(5));
        let u = TruncatedSeries::one(4).div(&ints(&[1, 0, -1, 0, 0])).unwrap();
        let log = u.log_unit().unwrap();
        assert_eq!(log, ratios(&[(0, 1), (0, 1), (1, 1), (0, 1), (1, 2)]));
        assert_eq!(log.exp_zero().unwrap(), u);
        assert_eq!(ints(&[2, 1]).log_unit(), Err(Error::LogConstantNotOne));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::<BigRational>::zero(4).exp_zero().unwrap(), TruncatedSeries::one(4));
        assert_eq!(
            TruncatedSeries::<BigRational>::variable(3).exp_zero().unwrap(),
            ratios(&[(1, 1), (1, 1), (1, 2), (1, 6)])
        );
        let geometric = ints(&[1; 11]);
        assert_eq!(geometric.log_unit().unwrap().exp_zero().unwrap(), geometric);
        assert_eq!(ints(&[1, 1]).exp_zero(), Err(Error::ExpConstantNonZero));
    }

    #[test]
    fn compose_examples() {
        let geometric = ints(&[1, 1, 1, 1, 1]);
        assert_eq!(
            geometric.compose(&ints(&[0, 0, 1, 0, 0])).unwrap(),
            ints(&[1, 0, 1, 0, 1])
        );
        let outer = ints(&[3, -1, 4, 1]);
        assert_eq!(outer.compose(&TruncatedSeries::variable(3)).unwrap(), outer);

        // (1+u)/(1-u) at u = z/2, checked against dividing the composed pieces
        let cayley = ints(&[1, 1, 0]).div(&ints(&[1, -1, 0])).unwrap();
        let half_z = ratios(&[(0, 1), (1, 2), (0, 1)]);
        let composed = cayley.compose(&half_z).unwrap();
        let one = TruncatedSeries::one(2);
        let oracle = one.add(&half_z).unwrap().div(&one.sub(&half_z).unwrap()).unwrap();
        assert_eq!(composed, oracle);
        assert_eq!(composed, ratios(&[(1, 1), (1, 1), (1, 2)]));

        assert_eq!(outer.compose(&ints(&[1, 1, 0, 0])), Err(Error::ComposeInnerConstant));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ints(&[0, 1, 0, 1]).derivative().unwrap(), ints(&[1, 0, 3]));
        assert_eq!(ints(&[7, 0, 0]).derivative().unwrap(), ints(&[0, 0]));
        assert_eq!(
            ratios(&[(0, 1), (0, 1), (1, 2)]).derivative().unwrap(),
            ints(&[0, 1])
        );
        assert!(ints(&[7]).derivative().is_err());
    }

    #[test]
    fn odd_part_examples() {
        assert_eq!(ints(&[0, 1, 1, 1]).odd_part_reflect(), ints(&[0, 2, 0, 2]));
        assert_eq!(ints(&[0, 0, 1]).odd_part_reflect(), ints(&[0, 0, 0]));
        let f1 = ints(&[0, 1, 0, 1, 0, 1]);
        assert_eq!(f1.odd_part_reflect(), f1.scale(&rat(2, 1)).unwrap());
        assert_eq!(f1.sub(&f1.reflect()).unwrap(), f1.odd_part_reflect());
    }

    #[test]
    fn shifts() {
        let f = ints(&[0, 1, 2, 3]);
        assert_eq!(f.div_z().unwrap(), ints(&[1, 2, 3]));
        assert_eq!(f.div_z().unwrap().mul_z(), ints(&[0, 1, 2]));
        assert_eq!(ints(&[1, 1]).div_z(), Err(Error::NotDivisibleByZ));
    }

    #[test]
    fn float_errors_do_not_escape() {
        let huge = TruncatedSeries::new(vec![Complex64::new(1.0, 0.0), Complex64::new(1e300, 0.0)]).unwrap();
        assert!(matches!(huge.scale(&Complex64::new(1e300, 0.0)), Err(Error::NonFinite(1))));
        assert!(TruncatedSeries::new(vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn eval_matches_closed_form() {
        let geometric = ints(&[1; 41]);
        let z = Complex64::new(0.3, -0.2);
        let exact = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - z);
        assert!((geometric.eval(z) - exact).norm() < 1e-15);
    }
}
