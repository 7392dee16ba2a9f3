//! Functions starlike and convex with respect to symmetric points.
//!
//! A normalized `f` is in `S*_S` when `2 z f'(z) / (f(z) - f(-z))` is
//! subordinate to `(1 + z) / (1 - z)`, and in `K_S` when
//! `2 (z f'(z))' / (f(z) - f(-z))'` is. Given the Schwarz function `w` of the
//! subordination, the Taylor coefficients of `f` follow order by order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::h21_log_closed_form;
use crate::scalar::{rat, Coeff};
use crate::schwarz::{validate_schwarz_triple, SchwarzTriple};
use crate::series::TruncatedSeries;

pub const DEFAULT_RADIUS: f64 = 0.9;
pub const DEFAULT_GRID: usize = 64;
pub const DEFAULT_ORDER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `S*_S`, starlike with respect to symmetric points.
    #[serde(rename = "ss")]
    StarlikeSym,
    /// `K_S`, convex with respect to symmetric points.
    #[serde(rename = "ks")]
    ConvexSym,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::StarlikeSym, Family::ConvexSym];

    pub fn tag(self) -> &'static str {
        match self {
            Family::StarlikeSym => "ss",
            Family::ConvexSym => "ks",
        }
    }

    /// Sharp bound on `|gamma1 gamma3 - gamma2^2|` over the family.
    pub fn sharp_bound(self) -> BigRational {
        match self {
            Family::StarlikeSym => rat(1, 4),
            Family::ConvexSym => rat(1, 36),
        }
    }

    pub fn sharp_bound_f64(self) -> f64 {
        match self {
            Family::StarlikeSym => 0.25,
            Family::ConvexSym => 1.0 / 36.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ss" => Ok(Family::StarlikeSym),
            "ks" => Ok(Family::ConvexSym),
            other => Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorTriple<C> {
    pub a2: C,
    pub a3: C,
    pub a4: C,
}

impl<C: Coeff> TaylorTriple<C> {
    pub fn from_series(f: &TruncatedSeries<C>) -> Result<Self> {
        if f.order() < 4 {
            return Err(Error::InsufficientOrder { have: f.order(), need: 4 });
        }
        Ok(Self {
            a2: f.coeff(2).clone(),
            a3: f.coeff(3).clone(),
            a4: f.coeff(4).clone(),
        })
    }
}

fn require_admissible<C: Coeff>(c: &SchwarzTriple<C>) -> Result<()> {
    if validate_schwarz_triple(c).valid {
        Ok(())
    } else {
        Err(Error::InadmissibleSchwarz)
    }
}

/// `a2, a3, a4` of the family member generated by a Schwarz function with
/// leading coefficients `c`.
pub fn taylor_from_schwarz<C: Coeff>(family: Family, c: &SchwarzTriple<C>) -> Result<TaylorTriple<C>> {
    require_admissible(c)?;
    let SchwarzTriple { c1, c2, c3 } = c;
    let c1sq = c1.clone() * c1.clone();
    let a2 = c1.clone();
    let a3 = c2.clone() + c1sq.clone();
    let a4 = c3.clone() + C::from_i64(3) * c1.clone() * c2.clone() + C::from_i64(2) * c1sq * c1.clone();
    Ok(match family {
        Family::StarlikeSym => TaylorTriple {
            a2,
            a3,
            a4: C::from_ratio(1, 2) * a4,
        },
        Family::ConvexSym => TaylorTriple {
            a2: C::from_ratio(1, 2) * a2,
            a3: C::from_ratio(1, 3) * a3,
            a4: C::from_ratio(1, 8) * a4,
        },
    })
}

/// Exact `gamma1 gamma3 - gamma2^2` as a polynomial in `c1, c2, c3`:
///
/// ```text
/// S*_S:   (c1^4 + 6 c1 c3 - 6 c1^2 c2 - 12 c2^2) / 48
/// K_S:    (11 c1^4 + 36 c1 c3 - 20 c1^2 c2 - 64 c2^2) / 2304
/// ```
pub fn h21_from_schwarz<C: Coeff>(family: Family, c: &SchwarzTriple<C>) -> Result<C> {
    require_admissible(c)?;
    let SchwarzTriple { c1, c2, c3 } = c;
    let k = |n: i64| C::from_i64(n);
    let c1sq = c1.clone() * c1.clone();
    let (w4, w13, w112, w22, den) = match family {
        Family::StarlikeSym => (1, 6, 6, 12, 48),
        Family::ConvexSym => (11, 36, 20, 64, 2304),
    };
    let poly = k(w4) * c1sq.clone() * c1sq.clone() + k(w13) * c1.clone() * c3.clone()
        - k(w112) * c1sq * c2.clone()
        - k(w22) * c2.clone() * c2.clone();
    Ok(poly / k(den))
}

/// Same value routed through the Taylor coefficients instead of the direct
/// polynomial.
pub fn h21_via_taylor<C: Coeff>(family: Family, c: &SchwarzTriple<C>) -> Result<C> {
    let t = taylor_from_schwarz(family, c)?;
    Ok(h21_log_closed_form(&t.a2, &t.a3, &t.a4))
}

/// Solves the family's subordination identity for the normalized `f`
/// through `order`, given the Schwarz series `w` (known through at least
/// `order - 1`).
///
/// With `p = (1 + w) / (1 - w)` and denominators cleared, the coefficient
/// of `z^n` reads
///
/// ```text
/// S*_S:  2n a_n    = sum_{k odd, k <= n} 2 a_k p_{n-k}
/// K_S:   2n^2 a_n  = sum_{k odd, k <= n} 2k a_k p_{n-k}
/// ```
///
/// and `a_n` appears with the nonzero factor `2n - 2[n odd]` resp.
/// `2n^2 - 2n[n odd]` for every `n >= 2`.
pub fn build_function_series<C: Coeff>(family: Family, w: &TruncatedSeries<C>, order: usize) -> Result<TruncatedSeries<C>> {
    if !w.coeff(0).is_zero() {
        return Err(Error::NotSchwarz);
    }
    if order < 2 {
        return Err(Error::InvalidArgument(format!("order {order} is below 2")));
    }
    if w.order() + 1 < order {
        return Err(Error::InsufficientOrder {
            have: w.order(),
            need: order - 1,
        });
    }
    let w = w.truncate(order - 1);
    let one = TruncatedSeries::one(order - 1);
    let p = one.add(&w)?.div(&one.sub(&w)?)?;

    let mut a = vec![C::zero(); order + 1];
    a[1] = C::one();
    for n in 2..=order {
        let weight = |k: usize| match family {
            Family::StarlikeSym => 2,
            Family::ConvexSym => 2 * k as i64,
        };
        let mut rhs = C::zero();
        for k in (1..n).step_by(2) {
            rhs = rhs + C::from_i64(weight(k)) * a[k].clone() * p.coeff(n - k).clone();
        }
        let n_i = n as i64;
        let odd = n % 2 == 1;
        let factor = match family {
            Family::StarlikeSym => 2 * n_i - if odd { 2 } else { 0 },
            Family::ConvexSym => 2 * n_i * n_i - if odd { 2 * n_i } else { 0 },
        };
        a[n] = rhs / C::from_i64(factor);
    }
    TruncatedSeries::new(a)
}

/// Minimum real part of the family's ratio sampled on a circle, with a
/// rough size of the dropped tail. A positive minimum is evidence of
/// membership, not a proof.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipResidual {
    pub min_real: f64,
    /// Largest of the last two retained terms of the numerator series at
    /// the sampling radius.
    pub tail_estimate: f64,
}

pub fn membership_residual<C: Coeff>(
    family: Family,
    f: &TruncatedSeries<C>,
    radius: f64,
    grid: usize,
) -> Result<MembershipResidual> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidArgument(format!("radius {radius} must lie in (0, 1)")));
    }
    if grid < 8 {
        return Err(Error::InvalidArgument(format!("grid {grid} must be at least 8")));
    }
    let f = f.to_float();
    let n = f.order();
    let df = f.derivative()?;
    // (z f')' = sum k^2 a_k z^(k-1)
    let zdf_prime = TruncatedSeries::new(
        (1..=n)
            .map(|k| f.coeff(k) * (k * k) as f64)
            .collect(),
    )?;

    let mut min_real = f64::INFINITY;
    for j in 0..grid {
        let z = Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / grid as f64);
        let (num, den) = match family {
            Family::StarlikeSym => (2.0 * z * df.eval(z), f.eval(z) - f.eval(-z)),
            Family::ConvexSym => (2.0 * zdf_prime.eval(z), df.eval(z) + df.eval(-z)),
        };
        if den.norm() < 1e-12 {
            return Err(Error::VanishingDenominator { re: z.re, im: z.im });
        }
        min_real = min_real.min((num / den).re);
    }

    let tail_term = |k: usize| {
        let a = f.coeff(k).norm();
        match family {
            Family::StarlikeSym => k as f64 * a * radius.powi(k as i32),
            Family::ConvexSym => (k * k) as f64 * a * radius.powi(k as i32 - 1),
        }
    };
    let tail_estimate = tail_term(n).max(tail_term(n - 1));
    Ok(MembershipResidual { min_real, tail_estimate })
}

/// The closed-form examples used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFunction {
    /// `z / (1 - z^2)`, extremal in `S*_S`.
    F1,
    /// `z / (1 - z)`, a member of `S*_S`.
    F2,
    /// `log((1 + z) / (1 - z)) / 2`, extremal in `K_S`.
    F3,
    /// `-log(1 - z)`, a member of `K_S`.
    F4,
    /// `z / (1 - z)^2`.
    Koebe,
}

impl NamedFunction {
    pub const ALL: [NamedFunction; 5] = [
        NamedFunction::F1,
        NamedFunction::F2,
        NamedFunction::F3,
        NamedFunction::F4,
        NamedFunction::Koebe,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            NamedFunction::F1 => "f1",
            NamedFunction::F2 => "f2",
            NamedFunction::F3 => "f3",
            NamedFunction::F4 => "f4",
            NamedFunction::Koebe => "koebe",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            NamedFunction::F1 => "z/(1-z^2)",
            NamedFunction::F2 => "z/(1-z)",
            NamedFunction::F3 => "log((1+z)/(1-z))/2",
            NamedFunction::F4 => "-log(1-z)",
            NamedFunction::Koebe => "z/(1-z)^2",
        }
    }

    /// The family the function is known to belong to, if any of the two.
    pub fn family(self) -> Option<Family> {
        match self {
            NamedFunction::F1 | NamedFunction::F2 => Some(Family::StarlikeSym),
            NamedFunction::F3 | NamedFunction::F4 => Some(Family::ConvexSym),
            NamedFunction::Koebe => None,
        }
    }

    fn coefficient(self, k: usize) -> BigRational {
        let k_i = k as i64;
        let odd = k % 2 == 1;
        match self {
            NamedFunction::F1 => rat(odd as i64, 1),
            NamedFunction::F2 => rat(1, 1),
            NamedFunction::F3 if odd => rat(1, k_i),
            NamedFunction::F3 => rat(0, 1),
            NamedFunction::F4 => rat(1, k_i),
            NamedFunction::Koebe => rat(k_i, 1),
        }
    }
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for NamedFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedFunction::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

/// Exact Taylor series of a named function through `order`.
pub fn named_function(tag: NamedFunction, order: usize) -> Result<TruncatedSeries<BigRational>> {
    if order < 4 {
        return Err(Error::InsufficientOrder { have: order, need: 4 });
    }
    let mut coeffs = vec![rat(0, 1)];
    coeffs.extend((1..=order).map(|k| tag.coefficient(k)));
    TruncatedSeries::new(coeffs)
}
