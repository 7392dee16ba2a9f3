//! Schwarz functions: coefficient admissibility and realizable samples.
//!
//! A Schwarz function `w(z) = c1 z + c2 z^2 + ...` maps the unit disk into
//! itself with `w(0) = 0`. Its first coefficients satisfy
//!
//! ```text
//! |c1| <= 1,  |c2| <= 1 - |c1|^2,  |c3| <= 1 - |c1|^2 - |c2|^2 / (1 + |c1|)
//! ```
//!
//! These are only necessary conditions, so samples are drawn through a
//! Schur chain instead: every parameter triple in the closed polydisk
//! yields a genuine Schwarz function, and the reachable `(c1, c2, c3)` are
//! exactly the realizable ones.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::TruncatedSeries;

/// Slack allowed on the admissibility and unit-disk checks.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

const UNIMODULAR_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzTriple<C> {
    pub c1: C,
    pub c2: C,
    pub c3: C,
}

impl<C: Coeff> SchwarzTriple<C> {
    pub fn new(c1: C, c2: C, c3: C) -> Self {
        Self { c1, c2, c3 }
    }

    /// Reads the first three coefficients off a Schwarz series.
    pub fn from_series(w: &TruncatedSeries<C>) -> Result<Self> {
        if w.order() < 3 {
            return Err(Error::InsufficientOrder { have: w.order(), need: 3 });
        }
        Ok(Self::new(w.coeff(1).clone(), w.coeff(2).clone(), w.coeff(3).clone()))
    }
}

/// Verdict of [`validate_schwarz_triple`]. `slack[k]` is the bound minus
/// `|c_{k+1}|`; negative slack means the inequality fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility {
    pub valid: bool,
    pub slack: [f64; 3],
}

pub fn validate_schwarz_triple<C: Coeff>(c: &SchwarzTriple<C>) -> Admissibility {
    let (x, y, z) = (c.c1.modulus(), c.c2.modulus(), c.c3.modulus());
    let slack = [1.0 - x, 1.0 - x * x - y, 1.0 - x * x - y * y / (1.0 + x) - z];
    Admissibility {
        valid: slack.iter().all(|&s| s >= -ADMISSIBILITY_TOL),
        slack,
    }
}

/// Three Schur parameters in the closed unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurParams<C> {
    t: [C; 3],
}

impl<C: Coeff> SchurParams<C> {
    pub fn new(t1: C, t2: C, t3: C) -> Result<Self> {
        let t = [t1, t2, t3];
        for (i, tk) in t.iter().enumerate() {
            let modulus = tk.modulus();
            if modulus.is_nan() || modulus > 1.0 + ADMISSIBILITY_TOL {
                return Err(Error::SchurOutOfDisk { index: i + 1, modulus });
            }
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> &[C; 3] {
        &self.t
    }
}

fn is_unimodular<C: Coeff>(t: &C) -> bool {
    (t.modulus() - 1.0).abs() <= UNIMODULAR_TOL
}

/// The Schwarz function `w = z g1` of the chain
/// `g3 = t3`, `g_k = (t_k + z g_{k+1}) / (1 + conj(t_k) z g_{k+1})`,
/// truncated to `order`.
pub fn schwarz_from_schur<C: Coeff>(t: &SchurParams<C>, order: usize) -> Result<TruncatedSeries<C>> {
    if order < 3 {
        return Err(Error::InsufficientOrder { have: order, need: 3 });
    }
    let mut g = TruncatedSeries::constant(t.t[2].clone(), order);
    for tk in t.t[..2].iter().rev() {
        g = if is_unimodular(tk) {
            // a unimodular parameter makes the Möbius step constant
            TruncatedSeries::constant(tk.clone(), order)
        } else {
            let h = g.mul_z();
            let num = TruncatedSeries::constant(tk.clone(), order).add(&h)?;
            let den = TruncatedSeries::one(order).add(&h.scale(&tk.conj())?)?;
            num.div(&den)?
        };
    }
    Ok(g.mul_z())
}

/// Closed-form first three coefficients of [`schwarz_from_schur`].
pub fn schur_coefficients<C: Coeff>(t: &SchurParams<C>) -> SchwarzTriple<C> {
    let [t1, t2, t3] = &t.t;
    let one = C::one();
    let damp1 = one.clone() - t1.clone() * t1.conj();
    let damp2 = one - t2.clone() * t2.conj();
    SchwarzTriple {
        c1: t1.clone(),
        c2: damp1.clone() * t2.clone(),
        c3: damp1 * (damp2 * t3.clone() - t1.conj() * t2.clone() * t2.clone()),
    }
}

/// Deterministic stream of Schur parameters. The first two draws are the
/// extremal points `(0, 1, 0)` and `(1, 0, 0)`; the rest are independent
/// and uniform on the closed disk.
#[derive(Debug, Clone)]
pub struct SchurSampler {
    rng: ChaCha8Rng,
    emitted: usize,
    count: usize,
}

pub fn sample_schur(count: usize, seed: u64) -> SchurSampler {
    SchurSampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
        emitted: 0,
        count,
    }
}

impl SchurSampler {
    fn uniform_disk(&mut self) -> Complex64 {
        let r = self.rng.gen::<f64>().sqrt();
        let theta = TAU * self.rng.gen::<f64>();
        Complex64::from_polar(r, theta)
    }
}

impl Iterator for SchurSampler {
    type Item = SchurParams<Complex64>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.emitted >= self.count {
            return None;
        }
        let c = |x: f64| Complex64::new(x, 0.0);
        let t = match self.emitted {
            0 => [c(0.0), c(1.0), c(0.0)],
            1 => [c(1.0), c(0.0), c(0.0)],
            _ => [self.uniform_disk(), self.uniform_disk(), self.uniform_disk()],
        };
        self.emitted += 1;
        Some(SchurParams { t })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.count - self.emitted;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SchurSampler {}
