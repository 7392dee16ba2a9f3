//! Logarithmic coefficients and Hankel determinants.
//!
//! For a normalized `f(z) = z + a2 z^2 + ...` the logarithmic coefficients
//! are defined by `log(f(z)/z) = 2 * sum gamma_n z^n`. The second Hankel
//! determinant of `F_f/2` is `gamma1 * gamma3 - gamma2^2`.

use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct LogCoefficientVector<C> {
    gammas: Vec<C>,
    source_order: usize,
}

impl<C: Coeff> LogCoefficientVector<C> {
    /// `gamma_n`, 1-indexed.
    pub fn gamma(&self, n: usize) -> &C {
        assert!(n >= 1 && n <= self.gammas.len(), "gamma index {n} out of range");
        &self.gammas[n - 1]
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn as_slice(&self) -> &[C] {
        &self.gammas
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    /// `gamma1 * gamma3 - gamma2^2`.
    pub fn h21(&self) -> Result<C> {
        if self.len() < 3 {
            return Err(Error::InsufficientOrder { have: self.len(), need: 3 });
        }
        Ok(self.gamma(1).clone() * self.gamma(3).clone() - self.gamma(2).clone() * self.gamma(2).clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Taylor,
    Logarithmic,
}

/// Shape of a Hankel determinant `H_{q,n}`: a `q x q` matrix whose
/// `(i, j)` entry is the coefficient with index `n + i + j` (0-based `i, j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HankelSpec {
    q: usize,
    n: usize,
    kind: EntryKind,
}

impl HankelSpec {
    pub fn new(q: usize, n: usize, kind: EntryKind) -> Result<Self> {
        if q == 0 || n == 0 {
            return Err(Error::InvalidHankel { q, n });
        }
        Ok(Self { q, n, kind })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> EntryKind {
        self.kind
    }

    /// Largest coefficient index the determinant touches.
    pub fn max_index(&self) -> usize {
        self.n + 2 * (self.q - 1)
    }
}

fn check_normalized<C: Coeff>(f: &TruncatedSeries<C>) -> Result<()> {
    if f.order() < 1 || !f.coeff(0).is_zero() || !f.coeff(1).is_one() {
        return Err(Error::Unnormalized);
    }
    Ok(())
}

/// `gamma_1 ..= gamma_m` of a normalized series. `log(f/z)` is exact through
/// order `N - 1`, so `m` may not exceed `order(f) - 1`.
pub fn log_coefficients<C: Coeff>(f: &TruncatedSeries<C>, m: usize) -> Result<LogCoefficientVector<C>> {
    check_normalized(f)?;
    if m + 1 > f.order() {
        return Err(Error::InsufficientOrder {
            have: f.order(),
            need: m + 1,
        });
    }
    let log = f.div_z()?.log_unit()?;
    let half = C::from_ratio(1, 2);
    Ok(LogCoefficientVector {
        gammas: (1..=m).map(|k| half.clone() * log.coeff(k).clone()).collect(),
        source_order: f.order(),
    })
}

/// Closed-form `gamma1, gamma2, gamma3` in terms of `a2, a3, a4`.
pub fn gamma_from_taylor<C: Coeff>(a2: &C, a3: &C, a4: &C) -> [C; 3] {
    let half = C::from_ratio(1, 2);
    let a2sq = a2.clone() * a2.clone();
    let g1 = half.clone() * a2.clone();
    let g2 = half.clone() * (a3.clone() - half.clone() * a2sq.clone());
    let g3 = half * (a4.clone() - a2.clone() * a3.clone() + C::from_ratio(1, 3) * a2sq * a2.clone());
    [g1, g2, g3]
}

/// `gamma1 gamma3 - gamma2^2 = (a2 a4 - a3^2 + a2^4 / 12) / 4`.
pub fn h21_log_closed_form<C: Coeff>(a2: &C, a3: &C, a4: &C) -> C {
    let a2sq = a2.clone() * a2.clone();
    let inner = a2.clone() * a4.clone() - a3.clone() * a3.clone() + C::from_ratio(1, 12) * a2sq.clone() * a2sq;
    C::from_ratio(1, 4) * inner
}

/// The same polynomial without the factor 1/4, as it is sometimes quoted.
/// Kept only to report how far that form is from the definitional value.
pub fn h21_unscaled_form<C: Coeff>(a2: &C, a3: &C, a4: &C) -> C {
    C::from_i64(4) * h21_log_closed_form(a2, a3, a4)
}

/// `H_{q,n}(f)` over Taylor coefficients, with `a1 = 1`.
pub fn hankel_taylor<C: Coeff>(f: &TruncatedSeries<C>, spec: &HankelSpec) -> Result<C> {
    if spec.kind != EntryKind::Taylor {
        return Err(Error::WrongEntryKind);
    }
    if f.order() < spec.max_index() {
        return Err(Error::InsufficientOrder {
            have: f.order(),
            need: spec.max_index(),
        });
    }
    let entries: Vec<C> = (0..=spec.max_index()).map(|k| f.coeff(k).clone()).collect();
    Ok(hankel_from_entries(&entries, spec))
}

/// `H_{q,n}(F_f/2)` over logarithmic coefficients.
pub fn hankel_log<C: Coeff>(f: &TruncatedSeries<C>, spec: &HankelSpec) -> Result<C> {
    if spec.kind != EntryKind::Logarithmic {
        return Err(Error::WrongEntryKind);
    }
    let gammas = log_coefficients(f, spec.max_index())?;
    let mut entries = vec![C::zero()];
    entries.extend(gammas.as_slice().iter().cloned());
    Ok(hankel_from_entries(&entries, spec))
}

/// Dispatches on the spec's entry kind.
pub fn hankel<C: Coeff>(f: &TruncatedSeries<C>, spec: &HankelSpec) -> Result<C> {
    match spec.kind {
        EntryKind::Taylor => hankel_taylor(f, spec),
        EntryKind::Logarithmic => hankel_log(f, spec),
    }
}

/// `entries[k]` holds the k-th sequence element; index 0 is unused padding.
fn hankel_from_entries<C: Coeff>(entries: &[C], spec: &HankelSpec) -> C {
    let matrix: Vec<Vec<C>> = (0..spec.q)
        .map(|i| (0..spec.q).map(|j| entries[spec.n + i + j].clone()).collect())
        .collect();
    determinant(matrix)
}

/// Gaussian elimination, pivoting on the largest-modulus entry of each
/// column. Exact for rationals; partial pivoting for floats.
pub fn determinant<C: Coeff>(mut m: Vec<Vec<C>>) -> C {
    let size = m.len();
    let mut det = C::one();
    for col in 0..size {
        let pivot = (col..size)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&a, &b| m[a][col].modulus().total_cmp(&m[b][col].modulus()));
        let Some(pivot) = pivot else {
            return C::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for c in col..size {
                let v = m[r][c].clone() - factor.clone() * m[col][c].clone();
                m[r][c] = v;
            }
        }
    }
    det
}
