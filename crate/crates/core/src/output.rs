//! CSV and JSON emitters for the command-line front-end.
//!
//! CSV files are comma-separated with a header row and LF endings; every
//! field is numeric. Floats use 17 significant digits and exact values are
//! written as `p/q`. Files are written once, through a temporary file in
//! the destination directory that is renamed into place.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::bounds::{surface_value, RegionPoint};
use crate::error::{Error, Result};
use crate::families::{h21_from_schwarz, membership_residual, named_function, Family, NamedFunction, DEFAULT_GRID, DEFAULT_RADIUS};
use crate::functionals::{h21_unscaled_form, log_coefficients};
use crate::scalar::{float_string, rational_string};
use crate::schwarz::{sample_schur, schur_coefficients};

/// Series order used for the membership residuals. The named functions have
/// poles on the unit circle, so at radius 0.9 a short truncation dominates
/// the real part; this keeps the tail well below the reported digits.
pub const RESIDUAL_ORDER: usize = 400;

pub const SURFACE_HEADER: &str = "x,y,value";
pub const SAMPLE_HEADER: &str =
    "t1_re,t1_im,t2_re,t2_im,t3_re,t3_im,c1_re,c1_im,c2_re,c2_im,c3_re,c3_im,h_re,h_im,h_abs";

/// Writes `contents` to `path` via a temporary sibling and an atomic rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `grid x grid` rows over `(x, s) in [0,1]^2` mapped to `(x, s(1 - x^2))`.
pub fn surface_csv(family: Family, grid: usize) -> Result<String> {
    if grid < 2 {
        return Err(Error::InvalidArgument(format!("grid {grid} is below 2")));
    }
    let step = 1.0 / (grid - 1) as f64;
    let mut out = String::with_capacity(grid * grid * 72);
    out.push_str(SURFACE_HEADER);
    out.push('\n');
    for i in 0..grid {
        for j in 0..grid {
            let p = RegionPoint::from_unit_square(i as f64 * step, j as f64 * step);
            let v = surface_value(family, &p);
            out.push_str(&format!("{},{},{}\n", float_string(p.x()), float_string(p.y()), float_string(v)));
        }
    }
    Ok(out)
}

fn push_complex(row: &mut Vec<String>, z: Complex64) {
    row.push(float_string(z.re));
    row.push(float_string(z.im));
}

/// One row per Schur sample: parameters, Schwarz coefficients, and `H`.
pub fn sample_csv(family: Family, count: usize, seed: u64) -> Result<String> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let mut out = String::new();
    out.push_str(SAMPLE_HEADER);
    out.push('\n');
    for t in sample_schur(count, seed) {
        let c = schur_coefficients(&t);
        let h = h21_from_schwarz(family, &c)?;
        let mut row = Vec::with_capacity(15);
        for tk in t.t() {
            push_complex(&mut row, *tk);
        }
        for ck in [c.c1, c.c2, c.c3] {
            push_complex(&mut row, ck);
        }
        push_complex(&mut row, h);
        row.push(float_string(h.norm()));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub family: Family,
    pub radius: f64,
    pub grid: usize,
    pub min_real: f64,
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub function: String,
    pub formula: String,
    pub order: usize,
    pub gammas: Vec<String>,
    pub h21: String,
    pub h21_abs: String,
    pub h21_unscaled_form: String,
    pub residuals: Vec<ResidualRecord>,
    pub note: String,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("eval report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = format!("{} = {} (order {})\n", self.function, self.formula, self.order);
        for (i, g) in self.gammas.iter().enumerate() {
            out.push_str(&format!("gamma_{} = {}\n", i + 1, g));
        }
        out.push_str(&format!("H21(F_f/2) = {}\n|H21(F_f/2)| = {}\n", self.h21, self.h21_abs));
        out.push_str(&format!("unscaled a-form a2a4 - a3^2 + a2^4/12 = {}\n", self.h21_unscaled_form));
        for r in &self.residuals {
            out.push_str(&format!(
                "membership residual {} (r = {}, {} points): min Re = {}, tail ~ {}\n",
                r.family,
                r.radius,
                r.grid,
                float_string(r.min_real),
                float_string(r.tail_estimate)
            ));
        }
        if !self.note.is_empty() {
            out.push_str(&format!("note: {}\n", self.note));
        }
        out
    }
}

/// Exact logarithmic coefficients and `H21` of a named function, with
/// membership residuals for both families.
pub fn eval_function(f: NamedFunction, order: usize) -> Result<EvalReport> {
    if order < 6 {
        return Err(Error::InsufficientOrder { have: order, need: 6 });
    }
    let series = named_function(f, order)?;
    let gammas = log_coefficients(&series, 3)?;
    let h: BigRational = gammas.h21()?;
    let unscaled = h21_unscaled_form(series.coeff(2), series.coeff(3), series.coeff(4));

    let long = named_function(f, order.max(RESIDUAL_ORDER))?;
    let residuals = Family::ALL
        .into_iter()
        .map(|family| {
            membership_residual(family, &long, DEFAULT_RADIUS, DEFAULT_GRID).map(|r| ResidualRecord {
                family,
                radius: DEFAULT_RADIUS,
                grid: DEFAULT_GRID,
                min_real: r.min_real,
                tail_estimate: r.tail_estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let note = match f.family() {
        Some(family) if unscaled != h => format!(
            "the unscaled a-form gives {} = 4 x {}; both respect the {} bound {}",
            rational_string(&unscaled),
            rational_string(&h),
            family,
            rational_string(&family.sharp_bound())
        ),
        Some(family) => format!(
            "|H| = {} against the {} bound {}",
            rational_string(&h.abs()),
            family,
            rational_string(&family.sharp_bound())
        ),
        None => String::new(),
    };

    Ok(EvalReport {
        schema_version: crate::verify::SCHEMA_VERSION,
        function: f.tag().into(),
        formula: f.formula().into(),
        order,
        gammas: gammas.as_slice().iter().map(rational_string).collect(),
        h21: rational_string(&h),
        h21_abs: rational_string(&h.abs()),
        h21_unscaled_form: rational_string(&unscaled),
        residuals,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_csv_small_grids() {
        let csv = surface_csv(Family::StarlikeSym, 3).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SURFACE_HEADER);
        assert_eq!(lines.len(), 10);
        let top = format!("{},{},{}", float_string(0.0), float_string(1.0), float_string(12.0));
        assert!(lines.contains(&top.as_str()));

        let csv = surface_csv(Family::ConvexSym, 2).unwrap();
        let origin = format!("{},{},{}", float_string(0.0), float_string(0.0), float_string(0.0));
        assert_eq!(csv.lines().nth(1), Some(origin.as_str()));
        assert!(surface_csv(Family::ConvexSym, 1).is_err());
    }

    #[test]
    fn sample_csv_prefix_rows() {
        let csv = sample_csv(Family::StarlikeSym, 1, 5).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        let fields: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(fields.len(), 15);
        assert_eq!(&fields[..6], &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(fields[14], 0.25);

        let csv = sample_csv(Family::ConvexSym, 2, 5).unwrap();
        let row: Vec<f64> = csv.lines().nth(2).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(&row[..6], &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!((row[14] - 11.0 / 2304.0).abs() < 1e-17);
    }

    #[test]
    fn eval_examples() {
        let f1 = eval_function(NamedFunction::F1, 32).unwrap();
        assert_eq!(f1.h21, "-1/4");
        assert_eq!(f1.h21_abs, "1/4");
        let koebe = eval_function(NamedFunction::Koebe, 32).unwrap();
        assert_eq!(koebe.gammas, vec!["1/1", "1/2", "1/3"]);
        let f4 = eval_function(NamedFunction::F4, 32).unwrap();
        assert_eq!(f4.h21, "11/2304");
        assert_eq!(f4.h21_unscaled_form, "11/576");
        assert!(f4.note.contains("11/576"));
        assert!(eval_function(NamedFunction::F2, 5).is_err());
        // f2 and f4 map into the right half-plane under their own ratio
        let f2 = eval_function(NamedFunction::F2, 32).unwrap();
        assert!(f2.residuals[0].min_real > 0.0 && f2.residuals[0].tail_estimate < 1e-10);
        assert!(f4.residuals[1].min_real > 0.0 && f4.residuals[1].tail_estimate < 1e-10);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert!(write_atomic(&dir.path().join("missing/out.csv"), "x").is_err());
    }
}
