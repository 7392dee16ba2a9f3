//! Claim-by-claim verification of the sharp bounds and the identities
//! behind them. Every check produces a [`ClaimRecord`]; the report passes
//! only when every record does.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    bound_from_surface_exact, interior_ry_minimum, maximize_surface, stress_test, surface_scale, EdgeMaximum,
    SurfaceReport,
};
use crate::error::Result;
use crate::families::{build_function_series, h21_from_schwarz, named_function, Family, NamedFunction};
use crate::functionals::{gamma_from_taylor, h21_log_closed_form, h21_unscaled_form, hankel_log, log_coefficients, EntryKind, HankelSpec};
use crate::scalar::{float_string, rat, rational_string};
use crate::schwarz::{sample_schur, schur_coefficients, schwarz_from_schur};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SURFACE_GRID: usize = 1001;

const SURFACE_TOL: f64 = 1e-9;
const PIPELINE_TOL: f64 = 1e-12;
const PIPELINE_SAMPLES: usize = 1000;
const PIPELINE_ORDER: usize = 8;
const IDENTITY_SAMPLES: usize = 1000;
const KOEBE_GAMMAS: usize = 20;
const ROUND_TRIP_ORDER: usize = 30;
const INTERIOR_GRID: usize = 500;
const INTERIOR_Y_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySelection {
    Ss,
    Ks,
    All,
}

impl FamilySelection {
    pub fn families(self) -> Vec<Family> {
        match self {
            FamilySelection::Ss => vec![Family::StarlikeSym],
            FamilySelection::Ks => vec![Family::ConvexSym],
            FamilySelection::All => Family::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub family: FamilySelection,
    pub samples: usize,
    pub seed: u64,
    pub surface_grid: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            family: FamilySelection::All,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            surface_grid: DEFAULT_SURFACE_GRID,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub tolerance: String,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub toolkit: String,
    pub toolkit_version: String,
    pub options: VerifyOptions,
    pub claims: Vec<ClaimRecord>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per claim plus the verdict.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!(
                "[{}] {:<28} expected {} computed {} (tol {})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.expected,
                c.computed,
                c.tolerance
            ));
            if !c.note.is_empty() {
                out.push_str(&format!("       {}\n", c.note));
            }
        }
        let passed = self.claims.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "verdict: {} ({passed}/{} claims)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.claims.len()
        ));
        out
    }
}

struct Claim<'a> {
    id: String,
    anchor: &'a str,
}

impl<'a> Claim<'a> {
    fn new(id: impl Into<String>, anchor: &'a str) -> Self {
        Self { id: id.into(), anchor }
    }

    fn exact(self, expected: &BigRational, computed: &BigRational, note: impl Into<String>) -> ClaimRecord {
        ClaimRecord {
            id: self.id,
            anchor: self.anchor.to_string(),
            expected: rational_string(expected),
            computed: rational_string(computed),
            tolerance: "exact".into(),
            pass: expected == computed,
            note: note.into(),
        }
    }

    fn float(self, expected: f64, computed: f64, tol: f64, note: impl Into<String>) -> ClaimRecord {
        ClaimRecord {
            id: self.id,
            anchor: self.anchor.to_string(),
            expected: float_string(expected),
            computed: float_string(computed),
            tolerance: float_string(tol),
            pass: (computed - expected).abs() <= tol,
            note: note.into(),
        }
    }

    fn check(self, expected: impl Into<String>, computed: impl Into<String>, tolerance: impl Into<String>, pass: bool, note: impl Into<String>) -> ClaimRecord {
        ClaimRecord {
            id: self.id,
            anchor: self.anchor.to_string(),
            expected: expected.into(),
            computed: computed.into(),
            tolerance: tolerance.into(),
            pass,
            note: note.into(),
        }
    }
}

/// `gamma1 gamma3 - gamma2^2` through the full series pipeline.
pub fn pipeline_h21(f: NamedFunction) -> Result<BigRational> {
    let series = named_function(f, 8)?;
    log_coefficients(&series, 3)?.h21()
}

pub fn run_verification(options: &VerifyOptions) -> Result<VerificationReport> {
    let mut claims = Vec::new();
    claims.push(koebe_claim()?);
    claims.push(identity_claim(options.seed));
    claims.push(round_trip_claim()?);
    for family in options.family.families() {
        claims.extend(family_claims(family, options)?);
    }
    let verdict = if claims.iter().all(|c| c.pass) { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        toolkit: env!("CARGO_PKG_NAME").into(),
        toolkit_version: env!("CARGO_PKG_VERSION").into(),
        options: options.clone(),
        claims,
        verdict,
    })
}

fn koebe_claim() -> Result<ClaimRecord> {
    let k = named_function(NamedFunction::Koebe, KOEBE_GAMMAS + 1)?;
    let gammas = log_coefficients(&k, KOEBE_GAMMAS)?;
    let bad = (1..=KOEBE_GAMMAS).find(|&n| gammas.gamma(n) != &rat(1, n as i64));
    let claim = Claim::new("koebe.gamma_n", "Koebe function z/(1-z)^2 has gamma_n = 1/n");
    Ok(claim.check(
        format!("gamma_n = 1/n for n = 1..{KOEBE_GAMMAS}"),
        match bad {
            None => format!("gamma_{KOEBE_GAMMAS} = {}", rational_string(gammas.gamma(KOEBE_GAMMAS))),
            Some(n) => format!("gamma_{n} = {}", rational_string(gammas.gamma(n))),
        },
        "exact",
        bad.is_none(),
        "",
    ))
}

/// Random rational in `[-20, 20] / [1, 20]`.
fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=20))
}

fn identity_claim(seed: u64) -> ClaimRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..IDENTITY_SAMPLES {
        let (a2, a3, a4) = (small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng));
        let [g1, g2, g3] = gamma_from_taylor(&a2, &a3, &a4);
        if g1 * g3 - g2.clone() * g2 != h21_log_closed_form(&a2, &a3, &a4) {
            mismatches += 1;
        }
    }
    Claim::new(
        "identity.h21_taylor_form",
        "gamma1 gamma3 - gamma2^2 = (a2 a4 - a3^2 + a2^4/12) / 4",
    )
    .check(
        format!("0 mismatches in {IDENTITY_SAMPLES} random rational triples"),
        format!("{mismatches} mismatches"),
        "exact",
        mismatches == 0,
        "the form without the factor 1/4 overstates the functional by exactly 4x",
    )
}

fn round_trip_claim() -> Result<ClaimRecord> {
    let mut failed = Vec::new();
    for f in NamedFunction::ALL {
        let unit = named_function(f, ROUND_TRIP_ORDER)?.div_z()?;
        if unit.log_unit()?.exp_zero()? != unit {
            failed.push(f.tag());
        }
    }
    Ok(Claim::new("roundtrip.exp_log", "exp(log(f(z)/z)) = f(z)/z for f1, f2, f3, f4, koebe").check(
        format!("exact round trip at order {ROUND_TRIP_ORDER}"),
        if failed.is_empty() { "all equal".to_string() } else { format!("failed: {}", failed.join(",")) },
        "exact",
        failed.is_empty(),
        "",
    ))
}

struct FamilyText {
    sharp: &'static str,
    example: &'static str,
    max: &'static str,
    bound: &'static str,
    edges: [&'static str; 3],
    interior: &'static str,
    stress: &'static str,
    pipeline: &'static str,
}

fn family_text(family: Family) -> FamilyText {
    match family {
        Family::StarlikeSym => FamilyText {
            sharp: "|H21(F_f/2)| = 1/4 at f1(z) = z/(1-z^2) in S*_S (sharpness)",
            example: "H21(F_f/2) of f2(z) = z/(1-z) in S*_S respects |H| <= 1/4",
            max: "max of F(x,y) over Omega is 12, attained at (0,1)",
            bound: "|H21(F_f/2)| <= max F / 48 = 1/4 on S*_S",
            edges: [
                "F(x,0) = x^4 - 6x^3 + 6x <= 2.4378 on [0,1]",
                "F(0,y) = 12y^2 <= 12 on [0,1]",
                "F(x,1-x^2) = x^4 - 12x^2 + 12 <= 12, attained at x = 0",
            ],
            interior: "x^2 + x^3 + 4y + 2xy > 0 inside Omega, so F has no interior critical point",
            stress: "|H21(F_f/2)| <= 1/4 for realizable Schwarz data, supremum attained",
            pipeline: "closed form (c1^4 + 6c1c3 - 6c1^2c2 - 12c2^2)/48 equals the series pipeline",
        },
        Family::ConvexSym => FamilyText {
            sharp: "|H21(F_f/2)| = 1/36 at f3(z) = log((1+z)/(1-z))/2 in K_S (sharpness)",
            example: "H21(F_f/2) of f4(z) = -log(1-z) in K_S respects |H| <= 1/36",
            max: "max of G(x,y) over Omega is 64, attained at (0,1)",
            bound: "|H21(F_f/2)| <= max G / 2304 = 1/36 on K_S",
            edges: [
                "G(x,0) = 11x^4 - 36x^3 + 36x <= 15.512 on [0,1]",
                "G(0,y) = 64y^2 <= 64 on [0,1]",
                "G(x,1-x^2) = 19x^4 - 72x^2 + 64 <= 64, attained at x = 0",
            ],
            interior: "5x^2 + 5x^3 + 32y + 14xy > 0 inside Omega, so G has no interior critical point",
            stress: "|H21(F_f/2)| <= 1/36 for realizable Schwarz data, supremum attained",
            pipeline: "closed form (11c1^4 + 36c1c3 - 20c1^2c2 - 64c2^2)/2304 equals the series pipeline",
        },
    }
}

fn family_claims(family: Family, options: &VerifyOptions) -> Result<Vec<ClaimRecord>> {
    let text = family_text(family);
    let tag = family.tag();
    let bound = family.sharp_bound();
    let mut claims = Vec::new();

    // sharpness through the exact series pipeline
    let (extremal, example, example_unscaled) = match family {
        Family::StarlikeSym => (NamedFunction::F1, NamedFunction::F2, rat(1, 12)),
        Family::ConvexSym => (NamedFunction::F3, NamedFunction::F4, rat(11, 576)),
    };
    let h = pipeline_h21(extremal)?;
    claims.push(Claim::new(format!("{tag}.sharp_{}", extremal.tag()), text.sharp).exact(
        &bound,
        &h.abs(),
        format!("signed value {}", rational_string(&h)),
    ));

    let h = pipeline_h21(example)?;
    let f = named_function(example, 4)?;
    let unscaled = h21_unscaled_form(f.coeff(2), f.coeff(3), f.coeff(4));
    let expected_example = match family {
        Family::StarlikeSym => rat(1, 48),
        Family::ConvexSym => rat(11, 2304),
    };
    let mut record = Claim::new(format!("{tag}.example_{}", example.tag()), text.example).exact(
        &expected_example,
        &h,
        format!(
            "the unscaled form a2a4 - a3^2 + a2^4/12 gives {} = 4 x {}; both are <= {}",
            rational_string(&unscaled),
            rational_string(&h),
            rational_string(&bound)
        ),
    );
    record.pass &= unscaled == example_unscaled && unscaled <= bound && h.abs() <= bound;
    claims.push(record);

    // surface maximum and the bound derived from it
    let report = maximize_surface(family, options.surface_grid, SURFACE_TOL)?;
    let expected_max = (surface_scale(family) as f64) * family.sharp_bound_f64();
    let mut record = Claim::new(format!("{tag}.max_{}", surface_letter(family)), text.max).float(
        expected_max,
        report.max_value,
        SURFACE_TOL,
        format!(
            "max{}={} at ({}, {}); grid {}, {} refinement steps",
            surface_letter(family),
            report.max_value,
            report.argmax.x(),
            report.argmax.y(),
            report.grid_size,
            report.refinement_steps
        ),
    );
    record.pass &= report.argmax.x() == 0.0 && report.argmax.y() == 1.0;
    claims.push(record);

    let derived = bound_from_surface_exact(family, &report).unwrap_or_else(|| rat(-1, 1));
    claims.push(Claim::new(format!("{tag}.bound"), text.bound).exact(
        &bound,
        &derived,
        format!("max / {}", surface_scale(family)),
    ));

    claims.extend(edge_claims(family, &report, &text));

    let interior = interior_ry_minimum(family, INTERIOR_GRID, INTERIOR_Y_FLOOR);
    claims.push(
        Claim::new(format!("{tag}.no_interior_critical"), text.interior).check(
            "min r_y > 0",
            interior.map_or("no points".to_string(), |m| format!("min r_y = {}", float_string(m))),
            format!("{INTERIOR_GRID}x{INTERIOR_GRID} interior grid, y >= {INTERIOR_Y_FLOOR:e}"),
            interior.is_some_and(|m| m > 0.0),
            "",
        ),
    );

    // stress test over realizable samples
    let stress = stress_test(family, options.samples, options.seed)?;
    let rerun = stress_test(family, options.samples, options.seed)?;
    claims.push(Claim::new(format!("{tag}.stress"), text.stress).check(
        "0 violations",
        format!("{} violations in {} samples", stress.violations.len(), stress.count),
        float_string(crate::bounds::VIOLATION_TOL),
        stress.violations.is_empty() && stress == rerun,
        format!("seed {}; rerun identical: {}", stress.seed, stress == rerun),
    ));
    claims.push(
        Claim::new(format!("{tag}.stress_sup"), text.stress).check(
            float_string(family.sharp_bound_f64()),
            float_string(stress.max_abs),
            "exact",
            stress.max_abs == family.sharp_bound_f64(),
            format!("attained at sample {}", stress.argmax_index),
        ),
    );

    claims.push(pipeline_claim(family, options, &text)?);
    Ok(claims)
}

fn surface_letter(family: Family) -> &'static str {
    match family {
        Family::StarlikeSym => "F",
        Family::ConvexSym => "G",
    }
}

fn edge_claims(family: Family, report: &SurfaceReport, text: &FamilyText) -> Vec<ClaimRecord> {
    let tag = family.tag();
    let (x_axis_expected, x_axis_tol) = match family {
        Family::StarlikeSym => (2.4378, 1e-3),
        Family::ConvexSym => (15.512, 1e-2),
    };
    let top = (surface_scale(family) as f64) * family.sharp_bound_f64();
    let at = |e: &EdgeMaximum| format!("argmax ({}, {})", e.argmax.x(), e.argmax.y());
    let b = &report.boundary_maxima;

    let x_axis = Claim::new(format!("{tag}.edge_y0"), text.edges[0]).float(
        x_axis_expected,
        b.x_axis.value,
        x_axis_tol,
        at(&b.x_axis),
    );
    let y_axis = Claim::new(format!("{tag}.edge_x0"), text.edges[1]).float(top, b.y_axis.value, 0.0, at(&b.y_axis));
    let mut curve = Claim::new(format!("{tag}.edge_curve"), text.edges[2]).float(top, b.curve.value, 0.0, at(&b.curve));
    curve.pass &= b.curve.argmax.x() == 0.0;
    vec![x_axis, y_axis, curve]
}

fn pipeline_claim(family: Family, options: &VerifyOptions, text: &FamilyText) -> Result<ClaimRecord> {
    let count = options.samples.min(PIPELINE_SAMPLES);
    let spec = HankelSpec::new(2, 1, EntryKind::Logarithmic)?;
    let mut worst = 0.0_f64;
    for t in sample_schur(count, options.seed) {
        let closed: Complex64 = h21_from_schwarz(family, &schur_coefficients(&t))?;
        let w = schwarz_from_schur(&t, PIPELINE_ORDER)?;
        let f = build_function_series(family, &w, PIPELINE_ORDER)?;
        let series = hankel_log(&f, &spec)?;
        worst = worst.max((closed - series).norm());
    }
    Ok(Claim::new(format!("{}.pipeline", family.tag()), text.pipeline).check(
        format!("max |difference| <= {}", float_string(PIPELINE_TOL)),
        float_string(worst),
        float_string(PIPELINE_TOL),
        worst <= PIPELINE_TOL,
        format!("{count} samples, series order {PIPELINE_ORDER}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(family: FamilySelection, samples: usize) -> VerifyOptions {
        VerifyOptions {
            family,
            samples,
            seed: 7,
            surface_grid: 101,
        }
    }

    #[test]
    fn prefix_only_run_passes() {
        let report = run_verification(&quick(FamilySelection::All, 2)).unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert_eq!(report.claim("ss.stress_sup").unwrap().computed, float_string(0.25));
        assert!(report.claims.iter().all(|c| !c.anchor.is_empty()));
    }

    #[test]
    fn family_filter() {
        let report = run_verification(&quick(FamilySelection::Ks, 2)).unwrap();
        assert!(report.claim("ks.max_G").is_some());
        assert!(report.claim("ss.max_F").is_none());
        assert!(report.claim("koebe.gamma_n").is_some());
    }

    #[test]
    fn example_claims_flag_unscaled_values() {
        let report = run_verification(&quick(FamilySelection::All, 2)).unwrap();
        let f2 = report.claim("ss.example_f2").unwrap();
        assert_eq!(f2.computed, "1/48");
        assert!(f2.note.contains("1/12"));
        let f4 = report.claim("ks.example_f4").unwrap();
        assert_eq!(f4.computed, "11/2304");
        assert!(f4.note.contains("11/576"));
    }
}
