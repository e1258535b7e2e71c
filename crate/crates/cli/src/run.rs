//! Job execution: dispatch a parsed job to the engine and render a
//! deterministic report.  The outcome separates "the computation finished"
//! from "a checked property failed" from "a resource cap truncated the
//! run", so the binary can map them to distinct exit codes.

use num_traits::{Signed, ToPrimitive};

use dyndeg_core::cyclelat::{self, CycleLattice, SimplicityOutcome};
use dyndeg_core::degseq;
use dyndeg_core::interval::Interval;
use dyndeg_core::monomial;
use dyndeg_core::relative::{self, RelativeError};
use dyndeg_core::rng;

use crate::job::{
    self, ActionSpec, JobError, JobFile, MapSpec, ModelKind, Options, Resolved, SpaceSpec,
};
use crate::report::{fmt_f64, fmt_interval, fmt_mat, verdict, Doc, CERTIFIED, EXACT, HEURISTIC};
use crate::suites;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Complete,
    PropertyFail,
    Truncated,
}

pub(crate) fn internal(e: impl std::fmt::Display) -> JobError {
    JobError::Internal(e.to_string())
}

pub fn run_job(file: &JobFile, overrides: Options) -> Result<(String, Outcome), JobError> {
    match file {
        JobFile::Degrees {
            space,
            map,
            options,
        } => degrees_job(space, map, overrides.or(*options).resolve()),
        JobFile::Monomial {
            exponents,
            model,
            options,
        } => monomial_job(exponents, *model, overrides.or(*options).resolve()),
        JobFile::Lattice {
            blowup_points,
            pairing,
            polarization,
            effective,
            action,
            options,
        } => lattice_job(
            *blowup_points,
            pairing.as_deref(),
            polarization.as_deref(),
            effective.as_deref(),
            action,
            overrides.or(*options).resolve(),
        ),
        JobFile::Relative {
            space,
            map,
            base_blocks,
            options,
        } => relative_job(space, map, base_blocks, overrides.or(*options).resolve()),
        JobFile::ProductFormula {
            exponents,
            projection,
            options,
        } => product_formula_job(exponents, projection, overrides.or(*options).resolve()),
        JobFile::PropertySuite { suite, options } => {
            let r = overrides.or(*options).resolve();
            let (doc, pass) = suites::run_suite(suite, r.seed)?;
            let outcome = if pass {
                Outcome::Complete
            } else {
                Outcome::PropertyFail
            };
            Ok((doc, outcome))
        }
    }
}

fn status_of(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Complete => "COMPLETE",
        Outcome::PropertyFail => "FAIL",
        Outcome::Truncated => "TRUNCATED",
    }
}

/// Shared tail of every degree-sequence style report.
fn degree_sections(doc: &mut Doc, data: &degseq::DegreeData) {
    doc.section("degrees");
    doc.kv("columns", "n | degree | matrix | extracted-factors");
    for n in 0..=data.max_power() {
        let factors = if data.factors[n].iter().any(|p| !p.is_constant()) {
            data.factors[n]
                .iter()
                .map(|p| p.to_canonical_string())
                .collect::<Vec<_>>()
                .join("; ")
        } else {
            String::from("-")
        };
        doc.line(format!(
            "{n}: {} {} {}",
            data.scalars[n],
            fmt_mat(&data.matrices[n]),
            factors
        ));
    }
    doc.kv("flag", EXACT);
    doc.kv("truncated", if data.truncated { "yes" } else { "no" });

    doc.section("stability");
    match data.first_instability() {
        Some((n, tuple, factor)) => doc.kv_flagged(
            "first-instability",
            format!(
                "n={n} tuple={tuple} factor={}",
                factor.to_canonical_string()
            ),
            EXACT,
        ),
        None => doc.kv_flagged("first-instability", "none", EXACT),
    }
    doc.kv_flagged(
        "submultiplicative",
        if data.check_submultiplicative().is_ok() {
            "yes"
        } else {
            "no"
        },
        EXACT,
    );

    doc.section("lambda1");
    let est = degseq::lambda1_estimate(data);
    doc.interval("enclosure", &est.enclosure);
    match est.heuristic {
        Some(h) => doc.kv_flagged("ratio-estimate", fmt_f64(h), HEURISTIC),
        None => doc.kv("ratio-estimate", "-"),
    }
    doc.kv("settled", if est.settled { "yes" } else { "no" });
}

fn degrees_job(
    space_spec: &SpaceSpec,
    map_spec: &MapSpec,
    r: Resolved,
) -> Result<(String, Outcome), JobError> {
    let space = job::build_space(space_spec)?;
    let f = job::build_map(&space, map_spec)?;
    let mut doc = Doc::new("degrees", r.seed);
    doc.section("input");
    doc.kv("space", &space);
    doc.kv("map", &f);
    doc.kv("n-max", r.n_max);
    doc.kv("max-terms", r.budget.max_terms);
    doc.kv("max-coeff-bits", r.budget.max_coeff_bits);
    let mut rng = rng::seeded(r.seed);
    if !f.is_dominant(&mut rng).map_err(internal)? {
        return Err(JobError::Invalid(String::from(
            "could not establish dominance of the map",
        )));
    }
    doc.kv_flagged("dominant", "yes", EXACT);

    let data = degseq::iterate_degrees(&f, r.n_max, &r.budget).map_err(internal)?;
    degree_sections(&mut doc, &data);
    let outcome = if data.check_submultiplicative().is_err() {
        Outcome::PropertyFail
    } else if data.truncated {
        Outcome::Truncated
    } else {
        Outcome::Complete
    };
    Ok((doc.finish(status_of(outcome)), outcome))
}

fn monomial_job(
    exponents: &[Vec<i64>],
    model: ModelKind,
    r: Resolved,
) -> Result<(String, Outcome), JobError> {
    let a = job::int_matrix(exponents, "exponents")?;
    let f = match model {
        ModelKind::Projective => monomial::projective_model(&a),
        ModelKind::TorusProduct => monomial::torus_product_model(&a),
    }
    .map_err(|e| JobError::Invalid(e.to_string()))?;
    let mut doc = Doc::new("monomial", r.seed);
    doc.section("input");
    doc.kv("exponents", fmt_mat(&a));
    doc.kv("model", model.name());
    doc.kv("map", &f);
    doc.kv("tol", fmt_f64(r.tol));

    let lambda = monomial::dynamical_degrees(&a, r.tol).map_err(internal)?;
    doc.section("dynamical-degrees");
    for (p, iv) in lambda.iter().enumerate() {
        doc.interval(&format!("lambda_{p}"), iv);
    }

    doc.section("checks");
    let violations = monomial::log_concavity_violations(&lambda, r.tol);
    let lc_ok = violations.is_empty();
    doc.kv_flagged(
        "log-concavity",
        if lc_ok {
            String::from("PASS")
        } else {
            format!("FAIL at p = {violations:?}")
        },
        CERTIFIED,
    );
    let l0_ok = lambda[0].is_point() && lambda[0].contains(1.0);
    doc.kv_flagged("lambda0-is-one", verdict(l0_ok), EXACT);
    let lower_ok = lambda.iter().all(|l| l.lo >= 1.0 - r.tol);
    doc.kv_flagged("all-degrees-at-least-one", verdict(lower_ok), CERTIFIED);
    let det = a.det().abs();
    doc.kv_flagged("abs-det", &det, EXACT);
    let det_ok = det
        .to_f64()
        .is_some_and(|d| lambda[lambda.len() - 1].contains(d));
    doc.kv_flagged("top-degree-is-abs-det", verdict(det_ok), CERTIFIED);

    let outcome = if lc_ok && l0_ok && lower_ok && det_ok {
        Outcome::Complete
    } else {
        Outcome::PropertyFail
    };
    Ok((doc.finish(status_of(outcome)), outcome))
}

fn lattice_job(
    blowup_points: Option<usize>,
    pairing: Option<&[Vec<i64>]>,
    polarization: Option<&[i64]>,
    effective: Option<&[Vec<i64>]>,
    action: &ActionSpec,
    r: Resolved,
) -> Result<(String, Outcome), JobError> {
    let lat = match (blowup_points, pairing, polarization, effective) {
        (Some(m), None, None, None) => {
            if m > 5 {
                return Err(JobError::Invalid(String::from(
                    "the extremal generator list is known here for at most 5 blowup points",
                )));
            }
            cyclelat::blowup_plane(m)
        }
        (None, Some(pairing), Some(omega), Some(eff)) => {
            let inter = job::int_matrix(pairing, "pairing")?;
            let omega = omega.iter().map(|&x| x.into()).collect();
            let eff = eff
                .iter()
                .map(|g| g.iter().map(|&x| x.into()).collect())
                .collect();
            CycleLattice::new(inter, omega, eff).map_err(|e| JobError::Invalid(e.to_string()))?
        }
        _ => {
            return Err(JobError::Invalid(String::from(
                "give either blowup-points or all of pairing/polarization/effective",
            )))
        }
    };
    let act = match action {
        ActionSpec::Named(name) => match (name.as_str(), blowup_points) {
            ("cremona", Some(m)) if m >= 3 => cyclelat::cremona_action(m),
            ("coxeter", Some(m)) if m >= 3 => cyclelat::coxeter_action(m),
            ("cremona" | "coxeter", _) => {
                return Err(JobError::Invalid(String::from(
                    "named actions need a blowup lattice with at least 3 points",
                )))
            }
            _ => {
                return Err(JobError::Invalid(format!(
                    "unknown action '{name}' (named actions: cremona, coxeter)"
                )))
            }
        },
        ActionSpec::Rows(rows) => {
            let m = job::int_matrix(rows, "action")?;
            if m.rows() != lat.rank() || m.cols() != lat.rank() {
                return Err(JobError::Invalid(format!(
                    "action must be {0}x{0} for a rank {0} lattice",
                    lat.rank()
                )));
            }
            m
        }
    };

    let mut doc = Doc::new("lattice", r.seed);
    doc.section("lattice");
    doc.kv("rank", lat.rank());
    doc.kv("pairing", fmt_mat(lat.intersection()));
    let (pos, neg, zero) = lat.hodge_signature();
    doc.kv_flagged("inertia", format!("({pos}, {neg}, {zero})"), EXACT);

    doc.section("action");
    doc.kv("matrix", fmt_mat(&act));
    doc.kv_flagged(
        "preserves-effective-cone",
        if lat.preserves_effective_cone(&act) {
            "yes"
        } else {
            "no"
        },
        EXACT,
    );

    let (spectral, outcome) = cyclelat::simplicity_check(&act, r.tol).map_err(internal)?;
    doc.section("spectral");
    let coeffs: Vec<String> = spectral.char_poly.iter().map(|c| c.to_string()).collect();
    doc.kv_flagged(
        "char-poly-ascending",
        format!("[{}]", coeffs.join(", ")),
        EXACT,
    );
    doc.interval("radius", &spectral.radius);
    doc.kv("columns", "modulus-interval | multiplicity");
    for disk in &spectral.moduli {
        doc.line(format!(
            "{} x{}",
            fmt_interval(&disk.modulus),
            disk.multiplicity
        ));
    }

    doc.section("simplicity");
    let (verdict_str, detail, failed) = match &outcome {
        SimplicityOutcome::Proven { top, others_bound } => (
            "PROVEN",
            format!(
                "top {} simple, real positive; others at most {}",
                fmt_interval(top),
                fmt_interval(others_bound)
            ),
            false,
        ),
        SimplicityOutcome::HypothesisNotMet { detail } => {
            ("HYPOTHESIS_NOT_MET", detail.clone(), false)
        }
        SimplicityOutcome::Violated { detail } => ("VIOLATED", detail.clone(), true),
        SimplicityOutcome::Unresolved { detail } => ("UNRESOLVED", detail.clone(), false),
    };
    doc.kv_flagged("verdict", verdict_str, CERTIFIED);
    doc.kv("detail", detail);

    let outcome = if failed {
        Outcome::PropertyFail
    } else {
        Outcome::Complete
    };
    Ok((doc.finish(status_of(outcome)), outcome))
}

fn relative_job(
    space_spec: &SpaceSpec,
    map_spec: &MapSpec,
    base_blocks: &[usize],
    r: Resolved,
) -> Result<(String, Outcome), JobError> {
    let space = job::build_space(space_spec)?;
    let f = job::build_map(&space, map_spec)?;
    let semi = relative::build_semiconjugacy(&f, base_blocks, &r.budget).map_err(|e| match e {
        RelativeError::BadBlocks(_)
        | RelativeError::NotTriangular(_)
        | RelativeError::VerificationFailed => JobError::Invalid(e.to_string()),
        other => internal(other),
    })?;
    let mut doc = Doc::new("relative", r.seed);
    doc.section("input");
    doc.kv("space", &space);
    doc.kv("map", &f);
    doc.kv(
        "base-blocks",
        format!(
            "[{}]",
            base_blocks
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    doc.kv("n-max", r.n_max);

    doc.section("semiconjugacy");
    doc.kv("base-map", &semi.base);
    doc.kv_flagged("intertwines", "yes", EXACT);

    match relative::relative_degrees(&semi, r.n_max, r.seed, &r.budget) {
        Ok(data) => {
            doc.section("fiber-degrees");
            doc.kv("columns", "n | degree");
            for (n, d) in data.scalars.iter().enumerate() {
                doc.line(format!("{n}: {d}"));
            }
            doc.kv("flag", EXACT);
            doc.kv("truncated", if data.truncated { "yes" } else { "no" });
            for (i, w) in data.witnesses.iter().enumerate() {
                let coords: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                doc.kv(&format!("witness-{i}"), format!("({})", coords.join(", ")));
            }
            let c = relative::submult_constant(&semi);
            doc.kv_flagged("submult-constant", &c, EXACT);
            let sub_ok = relative::check_relative_submultiplicative(&data, &c).is_ok();
            doc.kv_flagged(
                "weighted-submultiplicative",
                if sub_ok { "yes" } else { "no" },
                EXACT,
            );

            doc.section("relative-degrees");
            let one = Interval::new(1.0, 1.0);
            doc.interval("lambda_0", &one);
            let est = relative::relative_lambda1(&data);
            doc.interval("lambda_1", &est.enclosure);
            match est.heuristic {
                Some(h) => doc.kv_flagged("ratio-estimate", fmt_f64(h), HEURISTIC),
                None => doc.kv("ratio-estimate", "-"),
            }
            doc.kv("settled", if est.settled { "yes" } else { "no" });

            // on a surface over a curve the product formula pins the total
            // degrees, so the fibration consistency probe comes for free
            let surface_shape = semi.total.source().dim() == 2 && semi.base.source().dim() == 1;
            if surface_shape && !data.truncated {
                let base_data =
                    degseq::iterate_degrees(&semi.base, r.n_max, &r.budget).map_err(internal)?;
                let base_est = degseq::lambda1_estimate(&base_data);
                let base_vec = [one, base_est.enclosure];
                let fiber_vec = [one, est.enclosure];
                let lambda1 = relative::product_formula_max(&base_vec, &fiber_vec, 1);
                let lambda2 = relative::product_formula_max(&base_vec, &fiber_vec, 2);
                doc.section("product-formula");
                doc.interval("base-lambda1", &base_est.enclosure);
                doc.interval("lambda_1 = max(base, fiber)", &lambda1);
                doc.interval("lambda_2 = base * fiber", &lambda2);
                let verdict = relative::surface_primitivity_probe(&semi, &lambda1, &lambda2)
                    .map_err(internal)?;
                doc.kv_flagged(
                    "fibration-consistency",
                    match verdict {
                        relative::FibrationVerdict::Consistent => "CONSISTENT",
                        relative::FibrationVerdict::ContradictsFibration => "CONTRADICTS_FIBRATION",
                    },
                    CERTIFIED,
                );
            }
            let outcome = if data.truncated {
                Outcome::Truncated
            } else if !sub_ok {
                Outcome::PropertyFail
            } else {
                Outcome::Complete
            };
            Ok((doc.finish(status_of(outcome)), outcome))
        }
        Err(RelativeError::DegenerateFibers) => {
            doc.section("fiber-degrees");
            doc.kv(
                "error",
                "fiber restrictions disagree between base points after resampling",
            );
            Ok((doc.finish("FAIL"), Outcome::PropertyFail))
        }
        Err(e) => Err(internal(e)),
    }
}

fn product_formula_job(
    exponents: &[Vec<i64>],
    projection: &[Vec<i64>],
    r: Resolved,
) -> Result<(String, Outcome), JobError> {
    let a = job::int_matrix(exponents, "exponents")?;
    let b = job::int_matrix(projection, "projection")?;
    if b.cols() != a.rows() || !a.is_square() {
        return Err(JobError::Invalid(String::from(
            "projection columns must match the square exponent matrix",
        )));
    }
    let (g, rr) = monomial::toric_semiconjugacy(&a, &b).ok_or_else(|| {
        JobError::Invalid(String::from(
            "the projection rows do not define an invariant quotient",
        ))
    })?;
    let mut doc = Doc::new("product-formula", r.seed);
    doc.section("input");
    doc.kv("exponents", fmt_mat(&a));
    doc.kv("projection", fmt_mat(&b));
    doc.kv("tol", fmt_f64(r.tol));

    doc.section("semiconjugacy");
    doc.kv_flagged("base-exponents", fmt_mat(&g), EXACT);
    doc.kv_flagged("fiber-exponents", fmt_mat(&rr), EXACT);

    let pairs = relative::check_toric_product_formula(&a, &b, r.tol).map_err(|e| match e {
        RelativeError::BadBlocks(_) => JobError::Invalid(e.to_string()),
        other => internal(other),
    })?;
    doc.section("table");
    doc.kv(
        "columns",
        "p | total | max_j base_j * fiber_(p-j) | overlap",
    );
    let mut all_overlap = true;
    for (p, (total, formula)) in pairs.iter().enumerate() {
        let ok = total.overlaps(formula);
        all_overlap &= ok;
        doc.line(format!(
            "{p}: {} {} {}",
            fmt_interval(total),
            fmt_interval(formula),
            if ok { "yes" } else { "no" }
        ));
    }
    doc.kv("flag", CERTIFIED);

    let outcome = if all_overlap {
        Outcome::Complete
    } else {
        Outcome::PropertyFail
    };
    Ok((doc.finish(status_of(outcome)), outcome))
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(status_of(*self))
    }
}
