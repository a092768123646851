use moment_schur::hamburger::{self, Bound, ClassTest, HamburgerReport};
use moment_schur::linalg::{
    loewner_leq, numerical_rank, range_basis, range_included, ranges_intersect_trivially,
};
use moment_schur::stieltjes::{self, StieltjesContext};
use moment_schur::{
    in_lcr, schur_complement, schur_complement_via_basis, Matrix, Sequence, Subspace, Tolerance,
};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::CliError;
use crate::json::{self, num, MatrixJson, MatrixOut, SchurFile, SequenceFile, SequenceOut};
use crate::{BoundArg, Command};

/// Slack, in units of the tolerance, for agreement between the two Schur
/// complement routes.
const CROSS_ROUTE_FACTOR: f64 = 1e2;

#[derive(Debug, Serialize)]
pub struct Echo {
    pub subcommand: &'static str,
    pub alpha: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<&'static str>,
    pub tol: Box<RawValue>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Schur(SchurReport),
    Hamburger(HamburgerOut),
    Stieltjes(StieltjesOut),
    Interval(IntervalReport),
    Class(ClassReport),
}

#[derive(Debug, Serialize)]
pub struct SchurChecks {
    /// `0 ⪯ S ⪯ A`.
    pub loewner_chain: bool,
    /// `ran S = ran A ∩ V`.
    pub range_is_ran_a_cap_v: bool,
    /// `rank S ≤ min(rank A, dim V)`.
    pub rank_bound: bool,
    /// `S = A` exactly when `ran A ⊆ V`.
    pub equals_a_iff_ran_a_in_v: bool,
    /// `ran S = V` exactly when `V ⊆ ran A`.
    pub range_is_v_iff_v_in_ran_a: bool,
    /// `ran Y ∩ V = {0}` for `Y = A − S`.
    pub y_meets_v_trivially: bool,
    /// `S` lies in `{X : 0 ⪯ X ⪯ A, ran X ⊆ V}`.
    pub s_in_lcr: bool,
    /// The block Schur complement in an adapted basis gives the same `S`.
    pub basis_route_agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct SchurReport {
    pub command: Echo,
    pub tolerance: Box<RawValue>,
    pub q: usize,
    pub dim_v: usize,
    pub rank_a: usize,
    pub rank_s: usize,
    pub rank_y: usize,
    pub s: MatrixOut,
    pub psi: MatrixOut,
    pub y: MatrixOut,
    pub checks: SchurChecks,
}

#[derive(Debug, Serialize)]
pub struct HamburgerOut {
    pub command: Echo,
    pub tolerance: Box<RawValue>,
    pub path: &'static str,
    pub is_hnnd: bool,
    pub is_hnnde: bool,
    pub theta: MatrixOut,
    #[serde(rename = "L")]
    pub l: MatrixOut,
    #[serde(rename = "L_prev")]
    pub l_prev: Option<MatrixOut>,
    #[serde(rename = "R")]
    pub r: Option<MatrixOut>,
    pub canonical: Option<SequenceOut>,
}

#[derive(Debug, Serialize)]
pub struct StieltjesOut {
    pub command: Echo,
    pub tolerance: Box<RawValue>,
    pub path: &'static str,
    pub alpha: Box<RawValue>,
    pub is_knnd: bool,
    pub is_knnde: bool,
    pub kappa: Vec<MatrixOut>,
    pub u: Vec<MatrixOut>,
    #[serde(rename = "R")]
    pub r: Option<MatrixOut>,
    pub canonical: Option<SequenceOut>,
}

#[derive(Debug, Serialize)]
pub struct IntervalReport {
    pub command: Echo,
    pub tolerance: Box<RawValue>,
    pub path: &'static str,
    pub member: bool,
    pub lower: MatrixOut,
    pub upper: MatrixOut,
    pub candidate: MatrixOut,
}

#[derive(Debug, Serialize)]
pub struct ClassReport {
    pub command: Echo,
    pub tolerance: Box<RawValue>,
    pub path: &'static str,
    pub same_class: bool,
    pub leading_equal: bool,
    pub remainder_psd: bool,
    pub ranges_trivial: bool,
    pub canonical_agrees: Option<bool>,
}

fn tolerance(tol: f64) -> Result<Tolerance, CliError> {
    Ok(Tolerance::new(tol)?)
}

fn read_sequence(path: &str) -> Result<(Sequence, Option<f64>), CliError> {
    let text = json::read_input(path)?;
    let file: SequenceFile = json::parse(&text, path)?;
    Ok((file.to_sequence()?, file.alpha))
}

fn echo(
    subcommand: &'static str,
    alpha: Option<f64>,
    bound: Option<&'static str>,
    tol: f64,
) -> Echo {
    Echo {
        subcommand,
        alpha: alpha.map(num),
        bound,
        tol: num(tol),
    }
}

fn path_name(alpha: Option<f64>) -> &'static str {
    if alpha.is_some() {
        "stieltjes"
    } else {
        "hamburger"
    }
}

fn check_alpha(alpha: Option<f64>) -> Result<Option<f64>, CliError> {
    match alpha {
        Some(a) if !a.is_finite() => Err(moment_schur::Error::InvalidAlpha(a).into()),
        a => Ok(a),
    }
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Schur { input, tol } => schur(input, *tol).map(Report::Schur),
        Command::Classify { input, alpha, tol } => classify(input, *alpha, *tol),
        Command::Interval {
            input,
            last,
            bound,
            alpha,
            tol,
        } => interval(input, last, *bound, *alpha, *tol).map(Report::Interval),
        Command::ClassTest { s, r, alpha, tol } => {
            class_test(s, r, *alpha, *tol).map(Report::Class)
        }
    }
}

fn schur(input: &str, tol_value: f64) -> Result<SchurReport, CliError> {
    let tol = tolerance(tol_value)?;
    let file: SchurFile = json::parse(&json::read_input(input)?, input)?;
    let a = json::rows_to_matrix(&file.a)?;
    let v_cols = json::rows_to_matrix(&file.v)?;
    if v_cols.rows() != a.rows() {
        return Err(moment_schur::Error::DimensionMismatch(format!(
            "A is {}x{} but V has {} rows",
            a.rows(),
            a.cols(),
            v_cols.rows()
        ))
        .into());
    }
    let v = Subspace::from_columns(&v_cols, &tol)?;
    let result = schur_complement(&a, &v, &tol)?;
    let (s, y) = (&result.s, &result.complement);
    let via_basis = schur_complement_via_basis(&a, &v, &tol)?;

    let q = a.rows();
    let dim_v = v.dim();
    let rank_a = numerical_rank(&a, &tol)?;
    let rank_s = numerical_rank(s, &tol)?;
    let rank_y = numerical_rank(y, &tol)?;
    let qa = range_basis(&a, &tol)?;
    let dim_cap = rank_a + dim_v - numerical_rank(&qa.hstack(v.basis())?, &tol)?;

    let zero = Matrix::zeros(q, q);
    let s_equals_a = loewner_leq(&a, s, &tol)?;
    let v_in_ran_a = range_included(v.basis(), &a, &tol)?;
    let range_is_v = rank_s == dim_v && range_included(v.basis(), s, &tol)?;
    let agree =
        (s - &via_basis).frobenius_norm() <= CROSS_ROUTE_FACTOR * tol.threshold(a.frobenius_norm());
    let checks = SchurChecks {
        loewner_chain: loewner_leq(&zero, s, &tol)? && loewner_leq(s, &a.hermitian_part(), &tol)?,
        range_is_ran_a_cap_v: rank_s == dim_cap
            && range_included(s, &a, &tol)?
            && range_included(s, v.basis(), &tol)?,
        rank_bound: rank_s <= rank_a.min(dim_v),
        equals_a_iff_ran_a_in_v: s_equals_a == range_included(&a, v.basis(), &tol)?,
        range_is_v_iff_v_in_ran_a: range_is_v == v_in_ran_a,
        y_meets_v_trivially: ranges_intersect_trivially(y, v.basis(), &tol)?,
        s_in_lcr: in_lcr(&a, &v, s, &tol)?,
        basis_route_agrees: agree,
    };
    Ok(SchurReport {
        command: echo("schur", None, None, tol_value),
        tolerance: num(tol.eps_rel()),
        q,
        dim_v,
        rank_a,
        rank_s,
        rank_y,
        s: MatrixOut::new(s),
        psi: MatrixOut::new(&result.fiber_projector),
        y: MatrixOut::new(y),
        checks,
    })
}

fn classify(input: &str, alpha_flag: Option<f64>, tol_value: f64) -> Result<Report, CliError> {
    let tol = tolerance(tol_value)?;
    let (s, file_alpha) = read_sequence(input)?;
    let alpha = check_alpha(alpha_flag.or(file_alpha))?;
    let command = echo("classify", alpha, None, tol_value);
    let tolerance = num(tol.eps_rel());
    match alpha {
        None => {
            let r = HamburgerReport::new(&s, &tol)?;
            Ok(Report::Hamburger(HamburgerOut {
                command,
                tolerance,
                path: "hamburger",
                is_hnnd: r.is_hnnd,
                is_hnnde: r.is_hnnde,
                theta: MatrixOut::new(&r.theta),
                l: MatrixOut::new(&r.l),
                l_prev: r.l_prev.as_ref().map(MatrixOut::new),
                r: r.r.as_ref().map(MatrixOut::new),
                canonical: r.canonical.as_ref().map(SequenceOut::new),
            }))
        }
        Some(a) => {
            let r = StieltjesContext::new(a, s, tol)?.report()?;
            Ok(Report::Stieltjes(StieltjesOut {
                command,
                tolerance,
                path: "stieltjes",
                alpha: num(a),
                is_knnd: r.is_knnd,
                is_knnde: r.is_knnde,
                kappa: r.kappa.iter().map(MatrixOut::new).collect(),
                u: r.u.iter().map(MatrixOut::new).collect(),
                r: r.r.as_ref().map(MatrixOut::new),
                canonical: r.canonical.as_ref().map(SequenceOut::new),
            }))
        }
    }
}

fn interval(
    input: &str,
    last: &str,
    bound: BoundArg,
    alpha_flag: Option<f64>,
    tol_value: f64,
) -> Result<IntervalReport, CliError> {
    let tol = tolerance(tol_value)?;
    let (s, file_alpha) = read_sequence(input)?;
    let alpha = check_alpha(alpha_flag.or(file_alpha))?;
    let t: MatrixJson = json::parse(&json::read_input(last)?, last)?;
    let t = t.to_matrix()?;
    let (bound, bound_name) = match bound {
        BoundArg::Given => (Bound::Given, "given"),
        BoundArg::Canonical => (Bound::Canonical, "canonical"),
    };
    let ((lower, upper), member) = match alpha {
        None => (
            hamburger::extension_interval(&s, bound, &tol)?,
            hamburger::in_extension_interval(&s, &t, bound, &tol)?,
        ),
        Some(a) => (
            stieltjes::extension_interval_stieltjes(&s, a, bound, &tol)?,
            stieltjes::in_extension_interval_stieltjes(&s, a, &t, bound, &tol)?,
        ),
    };
    Ok(IntervalReport {
        command: echo("interval", alpha, Some(bound_name), tol_value),
        tolerance: num(tol.eps_rel()),
        path: path_name(alpha),
        member,
        lower: MatrixOut::new(&lower),
        upper: MatrixOut::new(&upper),
        candidate: MatrixOut::new(&t),
    })
}

fn class_test(
    s_path: &str,
    r_path: &str,
    alpha_flag: Option<f64>,
    tol_value: f64,
) -> Result<ClassReport, CliError> {
    let tol = tolerance(tol_value)?;
    if s_path == "-" && r_path == "-" {
        return Err(CliError::Parse(
            "only one of the two inputs can be read from stdin".into(),
        ));
    }
    let (s, s_alpha) = read_sequence(s_path)?;
    let (r, r_alpha) = read_sequence(r_path)?;
    let file_alpha = match (s_alpha, r_alpha) {
        (Some(x), Some(y)) if x != y && alpha_flag.is_none() => {
            return Err(CliError::Parse(format!(
                "the two files declare different alphas ({x} and {y}); pass --alpha"
            )))
        }
        (x, y) => x.or(y),
    };
    let alpha = check_alpha(alpha_flag.or(file_alpha))?;
    let test: ClassTest = match alpha {
        None => hamburger::same_class_detail(&s, &r, &tol)?,
        Some(a) => stieltjes::same_class_stieltjes_detail(&s, &r, a, &tol)?,
    };
    Ok(ClassReport {
        command: echo("class-test", alpha, None, tol_value),
        tolerance: num(tol.eps_rel()),
        path: path_name(alpha),
        same_class: test.holds(),
        leading_equal: test.leading_equal,
        remainder_psd: test.remainder_psd,
        ranges_trivial: test.ranges_trivial,
        canonical_agrees: test.canonical_agrees,
    })
}
