//! Curve input files, the end-to-end pipeline, JSON reports and the Saito
//! pairs at the cuspidal divisor and the first divisor.

mod check;
mod d1;

pub use check::{cmd_check, random_weighted_poly, CheckEntry, CheckReport};
pub use d1::{nu_d1_xyf, saito_pair_d1, D1Base, D1Pair};

use serde::{Deserialize, Serialize};

use crate::curve_algebra::{format_rat, implicit_equation, nu_d, parse_rat, Curve, OneForm, PuiseuxParam, WPoly};
use crate::error::{Error, Result};
use crate::semigroup::CuspSemigroup;
use crate::semimodule::{check_invariants, is_increasing, structure_table, CheckOutcome, SemimoduleBasis, StructureTable};
use crate::standard_saito::{
    compute_standard_basis, extend_standard_basis, quasihomogeneous_saito, saito_criterion, special_standard_system, SaitoWitness,
    StandardBasisResult, StandardSystem,
};

/// Version tag written into and required from every JSON document.
pub const SCHEMA: u32 = 1;

/// A curve file: `{"schema":1, "n":7, "y":[[36,"1"],[116,"1"],[196,"28/9"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInput {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub n: i64,
    pub y: Vec<(i64, String)>,
    /// Overrides the default truncation weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
    /// Overrides the default degree bound of the first-divisor search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
}

fn default_schema() -> u32 {
    SCHEMA
}

impl CurveInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let input: CurveInput = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if input.schema != SCHEMA {
            return Err(Error::InvalidInput(format!("unsupported schema {}", input.schema)));
        }
        Ok(input)
    }

    /// The parametrization, and whether `y` had to be rescaled to a monic leading term.
    pub fn param(&self) -> Result<(PuiseuxParam, bool)> {
        let terms = self.y.iter().map(|(e, c)| parse_rat(c).map(|r| (*e, r))).collect::<Result<Vec<_>>>()?;
        PuiseuxParam::new(self.n, terms)
    }

    pub fn from_param(p: &PuiseuxParam) -> Self {
        CurveInput {
            schema: SCHEMA,
            n: p.n,
            y: p.b.iter().map(|(e, c)| (*e, format_rat(c))).collect(),
            truncation: None,
            degree_bound: None,
        }
    }
}

/// The default truncation weight `c_Γ + 2nm`.
pub fn default_truncation(g: &CuspSemigroup) -> i64 {
    g.conductor + 2 * g.nm()
}

/// Everything the pipeline computes for one curve.
pub struct Analysis {
    pub param: PuiseuxParam,
    pub rescaled: bool,
    pub curve: Curve,
    pub standard: StandardBasisResult,
    pub system: StandardSystem,
    pub equation: WPoly,
    pub witness: SaitoWitness,
    pub d1: D1Pair,
    pub truncation: i64,
    pub retried: bool,
}

fn retryable(e: &Error) -> bool {
    matches!(e, Error::TruncationInsufficient { .. } | Error::TruncationTooDeep { .. } | Error::IterationCap(_))
}

/// Runs the pipeline, retrying once at twice the truncation when it runs out of jets.
pub fn analyze(input: &CurveInput) -> Result<Analysis> {
    let (param, rescaled) = input.param()?;
    let w = input.truncation.unwrap_or_else(|| default_truncation(&param.semigroup()));
    match analyze_at(&param, w, input.degree_bound) {
        Err(e) if retryable(&e) => {
            let mut a = analyze_at(&param, 2 * w, input.degree_bound)?;
            a.retried = true;
            a.rescaled = rescaled;
            Ok(a)
        }
        other => other.map(|mut a| {
            a.rescaled = rescaled;
            a
        }),
    }
}

/// The pipeline at a fixed truncation weight.
pub fn analyze_at(param: &PuiseuxParam, truncation: i64, degree_bound: Option<i64>) -> Result<Analysis> {
    let curve = Curve::new(param.clone(), truncation);
    let standard = compute_standard_basis(&curve, truncation)?;
    let (w_last, wt_last) = if param.is_monomial() {
        quasihomogeneous_saito(param)?
    } else {
        let star = standard.table.last().low_star();
        (extend_standard_basis(&standard, &curve, star)?, extend_standard_basis(&standard, &curve, star.other())?)
    };
    let system = special_standard_system(&standard, &curve, &w_last, &wt_last)?;
    let equation = implicit_equation(param);
    let witness = saito_criterion(&w_last, &wt_last, &equation)?;
    let d1 = saito_pair_d1(&w_last, &wt_last, &equation, degree_bound)?;
    Ok(Analysis { param: param.clone(), rescaled: false, curve, standard, system, equation, witness, d1, truncation, retried: false })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub n: i64,
    pub m: i64,
    pub conductor: i64,
    pub frobenius: i64,
}

impl From<&CuspSemigroup> for SemigroupReport {
    fn from(g: &CuspSemigroup) -> Self {
        SemigroupReport { n: g.n, m: g.m, conductor: g.conductor, frobenius: g.frobenius() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Report {
    pub s1: i64,
    pub s1_tilde: i64,
    pub s1_method: String,
    pub generator_orders: [i64; 2],
    pub degree_bound: i64,
    pub nu_d1_xyf: i64,
    pub certificate: D1Certificate,
}

/// The maximizing element `base + h·other`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Certificate {
    pub base: D1Base,
    pub h: String,
    pub nu_d1: i64,
}

impl From<&D1Pair> for D1Report {
    fn from(p: &D1Pair) -> Self {
        D1Report {
            s1: p.s1,
            s1_tilde: p.s1_tilde,
            s1_method: "generator-min".into(),
            generator_orders: p.generator_orders,
            degree_bound: p.degree_bound,
            nu_d1_xyf: p.nu_d1_xyf,
            certificate: D1Certificate { base: p.base, h: p.h.to_string(), nu_d1: p.s1_tilde },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub holds: bool,
    /// `u(0,0)` in `ω_{s+1} ∧ ω̃_{s+1} = u·f·dx∧dy`.
    pub unit_constant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub weight: i64,
    pub certification_threshold: i64,
    /// Vanishing pullbacks below `weight` certify invariance.
    pub truncation_certified: bool,
    pub retried: bool,
}

/// Printable forms, emitted on request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormsReport {
    pub basis: Vec<String>,
    pub w_last: String,
    pub wt_last: String,
    pub tilde: Vec<String>,
    /// `(h_j, f_j)` with `ω̃_j = h_j·ω_{s+1} + f_j·ω̃_{s+1}`.
    pub certificates: Vec<[String; 2]>,
    pub equation: String,
    pub unit: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema: u32,
    pub input: CurveInput,
    pub rescaled: bool,
    pub semigroup: SemigroupReport,
    pub basis: Vec<i64>,
    pub s: usize,
    pub table: StructureTable,
    pub is_increasing: bool,
    /// `(t_{s+1}, t̃_{s+1})` read from the table.
    pub saito_pair_dc: [i64; 2],
    /// `ν_D` of the constructed `ω_{s+1}` and `ω̃_{s+1}`.
    pub saito_pair_dc_measured: [i64; 2],
    pub saito_pair_d1: D1Report,
    pub mu_minus_tau: usize,
    pub lambda_minus_gamma: Vec<i64>,
    /// `ν_D(ω̃_1), ..., ν_D(ω̃_{s+1})`.
    pub tilde_orders: Vec<i64>,
    pub xi_order: Option<i64>,
    pub criterion: CriterionReport,
    pub truncation: TruncationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<FormsReport>,
}

impl InvariantReport {
    pub fn from_analysis(a: &Analysis, emit_forms: bool) -> Result<Self> {
        let sb = &a.standard;
        let g = sb.basis.gamma;
        let last = sb.table.last();
        let forms = emit_forms.then(|| FormsReport {
            basis: sb.forms.iter().map(OneForm::to_string).collect(),
            w_last: a.system.w_last().to_string(),
            wt_last: a.system.wt_last().to_string(),
            tilde: a.system.tilde.iter().map(OneForm::to_string).collect(),
            certificates: a.system.certificates.iter().map(|c| [c.h.to_string(), c.f.to_string()]).collect(),
            equation: a.equation.to_string(),
            unit: a.witness.unit.as_ref().map(WPoly::to_string),
        });
        let threshold = a.curve.certification_threshold();
        Ok(InvariantReport {
            schema: SCHEMA,
            input: CurveInput::from_param(&a.param),
            rescaled: a.rescaled,
            semigroup: (&g).into(),
            basis: sb.basis.lambdas.clone(),
            s: sb.s(),
            table: sb.table.clone(),
            is_increasing: is_increasing(&sb.basis, &sb.table),
            saito_pair_dc: [last.t, last.t_tilde],
            saito_pair_dc_measured: [nu_d(a.system.w_last())?, nu_d(a.system.wt_last())?],
            saito_pair_d1: (&a.d1).into(),
            mu_minus_tau: sb.lambda_minus_gamma_count(),
            lambda_minus_gamma: sb.basis.minus_semigroup(),
            tilde_orders: a.system.tilde.iter().map(nu_d).collect::<Result<_>>()?,
            xi_order: a.system.xi_order,
            criterion: CriterionReport {
                holds: a.witness.holds,
                unit_constant: a.witness.unit.as_ref().map(|u| format_rat(&u.constant_term())),
            },
            truncation: TruncationReport {
                weight: a.truncation,
                certification_threshold: threshold,
                truncation_certified: a.truncation >= threshold,
                retried: a.retried,
            },
            forms,
        })
    }
}

/// Full pipeline report for one curve.
///
/// ```
/// use cusp_saito::invariants::{cmd_invariants, CurveInput};
/// let input = CurveInput::from_json(r#"{"schema":1,"n":2,"y":[[3,"1"]]}"#).unwrap();
/// let report = cmd_invariants(&input, false).unwrap();
/// assert_eq!(report.saito_pair_dc, [5, 6]);
/// ```
pub fn cmd_invariants(input: &CurveInput, emit_forms: bool) -> Result<InvariantReport> {
    InvariantReport::from_analysis(&analyze(input)?, emit_forms)
}

/// Structure table and invariant summary of a semimodule given by its basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemimoduleReport {
    pub schema: u32,
    pub semigroup: SemigroupReport,
    pub basis: Vec<i64>,
    pub table: StructureTable,
    pub is_increasing: bool,
    pub conductor: i64,
    pub lambda_minus_gamma: Vec<i64>,
    pub checks: Vec<crate::semimodule::InvariantCheck>,
    pub all_checks_passed: bool,
}

/// ```
/// use cusp_saito::invariants::cmd_semimodule;
/// let r = cmd_semimodule(5, 7, &[5, 7, 9]).unwrap();
/// assert!(!r.is_increasing);
/// assert_eq!(r.table.rows[0].u_n.min(r.table.rows[0].u_m), 12);
/// ```
pub fn cmd_semimodule(n: i64, m: i64, lambdas: &[i64]) -> Result<SemimoduleReport> {
    let g = CuspSemigroup::new(n, m)?;
    let basis = SemimoduleBasis::new(g, lambdas.to_vec())?;
    let table = structure_table(&basis);
    let checks = check_invariants(&basis);
    Ok(SemimoduleReport {
        schema: SCHEMA,
        semigroup: (&g).into(),
        is_increasing: is_increasing(&basis, &table),
        conductor: table.conductor_of_lambda,
        lambda_minus_gamma: basis.minus_semigroup(),
        all_checks_passed: checks.iter().all(|c| !matches!(c.outcome, CheckOutcome::Fail(_))),
        basis: basis.lambdas,
        table,
        checks,
    })
}

/// The Saito basis `(ω_{s+1}, ω̃_{s+1})` and its criterion witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaitoReport {
    pub schema: u32,
    pub input: CurveInput,
    pub w_last: String,
    pub wt_last: String,
    /// `ν_D` of the two basis forms.
    pub orders: [i64; 2],
    pub equation: String,
    pub criterion: CriterionReport,
    pub unit: Option<String>,
    pub truncation: TruncationReport,
}

impl SaitoReport {
    pub fn from_analysis(a: &Analysis) -> Result<Self> {
        let full = InvariantReport::from_analysis(a, false)?;
        Ok(SaitoReport {
            schema: SCHEMA,
            input: full.input,
            w_last: a.system.w_last().to_string(),
            wt_last: a.system.wt_last().to_string(),
            orders: full.saito_pair_dc_measured,
            equation: a.equation.to_string(),
            criterion: full.criterion,
            unit: a.witness.unit.as_ref().map(WPoly::to_string),
            truncation: full.truncation,
        })
    }
}

pub fn cmd_saito(input: &CurveInput) -> Result<SaitoReport> {
    SaitoReport::from_analysis(&analyze(input)?)
}

/// The first-divisor Saito pair with its maximizing element written out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaitoPairD1Report {
    pub schema: u32,
    pub input: CurveInput,
    pub saito_pair_d1: D1Report,
    pub w_last: String,
    pub wt_last: String,
    /// The element realizing `s1_tilde`.
    pub eta: String,
}

pub fn cmd_saito_pair_d1(input: &CurveInput) -> Result<SaitoPairD1Report> {
    let a = analyze(input)?;
    Ok(SaitoPairD1Report {
        schema: SCHEMA,
        input: CurveInput::from_param(&a.param),
        saito_pair_d1: (&a.d1).into(),
        w_last: a.system.w_last().to_string(),
        wt_last: a.system.wt_last().to_string(),
        eta: a.d1.eta.to_string(),
    })
}
