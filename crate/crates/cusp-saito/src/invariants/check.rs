use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{analyze, Analysis, CurveInput, SCHEMA};
use crate::curve_algebra::{int, nu_d, one, OneForm, OrderResult, WPoly, EXACT};
use crate::semimodule::{check_invariants, oracle_membership, CheckOutcome, Star};
use crate::standard_saito::{delorme_decompose, divide_in_saito_basis};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
    pub all_passed: bool,
}

/// A random polynomial with small integer coefficients and weighted degree at most `max_weight`.
pub fn random_weighted_poly<R: Rng>(n: i64, m: i64, max_weight: i64, terms: usize, rng: &mut R) -> WPoly {
    let mut p = WPoly::zero(n, m, EXACT);
    for _ in 0..terms {
        let j = rng.gen_range(0..=max_weight / m);
        let i = rng.gen_range(0..=(max_weight - m * j) / n);
        let c = rng.gen_range(-5i64..=5);
        p.add_term(i, j, int(c));
    }
    p
}

fn entry(name: &str, failures: Vec<String>) -> CheckEntry {
    CheckEntry { name: name.into(), passed: failures.is_empty(), detail: failures.into_iter().next() }
}

fn echelon_vs_combinatorics(a: &Analysis) -> Vec<String> {
    let sb = &a.standard;
    let mut bad = Vec::new();
    let oracle: Vec<i64> = (1..sb.window).filter(|&k| oracle_membership(&sb.basis, k)).collect();
    if oracle != sb.values {
        bad.push("echelon pivot set differs from the semimodule generated by the basis".into());
    }
    let combinatorial = sb.basis.minus_semigroup().len();
    if combinatorial != sb.lambda_minus_gamma_count() {
        bad.push(format!("♯(Λ∖Γ): {combinatorial} by enumeration, {} by echelon", sb.lambda_minus_gamma_count()));
    }
    bad
}

fn basis_orders<R: Rng>(a: &Analysis, rng: &mut R) -> Vec<String> {
    let sb = &a.standard;
    let (n, m) = (sb.basis.gamma.n, sb.basis.gamma.m);
    let mut bad = Vec::new();
    for i in -1..=sb.s() as i64 {
        let mut unit = random_weighted_poly(n, m, 3 * m, 3, rng);
        unit.add_term(0, 0, one() - unit.constant_term() + int(rng.gen_range(1..=4)));
        let form = sb.form(i).mul_poly(&unit);
        let got_c = a.curve.nu_c(&form, sb.window).ok().and_then(OrderResult::finite);
        let got_d = nu_d(&form).ok();
        if got_c != Some(sb.basis.lambda(i)) || got_d != Some(sb.table.t(i)) {
            bad.push(format!("unit multiple of ω_{i} has (ν_C, ν_D) = ({got_c:?}, {got_d:?})"));
        }
    }
    bad
}

fn system_orders(a: &Analysis) -> Vec<String> {
    let sb = &a.standard;
    let sys = &a.system;
    let mut bad = Vec::new();
    let s = sb.s() as i64;
    let last = sb.table.last();
    if nu_d(sys.w_last()).ok() != Some(last.t) || nu_d(sys.wt_last()).ok() != Some(last.t_tilde) {
        bad.push("last forms do not realize (t_{s+1}, t̃_{s+1})".into());
    }
    for j in 1..=s + 1 {
        let form = sys.tilde_form(j);
        if nu_d(form).ok() != Some(sb.table.t_tilde(j)) {
            bad.push(format!("ν_D(ω̃_{j}) differs from t̃_{j} = {}", sb.table.t_tilde(j)));
        }
        if !a.curve.nu_c_auto(form).is_infinite() {
            bad.push(format!("ω̃_{j} is not certified invariant"));
        }
        let cert = sys.certificate(j);
        let rebuilt = sys.w_last().mul_poly(&cert.h).add(&sys.wt_last().mul_poly(&cert.f));
        if !rebuilt.sub(form).is_zero() {
            bad.push(format!("certificate of ω̃_{j} does not reproduce it"));
        }
    }
    if s >= 1 && sys.xi_order != Some(sb.table.t_tilde(s)) {
        bad.push(format!("ν_D(ξ) = {:?}, expected t̃_s = {}", sys.xi_order, sb.table.t_tilde(s)));
    }
    bad
}

fn delorme(a: &Analysis) -> Vec<String> {
    let sb = &a.standard;
    let s = sb.s() as i64;
    let mut bad = Vec::new();
    let low = sb.table.last().low_star();
    let mut cases: Vec<(i64, Star, &OneForm)> = vec![(s, low, a.system.w_last()), (s, low.other(), a.system.wt_last())];
    for i in 0..s {
        cases.push((i, sb.table.row(i + 1).low_star(), sb.form(i + 1)));
    }
    for (i, star, form) in cases {
        for j in 0..=i {
            match delorme_decompose(sb, &a.curve, form, i, j, star) {
                Ok(d) => bad.extend(d.verify(sb, &a.curve, form).into_iter().map(|e| format!("(i, j) = ({i}, {j}): {e}"))),
                Err(e) => bad.push(format!("(i, j) = ({i}, {j}): {e}")),
            }
        }
    }
    bad
}

fn division_round_trip<R: Rng>(a: &Analysis, rng: &mut R, samples: usize) -> Vec<String> {
    let (n, m) = (a.param.n, a.param.m);
    let sys = &a.system;
    let mut bad = Vec::new();
    for _ in 0..samples {
        let g = random_weighted_poly(n, m, 60, 4, rng);
        let gt = random_weighted_poly(n, m, 60, 4, rng);
        let w = sys.w_last().mul_poly(&g).add(&sys.wt_last().mul_poly(&gt));
        if w.is_zero() {
            continue;
        }
        match divide_in_saito_basis(&w, sys, &a.curve) {
            Ok(c) => {
                if c.g != g.truncate(c.g.trunc) || c.g_tilde != gt.truncate(c.g_tilde.trunc) {
                    bad.push(format!("recovered ({}, {}) from ({g}, {gt})", c.g, c.g_tilde));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    bad
}

/// Runs the oracle cross-checks and randomized property checks on one curve.
pub fn cmd_check(input: &CurveInput, seed: u64) -> crate::Result<CheckReport> {
    let a = analyze(input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sb = &a.standard;
    let mut checks = vec![
        entry("echelon_matches_combinatorics", echelon_vs_combinatorics(&a)),
        entry("basis_orders_under_unit_rescaling", basis_orders(&a, &mut rng)),
        entry("special_system_orders", system_orders(&a)),
        entry("delorme_decompositions", delorme(&a)),
    ];
    let semimodule: Vec<String> = check_invariants(&sb.basis)
        .into_iter()
        .filter_map(|c| match c.outcome {
            CheckOutcome::Fail(e) => Some(format!("{}: {e}", c.name)),
            _ => None,
        })
        .collect();
    checks.push(entry("semimodule_invariants", semimodule));
    let witness = if a.witness.holds { vec![] } else { vec![format!("division stopped at {:?}", a.witness.inexact_at)] };
    checks.push(entry("saito_criterion", witness));
    let last = sb.table.last();
    let dc = [nu_d(a.system.w_last()).ok(), nu_d(a.system.wt_last()).ok()];
    let dc_bad = if dc == [Some(last.t), Some(last.t_tilde)] { vec![] } else { vec![format!("measured {dc:?}")] };
    checks.push(entry("saito_pair_dc_matches_table", dc_bad));
    let d1 = &a.d1;
    let d1_bad = if d1.s1 + d1.s1_tilde <= d1.nu_d1_xyf { vec![] } else { vec![format!("{} + {} > {}", d1.s1, d1.s1_tilde, d1.nu_d1_xyf)] };
    checks.push(entry("saito_pair_d1_bound", d1_bad));
    checks.push(entry("division_round_trip", division_round_trip(&a, &mut rng, 10)));
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(CheckReport { schema: SCHEMA, seed, checks, all_passed })
}
