//! Saito basis division, report serialization and pair identities.

mod common;

use common::{division_law, raw_terms, CURVES};
use cusp_saito::invariants::{cmd_invariants, cmd_semimodule, CurveInput, InvariantReport, SemimoduleReport};
use cusp_saito::semigroup::CuspSemigroup;
use cusp_saito::semimodule::{structure_table, SemimoduleBasis};
use proptest::prelude::*;

fn report(k: usize) -> InvariantReport {
    cmd_invariants(&CurveInput::from_json(CURVES[k]).unwrap(), true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn division_round_trip_phi1(g in raw_terms(), gt in raw_terms()) { division_law(0, g, gt)?; }
}

#[test]
fn invariant_reports_round_trip_through_json() {
    for k in 0..CURVES.len() {
        let r = report(k);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<InvariantReport>(&text).unwrap(), r);
    }
}

#[test]
fn semimodule_report_round_trips_through_json() {
    let r = cmd_semimodule(7, 36, &[7, 36, 123]).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<SemimoduleReport>(&text).unwrap(), r);
}

#[test]
fn reports_are_deterministic() {
    let input = CurveInput::from_json(CURVES[1]).unwrap();
    let a = serde_json::to_string(&cmd_invariants(&input, true).unwrap()).unwrap();
    let b = serde_json::to_string(&cmd_invariants(&input, true).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn dc_pair_matches_the_combinatorial_table() {
    for k in 0..CURVES.len() {
        let r = report(k);
        let g = CuspSemigroup::new(r.semigroup.n, r.semigroup.m).unwrap();
        let table = structure_table(&SemimoduleBasis::new(g, r.basis.clone()).unwrap());
        let last = table.rows.last().unwrap();
        assert_eq!(r.saito_pair_dc, [last.t, last.t_tilde]);
        assert_eq!(r.saito_pair_dc_measured, r.saito_pair_dc);
    }
}

#[test]
fn d1_pair_respects_the_multiplicity_bound() {
    for k in 0..CURVES.len() {
        let d = report(k).saito_pair_d1;
        assert!(d.s1 + d.s1_tilde <= d.nu_d1_xyf, "{d:?}");
        assert_eq!(d.s1, d.generator_orders[0].min(d.generator_orders[1]));
    }
}

#[test]
fn quasi_homogeneous_family() {
    for (n, m) in [(2, 3), (2, 5), (3, 4), (5, 7)] {
        let input = CurveInput::from_json(&format!(r#"{{"schema":1,"n":{n},"y":[[{m},"1"]]}}"#)).unwrap();
        let r = cmd_invariants(&input, false).unwrap();
        assert_eq!(r.s, 0);
        assert_eq!(r.saito_pair_dc, [n + m, n * m]);
        assert!(r.criterion.holds && r.criterion.unit_constant.is_some());
    }
}

#[test]
fn rescaled_inputs_are_flagged() {
    let input = CurveInput::from_json(r#"{"schema":1,"n":2,"y":[[3,"4"]]}"#).unwrap();
    let r = cmd_invariants(&input, false).unwrap();
    assert!(r.rescaled);
    assert_eq!(r.saito_pair_dc, [5, 6]);
}

#[test]
fn malformed_inputs_are_rejected() {
    for bad in [
        r#"{"schema":1,"n":4,"y":[[6,"1"]]}"#,
        r#"{"schema":2,"n":2,"y":[[3,"1"]]}"#,
        r#"{"schema":1,"n":2,"y":[[3,"1"]],"extra":0}"#,
        r#"{"schema":1,"n":2,"y":[[5,"1"],[3,"1"]]}"#,
        r#"{"schema":1,"n":2,"y":[[3,"1/0"]]}"#,
    ] {
        let err = CurveInput::from_json(bad).and_then(|i| cmd_invariants(&i, false).map(|_| ()));
        assert!(err.as_ref().is_err_and(|e| e.is_input_error()), "{bad}: {err:?}");
    }
}
