//! Structural invariants of cuspidal semimodules, checked on a concrete basis.

use serde::{Deserialize, Serialize};

use super::{is_increasing, level_set, separation, structure_table, zeta, SemimoduleBasis, StructureTable};

/// Result of one invariant check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    /// The hypotheses of the statement do not hold for this basis.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub outcome: CheckOutcome,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, CheckOutcome::Fail(_))
    }
}

type Check = fn(&SemimoduleBasis, &StructureTable, bool) -> CheckOutcome;

fn verdict(failures: Vec<String>) -> CheckOutcome {
    match failures.into_iter().next() {
        None => CheckOutcome::Pass,
        Some(first) => CheckOutcome::Fail(first),
    }
}

fn table_shape(b: &SemimoduleBasis, t: &StructureTable, _inc: bool) -> CheckOutcome {
    let g = b.gamma;
    let mut bad = Vec::new();
    for r in &t.rows {
        let i = r.i;
        if !(1 <= r.l_m && r.l_m < g.n && 1 <= r.l_n && r.l_n < g.m) {
            bad.push(format!("limits out of range at i={i}"));
        }
        if r.u_n == r.u_m {
            bad.push(format!("equal axes at i={i}"));
        }
        if !(1 <= r.b && r.b < g.n) {
            bad.push(format!("colimit b_{i}={} out of [1, n)", r.b));
        }
        if r.u_n != b.lambda(r.k_n) + g.m * r.b || r.u_m != b.lambda(r.k_m) + g.n * r.a {
            bad.push(format!("colimit equations fail at i={i}"));
        }
        if !(b.member_upto(i - 2, r.u_n) && b.member_upto(i - 2, r.u_m)) {
            bad.push(format!("axis outside Λ_(i-2) at i={i}"));
        }
        // Uniqueness of the bound index.
        for k in -1..=i - 2 {
            let dn = r.u_n - b.lambda(k);
            if k != r.k_n && dn >= 0 && dn % g.m == 0 {
                bad.push(format!("k^n not unique at i={i}"));
            }
            let dm = r.u_m - b.lambda(k);
            if k != r.k_m && dm >= 0 && dm % g.n == 0 {
                bad.push(format!("k^m not unique at i={i}"));
            }
        }
        if r.q_n * g.n > r.u_n || r.u_n >= r.q_n * g.n + g.n {
            bad.push(format!("top q^n wrong at i={i}"));
        }
    }
    verdict(bad)
}

fn membership_step(b: &SemimoduleBasis, t: &StructureTable, _inc: bool) -> CheckOutcome {
    let g = b.gamma;
    let mut bad = Vec::new();
    for r in &t.rows {
        for a in 0..r.l_n {
            for c in 0..r.l_m {
                let k = b.lambda(r.i - 1) + g.n * a + g.m * c;
                if b.member_upto(r.i - 2, k) {
                    bad.push(format!("λ_(i-1)+{a}n+{c}m ∈ Λ_(i-2) at i={}", r.i));
                }
            }
        }
    }
    verdict(bad)
}

fn gap_inequality(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc {
        return CheckOutcome::NotApplicable;
    }
    let s = b.s() as i64;
    let mut bad = Vec::new();
    for i in 1..=s {
        for j in -1..i {
            if b.lambda(i) - b.lambda(j) <= t.t(i) - t.t(j) {
                bad.push(format!("λ_{i}-λ_{j} <= t_{i}-t_{j}"));
            }
        }
    }
    verdict(bad)
}

fn axes_dominate(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc {
        return CheckOutcome::NotApplicable;
    }
    let mut bad = Vec::new();
    for i in 1..=b.s() as i64 {
        let r = t.row(i + 1);
        if r.u_n <= r.t_n || r.u_m <= r.t_m {
            bad.push(format!("axis not above critical value at i={}", i + 1));
        }
    }
    verdict(bad)
}

fn monotonicity(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc {
        return CheckOutcome::NotApplicable;
    }
    let mut bad = Vec::new();
    for i in 2..=b.s() as i64 + 1 {
        let (p, r) = (t.row(i - 1), t.row(i));
        if !(r.u() > p.u() && r.t > p.t) {
            bad.push(format!("u or t not increasing at i={i}"));
        }
        if !(r.u_tilde() < p.u_tilde() && r.t_tilde < p.t_tilde) {
            bad.push(format!("ũ or t̃ not decreasing at i={i}"));
        }
    }
    verdict(bad)
}

fn conductor_bound(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc || b.lambdas[0] % b.gamma.n != 0 {
        return CheckOutcome::NotApplicable;
    }
    let ut = t.last().u_tilde();
    if ut >= t.conductor_of_lambda + b.gamma.n {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail(format!("ũ_(s+1)={ut} < c_Λ+n={}", t.conductor_of_lambda + b.gamma.n))
    }
}

fn bound_switching(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc {
        return CheckOutcome::NotApplicable;
    }
    let mut bad = Vec::new();
    for i in 1..=b.s() as i64 {
        let (cur, next) = (t.row(i), t.row(i + 1));
        let ok = if cur.u() == cur.u_n { next.k_n == i - 1 && next.k_m == cur.k_m } else { next.k_m == i - 1 && next.k_n == cur.k_n };
        if !ok {
            bad.push(format!("bound switching fails at i={i}"));
        }
    }
    verdict(bad)
}

fn recurrences(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc {
        return CheckOutcome::NotApplicable;
    }
    let mut bad = Vec::new();
    for i in 1..=b.s() as i64 {
        let (cur, next) = (t.row(i), t.row(i + 1));
        if next.k_n == i - 1 && !(next.l_n + next.a == cur.a && next.l_m + next.b == cur.l_m) {
            bad.push(format!("recurrence (k^n) fails at i={i}"));
        }
        if next.k_m == i - 1 && !(next.l_n + next.a == cur.l_n && next.l_m + next.b == cur.b) {
            bad.push(format!("recurrence (k^m) fails at i={i}"));
        }
    }
    verdict(bad)
}

fn telescoping(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc || b.s() < 1 {
        return CheckOutcome::NotApplicable;
    }
    let s = b.s() as i64;
    let mut bad = Vec::new();
    let mut applied = false;
    for j in 1..=s {
        for q in j + 2..=s + 1 {
            let first = t.row(j + 1);
            let middle = |want_n: bool| {
                (j + 2..q).all(|l| {
                    let r = t.row(l);
                    (r.t_tilde == r.t_n) == want_n
                })
            };
            if first.t_tilde == first.t_m && middle(true) {
                applied = true;
                let sum: i64 = (j + 2..=q).map(|l| t.row(l).l_m).sum();
                let bq = t.row(q).b;
                if first.l_m - sum != bq || bq <= 0 {
                    bad.push(format!("telescoping (m) fails for j={j}, q={q}"));
                }
            }
            if first.t_tilde == first.t_n && middle(false) {
                applied = true;
                let sum: i64 = (j + 2..=q).map(|l| t.row(l).l_n).sum();
                let aq = t.row(q).a;
                if first.l_n - sum != aq || aq <= 0 {
                    bad.push(format!("telescoping (n) fails for j={j}, q={q}"));
                }
            }
        }
    }
    if !applied {
        return CheckOutcome::NotApplicable;
    }
    verdict(bad)
}

fn shift_invariance(b: &SemimoduleBasis, t: &StructureTable, _inc: bool) -> CheckOutcome {
    let mut bad = Vec::new();
    for shift in [1, b.gamma.n, b.gamma.m + 3] {
        let sb = match b.shifted(shift) {
            Ok(sb) => sb,
            Err(e) => return CheckOutcome::Fail(format!("shifted basis invalid: {e}")),
        };
        let st = structure_table(&sb);
        for (r, sr) in t.rows.iter().zip(&st.rows) {
            let same_counts = (r.l_n, r.l_m, r.a, r.b, r.k_n, r.k_m) == (sr.l_n, sr.l_m, sr.a, sr.b, sr.k_n, sr.k_m);
            let shifted = (r.u_n + shift, r.u_m + shift, r.t_n + shift, r.t_m + shift) == (sr.u_n, sr.u_m, sr.t_n, sr.t_m);
            if !(same_counts && shifted) {
                bad.push(format!("shift by {shift} changes row {}", r.i));
            }
        }
    }
    verdict(bad)
}

fn is_differential_shape(b: &SemimoduleBasis) -> bool {
    b.lambdas[0] == b.gamma.n && b.lambdas[1] == b.gamma.m
}

fn critical_monomials(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    let s = b.s() as i64;
    if !inc || s < 1 || !is_differential_shape(b) {
        return CheckOutcome::NotApplicable;
    }
    let (n, m) = (b.gamma.n, b.gamma.m);
    let mut set = vec![t.row(s + 1).t];
    set.extend((2..=s + 1).map(|i| t.row(i).t_tilde));
    // The exponents reach m-2 and n-2 on some bases, e.g. (5, 11, 17) where 49 = 16 + 3·11.
    let has_p = (0..=m - 2).any(|p| set.contains(&(p * n + n + m)));
    let has_q = (0..=n - 2).any(|q| set.contains(&(q * m + n + m)));
    if has_p && has_q {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail(format!("critical set {set:?} misses pn+n+m or qm+n+m"))
    }
}

fn clock_bounds(b: &SemimoduleBasis, t: &StructureTable, _inc: bool) -> CheckOutcome {
    let g = &b.gamma;
    let z = |i: i64| zeta(g, b.lambda(i));
    let mut bad = Vec::new();
    for i in 0..=b.s() as i64 {
        let left = (-1..i).min_by_key(|&q| separation(z(q), z(i))).unwrap();
        let right = (-1..i).min_by_key(|&q| separation(z(i), z(q))).unwrap();
        let r = t.row(i + 1);
        if left != r.k_n || right != r.k_m {
            bad.push(format!("clock bounds ({left},{right}) differ from ({},{}) at i={i}", r.k_n, r.k_m));
        }
    }
    verdict(bad)
}

fn ceiling_nm(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    if !inc || !is_differential_shape(b) {
        return CheckOutcome::NotApplicable;
    }
    let nm = b.gamma.nm();
    let mut bad = Vec::new();
    if t.row(1).t_tilde != nm {
        bad.push(format!("t̃_1 = {} differs from nm", t.row(1).t_tilde));
    }
    for i in 1..=b.s() as i64 {
        let r = t.row(i + 1);
        if r.t_n >= nm || r.t_m >= nm {
            bad.push(format!("critical value at {} reaches nm", i + 1));
        }
    }
    verdict(bad)
}

fn level_sets(b: &SemimoduleBasis, t: &StructureTable, inc: bool) -> CheckOutcome {
    let n = b.gamma.n;
    if !inc || b.lambdas[0] % n != 0 {
        return CheckOutcome::NotApplicable;
    }
    let last = t.last();
    let q_low = last.u().div_euclid(n);
    let q_full = last.u_tilde().div_euclid(n) - 1;
    let top = (t.conductor_of_lambda.div_euclid(n) + 2).max(q_full + 1);
    let mut bad = Vec::new();
    for q in q_low..=top {
        let r = level_set(b, q);
        if !r.is_circular() {
            bad.push(format!("R_{q} is not circular"));
        }
        if q >= q_full && !r.is_full() {
            bad.push(format!("R_{q} is not the whole clock"));
        }
    }
    verdict(bad)
}

const CHECKS: &[(&str, Check)] = &[
    ("table_shape", table_shape),
    ("membership_step", membership_step),
    ("gap_inequality", gap_inequality),
    ("axes_dominate_critical_values", axes_dominate),
    ("monotonicity", monotonicity),
    ("conductor_bound", conductor_bound),
    ("bound_switching", bound_switching),
    ("limit_colimit_recurrences", recurrences),
    ("telescoping_colimits", telescoping),
    ("shift_invariance", shift_invariance),
    ("critical_monomials", critical_monomials),
    ("clock_bounds", clock_bounds),
    ("critical_values_below_nm", ceiling_nm),
    ("level_sets", level_sets),
];

/// Runs every structural invariant on `b`.
///
/// Statements that need an increasing basis, or a particular first pair of
/// elements, report [`CheckOutcome::NotApplicable`] when the hypothesis fails.
pub fn check_invariants(b: &SemimoduleBasis) -> Vec<InvariantCheck> {
    let t = structure_table(b);
    let inc = is_increasing(b, &t);
    CHECKS.iter().map(|(name, f)| InvariantCheck { name: (*name).to_string(), outcome: f(b, &t, inc) }).collect()
}
