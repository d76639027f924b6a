//! Cuspidal semimodules: bases, the structure table of axes, limits, colimits,
//! bounds and critical values, the n-clock and level sets.

mod checks;
mod clock;
mod enumerate;

pub use checks::{check_invariants, CheckOutcome, InvariantCheck};
pub use clock::{level_set, separation, zeta, CircularInterval, ClockPoint, LevelSet};
pub use enumerate::{enumerate_increasing, random_increasing, Family};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::CuspSemigroup;

/// A basis `(λ_{-1}, λ_0, ..., λ_s)` of a cuspidal semimodule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemimoduleBasis {
    pub gamma: CuspSemigroup,
    /// `lambdas[0]` is `λ_{-1}`.
    pub lambdas: Vec<i64>,
}

impl SemimoduleBasis {
    /// Validates a basis given in increasing order.
    pub fn new(gamma: CuspSemigroup, lambdas: Vec<i64>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::InvalidInput("a basis has at least two elements".into()));
        }
        if lambdas.len() as i64 > gamma.n {
            return Err(Error::InvalidInput(format!("length s exceeds n-2 = {}", gamma.n - 2)));
        }
        if lambdas[0] < 0 {
            return Err(Error::InvalidInput("basis elements must be nonnegative".into()));
        }
        for w in lambdas.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput("basis must be strictly increasing".into()));
            }
        }
        let b = SemimoduleBasis { gamma, lambdas };
        for j in 1..b.lambdas.len() {
            if b.member_prefix(j, b.lambdas[j]) {
                return Err(Error::InvalidInput(format!("{} lies in the semimodule generated by the smaller elements", b.lambdas[j])));
            }
        }
        Ok(b)
    }

    /// The length `s`.
    pub fn s(&self) -> usize {
        self.lambdas.len() - 2
    }

    /// `λ_i` for `-1 <= i <= s`.
    pub fn lambda(&self, i: i64) -> i64 {
        self.lambdas[(i + 1) as usize]
    }

    /// Membership in `Λ_{i}` given as the count of leading generators used.
    pub(crate) fn member_prefix(&self, count: usize, k: i64) -> bool {
        self.lambdas[..count].iter().any(|&l| self.gamma.contains(k - l))
    }

    /// Membership in `Λ_i = ∪_{k<=i} (λ_k + Γ)`.
    pub fn member_upto(&self, i: i64, k: i64) -> bool {
        if i < -1 {
            return false;
        }
        self.member_prefix((i + 2) as usize, k)
    }

    /// Whether `λ_{-1} = 0`.
    pub fn is_normalized(&self) -> bool {
        self.lambdas[0] == 0
    }

    /// The basis of `Λ + shift`.
    pub fn shifted(&self, shift: i64) -> Result<Self> {
        SemimoduleBasis::new(self.gamma, self.lambdas.iter().map(|l| l + shift).collect())
    }

    /// Elements of `Λ ∖ Γ`, which is finite when `Λ ⊇ Γ ∖ {0}`-like shapes apply.
    pub fn minus_semigroup(&self) -> Vec<i64> {
        let top = self.lambdas.last().copied().unwrap_or(0) + self.gamma.conductor;
        (0..top).filter(|&k| oracle_membership(self, k) && !self.gamma.contains(k)).collect()
    }
}

/// Reduces a generator set to the basis of the semimodule it generates.
///
/// ```
/// use cusp_saito::semigroup::CuspSemigroup;
/// use cusp_saito::semimodule::normalize_basis;
/// let g = CuspSemigroup::new(7, 36).unwrap();
/// let b = normalize_basis(g, &[7, 36, 123, 130]).unwrap();
/// assert_eq!(b.lambdas, vec![7, 36, 123]);
/// ```
pub fn normalize_basis(gamma: CuspSemigroup, generators: &[i64]) -> Result<SemimoduleBasis> {
    if generators.is_empty() || generators.iter().any(|&g| g < 0) {
        return Err(Error::InvalidInput("generators must be a nonempty list of nonnegative integers".into()));
    }
    let mut sorted = generators.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut kept: Vec<i64> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|&l| gamma.contains(g - l)) {
            kept.push(g);
        }
    }
    if kept.len() < 2 {
        // A single generator λ gives λ + Γ, whose basis is (λ, λ+... ) only in the
        // degenerate sense; cuspidal semimodules always need two elements.
        return Err(Error::InvalidInput("the generators span a semimodule with fewer than two basis elements".into()));
    }
    SemimoduleBasis::new(gamma, kept)
}

/// Direct membership test: some `k - λ_i` lies in `Γ`.
pub fn oracle_membership(b: &SemimoduleBasis, k: i64) -> bool {
    b.member_prefix(b.lambdas.len(), k)
}

/// One row `i` (with `1 <= i <= s+1`) of the structure table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub i: i64,
    pub u_n: i64,
    pub u_m: i64,
    pub l_n: i64,
    pub l_m: i64,
    pub a: i64,
    pub b: i64,
    /// The bound `k_{i-1}^n`.
    pub k_n: i64,
    /// The bound `k_{i-1}^m`.
    pub k_m: i64,
    pub t_n: i64,
    pub t_m: i64,
    pub t: i64,
    pub t_tilde: i64,
    pub q_n: i64,
    pub q_m: i64,
}

impl TableRow {
    pub fn u(&self) -> i64 {
        self.u_n.min(self.u_m)
    }
    pub fn u_tilde(&self) -> i64 {
        self.u_n.max(self.u_m)
    }
    /// The star realizing `u_i`.
    pub fn low_star(&self) -> Star {
        if self.u_n < self.u_m {
            Star::N
        } else {
            Star::M
        }
    }
    pub fn axis(&self, star: Star) -> i64 {
        match star {
            Star::N => self.u_n,
            Star::M => self.u_m,
        }
    }
    pub fn critical(&self, star: Star) -> i64 {
        match star {
            Star::N => self.t_n,
            Star::M => self.t_m,
        }
    }
    pub fn limit(&self, star: Star) -> i64 {
        match star {
            Star::N => self.l_n,
            Star::M => self.l_m,
        }
    }
    /// `b_i` for `*=n`, `a_i` for `*=m`.
    pub fn colimit(&self, star: Star) -> i64 {
        match star {
            Star::N => self.b,
            Star::M => self.a,
        }
    }
    pub fn bound(&self, star: Star) -> i64 {
        match star {
            Star::N => self.k_n,
            Star::M => self.k_m,
        }
    }
}

/// The two directions `* ∈ {n, m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Star {
    N,
    M,
}

impl Star {
    pub fn other(self) -> Star {
        match self {
            Star::N => Star::M,
            Star::M => Star::N,
        }
    }
    /// The generator `n` or `m` attached to this star.
    pub fn weight(self, g: &CuspSemigroup) -> i64 {
        match self {
            Star::N => g.n,
            Star::M => g.m,
        }
    }
}

/// Axes, limits, colimits, bounds, critical values and tops of a semimodule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub t_minus1: i64,
    pub t_0: i64,
    /// Rows for `i = 1, ..., s+1`.
    pub rows: Vec<TableRow>,
    pub conductor_of_lambda: i64,
    /// `v_i = λ_i div n` for `-1 <= i <= s`.
    pub v: Vec<i64>,
}

impl StructureTable {
    /// Row `i`, `1 <= i <= s+1`.
    pub fn row(&self, i: i64) -> &TableRow {
        &self.rows[(i - 1) as usize]
    }

    /// Critical value `t_i` for `-1 <= i <= s+1`.
    pub fn t(&self, i: i64) -> i64 {
        match i {
            -1 => self.t_minus1,
            0 => self.t_0,
            _ => self.row(i).t,
        }
    }

    pub fn t_tilde(&self, i: i64) -> i64 {
        self.row(i).t_tilde
    }

    /// The last row, index `s+1`.
    pub fn last(&self) -> &TableRow {
        self.rows.last().expect("table has at least one row")
    }
}

/// Smallest `ℓ >= 1` with `λ_{i-1} + w·ℓ ∈ Λ_{i-2}`.
fn limit(b: &SemimoduleBasis, i: i64, w: i64) -> i64 {
    let base = b.lambda(i - 1);
    let mut l = 1;
    loop {
        if b.member_upto(i - 2, base + w * l) {
            return l;
        }
        l += 1;
    }
}

/// Writes `u = λ_k + w·c` with `-1 <= k <= i-2` and `c >= 0`; returns `(k, c)`.
fn colimit(b: &SemimoduleBasis, i: i64, u: i64, w: i64) -> (i64, i64) {
    (-1..=i - 2)
        .rev()
        .find_map(|k| {
            let d = u - b.lambda(k);
            (d >= 0 && d % w == 0).then_some((k, d / w))
        })
        .expect("an axis always has a colimit representation")
}

/// Computes the structure table by direct search.
///
/// ```
/// use cusp_saito::semigroup::CuspSemigroup;
/// use cusp_saito::semimodule::{structure_table, SemimoduleBasis};
/// let g = CuspSemigroup::new(7, 36).unwrap();
/// let b = SemimoduleBasis::new(g, vec![7, 36, 123]).unwrap();
/// let t = structure_table(&b);
/// assert_eq!((t.row(2).t, t.row(2).t_tilde), (64, 151));
/// ```
pub fn structure_table(b: &SemimoduleBasis) -> StructureTable {
    let g = b.gamma;
    let s = b.s() as i64;
    let mut rows: Vec<TableRow> = Vec::with_capacity(s as usize + 1);
    let mut t_prev = b.lambda(0);
    for i in 1..=s + 1 {
        let l_n = limit(b, i, g.n);
        let l_m = limit(b, i, g.m);
        let u_n = b.lambda(i - 1) + g.n * l_n;
        let u_m = b.lambda(i - 1) + g.m * l_m;
        let (k_n, bb) = colimit(b, i, u_n, g.m);
        let (k_m, aa) = colimit(b, i, u_m, g.n);
        let t_n = t_prev + g.n * l_n;
        let t_m = t_prev + g.m * l_m;
        let row = TableRow {
            i,
            u_n,
            u_m,
            l_n,
            l_m,
            a: aa,
            b: bb,
            k_n,
            k_m,
            t_n,
            t_m,
            t: t_n.min(t_m),
            t_tilde: t_n.max(t_m),
            q_n: u_n.div_euclid(g.n),
            q_m: u_m.div_euclid(g.n),
        };
        t_prev = row.t;
        rows.push(row);
    }
    StructureTable {
        t_minus1: b.lambda(-1),
        t_0: b.lambda(0),
        rows,
        conductor_of_lambda: conductor_of(b),
        v: b.lambdas.iter().map(|l| l.div_euclid(g.n)).collect(),
    }
}

/// The least `c` such that every integer `>= c` lies in `Λ`.
pub fn conductor_of(b: &SemimoduleBasis) -> i64 {
    let mut c = b.lambdas[0] + b.gamma.conductor;
    while c > b.lambdas[0] && oracle_membership(b, c - 1) {
        c -= 1;
    }
    c
}

/// Whether `λ_i > u_i` for all `1 <= i <= s`.
pub fn is_increasing(b: &SemimoduleBasis, t: &StructureTable) -> bool {
    (1..=b.s() as i64).all(|i| b.lambda(i) > t.row(i).u())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64, m: i64) -> CuspSemigroup {
        CuspSemigroup::new(n, m).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_basis(g(7, 36), &[7, 36, 123, 130]).unwrap().lambdas, vec![7, 36, 123]);
        assert_eq!(normalize_basis(g(5, 7), &[5, 7]).unwrap().lambdas, vec![5, 7]);
        assert_eq!(normalize_basis(g(7, 36), &[36, 7, 144, 123]).unwrap().lambdas, vec![7, 36, 123]);
    }

    #[test]
    fn membership_examples() {
        let b = SemimoduleBasis::new(g(7, 36), vec![7, 36, 123]).unwrap();
        assert!(oracle_membership(&b, 123));
        assert!(!oracle_membership(&b, 116));
        let b0 = SemimoduleBasis::new(g(7, 36), vec![7, 36]).unwrap();
        assert!(!oracle_membership(&b0, 0));
    }

    #[test]
    fn first_row_of_any_differential_semimodule() {
        for (n, m) in [(2, 3), (5, 7), (7, 36), (3, 10)] {
            let b = SemimoduleBasis::new(g(n, m), vec![n, m]).unwrap();
            let t = structure_table(&b);
            let r = t.row(1);
            assert_eq!((r.l_n, r.b, r.u_n), (1, 1, n + m));
            assert_eq!((r.l_m, r.a, r.u_m), (n - 1, m - 1, n * m));
            assert_eq!((r.t, r.t_tilde), (n + m, n * m));
            assert_eq!((r.k_n, r.k_m), (-1, -1));
        }
    }

    #[test]
    fn table_of_the_worked_example() {
        let b = SemimoduleBasis::new(g(7, 36), vec![7, 36, 123]).unwrap();
        let t = structure_table(&b);
        let r = t.row(2);
        assert_eq!((r.l_n, r.b, r.u_n), (3, 3, 144));
        assert_eq!((r.l_m, r.a, r.u_m), (3, 32, 231));
        assert_eq!((r.t, r.t_tilde), (64, 151));
        assert_eq!((r.k_n, r.k_m), (0, -1));
        assert_eq!((t.t(-1), t.t(0)), (7, 36));
        assert!(is_increasing(&b, &t));
    }

    #[test]
    fn increasing_examples() {
        let b = SemimoduleBasis::new(g(5, 7), vec![5, 7]).unwrap();
        assert!(is_increasing(&b, &structure_table(&b)));
        let b = SemimoduleBasis::new(g(5, 7), vec![5, 7, 9]).unwrap();
        let t = structure_table(&b);
        assert_eq!(t.row(1).u(), 12);
        assert!(!is_increasing(&b, &t));
    }

    #[test]
    fn lambda_minus_gamma_count() {
        let b = SemimoduleBasis::new(g(7, 36), vec![7, 36, 123]).unwrap();
        assert_eq!(b.minus_semigroup(), vec![123, 130, 137, 159, 166, 173, 195, 202, 209]);
    }

    #[test]
    fn rejects_invalid_bases() {
        assert!(SemimoduleBasis::new(g(7, 36), vec![7, 36, 130, 123]).is_err());
        assert!(SemimoduleBasis::new(g(7, 36), vec![7, 43]).is_err());
        assert!(SemimoduleBasis::new(g(7, 36), vec![7]).is_err());
    }
}
