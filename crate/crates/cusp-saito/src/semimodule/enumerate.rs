//! Enumeration of increasing cuspidal semimodules for property testing.

use rand::Rng;

use super::{oracle_membership, structure_table, SemimoduleBasis};
use crate::semigroup::CuspSemigroup;

/// Which bases to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Bases with `λ_{-1} = 0`.
    Normalized,
    /// Bases starting `(n, m, ...)`, the shape of every semimodule of differential values.
    Differential,
}

fn roots(g: CuspSemigroup, family: Family) -> Vec<SemimoduleBasis> {
    match family {
        Family::Normalized => {
            g.gap_set().into_iter().filter(|&l| l > 0).map(|l| SemimoduleBasis::new(g, vec![0, l]).expect("a gap extends 0")).collect()
        }
        Family::Differential => vec![SemimoduleBasis::new(g, vec![g.n, g.m]).expect("(n, m) is a basis")],
    }
}

/// Candidates `λ_{s+1}` keeping the basis valid and increasing.
fn children(b: &SemimoduleBasis) -> Vec<SemimoduleBasis> {
    let g = b.gamma;
    if b.lambdas.len() as i64 >= g.n {
        return Vec::new();
    }
    let t = structure_table(b);
    let lower = t.last().u().max(*b.lambdas.last().unwrap());
    let upper = b.lambdas[0] + g.conductor;
    (lower + 1..upper)
        .filter(|&l| !oracle_membership(b, l))
        .map(|l| {
            let mut lambdas = b.lambdas.clone();
            lambdas.push(l);
            SemimoduleBasis { gamma: g, lambdas }
        })
        .collect()
}

/// All increasing bases of the family, in depth-first order.
pub fn enumerate_increasing(g: CuspSemigroup, family: Family) -> Vec<SemimoduleBasis> {
    let mut out = Vec::new();
    let mut stack: Vec<SemimoduleBasis> = roots(g, family);
    stack.reverse();
    while let Some(b) = stack.pop() {
        let mut kids = children(&b);
        kids.reverse();
        stack.extend(kids);
        out.push(b);
    }
    out
}

/// A random increasing basis: a random walk that stops with probability
/// one over the number of continuations plus one at each step.
pub fn random_increasing<R: Rng>(g: CuspSemigroup, family: Family, rng: &mut R) -> SemimoduleBasis {
    let rs = roots(g, family);
    let mut b = rs[rng.gen_range(0..rs.len())].clone();
    loop {
        let kids = children(&b);
        let pick = rng.gen_range(0..=kids.len());
        if pick == kids.len() {
            return b;
        }
        b = kids[pick].clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::is_increasing;

    #[test]
    fn enumerated_bases_are_valid_and_increasing() {
        let g = CuspSemigroup::new(5, 7).unwrap();
        for fam in [Family::Normalized, Family::Differential] {
            let all = enumerate_increasing(g, fam);
            assert!(!all.is_empty());
            for b in &all {
                let checked = SemimoduleBasis::new(g, b.lambdas.clone()).unwrap();
                assert!(is_increasing(&checked, &structure_table(&checked)));
            }
        }
    }
}
