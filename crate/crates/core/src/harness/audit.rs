use crate::constructions::{build_extremal, crossover_holds, crossover_threshold_predicate, ExtremalSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hypergraph::{all_triples, Hypergraph3, Triple};

const AUDIT_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma2AuditReport {
    pub n: usize,
    pub s: usize,
    /// `σ₂(H²_{n,s}) = 2(s−1)(n−1)`.
    pub bound: usize,
    pub additions: usize,
    pub min_sigma2: Option<usize>,
    pub max_sigma2: Option<usize>,
    /// Triples whose addition pushed `σ₂` above the bound.
    pub violations: Vec<Triple>,
}

impl Sigma2AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `σ₂(H + t)` from the degrees and adjacency of `H` without rebuilding.
fn sigma2_after_adding(h: &Hypergraph3, degrees: &[usize], t: Triple) -> Option<usize> {
    let bumped = |v: usize| degrees[v] + t.contains(&v) as usize;
    let mut best: Option<usize> = None;
    let mut offer = |x: usize| best = Some(best.map_or(x, |b| b.min(x)));
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            offer(bumped(a) + bumped(b));
        }
    }
    for e in h.edges() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                offer(bumped(a) + bumped(b));
            }
        }
    }
    best
}

/// Adds every missing triple to `H²_{n,s}` in turn and records `σ₂`.
pub fn edge_addition_sigma2_audit(n: usize, s: usize, exec: Execution) -> Result<Sigma2AuditReport> {
    if s < 2 || 3 * s > n || n > AUDIT_MAX_N {
        return Err(Error::Parameters(format!("audit needs 2 ≤ s ≤ n/3 and n ≤ {AUDIT_MAX_N}; got n = {n}, s = {s}")));
    }
    let (h, _) = build_extremal(ExtremalSpec::new(2, n, s))?;
    let bound = 2 * (s - 1) * (n - 1);
    let degrees = h.degrees();
    let missing: Vec<Triple> = all_triples(n).into_iter().filter(|t| !h.contains_edge(*t)).collect();
    let values = exec.map_indexed(missing.len(), |i| sigma2_after_adding(&h, &degrees, missing[i]));
    let observed: Vec<usize> = values.iter().flatten().copied().collect();
    let violations = missing
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_some_and(|v| v > bound))
        .map(|(t, _)| *t)
        .collect();
    Ok(Sigma2AuditReport {
        n,
        s,
        bound,
        additions: missing.len(),
        min_sigma2: observed.iter().min().copied(),
        max_sigma2: observed.iter().max().copied(),
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossoverRow {
    pub n: usize,
    pub s: usize,
    /// `σ₂(H²) ≥ σ₂(H³)` from the closed forms.
    pub holds: bool,
    /// `s ≤ (2n + 4)/9`.
    pub predicate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossoverReport {
    pub n_max: usize,
    pub rows: Vec<CrossoverRow>,
}

impl CrossoverReport {
    pub fn mismatches(&self) -> Vec<CrossoverRow> {
        self.rows.iter().copied().filter(|r| r.holds != r.predicate).collect()
    }

    pub fn passed(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// Every `(n, s)` with `2 ≤ s ≤ n/3` and `n ≤ n_max`.
pub fn crossover_audit(n_max: usize) -> Result<CrossoverReport> {
    let mut rows = Vec::new();
    for n in 6..=n_max {
        for s in 2..=n / 3 {
            rows.push(CrossoverRow {
                n,
                s,
                holds: crossover_holds(n, s)?,
                predicate: crossover_threshold_predicate(n, s),
            });
        }
    }
    Ok(CrossoverReport { n_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Sigma2;

    #[test]
    fn incremental_sigma2_matches_rebuild() {
        for (n, s) in [(6, 2), (9, 3), (10, 2), (12, 4)] {
            let (h, _) = build_extremal(ExtremalSpec::new(2, n, s)).unwrap();
            let degrees = h.degrees();
            for t in all_triples(n).into_iter().filter(|t| !h.contains_edge(*t)) {
                let direct = h.with_edge(t).unwrap().sigma2();
                assert_eq!(Sigma2::Value(sigma2_after_adding(&h, &degrees, t).unwrap()), direct, "{t:?}");
            }
        }
    }

    #[test]
    fn audit_examples() {
        let r = edge_addition_sigma2_audit(9, 3, Execution::Parallel).unwrap();
        assert_eq!(r.additions, 34);
        assert_eq!(r.bound, 32);
        assert!(r.passed());
        assert!(r.max_sigma2.unwrap() <= 32);

        let r = edge_addition_sigma2_audit(6, 2, Execution::Sequential).unwrap();
        assert_eq!(r.bound, 10);
        assert!(r.passed());

        let (h, _) = build_extremal(ExtremalSpec::new(2, 9, 3)).unwrap();
        assert_eq!(h.with_edge([7, 8, 9]).unwrap().sigma2(), Sigma2::Value(32));
        assert!(edge_addition_sigma2_audit(21, 2, Execution::Sequential).is_err());
        assert!(edge_addition_sigma2_audit(9, 1, Execution::Sequential).is_err());
    }

    #[test]
    fn crossover_examples() {
        let r = crossover_audit(11).unwrap();
        let find = |n, s| *r.rows.iter().find(|x| x.n == n && x.s == s).unwrap();
        assert_eq!(find(9, 2), CrossoverRow { n: 9, s: 2, holds: true, predicate: true });
        assert_eq!(find(9, 3), CrossoverRow { n: 9, s: 3, holds: false, predicate: false });
        assert_eq!(find(11, 2), CrossoverRow { n: 11, s: 2, holds: true, predicate: true });
        assert!(r.passed());
    }
}
