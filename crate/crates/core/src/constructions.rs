//! The extremal families `H^ℓ_{n,s}`: `n` vertices split into a large side
//! `S` and a small side `T` of size `sℓ − 1`, with every triple meeting `T`
//! in at least `ℓ` vertices as an edge. None of them has `s` disjoint edges.

use crate::error::{Error, Result};
use crate::hypergraph::{all_triples, binomial, Hypergraph3, Sigma2};
use crate::recognize::PartitionCertificate;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtremalSpec {
    pub ell: usize,
    pub n: usize,
    pub s: usize,
}

impl ExtremalSpec {
    pub fn new(ell: usize, n: usize, s: usize) -> Self {
        Self { ell, n, s }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.ell) {
            return Err(Error::Parameters(format!("family index must be 1, 2 or 3, got {}", self.ell)));
        }
        if self.n == 0 {
            return Err(Error::NoVertices);
        }
        if self.s == 0 {
            return Err(Error::Parameters("s must be at least 1".into()));
        }
        if self.t_size() > self.n {
            return Err(Error::Parameters(format!(
                "small side of size {} does not fit in {} vertices",
                self.t_size(),
                self.n
            )));
        }
        Ok(())
    }

    /// `|T| = sℓ − 1`.
    pub fn t_size(&self) -> usize {
        self.s * self.ell - 1
    }

    /// `3s ≤ n`, the range where the degree-sum theorems speak.
    pub fn in_theorem_range(&self) -> bool {
        3 * self.s <= self.n
    }

    /// The small side: the highest `sℓ − 1` labels.
    pub fn t_side(&self) -> VertexSet {
        (self.n - self.t_size() + 1..=self.n).collect()
    }
}

pub fn build_extremal(spec: ExtremalSpec) -> Result<(Hypergraph3, PartitionCertificate)> {
    spec.validate()?;
    let t = spec.t_side();
    let edges = all_triples(spec.n)
        .into_iter()
        .filter(|tr| tr.iter().filter(|v| t.contains(**v)).count() >= spec.ell);
    let h = Hypergraph3::new(spec.n, edges)?;
    let cert = PartitionCertificate::new(spec.n, spec.ell, spec.s, t)?;
    Ok((h, cert))
}

/// The closed-form `σ₂(H^ℓ_{n,s})`; `Undefined` for `s < 2`.
pub fn sigma2_closed_form(spec: ExtremalSpec) -> Result<Sigma2> {
    spec.validate()?;
    let ExtremalSpec { ell, n, s } = spec;
    if s < 2 {
        return Ok(Sigma2::Undefined);
    }
    let value = match ell {
        1 => 2 * (binomial(n - 1, 2) - binomial(n - s, 2)),
        2 => (2 * s - 2) * (n - 1),
        3 => 2 * binomial(3 * s - 2, 2),
        _ => unreachable!("validated"),
    };
    Ok(Sigma2::Value(value))
}

/// Whether `σ₂(H²_{n,s}) ≥ σ₂(H³_{n,s})`, by comparing the closed forms.
pub fn crossover_holds(n: usize, s: usize) -> Result<bool> {
    if s < 2 {
        return Err(Error::Parameters("the crossover compares families with s ≥ 2".into()));
    }
    let two = sigma2_closed_form(ExtremalSpec::new(2, n, s))?;
    let three = sigma2_closed_form(ExtremalSpec::new(3, n, s))?;
    Ok(two.value() >= three.value())
}

/// `s ≤ (2n + 4) / 9`, in integers.
pub fn crossover_threshold_predicate(n: usize, s: usize) -> bool {
    9 * s <= 2 * n + 4
}

/// Matching number of `H^ℓ_{n,s}`: always `s − 1` once `n ≥ 3s − 3`.
pub fn nu_extremal(spec: ExtremalSpec) -> Result<usize> {
    spec.validate()?;
    if spec.n + 3 < 3 * spec.s {
        return Err(Error::Parameters(format!(
            "n = {} is below 3s − 3 = {}",
            spec.n,
            3 * spec.s - 3
        )));
    }
    Ok(spec.s - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{max_matching_exact, SolverConfig};

    #[test]
    fn build_examples() {
        let spec = ExtremalSpec::new(2, 9, 3);
        let (h, cert) = build_extremal(spec).unwrap();
        assert_eq!(cert.t_side().to_vec(), vec![5, 6, 7, 8, 9]);
        // brute count of triples with at least two of the five marked vertices
        let marked = |v: usize| v >= 5;
        let expected = all_triples(9)
            .iter()
            .filter(|t| t.iter().filter(|v| marked(**v)).count() >= 2)
            .count();
        assert_eq!(expected, 50);
        assert_eq!(h.edge_count(), expected);

        let (h3, _) = build_extremal(ExtremalSpec::new(3, 9, 3)).unwrap();
        assert_eq!(h3.edge_count(), 56);
        let (h, _) = build_extremal(ExtremalSpec::new(2, 6, 1)).unwrap();
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn build_rejects_bad_sizes() {
        assert!(build_extremal(ExtremalSpec::new(3, 7, 3)).is_err());
        assert!(build_extremal(ExtremalSpec::new(4, 9, 1)).is_err());
        assert!(build_extremal(ExtremalSpec::new(2, 9, 0)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(sigma2_closed_form(ExtremalSpec::new(2, 9, 3)).unwrap(), Sigma2::Value(32));
        assert_eq!(sigma2_closed_form(ExtremalSpec::new(3, 9, 3)).unwrap(), Sigma2::Value(42));
        assert_eq!(sigma2_closed_form(ExtremalSpec::new(1, 9, 3)).unwrap(), Sigma2::Value(26));
        assert_eq!(sigma2_closed_form(ExtremalSpec::new(2, 9, 1)).unwrap(), Sigma2::Undefined);
    }

    #[test]
    fn closed_form_matches_built_family() {
        for n in 6..=15 {
            for s in 2..=n / 3 {
                for ell in 1..=3 {
                    let spec = ExtremalSpec::new(ell, n, s);
                    let (h, _) = build_extremal(spec).unwrap();
                    assert_eq!(h.sigma2(), sigma2_closed_form(spec).unwrap(), "{spec:?}");
                }
            }
        }
    }

    #[test]
    fn crossover_examples() {
        assert!(crossover_holds(9, 2).unwrap());
        assert!(!crossover_holds(9, 3).unwrap());
        assert!(crossover_holds(18, 4).unwrap());
        assert!(!crossover_holds(18, 5).unwrap());
        assert!(crossover_holds(11, 2).unwrap());
        assert!(crossover_threshold_predicate(18, 4));
        assert!(!crossover_threshold_predicate(9, 3));
    }

    #[test]
    fn crossover_agrees_with_built_sigma2() {
        for n in 6..=24 {
            for s in 2..=n / 3 {
                let (h2, _) = build_extremal(ExtremalSpec::new(2, n, s)).unwrap();
                let (h3, _) = build_extremal(ExtremalSpec::new(3, n, s)).unwrap();
                let direct = h2.sigma2().value() >= h3.sigma2().value();
                assert_eq!(crossover_holds(n, s).unwrap(), direct, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn nu_examples_agree_with_solver() {
        for (ell, n, s, nu) in [(2, 9, 3, 2), (1, 9, 3, 2), (3, 6, 2, 1)] {
            let spec = ExtremalSpec::new(ell, n, s);
            assert_eq!(nu_extremal(spec).unwrap(), nu);
            let (h, _) = build_extremal(spec).unwrap();
            let r = max_matching_exact(&h, &SolverConfig::default());
            assert!(r.proved_optimal);
            assert_eq!(r.optimum, nu);
        }
    }
}
