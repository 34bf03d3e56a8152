// Shared by several integration-test binaries; each uses a subset.
#![allow(dead_code)]

//! Independent oracles for the integration tests.
//!
//! These deliberately avoid the library's partition-indexed series
//! machinery: symmetric series are expanded as honest truncated polynomials
//! in finitely many formal variables, and hypersurface invariants come from
//! a closed form derived once by hand.

use std::collections::BTreeMap;

use strata::algebra::{AlgebraRef, Element};
use strata::charclass::TotalClass;
use strata::scalar::Scalar;
use strata::Partition;

/// A truncated polynomial in `nvars` formal variables with algebra-element
/// coefficients; exponent vectors are dense and total weight is capped.
pub struct TPoly<K: Scalar> {
    owner: AlgebraRef<K>,
    nvars: usize,
    cap: u32,
    terms: BTreeMap<Vec<u32>, Element<K>>,
}

impl<K: Scalar> TPoly<K> {
    pub fn one(owner: &AlgebraRef<K>, nvars: usize, cap: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], Element::one(owner));
        TPoly { owner: owner.clone(), nvars, cap, terms }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms: BTreeMap<Vec<u32>, Element<K>> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let sum: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if sum.iter().sum::<u32>() > self.cap {
                    continue;
                }
                let c = ca.mul(cb);
                if c.is_zero() {
                    continue;
                }
                let entry = terms
                    .entry(sum)
                    .or_insert_with(|| Element::zero(&self.owner));
                *entry = entry.add(&c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TPoly { owner: self.owner.clone(), nvars: self.nvars, cap: self.cap, terms }
    }

    pub fn coeff(&self, exponents: &[u32]) -> Element<K> {
        assert_eq!(exponents.len(), self.nvars);
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.owner))
    }

    /// Coefficient at the canonical exponent vector of a partition (padded
    /// with zeros). Panics if the partition is longer than `nvars`.
    pub fn coeff_at(&self, p: &Partition) -> Element<K> {
        let mut exponents: Vec<u32> = p.parts().to_vec();
        assert!(exponents.len() <= self.nvars, "partition longer than variable count");
        exponents.resize(self.nvars, 0);
        self.coeff(&exponents)
    }
}

/// The expansion of `prod_{i=1..nvars} (1 + c_1 t_i + c_2 t_i^2 + ...)` as
/// an honest truncated polynomial.
pub fn beta_expansion<K: Scalar>(u: &TotalClass<K>, nvars: usize, cap: u32) -> TPoly<K> {
    let owner = u.owner().clone();
    let mut out = TPoly::one(&owner, nvars, cap);
    for var in 0..nvars {
        let mut factor_terms = BTreeMap::new();
        factor_terms.insert(vec![0; nvars], Element::one(&owner));
        for j in 1..=cap {
            let c = u.component(j);
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; nvars];
            e[var] = j;
            factor_terms.insert(e, c);
        }
        let factor = TPoly { owner: owner.clone(), nvars, cap, terms: factor_terms };
        out = out.mul(&factor);
    }
    out
}

/// p_1 number of a degree-d hypersurface in CP^n (n odd, so the dimension
/// 2(n-1) is divisible by 4), from the restriction identity
/// `T(V) + O(d)|_V = T(CP^n)|_V`:
/// `p_1(TV) = (n+1-d^2) x^2` and `<x^{n-1}, d [CP^{n-1}]-fold locus> = d`.
pub fn adjunction_p1(n: i64, d: i64) -> i64 {
    d * (n + 1 - d * d)
}
