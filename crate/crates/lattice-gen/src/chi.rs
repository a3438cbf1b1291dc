//! Integer polynomials in lattice characters.
//!
//! A `ChiPoly` is a finite integer combination of monomials `chi^v` indexed
//! by lattice vectors `v`. These polynomials appear as numerators of the
//! multivariate rational forms attached to cones; they are never expanded
//! against their geometric denominators inside this module.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use exact_math::{Int, LatticeVec};
use num_traits::Zero;

/// Finite integer combination of lattice characters `chi^v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChiPoly {
    terms: BTreeMap<LatticeVec, Int>,
}

impl ChiPoly {
    /// The zero polynomial.
    pub fn zero() -> ChiPoly {
        ChiPoly::default()
    }

    /// The constant polynomial 1 in an ambient lattice of the given rank.
    pub fn one(ambient: usize) -> ChiPoly {
        ChiPoly::monomial(vec![Int::zero(); ambient])
    }

    /// The single monomial `chi^v`.
    pub fn monomial(v: LatticeVec) -> ChiPoly {
        let mut terms = BTreeMap::new();
        terms.insert(v, Int::from(1));
        ChiPoly { terms }
    }

    /// Adds `c * chi^v`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, v: LatticeVec, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(v) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(exponent vector, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVec, &Int)> {
        self.terms.iter()
    }

    /// Sum of all coefficients, i.e. the evaluation at `chi = 1`.
    pub fn coefficient_sum(&self) -> Int {
        self.terms.values().sum()
    }

    /// Multiplies by the binomial `1 - chi^v`.
    pub fn mul_one_minus_chi(&self, v: &[Int]) -> ChiPoly {
        let mut out = self.clone();
        for (w, c) in &self.terms {
            let shifted: LatticeVec = w.iter().zip(v).map(|(a, b)| a + b).collect();
            out.add_term(shifted, -c.clone());
        }
        out
    }
}

impl Add for &ChiPoly {
    type Output = ChiPoly;

    fn add(self, rhs: &ChiPoly) -> ChiPoly {
        let mut out = self.clone();
        for (v, c) in &rhs.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ChiPoly {
    type Output = ChiPoly;

    fn sub(self, rhs: &ChiPoly) -> ChiPoly {
        let mut out = self.clone();
        for (v, c) in &rhs.terms {
            out.add_term(v.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ChiPoly {
    type Output = ChiPoly;

    fn neg(self) -> ChiPoly {
        &ChiPoly::zero() - self
    }
}

impl Mul for &ChiPoly {
    type Output = ChiPoly;

    fn mul(self, rhs: &ChiPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (v, c) in &self.terms {
            for (w, d) in &rhs.terms {
                let sum: LatticeVec = v.iter().zip(w).map(|(a, b)| a + b).collect();
                out.add_term(sum, c * d);
            }
        }
        out
    }
}
