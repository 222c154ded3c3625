//! Exact multivariate polynomials over the integers.
//!
//! These are the scaffolding for everything that must be solved or checked
//! symbolically: universal Witt polynomial derivation targets, subgroup
//! equations in matrix entries, and the polynomial payloads of
//! [`crate::rings::RingKind::IntegerPoly`].
//!
//! Representation: a sorted vector of `(exponent vector, coefficient)` pairs
//! with no zero coefficients and no duplicate monomials. Two equal
//! polynomials always have identical representations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial; index = variable number.
pub type Mono = Vec<u16>;

fn mono_cmp(a: &[u16], b: &[u16]) -> Ordering {
    a.cmp(b)
}

/// A multivariate polynomial with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    /// Sorted by monomial, no zero coefficients.
    terms: Vec<(Mono, BigInt)>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        IntPoly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0u16; nvars];
        m[i] = 1;
        IntPoly { nvars, terms: vec![(m, BigInt::one())] }
    }

    /// A single monomial `c * prod x_i^{e_i}`.
    pub fn monomial(nvars: usize, exps: Mono, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        IntPoly { nvars, terms: vec![(exps, c)] }
    }

    /// Build from an unsorted term list, combining duplicates.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, BigInt)>) -> Self {
        for (m, _) in &terms {
            assert_eq!(m.len(), nvars);
        }
        terms.sort_by(|a, b| mono_cmp(&a.0, &b.0));
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        IntPoly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .iter()
            .find(|(m, _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match mono_cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        IntPoly { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma
                    .iter()
                    .zip(mb.iter())
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                terms.push((m, ca * cb));
            }
        }
        Self::from_terms(self.nvars, terms)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by an integer; `None` if any coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        assert!(!d.is_zero());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(c, d);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(IntPoly { nvars: self.nvars, terms })
    }

    /// Evaluate by mapping each variable to a value in a commutative-ring
    /// interface supplied through closures. `add(a,b)`, `mul(a,b)` and
    /// `from_int(c)` must implement the target ring.
    pub fn eval_with<T: Clone>(
        &self,
        values: &[T],
        mut add: impl FnMut(&T, &T) -> T,
        mut mul: impl FnMut(&T, &T) -> T,
        mut from_int: impl FnMut(&BigInt) -> T,
    ) -> T {
        assert_eq!(values.len(), self.nvars);
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut t = from_int(c);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = mul(&t, &values[i]);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => add(&a, &t),
            });
        }
        acc.unwrap_or_else(|| from_int(&BigInt::zero()))
    }

    /// Substitute polynomials for the variables (classical composition).
    pub fn compose(&self, args: &[IntPoly]) -> IntPoly {
        assert_eq!(args.len(), self.nvars);
        let nv = args.first().map(|p| p.nvars).unwrap_or(0);
        self.eval_with(
            args,
            |a, b| a.add(b),
            |a, b| a.mul(b),
            |c| IntPoly::constant(nv, c.clone()),
        )
    }

    /// Coefficients reduced into `|c| <= bound` check, for sanity assertions.
    pub fn max_coeff_abs(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " {} ", if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" })?;
            } else {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            let trivial_mono = m.iter().all(|&e| e == 0);
            if !a.is_one() || trivial_mono {
                write!(f, "{}", a)?;
                if !trivial_mono {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    if !firstv {
                        write!(f, "*")?;
                    }
                    firstv = false;
                    if e == 1 {
                        write!(f, "x{}", i)?;
                    } else {
                        write!(f, "x{}^{}", i, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let p = x.add(&y).pow(2);
        let q = x.pow(2).add(&x.mul(&y).scale(&BigInt::from(2))).add(&y.pow(2));
        assert_eq!(p, q);
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn exact_division() {
        let x = IntPoly::var(1, 0);
        let p = x.scale(&BigInt::from(6)).add(&IntPoly::constant(1, 9));
        assert_eq!(
            p.div_exact(&BigInt::from(3)).unwrap(),
            x.scale(&BigInt::from(2)).add(&IntPoly::constant(1, 3))
        );
        assert!(p.div_exact(&BigInt::from(2)).is_none());
    }

    #[test]
    fn compose_matches_eval() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        // f = x^2 y + 3
        let f = x.pow(2).mul(&y).add(&IntPoly::constant(2, 3));
        let g = f.compose(&[y.clone(), x.clone()]);
        assert_eq!(g, y.pow(2).mul(&x).add(&IntPoly::constant(2, 3)));
    }
}
