//! Finite commutative coefficient rings, plus the exact integer polynomial
//! ring used for universal identity checking.
//!
//! Four kinds are supported:
//!
//! * `F_{p^f}` — residue polynomials modulo a deterministically chosen
//!   irreducible (the lexicographically smallest monic one),
//! * `Z/p^m`,
//! * monomial quotients `B[t_1..t_r]/(monomial relations)` over one of the
//!   two kinds above (square-zero duals, power-series truncations),
//! * `Z[v_1..v_k]` with arbitrary-precision coefficients.
//!
//! Every kind except the last is finite and admits a stable enumeration.
//! Elements are kept in canonical normal form, so equality is structural.

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;

/// Exponent vector for a quotient-ring monomial.
pub type QMono = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_{p^f} = F_p[a]/(modulus)`; modulus is monic of degree `f`,
    /// coefficients mod `p`, lowest degree first, length `f+1`.
    FiniteField { p: u64, f: usize, modulus: Vec<u64> },
    /// `Z/p^m`.
    ZmodPM { p: u64, m: u32 },
    /// `base[vars]/(relations)` where every relation is a monomial that is
    /// declared zero. `basis` is the sorted list of surviving monomials.
    MonomialQuotient {
        base: Ring,
        vars: Vec<String>,
        relations: Vec<QMono>,
        basis: Vec<QMono>,
    },
    /// `Z[vars]`, exact.
    IntegerPoly { vars: Vec<String> },
}

/// A shared, cheaply clonable ring descriptor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingKind>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::FiniteField { p, f: d, .. } => write!(f, "F_{}^{}", p, d),
            RingKind::ZmodPM { p, m } => write!(f, "Z/{}^{}", p, m),
            RingKind::MonomialQuotient { base, vars, .. } => {
                write!(f, "{:?}[{}]/monomials", base, vars.join(","))
            }
            RingKind::IntegerPoly { vars } => write!(f, "Z[{}]", vars.join(",")),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial arithmetic mod p, for modulus search and Fq payloads.
mod fp_poly {
    /// Multiply two coefficient vectors mod p.
    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
            }
        }
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`, coefficients mod p.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let deg_m = m.len() - 1;
        let mut r: Vec<u64> = a.to_vec();
        while r.len() > deg_m {
            let lead = *r.last().unwrap();
            let k = r.len() - 1 - deg_m;
            if lead != 0 {
                for i in 0..=deg_m {
                    let sub = (lead as u128 * m[i] as u128 % p as u128) as u64;
                    r[k + i] = (r[k + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        r.resize(deg_m, 0);
        r
    }

    /// Is the monic polynomial `m` irreducible over F_p?  Rabin's test:
    /// x^{p^f} ≡ x mod m, and x^{p^{f/q}} - x coprime with m for prime q | f.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let f = m.len() - 1;
        if f == 1 {
            return true;
        }
        let xq_pow = |e: usize| -> Vec<u64> {
            // x^(p^e) mod m by repeated p-th powering
            let mut cur = vec![0, 1]; // x
            for _ in 0..e {
                cur = pow_mod(&cur, p, m, p);
            }
            cur
        };
        // x^{p^f} == x
        let mut xf = xq_pow(f);
        xf.resize(f.max(2), 0);
        let mut x = vec![0u64; f.max(2)];
        x[1] = 1;
        if xf != x {
            return false;
        }
        // for each prime divisor q of f: gcd(x^{p^{f/q}} - x, m) == 1
        let mut rest = f;
        let mut q = 2;
        let mut prime_divs = vec![];
        while q * q <= rest {
            if rest % q == 0 {
                prime_divs.push(q);
                while rest % q == 0 {
                    rest /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            prime_divs.push(rest);
        }
        for q in prime_divs {
            let mut d = xq_pow(f / q);
            d.resize(f.max(2), 0);
            // d - x
            d[1] = (d[1] + p - 1) % p;
            if !gcd_is_one(&d, m, p) {
                return false;
            }
        }
        true
    }

    fn pow_mod(a: &[u64], e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc.resize(m.len() - 1, 0);
        acc
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // a mod b, with b made monic
            let lead = *b.last().unwrap();
            let inv = mod_inv(lead, p);
            let monic: Vec<u64> = b.iter().map(|&c| (c as u128 * inv as u128 % p as u128) as u64).collect();
            if a.len() >= monic.len() {
                a = rem(&a, &monic, p);
            }
            trim(&mut a);
            std::mem::swap(&mut a, &mut b);
        }
        a.len() == 1
    }

    pub fn mod_inv(a: u64, p: u64) -> u64 {
        // Fermat
        let mut acc: u128 = 1;
        let mut base: u128 = a as u128 % p as u128;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u128;
            }
            base = base * base % p as u128;
            e >>= 1;
        }
        acc as u64
    }
}

impl Ring {
    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// `F_{p^f}` with the canonical (lexicographically smallest monic
    /// irreducible) defining polynomial.
    pub fn finite_field(p: u64, f: usize) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::BadDescriptor(format!("{} is not prime", p)));
        }
        if f == 0 {
            return Err(Error::BadDescriptor("degree must be >= 1".into()));
        }
        if (f as u32 * (64 - p.leading_zeros())) > 48 {
            return Err(Error::BadDescriptor("field too large to enumerate".into()));
        }
        // Smallest monic irreducible in lexicographic coefficient order
        // (c_0, c_1, .., c_{f-1}), constant coefficient most significant.
        let mut coeffs = vec![0u64; f];
        loop {
            let mut m = coeffs.clone();
            m.push(1);
            if fp_poly::is_irreducible(&m, p) {
                return Ok(Ring(Arc::new(RingKind::FiniteField { p, f, modulus: m })));
            }
            // increment little-endian counter with c_{f-1} fastest so that
            // (c_0,..,c_{f-1}) ascends lexicographically
            let mut i = f;
            loop {
                if i == 0 {
                    return Err(Error::BadDescriptor("no irreducible found".into()));
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// `F_{p^f}` with an explicit monic defining polynomial.
    pub fn finite_field_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::BadDescriptor(format!("{} is not prime", p)));
        }
        let f = modulus.len().saturating_sub(1);
        if f == 0 || modulus[f] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadDescriptor("modulus must be monic with coefficients mod p".into()));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::BadDescriptor("modulus is reducible".into()));
        }
        Ok(Ring(Arc::new(RingKind::FiniteField { p, f, modulus })))
    }

    pub fn zmod_pm(p: u64, m: u32) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::BadDescriptor(format!("{} is not prime", p)));
        }
        if m == 0 {
            return Err(Error::BadDescriptor("exponent must be >= 1".into()));
        }
        let mut acc: u128 = 1;
        for _ in 0..m {
            acc = acc.checked_mul(p as u128).ok_or_else(|| Error::BadDescriptor("p^m overflows".into()))?;
            if acc > u64::MAX as u128 {
                return Err(Error::BadDescriptor("p^m too large".into()));
            }
        }
        Ok(Ring(Arc::new(RingKind::ZmodPM { p, m })))
    }

    /// Monomial quotient `base[vars]/(relations)`. Relations are exponent
    /// vectors declared zero; a monomial is zero iff divisible by a relation.
    /// Requires the quotient to be finite: every variable must have a pure
    /// power among the relations.
    pub fn monomial_quotient(base: Ring, vars: Vec<String>, relations: Vec<QMono>) -> Result<Ring> {
        match base.kind() {
            RingKind::FiniteField { .. } | RingKind::ZmodPM { .. } => {}
            _ => return Err(Error::BadDescriptor("quotient base must be F_q or Z/p^m".into())),
        }
        let r = vars.len();
        if r == 0 {
            return Err(Error::BadDescriptor("need at least one variable".into()));
        }
        for rel in &relations {
            if rel.len() != r || rel.iter().all(|&e| e == 0) {
                return Err(Error::BadDescriptor("bad relation exponent vector".into()));
            }
        }
        // finiteness: each variable killed by a pure power
        let mut bound = vec![u16::MAX; r];
        for rel in &relations {
            let nz: Vec<usize> = (0..r).filter(|&i| rel[i] > 0).collect();
            if nz.len() == 1 {
                bound[nz[0]] = bound[nz[0]].min(rel[nz[0]]);
            }
        }
        if bound.iter().any(|&b| b == u16::MAX) {
            return Err(Error::Unenumerable(
                "monomial quotient is infinite (a variable has no pure-power relation)".into(),
            ));
        }
        // enumerate surviving monomials
        let divisible = |m: &QMono, rel: &QMono| rel.iter().zip(m.iter()).all(|(&a, &b)| b >= a);
        let mut basis: Vec<QMono> = vec![];
        let mut stack = vec![vec![0u16; r]];
        let mut seen = std::collections::HashSet::new();
        seen.insert(vec![0u16; r]);
        while let Some(m) = stack.pop() {
            if relations.iter().any(|rel| divisible(&m, rel)) {
                continue;
            }
            basis.push(m.clone());
            if basis.len() > 4096 {
                return Err(Error::Unenumerable("monomial quotient basis too large".into()));
            }
            for i in 0..r {
                let mut m2 = m.clone();
                m2[i] += 1;
                if seen.insert(m2.clone()) {
                    stack.push(m2);
                }
            }
        }
        basis.sort();
        Ok(Ring(Arc::new(RingKind::MonomialQuotient { base, vars, relations, basis })))
    }

    /// Dual numbers `base[eps]/(eps^2)`.
    pub fn dual_numbers(base: Ring) -> Result<Ring> {
        Ring::monomial_quotient(base, vec!["eps".into()], vec![vec![2]])
    }

    /// `base[t_1..t_r]/(t_1..t_r)^n` — total-degree truncation.
    pub fn power_truncation(base: Ring, r: usize, n: u16) -> Result<Ring> {
        let vars = (1..=r).map(|i| format!("t{}", i)).collect();
        // all monomials of total degree n
        let mut rels = vec![];
        fn gen(rels: &mut Vec<QMono>, cur: &mut QMono, left: u16, pos: usize, r: usize) {
            if pos == r - 1 {
                cur.push(left);
                rels.push(cur.clone());
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                gen(rels, cur, left - e, pos + 1, r);
                cur.pop();
            }
        }
        gen(&mut rels, &mut vec![], n, 0, r);
        Ring::monomial_quotient(base, vars, rels)
    }

    pub fn integer_poly(vars: Vec<String>) -> Ring {
        Ring(Arc::new(RingKind::IntegerPoly { vars }))
    }

    /// Characteristic of the ring (0 for `Z[vars]`).
    pub fn characteristic(&self) -> BigInt {
        match self.kind() {
            RingKind::FiniteField { p, .. } => BigInt::from(*p),
            RingKind::ZmodPM { p, m } => BigInt::from(*p).pow(*m),
            RingKind::MonomialQuotient { base, .. } => base.characteristic(),
            RingKind::IntegerPoly { .. } => BigInt::zero(),
        }
    }

    /// The residue characteristic p (all our rings are Z_p-algebra shaped
    /// except `IntegerPoly`, which has no preferred p; returns `None` there).
    pub fn residue_char(&self) -> Option<u64> {
        match self.kind() {
            RingKind::FiniteField { p, .. } | RingKind::ZmodPM { p, .. } => Some(*p),
            RingKind::MonomialQuotient { base, .. } => base.residue_char(),
            RingKind::IntegerPoly { .. } => None,
        }
    }

    pub fn has_char_p(&self) -> bool {
        match self.kind() {
            RingKind::FiniteField { .. } => true,
            RingKind::ZmodPM { m, .. } => *m == 1,
            RingKind::MonomialQuotient { base, .. } => base.has_char_p(),
            RingKind::IntegerPoly { .. } => false,
        }
    }

    /// Is this a finite local ring with nilpotent maximal ideal and p
    /// nilpotent (so p lies in the Jacobson radical)?
    pub fn is_local_p_nilpotent(&self) -> bool {
        match self.kind() {
            RingKind::FiniteField { .. } | RingKind::ZmodPM { .. } => true,
            RingKind::MonomialQuotient { base, .. } => base.is_local_p_nilpotent(),
            RingKind::IntegerPoly { .. } => false,
        }
    }

    pub fn is_finite_field(&self) -> bool {
        matches!(self.kind(), RingKind::FiniteField { .. })
    }

    /// Is the ring reduced (no nonzero nilpotents)?
    pub fn is_reduced(&self) -> bool {
        match self.kind() {
            RingKind::FiniteField { .. } => true,
            RingKind::ZmodPM { m, .. } => *m == 1,
            RingKind::MonomialQuotient { .. } => false,
            RingKind::IntegerPoly { .. } => true,
        }
    }

    /// Smallest `e` with `x^e = 0` for every nilpotent `x` in the ring.
    pub fn nilpotency_bound(&self) -> u32 {
        match self.kind() {
            RingKind::FiniteField { .. } => 1,
            RingKind::ZmodPM { m, .. } => *m,
            RingKind::MonomialQuotient { base, basis, .. } => {
                let maxdeg = basis.iter().map(|m| m.iter().map(|&e| e as u32).sum::<u32>()).max().unwrap_or(0);
                base.nilpotency_bound() + maxdeg
            }
            RingKind::IntegerPoly { .. } => 1,
        }
    }

    pub fn cardinality(&self) -> Option<u128> {
        match self.kind() {
            RingKind::FiniteField { p, f, .. } => (*p as u128).checked_pow(*f as u32),
            RingKind::ZmodPM { p, m } => (*p as u128).checked_pow(*m),
            RingKind::MonomialQuotient { base, basis, .. } => {
                base.cardinality()?.checked_pow(basis.len() as u32)
            }
            RingKind::IntegerPoly { .. } => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        match self.kind() {
            RingKind::FiniteField { f, .. } => RingElem {
                ring: self.clone(),
                payload: Payload::Fq(vec![0; *f]),
            },
            RingKind::ZmodPM { .. } => RingElem { ring: self.clone(), payload: Payload::Zq(0) },
            RingKind::MonomialQuotient { base, basis, .. } => RingElem {
                ring: self.clone(),
                payload: Payload::Quot(vec![base.zero(); basis.len()]),
            },
            RingKind::IntegerPoly { vars } => RingElem {
                ring: self.clone(),
                payload: Payload::Int(IntPoly::zero(vars.len())),
            },
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_int(&BigInt::from(1))
    }

    /// Image of an integer under the unique map Z -> R.
    pub fn from_int(&self, c: &BigInt) -> RingElem {
        match self.kind() {
            RingKind::FiniteField { p, f, .. } => {
                let r = c.mod_floor_u64(*p);
                let mut v = vec![0; *f];
                v[0] = r;
                RingElem { ring: self.clone(), payload: Payload::Fq(v) }
            }
            RingKind::ZmodPM { p, m } => {
                let modulus = (*p as u128).pow(*m) as u64;
                RingElem { ring: self.clone(), payload: Payload::Zq(c.mod_floor_u64_full(modulus)) }
            }
            RingKind::MonomialQuotient { base, basis, .. } => {
                let mut coeffs = vec![base.zero(); basis.len()];
                coeffs[0] = base.from_int(c);
                RingElem { ring: self.clone(), payload: Payload::Quot(coeffs) }
            }
            RingKind::IntegerPoly { vars } => RingElem {
                ring: self.clone(),
                payload: Payload::Int(IntPoly::constant(vars.len(), c.clone())),
            },
        }
    }

    /// The generator of a quotient ring (variable `i`), or of F_q (the residue
    /// class of `a`), or variable `i` of `Z[vars]`.
    pub fn generator(&self, i: usize) -> Result<RingElem> {
        match self.kind() {
            RingKind::FiniteField { f, .. } => {
                if *f < 2 || i > 0 {
                    return Err(Error::BadDescriptor("no such generator".into()));
                }
                let mut v = vec![0; *f];
                v[1] = 1;
                Ok(RingElem { ring: self.clone(), payload: Payload::Fq(v) })
            }
            RingKind::MonomialQuotient { base, vars, basis, relations } => {
                if i >= vars.len() {
                    return Err(Error::BadDescriptor("no such generator".into()));
                }
                let mut mono = vec![0u16; vars.len()];
                mono[i] = 1;
                let mut coeffs = vec![base.zero(); basis.len()];
                if let Ok(pos) = basis.binary_search(&mono) {
                    coeffs[pos] = base.one();
                } else if relations.iter().any(|r| r.iter().zip(&mono).all(|(&a, &b)| b >= a)) {
                    // variable is itself zero; keep zero coefficients
                }
                Ok(RingElem { ring: self.clone(), payload: Payload::Quot(coeffs) })
            }
            RingKind::IntegerPoly { vars } => {
                if i >= vars.len() {
                    return Err(Error::BadDescriptor("no such generator".into()));
                }
                Ok(RingElem {
                    ring: self.clone(),
                    payload: Payload::Int(IntPoly::var(vars.len(), i)),
                })
            }
            RingKind::ZmodPM { .. } => Err(Error::BadDescriptor("no generator for Z/p^m".into())),
        }
    }

    /// Element with the given enumeration index (see `enumerate`).
    pub fn element_by_index(&self, idx: u128) -> Result<RingElem> {
        match self.kind() {
            RingKind::FiniteField { p, f, .. } => {
                let mut v = vec![0u64; *f];
                let mut rest = idx;
                for slot in v.iter_mut() {
                    *slot = (rest % *p as u128) as u64;
                    rest /= *p as u128;
                }
                if rest != 0 {
                    return Err(Error::BadDescriptor("index out of range".into()));
                }
                Ok(RingElem { ring: self.clone(), payload: Payload::Fq(v) })
            }
            RingKind::ZmodPM { p, m } => {
                let modulus = (*p as u128).pow(*m);
                if idx >= modulus {
                    return Err(Error::BadDescriptor("index out of range".into()));
                }
                Ok(RingElem { ring: self.clone(), payload: Payload::Zq(idx as u64) })
            }
            RingKind::MonomialQuotient { base, basis, .. } => {
                let card = base.cardinality().ok_or_else(|| Error::Unenumerable("infinite base".into()))?;
                let mut rest = idx;
                let mut coeffs = Vec::with_capacity(basis.len());
                for _ in 0..basis.len() {
                    coeffs.push(base.element_by_index(rest % card)?);
                    rest /= card;
                }
                if rest != 0 {
                    return Err(Error::BadDescriptor("index out of range".into()));
                }
                Ok(RingElem { ring: self.clone(), payload: Payload::Quot(coeffs) })
            }
            RingKind::IntegerPoly { .. } => Err(Error::Unenumerable("Z[vars] is infinite".into())),
        }
    }

    /// All elements of the ring in a fixed deterministic order.
    pub fn enumerate(&self) -> Result<Vec<RingElem>> {
        let card = self.cardinality().ok_or_else(|| Error::Unenumerable(format!("{:?}", self)))?;
        if card > 1 << 24 {
            return Err(Error::SearchSpaceTooLarge(format!("|R| = {}", card)));
        }
        (0..card).map(|i| self.element_by_index(i)).collect()
    }
}

trait ModFloorExt {
    fn mod_floor_u64(&self, m: u64) -> u64;
    fn mod_floor_u64_full(&self, m: u64) -> u64;
}

impl ModFloorExt for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        self.mod_floor_u64_full(m)
    }
    fn mod_floor_u64_full(&self, m: u64) -> u64 {
        let r = num_integer::Integer::mod_floor(self, &BigInt::from(m));
        r.to_u64().expect("mod result fits")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Payload {
    /// F_q element: coefficients of the residue polynomial, lowest first, length f.
    Fq(Vec<u64>),
    /// Z/p^m element: canonical residue.
    Zq(u64),
    /// Quotient element: base-ring coefficients aligned with the basis monomials.
    Quot(Vec<RingElem>),
    /// Integer polynomial.
    Int(IntPoly),
}

/// An element of one of the coefficient rings, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: Ring,
    payload: Payload,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Fq(v) => write!(f, "Fq{:?}", v),
            Payload::Zq(r) => write!(f, "{}", r),
            Payload::Quot(c) => write!(f, "Q{:?}", c),
            Payload::Int(p) => write!(f, "{}", p),
        }
    }
}

impl RingElem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Fq(v) => v.iter().all(|&c| c == 0),
            Payload::Zq(r) => *r == 0,
            Payload::Quot(c) => c.iter().all(|e| e.is_zero()),
            Payload::Int(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.ring.one()
    }

    fn check_same(&self, other: &RingElem) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Fq(a), Payload::Fq(b)) => {
                let p = match self.ring.kind() {
                    RingKind::FiniteField { p, .. } => *p,
                    _ => unreachable!(),
                };
                Payload::Fq(a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect())
            }
            (Payload::Zq(a), Payload::Zq(b)) => {
                let m = self.ring.characteristic().to_u128().unwrap() as u64;
                Payload::Zq(((*a as u128 + *b as u128) % m as u128) as u64)
            }
            (Payload::Quot(a), Payload::Quot(b)) => Payload::Quot(
                a.iter().zip(b).map(|(x, y)| x.add(y)).collect::<Result<_>>()?,
            ),
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a.add(b)),
            _ => unreachable!("payload/ring mismatch"),
        };
        Ok(RingElem { ring: self.ring.clone(), payload })
    }

    pub fn neg(&self) -> RingElem {
        let payload = match &self.payload {
            Payload::Fq(a) => {
                let p = match self.ring.kind() {
                    RingKind::FiniteField { p, .. } => *p,
                    _ => unreachable!(),
                };
                Payload::Fq(a.iter().map(|&x| (p - x) % p).collect())
            }
            Payload::Zq(a) => {
                let m = self.ring.characteristic().to_u128().unwrap() as u64;
                Payload::Zq((m - *a) % m)
            }
            Payload::Quot(a) => Payload::Quot(a.iter().map(|x| x.neg()).collect()),
            Payload::Int(a) => Payload::Int(a.neg()),
        };
        RingElem { ring: self.ring.clone(), payload }
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Fq(a), Payload::Fq(b)) => {
                let (p, modulus) = match self.ring.kind() {
                    RingKind::FiniteField { p, modulus, .. } => (*p, modulus),
                    _ => unreachable!(),
                };
                Payload::Fq(fp_poly::rem(&fp_poly::mul(a, b, p), modulus, p))
            }
            (Payload::Zq(a), Payload::Zq(b)) => {
                let m = self.ring.characteristic().to_u128().unwrap();
                Payload::Zq(((*a as u128 * *b as u128) % m) as u64)
            }
            (Payload::Quot(a), Payload::Quot(b)) => {
                let (base, basis, relations) = match self.ring.kind() {
                    RingKind::MonomialQuotient { base, basis, relations, .. } => (base, basis, relations),
                    _ => unreachable!(),
                };
                let mut coeffs = vec![base.zero(); basis.len()];
                for (i, ca) in a.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (j, cb) in b.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let m: QMono = basis[i]
                            .iter()
                            .zip(&basis[j])
                            .map(|(&x, &y)| x + y)
                            .collect();
                        if relations.iter().any(|r| r.iter().zip(&m).all(|(&x, &y)| y >= x)) {
                            continue;
                        }
                        let pos = basis.binary_search(&m).expect("product monomial survives");
                        coeffs[pos] = coeffs[pos].add(&ca.mul(cb)?)?;
                    }
                }
                Payload::Quot(coeffs)
            }
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a.mul(b)),
            _ => unreachable!("payload/ring mismatch"),
        };
        Ok(RingElem { ring: self.ring.clone(), payload })
    }

    pub fn pow(&self, e: u64) -> RingElem {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }

    /// x -> x^p; requires characteristic p.
    pub fn base_frobenius(&self) -> Result<RingElem> {
        if !self.ring.has_char_p() {
            return Err(Error::CharNotP);
        }
        let p = self.ring.residue_char().expect("char p ring has residue char");
        Ok(self.pow(p))
    }

    /// Inverse Frobenius over a finite field (x -> x^{p^{f-1}}).
    pub fn inverse_frobenius(&self) -> Result<RingElem> {
        match self.ring.kind() {
            RingKind::FiniteField { p, f, .. } => {
                let mut acc = self.clone();
                for _ in 0..f.saturating_sub(1) {
                    acc = acc.pow(*p);
                }
                Ok(acc)
            }
            _ => Err(Error::NotAField),
        }
    }

    pub fn is_unit(&self) -> bool {
        match &self.payload {
            Payload::Fq(_) => !self.is_zero(),
            Payload::Zq(a) => {
                let p = self.ring.residue_char().unwrap();
                a % p != 0
            }
            Payload::Quot(c) => c[0].is_unit(),
            Payload::Int(p) => {
                // units of Z[vars] are +-1
                p.num_terms() == 1 && p.total_degree() == 0 && p.constant_term().abs() == BigInt::from(1)
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        // decided by x^bound = 0 with the bound derived from the relations
        let bound = self.ring.nilpotency_bound();
        self.pow(bound as u64).is_zero()
    }

    pub fn try_inv(&self) -> Result<RingElem> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        match &self.payload {
            Payload::Fq(_) => {
                let q = self.ring.cardinality().unwrap() as u64;
                Ok(self.pow(q - 2))
            }
            Payload::Zq(a) => {
                let m = self.ring.characteristic().to_u128().unwrap() as u64;
                // extended Euclid on (a, m)
                let (mut r0, mut r1) = (*a as i128, m as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                let inv = s0.rem_euclid(m as i128) as u64;
                Ok(RingElem { ring: self.ring.clone(), payload: Payload::Zq(inv) })
            }
            Payload::Quot(c) => {
                // x = c0 (1 + n) with n nilpotent; geometric series
                let c0 = c[0].clone();
                let c0_inv_lift = {
                    let inv = c0.try_inv()?;
                    let mut coeffs = vec![c[0].ring().zero(); c.len()];
                    coeffs[0] = inv;
                    RingElem { ring: self.ring.clone(), payload: Payload::Quot(coeffs) }
                };
                let n = self.mul(&c0_inv_lift)?.sub(&self.ring.one())?; // nilpotent part
                let mut acc = self.ring.one();
                let mut pw = n.clone();
                let mut sign_neg = true;
                while !pw.is_zero() {
                    acc = if sign_neg { acc.sub(&pw)? } else { acc.add(&pw)? };
                    pw = pw.mul(&n)?;
                    sign_neg = !sign_neg;
                }
                c0_inv_lift.mul(&acc)
            }
            Payload::Int(p) => {
                let c = p.constant_term();
                Ok(self.ring.from_int(&c)) // c = +-1 by the unit check
            }
        }
    }

    /// F_q payload accessor for serialization / Teichmuller digit tricks.
    pub fn fq_coeffs(&self) -> Option<&[u64]> {
        match &self.payload {
            Payload::Fq(v) => Some(v),
            _ => None,
        }
    }

    pub fn zq_residue(&self) -> Option<u64> {
        match &self.payload {
            Payload::Zq(r) => Some(*r),
            _ => None,
        }
    }

    pub fn quot_coeffs(&self) -> Option<&[RingElem]> {
        match &self.payload {
            Payload::Quot(c) => Some(c),
            _ => None,
        }
    }

    pub fn int_poly(&self) -> Option<&IntPoly> {
        match &self.payload {
            Payload::Int(p) => Some(p),
            _ => None,
        }
    }

    pub fn from_fq_coeffs(ring: &Ring, v: Vec<u64>) -> Result<RingElem> {
        match ring.kind() {
            RingKind::FiniteField { p, f, .. } => {
                if v.len() != *f || v.iter().any(|&c| c >= *p) {
                    return Err(Error::BadDescriptor("bad F_q coefficient vector".into()));
                }
                Ok(RingElem { ring: ring.clone(), payload: Payload::Fq(v) })
            }
            _ => Err(Error::BadDescriptor("not a finite field".into())),
        }
    }

    pub fn from_quot_coeffs(ring: &Ring, coeffs: Vec<RingElem>) -> Result<RingElem> {
        match ring.kind() {
            RingKind::MonomialQuotient { base, basis, .. } => {
                if coeffs.len() != basis.len() || coeffs.iter().any(|c| c.ring() != base) {
                    return Err(Error::BadDescriptor("bad quotient coefficient vector".into()));
                }
                Ok(RingElem { ring: ring.clone(), payload: Payload::Quot(coeffs) })
            }
            _ => Err(Error::BadDescriptor("not a monomial quotient".into())),
        }
    }

    pub fn from_int_poly(ring: &Ring, p: IntPoly) -> Result<RingElem> {
        match ring.kind() {
            RingKind::IntegerPoly { vars } => {
                if p.nvars() != vars.len() {
                    return Err(Error::BadDescriptor("variable count mismatch".into()));
                }
                Ok(RingElem { ring: ring.clone(), payload: Payload::Int(p) })
            }
            _ => Err(Error::BadDescriptor("not an integer polynomial ring".into())),
        }
    }

    /// Enumeration index of this element (inverse of `element_by_index`).
    pub fn index(&self) -> u128 {
        match &self.payload {
            Payload::Fq(v) => {
                let p = self.ring.residue_char().unwrap() as u128;
                v.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
            }
            Payload::Zq(r) => *r as u128,
            Payload::Quot(c) => {
                let card = c[0].ring().cardinality().unwrap();
                c.iter().rev().fold(0u128, |acc, e| acc * card + e.index())
            }
            Payload::Int(_) => panic!("Z[vars] has no enumeration"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_defining_relation() {
        // F_4 = F_2[a]/(a^2+a+1): a * (a+1) = 1
        let f4 = Ring::finite_field(2, 2).unwrap();
        match f4.kind() {
            RingKind::FiniteField { modulus, .. } => assert_eq!(modulus, &vec![1, 1, 1]),
            _ => unreachable!(),
        }
        let a = f4.generator(0).unwrap();
        let a1 = a.add(&f4.one()).unwrap();
        assert!(a.mul(&a1).unwrap().is_one());
    }

    #[test]
    fn z9_inverse_of_two() {
        let z9 = Ring::zmod_pm(3, 2).unwrap();
        let two = z9.from_int(&BigInt::from(2));
        assert_eq!(two.try_inv().unwrap().zq_residue(), Some(5));
    }

    #[test]
    fn dual_numbers_nilpotent_unit() {
        let r = Ring::dual_numbers(Ring::finite_field(2, 1).unwrap()).unwrap();
        let eps = r.generator(0).unwrap();
        assert!(eps.is_nilpotent());
        assert!(!eps.is_unit());
        let u = r.one().add(&eps).unwrap();
        assert!(u.is_unit());
        assert!(u.mul(&u.try_inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn enumeration_cardinalities() {
        let f4 = Ring::finite_field(2, 2).unwrap();
        assert_eq!(f4.enumerate().unwrap().len(), 4);
        let z8 = Ring::zmod_pm(2, 3).unwrap();
        assert_eq!(z8.enumerate().unwrap().len(), 8);
        let dual = Ring::dual_numbers(f4.clone()).unwrap();
        assert_eq!(dual.enumerate().unwrap().len(), 16);
        let trunc = Ring::power_truncation(Ring::finite_field(2, 1).unwrap(), 2, 2).unwrap();
        // basis 1, t1, t2
        assert_eq!(trunc.enumerate().unwrap().len(), 8);
        // order is stable
        let e1 = dual.enumerate().unwrap();
        let e2 = dual.enumerate().unwrap();
        assert_eq!(e1, e2);
        for (i, e) in e1.iter().enumerate() {
            assert_eq!(e.index(), i as u128);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f8 = Ring::finite_field(2, 3).unwrap();
        let elems = f8.enumerate().unwrap();
        for x in &elems {
            for y in &elems {
                let lhs = x.add(y).unwrap().base_frobenius().unwrap();
                let rhs = x.base_frobenius().unwrap().add(&y.base_frobenius().unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn x_cubed_quotient() {
        // F_2[x]/(x^3)
        let r = Ring::monomial_quotient(
            Ring::finite_field(2, 1).unwrap(),
            vec!["x".into()],
            vec![vec![3]],
        )
        .unwrap();
        assert_eq!(r.cardinality(), Some(8));
        let x = r.generator(0).unwrap();
        assert!(!x.pow(2).is_zero());
        assert!(x.pow(3).is_zero());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Ring::finite_field(2, 1).unwrap().one();
        let b = Ring::finite_field(3, 1).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::MixedRings)));
    }
}
