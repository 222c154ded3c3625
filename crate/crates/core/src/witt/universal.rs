//! Derivation of the universal Witt polynomials.
//!
//! The sum/product/negation polynomials `S_k`, `P_k`, `N_k` are solved
//! recursively from the ghost equations over exact rationals: each solve is
//! a subtraction of already-known lower terms followed by an exact division
//! by `p^k`. The division is checked coefficient by coefficient, which is
//! precisely the integrality assertion; once it succeeds, the ghost
//! identity at level `k` holds by construction as an identity of integer
//! polynomials.
//!
//! Polynomials here live in `2n` variables `x_0..x_{n-1}, y_0..y_{n-1}`
//! (negation uses only the `x` block). Internally terms are stored with
//! exponent vectors packed into a `u64` key, with an `i128` coefficient
//! fast path spilling into `BigInt` on overflow. Everything is exact.
//!
//! For the large members the recursion needs powers like `Z_{k}^p` of a
//! polynomial `Z_k` that already has thousands of terms. Squaring such a
//! polynomial directly is quadratic in its size, so powers of a solved
//! member are expanded multinomially over the *summands of its numerator*
//! (ghost target and scaled lower powers), whose own powers come from the
//! power ladders the recursion maintains anyway. This keeps the whole
//! derivation near-linear in the size of the answer.

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

/// Which universal family a polynomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Sum,
    Prod,
    Neg,
}

/// Resource guard for a derivation. Counts coefficient operations and live
/// terms; exceeding either bound aborts cleanly with `Error::ResourceBudget`.
#[derive(Clone, Debug)]
pub struct DeriveBudget {
    pub max_terms_per_poly: usize,
    pub max_coeff_ops: u64,
}

impl Default for DeriveBudget {
    fn default() -> Self {
        DeriveBudget { max_terms_per_poly: 6_000_000, max_coeff_ops: 600_000_000 }
    }
}

struct BudgetState {
    limit: DeriveBudget,
    ops: u64,
}

impl BudgetState {
    fn charge(&mut self, n: u64, what: &str) -> Result<()> {
        self.ops += n;
        if self.ops > self.limit.max_coeff_ops {
            return Err(Error::ResourceBudget(format!(
                "{} coefficient operations while computing {}",
                self.ops, what
            )));
        }
        Ok(())
    }
    fn check_terms(&self, n: usize, what: &str) -> Result<()> {
        if n > self.limit.max_terms_per_poly {
            return Err(Error::ResourceBudget(format!("{} terms in {}", n, what)));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// coefficients: i128 with BigInt spill
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Cf {
    S(i128),
    B(BigInt),
}

impl Cf {
    fn zero() -> Cf {
        Cf::S(0)
    }
    fn is_zero(&self) -> bool {
        match self {
            Cf::S(v) => *v == 0,
            Cf::B(v) => v.is_zero(),
        }
    }
    fn add(&self, o: &Cf) -> Cf {
        match (self, o) {
            (Cf::S(a), Cf::S(b)) => match a.checked_add(*b) {
                Some(v) => Cf::S(v),
                None => Cf::B(BigInt::from(*a) + BigInt::from(*b)),
            },
            (Cf::S(a), Cf::B(b)) => Cf::B(BigInt::from(*a) + b),
            (Cf::B(a), Cf::S(b)) => Cf::B(a + BigInt::from(*b)),
            (Cf::B(a), Cf::B(b)) => Cf::B(a + b),
        }
        .normalize()
    }
    fn add_assign(&mut self, o: &Cf) {
        *self = self.add(o);
    }
    fn mul(&self, o: &Cf) -> Cf {
        match (self, o) {
            (Cf::S(a), Cf::S(b)) => match a.checked_mul(*b) {
                Some(v) => Cf::S(v),
                None => Cf::B(BigInt::from(*a) * BigInt::from(*b)),
            },
            (Cf::S(a), Cf::B(b)) => Cf::B(BigInt::from(*a) * b),
            (Cf::B(a), Cf::S(b)) => Cf::B(a * BigInt::from(*b)),
            (Cf::B(a), Cf::B(b)) => Cf::B(a * b),
        }
    }
    fn neg(&self) -> Cf {
        match self {
            Cf::S(v) => Cf::S(-v),
            Cf::B(v) => Cf::B(-v),
        }
    }
    fn normalize(self) -> Cf {
        match self {
            Cf::B(v) => match v.to_i128() {
                Some(s) => Cf::S(s),
                None => Cf::B(v),
            },
            s => s,
        }
    }
    fn div_exact(&self, d: i128) -> Option<Cf> {
        match self {
            Cf::S(v) => {
                if v % d != 0 {
                    None
                } else {
                    Some(Cf::S(v / d))
                }
            }
            Cf::B(v) => {
                let (q, r) = v.div_rem(&BigInt::from(d));
                if r.is_zero() {
                    Some(Cf::B(q).normalize())
                } else {
                    None
                }
            }
        }
    }
    pub(crate) fn to_bigint(&self) -> BigInt {
        match self {
            Cf::S(v) => BigInt::from(*v),
            Cf::B(v) => v.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// exponent packing
// ---------------------------------------------------------------------------

/// Packs the `2n` exponents of a term into a single `u64`. Field widths are
/// sized from the isobaric weight bound `2 p^{n-1}`, so keys of two factors
/// add without cross-field carries.
#[derive(Clone, Debug)]
pub(crate) struct Packing {
    n: usize,
    shifts: Vec<u32>,
    widths: Vec<u32>,
}

impl Packing {
    fn new(p: u64, n: usize) -> Result<Packing> {
        let mut widths = Vec::with_capacity(2 * n);
        let wmax = 2u64 * p.pow((n - 1) as u32);
        for side in 0..2 {
            let _ = side;
            for i in 0..n {
                let bound = wmax / p.pow(i as u32);
                widths.push(64 - (bound + 1).leading_zeros());
            }
        }
        let total: u32 = widths.iter().sum();
        if total > 64 {
            return Err(Error::BadDescriptor(format!(
                "exponent packing needs {} bits; (p, n) = ({}, {}) too large",
                total, p, n
            )));
        }
        let mut shifts = Vec::with_capacity(2 * n);
        let mut acc = 0u32;
        for w in &widths {
            shifts.push(acc);
            acc += w;
        }
        Ok(Packing { n, shifts, widths })
    }

    #[inline]
    fn pack(&self, exps: &[u16]) -> u64 {
        let mut key = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            key |= (e as u64) << self.shifts[i];
        }
        key
    }

    pub(crate) fn unpack(&self, key: u64) -> Vec<u16> {
        (0..2 * self.n)
            .map(|i| ((key >> self.shifts[i]) & ((1u64 << self.widths[i]) - 1)) as u16)
            .collect()
    }

    /// Single variable monomial key: side 0 = x, side 1 = y.
    fn var_key(&self, side: usize, i: usize, exp: u64) -> u64 {
        exp << self.shifts[side * self.n + i]
    }
}

// ---------------------------------------------------------------------------
// packed sparse polynomials
// ---------------------------------------------------------------------------

#[derive(Default)]
struct IdHasher(u64);

impl Hasher for IdHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, _: &[u8]) {
        unreachable!("only u64 keys are hashed")
    }
    fn write_u64(&mut self, v: u64) {
        self.0 = v.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
}

type KeyMap = HashMap<u64, Cf, BuildHasherDefault<IdHasher>>;

/// Sorted packed-key sparse polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FPoly {
    pub(crate) terms: Vec<(u64, Cf)>,
}

impl FPoly {
    fn zero() -> FPoly {
        FPoly { terms: vec![] }
    }

    fn from_map(map: KeyMap) -> FPoly {
        let mut terms: Vec<(u64, Cf)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        FPoly { terms }
    }

    fn from_terms(mut terms: Vec<(u64, Cf)>) -> FPoly {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u64, Cf)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => lc.add_assign(&c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        FPoly { terms: out }
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    fn one() -> FPoly {
        FPoly { terms: vec![(0, Cf::S(1))] }
    }

    fn add(&self, other: &FPoly, budget: &mut BudgetState) -> Result<FPoly> {
        budget.charge((self.len() + other.len()) as u64, "merge")?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ka, ca) = &self.terms[i];
            let (kb, cb) = &other.terms[j];
            match ka.cmp(kb) {
                std::cmp::Ordering::Less => {
                    out.push((*ka, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*kb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((*ka, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(FPoly { terms: out })
    }

    fn scale_i128(&self, s: i128) -> FPoly {
        if s == 0 {
            return FPoly::zero();
        }
        FPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.mul(&Cf::S(s))))
                .collect(),
        }
    }

    fn mul(&self, other: &FPoly, budget: &mut BudgetState, what: &str) -> Result<FPoly> {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Ok(FPoly::zero());
        }
        budget.charge(self.len() as u64 * other.len() as u64, what)?;
        // multiply with the smaller operand outermost for cache locality
        let (a, b) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut map: KeyMap = KeyMap::with_capacity_and_hasher(
            (a.len() * b.len()).min(1 << 22),
            BuildHasherDefault::default(),
        );
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let key = ka + kb;
                let c = ca.mul(cb);
                match map.entry(key) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        e.get_mut().add_assign(&c);
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let out = FPoly::from_map(map);
        budget.check_terms(out.len(), what)?;
        Ok(out)
    }

    fn div_exact_pow(&self, p: u64, k: u32, what: &str) -> Result<FPoly> {
        if k == 0 {
            return Ok(self.clone());
        }
        let d = (p as i128).pow(k);
        let mut terms = Vec::with_capacity(self.len());
        for (key, c) in &self.terms {
            match c.div_exact(d) {
                Some(q) => terms.push((*key, q)),
                None => {
                    return Err(Error::IntegralityFailure(format!(
                        "{}: coefficient {} not divisible by {}^{}",
                        what,
                        c.to_bigint(),
                        p,
                        k
                    )))
                }
            }
        }
        Ok(FPoly { terms })
    }
}

fn sum_many(mut polys: Vec<FPoly>, budget: &mut BudgetState) -> Result<FPoly> {
    if polys.is_empty() {
        return Ok(FPoly::zero());
    }
    // fold smallest-first to keep merges cheap
    polys.sort_by_key(|p| std::cmp::Reverse(p.len()));
    let mut acc = polys.pop().unwrap();
    while let Some(p) = polys.pop() {
        acc = acc.add(&p, budget)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// derivation
// ---------------------------------------------------------------------------

/// Ladder of powers `base^1, base^2, ..` extended on demand.
struct PowLadder {
    powers: Vec<FPoly>, // powers[e-1] = base^e
}

impl PowLadder {
    fn new(base: FPoly) -> PowLadder {
        PowLadder { powers: vec![base] }
    }
    fn get(&mut self, e: u32, budget: &mut BudgetState, what: &str) -> Result<&FPoly> {
        while self.powers.len() < e as usize {
            let next = {
                let last = &self.powers[self.powers.len() - 1];
                let base = &self.powers[0];
                last.mul(base, budget, what)?
            };
            self.powers.push(next);
        }
        Ok(&self.powers[e as usize - 1])
    }
}

/// Advance to the next vector with the same coordinate sum, odometer-style
/// over the head entries with the tail slot absorbing the remainder.
/// Starting from `(0, .., 0, e)` this visits every composition of `e` once.
fn next_composition(alpha: &mut [u32]) -> bool {
    let n = alpha.len();
    if n == 1 {
        return false;
    }
    let e: u32 = alpha.iter().sum();
    let mut j = n - 2;
    loop {
        alpha[j] += 1;
        let head: u32 = alpha[..n - 1].iter().sum();
        if head <= e {
            alpha[n - 1] = e - head;
            return true;
        }
        alpha[j] = 0;
        if j == 0 {
            return false;
        }
        j -= 1;
    }
}

/// Above this many terms, powers of a solved member are expanded over its
/// numerator summands instead of by direct multiplication.
const PIECES_THRESHOLD: usize = 3000;

struct FamilyCtx {
    p: u64,
    n: usize,
    fam: Family,
    packing: Packing,
    solved: Vec<FPoly>,
    ladders: Vec<PowLadder>,
    target_ladders: Vec<PowLadder>,
}

impl FamilyCtx {
    /// Ghost target at level k: Sum `w_k(x)+w_k(y)`, Prod `w_k(x)w_k(y)`,
    /// Neg `-w_k(x)`.
    fn ghost_target(&self, k: usize) -> FPoly {
        let p = self.p;
        let ghost_side = |side: usize| -> Vec<(u64, Cf)> {
            (0..=k)
                .map(|i| {
                    (
                        self.packing.var_key(side, i, p.pow((k - i) as u32) as u64),
                        Cf::S((p as i128).pow(i as u32)),
                    )
                })
                .collect()
        };
        match self.fam {
            Family::Sum => {
                let mut t = ghost_side(0);
                t.extend(ghost_side(1));
                FPoly::from_terms(t)
            }
            Family::Neg => FPoly::from_terms(
                ghost_side(0).into_iter().map(|(k, c)| (k, c.neg())).collect(),
            ),
            Family::Prod => {
                let a = ghost_side(0);
                let b = ghost_side(1);
                let mut t = Vec::with_capacity(a.len() * b.len());
                for (ka, ca) in &a {
                    for (kb, cb) in &b {
                        t.push((ka + kb, ca.mul(cb)));
                    }
                }
                FPoly::from_terms(t)
            }
        }
    }

    /// `solved[i]^e`, routed through the numerator-summand expansion when the
    /// member is large and the exponent small.
    fn member_power(&mut self, i: usize, e: u32, budget: &mut BudgetState) -> Result<FPoly> {
        if e == 1 {
            return Ok(self.solved[i].clone());
        }
        if self.solved[i].len() > PIECES_THRESHOLD && e <= self.p as u32 && i > 0 {
            return self.member_power_via_pieces(i, e, budget);
        }
        Ok(self.ladders[i].get(e, budget, "power ladder")?.clone())
    }

    /// `solved[i]^e = (target_i - sum_{j<i} p^j solved[j]^{p^{i-j}})^e / p^{ie}`
    /// expanded multinomially over the `i+1` numerator summands.
    fn member_power_via_pieces(&mut self, i: usize, e: u32, budget: &mut BudgetState) -> Result<FPoly> {
        // piece 0 = ghost target, piece j+1 = -p^j solved[j]^{p^{i-j}}
        let npieces = i + 1;
        let mut alpha = vec![0u32; npieces];
        alpha[npieces - 1] = e;
        let mut products: Vec<FPoly> = vec![];
        loop {
            // multinomial coefficient e! / prod alpha_j!
            let mut coeff: i128 = 1;
            {
                let mut left = e;
                for &a in alpha.iter() {
                    let mut c: i128 = 1;
                    for t in 0..a {
                        c = c * (left - t) as i128 / (t + 1) as i128;
                    }
                    coeff *= c;
                    left -= a;
                }
            }

            // assemble the product for this composition
            let mut factors: Vec<FPoly> = vec![];
            let mut scale: i128 = coeff;
            for (j, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if j == 0 {
                    let pw = self.target_ladders[i].get(a, budget, "target power")?.clone();
                    factors.push(pw);
                } else {
                    let src = j - 1;
                    let exp = (self.p.pow((i - src) as u32) as u32) * a;
                    let pw = self.member_power(src, exp, budget)?;
                    let sgn = if a % 2 == 1 { -1i128 } else { 1i128 };
                    scale *= sgn * (self.p as i128).pow((src as u32) * a);
                    factors.push(pw);
                }
            }
            // multiply smallest-first
            factors.sort_by_key(|f| f.len());
            let mut prod = FPoly::one().scale_i128(scale);
            for f in &factors {
                prod = prod.mul(f, budget, "piece product")?;
            }
            products.push(prod);

            if !next_composition(&mut alpha) {
                break;
            }
        }
        let num = sum_many(products, budget)?;
        num.div_exact_pow(self.p, i as u32 * e, "piece power division")
    }

    fn solve(&mut self, k: usize, budget: &mut BudgetState) -> Result<()> {
        let target = self.ghost_target(k);
        self.target_ladders.push(PowLadder::new(target.clone()));
        let mut summands = vec![target];
        for i in 0..k {
            let e = self.p.pow((k - i) as u32) as u32;
            let pw = self.member_power(i, e, budget)?;
            summands.push(pw.scale_i128(-(self.p as i128).pow(i as u32)));
        }
        let numerator = sum_many(summands, budget)?;
        let zk = numerator.div_exact_pow(self.p, k as u32, &format!("{:?}[{}]", self.fam, k))?;
        budget.check_terms(zk.len(), &format!("{:?}[{}]", self.fam, k))?;
        self.ladders.push(PowLadder::new(zk.clone()));
        self.solved.push(zk);
        Ok(())
    }
}

/// The universal Witt polynomials for a fixed prime and length, exact.
pub struct UniversalWittPolys {
    pub p: u64,
    pub n: usize,
    packing: Packing,
    sum: Vec<FPoly>,
    prod: Vec<FPoly>,
    neg: Vec<FPoly>,
}

impl UniversalWittPolys {
    /// Derive with an explicit budget (uncached).
    pub fn derive_with_budget(p: u64, n: usize, limit: &DeriveBudget) -> Result<UniversalWittPolys> {
        if n == 0 {
            return Err(Error::BadDescriptor("length must be >= 1".into()));
        }
        let packing = Packing::new(p, n)?;
        let mut budget = BudgetState { limit: limit.clone(), ops: 0 };
        let mut run = |fam: Family| -> Result<Vec<FPoly>> {
            let mut ctx = FamilyCtx {
                p,
                n,
                fam,
                packing: packing.clone(),
                solved: vec![],
                ladders: vec![],
                target_ladders: vec![],
            };
            for k in 0..n {
                ctx.solve(k, &mut budget)?;
            }
            Ok(ctx.solved)
        };
        let sum = run(Family::Sum)?;
        let neg = run(Family::Neg)?;
        let prod = run(Family::Prod)?;
        Ok(UniversalWittPolys { p, n, packing, sum, prod, neg })
    }

    /// Derive (or fetch from the per-(p, n) cache).
    pub fn derive(p: u64, n: usize) -> Result<Arc<UniversalWittPolys>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<UniversalWittPolys>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&(p, n)) {
            return Ok(hit.clone());
        }
        let polys = Arc::new(Self::derive_with_budget(p, n, &DeriveBudget::default())?);
        cache.lock().unwrap().insert((p, n), polys.clone());
        Ok(polys)
    }

    pub(crate) fn family(&self, fam: Family) -> &[FPoly] {
        match fam {
            Family::Sum => &self.sum,
            Family::Prod => &self.prod,
            Family::Neg => &self.neg,
        }
    }

    /// Number of terms in each member, `(sum, prod, neg)` per level.
    pub fn term_counts(&self) -> Vec<(usize, usize, usize)> {
        (0..self.n)
            .map(|k| (self.sum[k].len(), self.prod[k].len(), self.neg[k].len()))
            .collect()
    }

    /// Terms of a member as `(exponents, coefficient)` with exponents listed
    /// `x_0..x_{n-1}, y_0..y_{n-1}`.
    pub fn terms(&self, fam: Family, k: usize) -> Vec<(Vec<u16>, BigInt)> {
        self.family(fam)[k]
            .terms
            .iter()
            .map(|(key, c)| (self.packing.unpack(*key), c.to_bigint()))
            .collect()
    }

    /// Member as a general integer polynomial in `2n` variables.
    pub fn to_intpoly(&self, fam: Family, k: usize) -> IntPoly {
        IntPoly::from_terms(2 * self.n, self.terms(fam, k))
    }

    /// Independent symbolic verification of the ghost identities:
    /// re-expands `w_k` of the solved vector and compares with the target,
    /// term by term, as exact integer polynomials.
    pub fn verify_ghost_identities(&self, limit: &DeriveBudget) -> Result<()> {
        let mut budget = BudgetState { limit: limit.clone(), ops: 0 };
        for fam in [Family::Sum, Family::Neg, Family::Prod] {
            let mut ctx = FamilyCtx {
                p: self.p,
                n: self.n,
                fam,
                packing: self.packing.clone(),
                solved: self.family(fam).to_vec(),
                ladders: self.family(fam).iter().map(|z| PowLadder::new(z.clone())).collect(),
                target_ladders: (0..self.n)
                    .map(|_| PowLadder::new(FPoly::one()))
                    .collect(),
            };
            for k in 0..self.n {
                // rebuild target ladder entries lazily: replace placeholder
                ctx.target_ladders[k] = PowLadder::new(ctx.ghost_target(k));
            }
            for k in 0..self.n {
                let mut summands = Vec::with_capacity(k + 1);
                for i in 0..=k {
                    let e = self.p.pow((k - i) as u32) as u32;
                    let pw = ctx.member_power(i, e, &mut budget)?;
                    summands.push(pw.scale_i128((self.p as i128).pow(i as u32)));
                }
                let lhs = sum_many(summands, &mut budget)?;
                let rhs = ctx.ghost_target(k);
                if lhs != rhs {
                    return Err(Error::IntegralityFailure(format!(
                        "ghost identity fails for {:?} at level {}",
                        fam, k
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_str(u: &UniversalWittPolys, fam: Family, k: usize) -> String {
        u.to_intpoly(fam, k).to_string()
    }

    #[test]
    fn s1_p2_matches_hand_solve() {
        let u = UniversalWittPolys::derive(2, 2).unwrap();
        // S_0 = x0 + y0, S_1 = x1 + y1 - x0 y0 (vars: x0 x1 y0 y1)
        assert_eq!(poly_str(&u, Family::Sum, 0), "x2 + x0");
        assert_eq!(poly_str(&u, Family::Sum, 1), "x3 + x1 - x0*x2");
        assert_eq!(poly_str(&u, Family::Prod, 0), "x0*x2");
    }

    #[test]
    fn p1_p3_matches_hand_solve() {
        let u = UniversalWittPolys::derive(3, 2).unwrap();
        // P_1 = x0^3 y1 + x1 y0^3 + 3 x1 y1
        assert_eq!(poly_str(&u, Family::Prod, 1), "3*x1*x3 + x1*x2^3 + x0^3*x3");
    }

    #[test]
    fn neg_p2_level1() {
        let u = UniversalWittPolys::derive(2, 3).unwrap();
        // N_0 = -x0 = x0 in char 2 context; exact: N_0 = -x0.
        assert_eq!(poly_str(&u, Family::Neg, 0), "-x0");
        // check -x + x = 0 symbolically at ghost level via verify
        u.verify_ghost_identities(&DeriveBudget::default()).unwrap();
    }

    #[test]
    fn verify_small_grid() {
        for (p, n) in [(2u64, 4usize), (3, 3), (5, 2)] {
            let u = UniversalWittPolys::derive(p, n).unwrap();
            u.verify_ghost_identities(&DeriveBudget::default()).unwrap();
        }
    }

    #[test]
    fn budget_aborts_cleanly() {
        let tiny = DeriveBudget { max_terms_per_poly: 10, max_coeff_ops: 1000 };
        match UniversalWittPolys::derive_with_budget(3, 4, &tiny) {
            Err(Error::ResourceBudget(_)) => {}
            Err(e) => panic!("unexpected error: {e}"),
            Ok(_) => panic!("expected budget abort"),
        }
    }
}
