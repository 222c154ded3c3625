//! Ghost-coordinate evaluation through a p-torsion-free cover.
//!
//! Every supported coefficient ring R has a canonical surjection from a
//! p-torsion-free ring T (integer polynomials map to themselves, residue
//! rings lift digits, quotient rings lift coefficientwise). The ghost map
//! is injective on W_n(T), so a Witt operation can be computed by lifting
//! the coordinates, combining ghost vectors in T, solving the coordinates
//! back with exact divisions by p^k, and projecting to R. The divisions
//! are checked; a failure would signal a broken lift and is reported as
//! an integrality failure rather than silently truncated.
//!
//! This is the crate's second, structurally independent route to the Witt
//! ring operations (the first evaluates the derived universal polynomials).

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::rings::{Ring, RingElem, RingKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of the torsion-free cover of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LiftElem {
    /// Cover of Z/p^m: the integers.
    Z(BigInt),
    /// Cover of Z[vars]: itself.
    Poly(IntPoly),
    /// Cover of F_{p^f}: Z[a]/(monic integer lift of the modulus).
    Fq { coeffs: Vec<BigInt>, modulus: Vec<i64>, },
    /// Cover of a monomial quotient: same monomial basis over the base cover.
    Quot(Vec<LiftElem>),
}

impl LiftElem {
    fn zero_like(&self) -> LiftElem {
        match self {
            LiftElem::Z(_) => LiftElem::Z(BigInt::zero()),
            LiftElem::Poly(p) => LiftElem::Poly(IntPoly::zero(p.nvars())),
            LiftElem::Fq { coeffs, modulus } => LiftElem::Fq {
                coeffs: vec![BigInt::zero(); coeffs.len()],
                modulus: modulus.clone(),
            },
            LiftElem::Quot(c) => LiftElem::Quot(c.iter().map(|x| x.zero_like()).collect()),
        }
    }

    fn add(&self, o: &LiftElem) -> LiftElem {
        match (self, o) {
            (LiftElem::Z(a), LiftElem::Z(b)) => LiftElem::Z(a + b),
            (LiftElem::Poly(a), LiftElem::Poly(b)) => LiftElem::Poly(a.add(b)),
            (LiftElem::Fq { coeffs: a, modulus }, LiftElem::Fq { coeffs: b, .. }) => LiftElem::Fq {
                coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                modulus: modulus.clone(),
            },
            (LiftElem::Quot(a), LiftElem::Quot(b)) => {
                LiftElem::Quot(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            _ => unreachable!("mixed lift shapes"),
        }
    }

    fn neg(&self) -> LiftElem {
        match self {
            LiftElem::Z(a) => LiftElem::Z(-a),
            LiftElem::Poly(a) => LiftElem::Poly(a.neg()),
            LiftElem::Fq { coeffs, modulus } => LiftElem::Fq {
                coeffs: coeffs.iter().map(|x| -x).collect(),
                modulus: modulus.clone(),
            },
            LiftElem::Quot(a) => LiftElem::Quot(a.iter().map(|x| x.neg()).collect()),
        }
    }

    fn sub(&self, o: &LiftElem) -> LiftElem {
        self.add(&o.neg())
    }

    fn mul(&self, o: &LiftElem, quot_shape: Option<&Ring>) -> LiftElem {
        match (self, o) {
            (LiftElem::Z(a), LiftElem::Z(b)) => LiftElem::Z(a * b),
            (LiftElem::Poly(a), LiftElem::Poly(b)) => LiftElem::Poly(a.mul(b)),
            (LiftElem::Fq { coeffs: a, modulus }, LiftElem::Fq { coeffs: b, .. }) => {
                // schoolbook multiply then reduce by the monic integer modulus
                let f = a.len();
                let mut prod = vec![BigInt::zero(); 2 * f - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                for d in (f..prod.len()).rev() {
                    let lead = std::mem::replace(&mut prod[d], BigInt::zero());
                    if lead.is_zero() {
                        continue;
                    }
                    for (i, &mc) in modulus.iter().take(f).enumerate() {
                        // x^d = x^{d-f} * (x^f) = x^{d-f} * (-sum mc_i x^i)
                        prod[d - f + i] -= &lead * BigInt::from(mc);
                    }
                }
                prod.truncate(f);
                LiftElem::Fq { coeffs: prod, modulus: modulus.clone() }
            }
            (LiftElem::Quot(a), LiftElem::Quot(b)) => {
                let ring = quot_shape.expect("quotient multiplication needs the ring shape");
                let (basis, relations, base) = match ring.kind() {
                    RingKind::MonomialQuotient { basis, relations, base, .. } => (basis, relations, base),
                    _ => unreachable!(),
                };
                let base_ring_ref: Option<&Ring> = match base.kind() {
                    RingKind::MonomialQuotient { .. } => Some(base),
                    _ => None,
                };
                let mut out: Vec<LiftElem> = a.iter().map(|x| x.zero_like()).collect();
                for (i, ca) in a.iter().enumerate() {
                    for (j, cb) in b.iter().enumerate() {
                        let m: Vec<u16> = basis[i].iter().zip(&basis[j]).map(|(&x, &y)| x + y).collect();
                        if relations.iter().any(|r| r.iter().zip(&m).all(|(&x, &y)| y >= x)) {
                            continue;
                        }
                        let pos = basis.binary_search(&m).expect("surviving monomial");
                        let prod = ca.mul(cb, base_ring_ref);
                        out[pos] = out[pos].add(&prod);
                    }
                }
                LiftElem::Quot(out)
            }
            _ => unreachable!("mixed lift shapes"),
        }
    }

    fn scale(&self, s: &BigInt) -> LiftElem {
        match self {
            LiftElem::Z(a) => LiftElem::Z(a * s),
            LiftElem::Poly(a) => LiftElem::Poly(a.scale(s)),
            LiftElem::Fq { coeffs, modulus } => LiftElem::Fq {
                coeffs: coeffs.iter().map(|x| x * s).collect(),
                modulus: modulus.clone(),
            },
            LiftElem::Quot(a) => LiftElem::Quot(a.iter().map(|x| x.scale(s)).collect()),
        }
    }

    fn div_exact(&self, d: &BigInt) -> Option<LiftElem> {
        match self {
            LiftElem::Z(a) => {
                let (q, r) = a.div_rem(d);
                if r.is_zero() {
                    Some(LiftElem::Z(q))
                } else {
                    None
                }
            }
            LiftElem::Poly(a) => a.div_exact(d).map(LiftElem::Poly),
            LiftElem::Fq { coeffs, modulus } => {
                let mut out = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    let (q, r) = c.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    out.push(q);
                }
                Some(LiftElem::Fq { coeffs: out, modulus: modulus.clone() })
            }
            LiftElem::Quot(a) => {
                let mut out = Vec::with_capacity(a.len());
                for c in a {
                    out.push(c.div_exact(d)?);
                }
                Some(LiftElem::Quot(out))
            }
        }
    }

    fn pow(&self, e: u64, quot_shape: Option<&Ring>) -> LiftElem {
        if e == 0 {
            return lift_one_like(self);
        }
        let mut acc: Option<LiftElem> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, quot_shape),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, quot_shape);
            }
        }
        acc.expect("e > 0")
    }
}

fn lift_one_like(shape: &LiftElem) -> LiftElem {
    match shape {
        LiftElem::Z(_) => LiftElem::Z(BigInt::one()),
        LiftElem::Poly(p) => LiftElem::Poly(IntPoly::one(p.nvars())),
        LiftElem::Fq { coeffs, modulus } => {
            let mut c = vec![BigInt::zero(); coeffs.len()];
            c[0] = BigInt::one();
            LiftElem::Fq { coeffs: c, modulus: modulus.clone() }
        }
        LiftElem::Quot(c) => {
            let mut out: Vec<LiftElem> = c.iter().map(|x| x.zero_like()).collect();
            out[0] = lift_one_like(&c[0]);
            LiftElem::Quot(out)
        }
    }
}

/// Canonical digit lift R -> T.
pub(crate) fn lift(elem: &RingElem) -> LiftElem {
    match elem.ring().kind() {
        RingKind::FiniteField { modulus, .. } => {
            let coeffs = elem
                .fq_coeffs()
                .expect("payload matches ring")
                .iter()
                .map(|&c| BigInt::from(c))
                .collect();
            LiftElem::Fq {
                coeffs,
                modulus: modulus.iter().map(|&c| c as i64).collect(),
            }
        }
        RingKind::ZmodPM { .. } => LiftElem::Z(BigInt::from(elem.zq_residue().expect("payload"))),
        RingKind::MonomialQuotient { .. } => LiftElem::Quot(
            elem.quot_coeffs()
                .expect("payload")
                .iter()
                .map(lift)
                .collect(),
        ),
        RingKind::IntegerPoly { .. } => LiftElem::Poly(elem.int_poly().expect("payload").clone()),
    }
}

/// Projection T -> R.
pub(crate) fn project(ring: &Ring, elem: &LiftElem) -> RingElem {
    match (ring.kind(), elem) {
        (RingKind::FiniteField { p, .. }, LiftElem::Fq { coeffs, .. }) => {
            let v: Vec<u64> = coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&BigInt::from(*p));
                    r.to_u64().expect("residue fits")
                })
                .collect();
            RingElem::from_fq_coeffs(ring, v).expect("shape matches")
        }
        (RingKind::ZmodPM { .. }, LiftElem::Z(v)) => ring.from_int(v),
        (RingKind::MonomialQuotient { base, .. }, LiftElem::Quot(c)) => {
            let coeffs = c.iter().map(|x| project(base, x)).collect();
            RingElem::from_quot_coeffs(ring, coeffs).expect("shape matches")
        }
        (RingKind::IntegerPoly { .. }, LiftElem::Poly(p)) => {
            RingElem::from_int_poly(ring, p.clone()).expect("shape matches")
        }
        _ => unreachable!("lift shape mismatch"),
    }
}

fn quot_shape(ring: &Ring) -> Option<&Ring> {
    match ring.kind() {
        RingKind::MonomialQuotient { .. } => Some(ring),
        _ => None,
    }
}

/// Ghost vector of lifted coordinates: `g_k = sum_i p^i t_i^{p^{k-i}}`.
fn ghost_vector(p: u64, coords: &[LiftElem], ring: &Ring) -> Vec<LiftElem> {
    let n = coords.len();
    let qs = quot_shape(ring);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc: Option<LiftElem> = None;
        for (i, c) in coords.iter().take(k + 1).enumerate() {
            let e = p.pow((k - i) as u32);
            let t = c.pow(e, qs).scale(&BigInt::from(p).pow(i as u32));
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        out.push(acc.expect("k+1 >= 1 summands"));
    }
    out
}

/// Solve coordinates back from a ghost vector known to lie in the image of
/// the ghost map, with checked exact divisions.
fn unghost(p: u64, ghosts: &[LiftElem], ring: &Ring) -> Result<Vec<LiftElem>> {
    let qs = quot_shape(ring);
    let mut coords: Vec<LiftElem> = Vec::with_capacity(ghosts.len());
    for (k, g) in ghosts.iter().enumerate() {
        let mut rem = g.clone();
        for (i, z) in coords.iter().enumerate() {
            let e = p.pow((k - i) as u32);
            rem = rem.sub(&z.pow(e, qs).scale(&BigInt::from(p).pow(i as u32)));
        }
        let z = rem
            .div_exact(&BigInt::from(p).pow(k as u32))
            .ok_or_else(|| {
                Error::IntegralityFailure(format!("ghost solve not divisible by {}^{}", p, k))
            })?;
        coords.push(z);
    }
    Ok(coords)
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum LiftOp {
    Add,
    Mul,
    Neg,
    Sub,
    /// Frobenius: output length n-1, ghost `g_k = w_{k+1}(x)`.
    Frob,
}

/// Perform a Witt-ring operation on coordinate vectors via the cover.
pub(crate) fn witt_op_via_lift(
    p: u64,
    op: LiftOp,
    xs: &[RingElem],
    ys: Option<&[RingElem]>,
    ring: &Ring,
) -> Result<Vec<RingElem>> {
    let lx: Vec<LiftElem> = xs.iter().map(lift).collect();
    let gx = ghost_vector(p, &lx, ring);
    let target: Vec<LiftElem> = match op {
        LiftOp::Neg => gx.iter().map(|g| g.neg()).collect(),
        LiftOp::Frob => {
            if gx.len() < 2 {
                return Err(Error::LengthUnderflow(
                    "Frobenius needs length >= 2".into(),
                ));
            }
            gx[1..].to_vec()
        }
        LiftOp::Add | LiftOp::Mul | LiftOp::Sub => {
            let ly: Vec<LiftElem> = ys.expect("binary op").iter().map(lift).collect();
            let gy = ghost_vector(p, &ly, ring);
            gx.iter()
                .zip(&gy)
                .map(|(a, b)| match op {
                    LiftOp::Add => a.add(b),
                    LiftOp::Sub => a.sub(b),
                    LiftOp::Mul => a.mul(b, quot_shape(ring)),
                    _ => unreachable!(),
                })
                .collect()
        }
    };
    let coords = unghost(p, &target, ring)?;
    Ok(coords.iter().map(|c| project(ring, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_one_plus_one_in_w2_f2() {
        let f2 = Ring::finite_field(2, 1).unwrap();
        let one = f2.one();
        let zero = f2.zero();
        let out = witt_op_via_lift(
            2,
            LiftOp::Add,
            &[one.clone(), zero.clone()],
            Some(&[one.clone(), zero.clone()]),
            &f2,
        )
        .unwrap();
        // (1,0) + (1,0) = (0,1): S_1 = x1 + y1 - x0 y0 = -1 = 1 mod 2
        assert!(out[0].is_zero());
        assert!(out[1].is_one());
    }

    #[test]
    fn mul_matches_universal_small() {
        use crate::witt::universal::{Family, UniversalWittPolys};
        let z9 = Ring::zmod_pm(3, 2).unwrap();
        let u = UniversalWittPolys::derive(3, 3).unwrap();
        let elems: Vec<_> = (0..9u128).map(|i| z9.element_by_index(i).unwrap()).collect();
        for a in 0..9usize {
            for b in 0..9usize {
                let x = [elems[a].clone(), elems[(a + 3) % 9].clone(), elems[(a + 7) % 9].clone()];
                let y = [elems[b].clone(), elems[(b + 5) % 9].clone(), elems[(b + 2) % 9].clone()];
                let via_lift =
                    witt_op_via_lift(3, LiftOp::Mul, &x, Some(&y), &z9).unwrap();
                // evaluate universal polynomials directly
                let vals: Vec<RingElem> = x.iter().chain(y.iter()).cloned().collect();
                for k in 0..3 {
                    let poly = u.to_intpoly(Family::Prod, k);
                    // pad inputs from length 3 to 2n = 6 variables
                    let direct = poly.eval_with(
                        &vals,
                        |a, b| a.add(b).unwrap(),
                        |a, b| a.mul(b).unwrap(),
                        |c| z9.from_int(c),
                    );
                    assert_eq!(direct, via_lift[k]);
                }
            }
        }
    }
}
