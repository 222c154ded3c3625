//! Group-theoretic data: the matrix group with a minuscule 0/1 weight
//! vector, optional polynomial-cut subgroups with a Lie-algebra basis, the
//! parabolic/unipotent block structure the weights induce, the subgroup of
//! Witt points whose reduction is parabolic, and the divided Frobenius.
//!
//! Conventions: `weights[i]` is the exponent of the cocharacter on the i-th
//! basis vector. Position `(i, j)` has weight `weights[i] - weights[j]`
//! under conjugation; the value `-1` marks the opposite-unipotent block
//! (upper right when the weight vector is sorted `0^d 1^{h-d}`), value
//! `>= 0` the parabolic block.

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::matw::MatW;
use crate::rings::{Ring, RingElem};
use crate::witt::WittVec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The pair (matrix group, minuscule weight vector), with optional closed
/// subgroup equations in the h^2 matrix entries and an integer Lie basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    h: usize,
    weights: Vec<u8>,
    subgroup_eqs: Vec<IntPoly>,
    lie_basis: Vec<Vec<i64>>, // each an h*h integer matrix, row-major
}

impl GroupSpec {
    /// Full GL_h with the sorted minuscule weight vector `0^d 1^{h-d}`.
    pub fn gl(h: usize, d: usize) -> Result<GroupSpec> {
        if d > h || h == 0 {
            return Err(Error::BadDescriptor("need 0 <= d <= h, h >= 1".into()));
        }
        let mut weights = vec![0u8; h];
        for w in weights.iter_mut().skip(d) {
            *w = 1;
        }
        GroupSpec::with_weights(h, weights)
    }

    /// Full GL_h with an arbitrary 0/1 weight vector.
    pub fn with_weights(h: usize, weights: Vec<u8>) -> Result<GroupSpec> {
        if weights.len() != h {
            return Err(Error::BadDescriptor("weight vector length mismatch".into()));
        }
        if weights.iter().any(|&w| w > 1) {
            return Err(Error::BadDescriptor(
                "weights must lie in {0, 1} (minuscule)".into(),
            ));
        }
        let lie_basis = full_gl_basis(h);
        Ok(GroupSpec { h, weights, subgroup_eqs: vec![], lie_basis })
    }

    /// Attach subgroup equations (integer polynomials in the h^2 entries,
    /// row-major variables) and a Lie basis (h x h integer matrices).
    pub fn with_subgroup(
        mut self,
        eqs: Vec<IntPoly>,
        lie_basis: Vec<Vec<i64>>,
    ) -> Result<GroupSpec> {
        for e in &eqs {
            if e.nvars() != self.h * self.h {
                return Err(Error::BadDescriptor(
                    "subgroup equation must have h^2 variables".into(),
                ));
            }
        }
        for b in &lie_basis {
            if b.len() != self.h * self.h {
                return Err(Error::BadDescriptor("Lie basis matrix size mismatch".into()));
            }
        }
        if lie_basis.is_empty() {
            return Err(Error::BadDescriptor("subgroup needs a Lie basis".into()));
        }
        check_bracket_closure(&lie_basis, self.h)?;
        self.subgroup_eqs = eqs;
        self.lie_basis = lie_basis;
        Ok(self)
    }

    /// SL_h: determinant = 1, traceless Lie basis.
    pub fn sl(h: usize, d: usize) -> Result<GroupSpec> {
        let spec = GroupSpec::gl(h, d)?;
        let det = det_polynomial(h);
        let eq = det.sub(&IntPoly::one(h * h));
        let mut basis = vec![];
        for i in 0..h {
            for j in 0..h {
                if i != j {
                    let mut m = vec![0i64; h * h];
                    m[i * h + j] = 1;
                    basis.push(m);
                }
            }
        }
        for i in 0..h - 1 {
            let mut m = vec![0i64; h * h];
            m[i * h + i] = 1;
            m[(i + 1) * h + (i + 1)] = -1;
            basis.push(m);
        }
        spec.with_subgroup(vec![eq], basis)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    /// Multiplicity of weight 0.
    pub fn d(&self) -> usize {
        self.weights.iter().filter(|&&w| w == 0).count()
    }

    pub fn subgroup_eqs(&self) -> &[IntPoly] {
        &self.subgroup_eqs
    }

    pub fn has_subgroup_eqs(&self) -> bool {
        !self.subgroup_eqs.is_empty()
    }

    pub fn lie_basis(&self) -> &[Vec<i64>] {
        &self.lie_basis
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_basis.len()
    }

    /// Weight of position (i, j) under conjugation by the cocharacter.
    pub fn position_weight(&self, i: usize, j: usize) -> i8 {
        self.weights[i] as i8 - self.weights[j] as i8
    }

    /// Positions with weight -1 (the opposite-unipotent block).
    pub fn u_minus_positions(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for i in 0..self.h {
            for j in 0..self.h {
                if self.position_weight(i, j) == -1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Forget the subgroup constraint, keeping size and weights.
    pub fn ambient_gl(&self) -> GroupSpec {
        GroupSpec {
            h: self.h,
            weights: self.weights.clone(),
            subgroup_eqs: vec![],
            lie_basis: full_gl_basis(self.h),
        }
    }

    /// The cocharacter value at p: `diag(p^{w_i})` in `W_n(R)`.
    pub fn mu_p_matrix(&self, p: u64, ring: &Ring, n: usize) -> Result<MatW> {
        let exps: Vec<usize> = self.weights.iter().map(|&w| w as usize).collect();
        MatW::diag_p_powers(p, ring, n, &exps)
    }

    /// Rational solver for coordinates in the Lie basis: a `dim x h^2`
    /// matrix T over Q with `T . vec(X) = coords(X)` for X in the span.
    /// Returns an error if no left inverse exists.
    pub fn lie_coordinate_solver(&self) -> Result<Vec<Vec<BigRational>>> {
        let dim = self.lie_basis.len();
        let m = self.h * self.h;
        // Solve B^T T^T = I_dim in the least-squares-free exact sense:
        // row-reduce the m x dim matrix B^T with an identity tail.
        // B^T columns = basis matrices as vectors.
        let mut a: Vec<Vec<BigRational>> = (0..m)
            .map(|r| {
                (0..dim)
                    .map(|c| BigRational::from_integer(BigInt::from(self.lie_basis[c][r])))
                    .collect()
            })
            .collect();
        // augment with the identity on the coordinate side: track row ops
        let mut t: Vec<Vec<BigRational>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| {
                        if r == c {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut row = 0;
        let mut pivots = vec![];
        for col in 0..dim {
            let piv = (row..m).find(|&r| !a[r][col].is_zero());
            let piv = match piv {
                Some(p) => p,
                None => return Err(Error::BadDescriptor("Lie basis is linearly dependent".into())),
            };
            a.swap(row, piv);
            t.swap(row, piv);
            let inv = a[row][col].clone();
            for c in 0..dim {
                a[row][c] = &a[row][c] / &inv;
            }
            for c in 0..m {
                t[row][c] = &t[row][c] / &inv;
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..dim {
                        let sub = &f * &a[row][c];
                        a[r][c] = &a[r][c] - &sub;
                    }
                    for c in 0..m {
                        let sub = &f * &t[row][c];
                        t[r][c] = &t[r][c] - &sub;
                    }
                }
            }
            pivots.push(row);
            row += 1;
        }
        Ok(pivots.into_iter().map(|r| t[r].clone()).collect())
    }
}

fn full_gl_basis(h: usize) -> Vec<Vec<i64>> {
    let mut basis = vec![];
    for i in 0..h {
        for j in 0..h {
            let mut m = vec![0i64; h * h];
            m[i * h + j] = 1;
            basis.push(m);
        }
    }
    basis
}

/// Leibniz determinant as an integer polynomial in h^2 entries (row-major).
pub fn det_polynomial(h: usize) -> IntPoly {
    let nv = h * h;
    let mut acc = IntPoly::zero(nv);
    let mut perm: Vec<usize> = (0..h).collect();
    loop {
        // sign of perm
        let mut sign = 1i64;
        {
            let mut seen = vec![false; h];
            for s in 0..h {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut c = s;
                while !seen[c] {
                    seen[c] = true;
                    c = perm[c];
                    len += 1;
                }
                if len % 2 == 0 {
                    sign = -sign;
                }
            }
        }
        let mut exps = vec![0u16; nv];
        for (i, &j) in perm.iter().enumerate() {
            exps[i * h + j] += 1;
        }
        acc = acc.add(&IntPoly::monomial(nv, exps, sign));
        // next permutation
        if !next_permutation(&mut perm) {
            break;
        }
    }
    acc
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Bracket closure check on basis pairs: `[b_i, b_j]` must lie in the
/// rational span of the basis.
fn check_bracket_closure(basis: &[Vec<i64>], h: usize) -> Result<()> {
    let dim = basis.len();
    let to_rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    // row space of basis as rational row-echelon form
    let mut rows: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|b| b.iter().map(|&v| to_rat(v)).collect())
        .collect();
    let m = h * h;
    let mut pivots: Vec<usize> = vec![];
    let mut r = 0;
    for c in 0..m {
        if let Some(pr) = (r..dim).find(|&i| !rows[i][c].is_zero()) {
            rows.swap(r, pr);
            let inv = rows[r][c].clone();
            for x in rows[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..dim {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for cc in 0..m {
                        let sub = &f * &rows[r][cc];
                        rows[i][cc] = &rows[i][cc] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == dim {
                break;
            }
        }
    }
    let in_span = |v: &[BigRational]| -> bool {
        let mut v = v.to_vec();
        for (ri, &pc) in pivots.iter().enumerate() {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for c in 0..m {
                    let sub = &f * &rows[ri][c];
                    v[c] = &v[c] - &sub;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    };
    let mat_mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; h * h];
        for i in 0..h {
            for j in 0..h {
                let mut acc = 0i64;
                for k in 0..h {
                    acc += a[i * h + k] * b[k * h + j];
                }
                out[i * h + j] = acc;
            }
        }
        out
    };
    for a in basis {
        for b in basis {
            let ab = mat_mul(a, b);
            let ba = mat_mul(b, a);
            let bracket: Vec<BigRational> = ab
                .iter()
                .zip(&ba)
                .map(|(&x, &y)| to_rat(x - y))
                .collect();
            if !in_span(&bracket) {
                return Err(Error::BadDescriptor(
                    "Lie basis is not closed under the bracket".into(),
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// parabolic and subgroup membership
// ---------------------------------------------------------------------------

/// Does the residue matrix lie in the parabolic: every entry at a position
/// of negative weight vanishes, and the subgroup equations (if any) hold.
pub fn parabolic_membership(g0: &[RingElem], spec: &GroupSpec) -> Result<bool> {
    let h = spec.h();
    if g0.len() != h * h {
        return Err(Error::InvalidInput("matrix size mismatch".into()));
    }
    for i in 0..h {
        for j in 0..h {
            if spec.position_weight(i, j) < 0 && !g0[i * h + j].is_zero() {
                return Ok(false);
            }
        }
    }
    for eq in spec.subgroup_eqs() {
        let ring = g0[0].ring().clone();
        let val = eq.eval_with(
            g0,
            |a, b| a.add(b).expect("same ring"),
            |a, b| a.mul(b).expect("same ring"),
            |c| ring.from_int(c),
        );
        if !val.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluate the subgroup equations on Witt-vector entries exactly.
pub fn subgroup_membership(g: &MatW, spec: &GroupSpec) -> Result<bool> {
    if g.size() != spec.h() {
        return Err(Error::InvalidInput("matrix size mismatch".into()));
    }
    let p = g.p();
    let ring = g.ring().clone();
    let n = g.witt_len();
    for eq in spec.subgroup_eqs() {
        let val = eq.eval_with(
            g.entries(),
            |a, b| a.add(b).expect("same ring"),
            |a, b| a.mul(b).expect("same ring"),
            |c| WittVec::from_int(p, &ring, n, c).expect("constant"),
        );
        if !val.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// H^mu elements and the divided Frobenius
// ---------------------------------------------------------------------------

/// A Witt-matrix whose negative-weight entries lie in the ideal `I(R)`
/// (equivalently, whose residue lies in the parabolic), and which is
/// invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElem {
    mat: MatW,
}

impl HElem {
    pub fn new(mat: MatW, spec: &GroupSpec) -> Result<HElem> {
        check_h_membership(&mat, spec)?;
        if !mat.is_invertible()? {
            return Err(Error::NotInHmu("matrix is not invertible".into()));
        }
        Ok(HElem { mat })
    }

    /// Skip the invertibility check (used by enumeration loops that filter
    /// on invertibility themselves).
    pub fn new_unchecked_invertibility(mat: MatW, spec: &GroupSpec) -> Result<HElem> {
        check_h_membership(&mat, spec)?;
        Ok(HElem { mat })
    }

    pub fn mat(&self) -> &MatW {
        &self.mat
    }

    pub fn into_mat(self) -> MatW {
        self.mat
    }
}

fn check_h_membership(mat: &MatW, spec: &GroupSpec) -> Result<()> {
    let h = spec.h();
    if mat.size() != h {
        return Err(Error::InvalidInput("matrix size mismatch".into()));
    }
    for i in 0..h {
        for j in 0..h {
            if spec.position_weight(i, j) < 0 && !mat.get(i, j).in_v_ideal() {
                return Err(Error::NotInHmu(format!(
                    "entry ({}, {}) has weight -1 but nonzero w0",
                    i, j
                )));
            }
        }
    }
    Ok(())
}

/// The divided Frobenius, entrywise by position weight: `-1` applies the
/// Verschiebung inverse (coordinate shift), `0` the Frobenius, `+1` p times
/// the Frobenius. Output length is one less than the input length.
pub fn divided_frobenius(h_elem: &HElem, spec: &GroupSpec) -> Result<MatW> {
    let m = h_elem.mat();
    let h = spec.h();
    let n = m.witt_len();
    if n < 2 {
        return Err(Error::LengthUnderflow(
            "divided Frobenius needs input length >= 2".into(),
        ));
    }
    let mut entries = Vec::with_capacity(h * h);
    for i in 0..h {
        for j in 0..h {
            let x = m.get(i, j);
            let out = match spec.position_weight(i, j) {
                -1 => x.verschiebung_inv()?,
                0 => x.frobenius()?,
                1 => x.frobenius()?.mul_by_p()?,
                _ => unreachable!("minuscule weights"),
            };
            entries.push(out);
        }
    }
    MatW::from_entries(entries)
}

/// Factor `H = Hp * Hu` with `Hp` in the parabolic block shape and
/// `Hu = 1 + X` unipotent with X supported on the weight -1 positions and
/// entries in `I(R)`. Requires a local coefficient ring with p nilpotent.
pub fn h_mu_factor(h_elem: &HElem, spec: &GroupSpec) -> Result<(MatW, MatW)> {
    let m = h_elem.mat();
    if !m.ring().is_local_p_nilpotent() {
        return Err(Error::NotLocal);
    }
    let h = spec.h();
    let p = m.p();
    let ring = m.ring().clone();
    let n = m.witt_len();
    // zero-weight-0 rows/cols: solve (A X)_pos = B entries per column
    let zero_rows: Vec<usize> = (0..h).filter(|&i| spec.weights()[i] == 0).collect();
    let one_cols: Vec<usize> = (0..h).filter(|&j| spec.weights()[j] == 1).collect();
    let mut x = MatW::zero(p, &ring, n, h);
    if !zero_rows.is_empty() && !one_cols.is_empty() {
        // A = principal block on weight-0 indices
        let d = zero_rows.len();
        let mut a = Vec::with_capacity(d * d);
        for &i in &zero_rows {
            for &k in &zero_rows {
                a.push(m.get(i, k).clone());
            }
        }
        let a = MatW::from_entries(a)?;
        let a_inv = a.inverse()?;
        for &j in &one_cols {
            // b_j = entries (i, j), i in zero_rows; x_j = A^{-1} b_j
            for (row_idx, &k) in zero_rows.iter().enumerate() {
                let mut acc = WittVec::zero(p, &ring, n);
                for (col_idx, &i) in zero_rows.iter().enumerate() {
                    acc = acc.add(&a_inv.get(row_idx, col_idx).mul(m.get(i, j))?)?;
                }
                x.set(k, j, acc);
            }
        }
    }
    let ident = MatW::identity(p, &ring, n, h);
    let hu = ident.add(&x)?;
    // Hp = H (1 - X); X^2 = 0 in the minuscule block shape
    let hp = m.sub(&m.mul(&x)?)?;
    // sanity: Hp has zero entries at the weight -1 positions
    for (i, j) in spec.u_minus_positions() {
        if !hp.get(i, j).is_zero() {
            return Err(Error::BadDecomposition(format!(
                "parabolic factor keeps a weight -1 entry at ({}, {})",
                i, j
            )));
        }
    }
    Ok((hp, hu))
}

/// Projector onto the weight -1 positions (kernel = parabolic positions),
/// acting on matrices over the coefficient ring.
pub fn lie_projection_pi(x: &[RingElem], spec: &GroupSpec) -> Result<Vec<RingElem>> {
    let h = spec.h();
    if x.len() != h * h {
        return Err(Error::InvalidInput("matrix size mismatch".into()));
    }
    let mut out = Vec::with_capacity(h * h);
    for i in 0..h {
        for j in 0..h {
            if spec.position_weight(i, j) == -1 {
                out.push(x[i * h + j].clone());
            } else {
                out.push(x[i * h + j].ring().zero());
            }
        }
    }
    Ok(out)
}

/// Same projector on Witt-matrix entries.
pub fn lie_projection_pi_witt(x: &MatW, spec: &GroupSpec) -> Result<MatW> {
    let h = spec.h();
    if x.size() != h {
        return Err(Error::InvalidInput("matrix size mismatch".into()));
    }
    let mut out = x.clone();
    for i in 0..h {
        for j in 0..h {
            if spec.position_weight(i, j) != -1 {
                out.set(i, j, WittVec::zero(x.p(), x.ring(), x.witt_len()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Ring {
        Ring::finite_field(2, 1).unwrap()
    }

    fn wv(p: u64, ring: &Ring, digits: &[u64]) -> WittVec {
        let coeffs = digits
            .iter()
            .map(|&d| ring.from_int(&BigInt::from(d)))
            .collect();
        WittVec::new(p, coeffs).unwrap()
    }

    #[test]
    fn parabolic_positions_gl2() {
        let spec = GroupSpec::gl(2, 1).unwrap();
        assert_eq!(spec.weights(), &[0, 1]);
        assert_eq!(spec.u_minus_positions(), vec![(0, 1)]);
        let r = f2();
        let id: Vec<RingElem> = vec![r.one(), r.zero(), r.zero(), r.one()];
        assert!(parabolic_membership(&id, &spec).unwrap());
        let with_b: Vec<RingElem> = vec![r.one(), r.one(), r.zero(), r.one()];
        assert!(!parabolic_membership(&with_b, &spec).unwrap());
        let lower: Vec<RingElem> = vec![r.one(), r.zero(), r.one(), r.one()];
        assert!(parabolic_membership(&lower, &spec).unwrap());
    }

    #[test]
    fn divided_frobenius_block_formula() {
        // GL_2, w = (0,1): H = [[x, V(y)], [z, t]] -> [[F x, y], [p F z, F t]]
        let spec = GroupSpec::gl(2, 1).unwrap();
        let r = f2();
        let n = 3;
        let x = wv(2, &r, &[1, 1, 0]);
        let y = wv(2, &r, &[1, 0, 1]);
        let z = wv(2, &r, &[0, 1, 1]);
        let t = wv(2, &r, &[1, 0, 0]);
        let vy = y.verschiebung(); // (0, 1, 0)
        let m = MatW::from_entries(vec![x.clone(), vy, z.clone(), t.clone()]).unwrap();
        let h = HElem::new(m, &spec).unwrap();
        let phi = divided_frobenius(&h, &spec).unwrap();
        assert_eq!(phi.witt_len(), n - 1);
        assert_eq!(phi.get(0, 0), &x.frobenius().unwrap());
        // V^{-1}(V(y)) = y truncated to n-1
        assert_eq!(phi.get(0, 1), &y.truncate(n - 1).unwrap());
        assert_eq!(phi.get(1, 0), &z.frobenius().unwrap().mul_by_p().unwrap());
        assert_eq!(phi.get(1, 1), &t.frobenius().unwrap());
    }

    #[test]
    fn identity_maps_to_identity() {
        let spec = GroupSpec::gl(2, 1).unwrap();
        let r = f2();
        let id = MatW::identity(2, &r, 3, 2);
        let h = HElem::new(id, &spec).unwrap();
        let phi = divided_frobenius(&h, &spec).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn pi_is_projector() {
        let spec = GroupSpec::gl(2, 1).unwrap();
        let r = f2();
        let x: Vec<RingElem> = vec![r.one(), r.one(), r.one(), r.one()];
        let px = lie_projection_pi(&x, &spec).unwrap();
        assert!(px[0].is_zero() && px[2].is_zero() && px[3].is_zero());
        assert!(px[1].is_one());
        let ppx = lie_projection_pi(&px, &spec).unwrap();
        assert_eq!(px, ppx);
        // pi(identity) = 0
        let id: Vec<RingElem> = vec![r.one(), r.zero(), r.zero(), r.one()];
        let pid = lie_projection_pi(&id, &spec).unwrap();
        assert!(pid.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn sl2_membership() {
        let spec = GroupSpec::sl(2, 1).unwrap();
        let r = f2();
        let id = MatW::identity(2, &r, 2, 2);
        assert!(subgroup_membership(&id, &spec).unwrap());
        // diag(u, u^{-1}) with u = (1, 1): det = 1
        let u = wv(2, &r, &[1, 1]);
        let ui = u.try_inv().unwrap();
        let zero = WittVec::zero(2, &r, 2);
        let m = MatW::from_entries(vec![u, zero.clone(), zero.clone(), ui]).unwrap();
        assert!(subgroup_membership(&m, &spec).unwrap());
        // diag(1, [a]) over F_4 with a != 1: det != 1
        let f4 = Ring::finite_field(2, 2).unwrap();
        let a = f4.generator(0).unwrap();
        let ta = WittVec::teichmuller(2, &a, 2);
        let one = WittVec::one(2, &f4, 2);
        let z4 = WittVec::zero(2, &f4, 2);
        let m = MatW::from_entries(vec![one, z4.clone(), z4, ta]).unwrap();
        assert!(!subgroup_membership(&m, &spec).unwrap());
    }

    #[test]
    fn factor_recovers_product() {
        let spec = GroupSpec::gl(2, 1).unwrap();
        let r = f2();
        let n = 2;
        // random-ish H in H^mu over W_2(F_2): brute force all of them
        use crate::witt::enumerate_witt;
        let elems = enumerate_witt(2, &r, n).unwrap();
        let mut count = 0;
        for a in &elems {
            for b in &elems {
                if !b.in_v_ideal() {
                    continue;
                }
                for c in &elems {
                    for d in &elems {
                        let m = MatW::from_entries(vec![
                            a.clone(),
                            b.clone(),
                            c.clone(),
                            d.clone(),
                        ])
                        .unwrap();
                        if !m.is_invertible().unwrap() {
                            continue;
                        }
                        let h = HElem::new(m.clone(), &spec).unwrap();
                        let (hp, hu) = h_mu_factor(&h, &spec).unwrap();
                        assert_eq!(hp.mul(&hu).unwrap(), m);
                        // Hu unipotent with I(R)-entry upper right
                        assert!(hu.get(0, 0).is_one() && hu.get(1, 1).is_one());
                        assert!(hu.get(1, 0).is_zero());
                        assert!(hu.get(0, 1).in_v_ideal());
                        count += 1;
                    }
                }
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn factor_trivial_cases() {
        let spec = GroupSpec::gl(2, 1).unwrap();
        let r = f2();
        // H already parabolic -> (H, 1)
        let m = MatW::from_entries(vec![
            wv(2, &r, &[1, 1]),
            WittVec::zero(2, &r, 2),
            wv(2, &r, &[1, 0]),
            wv(2, &r, &[1, 0]),
        ])
        .unwrap();
        let h = HElem::new(m.clone(), &spec).unwrap();
        let (hp, hu) = h_mu_factor(&h, &spec).unwrap();
        assert_eq!(hp, m);
        assert!(hu.is_identity());
        // H unipotent upper-right with I(R)-entry -> (1, H)
        let m = MatW::from_entries(vec![
            WittVec::one(2, &r, 2),
            wv(2, &r, &[0, 1]),
            WittVec::zero(2, &r, 2),
            WittVec::one(2, &r, 2),
        ])
        .unwrap();
        let h = HElem::new(m.clone(), &spec).unwrap();
        let (hp, hu) = h_mu_factor(&h, &spec).unwrap();
        assert!(hp.is_identity());
        assert_eq!(hu, m);
    }

    #[test]
    fn det_polynomial_3x3() {
        let det = det_polynomial(3);
        assert_eq!(det.num_terms(), 6);
        // evaluate on an integer matrix: det [[2,0,0],[0,3,0],[1,0,4]] = 24
        let z = Ring::integer_poly(vec![]);
        let vals: Vec<RingElem> = [2i64, 0, 0, 0, 3, 0, 1, 0, 4]
            .iter()
            .map(|&v| z.from_int(&BigInt::from(v)))
            .collect();
        let d = det.eval_with(
            &vals,
            |a, b| a.add(b).unwrap(),
            |a, b| a.mul(b).unwrap(),
            |c| z.from_int(c),
        );
        assert_eq!(d, z.from_int(&BigInt::from(24)));
    }
}
