//! Square matrices over truncated Witt rings, p-shifted matrices, and the
//! exact linear algebra on them: division-free characteristic polynomials,
//! inverses over local coefficient rings, Smith normal forms over the chain
//! ring `W_n(F_q)`, and column Hermite normal forms for lattice cosets.
//!
//! A `ShiftedMat` stores `p^{-shift} * mat` with an explicit carried Witt
//! length; every valuation or equality read asserts the carried precision
//! suffices, erring with `InsufficientPrecision` instead of guessing.

use crate::error::{Error, Result};
use crate::rings::{Ring, RingElem};
use crate::witt::WittVec;
use num_bigint::BigInt;

/// A square matrix with entries in `W_n(R)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatW {
    p: u64,
    size: usize,
    n: usize,
    entries: Vec<WittVec>,
}

impl std::fmt::Debug for MatW {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatW[{}x{}; n={}]", self.size, self.size, self.n)?;
        for i in 0..self.size {
            writeln!(f, "  {:?}", &self.entries[i * self.size..(i + 1) * self.size])?;
        }
        Ok(())
    }
}

impl MatW {
    pub fn from_entries(entries: Vec<WittVec>) -> Result<MatW> {
        let size2 = entries.len();
        let size = (size2 as f64).sqrt() as usize;
        if size * size != size2 || size == 0 {
            return Err(Error::InvalidInput("entry count is not a nonzero square".into()));
        }
        let p = entries[0].p();
        let n = entries[0].len();
        let ring = entries[0].ring().clone();
        for e in &entries {
            if e.p() != p || e.len() != n || e.ring() != &ring {
                return Err(Error::MixedRings);
            }
        }
        Ok(MatW { p, size, n, entries })
    }

    pub fn identity(p: u64, ring: &Ring, n: usize, size: usize) -> MatW {
        let mut entries = vec![WittVec::zero(p, ring, n); size * size];
        for i in 0..size {
            entries[i * size + i] = WittVec::one(p, ring, n);
        }
        MatW { p, size, n, entries }
    }

    pub fn zero(p: u64, ring: &Ring, n: usize, size: usize) -> MatW {
        MatW { p, size, n, entries: vec![WittVec::zero(p, ring, n); size * size] }
    }

    /// Diagonal matrix `diag(p^{e_1}, .., p^{e_h})`.
    pub fn diag_p_powers(p: u64, ring: &Ring, n: usize, exps: &[usize]) -> Result<MatW> {
        let size = exps.len();
        let mut m = MatW::zero(p, ring, n, size);
        for (i, &e) in exps.iter().enumerate() {
            let v = WittVec::one(p, ring, n).mul_by_p_pow(e)?;
            m.set(i, i, v);
        }
        Ok(m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn witt_len(&self) -> usize {
        self.n
    }
    pub fn ring(&self) -> &Ring {
        self.entries[0].ring()
    }

    pub fn get(&self, i: usize, j: usize) -> &WittVec {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: WittVec) {
        assert_eq!(v.len(), self.n);
        let size = self.size;
        self.entries[i * size + j] = v;
    }

    pub fn entries(&self) -> &[WittVec] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size).all(|i| {
            (0..self.size).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    fn check_same(&self, o: &MatW) -> Result<()> {
        if self.size != o.size || self.n != o.n || self.p != o.p || self.ring() != o.ring() {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    pub fn add(&self, o: &MatW) -> Result<MatW> {
        self.check_same(o)?;
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: self.n, entries })
    }

    pub fn sub(&self, o: &MatW) -> Result<MatW> {
        self.check_same(o)?;
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: self.n, entries })
    }

    pub fn neg(&self) -> Result<MatW> {
        let entries = self.entries.iter().map(|a| a.neg()).collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: self.n, entries })
    }

    pub fn mul(&self, o: &MatW) -> Result<MatW> {
        self.check_same(o)?;
        let h = self.size;
        let mut entries = Vec::with_capacity(h * h);
        for i in 0..h {
            for j in 0..h {
                let mut acc = WittVec::zero(self.p, self.ring(), self.n);
                for k in 0..h {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(MatW { p: self.p, size: h, n: self.n, entries })
    }

    pub fn scalar_mul(&self, s: &WittVec) -> Result<MatW> {
        let entries = self.entries.iter().map(|a| a.mul(s)).collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: self.n, entries })
    }

    pub fn pow(&self, e: u32) -> Result<MatW> {
        let mut acc = MatW::identity(self.p, self.ring(), self.n, self.size);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> MatW {
        let h = self.size;
        let mut entries = Vec::with_capacity(h * h);
        for i in 0..h {
            for j in 0..h {
                entries.push(self.get(j, i).clone());
            }
        }
        MatW { p: self.p, size: h, n: self.n, entries }
    }

    pub fn truncate(&self, m: usize) -> Result<MatW> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.truncate(m))
            .collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: m, entries })
    }

    /// Apply the same-length Frobenius entrywise (characteristic p only).
    pub fn frobenius_same_length(&self) -> Result<MatW> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.frobenius_same_length())
            .collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: self.n, entries })
    }

    pub fn mul_by_p_pow(&self, k: usize) -> Result<MatW> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.mul_by_p_pow(k))
            .collect::<Result<_>>()?;
        Ok(MatW { p: self.p, size: self.size, n: self.n, entries })
    }

    /// Characteristic polynomial by the division-free Berkowitz iteration.
    /// Returns `h+1` coefficients, leading first: `x^h + c_1 x^{h-1} + ..`.
    pub fn charpoly(&self) -> Result<Vec<WittVec>> {
        let h = self.size;
        let p = self.p;
        let ring = self.ring().clone();
        let n = self.n;
        let one = WittVec::one(p, &ring, n);
        // C for the 0x0 matrix
        let mut c: Vec<WittVec> = vec![one.clone()];
        for r in 1..=h {
            // principal r x r block; the Toeplitz column is
            // [1, -a, -(R S), -(R M S), .., -(R M^{r-2} S)]
            let a = self.get(r - 1, r - 1).clone();
            let mut col: Vec<WittVec> = Vec::with_capacity(r + 1);
            col.push(one.clone());
            col.push(a.neg()?);
            if r >= 2 {
                // R = row r-1 entries 0..r-1, S = column r-1 entries 0..r-1
                let rrow: Vec<&WittVec> = (0..r - 1).map(|j| self.get(r - 1, j)).collect();
                let scol: Vec<WittVec> = (0..r - 1).map(|i| self.get(i, r - 1).clone()).collect();
                // iterate vec = M^t S
                let mut vec = scol.clone();
                for t in 0..r - 1 {
                    // R . vec
                    let mut dot = WittVec::zero(p, &ring, n);
                    for (x, y) in rrow.iter().zip(&vec) {
                        dot = dot.add(&x.mul(y)?)?;
                    }
                    col.push(dot.neg()?);
                    if t + 1 < r - 1 {
                        // vec = M vec with M the (r-1)x(r-1) principal block
                        let mut nv = Vec::with_capacity(r - 1);
                        for i in 0..r - 1 {
                            let mut acc = WittVec::zero(p, &ring, n);
                            for (k, y) in vec.iter().enumerate() {
                                acc = acc.add(&self.get(i, k).mul(y)?)?;
                            }
                            nv.push(acc);
                        }
                        vec = nv;
                    }
                }
            }
            // multiply: new_c[i] = sum_{j} col[i-j] * c[j]
            let mut nc = vec![WittVec::zero(p, &ring, n); r + 1];
            for (j, cj) in c.iter().enumerate() {
                for (i, coli) in col.iter().enumerate() {
                    let idx = i + j;
                    if idx <= r {
                        nc[idx] = nc[idx].add(&coli.mul(cj)?)?;
                    }
                }
            }
            c = nc;
        }
        Ok(c)
    }

    /// Determinant: direct for sizes 1-2, otherwise from the constant
    /// charpoly coefficient `det A = (-1)^h * char_A(0)`.
    pub fn det(&self) -> Result<WittVec> {
        match self.size {
            1 => Ok(self.get(0, 0).clone()),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))?
                .sub(&self.get(0, 1).mul(self.get(1, 0))?),
            _ => {
                let c = self.charpoly()?;
                let last = c.last().expect("nonempty").clone();
                if self.size % 2 == 1 {
                    last.neg()
                } else {
                    Ok(last)
                }
            }
        }
    }

    /// Is the matrix invertible over `W_n(R)` (local R): reduction of the
    /// determinant must be a unit.
    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.det()?.coeff(0).is_unit())
    }

    /// Inverse over a local coefficient ring by Gaussian elimination with
    /// unit pivots.
    pub fn inverse(&self) -> Result<MatW> {
        if !self.ring().is_local_p_nilpotent() {
            return Err(Error::NotLocal);
        }
        let h = self.size;
        let mut a = self.clone();
        let mut inv = MatW::identity(self.p, self.ring(), self.n, h);
        for col in 0..h {
            // unit pivot search
            let pivot_row = (col..h)
                .find(|&r| a.get(r, col).coeff(0).is_unit())
                .ok_or(Error::NotInvertible)?;
            if pivot_row != col {
                for j in 0..h {
                    let x = a.get(pivot_row, j).clone();
                    let y = a.get(col, j).clone();
                    a.set(pivot_row, j, y);
                    a.set(col, j, x);
                    let x = inv.get(pivot_row, j).clone();
                    let y = inv.get(col, j).clone();
                    inv.set(pivot_row, j, y);
                    inv.set(col, j, x);
                }
            }
            let piv_inv = a.get(col, col).try_inv()?;
            for j in 0..h {
                a.set(col, j, a.get(col, j).mul(&piv_inv)?);
                inv.set(col, j, inv.get(col, j).mul(&piv_inv)?);
            }
            for r in 0..h {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..h {
                    a.set(r, j, a.get(r, j).sub(&factor.mul(a.get(col, j))?)?);
                    inv.set(r, j, inv.get(r, j).sub(&factor.mul(inv.get(col, j))?)?);
                }
            }
        }
        Ok(inv)
    }

    /// The `w_0` image: matrix over R, row-major.
    pub fn w0_matrix(&self) -> Vec<RingElem> {
        self.entries.iter().map(|e| e.coeff(0).clone()).collect()
    }

    /// Integer-matrix inclusion: entries `c * 1_W`.
    pub fn from_int_matrix(
        p: u64,
        ring: &Ring,
        n: usize,
        size: usize,
        ints: &[BigInt],
    ) -> Result<MatW> {
        if ints.len() != size * size {
            return Err(Error::InvalidInput("integer matrix size mismatch".into()));
        }
        let entries = ints
            .iter()
            .map(|c| WittVec::from_int(p, ring, n, c))
            .collect::<Result<_>>()?;
        MatW::from_entries(entries)
    }
}

// ---------------------------------------------------------------------------
// p-shifted matrices
// ---------------------------------------------------------------------------

/// `p^{-shift} * mat`, the computational stand-in for a matrix over
/// `W(R)[1/p]` carried at finite precision. Coefficient rings must have
/// characteristic p (so multiplication by p is the digit shift); valuation
/// reads additionally require a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedMat {
    mat: MatW,
    shift: i64,
}

impl ShiftedMat {
    pub fn new(mat: MatW, shift: i64) -> Result<ShiftedMat> {
        if !mat.ring().has_char_p() {
            return Err(Error::CharNotP);
        }
        Ok(ShiftedMat { mat, shift })
    }

    pub fn from_integral(mat: MatW) -> Result<ShiftedMat> {
        ShiftedMat::new(mat, 0)
    }

    pub fn mat(&self) -> &MatW {
        &self.mat
    }
    pub fn shift(&self) -> i64 {
        self.shift
    }
    pub fn size(&self) -> usize {
        self.mat.size()
    }
    pub fn witt_len(&self) -> usize {
        self.mat.witt_len()
    }

    pub fn identity_like(&self) -> ShiftedMat {
        ShiftedMat {
            mat: MatW::identity(self.mat.p(), self.mat.ring(), self.mat.witt_len(), self.size()),
            shift: 0,
        }
    }

    pub fn mul(&self, o: &ShiftedMat) -> Result<ShiftedMat> {
        Ok(ShiftedMat { mat: self.mat.mul(&o.mat)?, shift: self.shift + o.shift })
    }

    /// Witt-functorial Frobenius (sigma), entrywise digit p-powers; fixes p,
    /// so the shift is unchanged.
    pub fn frobenius(&self) -> Result<ShiftedMat> {
        Ok(ShiftedMat { mat: self.mat.frobenius_same_length()?, shift: self.shift })
    }

    /// Inverse over a finite-field coefficient ring, via Cayley-Hamilton:
    /// `A^{-1} = -(A^{h-1} + c_1 A^{h-2} + .. + c_{h-1}) / c_h`.
    pub fn inverse(&self, guard: usize) -> Result<ShiftedMat> {
        if !self.mat.ring().is_finite_field() {
            return Err(Error::NotAField);
        }
        let h = self.size();
        let n = self.mat.witt_len();
        let c = self.mat.charpoly()?;
        let det_like = &c[h]; // c_h = (-1)^h det
        let v = det_like.valuation().ok_or_else(|| {
            Error::InsufficientPrecision("determinant vanishes at carried precision".into())
        })?;
        if v + guard >= n {
            return Err(Error::InsufficientPrecision(format!(
                "det valuation {} too close to carried length {}",
                v, n
            )));
        }
        let unit = det_like.div_exact_p_pow(v)?; // length n - v
        // assemble B = A^{h-1} + c_1 A^{h-2} + ... + c_{h-1} I
        let ring = self.mat.ring().clone();
        let p = self.mat.p();
        let mut b = MatW::zero(p, &ring, n, h);
        let mut apow = MatW::identity(p, &ring, n, h);
        // B = sum_{t=0}^{h-1} c_{h-1-t} A^t
        for t in 0..h {
            let coeff = &c[h - 1 - t];
            b = b.add(&apow.scalar_mul(coeff)?)?;
            if t + 1 < h {
                apow = apow.mul(&self.mat)?;
            }
        }
        // pad the unit's inverse back to length n
        let unit_inv = unit.try_inv()?;
        let mut unit_inv_coeffs = unit_inv.coeffs().to_vec();
        while unit_inv_coeffs.len() < n {
            unit_inv_coeffs.push(ring.zero());
        }
        let unit_inv_n = WittVec::new(p, unit_inv_coeffs)?;
        let minus_b_scaled = b.neg()?.scalar_mul(&unit_inv_n)?;
        Ok(ShiftedMat { mat: minus_b_scaled, shift: v as i64 - self.shift })
    }

    /// Equality of the represented objects modulo `p^k`. Aligns the shifts
    /// and compares stored digits; errs if the carried length cannot support
    /// the comparison.
    pub fn eq_mod(&self, o: &ShiftedMat, k: usize) -> Result<bool> {
        let n = self.mat.witt_len().min(o.mat.witt_len());
        let smax = self.shift.max(o.shift);
        let da = (smax - self.shift) as usize;
        let db = (smax - o.shift) as usize;
        // object == mod p^k  <=>  aligned integral parts == mod p^{k + smax}
        let need = (k as i64 + smax).max(0) as usize;
        if need > n {
            return Err(Error::InsufficientPrecision(format!(
                "comparison mod p^{} with shifts ({}, {}) needs length {} > carried {}",
                k, self.shift, o.shift, need, n
            )));
        }
        if need == 0 {
            return Ok(true);
        }
        let a = self.mat.mul_by_p_pow(da)?.truncate(need)?;
        let b = o.mat.mul_by_p_pow(db)?.truncate(need)?;
        Ok(a == b)
    }

    /// Valuation of the (i, j) entry of the represented object; `None` means
    /// "not visible at carried precision" (reported, never guessed).
    pub fn entry_valuation(&self, i: usize, j: usize) -> Option<i64> {
        self.mat.get(i, j).valuation().map(|v| v as i64 - self.shift)
    }
}

// ---------------------------------------------------------------------------
// Smith normal form over the chain ring W_n(F_q)
// ---------------------------------------------------------------------------

/// Result of a Smith normal form over `W_n(F_q)`: `left * m * right =
/// diag(p^{exps[0]}, ..)` with both transforms invertible.
#[derive(Clone, Debug)]
pub struct Smith {
    pub left: MatW,
    pub right: MatW,
    pub exps: Vec<usize>,
}

/// Smith normal form over `W_n(F_q)` with minimal-valuation pivoting
/// (ties row-major). All elementary-divisor reads assert the carried
/// precision: an exponent within `guard` of the remaining valid digits
/// aborts with `InsufficientPrecision`.
pub fn smith_normal_form(m: &MatW, guard: usize) -> Result<Smith> {
    if !m.ring().is_finite_field() {
        return Err(Error::NotAField);
    }
    let h = m.size();
    let n = m.witt_len();
    let p = m.p();
    let ring = m.ring().clone();
    let mut a = m.clone();
    let mut left = MatW::identity(p, &ring, n, h);
    let mut right = MatW::identity(p, &ring, n, h);
    let mut exps = Vec::with_capacity(h);
    let mut valid = n; // digits of `a` still trustworthy
    for t in 0..h {
        // minimal-valuation pivot in the trailing block, row-major ties
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..h {
            for j in t..h {
                if let Some(v) = a.get(i, j).valuation() {
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (e, pi, pj) = best
            .map(|(v, i, j)| (v, i, j))
            .ok_or_else(|| {
                Error::InsufficientPrecision(format!(
                    "trailing block vanishes at carried precision (step {})",
                    t
                ))
            })?;
        if e + guard >= valid {
            return Err(Error::InsufficientPrecision(format!(
                "elementary divisor p^{} indistinguishable at valid precision {}",
                e, valid
            )));
        }
        // move pivot to (t, t)
        if pi != t {
            for j in 0..h {
                let x = a.get(pi, j).clone();
                let y = a.get(t, j).clone();
                a.set(pi, j, y);
                a.set(t, j, x);
                let x = left.get(pi, j).clone();
                let y = left.get(t, j).clone();
                left.set(pi, j, y);
                left.set(t, j, x);
            }
        }
        if pj != t {
            for i in 0..h {
                let x = a.get(i, pj).clone();
                let y = a.get(i, t).clone();
                a.set(i, pj, y);
                a.set(i, t, x);
                let x = right.get(i, pj).clone();
                let y = right.get(i, t).clone();
                right.set(i, pj, y);
                right.set(i, t, x);
            }
        }
        // normalize pivot to p^e: row_t *= unit^{-1}
        let unit = pad_to(&a.get(t, t).div_exact_p_pow(e)?, n)?;
        let unit_inv = unit.try_inv()?;
        for j in 0..h {
            a.set(t, j, a.get(t, j).mul(&unit_inv)?);
            left.set(t, j, left.get(t, j).mul(&unit_inv)?);
        }
        // clear column t and row t
        for i in 0..h {
            if i == t || a.get(i, t).is_zero() {
                continue;
            }
            let q = pad_to(&a.get(i, t).div_exact_p_pow(e)?, n)?;
            for j in 0..h {
                a.set(i, j, a.get(i, j).sub(&q.mul(a.get(t, j))?)?);
                left.set(i, j, left.get(i, j).sub(&q.mul(left.get(t, j))?)?);
            }
        }
        for j in 0..h {
            if j == t || a.get(t, j).is_zero() {
                continue;
            }
            let q = pad_to(&a.get(t, j).div_exact_p_pow(e)?, n)?;
            for i in 0..h {
                a.set(i, j, a.get(i, j).sub(&q.mul(a.get(i, t))?)?);
                right.set(i, j, right.get(i, j).sub(&q.mul(right.get(i, t))?)?);
            }
        }
        valid -= e;
        exps.push(e);
    }
    debug_assert!(exps.windows(2).all(|w| w[0] <= w[1]));
    Ok(Smith { left, right, exps })
}

/// Zero-extend a shorter Witt vector back to length n. The dropped digits of
/// a p^e-division are recreated as unread slots; the caller's `valid`
/// accounting keeps reads away from them.
fn pad_to(v: &WittVec, n: usize) -> Result<WittVec> {
    let mut c = v.coeffs().to_vec();
    let ring = v.ring().clone();
    while c.len() < n {
        c.push(ring.zero());
    }
    WittVec::new(v.p(), c)
}

// ---------------------------------------------------------------------------
// column Hermite normal form over W_n(F_q)
// ---------------------------------------------------------------------------

/// Column Hermite normal form: the canonical representative of the right
/// coset `m * GL_h(W_n(F_q))` — lower-triangular, diagonal `p^{a_i}`, and
/// every entry left of the diagonal reduced modulo the diagonal p-power of
/// its row.
pub fn hermite_normal_form(m: &MatW, guard: usize) -> Result<(MatW, Vec<usize>)> {
    if !m.ring().is_finite_field() {
        return Err(Error::NotAField);
    }
    let h = m.size();
    let n = m.witt_len();
    let mut a = m.clone();
    let mut diag = Vec::with_capacity(h);
    let mut valid = n;
    for i in 0..h {
        // pivot: min valuation on row i among columns >= i
        let mut best: Option<(usize, usize)> = None;
        for j in i..h {
            if let Some(v) = a.get(i, j).valuation() {
                if best.map_or(true, |(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        let (e, pj) = best.ok_or_else(|| {
            Error::InsufficientPrecision(format!("row {} vanishes at carried precision", i))
        })?;
        if e + guard >= valid {
            return Err(Error::InsufficientPrecision(format!(
                "Hermite pivot p^{} indistinguishable at valid precision {}",
                e, valid
            )));
        }
        if pj != i {
            for r in 0..h {
                let x = a.get(r, pj).clone();
                let y = a.get(r, i).clone();
                a.set(r, pj, y);
                a.set(r, i, x);
            }
        }
        // normalize column i so that (i, i) = p^e
        let unit = pad_to(&a.get(i, i).div_exact_p_pow(e)?, n)?;
        let unit_inv = unit.try_inv()?;
        for r in 0..h {
            a.set(r, i, a.get(r, i).mul(&unit_inv)?);
        }
        // kill row i to the right
        for j in i + 1..h {
            if a.get(i, j).is_zero() {
                continue;
            }
            let q = pad_to(&a.get(i, j).div_exact_p_pow(e)?, n)?;
            for r in 0..h {
                let upd = a.get(r, j).sub(&q.mul(a.get(r, i))?)?;
                a.set(r, j, upd);
            }
        }
        valid -= e;
        diag.push(e);
    }
    // reduction pass: entry (i, j), j < i, reduced mod p^{a_i}
    for j in 0..h {
        for i in j + 1..h {
            let e = diag[i];
            let entry = a.get(i, j).clone();
            let (_red, q) = split_mod_p_pow(&entry, e)?;
            if q.is_zero() {
                continue;
            }
            for r in 0..h {
                let upd = a.get(r, j).sub(&q.mul(a.get(r, i))?)?;
                a.set(r, j, upd);
            }
        }
    }
    Ok((a, diag))
}

/// Split `x = red + p^e q` with `red` having digits >= e zeroed.
pub fn split_mod_p_pow(x: &WittVec, e: usize) -> Result<(WittVec, WittVec)> {
    let n = x.len();
    let ring = x.ring().clone();
    if e >= n {
        return Ok((x.clone(), WittVec::zero(x.p(), &ring, n)));
    }
    let mut red_coeffs = x.coeffs().to_vec();
    for c in red_coeffs.iter_mut().skip(e) {
        *c = ring.zero();
    }
    let red = WittVec::new(x.p(), red_coeffs)?;
    let diff = x.sub(&red)?;
    let q = pad_to(&diff.div_exact_p_pow(e)?, n)?;
    Ok((red, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::enumerate_witt;

    fn f2() -> Ring {
        Ring::finite_field(2, 1).unwrap()
    }

    fn mat_from_ints(p: u64, ring: &Ring, n: usize, vals: &[i64]) -> MatW {
        let ints: Vec<BigInt> = vals.iter().map(|&v| BigInt::from(v)).collect();
        let size = (vals.len() as f64).sqrt() as usize;
        MatW::from_int_matrix(p, ring, n, size, &ints).unwrap()
    }

    fn invertible_2x2(p: u64, ring: &Ring, n: usize, limit: usize) -> Vec<MatW> {
        let elems = enumerate_witt(p, ring, n).unwrap();
        let mut out = vec![];
        'outer: for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        let m = MatW::from_entries(vec![
                            a.clone(),
                            b.clone(),
                            c.clone(),
                            d.clone(),
                        ])
                        .unwrap();
                        if m.is_invertible().unwrap() {
                            out.push(m);
                            if out.len() >= limit {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn charpoly_2x2_trace_det() {
        let r = f2();
        let m = mat_from_ints(2, &r, 3, &[1, 1, 0, 1]);
        let c = m.charpoly().unwrap();
        // x^2 - 2x + 1 over W_3(F_2)
        let minus_two = WittVec::from_int(2, &r, 3, &BigInt::from(-2)).unwrap();
        let one = WittVec::one(2, &r, 3);
        assert_eq!(c[0], one);
        assert_eq!(c[1], minus_two);
        assert_eq!(c[2], one);
    }

    #[test]
    fn charpoly_cayley_hamilton_3x3() {
        let r = f2();
        let m = mat_from_ints(2, &r, 4, &[1, 2, 0, 3, 1, 1, 2, 0, 1]);
        let c = m.charpoly().unwrap();
        // evaluate char(M) and check it vanishes
        let mut acc = MatW::zero(2, &r, 4, 3);
        let mut pw = MatW::identity(2, &r, 4, 3);
        for coeff in c.iter().rev() {
            acc = acc.add(&pw.scalar_mul(coeff).unwrap()).unwrap();
            pw = pw.mul(&m).unwrap();
        }
        assert_eq!(acc, MatW::zero(2, &r, 4, 3));
    }

    #[test]
    fn inverse_roundtrip_w2f2() {
        let r = f2();
        for m in invertible_2x2(2, &r, 2, 96) {
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).unwrap().is_identity());
            assert!(inv.mul(&m).unwrap().is_identity());
        }
    }

    #[test]
    fn smith_spec_examples() {
        let r = f2();
        let id = MatW::identity(2, &r, 3, 2);
        let s = smith_normal_form(&id, 1).unwrap();
        assert_eq!(s.exps, vec![0, 0]);
        // [[p, 1], [0, p]] over W_3(F_2) -> exponents (0, 2)
        let m = mat_from_ints(2, &r, 3, &[2, 1, 0, 2]);
        let s = smith_normal_form(&m, 0).unwrap();
        assert_eq!(s.exps, vec![0, 2]);
        let lmr = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        let expect = MatW::diag_p_powers(2, &r, 3, &s.exps).unwrap();
        assert_eq!(lmr, expect);
        assert!(s.left.is_invertible().unwrap());
        assert!(s.right.is_invertible().unwrap());
    }

    #[test]
    fn smith_transforms_invertible_on_units() {
        let r = f2();
        let mats = invertible_2x2(2, &r, 2, 48);
        for m in mats.iter() {
            let s = smith_normal_form(m, 0).unwrap();
            assert_eq!(s.exps, vec![0, 0]);
            assert!(s.left.is_invertible().unwrap());
            assert!(s.right.is_invertible().unwrap());
        }
    }

    #[test]
    fn shifted_inverse_diag() {
        let r = f2();
        let b = MatW::diag_p_powers(2, &r, 5, &[0, 1]).unwrap();
        let bs = ShiftedMat::from_integral(b).unwrap();
        let inv = bs.inverse(1).unwrap();
        let prod = bs.mul(&inv).unwrap();
        assert!(prod.eq_mod(&prod.identity_like(), 3).unwrap());
    }

    #[test]
    fn hermite_canonicalizes_cosets() {
        let r = f2();
        let g = mat_from_ints(2, &r, 4, &[2, 1, 0, 4]);
        let (h1, d1) = hermite_normal_form(&g, 0).unwrap();
        for u in invertible_2x2(2, &r, 4, 60) {
            let gu = g.mul(&u).unwrap();
            let (h2, d2) = hermite_normal_form(&gu, 0).unwrap();
            assert_eq!(d1, d2);
            assert_eq!(h1, h2);
        }
    }
}
