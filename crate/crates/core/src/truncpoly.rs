use std::fmt;

use crate::error::{Error, Result};
use crate::field::{binom_mod_p, Field, FieldElement};
use crate::matrix::SquareMatrix;

/// Largest supported truncation length p^r (= 7^3). Keeps two-variable
/// grids and coefficient lists small enough for exhaustive checks.
pub const MAX_TRUNCATION: u64 = 343;

pub fn truncation_length(p: u64, r: u32) -> Result<usize> {
    let len = p
        .checked_pow(r)
        .filter(|&l| l <= MAX_TRUNCATION)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "truncation p^r = {p}^{r} exceeds the supported maximum {MAX_TRUNCATION}"
            ))
        })?;
    if r == 0 {
        return Err(Error::Capacity("height r must be at least 1".into()));
    }
    Ok(len as usize)
}

/// Element of k[t]/(t^{p^r}): coefficient list of length p^r.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly {
    field: Field,
    r: u32,
    coeffs: Vec<FieldElement>,
}

impl TruncPoly {
    pub fn zero(field: &Field, r: u32) -> Result<TruncPoly> {
        let len = truncation_length(field.p(), r)?;
        Ok(TruncPoly {
            field: field.clone(),
            r,
            coeffs: vec![field.zero(); len],
        })
    }

    pub fn one(field: &Field, r: u32) -> Result<TruncPoly> {
        let mut f = TruncPoly::zero(field, r)?;
        f.coeffs[0] = field.one();
        Ok(f)
    }

    /// The variable t.
    pub fn variable(field: &Field, r: u32) -> Result<TruncPoly> {
        TruncPoly::monomial(field, r, 1, field.one())
    }

    pub fn monomial(field: &Field, r: u32, m: usize, c: FieldElement) -> Result<TruncPoly> {
        let mut f = TruncPoly::zero(field, r)?;
        if m >= f.coeffs.len() {
            return Err(Error::DegreeOutOfRange { m, len: f.coeffs.len() });
        }
        f.coeffs[m] = c;
        Ok(f)
    }

    /// Coefficients of 1, t, t^2, ...; shorter lists are zero-padded.
    pub fn from_coeffs(field: &Field, r: u32, coeffs: &[FieldElement]) -> Result<TruncPoly> {
        let mut f = TruncPoly::zero(field, r)?;
        if coeffs.len() > f.coeffs.len() {
            return Err(Error::DegreeOutOfRange {
                m: coeffs.len() - 1,
                len: f.coeffs.len(),
            });
        }
        f.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(f)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn height(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff(&self, m: usize) -> FieldElement {
        self.coeffs[m]
    }

    pub fn set_coeff(&mut self, m: usize, c: FieldElement) {
        self.coeffs[m] = c;
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.is_zero(c))
    }

    fn assert_compatible(&self, other: &TruncPoly) {
        assert!(self.field == other.field, "mixed fields");
        assert!(self.r == other.r, "mixed truncation heights");
    }

    pub fn add(&self, other: &TruncPoly) -> TruncPoly {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        TruncPoly { field: self.field.clone(), r: self.r, coeffs }
    }

    pub fn sub(&self, other: &TruncPoly) -> TruncPoly {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        TruncPoly { field: self.field.clone(), r: self.r, coeffs }
    }

    pub fn scale(&self, c: FieldElement) -> TruncPoly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(c, a)).collect();
        TruncPoly { field: self.field.clone(), r: self.r, coeffs }
    }

    pub fn mul(&self, other: &TruncPoly) -> TruncPoly {
        self.assert_compatible(other);
        let f = &self.field;
        let len = self.coeffs.len();
        let mut out = vec![f.zero(); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(len - i).enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        TruncPoly { field: self.field.clone(), r: self.r, coeffs: out }
    }

    pub fn pow(&self, e: usize) -> TruncPoly {
        let mut acc = TruncPoly::one(&self.field, self.r).expect("height already validated");
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, at: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, at), c);
        }
        acc
    }

    /// t -> t^{p^i}; exponents pushed past p^r vanish in the quotient.
    pub fn frobenius_twist(&self, i: u32) -> TruncPoly {
        let step = self.field.p().pow(i) as usize;
        let mut out = TruncPoly::zero(&self.field, self.r).expect("height already validated");
        for (m, &c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            if let Some(idx) = m.checked_mul(step).filter(|&idx| idx < out.coeffs.len()) {
                out.coeffs[idx] = self.field.add(out.coeffs[idx], c);
            }
        }
        out
    }

    /// t -> c t.
    pub fn scale_variable(&self, c: FieldElement) -> TruncPoly {
        let f = &self.field;
        let mut out = self.clone();
        let mut power = f.one();
        for m in 0..out.coeffs.len() {
            out.coeffs[m] = f.mul(out.coeffs[m], power);
            power = f.mul(power, c);
        }
        out
    }

    /// Whether f(s + t) = f(s) + f(t), i.e. f is an additive (primitive)
    /// element of the Hopf algebra k[t]/(t^{p^r}). By Lucas' theorem the
    /// monomial t^m is primitive exactly when m is a power of p.
    pub fn is_primitive(&self) -> bool {
        let split = TruncPoly2::embed_left(self).add(&TruncPoly2::embed_right(self));
        self.subst_sum() == split
    }

    /// f(s + t) expanded in k[s,t]/(s^{p^r}, t^{p^r}) via binomials mod p.
    pub fn subst_sum(&self) -> TruncPoly2 {
        let f = &self.field;
        let p = f.p();
        let mut out = TruncPoly2::zero(&self.field, self.r).expect("height already validated");
        for (m, &c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for i in 0..=m {
                let b = binom_mod_p(m as u64, i as u64, p);
                if b == 0 {
                    continue;
                }
                let term = f.mul(c, f.from_u64(b));
                let cur = out.coeff(i, m - i);
                out.set_coeff(i, m - i, f.add(cur, term));
            }
        }
        out
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(**c))
            .map(|(m, c)| format!("{c:?}*t^{m}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Basis of the subspace of primitive (additive) polynomials in
/// k[t]/(t^{p^r}), computed as the kernel of the linear map
/// f -> f(s+t) - f(s) - f(t) on coefficient vectors.
pub fn primitive_basis(field: &Field, r: u32) -> Result<Vec<TruncPoly>> {
    let len = truncation_length(field.p(), r)?;
    if len * len * len > 8_000_000 {
        return Err(Error::Capacity(format!(
            "primitive-subspace solve needs a {0}^2 x {0} system, too large",
            len
        )));
    }
    let mut system = crate::matrix::RectMatrix::zero(field, len * len, len);
    for m in 0..len {
        let monomial = TruncPoly::monomial(field, r, m, field.one())?;
        let image = monomial
            .subst_sum()
            .sub(&TruncPoly2::embed_left(&monomial))
            .sub(&TruncPoly2::embed_right(&monomial));
        for i in 0..len {
            for j in 0..len {
                system.set(i * len + j, m, image.coeff(i, j));
            }
        }
    }
    system
        .kernel_basis()
        .into_iter()
        .map(|v| TruncPoly::from_coeffs(field, r, &v))
        .collect()
}

/// Element of k[s,t]/(s^{p^r}, t^{p^r}); grid[i][j] is the coefficient of
/// s^i t^j.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly2 {
    field: Field,
    r: u32,
    len: usize,
    grid: Vec<FieldElement>,
}

impl TruncPoly2 {
    pub fn zero(field: &Field, r: u32) -> Result<TruncPoly2> {
        let len = truncation_length(field.p(), r)?;
        Ok(TruncPoly2 {
            field: field.clone(),
            r,
            len,
            grid: vec![field.zero(); len * len],
        })
    }

    pub fn one(field: &Field, r: u32) -> Result<TruncPoly2> {
        let mut f = TruncPoly2::zero(field, r)?;
        f.grid[0] = field.one();
        Ok(f)
    }

    /// f(s): the one-variable polynomial carried by the first variable.
    pub fn embed_left(f: &TruncPoly) -> TruncPoly2 {
        let mut out = TruncPoly2::zero(&f.field, f.r).expect("height already validated");
        for (m, &c) in f.coeffs.iter().enumerate() {
            out.set_coeff(m, 0, c);
        }
        out
    }

    /// f(t): the one-variable polynomial carried by the second variable.
    pub fn embed_right(f: &TruncPoly) -> TruncPoly2 {
        let mut out = TruncPoly2::zero(&f.field, f.r).expect("height already validated");
        for (m, &c) in f.coeffs.iter().enumerate() {
            out.set_coeff(0, m, c);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.grid[i * self.len + j]
    }

    #[inline]
    pub fn set_coeff(&mut self, i: usize, j: usize, c: FieldElement) {
        self.grid[i * self.len + j] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().all(|&c| self.field.is_zero(c))
    }

    fn assert_compatible(&self, other: &TruncPoly2) {
        assert!(self.field == other.field, "mixed fields");
        assert!(self.r == other.r, "mixed truncation heights");
    }

    pub fn add(&self, other: &TruncPoly2) -> TruncPoly2 {
        self.assert_compatible(other);
        let grid = self
            .grid
            .iter()
            .zip(&other.grid)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        TruncPoly2 { field: self.field.clone(), r: self.r, len: self.len, grid }
    }

    pub fn sub(&self, other: &TruncPoly2) -> TruncPoly2 {
        self.assert_compatible(other);
        let grid = self
            .grid
            .iter()
            .zip(&other.grid)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        TruncPoly2 { field: self.field.clone(), r: self.r, len: self.len, grid }
    }

    pub fn scale(&self, c: FieldElement) -> TruncPoly2 {
        let grid = self.grid.iter().map(|&a| self.field.mul(c, a)).collect();
        TruncPoly2 { field: self.field.clone(), r: self.r, len: self.len, grid }
    }

    pub fn mul(&self, other: &TruncPoly2) -> TruncPoly2 {
        self.assert_compatible(other);
        let f = self.field.clone();
        let len = self.len;
        let mut out = TruncPoly2::zero(&self.field, self.r).expect("height already validated");
        for i1 in 0..len {
            for j1 in 0..len {
                let a = self.coeff(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..len - i1 {
                    for j2 in 0..len - j1 {
                        let b = other.coeff(i2, j2);
                        if f.is_zero(b) {
                            continue;
                        }
                        let cur = out.coeff(i1 + i2, j1 + j2);
                        out.set_coeff(i1 + i2, j1 + j2, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> TruncPoly2 {
        let mut acc = TruncPoly2::one(&self.field, self.r).expect("height already validated");
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for TruncPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.len {
            for j in 0..self.len {
                let c = self.coeff(i, j);
                if !self.field.is_zero(c) {
                    terms.push(format!("{c:?}*s^{i}*t^{j}"));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Matrix-valued truncated polynomial A_0 + A_1 t + ... + A_{p^r-1} t^{p^r-1}
/// with A_m in n x n matrices over k. Carrier for maps G_{a(r)} -> GL_n.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    n: usize,
    r: u32,
    coeffs: Vec<SquareMatrix>,
}

impl PolyMatrix {
    pub fn zero(field: &Field, n: usize, r: u32) -> Result<PolyMatrix> {
        let len = truncation_length(field.p(), r)?;
        Ok(PolyMatrix {
            field: field.clone(),
            n,
            r,
            coeffs: vec![SquareMatrix::zero(field, n); len],
        })
    }

    /// Constant polynomial 1 (the trivial map into GL_n).
    pub fn identity(field: &Field, n: usize, r: u32) -> Result<PolyMatrix> {
        let mut f = PolyMatrix::zero(field, n, r)?;
        f.coeffs[0] = SquareMatrix::identity(field, n);
        Ok(f)
    }

    pub fn from_coeffs(field: &Field, r: u32, coeffs: &[SquareMatrix]) -> Result<PolyMatrix> {
        assert!(!coeffs.is_empty(), "empty coefficient list");
        let n = coeffs[0].size();
        assert!(
            coeffs.iter().all(|m| m.size() == n && m.field() == field),
            "coefficient matrices over mixed fields or sizes"
        );
        let mut f = PolyMatrix::zero(field, n, r)?;
        if coeffs.len() > f.coeffs.len() {
            return Err(Error::DegreeOutOfRange {
                m: coeffs.len() - 1,
                len: f.coeffs.len(),
            });
        }
        f.coeffs[..coeffs.len()].clone_from_slice(coeffs);
        Ok(f)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn height(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff(&self, m: usize) -> &SquareMatrix {
        &self.coeffs[m]
    }

    pub fn set_coeff(&mut self, m: usize, a: SquareMatrix) {
        assert!(a.size() == self.n && *a.field() == self.field);
        self.coeffs[m] = a;
    }

    pub fn coeffs(&self) -> &[SquareMatrix] {
        &self.coeffs
    }

    fn assert_compatible(&self, other: &PolyMatrix) {
        assert!(self.field == other.field, "mixed fields");
        assert!(self.r == other.r, "mixed truncation heights");
        assert!(self.n == other.n, "mixed matrix sizes");
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        PolyMatrix { field: self.field.clone(), n: self.n, r: self.r, coeffs }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.assert_compatible(other);
        let len = self.coeffs.len();
        let mut out = PolyMatrix::zero(&self.field, self.n, self.r)
            .expect("height already validated");
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    pub fn evaluate(&self, at: FieldElement) -> SquareMatrix {
        let f = &self.field;
        let mut acc = SquareMatrix::zero(f, self.n);
        for a in self.coeffs.iter().rev() {
            acc = acc.scale(at).add(a);
        }
        acc
    }

    /// t -> t^{p^i}; exponents pushed past p^r vanish in the quotient.
    pub fn frobenius_twist(&self, i: u32) -> PolyMatrix {
        let step = self.field.p().pow(i) as usize;
        let mut out = PolyMatrix::zero(&self.field, self.n, self.r)
            .expect("height already validated");
        for (m, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if let Some(idx) = m.checked_mul(step).filter(|&idx| idx < out.coeffs.len()) {
                out.coeffs[idx] = out.coeffs[idx].add(a);
            }
        }
        out
    }

    /// t -> c t.
    pub fn scale_variable(&self, c: FieldElement) -> PolyMatrix {
        let f = &self.field;
        let mut out = self.clone();
        let mut power = f.one();
        for m in 0..out.coeffs.len() {
            out.coeffs[m] = out.coeffs[m].scale(power);
            power = f.mul(power, c);
        }
        out
    }

    /// Entrywise conjugation by g: every coefficient becomes g A_m g^{-1}.
    pub fn conjugate_by(&self, g: &SquareMatrix) -> Result<PolyMatrix> {
        let g_inv = g.inverse()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| g.mul(a).mul(&g_inv))
            .collect();
        Ok(PolyMatrix { field: self.field.clone(), n: self.n, r: self.r, coeffs })
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix(n = {}, p^r = {}) {{", self.n, self.coeffs.len())?;
        for (m, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                writeln!(f, "  t^{m}: {a:?}")?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn truncation_drops_high_terms() {
        let f = f3();
        let t = TruncPoly::variable(&f, 1).unwrap();
        // (1 + t)^3 = 1 + 3t + 3t^2 + t^3 = 1 in F_3[t]/(t^3).
        let one_plus_t = TruncPoly::one(&f, 1).unwrap().add(&t);
        assert_eq!(one_plus_t.pow(3), TruncPoly::one(&f, 1).unwrap());
    }

    #[test]
    fn capacity_and_degree_limits() {
        let f = Field::prime(7).unwrap();
        assert!(TruncPoly::zero(&f, 3).is_ok());
        assert!(matches!(
            TruncPoly::zero(&f, 4).unwrap_err(),
            Error::Capacity(_)
        ));
        assert!(matches!(
            TruncPoly::monomial(&f3(), 1, 3, f3().one()).unwrap_err(),
            Error::DegreeOutOfRange { m: 3, len: 3 }
        ));
    }

    #[test]
    fn evaluation_matches_horner() {
        let f = Field::prime(5).unwrap();
        let poly = TruncPoly::from_coeffs(
            &f,
            1,
            &[f.from_u64(2), f.from_u64(3), f.from_u64(1)],
        )
        .unwrap();
        // 2 + 3c + c^2 at c = 4: 2 + 12 + 16 = 30 = 0 mod 5.
        assert_eq!(poly.evaluate(f.from_u64(4)), f.zero());
        assert_eq!(poly.evaluate(f.zero()), f.from_u64(2));
    }

    #[test]
    fn subst_sum_of_square() {
        let f = f3();
        let t2 = TruncPoly::monomial(&f, 1, 2, f.one()).unwrap();
        let expanded = t2.subst_sum();
        // (s + t)^2 = s^2 + 2st + t^2.
        assert_eq!(expanded.coeff(2, 0), f.one());
        assert_eq!(expanded.coeff(1, 1), f.from_u64(2));
        assert_eq!(expanded.coeff(0, 2), f.one());
        assert_eq!(expanded.coeff(1, 0), f.zero());
    }

    #[test]
    fn pth_power_is_additive() {
        // (s + t)^p = s^p + t^p since C(p, i) = 0 mod p for 0 < i < p.
        for p in [3u64, 5] {
            let f = Field::prime(p).unwrap();
            let tp = TruncPoly::monomial(&f, 2, p as usize, f.one()).unwrap();
            let lhs = tp.subst_sum();
            let rhs = TruncPoly2::embed_left(&tp).add(&TruncPoly2::embed_right(&tp));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn subst_sum_is_a_ring_map() {
        let f = Field::prime(5).unwrap();
        let a = TruncPoly::from_coeffs(&f, 1, &[f.from_u64(1), f.from_u64(2), f.from_u64(3)])
            .unwrap();
        let b = TruncPoly::from_coeffs(&f, 1, &[f.from_u64(4), f.zero(), f.from_u64(1)])
            .unwrap();
        assert_eq!(a.mul(&b).subst_sum(), a.subst_sum().mul(&b.subst_sum()));
        assert_eq!(a.add(&b).subst_sum(), a.subst_sum().add(&b.subst_sum()));
    }

    #[test]
    fn frobenius_twist_moves_exponents() {
        let f = f3();
        let poly = TruncPoly::from_coeffs(&f, 2, &[f.zero(), f.from_u64(1), f.from_u64(2)])
            .unwrap();
        let twisted = poly.frobenius_twist(1);
        // t -> t^3: t + 2t^2 -> t^3 + 2t^6.
        assert_eq!(twisted.coeff(3), f.one());
        assert_eq!(twisted.coeff(6), f.from_u64(2));
        assert_eq!(twisted.coeff(1), f.zero());
        // Twisting past the truncation kills terms: t^3 -> t^9 = 0.
        let t3 = TruncPoly::monomial(&f, 2, 3, f.one()).unwrap();
        assert!(t3.frobenius_twist(1).is_zero());
    }

    #[test]
    fn scale_variable_composes_with_evaluate() {
        let f = Field::prime(7).unwrap();
        let poly = TruncPoly::from_coeffs(
            &f,
            1,
            &[f.from_u64(3), f.from_u64(1), f.from_u64(5), f.from_u64(2)],
        )
        .unwrap();
        let c = f.from_u64(4);
        let scaled = poly.scale_variable(c);
        for a in f.elements() {
            assert_eq!(scaled.evaluate(a), poly.evaluate(f.mul(c, a)));
        }
    }

    #[test]
    fn primitive_polynomials_are_the_p_power_monomials() {
        let f = f3();
        let basis = primitive_basis(&f, 2).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], TruncPoly::variable(&f, 2).unwrap());
        assert_eq!(
            basis[1],
            TruncPoly::monomial(&f, 2, 3, f.one()).unwrap()
        );
        for m in 0..9 {
            let mono = TruncPoly::monomial(&f, 2, m, f.one()).unwrap();
            assert_eq!(mono.is_primitive(), m == 1 || m == 3);
        }
        // Closed under addition and scaling.
        let mixed = basis[0].add(&basis[1].scale(f.from_u64(2)));
        assert!(mixed.is_primitive());
    }

    #[test]
    fn poly_matrix_product_truncates() {
        let f = f3();
        let e12 = SquareMatrix::elementary(&f, 2, 0, 1);
        // (1 + t X)(1 + t^2 X) with X^2 = 0: cross term t^3 X^2 vanishes
        // anyway; result 1 + tX + t^2 X.
        let mut a = PolyMatrix::identity(&f, 2, 1).unwrap();
        a.set_coeff(1, e12.clone());
        let mut b = PolyMatrix::identity(&f, 2, 1).unwrap();
        b.set_coeff(2, e12.clone());
        let prod = a.mul(&b);
        assert_eq!(*prod.coeff(0), SquareMatrix::identity(&f, 2));
        assert_eq!(*prod.coeff(1), e12);
        assert_eq!(*prod.coeff(2), e12);
    }

    #[test]
    fn poly_matrix_evaluate_and_twist() {
        let f = f3();
        let e12 = SquareMatrix::elementary(&f, 2, 0, 1);
        let mut phi = PolyMatrix::identity(&f, 2, 2).unwrap();
        phi.set_coeff(1, e12.clone());
        let at_two = phi.evaluate(f.from_u64(2));
        let expected = SquareMatrix::identity(&f, 2).add(&e12.scale(f.from_u64(2)));
        assert_eq!(at_two, expected);
        let twisted = phi.frobenius_twist(1);
        assert_eq!(*twisted.coeff(3), e12);
        assert!(twisted.coeff(1).is_zero());
    }
}
