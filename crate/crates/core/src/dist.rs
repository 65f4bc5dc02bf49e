//! The divided-power algebra of distributions on the r-th Frobenius kernel
//! of the additive group.
//!
//! Basis γ_0, ..., γ_{p^r - 1} with γ_i γ_j = C(i+j, i) γ_{i+j} (zero past
//! the truncation) and coproduct Δ(γ_m) = Σ_{i+j=m} γ_i ⊗ γ_j. Under the
//! pairing ⟨γ_m, t^i⟩ = δ_{mi} this algebra is dual to k[t]/(t^{p^r}):
//! multiplication here is adjoint to substitution t -> s + t there, and the
//! coproduct here is adjoint to multiplication there.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{binom_mod_p, factorial_mod_p, Field, FieldElement};
use crate::rng::SplitMix64;
use crate::truncpoly::{self, truncation_length, TruncPoly, TruncPoly2};

#[derive(Clone, PartialEq, Eq)]
pub struct DistElement {
    field: Field,
    r: u32,
    coeffs: Vec<FieldElement>,
}

impl DistElement {
    pub fn zero(field: &Field, r: u32) -> Result<DistElement> {
        let len = truncation_length(field.p(), r)?;
        Ok(DistElement {
            field: field.clone(),
            r,
            coeffs: vec![field.zero(); len],
        })
    }

    /// γ_0, the unit.
    pub fn one(field: &Field, r: u32) -> Result<DistElement> {
        DistElement::gamma(field, r, 0)
    }

    pub fn gamma(field: &Field, r: u32, m: usize) -> Result<DistElement> {
        let mut a = DistElement::zero(field, r)?;
        if m >= a.coeffs.len() {
            return Err(Error::DegreeOutOfRange { m, len: a.coeffs.len() });
        }
        a.coeffs[m] = field.one();
        Ok(a)
    }

    pub fn from_coeffs(field: &Field, r: u32, coeffs: &[FieldElement]) -> Result<DistElement> {
        let mut a = DistElement::zero(field, r)?;
        if coeffs.len() > a.coeffs.len() {
            return Err(Error::DegreeOutOfRange {
                m: coeffs.len() - 1,
                len: a.coeffs.len(),
            });
        }
        a.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(a)
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

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.is_zero(c))
    }

    fn assert_compatible(&self, other: &DistElement) {
        assert!(self.field == other.field, "mixed fields");
        assert!(self.r == other.r, "mixed heights");
    }

    pub fn add(&self, other: &DistElement) -> DistElement {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        DistElement { field: self.field.clone(), r: self.r, coeffs }
    }

    pub fn sub(&self, other: &DistElement) -> DistElement {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        DistElement { field: self.field.clone(), r: self.r, coeffs }
    }

    pub fn scale(&self, c: FieldElement) -> DistElement {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(c, a)).collect();
        DistElement { field: self.field.clone(), r: self.r, coeffs }
    }

    /// Bilinear extension of γ_i γ_j = C(i+j, i) γ_{i+j}, with γ_m = 0 for
    /// m >= p^r.
    pub fn mul(&self, other: &DistElement) -> DistElement {
        self.assert_compatible(other);
        let f = &self.field;
        let p = f.p();
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
                let c = binom_mod_p((i + j) as u64, i as u64, p);
                if c == 0 {
                    continue;
                }
                let term = f.mul(f.mul(a, b), f.from_u64(c));
                out[i + j] = f.add(out[i + j], term);
            }
        }
        DistElement { field: self.field.clone(), r: self.r, coeffs: out }
    }

    pub fn pow(&self, e: usize) -> DistElement {
        let mut acc = DistElement::one(&self.field, self.r).expect("height already validated");
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Δ(γ_m) = Σ_{i+j=m} γ_i ⊗ γ_j, extended linearly.
    pub fn coproduct(&self) -> DistTensor {
        let mut out = DistTensor::zero(&self.field, self.r).expect("height already validated");
        for (m, &c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            for i in 0..=m {
                let cur = out.coeff(i, m - i);
                out.set_coeff(i, m - i, self.field.add(cur, c));
            }
        }
        out
    }

    /// The polynomial Σ c_m t^m carrying the same coefficients, i.e. the
    /// image under the basis pairing γ_m <-> t^m.
    pub fn dual_poly(&self) -> TruncPoly {
        TruncPoly::from_coeffs(&self.field, self.r, &self.coeffs)
            .expect("heights match by construction")
    }

    pub fn from_poly(poly: &TruncPoly) -> DistElement {
        DistElement {
            field: poly.field().clone(),
            r: poly.height(),
            coeffs: poly.coeffs().to_vec(),
        }
    }

    /// Primitivity through the duality: true when the dual polynomial is
    /// additive, f(s+t) = f(s) + f(t). By Lucas this holds exactly on
    /// span{u_0, ..., u_{r-1}}. Note that under the convolution coproduct
    /// of this algebra itself, only multiples of γ_1 split as
    /// a ⊗ 1 + 1 ⊗ a; the generators u_j for j >= 1 pick up middle terms
    /// of strictly smaller degree.
    pub fn is_primitive(&self) -> bool {
        self.dual_poly().is_primitive()
    }
}

impl fmt::Debug for DistElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(**c))
            .map(|(m, c)| format!("{c:?}*g{m}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// γ_{p^j}; the r generators u_0, ..., u_{r-1} generate the whole algebra
/// subject to u_j^p = 0.
pub fn u_generator(field: &Field, r: u32, j: u32) -> Result<DistElement> {
    if j >= r {
        return Err(Error::GeneratorIndex { j: j as usize, r: r as usize });
    }
    DistElement::gamma(field, r, field.p().pow(j) as usize)
}

/// u_0^{m_0} ... u_q^{m_q} · (m_0! ... m_q!)^{-1} for the base-p digits m_j
/// of m; equal to γ_m by the p-adic monomial identity.
pub fn padic_monomial(field: &Field, r: u32, m: usize) -> Result<DistElement> {
    let p = field.p();
    let len = truncation_length(p, r)?;
    if m >= len {
        return Err(Error::DegreeOutOfRange { m, len });
    }
    let mut acc = DistElement::one(field, r)?;
    let mut factor = 1u64;
    let mut rest = m as u64;
    let mut j = 0u32;
    while rest > 0 {
        let digit = rest % p;
        if digit > 0 {
            let u = u_generator(field, r, j)?;
            acc = acc.mul(&u.pow(digit as usize));
            factor = factor * factorial_mod_p(digit, p) % p;
        }
        rest /= p;
        j += 1;
    }
    let inv = field.inv(field.from_u64(factor)).expect("digit factorials are units");
    Ok(acc.scale(inv))
}

/// Basis of the primitive subspace (see [`DistElement::is_primitive`]):
/// exactly u_0, ..., u_{r-1}.
pub fn primitive_basis(field: &Field, r: u32) -> Result<Vec<DistElement>> {
    Ok(truncpoly::primitive_basis(field, r)?
        .iter()
        .map(DistElement::from_poly)
        .collect())
}

/// ⟨a, f⟩ = Σ_m a_m f_m under the basis pairing γ_m <-> t^m.
pub fn pairing(a: &DistElement, f: &TruncPoly) -> FieldElement {
    assert!(a.field() == f.field() && a.height() == f.height(), "mixed parents");
    let k = a.field();
    let mut acc = k.zero();
    for (&c, &d) in a.coeffs().iter().zip(f.coeffs()) {
        acc = k.add(acc, k.mul(c, d));
    }
    acc
}

/// ⟨x, g⟩ for x in the tensor square and g a two-variable polynomial.
pub fn pairing2(x: &DistTensor, g: &TruncPoly2) -> FieldElement {
    assert!(x.len() == g.len(), "mixed truncations");
    let k = x.field.clone();
    let mut acc = k.zero();
    for i in 0..x.len() {
        for j in 0..x.len() {
            acc = k.add(acc, k.mul(x.coeff(i, j), g.coeff(i, j)));
        }
    }
    acc
}

pub fn random_element(field: &Field, r: u32, rng: &mut SplitMix64) -> Result<DistElement> {
    let len = truncation_length(field.p(), r)?;
    let coeffs: Vec<FieldElement> = (0..len)
        .map(|_| field.from_index(rng.next_below(field.order())))
        .collect();
    DistElement::from_coeffs(field, r, &coeffs)
}

/// Element of the tensor square, stored as a dense grid over basis pairs
/// γ_i ⊗ γ_j.
#[derive(Clone, PartialEq, Eq)]
pub struct DistTensor {
    field: Field,
    r: u32,
    len: usize,
    grid: Vec<FieldElement>,
}

impl DistTensor {
    pub fn zero(field: &Field, r: u32) -> Result<DistTensor> {
        let len = truncation_length(field.p(), r)?;
        Ok(DistTensor {
            field: field.clone(),
            r,
            len,
            grid: vec![field.zero(); len * len],
        })
    }

    /// a ⊗ b.
    pub fn pure(a: &DistElement, b: &DistElement) -> DistTensor {
        a.assert_compatible(b);
        let f = a.field().clone();
        let mut out = DistTensor::zero(&f, a.height()).expect("height already validated");
        for (i, &x) in a.coeffs().iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, &y) in b.coeffs().iter().enumerate() {
                out.set_coeff(i, j, f.mul(x, y));
            }
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

    pub fn is_symmetric(&self) -> bool {
        (0..self.len).all(|i| (0..i).all(|j| self.coeff(i, j) == self.coeff(j, i)))
    }

    fn assert_compatible(&self, other: &DistTensor) {
        assert!(self.field == other.field, "mixed fields");
        assert!(self.r == other.r, "mixed heights");
    }

    pub fn add(&self, other: &DistTensor) -> DistTensor {
        self.assert_compatible(other);
        let grid = self
            .grid
            .iter()
            .zip(&other.grid)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        DistTensor { field: self.field.clone(), r: self.r, len: self.len, grid }
    }

    pub fn sub(&self, other: &DistTensor) -> DistTensor {
        self.assert_compatible(other);
        let grid = self
            .grid
            .iter()
            .zip(&other.grid)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        DistTensor { field: self.field.clone(), r: self.r, len: self.len, grid }
    }

    /// Componentwise algebra product (a ⊗ b)(c ⊗ d) = ac ⊗ bd.
    pub fn mul(&self, other: &DistTensor) -> DistTensor {
        self.assert_compatible(other);
        let f = self.field.clone();
        let p = f.p();
        let len = self.len;
        let mut out = DistTensor::zero(&f, self.r).expect("height already validated");
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
                        let ci = binom_mod_p((i1 + i2) as u64, i1 as u64, p);
                        let cj = binom_mod_p((j1 + j2) as u64, j1 as u64, p);
                        let c = ci * cj % p;
                        if c == 0 {
                            continue;
                        }
                        let term = f.mul(f.mul(a, b), f.from_u64(c));
                        let cur = out.coeff(i1 + i2, j1 + j2);
                        out.set_coeff(i1 + i2, j1 + j2, f.add(cur, term));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for DistTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.len {
            for j in 0..self.len {
                let c = self.coeff(i, j);
                if !self.field.is_zero(c) {
                    terms.push(format!("{c:?}*(g{i}(x)g{j})"));
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
