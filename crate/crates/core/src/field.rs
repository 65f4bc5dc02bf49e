use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 97;
pub const MAX_DEGREE: usize = 3;

/// A finite field F_{p^k} with 2 <= p <= 97 prime and k <= 3.
///
/// Extensions are F_p[x]/(poly) for a monic irreducible poly of degree k.
/// `Field` is a cheap-clone handle; elements are plain coefficient vectors
/// that only make sense relative to their parent field, and mixing parents
/// in arithmetic panics.
#[derive(Clone)]
pub struct Field {
    repr: Arc<FieldRepr>,
}

struct FieldRepr {
    p: u64,
    k: usize,
    /// Monic defining polynomial, poly[i] the coefficient of x^i; only the
    /// first k+1 entries are meaningful. Unused for k = 1.
    poly: [u64; MAX_DEGREE + 1],
}

/// Element of a [`Field`]: coefficients of 1, x, x^2 (entries beyond the
/// field degree are zero).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: [u64; MAX_DEGREE],
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::NotPrime(p));
        }
        Ok(Field {
            repr: Arc::new(FieldRepr {
                p,
                k: 1,
                poly: [0; MAX_DEGREE + 1],
            }),
        })
    }

    /// Extension field F_p[x]/(poly); `poly` lists coefficients of
    /// 1, x, ..., x^k and must be monic of degree 2 or 3.
    pub fn extension(p: u64, poly: &[u64]) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::NotPrime(p));
        }
        let k = poly.len().wrapping_sub(1);
        if !(2..=MAX_DEGREE).contains(&k) {
            return Err(Error::InvalidField(format!(
                "defining polynomial must have degree 2..={MAX_DEGREE}, got length {}",
                poly.len()
            )));
        }
        let mut reduced = [0u64; MAX_DEGREE + 1];
        for (i, &c) in poly.iter().enumerate() {
            reduced[i] = c % p;
        }
        if reduced[k] != 1 {
            return Err(Error::InvalidField(
                "defining polynomial must be monic".into(),
            ));
        }
        // Degree <= 3 and reducible implies a linear factor, so checking for
        // roots in F_p decides irreducibility.
        for a in 0..p {
            let mut value = 0u64;
            for i in (0..=k).rev() {
                value = (value * a + reduced[i]) % p;
            }
            if value == 0 {
                return Err(Error::ReduciblePolynomial { p });
            }
        }
        Ok(Field {
            repr: Arc::new(FieldRepr { p, k, poly: reduced }),
        })
    }

    pub fn p(&self) -> u64 {
        self.repr.p
    }

    pub fn degree(&self) -> usize {
        self.repr.k
    }

    pub fn order(&self) -> u64 {
        self.repr.p.pow(self.repr.k as u32)
    }

    pub fn defining_poly(&self) -> &[u64] {
        &self.repr.poly[..=self.repr.k]
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: [0; MAX_DEGREE] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut coeffs = [0; MAX_DEGREE];
        coeffs[0] = n % self.repr.p;
        FieldElement { coeffs }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.repr.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element with the given coefficients of 1, x, ..., reduced mod p.
    /// Panics if more than `degree` coefficients are supplied.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(
            coeffs.len() <= self.repr.k,
            "{} coefficients supplied for a degree-{} field",
            coeffs.len(),
            self.repr.k
        );
        let mut out = [0; MAX_DEGREE];
        for (i, &c) in coeffs.iter().enumerate() {
            out[i] = c % self.repr.p;
        }
        FieldElement { coeffs: out }
    }

    pub fn is_zero(&self, a: FieldElement) -> bool {
        a.coeffs == [0; MAX_DEGREE]
    }

    pub fn is_one(&self, a: FieldElement) -> bool {
        a == self.one()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.repr.p;
        let mut coeffs = [0; MAX_DEGREE];
        for i in 0..MAX_DEGREE {
            coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p;
        }
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.repr.p;
        let mut coeffs = [0; MAX_DEGREE];
        for i in 0..MAX_DEGREE {
            coeffs[i] = (p - a.coeffs[i]) % p;
        }
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.repr.p;
        let k = self.repr.k;
        if k == 1 {
            return FieldElement {
                coeffs: [a.coeffs[0] * b.coeffs[0] % p, 0, 0],
            };
        }
        // Schoolbook product (degree <= 4), then reduce by the monic
        // defining polynomial: x^k = -(poly[0] + ... + poly[k-1] x^{k-1}).
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let sub = c * self.repr.poly[i] % p;
                prod[d - k + i] = (prod[d - k + i] + p * p - sub) % p;
            }
        }
        let mut coeffs = [0; MAX_DEGREE];
        coeffs[..k].copy_from_slice(&prod[..k]);
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// The Frobenius endomorphism a -> a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.repr.p)
    }

    /// The `n`-th element in the enumeration order of [`Field::elements`];
    /// `n` must be below the field order.
    pub fn from_index(&self, mut n: u64) -> FieldElement {
        assert!(n < self.order(), "element index {n} out of range");
        let p = self.repr.p;
        let mut coeffs = [0; MAX_DEGREE];
        for c in coeffs.iter_mut().take(self.repr.k) {
            *c = n % p;
            n /= p;
        }
        FieldElement { coeffs }
    }

    /// All p^k elements in a fixed deterministic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |n| self.from_index(n))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.repr.p == other.repr.p
            && self.repr.k == other.repr.k
            && self.repr.poly == other.repr.poly
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.repr.k == 1 {
            write!(f, "F_{}", self.repr.p)
        } else {
            write!(
                f,
                "F_{{{}^{}}}{:?}",
                self.repr.p,
                self.repr.k,
                self.defining_poly()
            )
        }
    }
}

impl FieldElement {
    /// Coefficients of 1, x, x^2; entries past the field degree are zero.
    pub fn coeffs(&self) -> &[u64; MAX_DEGREE] {
        &self.coeffs
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs[1] == 0 && self.coeffs[2] == 0 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

/// n! mod p (zero when n >= p).
pub fn factorial_mod_p(n: u64, p: u64) -> u64 {
    if n >= p {
        return 0;
    }
    let mut acc = 1u64;
    for i in 2..=n {
        acc = acc * i % p;
    }
    acc
}

/// (n!)^{-1} mod p; defined only for n < p.
pub fn inverse_factorial_mod_p(n: u64, p: u64) -> Result<u64> {
    if n >= p {
        return Err(Error::FactorialDomain { m: n, p });
    }
    Ok(pow_mod(factorial_mod_p(n, p), p - 2, p))
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// C(n, m) mod p by Lucas' theorem: the product over base-p digits of
/// C(n_i, m_i), each digit binomial computed from factorials mod p.
pub fn binom_mod_p(mut n: u64, mut m: u64, p: u64) -> u64 {
    debug_assert!(is_prime(p));
    if m > n {
        return 0;
    }
    let mut acc = 1u64;
    while m > 0 || n > 0 {
        let (nd, md) = (n % p, m % p);
        if md > nd {
            return 0;
        }
        let num = factorial_mod_p(nd, p);
        let den = factorial_mod_p(md, p) * factorial_mod_p(nd - md, p) % p;
        acc = acc * num % p * pow_mod(den, p - 2, p) % p;
        n /= p;
        m /= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let two = f5.from_u64(2);
        let four = f5.from_u64(4);
        assert_eq!(f5.add(two, four), f5.from_u64(1));
        assert_eq!(f5.mul(two, four), f5.from_u64(3));
        assert_eq!(f5.sub(two, four), f5.from_u64(3));
        assert_eq!(f5.neg(f5.one()), four);
        assert_eq!(f5.inv(two).unwrap(), f5.from_u64(3));
        assert_eq!(f5.pow(two, 4), f5.one());
        assert_eq!(f5.from_i64(-3), two);
        assert!(f5.inv(f5.zero()).is_err());
    }

    #[test]
    fn f9_square_of_generator() {
        // F_9 = F_3[x]/(x^2 + 1): x * x = -1 = 2.
        let f9 = Field::extension(3, &[1, 0, 1]).unwrap();
        let x = f9.from_coeffs(&[0, 1]);
        assert_eq!(f9.mul(x, x), f9.from_u64(2));
        assert_eq!(f9.inv(x).unwrap(), f9.from_coeffs(&[0, 2]));
        assert_eq!(f9.frobenius(x), f9.from_coeffs(&[0, 2]));
        assert_eq!(f9.frobenius(f9.from_u64(2)), f9.from_u64(2));
    }

    #[test]
    fn f27_frobenius_fixed_points() {
        // x^3 + 2x + 2 has no root mod 3, so it is irreducible.
        let f27 = Field::extension(3, &[2, 2, 0, 1]).unwrap();
        assert_eq!(f27.order(), 27);
        for a in f27.elements() {
            assert_eq!(f27.pow(a, 27), a);
            if !f27.is_zero(a) {
                let b = f27.inv(a).unwrap();
                assert!(f27.is_one(f27.mul(a, b)));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::prime(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::prime(1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(Field::prime(101).unwrap_err(), Error::NotPrime(101));
        // x^2 + 2 = (x+1)(x+2) mod 3.
        assert_eq!(
            Field::extension(3, &[2, 0, 1]).unwrap_err(),
            Error::ReduciblePolynomial { p: 3 }
        );
        // Not monic.
        assert!(Field::extension(3, &[1, 0, 2]).is_err());
        // Degree out of range.
        assert!(Field::extension(3, &[1, 1]).is_err());
        assert!(Field::extension(3, &[1, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn element_enumeration_is_exhaustive() {
        let f9 = Field::extension(3, &[1, 0, 1]).unwrap();
        let all: Vec<_> = f9.elements().collect();
        assert_eq!(all.len(), 9);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binom_mod_p(3, 1, 3), 0);
        assert_eq!(binom_mod_p(4, 2, 5), 1);
        assert_eq!(binom_mod_p(4, 2, 7), 6);
        assert_eq!(binom_mod_p(2, 5, 7), 0);
        // C(p, i) = 0 mod p for 0 < i < p.
        for p in [2u64, 3, 5, 7, 11] {
            for i in 1..p {
                assert_eq!(binom_mod_p(p, i, p), 0);
            }
            assert_eq!(binom_mod_p(p, 0, p), 1);
            assert_eq!(binom_mod_p(p, p, p), 1);
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial_mod_p(4, 5), 4);
        assert_eq!(factorial_mod_p(5, 5), 0);
        assert_eq!(inverse_factorial_mod_p(4, 5).unwrap(), 4);
        assert_eq!(
            inverse_factorial_mod_p(5, 5).unwrap_err(),
            Error::FactorialDomain { m: 5, p: 5 }
        );
        for n in 0..7u64 {
            let f = factorial_mod_p(n, 7);
            let fi = inverse_factorial_mod_p(n, 7).unwrap();
            assert_eq!(f * fi % 7, 1);
        }
    }

    #[test]
    fn fields_compare_by_parameters() {
        let a = Field::prime(5).unwrap();
        let b = Field::prime(5).unwrap();
        let c = Field::prime(7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let d = Field::extension(3, &[1, 0, 1]).unwrap();
        let e = Field::extension(3, &[2, 2, 0, 1]).unwrap();
        assert_ne!(d, e);
    }
}
