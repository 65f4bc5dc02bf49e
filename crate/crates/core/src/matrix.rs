use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::rng::SplitMix64;

/// Dense n x n matrix over a [`Field`], row-major.
///
/// Arithmetic panics on mismatched fields or sizes; those are programming
/// errors, not data errors.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    field: Field,
    n: usize,
    data: Vec<FieldElement>,
}

impl SquareMatrix {
    pub fn zero(field: &Field, n: usize) -> SquareMatrix {
        assert!(n > 0, "empty matrix");
        SquareMatrix {
            field: field.clone(),
            n,
            data: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> SquareMatrix {
        let mut m = SquareMatrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix unit with a single 1 in row i, column j.
    pub fn elementary(field: &Field, n: usize, i: usize, j: usize) -> SquareMatrix {
        let mut m = SquareMatrix::zero(field, n);
        m.set(i, j, field.one());
        m
    }

    pub fn diagonal(field: &Field, entries: &[FieldElement]) -> SquareMatrix {
        let mut m = SquareMatrix::zero(field, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElement>]) -> SquareMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square");
        SquareMatrix {
            field: field.clone(),
            n,
            data: rows.concat(),
        }
    }

    /// Entries given as integers, reduced into the field's prime subfield.
    pub fn from_u64_rows(field: &Field, rows: &[Vec<u64>]) -> SquareMatrix {
        let converted: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_u64(v)).collect())
            .collect();
        SquareMatrix::from_rows(field, &converted)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.n + j] = v;
    }

    fn assert_compatible(&self, other: &SquareMatrix) {
        assert!(self.field == other.field, "matrices over different fields");
        assert!(self.n == other.n, "size mismatch: {} vs {}", self.n, other.n);
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        self.assert_compatible(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        SquareMatrix { field: self.field.clone(), n: self.n, data }
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        self.assert_compatible(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        SquareMatrix { field: self.field.clone(), n: self.n, data }
    }

    pub fn neg(&self) -> SquareMatrix {
        let data = self.data.iter().map(|&a| self.field.neg(a)).collect();
        SquareMatrix { field: self.field.clone(), n: self.n, data }
    }

    pub fn scale(&self, c: FieldElement) -> SquareMatrix {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        SquareMatrix { field: self.field.clone(), n: self.n, data }
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        self.assert_compatible(other);
        let f = &self.field;
        let n = self.n;
        let mut out = SquareMatrix::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> SquareMatrix {
        let mut acc = SquareMatrix::identity(&self.field, self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lie bracket [self, other] = self*other - other*self.
    pub fn commutator(&self, other: &SquareMatrix) -> SquareMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn commutes_with(&self, other: &SquareMatrix) -> bool {
        self.commutator(other).is_zero()
    }

    pub fn trace(&self) -> FieldElement {
        let mut t = self.field.zero();
        for i in 0..self.n {
            t = self.field.add(t, self.get(i, i));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        *self == SquareMatrix::identity(&self.field, self.n)
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.field.is_zero(self.get(i, j))))
    }

    pub fn det(&self) -> FieldElement {
        let f = &self.field;
        let n = self.n;
        let mut work = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !f.is_zero(work.get(r, col))) else {
                return f.zero();
            };
            if pivot != col {
                det = f.neg(det);
                for j in 0..n {
                    let (a, b) = (work.get(col, j), work.get(pivot, j));
                    work.set(col, j, b);
                    work.set(pivot, j, a);
                }
            }
            let lead = work.get(col, col);
            det = f.mul(det, lead);
            let scale = f.inv(lead).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(work.get(r, col), scale);
                if f.is_zero(factor) {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(work.get(r, j), f.mul(factor, work.get(col, j)));
                    work.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<SquareMatrix> {
        let f = &self.field;
        let n = self.n;
        let mut work = self.clone();
        let mut inv = SquareMatrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !f.is_zero(work.get(r, col)))
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (work.get(col, j), work.get(pivot, j));
                    work.set(col, j, b);
                    work.set(pivot, j, a);
                    let (a, b) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let scale = f.inv(work.get(col, col)).expect("pivot is nonzero");
            for j in 0..n {
                work.set(col, j, f.mul(scale, work.get(col, j)));
                inv.set(col, j, f.mul(scale, inv.get(col, j)));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.get(r, col);
                if f.is_zero(factor) {
                    continue;
                }
                for j in 0..n {
                    let w = f.sub(work.get(r, j), f.mul(factor, work.get(col, j)));
                    work.set(r, j, w);
                    let v = f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// g * self * g^{-1}.
    pub fn conjugate_by(&self, g: &SquareMatrix) -> Result<SquareMatrix> {
        let g_inv = g.inverse()?;
        Ok(g.mul(self).mul(&g_inv))
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            write!(f, "  [")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// x^p = 0, the nilpotency bound relevant to truncated exponentials.
pub fn is_p_nilpotent(x: &SquareMatrix, p: u64) -> bool {
    x.pow(p as usize).is_zero()
}

/// (g - 1)^p = 0.
pub fn is_p_unipotent(g: &SquareMatrix, p: u64) -> bool {
    let shifted = g.sub(&SquareMatrix::identity(g.field(), g.size()));
    is_p_nilpotent(&shifted, p)
}

/// A matrix checked to satisfy x^p = 0 for the parent field's p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentWitness {
    matrix: SquareMatrix,
}

impl NilpotentWitness {
    pub fn new(matrix: SquareMatrix) -> Result<NilpotentWitness> {
        let p = matrix.field().p();
        if !is_p_nilpotent(&matrix, p) {
            return Err(Error::NotNilpotent { p });
        }
        Ok(NilpotentWitness { matrix })
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.matrix
    }
}

/// A tuple (x_0, ..., x_{r-1}) of pairwise-commuting matrices with each
/// x_i^p = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingTuple {
    field: Field,
    n: usize,
    layers: Vec<SquareMatrix>,
}

impl CommutingTuple {
    pub fn new(layers: Vec<SquareMatrix>) -> Result<CommutingTuple> {
        assert!(!layers.is_empty(), "empty tuple");
        let field = layers[0].field().clone();
        let n = layers[0].size();
        assert!(
            layers.iter().all(|x| *x.field() == field && x.size() == n),
            "tuple entries over mixed fields or sizes"
        );
        let p = field.p();
        for x in &layers {
            if !is_p_nilpotent(x, p) {
                return Err(Error::NotNilpotent { p });
            }
        }
        for i in 0..layers.len() {
            for j in i + 1..layers.len() {
                if !layers[i].commutes_with(&layers[j]) {
                    return Err(Error::NotCommuting { i, j });
                }
            }
        }
        Ok(CommutingTuple { field, n, layers })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn height(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[SquareMatrix] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &SquareMatrix {
        &self.layers[i]
    }

    pub fn into_layers(self) -> Vec<SquareMatrix> {
        self.layers
    }
}

/// Dense rectangular matrix used for linear solving (kernels, ranks).
#[derive(Clone, Debug)]
pub struct RectMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl RectMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> RectMatrix {
        RectMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElement>]) -> RectMatrix {
        assert!(!rows.is_empty(), "empty matrix");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RectMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    let (a, b) = (self.get(row, j), self.get(pr, j));
                    self.set(row, j, b);
                    self.set(pr, j, a);
                }
            }
            let scale = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in 0..self.cols {
                self.set(row, j, f.mul(scale, self.get(row, j)));
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if f.is_zero(factor) {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel {v : Mv = 0}, one vector per free column,
    /// in increasing free-column order with a 1 in the free position.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field.clone();
        let mut work = self.clone();
        let pivots = work.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Basis of {y : xy = yx} inside all n x n matrices, found as the kernel of
/// the linear map y -> xy - yx on the n^2 matrix entries.
pub fn centralizer_basis(x: &SquareMatrix) -> Vec<SquareMatrix> {
    let f = x.field();
    let n = x.size();
    let mut system = RectMatrix::zero(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            // (xy)_{ij} contributes x_{ik} to column (k, j).
            for k in 0..n {
                let col = k * n + j;
                let cur = system.get(row, col);
                system.set(row, col, f.add(cur, x.get(i, k)));
            }
            // -(yx)_{ij} contributes -x_{kj} to column (i, k).
            for k in 0..n {
                let col = i * n + k;
                let cur = system.get(row, col);
                system.set(row, col, f.sub(cur, x.get(k, j)));
            }
        }
    }
    system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut m = SquareMatrix::zero(f, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, v[i * n + j]);
                }
            }
            m
        })
        .collect()
}

pub fn random_element(field: &Field, rng: &mut SplitMix64) -> FieldElement {
    field.from_index(rng.next_below(field.order()))
}

pub fn random_matrix(field: &Field, n: usize, rng: &mut SplitMix64) -> SquareMatrix {
    let mut m = SquareMatrix::zero(field, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, random_element(field, rng));
        }
    }
    m
}

pub fn random_strictly_upper(field: &Field, n: usize, rng: &mut SplitMix64) -> SquareMatrix {
    let mut m = SquareMatrix::zero(field, n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, random_element(field, rng));
        }
    }
    m
}

pub fn random_invertible(
    field: &Field,
    n: usize,
    rng: &mut SplitMix64,
    max_tries: usize,
) -> Result<SquareMatrix> {
    for _ in 0..max_tries {
        let m = random_matrix(field, n, rng);
        if m.inverse().is_ok() {
            return Ok(m);
        }
    }
    Err(Error::Generation(format!(
        "no invertible {n} x {n} matrix found in {max_tries} draws"
    )))
}

/// How to draw random commuting p-nilpotent tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleStrategy {
    /// Each entry is a random polynomial (without constant term) in one
    /// shared strictly upper triangular matrix. Commutation is automatic;
    /// requires n <= p so that strictly upper implies x^p = 0.
    CommonPowers,
    /// Entries drawn independently as strictly upper matrices, rejecting
    /// draws until all pairs commute and every entry satisfies x^p = 0.
    Independent,
}

pub fn random_commuting_tuple(
    field: &Field,
    n: usize,
    r: usize,
    strategy: TupleStrategy,
    rng: &mut SplitMix64,
    max_tries: usize,
) -> Result<CommutingTuple> {
    assert!(r > 0, "empty tuple requested");
    let p = field.p();
    match strategy {
        TupleStrategy::CommonPowers => {
            if n as u64 > p {
                return Err(Error::Generation(format!(
                    "common-powers sampling needs n <= p, got n = {n}, p = {p}"
                )));
            }
            let common = random_strictly_upper(field, n, rng);
            let mut powers = Vec::with_capacity(n);
            let mut acc = common.clone();
            for _ in 1..n {
                powers.push(acc.clone());
                acc = acc.mul(&common);
            }
            let layers = (0..r)
                .map(|_| {
                    let mut x = SquareMatrix::zero(field, n);
                    for pw in &powers {
                        x = x.add(&pw.scale(random_element(field, rng)));
                    }
                    x
                })
                .collect();
            CommutingTuple::new(layers)
        }
        TupleStrategy::Independent => {
            for _ in 0..max_tries {
                let layers: Vec<_> = (0..r)
                    .map(|_| random_strictly_upper(field, n, rng))
                    .collect();
                if let Ok(tuple) = CommutingTuple::new(layers) {
                    return Ok(tuple);
                }
            }
            Err(Error::Generation(format!(
                "no commuting {r}-tuple found in {max_tries} draws (n = {n}, p = {p})"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn elementary_bracket() {
        let f = f5();
        let e12 = SquareMatrix::elementary(&f, 3, 0, 1);
        let e23 = SquareMatrix::elementary(&f, 3, 1, 2);
        let e13 = SquareMatrix::elementary(&f, 3, 0, 2);
        assert_eq!(e12.commutator(&e23), e13);
        assert_eq!(e23.commutator(&e12), e13.neg());
    }

    #[test]
    fn diagonal_bracket_scales_root_vector() {
        let f = f5();
        let d = SquareMatrix::diagonal(&f, &[f.from_u64(1), f.from_u64(2)]);
        let e12 = SquareMatrix::elementary(&f, 2, 0, 1);
        assert_eq!(d.commutator(&e12), e12.scale(f.from_u64(4)));
    }

    #[test]
    fn determinants() {
        let f = f5();
        // det [[1,2],[3,4]] = -2 = 3 mod 5.
        let m = SquareMatrix::from_u64_rows(&f, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.det(), f.from_u64(3));
        let sing = SquareMatrix::from_u64_rows(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.det(), f.zero());
        assert_eq!(SquareMatrix::identity(&f, 4).det(), f.one());
        // Multiplicativity on random matrices.
        let mut rng = SplitMix64::new(77);
        for _ in 0..20 {
            let a = random_matrix(&f, 3, &mut rng);
            let b = random_matrix(&f, 3, &mut rng);
            assert_eq!(a.mul(&b).det(), f.mul(a.det(), b.det()));
        }
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let f = f5();
        let m = SquareMatrix::from_u64_rows(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let sing = SquareMatrix::from_u64_rows(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let f = f5();
        let m = RectMatrix::from_rows(
            &f,
            &[
                vec![f.from_u64(1), f.from_u64(2)],
                vec![f.from_u64(2), f.from_u64(4)],
            ],
        );
        assert_eq!(m.rank(), 1);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![f.from_u64(3), f.from_u64(1)]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Field::prime(7).unwrap();
        let mut rng = SplitMix64::new(9);
        for _ in 0..20 {
            let rows: Vec<Vec<FieldElement>> = (0..3)
                .map(|_| (0..5).map(|_| random_element(&f, &mut rng)).collect())
                .collect();
            let m = RectMatrix::from_rows(&f, &rows);
            let basis = m.kernel_basis();
            assert_eq!(m.rank() + basis.len(), 5);
            for v in basis {
                for row in &rows {
                    let mut dot = f.zero();
                    for (a, b) in row.iter().zip(&v) {
                        dot = f.add(dot, f.mul(*a, *b));
                    }
                    assert!(f.is_zero(dot));
                }
            }
        }
    }

    #[test]
    fn centralizer_dimensions() {
        let f = f5();
        let e12 = SquareMatrix::elementary(&f, 2, 0, 1);
        assert_eq!(centralizer_basis(&e12).len(), 2);
        // Regular nilpotent Jordan block: centralizer is spanned by its
        // powers, dimension n.
        let mut j3 = SquareMatrix::zero(&f, 3);
        j3.set(0, 1, f.one());
        j3.set(1, 2, f.one());
        let basis = centralizer_basis(&j3);
        assert_eq!(basis.len(), 3);
        for b in &basis {
            assert!(b.commutes_with(&j3));
        }
    }

    #[test]
    fn nilpotency_and_unipotency_checks() {
        let f = f5();
        let e12 = SquareMatrix::elementary(&f, 2, 0, 1);
        assert!(is_p_nilpotent(&e12, 5));
        assert!(!is_p_nilpotent(&SquareMatrix::identity(&f, 2), 5));
        let g = SquareMatrix::identity(&f, 2).add(&e12);
        assert!(is_p_unipotent(&g, 5));
        assert!(!is_p_unipotent(&e12, 5));
        assert!(NilpotentWitness::new(SquareMatrix::identity(&f, 2)).is_err());
        assert!(NilpotentWitness::new(e12).is_ok());
    }

    #[test]
    fn tuple_validation() {
        let f = f5();
        let e12 = SquareMatrix::elementary(&f, 2, 0, 1);
        let e21 = SquareMatrix::elementary(&f, 2, 1, 0);
        assert_eq!(
            CommutingTuple::new(vec![e12.clone(), e21]).unwrap_err(),
            Error::NotCommuting { i: 0, j: 1 }
        );
        assert_eq!(
            CommutingTuple::new(vec![SquareMatrix::identity(&f, 2)]).unwrap_err(),
            Error::NotNilpotent { p: 5 }
        );
        let ok = CommutingTuple::new(vec![e12.clone(), e12.scale(f.from_u64(3))]).unwrap();
        assert_eq!(ok.height(), 2);
        assert_eq!(ok.size(), 2);
    }

    #[test]
    fn common_powers_sampling_always_commutes() {
        let f = Field::prime(3).unwrap();
        let mut rng = SplitMix64::new(11);
        for _ in 0..50 {
            let t = random_commuting_tuple(&f, 3, 2, TupleStrategy::CommonPowers, &mut rng, 1)
                .unwrap();
            assert!(t.layer(0).commutes_with(t.layer(1)));
        }
        // n > p is rejected up front.
        assert!(matches!(
            random_commuting_tuple(&f, 4, 2, TupleStrategy::CommonPowers, &mut rng, 1),
            Err(Error::Generation(_))
        ));
    }

    #[test]
    fn independent_sampling_retries_until_commuting() {
        let f = f5();
        let mut rng = SplitMix64::new(17);
        let t = random_commuting_tuple(&f, 3, 2, TupleStrategy::Independent, &mut rng, 1000)
            .unwrap();
        assert!(t.layer(0).commutes_with(t.layer(1)));
        assert!(t.layer(0).is_strictly_upper());
    }

    #[test]
    fn random_invertible_is_invertible_and_deterministic() {
        let f = f5();
        let a = random_invertible(&f, 3, &mut SplitMix64::new(23), 100).unwrap();
        let b = random_invertible(&f, 3, &mut SplitMix64::new(23), 100).unwrap();
        assert_eq!(a, b);
        assert!(a.inverse().is_ok());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let f = f5();
        let mut rng = SplitMix64::new(31);
        let g = random_invertible(&f, 3, &mut rng, 100).unwrap();
        let x = random_matrix(&f, 3, &mut rng);
        let y = random_matrix(&f, 3, &mut rng);
        let lhs = x.mul(&y).conjugate_by(&g).unwrap();
        let rhs = x.conjugate_by(&g).unwrap().mul(&y.conjugate_by(&g).unwrap());
        assert_eq!(lhs, rhs);
    }
}
