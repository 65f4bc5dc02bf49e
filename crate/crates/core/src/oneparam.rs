//! One-parameter subgroups G_{a(r)} -> GL_n, truncated exponentials, and
//! the coordinate correspondence with commuting nilpotent tuples.
//!
//! The central maps:
//!
//! * `exp_p` / `log_p`: truncated series, mutually inverse between
//!   {x : x^p = 0} and {g : (g-1)^p = 0} when n <= p.
//! * `lift`: a commuting tuple (x_0, ..., x_{r-1}) of p-nilpotent matrices
//!   goes to the height-r subgroup
//!   t -> exp(t x_0) exp(t^p x_1) ... exp(t^{p^{r-1}} x_{r-1}).
//! * `decompose`: the inverse, peeling one Frobenius layer at a time.

use crate::dist::DistElement;
use crate::error::{Error, Result};
use crate::field::{binom_mod_p, inverse_factorial_mod_p, Field, FieldElement};
use crate::matrix::{
    centralizer_basis, is_p_nilpotent, is_p_unipotent, random_element, random_invertible,
    random_strictly_upper, CommutingTuple, SquareMatrix,
};
use crate::report::Report;
use crate::rng::SplitMix64;
use crate::truncpoly::{truncation_length, PolyMatrix};

/// A validated homomorphism G_{a(r)} -> GL_n, carried by its coefficient
/// matrices: φ(t) = Σ A_m t^m with A_0 = I and
/// C(i+j, i) A_{i+j} = A_i A_j for all i, j (A_m = 0 past the truncation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    poly: PolyMatrix,
}

impl OneParamSubgroup {
    /// Validates the homomorphism law; prefer [`lift`], [`exp_line`] or
    /// [`saturate`] when the law holds by construction.
    pub fn new(poly: PolyMatrix) -> Result<OneParamSubgroup> {
        if let Some(reason) = homomorphism_defect(&poly) {
            return Err(Error::NotHomomorphism(reason));
        }
        Ok(OneParamSubgroup { poly })
    }

    fn from_validated(poly: PolyMatrix) -> OneParamSubgroup {
        debug_assert!(homomorphism_defect(&poly).is_none());
        OneParamSubgroup { poly }
    }

    pub fn trivial(field: &Field, n: usize, r: u32) -> Result<OneParamSubgroup> {
        Ok(OneParamSubgroup { poly: PolyMatrix::identity(field, n, r)? })
    }

    pub fn poly(&self) -> &PolyMatrix {
        &self.poly
    }

    pub fn into_poly(self) -> PolyMatrix {
        self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn size(&self) -> usize {
        self.poly.size()
    }

    pub fn height(&self) -> u32 {
        self.poly.height()
    }

    /// A_m, the image of the m-th divided power under the differential.
    pub fn coefficient(&self, m: usize) -> &SquareMatrix {
        self.poly.coeff(m)
    }

    pub fn evaluate(&self, at: FieldElement) -> SquareMatrix {
        self.poly.evaluate(at)
    }

    /// Conjugation g φ g^{-1}; the law is preserved.
    pub fn conjugate_by(&self, g: &SquareMatrix) -> Result<OneParamSubgroup> {
        Ok(OneParamSubgroup::from_validated(self.poly.conjugate_by(g)?))
    }
}

/// None when φ satisfies the homomorphism law, otherwise a description of
/// the first failing grid position.
///
/// The law φ(s+t) = φ(s) φ(t) in two truncated variables says exactly:
/// for all i, j < p^r, C(i+j, i) A_{i+j} = A_i A_j, where A_m = 0 for
/// m >= p^r. Products with a zero factor are skipped.
fn homomorphism_defect(phi: &PolyMatrix) -> Option<String> {
    let f = phi.field().clone();
    let n = phi.size();
    let p = f.p();
    let len = phi.len();
    if !phi.coeff(0).is_identity() {
        return Some("constant coefficient is not the identity".into());
    }
    let nonzero: Vec<bool> = phi.coeffs().iter().map(|a| !a.is_zero()).collect();
    let zero = SquareMatrix::zero(&f, n);
    for i in 0..len {
        for j in 0..len {
            let actual = if nonzero[i] && nonzero[j] {
                phi.coeff(i).mul(phi.coeff(j))
            } else {
                zero.clone()
            };
            let matches = if i + j < len {
                let b = binom_mod_p((i + j) as u64, i as u64, p);
                actual == phi.coeff(i + j).scale(f.from_u64(b))
            } else {
                actual.is_zero()
            };
            if !matches {
                return Some(format!("grid mismatch at s^{i} t^{j}"));
            }
        }
    }
    None
}

/// Whether φ(0) = I and φ(s+t) = φ(s) φ(t) as a two-variable identity.
pub fn verify_homomorphism(phi: &PolyMatrix) -> bool {
    homomorphism_defect(phi).is_none()
}

/// Σ_{i<p} x^i / i!; requires x^p = 0.
pub fn exp_p(x: &SquareMatrix) -> Result<SquareMatrix> {
    let f = x.field().clone();
    let p = f.p();
    if !is_p_nilpotent(x, p) {
        return Err(Error::NotNilpotent { p });
    }
    let mut acc = SquareMatrix::identity(&f, x.size());
    let mut power = SquareMatrix::identity(&f, x.size());
    for i in 1..p {
        power = power.mul(x);
        let coeff = f.from_u64(inverse_factorial_mod_p(i, p).expect("i < p"));
        acc = acc.add(&power.scale(coeff));
    }
    Ok(acc)
}

/// Σ_{i=1}^{p-1} (-1)^{i+1} (g-1)^i / i; requires (g-1)^p = 0.
pub fn log_p(g: &SquareMatrix) -> Result<SquareMatrix> {
    let f = g.field().clone();
    let p = f.p();
    if !is_p_unipotent(g, p) {
        return Err(Error::NotUnipotent { p });
    }
    let shifted = g.sub(&SquareMatrix::identity(&f, g.size()));
    let mut acc = SquareMatrix::zero(&f, g.size());
    let mut power = SquareMatrix::identity(&f, g.size());
    for i in 1..p {
        power = power.mul(&shifted);
        let mut coeff = f.inv(f.from_u64(i)).expect("0 < i < p");
        if i % 2 == 0 {
            coeff = f.neg(coeff);
        }
        acc = acc.add(&power.scale(coeff));
    }
    Ok(acc)
}

/// The parametric exponential t -> Σ_{i<p} x^i t^i / i! at height r.
/// x^p = 0 makes this a homomorphism: the grid law reduces to
/// C(i+j, i) x^{i+j} / (i+j)! = (x^i / i!)(x^j / j!), an identity of
/// binomials for i+j < p, while x^{i+j} = 0 for i+j >= p.
pub fn exp_line(x: &SquareMatrix, r: u32) -> Result<OneParamSubgroup> {
    let f = x.field().clone();
    let p = f.p();
    if !is_p_nilpotent(x, p) {
        return Err(Error::NotNilpotent { p });
    }
    let len = truncation_length(p, r)?;
    let mut poly = PolyMatrix::identity(&f, x.size(), r)?;
    let mut power = SquareMatrix::identity(&f, x.size());
    for i in 1..p.min(len as u64) {
        power = power.mul(x);
        let coeff = f.from_u64(inverse_factorial_mod_p(i, p).expect("i < p"));
        poly.set_coeff(i as usize, power.scale(coeff));
    }
    Ok(OneParamSubgroup::from_validated(poly))
}

/// The layered exponential: a commuting p-nilpotent tuple (x_0, ..., x_{r-1})
/// maps to Π_{i<r} exp_line(x_i) with t replaced by t^{p^i} in layer i.
pub fn lift(tuple: &CommutingTuple) -> Result<OneParamSubgroup> {
    lift_padded(tuple.layers(), tuple.height() as u32)
}

/// `lift` of the given layers padded with zeros up to height r.
/// Layers must already commute pairwise and satisfy x^p = 0.
fn lift_padded(layers: &[SquareMatrix], r: u32) -> Result<OneParamSubgroup> {
    assert!(!layers.is_empty() && layers.len() <= r as usize);
    let field = layers[0].field().clone();
    let n = layers[0].size();
    let mut acc = PolyMatrix::identity(&field, n, r)?;
    for (i, x) in layers.iter().enumerate() {
        let line = exp_line(x, r)?;
        acc = acc.mul(&line.poly().frobenius_twist(i as u32));
    }
    Ok(OneParamSubgroup::from_validated(acc))
}

/// Inverse of [`lift`]: reads off the layer matrices of a homomorphism.
///
/// x_0 is the degree-1 coefficient; layer i is the degree-p^i coefficient
/// corrected by the same coefficient of the lift of the layers found so
/// far. A result that fails nilpotency or commutation indicates a broken
/// invariant upstream, reported as an internal consistency error.
pub fn decompose(phi: &OneParamSubgroup) -> Result<CommutingTuple> {
    let field = phi.field().clone();
    let p = field.p();
    let r = phi.height();
    let mut layers = vec![phi.coefficient(1).clone()];
    for i in 1..r {
        let partial = lift_padded(&layers, r)?;
        let m = p.pow(i) as usize;
        let corrected = phi.coefficient(m).sub(partial.coefficient(m));
        layers.push(corrected);
    }
    CommutingTuple::new(layers).map_err(|e| {
        Error::InternalConsistency(format!("decomposition produced an invalid tuple: {e}"))
    })
}

/// The truncated exponential as a candidate exponential map on n x n
/// matrices over a fixed field, for the axiom verifier.
#[derive(Clone, Debug)]
pub struct ExponentialCandidate {
    field: Field,
    n: usize,
}

impl ExponentialCandidate {
    pub fn truncated_series(field: &Field, n: usize) -> ExponentialCandidate {
        ExponentialCandidate { field: field.clone(), n }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn apply(&self, x: &SquareMatrix) -> Result<SquareMatrix> {
        assert!(*x.field() == self.field && x.size() == self.n, "wrong domain");
        exp_p(x)
    }

    pub fn apply_line(&self, x: &SquareMatrix, r: u32) -> Result<OneParamSubgroup> {
        assert!(*x.field() == self.field && x.size() == self.n, "wrong domain");
        exp_line(x, r)
    }
}

/// Sample counts and seed for [`verify_exponential_axioms`].
#[derive(Clone, Copy, Debug)]
pub struct AxiomSampling {
    /// Number of p-nilpotent matrices to draw.
    pub nilpotents: usize,
    /// Scalar multiples s checked in the trivial-action clause.
    pub scalars: usize,
    /// Invertible conjugators for the equivariance clause.
    pub conjugators: usize,
    /// Commuting pairs for the image-commutation clause.
    pub pairs: usize,
    pub seed: u64,
}

impl Default for AxiomSampling {
    fn default() -> Self {
        AxiomSampling { nilpotents: 100, scalars: 20, conjugators: 50, pairs: 100, seed: 0 }
    }
}

/// Checks the defining axioms of an exponential map on sampled strictly
/// upper triangular (hence p-nilpotent, as n <= p is required) matrices:
///
/// 1. one-parameter: exp_line(x) satisfies the homomorphism law with
///    degree-1 coefficient x;
/// 2. trivial adjoint action on the centralizer: exp(sx) b exp(sx)^{-1} = b
///    for every basis element b of {b : xb = bx} and sampled s;
/// 3. equivariance: exp(g x g^{-1}) = g exp(x) g^{-1};
/// 4. injectivity on the sample set;
/// 5. commuting images: [x, y] = 0 implies exp(x) exp(y) = exp(y) exp(x).
pub fn verify_exponential_axioms(
    cand: &ExponentialCandidate,
    sampling: &AxiomSampling,
) -> Result<Report> {
    let field = cand.field().clone();
    let n = cand.size();
    let p = field.p();
    if n as u64 > p {
        return Err(Error::InvalidInput(format!(
            "axiom sampling draws strictly upper matrices and needs n <= p, got n = {n}, p = {p}"
        )));
    }
    let mut report = Report::new(format!("exponential axioms on gl_{n}, p = {p}"));
    let mut rng = SplitMix64::new(sampling.seed);

    let samples: Vec<SquareMatrix> = (0..sampling.nilpotents)
        .map(|_| random_strictly_upper(&field, n, &mut rng))
        .collect();

    let mut hom_violations = 0usize;
    let mut diff_violations = 0usize;
    for x in &samples {
        let line = cand.apply_line(x, 1)?;
        if !verify_homomorphism(line.poly()) {
            hom_violations += 1;
        }
        if line.coefficient(1) != x {
            diff_violations += 1;
        }
    }
    report.push(
        "one-parameter law",
        hom_violations == 0,
        format!("{} samples, {hom_violations} violations", samples.len()),
    );
    report.push(
        "differential recovers the argument",
        diff_violations == 0,
        format!("{} samples, {diff_violations} violations", samples.len()),
    );

    let mut centralizer_checks = 0usize;
    let mut centralizer_violations = 0usize;
    for x in &samples {
        let basis = centralizer_basis(x);
        for _ in 0..sampling.scalars {
            let s = random_element(&field, &mut rng);
            let g = cand.apply(&x.scale(s))?;
            let g_inv = g.inverse().expect("exponential of nilpotent is invertible");
            for b in &basis {
                centralizer_checks += 1;
                if g.mul(b).mul(&g_inv) != *b {
                    centralizer_violations += 1;
                }
            }
        }
    }
    report.push(
        "trivial action on centralizer",
        centralizer_violations == 0,
        format!("{centralizer_checks} checks, {centralizer_violations} violations"),
    );

    let mut equiv_violations = 0usize;
    for i in 0..sampling.conjugators {
        let g = random_invertible(&field, n, &mut rng, 1000)?;
        let x = &samples[i % samples.len()];
        let conj = x.conjugate_by(&g).expect("g is invertible");
        let lhs = cand.apply(&conj)?;
        let rhs = cand.apply(x)?.conjugate_by(&g).expect("g is invertible");
        if lhs != rhs {
            equiv_violations += 1;
        }
    }
    report.push(
        "equivariance under conjugation",
        equiv_violations == 0,
        format!("{} conjugators, {equiv_violations} violations", sampling.conjugators),
    );

    let mut injectivity_violations = 0usize;
    let images: Vec<SquareMatrix> = samples
        .iter()
        .map(|x| cand.apply(x))
        .collect::<Result<_>>()?;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            if samples[i] != samples[j] && images[i] == images[j] {
                injectivity_violations += 1;
            }
        }
    }
    report.push(
        "injectivity on the sample set",
        injectivity_violations == 0,
        format!("{} samples, {injectivity_violations} collisions", samples.len()),
    );

    let mut commuting_pairs = 0usize;
    let mut commuting_violations = 0usize;
    while commuting_pairs < sampling.pairs {
        let x = random_strictly_upper(&field, n, &mut rng);
        let y = random_strictly_upper(&field, n, &mut rng);
        if !x.commutes_with(&y) {
            continue;
        }
        commuting_pairs += 1;
        let (ex, ey) = (cand.apply(&x)?, cand.apply(&y)?);
        if ex.mul(&ey) != ey.mul(&ex) {
            commuting_violations += 1;
        }
    }
    report.push(
        "commuting arguments give commuting images",
        commuting_violations == 0,
        format!("{commuting_pairs} pairs, {commuting_violations} violations"),
    );

    Ok(report)
}

/// The rank-one family over F_p: φ_1(t) = 1 + tx, φ_2(t) = 1 + t^p x,
/// φ_3 = φ_1 φ_2 at height 2 for x = E12 in gl_2. Checks that φ_1 and φ_3
/// share the degree-1 coefficient, that their degree-p coefficients differ
/// by exactly x, and that the difference is traceless.
pub fn sl2_example_check(p: u64) -> Result<Report> {
    let field = Field::prime(p)?;
    let x = SquareMatrix::elementary(&field, 2, 0, 1);
    let phi1 = exp_line(&x, 2)?;
    let phi2 = OneParamSubgroup::from_validated(phi1.poly().frobenius_twist(1));
    let phi3 = OneParamSubgroup::new(phi1.poly().mul(phi2.poly()))?;

    let mut report = Report::new(format!("rank-one layered subgroup comparison, p = {p}"));
    report.push(
        "all three maps satisfy the homomorphism law",
        verify_homomorphism(phi1.poly())
            && verify_homomorphism(phi2.poly())
            && verify_homomorphism(phi3.poly()),
        "checked on the full two-variable grid",
    );
    report.push(
        "degree-1 coefficients agree",
        phi1.coefficient(1) == phi3.coefficient(1) && *phi1.coefficient(1) == x,
        "coefficient at t^1",
    );
    let diff = phi3
        .coefficient(p as usize)
        .sub(phi1.coefficient(p as usize));
    report.push(
        "degree-p coefficients differ by the nilpotent itself",
        diff == x,
        format!("coefficient at t^{p}"),
    );
    report.push(
        "difference is traceless",
        field.is_zero(diff.trace()),
        "lies in sl_2",
    );
    Ok(report)
}

/// The canonical one-parameter subgroup through a p-unipotent element:
/// φ_g = exp_line(log_p(g)), so φ_g(1) = g. Requires n <= p so that the
/// series pair is inverse and the line is a homomorphism.
pub fn saturate(g: &SquareMatrix, r: u32) -> Result<OneParamSubgroup> {
    let p = g.field().p();
    if g.size() as u64 > p {
        return Err(Error::InvalidInput(format!(
            "saturation needs n <= p, got n = {}, p = {p}",
            g.size()
        )));
    }
    exp_line(&log_p(g)?, r)
}

/// Determinant-compatibility of the exponential: trace-zero nilpotents land
/// in SL_n, both for single exponentials and along entire lifted subgroups.
pub fn sl_n_compatibility_check(
    field: &Field,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let p = field.p();
    if n as u64 > p {
        return Err(Error::InvalidInput(format!(
            "sampling draws strictly upper matrices and needs n <= p, got n = {n}, p = {p}"
        )));
    }
    let mut report = Report::new(format!("special-linear compatibility on gl_{n}, p = {p}"));
    let mut rng = SplitMix64::new(seed);

    let mut det_violations = 0usize;
    for _ in 0..samples {
        let x = random_strictly_upper(field, n, &mut rng);
        debug_assert!(field.is_zero(x.trace()));
        if !field.is_one(exp_p(&x)?.det()) {
            det_violations += 1;
        }
    }
    report.push(
        "exponentials of traceless nilpotents have det 1",
        det_violations == 0,
        format!("{samples} samples, {det_violations} violations"),
    );

    let mut curve_checks = 0usize;
    let mut curve_violations = 0usize;
    for _ in 0..samples {
        let tuple = crate::matrix::random_commuting_tuple(
            field,
            n,
            2,
            crate::matrix::TupleStrategy::CommonPowers,
            &mut rng,
            1,
        )?;
        let phi = lift(&tuple)?;
        for c in field.elements() {
            curve_checks += 1;
            if !field.is_one(phi.evaluate(c).det()) {
                curve_violations += 1;
            }
        }
    }
    report.push(
        "lifted subgroups take values in SL_n",
        curve_violations == 0,
        format!("{curve_checks} evaluations, {curve_violations} violations"),
    );
    Ok(report)
}

/// dφ(u_j): the coefficient of t^{p^j}, as a distribution-algebra pairing.
/// Provided for tests that phrase coefficient identities through the
/// generators of the divided-power algebra.
pub fn differential_at_generator(phi: &OneParamSubgroup, u: &DistElement) -> SquareMatrix {
    assert!(u.field() == phi.field() && u.len() == phi.poly().len(), "mixed parents");
    let f = phi.field().clone();
    let mut acc = SquareMatrix::zero(&f, phi.size());
    for (m, &c) in u.coeffs().iter().enumerate() {
        if !f.is_zero(c) {
            acc = acc.add(&phi.coefficient(m).scale(c));
        }
    }
    acc
}
