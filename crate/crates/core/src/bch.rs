//! Baker-Campbell-Hausdorff group structure on block-strictly-upper
//! nilpotent algebras of class < p, and the glued exponential between
//! different parabolic block patterns of GL_n.
//!
//! For a composition (b_1, ..., b_k) of n, the model is the Lie algebra u
//! of matrices supported strictly above the block diagonal; its nilpotence
//! class is k - 1 and must stay below p so that the truncated series
//! exp_p / log_p convert exactly between (u, bch_mul) and the group U of
//! block-unipotent matrices.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{is_p_nilpotent, random_element, SquareMatrix};
use crate::oneparam::{exp_p, log_p};
use crate::report::Report;
use crate::rng::SplitMix64;

/// Standard parabolic block pattern of GL_n with its unipotent-radical
/// Lie algebra u (block-strictly-upper matrices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentRadicalModel {
    field: Field,
    blocks: Vec<usize>,
    n: usize,
    block_of: Vec<usize>,
}

impl UnipotentRadicalModel {
    pub fn new(field: &Field, blocks: &[usize]) -> Result<UnipotentRadicalModel> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidInput(
                "block sizes must be a nonempty list of positive integers".into(),
            ));
        }
        let class = blocks.len() as u64 - 1;
        if class >= field.p() {
            return Err(Error::InvalidInput(format!(
                "nilpotence class {class} must be below p = {}",
                field.p()
            )));
        }
        let n: usize = blocks.iter().sum();
        let mut block_of = Vec::with_capacity(n);
        for (b, &size) in blocks.iter().enumerate() {
            block_of.extend(std::iter::repeat(b).take(size));
        }
        Ok(UnipotentRadicalModel {
            field: field.clone(),
            blocks: blocks.to_vec(),
            n,
            block_of,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Nilpotence class of u: number of blocks minus one.
    pub fn class(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Whether position (i, j) lies strictly above the block diagonal.
    pub fn is_radical_position(&self, i: usize, j: usize) -> bool {
        self.block_of[i] < self.block_of[j]
    }

    pub fn radical_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.is_radical_position(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether the matrix is supported on radical positions only.
    pub fn contains(&self, m: &SquareMatrix) -> bool {
        if *m.field() != self.field || m.size() != self.n {
            return false;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.is_radical_position(i, j) && !self.field.is_zero(m.get(i, j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether g lies in the unipotent radical U, i.e. g - 1 in u.
    pub fn contains_unipotent(&self, g: &SquareMatrix) -> bool {
        if g.size() != self.n {
            return false;
        }
        self.contains(&g.sub(&SquareMatrix::identity(&self.field, self.n)))
    }

    pub fn element(&self, matrix: SquareMatrix) -> Result<BchElement> {
        if !self.contains(&matrix) {
            return Err(Error::InvalidInput(
                "matrix is not supported on the block-strictly-upper positions".into(),
            ));
        }
        Ok(BchElement { model: self.clone(), matrix })
    }

    pub fn zero(&self) -> BchElement {
        BchElement {
            model: self.clone(),
            matrix: SquareMatrix::zero(&self.field, self.n),
        }
    }

    pub fn random_radical(&self, rng: &mut SplitMix64) -> BchElement {
        let mut m = SquareMatrix::zero(&self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.is_radical_position(i, j) {
                    m.set(i, j, random_element(&self.field, rng));
                }
            }
        }
        BchElement { model: self.clone(), matrix: m }
    }

    /// Random invertible block-upper-triangular matrix (an element of the
    /// parabolic subgroup defined by the block pattern).
    pub fn random_parabolic(&self, rng: &mut SplitMix64, max_tries: usize) -> Result<SquareMatrix> {
        for _ in 0..max_tries {
            let mut m = SquareMatrix::zero(&self.field, self.n);
            for i in 0..self.n {
                for j in 0..self.n {
                    if self.block_of[i] <= self.block_of[j] {
                        m.set(i, j, random_element(&self.field, rng));
                    }
                }
            }
            if m.inverse().is_ok() {
                return Ok(m);
            }
        }
        Err(Error::Generation(format!(
            "no invertible parabolic element found in {max_tries} draws"
        )))
    }
}

/// Element of the unipotent-radical Lie algebra, multiplied with the BCH
/// group law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchElement {
    model: UnipotentRadicalModel,
    matrix: SquareMatrix,
}

impl BchElement {
    pub fn model(&self) -> &UnipotentRadicalModel {
        &self.model
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn neg(&self) -> BchElement {
        BchElement { model: self.model.clone(), matrix: self.matrix.neg() }
    }

    /// Group law: log_p(exp_p(x) exp_p(y)). Class < p keeps every series
    /// step exact, and the result lands back in u.
    pub fn bch_mul(&self, other: &BchElement) -> BchElement {
        assert!(self.model == other.model, "mixed block models");
        let p = self.model.field.p();
        debug_assert!(is_p_nilpotent(&self.matrix, p));
        let gx = exp_p(&self.matrix).expect("class < p");
        let gy = exp_p(&other.matrix).expect("class < p");
        let product = log_p(&gx.mul(&gy)).expect("block-unipotent product");
        debug_assert!(self.model.contains(&product));
        BchElement { model: self.model.clone(), matrix: product }
    }
}

/// The unique parabolic-equivariant isomorphism (u, bch) -> U with identity
/// tangent map: the truncated exponential restricted to u.
pub fn epsilon_p(x: &BchElement) -> SquareMatrix {
    exp_p(x.matrix()).expect("class < p")
}

/// Inverse of [`epsilon_p`]: the truncated logarithm, after checking the
/// argument lies in U.
pub fn epsilon_p_inverse(model: &UnipotentRadicalModel, u: &SquareMatrix) -> Result<BchElement> {
    if !model.contains_unipotent(u) {
        return Err(Error::NotUnipotent { p: model.field().p() });
    }
    let x = log_p(u)?;
    if !model.contains(&x) {
        return Err(Error::InternalConsistency(
            "logarithm left the block-strictly-upper algebra".into(),
        ));
    }
    model.element(x)
}

/// ε(s E_α) = I + s E_α for every radical position α and scalar s: the
/// exponential restricted to a root line is the elementary root
/// homomorphism. Exhaustive over positions and field elements.
pub fn check_root_clause(model: &UnipotentRadicalModel) -> Report {
    let field = model.field().clone();
    let mut report = Report::new(format!(
        "root-line clause for blocks {:?}, p = {}",
        model.blocks(),
        field.p()
    ));
    let mut checks = 0usize;
    let mut violations = 0usize;
    for (i, j) in model.radical_positions() {
        for s in field.elements() {
            checks += 1;
            let e = SquareMatrix::elementary(&field, model.size(), i, j).scale(s);
            let expected = SquareMatrix::identity(&field, model.size()).add(&e);
            let x = model.element(e).expect("root position is radical");
            if epsilon_p(&x) != expected {
                violations += 1;
            }
        }
    }
    report.push(
        "exponential on root lines is affine",
        violations == 0,
        format!("{checks} position-scalar pairs, {violations} violations"),
    );
    report
}

/// Equivariance of ε under the parabolic: ε(g x g^{-1}) = g ε(x) g^{-1}
/// for sampled g in P and x in u.
pub fn check_p_equivariance(
    model: &UnipotentRadicalModel,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let mut report = Report::new(format!(
        "parabolic equivariance for blocks {:?}, p = {}",
        model.blocks(),
        model.field().p()
    ));
    let mut rng = SplitMix64::new(seed);
    let mut violations = 0usize;
    for _ in 0..samples {
        let g = model.random_parabolic(&mut rng, 1000)?;
        let x = model.random_radical(&mut rng);
        let conj = x.matrix().conjugate_by(&g).expect("g is invertible");
        debug_assert!(model.contains(&conj), "parabolic fails to normalize u");
        let lhs = epsilon_p(&model.element(conj)?);
        let rhs = epsilon_p(&x).conjugate_by(&g).expect("g is invertible");
        if lhs != rhs {
            violations += 1;
        }
    }
    report.push(
        "parabolic equivariance",
        violations == 0,
        format!("{samples} samples, {violations} violations"),
    );
    Ok(report)
}

fn permutation_matrix(field: &Field, perm: &[usize]) -> SquareMatrix {
    let mut m = SquareMatrix::zero(field, perm.len());
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, field.one());
    }
    m
}

fn random_permutation(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}

/// Well-definedness of the glued exponential across two block patterns:
/// whenever g x g^{-1} lands in u_I for x in u_J, the two restricted
/// exponentials agree, ε_I(g x g^{-1}) = g ε_J(x) g^{-1}.
///
/// Samples are built as g = h_I w h_J with h's in the respective
/// parabolics and w a permutation; x is supported on the positions of u_J
/// that w carries into u_I, which guarantees the conjugation constraint.
pub fn check_cross_parabolic(
    model_i: &UnipotentRadicalModel,
    model_j: &UnipotentRadicalModel,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    assert!(
        model_i.field() == model_j.field() && model_i.size() == model_j.size(),
        "models must share field and size"
    );
    let field = model_i.field().clone();
    let n = model_i.size();
    let mut report = Report::new(format!(
        "cross-parabolic agreement {:?} vs {:?}, p = {}",
        model_i.blocks(),
        model_j.blocks(),
        field.p()
    ));
    let mut rng = SplitMix64::new(seed);
    let mut violations = 0usize;
    let mut nontrivial = 0usize;
    for _ in 0..samples {
        // Retry the permutation a few times so the transportable position
        // set is usually nonempty.
        let mut perm = random_permutation(n, &mut rng);
        let mut positions: Vec<(usize, usize)> = Vec::new();
        for _ in 0..10 {
            positions = model_j
                .radical_positions()
                .into_iter()
                .filter(|&(i, j)| model_i.is_radical_position(perm[i], perm[j]))
                .collect();
            if !positions.is_empty() {
                break;
            }
            perm = random_permutation(n, &mut rng);
        }
        let w = permutation_matrix(&field, &perm);
        let h_i = model_i.random_parabolic(&mut rng, 1000)?;
        let h_j = model_j.random_parabolic(&mut rng, 1000)?;
        let g = h_i.mul(&w).mul(&h_j);

        let mut y = SquareMatrix::zero(&field, n);
        for &(i, j) in &positions {
            y.set(i, j, random_element(&field, &mut rng));
        }
        // x = h_J^{-1} y h_J stays in u_J and g x g^{-1} = h_I (w y w^{-1}) h_I^{-1}
        // lands in u_I.
        let h_j_inv = h_j.inverse().expect("parabolic element is invertible");
        let x = h_j_inv.mul(&y).mul(&h_j);
        debug_assert!(model_j.contains(&x));
        let conj = x.conjugate_by(&g).expect("g is invertible");
        debug_assert!(model_i.contains(&conj));
        if !x.is_zero() {
            nontrivial += 1;
        }

        let lhs = epsilon_p(&model_i.element(conj)?);
        let rhs = epsilon_p(&model_j.element(x)?)
            .conjugate_by(&g)
            .expect("g is invertible");
        if lhs != rhs {
            violations += 1;
        }
    }
    report.push(
        "glued exponential well-defined",
        violations == 0,
        format!("{samples} samples ({nontrivial} nontrivial), {violations} violations"),
    );
    Ok(report)
}
