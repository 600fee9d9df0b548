//! Real forms of the complex simple Lie algebra: the compact conjugation τ,
//! involutions θ = s^ε·χ with a sign character in place of exp(ad h'), the
//! conjugations σ = τθ, and the fixed real forms g(R) = k + i·m.
//!
//! A sign character replaces exp(ad_{h'}): an involution forces the inner part
//! to act on every root vector by ±1, i.e. by a lattice character with values
//! in {±1}, which keeps all matrices rational.

use crate::error::MathError;
use crate::liealg::{lift_root_bijection, WeylBasisAlgebra};
use crate::matrix::Matrix;
use crate::rootsys::DiagramAutomorphism;
use crate::scalar::Scalar;
use crate::subspace::{
    echelon_basis_tagged, kernel_real, realify_linear, semilinear_fixed_space, FieldTag,
    SemilinearMap, Subspace,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::rc::Rc;

/// A map Π → {±1} extended multiplicatively over the root lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignCharacter {
    pub signs: Vec<i8>,
}

impl SignCharacter {
    pub fn trivial(rank: usize) -> Self {
        SignCharacter {
            signs: vec![1; rank],
        }
    }

    pub fn new(signs: Vec<i8>) -> Result<Self, MathError> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(MathError::Invalid("sign character values must be ±1".into()));
        }
        Ok(SignCharacter { signs })
    }

    /// χ(β) for a lattice vector β; χ(−β) = χ(β) since values square to 1.
    pub fn value(&self, coords: &[i64]) -> i8 {
        let mut v = 1i8;
        for (k, &c) in coords.iter().enumerate() {
            if c.rem_euclid(2) == 1 && self.signs[k] == -1 {
                v = -v;
            }
        }
        v
    }
}

/// θ = s^ε · χ as an exact matrix over the Weyl basis.
#[derive(Clone, Debug)]
pub struct Involution {
    pub s: DiagramAutomorphism,
    pub epsilon: u8,
    pub chi: SignCharacter,
    pub matrix: Matrix,
}

/// A semilinear conjugation x ↦ L·conj(x) that is a bracket automorphism.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub semilinear: SemilinearMap,
    pub inner: bool,
}

/// σ, its fixed real form, and the Cartan decomposition data.
#[derive(Clone, Debug)]
pub struct RealFormData {
    pub algebra: Rc<WeylBasisAlgebra>,
    pub theta: Involution,
    pub sigma: Conjugation,
    /// Fixed space of σ in realified coordinates; rational dim = dim_C g.
    pub g_real: Subspace,
    pub k_part: Subspace,
    pub m_part: Subspace,
}

impl RealFormData {
    pub fn epsilon(&self) -> u8 {
        self.theta.epsilon
    }

    pub fn is_inner(&self) -> bool {
        self.sigma.inner
    }
}

/// The compact conjugation: τ(H) = −H, τ(E_β) = −(2/(β,β))·E_{−β},
/// τ(E_{−β}) = −((β,β)/2)·E_β, semilinear. Its fixed space is the compact form.
pub fn tau(alg: &WeylBasisAlgebra) -> Conjugation {
    let rs = &alg.root_system;
    let n = alg.rank();
    let p = alg.num_positive();
    let mut m = Matrix::zero(alg.dim, alg.dim);
    for k in 0..n {
        m[(k, k)] = Scalar::from_int(-1);
    }
    for i in 0..p {
        let len = rs.pairing(&rs.positive_roots[i].coords, &rs.positive_roots[i].coords);
        let kappa = BigRational::new(BigInt::from(2), BigInt::from(1)) / &len;
        let e = alg.e_index(i, 1);
        let f = alg.e_index(i, -1);
        m[(f, e)] = Scalar::from_rational(-kappa.clone());
        m[(e, f)] = Scalar::from_rational(-kappa.recip());
    }
    let semilinear = SemilinearMap::new(m);
    debug_assert!(semilinear.is_involutive());
    debug_assert!(is_semilinear_automorphism(alg, &semilinear));
    Conjugation {
        semilinear,
        inner: true,
    }
}

/// Bracket compatibility of a semilinear map: T[x,y] = [Tx,Ty] on basis pairs.
pub fn is_semilinear_automorphism(alg: &WeylBasisAlgebra, t: &SemilinearMap) -> bool {
    let dim = alg.dim;
    let cols: Vec<Vec<Scalar>> = (0..dim).map(|j| t.matrix.col(j)).collect();
    for a in 0..dim {
        for b in 0..dim {
            let mut lhs = vec![Scalar::zero(); dim];
            for (k, c) in alg.bracket_basis(a, b) {
                // T(c·e_k) = conj(c)·T(e_k)
                let cc = c.conj();
                for (i, x) in cols[*k].iter().enumerate() {
                    if !x.is_zero() {
                        lhs[i] += &cc * x;
                    }
                }
            }
            let rhs = alg.bracket_vec(&cols[a], &cols[b]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Bracket compatibility of a linear map.
pub fn is_linear_automorphism(alg: &WeylBasisAlgebra, m: &Matrix) -> bool {
    let dim = alg.dim;
    let cols: Vec<Vec<Scalar>> = (0..dim).map(|j| m.col(j)).collect();
    for a in 0..dim {
        for b in 0..dim {
            let mut lhs = vec![Scalar::zero(); dim];
            for (k, c) in alg.bracket_basis(a, b) {
                for (i, x) in cols[*k].iter().enumerate() {
                    if !x.is_zero() {
                        lhs[i] += c * x;
                    }
                }
            }
            let rhs = alg.bracket_vec(&cols[a], &cols[b]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// θ = s^ε·χ: θ|h = s^ε, θ(E_β) = χ(β)·(lift of s^ε)(E_β). The lift of the
/// diagram automorphism through the structure constants fixes the signs so
/// that θ is an automorphism.
pub fn build_theta(
    alg: &Rc<WeylBasisAlgebra>,
    s: &DiagramAutomorphism,
    epsilon: u8,
    chi: &SignCharacter,
) -> Result<Involution, MathError> {
    let rs = Rc::clone(&alg.root_system);
    let n = alg.rank();
    if chi.signs.len() != n {
        return Err(MathError::DimensionMismatch(
            "sign character length != rank".into(),
        ));
    }
    if epsilon > 1 {
        return Err(MathError::Invalid("epsilon must be 0 or 1".into()));
    }
    if !rs.preserves_cartan(s) {
        return Err(MathError::Invalid(
            "permutation does not preserve the Cartan matrix".into(),
        ));
    }
    if epsilon == 1 {
        for k in 0..n {
            if chi.signs[s.apply_index(k)] != chi.signs[k] {
                return Err(MathError::Invalid(
                    "incompatible (s, χ): χ∘s = χ is required for θ² = 1".into(),
                ));
            }
        }
    }

    let mut m = Matrix::zero(alg.dim, alg.dim);
    if epsilon == 0 {
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        for i in 0..alg.num_positive() {
            let chi_v = chi.value(&rs.positive_roots[i].coords);
            for sg in [1i8, -1i8] {
                let idx = alg.e_index(i, sg);
                m[(idx, idx)] = Scalar::from_int(chi_v as i64);
            }
        }
    } else {
        let full_map: HashMap<usize, usize> = (0..n).map(|k| (k, s.apply_index(k))).collect();
        let lift = lift_root_bijection(alg, &full_map)?;
        for k in 0..n {
            m[(s.apply_index(k), k)] = Scalar::one();
        }
        for i in 0..alg.num_positive() {
            let chi_v = chi.value(&rs.positive_roots[i].coords);
            for sg in [1i8, -1i8] {
                let ((ti, ts), coeff) = lift.image_of_e((i, sg)).expect("full domain");
                let target = alg.e_index(ti, ts);
                let src = alg.e_index(i, sg);
                m[(target, src)] =
                    Scalar::from_rational(coeff * BigRational::from_integer(BigInt::from(chi_v)));
            }
        }
    }

    if &m * &m != Matrix::identity(alg.dim) {
        return Err(MathError::NotInvolutive);
    }
    if !is_linear_automorphism(alg, &m) {
        return Err(MathError::Invalid("θ is not a bracket automorphism".into()));
    }
    let t = tau(alg).semilinear;
    if &t.matrix * &m != &m * &t.matrix {
        return Err(MathError::Invalid("θ does not commute with τ".into()));
    }

    Ok(Involution {
        s: s.clone(),
        epsilon,
        chi: chi.clone(),
        matrix: m,
    })
}

/// σ = τ∘θ; the form is inner exactly when ε = 0.
pub fn sigma_from(alg: &WeylBasisAlgebra, theta: &Involution) -> Conjugation {
    let t = tau(alg);
    // σ(x) = τ(θ x) = M_τ·conj(M_θ x) = (M_τ M_θ)·conj(x), M_θ real.
    let m = &t.semilinear.matrix * &theta.matrix;
    let semilinear = SemilinearMap::new(m);
    debug_assert!(semilinear.is_involutive());
    debug_assert!(is_semilinear_automorphism(alg, &semilinear));
    Conjugation {
        semilinear,
        inner: theta.epsilon == 0,
    }
}

/// Assembles g(R) = fixed(σ) together with the Cartan decomposition
/// u = k ⊕ m, g(R) = k + i·m.
pub fn real_form(
    alg: &Rc<WeylBasisAlgebra>,
    theta: &Involution,
) -> Result<RealFormData, MathError> {
    let sigma = sigma_from(alg, theta);
    let g_real = semilinear_fixed_space(&sigma.semilinear)?;
    if g_real.dim() != alg.dim {
        return Err(MathError::Invalid(
            "real form has wrong rational dimension".into(),
        ));
    }
    let u = semilinear_fixed_space(&tau(alg).semilinear)?;
    let theta_r = realify_linear(&theta.matrix);
    let id = Matrix::identity(2 * alg.dim);
    let k_space = kernel_real(&(&theta_r - &id));
    let m_space = kernel_real(&(&theta_r + &id));
    let k_part = u.intersect(&k_space);
    let m_part = u.intersect(&m_space);
    if k_part.dim() + m_part.dim() != alg.dim {
        return Err(MathError::Invalid("u = k ⊕ m decomposition failed".into()));
    }
    // g(R) = k + i·m
    let j = realify_linear(&Matrix::identity(alg.dim).scale(&Scalar::i()));
    let im = m_part.map(&j);
    let mut vecs = k_part.basis.clone();
    vecs.extend(im.basis.clone());
    let rebuilt = echelon_basis_tagged(2 * alg.dim, vecs, FieldTag::RealRestricted);
    if rebuilt != g_real {
        return Err(MathError::Invalid("g(R) ≠ k + i·m".into()));
    }
    Ok(RealFormData {
        algebra: Rc::clone(alg),
        theta: theta.clone(),
        sigma,
        g_real,
        k_part,
        m_part,
    })
}

/// t = Σ R·iH_α, the compact Cartan, as a subspace of the realified algebra.
pub fn compact_torus(alg: &WeylBasisAlgebra) -> Subspace {
    let n = alg.rank();
    let vecs = (0..n)
        .map(|k| crate::subspace::unit_vector(2 * alg.dim, 2 * k + 1))
        .collect();
    echelon_basis_tagged(2 * alg.dim, vecs, FieldTag::RealRestricted)
}

/// Exact Killing signature (pos, neg, zero) on a real-restricted subspace,
/// by rational congruence diagonalization.
#[allow(clippy::needless_range_loop)]
pub fn killing_signature(alg: &WeylBasisAlgebra, v: &Subspace) -> (usize, usize, usize) {
    assert_eq!(v.field_tag, FieldTag::RealRestricted);
    let d = v.dim();
    let mut g: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let kv = alg.killing_realified(&v.basis[i], &v.basis[j]);
            assert!(kv.is_real(), "Killing form must be real on a real form");
            g[i][j] = kv.re;
        }
    }
    signature_of_symmetric(&mut g)
}

/// Signature of a symmetric rational matrix by congruence transforms.
#[allow(clippy::needless_range_loop)]
fn signature_of_symmetric(g: &mut [Vec<BigRational>]) -> (usize, usize, usize) {
    let n = g.len();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(l) = (k + 1..n).find(|&l| !g[l][l].is_zero()) {
                for row in g.iter_mut() {
                    row.swap(k, l);
                }
                g.swap(k, l);
            } else if let Some(l) = (k + 1..n).find(|&l| !g[k][l].is_zero()) {
                // row_k += row_l and col_k += col_l makes the pivot 2·g[k][l]
                for j in 0..n {
                    let add = g[l][j].clone();
                    g[k][j] += add;
                }
                for row in g.iter_mut() {
                    let add = row[l].clone();
                    row[k] += add;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let pivot = g[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] / &pivot;
            for j in 0..n {
                let delta = &f * &g[k][j];
                g[i][j] -= delta;
            }
            for row in g.iter_mut() {
                let delta = &f * &row[k];
                row[i] -= delta;
            }
        }
    }
    (pos, neg, zero)
}
