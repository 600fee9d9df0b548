//! Double algebras g⊗A and their invariant forms: the two complex doubles
//! (j² = 0 and j² = 1/4 with orthogonal idempotents e, f), the three real
//! doubles, and the conjugation σ̄ on the split double with σ̄e = f, σ̄f = e.
//!
//! In A₂ the elements e = 1/2 + j, f = 1/2 − j are orthogonal idempotents
//! (e² = e, f² = f, ef = 0); the bracket in ge + gf is componentwise.

use crate::error::MathError;
use crate::liealg::WeylBasisAlgebra;
use crate::matrix::Matrix;
use crate::realform::{Conjugation, RealFormData};
use crate::scalar::Scalar;
use crate::subspace::{echelon_basis_tagged, FieldTag, SemilinearMap, Subspace};
use std::fmt;
use std::rc::Rc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DoubleVariant {
    /// g ⊗ C[t]/(t²)
    NilpotentC,
    /// g ⊗ C[t]/(t²−1/4) = ge + gf
    SplitC,
    /// g(R) ⊗ R[t]/(t²)
    RealCase1,
    /// g(R) ⊗ R[t]/(t²−1/4)
    RealCase2,
    /// g(R) ⊗ C, i.e. the realification of g with Q_R = 2·Im K
    RealCase3,
}

impl DoubleVariant {
    pub fn tag(&self) -> &'static str {
        match self {
            DoubleVariant::NilpotentC => "A1C",
            DoubleVariant::SplitC => "A2C",
            DoubleVariant::RealCase1 => "A1R",
            DoubleVariant::RealCase2 => "A2R",
            DoubleVariant::RealCase3 => "A3R",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self, MathError> {
        match s {
            "A1C" => Ok(DoubleVariant::NilpotentC),
            "A2C" => Ok(DoubleVariant::SplitC),
            "A1R" => Ok(DoubleVariant::RealCase1),
            "A2R" => Ok(DoubleVariant::RealCase2),
            "A3R" => Ok(DoubleVariant::RealCase3),
            _ => Err(MathError::Parse(format!("unknown double variant {s:?}"))),
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, DoubleVariant::NilpotentC | DoubleVariant::SplitC)
    }
}

/// The double as a concrete algebra: a basis, a sparse bracket table, and the
/// Killing data its invariant forms are built from.
pub struct DoubleAlgebra {
    pub variant: DoubleVariant,
    pub base: Rc<WeylBasisAlgebra>,
    /// Total basis size: 2·dim_C g for complex doubles, 2·dim_R g(R) for real.
    pub dim: usize,
    pub field: FieldTag,
    table: Vec<Vec<(usize, Scalar)>>,
    /// Invariant-form gram matrix at scale 1.
    base_gram: Matrix,
    /// Basis of g(R) used by the real doubles of cases 1 and 2.
    pub real_basis: Option<Vec<Vec<Scalar>>>,
}

impl fmt::Debug for DoubleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleAlgebra({}, dim {})", self.variant.tag(), self.dim)
    }
}

#[derive(Clone, Debug)]
pub struct InvariantForm {
    pub scale: Scalar,
    pub gram: Matrix,
}

impl DoubleAlgebra {
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a * self.dim + b]
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (k, c) in self.bracket_basis(a, b) {
                    out[*k] += &f * c;
                }
            }
        }
        out
    }

    /// Closure test; on failure returns the offending basis pair.
    pub fn closure_failure(&self, v: &Subspace) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        for x in &v.basis {
            for y in &v.basis {
                let br = self.bracket_vec(x, y);
                if !v.contains_vector(&br) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    /// Embed an element of g into a complex double: part 0 is the 1- or
    /// e-component, part 1 the j- or f-component.
    pub fn embed(&self, x: &[Scalar], part: usize) -> Vec<Scalar> {
        assert!(!self.variant.is_real());
        let d = self.base.dim;
        assert_eq!(x.len(), d);
        let mut v = vec![Scalar::zero(); self.dim];
        for (k, c) in x.iter().enumerate() {
            v[part * d + k] = c.clone();
        }
        v
    }

    /// The canonical first subalgebra: the diagonal {xe + xf} = g⊗1 for the
    /// split double, g⊗1 for the nilpotent one.
    pub fn canonical_g_sub(&self) -> Subspace {
        let d = self.base.dim;
        match self.variant {
            DoubleVariant::SplitC => {
                let vecs = (0..d)
                    .map(|k| {
                        let mut v = vec![Scalar::zero(); self.dim];
                        v[k] = Scalar::one();
                        v[d + k] = Scalar::one();
                        v
                    })
                    .collect();
                echelon_basis_tagged(self.dim, vecs, FieldTag::Complex)
            }
            DoubleVariant::NilpotentC => {
                let vecs = (0..d)
                    .map(|k| {
                        let mut v = vec![Scalar::zero(); self.dim];
                        v[k] = Scalar::one();
                        v
                    })
                    .collect();
                echelon_basis_tagged(self.dim, vecs, FieldTag::Complex)
            }
            _ => panic!("canonical_g_sub of a real double requires the real form"),
        }
    }
}

/// The two complex doubles of g.
pub fn build_double(base: Rc<WeylBasisAlgebra>, variant: DoubleVariant) -> DoubleAlgebra {
    let d = base.dim;
    let dim = 2 * d;
    let mut table = vec![Vec::new(); dim * dim];
    match variant {
        DoubleVariant::NilpotentC => {
            // parts: 0 ↦ g⊗1, 1 ↦ g⊗j with j² = 0
            for a in 0..d {
                for b in 0..d {
                    let br = base.bracket_basis(a, b).to_vec();
                    table[a * dim + b] = br.clone();
                    table[a * dim + (d + b)] = br.iter().map(|(k, c)| (d + k, c.clone())).collect();
                    table[(d + a) * dim + b] = br.iter().map(|(k, c)| (d + k, c.clone())).collect();
                }
            }
        }
        DoubleVariant::SplitC => {
            // parts: 0 ↦ ge, 1 ↦ gf; componentwise bracket, cross terms vanish
            for a in 0..d {
                for b in 0..d {
                    let br = base.bracket_basis(a, b).to_vec();
                    table[a * dim + b] = br.clone();
                    table[(d + a) * dim + (d + b)] =
                        br.iter().map(|(k, c)| (d + k, c.clone())).collect();
                }
            }
        }
        _ => panic!("build_double builds the complex doubles; use real_double"),
    }

    let mut base_gram = Matrix::zero(dim, dim);
    match variant {
        DoubleVariant::NilpotentC => {
            // Q(a+bj, a'+b'j) = K(a,b') + K(b,a')
            for x in 0..d {
                for y in 0..d {
                    let kv = base.killing_basis(x, y);
                    if !kv.is_zero() {
                        base_gram[(x, d + y)] = kv.clone();
                        base_gram[(d + x, y)] = kv;
                    }
                }
            }
        }
        DoubleVariant::SplitC => {
            // Q(ae+bf, a'e+b'f) = K(a,a') − K(b,b')
            for x in 0..d {
                for y in 0..d {
                    let kv = base.killing_basis(x, y);
                    if !kv.is_zero() {
                        base_gram[(x, y)] = kv.clone();
                        base_gram[(d + x, d + y)] = -kv;
                    }
                }
            }
        }
        _ => unreachable!(),
    }

    DoubleAlgebra {
        variant,
        base,
        dim,
        field: FieldTag::Complex,
        table,
        base_gram,
        real_basis: None,
    }
}

/// The invariant form at a nonzero scale (real for real doubles).
pub fn q_form(d: &DoubleAlgebra, scale: Scalar) -> Result<InvariantForm, MathError> {
    if scale.is_zero() {
        return Err(MathError::Invalid("the form scale must be nonzero".into()));
    }
    if d.variant.is_real() && !scale.is_real() {
        return Err(MathError::Invalid(
            "real doubles take a real form scale".into(),
        ));
    }
    Ok(InvariantForm {
        gram: d.base_gram.scale(&scale),
        scale,
    })
}

impl InvariantForm {
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y);
        let mut acc = Scalar::zero();
        for (xk, gk) in x.iter().zip(&gy) {
            if !xk.is_zero() && !gk.is_zero() {
                acc += xk * gk;
            }
        }
        acc
    }
}

/// The three real doubles. Cases 1 and 2 are g(R) ⊗ R[t]/(t²) and
/// g(R) ⊗ R[t]/(t²−1/4) over a basis of g(R); case 3 is the realification of
/// g with the rational-valued form Q_R(x,y) = 2·Im K(x,y).
pub fn real_double(rf: &RealFormData, variant: DoubleVariant) -> DoubleAlgebra {
    let base = Rc::clone(&rf.algebra);
    match variant {
        DoubleVariant::RealCase1 | DoubleVariant::RealCase2 => {
            let gr = &rf.g_real;
            let d = gr.dim();
            let dim = 2 * d;
            let mut sc: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d * d];
            for i in 0..d {
                for j in 0..d {
                    let br = base.bracket_realified(&gr.basis[i], &gr.basis[j]);
                    let coords = gr.coordinates_of(&br).expect("g(R) is bracket-closed");
                    sc[i * d + j] = coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                }
            }
            let jj = match variant {
                DoubleVariant::RealCase1 => Scalar::zero(),
                _ => Scalar::from_ratio(1, 4),
            };
            let mut table = vec![Vec::new(); dim * dim];
            for a in 0..d {
                for b in 0..d {
                    let br = &sc[a * d + b];
                    table[a * dim + b] = br.clone();
                    table[a * dim + (d + b)] = br.iter().map(|(k, c)| (d + k, c.clone())).collect();
                    table[(d + a) * dim + b] = br.iter().map(|(k, c)| (d + k, c.clone())).collect();
                    if !jj.is_zero() {
                        table[(d + a) * dim + (d + b)] =
                            br.iter().map(|(k, c)| (*k, c * &jj)).collect();
                    }
                }
            }
            // Q(a+bJ, a'+b'J) = K_R(a,b') + K_R(b,a')
            let mut base_gram = Matrix::zero(dim, dim);
            for x in 0..d {
                for y in 0..d {
                    let kv = base.killing_realified(&gr.basis[x], &gr.basis[y]);
                    assert!(kv.is_real(), "K_R is real on g(R)");
                    if !kv.is_zero() {
                        base_gram[(x, d + y)] = kv.clone();
                        base_gram[(d + x, y)] = kv;
                    }
                }
            }
            DoubleAlgebra {
                variant,
                base,
                dim,
                field: FieldTag::RealRestricted,
                table,
                base_gram,
                real_basis: Some(gr.basis.clone()),
            }
        }
        DoubleVariant::RealCase3 => case3_double(base),
        _ => panic!("real_double builds the real doubles"),
    }
}

/// The case-3 double: the realification of g with Q_R(x,y) = 2·Im K(x,y).
/// It depends only on the complex algebra, not on the chosen real form.
pub fn case3_double(base: Rc<WeylBasisAlgebra>) -> DoubleAlgebra {
    let d = base.dim;
    let dim = 2 * d;
    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        let ua = crate::subspace::unit_vector(dim, a);
        for b in 0..dim {
            let ub = crate::subspace::unit_vector(dim, b);
            let br = base.bracket_realified(&ua, &ub);
            table[a * dim + b] = br
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    let mut base_gram = Matrix::zero(dim, dim);
    for a in 0..dim {
        let ua = crate::subspace::unit_vector(dim, a);
        for b in 0..dim {
            let ub = crate::subspace::unit_vector(dim, b);
            let kv = base.killing_realified(&ua, &ub);
            let two_im = Scalar::from_rational(kv.im.clone() + kv.im);
            if !two_im.is_zero() {
                base_gram[(a, b)] = two_im;
            }
        }
    }
    DoubleAlgebra {
        variant: DoubleVariant::RealCase3,
        base,
        dim,
        field: FieldTag::RealRestricted,
        table,
        base_gram,
        real_basis: None,
    }
}

/// Doubles of the realification g_R of g (the complex-structure case):
/// g_R ⊗ R[t]/(t²) or g_R ⊗ R[t]/(t²−1/4), with the Killing form of the
/// realification K_R(x,y) = 2·Re K(x,y).
pub fn realification_double(base: Rc<WeylBasisAlgebra>, variant: DoubleVariant) -> DoubleAlgebra {
    assert!(
        matches!(variant, DoubleVariant::RealCase1 | DoubleVariant::RealCase2),
        "the realification doubles are the cases with J² = 0 or 1/4"
    );
    let d = 2 * base.dim; // rational dimension of g_R
    let dim = 2 * d;
    let jj = match variant {
        DoubleVariant::RealCase1 => Scalar::zero(),
        _ => Scalar::from_ratio(1, 4),
    };
    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..d {
        let ua = crate::subspace::unit_vector(d, a);
        for b in 0..d {
            let ub = crate::subspace::unit_vector(d, b);
            let br: Vec<(usize, Scalar)> = base
                .bracket_realified(&ua, &ub)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            table[a * dim + b] = br.clone();
            table[a * dim + (d + b)] = br.iter().map(|(k, c)| (d + k, c.clone())).collect();
            table[(d + a) * dim + b] = br.iter().map(|(k, c)| (d + k, c.clone())).collect();
            if !jj.is_zero() {
                table[(d + a) * dim + (d + b)] = br.iter().map(|(k, c)| (*k, c * &jj)).collect();
            }
        }
    }
    let mut base_gram = Matrix::zero(dim, dim);
    for x in 0..d {
        let ux = crate::subspace::unit_vector(d, x);
        for y in 0..d {
            let uy = crate::subspace::unit_vector(d, y);
            let kv = base.killing_realified(&ux, &uy);
            let two_re = Scalar::from_rational(kv.re.clone() + kv.re);
            if !two_re.is_zero() {
                base_gram[(x, d + y)] = two_re.clone();
                base_gram[(d + x, y)] = two_re;
            }
        }
    }
    DoubleAlgebra {
        variant,
        base,
        dim,
        field: FieldTag::RealRestricted,
        table,
        base_gram,
        real_basis: None,
    }
}

/// σ̄ on the split double: σ̄(xe + yf) = σ(y)e + σ(x)f.
#[derive(Clone, Debug)]
pub struct DoubleConjugation {
    pub semilinear: SemilinearMap,
}

pub fn double_conjugation(
    d: &DoubleAlgebra,
    sigma: &Conjugation,
) -> Result<DoubleConjugation, MathError> {
    if d.variant != DoubleVariant::SplitC {
        return Err(MathError::Invalid(
            "the swap conjugation lives on the split double".into(),
        ));
    }
    let n = d.base.dim;
    let l = &sigma.semilinear.matrix;
    let mut m = Matrix::zero(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = l[(i, j)].clone();
            if !v.is_zero() {
                m[(i, n + j)] = v.clone();
                m[(n + i, j)] = v;
            }
        }
    }
    let semilinear = SemilinearMap::new(m);
    debug_assert!(semilinear.is_involutive());
    Ok(DoubleConjugation { semilinear })
}

impl DoubleConjugation {
    pub fn image_of(&self, v: &Subspace) -> Subspace {
        self.semilinear.image_of(v)
    }

    pub fn fixed_space(&self) -> Subspace {
        crate::subspace::semilinear_fixed_space(&self.semilinear).expect("involutive")
    }

    /// x ↦ xe + σ(x)f, the R-isomorphism from g onto the fixed space.
    pub fn tilde(&self, d: &DoubleAlgebra, x: &[Scalar]) -> Vec<Scalar> {
        let n = d.base.dim;
        assert_eq!(x.len(), n);
        let mut l = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                l[(i, j)] = self.semilinear.matrix[(n + i, j)].clone();
            }
        }
        let sx = SemilinearMap::new(l).apply(x);
        let mut v = vec![Scalar::zero(); 2 * n];
        v[..n].clone_from_slice(x);
        v[n..].clone_from_slice(&sx);
        v
    }
}
