//! Echelonized subspaces of Q(i)^n and of their rational realifications,
//! plus semilinear maps and their fixed spaces.
//!
//! A real-restricted subspace lives in the realification of C^n: each complex
//! coordinate becomes an interleaved (re, im) pair, so the ambient dimension
//! doubles and all entries are real rationals.

use crate::error::MathError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldTag {
    Complex,
    RealRestricted,
}

/// A subspace stored as a reduced row-echelon basis. Equality of subspaces is
/// syntactic equality of the echelon bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub field_tag: FieldTag,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, field_tag: FieldTag) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            field_tag,
        }
    }

    pub fn full(ambient_dim: usize, field_tag: FieldTag) -> Self {
        let basis = (0..ambient_dim).map(|k| unit_vector(ambient_dim, k)).collect();
        Subspace {
            ambient_dim,
            basis,
            field_tag,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduce `v` against the echelon basis; the remainder is zero iff `v` is a member.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = pivot_index(row).expect("echelon rows are nonzero");
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wk, rk) in w.iter_mut().zip(row.iter()) {
                    *wk = wk.clone() - &(rk * &f);
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Coefficients of `v` in the echelon basis, if `v` belongs to the span.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = pivot_index(row).expect("echelon rows are nonzero");
            let f = w[p].clone();
            if !f.is_zero() {
                for (wk, rk) in w.iter_mut().zip(row.iter()) {
                    *wk = wk.clone() - &(rk * &f);
                }
            }
            coeffs.push(f);
        }
        if w.iter().all(Scalar::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Span of this subspace together with `other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        assert_eq!(self.field_tag, other.field_tag);
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.clone());
        echelon_basis_tagged(self.ambient_dim, vecs, self.field_tag)
    }

    /// Intersection, by the kernel of the stacked coefficient matrix.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        assert_eq!(self.field_tag, other.field_tag);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim, self.field_tag);
        }
        // Solve sum a_i u_i = sum b_j v_j: kernel of [U^T | -V^T].
        let du = self.dim();
        let dv = other.dim();
        let m = Matrix::from_fn(self.ambient_dim, du + dv, |i, j| {
            if j < du {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - du][i].clone()
            }
        });
        let ker = kernel(&m);
        let vecs = ker
            .basis
            .iter()
            .map(|coef| {
                let mut v = vec![Scalar::zero(); self.ambient_dim];
                for (j, row) in self.basis.iter().enumerate() {
                    if !coef[j].is_zero() {
                        for (vk, rk) in v.iter_mut().zip(row.iter()) {
                            *vk = vk.clone() + &(rk * &coef[j]);
                        }
                    }
                }
                v
            })
            .collect();
        echelon_basis_tagged(self.ambient_dim, vecs, self.field_tag)
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        let vecs = self.basis.iter().map(|v| m.apply(v)).collect();
        echelon_basis_tagged(m.rows, vecs, self.field_tag)
    }
}

pub fn unit_vector(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

fn pivot_index(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Reduced-echelon span of a list of vectors. Idempotent and order-insensitive.
pub fn echelon_basis(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Subspace, MathError> {
    for v in &vectors {
        if v.len() != ambient_dim {
            return Err(MathError::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                ambient_dim
            )));
        }
    }
    Ok(echelon_basis_tagged(ambient_dim, vectors, FieldTag::Complex))
}

pub fn echelon_basis_tagged(
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
    field_tag: FieldTag,
) -> Subspace {
    if vectors.is_empty() {
        return Subspace::zero(ambient_dim, field_tag);
    }
    let mut m = Matrix::from_rows(vectors);
    m.echelonize();
    let basis = (0..m.rows)
        .map(|i| m.row(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    Subspace {
        ambient_dim,
        basis,
        field_tag,
    }
}

/// Kernel of a matrix; dim(kernel) + rank = cols.
pub fn kernel(m: &Matrix) -> Subspace {
    let mut work = m.clone();
    let pivots = work.echelonize();
    let rank = pivots.len();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            // row r: x_pc + sum_{j free} a_j x_j = 0
            v[pc] = -work[(r, free)].clone();
        }
        basis.push(v);
    }
    echelon_basis_tagged(m.cols, basis, FieldTag::Complex)
}

/// Kernel, with the result tagged as a subspace of a realified ambient space.
pub fn kernel_real(m: &Matrix) -> Subspace {
    let mut s = kernel(m);
    s.field_tag = FieldTag::RealRestricted;
    s
}

/// Coset representatives completing a basis of `u` to a basis of `v`.
pub fn quotient_basis(v: &Subspace, u: &Subspace) -> Result<Vec<Vec<Scalar>>, MathError> {
    if !v.contains(u) {
        return Err(MathError::NotContained(
            "quotient_basis requires U to be a subspace of V".into(),
        ));
    }
    let mut reps = Vec::new();
    let mut span = u.clone();
    for cand in &v.basis {
        if !span.contains_vector(cand) {
            reps.push(cand.clone());
            let mut vecs = span.basis.clone();
            vecs.push(cand.clone());
            span = echelon_basis_tagged(v.ambient_dim, vecs, v.field_tag);
        }
    }
    debug_assert_eq!(reps.len(), v.dim() - u.dim());
    Ok(reps)
}

/// Realified coordinates of a complex vector: interleaved (re, im) pairs.
pub fn realify_vector(v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(2 * v.len());
    for z in v {
        out.push(Scalar::from_rational(z.re.clone()));
        out.push(Scalar::from_rational(z.im.clone()));
    }
    out
}

/// Interpret a realified rational vector as a complex vector of half the length.
pub fn complexify_vector(v: &[Scalar]) -> Vec<Scalar> {
    assert!(v.len().is_multiple_of(2), "realified vector has even length");
    debug_assert!(v.iter().all(|x| x.is_real()));
    v.chunks(2)
        .map(|p| Scalar::new(p[0].re.clone(), p[1].re.clone()))
        .collect()
}

/// A complex subspace viewed as a rational subspace of doubled dimension.
pub fn realify(v: &Subspace) -> Result<Subspace, MathError> {
    if v.field_tag != FieldTag::Complex {
        return Err(MathError::AlreadyReal);
    }
    let mut vecs = Vec::with_capacity(2 * v.dim());
    for b in &v.basis {
        let ib: Vec<Scalar> = b.iter().map(|z| Scalar::i() * z).collect();
        vecs.push(realify_vector(b));
        vecs.push(realify_vector(&ib));
    }
    Ok(echelon_basis_tagged(
        2 * v.ambient_dim,
        vecs,
        FieldTag::RealRestricted,
    ))
}

/// Complex span of a real-restricted subspace, back in C^n coordinates.
pub fn complex_span(v: &Subspace) -> Subspace {
    assert_eq!(v.field_tag, FieldTag::RealRestricted);
    let vecs = v.basis.iter().map(|b| complexify_vector(b)).collect();
    echelon_basis_tagged(v.ambient_dim / 2, vecs, FieldTag::Complex)
}

/// Realified matrix of multiplication by a complex linear map:
/// each entry a+bi becomes the block [[a, -b], [b, a]].
pub fn realify_linear(m: &Matrix) -> Matrix {
    let mut out = Matrix::zero(2 * m.rows, 2 * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let z = &m[(i, j)];
            if z.is_zero() {
                continue;
            }
            let a = Scalar::from_rational(z.re.clone());
            let b = Scalar::from_rational(z.im.clone());
            out[(2 * i, 2 * j)] = a.clone();
            out[(2 * i, 2 * j + 1)] = -b.clone();
            out[(2 * i + 1, 2 * j)] = b;
            out[(2 * i + 1, 2 * j + 1)] = a;
        }
    }
    out
}

/// A semilinear map v -> L conj(v).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearMap {
    pub matrix: Matrix,
}

impl SemilinearMap {
    pub fn new(matrix: Matrix) -> Self {
        assert_eq!(matrix.rows, matrix.cols, "semilinear maps are endomorphisms");
        SemilinearMap { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let cv: Vec<Scalar> = v.iter().map(Scalar::conj).collect();
        self.matrix.apply(&cv)
    }

    /// Composition of two semilinear maps is the linear map L1 conj(L2).
    pub fn compose(&self, other: &SemilinearMap) -> Matrix {
        &self.matrix * &other.matrix.conj()
    }

    pub fn is_involutive(&self) -> bool {
        self.compose(self) == Matrix::identity(self.dim())
    }

    /// Realified matrix: each entry a+bi becomes the block [[a, b], [b, -a]]
    /// (multiplication by a+bi after coordinate conjugation).
    pub fn realified(&self) -> Matrix {
        let m = &self.matrix;
        let mut out = Matrix::zero(2 * m.rows, 2 * m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let z = &m[(i, j)];
                if z.is_zero() {
                    continue;
                }
                let a = Scalar::from_rational(z.re.clone());
                let b = Scalar::from_rational(z.im.clone());
                out[(2 * i, 2 * j)] = a.clone();
                out[(2 * i, 2 * j + 1)] = b.clone();
                out[(2 * i + 1, 2 * j)] = b;
                out[(2 * i + 1, 2 * j + 1)] = -a;
            }
        }
        out
    }

    /// Image of a complex subspace (semilinear images of complex spans are complex spans).
    pub fn image_of(&self, v: &Subspace) -> Subspace {
        assert_eq!(v.field_tag, FieldTag::Complex);
        let vecs = v.basis.iter().map(|b| self.apply(b)).collect();
        echelon_basis_tagged(v.ambient_dim, vecs, FieldTag::Complex)
    }
}

/// Rational solution space of v = L conj(v) for an involutive semilinear map,
/// inside the realification. Its rational dimension equals the complex
/// dimension of the ambient space.
pub fn semilinear_fixed_space(s: &SemilinearMap) -> Result<Subspace, MathError> {
    if !s.is_involutive() {
        return Err(MathError::NotInvolutive);
    }
    let r = s.realified();
    let n2 = r.rows;
    let sys = &r - &Matrix::identity(n2);
    Ok(kernel_real(&sys))
}
