//! Complementary subalgebras and the axiomatic Manin-triple verifier:
//! W(φ) in the split double, the case-1 complement {a + f(a)j + a^⊥ j} in the
//! nilpotent double, W_Φ = Φ ⊕ n⁺ for inner real forms, W(σ,φ,a) =
//! F_a(φ) + l₁ + n₁⁺ for outer ones, σ-invariance, and weak/gauge equivalence.

use crate::bd::{check_iv, group_a_phi, PhiExtension, QuotientSpace, SignVector};
use crate::doubles::{
    double_conjugation, q_form, real_double, DoubleAlgebra, DoubleConjugation, DoubleVariant,
    InvariantForm,
};
use crate::error::MathError;
use crate::liealg::WeylBasisAlgebra;
use crate::matrix::Matrix;
use crate::realform::{compact_torus, RealFormData};
use crate::scalar::Scalar;
use crate::subspace::{
    complexify_vector, echelon_basis_tagged, realify, realify_vector, FieldTag, SemilinearMap,
    Subspace,
};
use num_traits::Zero;
use std::rc::Rc;

/// A candidate Manin triple: the double, its invariant form, and the two
/// would-be maximal isotropic subalgebras.
#[derive(Debug)]
pub struct ManinTriple {
    pub double: Rc<DoubleAlgebra>,
    pub form: InvariantForm,
    pub g_sub: Subspace,
    pub w_sub: Subspace,
}

impl ManinTriple {
    pub fn field(&self) -> FieldTag {
        self.double.field
    }
}

/// Per-axiom outcome of the verifier, with failure witnesses.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub symmetric: bool,
    pub nondegenerate: bool,
    pub ad_invariant: bool,
    pub g_closed: bool,
    pub w_closed: bool,
    pub g_isotropic: bool,
    pub w_isotropic: bool,
    pub direct_sum: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.symmetric
            && self.nondegenerate
            && self.ad_invariant
            && self.g_closed
            && self.w_closed
            && self.g_isotropic
            && self.w_isotropic
            && self.direct_sum
    }

    pub fn axioms(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("symmetry", self.symmetric),
            ("nondegeneracy", self.nondegenerate),
            ("ad_invariance", self.ad_invariant),
            ("g_closed", self.g_closed),
            ("w_closed", self.w_closed),
            ("g_isotropic", self.g_isotropic),
            ("w_isotropic", self.w_isotropic),
            ("direct_sum", self.direct_sum),
        ]
    }
}

fn vec_str(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_canonical_string()).collect();
    format!("({})", parts.join(", "))
}

/// Evaluates every axiom of the Manin-triple definition exactly.
/// Maximal isotropy is isotropy plus half-dimension, valid since Q is
/// nondegenerate.
pub fn verify_manin(t: &ManinTriple) -> VerificationReport {
    let d = &t.double;
    let q = &t.form;
    let mut failures = Vec::new();

    let symmetric = q.gram == q.gram.transpose();
    if !symmetric {
        failures.push("Q is not symmetric".to_string());
    }
    let nondegenerate = q.gram.rank() == d.dim;
    if !nondegenerate {
        failures.push("Q is degenerate".to_string());
    }

    let mut ad_invariant = true;
    'inv: for z in 0..d.dim {
        for x in 0..d.dim {
            let zx = d.bracket_basis(z, x).to_vec();
            for y in 0..d.dim {
                let mut acc = Scalar::zero();
                for (k, c) in &zx {
                    let g = &q.gram[(*k, y)];
                    if !g.is_zero() {
                        acc += c * g;
                    }
                }
                for (k, c) in d.bracket_basis(z, y) {
                    let g = &q.gram[(x, *k)];
                    if !g.is_zero() {
                        acc += c * g;
                    }
                }
                if !acc.is_zero() {
                    ad_invariant = false;
                    failures.push(format!(
                        "ad-invariance fails on basis triple ({z}, {x}, {y})"
                    ));
                    break 'inv;
                }
            }
        }
    }

    let g_closed = match d.closure_failure(&t.g_sub) {
        None => true,
        Some((x, y)) => {
            failures.push(format!(
                "g is not bracket-closed at {} , {}",
                vec_str(&x),
                vec_str(&y)
            ));
            false
        }
    };
    let w_closed = match d.closure_failure(&t.w_sub) {
        None => true,
        Some((x, y)) => {
            failures.push(format!(
                "W is not bracket-closed at {} , {}",
                vec_str(&x),
                vec_str(&y)
            ));
            false
        }
    };

    let isotropic = |v: &Subspace, name: &str, failures: &mut Vec<String>| -> bool {
        for x in &v.basis {
            for y in &v.basis {
                if !q.eval(x, y).is_zero() {
                    failures.push(format!(
                        "{name} is not isotropic at {} , {}",
                        vec_str(x),
                        vec_str(y)
                    ));
                    return false;
                }
            }
        }
        true
    };
    let g_isotropic = isotropic(&t.g_sub, "g", &mut failures);
    let w_isotropic = isotropic(&t.w_sub, "W", &mut failures);

    let inter = t.g_sub.intersect(&t.w_sub);
    let dims_ok = t.g_sub.dim() + t.w_sub.dim() == d.dim;
    let direct_sum = inter.is_zero() && dims_ok;
    if !direct_sum {
        if !inter.is_zero() {
            failures.push(format!(
                "g ∩ W contains {}",
                vec_str(&inter.basis[0])
            ));
        }
        if !dims_ok {
            failures.push(format!(
                "dim g + dim W = {} + {} ≠ {}",
                t.g_sub.dim(),
                t.w_sub.dim(),
                d.dim
            ));
        }
    }

    VerificationReport {
        symmetric,
        nondegenerate,
        ad_invariant,
        g_closed,
        w_closed,
        g_isotropic,
        w_isotropic,
        direct_sum,
        failures,
    }
}

/// W(φ) = l₁e + n₁⁺e + Σ C(xe + φ(x)f) + n₂⁻f + l₂f in the split double.
/// Condition iv) is required.
pub fn build_w_phi(ext: &PhiExtension, d: &DoubleAlgebra) -> Result<Subspace, MathError> {
    if d.variant != DoubleVariant::SplitC {
        return Err(MathError::Invalid("W(φ) lives in the split double".into()));
    }
    if !Rc::ptr_eq(&ext.algebra, &d.base) {
        return Err(MathError::AlgebraMismatch);
    }
    if !check_iv(ext) {
        return Err(MathError::ConditionIv(
            "the extension does not preserve K without fixed points".into(),
        ));
    }
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    for b in &ext.l1.basis {
        vecs.push(d.embed(b, 0));
    }
    for b in &ext.pd1.n1_plus.basis {
        vecs.push(d.embed(b, 0));
    }
    for x in ext.l1.basis.iter().chain(ext.quot1.reps.iter()) {
        let fx = ext
            .phi_hat(x)
            .ok_or_else(|| MathError::Invalid("φ̂ undefined on r̄₁".into()))?;
        let mut v = d.embed(x, 0);
        let fpart = d.embed(&fx, 1);
        for (vk, fk) in v.iter_mut().zip(fpart.iter()) {
            *vk = vk.clone() + fk;
        }
        vecs.push(v);
    }
    for b in &ext.pd2.n1_minus.basis {
        vecs.push(d.embed(b, 1));
    }
    for b in &ext.l2.basis {
        vecs.push(d.embed(b, 1));
    }
    let w = echelon_basis_tagged(d.dim, vecs, FieldTag::Complex);
    if w.dim() != d.base.dim {
        return Err(MathError::DimensionMismatch(format!(
            "dim W(φ) = {} ≠ dim g = {}",
            w.dim(),
            d.base.dim
        )));
    }
    Ok(w)
}

/// The complex Manin triple (diagonal g, W(φ)) in the split double.
pub fn complex_triple(
    ext: &PhiExtension,
    d: Rc<DoubleAlgebra>,
    scale: Scalar,
) -> Result<ManinTriple, MathError> {
    let w_sub = build_w_phi(ext, &d)?;
    let form = q_form(&d, scale)?;
    let g_sub = d.canonical_g_sub();
    Ok(ManinTriple {
        double: d,
        form,
        g_sub,
        w_sub,
    })
}

/// Killing orthocomplement of a subspace of g.
pub fn killing_orthocomplement(alg: &WeylBasisAlgebra, v: &Subspace) -> Subspace {
    let rows: Vec<Vec<Scalar>> = v
        .basis
        .iter()
        .map(|b| {
            (0..alg.dim)
                .map(|j| {
                    let unit = crate::subspace::unit_vector(alg.dim, j);
                    alg.killing_vec(b, &unit)
                })
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Subspace::full(alg.dim, FieldTag::Complex);
    }
    crate::subspace::kernel(&Matrix::from_rows(rows))
}

/// Case-1 complement W = {a + f(a)j + a^⊥ j} in the nilpotent double.
/// `f_matrix` maps coordinates in L's echelon basis to representative
/// coordinates of g/L^⊥; it must be a vector-space isomorphism and a
/// 1-cocycle for the quotient adjoint action.
pub fn build_w_case1(
    alg: &Rc<WeylBasisAlgebra>,
    l_sub: &Subspace,
    f_matrix: &Matrix,
    d: &DoubleAlgebra,
) -> Result<Subspace, MathError> {
    if d.variant != DoubleVariant::NilpotentC {
        return Err(MathError::Invalid(
            "the case-1 complement lives in the nilpotent double".into(),
        ));
    }
    if !Rc::ptr_eq(alg, &d.base) {
        return Err(MathError::AlgebraMismatch);
    }
    let (closed, _) = crate::liealg::is_subalgebra(alg, l_sub);
    if !closed {
        return Err(MathError::Invalid("L is not a subalgebra".into()));
    }
    let l_perp = killing_orthocomplement(alg, l_sub);
    let qs = QuotientSpace::new(Subspace::full(alg.dim, FieldTag::Complex), l_perp.clone())?;
    if f_matrix.rows != qs.dim() || f_matrix.cols != l_sub.dim() {
        return Err(MathError::DimensionMismatch(format!(
            "f must be {}×{}",
            qs.dim(),
            l_sub.dim()
        )));
    }
    if f_matrix.rows != f_matrix.cols || f_matrix.inverse().is_err() {
        return Err(MathError::Invalid(
            "f is not a vector-space isomorphism onto g/L^⊥".into(),
        ));
    }
    // lift of f on L's echelon basis
    let f_tilde: Vec<Vec<Scalar>> = (0..l_sub.dim())
        .map(|j| qs.lift(&f_matrix.col(j)))
        .collect();
    // cocycle: f([a,b]) = [a, f̃(b)] − [b, f̃(a)] mod L^⊥
    for (i, bi) in l_sub.basis.iter().enumerate() {
        for (j, bj) in l_sub.basis.iter().enumerate() {
            let br = alg.bracket_vec(bi, bj);
            let br_coords = l_sub
                .coordinates_of(&br)
                .ok_or_else(|| MathError::Invalid("L is not bracket-closed".into()))?;
            let lhs = f_matrix.apply(&br_coords);
            let t1 = alg.bracket_vec(bi, &f_tilde[j]);
            let t2 = alg.bracket_vec(bj, &f_tilde[i]);
            let rhs_vec: Vec<Scalar> = t1.iter().zip(&t2).map(|(a, b)| a.clone() - b).collect();
            let rhs = qs.project(&rhs_vec).expect("whole space");
            if lhs != rhs {
                return Err(MathError::Invalid(format!(
                    "the cocycle identity fails on basis pair ({i}, {j})"
                )));
            }
        }
    }
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    for (b, ft) in l_sub.basis.iter().zip(&f_tilde) {
        let mut v = d.embed(b, 0);
        let jpart = d.embed(ft, 1);
        for (vk, jk) in v.iter_mut().zip(jpart.iter()) {
            *vk = vk.clone() + jk;
        }
        vecs.push(v);
    }
    for b in &l_perp.basis {
        vecs.push(d.embed(b, 1));
    }
    let w = echelon_basis_tagged(d.dim, vecs, FieldTag::Complex);
    if w.dim() != alg.dim {
        return Err(MathError::DimensionMismatch(format!(
            "dim W = {} ≠ dim g = {}",
            w.dim(),
            alg.dim
        )));
    }
    Ok(w)
}

/// W_Φ = Φ ⊕ n⁺ for an inner real form: Φ is a real subspace of h, isotropic
/// for Q_R, with Φ ⊕ t = h. Returns the verified triple in the case-3 double.
pub fn build_w_phi_cap(
    rf: &RealFormData,
    phi_sub: &Subspace,
) -> Result<(ManinTriple, VerificationReport), MathError> {
    let alg = &rf.algebra;
    let n = alg.rank();
    if !rf.is_inner() {
        return Err(MathError::Precondition(
            "W_Φ is defined for inner real forms".into(),
        ));
    }
    if phi_sub.field_tag != FieldTag::RealRestricted || phi_sub.ambient_dim != 2 * n {
        return Err(MathError::DimensionMismatch(
            "Φ must be a real subspace of the realified Cartan".into(),
        ));
    }
    // isotropy for Q_R = 2 Im K
    let embed = |v: &[Scalar]| -> Vec<Scalar> {
        // realified h-coordinates into realified algebra coordinates
        let mut out = vec![Scalar::zero(); 2 * alg.dim];
        out[..2 * n].clone_from_slice(v);
        out
    };
    for x in &phi_sub.basis {
        for y in &phi_sub.basis {
            let kv = alg.killing_realified(&embed(x), &embed(y));
            if !kv.im.is_zero() {
                return Err(MathError::Precondition(
                    "Φ is not isotropic for Q_R".into(),
                ));
            }
        }
    }
    // Φ ⊕ t = h
    let t_h = {
        let vecs = (0..n)
            .map(|k| crate::subspace::unit_vector(2 * n, 2 * k + 1))
            .collect();
        echelon_basis_tagged(2 * n, vecs, FieldTag::RealRestricted)
    };
    if phi_sub.dim() != n || !phi_sub.intersect(&t_h).is_zero() {
        return Err(MathError::Precondition("Φ ⊕ t ≠ h".into()));
    }

    let n_plus = crate::liealg::parabolic_data(alg, &[]).n1_plus;
    let mut vecs: Vec<Vec<Scalar>> = phi_sub.basis.iter().map(|v| embed(v)).collect();
    vecs.extend(realify(&n_plus)?.basis);
    let w_sub = echelon_basis_tagged(2 * alg.dim, vecs, FieldTag::RealRestricted);

    let double = Rc::new(real_double(rf, DoubleVariant::RealCase3));
    let form = q_form(&double, Scalar::one())?;
    let triple = ManinTriple {
        double,
        form,
        g_sub: rf.g_real.clone(),
        w_sub,
    };
    let report = verify_manin(&triple);
    Ok((triple, report))
}

/// The λ_a/F_a data of a W(σ,φ,a) construction.
#[derive(Clone, Debug)]
pub struct RealPhiTripleData {
    pub a: SignVector,
    /// Semilinear matrix of λ_a on r̄₁/l₁ representative coordinates.
    pub lambda_a: SemilinearMap,
    /// Fixed space of λ_a in realified quotient coordinates.
    pub f_a: Subspace,
}

/// W(σ,φ,a) = F_a(φ) + l₁ + n₁⁺ for an outer real form, built inside the
/// case-3 double through the x̃ = xe + σ(x)f identification.
pub fn build_w_sigma_phi_a(
    ext: &PhiExtension,
    a: &SignVector,
    rf: &RealFormData,
) -> Result<(ManinTriple, VerificationReport, RealPhiTripleData), MathError> {
    let alg = &ext.algebra;
    if rf.is_inner() {
        return Err(MathError::Precondition(
            "W(σ,φ,a) is defined for outer real forms".into(),
        ));
    }
    if !Rc::ptr_eq(alg, &rf.algebra) {
        return Err(MathError::AlgebraMismatch);
    }
    let group = group_a_phi(alg.rank(), &ext.phi, &rf.theta.s)?;
    if !group.elements.contains(a) {
        return Err(MathError::Precondition("a ∉ A^φ(R)".into()));
    }
    // λ_a(x) = Ad_a(σ(φ̂(x))) on quotient representatives
    let ad_a = a.adjoint_matrix(alg);
    let q = ext.quot1.dim();
    let mut m_lambda = Matrix::zero(q, q);
    for (j, rep) in ext.quot1.reps.iter().enumerate() {
        let img = ext
            .phi_hat(rep)
            .ok_or_else(|| MathError::Invalid("φ̂ undefined".into()))?;
        let simg = rf.sigma.semilinear.apply(&img);
        let aimg = ad_a.apply(&simg);
        let coords = ext.quot1.project(&aimg).ok_or_else(|| {
            MathError::Invalid("λ_a does not preserve r̄₁/l₁ (conditions i)–v) fail)".into())
        })?;
        for i in 0..q {
            m_lambda[(i, j)] = coords[i].clone();
        }
    }
    let lambda_a = SemilinearMap::new(m_lambda);
    if !lambda_a.is_involutive() {
        return Err(MathError::NotInvolutive);
    }
    let f_a = crate::subspace::semilinear_fixed_space(&lambda_a)?;

    // lift F_a along the fixed representatives and assemble W
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    for b in &f_a.basis {
        let coords = complexify_vector(b);
        let ambient = ext.quot1.lift(&coords);
        vecs.push(realify_vector(&ambient));
    }
    vecs.extend(realify(&ext.l1)?.basis);
    vecs.extend(realify(&ext.pd1.n1_plus)?.basis);
    let w_sub = echelon_basis_tagged(2 * alg.dim, vecs, FieldTag::RealRestricted);
    if w_sub.dim() != alg.dim {
        return Err(MathError::DimensionMismatch(format!(
            "dim_R W(σ,φ,a) = {} ≠ {}",
            w_sub.dim(),
            alg.dim
        )));
    }

    let double = Rc::new(real_double(rf, DoubleVariant::RealCase3));
    let form = q_form(&double, Scalar::one())?;
    let triple = ManinTriple {
        double,
        form,
        g_sub: rf.g_real.clone(),
        w_sub,
    };
    let report = verify_manin(&triple);
    Ok((
        triple,
        report,
        RealPhiTripleData {
            a: a.clone(),
            lambda_a,
            f_a,
        },
    ))
}

/// σ̄(W) = W as echelonized spans.
pub fn check_sigma_invariance(w: &Subspace, sb: &DoubleConjugation) -> bool {
    sb.image_of(w) == *w
}

/// Convenience wrapper building σ̄ from the real form on a split double.
pub fn sigma_bar(d: &DoubleAlgebra, rf: &RealFormData) -> Result<DoubleConjugation, MathError> {
    double_conjugation(d, &rf.sigma)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivalenceMode {
    Weak,
    Gauge,
}

/// Bracket compatibility of a linear map on the double.
pub fn is_double_automorphism(d: &DoubleAlgebra, m: &Matrix) -> bool {
    if m.rows != d.dim || m.cols != d.dim || m.inverse().is_err() {
        return false;
    }
    let cols: Vec<Vec<Scalar>> = (0..d.dim).map(|j| m.col(j)).collect();
    for a in 0..d.dim {
        for b in 0..d.dim {
            let mut lhs = vec![Scalar::zero(); d.dim];
            for (k, c) in d.bracket_basis(a, b) {
                for (i, x) in cols[*k].iter().enumerate() {
                    if !x.is_zero() {
                        lhs[i] += c * x;
                    }
                }
            }
            let rhs = d.bracket_vec(&cols[a], &cols[b]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Weak: Ad_w(W₁) = W₂. Gauge: additionally Ad_w(g) = g. The witness must be
/// a bracket automorphism of the double preserving the form.
pub fn equivalence_check(
    t1: &ManinTriple,
    t2: &ManinTriple,
    witness: &Matrix,
    mode: EquivalenceMode,
) -> Result<bool, MathError> {
    if !Rc::ptr_eq(&t1.double, &t2.double) {
        return Err(MathError::Invalid(
            "equivalence is defined within one double".into(),
        ));
    }
    let d = &t1.double;
    if !is_double_automorphism(d, witness) {
        return Err(MathError::Invalid(
            "the witness is not an automorphism of the double".into(),
        ));
    }
    let mt_g_m = &(&witness.transpose() * &t1.form.gram) * witness;
    if mt_g_m != t1.form.gram {
        return Err(MathError::Invalid(
            "the witness does not preserve the invariant form".into(),
        ));
    }
    let weak = t1.w_sub.map(witness) == t2.w_sub;
    match mode {
        EquivalenceMode::Weak => Ok(weak),
        EquivalenceMode::Gauge => Ok(weak && t1.g_sub.map(witness) == t1.g_sub),
    }
}

/// The canonical isotropic complement of t in h: Φ = Σ R·H_k.
pub fn canonical_phi_cap(alg: &WeylBasisAlgebra) -> Subspace {
    let n = alg.rank();
    let vecs = (0..n)
        .map(|k| crate::subspace::unit_vector(2 * n, 2 * k))
        .collect();
    echelon_basis_tagged(2 * n, vecs, FieldTag::RealRestricted)
}

/// t = h ∩ g(R) for inner forms equals the compact torus.
pub fn h_real(alg: &WeylBasisAlgebra) -> Subspace {
    compact_torus(alg)
}
