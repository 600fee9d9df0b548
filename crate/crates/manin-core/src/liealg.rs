//! The complex simple Lie algebra in a Weyl basis {H_k, E_α, E_{-α}} with
//! [H, E_α] = α(H) E_α, [E_α, E_{-α}] = H_α, α(H) = K(H_α, H) and
//! K(E_α, E_{-α}) = 1.
//!
//! Structure constants are built over Q by the inductive extraspecial-pair
//! method: the constant of each extraspecial pair is fixed to p+1, every other
//! constant is forced by the Jacobi identity (cyclic relations for triples
//! summing to zero and the contraction relation through [E_α, E_{-α}] = H_α).
//! The whole table is verified against the Jacobi identity after construction.

use crate::error::MathError;
use crate::rootsys::{Root, RootSystem};
use crate::scalar::Scalar;
use crate::subspace::{
    complexify_vector, echelon_basis_tagged, realify_vector, FieldTag, Subspace,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

/// A root with a sign: (index into positive_roots, ±1).
pub type SignedRoot = (usize, i8);

/// Basis labels in the fixed order: H_1..H_n, then E_β ascending, then E_{-β}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisLabel {
    H(usize),
    E(usize, i8),
}

#[derive(Clone)]
pub struct WeylBasisAlgebra {
    pub root_system: Rc<RootSystem>,
    pub dim: usize,
    /// Sparse bracket table over basis indices.
    table: Vec<Vec<(usize, Scalar)>>,
    /// N_{β,γ} for positive pairs (i < j in root order).
    npos: HashMap<(usize, usize), BigRational>,
    /// N_{-β,-γ} keyed by the positive indices (i < j).
    nneg: HashMap<(usize, usize), BigRational>,
}

impl fmt::Debug for WeylBasisAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylBasisAlgebra({:?}, dim {})", self.root_system, self.dim)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    pub coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn zero(alg: &WeylBasisAlgebra) -> Self {
        AlgebraElement {
            coeffs: vec![Scalar::zero(); alg.dim],
        }
    }

    pub fn basis(alg: &WeylBasisAlgebra, k: usize) -> Self {
        let mut e = Self::zero(alg);
        e.coeffs[k] = Scalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

fn rat_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl WeylBasisAlgebra {
    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.root_system.positive_roots.len()
    }

    pub fn label(&self, idx: usize) -> BasisLabel {
        let n = self.rank();
        let p = self.num_positive();
        if idx < n {
            BasisLabel::H(idx)
        } else if idx < n + p {
            BasisLabel::E(idx - n, 1)
        } else {
            BasisLabel::E(idx - n - p, -1)
        }
    }

    pub fn index_of(&self, label: BasisLabel) -> usize {
        let n = self.rank();
        let p = self.num_positive();
        match label {
            BasisLabel::H(k) => k,
            BasisLabel::E(i, 1) => n + i,
            BasisLabel::E(i, _) => n + p + i,
        }
    }

    pub fn e_index(&self, root_idx: usize, sign: i8) -> usize {
        self.index_of(BasisLabel::E(root_idx, sign))
    }

    pub fn h_index(&self, k: usize) -> usize {
        k
    }

    /// Signed-root coordinates of an E-basis label.
    fn signed_coords(&self, i: usize, sign: i8) -> Vec<i64> {
        self.root_system.positive_roots[i]
            .coords
            .iter()
            .map(|&c| c * sign as i64)
            .collect()
    }

    /// Structure constant N_{u,v} for signed roots; zero when u+v is not a root.
    pub fn n_const(&self, u: SignedRoot, v: SignedRoot) -> BigRational {
        let (iu, su) = u;
        let (iv, sv) = v;
        if iu == iv && su == sv {
            return BigRational::zero();
        }
        let cu = self.signed_coords(iu, su);
        let cv = self.signed_coords(iv, sv);
        let sum: Vec<i64> = cu.iter().zip(&cv).map(|(a, b)| a + b).collect();
        if sum.iter().all(|&c| c == 0) || self.root_system.signed_index(&sum).is_none() {
            return BigRational::zero();
        }
        match (su > 0, sv > 0) {
            (true, true) => self.lookup(&self.npos, iu, iv),
            (false, false) => self.lookup(&self.nneg, iu, iv),
            (true, false) => {
                // rotate (u, v, w), w = -u-v, onto a same-sign pair
                let (iw, sw) = self.root_system.signed_index(&sum).unwrap();
                let _ = sw;
                if self.root_system.is_positive_root(&sum) {
                    // w negative: N_{u,v} = N_{v,w}, both negative
                    self.lookup(&self.nneg, iv, iw)
                } else {
                    // w positive: N_{u,v} = N_{w,u}, both positive
                    self.lookup(&self.npos, iw, iu)
                }
            }
            (false, true) => -self.n_const(v, u),
        }
    }

    fn lookup(&self, t: &HashMap<(usize, usize), BigRational>, i: usize, j: usize) -> BigRational {
        if i < j {
            t.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
        } else {
            -t.get(&(j, i)).cloned().unwrap_or_else(BigRational::zero)
        }
    }

    /// Sparse bracket of two basis elements.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a * self.dim + b]
    }

    /// Bracket of coefficient vectors over the Weyl basis.
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

    pub fn bracket(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, MathError> {
        if x.coeffs.len() != self.dim || y.coeffs.len() != self.dim {
            return Err(MathError::AlgebraMismatch);
        }
        Ok(AlgebraElement {
            coeffs: self.bracket_vec(&x.coeffs, &y.coeffs),
        })
    }

    /// Killing pairing of two basis elements.
    pub fn killing_basis(&self, a: usize, b: usize) -> Scalar {
        match (self.label(a), self.label(b)) {
            (BasisLabel::H(k), BasisLabel::H(l)) => {
                Scalar::from_rational(self.root_system.killing_gram[k][l].clone())
            }
            (BasisLabel::E(i, si), BasisLabel::E(j, sj)) if i == j && si != sj => Scalar::one(),
            _ => Scalar::zero(),
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn killing_vec(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let n = self.rank();
        let p = self.num_positive();
        let mut acc = Scalar::zero();
        for k in 0..n {
            if x[k].is_zero() {
                continue;
            }
            for l in 0..n {
                if !y[l].is_zero() {
                    acc += &(&x[k] * &y[l])
                        * &Scalar::from_rational(self.root_system.killing_gram[k][l].clone());
                }
            }
        }
        for i in 0..p {
            let e = n + i;
            let f = n + p + i;
            if !x[e].is_zero() && !y[f].is_zero() {
                acc += &x[e] * &y[f];
            }
            if !x[f].is_zero() && !y[e].is_zero() {
                acc += &x[f] * &y[e];
            }
        }
        acc
    }

    pub fn killing(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<Scalar, MathError> {
        if x.coeffs.len() != self.dim || y.coeffs.len() != self.dim {
            return Err(MathError::AlgebraMismatch);
        }
        Ok(self.killing_vec(&x.coeffs, &y.coeffs))
    }

    /// Killing pairing on the realified algebra: K_R(x, y) = Re K(c(x), c(y))
    /// would lose the symplectic part; what the real doubles need is the full
    /// complex value of K on complexified vectors, so this returns K(c(x), c(y)).
    pub fn killing_realified(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let cx = complexify_vector(x);
        let cy = complexify_vector(y);
        self.killing_vec(&cx, &cy)
    }

    /// Bracket transported to realified coordinates.
    pub fn bracket_realified(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let cx = complexify_vector(x);
        let cy = complexify_vector(y);
        realify_vector(&self.bracket_vec(&cx, &cy))
    }

    /// (α_k, weight of basis vector) column used for H-brackets.
    fn weight_pairing(&self, k: usize, root_idx: usize, sign: i8) -> BigRational {
        let w = self.signed_coords(root_idx, sign);
        let alpha: Vec<i64> = self.root_system.simple_roots[k].coords.clone();
        self.root_system.pairing(&w, &alpha)
    }

    /// Exhaustive Jacobi check over all basis triples.
    pub fn verify_jacobi(&self) -> bool {
        for a in 0..self.dim {
            for b in 0..self.dim {
                let ab = self.bracket_basis(a, b).to_vec();
                for c in 0..self.dim {
                    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                    let mut acc = vec![Scalar::zero(); self.dim];
                    for (k, f) in &ab {
                        for (m, g) in self.bracket_basis(*k, c) {
                            acc[*m] += f * g;
                        }
                    }
                    for (k, f) in self.bracket_basis(b, c) {
                        for (m, g) in self.bracket_basis(*k, a) {
                            acc[*m] += f * g;
                        }
                    }
                    for (k, f) in self.bracket_basis(c, a) {
                        for (m, g) in self.bracket_basis(*k, b) {
                            acc[*m] += f * g;
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Ad-invariance of the Killing table: K([z,x],y) + K(x,[z,y]) = 0.
    pub fn verify_killing_invariance(&self) -> bool {
        for z in 0..self.dim {
            for x in 0..self.dim {
                let zx = self.bracket_basis(z, x).to_vec();
                for y in 0..self.dim {
                    let mut acc = Scalar::zero();
                    for (k, f) in &zx {
                        let kv = self.killing_basis(*k, y);
                        if !kv.is_zero() {
                            acc += f * &kv;
                        }
                    }
                    for (k, f) in self.bracket_basis(z, y) {
                        let kv = self.killing_basis(x, *k);
                        if !kv.is_zero() {
                            acc += f * &kv;
                        }
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Builds the full structure-constant table for the given root system.
pub fn build_algebra(rs: Rc<RootSystem>) -> WeylBasisAlgebra {
    let n = rs.rank();
    let p = rs.positive_roots.len();
    let dim = n + 2 * p;

    let mut alg = WeylBasisAlgebra {
        root_system: Rc::clone(&rs),
        dim,
        table: vec![Vec::new(); dim * dim],
        npos: HashMap::new(),
        nneg: HashMap::new(),
    };

    // Structure constants level by level (roots are sorted by height).
    for (xi_idx, xi) in rs.positive_roots.iter().enumerate() {
        if xi.height() < 2 {
            continue;
        }
        // Special pairs (i, j), i < j, root_i + root_j = xi.
        let mut specials: Vec<(usize, usize)> = Vec::new();
        for i in 0..xi_idx {
            let diff = xi.sub(&rs.positive_roots[i]);
            if let Some(j) = rs
                .positive_roots
                .iter()
                .position(|r| r.coords == diff.coords)
            {
                if i < j {
                    specials.push((i, j));
                }
            }
        }
        assert!(!specials.is_empty(), "no special pair for a non-simple root");
        // Extraspecial pair: minimal first component in the root order.
        let (bi, gi) = specials[0];
        let beta = rs.positive_roots[bi].clone();
        let gamma = rs.positive_roots[gi].clone();
        let pdown = string_down(&rs, &gamma, &beta);
        alg.npos.insert((bi, gi), rat_i64(pdown + 1));
        // N_{-β,-γ} = ((β,γ) + N_{-β,γ} N_{γ-β,β}) / N_{β,γ}
        let nbg = alg.lookup(&alg.npos, bi, gi);
        let mixed = alg.pair_const(&gamma.sub(&beta).coords, (bi, -1), (bi, 1), &gamma);
        let kbg = rs.pairing(&beta.coords, &gamma.coords);
        alg.nneg.insert((bi, gi), (kbg + mixed) / &nbg);

        for &(di, ei) in specials.iter().skip(1) {
            let delta = rs.positive_roots[di].clone();
            let eps = rs.positive_roots[ei].clone();
            // N_{-δ,-ε} from the four-root identity on (β, γ, -δ, -ε):
            // N_{β,γ} N_{-δ,-ε} + N_{γ,-δ} N_{β,-ε} + N_{-δ,β} N_{γ,-ε} = 0
            let t1 = alg.n_signed(&gamma, 1, &delta, -1) * alg.n_signed(&beta, 1, &eps, -1);
            let t2 = alg.n_signed(&delta, -1, &beta, 1) * alg.n_signed(&gamma, 1, &eps, -1);
            let n_neg = -(t1 + t2) / &nbg;
            assert!(!n_neg.is_zero(), "vanishing negative constant");
            // N_{δ,ε} = ((δ,ε) + N_{-δ,ε} N_{ε-δ,δ}) / N_{-δ,-ε}
            let kde = rs.pairing(&delta.coords, &eps.coords);
            let m = alg.n_signed(&delta, -1, &eps, 1) * alg.n_signed_diff(&eps, &delta);
            let n_pos = (kde + m) / &n_neg;
            // Cross-check: positive constants are ±(p+1) string integers.
            let pd = string_down(&rs, &eps, &delta);
            assert_eq!(
                n_pos.abs(),
                rat_i64(pd + 1),
                "special-pair constant magnitude"
            );
            alg.npos.insert((di, ei), n_pos);
            alg.nneg.insert((di, ei), n_neg);
        }
    }

    // Bracket table.
    for a in 0..dim {
        for b in 0..dim {
            let entry = compute_bracket(&alg, a, b);
            alg.table[a * dim + b] = entry;
        }
    }

    // Exhaustive validation (skipped only for very large algebras).
    if dim <= 128 {
        assert!(alg.verify_jacobi(), "Jacobi identity fails");
        assert!(
            alg.verify_killing_invariance(),
            "Killing ad-invariance fails"
        );
    }
    alg
}

/// p = max k with γ - kβ a root.
fn string_down(rs: &RootSystem, gamma: &Root, beta: &Root) -> i64 {
    let mut k = 0;
    let mut cur = gamma.sub(beta);
    while rs.is_root(&cur.coords) {
        k += 1;
        cur = cur.sub(beta);
    }
    k
}

impl WeylBasisAlgebra {
    /// N over explicit roots with signs, used during construction (tables may
    /// be partially filled; all consulted entries are at lower levels).
    fn n_signed(&self, a: &Root, sa: i8, b: &Root, sb: i8) -> BigRational {
        let rs = &self.root_system;
        let ca: Vec<i64> = a.coords.iter().map(|&c| c * sa as i64).collect();
        let cb: Vec<i64> = b.coords.iter().map(|&c| c * sb as i64).collect();
        let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        if sum.iter().all(|&c| c == 0) || !rs.is_root(&sum) {
            return BigRational::zero();
        }
        let (ia, _) = rs.signed_index(&a.coords).unwrap();
        let (ib, _) = rs.signed_index(&b.coords).unwrap();
        self.n_const((ia, sa), (ib, sb))
    }

    /// N_{ε-δ, δ} where ε-δ may be a root of either sign.
    fn n_signed_diff(&self, eps: &Root, delta: &Root) -> BigRational {
        let rs = &self.root_system;
        let diff = eps.sub(delta);
        match rs.signed_index(&diff.coords) {
            None => BigRational::zero(),
            Some((i, s)) => {
                let (id, _) = rs.signed_index(&delta.coords).unwrap();
                self.n_const((i, s), (id, 1))
            }
        }
    }

    /// N_{-β,γ} N_{γ-β,β} combination used for the extraspecial negative value.
    fn pair_const(
        &self,
        diff: &[i64],
        _neg_beta: SignedRoot,
        _beta: SignedRoot,
        gamma: &Root,
    ) -> BigRational {
        let rs = &self.root_system;
        if !rs.is_root(diff) {
            return BigRational::zero();
        }
        let beta = gamma.sub(&Root {
            coords: diff.to_vec(),
        });
        let n1 = self.n_signed(&beta, -1, gamma, 1);
        let (idiff, sdiff) = rs.signed_index(diff).unwrap();
        let (ib, _) = rs.signed_index(&beta.coords).unwrap();
        let n2 = self.n_const((idiff, sdiff), (ib, 1));
        n1 * n2
    }
}

fn compute_bracket(alg: &WeylBasisAlgebra, a: usize, b: usize) -> Vec<(usize, Scalar)> {
    let rs = &alg.root_system;
    match (alg.label(a), alg.label(b)) {
        (BasisLabel::H(_), BasisLabel::H(_)) => Vec::new(),
        (BasisLabel::H(k), BasisLabel::E(i, s)) => {
            let c = alg.weight_pairing(k, i, s);
            if c.is_zero() {
                Vec::new()
            } else {
                vec![(b, Scalar::from_rational(c))]
            }
        }
        (BasisLabel::E(i, s), BasisLabel::H(k)) => {
            let c = alg.weight_pairing(k, i, s);
            if c.is_zero() {
                Vec::new()
            } else {
                vec![(a, Scalar::from_rational(-c))]
            }
        }
        (BasisLabel::E(i, si), BasisLabel::E(j, sj)) => {
            if i == j && si != sj {
                // [E_β, E_{-β}] = H_β = Σ c_k H_k, sign-adjusted.
                let sign = si as i64;
                return rs.positive_roots[i]
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (alg.h_index(k), Scalar::from_rational(rat_i64(sign * c))))
                    .collect();
            }
            let cu = alg.signed_coords(i, si);
            let cv = alg.signed_coords(j, sj);
            let sum: Vec<i64> = cu.iter().zip(&cv).map(|(x, y)| x + y).collect();
            match rs.signed_index(&sum) {
                None => Vec::new(),
                Some((k, s)) => {
                    let c = alg.n_const((i, si), (j, sj));
                    if c.is_zero() {
                        Vec::new()
                    } else {
                        vec![(alg.e_index(k, s), Scalar::from_rational(c))]
                    }
                }
            }
        }
    }
}

/// Parabolic and Levi data attached to a subset Π₁ ⊆ Π.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub subset: Vec<usize>,
    /// Positive roots supported on the subset.
    pub delta1_plus: Vec<usize>,
    pub g1: Subspace,
    pub h1: Subspace,
    pub n1_plus: Subspace,
    pub n1_minus: Subspace,
    pub p1_plus: Subspace,
    pub p1_minus: Subspace,
    pub r1: Subspace,
}

impl ParabolicData {
    /// m₁ = g₁ ∩ n₂⁻ against a second parabolic datum.
    pub fn m_against(&self, other: &ParabolicData) -> Subspace {
        self.g1.intersect(&other.n1_minus)
    }
}

pub fn parabolic_data(alg: &WeylBasisAlgebra, subset: &[usize]) -> ParabolicData {
    let rs = &alg.root_system;
    let n = alg.rank();
    let in_subset = |k: usize| subset.contains(&k);
    let supported = |r: &Root| {
        r.coords
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || in_subset(k))
    };
    let delta1_plus: Vec<usize> = rs
        .positive_roots
        .iter()
        .enumerate()
        .filter(|(_, r)| supported(r))
        .map(|(i, _)| i)
        .collect();

    let unit = |idx: usize| crate::subspace::unit_vector(alg.dim, idx);
    let span = |idxs: Vec<usize>| {
        echelon_basis_tagged(alg.dim, idxs.into_iter().map(unit).collect(), FieldTag::Complex)
    };

    let mut g1_idxs: Vec<usize> = Vec::new();
    for &i in &delta1_plus {
        g1_idxs.push(alg.e_index(i, 1));
        g1_idxs.push(alg.e_index(i, -1));
    }
    for &k in subset {
        g1_idxs.push(alg.h_index(k));
    }
    let g1 = span(g1_idxs);
    let h1 = span(subset.iter().map(|&k| alg.h_index(k)).collect());
    let n1_plus = span(
        (0..rs.positive_roots.len())
            .filter(|i| !delta1_plus.contains(i))
            .map(|i| alg.e_index(i, 1))
            .collect(),
    );
    let n1_minus = span(
        (0..rs.positive_roots.len())
            .filter(|i| !delta1_plus.contains(i))
            .map(|i| alg.e_index(i, -1))
            .collect(),
    );
    let h_full = span((0..n).collect());
    let r1 = g1.sum(&h_full);
    let p1_plus = r1.sum(&n1_plus);
    let p1_minus = r1.sum(&n1_minus);

    ParabolicData {
        subset: subset.to_vec(),
        delta1_plus,
        g1,
        h1,
        n1_plus,
        n1_minus,
        p1_plus,
        p1_minus,
        r1,
    }
}

/// A subspace together with its bracket-closure certificate: the coefficients
/// re-expressing every basis-pair bracket inside the span.
#[derive(Clone, Debug)]
pub struct SubalgebraSpan {
    pub space: Subspace,
    pub certificate: Vec<Vec<Vec<Scalar>>>,
}

impl SubalgebraSpan {
    pub fn new(alg: &WeylBasisAlgebra, space: Subspace) -> Result<Self, MathError> {
        match is_subalgebra(alg, &space) {
            (true, Some(certificate)) => Ok(SubalgebraSpan { space, certificate }),
            _ => Err(MathError::Invalid("the span is not bracket-closed".into())),
        }
    }
}

/// Bracket closure test with a certificate of re-expression coefficients.
pub fn is_subalgebra(alg: &WeylBasisAlgebra, v: &Subspace) -> (bool, Option<Vec<Vec<Vec<Scalar>>>>) {
    assert_eq!(v.field_tag, FieldTag::Complex);
    assert_eq!(v.ambient_dim, alg.dim);
    let mut cert = Vec::new();
    for x in &v.basis {
        let mut row = Vec::new();
        for y in &v.basis {
            let br = alg.bracket_vec(x, y);
            match v.coordinates_of(&br) {
                Some(c) => row.push(c),
                None => return (false, None),
            }
        }
        cert.push(row);
    }
    (true, Some(cert))
}

/// Bracket closure for a real-restricted subspace of the realified algebra.
pub fn is_real_subalgebra(alg: &WeylBasisAlgebra, v: &Subspace) -> bool {
    assert_eq!(v.field_tag, FieldTag::RealRestricted);
    assert_eq!(v.ambient_dim, 2 * alg.dim);
    for x in &v.basis {
        for y in &v.basis {
            if !v.contains_vector(&alg.bracket_realified(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Dimension of the space of linear maps commuting with every ad_x.
///
/// Commutation with ad_H for all Cartan H forces the map to preserve every
/// weight space, so the unknowns reduce to one scalar per root vector plus an
/// n×n block on h; commutation with the simple root vectors E_{±α_i} then
/// generates the remaining equations (ad is a homomorphism, so commuting with
/// generators is commuting with everything).
pub fn commutant_dimension(alg: &WeylBasisAlgebra) -> usize {
    let rs = &alg.root_system;
    let n = alg.rank();
    let p = alg.num_positive();
    let unknowns = 2 * p + n * n;
    let lam = |i: usize, s: i8| -> usize {
        2 * i + if s < 0 { 1 } else { 0 }
    };
    let cvar = |l: usize, k: usize| 2 * p + l * n + k;

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let simple_signed: Vec<SignedRoot> = (0..n)
        .flat_map(|k| {
            let i = rs
                .positive_roots
                .iter()
                .position(|r| r.coords == rs.simple_roots[k].coords)
                .unwrap();
            [(i, 1i8), (i, -1i8)]
        })
        .collect();

    for &(ui, us) in &simple_signed {
        let ucoords: Vec<i64> = rs.positive_roots[ui]
            .coords
            .iter()
            .map(|&c| c * us as i64)
            .collect();
        // equations on E_v, v ≠ -u: N(λ_{u+v} - λ_v) = 0
        for vi in 0..p {
            for vs in [1i8, -1i8] {
                if vi == ui && vs == -us {
                    continue;
                }
                let nc = alg.n_const((ui, us), (vi, vs));
                if nc.is_zero() {
                    continue;
                }
                let vcoords: Vec<i64> = rs.positive_roots[vi]
                    .coords
                    .iter()
                    .map(|&c| c * vs as i64)
                    .collect();
                let sum: Vec<i64> = ucoords.iter().zip(&vcoords).map(|(a, b)| a + b).collect();
                let (wi, ws) = rs.signed_index(&sum).unwrap();
                let mut row = vec![BigRational::zero(); unknowns];
                row[lam(wi, ws)] += &nc;
                row[lam(vi, vs)] -= &nc;
                rows.push(row);
            }
        }
        // equation on E_{-u}: C · H_u = λ_{-u} H_u componentwise
        let hcoords: Vec<i64> = rs.positive_roots[ui]
            .coords
            .iter()
            .map(|&c| c * us as i64)
            .collect();
        for l in 0..n {
            let mut row = vec![BigRational::zero(); unknowns];
            for (k, &c) in hcoords.iter().enumerate() {
                if c != 0 {
                    row[cvar(l, k)] += rat_i64(c);
                }
            }
            row[lam(ui, -us)] -= rat_i64(hcoords[l]);
            rows.push(row);
        }
        // equations on H_k: Σ_l C_{lk} (u, α_l) = (u, α_k) λ_u
        for k in 0..n {
            let mut row = vec![BigRational::zero(); unknowns];
            for l in 0..n {
                let c = rs.pairing(&ucoords, &rs.simple_roots[l].coords);
                if !c.is_zero() {
                    row[cvar(l, k)] += c;
                }
            }
            let c = rs.pairing(&ucoords, &rs.simple_roots[k].coords);
            row[lam(ui, us)] -= c;
            rows.push(row);
        }
    }

    // kernel dimension = unknowns - rank
    let m = crate::matrix::Matrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(Scalar::from_rational).collect())
            .collect(),
    );
    unknowns - m.rank()
}

/// An isomorphism g₁ → g₂ of regular subalgebras lifted from a bijection of
/// simple-root subsets, computed recursively through the structure constants.
#[derive(Clone, Debug)]
pub struct RootVectorMap {
    /// signed root -> (signed root, coefficient)
    pub entries: HashMap<SignedRoot, (SignedRoot, BigRational)>,
    /// simple-index map on the domain subset
    pub simple_map: HashMap<usize, usize>,
}

impl RootVectorMap {
    pub fn image_of_e(&self, u: SignedRoot) -> Option<(SignedRoot, BigRational)> {
        self.entries.get(&u).cloned()
    }

    /// Lattice image of a vector in the H-coordinate space.
    pub fn h_image(&self, coords: &[Scalar]) -> Option<Vec<Scalar>> {
        let n = coords.len();
        let mut out = vec![Scalar::zero(); n];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let &t = self.simple_map.get(&k)?;
            out[t] = out[t].clone() + c;
        }
        Some(out)
    }
}

/// Lift a simple-root bijection (domain ⊆ Π) satisfying condition ii) to the
/// generated subalgebras: E_{±α} ↦ E_{±φα} on simple generators, extended by
/// brackets; H_α ↦ H_{φα} linearly. The result is verified to be a bracket
/// isomorphism on the domain.
pub fn lift_root_bijection(
    alg: &WeylBasisAlgebra,
    map: &HashMap<usize, usize>,
) -> Result<RootVectorMap, MathError> {
    let rs = &alg.root_system;
    let n = alg.rank();
    // Lattice image of the signed root u (coords over domain simples).
    let lattice = |coords: &[i64]| -> Option<Vec<i64>> {
        let mut out = vec![0i64; n];
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let &t = map.get(&k)?;
            out[t] += c;
        }
        Some(out)
    };

    let mut entries: HashMap<SignedRoot, (SignedRoot, BigRational)> = HashMap::new();
    // domain roots: positive roots supported on the domain, by height.
    let domain_roots: Vec<usize> = rs
        .positive_roots
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            r.coords
                .iter()
                .enumerate()
                .all(|(k, &c)| c == 0 || map.contains_key(&k))
        })
        .map(|(i, _)| i)
        .collect();

    for &i in &domain_roots {
        let r = &rs.positive_roots[i];
        let img = lattice(&r.coords).ok_or(MathError::Invalid("domain".into()))?;
        let (ti, ts) = rs
            .signed_index(&img)
            .ok_or_else(|| MathError::Invalid("image is not a root".into()))?;
        if ts != 1 {
            return Err(MathError::Invalid("image of a positive root must be positive".into()));
        }
        if r.height() == 1 {
            entries.insert((i, 1), ((ti, 1), BigRational::one()));
            entries.insert((i, -1), ((ti, -1), BigRational::one()));
            continue;
        }
        // decompose r = α_k + r' within the domain
        let (k_simple, rest_idx) = domain_roots
            .iter()
            .filter(|&&j| rs.positive_roots[j].height() == 1)
            .find_map(|&j| {
                let diff = r.sub(&rs.positive_roots[j]);
                rs.positive_roots
                    .iter()
                    .position(|q| q.coords == diff.coords)
                    .map(|rest| (j, rest))
            })
            .ok_or_else(|| MathError::Invalid("no simple decomposition in domain".into()))?;
        for sign in [1i8, -1i8] {
            let (ia, ca) = entries[&(k_simple, sign)].clone();
            let (ib, cb) = entries[&(rest_idx, sign)].clone();
            let denom = alg.n_const((k_simple, sign), (rest_idx, sign));
            assert!(!denom.is_zero());
            let num = alg.n_const(ia, ib);
            assert!(!num.is_zero());
            let coeff = ca * cb * num / denom;
            entries.insert((i, sign), ((ti, sign), coeff));
        }
    }

    let out = RootVectorMap {
        entries,
        simple_map: map.clone(),
    };

    // Verify bracket compatibility on the domain, including [E_u, E_{-u}].
    for (&u, &(su, ref cu)) in &out.entries {
        for (&v, &(sv, ref cv)) in &out.entries {
            if u == v {
                continue;
            }
            let ucoords: Vec<i64> = rs.positive_roots[u.0]
                .coords
                .iter()
                .map(|&c| c * u.1 as i64)
                .collect();
            let vcoords: Vec<i64> = rs.positive_roots[v.0]
                .coords
                .iter()
                .map(|&c| c * v.1 as i64)
                .collect();
            let sum: Vec<i64> = ucoords.iter().zip(&vcoords).map(|(a, b)| a + b).collect();
            if sum.iter().all(|&c| c == 0) {
                // φ(H_u) = H_{φu} requires c_u c_{-u} = 1
                if !(cu * cv).is_one() {
                    return Err(MathError::Invalid(
                        "lift does not preserve [E, E⁻] normalization".into(),
                    ));
                }
                continue;
            }
            if rs.is_root(&sum) {
                let lhs = alg.n_const(u, v);
                let rhs = alg.n_const(su, sv);
                let (wi, ws) = rs.signed_index(&sum).unwrap();
                if let Some((_, cw)) = out.entries.get(&(wi, ws)) {
                    if (cu.clone() * cv * rhs) != (cw * &lhs) {
                        return Err(MathError::Invalid("lift is not a bracket map".into()));
                    }
                }
            }
        }
    }
    Ok(out)
}
