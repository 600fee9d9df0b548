//! Admissible-map combinatorics: enumeration of φ: Π₁ → Π₂ satisfying
//! conditions i)–iii), maximal chains, Cartan extensions with the
//! fixed-point-free isometry condition iv), the σ-compatibility condition v),
//! the stabilizer h^φ, the finite sign groups A_R and A^φ(R), and a bounded
//! witness search for σ(g)⁻¹g = a.

use crate::error::MathError;
use crate::liealg::{
    lift_root_bijection, parabolic_data, ParabolicData, RootVectorMap, WeylBasisAlgebra,
};
use crate::matrix::Matrix;
use crate::realform::RealFormData;
use crate::rootsys::{DiagramAutomorphism, RootSystem};
use crate::scalar::Scalar;
use crate::subspace::{echelon_basis_tagged, quotient_basis, FieldTag, Subspace};
use num_rational::BigRational;
use std::collections::HashMap;
use std::rc::Rc;

/// A bijection of simple-root subsets satisfying conditions i)–iii).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiMap {
    pub pi1: Vec<usize>,
    pub pi2: Vec<usize>,
    pub map: HashMap<usize, usize>,
}

impl PhiMap {
    pub fn empty() -> Self {
        PhiMap {
            pi1: Vec::new(),
            pi2: Vec::new(),
            map: HashMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pi1.is_empty()
    }

    pub fn apply(&self, alpha: usize) -> Option<usize> {
        self.map.get(&alpha).copied()
    }

    pub fn inverse_apply(&self, beta: usize) -> Option<usize> {
        self.map.iter().find(|(_, &v)| v == beta).map(|(&k, _)| k)
    }

    pub fn pi0(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pi1.iter().chain(&self.pi2).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Sort key (|Π₁|, lex Π₁, lex images) for canonical report order.
    pub fn sort_key(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let images = self.pi1.iter().map(|a| self.map[a]).collect();
        (self.pi1.len(), self.pi1.clone(), images)
    }
}

/// Condition ii): the map preserves the inner product on its domain.
fn preserves_inner(rs: &RootSystem, pi1: &[usize], map: &HashMap<usize, usize>) -> bool {
    for &a in pi1 {
        for &b in pi1 {
            let lhs = rs.pairing(
                &rs.simple_roots[map[&a]].coords,
                &rs.simple_roots[map[&b]].coords,
            );
            let rhs = rs.pairing(&rs.simple_roots[a].coords, &rs.simple_roots[b].coords);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Condition iii): every φ-orbit eventually leaves Π₁ (no cycles).
fn orbits_escape(pi1: &[usize], map: &HashMap<usize, usize>) -> bool {
    for &a in pi1 {
        let mut seen = vec![a];
        let mut cur = a;
        loop {
            match map.get(&cur) {
                None => break,
                Some(&next) => {
                    if seen.contains(&next) {
                        return false;
                    }
                    if !pi1.contains(&next) {
                        break;
                    }
                    seen.push(next);
                    cur = next;
                }
            }
        }
    }
    true
}

/// All (Π₁, Π₂, φ) satisfying i)–iii), including the empty map, in the
/// canonical order (|Π₁|, lex Π₁, lex images). Built by backtracking with
/// incremental pruning on the inner-product condition.
pub fn enumerate_phi(rs: &RootSystem) -> Vec<PhiMap> {
    let n = rs.rank();
    let mut out = vec![PhiMap::empty()];
    for size in 1..=n {
        let mut subset = Vec::new();
        subsets_of_size(n, size, 0, &mut subset, &mut |pi1| {
            let mut map = HashMap::new();
            assign(rs, pi1, 0, &mut map, &mut |map| {
                if orbits_escape(pi1, map) {
                    let mut pi2: Vec<usize> = map.values().copied().collect();
                    pi2.sort_unstable();
                    out.push(PhiMap {
                        pi1: pi1.to_vec(),
                        pi2,
                        map: map.clone(),
                    });
                }
            });
        });
    }
    out.sort_by_key(|p| p.sort_key());
    out
}

fn subsets_of_size(
    n: usize,
    size: usize,
    start: usize,
    acc: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if acc.len() == size {
        f(acc);
        return;
    }
    for k in start..n {
        if n - k < size - acc.len() {
            break;
        }
        acc.push(k);
        subsets_of_size(n, size, k + 1, acc, f);
        acc.pop();
    }
}

fn assign(
    rs: &RootSystem,
    pi1: &[usize],
    pos: usize,
    map: &mut HashMap<usize, usize>,
    f: &mut impl FnMut(&HashMap<usize, usize>),
) {
    if pos == pi1.len() {
        f(map);
        return;
    }
    let a = pi1[pos];
    for target in 0..rs.rank() {
        if map.values().any(|&v| v == target) {
            continue;
        }
        map.insert(a, target);
        let assigned: Vec<usize> = pi1[..=pos].to_vec();
        if preserves_inner(rs, &assigned, map) {
            assign(rs, pi1, pos + 1, map, f);
        }
        map.remove(&a);
    }
}

/// A maximal chain α₁ < α₂ = φ(α₁) < … inside Π₀.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    pub roots: Vec<usize>,
}

/// Maximal chains; they partition Π₀.
pub fn chains(phi: &PhiMap) -> Vec<Chain> {
    let pi0 = phi.pi0();
    let images: Vec<usize> = phi.map.values().copied().collect();
    let mut out = Vec::new();
    for &start in &pi0 {
        if images.contains(&start) {
            continue;
        }
        let mut roots = vec![start];
        let mut cur = start;
        while let Some(next) = phi.apply(cur) {
            roots.push(next);
            cur = next;
        }
        out.push(Chain { roots });
    }
    out.sort_by_key(|c| c.roots[0]);
    out
}

/// Lemma-level hypotheses on (s, φ): s(Π₁) = Π₂ and s(φ(α)) = φ⁻¹(s(α)).
pub fn s_phi_compatible(phi: &PhiMap, s: &DiagramAutomorphism) -> bool {
    let s_pi1: Vec<usize> = {
        let mut v: Vec<usize> = phi.pi1.iter().map(|&a| s.apply_index(a)).collect();
        v.sort_unstable();
        v
    };
    if s_pi1 != phi.pi2 {
        return false;
    }
    for &a in &phi.pi1 {
        let lhs = s.apply_index(phi.map[&a]);
        match phi.inverse_apply(s.apply_index(a)) {
            Some(rhs) if rhs == lhs => {}
            _ => return false,
        }
    }
    true
}

/// Whether s permutes the set of maximal chains. The compatibility hypotheses
/// are a precondition and violations are reported distinctly.
pub fn s_stability(
    chain_list: &[Chain],
    s: &DiagramAutomorphism,
    phi: &PhiMap,
) -> Result<bool, MathError> {
    if !s_phi_compatible(phi, s) {
        return Err(MathError::Precondition(
            "s(Π₁) = Π₂ and sφ = φ⁻¹s are required".into(),
        ));
    }
    let sets: Vec<Vec<usize>> = chain_list
        .iter()
        .map(|c| {
            let mut v = c.roots.clone();
            v.sort_unstable();
            v
        })
        .collect();
    for c in chain_list {
        let mut img: Vec<usize> = c.roots.iter().map(|&a| s.apply_index(a)).collect();
        img.sort_unstable();
        if !sets.contains(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A fixed set of coset representatives for total/sub with exact projection.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub total: Subspace,
    pub sub: Subspace,
    pub reps: Vec<Vec<Scalar>>,
    solver: Matrix,
}

impl QuotientSpace {
    pub fn new(total: Subspace, sub: Subspace) -> Result<Self, MathError> {
        let reps = quotient_basis(&total, &sub)?;
        let cols: Vec<Vec<Scalar>> = sub.basis.iter().chain(reps.iter()).cloned().collect();
        let solver = Matrix::from_fn(total.ambient_dim, cols.len(), |i, j| cols[j][i].clone());
        Ok(QuotientSpace {
            total,
            sub,
            reps,
            solver,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Representative coordinates of v mod sub; None when v is outside total.
    pub fn project(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let x = self.solver.solve(v)?;
        Some(x[self.sub.dim()..].to_vec())
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.total.ambient_dim];
        for (j, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                for (k, r) in self.reps[j].iter().enumerate() {
                    out[k] += c * r;
                }
            }
        }
        out
    }
}

/// The (Π₁, Π₂, φ, h̄ᵢ, lᵢ) data of an extension φ: r̄₁/l₁ → r̄₂/l₂.
#[derive(Clone, Debug)]
pub struct PhiExtension {
    pub algebra: Rc<WeylBasisAlgebra>,
    pub phi: PhiMap,
    /// Subspaces of h in H-coordinates (ambient = rank).
    pub h_bar1: Subspace,
    pub h_bar2: Subspace,
    pub l1_h: Subspace,
    pub l2_h: Subspace,
    /// Image in H-coordinates of each echelon basis vector of h̄₁.
    pub cartan_map: Matrix,
    pub lift: RootVectorMap,
    pub pd1: ParabolicData,
    pub pd2: ParabolicData,
    /// r̄ᵢ and lᵢ in full algebra coordinates.
    pub r_bar1: Subspace,
    pub r_bar2: Subspace,
    pub l1: Subspace,
    pub l2: Subspace,
    pub quot1: QuotientSpace,
    pub quot2: QuotientSpace,
}

fn embed_h(alg: &WeylBasisAlgebra, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); alg.dim];
    out[..v.len()].clone_from_slice(v);
    out
}

fn embed_h_subspace(alg: &WeylBasisAlgebra, s: &Subspace) -> Subspace {
    let vecs = s.basis.iter().map(|v| embed_h(alg, v)).collect();
    echelon_basis_tagged(alg.dim, vecs, FieldTag::Complex)
}

/// K-orthocomplement within h, in H-coordinates.
pub fn h_orthocomplement(alg: &WeylBasisAlgebra, s: &Subspace) -> Subspace {
    let n = alg.rank();
    let gram = Matrix::from_fn(s.dim(), n, |i, j| {
        let mut acc = Scalar::zero();
        for (k, c) in s.basis[i].iter().enumerate() {
            if !c.is_zero() {
                acc += c * &Scalar::from_rational(alg.root_system.killing_gram[k][j].clone());
            }
        }
        acc
    });
    crate::subspace::kernel(&gram)
}

impl PhiExtension {
    /// Validates and assembles the extension data. `cartan_map` gives the
    /// image in H-coordinates of each echelon basis vector of h̄₁.
    pub fn new(
        algebra: Rc<WeylBasisAlgebra>,
        phi: PhiMap,
        h_bar1: Subspace,
        h_bar2: Subspace,
        cartan_map: Matrix,
    ) -> Result<Self, MathError> {
        let n = algebra.rank();
        if h_bar1.ambient_dim != n || h_bar2.ambient_dim != n {
            return Err(MathError::DimensionMismatch(
                "h̄ subspaces live in H-coordinates".into(),
            ));
        }
        if cartan_map.rows != n || cartan_map.cols != h_bar1.dim() {
            return Err(MathError::DimensionMismatch(
                "cartan_map must be rank × dim h̄₁".into(),
            ));
        }
        // h̄ᵢ^⊥ ⊆ h̄ᵢ; lᵢ := h̄ᵢ^⊥ = ker K|_{h̄ᵢ}
        let perp1 = h_orthocomplement(&algebra, &h_bar1);
        let perp2 = h_orthocomplement(&algebra, &h_bar2);
        if !h_bar1.contains(&perp1) || !h_bar2.contains(&perp2) {
            return Err(MathError::Invalid("h̄ᵢ^⊥ ⊄ h̄ᵢ".into()));
        }
        let l1_h = perp1;
        let l2_h = perp2;
        for &k in &phi.pi1 {
            let mut v = vec![Scalar::zero(); n];
            v[k] = Scalar::one();
            if !h_bar1.contains_vector(&v) {
                return Err(MathError::Invalid("h₁ ⊄ h̄₁".into()));
            }
        }
        for &k in &phi.pi2 {
            let mut v = vec![Scalar::zero(); n];
            v[k] = Scalar::one();
            if !h_bar2.contains_vector(&v) {
                return Err(MathError::Invalid("h₂ ⊄ h̄₂".into()));
            }
        }
        let apply_cartan = |v: &[Scalar]| -> Option<Vec<Scalar>> {
            let coords = h_bar1.coordinates_of(v)?;
            Some(cartan_map.apply(&coords))
        };
        for j in 0..h_bar1.dim() {
            let img = cartan_map.col(j);
            if !h_bar2.contains_vector(&img) {
                return Err(MathError::Invalid("cartan_map does not land in h̄₂".into()));
            }
        }
        for b in &l1_h.basis {
            let img = apply_cartan(b).expect("l₁ ⊆ h̄₁");
            if !l2_h.contains_vector(&img) {
                return Err(MathError::Invalid("cartan_map(l₁) ⊄ l₂".into()));
            }
        }
        for &k in &phi.pi1 {
            let mut v = vec![Scalar::zero(); n];
            v[k] = Scalar::one();
            let img = apply_cartan(&v).expect("h₁ ⊆ h̄₁");
            let mut expect = vec![Scalar::zero(); n];
            expect[phi.map[&k]] = Scalar::one();
            if img != expect {
                return Err(MathError::Invalid(
                    "cartan_map is inconsistent with φ on h₁".into(),
                ));
            }
        }

        let lift = lift_root_bijection(&algebra, &phi.map)?;
        let pd1 = parabolic_data(&algebra, &phi.pi1);
        let pd2 = parabolic_data(&algebra, &phi.pi2);
        let r_bar1 = pd1.g1.sum(&embed_h_subspace(&algebra, &h_bar1));
        let r_bar2 = pd2.g1.sum(&embed_h_subspace(&algebra, &h_bar2));
        let l1 = embed_h_subspace(&algebra, &l1_h);
        let l2 = embed_h_subspace(&algebra, &l2_h);
        let quot1 = QuotientSpace::new(r_bar1.clone(), l1.clone())?;
        let quot2 = QuotientSpace::new(r_bar2.clone(), l2.clone())?;
        if quot1.dim() != quot2.dim() {
            return Err(MathError::DimensionMismatch(
                "quotients r̄₁/l₁ and r̄₂/l₂ have different dimensions".into(),
            ));
        }

        let ext = PhiExtension {
            algebra,
            phi,
            h_bar1,
            h_bar2,
            l1_h,
            l2_h,
            cartan_map,
            lift,
            pd1,
            pd2,
            r_bar1,
            r_bar2,
            l1,
            l2,
            quot1,
            quot2,
        };
        ext.quotient_matrix()?
            .inverse()
            .map_err(|_| MathError::Invalid("φ does not descend to a quotient isomorphism".into()))?;
        Ok(ext)
    }

    /// φ̂ on r̄₁ in full algebra coordinates.
    pub fn phi_hat(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let alg = &self.algebra;
        let n = alg.rank();
        let mut out = vec![Scalar::zero(); alg.dim];
        for i in 0..alg.num_positive() {
            for sg in [1i8, -1i8] {
                let idx = alg.e_index(i, sg);
                if v[idx].is_zero() {
                    continue;
                }
                let ((ti, ts), coeff) = self.lift.image_of_e((i, sg))?;
                let t_idx = alg.e_index(ti, ts);
                out[t_idx] = out[t_idx].clone() + &(&v[idx] * &Scalar::from_rational(coeff));
            }
        }
        let v_h = &v[..n];
        if v_h.iter().any(|c| !c.is_zero()) {
            let coords = self.h_bar1.coordinates_of(v_h)?;
            let img = self.cartan_map.apply(&coords);
            for (k, c) in img.into_iter().enumerate() {
                out[k] = out[k].clone() + c;
            }
        }
        Some(out)
    }

    /// Matrix of φ on r̄₁/l₁ → r̄₂/l₂ in representative coordinates.
    pub fn quotient_matrix(&self) -> Result<Matrix, MathError> {
        let cols: Vec<Vec<Scalar>> = self
            .quot1
            .reps
            .iter()
            .map(|r| {
                let img = self
                    .phi_hat(r)
                    .ok_or_else(|| MathError::Invalid("φ̂ undefined on r̄₁".into()))?;
                self.quot2
                    .project(&img)
                    .ok_or_else(|| MathError::Invalid("φ̂ image outside r̄₂".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_fn(self.quot1.dim(), self.quot1.dim(), |i, j| {
            cols[j][i].clone()
        }))
    }
}

/// Condition iv): φ preserves K on r̄₁/l₁ and has no fixed points, i.e. no
/// nonzero x ∈ r̄₁ ∩ r̄₂ with φ(x) = x mod l₂.
pub fn check_iv(ext: &PhiExtension) -> bool {
    let alg = &ext.algebra;
    for x in &ext.quot1.reps {
        let fx = match ext.phi_hat(x) {
            Some(v) => v,
            None => return false,
        };
        for y in &ext.quot1.reps {
            let fy = ext.phi_hat(y).expect("rep in r̄₁");
            if alg.killing_vec(&fx, &fy) != alg.killing_vec(x, y) {
                return false;
            }
        }
    }
    let inter = ext.r_bar1.intersect(&ext.r_bar2);
    if inter.is_zero() {
        return true;
    }
    let cols: Vec<Vec<Scalar>> = inter
        .basis
        .iter()
        .map(|v| {
            let fv = ext.phi_hat(v).expect("v ∈ r̄₁");
            let diff: Vec<Scalar> = fv.iter().zip(v.iter()).map(|(a, b)| a.clone() - b).collect();
            ext.l2.reduce(&diff)
        })
        .collect();
    let m = Matrix::from_fn(alg.dim, cols.len(), |i, j| cols[j][i].clone());
    crate::subspace::kernel(&m).is_zero()
}

/// Condition v): σ(r̄₁) = r̄₂, σ(l₁) = l₂ and σφ squares to the identity on
/// r̄₁/l₁. Returns both formulations (the direct identity σ(φ(x)) = φ⁻¹(σ x)
/// and the squared one); for well-formed input they agree.
pub fn check_v_detail(
    ext: &PhiExtension,
    sigma: &crate::realform::Conjugation,
) -> Result<(bool, bool), MathError> {
    let s = &sigma.semilinear;
    if s.image_of(&ext.r_bar1) != ext.r_bar2 || s.image_of(&ext.l1) != ext.l2 {
        return Ok((false, false));
    }
    let q = ext.quot1.dim();
    let mut m_sigphi = Matrix::zero(q, q);
    for (j, rep) in ext.quot1.reps.iter().enumerate() {
        let img = ext
            .phi_hat(rep)
            .ok_or_else(|| MathError::Invalid("φ̂ undefined".into()))?;
        let simg = s.apply(&img);
        let coords = ext
            .quot1
            .project(&simg)
            .ok_or_else(|| MathError::Invalid("σφ image outside r̄₁".into()))?;
        for i in 0..q {
            m_sigphi[(i, j)] = coords[i].clone();
        }
    }
    let squared = &m_sigphi * &m_sigphi.conj() == Matrix::identity(q);

    let mq = ext.quotient_matrix()?;
    let mq_inv = mq
        .inverse()
        .map_err(|_| MathError::Invalid("φ quotient not invertible".into()))?;
    let mut direct = true;
    for (j, rep) in ext.quot1.reps.iter().enumerate() {
        let lhs: Vec<Scalar> = (0..q).map(|i| m_sigphi[(i, j)].clone()).collect();
        let s_rep = s.apply(rep);
        let rhs_coords = ext
            .quot2
            .project(&s_rep)
            .ok_or_else(|| MathError::Invalid("σ image outside r̄₂".into()))?;
        let rhs = mq_inv.apply(&rhs_coords);
        if lhs != rhs {
            direct = false;
            break;
        }
    }
    Ok((direct, squared))
}

pub fn check_v(
    ext: &PhiExtension,
    sigma: &crate::realform::Conjugation,
) -> Result<bool, MathError> {
    let (direct, squared) = check_v_detail(ext, sigma)?;
    debug_assert_eq!(direct, squared, "the two formulations of v) must agree");
    Ok(direct && squared)
}

/// h^φ = {v ∈ h | α(v) = φ(α)(v) for α ∈ Π₁}, in H-coordinates.
pub fn stabilizer(ext: &PhiExtension) -> Subspace {
    stabilizer_of_phi(&ext.algebra, &ext.phi)
}

pub fn stabilizer_of_phi(alg: &WeylBasisAlgebra, phi: &PhiMap) -> Subspace {
    let rs = &alg.root_system;
    let n = alg.rank();
    if phi.pi1.is_empty() {
        return Subspace::full(n, FieldTag::Complex);
    }
    let rows: Vec<Vec<Scalar>> = phi
        .pi1
        .iter()
        .map(|&a| {
            (0..n)
                .map(|k| {
                    let d = rs.pairing(&rs.simple_roots[a].coords, &rs.simple_roots[k].coords)
                        - rs.pairing(
                            &rs.simple_roots[phi.map[&a]].coords,
                            &rs.simple_roots[k].coords,
                        );
                    Scalar::from_rational(d)
                })
                .collect()
        })
        .collect();
    crate::subspace::kernel(&Matrix::from_rows(rows))
}

/// A square-one torus element of the adjoint group, recorded by its signs on
/// the simple roots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignVector {
    pub signs: Vec<i8>,
}

impl SignVector {
    pub fn identity(rank: usize) -> Self {
        SignVector {
            signs: vec![1; rank],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    /// Value on a root (multiplicative over the lattice).
    pub fn value(&self, coords: &[i64]) -> i8 {
        let mut v = 1i8;
        for (k, &c) in coords.iter().enumerate() {
            if c.rem_euclid(2) == 1 && self.signs[k] == -1 {
                v = -v;
            }
        }
        v
    }

    pub fn product(&self, other: &SignVector) -> SignVector {
        SignVector {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// The adjoint action as a diagonal matrix over the Weyl basis.
    pub fn adjoint_matrix(&self, alg: &WeylBasisAlgebra) -> Matrix {
        let mut m = Matrix::identity(alg.dim);
        for i in 0..alg.num_positive() {
            let v = self.value(&alg.root_system.positive_roots[i].coords);
            for sg in [1i8, -1i8] {
                let idx = alg.e_index(i, sg);
                m[(idx, idx)] = Scalar::from_int(v as i64);
            }
        }
        m
    }
}

/// The sign group attached to (φ, s): elements a with a² = 1 subject to
/// a_{φ(α)} = a_α along chains, a_α = 1 for α ∉ Π₀ with s(α) ≠ α, and
/// a_α = 1 for α ∈ Π₀ whose maximal chain is not s-stable.
#[derive(Clone, Debug)]
pub struct SignGroup {
    pub elements: Vec<SignVector>,
    /// Simple roots where the written constraints leave the sign free even
    /// though s moves the root within its own chain.
    pub underdetermined: Vec<usize>,
}

#[allow(clippy::needless_range_loop)]
pub fn group_a_phi(
    rank: usize,
    phi: &PhiMap,
    s: &DiagramAutomorphism,
) -> Result<SignGroup, MathError> {
    let chain_list = chains(phi);
    if !s_stability(&chain_list, s, phi)? {
        return Err(MathError::Precondition(
            "s does not permute the maximal chains".into(),
        ));
    }
    let pi0 = phi.pi0();
    let chain_of =
        |a: usize| -> Option<&Chain> { chain_list.iter().find(|c| c.roots.contains(&a)) };
    let mut pinned = vec![false; rank];
    for k in 0..rank {
        let in_pi0 = pi0.contains(&k);
        if !in_pi0 && s.apply_index(k) != k {
            pinned[k] = true;
        }
        if in_pi0 {
            let c = chain_of(k).expect("chains cover Π₀");
            let mut img: Vec<usize> = c.roots.iter().map(|&a| s.apply_index(a)).collect();
            img.sort_unstable();
            let mut own: Vec<usize> = c.roots.clone();
            own.sort_unstable();
            if img != own {
                pinned[k] = true;
            }
        }
    }
    let mut underdetermined = Vec::new();
    for &k in &pi0 {
        if !pinned[k] && s.apply_index(k) != k {
            underdetermined.push(k);
        }
    }

    let mut elements = Vec::new();
    'mask: for mask in 0..(1u32 << rank) {
        let signs: Vec<i8> = (0..rank)
            .map(|k| if mask & (1 << k) != 0 { -1 } else { 1 })
            .collect();
        for k in 0..rank {
            if pinned[k] && signs[k] == -1 {
                continue 'mask;
            }
        }
        for &a in &phi.pi1 {
            if signs[phi.map[&a]] != signs[a] {
                continue 'mask;
            }
        }
        elements.push(SignVector { signs });
    }
    Ok(SignGroup {
        elements,
        underdetermined,
    })
}

/// Search space for σ(g)⁻¹g = a: torus elements with eighth-root-of-unity
/// phases, optionally composed with words of simple-reflection
/// representatives.
#[derive(Clone, Copy, Debug)]
pub struct WitnessSearchSpace {
    pub max_word_len: usize,
}

impl Default for WitnessSearchSpace {
    fn default() -> Self {
        WitnessSearchSpace { max_word_len: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(Witness),
    /// Absence from the bounded space only; not a proof of non-membership.
    NotFoundInSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Torus phases as multiples of an eighth of a turn per simple root.
    pub torus_exponents: Vec<u8>,
    /// Simple-reflection word composed with the torus part.
    pub word: Vec<usize>,
}

impl Witness {
    pub fn identity(rank: usize) -> Self {
        Witness {
            torus_exponents: vec![0; rank],
            word: Vec::new(),
        }
    }
}

/// Reflection representative n_α = exp(ad e) exp(−ad f) exp(ad e) with the
/// standard sl₂ normalization e = E_α, f = (2/(α,α))·E_{−α}.
pub fn reflection_representative(alg: &WeylBasisAlgebra, simple_idx: usize) -> Matrix {
    let rs = &alg.root_system;
    let root_idx = rs
        .positive_roots
        .iter()
        .position(|r| r.coords == rs.simple_roots[simple_idx].coords)
        .expect("simple root present");
    let len = rs.pairing(
        &rs.simple_roots[simple_idx].coords,
        &rs.simple_roots[simple_idx].coords,
    );
    let two_over = BigRational::new(num_bigint::BigInt::from(2), num_bigint::BigInt::from(1)) / len;
    let e = crate::subspace::unit_vector(alg.dim, alg.e_index(root_idx, 1));
    let mut f = vec![Scalar::zero(); alg.dim];
    f[alg.e_index(root_idx, -1)] = Scalar::from_rational(two_over);
    let exp_e = exp_ad(alg, &e, false);
    let exp_mf = exp_ad(alg, &f, true);
    &(&exp_e * &exp_mf) * &exp_e
}

/// exp(ad x) (or exp(−ad x)) for ad-nilpotent x, as an exact matrix.
fn exp_ad(alg: &WeylBasisAlgebra, x: &[Scalar], negate: bool) -> Matrix {
    let dim = alg.dim;
    let mut out = Matrix::identity(dim);
    for col in 0..dim {
        let mut term = crate::subspace::unit_vector(dim, col);
        let mut k = 1u64;
        loop {
            term = alg.bracket_vec(x, &term);
            if term.iter().all(Scalar::is_zero) {
                break;
            }
            let sign = if negate && k % 2 == 1 { -1i64 } else { 1 };
            let fact = BigRational::new(
                num_bigint::BigInt::from(sign),
                (1..=k).map(num_bigint::BigInt::from).product(),
            );
            let fact = Scalar::from_rational(fact);
            for i in 0..dim {
                if !term[i].is_zero() {
                    let delta = &term[i] * &fact;
                    out[(i, col)] += delta;
                }
            }
            k += 1;
            assert!(k < 64, "ad x is not nilpotent");
        }
    }
    out
}

/// Diagonal adjoint matrix of a torus element given by eighth-turn exponents;
/// defined over Q(i) exactly when every root value lands on a quarter turn.
fn torus_adjoint(alg: &WeylBasisAlgebra, exps: &[u8]) -> Option<Matrix> {
    let mut m = Matrix::identity(alg.dim);
    for i in 0..alg.num_positive() {
        for sg in [1i8, -1i8] {
            let coords = &alg.root_system.positive_roots[i].coords;
            let mut e: i64 = 0;
            for (k, &c) in coords.iter().enumerate() {
                e += c * exps[k] as i64 * sg as i64;
            }
            let e = e.rem_euclid(8);
            let val = match e {
                0 => Scalar::one(),
                2 => Scalar::i(),
                4 => Scalar::from_int(-1),
                6 => -Scalar::i(),
                _ => return None,
            };
            m[(alg.e_index(i, sg), alg.e_index(i, sg))] = val;
        }
    }
    Some(m)
}

/// Searches for g with Ad(σ(g)⁻¹ g) = Ad(a). Pure-torus candidates are
/// screened symbolically on the character lattice (σ sends the phase exponent
/// at α to the one at s^ε(α)); composite candidates are verified as exact
/// matrix identities. NotFoundInSpace is a statement about this space only.
pub fn witness_search(
    rf: &RealFormData,
    a: &SignVector,
    space: WitnessSearchSpace,
) -> WitnessOutcome {
    let alg = &rf.algebra;
    let n = alg.rank();
    if a.is_identity() {
        return WitnessOutcome::Found(Witness::identity(n));
    }
    let s = &rf.theta.s;
    let eps = rf.theta.epsilon;

    // pure torus, eighth-turn exponents
    let mut exps = vec![0u8; n];
    loop {
        let p: Vec<u8> = (0..n)
            .map(|k| {
                let src = if eps == 1 { s.apply_index(k) } else { k };
                (16 + exps[k] as i64 - exps[src] as i64).rem_euclid(8) as u8
            })
            .collect();
        let matches = (0..n).all(|k| p[k] == if a.signs[k] == 1 { 0 } else { 4 });
        if matches {
            let p_mat = torus_adjoint(alg, &p).expect("p exponents are half turns");
            if p_mat == a.adjoint_matrix(alg) {
                return WitnessOutcome::Found(Witness {
                    torus_exponents: exps,
                    word: Vec::new(),
                });
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                break;
            }
            exps[k] += 1;
            if exps[k] < 8 {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }

    // simple-reflection words composed with quarter-turn torus parts
    let l_sigma = &rf.sigma.semilinear.matrix;
    let target = a.adjoint_matrix(alg);
    let refl: Vec<Matrix> = (0..n).map(|k| reflection_representative(alg, k)).collect();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..space.max_word_len {
        let mut next = Vec::new();
        for w in &words {
            for k in 0..n {
                let mut w2 = w.clone();
                w2.push(k);
                next.push(w2);
            }
        }
        for w in &next {
            let mut m_w = Matrix::identity(alg.dim);
            for &k in w {
                m_w = &m_w * &refl[k];
            }
            let mut te = vec![0u8; n];
            loop {
                let d_t = torus_adjoint(alg, &te).expect("even exponents");
                let m_g = &d_t * &m_w;
                // ^σ(Ad_g) = L_σ · conj(M_g) · L_σ  (L_σ is real)
                let m_sig = &(l_sigma * &m_g.conj()) * l_sigma;
                if let Ok(inv) = m_sig.inverse() {
                    if &inv * &m_g == target {
                        return WitnessOutcome::Found(Witness {
                            torus_exponents: te,
                            word: w.clone(),
                        });
                    }
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    te[k] += 2;
                    if te[k] < 8 {
                        break;
                    }
                    te[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        words = next;
    }
    WitnessOutcome::NotFoundInSpace
}

/// The canonical rational Cartan extension used by enumeration pipelines:
/// h̄ᵢ = h, lᵢ = 0, with −id for the empty map and the chain-cycle completion
/// otherwise; validated against condition iv). None when the candidate family
/// contains no valid map (the pipeline then reports "extension required").
pub fn canonical_extension(alg: &Rc<WeylBasisAlgebra>, phi: &PhiMap) -> Option<PhiExtension> {
    let n = alg.rank();
    let full_h = Subspace::full(n, FieldTag::Complex);
    let candidate = if phi.is_empty() {
        Matrix::identity(n).scale(&Scalar::from_int(-1))
    } else {
        // chain-cycle completion: within each maximal chain the map follows φ
        // and wraps the last element to minus the chain sum; −1 off Π₀.
        let chain_list = chains(phi);
        let mut m = Matrix::zero(n, n);
        let mut covered = vec![false; n];
        for c in &chain_list {
            for w in c.roots.windows(2) {
                m[(w[1], w[0])] = Scalar::one();
                covered[w[0]] = true;
            }
            let last = *c.roots.last().unwrap();
            for &r in &c.roots {
                m[(r, last)] = Scalar::from_int(-1);
            }
            covered[last] = true;
        }
        for k in 0..n {
            if !covered[k] {
                m[(k, k)] = Scalar::from_int(-1);
            }
        }
        m
    };
    // The candidate must be a K-isometry of h before it can satisfy iv).
    let rs = &alg.root_system;
    for i in 0..n {
        let ci = candidate.col(i);
        for j in 0..n {
            let cj = candidate.col(j);
            let mut lhs = Scalar::zero();
            for (p, cp) in ci.iter().enumerate() {
                if cp.is_zero() {
                    continue;
                }
                for (q, cq) in cj.iter().enumerate() {
                    if !cq.is_zero() {
                        lhs += &(cp * cq) * &Scalar::from_rational(rs.killing_gram[p][q].clone());
                    }
                }
            }
            if lhs != Scalar::from_rational(rs.killing_gram[i][j].clone()) {
                return None;
            }
        }
    }
    let ext = PhiExtension::new(Rc::clone(alg), phi.clone(), full_h.clone(), full_h, candidate).ok()?;
    if check_iv(&ext) {
        Some(ext)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;
    use crate::rootsys::{build_root_system, Family, RootSystemSpec};

    fn alg(f: Family, n: usize) -> Rc<WeylBasisAlgebra> {
        Rc::new(build_algebra(Rc::new(build_root_system(
            RootSystemSpec::new(f, n).unwrap(),
        ))))
    }

    #[test]
    fn a1_has_only_the_empty_map() {
        let a = alg(Family::A, 1);
        let maps = enumerate_phi(&a.root_system);
        assert_eq!(maps.len(), 1);
        assert!(maps[0].is_empty());
    }

    #[test]
    fn a2_has_exactly_three_maps() {
        let a = alg(Family::A, 2);
        let maps = enumerate_phi(&a.root_system);
        assert_eq!(maps.len(), 3);
        assert!(maps[0].is_empty());
        assert_eq!(maps[1].map[&0], 1);
        assert_eq!(maps[2].map[&1], 0);
    }

    #[test]
    fn b2_has_only_the_empty_map() {
        let a = alg(Family::B, 2);
        assert_eq!(enumerate_phi(&a.root_system).len(), 1);
    }

    #[test]
    fn chain_structure() {
        let a = alg(Family::A, 2);
        let maps = enumerate_phi(&a.root_system);
        let c = chains(&maps[1]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].roots, vec![0, 1]);
        assert!(chains(&maps[0]).is_empty());
    }

    #[test]
    fn a3_two_step_chain() {
        let a = alg(Family::A, 3);
        let maps = enumerate_phi(&a.root_system);
        let two_step = maps
            .iter()
            .find(|p| p.pi1 == vec![0, 1] && p.map.get(&0) == Some(&1) && p.map.get(&1) == Some(&2))
            .expect("α₁↦α₂, α₂↦α₃ admissible");
        let c = chains(two_step);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].roots, vec![0, 1, 2]);
    }

    #[test]
    fn s_stability_example() {
        let a = alg(Family::A, 2);
        let s = a.root_system.diagram_automorphisms()[1].clone();
        let maps = enumerate_phi(&a.root_system);
        let phi = &maps[1];
        let c = chains(phi);
        assert_eq!(s_stability(&c, &s, phi), Ok(true));
        let id = DiagramAutomorphism::identity(2);
        assert!(s_stability(&c, &id, phi).is_err());
        let empty = &maps[0];
        assert_eq!(s_stability(&chains(empty), &id, empty), Ok(true));
    }

    #[test]
    fn stabilizer_dimensions() {
        let a2 = alg(Family::A, 2);
        let maps = enumerate_phi(&a2.root_system);
        assert_eq!(stabilizer_of_phi(&a2, &maps[0]).dim(), 2);
        assert_eq!(stabilizer_of_phi(&a2, &maps[1]).dim(), 1);
        let a3 = alg(Family::A, 3);
        for phi in &enumerate_phi(&a3.root_system) {
            assert_eq!(
                stabilizer_of_phi(&a3, phi).dim(),
                3 - phi.pi1.len(),
                "dim h^φ = rank − |Π₁| for {phi:?}"
            );
        }
    }

    #[test]
    fn canonical_extension_for_empty_map_is_minus_identity() {
        let a = alg(Family::A, 1);
        let maps = enumerate_phi(&a.root_system);
        let ext = canonical_extension(&a, &maps[0]).expect("−id works");
        assert!(check_iv(&ext));
        assert_eq!(
            ext.cartan_map,
            Matrix::identity(1).scale(&Scalar::from_int(-1))
        );
    }

    #[test]
    fn canonical_extension_a2_chain_matches_unique_one() {
        let a = alg(Family::A, 2);
        let maps = enumerate_phi(&a.root_system);
        let ext = canonical_extension(&a, &maps[1]).expect("cycle completion works");
        assert!(check_iv(&ext));
        // the 3-cycle on h: H₁ ↦ H₂, H₂ ↦ −H₁−H₂
        let m = &ext.cartan_map;
        assert_eq!(m[(1, 0)], Scalar::one());
        assert_eq!(m[(0, 1)], Scalar::from_int(-1));
        assert_eq!(m[(1, 1)], Scalar::from_int(-1));
    }

    #[test]
    fn check_iv_rejects_identity_and_scalings() {
        let a = alg(Family::A, 2);
        let maps = enumerate_phi(&a.root_system);
        let full = Subspace::full(2, FieldTag::Complex);
        let ext = PhiExtension::new(
            Rc::clone(&a),
            maps[0].clone(),
            full.clone(),
            full.clone(),
            Matrix::identity(2),
        )
        .unwrap();
        assert!(!check_iv(&ext));
        let ext2 = PhiExtension::new(
            Rc::clone(&a),
            maps[0].clone(),
            full.clone(),
            full,
            Matrix::identity(2).scale(&Scalar::from_int(-2)),
        )
        .unwrap();
        assert!(!check_iv(&ext2));
    }

    #[test]
    fn group_a_phi_cases() {
        let a2 = alg(Family::A, 2);
        let maps = enumerate_phi(&a2.root_system);
        let s = a2.root_system.diagram_automorphisms()[1].clone();
        let g = group_a_phi(2, &maps[1], &s).unwrap();
        assert_eq!(g.elements.len(), 2);
        assert!(g.elements[0].is_identity());
        assert_eq!(g.elements[1].signs, vec![-1, -1]);
        let id = DiagramAutomorphism::identity(2);
        let g = group_a_phi(2, &maps[0], &id).unwrap();
        assert_eq!(g.elements.len(), 4);
        let g = group_a_phi(2, &maps[0], &s).unwrap();
        assert_eq!(g.elements.len(), 1);
        let g = group_a_phi(2, &maps[1], &s).unwrap();
        for x in &g.elements {
            for y in &g.elements {
                assert!(g.elements.contains(&x.product(y)));
            }
        }
    }

    #[test]
    fn reflection_representative_is_an_automorphism() {
        let a = alg(Family::A, 2);
        for k in 0..2 {
            let m = reflection_representative(&a, k);
            assert!(crate::realform::is_linear_automorphism(&a, &m));
        }
    }
}
