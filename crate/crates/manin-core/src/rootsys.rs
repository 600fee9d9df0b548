//! Root systems: simple and positive roots, Cartan matrix, the
//! Killing-normalized inner product on h*, and diagram automorphisms.

use crate::error::MathError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;

/// Exact rational values used throughout the root-system data.
pub type Rational = BigRational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, MathError> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            _ => Err(MathError::InvalidRootSystem(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, MathError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemSpec { family, rank })
        } else {
            Err(MathError::InvalidRootSystem(format!(
                "rank {rank} is not valid for family {family}"
            )))
        }
    }
}

/// A root as an integer coordinate vector in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Permutation of simple-root indices preserving the Cartan matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..rank).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p)
    }

    pub fn apply_index(&self, k: usize) -> usize {
        self.perm[k]
    }

    /// Image of a root under the induced lattice map.
    pub fn apply_root(&self, r: &Root) -> Root {
        let mut coords = vec![0i64; r.coords.len()];
        for (k, &c) in r.coords.iter().enumerate() {
            coords[self.perm[k]] += c;
        }
        Root { coords }
    }

    pub fn order(&self) -> usize {
        let mut p: Vec<usize> = self.perm.clone();
        let mut n = 1;
        while !p.iter().enumerate().all(|(k, &q)| k == q) {
            p = p.iter().map(|&q| self.perm[q]).collect();
            n += 1;
        }
        n
    }
}

#[derive(Clone)]
pub struct RootSystem {
    pub spec: RootSystemSpec,
    pub simple_roots: Vec<Root>,
    /// Positive roots sorted by (height, lexicographic coordinates).
    pub positive_roots: Vec<Root>,
    /// cartan[i][j] = 2(α_i,α_j)/(α_i,α_i).
    pub cartan: Vec<Vec<i64>>,
    /// Killing-normalized gram matrix of the simple roots.
    pub killing_gram: Vec<Vec<BigRational>>,
    index_of: HashMap<Vec<i64>, usize>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RootSystem({}{}, {} positive roots)",
            self.spec.family,
            self.spec.rank,
            self.positive_roots.len()
        )
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Diagram data: Cartan matrix and symmetrizer d_i = (α_i,α_i)/2 up to scale.
fn diagram_data(spec: RootSystemSpec) -> (Vec<Vec<i64>>, Vec<BigRational>) {
    let n = spec.rank;
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    // Bourbaki chains and symmetrizers.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut d: Vec<BigRational> = vec![BigRational::one(); n];
    match spec.family {
        Family::A => {
            for i in 0..n - 1 {
                edges.push((i, i + 1));
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                edges.push((i, i + 1));
            }
            d[n - 1] = rat(1, 2);
        }
        Family::C => {
            for i in 0..n - 1 {
                edges.push((i, i + 1));
            }
            d[n - 1] = rat(2, 1);
        }
        Family::D => {
            for i in 0..n - 2 {
                edges.push((i, i + 1));
            }
            edges.push((n - 3, n - 1));
        }
        Family::E => {
            // Bourbaki numbering: chain 1-3-4-5-6(-7-8), node 2 attached to 4.
            edges.push((0, 2));
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
            edges.push((1, 3));
        }
        Family::F => {
            edges.push((0, 1));
            edges.push((1, 2));
            edges.push((2, 3));
            d[2] = rat(1, 2);
            d[3] = rat(1, 2);
        }
        Family::G => {
            edges.push((0, 1));
            d[1] = rat(3, 1);
        }
    }
    for (i, j) in edges {
        // (α_i, α_j) = -max(d_i, d_j); a_ij = 2(α_i,α_j)/(α_i,α_i) = -max/d_i.
        let m = if d[i] >= d[j] { d[i].clone() } else { d[j].clone() };
        let aij = -(&m / &d[i]);
        let aji = -(&m / &d[j]);
        assert!(aij.is_integer() && aji.is_integer());
        cartan[i][j] = int_of(&aij);
        cartan[j][i] = int_of(&aji);
    }
    (cartan, d)
}

fn int_of(r: &BigRational) -> i64 {
    use num_traits::ToPrimitive;
    r.to_integer().to_i64().expect("small integer")
}

fn expected_positive_count(spec: RootSystemSpec) -> usize {
    let n = spec.rank;
    match spec.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

/// Builds a root system: positive roots by inductive root-string closure and
/// the inner product rescaled so (α,β) = K(t_α, t_β) for the Killing form.
pub fn build_root_system(spec: RootSystemSpec) -> RootSystem {
    let n = spec.rank;
    let (cartan, d) = diagram_data(spec);
    let simple_roots: Vec<Root> = (0..n)
        .map(|k| {
            let mut coords = vec![0i64; n];
            coords[k] = 1;
            Root { coords }
        })
        .collect();

    // String closure: β + α_i is a root iff p - ⟨β, α_i^∨⟩ > 0 with
    // p the largest k such that β - k α_i is a root.
    let mut known: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut by_height: Vec<Vec<Root>> = vec![simple_roots.clone()];
    for r in &simple_roots {
        known.insert(r.coords.clone(), ());
    }
    loop {
        let current = by_height.last().unwrap().clone();
        let mut next: Vec<Root> = Vec::new();
        for beta in &current {
            for (i, alpha) in simple_roots.iter().enumerate() {
                let mut p = 0i64;
                let mut down = beta.sub(alpha);
                while known.contains_key(&down.coords) {
                    p += 1;
                    down = down.sub(alpha);
                }
                // ⟨β, α_i^∨⟩ = Σ_j β_j a_ij
                let pairing: i64 = beta
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| c * cartan[i][j])
                    .sum();
                if p - pairing > 0 {
                    let up = beta.add(alpha);
                    if !known.contains_key(&up.coords) {
                        known.insert(up.coords.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        by_height.push(next);
    }
    let mut positive_roots: Vec<Root> = by_height.into_iter().flatten().collect();
    positive_roots.sort_by(|a, b| (a.height(), &a.coords).cmp(&(b.height(), &b.coords)));
    assert_eq!(
        positive_roots.len(),
        expected_positive_count(spec),
        "positive-root count for {}{}",
        spec.family,
        spec.rank
    );

    // Unnormalized invariant form (α_i, α_j)_0 = d_i a_ij, then rescale by γ
    // where Σ_{β∈Δ} (β,α_i)_0 (β,α_j)_0 = γ (α_i,α_j)_0, so that the result
    // satisfies (λ,μ) = Σ_{β∈Δ} (β,λ)(β,μ), the defining identity of the form
    // induced by the Killing form on h*.
    let gram0: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &d[i] * BigRational::from_integer(BigInt::from(cartan[i][j])))
                .collect()
        })
        .collect();
    let pair0 = |a: &Root, b: &Root| -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &ca) in a.coords.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coords.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                acc += &gram0[i][j] * rat(ca * cb, 1);
            }
        }
        acc
    };
    let mut t00 = BigRational::zero();
    for beta in &positive_roots {
        let v = pair0(beta, &simple_roots[0]);
        t00 += &v * &v;
    }
    t00 *= rat(2, 1); // negative roots contribute equally
    let gamma = &t00 / &gram0[0][0];
    let killing_gram: Vec<Vec<BigRational>> = gram0
        .iter()
        .map(|row| row.iter().map(|x| x / &gamma).collect())
        .collect();

    // Exact self-consistency of the normalization on every gram entry.
    #[cfg(debug_assertions)]
    {
        for i in 0..n {
            for j in 0..n {
                let mut t = BigRational::zero();
                for beta in &positive_roots {
                    t += pair0(beta, &simple_roots[i]) * pair0(beta, &simple_roots[j]);
                }
                t *= rat(2, 1);
                assert_eq!(&t / (&gamma * &gamma), killing_gram[i][j]);
            }
        }
    }

    let mut index_of = HashMap::new();
    for (k, r) in positive_roots.iter().enumerate() {
        index_of.insert(r.coords.clone(), k);
    }

    RootSystem {
        spec,
        simple_roots,
        positive_roots,
        cartan,
        killing_gram,
        index_of,
    }
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Dimension of the algebra this system generates: rank + 2|Δ⁺|.
    pub fn algebra_dim(&self) -> usize {
        self.rank() + 2 * self.positive_roots.len()
    }

    pub fn is_positive_root(&self, coords: &[i64]) -> bool {
        self.index_of.contains_key(coords)
    }

    /// Index into `positive_roots` if ±coords is a positive root; the sign
    /// tells which.
    pub fn signed_index(&self, coords: &[i64]) -> Option<(usize, i8)> {
        if let Some(&k) = self.index_of.get(coords) {
            return Some((k, 1));
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index_of.get(&neg).map(|&k| (k, -1))
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.signed_index(coords).is_some()
    }

    /// Killing-normalized inner product of two roots (or lattice vectors).
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                acc += &self.killing_gram[i][j] * rat(ca * cb, 1);
            }
        }
        acc
    }

    /// Inner product restricted to actual roots, as the spec's operation.
    pub fn inner_product(&self, a: &Root, b: &Root) -> Result<BigRational, MathError> {
        if !self.is_root(&a.coords) || !self.is_root(&b.coords) {
            return Err(MathError::RootNotInSystem);
        }
        Ok(self.pairing(&a.coords, &b.coords))
    }

    /// Identity plus the nontrivial order-2 diagram automorphism for
    /// A_n (n ≥ 2), D_n, E6. D4 triality is not surfaced.
    pub fn diagram_automorphisms(&self) -> Vec<DiagramAutomorphism> {
        let n = self.rank();
        let mut out = vec![DiagramAutomorphism::identity(n)];
        let nontrivial = match self.spec.family {
            Family::A if n >= 2 => {
                Some((0..n).map(|k| n - 1 - k).collect::<Vec<_>>())
            }
            Family::D => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            Family::E if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
            _ => None,
        };
        if let Some(perm) = nontrivial {
            let a = DiagramAutomorphism { perm };
            debug_assert!(self.preserves_cartan(&a));
            debug_assert_eq!(a.order(), 2);
            out.push(a);
        }
        out
    }

    pub fn preserves_cartan(&self, a: &DiagramAutomorphism) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| self.cartan[a.perm[i]][a.perm[j]] == self.cartan[i][j])
        })
    }
}
