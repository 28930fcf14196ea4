//! Finitely generated abelian groups in invariant-factor normal form,
//! homomorphisms between them, and tensor products.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::IntegerMatrix;
use super::smith::smith_normal_form;
use super::AbelianError;

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with `2 <= d_1 | d_2 | … | d_t`.
///
/// Generators are ordered free generators first, then one generator per
/// invariant factor. Two groups are isomorphic iff they compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<i64>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z` for order 0, trivial for order 1, `Z/d` otherwise.
    pub fn cyclic(order: i64) -> Self {
        Self::from_cyclic_orders(&[order])
    }

    /// Direct sum of cyclic groups of the given orders (0 meaning infinite cyclic).
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        normalize(orders).group
    }

    /// Validates an already normalized description.
    pub fn new(free_rank: usize, invariant_factors: Vec<i64>) -> Result<Self, AbelianError> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(AbelianError::InvalidFactor(invariant_factors));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(AbelianError::InvalidFactor(invariant_factors));
        }
        Ok(Self {
            free_rank,
            invariant_factors,
        })
    }

    /// Maximal number of linearly independent elements.
    pub fn rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Orders of the generators in order; 0 marks an infinite-order generator.
    pub fn generator_orders(&self) -> Vec<i64> {
        std::iter::repeat_n(0, self.free_rank)
            .chain(self.invariant_factors.iter().copied())
            .collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_cyclic_orders(&orders)
    }

    /// Whether the coordinate vector `x` (one entry per generator) is zero in the group.
    pub fn is_zero_element(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.generator_count());
        self.generator_orders()
            .iter()
            .zip(x)
            .all(|(&ord, &v)| if ord == 0 { v == 0 } else { v % ord == 0 })
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Presentation matrix `A` (relations as columns) to its cokernel `Z^rows / im A`.
pub fn cokernel(a: &IntegerMatrix) -> FgAbGroup {
    let snf = smith_normal_form(a);
    let diag = snf.invariant_factors();
    FgAbGroup {
        free_rank: a.rows() - diag.len(),
        invariant_factors: diag.into_iter().filter(|&d| d >= 2).collect(),
    }
}

/// gcd with `gcd(0, 0) = 0`, treating 0 as the order of `Z`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A group presented as a direct sum of cyclic groups, normalized, together
/// with the coordinate changes between the two generating systems.
pub(crate) struct Normalized {
    pub group: FgAbGroup,
    /// normal generators x original generators: original coordinates to normal ones
    pub to_normal: IntegerMatrix,
    /// original generators x normal generators: image of each normal generator
    pub from_normal: IntegerMatrix,
}

pub(crate) fn normalize(orders: &[i64]) -> Normalized {
    let n = orders.len();
    let rel = IntegerMatrix::diagonal_matrix(n, n, orders);
    let snf = smith_normal_form(&rel);
    let diag = snf.d.diagonal();
    // normal order: free generators, then torsion in divisibility order
    let free: Vec<usize> = (0..n).filter(|&i| diag[i] == 0).collect();
    let torsion: Vec<usize> = (0..n).filter(|&i| diag[i] >= 2).collect();
    let keep: Vec<usize> = free.iter().chain(&torsion).copied().collect();
    let mut to_normal = IntegerMatrix::zeros(keep.len(), n);
    let mut from_normal = IntegerMatrix::zeros(n, keep.len());
    for (k, &i) in keep.iter().enumerate() {
        for j in 0..n {
            to_normal.set(k, j, snf.u.get(i, j));
            from_normal.set(j, k, snf.u_inv.get(j, i));
        }
    }
    Normalized {
        group: FgAbGroup {
            free_rank: free.len(),
            invariant_factors: torsion.iter().map(|&i| diag[i]).collect(),
        },
        to_normal,
        from_normal,
    }
}

/// Tensor product, summand by summand: `Z ⊗ C = C` and `Z/d ⊗ Z/e = Z/gcd(d, e)`.
pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    FgAbGroup::from_cyclic_orders(&pair_orders(g, h))
}

fn pair_orders(g: &FgAbGroup, h: &FgAbGroup) -> Vec<i64> {
    let ho = h.generator_orders();
    g.generator_orders()
        .iter()
        .flat_map(|&a| ho.iter().map(move |&b| gcd(a, b)))
        .collect()
}

/// A homomorphism given by its action on generators: column `j` holds the
/// codomain coordinates of the image of domain generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub domain: FgAbGroup,
    pub codomain: FgAbGroup,
    pub matrix: IntegerMatrix,
}

impl GroupHom {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntegerMatrix) -> Result<Self, AbelianError> {
        if matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count() {
            return Err(AbelianError::HomShape {
                expected: (codomain.generator_count(), domain.generator_count()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        let hom = Self {
            domain,
            codomain,
            matrix,
        };
        if let Some(generator) = hom.ill_defined_generator() {
            return Err(AbelianError::NotWellDefined { generator });
        }
        Ok(hom)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntegerMatrix::identity(g.generator_count()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &FgAbGroup, k: i64) -> Self {
        let n = g.generator_count();
        Self {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntegerMatrix::diagonal_matrix(n, n, &vec![k; n]),
        }
    }

    /// First domain generator whose order does not annihilate its image.
    fn ill_defined_generator(&self) -> Option<usize> {
        let orders = self.domain.generator_orders();
        (0..self.matrix.cols()).find(|&j| {
            let ord = orders[j];
            if ord == 0 {
                return false;
            }
            let scaled: Vec<i64> = self.matrix.column(j).iter().map(|&x| x * ord).collect();
            !self.codomain.is_zero_element(&scaled)
        })
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero_element(&self.matrix.column(j)))
    }
}

/// `f ⊗ 1_G` together with whether it is a nonzero map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorHom {
    pub hom: GroupHom,
    pub nontrivial: bool,
}

/// The homomorphism `f ⊗ 1_G : A ⊗ G -> B ⊗ G` in normal-form coordinates.
pub fn induced_tensor_hom(f: &GroupHom, g: &FgAbGroup) -> TensorHom {
    let gn = g.generator_count();
    let (an, bn) = (f.domain.generator_count(), f.codomain.generator_count());
    // generator a_i ⊗ g_k sits at index i * gn + k
    let mut pair_map = IntegerMatrix::zeros(bn * gn, an * gn);
    for i in 0..an {
        for l in 0..bn {
            let x = f.matrix.get(l, i);
            if x != 0 {
                for k in 0..gn {
                    pair_map.set(l * gn + k, i * gn + k, x);
                }
            }
        }
    }
    let src = normalize(&pair_orders(&f.domain, g));
    let dst = normalize(&pair_orders(&f.codomain, g));
    let matrix = dst.to_normal.mul(&pair_map).mul(&src.from_normal);
    let hom = GroupHom {
        domain: src.group,
        codomain: dst.group,
        matrix,
    };
    debug_assert!(hom.ill_defined_generator().is_none());
    let nontrivial = !hom.is_zero();
    TensorHom { hom, nontrivial }
}

/// `⊗^k G`, with `⊗^1 G = G`.
pub fn tensor_power(g: &FgAbGroup, k: usize) -> FgAbGroup {
    assert!(k >= 1, "tensor power needs k >= 1");
    (1..k).fold(g.clone(), |acc, _| tensor(&acc, g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A1Report {
    pub k: usize,
    pub nontrivial_at_1: bool,
    pub nontrivial_at_k: bool,
}

/// Checks that nontriviality of `f ⊗ 1_G` carries over to `f ⊗ 1_{⊗^k G}`.
///
/// Every finitely generated group is a direct sum of cyclic groups, so the
/// implication must hold; a failure is returned as an error carrying the data.
pub fn theorem_a1_check(f: &GroupHom, g: &FgAbGroup, k: usize) -> Result<A1Report, AbelianError> {
    if k == 0 {
        return Err(AbelianError::ZeroPower);
    }
    let level1 = induced_tensor_hom(f, g);
    let power = tensor_power(g, k);
    let levelk = induced_tensor_hom(f, &power);
    if level1.nontrivial && !levelk.nontrivial {
        return Err(AbelianError::Counterexample(Box::new(Counterexample {
            f: f.clone(),
            g: g.clone(),
            k,
            level1: level1.hom,
            levelk: levelk.hom,
        })));
    }
    Ok(A1Report {
        k,
        nontrivial_at_1: level1.nontrivial,
        nontrivial_at_k: levelk.nontrivial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub f: GroupHom,
    pub g: FgAbGroup,
    pub k: usize,
    pub level1: GroupHom,
    pub levelk: GroupHom,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntegerMatrix::from_rows(&[[2]])), FgAbGroup::cyclic(2));
        let d = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(cokernel(&d), FgAbGroup::new(0, vec![6]).unwrap());
        assert_eq!(cokernel(&IntegerMatrix::zeros(2, 0)), FgAbGroup::free(2));
    }

    #[test]
    fn normal_form_merges_coprime_parts() {
        let g = FgAbGroup::from_cyclic_orders(&[2, 3, 0, 1, 4]);
        assert_eq!(g, FgAbGroup::new(1, vec![2, 12]).unwrap());
        assert!(FgAbGroup::new(0, vec![4, 6]).is_err());
        assert!(FgAbGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn tensor_examples() {
        let g = FgAbGroup::new(2, vec![3]).unwrap();
        assert_eq!(tensor(&z(), &g), g);
        assert_eq!(tensor(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6)), FgAbGroup::cyclic(2));
        let zz2 = FgAbGroup::new(1, vec![2]).unwrap();
        assert_eq!(tensor(&zz2, &FgAbGroup::cyclic(2)), FgAbGroup::new(0, vec![2, 2]).unwrap());
    }

    #[test]
    fn induced_hom_examples() {
        let id = GroupHom::identity(&z());
        assert!(induced_tensor_hom(&id, &FgAbGroup::cyclic(2)).nontrivial);
        for p in [2, 3, 5] {
            let times_p = GroupHom::scalar(&z(), p);
            assert!(!induced_tensor_hom(&times_p, &FgAbGroup::cyclic(p)).nontrivial);
        }
        let twice = GroupHom::scalar(&z(), 2);
        let g = FgAbGroup::new(1, vec![2]).unwrap();
        assert!(induced_tensor_hom(&twice, &g).nontrivial);
    }

    #[test]
    fn ill_defined_hom_rejected() {
        // Z/2 -> Z sending the generator to 1 is not a homomorphism
        let err = GroupHom::new(FgAbGroup::cyclic(2), z(), IntegerMatrix::from_rows(&[[1]]));
        assert!(matches!(err, Err(AbelianError::NotWellDefined { generator: 0 })));
        // Z/2 -> Z/4 sending the generator to 2 is
        assert!(GroupHom::new(FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), IntegerMatrix::from_rows(&[[2]])).is_ok());
    }

    #[test]
    fn a1_examples() {
        let z2 = FgAbGroup::cyclic(2);
        let r = theorem_a1_check(&GroupHom::identity(&z2), &z2, 3).unwrap();
        assert!(r.nontrivial_at_1 && r.nontrivial_at_k);

        let r = theorem_a1_check(&GroupHom::scalar(&z(), 3), &FgAbGroup::cyclic(3), 2).unwrap();
        assert!(!r.nontrivial_at_1);

        let g = FgAbGroup::new(1, vec![2]).unwrap();
        let r = theorem_a1_check(&GroupHom::scalar(&z(), 2), &g, 2).unwrap();
        assert!(r.nontrivial_at_1 && r.nontrivial_at_k);
        assert!(tensor_power(&g, 2).free_rank >= 1);

        assert!(matches!(theorem_a1_check(&GroupHom::identity(&z2), &z2, 0), Err(AbelianError::ZeroPower)));
    }

    #[test]
    fn display() {
        assert_eq!(FgAbGroup::new(2, vec![2, 4]).unwrap().to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }
}
