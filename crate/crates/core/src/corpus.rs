//! The shipped test corpus: thirty groups of order at most 200, including
//! relabelled and differently constructed copies of some of them.

use crate::abelian::{primary_decomposition, AbelianAut};
use crate::builders::{baer_group, semidirect_product, BilinearMap};
use crate::cayley::{direct_product, families, CayleyGroup};
use crate::error::Result;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct CorpusGroup {
    pub name: String,
    pub group: Arc<CayleyGroup>,
}

/// Relabelling `x -> (a x + b) mod n` with `a` the least unit above `n / 3`.
pub fn affine_relabel(g: &CayleyGroup) -> CayleyGroup {
    let n = g.order();
    let a = (n / 3 + 1..).find(|&a| crate::linalg::gcd(a as u64, n as u64) == 1).unwrap_or(1);
    let perm: Vec<usize> = (0..n).map(|x| (a * x + n / 2) % n).collect();
    g.relabel(&perm)
}

fn bilinear(p: u64, k: usize, l: usize, pairs: &[(usize, usize, Vec<u64>)]) -> Result<BilinearMap> {
    let mut values = vec![vec![vec![0u64; k]; l]; l];
    for (i, j, v) in pairs {
        values[*i][*j] = v.clone();
        values[*j][*i] = v.iter().map(|&x| (p - x % p) % p).collect();
    }
    BilinearMap::new(p, k, l, values)
}

/// The Heisenberg group of order 27.
pub fn heisenberg27() -> Result<CayleyGroup> {
    baer_group(&bilinear(3, 1, 2, &[(0, 1, vec![1])])?)
}

/// `Z_3^2 ⋊ Z_2` with the generator acting by inversion.
pub fn generalized_dihedral_9() -> Result<CayleyGroup> {
    let a = primary_decomposition(Arc::new(families::elementary_abelian(3, 2)))?;
    let neg = AbelianAut { matrix: vec![vec![2, 0], vec![0, 2]] };
    semidirect_product(&a, Arc::new(families::cyclic(2)), vec![AbelianAut::identity(2), neg])
}

pub fn corpus() -> Result<Vec<CorpusGroup>> {
    let a5 = families::alternating(5);
    let sl25 = families::sl2(5);
    let z2a5 = direct_product(&families::cyclic(2), &a5);
    let heis = heisenberg27()?;
    let baer81 = baer_group(&bilinear(3, 1, 3, &[(0, 1, vec![1]), (1, 2, vec![1])])?)?;
    let list: Vec<(&str, CayleyGroup)> = vec![
        ("Z4", families::cyclic(4)),
        ("Z2xZ2", families::elementary_abelian(2, 2)),
        ("Z6", families::cyclic(6)),
        ("Z8", families::cyclic(8)),
        ("Z4xZ2", families::abelian(&[4, 2])),
        ("Z2^3", families::elementary_abelian(2, 3)),
        ("Z9", families::cyclic(9)),
        ("Z3xZ3", families::elementary_abelian(3, 2)),
        ("Z2xZ6", families::abelian(&[2, 6])),
        ("S3", families::symmetric(3)),
        ("D4", families::dihedral(4)),
        ("Q8", families::quaternion()),
        ("D5", families::dihedral(5)),
        ("A4", families::alternating(4)),
        ("Dic3", families::dicyclic(3)),
        ("Z7:Z3", families::cyclic_semidirect(7, 3, 2)),
        ("Heis27", heis.clone()),
        ("Z9:Z3", families::cyclic_semidirect(9, 3, 4)),
        ("Baer81", baer81),
        ("Z3^2:Z2", generalized_dihedral_9()?),
        ("A5", a5),
        ("SL(2,5)", sl25.clone()),
        ("Z2xA5", z2a5.clone()),
        ("Z3:Z2", families::cyclic_semidirect(3, 2, 2)),
        ("Z2xZ3", families::abelian(&[2, 3])),
        ("D4'", affine_relabel(&families::dihedral(4))),
        ("Q8'", affine_relabel(&families::quaternion())),
        ("Heis27'", affine_relabel(&heis)),
        ("SL(2,5)'", affine_relabel(&sl25)),
        ("Z2xA5'", affine_relabel(&z2a5)),
    ];
    Ok(list.into_iter().map(|(n, g)| CorpusGroup { name: n.to_string(), group: Arc::new(g) }).collect())
}
