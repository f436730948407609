use super::Poset;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Least upper bound of `a` and `b`, if it exists.
pub fn join(p: &Poset, a: usize, b: usize) -> Option<usize> {
    let upper = p.up_set(a) & p.up_set(b);
    upper.iter().find(|&u| upper.is_subset_of(p.up_set(u)))
}

/// Greatest lower bound of `a` and `b`, if it exists.
pub fn meet(p: &Poset, a: usize, b: usize) -> Option<usize> {
    let lower = p.down_set(a) & p.down_set(b);
    lower.iter().find(|&l| lower.is_subset_of(p.down_set(l)))
}

/// Exactly one lower cover. This excludes the bottom element, which has none.
pub fn is_join_irreducible(p: &Poset, x: usize) -> bool {
    p.covers().iter().filter(|&&(_, upper)| upper == x).count() == 1
}

pub fn join_irreducibles(p: &Poset) -> Vec<usize> {
    let covers = p.covers();
    (0..p.len())
        .filter(|&x| covers.iter().filter(|&&(_, u)| u == x).count() == 1)
        .collect()
}

fn check_distributive_lattice(p: &Poset) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = p.len();
    if n == 0 {
        return Err(Error::NotALattice {
            detail: "empty poset".into(),
        });
    }
    // table[a][b] = (join, meet)
    let mut table = vec![vec![(0, 0); n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let j = join(p, a, b).ok_or_else(|| Error::NotALattice {
                detail: format!("{} and {} have no join", p.label(a), p.label(b)),
            })?;
            let m = meet(p, a, b).ok_or_else(|| Error::NotALattice {
                detail: format!("{} and {} have no meet", p.label(a), p.label(b)),
            })?;
            *cell = (j, m);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = table[a][table[b][c].0].1;
                let rhs = table[table[a][b].1][table[a][c].1].0;
                if lhs != rhs {
                    return Err(Error::NotDistributive {
                        a: p.label(a).to_string(),
                        b: p.label(b).to_string(),
                        c: p.label(c).to_string(),
                    });
                }
            }
        }
    }
    Ok(table)
}

/// A finite distributive lattice presented through its join-irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffRepresentation {
    /// The join-irreducible elements with the induced order.
    pub irreducibles: Poset,
    /// Lattice index of each element of `irreducibles`.
    pub embedding: Vec<usize>,
    /// For each lattice element, the join-irreducibles below it (indices into
    /// `irreducibles`). Always a down-set.
    pub map: Vec<Subset>,
}

impl BirkhoffRepresentation {
    /// Checks that `map` is a bijection onto the down-sets of `irreducibles`
    /// and that `x ≤ y ⟺ map(x) ⊆ map(y)`.
    pub fn is_order_isomorphism(&self, lattice: &Poset) -> bool {
        let Ok(down_sets) = self.irreducibles.down_sets(1 << 20) else {
            return false;
        };
        let mut images = self.map.clone();
        images.sort_unstable();
        images.dedup();
        if images != down_sets || self.map.len() != down_sets.len() {
            return false;
        }
        (0..lattice.len()).all(|x| {
            (0..lattice.len()).all(|y| lattice.leq(x, y) == self.map[x].is_subset_of(self.map[y]))
        })
    }
}

/// Represents a finite distributive lattice as the down-sets of its poset of
/// join-irreducible elements.
pub fn birkhoff_representation(lattice: &Poset) -> Result<BirkhoffRepresentation> {
    check_distributive_lattice(lattice)?;
    let embedding = join_irreducibles(lattice);
    let keep: Subset = embedding.iter().copied().collect();
    let irreducibles = lattice.induced(keep);
    let map = (0..lattice.len())
        .map(|x| {
            embedding
                .iter()
                .enumerate()
                .filter(|(_, &a)| lattice.leq(a, x))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok(BirkhoffRepresentation {
        irreducibles,
        embedding,
        map,
    })
}

/// The down-sets of `p` ordered by inclusion, labelled by their rendering.
pub fn down_set_lattice(p: &Poset, cap: usize) -> Result<(Poset, Vec<Subset>)> {
    let sets = p.down_sets(cap)?;
    if sets.len() > crate::subset::MAX_POINTS {
        return Err(Error::TooManyPoints { count: sets.len() });
    }
    let labels = sets
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|i| p.label(i)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let down = sets
        .iter()
        .map(|&s| {
            sets.iter()
                .enumerate()
                .filter(|(_, &t)| t.is_subset_of(s))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok((Poset::from_down_rows(labels, down), sets))
}
