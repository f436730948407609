//! Presheaves of finite sets on connectivity sites and posets, the sheaf
//! condition for the covering relation, and the equivalence between sheaves
//! on a space and presheaves on its irreducible poset.

mod equivalence;
mod presheaf;
mod site;

pub use equivalence::{
    glue_from_irreducibles, restrict_to_irreducibles, verify_equivalence, EquivalenceReport,
};
pub use presheaf::{representable, terminal, FinitePresheaf, Restriction};
pub use site::{Site, SiteBase};

use std::collections::HashSet;

use crate::error::Result;
use crate::sieve::{covering_sieves, minimal_covering_sieve, Sieve};

/// Compatible families over a list of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub objects: Vec<usize>,
    /// One element index per object, sorted lexicographically.
    pub tuples: Vec<Vec<usize>>,
}

impl Limit {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `*` for the empty family, `(b1,b2,…)` otherwise.
    pub fn label(&self, f: &FinitePresheaf, k: usize) -> String {
        if self.objects.is_empty() {
            return "*".to_string();
        }
        let parts: Vec<&str> = self
            .objects
            .iter()
            .zip(&self.tuples[k])
            .map(|(&b, &x)| f.values(b)[x].as_str())
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn labels(&self, f: &FinitePresheaf) -> Vec<String> {
        (0..self.len()).map(|k| self.label(f, k)).collect()
    }
}

/// The limit of `f` over the full subposet on `objects`: tuples `(x_B)` with
/// `x_B` restricting to `x_C` whenever `C ≤ B` are both listed. Repeated
/// objects are dropped. The empty list yields the one-element set `{*}`.
pub fn limit_over(f: &FinitePresheaf, objects: &[usize]) -> Limit {
    let site = f.site();
    let mut objs: Vec<usize> = Vec::with_capacity(objects.len());
    for &b in objects {
        if !objs.contains(&b) {
            objs.push(b);
        }
    }
    let mut order: Vec<usize> = (0..objs.len()).collect();
    order.sort_by_key(|&p| site.below(objs[p]).len());
    // For each position in `order`, earlier positions holding lower objects.
    let checks: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            order[..k]
                .iter()
                .copied()
                .filter(|&q| site.leq(objs[q], objs[p]))
                .collect()
        })
        .collect();

    let mut tuples = Vec::new();
    let mut current = vec![0usize; objs.len()];
    fill(f, &objs, &order, &checks, 0, &mut current, &mut tuples);
    tuples.sort_unstable();
    Limit {
        objects: objs,
        tuples,
    }
}

fn fill(
    f: &FinitePresheaf,
    objs: &[usize],
    order: &[usize],
    checks: &[Vec<usize>],
    k: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == order.len() {
        out.push(current.clone());
        return;
    }
    let p = order[k];
    let b = objs[p];
    for x in 0..f.cardinality(b) {
        if checks[k]
            .iter()
            .all(|&q| f.restrict(b, objs[q], x) == current[q])
        {
            current[p] = x;
            fill(f, objs, order, checks, k + 1, current, out);
        }
    }
}

/// How the comparison map from a value set into a limit fails to be bijective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingDefect {
    pub values: usize,
    pub limit: usize,
    pub injective: bool,
}

/// Compares `values(a)` with the limit over `objects` (all below `a`) through
/// the restriction maps. `None` when the comparison is a bijection.
pub fn gluing_defect(f: &FinitePresheaf, a: usize, objects: &[usize]) -> Option<GluingDefect> {
    let limit = limit_over(f, objects);
    let images: HashSet<Vec<usize>> = (0..f.cardinality(a))
        .map(|x| limit.objects.iter().map(|&b| f.restrict(a, b, x)).collect())
        .collect();
    let injective = images.len() == f.cardinality(a);
    if injective && images.len() == limit.len() {
        None
    } else {
        Some(GluingDefect {
            values: f.cardinality(a),
            limit: limit.len(),
            injective,
        })
    }
}

fn sieve_objects(f: &FinitePresheaf, sieve: &Sieve) -> Vec<usize> {
    sieve
        .domain()
        .iter()
        .map(|s| {
            f.site()
                .object_of_subset(s)
                .expect("sieve members are connected")
        })
        .collect()
}

/// Whether `values(target)` is the limit over `sieve`. Applies to any sieve,
/// covering or not.
pub fn satisfies_gluing(f: &FinitePresheaf, sieve: &Sieve) -> Result<bool> {
    f.site().require_space()?;
    let a = f
        .site()
        .object_of_subset(sieve.target())
        .expect("sieve targets are connected");
    Ok(gluing_defect(f, a, &sieve_objects(f, sieve)).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafFailure {
    pub sieve: Sieve,
    pub defect: GluingDefect,
    /// Rendering of the sieve, e.g. `empty sieve on ∅`.
    pub witness: String,
}

impl SheafFailure {
    pub fn describe(&self) -> String {
        format!(
            "{}: {} value(s) against {} compatible famil{}{}",
            self.witness,
            self.defect.values,
            self.defect.limit,
            if self.defect.limit == 1 { "y" } else { "ies" },
            if self.defect.injective {
                ""
            } else {
                ", restriction not injective"
            }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SheafCheck {
    pub sieves_checked: usize,
    pub failure: Option<SheafFailure>,
}

impl SheafCheck {
    pub fn is_sheaf(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the sheaf condition on the sieve generated by the irreducibles
/// inside each connected set. Agreement with [`is_sheaf_exhaustive`] is
/// pinned by tests rather than assumed.
pub fn is_sheaf(f: &FinitePresheaf) -> Result<SheafCheck> {
    let space = f.site().require_space()?;
    let mut check = SheafCheck::default();
    for target in space.connecteds().iter() {
        check.sieves_checked += 1;
        if let Some(failure) = check_sieve(f, minimal_covering_sieve(space, target)?) {
            check.failure = Some(failure);
            return Ok(check);
        }
    }
    Ok(check)
}

/// Checks the sheaf condition on every covering sieve of every connected set.
pub fn is_sheaf_exhaustive(f: &FinitePresheaf) -> Result<SheafCheck> {
    let space = f.site().require_space()?;
    let mut check = SheafCheck::default();
    for target in space.connecteds().iter() {
        for sieve in covering_sieves(space, target)? {
            check.sieves_checked += 1;
            if let Some(failure) = check_sieve(f, sieve) {
                check.failure = Some(failure);
                return Ok(check);
            }
        }
    }
    Ok(check)
}

fn check_sieve(f: &FinitePresheaf, sieve: Sieve) -> Option<SheafFailure> {
    let space = f.site().space().expect("space site");
    let a = f
        .site()
        .object_of_subset(sieve.target())
        .expect("connected target");
    let defect = gluing_defect(f, a, &sieve_objects(f, &sieve))?;
    Some(SheafFailure {
        witness: sieve.describe(space),
        sieve,
        defect,
    })
}
