use crate::connectivity::ConnectivitySpace;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::{Subset, MAX_POINTS};

/// What a site was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiteBase {
    /// Objects are the connected sets, including the empty one.
    Space(ConnectivitySpace),
    Poset(Poset),
}

/// A finite poset of objects on which presheaves live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    base: SiteBase,
    labels: Vec<String>,
    /// `below[a]` holds every object `b ≤ a`, including `a`.
    below: Vec<Subset>,
    /// Objects in an order compatible with `≤`.
    ascending: Vec<usize>,
}

impl Site {
    /// The connected sets of `space` ordered by inclusion, labelled by their rendering.
    pub fn of_space(space: &ConnectivitySpace) -> Result<Self> {
        let objects = space.connecteds().members();
        if objects.len() > MAX_POINTS {
            return Err(Error::too_large(
                "site of connected sets",
                objects.len(),
                MAX_POINTS,
            ));
        }
        let labels = objects.iter().map(|&s| space.render(s)).collect();
        let below = objects
            .iter()
            .map(|&a| {
                objects
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b.is_subset_of(a))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Site::build(SiteBase::Space(space.clone()), labels, below))
    }

    pub fn of_poset(p: &Poset) -> Self {
        Site::build(
            SiteBase::Poset(p.clone()),
            p.labels().to_vec(),
            p.down_rows().to_vec(),
        )
    }

    fn build(base: SiteBase, labels: Vec<String>, below: Vec<Subset>) -> Self {
        let mut ascending: Vec<usize> = (0..labels.len()).collect();
        ascending.sort_by_key(|&a| below[a].len());
        Site {
            base,
            labels,
            below,
            ascending,
        }
    }

    pub fn base(&self) -> &SiteBase {
        &self.base
    }

    pub fn space(&self) -> Option<&ConnectivitySpace> {
        match &self.base {
            SiteBase::Space(s) => Some(s),
            SiteBase::Poset(_) => None,
        }
    }

    pub(crate) fn require_space(&self) -> Result<&ConnectivitySpace> {
        self.space().ok_or_else(|| Error::KindMismatch {
            expected: "connectivity-space".into(),
            found: "poset".into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn object(&self, label: &str) -> Result<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Ok(i);
        }
        // Rendered subsets may be written with other spacing or point order.
        if let Some(space) = self.space() {
            if let Ok(s) = space.ground().parse_rendered(label) {
                if let Some(i) = self.object_of_subset(s) {
                    return Ok(i);
                }
            }
        }
        Err(Error::UnknownElement(label.to_string()))
    }

    /// The object of a space site corresponding to a connected set.
    pub fn object_of_subset(&self, s: Subset) -> Option<usize> {
        match &self.base {
            SiteBase::Space(space) => space.connecteds().members().binary_search(&s).ok(),
            SiteBase::Poset(_) => None,
        }
    }

    /// The connected set behind an object of a space site.
    pub fn subset_of(&self, a: usize) -> Option<Subset> {
        self.space().map(|s| s.connecteds().members()[a])
    }

    pub fn leq(&self, b: usize, a: usize) -> bool {
        self.below[a].contains(b)
    }

    pub fn below(&self, a: usize) -> Subset {
        self.below[a]
    }

    pub fn ascending(&self) -> &[usize] {
        &self.ascending
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        let strict = self.below[a].without(a);
        strict
            .iter()
            .filter(|&c| strict.iter().all(|d| d == c || !self.below[d].contains(c)))
            .collect()
    }
}
