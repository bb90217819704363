use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::simplex::{GenId, Simplex};
use super::sset::FiniteSimplicialSet;
use super::subset::{subset_generated, SubsetMask};

/// A map of presented simplicial sets, stored by generator images.
///
/// The image of `s_w(g)` is `s_w(image(g))` renormalized, so compatibility
/// with degeneracies is automatic; compatibility with faces is a checked
/// invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(images: Vec<Vec<Simplex>>) -> Self {
        SimplicialMap { images }
    }

    pub fn identity(sset: &FiniteSimplicialSet) -> Self {
        SimplicialMap {
            images: (0..sset.num_levels())
                .map(|l| {
                    (0..sset.gen_count(l))
                        .map(|i| Simplex::of_gen(GenId::new(l, i)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn image_of_gen(&self, g: GenId) -> &Simplex {
        &self.images[g.level][g.index]
    }

    pub fn num_rows(&self) -> usize {
        self.images.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<Simplex>> {
        self.images.iter()
    }

    pub fn apply(&self, x: &Simplex) -> Simplex {
        self.image_of_gen(x.gen()).under_word(x.word())
    }

    /// Checks that generator images live in the target at the right level
    /// and that the map commutes with every face operator.
    pub fn validate(&self, src: &FiniteSimplicialSet, tgt: &FiniteSimplicialSet) -> Result<()> {
        if self.images.len() != src.num_levels() {
            return Err(Error::InvalidTable(format!(
                "map has {} levels of images, source has {}",
                self.images.len(),
                src.num_levels()
            )));
        }
        for (l, row) in self.images.iter().enumerate() {
            if row.len() != src.gen_count(l) {
                return Err(Error::InvalidTable(format!(
                    "level {l}: {} images for {} generators",
                    row.len(),
                    src.gen_count(l)
                )));
            }
            for (i, img) in row.iter().enumerate() {
                tgt.check_simplex(img)?;
                if img.level() != l {
                    return Err(Error::InvalidTable(format!(
                        "image of generator {} has level {}, expected {l}",
                        src.gen_name(GenId::new(l, i)),
                        img.level()
                    )));
                }
            }
        }
        for l in 1..src.num_levels() {
            for i in 0..src.gen_count(l) {
                let g = GenId::new(l, i);
                let x = Simplex::of_gen(g);
                for k in 0..=l {
                    let lhs = self.apply(&src.face(&x, k)?);
                    let rhs = tgt.face(&self.apply(&x), k)?;
                    if lhs != rhs {
                        return Err(Error::InvalidTable(format!(
                            "map does not commute with d_{k} on generator {}",
                            src.gen_name(g)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            images: self
                .images
                .iter()
                .map(|row| row.iter().map(|img| other.apply(img)).collect())
                .collect(),
        }
    }

    /// Whether the map is an isomorphism: a levelwise bijection on
    /// nondegenerate generators.
    pub fn is_iso(&self, src: &FiniteSimplicialSet, tgt: &FiniteSimplicialSet) -> bool {
        let levels = src.num_levels().max(tgt.num_levels());
        for l in 0..levels {
            if src.gen_count(l) != tgt.gen_count(l) {
                return false;
            }
            let mut seen = BTreeSet::new();
            for i in 0..src.gen_count(l) {
                let img = self.image_of_gen(GenId::new(l, i));
                if !img.is_nondegenerate() || !seen.insert(img.gen()) {
                    return false;
                }
            }
        }
        true
    }

    /// The image subset: the simplicial subset of the target generated by
    /// the images of all generators.
    pub fn image_mask(&self, tgt: &FiniteSimplicialSet) -> Result<SubsetMask> {
        let seeds: Vec<Simplex> = self.images.iter().flatten().cloned().collect();
        subset_generated(tgt, &seeds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::standard_simplex;

    #[test]
    fn identity_validates_and_is_iso() {
        let d2 = standard_simplex(2);
        let id = SimplicialMap::identity(&d2);
        id.validate(&d2, &d2).unwrap();
        assert!(id.is_iso(&d2, &d2));
    }

    #[test]
    fn collapse_map_validates() {
        // Delta^1 -> Delta^0: both vertices to the point, edge to s_0(pt)
        let d1 = standard_simplex(1);
        let d0 = standard_simplex(0);
        let pt = GenId::new(0, 0);
        let collapse = SimplicialMap::new(alloc::vec![
            alloc::vec![Simplex::of_gen(pt), Simplex::of_gen(pt)],
            alloc::vec![Simplex::of_gen(pt).degenerate(0).unwrap()],
        ]);
        collapse.validate(&d1, &d0).unwrap();
        assert!(!collapse.is_iso(&d1, &d0));
        // image is all of Delta^0
        assert_eq!(collapse.image_mask(&d0).unwrap(), SubsetMask::full(&d0));
    }

    #[test]
    fn invalid_map_rejected() {
        // send the edge of Delta^1 to a degenerate edge over the wrong vertex
        let d1 = standard_simplex(1);
        let v0 = d1.lookup_gen(0, "0").unwrap();
        let v1 = d1.lookup_gen(0, "1").unwrap();
        let bad = SimplicialMap::new(alloc::vec![
            alloc::vec![Simplex::of_gen(v0), Simplex::of_gen(v1)],
            alloc::vec![Simplex::of_gen(v0).degenerate(0).unwrap()],
        ]);
        assert!(bad.validate(&d1, &d1).is_err());
    }
}
