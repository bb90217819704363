use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::Limits;

use super::simplex::{GenId, Simplex};
use super::smap::SimplicialMap;
use super::sset::{FiniteSimplicialSet, SsetBuilder};

/// A binary product or fiber product, together with its two projections and
/// the table of component pairs per generator.
pub struct PairedSset {
    pub sset: FiniteSimplicialSet,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    /// For each generator of `sset`: the component simplices.
    pub components: Vec<Vec<(Simplex, Simplex)>>,
    index: BTreeMap<(Simplex, Simplex), GenId>,
}

impl PairedSset {
    /// Renormalizes a componentwise pair into a simplex of the product:
    /// strips the common degeneracies and looks the generator pair up.
    pub fn pair_to_simplex(&self, x: &Simplex, y: &Simplex) -> Option<Simplex> {
        let (word, x0, y0) = strip_common_degeneracies(x, y);
        let g = *self.index.get(&(x0, y0))?;
        Some(Simplex::of_gen(g).under_word(&word))
    }
}

/// Eilenberg–Zilber decomposition of a componentwise pair: the pair is
/// degenerate at `i` exactly when both components are, so the shared word is
/// peeled off greedily.
pub fn strip_common_degeneracies(x: &Simplex, y: &Simplex) -> (Vec<usize>, Simplex, Simplex) {
    let common: Vec<usize> = x
        .word()
        .iter()
        .copied()
        .filter(|i| y.word().contains(i))
        .collect();
    match common.first() {
        None => (Vec::new(), x.clone(), y.clone()),
        Some(&i) => {
            // d_i cancels inside both words; no face table needed
            let (wx, rx) = x.face_through_word(i).expect("index within word");
            let (wy, ry) = y.face_through_word(i).expect("index within word");
            debug_assert!(rx.is_none() && ry.is_none());
            let x1 = Simplex::new(x.gen(), wx).expect("normal word");
            let y1 = Simplex::new(y.gen(), wy).expect("normal word");
            let (rest, x0, y0) = strip_common_degeneracies(&x1, &y1);
            (super::simplex::insert_degeneracy(&rest, i), x0, y0)
        }
    }
}

fn build_paired(
    a: &FiniteSimplicialSet,
    b: &FiniteSimplicialSet,
    filter: &dyn Fn(&Simplex, &Simplex) -> bool,
    dim_bound: usize,
    limits: &Limits,
) -> Result<PairedSset> {
    let mut index: BTreeMap<(Simplex, Simplex), GenId> = BTreeMap::new();
    let mut components: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
    let mut left_imgs: Vec<Vec<Simplex>> = Vec::new();
    let mut right_imgs: Vec<Vec<Simplex>> = Vec::new();
    let mut used = 0usize;

    // collect generators level by level
    for level in 0..=dim_bound {
        components.push(Vec::new());
        left_imgs.push(Vec::new());
        right_imgs.push(Vec::new());
        let xs = a.simplices_at(level);
        let ys = b.simplices_at(level);
        for x in &xs {
            for y in &ys {
                // nondegenerate pairs have disjoint degeneracy words
                if x.word().iter().any(|i| y.word().contains(i)) {
                    continue;
                }
                if !filter(x, y) {
                    continue;
                }
                limits.charge(&mut used, 1)?;
                let g = GenId::new(level, components[level].len());
                index.insert((x.clone(), y.clone()), g);
                components[level].push((x.clone(), y.clone()));
                left_imgs[level].push(x.clone());
                right_imgs[level].push(y.clone());
            }
        }
    }

    // second pass: face tables
    let mut builder = SsetBuilder::new(dim_bound);
    for level in 0..=dim_bound {
        for (x, y) in components[level].iter() {
            let name = format!("({},{})", a.display_simplex(x), b.display_simplex(y));
            let faces = if level == 0 {
                Vec::new()
            } else {
                (0..=level)
                    .map(|i| {
                        let fx = a.face(x, i)?;
                        let fy = b.face(y, i)?;
                        let (word, x0, y0) = strip_common_degeneracies(&fx, &fy);
                        let g = *index.get(&(x0, y0)).expect("face pair is a generator");
                        Ok(Simplex::of_gen(g).under_word(&word))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            builder.add_generator(level, &name, faces)?;
        }
    }
    let sset = builder.build_unchecked();
    Ok(PairedSset {
        sset,
        proj_left: SimplicialMap::new(left_imgs),
        proj_right: SimplicialMap::new(right_imgs),
        components,
        index,
    })
}

/// The binary product: n-simplices are pairs of n-simplices; nondegenerate
/// generators are the pairs whose components share no degeneracy index.
pub fn product(a: &FiniteSimplicialSet, b: &FiniteSimplicialSet, limits: &Limits) -> Result<PairedSset> {
    let dim = match (a.dim_bound(), b.dim_bound()) {
        (Some(da), Some(db)) => da + db,
        _ => {
            return Ok(PairedSset {
                sset: FiniteSimplicialSet::empty(),
                proj_left: SimplicialMap::new(Vec::new()),
                proj_right: SimplicialMap::new(Vec::new()),
                components: Vec::new(),
                index: BTreeMap::new(),
            })
        }
    };
    build_paired(a, b, &|_, _| true, dim, limits)
}

/// The product truncated at dimension `dim`.
pub fn product_truncated(
    a: &FiniteSimplicialSet,
    b: &FiniteSimplicialSet,
    dim: usize,
    limits: &Limits,
) -> Result<PairedSset> {
    let natural = match (a.dim_bound(), b.dim_bound()) {
        (Some(da), Some(db)) => da + db,
        _ => {
            return Ok(PairedSset {
                sset: FiniteSimplicialSet::empty(),
                proj_left: SimplicialMap::new(Vec::new()),
                proj_right: SimplicialMap::new(Vec::new()),
                components: Vec::new(),
                index: BTreeMap::new(),
            })
        }
    };
    build_paired(a, b, &|_, _| true, natural.min(dim), limits)
}

/// The fiber product of `fa: A -> S` and `fb: B -> S`: pairs of simplices
/// with equal images.
pub fn fiber_product(
    a: &FiniteSimplicialSet,
    fa: &SimplicialMap,
    b: &FiniteSimplicialSet,
    fb: &SimplicialMap,
    limits: &Limits,
) -> Result<PairedSset> {
    let dim = match (a.dim_bound(), b.dim_bound()) {
        (Some(da), Some(db)) => da + db,
        _ => {
            return Ok(PairedSset {
                sset: FiniteSimplicialSet::empty(),
                proj_left: SimplicialMap::new(Vec::new()),
                proj_right: SimplicialMap::new(Vec::new()),
                components: Vec::new(),
                index: BTreeMap::new(),
            })
        }
    };
    build_paired(a, b, &|x, y| fa.apply(x) == fb.apply(y), dim, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::standard_simplex;

    /// Shuffle-pair oracle: nondegenerate n-simplices of a product of
    /// standard simplices correspond to pairs of vertex arrays that are
    /// jointly injective. Counts for the square were computed by hand from
    /// that description.
    #[test]
    fn square_counts() {
        let d1 = standard_simplex(1);
        let p = product(&d1, &d1, &Limits::default()).unwrap();
        assert_eq!(p.sset.gen_counts(), alloc::vec![4, 5, 2]);
        p.sset.validate().unwrap();
        p.proj_left.validate(&p.sset, &d1).unwrap();
        p.proj_right.validate(&p.sset, &d1).unwrap();
    }

    #[test]
    fn unit_law() {
        let d2 = standard_simplex(2);
        let d0 = standard_simplex(0);
        let p = product(&d2, &d0, &Limits::default()).unwrap();
        assert_eq!(p.sset.gen_counts(), alloc::vec![3, 3, 1]);
        assert!(p.proj_left.is_iso(&p.sset, &d2));
    }

    #[test]
    fn product_with_empty_is_empty() {
        let d2 = standard_simplex(2);
        let e = FiniteSimplicialSet::empty();
        let p = product(&d2, &e, &Limits::default()).unwrap();
        assert!(p.sset.is_empty());
    }

    #[test]
    fn projections_commute_with_faces() {
        let d2 = standard_simplex(2);
        let d1 = standard_simplex(1);
        let p = product(&d2, &d1, &Limits::default()).unwrap();
        p.sset.validate().unwrap();
        p.proj_left.validate(&p.sset, &d2).unwrap();
        p.proj_right.validate(&p.sset, &d1).unwrap();
    }

    #[test]
    fn resource_guard_fires() {
        let d2 = standard_simplex(2);
        let tight = Limits::new(3);
        assert!(matches!(
            product(&d2, &d2, &tight),
            Err(crate::Error::ResourceCeiling { .. })
        ));
    }
}
