use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::Limits;

use super::simplex::{GenId, Simplex};
use super::sset::FiniteSimplicialSet;
use super::subset::SubsetMask;
use super::SsetBuilder;

/// A materialized slice `X_{/σ}` up to a dimension bound.
///
/// A k-simplex of the slice is a `(k + m + 1)`-simplex `τ` of `X` (m the
/// level of `σ`, which may be degenerate) whose restriction to its last
/// `m + 1` vertices equals `σ`. Operators act on the front part, so the
/// slice-degeneracies of `τ` are exactly its degeneracy indices below the
/// slice level.
pub struct Slice {
    pub sset: FiniteSimplicialSet,
    /// Per slice generator, the underlying simplex of `X`.
    pub underlying: Vec<Vec<Simplex>>,
    pub base_level: usize,
    index: BTreeMap<Simplex, GenId>,
}

impl Slice {
    /// The underlying `X`-simplex of an arbitrary slice simplex.
    pub fn underlying_of(&self, x: &Simplex) -> Simplex {
        let g = x.gen();
        self.underlying[g.level][g.index].under_word(x.word())
    }

    /// The slice simplex corresponding to an `X`-simplex with the required
    /// restriction property, if it was materialized.
    pub fn to_slice_simplex(&self, tau: &Simplex) -> Option<Simplex> {
        let (word, gen_tau) = slice_normalize(tau, self.base_level);
        let g = self.index.get(&gen_tau)?;
        Some(Simplex::of_gen(*g).under_word(&word))
    }
}

/// Strips the slice-degeneracies (word indices below the slice level) off an
/// `X`-simplex, returning the slice word and the slice-nondegenerate part.
fn slice_normalize(tau: &Simplex, m: usize) -> (Vec<usize>, Simplex) {
    let k = tau.level() - m - 1;
    let hit = tau.word().iter().copied().find(|&i| i < k);
    match hit {
        None => (Vec::new(), tau.clone()),
        Some(i) => {
            let (w, r) = tau.face_through_word(i).expect("index within word");
            debug_assert!(r.is_none());
            let inner = Simplex::new(tau.gen(), w).expect("normal word");
            let (rest, gen_tau) = slice_normalize(&inner, m);
            (super::simplex::insert_degeneracy(&rest, i), gen_tau)
        }
    }
}

/// The slice of `X` over an arbitrary simplex `σ`, materialized up to
/// dimension `bound`.
pub fn slice_over(
    x: &FiniteSimplicialSet,
    sigma: &Simplex,
    bound: usize,
    limits: &Limits,
) -> Result<Slice> {
    slice_over_in(x, None, sigma, bound, limits)
}

/// The slice restricted to a full simplicial subset: only slice simplices
/// whose front part lies in the mask are kept. `None` keeps everything.
pub fn slice_over_in(
    x: &FiniteSimplicialSet,
    front_mask: Option<&SubsetMask>,
    sigma: &Simplex,
    bound: usize,
    limits: &Limits,
) -> Result<Slice> {
    x.check_simplex(sigma)?;
    let m = sigma.level();
    let mut builder = SsetBuilder::new(bound);
    let mut index: BTreeMap<Simplex, GenId> = BTreeMap::new();
    let mut underlying: Vec<Vec<Simplex>> = Vec::new();
    let mut used = 0usize;

    for k in 0..=bound {
        underlying.push(Vec::new());
        for tau in x.simplices_at(k + m + 1) {
            // slice-nondegenerate: no degeneracy index below the slice level
            if tau.word().iter().any(|&i| i < k) {
                continue;
            }
            // restriction to the last m+1 vertices must equal sigma
            let mut back = tau.clone();
            for _ in 0..=k {
                back = x.face(&back, 0)?;
            }
            if back != *sigma {
                continue;
            }
            if let Some(mask) = front_mask {
                let front: Vec<usize> = (0..=k).collect();
                if !mask.contains(&x.restrict(&tau, &front)?) {
                    continue;
                }
            }
            limits.charge(&mut used, 1)?;
            let name = format!("/{}", x.display_simplex(&tau));
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let f = x.face(&tau, i)?;
                        let (word, gen_tau) = slice_normalize(&f, m);
                        let g = *index.get(&gen_tau).expect("slice face generator exists");
                        Ok(Simplex::of_gen(g).under_word(&word))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let g = builder.add_generator(k, &name, faces)?;
            index.insert(tau.clone(), g);
            underlying[k].push(tau);
        }
    }

    Ok(Slice {
        sset: builder.build_unchecked(),
        underlying,
        base_level: m,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::standard_simplex;
    use crate::simplicial::subset_generated;

    /// Brute-force extension oracle: count the monotone maps
    /// `[k + m + 1] -> [n]` restricting to sigma's vertex array on the last
    /// m + 1 entries and compare with the slice's simplex counts.
    fn oracle_count(n: usize, sigma_vertices: &[usize], k: usize) -> usize {
        let m = sigma_vertices.len() - 1;
        let len = k + m + 2;
        let mut count = 0usize;
        let mut arr = alloc::vec![0usize; len];
        fn rec(
            arr: &mut Vec<usize>,
            pos: usize,
            n: usize,
            sigma: &[usize],
            k: usize,
            count: &mut usize,
        ) {
            if pos == arr.len() {
                *count += 1;
                return;
            }
            let lo = if pos == 0 { 0 } else { arr[pos - 1] };
            for v in lo..=n {
                if pos > k {
                    // forced to sigma
                    if v != sigma[pos - k - 1] {
                        continue;
                    }
                }
                arr[pos] = v;
                rec(arr, pos + 1, n, sigma, k, count);
            }
        }
        rec(&mut arr, 0, n, sigma_vertices, k, &mut count);
        count
    }

    #[test]
    fn slice_of_interval_over_endpoint() {
        let d1 = standard_simplex(1);
        let v1 = Simplex::of_gen(d1.lookup_gen(0, "1").unwrap());
        let s = slice_over(&d1, &v1, 2, &Limits::default()).unwrap();
        s.sset.validate().unwrap();
        // the oracle counts all simplices (degenerate included)
        for k in 0..=2usize {
            assert_eq!(
                s.sset.count_simplices_at(k) as usize,
                oracle_count(1, &[1], k),
                "level {k}"
            );
        }
        // two vertices: the edge and the degenerate witness at 1
        assert_eq!(s.sset.gen_count(0), 2);
    }

    #[test]
    fn slice_of_triangle_over_edge() {
        let d2 = standard_simplex(2);
        let e12 = Simplex::of_gen(d2.lookup_gen(1, "1.2").unwrap());
        let s = slice_over(&d2, &e12, 2, &Limits::default()).unwrap();
        s.sset.validate().unwrap();
        for k in 0..=2usize {
            assert_eq!(
                s.sset.count_simplices_at(k) as usize,
                oracle_count(2, &[1, 2], k),
                "level {k}"
            );
        }
    }

    #[test]
    fn slice_over_identity_of_point() {
        let d0 = standard_simplex(0);
        let v = Simplex::of_gen(GenId::new(0, 0));
        let s = slice_over(&d0, &v, 3, &Limits::default()).unwrap();
        // a single vertex; everything above is degenerate
        assert_eq!(s.sset.gen_counts(), alloc::vec![1, 0, 0, 0]);
    }

    #[test]
    fn restricted_slice_filters_front() {
        let d2 = standard_simplex(2);
        let e12 = Simplex::of_gen(d2.lookup_gen(1, "1.2").unwrap());
        let c0 = subset_generated(
            &d2,
            &[Simplex::of_gen(d2.lookup_gen(0, "0").unwrap())],
        )
        .unwrap();
        let s = slice_over_in(&d2, Some(&c0), &e12, 2, &Limits::default()).unwrap();
        // only the nondegenerate extension through vertex 0 remains
        assert_eq!(s.sset.gen_count(0), 1);
    }

    #[test]
    fn slice_simplex_round_trip() {
        let d2 = standard_simplex(2);
        let e12 = Simplex::of_gen(d2.lookup_gen(1, "1.2").unwrap());
        let s = slice_over(&d2, &e12, 2, &Limits::default()).unwrap();
        for k in 0..=2usize {
            for x in s.sset.simplices_at(k) {
                let tau = s.underlying_of(&x);
                let back = {
                    let mut b = tau.clone();
                    for _ in 0..=k {
                        b = d2.face(&b, 0).unwrap();
                    }
                    b
                };
                assert_eq!(back, e12);
                assert_eq!(s.to_slice_simplex(&tau), Some(x));
            }
        }
    }
}
