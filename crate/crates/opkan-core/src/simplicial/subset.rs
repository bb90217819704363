use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::simplex::{GenId, Simplex};
use super::sset::FiniteSimplicialSet;

/// Membership structure for a simplicial subset of a presented simplicial
/// set: one bit per generator, closed under faces. A simplex belongs to the
/// subset exactly when its generator does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetMask {
    bits: Vec<Vec<bool>>,
}

impl SubsetMask {
    pub fn empty(sset: &FiniteSimplicialSet) -> Self {
        SubsetMask {
            bits: (0..sset.num_levels()).map(|l| vec![false; sset.gen_count(l)]).collect(),
        }
    }

    pub fn full(sset: &FiniteSimplicialSet) -> Self {
        SubsetMask {
            bits: (0..sset.num_levels()).map(|l| vec![true; sset.gen_count(l)]).collect(),
        }
    }

    /// All generators of level at most `d`.
    pub fn skeleton(sset: &FiniteSimplicialSet, d: isize) -> Self {
        SubsetMask {
            bits: (0..sset.num_levels())
                .map(|l| vec![(l as isize) <= d; sset.gen_count(l)])
                .collect(),
        }
    }

    pub fn contains_gen(&self, g: GenId) -> bool {
        self.bits[g.level][g.index]
    }

    /// Membership of an arbitrary simplex (normalize, then test the bit).
    pub fn contains(&self, x: &Simplex) -> bool {
        self.contains_gen(x.gen())
    }

    pub fn insert_gen(&mut self, g: GenId) {
        self.bits[g.level][g.index] = true;
    }

    pub fn remove_gen(&mut self, g: GenId) {
        self.bits[g.level][g.index] = false;
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect())
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &SubsetMask) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            for (x, y) in a.iter_mut().zip(b) {
                *x = *x || *y;
            }
        }
    }

    pub fn intersect(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x && *y).collect())
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| !*x || *y))
    }

    pub fn gens(&self) -> impl Iterator<Item = GenId> + '_ {
        self.bits.iter().enumerate().flat_map(|(l, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(move |(i, _)| GenId::new(l, i))
        })
    }

    pub fn count_at(&self, level: usize) -> usize {
        self.bits.get(level).map(|r| r.iter().filter(|&&b| b).count()).unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        (0..self.bits.len()).map(|l| self.count_at(l)).sum()
    }

    /// Closes the mask under faces; returns how many bits were added.
    pub fn close_under_faces(&mut self, sset: &FiniteSimplicialSet) -> usize {
        let mut added = 0;
        // process top-down: faces live strictly below
        for l in (1..self.bits.len()).rev() {
            for i in 0..self.bits[l].len() {
                if !self.bits[l][i] {
                    continue;
                }
                let x = Simplex::of_gen(GenId::new(l, i));
                for k in 0..=l {
                    let f = sset.face(&x, k).expect("face of a valid generator");
                    let g = f.gen();
                    if !self.bits[g.level][g.index] {
                        self.bits[g.level][g.index] = true;
                        added += 1;
                    }
                }
            }
        }
        added
    }

    pub fn is_face_closed(&self, sset: &FiniteSimplicialSet) -> bool {
        let mut probe = self.clone();
        probe.close_under_faces(sset) == 0
    }

    /// Number of simplices (degenerate included) of the subset at a level.
    pub fn count_simplices_at(&self, level: usize) -> u64 {
        let mut total = 0u64;
        for (d, row) in self.bits.iter().enumerate() {
            if d > level {
                break;
            }
            let c = row.iter().filter(|&&b| b).count() as u64;
            total += c * binomial(level as u64, d as u64);
        }
        total
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    for t in 0..k {
        num = num * (n - t) / (t + 1);
    }
    num
}

/// The smallest simplicial subset of `sset` containing the seeds: strip
/// degeneracies, then close under iterated faces.
pub fn subset_generated(sset: &FiniteSimplicialSet, seeds: &[Simplex]) -> Result<SubsetMask> {
    let mut mask = SubsetMask::empty(sset);
    for s in seeds {
        sset.check_simplex(s)?;
        mask.insert_gen(s.gen());
    }
    mask.close_under_faces(sset);
    Ok(mask)
}

/// Decides whether the square of inclusions `A -> B`, `A -> C`, `B -> D`,
/// `C -> D` is cocartesian: `D = B ∪ C` and `A = B ∩ C` levelwise.
///
/// Masks that do not satisfy the inclusions are rejected with a distinct
/// error rather than reported as a non-pushout.
pub fn pushout_check(
    _sset: &FiniteSimplicialSet,
    a: &SubsetMask,
    b: &SubsetMask,
    c: &SubsetMask,
    d: &SubsetMask,
) -> Result<bool> {
    let check = |x: &SubsetMask, y: &SubsetMask, names: &str| -> Result<()> {
        if !x.is_subset_of(y) {
            return Err(Error::InclusionViolation(String::from(names)));
        }
        Ok(())
    };
    check(a, b, "A is not contained in B")?;
    check(a, c, "A is not contained in C")?;
    check(b, d, "B is not contained in D")?;
    check(c, d, "C is not contained in D")?;
    Ok(b.union(c) == *d && b.intersect(c) == *a)
}

/// Human-readable witness for a failed mask identity.
pub fn mask_difference_witness(
    sset: &FiniteSimplicialSet,
    lhs: &SubsetMask,
    rhs: &SubsetMask,
) -> Option<String> {
    for g in lhs.gens() {
        if !rhs.contains_gen(g) {
            return Some(format!("generator {} (level {})", sset.gen_name(g), g.level));
        }
    }
    for g in rhs.gens() {
        if !lhs.contains_gen(g) {
            return Some(format!("generator {} (level {})", sset.gen_name(g), g.level));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::standard_simplex;

    #[test]
    fn generated_subsets_of_the_triangle() {
        let d2 = standard_simplex(2);
        let top = Simplex::of_gen(GenId::new(2, 0));
        let full = subset_generated(&d2, &[top.clone()]).unwrap();
        assert_eq!(full, SubsetMask::full(&d2));

        // the inner horn: edges 0->1 and 1->2
        let e01 = Simplex::of_gen(GenId::new(1, d2.lookup_gen(1, "0.1").unwrap().index));
        let e12 = Simplex::of_gen(GenId::new(1, d2.lookup_gen(1, "1.2").unwrap().index));
        let horn = subset_generated(&d2, &[e01.clone(), e12.clone()]).unwrap();
        let e02 = Simplex::of_gen(GenId::new(1, d2.lookup_gen(1, "0.2").unwrap().index));
        assert!(!horn.contains(&e02));
        assert!(horn.contains(&e01));
        assert_eq!(horn.count_at(0), 3);
        assert!(horn.is_face_closed(&d2));

        // membership of a degenerate simplex follows the generator
        let deg = d2.degeneracy(&e01, 0).unwrap();
        assert!(horn.contains(&deg));
    }

    #[test]
    fn pushout_check_examples() {
        let d2 = standard_simplex(2);
        let e01 = Simplex::of_gen(d2.lookup_gen(1, "0.1").unwrap());
        let e12 = Simplex::of_gen(d2.lookup_gen(1, "1.2").unwrap());
        let b = subset_generated(&d2, &[e01.clone()]).unwrap();
        let c = subset_generated(&d2, &[e12.clone()]).unwrap();
        let horn = subset_generated(&d2, &[e01, e12]).unwrap();
        let a = b.intersect(&c);
        assert!(pushout_check(&d2, &a, &b, &c, &horn).unwrap());

        // degenerate pushout: A = B, C = D
        assert!(pushout_check(&d2, &b, &b, &horn, &horn).unwrap());

        // D strictly larger than B ∪ C
        let full = SubsetMask::full(&d2);
        assert!(!pushout_check(&d2, &a, &b, &c, &full).unwrap());

        // inclusion violation is a distinct error
        assert!(matches!(
            pushout_check(&d2, &full, &b, &c, &horn),
            Err(Error::InclusionViolation(_))
        ));
    }

    #[test]
    fn empty_seed_list_gives_empty_mask() {
        let d2 = standard_simplex(2);
        let m = subset_generated(&d2, &[]).unwrap();
        assert_eq!(m.count(), 0);
    }
}
