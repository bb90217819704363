use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::Limits;

use super::simplex::{GenId, Simplex};
use super::smap::SimplicialMap;
use super::sset::{FiniteSimplicialSet, SsetBuilder};

/// Which part of a join a generator came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinGen {
    Left(GenId),
    Right(GenId),
    /// A pair `(x, y)` with `level(x) + level(y) + 1` the join level.
    Pair(GenId, GenId),
}

/// The join `A ⋆ B`, with inclusion maps of both factors and the part table
/// for every generator.
pub struct JoinSset {
    pub sset: FiniteSimplicialSet,
    pub include_left: SimplicialMap,
    pub include_right: SimplicialMap,
    pub parts: Vec<Vec<JoinGen>>,
}

impl JoinSset {
    /// Index of a pair generator with the given nondegenerate components.
    fn lookup_pair(&self, x: GenId, y: GenId) -> GenId {
        let level = x.level + y.level + 1;
        let idx = self.parts[level]
            .iter()
            .position(|p| matches!(p, JoinGen::Pair(a, b) if *a == x && *b == y))
            .expect("pair generator exists");
        GenId::new(level, idx)
    }

    fn lookup_left(&self, x: GenId) -> GenId {
        let idx = self.parts[x.level]
            .iter()
            .position(|p| matches!(p, JoinGen::Left(a) if *a == x))
            .expect("left generator exists");
        GenId::new(x.level, idx)
    }

    fn lookup_right(&self, y: GenId) -> GenId {
        let idx = self.parts[y.level]
            .iter()
            .position(|p| matches!(p, JoinGen::Right(a) if *a == y))
            .expect("right generator exists");
        GenId::new(y.level, idx)
    }

    /// The join simplex with front part `x` (a simplex of `A`, or `None` for
    /// empty) and back part `y` (a simplex of `B`, or `None`). Components
    /// may be degenerate; the result is in normal form.
    pub fn pair_simplex(&self, x: Option<&Simplex>, y: Option<&Simplex>) -> Simplex {
        match (x, y) {
            (None, None) => panic!("the empty join simplex is not a simplex"),
            (Some(x), None) => Simplex::of_gen(self.lookup_left(x.gen())).under_word(x.word()),
            (None, Some(y)) => Simplex::of_gen(self.lookup_right(y.gen())).under_word(y.word()),
            (Some(x), Some(y)) => {
                // left-slot degeneracies keep their index; right-slot ones
                // are shifted past the front part, whose level is fixed
                // while they are applied
                let g = self.lookup_pair(x.gen(), y.gen());
                let shift = x.gen().level + 1;
                let mut z = Simplex::of_gen(g);
                for &v in y.word().iter().rev() {
                    z = z.degenerate(v + shift).expect("right-slot degeneracy in range");
                }
                for &u in x.word().iter().rev() {
                    z = z.degenerate(u).expect("left-slot degeneracy in range");
                }
                z
            }
        }
    }
}

/// The join of two finite simplicial sets. Either side may be empty, making
/// the empty simplicial set the unit.
pub fn join(a: &FiniteSimplicialSet, b: &FiniteSimplicialSet, limits: &Limits) -> Result<JoinSset> {
    let dim = match (a.dim_bound(), b.dim_bound()) {
        (Some(da), Some(db)) => da + db + 1,
        (Some(da), None) => da,
        (None, Some(db)) => db,
        (None, None) => 0,
    };
    let mut parts: Vec<Vec<JoinGen>> = alloc::vec![Vec::new(); dim + 1];
    let mut used = 0usize;
    for level in 0..=dim {
        for i in 0..a.gen_count(level) {
            limits.charge(&mut used, 1)?;
            parts[level].push(JoinGen::Left(GenId::new(level, i)));
        }
        for i in 0..b.gen_count(level) {
            limits.charge(&mut used, 1)?;
            parts[level].push(JoinGen::Right(GenId::new(level, i)));
        }
        if level >= 1 {
            for p in 0..level {
                let q = level - 1 - p;
                for i in 0..a.gen_count(p) {
                    for j in 0..b.gen_count(q) {
                        limits.charge(&mut used, 1)?;
                        parts[level].push(JoinGen::Pair(GenId::new(p, i), GenId::new(q, j)));
                    }
                }
            }
        }
    }

    let shell = JoinSset {
        sset: FiniteSimplicialSet::empty(),
        include_left: SimplicialMap::new(Vec::new()),
        include_right: SimplicialMap::new(Vec::new()),
        parts,
    };

    let mut builder = SsetBuilder::new(dim);
    for (level, gens) in shell.parts.iter().enumerate() {
        for part in gens {
            match part {
                JoinGen::Left(g) => {
                    let name = format!("L:{}", a.gen_name(*g));
                    let faces = if level == 0 {
                        Vec::new()
                    } else {
                        (0..=level)
                            .map(|i| {
                                let f = a.face(&Simplex::of_gen(*g), i)?;
                                Ok(shell.pair_simplex(Some(&f), None))
                            })
                            .collect::<Result<Vec<_>>>()?
                    };
                    builder.add_generator(level, &name, faces)?;
                }
                JoinGen::Right(g) => {
                    let name = format!("R:{}", b.gen_name(*g));
                    let faces = if level == 0 {
                        Vec::new()
                    } else {
                        (0..=level)
                            .map(|i| {
                                let f = b.face(&Simplex::of_gen(*g), i)?;
                                Ok(shell.pair_simplex(None, Some(&f)))
                            })
                            .collect::<Result<Vec<_>>>()?
                    };
                    builder.add_generator(level, &name, faces)?;
                }
                JoinGen::Pair(gx, gy) => {
                    let p = gx.level;
                    let name = format!("J:({},{})", a.gen_name(*gx), b.gen_name(*gy));
                    let x = Simplex::of_gen(*gx);
                    let y = Simplex::of_gen(*gy);
                    let faces = (0..=level)
                        .map(|i| {
                            if i <= p {
                                if p == 0 {
                                    // front part becomes empty
                                    Ok(shell.pair_simplex(None, Some(&y)))
                                } else {
                                    let f = a.face(&x, i)?;
                                    Ok(shell.pair_simplex(Some(&f), Some(&y)))
                                }
                            } else {
                                let q = level - 1 - p;
                                if q == 0 {
                                    Ok(shell.pair_simplex(Some(&x), None))
                                } else {
                                    let f = b.face(&y, i - p - 1)?;
                                    Ok(shell.pair_simplex(Some(&x), Some(&f)))
                                }
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    builder.add_generator(level, &name, faces)?;
                }
            }
        }
    }

    let sset = builder.build_unchecked();
    let mut left_imgs: Vec<Vec<Simplex>> = alloc::vec![Vec::new(); a.num_levels()];
    for level in 0..a.num_levels() {
        for i in 0..a.gen_count(level) {
            left_imgs[level].push(Simplex::of_gen(shell.lookup_left(GenId::new(level, i))));
        }
    }
    let mut right_imgs: Vec<Vec<Simplex>> = alloc::vec![Vec::new(); b.num_levels()];
    for level in 0..b.num_levels() {
        for i in 0..b.gen_count(level) {
            right_imgs[level].push(Simplex::of_gen(shell.lookup_right(GenId::new(level, i))));
        }
    }
    Ok(JoinSset {
        sset,
        include_left: SimplicialMap::new(left_imgs),
        include_right: SimplicialMap::new(right_imgs),
        parts: shell.parts,
    })
}

/// The right cone `X ⋆ Δ⁰`; the cone point is the unique `Right` vertex.
pub fn cone_right(x: &FiniteSimplicialSet, limits: &Limits) -> Result<JoinSset> {
    join(x, &super::sset::standard_simplex(0), limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::{standard_simplex, vertex_array};
    use crate::simplicial::subset::subset_generated;

    #[test]
    fn join_of_points_is_interval() {
        let d0 = standard_simplex(0);
        let j = join(&d0, &d0, &Limits::default()).unwrap();
        assert_eq!(j.sset.gen_counts(), alloc::vec![2, 1]);
        j.sset.validate().unwrap();
    }

    /// Levelwise join formula oracle: generator counts of `A ⋆ B` at level n
    /// are `|A_n| + |B_n| + Σ_{p+q=n-1} |A_p||B_q|` over nondegenerate
    /// generators.
    #[test]
    fn join_counts_match_formula() {
        let d1 = standard_simplex(1);
        let d2 = standard_simplex(2);
        let j = join(&d1, &d2, &Limits::default()).unwrap();
        j.sset.validate().unwrap();
        let expect: Vec<usize> = (0..=4)
            .map(|n| {
                let mut c = d1.gen_count(n) + d2.gen_count(n);
                for p in 0..n {
                    c += d1.gen_count(p) * d2.gen_count(n - 1 - p);
                }
                c
            })
            .collect();
        assert_eq!(j.sset.gen_counts(), expect);
        // dim(join) = p + q + 1
        assert_eq!(j.sset.dim_bound(), Some(4));
    }

    #[test]
    fn boundary_interval_cone() {
        // ∂Δ¹ ⋆ Δ⁰: counts computed with the levelwise formula:
        // vertices 2+1, edges 0+0+2·1, and nothing above.
        let d1 = standard_simplex(1);
        let boundary_mask = subset_generated(
            &d1,
            &[
                Simplex::of_gen(d1.lookup_gen(0, "0").unwrap()),
                Simplex::of_gen(d1.lookup_gen(0, "1").unwrap()),
            ],
        )
        .unwrap();
        // materialize ∂Δ¹ as its own sset: two points
        let two_points = {
            let mut b = SsetBuilder::new(0);
            b.add_generator(0, "0", Vec::new()).unwrap();
            b.add_generator(0, "1", Vec::new()).unwrap();
            b.build_unchecked()
        };
        assert_eq!(boundary_mask.count_at(0), 2);
        let j = join(&two_points, &standard_simplex(0), &Limits::default()).unwrap();
        assert_eq!(j.sset.gen_counts(), alloc::vec![3, 2]);
        j.sset.validate().unwrap();
    }

    #[test]
    fn join_with_empty_is_identity() {
        let d2 = standard_simplex(2);
        let e = FiniteSimplicialSet::empty();
        let j = join(&d2, &e, &Limits::default()).unwrap();
        assert!(j.include_left.is_iso(&d2, &j.sset));
        let j2 = join(&e, &d2, &Limits::default()).unwrap();
        assert!(j2.include_right.is_iso(&d2, &j2.sset));
    }

    /// Δ^p ⋆ Δ^q is Δ^{p+q+1}: check via vertex arrays of the cone.
    #[test]
    fn cone_of_simplex_is_simplex() {
        let d1 = standard_simplex(1);
        let c = cone_right(&d1, &Limits::default()).unwrap();
        assert_eq!(c.sset.gen_counts(), alloc::vec![3, 3, 1]);
        c.sset.validate().unwrap();
        let d2 = standard_simplex(2);
        // both are standard 2-simplices: same counts and valid tables; map
        // matching generators by vertex arrays
        let top_c = GenId::new(2, 0);
        let arr = vertex_array(&c.sset, &Simplex::of_gen(top_c)).unwrap();
        assert_eq!(arr, alloc::vec![0, 1, 2]);
        let _ = d2;
    }
}
