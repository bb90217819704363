use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Reference to a nondegenerate generator of a presented simplicial set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub level: usize,
    pub index: usize,
}

impl GenId {
    pub fn new(level: usize, index: usize) -> Self {
        GenId { level, index }
    }
}

/// A simplex value in Eilenberg–Zilber normal form: a generator together
/// with a strictly decreasing degeneracy word, outermost operator first.
///
/// `s[2,0]x` denotes `s_2(s_0(x))`. The level of the simplex is the level
/// of its generator plus the length of the word, so the representation can
/// never violate the level bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    gen: GenId,
    degens: Vec<usize>,
}

impl Simplex {
    /// A nondegenerate simplex: the generator itself.
    pub fn of_gen(gen: GenId) -> Self {
        Simplex { gen, degens: Vec::new() }
    }

    /// Assembles a simplex from parts, checking the word is a valid
    /// strictly decreasing degeneracy word over the generator's level.
    pub fn new(gen: GenId, degens: Vec<usize>) -> Result<Self> {
        let mut level = gen.level;
        for (pos, &j) in degens.iter().enumerate().rev() {
            if j > level {
                return Err(Error::MalformedWord { op: "s", index: j, level });
            }
            if pos > 0 && degens[pos - 1] <= j {
                return Err(Error::ForeignSimplex(String::from(
                    "degeneracy word is not strictly decreasing",
                )));
            }
            level += 1;
        }
        Ok(Simplex { gen, degens })
    }

    pub fn gen(&self) -> GenId {
        self.gen
    }

    pub fn word(&self) -> &[usize] {
        &self.degens
    }

    pub fn level(&self) -> usize {
        self.gen.level + self.degens.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degens.is_empty()
    }

    /// Whether the simplex lies in the image of `s_i`.
    pub fn is_degenerate_at(&self, i: usize) -> bool {
        self.degens.contains(&i)
    }

    /// The degeneracy `s_i` applied to this simplex (a pure word operation).
    pub fn degenerate(&self, i: usize) -> Result<Simplex> {
        if i > self.level() {
            return Err(Error::MalformedWord { op: "s", index: i, level: self.level() });
        }
        Ok(Simplex {
            gen: self.gen,
            degens: insert_degeneracy(&self.degens, i),
        })
    }

    /// Applies the word `w` (outermost first) on top of this simplex,
    /// renormalizing as needed.
    pub fn under_word(&self, w: &[usize]) -> Simplex {
        let mut degens = self.degens.clone();
        for &j in w.iter().rev() {
            degens = insert_degeneracy(&degens, j);
        }
        Simplex { gen: self.gen, degens }
    }

    /// Pushes the face operator `d_i` through the degeneracy word.
    ///
    /// Returns the residual word together with the face index that still has
    /// to be applied to the generator, if the operator did not cancel.
    pub fn face_through_word(&self, i: usize) -> Result<(Vec<usize>, Option<usize>)> {
        if i > self.level() || self.level() == 0 {
            return Err(Error::MalformedWord { op: "d", index: i, level: self.level() });
        }
        let mut out = Vec::with_capacity(self.degens.len());
        let mut i = i;
        for (pos, &j) in self.degens.iter().enumerate() {
            if i < j {
                // d_i s_j = s_{j-1} d_i
                out.push(j - 1);
            } else if i == j || i == j + 1 {
                // d_i s_j = id
                out.extend_from_slice(&self.degens[pos + 1..]);
                return Ok((out, None));
            } else {
                // d_i s_j = s_j d_{i-1}
                out.push(j);
                i -= 1;
            }
        }
        Ok((out, Some(i)))
    }

    pub fn display(&self, gen_name: &str) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for &j in &self.degens {
            let _ = write!(s, "s{j}.");
        }
        s.push_str(gen_name);
        s
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &j in &self.degens {
            write!(f, "s{j}.")?;
        }
        write!(f, "g{}:{}", self.gen.level, self.gen.index)
    }
}

/// Normal form of `s_i` composed outermost onto the word `w`.
pub fn insert_degeneracy(w: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut rest = w;
    // s_i s_j = s_{j+1} s_i for i <= j
    while let Some(&j) = rest.first() {
        if i <= j {
            out.push(j + 1);
            rest = &rest[1..];
        } else {
            break;
        }
    }
    out.push(i);
    out.extend_from_slice(rest);
    out
}

/// A monotone map `[p] -> [n]`, stored by its value array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    pub target_top: usize,
    pub values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target_top: usize, values: Vec<usize>) -> Result<Self> {
        for (k, &v) in values.iter().enumerate() {
            if v > target_top {
                return Err(Error::MalformedWord { op: "u", index: v, level: target_top });
            }
            if k > 0 && values[k - 1] > v {
                return Err(Error::InvalidTable(String::from("vertex map is not monotone")));
            }
        }
        Ok(MonotoneMap { target_top, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { target_top: n, values: (0..=n).collect() }
    }

    pub fn source_top(&self) -> usize {
        self.values.len() - 1
    }
}

pub fn monotone_is_surjective(u: &MonotoneMap) -> bool {
    let mut seen = alloc::vec![false; u.target_top + 1];
    for &v in &u.values {
        seen[v] = true;
    }
    seen.iter().all(|&b| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn insert_degeneracy_normalizes() {
        // s_0 s_1 s_0 = s_2 s_1 s_0
        assert_eq!(insert_degeneracy(&[1, 0], 0), vec![2, 1, 0]);
        // already normal when larger than the head
        assert_eq!(insert_degeneracy(&[1, 0], 3), vec![3, 1, 0]);
        assert_eq!(insert_degeneracy(&[], 0), vec![0]);
        // s_0 s_0 = s_1 s_0
        assert_eq!(insert_degeneracy(&[0], 0), vec![1, 0]);
    }

    #[test]
    fn face_cancels_degeneracy() {
        let x = Simplex::new(GenId::new(0, 0), vec![0]).unwrap();
        // d_0 s_0 = id and d_1 s_0 = id
        assert_eq!(x.face_through_word(0).unwrap(), (vec![], None));
        assert_eq!(x.face_through_word(1).unwrap(), (vec![], None));
    }

    #[test]
    fn face_commutes_past_word() {
        // d_1 s_0 e = s_0 d_1 e? No: d_1 s_0 = id. Use d_2 on s_0(e) with e level 1:
        // d_2 s_0 = s_0 d_1.
        let x = Simplex::new(GenId::new(1, 0), vec![0]).unwrap();
        assert_eq!(x.face_through_word(2).unwrap(), (vec![0], Some(1)));
        // d_0 s_1 = s_0 d_0 at level 2
        let y = Simplex::new(GenId::new(1, 0), vec![1]).unwrap();
        assert_eq!(y.face_through_word(0).unwrap(), (vec![0], Some(0)));
    }

    #[test]
    fn word_validation() {
        assert!(Simplex::new(GenId::new(0, 0), vec![0, 0]).is_err());
        assert!(Simplex::new(GenId::new(0, 0), vec![1]).is_err());
        assert!(Simplex::new(GenId::new(0, 0), vec![1, 0]).is_ok());
    }
}
