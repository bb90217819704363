use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{vec, collections::BTreeMap};

use crate::error::{Error, Result};

use super::simplex::{GenId, MonotoneMap, Simplex};

/// A nondegenerate generator: a name and one face assignment per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub faces: Vec<Simplex>,
}

/// A finite simplicial set presented by nondegenerate generators with face
/// assignments, truncated at an explicit dimension bound. Levels above the
/// bound consist of degenerate simplices only.
///
/// The empty simplicial set (no generators at any level) is a first-class
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    levels: Vec<Vec<Generator>>,
}

/// Incremental constructor for [`FiniteSimplicialSet`].
pub struct SsetBuilder {
    levels: Vec<Vec<Generator>>,
    index: BTreeMap<(usize, String), usize>,
}

impl SsetBuilder {
    pub fn new(dim_bound: usize) -> Self {
        SsetBuilder {
            levels: vec![Vec::new(); dim_bound + 1],
            index: BTreeMap::new(),
        }
    }

    pub fn add_generator(&mut self, level: usize, name: &str, faces: Vec<Simplex>) -> Result<GenId> {
        if level >= self.levels.len() {
            return Err(Error::InvalidTable(format!(
                "generator {name} at level {level} exceeds dimension bound {}",
                self.levels.len().max(1) - 1
            )));
        }
        if level == 0 && !faces.is_empty() {
            return Err(Error::InvalidTable(format!("vertex {name} cannot have faces")));
        }
        if level > 0 && faces.len() != level + 1 {
            return Err(Error::InvalidTable(format!(
                "generator {name} at level {level} needs {} faces, got {}",
                level + 1,
                faces.len()
            )));
        }
        for f in &faces {
            if f.level() + 1 != level {
                return Err(Error::InvalidTable(format!(
                    "face of {name} has level {}, expected {}",
                    f.level(),
                    level - 1
                )));
            }
        }
        let idx = self.levels[level].len();
        if self
            .index
            .insert((level, name.to_string()), idx)
            .is_some()
        {
            return Err(Error::InvalidTable(format!("duplicate generator name {name} at level {level}")));
        }
        self.levels[level].push(Generator { name: name.to_string(), faces });
        Ok(GenId::new(level, idx))
    }

    pub fn lookup(&self, level: usize, name: &str) -> Option<GenId> {
        self.index
            .get(&(level, name.to_string()))
            .map(|&i| GenId::new(level, i))
    }

    /// Finishes construction, checking reference validity and the simplicial
    /// identities `d_i d_j = d_{j-1} d_i` (i < j) on every generator.
    pub fn build(self) -> Result<FiniteSimplicialSet> {
        let sset = FiniteSimplicialSet { levels: self.levels };
        sset.validate()?;
        Ok(sset)
    }

    /// Finishes construction without validating; for internal constructors
    /// whose output is checked by tests instead of at every call.
    pub fn build_unchecked(self) -> FiniteSimplicialSet {
        FiniteSimplicialSet { levels: self.levels }
    }
}

impl FiniteSimplicialSet {
    /// The empty simplicial set.
    pub fn empty() -> Self {
        FiniteSimplicialSet { levels: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.levels.iter().all(|l| l.is_empty())
    }

    /// The dimension bound; `None` for the empty simplicial set.
    pub fn dim_bound(&self) -> Option<usize> {
        if self.levels.is_empty() {
            None
        } else {
            Some(self.levels.len() - 1)
        }
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn gens_at(&self, level: usize) -> &[Generator] {
        self.levels.get(level).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn gen_count(&self, level: usize) -> usize {
        self.gens_at(level).len()
    }

    pub fn total_gens(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    /// Generator counts per level, `0..=dim_bound`.
    pub fn gen_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.levels[g.level][g.index].name
    }

    pub fn display_simplex(&self, x: &Simplex) -> String {
        x.display(self.gen_name(x.gen()))
    }

    pub fn contains_gen(&self, g: GenId) -> bool {
        g.level < self.levels.len() && g.index < self.levels[g.level].len()
    }

    pub fn check_simplex(&self, x: &Simplex) -> Result<()> {
        if self.contains_gen(x.gen()) {
            Ok(())
        } else {
            Err(Error::ForeignSimplex(format!("{x}")))
        }
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(l, gens)| (0..gens.len()).map(move |i| GenId::new(l, i)))
    }

    pub fn lookup_gen(&self, level: usize, name: &str) -> Option<GenId> {
        self.gens_at(level)
            .iter()
            .position(|g| g.name == name)
            .map(|i| GenId::new(level, i))
    }

    /// The i-th face of a simplex, in normal form.
    pub fn face(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        self.check_simplex(x)?;
        let (word, residual) = x.face_through_word(i)?;
        match residual {
            None => Simplex::new(x.gen(), word),
            Some(i) => {
                let g = x.gen();
                if g.level == 0 {
                    return Err(Error::MalformedWord { op: "d", index: i, level: 0 });
                }
                let f = &self.levels[g.level][g.index].faces[i];
                Ok(f.under_word(&word))
            }
        }
    }

    /// The i-th degeneracy of a simplex, in normal form.
    pub fn degeneracy(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        self.check_simplex(x)?;
        x.degenerate(i)
    }

    /// Applies an arbitrary word of face (`(false, i)`) and degeneracy
    /// (`(true, i)`) operators, outermost first, and returns the normal form.
    pub fn normalize(&self, level: usize, gen: GenId, word: &[(bool, usize)]) -> Result<Simplex> {
        self.check_simplex(&Simplex::of_gen(gen))?;
        // The word is outermost-first, so apply from the end.
        let mut x = Simplex::of_gen(gen);
        let mut expect = gen.level;
        for &(is_degen, _) in word.iter().rev() {
            expect = if is_degen {
                expect + 1
            } else {
                expect.checked_sub(1).ok_or(Error::MalformedWord { op: "d", index: 0, level: 0 })?
            };
        }
        if expect != level {
            return Err(Error::MalformedWord { op: "word", index: word.len(), level });
        }
        for &(is_degen, i) in word.iter().rev() {
            x = if is_degen { self.degeneracy(&x, i)? } else { self.face(&x, i)? };
        }
        Ok(x)
    }

    /// Precomposition with a monotone vertex map: the contravariant action
    /// `x · u` for `u: [p] -> [level(x)]`.
    pub fn act(&self, x: &Simplex, u: &MonotoneMap) -> Result<Simplex> {
        if u.target_top != x.level() {
            return Err(Error::MalformedWord { op: "u", index: u.target_top, level: x.level() });
        }
        // Factor u as a surjection followed by an injection.
        let mut image = vec![false; x.level() + 1];
        for &v in &u.values {
            image[v] = true;
        }
        // Apply faces for missing vertices, in decreasing order.
        let mut y = x.clone();
        for v in (0..=x.level()).rev() {
            if !image[v] {
                y = self.face(&y, v)?;
            }
        }
        // Renumber u through the image and apply degeneracies at the
        // duplicated positions, innermost first.
        let mut dup = Vec::new();
        for t in 0..u.values.len() - 1 {
            if u.values[t] == u.values[t + 1] {
                dup.push(t);
            }
        }
        for &t in dup.iter() {
            // each s_t is applied outermost onto what has been built so far,
            // in increasing order of t
            y = y.degenerate(t)?;
        }
        Ok(y)
    }

    /// Restriction of `x` to an ordered subset of its vertices.
    pub fn restrict(&self, x: &Simplex, vertices: &[usize]) -> Result<Simplex> {
        let u = MonotoneMap::new(x.level(), vertices.to_vec())?;
        self.act(x, &u)
    }

    /// The i-th vertex of a simplex.
    pub fn vertex(&self, x: &Simplex, i: usize) -> Result<GenId> {
        Ok(self.restrict(x, &[i])?.gen())
    }

    /// All simplices at a level, degenerate ones included, in a fixed order.
    pub fn simplices_at(&self, level: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let top = match self.dim_bound() {
            None => return out,
            Some(d) => d,
        };
        for d in 0..=level.min(top) {
            let words = decreasing_words(level, d);
            for gi in 0..self.levels[d].len() {
                for w in &words {
                    out.push(
                        Simplex::new(GenId::new(d, gi), w.clone())
                            .expect("enumerated word is valid"),
                    );
                }
            }
        }
        out
    }

    /// Number of simplices at a level, computed without enumeration.
    pub fn count_simplices_at(&self, level: usize) -> u64 {
        let mut total = 0u64;
        for (d, gens) in self.levels.iter().enumerate() {
            if d > level {
                break;
            }
            total += gens.len() as u64 * surjection_count(level, d);
        }
        total
    }

    /// Checks reference validity and the face identities on every generator.
    pub fn validate(&self) -> Result<()> {
        for (l, gens) in self.levels.iter().enumerate() {
            for (gi, g) in gens.iter().enumerate() {
                for f in &g.faces {
                    self.check_simplex(f).map_err(|_| {
                        Error::InvalidTable(format!(
                            "face of generator {} at level {l} references a foreign simplex",
                            g.name
                        ))
                    })?;
                }
                if l >= 2 {
                    let x = Simplex::of_gen(GenId::new(l, gi));
                    for j in 0..=l {
                        for i in 0..j {
                            let a = self.face(&self.face(&x, j)?, i)?;
                            let b = self.face(&self.face(&x, i)?, j - 1)?;
                            if a != b {
                                return Err(Error::InvalidTable(format!(
                                    "simplicial identity d_{i} d_{j} failed on generator {}",
                                    g.name
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Strictly decreasing degeneracy words taking level `from` up to `level`:
/// the k-element decreasing sequences over `{0,..,level-1}`, k = level-from.
fn decreasing_words(level: usize, from: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max_exclusive: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for v in ((remaining - 1)..max_exclusive).rev() {
            cur.push(v);
            rec(k, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(level - from, level, &mut Vec::new(), &mut out);
    out
}

/// Number of surjective monotone maps `[level] -> [d]`.
fn surjection_count(level: usize, d: usize) -> u64 {
    // binomial(level, d): choose at which of the `level` steps the value increases
    let mut num = 1u64;
    let k = d.min(level - d);
    for t in 0..k {
        num = num * (level - t) as u64 / (t + 1) as u64;
    }
    num
}

/// The standard n-simplex: generators at level l are the strictly
/// increasing (l+1)-subsets of `{0,..,n}`, named by their digit strings.
pub fn standard_simplex(n: usize) -> FiniteSimplicialSet {
    let mut b = SsetBuilder::new(n);
    let mut prev: Vec<Vec<usize>> = Vec::new();
    for l in 0..=n {
        let subsets = increasing_subsets(n, l + 1);
        for s in &subsets {
            let name = subset_name_of(s);
            let faces = if l == 0 {
                Vec::new()
            } else {
                (0..=l)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        let idx = prev.iter().position(|p| *p == t).unwrap();
                        Simplex::of_gen(GenId::new(l - 1, idx))
                    })
                    .collect()
            };
            b.add_generator(l, &name, faces).expect("standard simplex construction");
        }
        prev = subsets;
    }
    b.build_unchecked()
}

pub(crate) fn increasing_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut cur, &mut out);
    out
}

pub fn subset_name_of(s: &[usize]) -> String {
    let mut name = String::new();
    for (k, v) in s.iter().enumerate() {
        if k > 0 {
            name.push('.');
        }
        name.push_str(&v.to_string());
    }
    name
}

/// The vertex array of a simplex of `standard_simplex(n)`: an independent
/// description used as an oracle in tests and by structure maps.
pub fn vertex_array(sset: &FiniteSimplicialSet, x: &Simplex) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(x.level() + 1);
    for i in 0..=x.level() {
        let v = sset.vertex(x, i)?;
        out.push(v.index);
    }
    Ok(out)
}

/// A structure map to the 1-simplex, recorded as a 0/1 label per vertex
/// generator. Edges must be monotone with respect to the labels.
#[derive(Debug, Clone)]
pub struct OverDelta1 {
    labels: Vec<u8>,
}

impl OverDelta1 {
    pub fn new(sset: &FiniteSimplicialSet, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != sset.gen_count(0) {
            return Err(Error::InvalidTable(String::from(
                "one label per vertex generator is required",
            )));
        }
        if labels.iter().any(|&b| b > 1) {
            return Err(Error::InvalidTable(String::from("labels must be 0 or 1")));
        }
        let this = OverDelta1 { labels };
        for (gi, _) in sset.gens_at(1).iter().enumerate() {
            let e = Simplex::of_gen(GenId::new(1, gi));
            let v0 = sset.vertex(&e, 0)?;
            let v1 = sset.vertex(&e, 1)?;
            if this.labels[v0.index] > this.labels[v1.index] {
                return Err(Error::InvalidTable(format!(
                    "edge {} is not monotone over the interval",
                    sset.gen_name(GenId::new(1, gi))
                )));
            }
        }
        Ok(this)
    }

    pub fn label(&self, vertex: GenId) -> u8 {
        self.labels[vertex.index]
    }

    /// Number of vertices of `x` lying over 0.
    pub fn tail_length(&self, sset: &FiniteSimplicialSet, x: &Simplex) -> Result<usize> {
        let mut t = 0;
        for i in 0..=x.level() {
            if self.label(sset.vertex(x, i)?) == 0 {
                t += 1;
            } else {
                break;
            }
        }
        Ok(t)
    }

    /// The part of `x` over vertex 1; `None` is the empty simplex.
    pub fn head(&self, sset: &FiniteSimplicialSet, x: &Simplex) -> Result<Option<Simplex>> {
        let t = self.tail_length(sset, x)?;
        if t == x.level() + 1 {
            return Ok(None);
        }
        let mut y = x.clone();
        for _ in 0..t {
            y = sset.face(&y, 0)?;
        }
        Ok(Some(y))
    }

    /// The part of `x` over vertex 0; `None` is the empty simplex.
    pub fn tail(&self, sset: &FiniteSimplicialSet, x: &Simplex) -> Result<Option<Simplex>> {
        let t = self.tail_length(sset, x)?;
        if t == 0 {
            return Ok(None);
        }
        let mut y = x.clone();
        for _ in 0..(x.level() + 1 - t) {
            let lvl = y.level();
            y = sset.face(&y, lvl)?;
        }
        Ok(Some(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        let d2 = standard_simplex(2);
        assert_eq!(d2.gen_counts(), vec![3, 3, 1]);
        d2.validate().unwrap();
        let d3 = standard_simplex(3);
        assert_eq!(d3.gen_counts(), vec![4, 6, 4, 1]);
        d3.validate().unwrap();
    }

    #[test]
    fn face_of_top_cell() {
        let d2 = standard_simplex(2);
        let top = Simplex::of_gen(GenId::new(2, 0));
        // face(id 2-simplex, 1) is the edge 0 -> 2
        let e = d2.face(&top, 1).unwrap();
        assert_eq!(d2.gen_name(e.gen()), "0.2");
        assert!(e.is_nondegenerate());
    }

    #[test]
    fn vertex_extraction() {
        let d2 = standard_simplex(2);
        let top = Simplex::of_gen(GenId::new(2, 0));
        for i in 0..=2 {
            let v = d2.vertex(&top, i).unwrap();
            assert_eq!(d2.gen_name(v), format!("{i}"));
        }
    }

    /// Oracle: simplices of the standard simplex are exactly monotone vertex
    /// arrays; operators act by deleting or duplicating entries. Every
    /// normal form must agree with this presentation-free model.
    #[test]
    fn normalize_agrees_with_vertex_array_oracle() {
        let n = 3;
        let dn = standard_simplex(n);
        // enumerate all simplices up to level 4 and check every face and
        // degeneracy against the oracle
        for level in 0..=4usize {
            for x in dn.simplices_at(level) {
                let arr = vertex_array(&dn, &x).unwrap();
                assert_eq!(arr.len(), level + 1);
                assert!(arr.windows(2).all(|w| w[0] <= w[1]));
                if level > 0 {
                    for i in 0..=level {
                        let f = dn.face(&x, i).unwrap();
                        let mut expect = arr.clone();
                        expect.remove(i);
                        assert_eq!(vertex_array(&dn, &f).unwrap(), expect, "face {i} of {x}");
                    }
                }
                for i in 0..=level {
                    let s = dn.degeneracy(&x, i).unwrap();
                    let mut expect = arr.clone();
                    expect.insert(i, arr[i]);
                    assert_eq!(vertex_array(&dn, &s).unwrap(), expect, "degeneracy {i} of {x}");
                }
            }
        }
    }

    /// EZ uniqueness: distinct normal forms at the same level have distinct
    /// vertex arrays, and every monotone array is realized exactly once.
    #[test]
    fn ez_normal_forms_are_unique() {
        let n = 2;
        let dn = standard_simplex(n);
        for level in 0..=5usize {
            let xs = dn.simplices_at(level);
            let mut arrays: Vec<Vec<usize>> = xs.iter().map(|x| vertex_array(&dn, x).unwrap()).collect();
            arrays.sort();
            let before = arrays.len();
            arrays.dedup();
            assert_eq!(arrays.len(), before, "collision at level {level}");
            // all monotone arrays realized
            let total: usize = arrays.len();
            let expect = count_monotone(level + 1, n + 1);
            assert_eq!(total, expect);
        }
    }

    fn count_monotone(len: usize, vals: usize) -> usize {
        // C(len + vals - 1, len)
        let mut num = 1usize;
        for t in 0..len {
            num = num * (vals + t) / (t + 1);
        }
        num
    }

    #[test]
    fn normalize_word_examples() {
        let d1 = standard_simplex(1);
        let v = d1.lookup_gen(0, "0").unwrap();
        // d_0(s_0 x) = x for a vertex x
        let x = d1.normalize(0, v, &[(false, 0), (true, 0)]).unwrap();
        assert_eq!(x, Simplex::of_gen(v));
        // s_1 s_0 x has word [1,0]
        let y = d1.normalize(2, v, &[(true, 1), (true, 0)]).unwrap();
        assert_eq!(y.word(), &[1, 0]);
        // for the edge e: d_1(s_0 e) cancels, while d_2(s_0 e) = s_0 (d_1 e);
        // both values confirmed by the vertex-array oracle above
        let e = d1.lookup_gen(1, "0.1").unwrap();
        let z = d1.normalize(1, e, &[(false, 1), (true, 0)]).unwrap();
        assert_eq!(z, Simplex::of_gen(e));
        let z2 = d1.normalize(1, e, &[(false, 2), (true, 0)]).unwrap();
        assert_eq!(z2.word(), &[0]);
        assert_eq!(d1.gen_name(z2.gen()), "0");
        // malformed word: face index out of range
        assert!(d1.normalize(0, v, &[(false, 5), (true, 0)]).is_err());
    }

    #[test]
    fn count_matches_enumeration() {
        let d2 = standard_simplex(2);
        for level in 0..=5 {
            assert_eq!(
                d2.count_simplices_at(level),
                d2.simplices_at(level).len() as u64
            );
        }
    }

    #[test]
    fn head_tail_partition() {
        let d2 = standard_simplex(2);
        // 0 -> 0, 1 and 2 -> 1
        let over = OverDelta1::new(&d2, vec![0, 1, 1]).unwrap();
        let top = Simplex::of_gen(GenId::new(2, 0));
        let head = over.head(&d2, &top).unwrap().unwrap();
        assert_eq!(d2.gen_name(head.gen()), "1.2");
        let tail = over.tail(&d2, &top).unwrap().unwrap();
        assert_eq!(d2.gen_name(tail.gen()), "0");
        // vertex counts add up to level + 1
        assert_eq!(head.level() + tail.level() + 2, top.level() + 1);
        // entirely over 0
        let over0 = OverDelta1::new(&d2, vec![0, 0, 0]).unwrap();
        assert!(over0.head(&d2, &top).unwrap().is_none());
        // head idempotence
        let h2 = over.head(&d2, &head).unwrap().unwrap();
        assert_eq!(h2, head);
        // non-monotone labeling rejected
        assert!(OverDelta1::new(&d2, vec![1, 0, 0]).is_err());
    }
}
