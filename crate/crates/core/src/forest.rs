//! Binary indexed forests and forest polynomials.
//!
//! Only internal vertices are stored. Each vertex carries `rho` (the leaf
//! reached by following left edges), its position in that left branch counted
//! from the bottom, and the leaf interval `[rho, end]` its subtree covers.
//! Vertex ids are assigned in `(rho, branch_ordinal)` order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::LehmerCode;
use crate::polynomial::{Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub rho: u32,
    /// 1 for the bottom vertex of the left branch.
    pub branch_ordinal: u32,
    pub left: Option<VertexId>,
    pub right: Option<VertexId>,
    pub parent: Option<(VertexId, Side)>,
    /// Last leaf under this vertex; the first is `rho`.
    pub end: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexedForest {
    vertices: Vec<Vertex>,
}

impl IndexedForest {
    pub fn empty() -> Self {
        IndexedForest::default()
    }

    /// The unique forest whose left branch at leaf `i` has `L(i)` vertices.
    ///
    /// Built from the right: the subtree of branch `i` covers leaves
    /// `i..=end(i)`, where each of its `L(i)` vertices takes the next tree to its
    /// right (a bare leaf, or the top of the branch starting there) as right
    /// child.
    pub fn from_code(code: &LehmerCode) -> Self {
        let len = code.len();
        let count = |i: usize| if i <= len { code.get(i) } else { 0 };
        // end[i] for i in 1..=len+1; past the support a branch is a bare leaf
        let mut end = vec![0u32; len + 2];
        let end_of = |end: &[u32], i: usize| if i <= len { end[i] } else { i as u32 };
        for i in (1..=len).rev() {
            let mut p = i as u32;
            for _ in 0..count(i) {
                p = end_of(&end, p as usize + 1);
            }
            end[i] = p;
        }
        let mut offset = vec![0usize; len + 2];
        for i in 1..=len {
            offset[i + 1] = offset[i] + count(i) as usize;
        }
        let id_of = |rho: usize, ordinal: u32| VertexId(offset[rho] + ordinal as usize - 1);

        let mut vertices = Vec::with_capacity(code.total());
        for i in 1..=len {
            let mut p = i;
            for t in 1..=count(i) {
                let q = p + 1;
                let right = (count(q) > 0).then(|| id_of(q, count(q)));
                p = end_of(&end, q) as usize;
                vertices.push(Vertex {
                    rho: i as u32,
                    branch_ordinal: t,
                    left: (t > 1).then(|| id_of(i, t - 1)),
                    right,
                    parent: None,
                    end: p as u32,
                });
            }
        }
        let mut forest = IndexedForest { vertices };
        forest.link_parents();
        forest
    }

    fn link_parents(&mut self) {
        for k in 0..self.vertices.len() {
            let (l, r) = (self.vertices[k].left, self.vertices[k].right);
            if let Some(VertexId(c)) = l {
                self.vertices[c].parent = Some((VertexId(k), Side::Left));
            }
            if let Some(VertexId(c)) = r {
                self.vertices[c].parent = Some((VertexId(k), Side::Right));
            }
        }
    }

    /// `L(i) = #{v : rho(v) = i}`.
    pub fn code(&self) -> LehmerCode {
        let mut counts = Vec::new();
        for v in &self.vertices {
            let i = v.rho as usize;
            if counts.len() < i {
                counts.resize(i, 0);
            }
            counts[i - 1] += 1;
        }
        LehmerCode::new(counts)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The vertex with the given `rho` and position in its left branch.
    pub fn vertex_in_branch(&self, rho: u32, ordinal: u32) -> Option<VertexId> {
        self.vertices
            .binary_search_by(|v| (v.rho, v.branch_ordinal).cmp(&(rho, ordinal)))
            .ok()
            .map(VertexId)
    }

    pub fn roots(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids().filter(|&id| self.vertex(id).parent.is_none())
    }

    /// `(parent, right child)` pairs.
    pub fn right_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.ids()
            .filter_map(|id| self.vertex(id).right.map(|c| (id, c)))
            .collect()
    }

    /// Whether `v` lies in the subtree rooted at `root` (including `root`).
    pub fn in_subtree(&self, v: VertexId, root: VertexId) -> bool {
        let mut cur = Some(v);
        while let Some(c) = cur {
            if c == root {
                return true;
            }
            cur = self.vertex(c).parent.map(|(p, _)| p);
        }
        false
    }

    /// Calls `visit` with every valid labeling, as values indexed by vertex id.
    ///
    /// Vertices are filled in `(rho, branch_ordinal descending)` order, which
    /// puts every parent before its children, with values ascending.
    pub fn for_each_labeling(&self, mut visit: impl FnMut(&[u32])) {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&k| (self.vertices[k].rho, std::cmp::Reverse(self.vertices[k].branch_ordinal)));
        let mut values = vec![0u32; self.vertices.len()];
        self.fill(&order, 0, &mut values, &mut visit);
    }

    fn fill(&self, order: &[usize], depth: usize, values: &mut [u32], visit: &mut impl FnMut(&[u32])) {
        let Some(&k) = order.get(depth) else {
            visit(values);
            return;
        };
        let v = &self.vertices[k];
        let low = match v.parent {
            None => 1,
            Some((VertexId(p), Side::Left)) => values[p],
            Some((VertexId(p), Side::Right)) => values[p] + 1,
        };
        for x in low..=v.rho {
            values[k] = x;
            self.fill(order, depth + 1, values, visit);
        }
    }

    pub fn valid_labelings(&self) -> Vec<ForestLabeling> {
        let mut out = Vec::new();
        self.for_each_labeling(|values| {
            out.push(ForestLabeling {
                values: values.to_vec(),
            })
        });
        out
    }

    /// Tree drawing, one vertex per line, after a leaf axis line.
    pub fn render(&self) -> String {
        let last_leaf = self.vertices.iter().map(|v| v.end).max().unwrap_or(0);
        let mut out = String::from("leaves:");
        for i in 1..=last_leaf {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
        if self.is_empty() {
            out.push_str("(no internal vertices)\n");
        }
        for root in self.roots() {
            self.render_vertex(root, "", None, &mut out);
        }
        out
    }

    fn render_vertex(&self, id: VertexId, prefix: &str, side: Option<(Side, bool)>, out: &mut String) {
        let v = self.vertex(id);
        let (branch, child_prefix) = match side {
            None => (String::new(), String::new()),
            Some((s, last)) => {
                let tag = if s == Side::Left { "L" } else { "R" };
                let joint = if last { "└── " } else { "├── " };
                let cont = if last { "    " } else { "│   " };
                (format!("{joint}{tag} "), format!("{prefix}{cont}"))
            }
        };
        let _ = writeln!(
            out,
            "{prefix}{branch}[{}..{}] rho={} #{}",
            v.rho, v.end, v.rho, v.branch_ordinal
        );
        let left_end = v.left.map_or(v.rho, |l| self.vertex(l).end);
        match v.left {
            Some(l) => self.render_vertex(l, &child_prefix, Some((Side::Left, false)), out),
            None => {
                let _ = writeln!(out, "{child_prefix}├── L leaf {}", v.rho);
            }
        }
        match v.right {
            Some(r) => self.render_vertex(r, &child_prefix, Some((Side::Right, true)), out),
            None => {
                let _ = writeln!(out, "{child_prefix}└── R leaf {}", left_end + 1);
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = ForestRepr {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRepr {
                    rho: v.rho,
                    left: v.left.map(|c| c.0),
                    right: v.right.map(|c| c.0),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("forest serialization is infallible")
    }

    /// Parses `{"vertices": [{"rho", "left", "right"}]}` and checks that the
    /// links describe a genuine binary indexed forest.
    pub fn from_json(value: &serde_json::Value) -> Result<IndexedForest> {
        let repr = ForestRepr::deserialize(value)?;
        IndexedForest::from_links(&repr.vertices)
    }

    fn from_links(raw: &[VertexRepr]) -> Result<IndexedForest> {
        let bad = |msg: String| Err(Error::InvalidForest(msg));
        let n = raw.len();
        let mut parent: Vec<Option<(usize, Side)>> = vec![None; n];
        for (k, v) in raw.iter().enumerate() {
            if v.rho == 0 {
                return bad(format!("vertex {k} has rho 0"));
            }
            if v.left.is_some() && v.left == v.right {
                return bad(format!("vertex {k} has the same left and right child"));
            }
            for (child, side) in [(v.left, Side::Left), (v.right, Side::Right)] {
                let Some(c) = child else { continue };
                if c >= n {
                    return bad(format!("vertex {k} links to missing vertex {c}"));
                }
                if parent[c].replace((k, side)).is_some() {
                    return bad(format!("vertex {c} has two parents"));
                }
                match side {
                    Side::Left if raw[c].rho != v.rho => {
                        return bad(format!("left child {c} of {k} has a different rho"))
                    }
                    Side::Right if raw[c].rho <= v.rho => {
                        return bad(format!("right child {c} of {k} does not have a larger rho"))
                    }
                    _ => {}
                }
            }
        }

        // spans and ordinals from the roots down; unreachable vertices sit on a cycle
        let mut end = vec![None::<u32>; n];
        let mut ordinal = vec![0u32; n];
        let roots: Vec<usize> = (0..n).filter(|&k| parent[k].is_none()).collect();
        fn span(
            raw: &[VertexRepr],
            k: usize,
            end: &mut [Option<u32>],
            ordinal: &mut [u32],
        ) -> std::result::Result<u32, String> {
            let v = &raw[k];
            let (left_end, left_ord) = match v.left {
                Some(l) => (span(raw, l, end, ordinal)?, ordinal[l]),
                None => (v.rho, 0),
            };
            let e = match v.right {
                Some(r) => {
                    if raw[r].rho != left_end + 1 {
                        return Err(format!(
                            "right child {r} of {k} starts at leaf {} but the left part ends at {left_end}",
                            raw[r].rho
                        ));
                    }
                    span(raw, r, end, ordinal)?
                }
                None => left_end + 1,
            };
            end[k] = Some(e);
            ordinal[k] = left_ord + 1;
            Ok(e)
        }
        let mut intervals = Vec::new();
        for &r in &roots {
            let e = span(raw, r, &mut end, &mut ordinal).map_err(Error::InvalidForest)?;
            intervals.push((raw[r].rho, e));
        }
        if end.iter().any(Option::is_none) {
            return bad("child links contain a cycle".into());
        }
        intervals.sort_unstable();
        if intervals.windows(2).any(|w| w[1].0 <= w[0].1) {
            return bad("trees overlap on the leaf axis".into());
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (raw[k].rho, ordinal[k]));
        let mut new_id = vec![0usize; n];
        for (pos, &k) in order.iter().enumerate() {
            new_id[k] = pos;
        }
        let vertices = order
            .iter()
            .map(|&k| Vertex {
                rho: raw[k].rho,
                branch_ordinal: ordinal[k],
                left: raw[k].left.map(|c| VertexId(new_id[c])),
                right: raw[k].right.map(|c| VertexId(new_id[c])),
                parent: parent[k].map(|(p, s)| (VertexId(new_id[p]), s)),
                end: end[k].unwrap_or_default(),
            })
            .collect();
        Ok(IndexedForest { vertices })
    }
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    rho: u32,
    left: Option<usize>,
    right: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct ForestRepr {
    vertices: Vec<VertexRepr>,
}

/// Values `f(v)` indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestLabeling {
    values: Vec<u32>,
}

impl ForestLabeling {
    pub fn new(values: Vec<u32>) -> Self {
        ForestLabeling { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, id: VertexId) -> u32 {
        self.values[id.0]
    }

    /// Labeling that puts every vertex at its `rho`.
    pub fn rho_labeling(forest: &IndexedForest) -> Self {
        ForestLabeling {
            values: forest.vertices().iter().map(|v| v.rho).collect(),
        }
    }

    pub fn validate(&self, forest: &IndexedForest) -> Result<()> {
        if self.values.len() != forest.len() {
            return Err(Error::InvalidLabeling(format!(
                "{} values for {} vertices",
                self.values.len(),
                forest.len()
            )));
        }
        for id in forest.ids() {
            let v = forest.vertex(id);
            let f = self.get(id);
            if f == 0 || f > v.rho {
                return Err(Error::InvalidLabeling(format!(
                    "vertex {} has label {f} outside 1..={}",
                    id.0, v.rho
                )));
            }
            if let Some(l) = v.left {
                if self.get(l) < f {
                    return Err(Error::InvalidLabeling(format!(
                        "left child {} below its parent {}",
                        l.0, id.0
                    )));
                }
            }
            if let Some(r) = v.right {
                if self.get(r) <= f {
                    return Err(Error::InvalidLabeling(format!(
                        "right child {} not above its parent {}",
                        r.0, id.0
                    )));
                }
            }
        }
        Ok(())
    }

    /// `prod_v x_{f(v)}`
    pub fn monomial(&self) -> Monomial {
        monomial_of(&self.values)
    }
}

fn monomial_of(values: &[u32]) -> Monomial {
    let mut exps = Vec::new();
    for &f in values {
        let i = f as usize;
        if exps.len() < i {
            exps.resize(i, 0);
        }
        exps[i - 1] += 1;
    }
    Monomial::new(exps)
}

/// Sum of `prod_v x_{f(v)}` over all valid labelings of `forest`.
pub fn forest_polynomial(forest: &IndexedForest) -> Polynomial {
    let mut counts: BTreeMap<Monomial, u64> = BTreeMap::new();
    forest.for_each_labeling(|values| *counts.entry(monomial_of(values)).or_default() += 1);
    Polynomial::from_terms(counts.into_iter().map(|(m, c)| (m, BigInt::from(c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn forest(code: &[u32]) -> IndexedForest {
        IndexedForest::from_code(&LehmerCode::new(code.to_vec()))
    }

    fn v(f: &IndexedForest, rho: u32, ord: u32) -> VertexId {
        f.vertex_in_branch(rho, ord).unwrap()
    }

    /// Every assignment in `[1, rho]^n`, filtered by the validity conditions.
    fn brute_labelings(f: &IndexedForest) -> Vec<Vec<u32>> {
        f.vertices()
            .iter()
            .map(|v| 1..=v.rho)
            .multi_cartesian_product()
            .filter(|vals| ForestLabeling::new(vals.clone()).validate(f).is_ok())
            .collect()
    }

    #[test]
    fn forest_of_4132() {
        let f = forest(&[3, 0, 1, 0]);
        assert_eq!(f.len(), 4);
        let (v1, v2, v3, v4) = (v(&f, 1, 1), v(&f, 1, 2), v(&f, 1, 3), v(&f, 3, 1));
        assert_eq!(f.vertex(v2).left, Some(v1));
        assert_eq!(f.vertex(v3).left, Some(v2));
        assert_eq!(f.vertex(v2).right, Some(v4));
        assert_eq!(f.vertex(v1).right, None);
        assert_eq!(f.vertex(v3).right, None);
        assert_eq!(f.roots().collect::<Vec<_>>(), vec![v3]);
        assert_eq!(f.vertex(v3).end, 5);
        assert_eq!(f.vertex(v4).end, 4);
    }

    #[test]
    fn forest_of_figure_one() {
        let f = forest(&[2, 1, 1, 0, 1, 0, 0, 1]);
        let mut rhos: Vec<u32> = f.vertices().iter().map(|v| v.rho).collect();
        rhos.sort_unstable();
        assert_eq!(rhos, vec![1, 1, 2, 3, 5, 8]);
        assert_eq!(f.code(), LehmerCode::new(vec![2, 1, 1, 0, 1, 0, 0, 1]));
        let spans: Vec<(u32, u32)> = f.vertices().iter().map(|v| (v.rho, v.end)).collect();
        assert_eq!(spans, vec![(1, 4), (1, 6), (2, 4), (3, 4), (5, 6), (8, 9)]);
        assert_eq!(f.roots().count(), 2);
    }

    #[test]
    fn empty_forest() {
        let f = IndexedForest::from_code(&LehmerCode::default());
        assert!(f.is_empty());
        assert_eq!(f.code(), LehmerCode::default());
        assert_eq!(forest_polynomial(&f), Polynomial::one());
        assert_eq!(f.valid_labelings(), vec![ForestLabeling::new(vec![])]);
    }

    #[test]
    fn labelings_examples() {
        let f = forest(&[2, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(f.valid_labelings().len(), 32);
        let single = forest(&[0, 0, 1]);
        let labels: Vec<Vec<u32>> = single.valid_labelings().iter().map(|l| l.values().to_vec()).collect();
        assert_eq!(labels, vec![vec![1], vec![2], vec![3]]);

        let f = forest(&[3, 0, 1, 0]);
        let labels: Vec<Vec<u32>> = f.valid_labelings().iter().map(|l| l.values().to_vec()).collect();
        assert_eq!(labels, vec![vec![1, 1, 1, 2], vec![1, 1, 1, 3]]);
        assert_eq!(brute_labelings(&f), labels);
    }

    #[test]
    fn polynomial_examples() {
        let f = forest(&[2, 1, 1, 0, 1, 0, 0, 1]);
        let run = |a: usize, b: usize| (a..=b).map(Polynomial::var).sum::<Polynomial>();
        let expected = Polynomial::monomial(Monomial::new(vec![2, 1, 1])) * run(2, 5) * run(1, 8);
        assert_eq!(forest_polynomial(&f), expected);
        assert_eq!(
            forest_polynomial(&forest(&[3, 0, 1, 0])).to_string(),
            "x1^3*x2 + x1^3*x3"
        );
    }

    #[test]
    fn labeling_validation_errors() {
        let f = forest(&[3, 0, 1, 0]);
        assert!(ForestLabeling::new(vec![1, 1, 1]).validate(&f).is_err());
        assert!(ForestLabeling::new(vec![1, 1, 1, 1]).validate(&f).is_err());
        assert!(ForestLabeling::new(vec![1, 1, 1, 4]).validate(&f).is_err());
        assert!(ForestLabeling::new(vec![0, 1, 1, 2]).validate(&f).is_err());
        assert!(ForestLabeling::rho_labeling(&f).validate(&f).is_ok());
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let f = forest(&[2, 1, 1, 0, 1, 0, 0, 1]);
        let json = f.to_json();
        assert_eq!(IndexedForest::from_json(&json).unwrap(), f);
        let small = forest(&[3, 0, 1, 0]).to_json();
        assert_eq!(
            small.to_string(),
            r#"{"vertices":[{"left":null,"rho":1,"right":null},{"left":0,"rho":1,"right":3},{"left":1,"rho":1,"right":null},{"left":null,"rho":3,"right":null}]}"#
        );
        let reject = |s: &str| IndexedForest::from_json(&serde_json::from_str(s).unwrap()).is_err();
        // right child starting at the wrong leaf
        assert!(reject(
            r#"{"vertices":[{"rho":1,"left":null,"right":1},{"rho":3,"left":null,"right":null}]}"#
        ));
        // left child with a different rho
        assert!(reject(
            r#"{"vertices":[{"rho":1,"left":1,"right":null},{"rho":2,"left":null,"right":null}]}"#
        ));
        // cycle
        assert!(reject(
            r#"{"vertices":[{"rho":1,"left":1,"right":null},{"rho":1,"left":0,"right":null}]}"#
        ));
        // overlapping trees
        assert!(reject(
            r#"{"vertices":[{"rho":1,"left":null,"right":null},{"rho":2,"left":null,"right":null}]}"#
        ));
        // two parents
        assert!(reject(
            r#"{"vertices":[{"rho":1,"left":null,"right":2},{"rho":1,"left":null,"right":2},{"rho":2,"left":null,"right":null}]}"#
        ));
        // vertices given out of order are canonicalized
        let shuffled = r#"{"vertices":[{"rho":3,"left":null,"right":null},{"rho":1,"left":2,"right":0},{"rho":1,"left":null,"right":null},{"rho":1,"left":1,"right":null}]}"#;
        assert_eq!(
            IndexedForest::from_json(&serde_json::from_str(shuffled).unwrap()).unwrap(),
            forest(&[3, 0, 1, 0])
        );
    }

    #[test]
    fn render_smoke() {
        let text = forest(&[3, 0, 1, 0]).render();
        assert!(text.starts_with("leaves: 1 2 3 4 5\n"));
        assert!(text.contains("R [3..4] rho=3"));
        assert_eq!(text.lines().count(), 1 + 4 + 5);
    }

    #[test]
    fn exhaustive_structure_and_leading_monomial() {
        for n in 1..=6 {
            for w in Permutation::all(n) {
                let code = w.lehmer_code();
                let f = IndexedForest::from_code(&code);
                assert_eq!(f.code(), code);
                assert_eq!(IndexedForest::from_json(&f.to_json()).unwrap(), f);
                for id in f.ids() {
                    let v = f.vertex(id);
                    if let Some(l) = v.left {
                        assert_eq!(f.vertex(l).rho, v.rho);
                        assert_eq!(f.vertex(l).branch_ordinal + 1, v.branch_ordinal);
                    }
                    if let Some(r) = v.right {
                        assert!(f.vertex(r).rho > v.rho);
                    }
                }
                let poly = forest_polynomial(&f);
                assert_eq!(poly.leading_monomial_revlex().unwrap().exponents(), code.entries());
                assert!(poly.terms().all(|(_, c)| c > &BigInt::from(0)));
                if n <= 4 {
                    assert_eq!(
                        f.valid_labelings()
                            .iter()
                            .map(|l| l.values().to_vec())
                            .collect::<Vec<_>>(),
                        brute_labelings(&f)
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn code_round_trip(entries in proptest::collection::vec(0u32..4, 0..8)) {
            prop_assume!(entries.iter().sum::<u32>() <= 10);
            let code = LehmerCode::new(entries);
            let f = IndexedForest::from_code(&code);
            prop_assert_eq!(f.code(), code);
            for l in f.valid_labelings() {
                prop_assert!(l.validate(&f).is_ok());
            }
        }
    }
}
