//! Lazy exploration of the CAT(0) square complex acted on by a Higman-like
//! group.
//!
//! Squares of the complex biject with group elements (`h <-> h*C0` for the
//! fundamental square `C0`), which makes deduplication exact: two squares are
//! equal iff the quotient of their representative words is trivial. Edges and
//! vertices are cosets of the cyclic and Baumslag-Solitar subgroups, carried
//! by a representative square:
//!
//! - the type-`i` edge of `h*C0` has stabilizer `h <a_i> h^-1`;
//! - the `(i,i+1)` corner of `h*C0` has stabilizer `h <a_i,a_{i+1}> h^-1`.
//!
//! Links of vertices are infinite; the truncation parameter `N` bounds the
//! exponent explored per dual step and keeps every output finite. Balls use
//! the gallery metric (squares adjacent iff they share an edge) and are built
//! by deterministic breadth-first closure with oracle dedup behind
//! abelianization/block-shape prefilters.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

use crate::bs::BSElem;
use crate::words::{ElemKey, Gen, HElem, HWord, HigmanGroup};
use crate::Error;

/// A square `word * C0` of the complex.
#[derive(Clone, Debug)]
pub struct SquareId {
    pub word: HWord,
}

/// The `(corner, corner+1)` corner vertex of `word * C0`.
#[derive(Clone, Debug)]
pub struct VertexId {
    pub word: HWord,
    pub corner: Gen,
}

/// The type-`etype` edge of `word * C0`.
#[derive(Clone, Debug)]
pub struct EdgeId {
    pub word: HWord,
    pub etype: Gen,
}

/// Label of a dual edge: `C' = C * a_gen^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdgeLabel {
    pub gen: Gen,
    pub exp: BigInt,
}

/// Resource caps for ball construction.
#[derive(Clone, Copy, Debug)]
pub struct ResourceCaps {
    pub max_squares: usize,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        ResourceCaps { max_squares: 50_000 }
    }
}

/// Exploration context: the group together with resource caps.
#[derive(Clone, Debug)]
pub struct Explorer {
    pub group: HigmanGroup,
    pub caps: ResourceCaps,
}

impl Explorer {
    pub fn new(group: HigmanGroup) -> Self {
        Explorer { group, caps: ResourceCaps::default() }
    }

    pub fn with_caps(group: HigmanGroup, caps: ResourceCaps) -> Self {
        Explorer { group, caps }
    }

    pub fn square(&self, word: HWord) -> SquareId {
        SquareId { word }
    }

    pub fn fundamental_square(&self) -> SquareId {
        SquareId { word: HWord::empty() }
    }

    pub fn squares_equal(&self, a: &SquareId, b: &SquareId) -> bool {
        self.group.equal(&a.word, &b.word)
    }

    pub fn vertices_equal(&self, a: &VertexId, b: &VertexId) -> bool {
        a.corner == b.corner
            && self
                .group
                .vertex_membership(&a.word.inverse().concat(&b.word), a.corner)
    }

    pub fn edges_equal(&self, a: &EdgeId, b: &EdgeId) -> bool {
        a.etype == b.etype
            && self
                .group
                .edge_membership(&a.word.inverse().concat(&b.word), a.etype)
                .is_some()
    }

    /// The squares sharing the type-`i` edge of `c`, truncated to exponents
    /// `0 < |n| <= n_max`, with their dual labels. Never contains `c` itself.
    pub fn neighbors(&self, c: &SquareId, i: Gen, n_max: u32) -> Vec<(SquareId, DualEdgeLabel)> {
        let mut out = Vec::new();
        for n in truncated_exponents(n_max) {
            let word = c.word.concat(&HWord::gen_pow(i, n));
            out.push((SquareId { word }, DualEdgeLabel { gen: i, exp: BigInt::from(n) }));
        }
        out
    }

    /// Each edge points at the unique endpoint whose stabilizer contains the
    /// edge group undistortedly: the `(i,i+1)` corner of the same square,
    /// where `a_i` is the stable letter.
    pub fn edge_orientation(&self, e: &EdgeId) -> VertexId {
        VertexId { word: e.word.clone(), corner: e.etype }
    }

    /// The other endpoint, where the edge group is the distorted `<b>` side.
    pub fn edge_tail(&self, e: &EdgeId) -> VertexId {
        VertexId { word: e.word.clone(), corner: e.etype.shift(-1) }
    }

    /// Are two vertices joined by an edge of the complex? Decided
    /// algebraically: corners must be adjacent types and the quotient must
    /// lie in the product of the two vertex groups.
    pub fn vertices_adjacent(&self, a: &VertexId, b: &VertexId) -> bool {
        let z = a.word.inverse().concat(&b.word);
        let (i, j) = (a.corner, b.corner);
        if j == i.shift(1) || j == i.shift(-1) {
            self.product_membership(&z, i, j)
        } else {
            false
        }
    }

    /// Membership in the product set `<a_i,a_{i+1}> * <a_j,a_{j+1}>` for
    /// adjacent corners `j = i ± 1`, via the triangle amalgam: the reduced
    /// form must have at most two syllables in the right order.
    fn product_membership(&self, z: &HWord, i: Gen, j: Gen) -> bool {
        use crate::words::Factor;
        let lo_first = j == i.shift(1);
        let base = if lo_first { i } else { j };
        let Some(t) = self.group.triangle_membership(z, base) else {
            return false;
        };
        match t.syllables() {
            [] | [_] => true,
            [s1, s2] => {
                if lo_first {
                    s1.factor == Factor::Lo && s2.factor == Factor::Hi
                } else {
                    s1.factor == Factor::Hi && s2.factor == Factor::Lo
                }
            }
            _ => false,
        }
    }
}

fn truncated_exponents(n_max: u32) -> impl Iterator<Item = i64> {
    let n = n_max as i64;
    (-n..=n).filter(|&x| x != 0)
}

/// One square of a ball: representative word, cached reduced form, dedup key
/// and BFS generation.
#[derive(Clone, Debug)]
pub struct BallSquare {
    pub word: HWord,
    pub elem: HElem,
    pub key: ElemKey,
    pub step: u32,
}

/// Directed dual adjacency `squares[from] * a_gen^exp = squares[to]`; every
/// adjacency appears in both directions with mirrored labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    pub gen: Gen,
    pub exp: i64,
}

#[derive(Clone, Debug)]
pub struct BallVertex {
    /// First square found containing this vertex as its `(corner,corner+1)` corner.
    pub square: usize,
    pub corner: Gen,
    /// All ball squares containing the vertex.
    pub squares: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BallEdge {
    /// First square found having this as its type-`etype` edge.
    pub square: usize,
    pub etype: Gen,
    /// Orientation endpoint (corner `etype` of `square`).
    pub head: usize,
    /// The distorted endpoint (corner `etype - 1` of `square`).
    pub tail: usize,
    /// All ball squares containing the edge.
    pub squares: Vec<usize>,
}

/// Finite truncated ball of the complex in the gallery metric.
#[derive(Clone, Debug)]
pub struct Ball {
    pub params: [u32; 4],
    pub radius: u32,
    pub truncation: u32,
    pub squares: Vec<BallSquare>,
    pub dual_edges: Vec<DualEdge>,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<BallEdge>,
}

impl Ball {
    pub fn square_word(&self, idx: usize) -> &HWord {
        &self.squares[idx].word
    }

    pub fn vertex_id(&self, idx: usize) -> VertexId {
        let v = &self.vertices[idx];
        VertexId { word: self.squares[v.square].word.clone(), corner: v.corner }
    }

    pub fn edge_id(&self, idx: usize) -> EdgeId {
        let e = &self.edges[idx];
        EdgeId { word: self.squares[e.square].word.clone(), etype: e.etype }
    }

    /// Edges incident to a vertex index.
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].head == v || self.edges[e].tail == v)
            .collect()
    }

    /// Dual adjacency lookup `(from, gen) -> [(to, exp)]` in listing order.
    pub fn dual_adjacency(&self) -> HashMap<(usize, Gen), Vec<(usize, i64)>> {
        let mut map: HashMap<(usize, Gen), Vec<(usize, i64)>> = HashMap::new();
        for de in &self.dual_edges {
            map.entry((de.from, de.gen)).or_default().push((de.to, de.exp));
        }
        map
    }

    /// Combinatorial distance between vertex indices in the explored
    /// 1-skeleton (an upper bound for the distance in the full complex).
    pub fn vertex_distance(&self, a: usize, b: usize) -> Option<u32> {
        if a == b {
            return Some(0);
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            incident[e.head].push(e.tail);
            incident[e.tail].push(e.head);
        }
        let mut dist = vec![u32::MAX; self.vertices.len()];
        dist[a] = 0;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &w in &incident[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    if w == b {
                        return Some(dist[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

impl Explorer {
    /// Breadth-first closure of `{C0}` under truncated neighbors,
    /// deduplicated by the equality oracle behind prefilters. Deterministic:
    /// squares are expanded in index order, candidates in `(type, exponent)`
    /// order with exponents ascending.
    pub fn build_ball(&self, radius: u32, truncation: u32) -> crate::Result<Ball> {
        if truncation < 1 {
            return Err(Error::InvalidParameter("truncation must be >= 1".into()));
        }
        let group = self.group;
        let mut squares: Vec<BallSquare> = Vec::new();
        let mut buckets: HashMap<ElemKey, Vec<usize>> = HashMap::new();
        let mut dual_edges: Vec<DualEdge> = Vec::new();

        fn add_square(
            group: &HigmanGroup,
            squares: &mut Vec<BallSquare>,
            buckets: &mut HashMap<ElemKey, Vec<usize>>,
            word: HWord,
            step: u32,
        ) -> usize {
            let (key, elem) = group.key_of(&word);
            squares.push(BallSquare { word, elem, key: key.clone(), step });
            let idx = squares.len() - 1;
            buckets.entry(key).or_default().push(idx);
            idx
        }

        fn find(
            group: &HigmanGroup,
            squares: &[BallSquare],
            buckets: &HashMap<ElemKey, Vec<usize>>,
            word: &HWord,
            key: &ElemKey,
        ) -> Option<usize> {
            buckets.get(key).and_then(|cands| {
                cands
                    .iter()
                    .copied()
                    .find(|&i| group.equal(&squares[i].word, word))
            })
        }

        add_square(&group, &mut squares, &mut buckets, HWord::empty(), 0);
        let mut frontier_start = 0usize;
        for step in 1..=radius {
            let frontier_end = squares.len();
            for from in frontier_start..frontier_end {
                let from_word = squares[from].word.clone();
                for i in Gen::all() {
                    for n in truncated_exponents(truncation) {
                        let word = from_word.concat(&HWord::gen_pow(i, n));
                        let (key, _) = group.key_of(&word);
                        let to = match find(&group, &squares, &buckets, &word, &key) {
                            Some(idx) => idx,
                            None => {
                                if squares.len() >= self.caps.max_squares {
                                    return Err(Error::ResourceLimit(format!(
                                        "square cap {} reached at radius {step}",
                                        self.caps.max_squares
                                    )));
                                }
                                add_square(&group, &mut squares, &mut buckets, word, step)
                            }
                        };
                        dual_edges.push(DualEdge { from, to, gen: i, exp: n });
                    }
                }
            }
            frontier_start = frontier_end;
        }
        // The last layer was never expanded: record its adjacencies to squares
        // already in the ball (no new squares are added).
        for from in frontier_start..squares.len() {
            let from_word = squares[from].word.clone();
            for i in Gen::all() {
                for n in truncated_exponents(truncation) {
                    let word = from_word.concat(&HWord::gen_pow(i, n));
                    let (key, _) = group.key_of(&word);
                    if let Some(to) = find(&group, &squares, &buckets, &word, &key) {
                        dual_edges.push(DualEdge { from, to, gen: i, exp: n });
                    }
                }
            }
        }

        let (vertices, edges) = self.materialize_faces(&squares);
        Ok(Ball {
            params: group.params(),
            radius,
            truncation,
            squares,
            dual_edges,
            vertices,
            edges,
        })
    }

    /// Vertices and edges are derived from the deduplicated square set, in
    /// square/corner order, so the listing is deterministic.
    fn materialize_faces(&self, squares: &[BallSquare]) -> (Vec<BallVertex>, Vec<BallEdge>) {
        let group = &self.group;
        let mut vertices: Vec<BallVertex> = Vec::new();
        let mut by_corner: [Vec<usize>; 4] = Default::default();
        let mut vertex_of: HashMap<(usize, u8), usize> = HashMap::new();
        for (s, sq) in squares.iter().enumerate() {
            for c in Gen::all() {
                let found = by_corner[c.index() as usize].iter().copied().find(|&v| {
                    let rep = &squares[vertices[v].square].word;
                    group.vertex_membership(&rep.inverse().concat(&sq.word), c)
                });
                let v = match found {
                    Some(v) => {
                        vertices[v].squares.push(s);
                        v
                    }
                    None => {
                        vertices.push(BallVertex { square: s, corner: c, squares: vec![s] });
                        let v = vertices.len() - 1;
                        by_corner[c.index() as usize].push(v);
                        v
                    }
                };
                vertex_of.insert((s, c.index()), v);
            }
        }

        let mut edges: Vec<BallEdge> = Vec::new();
        let mut by_type: [Vec<usize>; 4] = Default::default();
        for (s, sq) in squares.iter().enumerate() {
            for t in Gen::all() {
                let found = by_type[t.index() as usize].iter().copied().find(|&e| {
                    let rep = &squares[edges[e].square].word;
                    group
                        .edge_membership(&rep.inverse().concat(&sq.word), t)
                        .is_some()
                });
                match found {
                    Some(e) => edges[e].squares.push(s),
                    None => {
                        let head = vertex_of[&(s, t.index())];
                        let tail = vertex_of[&(s, t.shift(-1).index())];
                        edges.push(BallEdge { square: s, etype: t, head, tail, squares: vec![s] });
                        by_type[t.index() as usize].push(edges.len() - 1);
                    }
                }
            }
        }
        (vertices, edges)
    }
}

/// Truncated link of a vertex: bipartite graph whose sides are the type-`i`
/// and type-`i+1` edge cosets at the vertex and whose edges are the squares
/// containing it.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub center: VertexId,
    pub truncation: u32,
    pub depth: u32,
    /// Type-`i` side: cosets `g <a_i>`, keyed by the translation part of `g`.
    pub lo_cosets: Vec<String>,
    /// Type-`i+1` side: cosets `g <a_{i+1}>`.
    pub hi_cosets: Vec<String>,
    /// One link edge per explored square `g`: (lo index, hi index, g).
    pub link_edges: Vec<(usize, usize, BSElem)>,
    pub simple: bool,
    pub connected: bool,
    /// A 4-cycle, as four indices into `link_edges`, when one exists within
    /// the truncation.
    pub four_cycle: Option<[usize; 4]>,
}

impl LinkGraph {
    /// Bipartite and simple implies girth at least 4; a witnessed 4-cycle
    /// pins it to exactly 4.
    pub fn girth_at_least_four(&self) -> bool {
        self.simple
    }
}

impl Explorer {
    /// Explore the link of `v` by enumerating vertex-group elements with at
    /// most `depth` syllables of exponent at most `n_max` each.
    pub fn link_graph(&self, v: &VertexId, n_max: u32, depth: u32) -> LinkGraph {
        let bs = self.group.bs(v.corner);
        let mut elems: Vec<BSElem> = vec![BSElem::identity()];
        let mut seen: std::collections::HashSet<BSElem> = elems.iter().cloned().collect();
        let mut frontier: Vec<BSElem> = elems.clone();
        for _ in 0..depth {
            let mut next = Vec::new();
            for g in &frontier {
                for gen_is_stable in [true, false] {
                    for n in truncated_exponents(n_max) {
                        let step = if gen_is_stable {
                            BSElem::stable_pow(n)
                        } else {
                            BSElem::normal_pow(n)
                        };
                        let h = bs.mul(g, &step);
                        if seen.insert(h.clone()) {
                            elems.push(h.clone());
                            next.push(h);
                        }
                    }
                }
            }
            frontier = next;
        }

        // cosets: g<a> is determined by the translation part of g; g<b> by
        // (k, t mod m^k Z). String keys keep the dedup exact and hashable.
        let mut lo_cosets: Vec<String> = Vec::new();
        let mut hi_cosets: Vec<String> = Vec::new();
        let mut lo_index: HashMap<String, usize> = HashMap::new();
        let mut hi_index: HashMap<String, usize> = HashMap::new();
        let mut link_edges = Vec::new();
        let mut pair_seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut simple = true;
        for g in &elems {
            let lo_key = stable_coset_key(g);
            let hi_key = normal_coset_key(&self.group, v.corner, g);
            let li = *lo_index.entry(lo_key.clone()).or_insert_with(|| {
                lo_cosets.push(lo_key);
                lo_cosets.len() - 1
            });
            let hi = *hi_index.entry(hi_key.clone()).or_insert_with(|| {
                hi_cosets.push(hi_key);
                hi_cosets.len() - 1
            });
            if pair_seen.insert((li, hi), link_edges.len()).is_some() {
                // two distinct squares with the same coset pair would be a
                // parallel edge in the link
                simple = false;
            }
            link_edges.push((li, hi, g.clone()));
        }

        // connectivity on the explored portion, union-find over cosets
        let n_nodes = lo_cosets.len() + hi_cosets.len();
        let mut parent: Vec<usize> = (0..n_nodes).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (li, hi, _) in &link_edges {
            let a = root(&mut parent, *li);
            let b = root(&mut parent, lo_cosets.len() + *hi);
            parent[a] = b;
        }
        let connected = if n_nodes == 0 {
            true
        } else {
            let first = root(&mut parent, 0);
            (0..n_nodes).all(|x| root(&mut parent, x) == first)
        };

        // search a 4-cycle: e1,e2 share a lo coset, e2,e3 share a hi coset,
        // e3,e4 share a lo coset, e4,e1 share a hi coset
        let mut four_cycle = None;
        'outer: for (i1, e1) in link_edges.iter().enumerate() {
            for (i2, e2) in link_edges.iter().enumerate() {
                if i1 == i2 || e1.0 != e2.0 {
                    continue;
                }
                for (i3, e3) in link_edges.iter().enumerate() {
                    if i3 == i1 || i3 == i2 || e3.1 != e2.1 || e3.0 == e2.0 {
                        continue;
                    }
                    for (i4, e4) in link_edges.iter().enumerate() {
                        if i4 == i1 || i4 == i2 || i4 == i3 {
                            continue;
                        }
                        if e4.0 == e3.0 && e4.1 == e1.1 && e4.1 != e3.1 {
                            four_cycle = Some([i1, i2, i3, i4]);
                            break 'outer;
                        }
                    }
                }
            }
        }

        LinkGraph {
            center: v.clone(),
            truncation: n_max,
            depth,
            lo_cosets,
            hi_cosets,
            link_edges,
            simple,
            connected,
            four_cycle,
        }
    }
}

fn stable_coset_key(g: &BSElem) -> String {
    format!("t={}/{}", g.num(), g.den_exp())
}

/// Canonical key of the coset `g<b>` in `BS(1,m)`: the stable exponent `k`
/// together with the residue of the translation part modulo `m^k Z`.
fn normal_coset_key(group: &HigmanGroup, corner: Gen, g: &BSElem) -> String {
    use num_integer::Integer;
    let m = BigInt::from(group.m(corner));
    let k = i64::try_from(g.stable_exp()).expect("link exponent fits i64");
    let d = g.den_exp() as i64;
    if d + k <= 0 {
        // the lattice m^k Z contains t entirely: residue 0
        format!("k={k};r=0")
    } else {
        let modulus = m.pow((d + k) as u32);
        let r = g.num().mod_floor(&modulus);
        format!("k={k};r={r}/{d}")
    }
}

/// A 2x2 grid around a vertex: four pairwise-distinct squares cyclically
/// adjacent with alternating edge types `(c, c+1, c, c+1)`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub squares: [usize; 4],
    pub labels: [(Gen, i64); 4],
    /// Corner type at the center: labels alternate `c, c+1, c, c+1`.
    pub corner: Gen,
}

#[derive(Clone, Debug)]
pub struct GridCheck {
    pub law_holds: bool,
    pub bs_product_trivial: bool,
}

impl Explorer {
    /// Enumerate all 2x2 grids visible among the ball's listed dual edges,
    /// one representative per geometric grid.
    pub fn enumerate_grids(&self, ball: &Ball) -> Vec<Grid> {
        let adj = ball.dual_adjacency();
        let empty: Vec<(usize, i64)> = Vec::new();
        let at = |s: usize, g: Gen| adj.get(&(s, g)).unwrap_or(&empty).clone();
        let mut grids = Vec::new();
        let mut seen: std::collections::HashSet<(usize, usize, usize, usize, u8)> =
            std::collections::HashSet::new();
        for c in Gen::all() {
            for s1 in 0..ball.squares.len() {
                for (s2, p1) in at(s1, c) {
                    for (s3, q1) in at(s2, c.shift(1)) {
                        if s3 == s1 {
                            continue;
                        }
                        for (s4, p2) in at(s3, c) {
                            if s4 == s2 || s4 == s1 {
                                continue;
                            }
                            for (s1b, q2) in at(s4, c.shift(1)) {
                                if s1b != s1 {
                                    continue;
                                }
                                let mut key = [s1, s2, s3, s4];
                                key.sort_unstable();
                                if seen.insert((key[0], key[1], key[2], key[3], c.index())) {
                                    grids.push(Grid {
                                        squares: [s1, s2, s3, s4],
                                        labels: [
                                            (c, p1),
                                            (c.shift(1), q1),
                                            (c, p2),
                                            (c.shift(1), q2),
                                        ],
                                        corner: c,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        grids
    }

    /// Verify the grid label law `p2 = -p1`, `q2 = -m^p1 * q1`, cross-checked
    /// by the brute-force product of the four labels in `BS(1, m_c)`.
    pub fn classify_grid(&self, grid: &Grid) -> GridCheck {
        let m = self.group.m(grid.corner) as i64;
        let (p1, q1, p2, q2) = (
            grid.labels[0].1,
            grid.labels[1].1,
            grid.labels[2].1,
            grid.labels[3].1,
        );
        let law_holds = p2 == -p1 && {
            if p1 >= 0 {
                let scale = m.checked_pow(p1 as u32).expect("label power fits i64");
                q2 == -q1 * scale
            } else {
                let scale = m.checked_pow((-p1) as u32).expect("label power fits i64");
                q1 % scale == 0 && q2 == -(q1 / scale)
            }
        };
        // independent route: multiply the labels out in coordinates
        let bs = self.group.bs(grid.corner);
        let prod = bs.mul_all(&[
            BSElem::stable_pow(p1),
            BSElem::normal_pow(q1),
            BSElem::stable_pow(p2),
            BSElem::normal_pow(q2),
        ]);
        GridCheck { law_holds, bs_product_trivial: prod.is_identity() }
    }
}

/// Witness that a link is not a complete bipartite graph: a length-3 path
/// with no length-4 completion, pinned by an integrality failure.
#[derive(Clone, Debug)]
pub struct NonCompletenessWitness {
    /// The three squares of the path (words).
    pub path: [HWord; 3],
    /// Types and exponents of the two dual steps.
    pub steps: [(Gen, i64); 2],
    /// The completion would need `q2 = failed_numerator / failed_denominator`,
    /// which is not an integer.
    pub failed_numerator: i64,
    pub failed_denominator: i64,
}

impl Explorer {
    /// At `v` with corner type `(c, c+1)`: the path `C, C a_c^-1,
    /// C a_c^-1 a_{c+1}` has no fourth square, because the label law forces
    /// `q2 = -1/m_c`, which is not an integer.
    pub fn check_link_not_complete(&self, v: &VertexId) -> NonCompletenessWitness {
        let c = v.corner;
        let c1 = v.word.clone();
        let c2 = c1.concat(&HWord::gen_pow(c, -1));
        let c3 = c2.concat(&HWord::gen_pow(c.shift(1), 1));
        NonCompletenessWitness {
            path: [c1, c2, c3],
            steps: [(c, -1), (c.shift(1), 1)],
            failed_numerator: -1,
            failed_denominator: self.group.m(c) as i64,
        }
    }

    /// Verify the witness against the ball: no listed square completes the
    /// grid, while the mirrored path (through `a_c^{+1}`) does extend.
    pub fn verify_non_completeness(&self, ball: &Ball, v: &VertexId) -> bool {
        let wit = self.check_link_not_complete(v);
        let distinct = !self.group.equal(&wit.path[0], &wit.path[1])
            && !self.group.equal(&wit.path[1], &wit.path[2])
            && !self.group.equal(&wit.path[0], &wit.path[2]);
        if !distinct {
            return false;
        }
        // exhaustive: no ball square D closes the cycle C3 -(c)-> D -(c+1)-> C1
        let c = v.corner;
        let c3 = &wit.path[2];
        let c1 = &wit.path[0];
        for d in &ball.squares {
            let from_c3 = c3.inverse().concat(&d.word);
            let to_c1 = d.word.inverse().concat(c1);
            if let (Some(p2), Some(q2)) = (
                self.group.edge_membership(&from_c3, c),
                self.group.edge_membership(&to_c1, c.shift(1)),
            ) {
                if !p2.is_zero() && !q2.is_zero() {
                    return false;
                }
            }
        }
        // mirrored path extends: C, C a_c, C a_c a_{c+1}; the completion is
        // D = C1 a_{c+1}^{m} with labels p2 = -1, q2 = -m
        let m = self.group.m(c) as i64;
        let d = v.word.concat(&HWord::gen_pow(c.shift(1), m));
        let c3b = v
            .word
            .concat(&HWord::gen_pow(c, 1))
            .concat(&HWord::gen_pow(c.shift(1), 1));
        self.group
            .edge_membership(&d.inverse().concat(&c3b), c)
            .is_some_and(|p| p == BigInt::from(1))
    }
}

/// Desk-scale portion of the intersection graphs of maximal Baumslag-Solitar
/// subgroups, compared against the oriented 1-skeleton.
#[derive(Clone, Debug)]
pub struct GammaReport {
    pub vertex_count: usize,
    /// Oriented edges (tail, head, type) from the algebraic distortion rule.
    pub dist_edges: Vec<(usize, usize, Gen)>,
    /// Oriented edges (tail, head, type) read off the complex structure.
    pub skeleton_edges: Vec<(usize, usize, Gen)>,
    pub isomorphic: bool,
    pub gamma_edge: Option<GammaEdgeWitness>,
}

/// An undistorted-undistorted intersection at combinatorial distance 2,
/// which belongs to the full intersection graph but not its distorted part.
#[derive(Clone, Debug)]
pub struct GammaEdgeWitness {
    pub v1: usize,
    pub v2: usize,
    pub through: usize,
    pub common_element: HWord,
    pub nontrivial: bool,
    pub in_both: bool,
    pub undistorted_in_both: bool,
    pub not_adjacent: bool,
    pub excluded_from_dist: bool,
}

impl GammaEdgeWitness {
    pub fn valid(&self) -> bool {
        self.nontrivial
            && self.in_both
            && self.undistorted_in_both
            && self.not_adjacent
            && self.excluded_from_dist
    }
}

impl Explorer {
    /// Is the cyclic subgroup generated by `z` undistorted in the vertex
    /// group at `(rep, corner)`? In `BS(1,m)` a cyclic subgroup is
    /// undistorted iff its generator has a nonzero stable-letter component.
    fn undistorted_in_vertex_group(&self, rep: &HWord, corner: Gen, z: &HWord) -> Option<bool> {
        let local = rep.inverse().concat(z).concat(rep);
        let t = self.group.triangle_membership(&local, corner)?;
        if !t.in_lo() {
            return None;
        }
        let e = t
            .as_lo_elem()
            .or_else(|| t.edge_exponent().map(BSElem::normal_pow))?;
        Some(!e.stable_exp().is_zero())
    }

    pub fn build_intersection_graphs(&self, ball: &Ball) -> GammaReport {
        // complex route: orientation rule on the 1-skeleton
        let mut skeleton_edges: Vec<(usize, usize, Gen)> = ball
            .edges
            .iter()
            .map(|e| (e.tail, e.head, e.etype))
            .collect();
        skeleton_edges.sort_unstable();

        // algebraic route: place the shared cyclic subgroup in both vertex
        // groups and orient toward the side with nonzero stable component
        let mut dist_edges: Vec<(usize, usize, Gen)> = Vec::new();
        for e in &ball.edges {
            let rep = &ball.squares[e.square].word;
            let gen_word = HWord::gen_pow(e.etype, 1).conjugate_by(rep);
            let head_v = &ball.vertices[e.head];
            let tail_v = &ball.vertices[e.tail];
            let head_rep = &ball.squares[head_v.square].word;
            let tail_rep = &ball.squares[tail_v.square].word;
            let und_head = self
                .undistorted_in_vertex_group(head_rep, head_v.corner, &gen_word)
                .expect("edge stabilizer lies in head vertex group");
            let und_tail = self
                .undistorted_in_vertex_group(tail_rep, tail_v.corner, &gen_word)
                .expect("edge stabilizer lies in tail vertex group");
            assert!(
                und_head != und_tail,
                "edge group must be distorted in exactly one endpoint"
            );
            if und_head {
                dist_edges.push((e.tail, e.head, e.etype));
            } else {
                dist_edges.push((e.head, e.tail, e.etype));
            }
        }
        dist_edges.sort_unstable();
        let isomorphic = dist_edges == skeleton_edges;

        let gamma_edge = self.find_gamma_edge(ball, &dist_edges);
        GammaReport {
            vertex_count: ball.vertices.len(),
            dist_edges,
            skeleton_edges,
            isomorphic,
            gamma_edge,
        }
    }

    /// Find a distance-2 pair with undistorted-undistorted intersection: two
    /// outgoing (type `j+1`) edges at a common vertex of corner type `j` with
    /// distinct far endpoints. The intersection of the two edge stabilizers
    /// contains `w (a_j^K a_{j+1} a_j^-K) w^-1` for `K` the larger stable
    /// exponent of the two edge positions.
    fn find_gamma_edge(
        &self,
        ball: &Ball,
        dist_edges: &[(usize, usize, Gen)],
    ) -> Option<GammaEdgeWitness> {
        let group = &self.group;
        for (w_idx, wv) in ball.vertices.iter().enumerate() {
            let j = wv.corner;
            let outgoing: Vec<usize> = (0..ball.edges.len())
                .filter(|&e| ball.edges[e].tail == w_idx && ball.edges[e].etype == j.shift(1))
                .collect();
            for (a, &e1) in outgoing.iter().enumerate() {
                for &e2 in &outgoing[a + 1..] {
                    let v1 = ball.edges[e1].head;
                    let v2 = ball.edges[e2].head;
                    if v1 == v2 {
                        continue;
                    }
                    let w_rep = ball.squares[wv.square].word.clone();
                    let Some(k1) =
                        self.position_exponent(&w_rep, j, &ball.squares[ball.edges[e1].square].word)
                    else {
                        continue;
                    };
                    let Some(k2) =
                        self.position_exponent(&w_rep, j, &ball.squares[ball.edges[e2].square].word)
                    else {
                        continue;
                    };
                    let kk = k1.max(k2).max(BigInt::zero());
                    let Ok(kk) = i64::try_from(&kk) else { continue };
                    let core = HWord::gen_pow(j.shift(1), 1).conjugate_by(&HWord::gen_pow(j, kk));
                    let common = core.conjugate_by(&w_rep);
                    let nontrivial = !group.is_trivial(&common);
                    let v1_rep = ball.squares[ball.vertices[v1].square].word.clone();
                    let v2_rep = ball.squares[ball.vertices[v2].square].word.clone();
                    let in1 = group.vertex_membership(
                        &v1_rep.inverse().concat(&common).concat(&v1_rep),
                        ball.vertices[v1].corner,
                    );
                    let in2 = group.vertex_membership(
                        &v2_rep.inverse().concat(&common).concat(&v2_rep),
                        ball.vertices[v2].corner,
                    );
                    let und1 = self
                        .undistorted_in_vertex_group(&v1_rep, ball.vertices[v1].corner, &common)
                        .unwrap_or(false);
                    let und2 = self
                        .undistorted_in_vertex_group(&v2_rep, ball.vertices[v2].corner, &common)
                        .unwrap_or(false);
                    let not_adjacent = !ball
                        .edges
                        .iter()
                        .any(|e| (e.head == v1 && e.tail == v2) || (e.head == v2 && e.tail == v1));
                    let excluded = !dist_edges
                        .iter()
                        .any(|&(x, y, _)| (x == v1 && y == v2) || (x == v2 && y == v1));
                    let witness = GammaEdgeWitness {
                        v1,
                        v2,
                        through: w_idx,
                        common_element: common,
                        nontrivial,
                        in_both: in1 && in2,
                        undistorted_in_both: und1 && und2,
                        not_adjacent,
                        excluded_from_dist: excluded,
                    };
                    if witness.valid() {
                        return Some(witness);
                    }
                }
            }
        }
        None
    }

    /// Stable exponent of the position of square `s` inside the vertex group
    /// at `(w_rep, corner j)`: writes `w_rep^-1 s` in `BS(1, m_j)` coords.
    fn position_exponent(&self, w_rep: &HWord, j: Gen, s_word: &HWord) -> Option<BigInt> {
        let u = w_rep.inverse().concat(s_word);
        let t = self.group.triangle_membership(&u, j)?;
        let e = t
            .as_lo_elem()
            .or_else(|| t.edge_exponent().map(BSElem::normal_pow))?;
        Some(e.stable_exp().clone())
    }
}
