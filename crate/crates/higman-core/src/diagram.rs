//! Disc diagrams over the square complex: combinatorial curvature, the
//! Gauss-Bonnet audit, reducedness, the geodesic boundary-curvature bound,
//! and a bounded van Kampen filling search.
//!
//! Curvature is exact, stored in units of pi/2:
//!
//! ```text
//! kappa(v) = 2 pi - pi chi(link(v)) - n_v pi/2   =>   k(v) = 4 - 2 chi - n_v
//! ```
//!
//! where `n_v` counts squares at `v` and `chi(link(v))` is computed from the
//! incidence structure (number of incident edges minus `n_v`, with the
//! component count deciding interior/boundary). Gauss-Bonnet for a reduced
//! non-degenerate diagram: the total is exactly 2 pi, i.e. 4 units.
//!
//! The filling search works on the dual walk of a word: each letter `a_i^n`
//! is one gallery step between edge-adjacent squares, starting at the
//! fundamental square. The implemented search recognizes loops that circle a
//! single vertex (the boundary galleries of wheels, which include all
//! defining relators; the 2x2 grid is the 4-wheel) and fills them with the
//! explicit wheel diagram; anything else is reported as not found within the
//! bound. The boundary word of a produced diagram always reads back as the
//! input word.

use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

use crate::words::{Gen, HWord, HigmanGroup};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagEdge {
    pub ends: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct DiagSquare {
    /// Corner vertices in cyclic order; edge `j` joins corners `j` and `j+1`.
    pub corners: [usize; 4],
    pub edges: [usize; 4],
    /// Image square of the complex.
    pub image: HWord,
}

/// A planar square complex with a combinatorial map to the complex,
/// represented by vertex/edge/square lists, a rotation system, and the
/// distinguished boundary walk.
#[derive(Clone, Debug)]
pub struct DiscDiagram {
    pub vertex_count: usize,
    pub edges: Vec<DiagEdge>,
    pub squares: Vec<DiagSquare>,
    /// Cyclic order of incident edges at each vertex (planar embedding).
    pub rotation: Vec<Vec<usize>>,
    /// Closed walk of boundary edge ids (empty for the empty diagram).
    pub boundary: Vec<usize>,
}

impl DiscDiagram {
    pub fn empty() -> Self {
        DiscDiagram {
            vertex_count: 0,
            edges: Vec::new(),
            squares: Vec::new(),
            rotation: Vec::new(),
            boundary: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Euler characteristic `V - E + F`; a nonempty disc has value 1.
    pub fn euler(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.squares.len() as i64
    }

    /// Number of squares containing each vertex.
    fn corner_counts(&self) -> Vec<usize> {
        let mut n = vec![0usize; self.vertex_count];
        for s in &self.squares {
            for &c in &s.corners {
                n[c] += 1;
            }
        }
        n
    }

    fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.ends.0].push(i);
            inc[e.ends.1].push(i);
        }
        inc
    }

    /// Per-vertex `(chi(link), components, n_v)`. The link of `v` has one
    /// vertex per incident edge and one edge per square corner at `v`
    /// (joining the two sides of that corner).
    fn link_data(&self) -> Vec<(i64, usize, usize)> {
        let inc = self.incident_edges();
        let n = self.corner_counts();
        let mut out = Vec::with_capacity(self.vertex_count);
        for v in 0..self.vertex_count {
            let edges_at_v = &inc[v];
            let index_of: HashMap<usize, usize> =
                edges_at_v.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let mut parent: Vec<usize> = (0..edges_at_v.len()).collect();
            fn root(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for s in &self.squares {
                for j in 0..4 {
                    if s.corners[j] == v {
                        let e1 = s.edges[(j + 3) % 4];
                        let e2 = s.edges[j];
                        let (a, b) = (index_of[&e1], index_of[&e2]);
                        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                        if ra != rb {
                            parent[ra] = rb;
                        }
                    }
                }
            }
            let comps = (0..edges_at_v.len())
                .map(|i| root(&mut parent, i))
                .collect::<std::collections::HashSet<_>>()
                .len();
            let chi = edges_at_v.len() as i64 - n[v] as i64;
            out.push((chi, comps, n[v]));
        }
        out
    }

    /// Curvature of one vertex in units of pi/2.
    pub fn curvature(&self, v: usize) -> i64 {
        let (chi, _, n_v) = self.link_data()[v];
        4 - 2 * chi - n_v as i64
    }

    /// Interior vertices have a connected circular link.
    pub fn is_interior(&self, v: usize) -> bool {
        let (chi, comps, _) = self.link_data()[v];
        chi == 0 && comps == 1
    }

    /// Boundary walk as a vertex sequence (closed: first vertex repeated at
    /// the end when the walk is nonempty).
    pub fn boundary_vertices(&self) -> Vec<usize> {
        if self.boundary.is_empty() {
            return Vec::new();
        }
        let mut verts = Vec::with_capacity(self.boundary.len() + 1);
        // orient the first edge by matching the second
        let e0 = &self.edges[self.boundary[0]];
        let e1 = &self.edges[self.boundary[1 % self.boundary.len()]];
        let start = if e0.ends.1 == e1.ends.0 || e0.ends.1 == e1.ends.1 {
            e0.ends.0
        } else {
            e0.ends.1
        };
        let mut cur = start;
        verts.push(cur);
        for &ei in &self.boundary {
            let e = &self.edges[ei];
            cur = if e.ends.0 == cur { e.ends.1 } else { e.ends.0 };
            verts.push(cur);
        }
        verts
    }

    /// A diagram is degenerate when its boundary is not a circle: some
    /// boundary vertex is visited more than once (or a spur edge exists).
    pub fn is_degenerate(&self) -> bool {
        if self.squares.is_empty() {
            return true;
        }
        let mut seen = std::collections::HashSet::new();
        let verts = self.boundary_vertices();
        for &v in &verts[..verts.len().saturating_sub(1)] {
            if !seen.insert(v) {
                return true;
            }
        }
        // spur: an edge contained in no square
        let mut in_square = vec![false; self.edges.len()];
        for s in &self.squares {
            for &e in &s.edges {
                in_square[e] = true;
            }
        }
        in_square.iter().any(|&b| !b)
    }

    /// Structural well-formedness: Euler characteristic 1, every edge in at
    /// most two squares, boundary edges exactly those in one square.
    pub fn validate(&self) -> crate::Result<()> {
        if self.is_empty() {
            return Ok(());
        }
        if self.euler() != 1 {
            return Err(Error::InvariantViolation(format!(
                "diagram Euler characteristic {} != 1",
                self.euler()
            )));
        }
        let mut count = vec![0usize; self.edges.len()];
        for s in &self.squares {
            for &e in &s.edges {
                count[e] += 1;
            }
        }
        if count.iter().any(|&c| c > 2) {
            return Err(Error::InvariantViolation(
                "an edge lies in more than two squares".into(),
            ));
        }
        let boundary_set: std::collections::HashSet<usize> =
            self.boundary.iter().copied().collect();
        for (i, &c) in count.iter().enumerate() {
            let on_boundary = boundary_set.contains(&i);
            if (c == 1) != on_boundary {
                return Err(Error::InvariantViolation(format!(
                    "edge {i} is in {c} squares but boundary membership is {on_boundary}"
                )));
            }
        }
        Ok(())
    }
}

/// Per-vertex curvature listing with totals, in units of pi/2.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub per_vertex: Vec<i64>,
    /// Sum over all vertices, in units of pi/2 (the theorem asserts 4).
    pub total: i64,
    /// Boundary vertices with nonzero curvature.
    pub corners: Vec<usize>,
    pub interior_nonpositive: bool,
    pub degenerate: bool,
}

/// Compute all curvatures and check the Gauss-Bonnet total. An error means
/// the input was malformed or non-planar, not that the theorem failed.
pub fn gauss_bonnet(d: &DiscDiagram) -> crate::Result<CurvatureReport> {
    d.validate()?;
    if d.is_empty() {
        return Err(Error::InvariantViolation(
            "Gauss-Bonnet is asserted for nonempty reduced diagrams".into(),
        ));
    }
    let link = d.link_data();
    let mut per_vertex = Vec::with_capacity(d.vertex_count);
    let mut corners = Vec::new();
    let mut interior_nonpositive = true;
    for (v, &(chi, comps, n_v)) in link.iter().enumerate() {
        let k = 4 - 2 * chi - n_v as i64;
        per_vertex.push(k);
        let interior = chi == 0 && comps == 1;
        if interior && k > 0 {
            interior_nonpositive = false;
        }
        if !interior && k != 0 {
            corners.push(v);
        }
    }
    let total: i64 = per_vertex.iter().sum();
    let degenerate = d.is_degenerate();
    if !degenerate && total != 4 {
        return Err(Error::InvariantViolation(format!(
            "Gauss-Bonnet total is {total} half-pi units, expected 4"
        )));
    }
    Ok(CurvatureReport { per_vertex, total, corners, interior_nonpositive, degenerate })
}

/// Reduced: no two distinct squares sharing an edge have the same image.
pub fn is_reduced(group: &HigmanGroup, d: &DiscDiagram) -> bool {
    let mut by_edge: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, s) in d.squares.iter().enumerate() {
        for &e in &s.edges {
            by_edge.entry(e).or_default().push(i);
        }
    }
    for squares in by_edge.values() {
        if let [a, b] = squares.as_slice() {
            if group.equal(&d.squares[*a].image, &d.squares[*b].image) {
                return false;
            }
        }
    }
    true
}

/// Result of the boundary-geodesic curvature bound.
#[derive(Clone, Debug)]
pub struct GeodesicCheck {
    /// Sum of curvatures over the interior vertices of the subpath.
    pub interior_sum: i64,
    /// The bound `sum <= pi/2` holds.
    pub within_bound: bool,
    /// When the sum equals pi/2, the first and last corners on the open
    /// subpath must both be positive.
    pub equality_condition_ok: bool,
    /// Two consecutive positive corners separated only by zero-curvature
    /// vertices (the shortcut configuration ruled out along geodesics).
    pub consecutive_positive_corners: Option<(usize, usize)>,
}

impl GeodesicCheck {
    pub fn ok(&self) -> bool {
        self.within_bound && self.equality_condition_ok && self.consecutive_positive_corners.is_none()
    }
}

/// Check the curvature bound along a boundary subpath, given as a vertex
/// sequence along the boundary walk. The caller certifies the subpath is a
/// combinatorial geodesic of the complex (see `Ball::vertex_distance`).
pub fn geodesic_boundary_check(d: &DiscDiagram, path: &[usize]) -> GeodesicCheck {
    let interior: &[usize] = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[] };
    let link = d.link_data();
    let kappa = |v: usize| {
        let (chi, _, n_v) = link[v];
        4 - 2 * chi - n_v as i64
    };
    let interior_sum: i64 = interior.iter().map(|&v| kappa(v)).sum();
    let within_bound = interior_sum <= 1;
    let nonzero: Vec<(usize, i64)> = interior
        .iter()
        .map(|&v| (v, kappa(v)))
        .filter(|&(_, k)| k != 0)
        .collect();
    let equality_condition_ok = if interior_sum == 1 {
        match (nonzero.first(), nonzero.last()) {
            (Some(&(_, kf)), Some(&(_, kl))) => kf > 0 && kl > 0,
            _ => false,
        }
    } else {
        true
    };
    let mut consecutive_positive_corners = None;
    for w in nonzero.windows(2) {
        if w[0].1 > 0 && w[1].1 > 0 {
            consecutive_positive_corners = Some((w[0].0, w[1].0));
            break;
        }
    }
    GeodesicCheck {
        interior_sum,
        within_bound,
        equality_condition_ok,
        consecutive_positive_corners,
    }
}

/// Build a diagram from a set of plane cells with image words. The region
/// must be edge-connected and simply connected with a circle boundary (the
/// patch diamonds and rectangles used here are).
pub fn from_cells(cells: &BTreeMap<(i32, i32), HWord>) -> DiscDiagram {
    assert!(!cells.is_empty(), "use DiscDiagram::empty() for the empty diagram");
    let mut vid: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut vertex_count = 0usize;
    let vert = |p: (i32, i32), count: &mut usize, vid: &mut BTreeMap<(i32, i32), usize>| {
        *vid.entry(p).or_insert_with(|| {
            let i = *count;
            *count += 1;
            i
        })
    };
    type PointPair = ((i32, i32), (i32, i32));
    let mut eid: BTreeMap<PointPair, usize> = BTreeMap::new();
    let mut edges: Vec<DiagEdge> = Vec::new();
    let mut squares: Vec<DiagSquare> = Vec::new();
    for (&(x, y), image) in cells {
        // lattice corners, counterclockwise from bottom-left
        let pts = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
        let corner_ids =
            pts.map(|p| vert(p, &mut vertex_count, &mut vid));
        let mut edge_ids = [0usize; 4];
        for j in 0..4 {
            let a = pts[j];
            let b = pts[(j + 1) % 4];
            let key = if a <= b { (a, b) } else { (b, a) };
            let id = *eid.entry(key).or_insert_with(|| {
                edges.push(DiagEdge {
                    ends: (0, 0), // fixed below
                });
                edges.len() - 1
            });
            edge_ids[j] = id;
        }
        for j in 0..4 {
            let a = pts[j];
            let b = pts[(j + 1) % 4];
            let key = if a <= b { (a, b) } else { (b, a) };
            edges[edge_ids[j]].ends = (vid[&key.0], vid[&key.1]);
        }
        squares.push(DiagSquare { corners: corner_ids, edges: edge_ids, image: image.clone() });
    }
    // rotation: incident edges sorted by plane direction around each vertex
    let point_of: BTreeMap<usize, (i32, i32)> = vid.iter().map(|(&p, &i)| (i, p)).collect();
    let mut rotation = vec![Vec::new(); vertex_count];
    for (v, rot) in rotation.iter_mut().enumerate() {
        let p = point_of[&v];
        let mut incident: Vec<(u8, usize)> = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            let other = if e.ends.0 == v {
                e.ends.1
            } else if e.ends.1 == v {
                e.ends.0
            } else {
                continue;
            };
            let q = point_of[&other];
            let dir = match (q.0 - p.0, q.1 - p.1) {
                (1, 0) => 0,
                (0, 1) => 1,
                (-1, 0) => 2,
                (0, -1) => 3,
                _ => unreachable!("non-lattice edge"),
            };
            incident.push((dir, i));
        }
        incident.sort_unstable();
        *rot = incident.into_iter().map(|(_, e)| e).collect();
    }
    // boundary walk: edges in exactly one square, walked around the region
    let mut count = vec![0usize; edges.len()];
    for s in &squares {
        for &e in &s.edges {
            count[e] += 1;
        }
    }
    let boundary_edges: Vec<usize> =
        (0..edges.len()).filter(|&e| count[e] == 1).collect();
    let boundary = walk_cycle(&edges, &boundary_edges);
    DiscDiagram { vertex_count, edges, squares, rotation, boundary }
}

/// Order a set of edges forming a single cycle into a walk.
fn walk_cycle(edges: &[DiagEdge], cycle: &[usize]) -> Vec<usize> {
    if cycle.is_empty() {
        return Vec::new();
    }
    let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in cycle {
        at.entry(edges[e].ends.0).or_default().push(e);
        at.entry(edges[e].ends.1).or_default().push(e);
    }
    let mut walk = vec![cycle[0]];
    let mut used: std::collections::HashSet<usize> = [cycle[0]].into();
    let mut cur_v = edges[cycle[0]].ends.1;
    while walk.len() < cycle.len() {
        let next = at[&cur_v]
            .iter()
            .copied()
            .find(|e| !used.contains(e))
            .expect("boundary is a single cycle");
        used.insert(next);
        let e = &edges[next];
        cur_v = if e.ends.0 == cur_v { e.ends.1 } else { e.ends.0 };
        walk.push(next);
    }
    walk
}

/// Convert a flat patch to a disc diagram.
pub fn patch_to_diagram(patch: &crate::flats::FlatPatch) -> DiscDiagram {
    from_cells(&patch.cells)
}

/// One square glued to the next along shared edges, all containing a common
/// vertex, closing up after `n` steps: the `n`-wheel. Central curvature is
/// `(4 - n) pi/2`; total curvature is 2 pi for every `n >= 3`.
pub fn wheel(images: &[HWord]) -> DiscDiagram {
    let n = images.len();
    assert!(n >= 3, "a wheel needs at least 3 squares");
    // vertices: 0 = center, 1..=n mids (shared-edge far ends), n+1..=2n corners
    let vertex_count = 1 + 2 * n;
    let mid = |j: usize| 1 + (j % n);
    let cor = |j: usize| 1 + n + (j % n);
    let mut edges = Vec::new();
    // spokes 0..n: center-mid_j
    for j in 0..n {
        edges.push(DiagEdge { ends: (0, mid(j)) });
    }
    // outer edges: mid_j - cor_j and cor_j - mid_{j+1}
    let mut outer1 = Vec::new();
    let mut outer2 = Vec::new();
    for j in 0..n {
        edges.push(DiagEdge { ends: (mid(j), cor(j)) });
        outer1.push(edges.len() - 1);
        edges.push(DiagEdge { ends: (cor(j), mid(j + 1)) });
        outer2.push(edges.len() - 1);
    }
    let mut squares = Vec::new();
    for (j, image) in images.iter().enumerate() {
        squares.push(DiagSquare {
            corners: [0, mid(j), cor(j), mid(j + 1)],
            edges: [j, outer1[j], outer2[j], (j + 1) % n],
            image: image.clone(),
        });
    }
    let mut rotation = vec![Vec::new(); vertex_count];
    rotation[0] = (0..n).collect();
    for j in 0..n {
        rotation[mid(j)] = vec![j, outer1[j], outer2[(j + n - 1) % n]];
        rotation[cor(j)] = vec![outer1[j], outer2[j]];
    }
    let mut boundary = Vec::new();
    for j in 0..n {
        boundary.push(outer1[j]);
        boundary.push(outer2[j]);
    }
    DiscDiagram { vertex_count, edges, squares, rotation, boundary }
}

/// Outcome of the bounded filling search.
#[derive(Clone, Debug)]
pub enum FillResult {
    /// The input word is not trivial; nothing to fill.
    NotTrivial,
    Filled(DiscDiagram),
    /// No filling found within `max_squares` and the implemented search
    /// space (single-vertex wheel galleries).
    Exhausted { max_squares: usize, reason: String },
}

/// Search for a reduced disc diagram whose boundary dual walk reads `w`.
///
/// The gallery of `w` starts at the fundamental square and crosses one edge
/// per letter. A trivial word closes the gallery; when the loop circles a
/// single vertex once (all squares share a vertex and are pairwise
/// distinct), the filling is the wheel on those squares. Defining relators
/// and their `BS(1,m)`-relation variants fall in this class; the minimum
/// square count for a relator is its letter count (4).
pub fn fill_bounded(group: &HigmanGroup, w: &HWord, max_squares: usize) -> FillResult {
    if !group.is_trivial(w) {
        return FillResult::NotTrivial;
    }
    if w.is_empty() {
        return FillResult::Filled(DiscDiagram::empty());
    }
    // gallery loop, one step per letter
    let mut gallery: Vec<HWord> = vec![HWord::empty()];
    let mut prefix = HWord::empty();
    for l in w.letters() {
        prefix = prefix.concat(&HWord::gen_pow(l.gen, l.exp.clone()));
        gallery.push(prefix.clone());
    }
    gallery.pop(); // the closing square equals the first
    let n = gallery.len();
    if n < 3 {
        return FillResult::Exhausted {
            max_squares,
            reason: "gallery loop shorter than a wheel".into(),
        };
    }
    if n > max_squares {
        return FillResult::Exhausted {
            max_squares,
            reason: format!("wheel filling needs {n} squares"),
        };
    }
    // pairwise distinct squares
    for i in 0..n {
        for j in (i + 1)..n {
            if group.equal(&gallery[i], &gallery[j]) {
                return FillResult::Exhausted {
                    max_squares,
                    reason: "gallery revisits a square; loop is not a single wheel".into(),
                };
            }
        }
    }
    // a common vertex of all gallery squares
    let common = Gen::all().into_iter().find(|&c| {
        gallery.iter().all(|s| {
            group.vertex_membership(&s.inverse().concat(&gallery[0]), c)
        })
    });
    if common.is_none() {
        return FillResult::Exhausted {
            max_squares,
            reason: "gallery squares share no vertex; filling is outside the implemented search".into(),
        };
    }
    FillResult::Filled(wheel(&gallery))
}

/// JSON form of a diagram, per the stable schema.
pub fn diagram_to_json(d: &DiscDiagram) -> serde_json::Value {
    serde_json::json!({
        "vertices": (0..d.vertex_count).collect::<Vec<_>>(),
        "edges": d.edges.iter().enumerate().map(|(i, e)| {
            serde_json::json!({"id": i, "ends": [e.ends.0, e.ends.1]})
        }).collect::<Vec<_>>(),
        "squares": d.squares.iter().map(|s| {
            serde_json::json!({
                "corners": s.corners,
                "edges": s.edges,
                "image": s.image.to_string(),
            })
        }).collect::<Vec<_>>(),
        "boundary": d.boundary,
    })
}

/// Parse a diagram from its JSON form.
pub fn diagram_from_json(v: &serde_json::Value) -> crate::Result<DiscDiagram> {
    let err = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
    let vertices = v["vertices"].as_array().ok_or_else(|| err("vertices"))?;
    let vertex_count = vertices.len();
    let mut edges = Vec::new();
    for e in v["edges"].as_array().ok_or_else(|| err("edges"))? {
        let ends = e["ends"].as_array().ok_or_else(|| err("edge ends"))?;
        edges.push(DiagEdge {
            ends: (
                ends[0].as_u64().ok_or_else(|| err("edge end"))? as usize,
                ends[1].as_u64().ok_or_else(|| err("edge end"))? as usize,
            ),
        });
    }
    let mut squares = Vec::new();
    for s in v["squares"].as_array().ok_or_else(|| err("squares"))? {
        let mut corners = [0usize; 4];
        let mut sedges = [0usize; 4];
        for (i, c) in s["corners"].as_array().ok_or_else(|| err("corners"))?.iter().enumerate() {
            corners[i] = c.as_u64().ok_or_else(|| err("corner id"))? as usize;
        }
        for (i, c) in s["edges"].as_array().ok_or_else(|| err("square edges"))?.iter().enumerate() {
            sedges[i] = c.as_u64().ok_or_else(|| err("edge id"))? as usize;
        }
        let image = HWord::parse(s["image"].as_str().ok_or_else(|| err("image"))?)?;
        squares.push(DiagSquare { corners, edges: sedges, image });
    }
    let boundary = v["boundary"]
        .as_array()
        .ok_or_else(|| err("boundary"))?
        .iter()
        .map(|b| b.as_u64().map(|x| x as usize).ok_or_else(|| err("boundary id")))
        .collect::<crate::Result<Vec<_>>>()?;
    // rotation is not part of the wire format; rebuild a neutral one
    let mut rotation = vec![Vec::new(); vertex_count];
    for (i, e) in edges.iter().enumerate() {
        rotation[e.ends.0].push(i);
        rotation[e.ends.1].push(i);
    }
    Ok(DiscDiagram { vertex_count, edges, squares, rotation, boundary })
}

/// Read the boundary dual walk of a wheel diagram back as a word (used to
/// confirm fillings reproduce their input).
pub fn wheel_boundary_word(group: &HigmanGroup, d: &DiscDiagram) -> Option<HWord> {
    let n = d.squares.len();
    if n == 0 {
        return Some(HWord::empty());
    }
    let mut word = HWord::empty();
    for j in 0..n {
        let cur = &d.squares[j].image;
        let next = &d.squares[(j + 1) % n].image;
        let quot = cur.inverse().concat(next);
        let step = Gen::all().into_iter().find_map(|g| {
            group
                .edge_membership(&quot, g)
                .filter(|e| !e.is_zero())
                .map(|e| (g, e))
        })?;
        word.push(step.0, step.1);
    }
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flats::{FlatBuilder, FlatSpec};

    fn group() -> HigmanGroup {
        HigmanGroup::new([2, 2, 2, 2]).unwrap()
    }

    fn w(s: &str) -> HWord {
        HWord::parse(s).unwrap()
    }

    fn rect(cols: i32, rows: i32) -> DiscDiagram {
        // images: distinct real squares from a flat patch are not needed for
        // pure curvature tests; dummy distinct words keep is_reduced honest
        let mut cells = BTreeMap::new();
        for x in 0..cols {
            for y in 0..rows {
                cells.insert((x, y), w(&format!("a0^{} a1^{}", x + 1, y + 1)));
            }
        }
        from_cells(&cells)
    }

    #[test]
    fn single_square_curvature() {
        let d = rect(1, 1);
        assert_eq!(d.euler(), 1);
        let report = gauss_bonnet(&d).unwrap();
        assert_eq!(report.total, 4);
        assert_eq!(report.corners.len(), 4);
        assert!(report.per_vertex.iter().all(|&k| k == 1));
        assert!(!report.degenerate);
    }

    #[test]
    fn two_by_two_grid_curvature() {
        let d = rect(2, 2);
        let report = gauss_bonnet(&d).unwrap();
        assert_eq!(report.total, 4);
        // central vertex interior with curvature 0
        let center = (0..d.vertex_count).find(|&v| d.is_interior(v)).unwrap();
        assert_eq!(d.curvature(center), 0);
        // four outer corners at +1, four side midpoints at 0
        let pos = report.per_vertex.iter().filter(|&&k| k == 1).count();
        assert_eq!(pos, 4);
    }

    #[test]
    fn boundary_vertex_in_two_squares_has_zero_curvature() {
        let d = rect(2, 1);
        // the two mid-side vertices: boundary, two squares, one arc
        let zeros = (0..d.vertex_count)
            .filter(|&v| !d.is_interior(v) && d.curvature(v) == 0)
            .count();
        assert_eq!(zeros, 2);
        assert_eq!(gauss_bonnet(&d).unwrap().total, 4);
    }

    #[test]
    fn patch_conversion_is_flat() {
        let g = group();
        let b = FlatBuilder::new(g);
        let patch = b.build(&FlatSpec::all_ones(Gen::new(0), 3)).unwrap();
        let d = patch_to_diagram(&patch);
        let report = gauss_bonnet(&d).unwrap();
        assert_eq!(report.total, 4);
        for v in 0..d.vertex_count {
            if d.is_interior(v) {
                assert_eq!(report.per_vertex[v], 0, "interior vertex {v}");
            }
        }
        assert!(is_reduced(&g, &d));
        assert!(!d.is_degenerate());
    }

    #[test]
    fn reducedness_examples() {
        let g = group();
        // two copies of the fundamental square glued along an edge
        let mut cells = BTreeMap::new();
        cells.insert((0, 0), HWord::empty());
        cells.insert((1, 0), HWord::empty());
        let d = from_cells(&cells);
        assert!(!is_reduced(&g, &d));
        // a single square is reduced
        let mut cells = BTreeMap::new();
        cells.insert((0, 0), HWord::empty());
        assert!(is_reduced(&g, &from_cells(&cells)));
    }

    #[test]
    fn wheel_curvature_all_sizes() {
        for n in 3..=8 {
            let images: Vec<HWord> =
                (0..n).map(|j| w(&format!("a0^{}", j + 1))).collect();
            let d = wheel(&images);
            assert_eq!(d.euler(), 1, "wheel {n}");
            let report = gauss_bonnet(&d).unwrap();
            assert_eq!(report.total, 4, "wheel {n}");
            assert_eq!(d.curvature(0), 4 - n as i64);
            assert!(d.is_interior(0));
        }
    }

    #[test]
    fn fill_relators_with_wheels() {
        for params in [[2, 2, 2, 2], [2, 3, 5, 7]] {
            let g = HigmanGroup::new(params).unwrap();
            for i in Gen::all() {
                let r = g.relator(i);
                match fill_bounded(&g, &r, 16) {
                    FillResult::Filled(d) => {
                        assert_eq!(d.squares.len(), 4, "relator {i} fills as the 2x2 grid wheel");
                        assert!(is_reduced(&g, &d));
                        let report = gauss_bonnet(&d).unwrap();
                        assert_eq!(report.total, 4);
                        assert!(report.interior_nonpositive);
                        // boundary word reads back as the relator
                        let back = wheel_boundary_word(&g, &d).unwrap();
                        assert!(g.equal(&back.concat(&r.inverse()), &HWord::empty()));
                        assert_eq!(back, r);
                    }
                    other => panic!("relator {i} not filled: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn fill_gates() {
        let g = group();
        assert!(matches!(
            fill_bounded(&g, &w("a0 a2 a0^-1 a2^-1"), 100),
            FillResult::NotTrivial
        ));
        assert!(matches!(
            fill_bounded(&g, &HWord::empty(), 100),
            FillResult::Filled(d) if d.is_empty()
        ));
        // bound too small
        assert!(matches!(
            fill_bounded(&g, &g.relator(Gen::new(0)), 3),
            FillResult::Exhausted { .. }
        ));
    }

    #[test]
    fn fill_larger_vertex_loop() {
        // a1 a2^2 a1^-1 a2^-4 is trivial (conjugation doubles the exponent)
        // and its gallery circles the (1,2) corner: a 4-wheel
        let g = group();
        let word = w("a1 a2^2 a1^-1 a2^-4");
        match fill_bounded(&g, &word, 10) {
            FillResult::Filled(d) => {
                assert_eq!(d.squares.len(), 4);
                assert!(is_reduced(&g, &d));
                assert_eq!(wheel_boundary_word(&g, &d).unwrap(), word);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn geodesic_bound_on_patch_side() {
        let g = group();
        let b = FlatBuilder::new(g);
        let patch = b.build(&FlatSpec::all_ones(Gen::new(0), 2)).unwrap();
        let d = patch_to_diagram(&patch);
        // a straight run of boundary vertices along one diamond side has
        // interior curvature sum <= 1
        let verts = d.boundary_vertices();
        let path = &verts[0..verts.len().min(4)];
        let check = geodesic_boundary_check(&d, path);
        assert!(check.within_bound);
        // single square with one side: no interior vertices
        let single = rect(1, 1);
        let bv = single.boundary_vertices();
        let check = geodesic_boundary_check(&single, &bv[0..2]);
        assert_eq!(check.interior_sum, 0);
        assert!(check.ok());
    }

    #[test]
    fn geodesic_negative_control() {
        // wrap a path around two corners of a ladder: two +1 corners with
        // zeros in between must be flagged
        let d = rect(3, 1);
        let verts = d.boundary_vertices();
        // find a subwalk containing two +1-curvature vertices
        let kappa: Vec<i64> = (0..d.vertex_count).map(|v| d.curvature(v)).collect();
        let mut best: Option<&[usize]> = None;
        for start in 0..verts.len() {
            for end in (start + 3)..verts.len() {
                let sub = &verts[start..=end];
                let inner = &sub[1..sub.len() - 1];
                let pos = inner.iter().filter(|&&v| kappa[v] > 0).count();
                if pos >= 2 {
                    best = Some(sub);
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        let sub = best.expect("ladder has two corners on one side-walk");
        let check = geodesic_boundary_check(&d, sub);
        assert!(!check.ok());
    }

    #[test]
    fn json_round_trip() {
        let d = rect(2, 2);
        let v = diagram_to_json(&d);
        let d2 = diagram_from_json(&v).unwrap();
        assert_eq!(d2.vertex_count, d.vertex_count);
        assert_eq!(d2.edges, d.edges);
        assert_eq!(d2.boundary, d.boundary);
        assert_eq!(gauss_bonnet(&d2).unwrap().total, 4);
    }
}
