//! Analysis of the group action: fixed-point sets of elliptic elements,
//! isometry classification, stable fixed sets, acylindricity audits, and
//! free-subgroup certificates built from pairs of elliptic elements.
//!
//! Everything is computed inside a caller-supplied ball. A vertex `g v` is
//! fixed by `h` iff `g^-1 h g` lies in the vertex group, an edge iff the
//! conjugate lies in the cyclic edge group; the fixed faces of a nontrivial
//! elliptic element always sit inside the closed star of a single vertex
//! with the edges pointing outward, and that shape is asserted, not assumed.
//! Ellipticity is semi-decided: a fixed vertex in the explored ball
//! certifies it, a translation witness (the element moves a flat axis
//! gallery forward) certifies hyperbolicity, and `Unknown` is a first-class
//! answer otherwise.


use crate::bs::{BSElem, BSParams};
use crate::complex::{Ball, Explorer};
use crate::words::{Gen, HWord};
use crate::Error;

/// Fixed faces of an element within a ball, with the star-shape audit.
#[derive(Clone, Debug)]
pub struct FixedSet {
    pub element: HWord,
    /// Ball vertex indices fixed by the element.
    pub vertices: Vec<usize>,
    /// Ball edge indices fixed (pointwise) by the element.
    pub edges: Vec<usize>,
    /// Hub of the star when the fixed set is larger than a single vertex.
    pub star_center: Option<usize>,
}

impl FixedSet {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    /// Face-disjointness inside a common ball (subcomplex closure included).
    pub fn disjoint_from(&self, other: &FixedSet, ball: &Ball) -> bool {
        let closure = |fs: &FixedSet| {
            let mut vs: Vec<usize> = fs.vertices.clone();
            for &e in &fs.edges {
                vs.push(ball.edges[e].head);
                vs.push(ball.edges[e].tail);
            }
            vs.sort_unstable();
            vs.dedup();
            vs
        };
        let va = closure(self);
        let vb = closure(other);
        let vertex_disjoint = va.iter().all(|v| !vb.contains(v));
        let edge_disjoint = self.edges.iter().all(|e| !other.edges.contains(e));
        vertex_disjoint && edge_disjoint
    }
}

impl Explorer {
    /// Fixed vertices and edges of `h` within the ball, with the shape
    /// invariant asserted: all fixed faces lie in one closed star, the fixed
    /// edges all point away from the hub, and no two fixed edges at the hub
    /// share a square.
    pub fn fixed_set(&self, ball: &Ball, h: &HWord) -> crate::Result<FixedSet> {
        let group = &self.group;
        let mut vertices = Vec::new();
        for (vi, v) in ball.vertices.iter().enumerate() {
            let rep = &ball.squares[v.square].word;
            let conj = rep.inverse().concat(h).concat(rep);
            if group.vertex_membership(&conj, v.corner) {
                vertices.push(vi);
            }
        }
        let mut edges = Vec::new();
        for (ei, e) in ball.edges.iter().enumerate() {
            let rep = &ball.squares[e.square].word;
            let conj = rep.inverse().concat(h).concat(rep);
            if group.edge_membership(&conj, e.etype).is_some() {
                edges.push(ei);
            }
        }
        let star_center = self.check_star_shape(ball, &vertices, &edges)?;
        Ok(FixedSet { element: h.clone(), vertices, edges, star_center })
    }

    /// Shape audit for a fixed-face collection. Returns the hub when the
    /// set is larger than a single vertex.
    fn check_star_shape(
        &self,
        ball: &Ball,
        vertices: &[usize],
        edges: &[usize],
    ) -> crate::Result<Option<usize>> {
        if edges.is_empty() && vertices.len() <= 1 {
            return Ok(None);
        }
        // hub candidates: tails of fixed edges, or any fixed vertex
        let mut candidates: Vec<usize> = if edges.is_empty() {
            vertices.to_vec()
        } else {
            let mut tails: Vec<usize> = edges.iter().map(|&e| ball.edges[e].tail).collect();
            tails.sort_unstable();
            tails.dedup();
            tails
        };
        candidates.sort_unstable();
        candidates.dedup();
        'hub: for &hub in &candidates {
            // every fixed edge must point away from the hub
            for &e in edges {
                if ball.edges[e].tail != hub {
                    continue 'hub;
                }
            }
            // every fixed vertex is the hub or adjacent to it
            let hub_id = ball.vertex_id(hub);
            for &v in vertices {
                if v == hub {
                    continue;
                }
                let vid = ball.vertex_id(v);
                if !self.vertices_adjacent(&hub_id, &vid) {
                    continue 'hub;
                }
            }
            // no two fixed edges at the hub share a square (the angle
            // between fixed edges is a nonzero multiple of pi)
            for (i, &e1) in edges.iter().enumerate() {
                for &e2 in &edges[i + 1..] {
                    let shared = ball.edges[e1]
                        .squares
                        .iter()
                        .any(|s| ball.edges[e2].squares.contains(s));
                    if shared {
                        return Err(Error::InvariantViolation(format!(
                            "fixed edges {e1} and {e2} share a square at the star center"
                        )));
                    }
                }
            }
            return Ok(Some(hub));
        }
        Err(Error::InvariantViolation(
            "fixed faces do not lie in the closed star of a single vertex".into(),
        ))
    }
}

/// Witness that an element translates a flat axis gallery forward.
#[derive(Clone, Debug)]
pub struct TranslationWitness {
    pub conjugator: HWord,
    pub axis_base: Gen,
    pub power: u32,
    pub steps_checked: usize,
}

/// Semi-decided isometry type.
#[derive(Clone, Debug)]
pub enum IsometryClass {
    Elliptic { fixed_vertex: usize, fixed: FixedSet },
    HyperbolicCertified { search_radius: u32, witness: TranslationWitness },
    Unknown { search_radius: u32 },
}

impl Explorer {
    /// Classify `h` within the ball: elliptic when a fixed vertex exists;
    /// hyperbolic when `h` is conjugate (by a ball representative) to a
    /// power of an axis translation `a_i^-1 a_{i+2}^-1`, verified by pushing
    /// the axis gallery forward; `Unknown` otherwise.
    pub fn classify(&self, ball: &Ball, h: &HWord, max_power: u32) -> crate::Result<IsometryClass> {
        assert!(!self.group.is_trivial(h), "classify expects a nontrivial element");
        let fixed = self.fixed_set(ball, h)?;
        if let Some(&v) = fixed.vertices.first() {
            return Ok(IsometryClass::Elliptic { fixed_vertex: v, fixed });
        }
        for sq in &ball.squares {
            let g = &sq.word;
            for i in Gen::all() {
                let delta = HWord::gen_pow(i, -1).concat(&HWord::gen_pow(i.shift(2), -1));
                for c in 1..=max_power {
                    let candidate = delta.pow(c as i64).conjugate_by(g);
                    if self.group.equal(h, &candidate) {
                        // verify the witness: h advances the translated axis
                        // gallery g (a_i^-1 a_{i+2}^-1)^n C0 by c steps
                        let mut steps_checked = 0;
                        let mut ok = true;
                        for n in 0..3i64 {
                            let from = g.concat(&delta.pow(n));
                            let to = g.concat(&delta.pow(n + c as i64));
                            if !self.group.equal(&h.concat(&from), &to) {
                                ok = false;
                                break;
                            }
                            steps_checked += 1;
                        }
                        if ok {
                            return Ok(IsometryClass::HyperbolicCertified {
                                search_radius: ball.radius,
                                witness: TranslationWitness {
                                    conjugator: g.clone(),
                                    axis_base: i,
                                    power: c,
                                    steps_checked,
                                },
                            });
                        }
                    }
                }
            }
        }
        Ok(IsometryClass::Unknown { search_radius: ball.radius })
    }
}

/// Union of fixed sets of the powers `h, h^2, ..., h^M`.
#[derive(Clone, Debug)]
pub struct StableFixedSet {
    pub element: HWord,
    pub bound: u32,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Whether the union strictly contains the fixed set of `h` itself.
    pub strictly_larger: bool,
}

impl Explorer {
    pub fn stable_fixed_set(
        &self,
        ball: &Ball,
        h: &HWord,
        bound: u32,
    ) -> crate::Result<StableFixedSet> {
        let base = self.fixed_set(ball, h)?;
        let mut vertices = base.vertices.clone();
        let mut edges = base.edges.clone();
        for n in 2..=bound {
            let fs = self.fixed_set(ball, &h.pow(n as i64))?;
            vertices.extend(fs.vertices);
            edges.extend(fs.edges);
        }
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        let strictly_larger =
            vertices.len() > base.vertices.len() || edges.len() > base.edges.len();
        Ok(StableFixedSet { element: h.clone(), bound, vertices, edges, strictly_larger })
    }
}

/// Result of the weak-acylindricity audit.
#[derive(Clone, Debug)]
pub struct AcylReport {
    pub paths_checked: usize,
    pub path_violations: Vec<[usize; 3]>,
    pub spot_checks: usize,
    pub spot_violations: usize,
}

impl AcylReport {
    pub fn passed(&self) -> bool {
        self.path_violations.is_empty() && self.spot_violations == 0
    }
}

impl Explorer {
    /// (a) Structural check: every embedded 3-edge path in the ball has an
    /// interior vertex at which one of its two path-edges points in (the
    /// undistorted inclusion); with the conjugate-cyclic triviality this
    /// certifies trivial common stabilizers at distance 3.
    /// (b) Algebraic spot checks of `g<a>g^-1 ∩ <a> = 1` and
    /// `g<b>g^-1 ∩ <a> = 1` in coordinates.
    pub fn acylindricity_audit(&self, ball: &Ball, seed: u64, spot_checks: usize) -> AcylReport {
        use rand::{Rng, SeedableRng};
        let mut paths_checked = 0usize;
        let mut path_violations = Vec::new();
        let nv = ball.vertices.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (ei, e) in ball.edges.iter().enumerate() {
            incident[e.head].push(ei);
            incident[e.tail].push(ei);
        }
        let ends = |e: usize| (ball.edges[e].tail, ball.edges[e].head);
        for e2 in 0..ball.edges.len() {
            let (v1, v2) = ends(e2);
            for &e1 in &incident[v1] {
                if e1 == e2 {
                    continue;
                }
                let (a, b) = ends(e1);
                let v0 = if a == v1 { b } else { a };
                if v0 == v2 {
                    continue;
                }
                for &e3 in &incident[v2] {
                    if e3 == e2 || e3 == e1 {
                        continue;
                    }
                    let (c, d) = ends(e3);
                    let v3 = if c == v2 { d } else { c };
                    if v3 == v1 || v3 == v0 {
                        continue;
                    }
                    paths_checked += 1;
                    // incoming path-edge at an interior vertex?
                    let ok_v1 = ball.edges[e1].head == v1 || ball.edges[e2].head == v1;
                    let ok_v2 = ball.edges[e2].head == v2 || ball.edges[e3].head == v2;
                    if !ok_v1 && !ok_v2 {
                        path_violations.push([e1, e2, e3]);
                    }
                }
            }
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut spot_violations = 0usize;
        let mut done = 0usize;
        while done < spot_checks {
            let i = Gen::new(rng.gen_range(0..4u8));
            let bs = self.group.bs(i);
            let g = random_bs_elem(&bs, &mut rng);
            if g.t_is_zero() {
                continue; // need g outside <a>
            }
            done += 1;
            for n in -20i64..=20 {
                let x = bs.conj(&g, &BSElem::stable_pow(n));
                if bs.membership_stable(&x).is_some() != (n == 0) {
                    spot_violations += 1;
                }
                let y = bs.conj(&g, &BSElem::normal_pow(n));
                if bs.membership_stable(&y).is_some() != (n == 0) {
                    spot_violations += 1;
                }
            }
        }
        AcylReport { paths_checked, path_violations, spot_checks: done, spot_violations }
    }
}

fn random_bs_elem(bs: &BSParams, rng: &mut impl rand::Rng) -> BSElem {
    let num = rng.gen_range(-60i64..=60);
    let den = rng.gen_range(0u32..=4);
    let k = rng.gen_range(-5i64..=5);
    BSElem::from_parts(bs, num, den, k)
}

/// Report of the free-subgroup certificate sweep.
#[derive(Clone, Debug)]
pub struct FreeCertReport {
    pub generator_g: HWord,
    pub generator_h: HWord,
    pub max_length: u32,
    /// Words checked per length 1..=max_length.
    pub counts: Vec<usize>,
    pub total_checked: usize,
    /// Any trivial word found (must be empty; one would falsify the
    /// implementation, not the construction).
    pub trivial_words: Vec<String>,
}

impl FreeCertReport {
    pub fn passed(&self) -> bool {
        self.trivial_words.is_empty()
    }
}

impl Explorer {
    /// Certificate that `<a, b>` contains a free subgroup: for elliptic `a`,
    /// `b` with disjoint fixed sets in the ball, form `g = b^l a^k` and
    /// `h = a^k b^l` and verify that every nonempty reduced word in
    /// `{g, h}^±1` of length at most `max_length` is nontrivial.
    pub fn free_certificate(
        &self,
        ball: &Ball,
        a: &HWord,
        b: &HWord,
        k: u32,
        l: u32,
        max_length: u32,
    ) -> crate::Result<FreeCertReport> {
        let fix_a = self.fixed_set(ball, a)?;
        let fix_b = self.fixed_set(ball, b)?;
        if fix_a.vertices.is_empty() || fix_b.vertices.is_empty() {
            return Err(Error::InvalidParameter(
                "both elements must be confirmed elliptic (a fixed vertex in the ball)".into(),
            ));
        }
        if !fix_a.disjoint_from(&fix_b, ball) {
            return Err(Error::InvalidParameter(
                "fixed sets intersect in the ball; the certificate requires them disjoint".into(),
            ));
        }
        let gw = b.pow(l as i64).concat(&a.pow(k as i64));
        let hw = a.pow(k as i64).concat(&b.pow(l as i64));
        let gens = [gw.clone(), hw.clone(), gw.inverse(), hw.inverse()];
        let inverse_of = |s: usize| (s + 2) % 4;
        let mut counts = vec![0usize; max_length as usize];
        let mut trivial_words = Vec::new();
        // depth-first over reduced words in the four symbols
        let mut stack: Vec<(Vec<usize>, HWord)> = (0..4)
            .map(|s| (vec![s], gens[s].clone()))
            .collect();
        while let Some((symbols, word)) = stack.pop() {
            let len = symbols.len();
            counts[len - 1] += 1;
            if self.group.is_trivial(&word) {
                let name: Vec<String> = symbols
                    .iter()
                    .map(|&s| ["g", "h", "g^-1", "h^-1"][s].to_string())
                    .collect();
                trivial_words.push(name.join(" "));
            }
            if (len as u32) < max_length {
                let last = *symbols.last().expect("nonempty");
                for (s, gen) in gens.iter().enumerate() {
                    if s == inverse_of(last) {
                        continue;
                    }
                    let mut next = symbols.clone();
                    next.push(s);
                    stack.push((next, word.concat(gen)));
                }
            }
        }
        let total_checked = counts.iter().sum();
        Ok(FreeCertReport {
            generator_g: gw,
            generator_h: hw,
            max_length,
            counts,
            total_checked,
            trivial_words,
        })
    }
}
