//! Construction of isometrically embedded flats.
//!
//! A flat patch is a square grid `[-R,R]^2` of complex squares built from
//! four sequences of positive integers, one per plane axis direction. Edge
//! types in the plane are assigned by parity: the vertical edge between
//! columns `u` and `u+1` has type `base` for even `u` and `base+2` for odd
//! `u`; the horizontal edge between rows `v` and `v+1` has type `base+1` or
//! `base+3` by the parity of `v` (the reflection rule, realized as parity
//! arithmetic on coordinates).
//!
//! The boundary axes carry the prescribed words: walking outward along axis
//! direction `d`, the n-th step multiplies by `a_{base+d}^{-k_n}` for odd n
//! and `a_{base+d+2}^{-k_n}` for even n. Quadrant interiors are filled row by
//! row: the fourth square of each 2x2 corner is the unique solution of the
//! grid label law in the corner vertex's Baumslag-Solitar coordinates, and
//! the two derived labels stay negative in the outward direction (the
//! inductive positivity invariant). Both fill routes, through either known
//! neighbor, are computed and compared; a mismatch is a hard error.
//!
//! A patch covers the L1 ball `|x| + |y| <= R`, the region on which the
//! label-growth table lives. The region choice is forced by the divisibility
//! cascade: around each corner vertex one derived label is divisible by
//! `m^|n|` for an existing label `n`, so label magnitudes form exponential
//! towers in the L-infinity radius. Cells of the square `[-R,R]^2` beyond the
//! diamond (for R >= 4 with all-ones data) would need integers with more
//! bits than can be stored; inside the diamond the worst case at R = 6 is a
//! few kilobytes.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

use crate::words::{Gen, HWord, HigmanGroup};
use crate::Error;

/// Finite prefix data for one flat: base type, the four axis sequences
/// (entries >= 1, lengths >= radius), and the patch radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSpec {
    pub base: Gen,
    /// `seqs[d]` parameterizes plane axis direction d (0:+x, 1:+y, 2:-x, 3:-y).
    pub seqs: [Vec<u64>; 4],
    pub radius: u32,
}

impl FlatSpec {
    pub fn new(base: Gen, seqs: [Vec<u64>; 4], radius: u32) -> crate::Result<Self> {
        for (d, s) in seqs.iter().enumerate() {
            if s.len() < radius as usize {
                return Err(Error::InvalidParameter(format!(
                    "axis sequence {d} has {} entries, radius {radius} requires at least {radius}",
                    s.len()
                )));
            }
            if s.contains(&0) {
                return Err(Error::InvalidParameter(format!(
                    "axis sequence {d} must have positive entries"
                )));
            }
        }
        Ok(FlatSpec { base, seqs, radius })
    }

    /// The all-ones spec at a given base and radius.
    pub fn all_ones(base: Gen, radius: u32) -> Self {
        let seq = vec![1u64; radius as usize];
        FlatSpec { base, seqs: [seq.clone(), seq.clone(), seq.clone(), seq], radius }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Boundary,
    Derived,
}

/// Plane cell coordinates.
pub type Cell = (i32, i32);

/// A built patch: cell words on the diamond `|x|+|y| <= R` with dual labels
/// between adjacent cells (stored in both directions) and provenance marks.
#[derive(Clone, Debug)]
pub struct FlatPatch {
    pub spec: FlatSpec,
    pub cells: BTreeMap<Cell, HWord>,
    pub labels: BTreeMap<(Cell, Cell), (Gen, BigInt)>,
    pub provenance: BTreeMap<Cell, Provenance>,
}

impl FlatPatch {
    pub fn radius(&self) -> i32 {
        self.spec.radius as i32
    }

    pub fn contains(&self, x: i32, y: i32) -> bool {
        x.abs() + y.abs() <= self.radius()
    }

    pub fn cell(&self, x: i32, y: i32) -> Option<&HWord> {
        self.cells.get(&(x, y))
    }

    pub fn label(&self, from: (i32, i32), to: (i32, i32)) -> Option<&(Gen, BigInt)> {
        self.labels.get(&(from, to))
    }

    /// Lattice points all four of whose cells are in the patch.
    pub fn interior_vertices(&self) -> Vec<(i32, i32)> {
        let r = self.radius();
        let mut out = Vec::new();
        for x in -r..r {
            for y in -r..r {
                if [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
                    .iter()
                    .all(|&(a, b)| self.contains(a, b))
                {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Builder for flat patches over a fixed group.
#[derive(Clone, Copy, Debug)]
pub struct FlatBuilder {
    pub group: HigmanGroup,
}

impl FlatBuilder {
    pub fn new(group: HigmanGroup) -> Self {
        FlatBuilder { group }
    }

    /// Type of the vertical edge between columns `u` and `u+1`.
    pub fn vtype(&self, spec: &FlatSpec, u: i32) -> Gen {
        if u.rem_euclid(2) == 0 {
            spec.base
        } else {
            spec.base.shift(2)
        }
    }

    /// Type of the horizontal edge between rows `v` and `v+1`.
    pub fn htype(&self, spec: &FlatSpec, v: i32) -> Gen {
        if v.rem_euclid(2) == 0 {
            spec.base.shift(1)
        } else {
            spec.base.shift(3)
        }
    }

    /// Generator used by the n-th step (n >= 1) along axis direction `d`.
    fn axis_gen(&self, spec: &FlatSpec, d: u8, n: u32) -> Gen {
        let offset = if n % 2 == 1 { 0 } else { 2 };
        spec.base.shift(d as i8 + offset)
    }

    fn axis_cell(d: u8, n: i32) -> (i32, i32) {
        match d {
            0 => (n, 0),
            1 => (0, n),
            2 => (-n, 0),
            3 => (0, -n),
            _ => unreachable!(),
        }
    }

    /// Build the four boundary axes: the square at distance n along axis `d`
    /// carries the word `a_{i+d}^{-k_1} a_{i+d+2}^{-k_2} ...` (n factors).
    pub fn build_boundary(&self, spec: &FlatSpec) -> FlatPatch {
        let mut patch = FlatPatch {
            spec: spec.clone(),
            cells: BTreeMap::new(),
            labels: BTreeMap::new(),
            provenance: BTreeMap::new(),
        };
        patch.cells.insert((0, 0), HWord::empty());
        patch.provenance.insert((0, 0), Provenance::Boundary);
        for d in 0..4u8 {
            let mut word = HWord::empty();
            for n in 1..=spec.radius {
                let g = self.axis_gen(spec, d, n);
                let k = spec.seqs[d as usize][(n - 1) as usize];
                word = word.concat(&HWord::gen_pow(g, -(k as i64)));
                let cell = Self::axis_cell(d, n as i32);
                let prev = Self::axis_cell(d, n as i32 - 1);
                patch.cells.insert(cell, word.clone());
                patch.provenance.insert(cell, Provenance::Boundary);
                patch.labels.insert((prev, cell), (g, BigInt::from(-(k as i64))));
                patch.labels.insert((cell, prev), (g, BigInt::from(k as i64)));
            }
        }
        patch
    }

    /// Solve `a_p^alpha a_q^gamma = a_q^beta a_p^delta` for `(gamma, delta)`
    /// in the vertex group containing both edge types (`p`, `q` adjacent mod
    /// 4). An integrality failure is an error; the inductive positivity
    /// invariant rules it out.
    fn solve_corner(
        &self,
        p: Gen,
        alpha: &BigInt,
        q: Gen,
        beta: &BigInt,
    ) -> crate::Result<(BigInt, BigInt)> {
        let pow = |c: Gen, e: &BigInt| -> crate::Result<BigInt> {
            let m = BigInt::from(self.group.m(c));
            let e = u32::try_from(e.magnitude())
                .ok()
                .filter(|&e| e <= 1 << 20)
                .ok_or_else(|| {
                    Error::ResourceLimit(
                        "flat label exponent exceeds the representable range \
                         (labels grow as exponential towers away from the axes)"
                            .into(),
                    )
                })?;
            Ok(m.pow(e))
        };
        if q == p.shift(1) {
            // p is the stable letter of BS(1, m_p): delta = alpha,
            // gamma = beta * m^-alpha
            let gamma = if alpha.is_negative() || alpha.is_zero() {
                beta * pow(p, alpha)?
            } else {
                let scale = pow(p, alpha)?;
                if (beta % &scale).is_zero() {
                    beta / &scale
                } else {
                    return Err(Error::InvariantViolation(format!(
                        "grid completion needs {beta}/{scale}, not an integer"
                    )));
                }
            };
            Ok((gamma, alpha.clone()))
        } else if p == q.shift(1) {
            // q is the stable letter: gamma = beta, delta = alpha * m^-beta
            let delta = if beta.is_negative() || beta.is_zero() {
                alpha * pow(q, beta)?
            } else {
                let scale = pow(q, beta)?;
                if (alpha % &scale).is_zero() {
                    alpha / &scale
                } else {
                    return Err(Error::InvariantViolation(format!(
                        "grid completion needs {alpha}/{scale}, not an integer"
                    )));
                }
            };
            Ok((beta.clone(), delta))
        } else {
            Err(Error::InvariantViolation(format!(
                "edge types {p} and {q} do not share a vertex group"
            )))
        }
    }

    /// Fill the four quadrant interiors row by row. Each new cell is the
    /// fourth square of a 2x2 corner whose other three squares are known;
    /// both derivation routes are compared and the outward labels must stay
    /// negative (the extension lemma's positivity, seen from the far side).
    pub fn extend(&self, patch: &mut FlatPatch) -> crate::Result<()> {
        let r = patch.radius();
        for (sx, sy) in [(1i32, 1i32), (-1, 1), (-1, -1), (1, -1)] {
            for dy in 1..=r {
                for dx in 1..=r {
                    if dx + dy > r {
                        break; // outside the diamond
                    }
                    let (x, y) = (sx * dx, sy * dy);
                    let diag = (x - sx, y - sy);
                    let nx = (x - sx, y);
                    let ny = (x, y - sy);
                    let tv = self.vtype(&patch.spec, x.min(x - sx));
                    let th = self.htype(&patch.spec, y.min(y - sy));
                    let (g_a, alpha) = patch.labels[&(diag, ny)].clone();
                    let (g_b, beta) = patch.labels[&(diag, nx)].clone();
                    debug_assert_eq!(g_a, tv);
                    debug_assert_eq!(g_b, th);
                    if !alpha.is_negative() || !beta.is_negative() {
                        return Err(Error::InvariantViolation(format!(
                            "positivity invariant violated at ({x},{y}): outward labels {alpha}, {beta}"
                        )));
                    }
                    let (gamma, delta) = self.solve_corner(tv, &alpha, th, &beta)?;
                    if !gamma.is_negative() || !delta.is_negative() {
                        return Err(Error::InvariantViolation(format!(
                            "derived labels {gamma}, {delta} at ({x},{y}) are not outward-negative"
                        )));
                    }
                    // two routes to the new square; they must agree
                    let via_ny = patch.cells[&ny].concat(&HWord::gen_pow(th, gamma.clone()));
                    let via_nx = patch.cells[&nx].concat(&HWord::gen_pow(tv, delta.clone()));
                    if !self.group.equal(&via_ny, &via_nx) {
                        return Err(Error::InvariantViolation(format!(
                            "fill routes disagree at ({x},{y})"
                        )));
                    }
                    patch.cells.insert((x, y), via_ny);
                    patch.provenance.insert((x, y), Provenance::Derived);
                    patch.labels.insert((ny, (x, y)), (th, gamma.clone()));
                    patch.labels.insert(((x, y), ny), (th, -gamma));
                    patch.labels.insert((nx, (x, y)), (tv, delta.clone()));
                    patch.labels.insert(((x, y), nx), (tv, -delta));
                }
            }
        }
        Ok(())
    }

    /// Build boundary, verify the gluing identifications, and extend.
    ///
    /// The gluing identifies each quadrant's vertical axis with the next
    /// quadrant's horizontal axis. Both copies are recomputed from their own
    /// quadrant formula and compared square by square.
    pub fn build(&self, spec: &FlatSpec) -> crate::Result<FlatPatch> {
        let mut patch = self.build_boundary(spec);
        for d in 0..4u8 {
            let shared = (d + 1) % 4;
            let mut word = HWord::empty();
            for n in 1..=spec.radius {
                let g = self.axis_gen(spec, shared, n);
                let k = spec.seqs[shared as usize][(n - 1) as usize];
                word = word.concat(&HWord::gen_pow(g, -(k as i64)));
                let cell = Self::axis_cell(shared, n as i32);
                let stored = patch.cells.get(&cell).expect("axis cell built");
                if !self.group.equal(stored, &word) {
                    return Err(Error::InvariantViolation(format!(
                        "glued axis squares disagree along axis {shared}"
                    )));
                }
            }
        }
        self.extend(&mut patch)?;
        Ok(patch)
    }

    /// Re-verify the grid label law on every 2x2 sub-grid of the patch,
    /// including the brute-force product identity in coordinates.
    pub fn verify_grid_law(&self, patch: &FlatPatch) -> crate::Result<()> {
        use crate::bs::BSElem;
        for (x, y) in patch.interior_vertices() {
            {
                let a = (x, y);
                let b = (x + 1, y);
                let c = (x + 1, y + 1);
                let d = (x, y + 1);
                let (tv, p1) = patch.labels[&(a, b)].clone();
                let (th, q1) = patch.labels[&(b, c)].clone();
                let (tv2, p2) = patch.labels[&(c, d)].clone();
                let (th2, q2) = patch.labels[&(d, a)].clone();
                if tv != tv2 || th != th2 {
                    return Err(Error::InvariantViolation(format!(
                        "edge types around ({x},{y}) do not alternate"
                    )));
                }
                let corner = if th == tv.shift(1) { tv } else { th };
                let bs = self.group.bs(corner);
                let as_elem = |g: Gen, e: &BigInt| {
                    if g == corner {
                        BSElem::stable_pow(e.clone())
                    } else {
                        BSElem::normal_pow(e.clone())
                    }
                };
                let prod = bs.mul_all(&[
                    as_elem(tv, &p1),
                    as_elem(th, &q1),
                    as_elem(tv, &p2),
                    as_elem(th, &q2),
                ]);
                if !prod.is_identity() {
                    return Err(Error::InvariantViolation(format!(
                        "grid label product nontrivial at ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Result of the local-isometry verification at interior vertices.
#[derive(Clone, Debug, Default)]
pub struct LocalIsometryReport {
    pub vertices_checked: usize,
    pub violations: Vec<String>,
}

impl LocalIsometryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FlatBuilder {
    /// For every interior vertex of the patch: the four incident cells map
    /// to four distinct squares, the adjacencies recomputed from the cell
    /// words have the prescribed edge types, and the two parallel edges on
    /// each side map to distinct edges (link injectivity). Together with the
    /// simplicity and bipartiteness of links this makes the image a full
    /// 4-cycle: the square on a (vertical, horizontal) edge pair is unique
    /// because the stable and normal cyclic subgroups of the corner group
    /// intersect trivially.
    pub fn verify_local_isometry(&self, patch: &FlatPatch) -> LocalIsometryReport {
        let g = &self.group;
        let mut report = LocalIsometryReport::default();
        for (x, y) in patch.interior_vertices() {
            {
                report.vertices_checked += 1;
                let cells = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)];
                let words: Vec<&HWord> = cells.iter().map(|c| &patch.cells[c]).collect();
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        if g.equal(words[i], words[j]) {
                            report.violations.push(format!(
                                "vertex ({x},{y}): cells {:?} and {:?} have equal images",
                                cells[i], cells[j]
                            ));
                        }
                    }
                }
                let tv = self.vtype(&patch.spec, x);
                let th = self.htype(&patch.spec, y);
                // adjacency recomputed from the words, not the stored labels
                let pairs = [
                    ((x, y), (x + 1, y), tv),
                    ((x, y + 1), (x + 1, y + 1), tv),
                    ((x, y), (x, y + 1), th),
                    ((x + 1, y), (x + 1, y + 1), th),
                ];
                for (a, b, t) in pairs {
                    let quot = patch.cells[&a].inverse().concat(&patch.cells[&b]);
                    match g.edge_membership(&quot, t) {
                        Some(n) if !n.is_zero() => {}
                        _ => report.violations.push(format!(
                            "vertex ({x},{y}): cells {a:?},{b:?} are not type-{t} adjacent"
                        )),
                    }
                }
                // link injectivity: opposite parallel edges are distinct
                let bottom = &patch.cells[&(x, y)];
                let top = &patch.cells[&(x, y + 1)];
                if g.edge_membership(&bottom.inverse().concat(top), tv).is_some() {
                    report
                        .violations
                        .push(format!("vertex ({x},{y}): the two vertical edges coincide"));
                }
                let left = &patch.cells[&(x, y)];
                let right = &patch.cells[&(x + 1, y)];
                if g.edge_membership(&left.inverse().concat(right), th).is_some() {
                    report
                        .violations
                        .push(format!("vertex ({x},{y}): the two horizontal edges coincide"));
                }
            }
        }
        report
    }

    /// Maximum absolute dual-label exponent within each L1 radius:
    /// `table[rho]` covers dual edges with both cells at L1 distance <= rho.
    pub fn label_growth(&self, patch: &FlatPatch) -> Vec<BigInt> {
        let r = patch.radius() as u32;
        let mut table = vec![BigInt::zero(); (r + 1) as usize];
        for (&((x1, y1), (x2, y2)), (_, exp)) in &patch.labels {
            let rho = (x1.abs() + y1.abs()).max(x2.abs() + y2.abs()) as usize;
            if rho < table.len() {
                let mag = exp.abs();
                if mag > table[rho] {
                    table[rho] = mag;
                }
            }
        }
        for i in 1..table.len() {
            if table[i - 1] > table[i] {
                table[i] = table[i - 1].clone();
            }
        }
        table
    }
}

/// Cellwise comparison of two patches of equal radius.
#[derive(Clone, Debug)]
pub struct PatchComparison {
    /// Do all cells with y >= 0 agree (the shared half-flat)?
    pub upper_half_agrees: bool,
    /// Some cell with y < 0 where the patches differ.
    pub lower_difference: Option<(i32, i32)>,
    /// Per closed quadrant (+x+y, -x+y, -x-y, +x-y): do all cells agree?
    pub quadrant_agreement: [bool; 4],
}

pub fn compare_patches(group: &HigmanGroup, p1: &FlatPatch, p2: &FlatPatch) -> PatchComparison {
    assert_eq!(p1.spec.radius, p2.spec.radius);
    let mut upper = true;
    let mut lower_diff = None;
    let mut quadrant = [true; 4];
    for (&(x, y), w1) in &p1.cells {
        let w2 = &p2.cells[&(x, y)];
        if !group.equal(w1, w2) {
            if y >= 0 {
                upper = false;
            } else if lower_diff.is_none() {
                lower_diff = Some((x, y));
            }
            let in_quadrant = [
                x >= 0 && y >= 0,
                x <= 0 && y >= 0,
                x <= 0 && y <= 0,
                x >= 0 && y <= 0,
            ];
            for (q, &inq) in in_quadrant.iter().enumerate() {
                if inq {
                    quadrant[q] = false;
                }
            }
        }
    }
    PatchComparison {
        upper_half_agrees: upper,
        lower_difference: lower_diff,
        quadrant_agreement: quadrant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builder(m: [u32; 4]) -> FlatBuilder {
        FlatBuilder::new(HigmanGroup::new(m).unwrap())
    }

    fn w(s: &str) -> HWord {
        HWord::parse(s).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let b = builder([2, 2, 2, 2]);
        let spec = FlatSpec::all_ones(Gen::new(0), 3);
        let patch = b.build_boundary(&spec);
        assert_eq!(patch.cells[&(0, 0)], HWord::empty());
        assert_eq!(patch.cells[&(1, 0)], w("a0^-1"));
        assert_eq!(patch.cells[&(2, 0)], w("a0^-1 a2^-1"));
        assert_eq!(patch.cells[&(0, 1)], w("a1^-1"));
        assert_eq!(patch.cells[&(0, 2)], w("a1^-1 a3^-1"));
        assert_eq!(patch.cells[&(-1, 0)], w("a2^-1"));
        assert_eq!(patch.cells[&(0, -1)], w("a3^-1"));
    }

    #[test]
    fn extension_first_cell() {
        let b = builder([2, 2, 2, 2]);
        let spec = FlatSpec::all_ones(Gen::new(0), 2);
        let patch = b.build(&spec).unwrap();
        // C_{1,1} = a1^-1 a0^-1 C0, with label a1^2 on the dual edge back to C_{1,0}
        assert!(b.group.equal(&patch.cells[&(1, 1)], &w("a1^-1 a0^-1")));
        let (g, e) = patch.labels[&((1, 1), (1, 0))].clone();
        assert_eq!((g, e), (Gen::new(1), BigInt::from(2)));
    }

    #[test]
    fn radius_zero_is_single_square() {
        let b = builder([2, 3, 5, 7]);
        let spec = FlatSpec::all_ones(Gen::new(2), 0);
        let patch = b.build(&spec).unwrap();
        assert_eq!(patch.cells.len(), 1);
        assert!(b.label_growth(&patch).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn translation_axis_squares_of_all_ones_patch() {
        // the even +x-axis cells carry (a0^-1 a2^-1)^n, the square sequence
        // translated by the hyperbolic element a0^-1 a2^-1
        let b = builder([2, 2, 2, 2]);
        let spec = FlatSpec::all_ones(Gen::new(0), 6);
        let patch = b.build(&spec).unwrap();
        for n in 0..=3 {
            let expect = w("a0^-1 a2^-1").pow(n);
            assert!(
                b.group.equal(&patch.cells[&(2 * n as i32, 0)], &expect),
                "axis cell {n}"
            );
        }
    }

    #[test]
    fn grid_law_holds_on_patch() {
        let b = builder([2, 2, 2, 2]);
        let patch = b.build(&FlatSpec::all_ones(Gen::new(0), 3)).unwrap();
        b.verify_grid_law(&patch).unwrap();
        let b = builder([2, 3, 5, 7]);
        let patch = b.build(&FlatSpec::all_ones(Gen::new(1), 2)).unwrap();
        b.verify_grid_law(&patch).unwrap();
    }

    #[test]
    fn local_isometry_passes_and_catches_corruption() {
        let b = builder([2, 2, 2, 2]);
        let mut patch = b.build(&FlatSpec::all_ones(Gen::new(0), 2)).unwrap();
        let report = b.verify_local_isometry(&patch);
        assert!(report.passed(), "violations: {:?}", report.violations);
        // corrupt one square by an a0-translate
        let cell = patch.cells[&(1, 1)].concat(&HWord::gen_pow(Gen::new(0), 1));
        patch.cells.insert((1, 1), cell);
        let report = b.verify_local_isometry(&patch);
        assert!(!report.passed());
    }

    #[test]
    fn label_growth_all_ones() {
        let b = builder([2, 2, 2, 2]);
        let patch = b.build(&FlatSpec::all_ones(Gen::new(0), 4)).unwrap();
        let table = b.label_growth(&patch);
        // axes carry 1s; the first derived label m0 = 2 appears at rho = 2
        assert_eq!(table[1], BigInt::from(1));
        assert_eq!(table[2], BigInt::from(2));
        // strictly increasing from rho = 2 on
        for rho in 2..table.len() {
            assert!(table[rho] > table[rho - 1], "rho={rho}: {:?}", table);
        }
    }

    #[test]
    fn patches_share_a_half_flat() {
        let b = builder([2, 2, 2, 2]);
        let spec1 = FlatSpec::all_ones(Gen::new(0), 3);
        let mut seqs = spec1.seqs.clone();
        seqs[3][1] = 2; // change one entry of the -y axis sequence
        let spec2 = FlatSpec::new(Gen::new(0), seqs, 3).unwrap();
        let p1 = b.build(&spec1).unwrap();
        let p2 = b.build(&spec2).unwrap();
        let cmp = compare_patches(&b.group, &p1, &p2);
        assert!(cmp.upper_half_agrees);
        assert!(cmp.lower_difference.is_some());
        assert!(cmp.quadrant_agreement[0]);
        assert!(cmp.quadrant_agreement[1]);
        assert!(!cmp.quadrant_agreement[2]);
        assert!(!cmp.quadrant_agreement[3]);
    }

    #[test]
    fn patch_squares_appear_in_ball() {
        use crate::complex::Explorer;
        let b = builder([2, 2, 2, 2]);
        let patch = b.build(&FlatSpec::all_ones(Gen::new(0), 2)).unwrap();
        let x = Explorer::new(b.group);
        let ball = x.build_ball(2, 2).unwrap();
        for (&cell, word) in &patch.cells {
            let found = ball.squares.iter().any(|s| b.group.equal(&s.word, word));
            assert!(found, "cell {cell:?} missing from ball");
        }
        // patch adjacencies appear among ball dual edges
        for (&(from, to), (g, e)) in &patch.labels {
            let fi = ball
                .squares
                .iter()
                .position(|s| b.group.equal(&s.word, &patch.cells[&from]))
                .unwrap();
            let ti = ball
                .squares
                .iter()
                .position(|s| b.group.equal(&s.word, &patch.cells[&to]))
                .unwrap();
            let e64 = i64::try_from(e).unwrap();
            assert!(
                ball.dual_edges
                    .iter()
                    .any(|de| de.from == fi && de.to == ti && de.gen == *g && de.exp == e64),
                "label {from:?}->{to:?} missing"
            );
        }
    }
}
