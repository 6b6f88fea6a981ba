//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime (run with `--nocapture` to see them). All checks are
//! exact; runtime budgets are asserted where stated.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use higman_core::complex::{Explorer, VertexId};
use higman_core::diagram::{
    self, fill_bounded, gauss_bonnet, is_reduced, patch_to_diagram, FillResult,
};
use higman_core::flats::{compare_patches, FlatBuilder, FlatSpec};
use higman_core::morphism::{
    automorphism_decompose, exponent_probe, hom_check, EndoCandidate, HomCheck,
};
use higman_core::words::{Gen, HWord, HigmanGroup};

fn higman() -> HigmanGroup {
    HigmanGroup::new([2, 2, 2, 2]).unwrap()
}

fn corollary_group() -> HigmanGroup {
    HigmanGroup::new([2, 3, 5, 7]).unwrap()
}

static BALL_2_3: Lazy<higman_core::complex::Ball> = Lazy::new(|| {
    Explorer::new(higman()).build_ball(2, 3).expect("ball(2,3)")
});

static BALL_2_2: Lazy<higman_core::complex::Ball> = Lazy::new(|| {
    Explorer::new(higman()).build_ball(2, 2).expect("ball(2,2)")
});

fn pass(n: u32, elapsed: Duration, summary: &str) {
    println!("[PASS] criterion {n}: {summary} ({elapsed:.2?})");
}

fn random_word(rng: &mut ChaCha8Rng, len: usize, max_exp: i64) -> HWord {
    let mut w = HWord::empty();
    for _ in 0..len {
        let g = Gen::new(rng.gen_range(0..4u8));
        let mut e = 0;
        while e == 0 {
            e = rng.gen_range(-max_exp..=max_exp);
        }
        w.push(g, BigInt::from(e));
    }
    w
}

#[test]
fn criterion_1_word_problem_soundness() {
    let t0 = Instant::now();
    let h = higman();
    let mut rng = ChaCha8Rng::seed_from_u64(101);

    for group in [higman(), corollary_group()] {
        for i in Gen::all() {
            assert!(group.is_trivial(&group.relator(i)), "relator {i}");
        }
    }

    // 500 random products of <= 10 conjugated relators, length <= 200
    for case in 0..500 {
        let mut w = HWord::empty();
        let t = rng.gen_range(1..=10);
        for _ in 0..t {
            let r = h.relator(Gen::new(rng.gen_range(0..4u8)));
            let r = if rng.gen_bool(0.5) { r.inverse() } else { r };
            let conj_len = rng.gen_range(0..=4);
            let u = random_word(&mut rng, conj_len, 2);
            w = w.concat(&r.conjugate_by(&u));
        }
        assert!(w.weight() <= 200, "case {case} got too long: {}", w.weight());
        assert!(h.is_trivial(&w), "conjugated relator product {case}");
    }

    // 500 random nonempty freely reduced F-words are nontrivial
    let mut done = 0;
    while done < 500 {
        let len = rng.gen_range(1..=12);
        let start = rng.gen_bool(0.5);
        let mut w = HWord::empty();
        for j in 0..len {
            let g = Gen::new(if (j % 2 == 0) == start { 0 } else { 2 });
            let mut e = 0;
            while e == 0 {
                e = rng.gen_range(-5i64..=5);
            }
            w.push(g, BigInt::from(e));
        }
        if w.is_empty() {
            continue;
        }
        done += 1;
        assert!(!h.is_trivial(&w), "F-word {w}");
    }

    // 200 alternating two-block words: (G_a block not in F) * (G_b block not in F)
    let mut done = 0;
    while done < 200 {
        let ga: HWord = {
            let len = rng.gen_range(1..=5);
            let mut w = random_word(&mut rng, len, 2)
                .letters()
                .iter()
                .filter(|l| l.gen.index() != 3)
                .map(|l| (l.gen, l.exp.clone()))
                .collect::<Vec<_>>()
                .into_iter()
                .fold(HWord::empty(), |mut acc, (g, e)| {
                    acc.push(g, e);
                    acc
                });
            w.push(Gen::new(1), BigInt::from(rng.gen_range(1..=2)));
            w
        };
        let gb: HWord = {
            let mut w = HWord::gen_pow(Gen::new(3), rng.gen_range(1..=2));
            for _ in 0..rng.gen_range(0..=3) {
                let g = Gen::new([2u8, 3, 0][rng.gen_range(0..3)]);
                let mut e = 0;
                while e == 0 {
                    e = rng.gen_range(-2i64..=2);
                }
                w.push(g, BigInt::from(e));
            }
            w
        };
        // require genuinely non-F blocks, certified inside the triangle factors
        if h.f_membership(&h.ga_reduce(&ga)).is_some() {
            continue;
        }
        if h.f_membership(&h.gb_reduce(&gb)).is_some() {
            continue;
        }
        done += 1;
        assert!(!h.is_trivial(&ga.concat(&gb)), "two-block word {ga} | {gb}");
    }

    let elapsed = t0.elapsed();
    assert!(elapsed <= Duration::from_secs(30), "budget exceeded: {elapsed:?}");
    pass(
        1,
        elapsed,
        "4+4 relators, 500 conjugated-relator products trivial, 500 F-words and 200 two-block words nontrivial",
    );
}

#[test]
fn criterion_2_bs_oracle_agreement() {
    use higman_core::bs::{BSElem, BSParams, BSWord, BsGen};
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut checked = 0;
    for m in [2u32, 3, 5, 7] {
        let bs = BSParams::new(m).unwrap();
        for _ in 0..250 {
            let len = rng.gen_range(0..=100);
            let mut w = BSWord::empty();
            for _ in 0..len {
                let gen = if rng.gen_bool(0.5) { BsGen::Stable } else { BsGen::Normal };
                let mut e = 0;
                while e == 0 {
                    e = rng.gen_range(-3i64..=3);
                }
                w.push(gen, BigInt::from(e));
            }
            let reduced = bs.britton_reduce(&w);
            assert_eq!(
                reduced.is_empty(),
                bs.eval(&w).is_identity(),
                "m={m} word {w}"
            );
            checked += 1;
        }
        // distortion identity a^k b a^-k = b^{m^k}, exact for k <= 30
        for k in 0..=30i64 {
            let lhs = bs.mul_all(&[
                BSElem::stable_pow(k),
                BSElem::normal_pow(1),
                BSElem::stable_pow(-k),
            ]);
            assert_eq!(lhs, BSElem::normal_pow(BigInt::from(m).pow(k as u32)));
        }
    }
    assert_eq!(checked, 1000);
    pass(2, t0.elapsed(), "1000 Britton/eval agreements and exact distortion to k=30");
}

#[test]
fn criterion_3_complex_audit() {
    let t0 = Instant::now();
    let x = Explorer::new(higman());
    let ball = &*BALL_2_3;

    // zero dedup violations: all listed squares pairwise distinct
    for i in 0..ball.squares.len() {
        for j in (i + 1)..ball.squares.len() {
            assert!(
                !x.group.equal(&ball.squares[i].word, &ball.squares[j].word),
                "dedup violation {i},{j}"
            );
        }
    }
    // every dual edge reproduces its adjacency
    for de in &ball.dual_edges {
        let lhs = ball.squares[de.from].word.concat(&HWord::gen_pow(de.gen, de.exp));
        assert!(x.group.equal(&lhs, &ball.squares[de.to].word));
    }

    // all truncated links bipartite (by construction), simple, girth >= 4,
    // with a witnessed 4-cycle at the base corners
    for (vi, _) in ball.vertices.iter().enumerate() {
        let link = x.link_graph(&ball.vertex_id(vi), 3, 2);
        assert!(link.simple, "link at vertex {vi} has a parallel edge");
        assert!(link.girth_at_least_four());
        assert!(link.connected);
    }
    for c in Gen::all() {
        let link = x.link_graph(&VertexId { word: HWord::empty(), corner: c }, 3, 2);
        assert!(link.four_cycle.is_some(), "4-cycle at base corner {c}");
    }

    // 100% of enumerated grids satisfy the label law, cross-checked by the
    // brute-force product
    let grids = x.enumerate_grids(ball);
    assert!(!grids.is_empty());
    for g in &grids {
        let check = x.classify_grid(g);
        assert!(check.law_holds && check.bs_product_trivial, "grid {g:?}");
    }

    // the non-completeness witness path is found (and the mirrored path extends)
    for c in Gen::all() {
        let v = VertexId { word: HWord::empty(), corner: c };
        assert!(x.verify_non_completeness(ball, &v), "corner {c}");
    }

    let elapsed = t0.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "budget exceeded: {elapsed:?}");
    pass(
        3,
        elapsed,
        &format!(
            "{} squares dedup-clean, {} links audited, {} grids law-checked, witness found",
            ball.squares.len(),
            ball.vertices.len(),
            grids.len()
        ),
    );
}

#[test]
fn criterion_4_theorem_a_desk_check() {
    let t0 = Instant::now();
    let x = Explorer::new(higman());
    let ball = &*BALL_2_2;
    let report = x.build_intersection_graphs(ball);
    assert!(
        report.isomorphic,
        "algebraic distorted-intersection graph differs from the oriented 1-skeleton"
    );
    assert_eq!(report.dist_edges.len(), ball.edges.len());
    let wit = report.gamma_edge.expect("an undistorted-undistorted pair at distance 2");
    assert!(wit.valid());
    pass(
        4,
        t0.elapsed(),
        &format!(
            "{} oriented edges match algebra vs complex; gamma edge {} -- {} exhibited and excluded",
            report.dist_edges.len(),
            wit.v1,
            wit.v2
        ),
    );
}

#[test]
fn criterion_5_flats() {
    let t0 = Instant::now();
    let group = higman();
    let fb = FlatBuilder::new(group);
    // Patches cover the L1 diamond |x|+|y| <= R. The full square [-R,R]^2 is
    // unrealizable for R >= 4: dual labels grow as exponential towers with
    // the distance from the axes (the divisibility cascade), and the square's
    // corners would need integers beyond any storable size. Every check below
    // lives on the diamond.
    let spec = FlatSpec::all_ones(Gen::new(0), 6);
    let patch = fb.build(&spec).expect("all-ones patch at R=6");

    let iso = fb.verify_local_isometry(&patch);
    assert!(iso.passed(), "local isometry violations: {:?}", iso.violations);

    // the +x axis carries the squares translated by a0^-1 a2^-1
    let delta = HWord::parse("a0^-1 a2^-1").unwrap();
    for n in 0..=3i32 {
        assert!(
            group.equal(&patch.cells[&(2 * n, 0)], &delta.pow(n as i64)),
            "axis square {n}"
        );
    }

    // diagram conversion: interior vertices flat, total exactly 2 pi
    let d = patch_to_diagram(&patch);
    let report = gauss_bonnet(&d).expect("patch diagram is a disc");
    assert_eq!(report.total, 4);
    for v in 0..d.vertex_count {
        if d.is_interior(v) {
            assert_eq!(report.per_vertex[v], 0, "interior vertex {v}");
        }
    }

    // label growth strictly increasing over rho in {2..6}
    let growth = fb.label_growth(&patch);
    for rho in 2..=6usize {
        assert!(
            growth[rho] > growth[rho - 1],
            "growth not strict at rho={rho}: {growth:?}"
        );
    }

    // two specs differing in one k^(3) entry share the half-flat (quadrants
    // 0 and 1 with all axes) and differ in the lower half. The changed entry
    // sits at n=5 so the difference lands near the -y axis, where labels
    // stay small; an early change would deepen the label tower beyond what
    // integers can represent.
    let mut seqs = spec.seqs.clone();
    seqs[3][4] = 2;
    let spec2 = FlatSpec::new(Gen::new(0), seqs, 6).unwrap();
    let patch2 = fb.build(&spec2).unwrap();
    let cmp = compare_patches(&group, &patch, &patch2);
    assert!(cmp.upper_half_agrees, "common half-flat");
    assert!(cmp.lower_difference.is_some(), "patches must differ below the axis");
    assert_eq!(cmp.quadrant_agreement, [true, true, false, false]);

    let elapsed = t0.elapsed();
    assert!(elapsed <= Duration::from_secs(60), "budget exceeded: {elapsed:?}");
    pass(
        5,
        elapsed,
        &format!(
            "R=6 diamond: isometry at {} vertices, axis squares, flat diagram, growth {:?}..., half-flat sharing",
            iso.vertices_checked,
            &growth[..4]
        ),
    );
}

#[test]
fn criterion_6_gauss_bonnet() {
    let t0 = Instant::now();
    let mut fills = 0;
    for params in [[2u32, 2, 2, 2], [2, 3, 5, 7]] {
        let group = HigmanGroup::new(params).unwrap();
        for i in Gen::all() {
            match fill_bounded(&group, &group.relator(i), 16) {
                FillResult::Filled(d) => {
                    assert!(is_reduced(&group, &d));
                    let report = gauss_bonnet(&d).expect("filled diagram");
                    assert_eq!(report.total, 4, "total 2 pi");
                    assert!(report.interior_nonpositive);
                    fills += 1;
                }
                other => panic!("relator {i} at {params:?} not filled: {other:?}"),
            }
        }
    }
    // patch conversion at both parameter tuples
    for params in [[2u32, 2, 2, 2], [2, 3, 5, 7]] {
        let group = HigmanGroup::new(params).unwrap();
        let fb = FlatBuilder::new(group);
        let patch = fb.build(&FlatSpec::all_ones(Gen::new(1), 3)).unwrap();
        let d = patch_to_diagram(&patch);
        let report = gauss_bonnet(&d).unwrap();
        assert_eq!(report.total, 4);
        assert!(report.interior_nonpositive);
    }
    // reference values: single square and 2x2 grid
    let mut cells = std::collections::BTreeMap::new();
    cells.insert((0, 0), HWord::empty());
    let single = diagram::from_cells(&cells);
    let report = gauss_bonnet(&single).unwrap();
    assert_eq!(report.total, 4);
    assert_eq!(report.per_vertex, vec![1, 1, 1, 1]);
    let group = higman();
    let fb = FlatBuilder::new(group);
    let patch = fb.build(&FlatSpec::all_ones(Gen::new(0), 2)).unwrap();
    let mut grid_cells = std::collections::BTreeMap::new();
    for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        grid_cells.insert((x, y), patch.cells[&(x, y)].clone());
    }
    let grid = diagram::from_cells(&grid_cells);
    let report = gauss_bonnet(&grid).unwrap();
    assert_eq!(report.total, 4);
    let center = (0..grid.vertex_count).find(|&v| grid.is_interior(v)).unwrap();
    assert_eq!(report.per_vertex[center], 0);
    assert_eq!(report.per_vertex.iter().filter(|&&k| k == 1).count(), 4);
    pass(6, t0.elapsed(), &format!("{fills} relator fills plus patch, square and grid references, all exactly 2 pi"));
}

#[test]
fn criterion_7_acylindricity_audit() {
    let t0 = Instant::now();
    let x = Explorer::new(higman());
    let ball = &*BALL_2_2;
    let report = x.acylindricity_audit(ball, 707, 200);
    assert!(report.passed(), "violations: {:?}", report.path_violations);
    assert_eq!(report.spot_checks, 200);
    assert!(report.paths_checked > 0);
    pass(
        7,
        t0.elapsed(),
        &format!(
            "{} embedded 3-paths structurally sound, 200 conjugate-cyclic spot checks clean",
            report.paths_checked
        ),
    );
}

#[test]
fn criterion_8_free_certificate() {
    let t0 = Instant::now();
    let x = Explorer::new(higman());
    let ball = &*BALL_2_3;
    let a = HWord::parse("a1").unwrap();
    let b = HWord::parse("a3").unwrap().conjugate_by(&HWord::parse("a0 a2").unwrap());
    let report = x.free_certificate(ball, &a, &b, 1, 1, 6).expect("certificate preconditions");
    assert!(report.passed(), "trivial words found: {:?}", report.trivial_words);
    assert_eq!(report.counts[5], 972, "length-6 stratum");
    assert_eq!(report.total_checked, 1456, "all nonempty reduced words up to length 6");
    let elapsed = t0.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "budget exceeded: {elapsed:?}");
    pass(
        8,
        elapsed,
        "fixed sets disjoint; all 972 length-6 (1456 total) words in g,h nontrivial",
    );
}

#[test]
fn criterion_9_morphism_rigidity() {
    let t0 = Instant::now();
    for group in [higman(), corollary_group()] {
        let vals = [-3i64, -2, -1, 1, 2, 3];
        let mut homs = Vec::new();
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for &d in &vals {
                        if exponent_probe(&group, [a, b, c, d]).is_hom() {
                            homs.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        assert_eq!(homs, vec![[1, 1, 1, 1]], "params {:?}", group.params());
    }
    // cyclic shifts
    let h = higman();
    for k in 0..4u8 {
        assert_eq!(hom_check(&h, &EndoCandidate::shift(k)), HomCheck::Hom, "shift {k}");
    }
    let g = corollary_group();
    assert_eq!(hom_check(&g, &EndoCandidate::shift(0)), HomCheck::Hom);
    for k in 1..4u8 {
        assert!(matches!(hom_check(&g, &EndoCandidate::shift(k)), HomCheck::NotHom { .. }));
    }
    // recover 20 random inner-compose-shift candidates with |g| <= 2
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let letters: Vec<(Gen, i64)> =
        (0..4u8).flat_map(|i| [(Gen::new(i), 1i64), (Gen::new(i), -1)]).collect();
    for case in 0..20 {
        let k = rng.gen_range(0..4u8);
        let len = rng.gen_range(0..=2);
        let mut gword = HWord::empty();
        while gword.weight() < len {
            let (gen, e) = letters[rng.gen_range(0..letters.len())];
            let cand = gword.concat(&HWord::gen_pow(gen, e));
            if cand.weight() > gword.weight() {
                gword = cand;
            }
        }
        let candidate = EndoCandidate::shift(k).conjugated_by(&gword);
        let (k_found, g_found) =
            automorphism_decompose(&h, &candidate, 3).expect("decomposition exists");
        assert_eq!(k_found, k, "case {case}");
        assert!(h.equal(&g_found, &gword), "case {case}: conjugator is unique");
    }
    pass(
        9,
        t0.elapsed(),
        "exponent probes pass only at (1,1,1,1); shifts as predicted; 20 decompositions recovered",
    );
}
