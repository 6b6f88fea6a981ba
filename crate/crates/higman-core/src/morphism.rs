//! Desk-scale verification of endomorphism rigidity: homomorphism checking
//! by relator substitution, the exponent-rigidity probe with its two Britton
//! cases, fixed-vertex images of the special subgroups, and decomposition of
//! automorphism candidates into an inner part and a cyclic shift.


use crate::complex::{Ball, Explorer};
use crate::words::{Gen, HWord, HigmanGroup};

/// Candidate endomorphism: images of the four standard generators.
#[derive(Clone, Debug)]
pub struct EndoCandidate {
    pub images: [HWord; 4],
}

impl EndoCandidate {
    pub fn identity() -> Self {
        EndoCandidate {
            images: [
                HWord::gen_pow(Gen::new(0), 1),
                HWord::gen_pow(Gen::new(1), 1),
                HWord::gen_pow(Gen::new(2), 1),
                HWord::gen_pow(Gen::new(3), 1),
            ],
        }
    }

    /// `a_i -> a_{i+k}`.
    pub fn shift(k: u8) -> Self {
        let mut images = EndoCandidate::identity().images;
        for (i, img) in images.iter_mut().enumerate() {
            *img = HWord::gen_pow(Gen::new(i as u8).shift(k as i8), 1);
        }
        EndoCandidate { images }
    }

    /// Conjugation of every image by `g` (post-composition with an inner
    /// automorphism).
    pub fn conjugated_by(&self, g: &HWord) -> Self {
        let mut images = self.images.clone();
        for img in images.iter_mut() {
            *img = img.conjugate_by(g);
        }
        EndoCandidate { images }
    }

    /// `a_i -> a_i^{n_i}`.
    pub fn exponents(n: [i64; 4]) -> Self {
        let mut images = EndoCandidate::identity().images;
        for (i, img) in images.iter_mut().enumerate() {
            *img = HWord::gen_pow(Gen::new(i as u8), n[i]);
        }
        EndoCandidate { images }
    }

    /// `(self ∘ other)(a_i) = self(other(a_i))`.
    pub fn compose(&self, other: &EndoCandidate) -> Self {
        let images = [
            other.images[0].substitute(&self.images),
            other.images[1].substitute(&self.images),
            other.images[2].substitute(&self.images),
            other.images[3].substitute(&self.images),
        ];
        EndoCandidate { images }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Hom,
    /// All four relators hold and every image is trivial.
    TrivialHom,
    /// Some relator image is nontrivial; the witness is the substituted word.
    NotHom { relator: Gen, witness: HWord },
}

/// Substitute the candidate into the four defining relators.
pub fn hom_check(group: &HigmanGroup, c: &EndoCandidate) -> HomCheck {
    for i in Gen::all() {
        let image = group.relator(i).substitute(&c.images);
        if !group.is_trivial(&image) {
            return HomCheck::NotHom { relator: i, witness: image };
        }
    }
    if c.images.iter().all(|w| group.is_trivial(w)) {
        HomCheck::TrivialHom
    } else {
        HomCheck::Hom
    }
}

/// The two cases of the exponent-rigidity argument for a failing relator
/// `a_i a_{i+1} a_i^-1 a_{i+1}^{-m_i}` under `a_j -> a_j^{n_j}`: writing
/// `n_{i+1} = m_i^{k_i} l_i` with `m_i` not dividing `l_i`, either
/// `k_i < -n_i` (the image keeps stable letters and is pinch-free) or
/// `k_i >= -n_i` (the image collapses to a nonzero power of `a_{i+1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrittonCase {
    PinchFree,
    PurePower,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub exponents: [i64; 4],
    pub outcome: HomCheck,
    /// Per failing relator: which case the witness falls into.
    pub cases: Vec<(Gen, BrittonCase)>,
}

impl ProbeReport {
    pub fn is_hom(&self) -> bool {
        matches!(self.outcome, HomCheck::Hom)
    }
}

/// Run `hom_check` on `a_i -> a_i^{n_i}` and classify every failing relator.
pub fn exponent_probe(group: &HigmanGroup, n: [i64; 4]) -> ProbeReport {
    assert!(n.iter().all(|&x| x != 0), "exponents must be nonzero");
    let c = EndoCandidate::exponents(n);
    let outcome = hom_check(group, &c);
    let mut cases = Vec::new();
    for i in Gen::all() {
        let image = group.relator(i).substitute(&c.images);
        if group.is_trivial(&image) {
            continue;
        }
        let idx = i.index() as usize;
        let ni = n[idx];
        let nip1 = n[(idx + 1) % 4];
        let m = group.m(i) as i64;
        // m-adic valuation of n_{i+1}
        let mut k = 0i64;
        let mut rest = nip1;
        while rest % m == 0 {
            rest /= m;
            k += 1;
        }
        let case = if ni < 0 && k < -ni {
            BrittonCase::PinchFree
        } else {
            BrittonCase::PurePower
        };
        cases.push((i, case));
    }
    ProbeReport { exponents: n, outcome, cases }
}

/// For each corner, search the ball for a vertex fixed by both images
/// `f(a_i)`, `f(a_{i+1})`: the image vertex of the corner under the induced
/// map. `None` means unknown at this radius.
pub fn special_image_check(x: &Explorer, ball: &Ball, c: &EndoCandidate) -> [Option<usize>; 4] {
    let group = &x.group;
    let mut out = [None, None, None, None];
    for i in Gen::all() {
        let fi = &c.images[i.index() as usize];
        let fj = &c.images[i.shift(1).index() as usize];
        'search: for (vi, v) in ball.vertices.iter().enumerate() {
            let rep = &ball.squares[v.square].word;
            for img in [fi, fj] {
                let conj = rep.inverse().concat(img).concat(rep);
                if !group.vertex_membership(&conj, v.corner) {
                    continue 'search;
                }
            }
            out[i.index() as usize] = Some(vi);
            break;
        }
    }
    out
}

/// Decomposition of an automorphism candidate: a shift `k` (legal only when
/// the parameter tuple is `k`-periodic) and a conjugator `g` with
/// `f(a_i) = g a_{i+k} g^-1` for all `i`. Conjugators are enumerated as
/// freely reduced words in the unit letters up to the given length, in
/// breadth-first order; the decomposition is unique when it exists because
/// the group has trivial centre.
pub fn automorphism_decompose(
    group: &HigmanGroup,
    c: &EndoCandidate,
    max_conjugator_length: u32,
) -> Option<(u8, HWord)> {
    let shifts: Vec<u8> = (0..4u8)
        .filter(|&k| {
            (0..4u8).all(|i| group.m(Gen::new(i)) == group.m(Gen::new(i).shift(k as i8)))
        })
        .collect();
    let letters: Vec<(Gen, i64)> = (0..4u8)
        .flat_map(|i| [(Gen::new(i), 1i64), (Gen::new(i), -1)])
        .collect();
    // breadth-first enumeration of freely reduced words
    let mut frontier: Vec<HWord> = vec![HWord::empty()];
    let mut all: Vec<HWord> = frontier.clone();
    for _ in 0..max_conjugator_length {
        let mut next = Vec::new();
        for wrd in &frontier {
            for &(g, e) in &letters {
                let cand = wrd.concat(&HWord::gen_pow(g, e));
                if cand.weight() > wrd.weight() {
                    next.push(cand);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    for g in &all {
        for &k in &shifts {
            let ok = Gen::all().into_iter().all(|i| {
                let target = HWord::gen_pow(i.shift(k as i8), 1).conjugate_by(g);
                group.equal(&c.images[i.index() as usize], &target)
            });
            if ok {
                return Some((k, g.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2222() -> HigmanGroup {
        HigmanGroup::new([2, 2, 2, 2]).unwrap()
    }

    fn h2357() -> HigmanGroup {
        HigmanGroup::new([2, 3, 5, 7]).unwrap()
    }

    fn w(s: &str) -> HWord {
        HWord::parse(s).unwrap()
    }

    #[test]
    fn identity_and_shifts() {
        let g = h2222();
        assert_eq!(hom_check(&g, &EndoCandidate::identity()), HomCheck::Hom);
        for k in 0..4 {
            assert_eq!(hom_check(&g, &EndoCandidate::shift(k)), HomCheck::Hom, "shift {k}");
        }
        let g = h2357();
        assert_eq!(hom_check(&g, &EndoCandidate::shift(0)), HomCheck::Hom);
        for k in 1..4 {
            assert!(
                matches!(hom_check(&g, &EndoCandidate::shift(k)), HomCheck::NotHom { .. }),
                "shift {k} must fail off the symmetric parameters"
            );
        }
    }

    #[test]
    fn trivial_candidate_is_flagged() {
        let g = h2222();
        let c = EndoCandidate {
            images: [HWord::empty(), HWord::empty(), HWord::empty(), HWord::empty()],
        };
        assert_eq!(hom_check(&g, &c), HomCheck::TrivialHom);
        // killing one generator but not the others violates some relator
        let c = EndoCandidate {
            images: [HWord::empty(), w("a1"), w("a2"), w("a3")],
        };
        assert!(matches!(hom_check(&g, &c), HomCheck::NotHom { .. }));
    }

    #[test]
    fn exponent_probe_identity_only() {
        for g in [h2222(), h2357()] {
            assert!(exponent_probe(&g, [1, 1, 1, 1]).is_hom());
            let r = exponent_probe(&g, [2, 1, 1, 1]);
            assert!(!r.is_hom());
            let r = exponent_probe(&g, [-1, 1, 1, 1]);
            assert!(!r.is_hom());
        }
    }

    #[test]
    fn probe_britton_cases() {
        let g = h2222();
        // (2,1,1,1): relator 0 image reduces to a nonzero a1-power
        let r = exponent_probe(&g, [2, 1, 1, 1]);
        assert!(r.cases.contains(&(Gen::new(0), BrittonCase::PurePower)));
        // (-1,1,1,1): n_0 < 0 and k_0 = 0 < 1 = -n_0: the pinch-free case
        let r = exponent_probe(&g, [-1, 1, 1, 1]);
        assert!(r.cases.contains(&(Gen::new(0), BrittonCase::PinchFree)));
        // (-1,2,1,1): k_0 = 1 >= 1 = -n_0: power case at relator 0
        let r = exponent_probe(&g, [-1, 2, 1, 1]);
        assert!(r.cases.contains(&(Gen::new(0), BrittonCase::PurePower)));
    }

    #[test]
    fn probe_exhaustive_small_range() {
        // over n_i in [-2,2] \ {0}: only (1,1,1,1) is a homomorphism
        for g in [h2222(), h2357()] {
            let vals = [-2i64, -1, 1, 2];
            let mut homs = Vec::new();
            for &a in &vals {
                for &b in &vals {
                    for &c in &vals {
                        for &d in &vals {
                            if exponent_probe(&g, [a, b, c, d]).is_hom() {
                                homs.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            assert_eq!(homs, vec![[1, 1, 1, 1]]);
        }
    }

    #[test]
    fn killing_one_generator_kills_homomorphy() {
        // contrapositive of the survival lemma: no homomorphism maps one
        // generator to the identity and another to something nontrivial
        let g = h2222();
        let small: Vec<HWord> = vec![w("a0"), w("a1"), w("a2"), w("a3"), w("a0 a2")];
        for dead in 0..4usize {
            for img in &small {
                let mut images =
                    [img.clone(), img.clone(), img.clone(), img.clone()];
                images[dead] = HWord::empty();
                // keep at least one nontrivial image
                let c = EndoCandidate { images };
                assert!(
                    matches!(hom_check(&g, &c), HomCheck::NotHom { .. }),
                    "dead generator {dead} with image {img}"
                );
            }
        }
        // shift candidates with one image killed also fail
        for k in 0..4u8 {
            for dead in 0..4usize {
                let mut c = EndoCandidate::shift(k);
                c.images[dead] = HWord::empty();
                assert!(matches!(hom_check(&g, &c), HomCheck::NotHom { .. }));
            }
        }
    }

    #[test]
    fn hom_candidates_compose() {
        let g = h2222();
        let c1 = EndoCandidate::shift(1);
        let c2 = EndoCandidate::identity().conjugated_by(&w("a0 a2^-1"));
        assert_eq!(hom_check(&g, &c1.compose(&c2)), HomCheck::Hom);
        assert_eq!(hom_check(&g, &c2.compose(&c1)), HomCheck::Hom);
    }

    #[test]
    fn decompose_inner_and_shift() {
        let g = h2222();
        // conjugation by a0
        let c = EndoCandidate::identity().conjugated_by(&w("a0"));
        let (k, conj) = automorphism_decompose(&g, &c, 2).unwrap();
        assert_eq!(k, 0);
        assert!(g.equal(&conj, &w("a0")));
        // pure shift
        let c = EndoCandidate::shift(1);
        let (k, conj) = automorphism_decompose(&g, &c, 2).unwrap();
        assert_eq!(k, 1);
        assert!(conj.is_empty());
        // shift then conjugate by a2
        let c = EndoCandidate::shift(1).conjugated_by(&w("a2"));
        let (k, conj) = automorphism_decompose(&g, &c, 2).unwrap();
        assert_eq!(k, 1);
        assert!(g.equal(&conj, &w("a2")));
    }

    #[test]
    fn decompose_respects_parameters() {
        let g = h2357();
        // only the trivial shift is legal off the symmetric tuple
        let c = EndoCandidate::identity().conjugated_by(&w("a1"));
        let (k, conj) = automorphism_decompose(&g, &c, 2).unwrap();
        assert_eq!(k, 0);
        assert!(g.equal(&conj, &w("a1")));
    }

    #[test]
    fn special_images_of_identity_and_inner() {
        let g = h2222();
        let x = Explorer::new(g);
        let ball = x.build_ball(1, 2).unwrap();
        let found = special_image_check(&x, &ball, &EndoCandidate::identity());
        for (i, f) in found.iter().enumerate() {
            let vi = f.expect("identity fixes the base corners");
            let v = &ball.vertices[vi];
            assert_eq!(v.corner, Gen::new(i as u8));
            assert!(g.is_trivial(&ball.squares[v.square].word));
        }
        // conjugation by a0 moves the corners to a0-translates
        let c = EndoCandidate::identity().conjugated_by(&w("a0"));
        let found = special_image_check(&x, &ball, &c);
        for (i, f) in found.iter().enumerate() {
            let vi = f.expect("inner images found in the ball");
            let v = &ball.vertices[vi];
            // the image vertex is the a0-translate of the base corner
            let rep = &ball.squares[v.square].word;
            let quot = w("a0").inverse().concat(rep);
            assert!(g.vertex_membership(&quot, Gen::new(i as u8)));
        }
    }
}
