//! Word problem and subgroup membership for Higman-like groups.
//!
//! The group `H = <a0..a3 | a_i a_{i+1} a_i^-1 = a_{i+1}^{m_i}>` splits as an
//! amalgamated product `G_a *_F G_b` with `G_a = <a0,a1,a2>`,
//! `G_b = <a2,a3,a0>` and `F = <a0,a2>` free of rank 2. Each triangle factor
//! splits further as an amalgam of two Baumslag-Solitar groups over a cyclic
//! edge group, e.g. `G_a = <a0,a1> *_<a1> <a1,a2>`. Reduction is performed
//! bottom-up: syllable folding inside the triangle factors (exact `BS(1,m)`
//! coordinates), then block folding over `F` using a sequential factorization
//! that sweeps a cyclic carry through the syllables. Triviality of a reduced
//! alternating form is the normal form theorem for amalgams; there is no
//! global canonical form, so equality is decided by the triviality oracle.
//!
//! Membership in the shifted triangle subgroups `<a_i, a_{i+1}, a_{i+2}>` is
//! obtained by rotating the generator indices and the parameter tuple, which
//! is an isomorphism onto the group with shifted parameters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

use crate::bs::{BSElem, BSParams};
use crate::Error;

/// Generator index in `Z/4Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u8);

impl Gen {
    pub fn new(i: u8) -> Self {
        Gen(i % 4)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// `self + d` mod 4 (d may be negative).
    pub fn shift(self, d: i8) -> Self {
        Gen((self.0 as i8 + d).rem_euclid(4) as u8)
    }

    pub fn all() -> [Gen; 4] {
        [Gen(0), Gen(1), Gen(2), Gen(3)]
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenLetter {
    pub gen: Gen,
    pub exp: BigInt,
}

/// Freely reduced word over `a0..a3`: adjacent letters have distinct indices,
/// all exponents are nonzero. The constructor and `push` maintain this.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HWord {
    letters: Vec<GenLetter>,
}

impl HWord {
    pub fn empty() -> Self {
        HWord { letters: Vec::new() }
    }

    pub fn gen_pow(gen: Gen, exp: impl Into<BigInt>) -> Self {
        let mut w = HWord::empty();
        w.push(gen, exp.into());
        w
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (Gen, BigInt)>) -> Self {
        let mut w = HWord::empty();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn push(&mut self, gen: Gen, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(GenLetter { gen, exp });
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.letters
    }

    /// Number of run-length letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Sum of absolute exponents (length as an unreduced word), saturating.
    pub fn weight(&self) -> u64 {
        self.letters
            .iter()
            .map(|l| u64::try_from(l.exp.magnitude()).unwrap_or(u64::MAX))
            .fold(0u64, u64::saturating_add)
    }

    pub fn concat(&self, other: &HWord) -> HWord {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen, l.exp.clone());
        }
        w
    }

    pub fn inverse(&self) -> HWord {
        let mut w = HWord::empty();
        for l in self.letters.iter().rev() {
            w.push(l.gen, -&l.exp);
        }
        w
    }

    /// `n`-th power (negative n inverts first).
    pub fn pow(&self, n: i64) -> HWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = HWord::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `h self h^-1`.
    pub fn conjugate_by(&self, h: &HWord) -> HWord {
        h.concat(self).concat(&h.inverse())
    }

    /// Shift every generator index by `d` (an isomorphism onto the group with
    /// correspondingly rotated parameters).
    pub fn shift_indices(&self, d: i8) -> HWord {
        HWord {
            letters: self
                .letters
                .iter()
                .map(|l| GenLetter { gen: l.gen.shift(d), exp: l.exp.clone() })
                .collect(),
        }
    }

    /// Substitute `a_i -> images[i]` and freely reduce.
    pub fn substitute(&self, images: &[HWord; 4]) -> HWord {
        let mut out = HWord::empty();
        for l in &self.letters {
            let n = i64::try_from(&l.exp).expect("substitution exponent fits in i64");
            out = out.concat(&images[l.gen.index() as usize].pow(n));
        }
        out
    }

    /// Parse the CLI grammar: whitespace-separated tokens `a<i>` or
    /// `a<i>^<signed decimal>`, e.g. `"a0 a1 a0^-1 a1^-2"`.
    pub fn parse(s: &str) -> crate::Result<HWord> {
        let mut w = HWord::empty();
        let mut cursor = 0usize;
        for tok in s.split_whitespace() {
            let pos = s[cursor..].find(tok).map(|o| cursor + o).unwrap_or(cursor);
            cursor = pos + tok.len();
            let err = |msg: &str| Error::Parse { pos, msg: msg.to_string() };
            let rest = tok
                .strip_prefix('a')
                .ok_or_else(|| err("expected generator token a0..a3"))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let idx: u8 = idx
                .parse()
                .map_err(|_| err("generator index must be 0..3"))?;
            if idx > 3 {
                return Err(err("generator index must be 0..3"));
            }
            let exp: BigInt = exp
                .parse()
                .map_err(|_| err("exponent must be a signed decimal integer"))?;
            w.push(Gen::new(idx), exp);
        }
        Ok(w)
    }
}

impl fmt::Display for HWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exp == BigInt::from(1) {
                    format!("{}", l.gen)
                } else {
                    format!("{}^{}", l.gen, l.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Freely reduce a word. `HWord` values are reduced on construction, so
/// this is a rebuild through `push`; it exists as the named first stage of
/// the reduction pipeline.
pub fn reduce_free(w: &HWord) -> HWord {
    HWord::from_letters(w.letters().iter().map(|l| (l.gen, l.exp.clone())))
}

/// The two factors of a triangle subgroup `<a_b, a_{b+1}, a_{b+2}>`:
/// `Lo = <a_b, a_{b+1}>` and `Hi = <a_{b+1}, a_{b+2}>`, amalgamated over
/// `<a_{b+1}>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Lo,
    Hi,
}

/// One syllable of an alternating amalgam form, in its factor's `BS(1,m)`
/// coordinates. In `Lo` the stable letter is `a_b` and `a_{b+1}` the normal
/// generator; in `Hi` the stable letter is `a_{b+1}` and `a_{b+2}` the normal
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syllable {
    pub factor: Factor,
    pub elem: BSElem,
}

/// Reduced alternating syllable sequence in a triangle subgroup. Invariants:
/// no interior syllable lies in the edge group `<a_{b+1}>`; a lone edge-group
/// element is stored canonically in `Lo` coordinates as `(z, 0)`; the empty
/// sequence is the identity.
#[derive(Clone, Debug)]
pub struct TriangleElem {
    pub base: Gen,
    sylls: Vec<Syllable>,
}

impl TriangleElem {
    pub fn identity(base: Gen) -> Self {
        TriangleElem { base, sylls: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.sylls.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.sylls
    }

    pub fn len(&self) -> usize {
        self.sylls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sylls.is_empty()
    }

    /// `Some(z)` iff the element is `a_{base+1}^z` (z = 0 for the identity).
    pub fn edge_exponent(&self) -> Option<BigInt> {
        match self.sylls.as_slice() {
            [] => Some(BigInt::zero()),
            [s] if s.factor == Factor::Lo
                && s.elem.stable_exp().is_zero()
                && s.elem.t_is_integer() =>
            {
                Some(s.elem.num().clone())
            }
            _ => None,
        }
    }

    /// Does the element lie in the `Lo` factor `<a_base, a_{base+1}>`?
    pub fn in_lo(&self) -> bool {
        match self.sylls.as_slice() {
            [] => true,
            [s] => s.factor == Factor::Lo || self.edge_exponent().is_some(),
            _ => false,
        }
    }

    /// Does the element lie in the `Hi` factor `<a_{base+1}, a_{base+2}>`?
    pub fn in_hi(&self) -> bool {
        match self.sylls.as_slice() {
            [] => true,
            [s] => s.factor == Factor::Hi || self.edge_exponent().is_some(),
            _ => false,
        }
    }

    /// The element in `Lo` coordinates, when it lies in that factor.
    pub fn as_lo_elem(&self) -> Option<BSElem> {
        match self.sylls.as_slice() {
            [] => Some(BSElem::identity()),
            [s] if s.factor == Factor::Lo => Some(s.elem.clone()),
            _ => None,
        }
    }

    /// The element in `Hi` coordinates, when it lies in that factor. Edge
    /// elements are converted from their canonical `Lo` storage.
    pub fn as_hi_elem(&self) -> Option<BSElem> {
        match self.sylls.as_slice() {
            [] => Some(BSElem::identity()),
            [s] if s.factor == Factor::Hi => Some(s.elem.clone()),
            [_] => self.edge_exponent().map(BSElem::stable_pow),
            _ => None,
        }
    }

    pub fn pattern(&self) -> Vec<Factor> {
        self.sylls.iter().map(|s| s.factor).collect()
    }
}

/// Parameters of a Higman-like group; doubles as the computation context for
/// every word-problem operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HigmanGroup {
    m: [u32; 4],
}

impl HigmanGroup {
    pub fn new(m: [u32; 4]) -> crate::Result<Self> {
        for (i, &mi) in m.iter().enumerate() {
            if mi < 2 {
                return Err(Error::InvalidParameter(format!("m{i} must be >= 2, got {mi}")));
            }
        }
        Ok(HigmanGroup { m })
    }

    pub fn params(&self) -> [u32; 4] {
        self.m
    }

    /// `m_i`, the exponent in `a_i a_{i+1} a_i^-1 = a_{i+1}^{m_i}`.
    pub fn m(&self, i: Gen) -> u32 {
        self.m[i.index() as usize]
    }

    /// The vertex group `<a_i, a_{i+1}>` is `BS(1, m_i)` with stable letter `a_i`.
    pub fn bs(&self, i: Gen) -> BSParams {
        BSParams::new(self.m(i)).expect("validated at construction")
    }

    /// Defining relator `a_i a_{i+1} a_i^-1 a_{i+1}^{-m_i}`.
    pub fn relator(&self, i: Gen) -> HWord {
        let j = i.shift(1);
        HWord::from_letters([
            (i, BigInt::from(1)),
            (j, BigInt::from(1)),
            (i, BigInt::from(-1)),
            (j, BigInt::from(-(self.m(i) as i64))),
        ])
    }

    /// Group with the parameter tuple rotated so that the generator shift
    /// `a_j -> a_{j+d}` is an isomorphism from it onto this group.
    pub fn shifted(&self, d: i8) -> HigmanGroup {
        let mut m = [0u32; 4];
        for (j, slot) in m.iter_mut().enumerate() {
            *slot = self.m[Gen::new(j as u8).shift(d).index() as usize];
        }
        HigmanGroup { m }
    }

    fn tri(&self, base: Gen) -> TriangleCtx<'_> {
        TriangleCtx { group: self, base }
    }
}

/// Reduction context for one triangle subgroup.
struct TriangleCtx<'a> {
    group: &'a HigmanGroup,
    base: Gen,
}

impl TriangleCtx<'_> {
    fn lo(&self) -> BSParams {
        self.group.bs(self.base)
    }

    fn hi(&self) -> BSParams {
        self.group.bs(self.base.shift(1))
    }

    fn bs_of(&self, f: Factor) -> BSParams {
        match f {
            Factor::Lo => self.lo(),
            Factor::Hi => self.hi(),
        }
    }

    /// `Some(z)` iff `e` is the edge element `a_{base+1}^z` in `f` coordinates.
    fn edge_exp_of(&self, f: Factor, e: &BSElem) -> Option<BigInt> {
        match f {
            Factor::Lo => (e.stable_exp().is_zero() && e.t_is_integer()).then(|| e.num().clone()),
            Factor::Hi => e.t_is_zero().then(|| e.stable_exp().clone()),
        }
    }

    /// The edge element `a_{base+1}^z` in `f` coordinates.
    fn edge_elem(&self, f: Factor, z: BigInt) -> BSElem {
        match f {
            Factor::Lo => BSElem::normal_pow(z),
            Factor::Hi => BSElem::stable_pow(z),
        }
    }

    /// Right-multiply the reduced syllable stack by a factor element,
    /// restoring the reduced-form invariants.
    fn push_elem(&self, sylls: &mut Vec<Syllable>, factor: Factor, elem: BSElem) {
        if elem.is_identity() {
            return;
        }
        let mut elem = elem;
        loop {
            match sylls.last_mut() {
                None => {
                    if let Some(z) = self.edge_exp_of(factor, &elem) {
                        sylls.push(Syllable {
                            factor: Factor::Lo,
                            elem: self.edge_elem(Factor::Lo, z),
                        });
                    } else {
                        sylls.push(Syllable { factor, elem });
                    }
                    return;
                }
                Some(top) if top.factor == factor => {
                    top.elem = self.bs_of(factor).mul(&top.elem, &elem);
                    self.normalize_top(sylls);
                    return;
                }
                Some(top) => {
                    if let Some(z) = self.edge_exp_of(factor, &elem) {
                        // incoming element lies in the edge group: absorb it
                        // into the top syllable of the other factor
                        let tf = top.factor;
                        top.elem = self.bs_of(tf).mul(&top.elem, &self.edge_elem(tf, z));
                        self.normalize_top(sylls);
                        return;
                    }
                    if let Some(z) = self.edge_exp_of(top.factor, &top.elem) {
                        // lone edge syllable at the bottom: fold it into the
                        // incoming element instead of starting a new syllable
                        sylls.pop();
                        elem = self.bs_of(factor).mul(&self.edge_elem(factor, z), &elem);
                        if elem.is_identity() {
                            return;
                        }
                        continue;
                    }
                    sylls.push(Syllable { factor, elem });
                    return;
                }
            }
        }
    }

    /// Cascade: while the top syllable is trivial or lies in the edge group,
    /// merge it downwards.
    fn normalize_top(&self, sylls: &mut Vec<Syllable>) {
        loop {
            let Some(top) = sylls.last() else { return };
            if top.elem.is_identity() {
                sylls.pop();
                return;
            }
            let Some(z) = self.edge_exp_of(top.factor, &top.elem) else { return };
            sylls.pop();
            match sylls.last_mut() {
                Some(prev) => {
                    let pf = prev.factor;
                    prev.elem = self.bs_of(pf).mul(&prev.elem, &self.edge_elem(pf, z));
                }
                None => {
                    sylls.push(Syllable {
                        factor: Factor::Lo,
                        elem: self.edge_elem(Factor::Lo, z),
                    });
                    return;
                }
            }
        }
    }

    /// Letters of the triangle's three generators, folded left to right.
    fn push_letter(&self, sylls: &mut Vec<Syllable>, gen: Gen, exp: BigInt) {
        if gen == self.base {
            self.push_elem(sylls, Factor::Lo, BSElem::stable_pow(exp));
        } else if gen == self.base.shift(1) {
            // edge generator: push_elem recognizes it as an edge element
            self.push_elem(sylls, Factor::Lo, BSElem::normal_pow(exp));
        } else if gen == self.base.shift(2) {
            self.push_elem(sylls, Factor::Hi, BSElem::normal_pow(exp));
        } else {
            panic!("letter {gen} is not a generator of the triangle at base {}", self.base);
        }
    }

    fn reduce_word(&self, w: &HWord) -> TriangleElem {
        let mut sylls = Vec::new();
        for l in w.letters() {
            self.push_letter(&mut sylls, l.gen, l.exp.clone());
        }
        TriangleElem { base: self.base, sylls }
    }

    fn mul(&self, x: &TriangleElem, y: &TriangleElem) -> TriangleElem {
        let mut sylls = x.sylls.clone();
        for s in &y.sylls {
            self.push_elem(&mut sylls, s.factor, s.elem.clone());
        }
        TriangleElem { base: self.base, sylls }
    }

    /// Membership in `F = <a_base, a_{base+2}>`, returning the unique freely
    /// reduced word over those two generators on success.
    ///
    /// Sweeps the syllables left to right carrying an edge element
    /// `c = a_{base+1}^z`: a `Lo` syllable `s` contributes the `a`-first
    /// factorization of `c*s`, a `Hi` syllable the `b`-first factorization;
    /// membership requires every factorization to exist, every emitted
    /// exponent to be nonzero, and the final carry to vanish.
    fn f_membership(&self, x: &TriangleElem) -> Option<HWord> {
        if x.sylls.is_empty() {
            return Some(HWord::empty());
        }
        if let Some(z) = x.edge_exponent() {
            // a nontrivial element of <a_{base+1}> never lies in F
            return z.is_zero().then(HWord::empty);
        }
        let mut carry = BigInt::zero();
        let mut out = HWord::empty();
        for s in &x.sylls {
            match s.factor {
                Factor::Lo => {
                    let bs = self.lo();
                    let c = self.edge_elem(Factor::Lo, carry.clone());
                    let prod = bs.mul(&c, &s.elem);
                    let (p, z) = bs.factor_a_first(&prod)?;
                    if p.is_zero() {
                        return None;
                    }
                    out.push(self.base, p);
                    carry = z;
                }
                Factor::Hi => {
                    let bs = self.hi();
                    let c = self.edge_elem(Factor::Hi, carry.clone());
                    let prod = bs.mul(&c, &s.elem);
                    let (p, q) = bs.factor_b_first(&prod)?;
                    if q.is_zero() {
                        return None;
                    }
                    out.push(self.base.shift(2), q);
                    carry = p;
                }
            }
        }
        carry.is_zero().then_some(out)
    }
}

/// One block of the top-level amalgam `H = G_a *_F G_b`.
#[derive(Clone, Debug)]
pub enum Block {
    /// Element of `G_a = <a0,a1,a2>` (triangle base 0).
    Ga(TriangleElem),
    /// Element of `G_b = <a2,a3,a0>` (triangle base 2).
    Gb(TriangleElem),
}

impl Block {
    pub fn is_ga(&self) -> bool {
        matches!(self, Block::Ga(_))
    }

    pub fn tri(&self) -> &TriangleElem {
        match self {
            Block::Ga(t) | Block::Gb(t) => t,
        }
    }
}

/// Reduced block form of an element of `H`. `Identity` is a dedicated
/// representation; `FWord` holds a nonempty freely reduced word over
/// `{a0, a2}` for elements of `F`; `Blocks` is a nonempty alternating
/// sequence of `G_a`/`G_b` blocks none of which lies in `F`. The form is
/// deterministic for a fixed input word but not canonical across words;
/// equality is decided by the triviality oracle.
#[derive(Clone, Debug)]
pub enum HElem {
    Identity,
    FWord(HWord),
    Blocks(Vec<Block>),
}

impl HElem {
    pub fn is_identity(&self) -> bool {
        matches!(self, HElem::Identity)
    }

    /// Number of amalgam blocks (0 for the identity, 1 for F-words).
    pub fn block_count(&self) -> usize {
        match self {
            HElem::Identity => 0,
            HElem::FWord(_) => 1,
            HElem::Blocks(bs) => bs.len(),
        }
    }

    /// Shape tag used as a dedup prefilter: per-block kind
    /// (0 = G_a, 1 = G_b, 2 = F-word).
    pub fn shape(&self) -> Vec<u8> {
        match self {
            HElem::Identity => Vec::new(),
            HElem::FWord(_) => vec![2],
            HElem::Blocks(bs) => bs.iter().map(|b| if b.is_ga() { 0 } else { 1 }).collect(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            HElem::Identity => "identity".to_string(),
            HElem::FWord(w) => format!("F-word [{w}]"),
            HElem::Blocks(bs) => {
                let parts: Vec<String> = bs
                    .iter()
                    .map(|b| {
                        let (name, t) = match b {
                            Block::Ga(t) => ("Ga", t),
                            Block::Gb(t) => ("Gb", t),
                        };
                        let sylls: Vec<String> = t
                            .syllables()
                            .iter()
                            .map(|s| {
                                let f = match s.factor {
                                    Factor::Lo => "lo",
                                    Factor::Hi => "hi",
                                };
                                format!("{f}{}", s.elem.pretty())
                            })
                            .collect();
                        format!("{name}{{{}}}", sylls.join(" "))
                    })
                    .collect();
                parts.join(" * ")
            }
        }
    }
}

/// Dedup prefilter key: equal group elements always share it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemKey {
    pub abel: [u64; 4],
    pub shape: Vec<u8>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SegKind {
    Ga,
    Gb,
}

impl HigmanGroup {
    /// Amalgam reduction in `G_a` (letters must use indices 0,1,2).
    pub fn ga_reduce(&self, w: &HWord) -> TriangleElem {
        self.tri(Gen::new(0)).reduce_word(w)
    }

    /// Amalgam reduction in `G_b` (letters must use indices 2,3,0).
    pub fn gb_reduce(&self, w: &HWord) -> TriangleElem {
        self.tri(Gen::new(2)).reduce_word(w)
    }

    /// Membership of a reduced triangle element in `F = <a0, a2>`.
    pub fn f_membership(&self, x: &TriangleElem) -> Option<HWord> {
        self.tri(x.base).f_membership(x)
    }

    /// Multiply two elements of the same triangle subgroup.
    pub fn triangle_mul(&self, x: &TriangleElem, y: &TriangleElem) -> TriangleElem {
        assert_eq!(x.base, y.base);
        self.tri(x.base).mul(x, y)
    }

    /// Reduce a word in the generators of the triangle at `base`.
    pub fn triangle_reduce(&self, w: &HWord, base: Gen) -> TriangleElem {
        self.tri(base).reduce_word(w)
    }

    /// Reduce a word to its block form.
    pub fn h_reduce(&self, w: &HWord) -> HElem {
        // Segment into maximal triangle-factor blocks. Letters a1 force a
        // G_a block and a3 a G_b block; ambiguous {a0,a2} runs attach to the
        // preceding block (to the following one at the start of the word).
        let mut segments: Vec<(SegKind, HWord)> = Vec::new();
        let mut cur = HWord::empty();
        let mut kind: Option<SegKind> = None;
        for l in w.letters() {
            let forced = match l.gen.index() {
                1 => Some(SegKind::Ga),
                3 => Some(SegKind::Gb),
                _ => None,
            };
            if let Some(k) = forced {
                match kind {
                    Some(cur_kind) if cur_kind != k => {
                        segments.push((cur_kind, std::mem::take(&mut cur)));
                        kind = Some(k);
                    }
                    _ => kind = Some(k),
                }
            }
            cur.push(l.gen, l.exp.clone());
        }
        match kind {
            None => {
                // whole word lies in F
                return if cur.is_empty() { HElem::Identity } else { HElem::FWord(cur) };
            }
            Some(k) => segments.push((k, cur)),
        }

        let mut blocks: Vec<Block> = segments
            .into_iter()
            .map(|(k, seg)| match k {
                SegKind::Ga => Block::Ga(self.ga_reduce(&seg)),
                SegKind::Gb => Block::Gb(self.gb_reduce(&seg)),
            })
            .collect();

        // Fold away trivial and F-blocks until the alternating form is
        // reduced; the block count strictly decreases at every step.
        loop {
            if let Some(i) = blocks.iter().position(|b| b.tri().is_identity()) {
                blocks.remove(i);
                self.merge_adjacent(&mut blocks, i);
                continue;
            }
            if blocks.len() >= 2 {
                if let Some((i, fw)) = blocks
                    .iter()
                    .enumerate()
                    .find_map(|(i, b)| self.f_membership(b.tri()).map(|fw| (i, fw)))
                {
                    blocks.remove(i);
                    if i < blocks.len() {
                        // absorb from the left into the right neighbor
                        blocks[i] = match &blocks[i] {
                            Block::Ga(t) => {
                                let ctx = self.tri(Gen::new(0));
                                Block::Ga(ctx.mul(&ctx.reduce_word(&fw), t))
                            }
                            Block::Gb(t) => {
                                let ctx = self.tri(Gen::new(2));
                                Block::Gb(ctx.mul(&ctx.reduce_word(&fw), t))
                            }
                        };
                    } else {
                        // removed block was last: absorb into the left neighbor
                        blocks[i - 1] = match &blocks[i - 1] {
                            Block::Ga(t) => {
                                let ctx = self.tri(Gen::new(0));
                                Block::Ga(ctx.mul(t, &ctx.reduce_word(&fw)))
                            }
                            Block::Gb(t) => {
                                let ctx = self.tri(Gen::new(2));
                                Block::Gb(ctx.mul(t, &ctx.reduce_word(&fw)))
                            }
                        };
                    }
                    self.merge_adjacent(&mut blocks, i);
                    continue;
                }
            }
            break;
        }

        match blocks.len() {
            0 => HElem::Identity,
            1 => {
                let b = &blocks[0];
                if b.tri().is_identity() {
                    HElem::Identity
                } else if let Some(fw) = self.f_membership(b.tri()) {
                    if fw.is_empty() {
                        HElem::Identity
                    } else {
                        HElem::FWord(fw)
                    }
                } else {
                    HElem::Blocks(blocks)
                }
            }
            _ => HElem::Blocks(blocks),
        }
    }

    /// After a removal at position `i`, merge the now-adjacent blocks at
    /// `i-1` and `i` when they lie in the same triangle factor.
    fn merge_adjacent(&self, blocks: &mut Vec<Block>, i: usize) {
        if i == 0 || i >= blocks.len() {
            return;
        }
        if blocks[i - 1].is_ga() != blocks[i].is_ga() {
            return;
        }
        let right = blocks.remove(i);
        blocks[i - 1] = match (&blocks[i - 1], &right) {
            (Block::Ga(x), Block::Ga(y)) => Block::Ga(self.tri(Gen::new(0)).mul(x, y)),
            (Block::Gb(x), Block::Gb(y)) => Block::Gb(self.tri(Gen::new(2)).mul(x, y)),
            _ => unreachable!(),
        };
    }

    /// Word problem: is `w` trivial in `H`?
    pub fn is_trivial(&self, w: &HWord) -> bool {
        if self.abelianization_class(w) != [0, 0, 0, 0] {
            return false;
        }
        self.h_reduce(w).is_identity()
    }

    pub fn equal(&self, w1: &HWord, w2: &HWord) -> bool {
        self.is_trivial(&w1.concat(&w2.inverse()))
    }

    /// Exponent sums reduced mod `m_{i-1} - 1` (abelianizing the presentation
    /// kills `a_{i+1}^{m_i - 1}`); equal elements have equal classes.
    pub fn abelianization_class(&self, w: &HWord) -> [u64; 4] {
        let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for l in w.letters() {
            sums[l.gen.index() as usize] += &l.exp;
        }
        let mut out = [0u64; 4];
        for j in 0..4 {
            let modulus = BigInt::from(self.m(Gen::new(j as u8).shift(-1)) - 1);
            out[j] = if modulus <= BigInt::from(1) {
                0
            } else {
                u64::try_from(&sums[j].mod_floor(&modulus)).expect("small modulus")
            };
        }
        out
    }

    /// Prefilter key plus reduced form, computed together.
    pub fn key_of(&self, w: &HWord) -> (ElemKey, HElem) {
        let elem = self.h_reduce(w);
        let key = ElemKey { abel: self.abelianization_class(w), shape: elem.shape() };
        (key, elem)
    }

    /// Membership in the triangle subgroup `<a_base, a_{base+1}, a_{base+2}>`,
    /// decided by rotating indices so that it becomes `G_a` of the group with
    /// shifted parameters.
    pub fn triangle_membership(&self, w: &HWord, base: Gen) -> Option<TriangleElem> {
        let d = base.index() as i8;
        let shifted_group = self.shifted(d);
        let shifted_word = w.shift_indices(-d);
        match shifted_group.h_reduce(&shifted_word) {
            HElem::Identity => Some(TriangleElem::identity(base)),
            HElem::FWord(fw) => Some(self.tri(base).reduce_word(&fw.shift_indices(d))),
            HElem::Blocks(blocks) => match blocks.as_slice() {
                [Block::Ga(t)] => Some(TriangleElem { base, sylls: t.sylls.clone() }),
                _ => None,
            },
        }
    }

    /// Is the element in the vertex group `<a_i, a_{i+1}>`?
    pub fn vertex_membership(&self, w: &HWord, i: Gen) -> bool {
        self.triangle_membership(w, i).is_some_and(|t| t.in_lo())
    }

    /// `Some(n)` iff the element equals `a_i^n` (n may be 0 for the identity).
    pub fn edge_membership(&self, w: &HWord, i: Gen) -> Option<BigInt> {
        let t = self.triangle_membership(w, i)?;
        match t.syllables() {
            [] => Some(BigInt::zero()),
            [s] if s.factor == Factor::Lo && s.elem.t_is_zero() => {
                Some(s.elem.stable_exp().clone())
            }
            _ => None,
        }
    }
}
