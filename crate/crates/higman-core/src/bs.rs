//! Exact arithmetic in the solvable Baumslag-Solitar group `BS(1,m)`, m >= 2.
//!
//! `BS(1,m) = <a, b | a b a^-1 = b^m>` embeds faithfully into the affine group
//! of the line: `a` acts as multiplication by `m`, `b` as translation by 1. An
//! element is a pair `(t, k)` meaning `b^t a^k`, where the translation part `t`
//! is an m-adic rational `num / m^den_exp` and `k` is the stable-letter
//! exponent. The group law is
//!
//! ```text
//! (t1, k1) * (t2, k2) = (t1 + m^k1 * t2, k1 + k2)
//! ```
//!
//! All arithmetic is exact: numerators and exponents are big integers, the
//! denominator is stored as the exponent of `m^d` with `d` minimal. Membership
//! in `<a>` and `<b>`, the two one-sided factorizations, and Britton reduction
//! of words (pinch removal for the HNN structure over `<b>`) are provided; the
//! latter two are the primitives the amalgam machinery in [`crate::words`] is
//! built from.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::Error;

/// Hard cap on `m`-power exponents appearing in scaling operations. Exceeding
/// it means the computation would not fit in memory anyway; failing fast with
/// a message beats an opaque OOM.
const MAX_POW: u64 = 1 << 20;

/// Parameters of `BS(1,m)`. Only `m >= 2` is accepted: `BS(1,1)` is `Z^2`,
/// which has no stable/distorted dichotomy and is rejected at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BSParams {
    m: u32,
}

impl BSParams {
    pub fn new(m: u32) -> crate::Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "Baumslag-Solitar parameter must be >= 2, got {m}"
            )));
        }
        Ok(BSParams { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn m_big(&self) -> BigInt {
        BigInt::from(self.m)
    }

    /// `m^e` as a big integer, `e >= 0`.
    fn m_pow(&self, e: u64) -> BigInt {
        assert!(e <= MAX_POW, "m-power exponent {e} exceeds resource cap");
        self.m_big().pow(e as u32)
    }
}

/// Element `b^t a^k` of `BS(1,m)` with `t = num / m^den_exp` in reduced form
/// (`den_exp` minimal, so `m` does not divide `num` whenever `den_exp > 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BSElem {
    num: BigInt,
    den_exp: u32,
    k: BigInt,
}

impl BSElem {
    pub fn identity() -> Self {
        BSElem { num: BigInt::zero(), den_exp: 0, k: BigInt::zero() }
    }

    /// `a^n` (stable-letter power).
    pub fn stable_pow(n: impl Into<BigInt>) -> Self {
        BSElem { num: BigInt::zero(), den_exp: 0, k: n.into() }
    }

    /// `b^n` (normal-generator power).
    pub fn normal_pow(n: impl Into<BigInt>) -> Self {
        BSElem { num: n.into(), den_exp: 0, k: BigInt::zero() }
    }

    /// Construct from raw parts `t = num / m^den_exp`, reducing the fraction.
    pub fn from_parts(params: &BSParams, num: impl Into<BigInt>, den_exp: u32, k: impl Into<BigInt>) -> Self {
        let (num, den_exp) = reduce_frac(params, num.into(), den_exp);
        BSElem { num, den_exp, k: k.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_zero() && self.k.is_zero()
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    pub fn stable_exp(&self) -> &BigInt {
        &self.k
    }

    /// Translation part is an integer (denominator exponent zero).
    pub fn t_is_integer(&self) -> bool {
        self.den_exp == 0
    }

    pub fn t_is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Human-readable form `(t, k)`; the denominator base is printed as `m`.
    pub fn pretty(&self) -> String {
        if self.den_exp == 0 {
            format!("({}, {})", self.num, self.k)
        } else {
            format!("({}/m^{}, {})", self.num, self.den_exp, self.k)
        }
    }

    /// Stable JSON form `{"num": "...", "mexp": d, "k": n}` with the numerator
    /// as a decimal string (it can exceed any machine integer).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.to_string(),
            "mexp": self.den_exp,
            "k": i64::try_from(&self.k).expect("stable exponent fits in i64"),
        })
    }
}

fn reduce_frac(params: &BSParams, mut num: BigInt, mut den_exp: u32) -> (BigInt, u32) {
    if num.is_zero() {
        return (num, 0);
    }
    let m = params.m_big();
    while den_exp > 0 {
        let (q, r) = num.div_rem(&m);
        if r.is_zero() {
            num = q;
            den_exp -= 1;
        } else {
            break;
        }
    }
    (num, den_exp)
}

/// `t * m^e` for `t = (num, den_exp)` and a signed big exponent.
fn scale(params: &BSParams, num: &BigInt, den_exp: u32, e: &BigInt) -> (BigInt, u32) {
    if num.is_zero() {
        return (BigInt::zero(), 0);
    }
    let e = i64::try_from(e).expect("m-power exponent fits in i64");
    if e >= 0 {
        let e = e as u64;
        let d = den_exp as u64;
        if e >= d {
            (num * params.m_pow(e - d), 0)
        } else {
            // den_exp minimal before, still minimal after lowering it
            (num.clone(), (d - e) as u32)
        }
    } else {
        let extra = u32::try_from(-e).expect("denominator exponent fits in u32");
        reduce_frac(params, num.clone(), den_exp + extra)
    }
}

fn add_frac(params: &BSParams, a: (&BigInt, u32), b: (&BigInt, u32)) -> (BigInt, u32) {
    let d = a.1.max(b.1);
    let num = a.0 * params.m_pow((d - a.1) as u64) + b.0 * params.m_pow((d - b.1) as u64);
    reduce_frac(params, num, d)
}

impl BSParams {
    /// Group law `(t1,k1)*(t2,k2) = (t1 + m^k1 t2, k1 + k2)`.
    pub fn mul(&self, x: &BSElem, y: &BSElem) -> BSElem {
        let scaled = scale(self, &y.num, y.den_exp, &x.k);
        let (num, den_exp) = add_frac(self, (&x.num, x.den_exp), (&scaled.0, scaled.1));
        BSElem { num, den_exp, k: &x.k + &y.k }
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a BSElem>) -> BSElem {
        xs.into_iter().fold(BSElem::identity(), |acc, x| self.mul(&acc, x))
    }

    /// Inverse `(-m^-k t, -k)`.
    pub fn inv(&self, x: &BSElem) -> BSElem {
        let neg_k = -&x.k;
        let (num, den_exp) = scale(self, &(-&x.num), x.den_exp, &neg_k);
        BSElem { num, den_exp, k: neg_k }
    }

    /// Evaluate a word under `a -> (0,1)`, `b -> (1,0)`.
    pub fn eval(&self, w: &BSWord) -> BSElem {
        let mut acc = BSElem::identity();
        for l in &w.letters {
            let e = match l.gen {
                BsGen::Stable => BSElem::stable_pow(l.exp.clone()),
                BsGen::Normal => BSElem::normal_pow(l.exp.clone()),
            };
            acc = self.mul(&acc, &e);
        }
        acc
    }

    /// `Some(k)` iff `x = a^k`.
    pub fn membership_stable(&self, x: &BSElem) -> Option<BigInt> {
        x.num.is_zero().then(|| x.k.clone())
    }

    /// `Some(t)` iff `x = b^t` with `t` an integer.
    pub fn membership_normal(&self, x: &BSElem) -> Option<BigInt> {
        (x.k.is_zero() && x.den_exp == 0).then(|| x.num.clone())
    }

    /// Factor `x = a^p b^z` if possible: requires `t m^-k` integral.
    /// Unique when it exists since `<a> ∩ <b> = 1`.
    pub fn factor_a_first(&self, x: &BSElem) -> Option<(BigInt, BigInt)> {
        let neg_k = -&x.k;
        let (num, den_exp) = scale(self, &x.num, x.den_exp, &neg_k);
        (den_exp == 0).then(|| (x.k.clone(), num))
    }

    /// Factor `x = b^q a^p` if possible: requires `t` integral.
    pub fn factor_b_first(&self, x: &BSElem) -> Option<(BigInt, BigInt)> {
        (x.den_exp == 0).then(|| (x.k.clone(), x.num.clone()))
    }

    /// Conjugate `g x g^-1`.
    pub fn conj(&self, g: &BSElem, x: &BSElem) -> BSElem {
        self.mul(&self.mul(g, x), &self.inv(g))
    }
}

/// Generators of `BS(1,m)`: `a` is the stable letter, `b` the normal generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BsGen {
    Stable,
    Normal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsLetter {
    pub gen: BsGen,
    pub exp: BigInt,
}

/// Run-length encoded word over `{a^±, b^±}`; adjacent letters with the same
/// base are merged and zero exponents dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BSWord {
    letters: Vec<BsLetter>,
}

impl BSWord {
    pub fn empty() -> Self {
        BSWord { letters: Vec::new() }
    }

    pub fn new(letters: impl IntoIterator<Item = (BsGen, BigInt)>) -> Self {
        let mut w = BSWord::empty();
        for (gen, exp) in letters {
            w.push(gen, exp);
        }
        w
    }

    pub fn push(&mut self, gen: BsGen, exp: BigInt) {
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
        self.letters.push(BsLetter { gen, exp });
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[BsLetter] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        let mut w = BSWord::empty();
        for l in self.letters.iter().rev() {
            w.push(l.gen, -&l.exp);
        }
        w
    }
}

impl fmt::Display for BSWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let base = match l.gen {
                    BsGen::Stable => "a",
                    BsGen::Normal => "b",
                };
                if l.exp == BigInt::from(1) {
                    base.to_string()
                } else {
                    format!("{base}^{}", l.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl BSParams {
    /// Britton reduction: returns a pinch-free word representing the same
    /// element. Pinch rules for the HNN extension over `<b>`:
    /// `a b^z a^-1 -> b^{mz}` and `a^-1 b^{mz} a -> b^z`. The output is empty
    /// exactly when the element is trivial (Britton's lemma; cross-checked
    /// against [`BSParams::eval`] by the test suite).
    pub fn britton_reduce(&self, w: &BSWord) -> BSWord {
        let mut stack: Vec<BsLetter> = Vec::new();
        for l in &w.letters {
            push_merged(&mut stack, l.gen, l.exp.clone());
            self.pinch_top(&mut stack);
        }
        BSWord { letters: stack }
    }

    /// Resolve pinches involving the top of the stack until stable.
    fn pinch_top(&self, stack: &mut Vec<BsLetter>) {
        loop {
            let n = stack.len();
            if n < 3 {
                return;
            }
            let shape_ok = matches!(
                (stack[n - 3].gen, stack[n - 2].gen, stack[n - 1].gen),
                (BsGen::Stable, BsGen::Normal, BsGen::Stable)
            );
            if !shape_ok {
                return;
            }
            let e1 = stack[n - 3].exp.clone();
            let z = stack[n - 2].exp.clone();
            let e2 = stack[n - 1].exp.clone();
            // Batch as many unit pinches as the exponents (and, for the
            // descending direction, the m-adic valuation of z) allow.
            let cap = u64::try_from(e1.magnitude().min(e2.magnitude()))
                .expect("pinch batch fits in u64");
            let steps: u64 = if e1.is_positive() && e2.is_negative() {
                cap
            } else if e1.is_negative() && e2.is_positive() {
                let m = self.m_big();
                let mut v = 0u64;
                let mut zz = z.clone();
                while v < cap {
                    let (q, r) = zz.div_rem(&m);
                    if r.is_zero() {
                        zz = q;
                        v += 1;
                    } else {
                        break;
                    }
                }
                v
            } else {
                return;
            };
            if steps == 0 {
                return;
            }
            let ascending = e1.is_positive();
            let m_s = self.m_pow(steps);
            let delta = BigInt::from(steps);
            let new_z = if ascending { &z * &m_s } else { &z / &m_s };
            let (new_e1, new_e2) = if ascending {
                (&e1 - &delta, &e2 + &delta)
            } else {
                (&e1 + &delta, &e2 - &delta)
            };
            stack.truncate(n - 3);
            push_merged(stack, BsGen::Stable, new_e1);
            push_merged(stack, BsGen::Normal, new_z);
            push_merged(stack, BsGen::Stable, new_e2);
        }
    }
}

fn push_merged(stack: &mut Vec<BsLetter>, gen: BsGen, exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    if let Some(last) = stack.last_mut() {
        if last.gen == gen {
            last.exp += exp;
            if last.exp.is_zero() {
                stack.pop();
            }
            return;
        }
    }
    stack.push(BsLetter { gen, exp });
}
