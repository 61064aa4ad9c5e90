//! The group F of dyadic piecewise-linear homeomorphisms of [0,1].
//!
//! Elements are stored as exact breakpoint lists: slopes are integral powers
//! of two, every coordinate is dyadic, and composition, inversion and word
//! evaluation are exact. The two defining relations
//! `[AB⁻¹, A⁻¹BA] = [AB⁻¹, A⁻²BA²] = id` hold on the nose, which is the
//! arbiter for the generator data (the standard generators are used, with the
//! middle pieces x−1/4 for A and x−1/8 for B forced by continuity).

use crate::error::{CoreError, Result};
use crate::exact::{mantissa_i64, Dyadic};
use std::fmt;

/// A dyadic piecewise-linear homeomorphism of [0,1] as a canonical breakpoint
/// list. First point is (0,0), last is (1,1), both coordinates strictly
/// increase, all slopes are integral powers of 2 and no interior breakpoint is
/// removable.
#[derive(Clone, PartialEq, Eq)]
pub struct DplMap {
    pts: Vec<(Dyadic, Dyadic)>,
}

impl DplMap {
    /// Builds and canonicalizes a map from breakpoints, validating all
    /// homeomorphism invariants.
    pub fn from_breakpoints(pts: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        if pts.len() < 2 {
            return Err(CoreError::BadMap("need at least two breakpoints".into()));
        }
        let first = &pts[0];
        let last = &pts[pts.len() - 1];
        if !(first.0.is_zero() && first.1.is_zero()) {
            return Err(CoreError::BadMap("first breakpoint must be (0,0)".into()));
        }
        if !(*last == (Dyadic::one(), Dyadic::one())) {
            return Err(CoreError::BadMap("last breakpoint must be (1,1)".into()));
        }
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(CoreError::BadMap(
                    "breakpoints must strictly increase in both coordinates".into(),
                ));
            }
            slope_exp(&w[0], &w[1])?;
        }
        let mut m = DplMap { pts };
        m.remove_collinear();
        Ok(m)
    }

    pub fn identity() -> Self {
        DplMap {
            pts: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::one(), Dyadic::one()),
            ],
        }
    }

    /// Standard generator A: breakpoints (0,0), (1/2,1/4), (3/4,1/2), (1,1).
    pub fn gen_a() -> Self {
        DplMap {
            pts: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::ratio(1, 1), Dyadic::ratio(1, 2)),
                (Dyadic::ratio(3, 2), Dyadic::ratio(1, 1)),
                (Dyadic::one(), Dyadic::one()),
            ],
        }
    }

    /// Standard generator B: identity on [0,1/2], breakpoints
    /// (1/2,1/2), (3/4,5/8), (7/8,3/4), (1,1).
    pub fn gen_b() -> Self {
        DplMap {
            pts: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::ratio(1, 1), Dyadic::ratio(1, 1)),
                (Dyadic::ratio(3, 2), Dyadic::ratio(5, 3)),
                (Dyadic::ratio(7, 3), Dyadic::ratio(3, 2)),
                (Dyadic::one(), Dyadic::one()),
            ],
        }
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.pts
    }

    pub fn is_identity(&self) -> bool {
        self.pts.len() == 2
    }

    fn remove_collinear(&mut self) {
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(self.pts.len());
        for p in self.pts.drain(..) {
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                // b removable iff slope(a,b) == slope(b,p)
                let dx1 = &b.0 - &a.0;
                let dy1 = &b.1 - &a.1;
                let dx2 = &p.0 - &b.0;
                let dy2 = &p.1 - &b.1;
                if &dy1 * &dx2 == &dy2 * &dx1 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        self.pts = out;
    }

    /// Index of the piece containing x, i.e. largest i with pts[i].0 <= x
    /// (clamped so x = 1 uses the last piece).
    fn piece_index(&self, x: &Dyadic) -> usize {
        let mut lo = 0usize;
        let mut hi = self.pts.len() - 1;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.pts[mid].0 <= *x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Slope exponent of the piece containing x (the piece to the right of x
    /// when x is a breakpoint; at x = 1, the last piece).
    pub fn slope_exp_at(&self, x: &Dyadic) -> i64 {
        let i = self.piece_index(x);
        slope_exp(&self.pts[i], &self.pts[i + 1]).expect("canonical map has power-of-2 slopes")
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        let i = self.piece_index(x);
        let (x0, y0) = &self.pts[i];
        let s = slope_exp(&self.pts[i], &self.pts[i + 1]).unwrap();
        &(x - x0).mul_pow2(s) + y0
    }

    /// True when the map is linear on [a, b) (no slope change strictly inside).
    pub fn is_linear_on(&self, a: &Dyadic, b: &Dyadic) -> bool {
        debug_assert!(a < b);
        let i = self.piece_index(a);
        *b <= self.pts[i + 1].0
    }

    pub fn invert(&self) -> Self {
        DplMap {
            pts: self
                .pts
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// Exact composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &DplMap) -> Self {
        let other_inv = other.invert();
        let mut xs: Vec<Dyadic> = other.pts.iter().map(|(x, _)| x.clone()).collect();
        for (gx, _) in &self.pts {
            xs.push(other_inv.eval(gx));
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&other.eval(&x));
                (x, y)
            })
            .collect();
        let mut m = DplMap { pts };
        m.remove_collinear();
        m
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = DplMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// g h g⁻¹ h⁻¹.
    pub fn commutator(g: &DplMap, h: &DplMap) -> Self {
        g.compose(h).compose(&g.invert()).compose(&h.invert())
    }

    /// Interior breakpoints (where the slope actually changes).
    pub fn singular_points(&self) -> &[(Dyadic, Dyadic)] {
        &self.pts[1..self.pts.len() - 1]
    }

    /// Level n_g: the smallest n so that every singular-point coordinate lies
    /// on the grid 2⁻ⁿℤ; 0 for the identity.
    pub fn level(&self) -> u32 {
        self.singular_points()
            .iter()
            .map(|(x, y)| x.exponent().max(y.exponent()))
            .max()
            .unwrap_or(0)
    }

    /// Minimal interval length mil(g) = 2^(−level).
    pub fn mil(&self) -> Dyadic {
        Dyadic::pow2(-(self.level() as i64))
    }

    /// Largest |slope exponent| over all pieces.
    pub fn max_slope_exp(&self) -> i64 {
        self.pts
            .windows(2)
            .map(|w| slope_exp(&w[0], &w[1]).unwrap().abs())
            .max()
            .unwrap_or(0)
    }

    /// Breakpoints as [x_num, x_exp, y_num, y_exp] quadruples.
    pub fn to_quads(&self) -> Result<Vec<[i64; 4]>> {
        self.pts
            .iter()
            .map(|(x, y)| {
                Ok([
                    mantissa_i64(x)?,
                    x.exponent() as i64,
                    mantissa_i64(y)?,
                    y.exponent() as i64,
                ])
            })
            .collect()
    }

    pub fn from_quads(quads: &[[i64; 4]]) -> Result<Self> {
        let pts = quads
            .iter()
            .map(|q| {
                let xe = u32::try_from(q[1])
                    .map_err(|_| CoreError::BadMap("negative exponent".into()))?;
                let ye = u32::try_from(q[3])
                    .map_err(|_| CoreError::BadMap("negative exponent".into()))?;
                Ok((Dyadic::ratio(q[0], xe), Dyadic::ratio(q[2], ye)))
            })
            .collect::<Result<Vec<_>>>()?;
        DplMap::from_breakpoints(pts)
    }
}

impl fmt::Debug for DplMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DplMap[")?;
        for (i, (x, y)) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "]")
    }
}

/// Slope exponent s with slope = 2^s between two breakpoints; errors when the
/// slope is not a power of two.
fn slope_exp(a: &(Dyadic, Dyadic), b: &(Dyadic, Dyadic)) -> Result<i64> {
    let dx = &b.0 - &a.0;
    let dy = &b.1 - &a.1;
    // dy/dx = 2^s  iff the odd parts of the mantissas agree.
    let (nx, ny) = (dx.numerator(), dy.numerator());
    let zx = nx.trailing_zeros().unwrap_or(0) as i64;
    let zy = ny.trailing_zeros().unwrap_or(0) as i64;
    if nx >> zx as usize != ny >> zy as usize {
        return Err(CoreError::BadMap(format!(
            "slope {dy}/{dx} is not a power of 2"
        )));
    }
    Ok((zy - dy.exponent() as i64) - (zx - dx.exponent() as i64))
}

/// Generator symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn map(&self) -> DplMap {
        match self {
            Gen::A => DplMap::gen_a(),
            Gen::B => DplMap::gen_b(),
        }
    }
}

/// A reduced word in the generators: adjacent letters carry distinct
/// generators, all powers nonzero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupWord {
    letters: Vec<(Gen, i64)>,
}

impl GroupWord {
    pub fn new(letters: Vec<(Gen, i64)>) -> Self {
        let mut w = GroupWord { letters };
        w.reduce();
        w
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn reduce(&mut self) {
        let mut out: Vec<(Gen, i64)> = Vec::with_capacity(self.letters.len());
        for &(g, p) in &self.letters {
            if p == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lg, lp)) if *lg == g => {
                    *lp += p;
                    if *lp == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, p)),
            }
        }
        self.letters = out;
    }

    /// Parses `A B^-1 A^-2 B A^2` syntax; the shorthand names C, D, E expand
    /// to AB⁻¹, A⁻¹BA, A⁻²BA².
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (name, pow) = match tok.split_once('^') {
                Some((n, p)) => {
                    let pow: i64 = p
                        .parse()
                        .map_err(|_| CoreError::BadWord(format!("bad power in `{tok}`")))?;
                    (n, pow)
                }
                None => (tok, 1),
            };
            match name {
                "A" | "a" => letters.push((Gen::A, pow)),
                "B" | "b" => letters.push((Gen::B, pow)),
                "C" | "c" => letters.extend(Self::repeat_word(&Self::word_c(), pow)),
                "D" | "d" => letters.extend(Self::repeat_word(&Self::word_d(), pow)),
                "E" | "e" => letters.extend(Self::repeat_word(&Self::word_e(), pow)),
                other => {
                    return Err(CoreError::BadWord(format!("unknown generator `{other}`")));
                }
            }
        }
        Ok(GroupWord::new(letters))
    }

    fn repeat_word(w: &GroupWord, pow: i64) -> Vec<(Gen, i64)> {
        let base = if pow < 0 { w.inverse() } else { w.clone() };
        let mut out = Vec::new();
        for _ in 0..pow.unsigned_abs() {
            out.extend(base.letters.iter().copied());
        }
        out
    }

    /// C = AB⁻¹, supported in [0, 3/4].
    pub fn word_c() -> Self {
        GroupWord::new(vec![(Gen::A, 1), (Gen::B, -1)])
    }

    /// D = A⁻¹BA, supported in [3/4, 1].
    pub fn word_d() -> Self {
        GroupWord::new(vec![(Gen::A, -1), (Gen::B, 1), (Gen::A, 1)])
    }

    /// E = A⁻²BA², supported in [7/8, 1].
    pub fn word_e() -> Self {
        GroupWord::new(vec![(Gen::A, -2), (Gen::B, 1), (Gen::A, 2)])
    }

    pub fn inverse(&self) -> Self {
        GroupWord::new(self.letters.iter().rev().map(|&(g, p)| (g, -p)).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        GroupWord::new(letters)
    }

    /// w1 w2 w1⁻¹ w2⁻¹ as a word.
    pub fn commutator(w1: &GroupWord, w2: &GroupWord) -> Self {
        w1.concat(w2).concat(&w1.inverse()).concat(&w2.inverse())
    }

    /// Exact product of generator powers, left to right as function composition.
    pub fn evaluate(&self) -> DplMap {
        let mut acc = DplMap::identity();
        for &(g, p) in &self.letters {
            acc = acc.compose(&g.map().pow(p));
        }
        acc
    }

    /// Σ(2|αₖ| + 3|βₖ|), an upper bound on the level of the evaluated map.
    pub fn level_bound(&self) -> u32 {
        self.letters
            .iter()
            .map(|&(g, p)| {
                let w = match g {
                    Gen::A => 2,
                    Gen::B => 3,
                };
                w * p.unsigned_abs() as u32
            })
            .sum()
    }

    /// 1/∏ 4^|αₖ| 8^|βₖ|, a lower bound on mil of the evaluated map.
    pub fn mil_bound(&self) -> Dyadic {
        Dyadic::pow2(-(self.level_bound() as i64))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (i, (g, p)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = match g {
                Gen::A => "A",
                Gen::B => "B",
            };
            if *p == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{p}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_shapes() {
        let a = DplMap::gen_a();
        // slope 1/2 on [0,1/2)
        assert_eq!(a.slope_exp_at(&Dyadic::zero()), -1);
        // continuity forces x − 1/4 on the middle piece: A(3/4) = 1/2
        assert_eq!(a.eval(&Dyadic::ratio(3, 2)), Dyadic::ratio(1, 1));
        let b = DplMap::gen_b();
        // identity on [0,1/2)
        assert_eq!(b.eval(&Dyadic::ratio(3, 3)), Dyadic::ratio(3, 3));
        assert_eq!(b.slope_exp_at(&Dyadic::zero()), 0);
    }

    #[test]
    fn compose_inverse_is_identity() {
        let a = DplMap::gen_a();
        assert!(a.compose(&a.invert()).is_identity());
        assert!(a.invert().compose(&a).is_identity());
    }

    #[test]
    fn defining_relations_hold_exactly() {
        let c = GroupWord::word_c().evaluate();
        let d = GroupWord::word_d().evaluate();
        let e = GroupWord::word_e().evaluate();
        assert!(DplMap::commutator(&c, &d).is_identity());
        assert!(DplMap::commutator(&c, &e).is_identity());
    }

    #[test]
    fn closure_under_composition() {
        let b = DplMap::gen_b();
        let bb = b.compose(&b);
        assert!(bb.breakpoints().len() >= 3);
        for (x, y) in bb.breakpoints() {
            assert!(x <= &Dyadic::one() && y <= &Dyadic::one());
        }
    }

    #[test]
    fn mil_and_level_of_generators() {
        let a = DplMap::gen_a();
        let b = DplMap::gen_b();
        assert_eq!(a.mil(), Dyadic::ratio(1, 2));
        assert_eq!(a.level(), 2);
        assert_eq!(b.mil(), Dyadic::ratio(1, 3));
        assert_eq!(b.level(), 3);
        assert_eq!(DplMap::identity().mil(), Dyadic::one());
        assert_eq!(DplMap::identity().level(), 0);
    }

    #[test]
    fn word_evaluation_and_supports() {
        let a_word = GroupWord::parse("A").unwrap();
        assert_eq!(a_word.evaluate(), DplMap::gen_a());

        // C fixes [3/4, 1] pointwise
        let c = GroupWord::word_c().evaluate();
        for k in 12..=16 {
            let x = Dyadic::ratio(k, 4);
            assert_eq!(c.eval(&x), x);
        }
        // D fixes [0, 3/4] pointwise
        let d = GroupWord::word_d().evaluate();
        for k in 0..=12 {
            let x = Dyadic::ratio(k, 4);
            assert_eq!(d.eval(&x), x);
        }
        // E fixes [0, 7/8] pointwise
        let e = GroupWord::word_e().evaluate();
        for k in 0..=14 {
            let x = Dyadic::ratio(k, 4);
            assert_eq!(e.eval(&x), x);
        }
    }

    #[test]
    fn level_bounds() {
        assert_eq!(GroupWord::parse("A").unwrap().level_bound(), 2);
        assert_eq!(GroupWord::parse("B").unwrap().level_bound(), 3);
        let c = GroupWord::word_c();
        assert_eq!(c.level_bound(), 5);
        assert!(c.evaluate().level() <= 5);
    }

    #[test]
    fn parse_and_reduce() {
        let w = GroupWord::parse("A A^-1 B").unwrap();
        assert_eq!(w, GroupWord::parse("B").unwrap());
        let cd = GroupWord::parse("C").unwrap();
        assert_eq!(cd, GroupWord::word_c());
        assert!(GroupWord::parse("X").is_err());
    }

    #[test]
    fn quads_round_trip() {
        let g = GroupWord::word_d().evaluate();
        let q = g.to_quads().unwrap();
        assert_eq!(DplMap::from_quads(&q).unwrap(), g);
    }

    #[test]
    fn invert_twice_is_identity_map() {
        let g = GroupWord::parse("A B^-1 A^2 B").unwrap().evaluate();
        assert_eq!(g.invert().invert(), g);
    }
}
