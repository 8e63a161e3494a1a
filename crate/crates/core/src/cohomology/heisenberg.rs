//! The discrete Heisenberg group `Tr(3,Z) = <x, y, z | [x,y] = z, z central>`
//! with `[g,h] = g^{-1} h^{-1} g h`.
//!
//! Elements are kept in the normal form `x^a y^b z^c`. From `yx = xyz^{-1}`:
//! `(a,b,c)(a',b',c') = (a+a', b+b', c+c'-a'b)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    X,
    Y,
    Z,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::X, Gen::Y, Gen::Z];

    fn index(self) -> usize {
        match self {
            Gen::X => 0,
            Gen::Y => 1,
            Gen::Z => 2,
        }
    }

    fn lower(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::Z => 'z',
        }
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisElem {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeisElem {
    pub const IDENTITY: HeisElem = HeisElem { a: 0, b: 0, c: 0 };

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        HeisElem { a, b, c }
    }

    pub fn generator(g: Gen) -> Self {
        match g {
            Gen::X => HeisElem::new(1, 0, 0),
            Gen::Y => HeisElem::new(0, 1, 0),
            Gen::Z => HeisElem::new(0, 0, 1),
        }
    }

    pub fn letter(l: Letter) -> Self {
        let g = HeisElem::generator(l.gen);
        if l.inverse {
            g.inv()
        } else {
            g
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: HeisElem) -> HeisElem {
        HeisElem::new(self.a + o.a, self.b + o.b, self.c + o.c - o.a * self.b)
    }

    pub fn inv(self) -> HeisElem {
        HeisElem::new(-self.a, -self.b, -self.c - self.a * self.b)
    }

    pub fn pow(self, k: i64) -> HeisElem {
        let (base, k) = if k < 0 { (self.inv(), -k) } else { (self, k) };
        (0..k).fold(HeisElem::IDENTITY, |acc, _| acc.mul(base))
    }

    /// `g^{-1} h^{-1} g h`
    pub fn commutator(self, h: HeisElem) -> HeisElem {
        self.inv().mul(h.inv()).mul(self).mul(h)
    }

    pub fn is_identity(self) -> bool {
        self == HeisElem::IDENTITY
    }

    /// Image under the faithful model `x -> E12(1)`, `y -> E23(1)`, `z -> E13(1)`:
    /// `[[1, a, ab + c], [0, 1, b], [0, 0, 1]]`.
    pub fn to_matrix(self) -> IntMatrix {
        IntMatrix::lit([[1, self.a, self.a * self.b + self.c], [0, 1, self.b], [0, 0, 1]])
    }

    /// Inverse of [`HeisElem::to_matrix`] on upper unitriangular matrices.
    pub fn from_matrix(m: &IntMatrix) -> Option<HeisElem> {
        use num_traits::ToPrimitive;
        if m.dim() != 3 || !m.is_upper_unitriangular() {
            return None;
        }
        let a = m.get(0, 1).to_i64()?;
        let b = m.get(1, 2).to_i64()?;
        let c = (m.get(0, 2) - BigInt::from(a) * BigInt::from(b)).to_i64()?;
        Some(HeisElem::new(a, b, c))
    }

    /// The word `x^a y^b z^c`.
    pub fn to_word(self) -> HeisenbergWord {
        let mut letters = Vec::new();
        for (gen, e) in [(Gen::X, self.a), (Gen::Y, self.b), (Gen::Z, self.c)] {
            letters.extend(std::iter::repeat_n(Letter::new(gen, e < 0), e.unsigned_abs() as usize));
        }
        HeisenbergWord(letters)
    }
}

/// A word in `x, y, z` and their inverses.
///
/// Text form: lowercase letters are generators and uppercase their
/// inverses. Also accepted: `^n` and `⁻¹` exponents, parentheses, and
/// commutators `[u, v]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeisenbergWord(pub Vec<Letter>);

impl HeisenbergWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> HeisenbergWord {
        HeisenbergWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &HeisenbergWord) -> HeisenbergWord {
        HeisenbergWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn eval(&self) -> HeisElem {
        self.0.iter().fold(HeisElem::IDENTITY, |acc, &l| acc.mul(HeisElem::letter(l)))
    }

    /// Matrix image of the word, letter by letter.
    pub fn to_matrix(&self) -> IntMatrix {
        let gen = |l: Letter| {
            let (i, j) = match l.gen {
                Gen::X => (0, 1),
                Gen::Y => (1, 2),
                Gen::Z => (0, 2),
            };
            IntMatrix::elementary(3, i, j, BigInt::from(if l.inverse { -1 } else { 1 }))
        };
        self.0.iter().fold(IntMatrix::identity(3), |acc, &l| &acc * &gen(l))
    }
}

/// `(a, b, c)` with `w = x^a y^b z^c`.
pub fn heisenberg_normal_form(w: &HeisenbergWord) -> (i64, i64, i64) {
    let e = w.eval();
    (e.a, e.b, e.c)
}

impl fmt::Display for HeisenbergWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            let c = l.gen.lower();
            write!(f, "{}", if l.inverse { c.to_ascii_uppercase() } else { c })?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    /// word := factor*, stopping at `,`, `]`, `)` or end of input.
    fn word(&mut self) -> Result<HeisenbergWord> {
        let mut out = HeisenbergWord::default();
        loop {
            self.skip_ws();
            match self.chars.peek() {
                None | Some(',' | ']' | ')') => return Ok(out),
                _ => out = out.concat(&self.factor()?),
            }
        }
    }

    fn factor(&mut self) -> Result<HeisenbergWord> {
        let atom = match self.chars.next() {
            Some('[') => {
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                u.inverse().concat(&v.inverse()).concat(&u).concat(&v)
            }
            Some('(') => {
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some(c @ ('x' | 'y' | 'z' | 'X' | 'Y' | 'Z' | 'e' | '1')) => {
                let gen = match c.to_ascii_lowercase() {
                    'x' => Gen::X,
                    'y' => Gen::Y,
                    'z' => Gen::Z,
                    _ => return Ok(HeisenbergWord::default()),
                };
                HeisenbergWord(vec![Letter::new(gen, c.is_ascii_uppercase())])
            }
            Some(c) => return Err(Error::Parse(format!("unexpected character {c:?} in word"))),
            None => return Err(Error::Parse("unexpected end of word".into())),
        };
        let k = self.exponent()?;
        let base = if k < 0 { atom.inverse() } else { atom };
        Ok(HeisenbergWord((0..k.unsigned_abs()).flat_map(|_| base.0.iter().copied()).collect()))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.chars.peek() == Some(&'⁻') {
            self.chars.next();
            return match self.chars.next() {
                Some('¹') => Ok(-1),
                _ => Err(Error::Parse("expected ¹ after ⁻".into())),
            };
        }
        if self.chars.peek() != Some(&'^') {
            return Ok(1);
        }
        self.chars.next();
        let mut digits = String::new();
        if self.chars.peek() == Some(&'-') {
            digits.push('-');
            self.chars.next();
        }
        while let Some(c) = self.chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*c);
            self.chars.next();
        }
        digits.parse().map_err(|_| Error::Parse(format!("bad exponent {digits:?}")))
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.chars.next() {
            Some(c) if c == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }
}

impl FromStr for HeisenbergWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().peekable() };
        let w = p.word()?;
        p.skip_ws();
        match p.chars.next() {
            None => Ok(w),
            Some(c) => Err(Error::Parse(format!("unexpected {c:?} in word {s:?}"))),
        }
    }
}

impl Serialize for HeisenbergWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HeisenbergWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An automorphism of `Tr(3,Z)` given by the images of `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergAutomorphism {
    pub name: String,
    pub images: [HeisenbergWord; 3],
    #[serde(skip)]
    values: [HeisElem; 3],
}

impl HeisenbergAutomorphism {
    /// Validates the defining relations and invertibility.
    pub fn new(name: impl Into<String>, x: HeisenbergWord, y: HeisenbergWord, z: HeisenbergWord) -> Result<Self> {
        let name = name.into();
        let values = [x.eval(), y.eval(), z.eval()];
        let [px, py, pz] = values;
        let fail = |why: String| Err(Error::InvalidAutomorphism(format!("{name}: {why}")));
        if px.commutator(py) != pz {
            return fail(format!("[φ(x),φ(y)] = {:?} but φ(z) = {:?}", px.commutator(py), pz));
        }
        if !px.commutator(pz).is_identity() || !py.commutator(pz).is_identity() {
            return fail("φ(z) is not central".into());
        }
        let det = px.a * py.b - py.a * px.b;
        if det.abs() != 1 {
            return fail(format!("action on the abelianization has determinant {det}"));
        }
        if pz.a != 0 || pz.b != 0 || pz.c.abs() != 1 {
            return fail("φ(z) is not z or z⁻¹".into());
        }
        Ok(HeisenbergAutomorphism { name, images: [x, y, z], values })
    }

    pub fn parse(name: &str, x: &str, y: &str, z: &str) -> Result<Self> {
        HeisenbergAutomorphism::new(name, x.parse()?, y.parse()?, z.parse()?)
    }

    pub fn identity() -> Self {
        HeisenbergAutomorphism::parse("id", "x", "y", "z").expect("identity is valid")
    }

    pub fn image_of(&self, g: Gen) -> HeisElem {
        self.values[g.index()]
    }

    pub fn apply(&self, e: HeisElem) -> HeisElem {
        let [px, py, pz] = self.values;
        px.pow(e.a).mul(py.pow(e.b)).mul(pz.pow(e.c))
    }

    pub fn apply_word(&self, w: &HeisenbergWord) -> HeisElem {
        self.apply(w.eval())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HeisenbergAutomorphism) -> HeisenbergAutomorphism {
        let img = |g: Gen| self.apply(other.image_of(g)).to_word();
        HeisenbergAutomorphism::new(format!("{}∘{}", self.name, other.name), img(Gen::X), img(Gen::Y), img(Gen::Z))
            .expect("composites of automorphisms are automorphisms")
    }

    /// Same map on the group, regardless of the words used.
    pub fn same_map(&self, other: &HeisenbergAutomorphism) -> bool {
        self.values == other.values
    }

    pub fn is_identity(&self) -> bool {
        self.values == [HeisElem::generator(Gen::X), HeisElem::generator(Gen::Y), HeisElem::generator(Gen::Z)]
    }
}

/// The two involutions generating the `Z2 ⊕ Z2` action.
pub fn involution_generators() -> [HeisenbergAutomorphism; 2] {
    [
        HeisenbergAutomorphism::parse("φ((1,0))", "X", "Y", "z").expect("valid"),
        HeisenbergAutomorphism::parse("φ((0,1))", "X", "y", "Z").expect("valid"),
    ]
}
