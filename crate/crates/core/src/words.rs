//! Words in a free group and finite presentations.

use std::fmt;
use std::ops::Mul;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::WordError;

/// `g_generator ^ exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

/// A word `l₁ l₂ … l_m`, read as the product in that order.
///
/// Words are stored as written; [`FreeWord::free_reduce`] gives the canonical
/// representative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: usize) -> Self {
        Self::power_of(g, 1)
    }

    pub fn power_of(g: usize, exponent: i64) -> Self {
        Self::from_pairs(&[(g, exponent)])
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        FreeWord {
            letters: pairs
                .iter()
                .map(|&(generator, exponent)| Letter { generator, exponent })
                .collect(),
        }
    }

    /// `g_{k−1} ⋯ g_1 g_0` for the given generator indices `[g_0, …, g_{k−1}]`:
    /// the letters are written last index first.
    pub fn descending_product(generators: &[usize]) -> Self {
        FreeWord {
            letters: generators
                .iter()
                .rev()
                .map(|&generator| Letter { generator, exponent: 1 })
                .collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|l| l.exponent == 0)
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    exponent: -l.exponent,
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        FreeWord { letters }.free_reduce()
    }

    /// `w · v · w⁻¹`.
    pub fn conjugate(&self, v: &FreeWord) -> Self {
        (&(self * v) * &self.inverse()).free_reduce()
    }

    /// Replaces each generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            out = &out * &images[l.generator].pow(l.exponent);
        }
        out.free_reduce()
    }

    /// The unique reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if l.exponent == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.generator == l.generator => {
                    top.exponent += l.exponent;
                    if top.exponent == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push(l),
            }
        }
        FreeWord { letters: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.iter().all(|l| l.exponent != 0)
            && self
                .letters
                .windows(2)
                .all(|w| w[0].generator != w[1].generator)
    }

    pub fn check_generators(&self, generator_count: usize) -> Result<(), WordError> {
        match self.letters.iter().find(|l| l.generator >= generator_count) {
            Some(l) => Err(WordError::UnknownGenerator {
                generator: l.generator,
                generator_count,
            }),
            None => Ok(()),
        }
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    /// Concatenation (no reduction).
    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        FreeWord { letters }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            match l.exponent {
                1 => write!(f, "g{}", l.generator)?,
                e => write!(f, "g{}^{}", l.generator, e)?,
            }
        }
        Ok(())
    }
}

/// JSON form: `[[generator, exponent], …]`.
impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, i64)> = self
            .letters
            .iter()
            .map(|l| (l.generator, l.exponent))
            .collect();
        pairs.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SmallInt {
    Num(i64),
    Str(String),
}

impl SmallInt {
    fn value<E: de::Error>(&self) -> Result<i64, E> {
        match self {
            SmallInt::Num(n) => Ok(*n),
            SmallInt::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| E::custom(format!("expected a small integer, got {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(SmallInt, SmallInt)>::deserialize(d)?;
        let mut letters = Vec::with_capacity(pairs.len());
        for (g, e) in pairs {
            let g = g.value::<D::Error>()?;
            let generator = usize::try_from(g)
                .map_err(|_| de::Error::custom(format!("negative generator index {g}")))?;
            let exponent = e.value::<D::Error>()?;
            if exponent == 0 {
                return Err(de::Error::custom("letter with exponent 0"));
            }
            letters.push(Letter { generator, exponent });
        }
        Ok(FreeWord { letters })
    }
}

/// `⟨g_0, …, g_{n−1} | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson")]
pub struct Presentation {
    #[serde(rename = "generators")]
    generator_count: usize,
    relators: Vec<FreeWord>,
}

#[derive(Deserialize)]
struct PresentationJson {
    generators: usize,
    #[serde(default)]
    relators: Vec<FreeWord>,
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = WordError;

    fn try_from(j: PresentationJson) -> Result<Self, WordError> {
        Presentation::new(j.generators, j.relators)
    }
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<FreeWord>) -> Result<Self, WordError> {
        for r in &relators {
            r.check_generators(generator_count)?;
        }
        Ok(Presentation {
            generator_count,
            relators,
        })
    }

    pub fn free(generator_count: usize) -> Self {
        Presentation {
            generator_count,
            relators: Vec::new(),
        }
    }

    /// `Z²` as `⟨s, t | s t s⁻¹ t⁻¹⟩`.
    pub fn free_abelian_rank_two() -> Self {
        Presentation {
            generator_count: 2,
            relators: vec![FreeWord::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])],
        }
    }

    /// The single relation `g_0 g_1 ⋯ g_{n−1} = 1` of a pencil's monodromy.
    pub fn lefschetz(generator_count: usize) -> Self {
        let word: Vec<(usize, i64)> = (0..generator_count).map(|g| (g, 1)).collect();
        Presentation {
            generator_count,
            relators: vec![FreeWord::from_pairs(&word)],
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn with_relator(mut self, r: FreeWord) -> Result<Self, WordError> {
        r.check_generators(self.generator_count)?;
        self.relators.push(r);
        Ok(self)
    }
}

/// All freely reduced words of length at most `max_len`, shortlex ordered
/// (generator index first, positive exponent before negative).
pub fn reduced_words_up_to(generator_count: usize, max_len: usize) -> Vec<FreeWord> {
    let steps: Vec<(usize, i64)> = (0..generator_count).flat_map(|g| [(g, 1), (g, -1)]).collect();
    let mut out = vec![FreeWord::identity()];
    let mut frontier: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &s in &steps {
                if let Some(&last) = w.last() {
                    if last.0 == s.0 && last.1 != s.1 {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|w| FreeWord::from_pairs(w).free_reduce()));
        frontier = next;
    }
    out
}
