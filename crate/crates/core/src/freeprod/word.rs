use std::fmt;

use crate::almosthom::{FiniteGroup, GroupOracle, GroupWindow};
use crate::error::{Error, Result};

/// A non-identity element of one of the two factors; `factor` is 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: usize,
    pub elem: usize,
}

/// Normal form of an element of a free product: alternating non-identity
/// syllables. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord {
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// The free product of two finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    factors: [FiniteGroup; 2],
}

impl FreeProduct {
    pub fn new(g1: FiniteGroup, g2: FiniteGroup) -> Result<FreeProduct> {
        if g1.order() < 2 || g2.order() < 2 {
            return Err(Error::InvalidGroup("free product factors must be nontrivial".into()));
        }
        Ok(FreeProduct { factors: [g1, g2] })
    }

    pub fn factor(&self, i: usize) -> &FiniteGroup {
        &self.factors[i]
    }

    /// Validates an already reduced syllable list.
    pub fn word(&self, syllables: Vec<Syllable>) -> Result<ReducedWord> {
        for (i, s) in syllables.iter().enumerate() {
            let g = self
                .factors
                .get(s.factor)
                .ok_or_else(|| Error::MalformedWord(format!("syllable {i} names factor {}", s.factor + 1)))?;
            if s.elem >= g.order() {
                return Err(Error::MalformedWord(format!("syllable {i} is out of range")));
            }
            if s.elem == g.identity() {
                return Err(Error::MalformedWord(format!("syllable {i} is the identity")));
            }
            if i > 0 && syllables[i - 1].factor == s.factor {
                return Err(Error::MalformedWord(format!("syllables {} and {i} lie in the same factor", i - 1)));
            }
        }
        Ok(ReducedWord { syllables })
    }

    /// Normal form of an arbitrary sequence of factor elements.
    pub fn reduce(&self, letters: impl IntoIterator<Item = Syllable>) -> Result<ReducedWord> {
        let mut stack: Vec<Syllable> = Vec::new();
        for s in letters {
            let g = self
                .factors
                .get(s.factor)
                .ok_or_else(|| Error::MalformedWord(format!("no factor {}", s.factor + 1)))?;
            if s.elem >= g.order() {
                return Err(Error::MalformedWord(format!("element {} out of range", s.elem)));
            }
            self.push(&mut stack, s);
        }
        Ok(ReducedWord { syllables: stack })
    }

    fn push(&self, stack: &mut Vec<Syllable>, s: Syllable) {
        let g = &self.factors[s.factor];
        if s.elem == g.identity() {
            return;
        }
        match stack.last_mut() {
            Some(top) if top.factor == s.factor => {
                let e = g.mul(&top.elem, &s.elem);
                if e == g.identity() {
                    stack.pop();
                } else {
                    top.elem = e;
                }
            }
            _ => stack.push(s),
        }
    }

    pub fn mul(&self, u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
        let mut stack = u.syllables.clone();
        for &s in &v.syllables {
            self.push(&mut stack, s);
        }
        ReducedWord { syllables: stack }
    }

    pub fn inv(&self, u: &ReducedWord) -> ReducedWord {
        let syllables = u
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable { factor: s.factor, elem: self.factors[s.factor].inv(&s.elem) })
            .collect();
        ReducedWord { syllables }
    }

    /// Image under the projection onto factor `i`, which kills the other factor.
    pub fn projection(&self, u: &ReducedWord, i: usize) -> usize {
        let g = &self.factors[i];
        u.syllables.iter().filter(|s| s.factor == i).fold(g.identity(), |acc, s| g.mul(&acc, &s.elem))
    }

    /// All reduced words of syllable length at most `max_len`, shortest first,
    /// starting with the identity.
    pub fn words_up_to(&self, max_len: usize) -> Vec<ReducedWord> {
        let nontrivial: [Vec<usize>; 2] = [0, 1].map(|i| {
            let g = &self.factors[i];
            (0..g.order()).filter(|&e| e != g.identity()).collect()
        });
        let mut out = vec![ReducedWord::identity()];
        let mut layer = vec![ReducedWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for (i, elems) in nontrivial.iter().enumerate() {
                    if w.syllables.last().is_some_and(|s| s.factor == i) {
                        continue;
                    }
                    for &e in elems {
                        let mut syllables = w.syllables.clone();
                        syllables.push(Syllable { factor: i, elem: e });
                        next.push(ReducedWord { syllables });
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Window of all reduced words of syllable length at most `r`.
    pub fn ball(&self, r: usize) -> (GroupWindow, Vec<ReducedWord>) {
        GroupWindow::from_oracle(self, &self.words_up_to(r))
    }

    /// Syllables are written `label@1` or `label@2` and separated by spaces;
    /// the identity is `1`.
    pub fn format(&self, u: &ReducedWord) -> String {
        if u.is_identity() {
            return "1".into();
        }
        let parts: Vec<String> = u
            .syllables
            .iter()
            .map(|s| format!("{}@{}", self.factors[s.factor].labels()[s.elem], s.factor + 1))
            .collect();
        parts.join(" ")
    }

    pub fn parse(&self, text: &str) -> Result<ReducedWord> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(ReducedWord::identity());
        }
        let mut syllables = Vec::new();
        for tok in text.split_whitespace() {
            let (label, factor) =
                tok.rsplit_once('@').ok_or_else(|| Error::MalformedWord(format!("`{tok}` lacks a factor tag")))?;
            let factor = match factor {
                "1" => 0,
                "2" => 1,
                _ => return Err(Error::MalformedWord(format!("unknown factor in `{tok}`"))),
            };
            let elem = self.factors[factor]
                .index_of(label)
                .ok_or_else(|| Error::MalformedWord(format!("unknown element in `{tok}`")))?;
            syllables.push(Syllable { factor, elem });
        }
        self.word(syllables)
    }
}

impl GroupOracle for FreeProduct {
    type Elem = ReducedWord;

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity()
    }

    fn mul(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
        FreeProduct::mul(self, a, b)
    }

    fn inv(&self, a: &ReducedWord) -> ReducedWord {
        FreeProduct::inv(self, a)
    }

    fn label(&self, a: &ReducedWord) -> String {
        self.format(a)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.syllables.iter().map(|s| format!("{}@{}", s.elem, s.factor + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(factor: usize, elem: usize) -> Syllable {
        Syllable { factor, elem }
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let fp = FreeProduct::new(FiniteGroup::cyclic(3), FiniteGroup::cyclic(4)).unwrap();
        for u in fp.words_up_to(4) {
            assert!(fp.mul(&u, &fp.inv(&u)).is_identity());
            assert!(fp.mul(&fp.inv(&u), &u).is_identity());
        }
    }

    #[test]
    fn no_cancellation_between_distinct_involutions() {
        let fp = FreeProduct::new(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)).unwrap();
        let ab = fp.word(vec![s(0, 1), s(1, 1)]).unwrap();
        let abab = fp.mul(&ab, &ab);
        assert_eq!(abab.len(), 4);
        assert_eq!(fp.format(&abab), "g1@1 g1@2 g1@1 g1@2");
    }

    #[test]
    fn cascade_to_identity() {
        // (a b)(b a^2) in C3 * C2: b^2 = 1 exposes a a^2 = 1.
        let fp = FreeProduct::new(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2)).unwrap();
        let u = fp.word(vec![s(0, 1), s(1, 1)]).unwrap();
        let v = fp.word(vec![s(1, 1), s(0, 2)]).unwrap();
        assert!(fp.mul(&u, &v).is_identity());
    }

    #[test]
    fn partial_cancellation_merges_syllables() {
        let fp = FreeProduct::new(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2)).unwrap();
        let u = fp.word(vec![s(0, 1), s(1, 1)]).unwrap();
        let v = fp.word(vec![s(1, 1), s(0, 1)]).unwrap();
        assert_eq!(fp.mul(&u, &v), fp.word(vec![s(0, 2)]).unwrap());
    }

    #[test]
    fn malformed_words_are_rejected() {
        let fp = FreeProduct::new(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2)).unwrap();
        assert!(matches!(fp.word(vec![s(0, 1), s(0, 2)]), Err(Error::MalformedWord(_))));
        assert!(matches!(fp.word(vec![s(0, 0)]), Err(Error::MalformedWord(_))));
        assert!(matches!(fp.word(vec![s(1, 2)]), Err(Error::MalformedWord(_))));
        assert!(matches!(fp.word(vec![s(2, 1)]), Err(Error::MalformedWord(_))));
        assert!(fp.parse("g1@3").is_err());
    }

    #[test]
    fn enumeration_counts() {
        // C3 * C2: words alternate 2 choices and 1 choice.
        let fp = FreeProduct::new(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2)).unwrap();
        let words = fp.words_up_to(4);
        let per_len: Vec<usize> = (0..=4).map(|k| words.iter().filter(|w| w.len() == k).count()).collect();
        assert_eq!(per_len, vec![1, 3, 4, 6, 8]);
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), words.len());
    }

    #[test]
    fn labels_round_trip_and_ball_is_symmetric() {
        let fp = FreeProduct::new(FiniteGroup::symmetric(3), FiniteGroup::cyclic(2)).unwrap();
        for w in fp.words_up_to(3) {
            assert_eq!(fp.parse(&fp.format(&w)).unwrap(), w);
        }
        let (window, words) = fp.ball(2);
        assert_eq!(window.len(), fp.words_up_to(2).len());
        assert_eq!(words[0], ReducedWord::identity());
    }

    #[test]
    fn projection_is_multiplicative() {
        let fp = FreeProduct::new(FiniteGroup::symmetric(3), FiniteGroup::cyclic(3)).unwrap();
        let words = fp.words_up_to(2);
        for u in &words {
            for v in &words {
                let uv = fp.mul(u, v);
                for i in 0..2 {
                    let g = fp.factor(i);
                    assert_eq!(fp.projection(&uv, i), g.mul(&fp.projection(u, i), &fp.projection(v, i)));
                }
            }
        }
    }
}
