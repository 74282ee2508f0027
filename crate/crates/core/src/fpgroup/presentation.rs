//! Finite group presentations and their text / JSON forms.
//!
//! Text form: `gens: a, b, c; rels: a^2 t, b^3 t, a b c; central: -`.
//! Juxtaposition concatenates, `a'` is the inverse of `a`, `^n` takes
//! (possibly negative) powers, `( .. )` groups and `[u, v]` is the
//! commutator `u v u' v'`. Whitespace is insignificant; generator names are
//! matched greedily, so `ab` reads as `a b` when only `a` and `b` exist.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::word::{gen_of, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at {}..{}", span.0, span.1)]
pub struct ParseError {
    pub message: String,
    /// Byte range into the parsed input.
    pub span: (usize, usize),
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, start: usize, end: usize) -> Self {
        ParseError {
            message: message.into(),
            span: (start, end),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("invalid generator name {0:?}")]
    BadName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("relator {0} uses a generator index outside the presentation")]
    BadRelator(usize),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
    central: Vec<usize>,
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GroupPresentation {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, PresentationError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(PresentationError::BadName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PresentationError::DuplicateName(n.clone()));
            }
        }
        let mut out = GroupPresentation {
            names,
            relators: Vec::new(),
            central: Vec::new(),
        };
        for (i, r) in relators.into_iter().enumerate() {
            if r.generators().any(|g| g >= out.names.len()) {
                return Err(PresentationError::BadRelator(i));
            }
            out.push_relator(r);
        }
        Ok(out)
    }

    /// Builds a presentation from relator strings in the text word syntax.
    pub fn from_strs(names: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let mut p = GroupPresentation::new(names.iter().copied(), [])?;
        for r in relators {
            let w = p.parse_word(r)?;
            p.push_relator(w);
        }
        Ok(p)
    }

    /// Adds a relator; the empty word is dropped.
    pub fn push_relator(&mut self, w: Word) {
        assert!(w.generators().all(|g| g < self.names.len()));
        if !w.is_empty() {
            self.relators.push(w);
        }
    }

    /// Declares `gen` central, adding any missing commutator `[x, gen]`.
    pub fn mark_central(&mut self, gen: usize) {
        assert!(gen < self.names.len());
        if self.central.contains(&gen) {
            return;
        }
        for x in 0..self.names.len() {
            if x == gen {
                continue;
            }
            let c = Word::commutator(&Word::power_of(x, 1), &Word::power_of(gen, 1));
            if !self.relators.iter().any(|r| r.is_cyclic_conjugate(&c)) {
                self.relators.push(c);
            }
        }
        self.central.push(gen);
        self.central.sort_unstable();
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn central(&self) -> &[usize] {
        &self.central
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn gen(&self, name: &str) -> Result<usize, PresentationError> {
        self.generator_index(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    /// Relator-by-generator matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.names.len());
        for (i, r) in self.relators.iter().enumerate() {
            for j in 0..self.names.len() {
                m[(i, j)] = r.exponent_sum(j) as i128;
            }
        }
        m
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, ParseError> {
        let mut p = WordParser {
            src: s,
            pos: 0,
            names: &self.names,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos < s.len() {
            return Err(ParseError::new("unexpected character", p.pos, p.pos + 1));
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.syllables()
            .into_iter()
            .map(|(g, e)| {
                let n = &self.names[g];
                match e {
                    1 => n.clone(),
                    -1 => format!("{n}'"),
                    e if e > 0 => format!("{n}^{e}"),
                    e => format!("{n}'^{}", -e),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Tietze elimination of generators that occur exactly once in some
    /// relator. Only generators accepted by `allowed` are removed.
    pub fn eliminate(&self, allowed: impl Fn(usize) -> bool) -> Elimination {
        let mut relators = self.relators.clone();
        let mut definitions: Vec<(usize, Word)> = Vec::new();
        let mut kept: Vec<bool> = vec![true; self.names.len()];
        loop {
            // shortest defining relator first, ties by generator then relator index
            let mut best: Option<(usize, usize, usize)> = None;
            for g in (0..self.names.len()).filter(|&g| kept[g] && allowed(g)) {
                for (ri, r) in relators.iter().enumerate() {
                    if r.occurrences(g) == 1 {
                        let key = (r.len(), g, ri);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((_, g, ri)) = best else { break };
            let r = relators.remove(ri);
            let letters = r.letters();
            let at = letters.iter().position(|&l| gen_of(l) == g).unwrap();
            let u = Word::from_letters(letters[..at].iter().copied());
            let v = Word::from_letters(letters[at + 1..].iter().copied());
            let mut image = u.inverse().concat(&v.inverse());
            if letters[at] < 0 {
                image = image.inverse();
            }
            for r in relators.iter_mut() {
                *r = r.substitute(g, &image);
            }
            relators.retain(|r| !r.is_empty());
            for (_, d) in definitions.iter_mut() {
                *d = d.substitute(g, &image);
            }
            definitions.push((g, image));
            kept[g] = false;
        }
        Elimination {
            kept: (0..self.names.len()).filter(|&g| kept[g]).collect(),
            relators,
            definitions,
        }
    }

    /// Presentation simplifier: generator elimination, free and cyclic
    /// reduction, and removal of duplicate relators up to cyclic
    /// permutation and inversion. Defines an isomorphic group.
    pub fn simplify(&self) -> GroupPresentation {
        let elim = self.eliminate(|_| true);
        let index_of = |g: usize| elim.kept.iter().position(|&k| k == g).unwrap();
        let mut out = GroupPresentation {
            names: elim.kept.iter().map(|&g| self.names[g].clone()).collect(),
            relators: Vec::new(),
            central: self
                .central
                .iter()
                .filter(|g| elim.kept.contains(g))
                .map(|&g| index_of(g))
                .collect(),
        };
        for r in &elim.relators {
            let r = r.cyclically_reduced().relabel(index_of);
            if !r.is_empty() && !out.relators.iter().any(|s| s.is_cyclic_conjugate(&r)) {
                out.relators.push(r);
            }
        }
        out
    }
}

/// Result of [`GroupPresentation::eliminate`], indexed by the original
/// generator numbering.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub kept: Vec<usize>,
    /// Relators over the kept generators only.
    pub relators: Vec<Word>,
    /// Each eliminated generator as a word in the kept generators.
    pub definitions: Vec<(usize, Word)>,
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = if self.names.is_empty() {
            "-".to_string()
        } else {
            self.names.join(", ")
        };
        let rels = if self.relators.is_empty() {
            "-".to_string()
        } else {
            self.relators
                .iter()
                .map(|r| self.format_word(r))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let central = if self.central.is_empty() {
            "-".to_string()
        } else {
            self.central
                .iter()
                .map(|&g| self.names[g].as_str())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "gens: {gens}; rels: {rels}; central: {central}")
    }
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl std::str::FromStr for GroupPresentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // Sections are split on top-level ';' only.
        let mut sections: Vec<(usize, &str)> = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in s.char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                ';' if depth == 0 => {
                    sections.push((start, &s[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        sections.push((start, &s[start..]));
        sections.retain(|(_, t)| !t.trim().is_empty());

        let mut gens: Option<(usize, &str)> = None;
        let mut rels: Option<(usize, &str)> = None;
        let mut central: Option<(usize, &str)> = None;
        for (off, sec) in sections {
            let Some(colon) = sec.find(':') else {
                return Err(ParseError::new("expected `key:`", off, off + sec.len()).into());
            };
            let key = sec[..colon].trim();
            let body = (off + colon + 1, &sec[colon + 1..]);
            let slot = match key {
                "gens" => &mut gens,
                "rels" => &mut rels,
                "central" => &mut central,
                _ => {
                    return Err(ParseError::new(format!("unknown section {key:?}"), off, off + colon).into())
                }
            };
            if slot.is_some() {
                return Err(ParseError::new(format!("repeated section {key:?}"), off, off + colon).into());
            }
            *slot = Some(body);
        }
        let Some((goff, gbody)) = gens else {
            return Err(ParseError::new("missing `gens:` section", 0, s.len()).into());
        };
        let names: Vec<&str> = split_list(gbody).into_iter().map(|(_, t)| t).collect();
        let mut p = GroupPresentation::new(names.iter().copied(), []).map_err(|e| match e {
            PresentationError::BadName(n) | PresentationError::DuplicateName(n) => {
                let at = gbody.find(n.as_str()).unwrap_or(0) + goff;
                ParseError::new(format!("bad generator name {n:?}"), at, at + n.len()).into()
            }
            e => e,
        })?;
        if let Some((roff, rbody)) = rels {
            for (o, item) in split_list(rbody) {
                let w = p
                    .parse_word(item)
                    .map_err(|e| ParseError::new(e.message, e.span.0 + roff + o, e.span.1 + roff + o))?;
                p.push_relator(w);
            }
        }
        if let Some((coff, cbody)) = central {
            for (o, n) in split_list(cbody) {
                let g = p.generator_index(n).ok_or_else(|| {
                    ParseError::new(format!("unknown generator {n:?}"), coff + o, coff + o + n.len())
                })?;
                p.mark_central(g);
            }
        }
        Ok(p)
    }
}

/// Splits on top-level commas, trimming items; `-` alone means empty.
/// Returns byte offsets of each trimmed item relative to `body`.
fn split_list(body: &str) -> Vec<(usize, &str)> {
    if body.trim() == "-" {
        return Vec::new();
    }
    let mut cuts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                cuts.push((start, i));
                start = i + 1;
            }
            _ => {}
        }
    }
    cuts.push((start, body.len()));
    cuts.into_iter()
        .filter_map(|(a, b)| {
            let raw = &body[a..b];
            let lead = raw.len() - raw.trim_start().len();
            let t = raw.trim();
            (!t.is_empty()).then_some((a + lead, t))
        })
        .collect()
}

struct WordParser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => return Ok(w),
                _ => {
                    let f = self.factor()?;
                    w = w.concat(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let start = self.pos;
        let mut atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')', start)?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',', start)?;
                let y = self.word()?;
                self.expect(']', start)?;
                Word::commutator(&x, &y)
            }
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.generator()?,
            Some(c) => {
                return Err(ParseError::new(
                    format!("unexpected character {c:?}"),
                    self.pos,
                    self.pos + c.len_utf8(),
                ))
            }
            None => return Err(ParseError::new("unexpected end of input", self.pos, self.pos)),
        };
        self.skip_ws();
        while self.peek() == Some('\'') {
            self.pos += 1;
            atom = atom.inverse();
            self.skip_ws();
        }
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            atom = atom.pow(e);
        }
        Ok(atom)
    }

    fn generator(&mut self) -> Result<Word, ParseError> {
        let rest = &self.src[self.pos..];
        let ident_len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let ident = &rest[..ident_len];
        let best = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| ident.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((g, n)) => {
                self.pos += n.len();
                Ok(Word::power_of(g, 1))
            }
            None => Err(ParseError::new(
                format!("unknown generator in {ident:?}"),
                self.pos,
                self.pos + ident_len,
            )),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            if c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')) {
                len = i + 1;
            } else {
                break;
            }
        }
        let text = &rest[..len];
        self.pos += len;
        text.parse()
            .map_err(|_| ParseError::new("expected integer exponent", start, start + len.max(1)))
    }

    fn expect(&mut self, c: char, open: usize) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(
                format!("expected {c:?}"),
                open,
                self.pos.max(open + 1),
            ))
        }
    }
}

/// JSON mirror of the text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    #[serde(default)]
    pub central: Vec<String>,
}

impl From<&GroupPresentation> for PresentationJson {
    fn from(p: &GroupPresentation) -> Self {
        PresentationJson {
            generators: p.names.clone(),
            relators: p.relators.iter().map(|r| p.format_word(r)).collect(),
            central: p.central.iter().map(|&g| p.names[g].clone()).collect(),
        }
    }
}

impl TryFrom<PresentationJson> for GroupPresentation {
    type Error = PresentationError;

    fn try_from(j: PresentationJson) -> Result<Self, Self::Error> {
        let names: Vec<&str> = j.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = j.relators.iter().map(String::as_str).collect();
        let mut p = GroupPresentation::from_strs(&names, &rels)?;
        for c in &j.central {
            let g = p.gen(c)?;
            p.mark_central(g);
        }
        Ok(p)
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PresentationJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PresentationJson::deserialize(d)?;
        GroupPresentation::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let p: GroupPresentation = "gens: a,b,c; rels: a^2, b^3, a b c; central: -".parse().unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2].letters(), &[1, 2, 3]);
        assert_eq!(p.to_string(), "gens: a, b, c; rels: a^2, b^3, a b c; central: -");
    }

    #[test]
    fn greedy_names_powers_and_commutators() {
        let p = GroupPresentation::new(["a1", "b1", "a"], []).unwrap();
        let w = p.parse_word("a1b1 a'^2 (a1 a)^-1").unwrap();
        assert_eq!(w.letters(), &[1, 2, -3, -3, -3, -1]);
        let c = p.parse_word("[a1, b1]").unwrap();
        assert_eq!(c.letters(), &[1, 2, -1, -2]);
        assert_eq!(p.parse_word(" 1 ").unwrap(), Word::identity());
    }

    #[test]
    fn central_marking_adds_commutators_once() {
        let mut p: GroupPresentation = "gens: s, h; rels: [s,h], s^2 h".parse().unwrap();
        p.mark_central(1);
        assert_eq!(p.relators().len(), 2);
        let q: GroupPresentation = "gens: s, t, h; rels: s t; central: h".parse().unwrap();
        assert_eq!(q.relators().len(), 3);
        assert_eq!(q.central(), &[2]);
        let again: GroupPresentation = q.to_string().parse().unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn parse_errors_carry_spans() {
        let e = "gens: a, b; rels: a^2, b c"
            .parse::<GroupPresentation>()
            .unwrap_err();
        match e {
            PresentationError::Parse(pe) => assert_eq!(pe.span, (25, 26)),
            other => panic!("{other:?}"),
        }
        assert!("gens: a, a; rels: -".parse::<GroupPresentation>().is_err());
        assert!("rels: a".parse::<GroupPresentation>().is_err());
        assert!("gens: a; rels: (a".parse::<GroupPresentation>().is_err());
    }

    #[test]
    fn elimination_of_defined_generators() {
        let p: GroupPresentation = "gens: a, b, c, t; rels: a^2 t, b^3 t, a b c".parse().unwrap();
        let e = p.eliminate(|_| true);
        assert_eq!(e.kept.len(), 2);
        let s = p.simplify();
        assert_eq!(s.num_generators(), 2);
        assert_eq!(s.relators().len(), 1);
    }

    #[test]
    fn json_mirror() {
        let p: GroupPresentation = "gens: x, y; rels: x^2, y^3, (x y)^5".parse().unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"{"generators":["x","y"],"relators":["x^2","y^3","x y x y x y x y x y"],"central":[]}"#
        );
        let back: GroupPresentation = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
