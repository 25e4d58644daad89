//! Tagged moves: base moves annotated with an occurrence tag and a pointer index.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{BaseType, Context, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseMove {
    Run,
    Done,
    Q,
    Read,
    Grab,
    Release,
    Ok,
    Val(u32),
    Write(u32),
}

impl BaseMove {
    pub fn is_question(self) -> bool {
        matches!(
            self,
            BaseMove::Run
                | BaseMove::Q
                | BaseMove::Read
                | BaseMove::Write(_)
                | BaseMove::Grab
                | BaseMove::Release
        )
    }

    /// Whether `self` (an answer) can answer `question`.
    pub fn answers(self, question: BaseMove) -> bool {
        matches!(
            (question, self),
            (BaseMove::Run, BaseMove::Done)
                | (BaseMove::Q | BaseMove::Read, BaseMove::Val(_))
                | (BaseMove::Write(_) | BaseMove::Grab | BaseMove::Release, BaseMove::Ok)
        )
    }

    /// Questions of a base arena (all of them are initial).
    pub fn questions_of(b: BaseType, max: u32) -> Vec<BaseMove> {
        match b {
            BaseType::Com => vec![BaseMove::Run],
            BaseType::Exp => vec![BaseMove::Q],
            BaseType::Var => {
                std::iter::once(BaseMove::Read).chain((0..=max).map(BaseMove::Write)).collect()
            }
            BaseType::Sem => vec![BaseMove::Grab, BaseMove::Release],
        }
    }

    /// Possible answers to a question.
    pub fn answers_to(q: BaseMove, max: u32) -> Vec<BaseMove> {
        match q {
            BaseMove::Run => vec![BaseMove::Done],
            BaseMove::Q | BaseMove::Read => (0..=max).map(BaseMove::Val).collect(),
            BaseMove::Write(_) | BaseMove::Grab | BaseMove::Release => vec![BaseMove::Ok],
            _ => vec![],
        }
    }

    pub fn value(self) -> Option<u32> {
        match self {
            BaseMove::Val(i) | BaseMove::Write(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for BaseMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseMove::Run => f.write_str("run"),
            BaseMove::Done => f.write_str("done"),
            BaseMove::Q => f.write_str("q"),
            BaseMove::Read => f.write_str("read"),
            BaseMove::Grab => f.write_str("grab"),
            BaseMove::Release => f.write_str("release"),
            BaseMove::Ok => f.write_str("ok"),
            BaseMove::Val(i) => write!(f, "{i}"),
            BaseMove::Write(i) => write!(f, "write({i})"),
        }
    }
}

/// Where a move comes from: an optional context identifier, then argument indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag {
    pub head: Option<String>,
    pub path: Vec<u32>,
}

impl Tag {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn named(head: impl Into<String>, path: impl Into<Vec<u32>>) -> Self {
        Self { head: Some(head.into()), path: path.into() }
    }

    pub fn anon(path: impl Into<Vec<u32>>) -> Self {
        Self { head: None, path: path.into() }
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none() && self.path.is_empty()
    }

    /// Number of arrow steps crossed; each flips the O/P polarity.
    pub fn depth(&self) -> usize {
        usize::from(self.head.is_some()) + self.path.len()
    }

    /// Tag of the questions that enable questions carrying this tag.
    pub fn parent(&self) -> Option<Tag> {
        if let Some((_, init)) = self.path.split_last() {
            Some(Tag { head: self.head.clone(), path: init.to_vec() })
        } else if self.head.is_some() {
            Some(Tag::empty())
        } else {
            None
        }
    }

    /// `prefix` followed by this tag's path; this tag must be headless.
    pub fn under(&self, prefix: &Tag) -> Tag {
        debug_assert!(self.head.is_none());
        let mut path = prefix.path.clone();
        path.extend(&self.path);
        Tag { head: prefix.head.clone(), path }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(h) = &self.head {
            parts.push(h.clone());
        }
        parts.extend(self.path.iter().map(u32::to_string));
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    OQ,
    PQ,
    OA,
    PA,
}

impl Polarity {
    pub fn is_question(self) -> bool {
        matches!(self, Polarity::OQ | Polarity::PQ)
    }

    pub fn is_o(self) -> bool {
        matches!(self, Polarity::OQ | Polarity::OA)
    }

    pub fn is_p(self) -> bool {
        !self.is_o()
    }

    pub fn all() -> [Polarity; 4] {
        [Polarity::OQ, Polarity::PQ, Polarity::OA, Polarity::PA]
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::OQ => "OQ",
            Polarity::PQ => "PQ",
            Polarity::OA => "OA",
            Polarity::PA => "PA",
        })
    }
}

impl FromStr for Polarity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Polarity::all()
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| format!("unknown polarity `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub base: BaseMove,
    pub tag: Tag,
    pub rho: u32,
}

impl Letter {
    pub fn new(base: BaseMove, tag: Tag, rho: u32) -> Self {
        Self { base, tag, rho }
    }

    /// An untagged move with `rho = 0`.
    pub fn plain(base: BaseMove) -> Self {
        Self { base, tag: Tag::empty(), rho: 0 }
    }

    pub fn is_question(&self) -> bool {
        self.base.is_question()
    }

    pub fn polarity(&self) -> Polarity {
        let flipped = self.tag.depth() % 2 == 1;
        match (self.is_question(), flipped) {
            (true, false) => Polarity::OQ,
            (true, true) => Polarity::PQ,
            (false, false) => Polarity::PA,
            (false, true) => Polarity::OA,
        }
    }

    pub fn is_initial(&self) -> bool {
        self.is_question() && self.tag.is_empty()
    }

    /// Whether a question `self` may justify `m` in the arena.
    pub fn enables(&self, m: &Letter) -> bool {
        if !self.is_question() {
            return false;
        }
        if m.is_question() {
            m.tag.parent().as_ref() == Some(&self.tag)
        } else {
            m.tag == self.tag && m.base.answers(self.base)
        }
    }

    pub fn with_base(&self, base: BaseMove) -> Letter {
        Letter { base, ..self.clone() }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        match (self.tag.is_empty(), self.rho) {
            (true, 0) => Ok(()),
            (false, 0) => write!(f, "^{{{}}}", self.tag),
            _ => write!(f, "^{{{},{}}}", self.tag, self.rho),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed letter `{text}`: {reason}")]
pub struct LetterError {
    pub text: String,
    pub reason: String,
}

fn parse_base(s: &str) -> Option<BaseMove> {
    Some(match s {
        "run" => BaseMove::Run,
        "done" => BaseMove::Done,
        "q" => BaseMove::Q,
        "read" => BaseMove::Read,
        "grab" => BaseMove::Grab,
        "release" => BaseMove::Release,
        "ok" => BaseMove::Ok,
        _ => {
            if let Some(inner) = s.strip_prefix("write(").and_then(|r| r.strip_suffix(')')) {
                BaseMove::Write(inner.parse().ok()?)
            } else {
                BaseMove::Val(s.parse().ok()?)
            }
        }
    })
}

impl FromStr for Letter {
    type Err = LetterError;

    fn from_str(text: &str) -> Result<Self, LetterError> {
        let err = |reason: &str| LetterError { text: text.to_string(), reason: reason.to_string() };
        let (base_txt, sup) = match text.split_once('^') {
            Some((b, rest)) => {
                let inner = rest
                    .strip_prefix('{')
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| err("superscript must be written `^{...}`"))?;
                (b, Some(inner))
            }
            None => (text, None),
        };
        let base = parse_base(base_txt).ok_or_else(|| err("unknown base move"))?;
        let (mut tag, mut rho) = (Tag::empty(), 0);
        if let Some(sup) = sup {
            let (path_txt, rho_txt) = match sup.split_once(',') {
                Some((p, r)) => (p, Some(r)),
                None => (sup, None),
            };
            if let Some(r) = rho_txt {
                rho = r.trim().parse().map_err(|_| err("rho must be a natural number"))?;
            }
            for (i, part) in path_txt.split('.').filter(|p| !p.is_empty()).enumerate() {
                match part.parse::<u32>() {
                    Ok(n) => tag.path.push(n),
                    Err(_) if i == 0 => tag.head = Some(part.to_string()),
                    Err(_) => return Err(err("only the first path element may be a name")),
                }
            }
        }
        Ok(Letter { base, tag, rho })
    }
}

/// Letters of a type under a tag prefix; argument `u` of `t_l -> ... -> t_1 -> b` is tagged `u`.
fn type_letters(ty: &Type, prefix: &Tag, max: u32, rho_bound: u32, out: &mut BTreeSet<Letter>) {
    let (args, base) = ty.uncurry();
    let l = args.len() as u32;
    for q in BaseMove::questions_of(base, max) {
        for m in std::iter::once(q).chain(BaseMove::answers_to(q, max)) {
            for rho in 0..=rho_bound {
                out.insert(Letter::new(m, prefix.clone(), rho));
            }
        }
    }
    for (i, a) in args.into_iter().enumerate() {
        let mut p = prefix.clone();
        p.path.push(l - i as u32);
        type_letters(a, &p, max, rho_bound, out);
    }
}

/// The finite part of the tagged alphabet of `ctx |- ty` with `rho <= rho_bound`.
pub fn alphabet(ctx: &Context, ty: &Type, rho_bound: u32, max: u32) -> BTreeSet<Letter> {
    let mut out = BTreeSet::new();
    for (x, t) in ctx.entries() {
        type_letters(t, &Tag::named(x.clone(), []), max, rho_bound, &mut out);
    }
    type_letters(ty, &Tag::empty(), max, rho_bound, &mut out);
    out
}
