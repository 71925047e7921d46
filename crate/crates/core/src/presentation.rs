//! Free-group words, finite presentations and their text format.
//!
//! A presentation file looks like
//!
//! ```text
//! # comment
//! name: 4_1
//! alpha: 1 1 1 1
//! <x1, x2, x3, x4 |
//!   x4 x2 x4^-1 x1^-1,
//!   x1 x2 x1^-1 x3^-1,
//!   x2 x4 x2^-1 x3^-1>
//! ```
//!
//! Letters of a word are separated by whitespace; `name^k` expands to `|k|`
//! copies of `name` or its inverse. Generator indices are 1-based everywhere.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Location, Result};

/// A generator or inverse generator, stored as a signed 1-based index:
/// `+i` is `x_i`, `-i` is `x_i^-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Letter {
        assert!(generator >= 1, "generator indices are 1-based");
        assert!(exponent == 1 || exponent == -1, "letter exponent must be +1 or -1");
        let g = i32::try_from(generator).expect("generator index fits in i32");
        Letter(if exponent > 0 { g } else { -g })
    }

    pub fn gen(generator: usize) -> Letter {
        Letter::new(generator, 1)
    }

    pub fn inv(generator: usize) -> Letter {
        Letter::new(generator, -1)
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn exponent(self) -> i8 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "x{}^-1", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

/// An element of the free group, as a sequence of letters. Not necessarily
/// reduced; use [`Word::reduced`] for the normal form.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Builds a word from signed generator indices, e.g. `[4, 2, -4, -1]`.
    pub fn from_signed(letters: &[i32]) -> Word {
        Word(
            letters
                .iter()
                .map(|&l| {
                    assert!(l != 0, "0 is not a letter");
                    Letter(l)
                })
                .collect(),
        )
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenation followed by free reduction across the seam. If both
    /// inputs are reduced, so is the result.
    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut letters, l);
        }
        Word(letters)
    }

    pub fn reduced(&self) -> Word {
        let mut letters = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            push_reduced(&mut letters, l);
        }
        Word(letters)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Total exponent of `generator` in the word.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator() == generator)
            .map(|l| l.exponent() as i64)
            .sum()
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    pub fn contains_generator(&self, generator: usize) -> bool {
        self.0.iter().any(|l| l.generator() == generator)
    }

    /// Renders the word with the given generator names; the empty word is `1`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// Free reduction: the unique reduced word equal to `w` in the free group.
pub fn free_reduce(w: &Word) -> Word {
    w.reduced()
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.word.letters().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let name = self
                .names
                .get(l.generator() - 1)
                .map(String::as_str)
                .unwrap_or("?");
            if l.is_inverse() {
                write!(f, "{name}^-1")?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}

/// A finite presentation `<x_1, ..., x_u | r_1, ..., r_v>` with freely
/// reduced, nonempty relators. Relators are not cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        if names.is_empty() {
            return Err(Error::Format("a presentation needs at least one generator".into()));
        }
        let mut seen = HashMap::new();
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        let u = names.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for (i, r) in relators.iter().enumerate() {
            let max = r.max_generator();
            if max > u {
                return Err(Error::GeneratorOutOfRange { index: max, count: u });
            }
            let r = r.reduced();
            if r.is_empty() {
                return Err(Error::EmptyRelator(i + 1));
            }
            reduced.push(r);
        }
        Ok(Presentation { names, relators: reduced })
    }

    /// Presentation with generators named `x1, ..., xu`.
    pub fn with_default_names(generator_count: usize, relators: Vec<Word>) -> Result<Presentation> {
        let names = (1..=generator_count).map(|i| format!("x{i}")).collect();
        Presentation::new(names, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, index: usize) -> &Word {
        &self.relators[index - 1]
    }

    /// 1-based index of a generator by name.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }

    pub fn check_generator(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.generator_count() {
            Err(Error::GeneratorOutOfRange { index, count: self.generator_count() })
        } else {
            Ok(())
        }
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display_with(&self.names).to_string()
    }

    /// Parses a word written in this presentation's generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut lexer = Lexer::new(text, 1);
        let index: HashMap<&str, usize> =
            self.names.iter().enumerate().map(|(i, n)| (n.as_str(), i + 1)).collect();
        let word = parse_word_tokens(&mut lexer, &index)?;
        match lexer.peek()? {
            (Tok::End, _) => Ok(word),
            (tok, at) => Err(syntax(at, format!("unexpected {tok} in word"))),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", r.display_with(&self.names))?;
        }
        write!(f, ">")
    }
}

/// A homomorphism onto `Z = <t>`, given by the exponent of `t` assigned to
/// each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    weights: Vec<i64>,
}

/// Outcome of [`validate_abelianization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianizationCheck {
    Accepted,
    /// The 1-based relator whose weighted exponent sum is nonzero.
    RelatorNotKilled { relator: usize, weighted_sum: i64 },
    /// The weights generate `gcd * Z`, so the map is not onto `Z`.
    NotSurjective { gcd: i64 },
}

impl AbelianizationMap {
    pub fn new(weights: Vec<i64>) -> AbelianizationMap {
        AbelianizationMap { weights }
    }

    /// Every generator maps to `t`, the abelianization of a Wirtinger presentation.
    pub fn all_ones(generator_count: usize) -> AbelianizationMap {
        AbelianizationMap { weights: vec![1; generator_count] }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight_of_generator(&self, generator: usize) -> i64 {
        self.weights[generator - 1]
    }

    /// The exponent of `t` in the image of `w`.
    pub fn weight(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| self.weights[l.generator() - 1] * l.exponent() as i64)
            .sum()
    }
}

pub fn validate_abelianization(
    p: &Presentation,
    a: &AbelianizationMap,
) -> Result<AbelianizationCheck> {
    if a.weights.len() != p.generator_count() {
        return Err(Error::LengthMismatch {
            expected: p.generator_count(),
            found: a.weights.len(),
        });
    }
    for (i, r) in p.relators().iter().enumerate() {
        let s = a.weight(r);
        if s != 0 {
            return Ok(AbelianizationCheck::RelatorNotKilled { relator: i + 1, weighted_sum: s });
        }
    }
    let gcd = a.weights.iter().fold(0i64, |g, w| g.gcd(w));
    if gcd != 1 {
        return Ok(AbelianizationCheck::NotSurjective { gcd });
    }
    Ok(AbelianizationCheck::Accepted)
}

/// A presentation together with the optional `name:` and `alpha:` headers of
/// its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub alpha: Option<AbelianizationMap>,
    pub presentation: Presentation,
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<PresentationFile> {
        let mut name = None;
        let mut alpha_text: Option<(String, Location)> = None;
        let mut body_line = None;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = strip_comment(raw);
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if trimmed.starts_with('<') {
                body_line = Some(k);
                break;
            }
            let column = line.len() - line.trim_start().len() + 1;
            let at = Location { line: line_no, column };
            let (key, value) = trimmed
                .split_once(':')
                .ok_or_else(|| syntax(at, "expected `key: value` header or `<`".into()))?;
            match key.trim() {
                "name" => name = Some(value.trim().to_string()),
                "alpha" => alpha_text = Some((value.trim().to_string(), at)),
                other => return Err(syntax(at, format!("unknown header `{other}`"))),
            }
        }
        let body_line = body_line.ok_or_else(|| {
            syntax(
                Location { line: text.lines().count().max(1), column: 1 },
                "missing presentation `<...>`".into(),
            )
        })?;
        let body: String = text.lines().skip(body_line).collect::<Vec<_>>().join("\n");
        let presentation = parse_body(&body, body_line + 1)?;
        let alpha = match alpha_text {
            None => None,
            Some((s, at)) => {
                let weights = s
                    .split_whitespace()
                    .map(|w| w.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| syntax(at, "alpha weights must be integers".into()))?;
                if weights.len() != presentation.generator_count() {
                    return Err(Error::LengthMismatch {
                        expected: presentation.generator_count(),
                        found: weights.len(),
                    });
                }
                Some(AbelianizationMap::new(weights))
            }
        };
        Ok(PresentationFile { name, alpha, presentation })
    }

    /// The declared abelianization, or all-ones when the file has none.
    pub fn alpha_or_default(&self) -> AbelianizationMap {
        self.alpha
            .clone()
            .unwrap_or_else(|| AbelianizationMap::all_ones(self.presentation.generator_count()))
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".into())
    }
}

impl fmt::Display for PresentationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        if let Some(alpha) = &self.alpha {
            let w: Vec<String> = alpha.weights().iter().map(|w| w.to_string()).collect();
            writeln!(f, "alpha: {}", w.join(" "))?;
        }
        writeln!(f, "{}", self.presentation)
    }
}

/// Parses presentation text (headers allowed, ignored) into a [`Presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    PresentationFile::parse(text).map(|f| f.presentation)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

fn syntax(at: Location, message: String) -> Error {
    Error::Syntax { at, message }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Lt,
    Gt,
    Bar,
    Comma,
    Caret,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(k) => write!(f, "`{k}`"),
            Tok::Lt => write!(f, "`<`"),
            Tok::Gt => write!(f, "`>`"),
            Tok::Bar => write!(f, "`|`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    lookahead: Option<(Tok, Location)>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, first_line: usize) -> Lexer<'a> {
        Lexer { chars: text.chars().peekable(), line: first_line, column: 1, lookahead: None }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Result<(Tok, Location)> {
        if self.lookahead.is_none() {
            let t = self.lex()?;
            self.lookahead = Some(t);
        }
        Ok(self.lookahead.clone().unwrap())
    }

    fn next(&mut self) -> Result<(Tok, Location)> {
        match self.lookahead.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn lex(&mut self) -> Result<(Tok, Location)> {
        loop {
            match self.chars.peek() {
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                _ => break,
            }
        }
        let at = Location { line: self.line, column: self.column };
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::End, at));
        };
        let tok = match c {
            '<' => {
                self.bump();
                Tok::Lt
            }
            '>' => {
                self.bump();
                Tok::Gt
            }
            '|' => {
                self.bump();
                Tok::Bar
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '^' => {
                self.bump();
                Tok::Caret
            }
            '-' | '+' | '0'..='9' => {
                let mut s = String::new();
                s.push(c);
                self.bump();
                while let Some(&d) = self.chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                let k = s.parse::<i64>().map_err(|_| syntax(at, format!("bad integer `{s}`")))?;
                Tok::Int(k)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = self.chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(syntax(at, format!("unexpected character `{other}`"))),
        };
        Ok((tok, at))
    }
}

fn expect(lexer: &mut Lexer<'_>, want: Tok) -> Result<Location> {
    let (tok, at) = lexer.next()?;
    if tok == want {
        Ok(at)
    } else {
        Err(syntax(at, format!("expected {want}, found {tok}")))
    }
}

fn parse_body(text: &str, first_line: usize) -> Result<Presentation> {
    let mut lexer = Lexer::new(text, first_line);
    expect(&mut lexer, Tok::Lt)?;
    let mut names = Vec::new();
    loop {
        let (tok, at) = lexer.next()?;
        match tok {
            Tok::Ident(s) => names.push(s),
            other => return Err(syntax(at, format!("expected generator name, found {other}"))),
        }
        let (tok, at) = lexer.next()?;
        match tok {
            Tok::Comma => continue,
            Tok::Bar => break,
            other => return Err(syntax(at, format!("expected `,` or `|`, found {other}"))),
        }
    }
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i + 1).is_some() {
            return Err(Error::DuplicateGenerator(n.clone()));
        }
    }
    let mut relators = Vec::new();
    if lexer.peek()?.0 != Tok::Gt {
        loop {
            relators.push(parse_word_tokens(&mut lexer, &index)?);
            let (tok, at) = lexer.next()?;
            match tok {
                Tok::Comma => continue,
                Tok::Gt => break,
                other => return Err(syntax(at, format!("expected `,` or `>`, found {other}"))),
            }
        }
    } else {
        lexer.next()?;
    }
    let (tok, at) = lexer.next()?;
    if tok != Tok::End {
        return Err(syntax(at, format!("unexpected {tok} after `>`")));
    }
    Presentation::new(names, relators)
}

fn parse_word_tokens(lexer: &mut Lexer<'_>, index: &HashMap<&str, usize>) -> Result<Word> {
    let mut letters = Vec::new();
    let mut any = false;
    loop {
        let (tok, at) = lexer.peek()?;
        let name = match tok {
            Tok::Ident(s) => s,
            Tok::Int(1) if !any => {
                // `1` stands for the empty word
                lexer.next()?;
                any = true;
                continue;
            }
            other if !any => return Err(syntax(at, format!("expected a word, found {other}"))),
            _ => break,
        };
        lexer.next()?;
        any = true;
        let &g = index
            .get(name.as_str())
            .ok_or_else(|| Error::UnknownGenerator { name: name.clone(), at })?;
        let mut power = 1i64;
        if lexer.peek()?.0 == Tok::Caret {
            lexer.next()?;
            let (tok, at) = lexer.next()?;
            match tok {
                Tok::Int(k) => power = k,
                other => return Err(syntax(at, format!("expected exponent, found {other}"))),
            }
        }
        let letter = if power < 0 { Letter::inv(g) } else { Letter::gen(g) };
        for _ in 0..power.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(Word::new(letters))
}
