use amalg_core::notation::ElemLit;

use crate::diag::{Code, Diagnostic, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifiers and keywords; inner `-` is allowed before a letter.
    Word(String),
    Int(u64),
    Sym(char),
    Arrow,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Int(v) => format!("'{v}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Arrow => "'->'".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const SYMBOLS: &str = "=(),{}:[];";

/// On-demand tokenizer. Newlines end statements except inside braces,
/// where they are whitespace; `#` starts a comment.
#[derive(Clone)]
pub struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    line_start: usize,
    braces: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src, pos: 0, line: 1, line_start: 0, braces: 0 }
    }

    pub fn position(&self) -> Pos {
        Pos { line: self.line, col: self.src[self.line_start..self.pos].chars().count() + 1 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump_newline(&mut self) {
        self.pos += 1;
        self.line += 1;
        self.line_start = self.pos;
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            match c {
                ' ' | '\t' | '\r' => self.pos += 1,
                '\n' if self.braces > 0 => self.bump_newline(),
                '#' => self.pos += self.rest().find('\n').unwrap_or(self.rest().len()),
                _ => break,
            }
        }
    }

    pub fn next_token(&mut self) -> Result<(Tok, Pos), Diagnostic> {
        self.skip_trivia();
        let at = self.position();
        let Some(c) = self.rest().chars().next() else {
            return Ok((Tok::Eof, at));
        };
        if c == '\n' {
            self.bump_newline();
            return Ok((Tok::Newline, at));
        }
        if self.rest().starts_with("->") {
            self.pos += 2;
            return Ok((Tok::Arrow, at));
        }
        if c.is_ascii_digit() {
            let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
            let text = &self.rest()[..len];
            self.pos += len;
            return text
                .parse()
                .map(|v| (Tok::Int(v), at))
                .map_err(|_| Diagnostic::new(Code::Syntax, at, format!("integer {text} is out of range")));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let bytes = self.rest().as_bytes();
            let mut len = 0;
            while len < bytes.len() {
                let b = bytes[len];
                let inner_dash = b == b'-' && bytes.get(len + 1).is_some_and(u8::is_ascii_alphabetic);
                if b.is_ascii_alphanumeric() || b == b'_' || inner_dash {
                    len += 1;
                } else {
                    break;
                }
            }
            let word = self.rest()[..len].to_string();
            self.pos += len;
            return Ok((Tok::Word(word), at));
        }
        if SYMBOLS.contains(c) {
            self.pos += 1;
            match c {
                '{' => self.braces += 1,
                '}' => self.braces = self.braces.saturating_sub(1),
                _ => {}
            }
            return Ok((Tok::Sym(c), at));
        }
        Err(Diagnostic::new(Code::Syntax, at, format!("unexpected character {c:?}")))
    }

    pub fn peek(&self) -> Result<(Tok, Pos), Diagnostic> {
        self.clone().next_token()
    }

    /// Reads an element literal in native notation.
    pub fn element(&mut self) -> Result<(ElemLit, Pos), Diagnostic> {
        self.skip_trivia();
        let at = self.position();
        match ElemLit::parse_prefix(self.rest()) {
            Ok((lit, used)) => {
                self.pos += used;
                Ok((lit, at))
            }
            Err(e) => {
                let mut probe = self.clone();
                probe.pos += e.offset.min(self.rest().len());
                while !self.src.is_char_boundary(probe.pos) {
                    probe.pos -= 1;
                }
                let Pos { line, col } = probe.position();
                let pos = if line == at.line { Pos { line, col } } else { at };
                Err(Diagnostic::new(Code::BadElement, pos, format!("bad element literal: {}", e.message)))
            }
        }
    }

    /// Skips to the start of the next line and forgets open braces.
    pub fn recover(&mut self) {
        self.braces = 0;
        match self.rest().find('\n') {
            Some(i) => {
                self.pos += i;
                self.bump_newline();
            }
            None => self.pos = self.src.len(),
        }
    }
}
