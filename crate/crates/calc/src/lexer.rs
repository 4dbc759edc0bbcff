//! Tokens of the script language.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    Punct(char),
    Newline,
    Eof,
    /// A character that cannot start any token, or an integer that overflows.
    Unknown(char),
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Int(n) => write!(f, "`{n}`"),
            TokenKind::Punct(c) => write!(f, "`{c}`"),
            TokenKind::Newline => f.write_str("end of line"),
            TokenKind::Eof => f.write_str("end of input"),
            TokenKind::Unknown(c) => write!(f, "unexpected character `{c}`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
}

const PUNCT: &[char] = &['{', '}', '(', ')', '[', ']', ',', ';', ':', '=', '/', '^'];

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `src` into tokens. Comments run from `#` to the end of the line.
/// Identifiers may contain `-` between letters (`SO-odd`) and carry a
/// trailing `^v` marking a contragredient label.
pub fn tokenize(src: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    let at = |k: usize| chars.get(k).map(|&(_, c)| c);
    let offset = |k: usize| chars.get(k).map_or(src.len(), |&(o, _)| o);
    while i < chars.len() {
        let c = chars[i].1;
        let (tl, tc, start) = (line, col, offset(i));
        let mut j = i + 1;
        let kind = if c == '\n' {
            Some(TokenKind::Newline)
        } else if c == '#' {
            while at(j).is_some_and(|c| c != '\n') {
                j += 1;
            }
            None
        } else if c.is_whitespace() {
            None
        } else if c.is_ascii_digit() || (c == '-' && at(j).is_some_and(|d| d.is_ascii_digit())) {
            while at(j).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
            }
            let text: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            match text.parse::<i64>() {
                Ok(n) => Some(TokenKind::Int(n)),
                Err(_) => Some(TokenKind::Unknown(c)),
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            loop {
                match at(j) {
                    Some(d) if ident_char(d) => j += 1,
                    Some('-') if at(j + 1).is_some_and(|d| d.is_ascii_alphabetic()) => j += 1,
                    _ => break,
                }
            }
            if at(j) == Some('^') && at(j + 1) == Some('v') && !at(j + 2).is_some_and(ident_char) {
                j += 2;
            }
            Some(TokenKind::Ident(chars[i..j].iter().map(|&(_, c)| c).collect()))
        } else if PUNCT.contains(&c) {
            Some(TokenKind::Punct(c))
        } else {
            Some(TokenKind::Unknown(c))
        };
        for &(_, ch) in &chars[i..j] {
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        if let Some(kind) = kind {
            tokens.push(Token { kind, line: tl, col: tc, start, end: offset(j) });
        }
        i = j;
    }
    tokens.push(Token { kind: TokenKind::Eof, line, col, start: src.len(), end: src.len() });
    tokens
}
