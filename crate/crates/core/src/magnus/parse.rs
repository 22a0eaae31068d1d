// SPDX-License-Identifier: Apache-2.0

//! Recursive-descent parser for relation words.
//!
//! ```text
//! word   := factor*
//! factor := atom ( '^' int )*
//! atom   := 'x' digits? | 'y' | '1' | '(' word ')' | '[' word ( ',' word )+ ']'
//! int    := ( '+' | '-' )? digits
//! ```
//!
//! Juxtaposition is the group product, `[u, v] = u⁻¹v⁻¹uv`, and longer
//! brackets are left-normed: `[u, v, w] = [[u, v], w]`. `x` and `y` name the
//! first two generators; `xk` names the k-th. Whitespace is insignificant.

use super::word::Word;
use super::MagnusError;

/// Parses `text`, taking the rank to be the largest generator index used,
/// but at least 2.
pub fn parse_word(text: &str) -> Result<Word, MagnusError> {
    let word = Parser::new(text).parse_all()?;
    let used = word.letters().iter().map(|&(g, _)| g).max().unwrap_or(0);
    Ok(word.with_rank(used.max(2)))
}

/// Parses `text` as a word of the given rank, rejecting generators beyond it.
pub fn parse_word_with_rank(text: &str, rank: usize) -> Result<Word, MagnusError> {
    let mut parser = Parser::new(text);
    parser.max_rank = Some(rank);
    Ok(parser.parse_all()?.with_rank(rank))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
    max_rank: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, text, max_rank: None }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> MagnusError {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        MagnusError::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), MagnusError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error_at(self.pos, format!("expected '{want}', found '{c}'"))),
            None => Err(self.error_at(self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn parse_all(&mut self) -> Result<Word, MagnusError> {
        if self.text.trim().is_empty() {
            return Err(self.error_at(0, "empty word"));
        }
        let w = self.word()?;
        match self.peek() {
            None => Ok(w),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
        }
    }

    fn word(&mut self) -> Result<Word, MagnusError> {
        let mut w = Word::identity(1);
        while let Some(c) = self.peek() {
            if matches!(c, ',' | ']' | ')') {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, MagnusError> {
        let mut w = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            w = w.pow(k);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, MagnusError> {
        let start = self.pos;
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let digits = self.digits();
                let index = if digits.is_empty() {
                    1
                } else {
                    match digits.parse::<usize>() {
                        Ok(k) if k >= 1 => k,
                        _ => return Err(self.error_at(start, format!("bad generator x{digits}"))),
                    }
                };
                self.generator(start, index)
            }
            Some('y') => {
                self.pos += 1;
                self.generator(start, 2)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity(1))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut parts = vec![self.bracket_entry()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.bracket_entry()?);
                }
                if parts.len() < 2 {
                    return Err(self.error_at(start, "commutator needs at least two entries"));
                }
                self.expect(']')?;
                Ok(Word::left_normed(&parts))
            }
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
            None => Err(self.error_at(self.pos, "unexpected end of input")),
        }
    }

    fn bracket_entry(&mut self) -> Result<Word, MagnusError> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        if matches!(self.peek(), Some(',') | Some(']') | None) {
            return Err(self.error_at(pos, "empty commutator entry"));
        }
        self.word()
    }

    fn generator(&self, start: usize, index: usize) -> Result<Word, MagnusError> {
        if let Some(rank) = self.max_rank {
            if index > rank {
                return Err(self.error_at(start, format!("generator {index} exceeds rank {rank}")));
            }
        }
        Ok(Word::generator(index, index))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn integer(&mut self) -> Result<i64, MagnusError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let mut negative = false;
        match self.chars.get(self.pos) {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error_at(self.pos, "expected an integer exponent"));
        }
        let text = if negative { format!("-{digits}") } else { digits };
        text.parse::<i64>()
            .map_err(|_| self.error_at(start, format!("exponent {text} out of range")))
    }
}
