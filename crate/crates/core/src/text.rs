//! Small cursor for the bracketed symbol formats.

use crate::fpgroup::ParseError;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn peek_is(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(tok)
    }

    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        if self.peek_is(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn here(&self) -> (usize, usize) {
        let end = self.src[self.pos..]
            .chars()
            .next()
            .map_or(self.pos, |c| self.pos + c.len_utf8());
        (self.pos, end)
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            let (a, b) = self.here();
            Err(ParseError::new(format!("expected `{tok}`"), a, b))
        }
    }

    /// Optionally signed decimal integer, with its byte span.
    pub(crate) fn integer(&mut self) -> Result<(i64, (usize, usize)), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            let (a, b) = self.here();
            return Err(ParseError::new("expected an integer", a, b));
        }
        let v = self.src[start..end]
            .parse::<i64>()
            .map_err(|_| ParseError::new("integer out of range", start, end))?;
        self.pos = end;
        Ok((v, (start, end)))
    }

    pub(crate) fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            let (a, b) = self.here();
            Err(ParseError::new("trailing input", a, b))
        } else {
            Ok(())
        }
    }
}
