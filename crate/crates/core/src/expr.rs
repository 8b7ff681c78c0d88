//! Text syntax for quantum graphs.
//!
//! ```text
//! expr  := ['-'] term (('+' | '-') term)*
//! term  := rational ['*'] prod | prod | rational
//! prod  := atom ('.' atom)*
//! atom  := NAME | '{' labeled-edge-list '}' | '[[' expr ']]' | '(' expr ')'
//! ```
//!
//! `NAME` is one of `E0`, `K1`..`K6`, `P2`..`P6`, `C3`..`C6`. A bare
//! rational `c` stands for `c` times the empty graph. `.` is the labeled
//! product and `[[ ]]` removes all labels.

use num::One;

use crate::error::{Error, Result};
use crate::graph::{Cursor, Graph};
use crate::quantum::QuantumGraph;
use crate::scalar::{parse_rational, Rational};

pub fn parse_expression(text: &str) -> Result<QuantumGraph> {
    let mut p = Parser { cur: Cursor::new(text) };
    let q = p.expr()?;
    p.cur.skip_ws();
    if !p.cur.at_end() {
        return Err(p.error("unexpected input"));
    }
    Ok(q)
}

struct Parser<'a> {
    cur: Cursor<'a>,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.cur.pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<QuantumGraph> {
        self.cur.skip_ws();
        let mut negate = self.cur.eat("-");
        let mut acc: Option<QuantumGraph> = None;
        loop {
            self.cur.skip_ws();
            let at = self.cur.pos;
            let mut t = self.term()?;
            if negate {
                t = t.scale(&-Rational::one());
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t).map_err(|e| at_pos(e, at))?,
            });
            self.cur.skip_ws();
            if self.cur.eat("+") {
                negate = false;
            } else if self.cur.eat("-") {
                negate = true;
            } else {
                return Ok(acc.expect("at least one term"));
            }
        }
    }

    fn term(&mut self) -> Result<QuantumGraph> {
        let coeff = self.rational()?;
        self.cur.skip_ws();
        let star_at = self.cur.pos;
        let starred = self.cur.eat("*");
        self.cur.skip_ws();
        let starts_atom = matches!(self.cur.peek(), Some(c) if c.is_ascii_alphabetic() || "{[(".contains(c));
        match coeff {
            Some(c) if !starred && !starts_atom => Ok(QuantumGraph::constant(c)),
            Some(c) => Ok(self.prod()?.scale(&c)),
            None if starred => Err(Error::Parse { pos: star_at, msg: "'*' without a coefficient".into() }),
            None => self.prod(),
        }
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let rest = self.cur.rest();
        let bytes = rest.as_bytes();
        let digits = |from: usize| bytes[from..].iter().take_while(|b| b.is_ascii_digit()).count();
        let mut len = digits(0);
        if len == 0 {
            return Ok(None);
        }
        if matches!(bytes.get(len), Some(b'/' | b'.')) && digits(len + 1) > 0 {
            len += 1 + digits(len + 1);
        }
        let r = parse_rational(&rest[..len]).map_err(|e| at_pos(e, self.cur.pos))?;
        self.cur.pos += len;
        Ok(Some(r))
    }

    fn prod(&mut self) -> Result<QuantumGraph> {
        let mut acc = self.atom()?;
        loop {
            self.cur.skip_ws();
            let at = self.cur.pos;
            if !self.cur.eat(".") {
                return Ok(acc);
            }
            self.cur.skip_ws();
            let rhs = self.atom()?;
            acc = acc.product(&rhs).map_err(|e| at_pos(e, at))?;
        }
    }

    fn atom(&mut self) -> Result<QuantumGraph> {
        self.cur.skip_ws();
        if self.cur.eat("[[") {
            let inner = self.expr()?;
            self.cur.skip_ws();
            self.cur.expect("]]")?;
            return Ok(inner.unlabel());
        }
        if self.cur.eat("(") {
            let inner = self.expr()?;
            self.cur.skip_ws();
            self.cur.expect(")")?;
            return Ok(inner);
        }
        if self.cur.eat("{") {
            let h = self.cur.labeled_edge_list()?;
            self.cur.skip_ws();
            self.cur.expect("}")?;
            return Ok(QuantumGraph::from_graph(h));
        }
        let rest = self.cur.rest();
        let len = rest.bytes().take_while(u8::is_ascii_alphanumeric).count();
        if len == 0 {
            return Err(self.error("expected a graph"));
        }
        let name = &rest[..len];
        let g = Graph::named(name).ok_or_else(|| self.error(format!("unknown graph name {name:?}")))?;
        self.cur.pos += len;
        Ok(QuantumGraph::unlabeled(g))
    }
}

fn at_pos(e: Error, pos: usize) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse { pos, msg: other.to_string() },
    }
}
