//! Native text syntax for ground normal programs.
//!
//! ```text
//! % comment
//! a :- k, not b.
//! e.
//! :- a, b.
//! #external e.
//! ```
//!
//! Atoms are `name` or `name(t1,...,tn)` with ground terms (lowercase
//! constants, integers, nested function terms). An uppercase or `_`
//! initial identifier in term position is a variable and is rejected.
//! `#external f.` reads as the fact `f.`, undoing [`externalize_facts`].

use crate::error::ParseError;
use crate::program::{Atom, AtomTable, GroundProgram, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    External,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let bytes = text.as_bytes();

    while let Some(&(i, c)) = chars.peek() {
        let (l, col) = (line, column);
        let err = |message: String| ParseError::Syntax { line: l, column: col, message };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        match c {
            c if c.is_whitespace() => bump(&mut chars),
            '%' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '(' | ')' | ',' | '.' => {
                bump(&mut chars);
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                };
                out.push(Spanned { tok, line: l, column: col });
            }
            ':' => {
                bump(&mut chars);
                if chars.peek().map(|p| p.1) != Some('-') {
                    return Err(err("expected `:-`".into()));
                }
                bump(&mut chars);
                out.push(Spanned { tok: Tok::If, line: l, column: col });
            }
            '#' => {
                let start = i;
                bump(&mut chars);
                while let Some(&(_, c)) = chars.peek() {
                    if !c.is_ascii_alphanumeric() {
                        break;
                    }
                    bump(&mut chars);
                }
                let end = chars.peek().map(|p| p.0).unwrap_or(text.len());
                let word = &text[start..end];
                if word != "#external" {
                    return Err(err(format!("unsupported directive `{word}`")));
                }
                out.push(Spanned { tok: Tok::External, line: l, column: col });
            }
            c if c.is_ascii_digit() || (c == '-' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) => {
                let start = i;
                bump(&mut chars);
                while let Some(&(_, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    bump(&mut chars);
                }
                let end = chars.peek().map(|p| p.0).unwrap_or(text.len());
                out.push(Spanned { tok: Tok::Int(text[start..end].to_string()), line: l, column: col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                bump(&mut chars);
                while let Some(&(_, c)) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                        break;
                    }
                    bump(&mut chars);
                }
                let end = chars.peek().map(|p| p.0).unwrap_or(text.len());
                let word = text[start..end].to_string();
                let tok = if c.is_ascii_lowercase() { Tok::Ident(word) } else { Tok::Var(word) };
                out.push(Spanned { tok, line: l, column: col });
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    table: AtomTable,
    rules: Vec<Rule>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: at.line, column: at.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            self.error(&t, format!("expected {what}, found {}", describe(&t.tok)))
        }
    }

    fn term(&mut self, out: &mut String) -> Result<(), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                out.push_str(s);
                Ok(())
            }
            Tok::Ident(s) => {
                out.push_str(s);
                if self.peek().tok == Tok::LParen {
                    self.arguments(out)?;
                }
                Ok(())
            }
            Tok::Var(v) => Err(ParseError::NonGround { line: t.line, column: t.column, variable: v.clone() }),
            other => self.error(&t, format!("expected a term, found {}", describe(other))),
        }
    }

    fn arguments(&mut self, out: &mut String) -> Result<(), ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        out.push('(');
        loop {
            self.term(out)?;
            let t = self.next();
            match &t.tok {
                Tok::Comma => out.push(','),
                Tok::RParen => {
                    out.push(')');
                    return Ok(());
                }
                other => return self.error(&t, format!("expected `,` or `)`, found {}", describe(other))),
            }
        }
    }

    /// Parses an atom and interns its canonical name.
    fn atom(&mut self) -> Result<(Atom, Spanned), ParseError> {
        let t = self.next();
        let mut name = match &t.tok {
            Tok::Ident(s) if s == "not" => return self.error(&t, "`not` is reserved"),
            Tok::Ident(s) => s.clone(),
            other => return self.error(&t, format!("expected an atom, found {}", describe(other))),
        };
        if self.peek().tok == Tok::LParen {
            self.arguments(&mut name)?;
        }
        Ok((self.table.intern(&name), t))
    }

    fn body(&mut self, pos: &mut Vec<Atom>, neg: &mut Vec<Atom>) -> Result<(), ParseError> {
        loop {
            let is_not = matches!(&self.peek().tok, Tok::Ident(s) if s == "not")
                && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Ident(_)));
            if is_not {
                self.next();
                neg.push(self.atom()?.0);
            } else {
                pos.push(self.atom()?.0);
            }
            let t = self.next();
            match &t.tok {
                Tok::Comma => continue,
                Tok::Dot => return Ok(()),
                other => return self.error(&t, format!("expected `,` or `.`, found {}", describe(other))),
            }
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let index = self.rules.len();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        match self.peek().tok.clone() {
            Tok::External => {
                self.next();
                let (head, _) = self.atom()?;
                self.expect(Tok::Dot, "`.`")?;
                self.rules.push(Rule::new(Some(head), [], [], index));
            }
            Tok::If => {
                self.next();
                self.body(&mut pos, &mut neg)?;
                self.rules.push(Rule::new(None, pos, neg, index));
            }
            _ => {
                let (head, _) = self.atom()?;
                let t = self.next();
                match &t.tok {
                    Tok::Dot => {}
                    Tok::If => self.body(&mut pos, &mut neg)?,
                    other => return self.error(&t, format!("expected `:-` or `.`, found {}", describe(other))),
                }
                self.rules.push(Rule::new(Some(head), pos, neg, index));
            }
        }
        Ok(())
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) | Tok::Var(s) | Tok::Int(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::If => "`:-`".into(),
        Tok::External => "`#external`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a ground program in native syntax. Rules keep source order and
/// atom ids follow first occurrence.
pub fn parse_program(text: &str) -> Result<GroundProgram, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, table: AtomTable::new(), rules: Vec::new() };
    while p.peek().tok != Tok::Eof {
        p.statement()?;
    }
    Ok(GroundProgram::new(p.table, p.rules))
}

/// Native text with every fact `f.` written as `#external f.`.
pub fn externalize_facts(p: &GroundProgram) -> String {
    let mut out = String::new();
    for r in p.rules() {
        match r.head {
            Some(h) if r.is_fact() => {
                out.push_str("#external ");
                out.push_str(p.name(h));
                out.push_str(".\n");
            }
            _ => {
                out.push_str(&p.rule_str(r));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::AtomSet;

    pub(crate) const P1: &str = "a :- k, not b.\nk :- e, not b.\nc :- a, b.\nb :- not a.\nc :- k.\nf :- e, not k, not c.\ne.\n";

    fn names(p: &GroundProgram, s: &AtomSet) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|a| p.name(*a).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn parses_p1() {
        let p = parse_program(P1).unwrap();
        assert_eq!(p.rules().len(), 7);
        assert_eq!(names(&p, &p.herbrand()), ["a", "b", "c", "e", "f", "k"]);
        assert_eq!(names(&p, p.facts()), ["e"]);
        assert_eq!(names(&p, p.nant()), ["a", "b", "c", "k"]);
    }

    #[test]
    fn empty_and_self_negating() {
        let p = parse_program("").unwrap();
        assert!(p.herbrand().is_empty());
        let p = parse_program("p :- not p.").unwrap();
        assert_eq!(p.rules().len(), 1);
        assert_eq!(names(&p, p.nant()), ["p"]);
    }

    #[test]
    fn nant_examples() {
        let p = parse_program("a :- b. b.").unwrap();
        assert!(p.nant().is_empty());
        let p = parse_program("p :- not q. q :- not p.").unwrap();
        assert_eq!(names(&p, p.nant()), ["p", "q"]);
    }

    #[test]
    fn canonical_terms_and_comments() {
        let p = parse_program("% coloring\ncolored(1, red) :- not colored( 1 ,blue). % tail\nf(g(-3),x).").unwrap();
        assert!(p.atom("colored(1,red)").is_some());
        assert!(p.atom("colored(1,blue)").is_some());
        assert!(p.atom("f(g(-3),x)").is_some());
    }

    #[test]
    fn constraints_and_duplicates() {
        let p = parse_program("p. :- p. p.").unwrap();
        assert_eq!(p.rules().len(), 3);
        assert!(p.rules()[1].is_constraint());
        assert_eq!(p.rules()[2].index, 2);
    }

    #[test]
    fn rejects_variables() {
        let err = parse_program("day(monday).\nopera(D) :- day(D).").unwrap_err();
        assert_eq!(err, ParseError::NonGround { line: 2, column: 7, variable: "D".into() });
        assert!(matches!(parse_program("p(_)."), Err(ParseError::NonGround { .. })));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_program("a :- b\nc.") {
            Err(ParseError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("{other:?}"),
        }
        assert!(parse_program("a :- .").is_err());
        assert!(parse_program("a :- b").is_err());
        assert!(parse_program("A.").is_err());
        assert!(parse_program("#show a.").is_err());
        assert!(parse_program("p().").is_err());
        assert!(parse_program("a : b.").is_err());
    }

    #[test]
    fn externalize() {
        let p = parse_program(P1).unwrap();
        let text = externalize_facts(&p);
        assert!(text.contains("#external e.\n"));
        assert!(text.contains("a :- k, not b.\n"));
        assert!(text.contains("f :- e, not k, not c.\n"));
        assert_eq!(externalize_facts(&GroundProgram::empty()), "");
        assert_eq!(externalize_facts(&parse_program("q.").unwrap()), "#external q.\n");
        // reading it back restores the facts
        let back = parse_program(&text).unwrap();
        assert_eq!(back.to_string(), p.to_string());
    }
}
