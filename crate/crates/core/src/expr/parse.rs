//! Reader for the expression grammar:
//!
//! ```text
//! text    := [ "n" "=" INT (";" | newline) ] expr
//! expr    := term { "+" term }
//! term    := "P[" INT "]" "(" label ")"
//!          | "S[" INT [ "," INT ] "]" "(" label "," label ")"
//!          | "N[" INT "]" "(" label "," label [ ";" [ labels | "∅" ] ] ")"
//!          | "Mirror(" expr ")"
//!          | "Relabel(" expr [ ";" label "->" label { "," label "->" label } ] ")"
//!          | "(" expr ")" | "0"
//! ```
//!
//! Whitespace is insignificant apart from ending the header line.

use thiserror::Error;

use super::ast::{LinkExpression, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    Arrow,
    EmptySet,
    Newline,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut idx = 0;
    while idx < chars.len() {
        let (pos, c) = chars[idx];
        let next = chars.get(idx + 1).map(|x| x.1);
        if c == '\n' {
            out.push((pos, Tok::Newline));
            idx += 1;
        } else if c.is_whitespace() {
            idx += 1;
        } else if c == '-' && next == Some('>') {
            out.push((pos, Tok::Arrow));
            idx += 2;
        } else if c.is_ascii_digit() || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) {
            let start = idx;
            idx += 1;
            while idx < chars.len() && chars[idx].1.is_ascii_digit() {
                idx += 1;
            }
            let end = chars.get(idx).map_or(text.len(), |x| x.0);
            let lit = &text[pos..end];
            let v = lit.parse::<i64>().map_err(|_| ParseError {
                pos: chars[start].0,
                message: format!("integer literal {lit} out of range"),
            })?;
            out.push((pos, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let mut end = idx;
            while end < chars.len() && chars[end].1.is_ascii_alphanumeric() {
                end += 1;
            }
            let stop = chars.get(end).map_or(text.len(), |x| x.0);
            out.push((pos, Tok::Ident(text[pos..stop].to_string())));
            idx = end;
        } else if c == '∅' {
            out.push((pos, Tok::EmptySet));
            idx += 1;
        } else if "[](),;+=".contains(c) {
            out.push((pos, Tok::Sym(c)));
            idx += 1;
        } else {
            return Err(ParseError { pos, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

enum Raw {
    Leaf(Node, usize),
    Union(Vec<Raw>),
    Mirror(Box<Raw>),
    Relabel(Box<Raw>, Vec<(usize, usize)>, usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.at += 1;
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_newlines();
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        self.skip_newlines();
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_newlines();
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected integer"),
        }
    }

    fn label(&mut self) -> Result<usize, ParseError> {
        let pos = self.pos();
        let v = self.int()?;
        if v < 1 {
            return Err(ParseError { pos, message: format!("label {v} must be positive") });
        }
        Ok(v as usize)
    }

    fn header(&mut self) -> Result<Option<usize>, ParseError> {
        self.skip_newlines();
        let is_header = matches!(self.peek(), Some(Tok::Ident(s)) if s == "n")
            && matches!(self.toks.get(self.at + 1), Some((_, Tok::Sym('='))));
        if !is_header {
            return Ok(None);
        }
        self.at += 2;
        let pos = self.pos();
        let n = self.int()?;
        if n < 1 {
            return Err(ParseError { pos, message: "component count must be at least 1".into() });
        }
        match self.peek() {
            Some(Tok::Newline) | Some(Tok::Sym(';')) => self.at += 1,
            None => {}
            _ => return self.err("expected ';' or newline after header"),
        }
        Ok(Some(n as usize))
    }

    fn expr(&mut self) -> Result<Raw, ParseError> {
        let mut items = vec![self.term()?];
        while self.eat_sym('+') {
            items.push(self.term()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Raw::Union(items) })
    }

    fn term(&mut self) -> Result<Raw, ParseError> {
        self.skip_newlines();
        let pos = self.pos();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(0)) => {
                self.at += 1;
                Ok(Raw::Union(Vec::new()))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "P" => {
                        self.expect_sym('[')?;
                        let m = self.int()?;
                        self.expect_sym(']')?;
                        self.expect_sym('(')?;
                        let i = self.label()?;
                        self.expect_sym(')')?;
                        Ok(Raw::Leaf(Node::ProjectivePlanes { m, i }, pos))
                    }
                    "S" => {
                        self.expect_sym('[')?;
                        let p = self.int()?;
                        let q = if self.eat_sym(',') { self.int()? } else { 0 };
                        self.expect_sym(']')?;
                        self.expect_sym('(')?;
                        let i = self.label()?;
                        self.expect_sym(',')?;
                        let j = self.label()?;
                        self.expect_sym(')')?;
                        Ok(Raw::Leaf(Node::Strand { p, q, i, j }, pos))
                    }
                    "N" => {
                        self.expect_sym('[')?;
                        let p = self.int()?;
                        self.expect_sym(']')?;
                        self.expect_sym('(')?;
                        let i = self.label()?;
                        self.expect_sym(',')?;
                        let j = self.label()?;
                        let mut beads = Vec::new();
                        if self.eat_sym(';') {
                            self.skip_newlines();
                            if self.peek() == Some(&Tok::EmptySet) {
                                self.at += 1;
                            } else if self.peek() != Some(&Tok::Sym(')')) {
                                beads.push(self.label()?);
                                while self.eat_sym(',') {
                                    beads.push(self.label()?);
                                }
                            }
                        }
                        self.expect_sym(')')?;
                        Ok(Raw::Leaf(Node::Necklace { p, i, j, beads }, pos))
                    }
                    "Mirror" => {
                        self.expect_sym('(')?;
                        let e = self.expr()?;
                        self.expect_sym(')')?;
                        Ok(Raw::Mirror(Box::new(e)))
                    }
                    "Relabel" => {
                        self.expect_sym('(')?;
                        let e = self.expr()?;
                        let mut maps = Vec::new();
                        if self.eat_sym(';') {
                            loop {
                                let a = self.label()?;
                                self.skip_newlines();
                                if self.peek() != Some(&Tok::Arrow) {
                                    return self.err("expected '->'");
                                }
                                self.at += 1;
                                let b = self.label()?;
                                maps.push((a, b));
                                if !self.eat_sym(',') {
                                    break;
                                }
                            }
                        }
                        self.expect_sym(')')?;
                        Ok(Raw::Relabel(Box::new(e), maps, pos))
                    }
                    other => Err(ParseError { pos, message: format!("unknown constructor {other:?}") }),
                }
            }
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn raw_max_label(raw: &Raw) -> usize {
    match raw {
        Raw::Leaf(node, _) => node.max_label(),
        Raw::Union(items) => items.iter().map(raw_max_label).max().unwrap_or(0),
        Raw::Mirror(inner) => raw_max_label(inner),
        Raw::Relabel(inner, maps, _) => {
            maps.iter().map(|&(a, b)| a.max(b)).fold(raw_max_label(inner), usize::max)
        }
    }
}

fn finish(raw: Raw, n: usize) -> Result<Node, ParseError> {
    Ok(match raw {
        Raw::Leaf(node, pos) => {
            node.validate(n).map_err(|message| ParseError { pos, message })?;
            node
        }
        Raw::Union(items) => Node::DisjointUnion(items.into_iter().map(|r| finish(r, n)).collect::<Result<_, _>>()?),
        Raw::Mirror(inner) => Node::Mirror(Box::new(finish(*inner, n)?)),
        Raw::Relabel(inner, maps, pos) => {
            let mut perm: Vec<usize> = (1..=n).collect();
            let mut assigned = vec![false; n + 1];
            for (a, b) in maps {
                if a > n || b > n {
                    return Err(ParseError { pos, message: format!("relabel {a}->{b} out of range 1..={n}") });
                }
                if std::mem::replace(&mut assigned[a], true) {
                    return Err(ParseError { pos, message: format!("label {a} relabeled twice") });
                }
                perm[a - 1] = b;
            }
            let node = Node::Relabel(Box::new(finish(*inner, n)?), perm);
            if let Node::Relabel(_, perm) = &node {
                let mut seen = vec![false; n + 1];
                for &p in perm {
                    if std::mem::replace(&mut seen[p], true) {
                        return Err(ParseError { pos, message: "relabeling is not a bijection".into() });
                    }
                }
            }
            node
        }
    })
}

/// Parses an expression. Without a header, `n` is the largest label used.
pub fn parse_expr(text: &str) -> Result<LinkExpression, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let header = p.header()?;
    let raw = p.expr()?;
    p.skip_newlines();
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let n = header.unwrap_or_else(|| raw_max_label(&raw).max(1));
    let root = finish(raw, n)?;
    Ok(LinkExpression { n, root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_constructors() {
        let e = parse_expr("S[1](1,2)").unwrap();
        assert_eq!(e.root, Node::Strand { p: 1, q: 0, i: 1, j: 2 });
        assert_eq!(e.n, 2);
        let e = parse_expr("S[1,1](1,2)").unwrap();
        assert_eq!(e.root, Node::Strand { p: 1, q: 1, i: 1, j: 2 });
        let e = parse_expr("N[0](1,2;3) + P[2](1)").unwrap();
        match e.root {
            Node::DisjointUnion(items) => assert_eq!(items.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_and_whitespace() {
        let e = parse_expr("n=4\n  Mirror( P[ -3 ](1) )").unwrap();
        assert_eq!(e.n, 4);
        assert_eq!(e.root, Node::Mirror(Box::new(Node::ProjectivePlanes { m: -3, i: 1 })));
        let e = parse_expr("n=3; N[2](1,2;∅)").unwrap();
        assert_eq!(e.root, Node::Necklace { p: 2, i: 1, j: 2, beads: vec![] });
        assert_eq!(parse_expr("0").unwrap().root, Node::empty());
    }

    #[test]
    fn relabel_builds_permutation() {
        let e = parse_expr("Relabel(S[1](1,2); 1->2, 2->1)").unwrap();
        assert_eq!(e.root, Node::Relabel(Box::new(Node::Strand { p: 1, q: 0, i: 1, j: 2 }), vec![2, 1]));
        let err = parse_expr("Relabel(S[1](1,2); 1->2)").unwrap_err();
        assert!(err.message.contains("bijection"), "{err}");
    }

    #[test]
    fn reports_errors_with_position() {
        let err = parse_expr("S[1](1 2)").unwrap_err();
        assert_eq!(err.pos, 7);
        let err = parse_expr("n=2; P[1](3)").unwrap_err();
        assert!(err.message.contains("out of range"));
        assert!(parse_expr("Q[1](1)").is_err());
        assert!(parse_expr("P[1](0)").is_err());
        assert!(parse_expr("P[1](1) +").is_err());
    }

    #[test]
    fn printer_round_trips() {
        for src in [
            "n=3; N[0](1,2;3) + P[2](1)",
            "n=4; Mirror(S[1,-1](2,1) + N[3](1,4;2,2,3))",
            "n=3; Relabel(N[0](1,2;3); 1->3, 3->1) + 0",
            "n=2; (P[1](1) + P[1](2)) + S[2](1,2)",
        ] {
            let e = parse_expr(src).unwrap();
            let again = parse_expr(&e.to_text()).unwrap();
            assert_eq!(e, again, "{src}");
        }
    }
}
