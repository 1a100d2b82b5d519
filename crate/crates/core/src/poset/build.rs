//! Construction trees for V-posets and their s-expression text form:
//!
//! ```text
//! (elem 1)            a single element labelled 1
//! (union T1 T2 ...)   disjoint union
//! (greatest x T)      T with a new greatest element x
//! (least x T)         T with a new least element x
//! ```

use std::fmt;
use std::str::FromStr;

use super::Poset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildTree {
    Element(usize),
    Union(Vec<BuildTree>),
    Greatest(usize, Box<BuildTree>),
    Least(usize, Box<BuildTree>),
}

impl BuildTree {
    pub fn union(children: Vec<BuildTree>) -> Self {
        BuildTree::Union(children)
    }

    pub fn greatest(label: usize, child: BuildTree) -> Self {
        BuildTree::Greatest(label, Box::new(child))
    }

    pub fn least(label: usize, child: BuildTree) -> Self {
        BuildTree::Least(label, Box::new(child))
    }

    /// Element labels in evaluation order: a greatest element comes before
    /// its subtree, a least element after it, union children in sequence.
    /// This order is always a greatest-first linear extension.
    pub fn element_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            BuildTree::Element(x) => out.push(*x),
            BuildTree::Union(children) => children.iter().for_each(|c| c.collect(out)),
            BuildTree::Greatest(x, child) => {
                out.push(*x);
                child.collect(out);
            }
            BuildTree::Least(x, child) => {
                child.collect(out);
                out.push(*x);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            BuildTree::Element(_) => 1,
            BuildTree::Union(children) => children.iter().map(BuildTree::len).sum(),
            BuildTree::Greatest(_, child) | BuildTree::Least(_, child) => 1 + child.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rejects empty unions and repeated labels.
    pub fn validate(&self) -> Result<()> {
        if self.has_empty_union() {
            return Err(Error::MalformedTree("empty union".into()));
        }
        let mut labels = self.element_order();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedTree(format!("label {} used twice", w[0])));
        }
        Ok(())
    }

    fn has_empty_union(&self) -> bool {
        match self {
            BuildTree::Element(_) => false,
            BuildTree::Union(children) => {
                children.is_empty() || children.iter().any(BuildTree::has_empty_union)
            }
            BuildTree::Greatest(_, child) | BuildTree::Least(_, child) => child.has_empty_union(),
        }
    }

    /// Evaluates the tree. Element ids follow [`element_order`](Self::element_order).
    pub fn build(&self) -> Result<Poset> {
        self.validate()?;
        self.eval()
    }

    fn eval(&self) -> Result<Poset> {
        match self {
            BuildTree::Element(x) => Poset::antichain(1).with_labels(vec![*x]),
            BuildTree::Union(children) => {
                let mut iter = children.iter();
                let first = iter.next().expect("validated non-empty").eval()?;
                iter.try_fold(first, |acc, c| acc.disjoint_union(&c.eval()?))
            }
            BuildTree::Greatest(x, child) => child.eval()?.with_greatest(*x),
            BuildTree::Least(x, child) => child.eval()?.with_least(*x),
        }
    }
}

impl fmt::Display for BuildTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildTree::Element(x) => write!(f, "(elem {x})"),
            BuildTree::Union(children) => {
                write!(f, "(union")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
            BuildTree::Greatest(x, child) => write!(f, "(greatest {x} {child})"),
            BuildTree::Least(x, child) => write!(f, "(least {x} {child})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Tokens<'a> {
    items: Vec<(usize, Token<'a>)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn lex(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (line_idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let line_no = line_idx + 1;
            let mut rest = line;
            while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
                rest = &rest[start..];
                if let Some(tail) = rest.strip_prefix('(') {
                    items.push((line_no, Token::Open));
                    rest = tail;
                } else if let Some(tail) = rest.strip_prefix(')') {
                    items.push((line_no, Token::Close));
                    rest = tail;
                } else {
                    let end = rest
                        .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                        .unwrap_or(rest.len());
                    items.push((line_no, Token::Atom(&rest[..end])));
                    rest = &rest[end..];
                }
            }
        }
        Self { items, pos: 0 }
    }

    fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or(self.items.last())
            .map_or(1, |(l, _)| *l)
    }

    fn next(&mut self) -> Result<Token<'a>> {
        let line = self.line();
        let tok = self
            .items
            .get(self.pos)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| Error::parse(line, "unexpected end of input"))?;
        self.pos += 1;
        Ok(tok)
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.items.get(self.pos).map(|(_, t)| t)
    }

    fn expect_close(&mut self) -> Result<()> {
        let line = self.line();
        match self.next()? {
            Token::Close => Ok(()),
            other => Err(Error::parse(line, format!("expected `)`, found {other:?}"))),
        }
    }

    fn label(&mut self) -> Result<usize> {
        let line = self.line();
        match self.next()? {
            Token::Atom(a) => a
                .parse()
                .map_err(|_| Error::parse(line, format!("expected an element label, got `{a}`"))),
            other => Err(Error::parse(line, format!("expected an element label, found {other:?}"))),
        }
    }

    fn tree(&mut self) -> Result<BuildTree> {
        let line = self.line();
        if self.next()? != Token::Open {
            return Err(Error::parse(line, "expected `(`"));
        }
        let head = match self.next()? {
            Token::Atom(a) => a,
            other => return Err(Error::parse(line, format!("expected a node kind, found {other:?}"))),
        };
        let tree = match head {
            "elem" => BuildTree::Element(self.label()?),
            "union" => {
                let mut children = Vec::new();
                while self.peek() == Some(&Token::Open) {
                    children.push(self.tree()?);
                }
                BuildTree::Union(children)
            }
            "greatest" => {
                let x = self.label()?;
                BuildTree::greatest(x, self.tree()?)
            }
            "least" => {
                let x = self.label()?;
                BuildTree::least(x, self.tree()?)
            }
            other => return Err(Error::parse(line, format!("unknown node kind `{other}`"))),
        };
        self.expect_close()?;
        Ok(tree)
    }
}

impl FromStr for BuildTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = Tokens::lex(s);
        let tree = tokens.tree()?;
        if tokens.peek().is_some() {
            return Err(Error::parse(tokens.line(), "trailing input after tree"));
        }
        Ok(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton() {
        let p = BuildTree::Element(1).build().unwrap();
        assert_eq!(p.n(), 1);
    }

    #[test]
    fn example_one_tree() {
        let t: BuildTree = "(least 4 (least 3 (union (elem 1) (elem 2))))".parse().unwrap();
        let expected = Poset::from_dag(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(t.build().unwrap(), expected);
        assert_eq!(t.element_order(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn union_of_chains_is_forest() {
        let chain = |a, b| BuildTree::greatest(a, BuildTree::Element(b));
        let p = BuildTree::union(vec![chain(1, 2), chain(3, 4)]).build().unwrap();
        assert_eq!(p.components().len(), 2);
        assert_eq!(p.covers().len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let text = "(greatest 5 (union (least 2 (elem 1)) (elem 3) (elem 4)))";
        let t: BuildTree = text.parse().unwrap();
        assert_eq!(t.to_string(), text);
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn malformed() {
        let dup = BuildTree::union(vec![BuildTree::Element(1), BuildTree::Element(1)]);
        assert!(matches!(dup.build(), Err(Error::MalformedTree(_))));
        assert!(matches!(BuildTree::union(vec![]).build(), Err(Error::MalformedTree(_))));
        for bad in ["(elem)", "(elem x)", "(twig 1)", "(elem 1", "(elem 1))", "elem 1"] {
            assert!(bad.parse::<BuildTree>().unwrap_err().is_parse(), "{bad}");
        }
    }
}
