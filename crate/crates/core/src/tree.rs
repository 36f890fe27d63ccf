//! Binary bracketings over ordered word sequences.
//!
//! A subtree is headed by its rightmost leaf, so every internal node links
//! the head of its left child (the modifier) to the head of its right child
//! (the modifiee). Trees print in list notation: `[[118,311],137]`.

use std::fmt::{self, Display, Write};

use crate::error::{Error, Result};
use crate::thesaurus::CategoryId;

pub const DEFAULT_WORD_CAP: usize = 10;

/// Unlabelled bracketing of `leaves()` ordered positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(left: Shape, right: Shape) -> Shape {
        Shape::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Modifier distances of all internal nodes, in post-order.
    pub fn modifier_distances(&self) -> Vec<usize> {
        fn go(shape: &Shape, offset: usize, out: &mut Vec<usize>) -> usize {
            match shape {
                Shape::Leaf => offset,
                Shape::Node(l, r) => {
                    let left_head = go(l, offset, out);
                    let right_head = go(r, offset + l.leaves(), out);
                    out.push(right_head - left_head);
                    right_head
                }
            }
        }
        let mut out = Vec::new();
        go(self, 1, &mut out);
        out
    }

    pub fn distance_sum(&self) -> usize {
        self.modifier_distances().iter().sum()
    }

    /// List notation with `labels` at the leaves, left to right.
    pub fn render<L: Display>(&self, labels: &[L]) -> String {
        fn go<L: Display>(shape: &Shape, labels: &mut std::slice::Iter<'_, L>, out: &mut String) {
            match shape {
                Shape::Leaf => {
                    if let Some(label) = labels.next() {
                        let _ = write!(out, "{label}");
                    }
                }
                Shape::Node(l, r) => {
                    out.push('[');
                    go(l, labels, out);
                    out.push(',');
                    go(r, labels, out);
                    out.push(']');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut labels.iter(), &mut out);
        out
    }
}

/// All bracketings of `n` leaves; there are Catalan(n - 1) of them.
pub fn enumerate_shapes(n: usize, word_cap: usize) -> Result<Vec<Shape>> {
    if n == 0 {
        return Err(Error::Bracket {
            text: String::new(),
            reason: "a tree needs at least one leaf".into(),
        });
    }
    if n > word_cap {
        return Err(Error::ResourceLimit {
            what: "word count",
            actual: n,
            limit: word_cap,
        });
    }
    let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::Leaf]];
    for size in 2..=n {
        let mut shapes = Vec::new();
        for left in 1..size {
            for l in &by_size[left] {
                for r in &by_size[size - left] {
                    shapes.push(Shape::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(shapes);
    }
    Ok(by_size.swap_remove(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    /// 1-based position in the word sequence.
    pub index: usize,
    pub word: String,
    pub category: CategoryId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureTree {
    Leaf(Leaf),
    Node(Box<StructureTree>, Box<StructureTree>),
}

impl StructureTree {
    /// Labels `shape` with `words` and their chosen `categories`.
    pub fn from_shape(shape: &Shape, words: &[String], categories: &[CategoryId]) -> Result<Self> {
        if shape.leaves() != words.len() || words.len() != categories.len() {
            return Err(Error::Bracket {
                text: shape.render(words),
                reason: format!(
                    "{} leaves for {} words and {} categories",
                    shape.leaves(),
                    words.len(),
                    categories.len()
                ),
            });
        }
        fn go(shape: &Shape, next: &mut usize, words: &[String], categories: &[CategoryId]) -> StructureTree {
            match shape {
                Shape::Leaf => {
                    let i = *next;
                    *next += 1;
                    StructureTree::Leaf(Leaf {
                        index: i + 1,
                        word: words[i].clone(),
                        category: categories[i].clone(),
                    })
                }
                Shape::Node(l, r) => {
                    let left = go(l, next, words, categories);
                    let right = go(r, next, words, categories);
                    StructureTree::Node(Box::new(left), Box::new(right))
                }
            }
        }
        Ok(go(shape, &mut 0, words, categories))
    }

    /// The rightmost leaf, which carries the subtree's category.
    pub fn head(&self) -> &Leaf {
        match self {
            StructureTree::Leaf(leaf) => leaf,
            StructureTree::Node(_, r) => r.head(),
        }
    }

    pub fn category(&self) -> &CategoryId {
        &self.head().category
    }

    pub fn children(&self) -> Option<(&StructureTree, &StructureTree)> {
        match self {
            StructureTree::Leaf(_) => None,
            StructureTree::Node(l, r) => Some((l, r)),
        }
    }

    /// Word distance between the heads of the two children; `None` for leaves.
    pub fn modifier_distance(&self) -> Option<usize> {
        self.children().map(|(l, r)| r.head().index - l.head().index)
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        fn go<'a>(t: &'a StructureTree, out: &mut Vec<&'a Leaf>) {
            match t {
                StructureTree::Leaf(leaf) => out.push(leaf),
                StructureTree::Node(l, r) => {
                    go(l, out);
                    go(r, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn shape(&self) -> Shape {
        match self {
            StructureTree::Leaf(_) => Shape::Leaf,
            StructureTree::Node(l, r) => Shape::node(l.shape(), r.shape()),
        }
    }

    pub fn render_categories(&self) -> String {
        let labels: Vec<_> = self.leaves().iter().map(|l| &l.category).collect();
        self.shape().render(&labels)
    }

    pub fn render_words(&self) -> String {
        let labels: Vec<_> = self.leaves().iter().map(|l| &l.word).collect();
        self.shape().render(&labels)
    }

    /// `word:category` labels; the canonical form used to order ties.
    pub fn render_labeled(&self) -> String {
        let labels: Vec<_> = self
            .leaves()
            .iter()
            .map(|l| format!("{}:{}", l.word, l.category))
            .collect();
        self.shape().render(&labels)
    }
}

impl Display for StructureTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_categories())
    }
}

/// Parses list notation such as `[[新型,間接],税]` into a shape and its leaf
/// words. A bare word or `[word]` is a single leaf.
pub fn parse_bracketing(text: &str) -> Result<(Shape, Vec<String>)> {
    let fail = |reason: &str| Error::Bracket {
        text: text.to_owned(),
        reason: reason.to_owned(),
    };
    let mut parser = Parser {
        chars: text.char_indices().peekable(),
        text,
        words: Vec::new(),
    };
    let shape = parser.tree().map_err(|r| fail(&r))?;
    parser.skip_ws();
    if parser.chars.peek().is_some() {
        return Err(fail("unexpected text after the closing bracket"));
    }
    Ok((shape, parser.words))
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    words: Vec<String>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn tree(&mut self) -> std::result::Result<Shape, String> {
        self.skip_ws();
        match self.chars.peek() {
            Some((_, '[')) => {
                self.chars.next();
                let left = self.tree()?;
                self.skip_ws();
                let shape = match self.chars.next() {
                    Some((_, ']')) => left,
                    Some((_, ',')) => {
                        let right = self.tree()?;
                        self.skip_ws();
                        match self.chars.next() {
                            Some((_, ']')) => Shape::node(left, right),
                            Some((_, ',')) => return Err("a node has exactly two children".into()),
                            _ => return Err("expected ']'".into()),
                        }
                    }
                    _ => return Err("expected ',' or ']'".into()),
                };
                Ok(shape)
            }
            Some(&(start, _)) => {
                let mut end = start;
                while let Some((i, c)) = self.chars.next_if(|&(_, c)| !matches!(c, '[' | ']' | ',')) {
                    end = i + c.len_utf8();
                }
                let word = self.text[start..end].trim();
                if word.is_empty() {
                    return Err("empty word".into());
                }
                self.words.push(word.to_owned());
                Ok(Shape::Leaf)
            }
            None => Err("unexpected end of input".into()),
        }
    }
}
