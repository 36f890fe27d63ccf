//! Dictionary-driven segmentation of unbroken compounds.

use std::fmt;

use crate::error::{Error, Result};
use crate::thesaurus::Thesaurus;

pub const DEFAULT_LENGTH_CAP: usize = 16;

/// A split of an input string into thesaurus headwords.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segmentation {
    words: Vec<String>,
}

impl Segmentation {
    pub fn new(words: Vec<String>) -> Self {
        Segmentation { words }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn surface(&self) -> String {
        self.words.concat()
    }
}

impl fmt::Display for Segmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.words.join("/"))
    }
}

/// Every way to cover `input` with headwords, ordered lexicographically by
/// word end positions. Inputs with no cover give an empty list.
pub fn enumerate_segmentations(input: &str, thesaurus: &Thesaurus, length_cap: usize) -> Result<Vec<Segmentation>> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let n = chars.len();
    if n > length_cap {
        return Err(Error::ResourceLimit {
            what: "input length",
            actual: n,
            limit: length_cap,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let byte_at = |pos: usize| if pos == n { input.len() } else { chars[pos].0 };
    let longest = thesaurus.max_word_chars().min(n);

    // edges[i]: ends j such that input[i..j] is a headword, ascending
    let edges: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (i + 1..=(i + longest).min(n))
                .filter(|&j| thesaurus.contains(&input[byte_at(i)..byte_at(j)]))
                .collect()
        })
        .collect();

    // reaches_end[i]: some path from i to n exists
    let mut reaches_end = vec![false; n + 1];
    reaches_end[n] = true;
    for i in (0..n).rev() {
        reaches_end[i] = edges[i].iter().any(|&j| reaches_end[j]);
    }

    let mut out = Vec::new();
    let mut path = Vec::new();
    walk(0, n, &edges, &reaches_end, &mut path, &mut |ends| {
        let mut start = 0;
        let words = ends
            .iter()
            .map(|&end| {
                let w = input[byte_at(start)..byte_at(end)].to_owned();
                start = end;
                w
            })
            .collect();
        out.push(Segmentation::new(words));
    });
    Ok(out)
}

fn walk(
    pos: usize,
    n: usize,
    edges: &[Vec<usize>],
    reaches_end: &[bool],
    path: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if pos == n {
        emit(path);
        return;
    }
    for &next in &edges[pos] {
        if reaches_end[next] {
            path.push(next);
            walk(next, n, edges, reaches_end, path, emit);
            path.pop();
        }
    }
}

/// Keeps the segmentations with the fewest words; ties are all kept.
pub fn min_content_words(segmentations: Vec<Segmentation>) -> Vec<Segmentation> {
    let Some(min) = segmentations.iter().map(Segmentation::len).min() else {
        return segmentations;
    };
    segmentations.into_iter().filter(|s| s.len() == min).collect()
}
