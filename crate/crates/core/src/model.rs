//! Frozen frequency table over ordered category pairs.
//!
//! Counts are exact integers; probabilities and association scores are
//! derived on demand in whichever [`Scalar`] the caller asks for.
//!
//! Binary layout (little endian):
//!
//! ```text
//! magic "CNCM" | version u16 | level u8 | 0u8 | payload length u64
//! payload: total u64 | entries u64 | (left [level] | right [level] | count u64)*
//! crc32 of everything before it
//! ```
//!
//! Entries are sorted by `(left, right)`, so equal models give identical files.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ingest::PairCounts;
use crate::scalar::Scalar;
use crate::thesaurus::CategoryId;

const MAGIC: &[u8; 4] = b"CNCM";
pub const FORMAT_VERSION: u16 = 1;
const HEADER_LEN: usize = 16;

/// Association measure between a left and a right category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Relative frequency of the ordered pair.
    Cv1,
    /// Pair probability over the product of its positional marginals.
    Cv2,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Cv1 => "cv1",
            Measure::Cv2 => "cv2",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cv1" | "prob" | "probability" => Ok(Measure::Cv1),
            "cv2" | "mis" => Ok(Measure::Cv2),
            other => Err(format!("unknown measure {other:?} (expected cv1 or cv2)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollocationModel {
    level: usize,
    pairs: PairCounts,
    left: BTreeMap<CategoryId, u64>,
    right: BTreeMap<CategoryId, u64>,
    total: u64,
}

impl CollocationModel {
    pub fn build(pairs: PairCounts, level: usize) -> Result<Self> {
        let pairs: PairCounts = pairs.into_iter().filter(|&(_, n)| n > 0).collect();
        if pairs.is_empty() {
            return Err(Error::Empty("category pair multiset".into()));
        }
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        let mut total = 0u64;
        for ((l, r), &n) in &pairs {
            for c in [l, r] {
                if c.level() != level {
                    return Err(Error::LevelMismatch {
                        expected: level,
                        found: c.level(),
                    });
                }
            }
            *left.entry(l.clone()).or_insert(0) += n;
            *right.entry(r.clone()).or_insert(0) += n;
            total += n;
        }
        Ok(CollocationModel {
            level,
            pairs,
            left,
            right,
            total,
        })
    }

    /// Convenience constructor from `(left, right, count)` triples.
    pub fn from_triples<'a>(level: usize, triples: impl IntoIterator<Item = (&'a str, &'a str, u64)>) -> Result<Self> {
        let mut pairs = PairCounts::new();
        for (l, r, n) in triples {
            *pairs.entry((CategoryId::new(l)?, CategoryId::new(r)?)).or_insert(0) += n;
        }
        CollocationModel::build(pairs, level)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn pair_count(&self, left: &CategoryId, right: &CategoryId) -> u64 {
        self.pairs.get(&(left.clone(), right.clone())).copied().unwrap_or(0)
    }

    pub fn left_count(&self, category: &CategoryId) -> u64 {
        self.left.get(category).copied().unwrap_or(0)
    }

    pub fn right_count(&self, category: &CategoryId) -> u64 {
        self.right.get(category).copied().unwrap_or(0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&CategoryId, &CategoryId, u64)> {
        self.pairs.iter().map(|((l, r), &n)| (l, r, n))
    }

    pub fn left_marginals(&self) -> &BTreeMap<CategoryId, u64> {
        &self.left
    }

    pub fn right_marginals(&self) -> &BTreeMap<CategoryId, u64> {
        &self.right
    }

    /// `P(left, right)`; zero for unseen pairs.
    pub fn prob<S: Scalar>(&self, left: &CategoryId, right: &CategoryId) -> S {
        S::from_ratio(self.pair_count(left, right).into(), self.total.into())
    }

    /// `P(left, *)`.
    pub fn prob_left<S: Scalar>(&self, category: &CategoryId) -> S {
        S::from_ratio(self.left_count(category).into(), self.total.into())
    }

    /// `P(*, right)`.
    pub fn prob_right<S: Scalar>(&self, category: &CategoryId) -> S {
        S::from_ratio(self.right_count(category).into(), self.total.into())
    }

    pub fn cv1<S: Scalar>(&self, left: &CategoryId, right: &CategoryId) -> S {
        self.prob(left, right)
    }

    /// `P(l, r) / (P(l, *) P(*, r))`, or zero when the pair is unseen.
    pub fn cv2<S: Scalar>(&self, left: &CategoryId, right: &CategoryId) -> S {
        let n = self.pair_count(left, right);
        if n == 0 {
            return S::zero();
        }
        // (n/N) / ((a/N)(b/N)) = nN / ab
        let num = u128::from(n) * u128::from(self.total);
        let den = u128::from(self.left_count(left)) * u128::from(self.right_count(right));
        S::from_ratio(num, den)
    }

    pub fn association<S: Scalar>(&self, measure: Measure, left: &CategoryId, right: &CategoryId) -> S {
        match measure {
            Measure::Cv1 => self.cv1(left, right),
            Measure::Cv2 => self.cv2(left, right),
        }
    }

    /// Returns the same table with every count multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let pairs = self.pairs.iter().map(|(k, &n)| (k.clone(), n * factor)).collect();
        CollocationModel::build(pairs, self.level)
    }

    /// Debug listing: one `left<TAB>right<TAB>count` line per pair.
    pub fn dump_tsv(&self) -> String {
        let mut out = String::new();
        for (l, r, n) in self.pairs() {
            out.push_str(&format!("{l}\t{r}\t{n}\n"));
        }
        out
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut payload = Vec::with_capacity(16 + self.pairs.len() * (2 * self.level + 8));
        payload.extend_from_slice(&self.total.to_le_bytes());
        payload.extend_from_slice(&(self.pairs.len() as u64).to_le_bytes());
        for (l, r, n) in self.pairs() {
            payload.extend_from_slice(l.as_str().as_bytes());
            payload.extend_from_slice(r.as_str().as_bytes());
            payload.extend_from_slice(&n.to_le_bytes());
        }

        let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + 4);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.push(self.level as u8);
        out.push(0);
        out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        out.extend_from_slice(&payload);
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.is_empty() {
            return Err(Error::ModelFormat("empty file".into()));
        }
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::ModelFormat("missing or damaged header".into()));
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != FORMAT_VERSION {
            return Err(Error::ModelVersion {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        let level = usize::from(bytes[6]);
        let payload_len = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let available = (bytes.len() - HEADER_LEN) as u64;
        if available < payload_len.saturating_add(4) {
            return Err(Error::ModelTruncated {
                expected: payload_len,
                found: available.saturating_sub(4),
            });
        }
        if available > payload_len + 4 {
            return Err(Error::ModelFormat("trailing bytes after checksum".into()));
        }
        let body_end = HEADER_LEN + payload_len as usize;
        let stored = u32::from_le_bytes(bytes[body_end..].try_into().unwrap());
        let computed = crc32fast::hash(&bytes[..body_end]);
        if stored != computed {
            return Err(Error::ModelChecksum { stored, computed });
        }

        let mut reader = Reader(&bytes[HEADER_LEN..body_end]);
        let total = reader.u64()?;
        let entries = reader.u64()?;
        let mut pairs = PairCounts::new();
        let mut previous: Option<(CategoryId, CategoryId)> = None;
        for _ in 0..entries {
            let l = reader.category(level)?;
            let r = reader.category(level)?;
            let n = reader.u64()?;
            let key = (l, r);
            if previous.as_ref().is_some_and(|p| p >= &key) {
                return Err(Error::ModelFormat("entries out of order".into()));
            }
            previous = Some(key.clone());
            pairs.insert(key, n);
        }
        if !reader.0.is_empty() {
            return Err(Error::ModelFormat("unexpected bytes after entries".into()));
        }
        let model = CollocationModel::build(pairs, level)?;
        if model.total != total {
            return Err(Error::ModelFormat(format!(
                "stored total {total} disagrees with counts {}",
                model.total
            )));
        }
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        CollocationModel::from_bytes(&bytes)
    }
}

struct Reader<'a>(&'a [u8]);

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        if self.0.len() < n {
            return Err(Error::ModelFormat("entry table ends early".into()));
        }
        let (head, tail) = self.0.split_at(n);
        self.0 = tail;
        Ok(head)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn category(&mut self, level: usize) -> Result<CategoryId> {
        let raw = self.take(level)?;
        let code = std::str::from_utf8(raw).map_err(|_| Error::ModelFormat("category is not text".into()))?;
        CategoryId::new(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn c(s: &str) -> CategoryId {
        CategoryId::new(s).unwrap()
    }

    fn abac() -> CollocationModel {
        CollocationModel::from_triples(1, [("1", "2", 2), ("1", "3", 1)]).unwrap()
    }

    #[test]
    fn tallies() {
        let m = abac();
        assert_eq!(m.total(), 3);
        assert_eq!(m.left_count(&c("1")), 3);
        assert_eq!(m.right_count(&c("2")), 2);
        assert_eq!(m.right_count(&c("3")), 1);

        let single = CollocationModel::from_triples(1, [("1", "2", 1)]).unwrap();
        assert_eq!(single.total(), 1);
        assert_eq!(single.left_count(&c("1")), 1);
        assert_eq!(single.right_count(&c("2")), 1);
    }

    #[test]
    fn empty_multiset_is_rejected() {
        assert!(matches!(
            CollocationModel::build(PairCounts::new(), 3),
            Err(Error::Empty(_))
        ));
        assert!(CollocationModel::from_triples(1, [("1", "2", 0)]).is_err());
    }

    #[test]
    fn level_is_checked() {
        assert!(matches!(
            CollocationModel::from_triples(3, [("12", "345", 1)]),
            Err(Error::LevelMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn probabilities() {
        let m = abac();
        assert_eq!(m.prob::<BigRational>(&c("1"), &c("2")), BigRational::from_ratio(2, 3));
        assert!((m.prob::<f64>(&c("1"), &c("2")) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.prob::<f64>(&c("2"), &c("1")), 0.0);
        let single = CollocationModel::from_triples(1, [("1", "2", 1)]).unwrap();
        assert_eq!(single.prob::<f64>(&c("1"), &c("2")), 1.0);
        assert_eq!(single.cv1::<f64>(&c("1"), &c("2")), 1.0);
        assert_eq!(m.cv1::<f64>(&c("1"), &c("2")), m.prob::<f64>(&c("1"), &c("2")));
    }

    #[test]
    fn mis_values() {
        let m = abac();
        // (2/3) / ((3/3)(2/3)) = 1
        assert_eq!(m.cv2::<BigRational>(&c("1"), &c("2")), BigRational::from_ratio(1, 1));
        assert_eq!(m.cv2::<f64>(&c("1"), &c("3")), 1.0);
        assert_eq!(m.cv2::<f64>(&c("3"), &c("1")), 0.0);
        assert_eq!(m.cv2::<f64>(&c("9"), &c("9")), 0.0);
        let single = CollocationModel::from_triples(1, [("1", "2", 1)]).unwrap();
        assert_eq!(single.cv2::<f64>(&c("1"), &c("2")), 1.0);
    }

    #[test]
    fn mis_is_positional() {
        // (1,2):1 (2,1):1 (1,3):2  => cv2(1,2) = 1*4/(3*1), cv2(2,1) = 1*4/(1*1)
        let m = CollocationModel::from_triples(1, [("1", "2", 1), ("2", "1", 1), ("1", "3", 2)]).unwrap();
        let ab: BigRational = m.cv2(&c("1"), &c("2"));
        let ba: BigRational = m.cv2(&c("2"), &c("1"));
        assert_eq!(ab, BigRational::from_ratio(4, 3));
        assert_eq!(ba, BigRational::from_ratio(4, 1));
    }

    #[test]
    fn round_trip_bytes() {
        let m = abac();
        let bytes = m.to_bytes();
        assert_eq!(CollocationModel::from_bytes(&bytes).unwrap(), m);
        assert_eq!(bytes, CollocationModel::from_bytes(&bytes).unwrap().to_bytes());
    }

    #[test]
    fn corrupted_count_fails_checksum() {
        let mut bytes = abac().to_bytes();
        let last_count = bytes.len() - 4 - 8;
        bytes[last_count] ^= 0x01;
        assert!(matches!(
            CollocationModel::from_bytes(&bytes),
            Err(Error::ModelChecksum { .. })
        ));
    }

    #[test]
    fn distinct_load_errors() {
        let bytes = abac().to_bytes();
        assert!(matches!(CollocationModel::from_bytes(&[]), Err(Error::ModelFormat(_))));
        assert!(matches!(
            CollocationModel::from_bytes(&bytes[..bytes.len() - 6]),
            Err(Error::ModelTruncated { .. })
        ));
        let mut future = bytes.clone();
        future[4] = 9;
        assert!(matches!(
            CollocationModel::from_bytes(&future),
            Err(Error::ModelVersion { found: 9, .. })
        ));
        let mut junk = bytes.clone();
        junk[0] = b'X';
        assert!(matches!(
            CollocationModel::from_bytes(&junk),
            Err(Error::ModelFormat(_))
        ));
    }

    #[test]
    fn dump_lists_sorted_pairs() {
        assert_eq!(abac().dump_tsv(), "1\t2\t2\n1\t3\t1\n");
    }

    #[test]
    fn save_and_load_file() {
        let dir = std::env::temp_dir().join(format!("cncm-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("model.bin");
        let m = abac();
        m.save(&path).unwrap();
        assert_eq!(CollocationModel::load(&path).unwrap(), m);
        fs::remove_dir_all(&dir).unwrap();
    }

    fn model_strategy() -> impl Strategy<Value = CollocationModel> {
        proptest::collection::btree_map(("[0-9]{2}", "[0-9]{2}"), 1u64..50, 1..40).prop_map(|m| {
            let pairs = m.into_iter().map(|((l, r), n)| ((c(&l), c(&r)), n)).collect();
            CollocationModel::build(pairs, 2).unwrap()
        })
    }

    proptest! {
        #[test]
        fn laws(m in model_strategy()) {
            let sum: f64 = m.pairs().map(|(l, r, _)| m.prob::<f64>(l, r)).sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            let exact: BigRational = m.pairs().map(|(l, r, _)| m.prob::<BigRational>(l, r)).sum();
            prop_assert_eq!(exact, BigRational::from_ratio(1, 1));

            for (cat, &n) in m.left_marginals() {
                let s: u64 = m.pairs().filter(|(l, _, _)| *l == cat).map(|(_, _, k)| k).sum();
                prop_assert_eq!(s, n);
            }
            for (cat, &n) in m.right_marginals() {
                let s: u64 = m.pairs().filter(|(_, r, _)| *r == cat).map(|(_, _, k)| k).sum();
                prop_assert_eq!(s, n);
            }
            prop_assert_eq!(m.left_marginals().values().sum::<u64>(), m.total());
            prop_assert_eq!(m.right_marginals().values().sum::<u64>(), m.total());

            for (l, r, _) in m.pairs() {
                let direct = m.prob::<f64>(l, r) / (m.prob_left::<f64>(l) * m.prob_right::<f64>(r));
                prop_assert!((m.cv2::<f64>(l, r) - direct).abs() <= 1e-12 * direct.max(1.0));
            }

            prop_assert_eq!(CollocationModel::from_bytes(&m.to_bytes()).unwrap(), m);
        }
    }
}
