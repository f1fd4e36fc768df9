//! Combinatorial neural codes and inductive piercedness.
//!
//! A code is a set of 0/1 words containing the zero word. The families
//! built here come from closed-curve arrangements: a star family whose
//! curves all meet one distinguished curve, a pair family of chained
//! two-curve intersections inside one outer curve, and a path
//! generalization allowing each chain an arbitrary length.
//!
//! The piercedness machinery works on the abstract description (labels and
//! zones) and searches for a removal order in which each deleted label
//! pierces at most `k` of the remaining ones.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A binary code on `n_neurons` neurons. Words are stored in construction
/// order with the zero word first; curve-arrangement constructors keep the
/// zone order that later becomes the column order of the code's matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeRepr", into = "CodeRepr")]
pub struct NeuralCode {
    n_neurons: usize,
    words: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    n: usize,
    words: Vec<String>,
}

impl TryFrom<CodeRepr> for NeuralCode {
    type Error = Error;
    fn try_from(r: CodeRepr) -> Result<Self> {
        let words: Result<Vec<Vec<u8>>> = r
            .words
            .iter()
            .map(|w| {
                w.chars()
                    .map(|c| match c {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(Error::Parse(format!("bad code character {other:?}"))),
                    })
                    .collect()
            })
            .collect();
        NeuralCode::new(r.n, words?)
    }
}

impl From<NeuralCode> for CodeRepr {
    fn from(c: NeuralCode) -> Self {
        CodeRepr {
            n: c.n_neurons,
            words: c
                .words
                .iter()
                .map(|w| w.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect())
                .collect(),
        }
    }
}

impl NeuralCode {
    /// Validate and wrap a word list: equal arity, 0/1 entries, no
    /// duplicates, zero word present (it is moved to the front).
    pub fn new(n_neurons: usize, words: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for w in &words {
            if w.len() != n_neurons {
                return Err(Error::DimensionMismatch(format!(
                    "word of length {} in a code on {} neurons",
                    w.len(),
                    n_neurons
                )));
            }
            if w.iter().any(|&b| b > 1) {
                return Err(Error::InvalidArgument("code words must be 0/1".into()));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidArgument("duplicate code word".into()));
            }
        }
        let zero = vec![0u8; n_neurons];
        let Some(zp) = words.iter().position(|w| *w == zero) else {
            return Err(Error::InvalidArgument("code must contain the zero word".into()));
        };
        let mut words = words;
        let zero_word = words.remove(zp);
        words.insert(0, zero_word);
        Ok(NeuralCode { n_neurons, words })
    }

    pub fn n_neurons(&self) -> usize {
        self.n_neurons
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Nonzero words in stored order; these index the code matrix columns.
    pub fn nonzero_words(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.words.iter().filter(|w| w.iter().any(|&b| b == 1))
    }

    pub fn eq_as_sets(&self, other: &NeuralCode) -> bool {
        self.n_neurons == other.n_neurons
            && self.words.iter().collect::<BTreeSet<_>>() == other.words.iter().collect::<BTreeSet<_>>()
    }

    /// One word per line, stored order.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for w in &self.words {
            for &b in w {
                s.push(if b == 1 { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parse the line format. Blank lines are ignored.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        let mut n = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let w: Result<Vec<u8>> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    other => Err(Error::Parse(format!("bad code character {other:?}"))),
                })
                .collect();
            let w = w?;
            if *n.get_or_insert(w.len()) != w.len() {
                return Err(Error::Parse("words of unequal length".into()));
            }
            words.push(w);
        }
        let n = n.ok_or_else(|| Error::Parse("empty code file".into()))?;
        NeuralCode::new(n, words)
    }
}

fn word_from_support(n: usize, support: &[usize]) -> Vec<u8> {
    let mut w = vec![0u8; n];
    for &i in support {
        w[i] = 1;
    }
    w
}

/// Star family on `n + 1` neurons: petal curves `2..=n` all crossing petal
/// curve `1`, everything inside a central curve `n + 1`.
///
/// Nonzero words in matrix column order: the double zones `{1, i+1, n+1}`
/// for `1 <= i < n`, the lone zone `{1, n+1}` of the crossing petal, the
/// lone zones `{j, n+1}` of the others, and the central-only zone `{n+1}`.
pub fn star_code(n: usize) -> Result<NeuralCode> {
    if n == 0 {
        return Err(Error::InvalidArgument("star family needs n >= 1".into()));
    }
    let nn = n + 1;
    let mut words = vec![vec![0u8; nn]];
    for i in 1..=2 * n {
        let support: Vec<usize> = if i < n {
            vec![0, i, n]
        } else if i == n {
            vec![0, n]
        } else if i < 2 * n {
            vec![i - n, n]
        } else {
            vec![n]
        };
        words.push(word_from_support(nn, &support));
    }
    NeuralCode::new(nn, words)
}

/// Pair family on `2n + 1` neurons: `n` two-circle chains (circles `2i+1`
/// and `2i+2` overlapping) inside one outer curve `2n+1`, plus the region
/// inside the outer curve only.
///
/// Built from its block matrix description: three columns per chain
/// (left-only, both, right-only, each inside the outer curve) followed by
/// the outer-only column, the matrix being the direct sum of `n` copies of
/// the 2x3 interval block extended by an all-ones row. Every row has its
/// ones consecutive by construction. [`path_code`] with all components of
/// length one rebuilds this code independently.
pub fn pair_code(n: usize) -> Result<NeuralCode> {
    if n == 0 {
        return Err(Error::InvalidArgument("pair family needs n >= 1".into()));
    }
    let nn = 2 * n + 1;
    let outer = 2 * n;
    let mut words = vec![vec![0u8; nn]];
    for i in 0..n {
        words.push(word_from_support(nn, &[2 * i, outer]));
        words.push(word_from_support(nn, &[2 * i, 2 * i + 1, outer]));
        words.push(word_from_support(nn, &[2 * i + 1, outer]));
    }
    words.push(word_from_support(nn, &[outer]));
    NeuralCode::new(nn, words)
}

/// Path family: component `i` is a chain of `l[i] + 1` circles, consecutive
/// circles overlapping, all inside one shared outer curve. `l[i] = 0` gives
/// an isolated circle; `l = [1, 1, ..., 1]` reproduces [`pair_code`] exactly.
///
/// Neurons: circles numbered per component in chain order, outer curve
/// last. Nonzero words in matrix column order, per component: alternating
/// circle zones and consecutive-overlap zones (`c1`, `c1c2`, `c2`,
/// `c2c3`, ...), then the outer-only zone after all components.
pub fn path_code(l: &[u32]) -> Result<NeuralCode> {
    if l.is_empty() {
        return Err(Error::InvalidArgument("path family needs at least one component".into()));
    }
    let circles: usize = l.iter().map(|&li| li as usize + 1).sum();
    let nn = circles + 1;
    let outer = nn - 1;
    let mut words = vec![vec![0u8; nn]];
    let mut first = 0usize;
    for &li in l {
        let len = li as usize + 1;
        for j in 0..len {
            words.push(word_from_support(nn, &[first + j, outer]));
            if j + 1 < len {
                words.push(word_from_support(nn, &[first + j, first + j + 1, outer]));
            }
        }
        first += len;
    }
    words.push(word_from_support(nn, &[outer]));
    NeuralCode::new(nn, words)
}

/// Remove neuron `label` (1-based) from every word, merging words that
/// become equal. Word order is preserved up to those merges.
pub fn delete_neuron(c: &NeuralCode, label: usize) -> Result<NeuralCode> {
    if label == 0 || label > c.n_neurons {
        return Err(Error::InvalidArgument(format!(
            "neuron {label} out of range 1..={}",
            c.n_neurons
        )));
    }
    let idx = label - 1;
    let mut seen = BTreeSet::new();
    let mut words = Vec::new();
    for w in &c.words {
        let mut v = w.clone();
        v.remove(idx);
        if seen.insert(v.clone()) {
            words.push(v);
        }
    }
    NeuralCode::new(c.n_neurons - 1, words)
}

/// Abstract description of a code: its label set and the family of zones
/// (word supports), each zone a bitmask with label `l` at bit `l - 1`.
/// The empty zone is always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractDescription {
    labels: BTreeSet<u32>,
    zones: BTreeSet<u64>,
}

/// Witness that a label pierces a given set: the background zone found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingWitness {
    pub background_zone: Vec<u32>,
}

/// One step of an inductive piercing certificate: `label` was removed as a
/// piercing of `pierced_set` over `background_zone`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingStep {
    pub label: u32,
    pub pierced_set: Vec<u32>,
    pub background_zone: Vec<u32>,
}

/// Build the abstract description of a code. Labels are `1..=n`.
pub fn to_abstract(c: &NeuralCode) -> Result<AbstractDescription> {
    if c.n_neurons > 64 {
        return Err(Error::GuardExceeded("abstract descriptions support at most 64 labels".into()));
    }
    let labels: BTreeSet<u32> = (1..=c.n_neurons as u32).collect();
    let mut zones: BTreeSet<u64> = c
        .words
        .iter()
        .map(|w| {
            w.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    zones.insert(0);
    Ok(AbstractDescription { labels, zones })
}

fn mask_of(labels: &[u32]) -> u64 {
    labels.iter().fold(0u64, |m, &l| m | (1 << (l - 1)))
}

fn unmask(m: u64) -> Vec<u32> {
    (0..64).filter(|b| m >> b & 1 == 1).map(|b| b as u32 + 1).collect()
}

impl AbstractDescription {
    pub fn labels(&self) -> &BTreeSet<u32> {
        &self.labels
    }

    pub fn zones(&self) -> &BTreeSet<u64> {
        &self.zones
    }

    pub fn zones_as_sets(&self) -> Vec<Vec<u32>> {
        self.zones.iter().map(|&z| unmask(z)).collect()
    }

    fn check_label(&self, l: u32) -> Result<()> {
        if self.labels.contains(&l) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("label {l} not in the description")))
        }
    }

    /// Zones containing `label`.
    pub fn zones_containing(&self, label: u32) -> Result<BTreeSet<u64>> {
        self.check_label(label)?;
        let bit = 1u64 << (label - 1);
        Ok(self.zones.iter().copied().filter(|z| z & bit != 0).collect())
    }

    /// The cluster of `zone` over `lambda`: all unions of `zone` with a
    /// subset of `lambda`. Size is `2^|lambda|` whenever the two are disjoint.
    pub fn cluster(&self, zone: &[u32], lambda: &[u32]) -> Result<BTreeSet<u64>> {
        let z = mask_of(zone);
        if !self.zones.contains(&z) {
            return Err(Error::InvalidArgument("cluster base is not a zone".into()));
        }
        for &l in lambda {
            self.check_label(l)?;
        }
        Ok(cluster_raw(z, mask_of(lambda)))
    }

    /// Does `label` pierce the set `lambda_set` here? Searches every zone as
    /// a background and returns the first witness in ascending mask order.
    pub fn is_k_piercing(&self, lambda_set: &[u32], label: u32) -> Result<Option<PiercingWitness>> {
        self.check_label(label)?;
        let mut seen = BTreeSet::new();
        for &l in lambda_set {
            self.check_label(l)?;
            if l == label {
                return Err(Error::InvalidArgument("pierced set must not contain the piercing label".into()));
            }
            if !seen.insert(l) {
                return Err(Error::InvalidArgument("pierced set has duplicates".into()));
            }
        }
        let lambda = mask_of(lambda_set);
        let bit = 1u64 << (label - 1);
        let around: BTreeSet<u64> = self.zones.iter().copied().filter(|z| z & bit != 0).collect();
        for &z in &self.zones {
            if z & (lambda | bit) != 0 {
                continue;
            }
            if cluster_raw(z | bit, lambda) != around {
                continue;
            }
            if cluster_raw(z, lambda).iter().all(|y| self.zones.contains(y)) {
                return Ok(Some(PiercingWitness { background_zone: unmask(z) }));
            }
        }
        Ok(None)
    }

    /// Description after forgetting one label: drop its bit everywhere and
    /// merge zones that collide.
    pub fn remove_label(&self, label: u32) -> Result<AbstractDescription> {
        self.check_label(label)?;
        let bit = 1u64 << (label - 1);
        let mut labels = self.labels.clone();
        labels.remove(&label);
        let zones = self.zones.iter().map(|z| z & !bit).collect();
        Ok(AbstractDescription { labels, zones })
    }

    /// Search for an order removing every label such that each removal is a
    /// `j`-piercing for some `j <= k`. Returns the removal certificate, or
    /// `None` if no order exists. The base case is the empty description
    /// whose only zone is empty.
    ///
    /// Descriptions with more than 12 labels are refused.
    pub fn is_inductively_pierced(&self, k: usize) -> Result<Option<Vec<PiercingStep>>> {
        if self.labels.len() > 12 {
            return Err(Error::GuardExceeded(format!(
                "piercedness search supports at most 12 labels, got {}",
                self.labels.len()
            )));
        }
        let mut dead: HashSet<(usize, Vec<u64>)> = HashSet::new();
        self.pierced_search(k, &mut dead)
    }

    fn pierced_search(
        &self,
        k: usize,
        dead: &mut HashSet<(usize, Vec<u64>)>,
    ) -> Result<Option<Vec<PiercingStep>>> {
        if self.labels.is_empty() {
            return Ok(if self.zones.len() == 1 { Some(Vec::new()) } else { None });
        }
        let key = self.canonical_key();
        if dead.contains(&key) {
            return Ok(None);
        }
        let labels: Vec<u32> = self.labels.iter().copied().collect();
        for &label in &labels {
            let others: Vec<u32> = labels.iter().copied().filter(|&l| l != label).collect();
            for j in 0..=k.min(others.len()) {
                for lambda in combinations(&others, j) {
                    if let Some(witness) = self.is_k_piercing(&lambda, label)? {
                        let rest = self.remove_label(label)?;
                        if let Some(mut steps) = rest.pierced_search(k, dead)? {
                            steps.insert(
                                0,
                                PiercingStep {
                                    label,
                                    pierced_set: lambda,
                                    background_zone: witness.background_zone,
                                },
                            );
                            return Ok(Some(steps));
                        }
                    }
                }
            }
        }
        dead.insert(key);
        Ok(None)
    }

    /// Relabeling-invariant key: zones rewritten over the packed positions
    /// of the sorted label list.
    fn canonical_key(&self) -> (usize, Vec<u64>) {
        let labels: Vec<u32> = self.labels.iter().copied().collect();
        let zones: Vec<u64> = self
            .zones
            .iter()
            .map(|&z| {
                labels
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| z >> (l - 1) & 1 == 1)
                    .fold(0u64, |m, (pos, _)| m | (1 << pos))
            })
            .collect::<BTreeSet<u64>>()
            .into_iter()
            .collect();
        (labels.len(), zones)
    }
}

fn cluster_raw(base: u64, lambda: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut sub = lambda;
    loop {
        out.insert(base | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & lambda;
    }
    out
}

fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words_of(c: &NeuralCode) -> Vec<String> {
        c.words().iter().map(|w| w.iter().map(|&b| char::from(b'0' + b)).collect()).collect()
    }

    #[test]
    fn smallest_star_and_pair_codes_are_literal() {
        assert_eq!(words_of(&star_code(1).unwrap()), vec!["00", "11", "01"]);
        assert_eq!(
            words_of(&star_code(2).unwrap()),
            vec!["000", "111", "101", "011", "001"]
        );
        assert_eq!(words_of(&pair_code(1).unwrap()), vec!["000", "101", "111", "011", "001"]);
    }

    #[test]
    fn unit_path_components_reproduce_the_pair_family() {
        for n in 1..=4 {
            let pair = pair_code(n).unwrap();
            let path = path_code(&vec![1; n]).unwrap();
            assert_eq!(pair, path, "words and order must both agree at n={n}");
        }
    }

    #[test]
    fn one_isolated_circle_matches_the_one_star() {
        assert_eq!(path_code(&[0]).unwrap(), star_code(1).unwrap());
    }

    #[test]
    fn deleting_a_neuron_merges_collapsed_words() {
        let c = star_code(2).unwrap();
        let d = delete_neuron(&c, 3).unwrap();
        assert_eq!(words_of(&d), vec!["00", "11", "10", "01"]);
        assert!(delete_neuron(&c, 4).is_err());
        assert!(delete_neuron(&c, 0).is_err());
    }

    #[test]
    fn cluster_has_power_set_size_when_disjoint() {
        let d = to_abstract(&star_code(2).unwrap()).unwrap();
        // zones of star 2: {}, {123}, {13}, {23}, {3}
        let y = d.cluster(&[3], &[1, 2]).unwrap();
        assert_eq!(y.len(), 4);
        assert!(y.contains(&mask_of(&[3])));
        assert!(y.contains(&mask_of(&[1, 3])));
        assert!(y.contains(&mask_of(&[2, 3])));
        assert!(y.contains(&mask_of(&[1, 2, 3])));
        assert!(d.cluster(&[1, 2], &[3]).is_err(), "{{1,2}} is not a zone of this code");
    }

    #[test]
    fn zero_piercing_walkthrough_on_the_one_star() {
        // zones: {}, {1,2}, {2}
        let d = to_abstract(&star_code(1).unwrap()).unwrap();
        let w = d.is_k_piercing(&[], 1).unwrap().expect("label 1 is a 0-piercing");
        assert_eq!(w.background_zone, vec![2]);
        assert!(d.is_k_piercing(&[], 2).unwrap().is_none(), "label 2 surrounds zones {{1,2}} and {{2}}");
        let cert = d.is_inductively_pierced(0).unwrap().expect("star 1 is 0-pierced");
        assert_eq!(cert.len(), 2);
        assert_eq!(cert[0].label, 1);
        assert_eq!(cert[0].background_zone, vec![2]);
    }

    #[test]
    fn star_codes_are_one_pierced_but_not_zero_pierced() {
        for n in 2..=4 {
            let d = to_abstract(&star_code(n).unwrap()).unwrap();
            assert!(d.is_inductively_pierced(0).unwrap().is_none(), "star {n} is not 0-pierced");
            let cert = d.is_inductively_pierced(1).unwrap().expect("star codes are 1-pierced");
            assert_eq!(cert.len(), n + 1, "every label must be removed");
        }
    }

    #[test]
    fn pair_codes_are_one_pierced_but_not_zero_pierced() {
        for n in 1..=3 {
            let d = to_abstract(&pair_code(n).unwrap()).unwrap();
            assert!(d.is_inductively_pierced(0).unwrap().is_none(), "pair {n} is not 0-pierced");
            assert!(d.is_inductively_pierced(1).unwrap().is_some(), "pair {n} is 1-pierced");
        }
    }

    #[test]
    fn piercing_rejects_bad_arguments() {
        let d = to_abstract(&star_code(2).unwrap()).unwrap();
        assert!(d.is_k_piercing(&[1], 1).is_err(), "label inside its own pierced set");
        assert!(d.is_k_piercing(&[9], 1).is_err(), "unknown label");
        assert!(d.is_k_piercing(&[1, 1], 2).is_err(), "duplicate in pierced set");
    }

    #[test]
    fn code_parsing_round_trips_and_validates() {
        let c = star_code(2).unwrap();
        assert_eq!(NeuralCode::from_lines(&c.to_lines()).unwrap(), c);
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<NeuralCode>(&js).unwrap(), c);
        assert!(NeuralCode::from_lines("01\n11\n").is_err(), "zero word is mandatory");
        assert!(NeuralCode::from_lines("01\n001\n").is_err(), "ragged words");
        assert!(NeuralCode::from_lines("02\n").is_err(), "alphabet is 0/1");
        assert!(NeuralCode::new(2, vec![vec![0, 0], vec![0, 0]]).is_err(), "duplicates");
    }
}
