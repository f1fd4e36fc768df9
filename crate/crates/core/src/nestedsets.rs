//! Building sets, nested sets, and the counting companions used to
//! cross-examine the polytopes in `statepoly`: vertex-count identities
//! and lattice-path tallies sliced by diagonal steps.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const GROUND_HARD_LIMIT: usize = 64;
const ENUMERATION_GROUND_LIMIT: usize = 16;
const ENUMERATION_MEMBER_LIMIT: usize = 40;

/// A family of nonempty subsets of `{1, ..., ground}`, stored as bit
/// masks (label `l` occupies bit `l - 1`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SetFamilyRepr", into = "SetFamilyRepr")]
pub struct SetFamily {
    ground: usize,
    members: BTreeSet<u64>,
}

#[derive(Serialize, Deserialize)]
struct SetFamilyRepr {
    ground: usize,
    sets: Vec<Vec<usize>>,
}

impl From<SetFamily> for SetFamilyRepr {
    fn from(f: SetFamily) -> Self {
        SetFamilyRepr { ground: f.ground, sets: f.member_sets() }
    }
}

impl TryFrom<SetFamilyRepr> for SetFamily {
    type Error = Error;
    fn try_from(r: SetFamilyRepr) -> Result<Self> {
        SetFamily::from_sets(r.ground, r.sets)
    }
}

fn mask_from_labels(ground: usize, labels: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &l in labels {
        if l == 0 || l > ground {
            return Err(Error::InvalidArgument(format!(
                "label {l} outside the ground set 1..={ground}"
            )));
        }
        mask |= 1 << (l - 1);
    }
    if mask == 0 {
        return Err(Error::InvalidArgument("empty member set".into()));
    }
    Ok(mask)
}

fn labels_from_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

impl SetFamily {
    pub fn from_sets(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if ground == 0 || ground > GROUND_HARD_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "ground size must be in 1..={GROUND_HARD_LIMIT}"
            )));
        }
        let mut members = BTreeSet::new();
        for s in &sets {
            members.insert(mask_from_labels(ground, s)?);
        }
        Ok(SetFamily { ground, members })
    }

    pub(crate) fn from_masks(ground: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        let members: BTreeSet<u64> = masks.into_iter().collect();
        debug_assert!(ground >= 1 && ground <= GROUND_HARD_LIMIT);
        debug_assert!(members.iter().all(|&m| m != 0 && m >> ground == 0));
        SetFamily { ground, members }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_labels(&self, labels: &[usize]) -> Result<bool> {
        Ok(self.members.contains(&mask_from_labels(self.ground, labels)?))
    }

    pub(crate) fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub(crate) fn contains_mask(&self, m: u64) -> bool {
        self.members.contains(&m)
    }

    /// Members as sorted label lists, in ascending mask order.
    pub fn member_sets(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| labels_from_mask(m)).collect()
    }
}

/// Is the family a building set: all singletons of the ground set are
/// present, and the union of any two overlapping members is a member.
pub fn is_building_set(f: &SetFamily) -> bool {
    for i in 0..f.ground {
        if !f.members.contains(&(1u64 << i)) {
            return false;
        }
    }
    for &a in &f.members {
        for &b in &f.members {
            if a < b && a & b != 0 && !f.members.contains(&(a | b)) {
                return false;
            }
        }
    }
    true
}

/// The smallest building set containing the family: close under unions
/// of overlapping members, then adjoin all singletons.
pub fn building_closure(f: &SetFamily) -> Result<SetFamily> {
    if f.ground > ENUMERATION_GROUND_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "building closure capped at ground size {ENUMERATION_GROUND_LIMIT}"
        )));
    }
    let mut members = f.members.clone();
    loop {
        let mut fresh: Vec<u64> = Vec::new();
        for &a in &members {
            for &b in &members {
                if a < b && a & b != 0 && !members.contains(&(a | b)) {
                    fresh.push(a | b);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        members.extend(fresh);
    }
    for i in 0..f.ground {
        members.insert(1u64 << i);
    }
    Ok(SetFamily { ground: f.ground, members })
}

fn nested_or_disjoint(a: u64, b: u64) -> bool {
    let c = a & b;
    c == 0 || c == a || c == b
}

/// Do any >= 2 pairwise disjoint members of `chosen`, all disjoint from
/// and counted together with `seed`, union into a member of `building`?
/// `seed` itself is part of every collection tested.
fn disjoint_union_lands_in(building: &SetFamily, chosen: &[u64], seed: u64) -> bool {
    fn rec(building: &SetFamily, pool: &[u64], idx: usize, union: u64, picked: usize) -> bool {
        if picked >= 1 && building.contains_mask(union) {
            return true;
        }
        for k in idx..pool.len() {
            if pool[k] & union == 0 && rec(building, pool, k + 1, union | pool[k], picked + 1) {
                return true;
            }
        }
        false
    }
    let pool: Vec<u64> = chosen.iter().copied().filter(|&a| a & seed == 0).collect();
    rec(building, &pool, 0, seed, 0)
}

fn compatible(building: &SetFamily, chosen: &[u64], cand: u64) -> bool {
    chosen.iter().all(|&a| nested_or_disjoint(a, cand))
        && !disjoint_union_lands_in(building, chosen, cand)
}

fn maximal_members(f: &SetFamily) -> Vec<u64> {
    f.members
        .iter()
        .copied()
        .filter(|&a| !f.members.iter().any(|&b| b != a && b & a == a))
        .collect()
}

/// Is `candidate` a nested set for `building`: a subfamily whose members
/// are pairwise nested or disjoint, such that no union of two or more
/// pairwise disjoint members lies in the building set, and which
/// contains every inclusion-maximal member of the building set.
pub fn is_nested_set(building: &SetFamily, candidate: &SetFamily) -> Result<bool> {
    if building.ground != candidate.ground {
        return Err(Error::DimensionMismatch("families on different ground sets".into()));
    }
    if !is_building_set(building) {
        return Err(Error::InvalidArgument("first family is not a building set".into()));
    }
    if candidate.len() > 32 {
        return Err(Error::GuardExceeded("nested-set check capped at 32 members".into()));
    }
    if !candidate.members.iter().all(|m| building.contains_mask(*m)) {
        return Ok(false);
    }
    let members: Vec<u64> = candidate.masks().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !nested_or_disjoint(a, b) {
                return Ok(false);
            }
        }
    }
    for (i, &a) in members.iter().enumerate() {
        // collections are unordered: rooting each at its first member
        // (in mask order) covers them all
        if disjoint_union_lands_in(building, &members[i + 1..], a) {
            return Ok(false);
        }
    }
    for m in maximal_members(building) {
        if !candidate.contains_mask(m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All maximal nested sets of a building set, sorted. Every result
/// contains the inclusion-maximal members; the search branches over the
/// rest with incremental compatibility checks and keeps a leaf only if
/// no outside member could still be added.
pub fn maximal_nested_sets(building: &SetFamily) -> Result<Vec<SetFamily>> {
    if !is_building_set(building) {
        return Err(Error::InvalidArgument("not a building set".into()));
    }
    if building.ground > ENUMERATION_GROUND_LIMIT || building.len() > ENUMERATION_MEMBER_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "nested-set enumeration capped at ground {ENUMERATION_GROUND_LIMIT} and {ENUMERATION_MEMBER_LIMIT} members"
        )));
    }
    let tops = maximal_members(building);
    let rest: Vec<u64> = building.masks().filter(|m| !tops.contains(m)).collect();

    fn dfs(
        building: &SetFamily,
        rest: &[u64],
        idx: usize,
        chosen: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if idx == rest.len() {
            let maximal = rest
                .iter()
                .all(|&m| chosen.contains(&m) || !compatible(building, chosen, m));
            if maximal {
                let mut sorted = chosen.clone();
                sorted.sort_unstable();
                out.push(sorted);
            }
            return;
        }
        if compatible(building, chosen, rest[idx]) {
            chosen.push(rest[idx]);
            dfs(building, rest, idx + 1, chosen, out);
            chosen.pop();
        }
        dfs(building, rest, idx + 1, chosen, out);
    }

    let mut chosen = tops.clone();
    let mut raw: Vec<Vec<u64>> = Vec::new();
    dfs(building, &rest, 0, &mut chosen, &mut raw);
    raw.sort_unstable();
    Ok(raw
        .into_iter()
        .map(|masks| SetFamily::from_masks(building.ground, masks))
        .collect())
}

/// The full building set of the star graph with center `n + 1`: all
/// singletons of `{1, ..., n+1}` and every `J union {n+1}` for
/// `J` inside `{1, ..., n}`.
pub fn star_graph_building(n: usize) -> Result<SetFamily> {
    if n == 0 || n + 1 > ENUMERATION_GROUND_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "star building set needs 1 <= n <= {}",
            ENUMERATION_GROUND_LIMIT - 1
        )));
    }
    let center = 1u64 << n;
    let mut masks: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for j in 0..(1u64 << n) {
        masks.push(j | center);
    }
    Ok(SetFamily::from_masks(n + 1, masks))
}

/// The connected subfamily generating `qbar(n)`: `S union {n+1}` over
/// the one- and two-element subsets `S` of `{1, ..., n}`.
pub fn qbar_summand_family(n: usize) -> Result<SetFamily> {
    if n == 0 || n + 1 > ENUMERATION_GROUND_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "summand family needs 1 <= n <= {}",
            ENUMERATION_GROUND_LIMIT - 1
        )));
    }
    let center = 1u64 << n;
    let mut masks = Vec::new();
    for i in 0..n {
        masks.push(1u64 << i | center);
    }
    for i in 0..n {
        for j in i + 1..n {
            masks.push(1u64 << i | 1u64 << j | center);
        }
    }
    Ok(SetFamily::from_masks(n + 1, masks))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial fits in u64")
}

/// Two closed forms for the number of maximal nested sets of the star
/// building set, computed independently and checked against each other:
/// `sum_i C(n, i) i!` and `sum_i n!/i!`.
pub fn vertex_count_formula(n: usize) -> u64 {
    let n = n as u64;
    let fact = |k: u64| (1..=k).product::<u64>().max(1);
    let a: u64 = (0..=n).map(|i| binom(n, i) * fact(i)).sum();
    let b: u64 = (0..=n).map(|i| fact(n) / fact(i)).sum();
    assert_eq!(a, b, "the two counting forms must agree");
    a
}

/// Lattice paths from `(0, 0)` to `(m, m)` with unit east, north, and
/// diagonal steps, counted by exact number of diagonal steps. Plain
/// dynamic program, no closed form.
pub fn delannoy_by_diagonals(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    let mut t = vec![vec![vec![0u64; k + 1]; m + 1]; m + 1];
    t[0][0][0] = 1;
    for x in 0..=m {
        for y in 0..=m {
            for j in 0..=k {
                let v = t[x][y][j];
                if v == 0 {
                    continue;
                }
                if x + 1 <= m {
                    t[x + 1][y][j] += v;
                }
                if y + 1 <= m {
                    t[x][y + 1][j] += v;
                }
                if x + 1 <= m && y + 1 <= m && j + 1 <= k {
                    t[x + 1][y + 1][j + 1] += v;
                }
            }
        }
    }
    t[m][m][k]
}

/// One face-count row of a conjecture report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub k: usize,
    pub computed: u64,
    pub formula: u64,
    pub delannoy: u64,
}

/// Face counts of a state polytope compared against two predictions:
/// a product-of-binomials closed form and the diagonal-sliced path
/// counts. Purely observational; nothing here asserts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub rows: Vec<ConjectureRow>,
    pub formula_matches: bool,
    pub delannoy_matches: bool,
}

pub fn conjecture_report(n: usize, f_vector: &[u64]) -> ConjectureReport {
    let m = n.saturating_sub(1);
    let rows: Vec<ConjectureRow> = f_vector
        .iter()
        .enumerate()
        .map(|(k, &computed)| ConjectureRow {
            k,
            computed,
            formula: binom(m as u64, k as u64) * binom(2 * m as u64, m as u64),
            delannoy: delannoy_by_diagonals(m, k),
        })
        .collect();
    ConjectureReport {
        n,
        formula_matches: rows.iter().all(|r| r.computed == r.formula),
        delannoy_matches: rows.iter().all(|r| r.computed == r.delannoy),
        rows,
    }
}
