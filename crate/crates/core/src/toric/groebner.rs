//! Buchberger completion specialized to binomials, reduced bases, initial
//! ideals, and the routed universal-basis computation.
//!
//! All polynomial arithmetic here is honest: an S-pair or a partially
//! reduced binomial may carry a common monomial factor, and no step strips
//! it. Support-disjointness is only reasserted when packaging a final
//! basis, where it must hold for saturated lattice kernels.

use std::collections::BTreeSet;
use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exactgeom::{format_rat, parse_rat, Int, Rat};
use crate::{Error, Result};

use super::binomial::{divides, monomial_lcm, total_degree, Binomial, WeightOrder};
use super::graver::{degree_census, graver};
use super::ideal::{is_lawrence_shaped, is_totally_unimodular, row_transform_star};

const REDUCE_STEP_CAP: usize = 100_000;
const BASIS_GROWTH_CAP: usize = 20_000;

/// A Groebner basis together with the order that produced it. Elements
/// are stored oriented: the plus side is the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroebnerBasisRepr", into = "GroebnerBasisRepr")]
pub struct GroebnerBasis {
    elements: Vec<Binomial>,
    order: WeightOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn order(&self) -> &WeightOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = &[u32]> {
        self.elements.iter().map(|b| b.plus())
    }
}

#[derive(Serialize, Deserialize)]
struct GroebnerBasisRepr {
    weight: Vec<String>,
    reduced: bool,
    elements: Vec<Binomial>,
}

impl From<GroebnerBasis> for GroebnerBasisRepr {
    fn from(g: GroebnerBasis) -> Self {
        GroebnerBasisRepr {
            weight: g.order.weights().iter().map(format_rat).collect(),
            reduced: g.reduced,
            elements: g.elements,
        }
    }
}

impl TryFrom<GroebnerBasisRepr> for GroebnerBasis {
    type Error = Error;

    fn try_from(r: GroebnerBasisRepr) -> Result<Self> {
        let w = r.weight.iter().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>>>()?;
        Ok(GroebnerBasis { elements: r.elements, order: WeightOrder::new(w), reduced: r.reduced })
    }
}

/// A monomial ideal held by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "MonomialIdealRepr", into = "MonomialIdealRepr")]
pub struct MonomialIdeal {
    gens: BTreeSet<Vec<u32>>,
}

impl MonomialIdeal {
    /// Minimalizes on the way in: generators divisible by another
    /// generator are dropped.
    pub fn new(gens: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let raw: BTreeSet<Vec<u32>> = gens.into_iter().collect();
        let minimal = raw
            .iter()
            .filter(|g| !raw.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        MonomialIdeal { gens: minimal }
    }

    pub fn generators(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.gens.iter()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, monomial: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, monomial))
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialIdealRepr {
    gens: Vec<Vec<u32>>,
}

impl From<MonomialIdeal> for MonomialIdealRepr {
    fn from(m: MonomialIdeal) -> Self {
        MonomialIdealRepr { gens: m.gens.into_iter().collect() }
    }
}

impl From<MonomialIdealRepr> for MonomialIdeal {
    fn from(r: MonomialIdealRepr) -> Self {
        MonomialIdeal::new(r.gens)
    }
}

/// The minimal generators of the ideal of leading terms.
pub fn initial_ideal(g: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(g.elements.iter().map(|b| b.plus().to_vec()))
}

/// Initial ideal read off a weight alone: the heavier side of every
/// element leads. The weight must strictly separate every element; ties
/// are rejected rather than broken, since callers rely on the weight
/// being interior to a maximal cone.
pub fn initial_ideal_from_weight(els: &[Binomial], ord: &WeightOrder) -> Result<MonomialIdeal> {
    let mut leads = Vec::with_capacity(els.len());
    for b in els {
        let (p, m) = (ord.weight_of(b.plus()), ord.weight_of(b.minus()));
        match p.cmp(&m) {
            Ordering::Greater => leads.push(b.plus().to_vec()),
            Ordering::Less => leads.push(b.minus().to_vec()),
            Ordering::Equal => {
                return Err(Error::InvalidArgument(
                    "weight vector does not separate one of the binomials".into(),
                ))
            }
        }
    }
    Ok(MonomialIdeal::new(leads))
}

// A working basis element: (lead, trail) exponent vectors, lead strictly
// greater under the active order.
type Pair = (Vec<u32>, Vec<u32>);

struct Reducer<'a> {
    ord: &'a WeightOrder,
    degree_cap: u32,
}

impl Reducer<'_> {
    fn cap_for(inputs: &[Pair]) -> u32 {
        let d = inputs
            .iter()
            .map(|(l, t)| total_degree(l).max(total_degree(t)))
            .max()
            .unwrap_or(1);
        4 * d.max(1) + 8
    }

    fn step(&self, target: &mut Vec<u32>, by: &Pair, steps: &mut usize) -> Result<()> {
        for (x, (&l, &t)) in target.iter_mut().zip(by.0.iter().zip(&by.1)) {
            *x = *x - l + t;
        }
        *steps += 1;
        if *steps > REDUCE_STEP_CAP || total_degree(target) > self.degree_cap {
            return Err(Error::DegreeCapExceeded);
        }
        Ok(())
    }

    /// Full normal form of the (possibly support-sharing) difference
    /// `t^lead - t^trail` against `basis`. Returns false when it
    /// cancels to zero, true otherwise; on true, lead > trail holds and
    /// neither side is divisible by a basis lead.
    fn normal_form(&self, lead: &mut Vec<u32>, trail: &mut Vec<u32>, basis: &[Pair]) -> Result<bool> {
        let mut steps = 0usize;
        'outer: loop {
            if lead == trail {
                return Ok(false);
            }
            if self.ord.cmp_monomials(lead, trail) == Ordering::Less {
                std::mem::swap(lead, trail);
            }
            for g in basis {
                if divides(&g.0, lead) {
                    self.step(lead, g, &mut steps)?;
                    continue 'outer;
                }
            }
            // The lead is irreducible; push the trail down. Each
            // replacement strictly lowers the trail, so it stays below
            // the lead and cancellation is impossible here.
            loop {
                let mut hit = false;
                for g in basis {
                    if divides(&g.0, trail) {
                        self.step(trail, g, &mut steps)?;
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    debug_assert_ne!(lead, trail);
                    return Ok(true);
                }
            }
        }
    }
}

fn orient(b: &Binomial, ord: &WeightOrder) -> Pair {
    let o = b.clone().oriented(ord);
    (o.plus().to_vec(), o.minus().to_vec())
}

fn check_arities(gens: &[Binomial], ord: &WeightOrder) -> Result<()> {
    for b in gens {
        if b.arity() != ord.arity() {
            return Err(Error::DimensionMismatch(format!(
                "binomial arity {} differs from order arity {}",
                b.arity(),
                ord.arity()
            )));
        }
    }
    Ok(())
}

/// Normal form of `b` against `g` under `ord`: `None` when `b` reduces
/// to zero, otherwise the reduced binomial with its leading side first.
/// The result can share support between its sides; no factor is stripped.
pub fn reduce(b: &Binomial, g: &[Binomial], ord: &WeightOrder) -> Result<Option<Binomial>> {
    check_arities(std::slice::from_ref(b), ord)?;
    check_arities(g, ord)?;
    let basis: Vec<Pair> = g.iter().map(|x| orient(x, ord)).collect();
    let mut inputs = basis.clone();
    inputs.push(orient(b, ord));
    let r = Reducer { ord, degree_cap: Reducer::cap_for(&inputs) };
    let (mut lead, mut trail) = inputs.pop().unwrap();
    if r.normal_form(&mut lead, &mut trail, &basis)? {
        Ok(Some(Binomial::raw(lead, trail)))
    } else {
        Ok(None)
    }
}

/// The S-polynomial of two binomials, or `None` when it is identically
/// zero. The output is again a binomial, not yet reduced or oriented,
/// and its sides may share support.
pub fn spair(f: &Binomial, g: &Binomial, ord: &WeightOrder) -> Option<Binomial> {
    let (lf, tf) = orient(f, ord);
    let (lg, tg) = orient(g, ord);
    let l = monomial_lcm(&lf, &lg);
    let plus: Vec<u32> = l.iter().zip(&lg).zip(&tg).map(|((&a, &b), &c)| a - b + c).collect();
    let minus: Vec<u32> = l.iter().zip(&lf).zip(&tf).map(|((&a, &b), &c)| a - b + c).collect();
    if plus == minus {
        None
    } else {
        Some(Binomial::raw(plus, minus))
    }
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn spair_of(basis: &[Pair], i: usize, j: usize) -> Option<Pair> {
    let l = monomial_lcm(&basis[i].0, &basis[j].0);
    let plus: Vec<u32> =
        l.iter().zip(&basis[j].0).zip(&basis[j].1).map(|((&a, &b), &c)| a - b + c).collect();
    let minus: Vec<u32> =
        l.iter().zip(&basis[i].0).zip(&basis[i].1).map(|((&a, &b), &c)| a - b + c).collect();
    if plus == minus {
        None
    } else {
        Some((plus, minus))
    }
}

fn dedup_oriented(gens: &[Binomial], ord: &WeightOrder) -> Vec<Pair> {
    let set: BTreeSet<Binomial> = gens.iter().map(|b| b.clone().canonical()).collect();
    set.iter().map(|b| orient(b, ord)).collect()
}

fn buchberger(gens: &[Binomial], ord: &WeightOrder) -> Result<Vec<Pair>> {
    let mut basis = dedup_oriented(gens, ord);
    let r = Reducer { ord, degree_cap: Reducer::cap_for(&basis) };
    let mut queue: BTreeSet<(u32, Vec<u32>, usize, usize)> = BTreeSet::new();
    let enqueue = |q: &mut BTreeSet<(u32, Vec<u32>, usize, usize)>, basis: &[Pair], i: usize, j: usize| {
        let l = monomial_lcm(&basis[i].0, &basis[j].0);
        q.insert((total_degree(&l), l, i, j));
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            enqueue(&mut queue, &basis, i, j);
        }
    }
    while let Some(entry) = queue.pop_first() {
        let (_, _, i, j) = entry;
        if coprime(&basis[i].0, &basis[j].0) {
            continue;
        }
        let Some((mut lead, mut trail)) = spair_of(&basis, i, j) else { continue };
        if !r.normal_form(&mut lead, &mut trail, &basis)? {
            continue;
        }
        basis.push((lead, trail));
        if basis.len() > BASIS_GROWTH_CAP {
            return Err(Error::GuardExceeded(format!(
                "basis completion grew past {BASIS_GROWTH_CAP} elements"
            )));
        }
        let k = basis.len() - 1;
        for i in 0..k {
            enqueue(&mut queue, &basis, i, k);
        }
    }
    Ok(basis)
}

/// Does Buchberger's criterion hold for `gens` as given: does every
/// S-pair reduce to zero against the set itself?
pub fn is_groebner_basis(gens: &[Binomial], ord: &WeightOrder) -> Result<bool> {
    check_arities(gens, ord)?;
    let basis = dedup_oriented(gens, ord);
    let r = Reducer { ord, degree_cap: Reducer::cap_for(&basis) };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if coprime(&basis[i].0, &basis[j].0) {
                continue;
            }
            let Some((mut lead, mut trail)) = spair_of(&basis, i, j) else { continue };
            if r.normal_form(&mut lead, &mut trail, &basis)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The reduced Groebner basis of the ideal generated by `gens` under
/// `ord`: Buchberger completion, minimalization of leading terms, then
/// tail reduction. The result is unique for the order and idempotent.
///
/// Final elements must come out support-disjoint; for kernels of integer
/// matrices this is automatic, and any violation (possible for a lattice
/// that is not saturated) is reported as a cross-check failure.
pub fn reduced_gb(gens: &[Binomial], ord: &WeightOrder) -> Result<GroebnerBasis> {
    check_arities(gens, ord)?;
    if gens.is_empty() {
        return Ok(GroebnerBasis { elements: Vec::new(), order: ord.clone(), reduced: true });
    }
    let basis = buchberger(gens, ord)?;
    let n = basis.len();
    let mut alive = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if j != i
                && divides(&basis[j].0, &basis[i].0)
                && (basis[j].0 != basis[i].0 || j < i)
            {
                alive[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Pair> = basis
        .into_iter()
        .zip(alive)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    let r = Reducer { ord, degree_cap: Reducer::cap_for(&kept) };
    for i in 0..kept.len() {
        let mut steps = 0usize;
        'tail: loop {
            for j in 0..kept.len() {
                if j != i && divides(&kept[j].0, &kept[i].1) {
                    let by = (kept[j].0.clone(), kept[j].1.clone());
                    let mut trail = std::mem::take(&mut kept[i].1);
                    r.step(&mut trail, &by, &mut steps)?;
                    kept[i].1 = trail;
                    if kept[i].1 == kept[i].0 {
                        return Err(Error::CrossCheck(
                            "tail reduction cancelled a minimal basis element".into(),
                        ));
                    }
                    continue 'tail;
                }
            }
            break;
        }
    }
    kept.sort_unstable_by(|a, b| ord.cmp_monomials(&a.0, &b.0));
    let elements = kept
        .into_iter()
        .map(|(l, t)| {
            Binomial::new(l, t).map_err(|_| {
                Error::CrossCheck("reduced basis element is not support-disjoint".into())
            })
        })
        .collect::<Result<Vec<Binomial>>>()?;
    Ok(GroebnerBasis { elements, order: ord.clone(), reduced: true })
}

/// Which structural shortcut justified returning the primitive kernel
/// elements directly as the universal basis, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UgbRoute {
    LawrenceShaped,
    StarTransform,
    Unimodular,
    StatePolytopeUnion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UgbResult {
    pub elements: Vec<Binomial>,
    pub route: UgbRoute,
    pub certified: bool,
}

impl UgbResult {
    pub fn degree_census(&self) -> Vec<(u32, usize)> {
        degree_census(&self.elements)
    }
}

/// The universal Groebner basis of the toric ideal of `m`, i.e. the
/// union of its reduced Groebner bases over all monomial orders.
///
/// Shortcut routes return the primitive kernel elements directly: for a
/// Lawrence lifting (syntactic, or reachable by the last-row transform),
/// and for a totally unimodular matrix, the primitive elements are
/// exactly the universal basis. Everything else takes the general route:
/// the primitive pool's Newton polytope is built, one interior weight
/// per normal-fan cell is extracted, and the union of the corresponding
/// reduced bases is returned. `certified` propagates the enumeration's
/// completeness certificate.
pub fn ugb(m: &crate::exactgeom::IntMatrix, degree_bound: u32) -> Result<UgbResult> {
    let route = if is_lawrence_shaped(m) {
        UgbRoute::LawrenceShaped
    } else if row_transform_star(m).is_ok_and(|t| is_lawrence_shaped(&t)) {
        UgbRoute::StarTransform
    } else if matches!(is_totally_unimodular(m), Ok(true)) {
        UgbRoute::Unimodular
    } else {
        UgbRoute::StatePolytopeUnion
    };
    let pool = graver(m, degree_bound)?;
    if route != UgbRoute::StatePolytopeUnion || pool.is_empty() {
        return Ok(UgbResult {
            elements: pool.elements,
            route,
            certified: pool.complete_certified,
        });
    }
    let (_, weights) = crate::statepoly::newton_with_weights(&pool.elements)?;
    let mut union: BTreeSet<Binomial> = BTreeSet::new();
    for w in &weights {
        let ord = WeightOrder::new(w.iter().map(|x| Rat::from_integer(x.clone())).collect());
        let gb = reduced_gb(&pool.elements, &ord)?;
        union.extend(gb.elements.iter().map(|b| b.clone().canonical()));
    }
    let mut elements: Vec<Binomial> = union.into_iter().collect();
    elements.sort_unstable_by(|x, y| {
        (x.degree_plus(), x.plus(), x.minus()).cmp(&(y.degree_plus(), y.plus(), y.minus()))
    });
    Ok(UgbResult { elements, route, certified: pool.complete_certified })
}

/// General-route computation regardless of matrix structure; used to
/// cross-check the shortcut routes on small inputs. Output is the
/// canonical sorted union, not aligned with [`ugb`]'s element order.
pub fn ugb_via_state_polytope(
    m: &crate::exactgeom::IntMatrix,
    degree_bound: u32,
) -> Result<Vec<Binomial>> {
    let pool = graver(m, degree_bound)?;
    if pool.is_empty() {
        return Ok(Vec::new());
    }
    let (_, weights) = crate::statepoly::newton_with_weights(&pool.elements)?;
    let mut union: BTreeSet<Binomial> = BTreeSet::new();
    for w in &weights {
        let ord = WeightOrder::new(w.iter().map(|x| Rat::from_integer(x.clone())).collect());
        let gb = reduced_gb(&pool.elements, &ord)?;
        union.extend(gb.elements.iter().map(|b| b.clone().canonical()));
    }
    Ok(union.into_iter().collect())
}

/// Orders a weight from big integers, as produced by vertex-cone
/// certificates.
pub fn weight_order_from_ints(w: &[Int]) -> WeightOrder {
    WeightOrder::new(w.iter().map(|x| Rat::from_integer(x.clone())).collect())
}
