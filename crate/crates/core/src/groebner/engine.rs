//! Buchberger's algorithm with Gebauer-Möller pair elimination and the
//! sugar-normal selection strategy.

use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, OrderKey};
use crate::poly::Poly;

/// Terms sorted decreasingly in the working order.
pub(crate) type Terms<E> = Vec<(Monomial, E)>;

#[derive(Clone, Debug)]
pub(crate) struct Row<E> {
    pub terms: Terms<E>,
    pub sugar: u32,
}

impl<E> Row<E> {
    #[inline]
    pub fn lm(&self) -> Monomial {
        self.terms[0].0
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct GbLimits {
    pub max_pairs: u64,
    pub max_degree: u32,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_pairs: 200_000, max_degree: 30 }
    }
}

pub(crate) enum Outcome<E> {
    Complete(Vec<Row<E>>),
    /// The stop predicate fired on the current leading monomials.
    Stopped,
}

pub(crate) fn sort_terms<E>(order: MonomialOrder, terms: &mut Terms<E>) {
    terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
}

fn make_monic<F: Field>(field: &F, terms: &mut Terms<F::Elem>) {
    if let Some((_, lc)) = terms.first() {
        if *lc != field.one() {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in terms.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
}

/// Fully reduces `h` by the rows `basis`; returns the normal form, sorted.
pub(crate) fn reduce<F: Field>(
    field: &F,
    order: MonomialOrder,
    h: Terms<F::Elem>,
    basis: &[&Row<F::Elem>],
) -> Terms<F::Elem> {
    let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::with_capacity_and_hasher(h.len() * 4, Default::default());
    let mut heap: BinaryHeap<(OrderKey, Monomial)> = BinaryHeap::with_capacity(h.len() * 4);
    for (m, c) in h {
        if field.is_zero(&c) {
            continue;
        }
        match acc.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = field.add(e.get(), &c);
                *e.get_mut() = v;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
                heap.push((order.key(&m), m));
            }
        }
    }
    let mut out: Terms<F::Elem> = Vec::new();
    while let Some((_, m)) = heap.pop() {
        let Some(c) = acc.remove(&m) else { continue };
        if field.is_zero(&c) {
            continue;
        }
        let reducer = basis.iter().find(|g| g.lm().divides(&m));
        match reducer {
            None => out.push((m, c)),
            Some(g) => {
                let q = m.div(&g.lm()).unwrap();
                // g is monic: subtract c * q * g
                for (t, d) in &g.terms[1..] {
                    let mt = t.mul(&q);
                    let delta = field.mul(&c, d);
                    match acc.entry(mt) {
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let v = field.sub(e.get(), &delta);
                            *e.get_mut() = v;
                        }
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(field.neg(&delta));
                            heap.push((order.key(&mt), mt));
                        }
                    }
                }
            }
        }
    }
    out
}

fn spoly<F: Field>(field: &F, a: &Row<F::Elem>, b: &Row<F::Elem>, lcm: &Monomial) -> Terms<F::Elem> {
    let qa = lcm.div(&a.lm()).unwrap();
    let qb = lcm.div(&b.lm()).unwrap();
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    for (t, c) in &a.terms[1..] {
        out.push((t.mul(&qa), c.clone()));
    }
    for (t, c) in &b.terms[1..] {
        out.push((t.mul(&qb), field.neg(c)));
    }
    out
}

struct State<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    rows: Vec<Row<F::Elem>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a, F: Field> State<'a, F> {
    fn active_rows(&self) -> Vec<&Row<F::Elem>> {
        self.active.iter().map(|&i| &self.rows[i]).collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let (a, b) = (&self.rows[i], &self.rows[j]);
        let sa = a.sugar + lcm.degree() - a.lm().degree();
        let sb = b.sugar + lcm.degree() - b.lm().degree();
        sa.max(sb)
    }

    /// Gebauer-Möller update after appending row `h`.
    fn update(&mut self, h: usize) {
        let lh = self.rows[h].lm();
        let cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let lcm = lh.lcm(&self.rows[g].lm());
                Pair { i: g, j: h, lcm, sugar: self.pair_sugar(g, h, &lcm) }
            })
            .collect();
        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            let la = cands[a].lcm;
            let coprime = lh.is_coprime(&self.rows[cands[a].i].lm());
            if coprime {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = cands[b].lcm;
                if lb.divides(&la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion, applied after the chain pruning
        let new_pairs: Vec<Pair> = cands
            .into_iter()
            .zip(keep)
            .filter(|(p, k)| *k && !lh.is_coprime(&self.rows[p.i].lm()))
            .map(|(p, _)| p)
            .collect();
        let rows = &self.rows;
        self.pairs
            .retain(|p| !(lh.divides(&p.lcm) && lh.lcm(&rows[p.i].lm()) != p.lcm && lh.lcm(&rows[p.j].lm()) != p.lcm));
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !lh.divides(&rows[g].lm()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let (idx, _) = self.pairs.iter().enumerate().min_by(|(_, a), (_, b)| {
            a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn push(&mut self, mut terms: Terms<F::Elem>, sugar: u32) {
        make_monic(self.field, &mut terms);
        self.rows.push(Row { terms, sugar });
        let h = self.rows.len() - 1;
        self.update(h);
    }

    fn leading_monomials(&self) -> Vec<Monomial> {
        self.active.iter().map(|&i| self.rows[i].lm()).collect()
    }
}

/// Runs Buchberger's algorithm; `stop` is consulted after each new basis
/// element with the current leading monomials.
pub(crate) fn buchberger<F: Field>(
    field: &F,
    order: MonomialOrder,
    gens: &[Poly<F>],
    limits: GbLimits,
    stop: Option<&dyn Fn(&[Monomial]) -> bool>,
) -> Result<Outcome<F::Elem>> {
    if field.characteristic() == 0 {
        return Err(Error::CharZeroUnsupported);
    }
    let mut inputs: Vec<(Terms<F::Elem>, u32)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = g.terms().to_vec();
            sort_terms(order, &mut t);
            (t, g.degree().unwrap_or(0))
        })
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a.0[0].0, &b.0[0].0).then(a.0.len().cmp(&b.0.len())));

    let mut st = State { field, order, rows: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for (t, sugar) in inputs {
        let reduced = {
            let basis = st.active_rows();
            reduce(field, order, t, &basis)
        };
        if reduced.is_empty() {
            continue;
        }
        if reduced[0].0.is_one() {
            return Ok(Outcome::Complete(vec![Row { terms: vec![(Monomial::one(), field.one())], sugar: 0 }]));
        }
        st.push(reduced, sugar);
        if let Some(s) = stop {
            if s(&st.leading_monomials()) {
                return Ok(Outcome::Stopped);
            }
        }
    }

    let mut processed: u64 = 0;
    while let Some(pair) = st.select() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::BudgetExceeded(format!("more than {} S-pairs", limits.max_pairs)));
        }
        if pair.lcm.degree() > limits.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "S-polynomial degree {} above the cap {}",
                pair.lcm.degree(),
                limits.max_degree
            )));
        }
        let s = spoly(field, &st.rows[pair.i], &st.rows[pair.j], &pair.lcm);
        let reduced = {
            let basis = st.active_rows();
            reduce(field, order, s, &basis)
        };
        if reduced.is_empty() {
            continue;
        }
        if reduced[0].0.is_one() {
            return Ok(Outcome::Complete(vec![Row { terms: vec![(Monomial::one(), field.one())], sugar: 0 }]));
        }
        st.push(reduced, pair.sugar);
        if let Some(s) = stop {
            if s(&st.leading_monomials()) {
                return Ok(Outcome::Stopped);
            }
        }
    }

    // reduced basis from the (already minimal) active set
    let mut basis: Vec<Row<F::Elem>> = st.active.iter().map(|&i| st.rows[i].clone()).collect();
    basis.sort_by(|a, b| order.cmp(&a.lm(), &b.lm()));
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let lead = basis[k].terms[0].clone();
        let tail = basis[k].terms[1..].to_vec();
        let others: Vec<&Row<F::Elem>> = basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, r)| r).collect();
        let mut terms = vec![lead];
        terms.extend(reduce(field, order, tail, &others));
        out.push(Row { terms, sugar: basis[k].sugar });
    }
    Ok(Outcome::Complete(out))
}

/// Normal form of `terms` (sorted in `order`) against `basis`.
pub(crate) fn normal_form<F: Field>(
    field: &F,
    order: MonomialOrder,
    terms: Terms<F::Elem>,
    basis: &[Row<F::Elem>],
) -> Terms<F::Elem> {
    let refs: Vec<&Row<F::Elem>> = basis.iter().collect();
    reduce(field, order, terms, &refs)
}

/// Whether every S-polynomial of `basis` reduces to zero.
pub(crate) fn s_pairs_reduce_to_zero<F: Field>(field: &F, order: MonomialOrder, basis: &[Row<F::Elem>]) -> bool {
    let refs: Vec<&Row<F::Elem>> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].lm().lcm(&basis[j].lm());
            let s = spoly(field, &basis[i], &basis[j], &lcm);
            if !reduce(field, order, s, &refs).is_empty() {
                return false;
            }
        }
    }
    true
}
