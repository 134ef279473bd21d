//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller pair criteria.
//!
//! Internally polynomials are kept as term vectors sorted in ascending order
//! under the active term order, so the leading term is always `last()`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::TermOrder;
use super::poly::Poly;
use super::ring::{Monomial, Ring, Q};

type Terms = Vec<(Monomial, Q)>;

#[derive(Clone, Debug)]
struct Entry {
    terms: Terms,
    sugar: u32,
}

impl Entry {
    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }
}

fn ascending(p: &Poly, order: &TermOrder) -> Terms {
    let mut v: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&a.0, &b.0));
    v
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `p - c * m * g` for ascending term vectors.
fn sub_scaled(p: Terms, c: &Q, m: &Monomial, g: &[(Monomial, Q)], order: &TermOrder) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut pi = p.into_iter().peekable();
    let mut gi = g.iter().map(|(t, a)| (t.mul(m), -(a * c))).peekable();
    loop {
        match (pi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(pi.next().unwrap()),
            (None, Some(_)) => out.push(gi.next().unwrap()),
            (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                Ordering::Less => out.push(pi.next().unwrap()),
                Ordering::Greater => out.push(gi.next().unwrap()),
                Ordering::Equal => {
                    let (ma, ca) = pi.next().unwrap();
                    let (_, cb) = gi.next().unwrap();
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((ma, s));
                    }
                }
            },
        }
    }
    out
}

/// Full reduction of `p` by monic `basis` elements; returns remainder and sugar.
fn reduce(
    mut cur: Terms,
    mut sugar: u32,
    basis: &[&Entry],
    order: &TermOrder,
) -> (Terms, u32) {
    let mut rem_desc: Terms = Vec::new();
    while let Some((m, c)) = cur.last() {
        let divisor = basis.iter().find(|g| g.lm().divides(m));
        match divisor {
            Some(g) => {
                let t = m.div(g.lm()).unwrap();
                let c = c.clone();
                sugar = sugar.max(t.degree() + g.sugar);
                cur = sub_scaled(cur, &c, &t, &g.terms, order);
            }
            None => rem_desc.push(cur.pop().unwrap()),
        }
    }
    rem_desc.reverse();
    (rem_desc, sugar)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// A Gröbner basis together with its ring and order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    gens: Vec<Poly>,
    internal: Vec<Entry>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens`.
    pub fn compute(ring: &Ring, gens: &[Poly], order: &TermOrder) -> Self {
        for g in gens {
            assert!(g.ring() == ring, "generator from a different ring");
        }
        let entries = buchberger(gens, order);
        let gens = entries
            .iter()
            .map(|e| Poly::from_terms(ring, e.terms.iter().cloned()))
            .collect();
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            gens,
            internal: entries,
            reduced: true,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|e| e.lm().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.internal.iter().any(|e| e.lm().is_one())
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert!(p.ring() == &self.ring, "ring mismatch in normal form");
        let basis: Vec<&Entry> = self.internal.iter().collect();
        let (rem, _) = reduce(ascending(p, &self.order), 0, &basis, &self.order);
        Poly::from_terms(&self.ring, rem)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// `gb_buchberger`: reduced Gröbner basis of `<gens>` under `order`.
pub fn gb_buchberger(gens: &[Poly], order: &TermOrder) -> GroebnerBasis {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .expect("gb_buchberger needs at least one generator to fix the ring");
    GroebnerBasis::compute(&ring, gens, order)
}

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

/// S-polynomial of two nonzero polynomials (made monic first).
pub fn s_polynomial(f: &Poly, g: &Poly, order: &TermOrder) -> Poly {
    let mut a = ascending(f, order);
    let mut b = ascending(g, order);
    make_monic(&mut a);
    make_monic(&mut b);
    let lf = a.last().unwrap().0.clone();
    let lg = b.last().unwrap().0.clone();
    let l = lf.lcm(&lg);
    let ta = l.div(&lf).unwrap();
    let tb = l.div(&lg).unwrap();
    let sa: Terms = a.iter().map(|(m, c)| (m.mul(&ta), c.clone())).collect();
    let s = sub_scaled(sa, &Q::one(), &tb, &b, order);
    Poly::from_terms(f.ring(), s)
}

fn buchberger(gens: &[Poly], order: &TermOrder) -> Vec<Entry> {
    let mut all: Vec<Entry> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // Seed with interreduced inputs, lowest leading monomial first.
    let mut inputs: Vec<Entry> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = ascending(g, order);
            make_monic(&mut t);
            Entry {
                sugar: g.total_degree().unwrap_or(0),
                terms: t,
            }
        })
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    for e in inputs {
        let basis: Vec<&Entry> = active.iter().map(|&k| &all[k]).collect();
        let (mut t, sugar) = reduce(e.terms, e.sugar, &basis, order);
        if t.is_empty() {
            continue;
        }
        make_monic(&mut t);
        if t.last().unwrap().0.is_one() {
            return vec![unit_entry(t)];
        }
        all.push(Entry { terms: t, sugar });
        update(&all, &mut active, &mut pairs, all.len() - 1);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (f, g) = (&all[pair.i], &all[pair.j]);
        let tf = pair.lcm.div(f.lm()).unwrap();
        let tg = pair.lcm.div(g.lm()).unwrap();
        let sf: Terms = f.terms.iter().map(|(m, c)| (m.mul(&tf), c.clone())).collect();
        let s = sub_scaled(sf, &Q::one(), &tg, &g.terms, order);
        let basis: Vec<&Entry> = active.iter().map(|&k| &all[k]).collect();
        let (mut t, sugar) = reduce(s, pair.sugar, &basis, order);
        if t.is_empty() {
            continue;
        }
        make_monic(&mut t);
        if t.last().unwrap().0.is_one() {
            return vec![unit_entry(t)];
        }
        all.push(Entry { terms: t, sugar });
        update(&all, &mut active, &mut pairs, all.len() - 1);
    }

    interreduce(active.into_iter().map(|k| all[k].clone()).collect(), order)
}

fn unit_entry(t: Terms) -> Entry {
    let one = t.last().unwrap().0.clone();
    Entry {
        terms: vec![(one, Q::one())],
        sugar: 0,
    }
}

fn pair_sugar(all: &[Entry], i: usize, j: usize, lcm: &Monomial) -> u32 {
    let a = &all[i];
    let b = &all[j];
    (a.sugar + lcm.degree() - a.lm().degree()).max(b.sugar + lcm.degree() - b.lm().degree())
}

/// Gebauer–Möller installation of the new element `h`.
fn update(all: &[Entry], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = all[h].lm().clone();

    let candidates: Vec<(usize, Monomial)> = active
        .iter()
        .map(|&g| (g, lh.lcm(all[g].lm())))
        .collect();

    // Chain criterion among the new pairs.
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in candidates.iter().enumerate() {
        let coprime = lh.is_coprime(all[*g].lm());
        let dominated_later = candidates[idx + 1..]
            .iter()
            .any(|(_, l2)| l2.divides(l));
        let dominated_kept = kept.iter().any(|(_, l2)| l2.divides(l));
        if coprime || (!dominated_later && !dominated_kept) {
            kept.push((*g, l.clone()));
        }
    }
    // Product criterion.
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|(g, _)| !lh.is_coprime(all[*g].lm()))
        .map(|(g, l)| Pair {
            i: g,
            j: h,
            sugar: pair_sugar(all, g, h, &l),
            lcm: l,
        })
        .collect();

    // Drop old pairs made redundant by h.
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(all[p.i].lm()) != p.lcm
            && lh.lcm(all[p.j].lm()) != p.lcm)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !lh.divides(all[g].lm()));
    active.push(h);
}

fn interreduce(mut basis: Vec<Entry>, order: &TermOrder) -> Vec<Entry> {
    // Minimal basis: drop elements whose leading monomial is divisible by another's.
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Entry> = Vec::new();
    for e in basis {
        if !minimal.iter().any(|m| m.lm().divides(e.lm())) {
            minimal.push(e);
        }
    }
    let mut out: Vec<Entry> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Entry> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e)
            .collect();
        let (mut t, sugar) = reduce(minimal[i].terms.clone(), minimal[i].sugar, &others, order);
        make_monic(&mut t);
        out.push(Entry { terms: t, sugar });
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}
