//! Term orders on monomials and on free-module terms.
//!
//! Every order is compiled into a linear "key" map: a monomial `e` is sent
//! to an integer vector `M e`, and monomials compare by comparing their keys
//! lexicographically. Keys are additive, so the key of a product is the sum
//! of the keys, which is what the Gröbner engines exploit.

use std::cmp::Ordering;

use smallvec::SmallVec;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A term order (or weight order that may fail to be a well-order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Lex,
    Grevlex,
    /// Compare by the weight first, then by `tiebreak`.
    Weighted { weight: Vec<i64>, tiebreak: Box<OrderSpec> },
    /// Consecutive variable blocks compared one after another, each by its
    /// own inner order (restricted to the block).
    Elimination { blocks: Vec<usize>, inner: Vec<OrderSpec> },
    /// Rows compared in turn; ties are broken by grevlex.
    Matrix(Vec<Vec<i64>>),
}

/// How positions of a free module enter the comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionRule {
    /// Position over term. `ranking[p]` is the priority of slot `p`; larger wins.
    Pot(Vec<usize>),
    /// Term over position, same ranking convention.
    Top(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub term: OrderSpec,
    pub position: PositionRule,
}

impl OrderSpec {
    pub fn weighted(weight: Vec<i64>, tiebreak: OrderSpec) -> Self {
        OrderSpec::Weighted { weight, tiebreak: Box::new(tiebreak) }
    }

    /// Whether `1` is the minimum, i.e. the order is usable for plain Buchberger.
    pub fn is_well_order(&self, nvars: usize) -> bool {
        let rows = self.rows(nvars);
        (0..nvars).all(|i| {
            for r in &rows {
                match r {
                    Row::Weight(w) => {
                        if w[i] > 0 {
                            return true;
                        }
                        if w[i] < 0 {
                            return false;
                        }
                    }
                    Row::RevLex(idx) | Row::Lex(idx) => {
                        if idx.contains(&i) {
                            return true;
                        }
                    }
                }
            }
            false
        })
    }

    /// True for weight orders that have to be run through homogenization.
    pub fn requires_homogenization(&self, nvars: usize) -> bool {
        !self.is_well_order(nvars)
    }

    pub(crate) fn rows(&self, nvars: usize) -> Vec<Row> {
        let all: Vec<usize> = (0..nvars).collect();
        match self {
            OrderSpec::Lex => vec![Row::Lex(all)],
            OrderSpec::Grevlex => vec![Row::Weight(vec![1; nvars]), Row::RevLex(all)],
            OrderSpec::Weighted { weight, tiebreak } => {
                let mut w = weight.clone();
                w.resize(nvars, 0);
                let mut rows = vec![Row::Weight(w)];
                rows.extend(tiebreak.rows(nvars));
                rows
            }
            OrderSpec::Elimination { blocks, inner } => {
                let mut rows = Vec::new();
                let mut start = 0;
                for (b, o) in blocks.iter().zip(inner.iter()) {
                    for r in o.rows(*b) {
                        rows.push(r.shifted(start, nvars));
                    }
                    start += b;
                }
                rows
            }
            OrderSpec::Matrix(m) => {
                let mut rows: Vec<Row> = m
                    .iter()
                    .map(|r| {
                        let mut w = r.clone();
                        w.resize(nvars, 0);
                        Row::Weight(w)
                    })
                    .collect();
                rows.push(Row::Weight(vec![1; nvars]));
                rows.push(Row::RevLex(all));
                rows
            }
        }
    }

    pub(crate) fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            OrderSpec::Weighted { weight, tiebreak } => {
                if weight.len() != nvars {
                    return Err(Error::Arity { expected: nvars, found: weight.len() });
                }
                tiebreak.validate(nvars)
            }
            OrderSpec::Elimination { blocks, inner } => {
                let total: usize = blocks.iter().sum();
                if total != nvars || blocks.len() != inner.len() {
                    return Err(Error::Arity { expected: nvars, found: total });
                }
                for (b, o) in blocks.iter().zip(inner) {
                    o.validate(*b)?;
                }
                Ok(())
            }
            OrderSpec::Matrix(m) => {
                for r in m {
                    if r.len() != nvars {
                        return Err(Error::Arity { expected: nvars, found: r.len() });
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Compare two monomials under `order`.
pub fn compare(order: &OrderSpec, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::Arity { expected: m1.len(), found: m2.len() });
    }
    order.validate(m1.len())?;
    let k = KeyOrder::new(order.rows(m1.len()), None);
    Ok(k.mono_key(m1.exps()).cmp(&k.mono_key(m2.exps())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Row {
    Weight(Vec<i64>),
    RevLex(Vec<usize>),
    Lex(Vec<usize>),
}

impl Row {
    pub(crate) fn shifted(&self, start: usize, nvars: usize) -> Row {
        match self {
            Row::Weight(w) => {
                let mut v = vec![0; nvars];
                for (i, x) in w.iter().enumerate() {
                    v[start + i] = *x;
                }
                Row::Weight(v)
            }
            Row::RevLex(idx) => Row::RevLex(idx.iter().map(|i| i + start).collect()),
            Row::Lex(idx) => Row::Lex(idx.iter().map(|i| i + start).collect()),
        }
    }

    fn width(&self) -> usize {
        match self {
            Row::Weight(_) => 1,
            Row::RevLex(i) | Row::Lex(i) => i.len(),
        }
    }
}

pub type Key = SmallVec<[i32; 32]>;

/// Compiled order: monomial keys plus an optional position ranking.
#[derive(Clone, Debug)]
pub(crate) struct KeyOrder {
    rows: Vec<Row>,
    /// `(pot, ranking)`; `None` for plain rings.
    position: Option<(bool, Vec<i32>)>,
    width: usize,
}

impl KeyOrder {
    pub(crate) fn new(rows: Vec<Row>, position: Option<&PositionRule>) -> Self {
        let width = rows.iter().map(Row::width).sum::<usize>() + position.is_some() as usize;
        let position = position.map(|p| match p {
            PositionRule::Pot(r) => (true, r.iter().map(|&x| x as i32).collect()),
            PositionRule::Top(r) => (false, r.iter().map(|&x| x as i32).collect()),
        });
        KeyOrder { rows, position, width }
    }

    pub(crate) fn from_spec(spec: &OrderSpec, nvars: usize) -> Self {
        Self::new(spec.rows(nvars), None)
    }

    pub(crate) fn from_module(spec: &ModuleOrder, nvars: usize) -> Self {
        Self::new(spec.term.rows(nvars), Some(&spec.position))
    }

    fn push_mono(&self, e: &[u16], out: &mut Key) {
        for r in &self.rows {
            match r {
                Row::Weight(w) => {
                    let mut s: i64 = 0;
                    for (x, y) in w.iter().zip(e.iter()) {
                        s += x * (*y as i64);
                    }
                    out.push(s as i32);
                }
                Row::RevLex(idx) => {
                    for &i in idx.iter().rev() {
                        out.push(-(e[i] as i32));
                    }
                }
                Row::Lex(idx) => {
                    for &i in idx {
                        out.push(e[i] as i32);
                    }
                }
            }
        }
    }

    pub(crate) fn mono_key(&self, e: &[u16]) -> Key {
        let mut k = Key::with_capacity(self.width);
        self.push_mono(e, &mut k);
        k
    }

    /// Key of the term `e` at slot `pos`.
    pub(crate) fn key(&self, pos: u32, e: &[u16]) -> Key {
        let mut k = Key::with_capacity(self.width);
        match &self.position {
            None => self.push_mono(e, &mut k),
            Some((true, rank)) => {
                k.push(rank[pos as usize]);
                self.push_mono(e, &mut k);
            }
            Some((false, rank)) => {
                self.push_mono(e, &mut k);
                k.push(rank[pos as usize]);
            }
        }
        k
    }

    /// Key increment caused by multiplying with the monomial `e` (position part zero).
    pub(crate) fn shift(&self, e: &[u16]) -> Key {
        let mut k = Key::with_capacity(self.width);
        match &self.position {
            None => self.push_mono(e, &mut k),
            Some((true, _)) => {
                k.push(0);
                self.push_mono(e, &mut k);
            }
            Some((false, _)) => {
                self.push_mono(e, &mut k);
                k.push(0);
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_basic() {
        assert_eq!(compare(&OrderSpec::Grevlex, &m(&[2, 0]), &m(&[1, 1])).unwrap(), Ordering::Greater);
        // degree first
        assert_eq!(compare(&OrderSpec::Grevlex, &m(&[0, 0, 2]), &m(&[1, 0, 0])).unwrap(), Ordering::Greater);
        // revlex tie: x1 x3 < x2^2 in grevlex
        assert_eq!(compare(&OrderSpec::Grevlex, &m(&[1, 0, 1]), &m(&[0, 2, 0])).unwrap(), Ordering::Less);
        assert_eq!(compare(&OrderSpec::Grevlex, &m(&[3, 1]), &m(&[3, 1])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn weight_refined() {
        let o = OrderSpec::weighted(vec![1, 0], OrderSpec::Grevlex);
        assert_eq!(compare(&o, &m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn arity_mismatch() {
        assert!(compare(&OrderSpec::Lex, &m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn well_order_flags() {
        assert!(OrderSpec::Grevlex.is_well_order(3));
        let w = OrderSpec::weighted(vec![-1, 0, 1, 0], OrderSpec::Grevlex);
        assert!(w.requires_homogenization(4));
        let e = OrderSpec::Elimination {
            blocks: vec![1, 2],
            inner: vec![OrderSpec::Grevlex, OrderSpec::Lex],
        };
        assert!(e.is_well_order(3));
        assert_eq!(compare(&e, &m(&[1, 0, 0]), &m(&[0, 5, 5])).unwrap(), Ordering::Greater);
    }
}
