use std::fmt;

use smallvec::SmallVec;

pub type Exps = SmallVec<[u16; 24]>;

/// Exponent vector; the length is fixed by the ring it lives in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub(crate) Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn get(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), o.len());
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self | o` componentwise.
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`, or `None` when `o` does not divide `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !o.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_div() {
        let a = Monomial::from_exps(&[2, 0, 1]);
        let b = Monomial::from_exps(&[1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l.exps(), &[2, 3, 1]);
        assert_eq!(l.div(&a).unwrap().exps(), &[0, 3, 0]);
        assert!(a.div(&b).is_none());
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(3, 2, 1).is_coprime(&b));
    }
}
