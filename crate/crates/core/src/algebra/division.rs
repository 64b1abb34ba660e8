use super::order::{KeyOrder, OrderSpec};
use super::poly::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

/// Multivariate division: `f = Σ qᵢ gᵢ + r` with no term of `r` divisible by
/// any leading monomial of the divisors. Divisors are tried in the given
/// sequence, so the result is deterministic.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: &OrderSpec) -> Result<(Vec<Polynomial>, Polynomial)> {
    let n = f.nvars();
    if divisors.iter().any(|g| g.nvars() != n) {
        return Err(Error::ContextMismatch);
    }
    order.validate(n)?;
    if !order.is_well_order(n) {
        return Err(Error::NotWellOrder);
    }
    let key = KeyOrder::from_spec(order, n);
    let leads: Vec<Option<(super::Monomial, Rational)>> =
        divisors.iter().map(|g| g.sorted_terms(order).into_iter().next()).collect();
    let mut quots = vec![Polynomial::zero(n); divisors.len()];
    let mut rem = Vec::new();
    let mut p = f.clone();
    while !p.is_zero() {
        let (m, c) = p
            .terms()
            .iter()
            .max_by(|a, b| key.mono_key(a.0.exps()).cmp(&key.mono_key(b.0.exps())))
            .cloned()
            .unwrap();
        let hit = leads.iter().enumerate().find_map(|(i, l)| {
            l.as_ref().and_then(|(lm, lc)| m.div(lm).map(|t| (i, t, &c / lc)))
        });
        match hit {
            Some((i, t, q)) => {
                quots[i] = quots[i].add(&Polynomial::monomial(t.clone(), q.clone()));
                p = p.sub(&divisors[i].mul_monomial(&t, &q));
            }
            None => {
                let lt = Polynomial::monomial(m, c);
                p = p.sub(&lt);
                rem.push(lt);
            }
        }
    }
    let r = rem.into_iter().fold(Polynomial::zero(n), |a, b| a.add(&b));
    Ok((quots, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_cases() {
        let x = Polynomial::var(1, 0);
        let (q, r) = divide(&x.pow(2), std::slice::from_ref(&x), &OrderSpec::Grevlex).unwrap();
        assert_eq!(q[0], x);
        assert!(r.is_zero());
        let one = Polynomial::one(1);
        let (_, r) = divide(&x.add(&one), std::slice::from_ref(&x), &OrderSpec::Grevlex).unwrap();
        assert_eq!(r, one);
    }

    #[test]
    fn lex_y_over_x() {
        // variables (y, x) so that lex has y > x
        let y = Polynomial::var(2, 0);
        let x = Polynomial::var(2, 1);
        let one = Polynomial::one(2);
        let f = x.mul(&y).sub(&one);
        let g = y.sub(&one);
        let (q, r) = divide(&f, std::slice::from_ref(&g), &OrderSpec::Lex).unwrap();
        assert_eq!(r, x.sub(&one));
        assert_eq!(q[0].mul(&g).add(&r), f);
    }

    #[test]
    fn rejects_non_well_order() {
        let x = Polynomial::var(1, 0);
        let o = OrderSpec::weighted(vec![-1], OrderSpec::Grevlex);
        assert_eq!(divide(&x, std::slice::from_ref(&x), &o), Err(Error::NotWellOrder));
    }
}
