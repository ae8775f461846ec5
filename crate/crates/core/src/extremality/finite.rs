//! Extremality for functions on a finite cyclic group `(1/N)Z / Z`.

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, RowSource};
use crate::pwl::FiniteGroupFunction;
use crate::scalar::Scalar;

/// Reasons a finite function fails to be minimal, or `None` if it is minimal.
pub fn finite_minimality_failure(g: &FiniteGroupFunction) -> Option<String> {
    let n = g.denominator() as i64;
    if !g.value(0).is_zero() {
        return Some(format!("value at 0 is {}", g.value(0)));
    }
    let f = g.f_index() as i64;
    for x in 0..n {
        if g.value(x) + g.value(f - x) != Scalar::one() {
            return Some(format!("symmetry fails at {x}/{n}"));
        }
        for y in x..n {
            if (g.value(x) + g.value(y)) < *g.value(x + y) {
                return Some(format!("subadditivity fails at ({x}/{n}, {y}/{n})"));
            }
        }
    }
    None
}

struct FiniteSystem<'a> {
    g: &'a FiniteGroupFunction,
}

impl RowSource for FiniteSystem<'_> {
    fn num_vars(&self) -> usize {
        self.g.denominator() as usize
    }

    fn for_each_row(&self, visit: &mut dyn FnMut(&[(u32, i64)])) {
        let n = self.g.denominator() as i64;
        visit(&[(0, 1)]);
        visit(&[(self.g.f_index() as u32, 1)]);
        let mut row: Vec<(u32, i64)> = Vec::with_capacity(3);
        for x in 0..n {
            for y in x..n {
                if self.g.value(x) + self.g.value(y) != *self.g.value(x + y) {
                    continue;
                }
                row.clear();
                let z = (x + y) % n;
                for (c, a) in [(x, 1), (y, 1), (z, -1)] {
                    match row.iter_mut().find(|t| t.0 == c as u32) {
                        Some(t) => t.1 += a,
                        None => row.push((c as u32, a)),
                    }
                }
                row.retain(|t| t.1 != 0);
                row.sort_unstable();
                if !row.is_empty() {
                    visit(&row);
                }
            }
        }
    }
}

/// True iff the tight relations of `g`, with `phi(0) = 0` and `phi(f) = 1`,
/// determine `g` uniquely.
pub fn finite_group_extreme(g: &FiniteGroupFunction) -> Result<bool> {
    if let Some(reason) = finite_minimality_failure(g) {
        return Err(Error::NotMinimal(reason));
    }
    Ok(integer_kernel(&FiniteSystem { g }).dimension == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::gmi;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        let two = FiniteGroupFunction::new(2, vec![s("0"), s("1")], s("1/2")).unwrap();
        assert!(finite_group_extreme(&two).unwrap());
        let g = gmi(&s("1/5")).unwrap().restrict(20).unwrap();
        assert!(finite_group_extreme(&g).unwrap());
        let bad = FiniteGroupFunction::new(2, vec![s("0"), s("1/2")], s("1/2")).unwrap();
        assert!(matches!(finite_group_extreme(&bad), Err(Error::NotMinimal(_))));
    }
}
