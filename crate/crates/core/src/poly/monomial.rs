use std::cmp::Ordering;

/// Exponent vector of a monomial in a fixed list of ambient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; callers guarantee divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in descending
    /// lexicographic order of the exponent vectors.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::from_exponents(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of total degree at most `d`.
    pub fn all_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::all_of_degree(nvars, k)).collect()
    }
}

/// Negative-degree order with reverse-lexicographic tie-break (a local order:
/// `1` is the largest monomial and every variable is smaller than `1`).
///
/// The optional permutation lists variable indices from largest to smallest;
/// the identity order has `x_0 > x_1 > ... > x_{n-1}` among variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LocalOrder {
    perm: Option<Vec<usize>>,
}

impl LocalOrder {
    pub fn new() -> LocalOrder {
        LocalOrder { perm: None }
    }

    /// Panics unless `perm` is a permutation of `0..perm.len()`.
    pub fn with_permutation(perm: Vec<usize>) -> LocalOrder {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            LocalOrder { perm: None }
        } else {
            LocalOrder { perm: Some(perm) }
        }
    }

    pub fn is_default(&self) -> bool {
        self.perm.is_none()
    }

    /// `Greater` means `a` is larger (closer to leading) than `b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return db.cmp(&da);
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        match &self.perm {
            None => {
                for i in (0..ea.len()).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
            }
            Some(p) => {
                for &i in p.iter().rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn one_is_largest() {
        let ord = LocalOrder::new();
        for mono in Monomial::all_up_to_degree(3, 3).into_iter().skip(1) {
            assert_eq!(ord.cmp(&Monomial::one(3), &mono), Ordering::Greater);
        }
    }

    #[test]
    fn degree_two_in_two_variables() {
        let ord = LocalOrder::new();
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn permutation_swaps_variables() {
        let ord = LocalOrder::with_permutation(vec![1, 0]);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Less);
        assert!(LocalOrder::with_permutation(vec![0, 1]).is_default());
    }

    #[test]
    fn enumerates_monomials() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
        assert!(Monomial::all_of_degree(0, 1).is_empty());
    }
}
