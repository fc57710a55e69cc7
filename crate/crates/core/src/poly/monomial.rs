use std::cmp::Ordering;
use std::fmt;

/// 1-based variable index.
pub type VarIndex = usize;

/// A power product `x_{v1}^{e1} * x_{v2}^{e2} * ...` stored sparsely, sorted by
/// variable, with every stored exponent positive. The empty product is `1`.
///
/// `Ord` is graded lexicographic: total degree first, then exponent of `x1`,
/// then `x2`, and so on. Larger monomials print first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarIndex, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarIndex) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarIndex, e: u32) -> Self {
        assert!(v >= 1, "variable indices are 1-based");
        if e == 0 {
            Self::one()
        } else {
            Self { exps: vec![(v, e)] }
        }
    }

    /// Builds from `(var, exponent)` pairs in any order; repeated variables are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarIndex, u32)>) -> Self {
        let mut exps: Vec<(VarIndex, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarIndex, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            assert!(v >= 1, "variable indices are 1-based");
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Self { exps: merged }
    }

    /// Dense exponent vector `(e_1, ..., e_n)`.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i + 1, e)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarIndex) -> u32 {
        self.exps.binary_search_by_key(&v, |&(w, _)| w).map(|i| self.exps[i].1).unwrap_or(0)
    }

    pub fn contains(&self, v: VarIndex) -> bool {
        self.exponent(v) > 0
    }

    pub fn max_var(&self) -> Option<VarIndex> {
        self.exps.last().map(|&(v, _)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarIndex, u32)> + '_ {
        self.exps.iter().copied()
    }

    /// Renames `x_v` to `x_{perm[v - 1]}`.
    pub fn permute(&self, perm: &[VarIndex]) -> Self {
        Self::from_pairs(self.exps.iter().map(|&(v, e)| (perm[v - 1], e)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (&(va, ea), &(vb, eb)) in self.exps.iter().zip(&other.exps) {
            if va != vb {
                // the side holding the lower-indexed variable has the larger exponent there
                return vb.cmp(&va);
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let m = Monomial::from_exponents;
        // degree dominates
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        // x1 > x2 > x3 within a degree
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        assert!(m(&[2, 1, 0]) > m(&[2, 0, 1]));
        assert!(m(&[1, 2, 0]) > m(&[1, 1, 1]));
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
        assert_eq!(m(&[1, 0, 2]).cmp(&m(&[1, 0, 2])), Ordering::Equal);
        assert!(Monomial::one() < Monomial::var(5));
    }

    #[test]
    fn products_and_display() {
        let a = Monomial::from_pairs([(2, 1), (1, 2)]);
        let b = Monomial::from_pairs([(3, 1), (2, 2)]);
        let p = a.mul(&b);
        assert_eq!(p.to_string(), "x1^2*x2^3*x3");
        assert_eq!(p.degree(), 6);
        assert_eq!(p.exponent(2), 3);
        assert_eq!(p.exponent(4), 0);
        assert_eq!(Monomial::one().to_string(), "1");
        assert_eq!(Monomial::from_pairs([(1, 1), (1, 2)]), Monomial::var_pow(1, 3));
    }
}
