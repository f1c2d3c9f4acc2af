use std::cmp::Ordering;

/// Upper bound on the number of variables of any ring.
pub const MAX_VARS: usize = 6;

/// Dense exponent vector. Slots beyond the ring's variable count stay zero,
/// so the ordering does not depend on the ring size.
///
/// `Ord` is graded reverse lexicographic: higher total degree first, ties
/// broken in favour of the smaller exponent in the last differing variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(index: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[index] = 1;
        m
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_sub(*b)?;
        }
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = (*a).min(*b);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = *self;
        for a in m.exps.iter_mut() {
            *a = u16::try_from(*a as u32 * k).expect("exponent overflow");
        }
        m
    }

    pub(crate) fn with_exp(&self, index: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.exps[index] = u16::try_from(e).expect("exponent overflow");
        m
    }

    /// Number of variables with a positive exponent.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        // degree dominates
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x0 > x1 > x2 in degree one
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // x1^2 > x0*x2 in grevlex (but not in lex)
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert_eq!(m(&[1, 1]).cmp(&m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]).divides(&a));
        assert_eq!(a.checked_div(&b), None);
        assert_eq!(a.checked_div(&m(&[1, 0, 0])), Some(m(&[1, 1, 0])));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 1])));
    }
}
