//! Sparse exact arithmetic for integer polynomials in the two commuting
//! variables `w` and `r`.
//!
//! Values live in canonical form: a sorted term map with no zero
//! coefficients, so structural equality is polynomial equality. The term
//! order used everywhere (rendering, JSON dumps, the total order on
//! polynomials) is: higher total degree first, ties broken by *lower*
//! `w`-degree first. That puts `2r^4w^4` before `2r^2w^6`.
//!
//! Coefficients are checked `i64`; an overflow aborts with a panic rather
//! than wrapping silently.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

/// A monomial `w^deg_w · r^deg_r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial2 {
    pub deg_w: u32,
    pub deg_r: u32,
}

impl Monomial2 {
    pub const ONE: Monomial2 = Monomial2 { deg_w: 0, deg_r: 0 };
    pub const W: Monomial2 = Monomial2 { deg_w: 1, deg_r: 0 };
    pub const R: Monomial2 = Monomial2 { deg_w: 0, deg_r: 1 };

    pub fn new(deg_w: u32, deg_r: u32) -> Self {
        Monomial2 { deg_w, deg_r }
    }

    pub fn total_degree(&self) -> u32 {
        self.deg_w
            .checked_add(self.deg_r)
            .expect("monomial degree overflow")
    }

    pub fn is_one(&self) -> bool {
        self.deg_w == 0 && self.deg_r == 0
    }

    /// Product of monomials adds degrees componentwise.
    pub fn mul(&self, other: &Monomial2) -> Monomial2 {
        Monomial2 {
            deg_w: self
                .deg_w
                .checked_add(other.deg_w)
                .expect("monomial degree overflow"),
            deg_r: self
                .deg_r
                .checked_add(other.deg_r)
                .expect("monomial degree overflow"),
        }
    }

    pub fn swap_vars(&self) -> Monomial2 {
        Monomial2 {
            deg_w: self.deg_r,
            deg_r: self.deg_w,
        }
    }

    /// The variable part of a rendered term, e.g. `r^2w^3`, `w`, `r^4`,
    /// or the empty string for the constant monomial.
    pub fn var_string(&self) -> String {
        let mut s = String::new();
        match self.deg_r {
            0 => {}
            1 => s.push('r'),
            d => s.push_str(&format!("r^{d}")),
        }
        match self.deg_w {
            0 => {}
            1 => s.push('w'),
            d => s.push_str(&format!("w^{d}")),
        }
        s
    }
}

impl Ord for Monomial2 {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then(self.deg_w.cmp(&other.deg_w))
    }
}

impl PartialOrd for Monomial2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("polynomial coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("polynomial coefficient overflow")
}

/// Integer polynomial in `w` and `r`, stored as monomial → non-zero
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<Monomial2, i64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Poly2::monomial(0, 0, c)
    }

    /// Single-term polynomial `c·w^deg_w·r^deg_r`; the zero polynomial when
    /// `c == 0`.
    pub fn monomial(deg_w: u32, deg_r: u32, c: i64) -> Self {
        let mut p = Poly2::default();
        if c != 0 {
            p.terms.insert(Monomial2::new(deg_w, deg_r), c);
        }
        p
    }

    pub fn from_monomial(m: Monomial2, c: i64) -> Self {
        Poly2::monomial(m.deg_w, m.deg_r, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial2) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial2, &i64)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial2, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), checked_mul(*c1, *c2));
            }
        }
        out
    }

    pub fn negate(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.checked_neg().expect("coefficient overflow")))
                .collect(),
        }
    }

    /// Every term `(i, j, c)` maps to `(j, i, c)`.
    pub fn swap_vars(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap_vars(), *c))
                .collect(),
        }
    }

    /// Value at w = r = 1 (the total number of cycles when the polynomial
    /// is a cycle sum).
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0, |acc, c| checked_add(acc, *c))
    }

    pub fn max_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Machine-readable term list `[[deg_w, deg_r, coeff], ...]` in
    /// canonical order.
    pub fn term_list(&self) -> Vec<(u32, u32, i64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.deg_w, m.deg_r, *c))
            .collect()
    }

    pub fn term_list_json(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("[{},{},{}]", m.deg_w, m.deg_r, c))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

/// Deterministic total order: compare canonical term lists
/// lexicographically by (monomial, coefficient); a strict prefix orders
/// first. Under the monomial order this puts the polynomial with the
/// higher leading total degree first, e.g. `w^6` before `2w^3 + 3w^2`.
impl Ord for Poly2 {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let ord = ma.cmp(mb).then(ca.cmp(cb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Poly2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        Poly2::add(self, rhs)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        Poly2::mul(self, rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.negate()
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars = m.var_string();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}{vars}")?;
            }
        }
        Ok(())
    }
}
