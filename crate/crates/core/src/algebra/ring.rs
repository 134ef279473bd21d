use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// An ordered table of variable names shared by every polynomial of a ring.
#[derive(Clone)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    /// Panics on duplicate names.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(a),
                "duplicate variable `{a}` in ring"
            );
        }
        Ring {
            names: names.into(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Ring with `extra` appended (names already present are skipped).
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Ring {
        let mut names: Vec<String> = self.names.to_vec();
        for e in extra {
            if !names.iter().any(|n| n == e.as_ref()) {
                names.push(e.as_ref().to_string());
            }
        }
        Ring::new(names)
    }

    pub fn union(&self, other: &Ring) -> Ring {
        self.extend(other.names())
    }

    /// A variable name not present in the ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.contains(n))
            .unwrap()
    }

    pub fn is_subring_of(&self, other: &Ring) -> bool {
        self.names.iter().all(|n| other.contains(n))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", &*self.names)
    }
}

/// Dense exponent vector, one slot per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Total degree counting only the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i]).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    /// Keep only the listed variables; all other exponents are zeroed.
    pub fn restrict(&self, vars: &[usize]) -> Monomial {
        let mut m = Monomial::one(self.0.len());
        for &i in vars {
            m.0[i] = self.0[i];
        }
        m
    }

    /// Zero out the listed variables.
    pub fn drop_vars(&self, vars: &[usize]) -> Monomial {
        let mut m = self.clone();
        for &i in vars {
            m.0[i] = 0;
        }
        m
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn display(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|i| match self.0[i] {
                1 => ring.name(i).to_string(),
                e => format!("{}^{}", ring.name(i), e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials in `vars` (embedded in an `nvars` ring) of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, vars: &[usize], d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, vars: &[usize], d: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if d == 0 {
                    out.push(cur.clone());
                }
            }
            [last] => {
                cur.0[*last] = d;
                out.push(cur.clone());
                cur.0[*last] = 0;
            }
            [first, rest @ ..] => {
                for e in (0..=d).rev() {
                    cur.0[*first] = e;
                    rec(nvars, rest, d - e, cur, out);
                }
                cur.0[*first] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(nvars, vars, d, &mut Monomial::one(nvars), &mut out);
    out
}

/// All monomials in `vars` of total degree at most `d`, ordered by degree.
pub fn monomials_up_to(nvars: usize, vars: &[usize], d: u32) -> Vec<Monomial> {
    (0..=d)
        .flat_map(|k| monomials_of_degree(nvars, vars, k))
        .collect()
}
