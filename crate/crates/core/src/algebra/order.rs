use std::cmp::Ordering;

use super::ring::{Monomial, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial order: lex or degrevlex with an explicit variable priority
/// (`priority[0]` is the most significant variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = priority.clone();
        seen.sort_unstable();
        assert!(
            seen.iter().enumerate().all(|(i, &v)| i == v),
            "priority must be a permutation"
        );
        TermOrder { kind, priority }
    }

    /// Lex with the ring's own variable order.
    pub fn lex(ring: &Ring) -> Self {
        Self::new(OrderKind::Lex, (0..ring.nvars()).collect())
    }

    pub fn degrevlex(ring: &Ring) -> Self {
        Self::new(OrderKind::DegRevLex, (0..ring.nvars()).collect())
    }

    /// Builds an order from names listed most-significant first; ring variables
    /// not named are appended in ring order.
    pub fn with_priority(kind: OrderKind, ring: &Ring, names: &[&str]) -> Result<Self> {
        let mut priority = Vec::with_capacity(ring.nvars());
        for n in names {
            let i = ring
                .index_of(n)
                .ok_or_else(|| Error::UnknownVariable(n.to_string()))?;
            if priority.contains(&i) {
                return Err(Error::InvalidOrder(format!("variable `{n}` listed twice")));
            }
            priority.push(i);
        }
        for i in 0..ring.nvars() {
            if !priority.contains(&i) {
                priority.push(i);
            }
        }
        Ok(Self::new(kind, priority))
    }

    /// Parses `"lex y>x>k"` or `"degrevlex x>y"`.
    pub fn parse(spec: &str, ring: &Ring) -> Result<Self> {
        let spec = spec.trim();
        let (kind, rest) = match spec.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (spec, ""),
        };
        let kind = match kind {
            "lex" => OrderKind::Lex,
            "degrevlex" | "grevlex" | "drl" => OrderKind::DegRevLex,
            other => return Err(Error::InvalidOrder(format!("unknown order kind `{other}`"))),
        };
        let names: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split('>').map(str::trim).collect()
        };
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::InvalidOrder(format!("malformed priority `{rest}`")));
        }
        Self::with_priority(kind, ring, &names)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Same kind and relative priority, transported to `target` by variable
    /// name; variables of `target` missing from `ring` go last.
    pub fn transport(&self, ring: &Ring, target: &Ring) -> Self {
        let names: Vec<&str> = self
            .priority
            .iter()
            .map(|&i| ring.name(i))
            .filter(|n| target.contains(n))
            .collect();
        Self::with_priority(self.kind, target, &names).expect("names come from target")
    }

    pub fn describe(&self, ring: &Ring) -> String {
        let kind = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        };
        let names: Vec<&str> = self.priority.iter().map(|&i| ring.name(i)).collect();
        format!("{kind} {}", names.join(">"))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in self.priority.iter().rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Comparison that only looks at the listed variables.
    pub fn cmp_restricted(&self, a: &Monomial, b: &Monomial, vars: &[usize]) -> Ordering {
        self.cmp(&a.restrict(vars), &b.restrict(vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lex_respects_priority() {
        let r = Ring::new(["x", "y"]);
        let o = TermOrder::parse("lex y>x", &r).unwrap();
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.describe(&r), "lex y>x");
    }

    #[test]
    fn degrevlex_ties() {
        let r = Ring::new(["x", "y", "z"]);
        let o = TermOrder::degrevlex(&r);
        // x*z < y^2 in degrevlex x>y>z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn parse_errors() {
        let r = Ring::new(["x", "y"]);
        assert!(TermOrder::parse("lex y>q", &r).is_err());
        assert!(TermOrder::parse("elim y>x", &r).is_err());
        assert!(TermOrder::parse("lex y>>x", &r).is_err());
        let o = TermOrder::parse("lex", &r).unwrap();
        assert_eq!(o.priority(), &[0, 1]);
    }
}
