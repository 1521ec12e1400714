//! Constructors for the built-in group families and the little spec
//! grammar that names them.
//!
//! Grammar: `spec := atom ('x' atom)*` where
//! `atom := 'Z'<n> | 'D'<n> | 'Q8' | 'Dic(Z'<2m>')'`, each atom optionally
//! followed by `^<k>` (k-fold repetition, e.g. `Z2^3`).  `D<n>` is the
//! dihedral group *of order* n (n even, >= 4); `Dic(Z<2m>)` is the dicyclic
//! group of order 4m built on the cyclic group of order 2m.
//!
//! Element 0 is always the identity.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};

/// One atom of the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Cyclic(usize),
    /// Dihedral group of this *order* (even, >= 4).
    Dihedral(usize),
    Quaternion8,
    /// Dicyclic group over the cyclic group of this (even) order.
    Dicyclic(usize),
}

impl Atom {
    pub fn order(&self) -> usize {
        match *self {
            Atom::Cyclic(n) => n,
            Atom::Dihedral(n) => n,
            Atom::Quaternion8 => 8,
            Atom::Dicyclic(k) => 2 * k,
        }
    }

    fn display(&self) -> String {
        match *self {
            Atom::Cyclic(n) => format!("Z{n}"),
            Atom::Dihedral(n) => format!("D{n}"),
            Atom::Quaternion8 => "Q8".to_string(),
            Atom::Dicyclic(k) => format!("Dic(Z{k})"),
        }
    }

    fn build(&self) -> FiniteGroup {
        match *self {
            Atom::Cyclic(n) => cyclic(n),
            Atom::Dihedral(n) => dihedral(n),
            Atom::Quaternion8 => quaternion8(),
            Atom::Dicyclic(k) => dicyclic(k),
        }
    }
}

/// A parsed group spec: a direct product of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    atoms: Vec<Atom>,
}

impl GroupSpec {
    /// Parse a spec string such as `"Q8xZ2^2"` or `"Dic(Z6)"`.
    pub fn parse(input: &str) -> Result<GroupSpec> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::ParseSpec("empty spec".into()));
        }
        let mut atoms = Vec::new();
        for piece in split_factors(s)? {
            let (atom_str, reps) = match piece.split_once('^') {
                Some((a, k)) => {
                    let reps: usize = k.parse().map_err(|_| {
                        Error::ParseSpec(format!("bad exponent in {piece:?}"))
                    })?;
                    if reps == 0 {
                        return Err(Error::ParseSpec(format!(
                            "exponent must be >= 1 in {piece:?}"
                        )));
                    }
                    (a, reps)
                }
                None => (piece, 1),
            };
            let atom = parse_atom(atom_str)?;
            for _ in 0..reps {
                atoms.push(atom);
            }
        }
        Ok(GroupSpec { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn order(&self) -> usize {
        self.atoms.iter().map(|a| a.order()).product()
    }

    /// Canonical display form: atoms joined by `x`, exponents expanded.
    pub fn canonical_name(&self) -> String {
        self.atoms
            .iter()
            .map(|a| a.display())
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup> {
        let mut order = 1usize;
        for a in &self.atoms {
            order = order.saturating_mul(a.order());
            if order > cap {
                return Err(Error::OrderCap { order, cap });
            }
        }
        let factors: Vec<FiniteGroup> = self.atoms.iter().map(|a| a.build()).collect();
        FiniteGroup::direct_product(&factors)
    }
}

/// Split a spec on top-level `x` separators (an `x` inside `Dic(...)`
/// parentheses would belong to the atom, not the product).
fn split_factors(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::ParseSpec(format!("unbalanced ')' in {s:?}")))?;
            }
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::ParseSpec(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::ParseSpec(format!("empty factor in {s:?}")));
    }
    Ok(parts)
}

fn parse_atom(s: &str) -> Result<Atom> {
    if s == "Q8" {
        return Ok(Atom::Quaternion8);
    }
    if let Some(rest) = s.strip_prefix("Dic(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::ParseSpec(format!("missing ')' in {s:?}")))?;
        let n = inner
            .strip_prefix('Z')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::ParseSpec(format!("Dic argument must be Z<n>: {s:?}")))?;
        if n < 2 || n % 2 != 0 {
            return Err(Error::ParseSpec(format!(
                "Dic(Z{n}): argument must be even (the cyclic half needs an order-2 element)"
            )));
        }
        return Ok(Atom::Dicyclic(n));
    }
    if let Some(d) = s.strip_prefix('Z') {
        let n: usize = d
            .parse()
            .map_err(|_| Error::ParseSpec(format!("bad cyclic order in {s:?}")))?;
        if n == 0 {
            return Err(Error::ParseSpec("Z0 is not a group".into()));
        }
        return Ok(Atom::Cyclic(n));
    }
    if let Some(d) = s.strip_prefix('D') {
        let n: usize = d
            .parse()
            .map_err(|_| Error::ParseSpec(format!("bad dihedral order in {s:?}")))?;
        if n < 4 || n % 2 != 0 {
            return Err(Error::ParseSpec(format!(
                "D{n}: dihedral order must be even and >= 4"
            )));
        }
        return Ok(Atom::Dihedral(n));
    }
    Err(Error::ParseSpec(format!("unknown atom {s:?}")))
}

/// Build a group from a spec string with the default order cap.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    GroupSpec::parse(spec)?.build()
}

/// Build a group from a spec string with an explicit order cap.
pub fn build_group_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    GroupSpec::parse(spec)?.build_with_cap(cap)
}

fn cyclic(n: usize) -> FiniteGroup {
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = (a + b) % n;
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_parts(format!("Z{n}"), n, mul, names).expect("cyclic table is a group")
}

/// Dihedral group of order n = 2m: elements s^e r^a with e in {0,1},
/// a in {0..m-1}, indexed e*m + a.  Relation: r^a s = s r^{-a}.
fn dihedral(n: usize) -> FiniteGroup {
    let m = n / 2;
    let idx = |e: usize, a: usize| e * m + a;
    let mut mul = vec![0usize; n * n];
    for e1 in 0..2 {
        for a1 in 0..m {
            for e2 in 0..2 {
                for a2 in 0..m {
                    // (s^e1 r^a1)(s^e2 r^a2) = s^(e1+e2) r^((-1)^e2 a1 + a2)
                    let a = if e2 == 0 { a1 + a2 } else { (m - a1) + a2 };
                    mul[idx(e1, a1) * n + idx(e2, a2)] = idx((e1 + e2) % 2, a % m);
                }
            }
        }
    }
    let mut names = Vec::with_capacity(n);
    for e in 0..2 {
        for a in 0..m {
            names.push(match (e, a) {
                (0, 0) => "e".to_string(),
                (0, 1) => "r".to_string(),
                (0, a) => format!("r{a}"),
                (1, 0) => "s".to_string(),
                (1, 1) => "sr".to_string(),
                (_, a) => format!("sr{a}"),
            });
        }
    }
    FiniteGroup::from_parts(format!("D{n}"), n, mul, names).expect("dihedral table is a group")
}

/// The quaternion group: elements i^m j^n with m in {0..3}, n in {0,1},
/// indexed 2m + n.  Relations: j^2 = i^2, j i = i^{-1} j.
fn quaternion8() -> FiniteGroup {
    let idx = |m: usize, n: usize| 2 * m + n;
    let mut mul = vec![0usize; 64];
    for m1 in 0..4 {
        for n1 in 0..2 {
            for m2 in 0..4 {
                for n2 in 0..2 {
                    // i^m1 j^n1 i^m2 j^n2 = i^(m1 + (-1)^n1 m2 + 2*carry) j^((n1+n2) mod 2)
                    let m_part = if n1 == 0 { m1 + m2 } else { m1 + (4 - m2) };
                    let carry = (n1 + n2) / 2;
                    let m = (m_part + 2 * carry) % 4;
                    let n = (n1 + n2) % 2;
                    mul[idx(m1, n1) * 8 + idx(m2, n2)] = idx(m, n);
                }
            }
        }
    }
    let names = ["1", "j", "i", "k", "-1", "-j", "-i", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_parts("Q8".to_string(), 8, mul, names).expect("Q8 table is a group")
}

/// Dicyclic group of order 4m over the cyclic group of order 2m: elements
/// q^e a^t with e in {0,1}, t in {0..2m-1}, indexed e*2m + t.
/// Relations: q^2 = a^m, q a q^{-1} = a^{-1}.
fn dicyclic(two_m: usize) -> FiniteGroup {
    let m = two_m / 2;
    let n = 2 * two_m;
    let idx = |e: usize, t: usize| e * two_m + t;
    let mut mul = vec![0usize; n * n];
    for e1 in 0..2 {
        for t1 in 0..two_m {
            for e2 in 0..2 {
                for t2 in 0..two_m {
                    // (q^e1 a^t1)(q^e2 a^t2) = q^(e1+e2) a^((-1)^e2 t1 + t2 + carry*m)
                    let t_part = if e2 == 0 { t1 + t2 } else { (two_m - t1) + t2 };
                    let carry = (e1 + e2) / 2;
                    let t = (t_part + carry * m) % two_m;
                    mul[idx(e1, t1) * n + idx(e2, t2)] = idx((e1 + e2) % 2, t);
                }
            }
        }
    }
    let mut names = Vec::with_capacity(n);
    for e in 0..2 {
        for t in 0..two_m {
            names.push(match (e, t) {
                (0, 0) => "e".to_string(),
                (0, 1) => "a".to_string(),
                (0, t) => format!("a{t}"),
                (1, 0) => "q".to_string(),
                (1, 1) => "qa".to_string(),
                (_, t) => format!("qa{t}"),
            });
        }
    }
    FiniteGroup::from_parts(format!("Dic(Z{two_m})"), n, mul, names)
        .expect("dicyclic table is a group")
}
