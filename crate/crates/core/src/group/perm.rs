//! Permutations on `0..degree` and closure of generator sets.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

use super::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u16).collect())
    }

    /// Parses disjoint-cycle notation with points `1..=degree`, e.g.
    /// `(1 2)(3 4)` or `(1,2,3)`. `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Self, String> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| format!("expected a cycle `( ... )` at {rest:?}"))?;
            let body = &rest[1..1 + body_end];
            rest = rest[body_end + 2..].trim_start();
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let p: usize = s.parse().map_err(|_| format!("bad point {s:?}"))?;
                    if p == 0 || p > degree {
                        return Err(format!("point {p} outside 1..={degree}"));
                    }
                    Ok(p - 1)
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            for &p in &points {
                if moved[p] {
                    return Err(format!("point {} appears twice", p + 1));
                }
                moved[p] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()] as u16;
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycles with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The group generated by `generators`, elements sorted by image vector
/// (the identity first). Fails once the closure exceeds `cap` elements.
pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let next = elements[i].then(g);
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(Error::OrderTooLarge { order: cap + 1, cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        i += 1;
    }
    elements.sort();
    Ok(from_permutations(elements))
}

/// Multiplication table of a set of permutations closed under composition.
pub(crate) fn from_permutations(elements: Vec<Permutation>) -> FiniteGroup {
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&a.then(b)] as u32);
        }
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    FiniteGroup::from_trusted_table(n, table, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        let q = Permutation::parse_cycles("(1,3,2)", 3).unwrap();
        assert_eq!(q.to_string(), "(1 3 2)");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert!(Permutation::parse_cycles("(1 5)", 4).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 4).is_err());
        assert!(Permutation::parse_cycles("1 2", 4).is_err());
    }

    #[test]
    fn composition_applies_left_first() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3
        assert_eq!(a.then(&b).image(0), 2);
        assert!(!a.is_even());
        assert!(a.then(&b).is_even());
    }

    #[test]
    fn closure_of_s3_generators() {
        let gens = [Permutation::parse_cycles("(1 2)", 3).unwrap(), Permutation::parse_cycles("(1 2 3)", 3).unwrap()];
        let g = closure(3, &gens, 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(matches!(closure(3, &gens, 5), Err(Error::OrderTooLarge { .. })));
    }
}
