//! Named groups: `cyclic:N`, `dihedral:N` (order 2N), `dicyclic:N`
//! (order 4N), `sym:N`, `alt:N`, `elem:p^k` and `direct:(A,B)`.

use std::fmt;

use crate::error::{Error, Result};

use super::perm::{closure, Permutation};
use super::{is_prime, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Sym(usize),
    Alt(usize),
    Elem { p: usize, k: usize },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Elem { p, k } => write!(f, "elem:{p}^{k}"),
            GroupSpec::Direct(a, b) => write!(f, "direct:({a},{b})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::BadSpec(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.text[self.pos..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a number"));
        }
        let value = self.text[self.pos..self.pos + digits].parse().map_err(|_| self.err("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn positive(&mut self) -> Result<usize> {
        match self.number()? {
            0 => Err(self.err("size must be positive")),
            n => Ok(n),
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let name_len = self.text[self.pos..].chars().take_while(char::is_ascii_alphabetic).count();
        let name = &self.text[self.pos..self.pos + name_len];
        self.pos += name_len;
        self.expect(":")?;
        Ok(match name {
            "cyclic" => GroupSpec::Cyclic(self.positive()?),
            "dihedral" => GroupSpec::Dihedral(self.positive()?),
            "dicyclic" => GroupSpec::Dicyclic(self.positive()?),
            "sym" => GroupSpec::Sym(self.positive()?),
            "alt" => GroupSpec::Alt(self.positive()?),
            "elem" => {
                let p = self.number()?;
                if !is_prime(p) {
                    return Err(self.err(&format!("{p} is not prime")));
                }
                self.expect("^")?;
                let k = self.positive()?;
                GroupSpec::Elem { p, k }
            }
            "direct" => {
                self.expect("(")?;
                let a = self.spec()?;
                self.expect(",")?;
                let b = self.spec()?;
                self.expect(")")?;
                GroupSpec::Direct(Box::new(a), Box::new(b))
            }
            _ => return Err(self.err(&format!("unknown family {name:?}"))),
        })
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser { text, pos: 0 };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.err("trailing input"));
        }
        Ok(spec)
    }

    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Dicyclic(n) => n.checked_mul(4),
            GroupSpec::Sym(n) => factorial(*n),
            GroupSpec::Alt(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            GroupSpec::Elem { p, k } => p.checked_pow(u32::try_from(*k).ok()?),
            GroupSpec::Direct(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let order = self.order().unwrap_or(usize::MAX);
        if order > cap {
            return Err(Error::OrderTooLarge { order, cap });
        }
        Ok(match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Dicyclic(n) => dicyclic(*n),
            GroupSpec::Sym(n) => symmetric(*n, false, cap)?,
            GroupSpec::Alt(n) => symmetric(*n, true, cap)?,
            GroupSpec::Elem { p, k } => elementary(*p, *k),
            GroupSpec::Direct(a, b) => direct(&a.build(cap)?, &b.build(cap)?),
        })
    }
}

fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize, labels: Vec<String>) -> FiniteGroup {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b) as u32);
        }
    }
    FiniteGroup::from_trusted_table(n, table, labels)
}

fn cyclic(n: usize) -> FiniteGroup {
    from_fn(n, |a, b| (a + b) % n, (0..n).map(|i| i.to_string()).collect())
}

/// `r^i s^j` at index `i + n·j`, with `s r s = r⁻¹`.
fn dihedral(n: usize) -> FiniteGroup {
    let labels = (0..2 * n)
        .map(|e| match (e % n, e / n) {
            (0, 0) => "e".to_string(),
            (i, 0) => format!("r^{i}"),
            (0, _) => "s".to_string(),
            (i, _) => format!("r^{i}s"),
        })
        .collect();
    from_fn(
        2 * n,
        |a, b| {
            let (i1, j1, i2, j2) = (a % n, a / n, b % n, b / n);
            let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 };
            i % n + n * ((j1 + j2) % 2)
        },
        labels,
    )
}

/// `a^k x^j` at index `k + 2n·j`, with `a^{2n} = 1`, `x² = a^n`, `x a x⁻¹ = a⁻¹`.
fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let labels = (0..2 * m)
        .map(|e| match (e % m, e / m) {
            (0, 0) => "e".to_string(),
            (k, 0) => format!("a^{k}"),
            (0, _) => "x".to_string(),
            (k, _) => format!("a^{k}x"),
        })
        .collect();
    from_fn(
        2 * m,
        |a, b| {
            let (k1, j1, k2, j2) = (a % m, a / m, b % m, b / m);
            match (j1, j2) {
                (0, _) => (k1 + k2) % m + m * j2,
                (_, 0) => (k1 + m - k2) % m + m,
                _ => (k1 + m - k2 + n) % m,
            }
        },
        labels,
    )
}

fn elementary(p: usize, k: usize) -> FiniteGroup {
    let n = p.pow(k as u32);
    let digits = |mut x: usize| {
        let mut d = Vec::with_capacity(k);
        for _ in 0..k {
            d.push(x % p);
            x /= p;
        }
        d
    };
    let labels = (0..n)
        .map(|e| {
            let d: Vec<String> = digits(e).iter().map(|v| v.to_string()).collect();
            format!("({})", d.join(","))
        })
        .collect();
    from_fn(
        n,
        |a, b| {
            let (da, db) = (digits(a), digits(b));
            (0..k).rev().fold(0, |acc, i| acc * p + (da[i] + db[i]) % p)
        },
        labels,
    )
}

fn symmetric(n: usize, even_only: bool, cap: usize) -> Result<FiniteGroup> {
    let cycle = |points: &[usize]| {
        let text: Vec<String> = points.iter().map(|p| p.to_string()).collect();
        Permutation::parse_cycles(&format!("({})", text.join(" ")), n).expect("valid cycle")
    };
    let gens: Vec<Permutation> = if even_only {
        (3..=n).map(|k| cycle(&[1, 2, k])).collect()
    } else if n >= 2 {
        vec![cycle(&[1, 2]), cycle(&(1..=n).collect::<Vec<_>>())]
    } else {
        Vec::new()
    };
    closure(n, &gens, cap)
}

fn direct(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    let labels = (0..a.order() * nb).map(|e| format!("({},{})", a.label(e / nb), b.label(e % nb))).collect();
    from_fn(a.order() * nb, |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb), labels)
}

/// Catalogue groups of order at most `max_order`: every cyclic, dihedral and
/// dicyclic group, elementary abelian groups of rank at least 2, symmetric
/// groups from degree 3, alternating groups from degree 4, and direct
/// products of two nontrivial groups from that list.
pub fn catalogue_up_to(max_order: usize) -> Vec<GroupSpec> {
    let mut base = Vec::new();
    for n in 1..=max_order {
        base.push(GroupSpec::Cyclic(n));
    }
    for n in (1..).take_while(|n| 2 * n <= max_order) {
        base.push(GroupSpec::Dihedral(n));
    }
    for n in (1..).take_while(|n| 4 * n <= max_order) {
        base.push(GroupSpec::Dicyclic(n));
    }
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        for k in (2..).take_while(|&k| p.pow(k) <= max_order) {
            base.push(GroupSpec::Elem { p, k: k as usize });
        }
    }
    for n in (3..).take_while(|&n| factorial(n).is_some_and(|f| f <= max_order)) {
        base.push(GroupSpec::Sym(n));
    }
    for n in (4..).take_while(|&n| factorial(n).is_some_and(|f| f / 2 <= max_order)) {
        base.push(GroupSpec::Alt(n));
    }
    let factors: Vec<&GroupSpec> = base.iter().filter(|s| s.order().unwrap_or(0) >= 2).collect();
    let mut products = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            let order = a.order().unwrap_or(usize::MAX).saturating_mul(b.order().unwrap_or(usize::MAX));
            if order <= max_order {
                products.push(GroupSpec::Direct(Box::new((*a).clone()), Box::new((*b).clone())));
            }
        }
    }
    base.extend(products);
    base
}
