//! Constructors for the built-in group families and the `family:param`
//! spec-string grammar (`dihedral:3`, `quaternion:2`, `symmetric:4`,
//! `cyclic:6`, `klein`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    /// `dihedral(n)` has order `2n`.
    Dihedral,
    /// `generalized_quaternion(n)` has order `4n`.
    GeneralizedQuaternion,
    Symmetric,
    Klein,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::GeneralizedQuaternion => "quaternion",
            Family::Symmetric => "symmetric",
            Family::Klein => "klein",
        }
    }

    fn order(self, n: usize) -> Option<usize> {
        match self {
            Family::Cyclic => Some(n),
            Family::Dihedral => n.checked_mul(2),
            Family::GeneralizedQuaternion => n.checked_mul(4),
            Family::Symmetric => (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
            Family::Klein => Some(4),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "dihedral" => Ok(Family::Dihedral),
            "quaternion" | "generalized_quaternion" => Ok(Family::GeneralizedQuaternion),
            "symmetric" => Ok(Family::Symmetric),
            "klein" => Ok(Family::Klein),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// A parsed family spec string such as `dihedral:3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub parameter: usize,
}

impl FamilySpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        group_from_family(self.family, self.parameter)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let family: Family = name.parse()?;
        let parameter = match (family, param) {
            (Family::Klein, None) => 2,
            (_, Some(p)) => p
                .parse()
                .map_err(|_| Error::Parse(format!("bad family parameter `{p}`")))?,
            (_, None) => return Err(Error::Parse(format!("family `{name}` needs a parameter"))),
        };
        Ok(Self { family, parameter })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Klein => write!(f, "klein"),
            fam => write!(f, "{}:{}", fam.name(), self.parameter),
        }
    }
}

fn power_label(base: &str, i: usize) -> Option<String> {
    match i {
        0 => None,
        1 => Some(base.to_string()),
        _ => Some(format!("{base}^{i}")),
    }
}

fn word_label(parts: &[Option<String>]) -> String {
    let s: Vec<&str> = parts.iter().flatten().map(String::as_str).collect();
    if s.is_empty() {
        "e".into()
    } else {
        s.join("")
    }
}

/// Builds a member of a built-in family with the identity at index 0.
pub fn group_from_family(family: Family, parameter: usize) -> Result<FiniteGroup> {
    if parameter == 0 && family != Family::Klein {
        return Err(Error::Parse("family parameter must be positive".into()));
    }
    let order = family.order(parameter).unwrap_or(usize::MAX);
    if order > DEFAULT_MAX_ORDER {
        return Err(Error::OrderBound {
            order,
            limit: DEFAULT_MAX_ORDER,
        });
    }
    let n = parameter;
    match family {
        Family::Cyclic => {
            let mul = (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n).collect())
                .collect();
            let labels = (0..n).map(|i| word_label(&[power_label("a", i)])).collect();
            let gens = if n > 1 { vec![1] } else { vec![] };
            FiniteGroup::from_table(mul, 0, gens, Some(labels))
        }
        Family::Dihedral => {
            // r^i s^j at index i + n j, with s r s = r^-1
            let idx = |i: usize, j: usize| i % n + n * (j % 2);
            let mut mul = vec![vec![0; 2 * n]; 2 * n];
            for (a, row) in mul.iter_mut().enumerate() {
                let (i, j) = (a % n, a / n);
                for (b, cell) in row.iter_mut().enumerate() {
                    let (k, l) = (b % n, b / n);
                    let rot = if j == 0 { i + k } else { i + n - k };
                    *cell = idx(rot, j + l);
                }
            }
            let labels = (0..2 * n)
                .map(|a| word_label(&[power_label("r", a % n), power_label("s", a / n)]))
                .collect();
            FiniteGroup::from_table(mul, 0, vec![1 % n, n], Some(labels))
        }
        Family::GeneralizedQuaternion => {
            // a^i b^j at index i + 2n j, with b a b^-1 = a^-1 and b^2 = a^n
            let m = 2 * n;
            let mut mul = vec![vec![0; 2 * m]; 2 * m];
            for (x, row) in mul.iter_mut().enumerate() {
                let (i, j) = (x % m, x / m);
                for (y, cell) in row.iter_mut().enumerate() {
                    let (k, l) = (y % m, y / m);
                    let rot = if j == 0 { i + k } else { i + m - k };
                    *cell = if j + l == 2 {
                        (rot + n) % m
                    } else {
                        rot % m + m * (j + l)
                    };
                }
            }
            let labels = (0..2 * m)
                .map(|x| word_label(&[power_label("a", x % m), power_label("b", x / m)]))
                .collect();
            FiniteGroup::from_table(mul, 0, vec![1 % m, m], Some(labels))
        }
        Family::Symmetric => {
            let perms = lexicographic_permutations(n);
            let index: std::collections::HashMap<Vec<usize>, usize> = perms
                .iter()
                .enumerate()
                .map(|(i, p)| (p.images().to_vec(), i))
                .collect();
            let mul = perms
                .iter()
                .map(|a| perms.iter().map(|b| index[a.compose(b).images()]).collect())
                .collect();
            let mut gens = Vec::new();
            if n >= 2 {
                let t = Permutation::from_cycles(n, &[&[0, 1]])?;
                let cyc: Vec<usize> = (0..n).collect();
                let c = Permutation::from_cycles(n, &[&cyc])?;
                gens.push(index[t.images()]);
                gens.push(index[c.images()]);
            }
            let labels = perms
                .iter()
                .map(|p| {
                    if p.is_identity() {
                        "e".to_string()
                    } else {
                        p.to_string()
                    }
                })
                .collect();
            FiniteGroup::from_table(mul, 0, gens, Some(labels))
        }
        Family::Klein => {
            let mul = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
            let labels = ["e", "a", "b", "ab"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            FiniteGroup::from_table(mul, 0, vec![1, 2], Some(labels))
        }
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::new(current.clone()).expect("valid permutation"));
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(group_from_family(Family::Dihedral, 3).unwrap().order(), 6);
        assert_eq!(
            group_from_family(Family::GeneralizedQuaternion, 2)
                .unwrap()
                .order(),
            8
        );
        assert_eq!(group_from_family(Family::Symmetric, 4).unwrap().order(), 24);
        assert_eq!(group_from_family(Family::Cyclic, 1).unwrap().order(), 1);
        assert_eq!(group_from_family(Family::Klein, 0).unwrap().order(), 4);
    }

    #[test]
    fn quaternion_relations() {
        for n in 1..=6 {
            let g = group_from_family(Family::GeneralizedQuaternion, n).unwrap();
            let (a, b) = (1 % (2 * n), 2 * n);
            assert_eq!(g.element_order(a), 2 * n);
            let an = (0..n).fold(g.identity(), |acc, _| g.mul(acc, a));
            assert_eq!(g.mul(b, b), an);
            assert_eq!(g.conjugate(b, a), g.inverse(a));
            // unique involution for n >= 1
            let involutions = (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
            assert_eq!(involutions, 1);
        }
    }

    #[test]
    fn dihedral_relations() {
        for n in 3..=8 {
            let g = group_from_family(Family::Dihedral, n).unwrap();
            assert_eq!(g.element_order(1), n);
            assert_eq!(g.element_order(n), 2);
            assert_eq!(g.conjugate(n, 1), g.inverse(1));
            assert_eq!(g.center().len(), if n % 2 == 0 { 2 } else { 1 });
        }
    }

    #[test]
    fn rejects_oversized_and_unknown() {
        assert!(matches!(
            group_from_family(Family::Symmetric, 6),
            Err(Error::OrderBound { order: 720, .. })
        ));
        assert!(matches!(
            "bogus:3".parse::<FamilySpec>(),
            Err(Error::UnknownFamily(_))
        ));
        assert!("dihedral".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "dihedral:3",
            "quaternion:2",
            "symmetric:4",
            "cyclic:6",
            "klein",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            spec.build().unwrap();
        }
    }
}
