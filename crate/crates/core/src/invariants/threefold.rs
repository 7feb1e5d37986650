//! Genus-zero degree-zero descendants on a threefold reduced to primaries
//! by the string and dilaton equations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{format_rational, int, Rational};
use crate::geometry::ClassLabel;

/// `τ_exponent(class)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub exponent: u32,
    pub class: ClassLabel,
}

impl Insertion {
    pub fn new(exponent: u32, class: ClassLabel) -> Self {
        Insertion { exponent, class }
    }

    fn is_identity(&self) -> bool {
        self.class == ClassLabel::Untwisted(0)
    }

    pub fn render(&self, dim: u32) -> String {
        format!("tau{}({})", self.exponent, self.class.render(dim))
    }
}

/// A formal sum of primary insertion lists, plus the lists where neither
/// equation applies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduction {
    pub terms: BTreeMap<Vec<Insertion>, Rational>,
    pub irreducible: BTreeMap<Vec<Insertion>, Rational>,
}

impl Reduction {
    pub fn render(&self, dim: u32) -> String {
        let show = |list: &Vec<Insertion>| {
            let inner: Vec<String> = list.iter().map(|i| i.render(dim)).collect();
            format!("<{}>", inner.join(" "))
        };
        let mut lines: Vec<String> = self
            .terms
            .iter()
            .map(|(l, w)| format!("{} * {}", format_rational(w), show(l)))
            .collect();
        lines.extend(
            self.irreducible
                .iter()
                .map(|(l, w)| format!("{} * {} (irreducible)", format_rational(w), show(l))),
        );
        if lines.is_empty() {
            "0".into()
        } else {
            lines.join("\n")
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(3))
    }
}

fn add(map: &mut BTreeMap<Vec<Insertion>, Rational>, key: Vec<Insertion>, w: Rational) {
    let slot = map.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += w;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Removes `τ_1(1)` with weight `(n - 2)`, `n` the number of remaining
/// insertions, and `τ_0(1)` by lowering one other exponent at a time.
pub fn reduce_threefold(insertions: &[Insertion]) -> Reduction {
    let mut out = Reduction::default();
    let mut stack = vec![(insertions.to_vec(), Rational::one())];
    while let Some((list, w)) = stack.pop() {
        if list.iter().all(|i| i.exponent == 0) {
            add(&mut out.terms, list, w);
            continue;
        }
        if let Some(pos) = list.iter().position(|i| i.is_identity() && i.exponent == 1) {
            let mut rest = list.clone();
            rest.remove(pos);
            let factor = int(rest.len() as i64 - 2);
            if !factor.is_zero() {
                stack.push((rest, w * factor));
            }
            continue;
        }
        if let Some(pos) = list.iter().position(|i| i.is_identity() && i.exponent == 0) {
            let mut rest = list.clone();
            rest.remove(pos);
            for j in 0..rest.len() {
                if rest[j].exponent > 0 {
                    let mut lowered = rest.clone();
                    lowered[j].exponent -= 1;
                    stack.push((lowered, w.clone()));
                }
            }
            continue;
        }
        add(&mut out.irreducible, list, w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ins(e: u32, c: ClassLabel) -> Insertion {
        Insertion::new(e, c)
    }

    const ONE: ClassLabel = ClassLabel::Untwisted(0);
    const G1: ClassLabel = ClassLabel::Twisted(1);
    const G2: ClassLabel = ClassLabel::Twisted(2);

    #[test]
    fn primaries_are_unchanged() {
        let list = vec![ins(0, G1), ins(0, G1), ins(0, G1)];
        let r = reduce_threefold(&list);
        assert_eq!(r.terms.get(&list), Some(&int(1)));
        assert_eq!(r.terms.len(), 1);
    }

    #[test]
    fn dilaton_on_four_points() {
        let prim = vec![ins(0, G1), ins(0, G1), ins(0, G1)];
        let mut list = vec![ins(1, ONE)];
        list.extend(prim.clone());
        let r = reduce_threefold(&list);
        assert_eq!(r.terms.get(&prim), Some(&int(1)));
    }

    #[test]
    fn string_lowers_the_descendant() {
        let r = reduce_threefold(&[ins(0, ONE), ins(1, G1), ins(0, G2)]);
        assert_eq!(r.terms.get(&vec![ins(0, G1), ins(0, G2)]), Some(&int(1)));
    }

    #[test]
    fn no_identity_is_irreducible() {
        let list = vec![ins(2, G1), ins(0, G2), ins(0, G2)];
        let r = reduce_threefold(&list);
        assert!(r.terms.is_empty());
        assert_eq!(r.irreducible.get(&list), Some(&int(1)));
    }
}
