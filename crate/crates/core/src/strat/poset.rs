use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest poset accepted; lower sets are stored as bitmasks.
pub const MAX_POSET: usize = 20;

/// A finite non-empty poset, stored as its full order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// A set of poset elements as a bitmask.
pub type Mask = u32;

impl Poset {
    /// `relations` are pairs `(a, b)` meaning `a <= b`; the reflexive-transitive
    /// closure is taken and must be antisymmetric.
    pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidPoset("poset is empty".into()));
        }
        if n > MAX_POSET {
            return Err(Error::InvalidPoset(format!("{n} elements, at most {MAX_POSET} supported")));
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidPoset("repeated element".into()));
        }
        let index = |s: &str| {
            elements.iter().position(|e| e == s).ok_or_else(|| Error::InvalidPoset(format!("unknown element '{s}'")))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            let (i, j) = (index(a.as_ref())?, index(b.as_ref())?);
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "'{}' and '{}' are each below the other",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(Poset { elements, leq })
    }

    /// `labels[0] < labels[1] < ...`.
    pub fn chain(labels: &[&str]) -> Self {
        let rel: Vec<(&str, &str)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::new(labels, &rel).expect("a chain is a poset")
    }

    /// No two distinct elements comparable.
    pub fn discrete(labels: &[&str]) -> Self {
        Poset::new(labels, &[]).expect("an antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// The relation as `(a, b)` pairs with `a < b`.
    pub fn strict_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j) {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out
    }

    pub fn full(&self) -> Mask {
        (1 << self.len()) - 1
    }

    pub fn members(&self, mask: Mask) -> Vec<usize> {
        (0..self.len()).filter(|&i| mask & (1 << i) != 0).collect()
    }

    pub fn is_lower(&self, mask: Mask) -> bool {
        self.members(mask).into_iter().all(|j| (0..self.len()).all(|i| !self.leq[i][j] || mask & (1 << i) != 0))
    }

    /// `{mu : mu <= i}`.
    pub fn down_set(&self, i: usize) -> Mask {
        (0..self.len()).filter(|&k| self.leq[k][i]).fold(0, |m, k| m | (1 << k))
    }

    /// `{mu : mu < i}`.
    pub fn strict_down_set(&self, i: usize) -> Mask {
        self.down_set(i) & !(1 << i)
    }

    pub fn maximal_in(&self, mask: Mask) -> Vec<usize> {
        let members = self.members(mask);
        members.iter().copied().filter(|&i| members.iter().all(|&j| !self.lt(i, j))).collect()
    }

    /// All lower sets, in increasing numeric order of their masks.
    pub fn lower_sets(&self) -> Vec<Mask> {
        let mut out = BTreeSet::new();
        let mut stack = vec![0 as Mask];
        while let Some(m) = stack.pop() {
            if !out.insert(m) {
                continue;
            }
            for i in 0..self.len() {
                let next = m | (1 << i);
                if next != m && self.is_lower(next) {
                    stack.push(next);
                }
            }
        }
        out.into_iter().collect()
    }

    /// A linear extension, smallest first. Built from the top by removing,
    /// among the remaining maximal elements, the one with the greatest label.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut rest = self.full();
        let mut top_down = Vec::new();
        while rest != 0 {
            let pick = self
                .maximal_in(rest)
                .into_iter()
                .max_by(|&a, &b| self.elements[a].cmp(&self.elements[b]))
                .expect("a finite non-empty poset has a maximal element");
            top_down.push(pick);
            rest &= !(1 << pick);
        }
        top_down.reverse();
        top_down
    }

    /// The same elements with the order reversed.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        Poset { elements: self.elements.clone(), leq }
    }
}
