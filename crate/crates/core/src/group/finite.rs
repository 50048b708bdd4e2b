use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Construction validates the group axioms, so every `FiniteTable` value is a
/// group. Element `i` times element `j` is `table[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    identity: usize,
}

/// The JSON document shape `{"order": n, "labels": [...], "table": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FiniteTableDoc {
    pub order: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteTable {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("order must be at least 1".into()));
        }
        if labels.len() != n {
            return Err(Error::MalformedTable(format!(
                "{} labels for a table of order {n}",
                labels.len()
            )));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::MalformedTable("labels are not distinct".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "entry ({i}, {j}) = {} is out of range",
                    row[j]
                )));
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::GroupAxiom {
                axiom: "identity",
                witness: "no element e with e*g = g*e = g for every g".into(),
            })?;

        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::GroupAxiom {
                    axiom: "inverse",
                    witness: format!("element {} has no two-sided inverse", labels[a]),
                })?;
            inverses.push(inv);
        }

        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::GroupAxiom {
                            axiom: "associativity",
                            witness: format!(
                                "({}, {}, {}): (ab)c = {} but a(bc) = {}",
                                labels[a],
                                labels[b],
                                labels[c],
                                labels[table[ab][c]],
                                labels[table[a][table[b][c]]]
                            ),
                        });
                    }
                }
            }
        }

        Ok(FiniteTable {
            labels,
            table,
            inverses,
            identity,
        })
    }

    pub fn from_doc(doc: FiniteTableDoc) -> Result<Self> {
        if doc.order != doc.table.len() {
            return Err(Error::MalformedTable(format!(
                "declared order {} but table has {} rows",
                doc.order,
                doc.table.len()
            )));
        }
        FiniteTable::new(doc.labels, doc.table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FiniteTableDoc = serde_json::from_str(text)
            .map_err(|e| Error::MalformedTable(format!("invalid JSON: {e}")))?;
        FiniteTable::from_doc(doc)
    }

    pub fn to_doc(&self) -> FiniteTableDoc {
        FiniteTableDoc {
            order: self.order(),
            labels: self.labels.clone(),
            table: self.table.clone(),
        }
    }

    /// Closes a set of permutations of `0..degree` under composition and
    /// tabulates the resulting group. Elements are sorted lexicographically,
    /// which puts the identity first. The product `p * q` applies `q` first.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        if degree == 0 {
            return Err(Error::MalformedTable("no generators".into()));
        }
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&v| v >= degree || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::MalformedTable(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |p: &[usize], q: &[usize]| q.iter().map(|&i| p[i]).collect::<Vec<_>>();
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let next = compose(&p, g);
                if elements.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut sorted: Vec<Vec<usize>> = elements.into_iter().collect();
        sorted.sort();
        let index: BTreeMap<&Vec<usize>, usize> =
            sorted.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = sorted
            .iter()
            .map(|p| sorted.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        let labels = sorted.iter().map(|p| cycle_notation(p)).collect();
        FiniteTable::new(labels, table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check(&self, index: usize) -> Result<()> {
        if index < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order(),
            })
        }
    }

    /// Unchecked product; callers validate indices.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Cycle notation with 1-based points, `e` for the identity.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
