//! Presentations of π1, first homology through Smith normal form, and
//! Euler characteristic of quotient complexes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::engine::QuotientComplex;

/// A letter is a generator index with exponent ±1.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^-1", self.generators[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn reduced(&self) -> GroupPresentation {
        GroupPresentation { generators: self.generators.clone(), relators: self.relators.iter().map(free_reduce).collect() }
    }

    /// Relator exponent sums, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|w| {
                let mut row = vec![BigInt::zero(); self.generators.len()];
                for &(g, e) in w {
                    row[g] += e;
                }
                row
            })
            .collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.word_string(w)).collect();
        write!(f, "< {} : {} >", self.generators.join(", "), rels.join(", "))
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn pi1(m: &QuotientComplex) -> GroupPresentation {
    GroupPresentation { generators: (1..=m.edge_orbits.len()).map(|i| format!("x{i}")).collect(), relators: m.words.clone() }
}

pub fn euler(m: &QuotientComplex) -> i64 {
    let (v, e, f, c) = m.cell_vector();
    v as i64 - e as i64 + f as i64 - c as i64
}

/// Free rank and torsion coefficients d1 | d2 | ..., all > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let n = self.torsion.len() + other.torsion.len();
        let mut diag: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for (i, d) in self.torsion.iter().chain(other.torsion.iter()).enumerate() {
            diag[i][i] = d.clone();
        }
        let t = invariant_factors(&diag);
        AbelianInvariants { rank: self.rank + other.rank, torsion: t.into_iter().filter(|d| !d.is_one()).collect() }
    }

    pub fn from_matrix(rows: &[Vec<BigInt>], generators: usize) -> Self {
        let d = invariant_factors(rows);
        let nonzero = d.iter().filter(|x| !x.is_zero()).count();
        AbelianInvariants { rank: generators - nonzero, torsion: d.into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect() }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

pub fn h1(pres: &GroupPresentation) -> AbelianInvariants {
    AbelianInvariants::from_matrix(&pres.exponent_matrix(), pres.generators.len())
}

/// Smith normal form diagonal (non-negative, divisibility chain, zeros
/// last), of length min(rows, cols).
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for c in t..cols {
                            let v = a[i][c].clone();
                            a[t][c] += v;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    (0..k).map(|i| a[i][i].abs()).collect()
}
