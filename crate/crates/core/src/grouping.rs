//! Partition of Hamiltonian terms into jointly measurable groups.
//!
//! Greedy first-fit: non-identity terms are visited by descending |coefficient|
//! (canonical mask order breaks ties) and placed in the first group whose members all
//! commute with them under the chosen predicate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GroupingMode {
    #[default]
    #[serde(rename = "qubitwise")]
    QubitWise,
    General,
}

impl GroupingMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::QubitWise => "qubitwise",
            Self::General => "general",
        }
    }
}

impl fmt::Display for GroupingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "qubitwise" | "qwc" => Ok(Self::QubitWise),
            "general" | "full" => Ok(Self::General),
            _ => Err(Error::InvalidArgument(format!(
                "unknown grouping mode {s:?}; expected qubitwise or general"
            ))),
        }
    }
}

fn sorted_terms(h: &PauliSum) -> Vec<PauliString> {
    let mut terms: Vec<(PauliString, f64)> = h.non_identity_terms().collect();
    // stable: equal magnitudes keep canonical order
    terms.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
    terms.into_iter().map(|(p, _)| p).collect()
}

/// Letters fixed so far on the union support of a qubit-wise group.
struct QwcFrame {
    support: u64,
    x: u64,
    z: u64,
}

pub fn group_qubit_wise(h: &PauliSum) -> Vec<Vec<PauliString>> {
    let mut frames: Vec<QwcFrame> = Vec::new();
    let mut groups: Vec<Vec<PauliString>> = Vec::new();
    for p in sorted_terms(h) {
        let supp = p.x_mask() | p.z_mask();
        let slot = frames.iter().position(|f| {
            let overlap = f.support & supp;
            ((f.x ^ p.x_mask()) | (f.z ^ p.z_mask())) & overlap == 0
        });
        match slot {
            Some(i) => {
                let f = &mut frames[i];
                f.support |= supp;
                f.x |= p.x_mask();
                f.z |= p.z_mask();
                groups[i].push(p);
            }
            None => {
                frames.push(QwcFrame {
                    support: supp,
                    x: p.x_mask(),
                    z: p.z_mask(),
                });
                groups.push(vec![p]);
            }
        }
    }
    groups
}

/// General commuting groups. Never more groups than [`group_qubit_wise`]: if the
/// term-by-term pass does worse, whole qubit-wise groups are merged first-fit instead.
pub fn group_general(h: &PauliSum) -> Vec<Vec<PauliString>> {
    let mut groups: Vec<Vec<PauliString>> = Vec::new();
    for p in sorted_terms(h) {
        match groups
            .iter_mut()
            .find(|g| g.iter().all(|q| q.commutes_unchecked(&p)))
        {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    let qwc = group_qubit_wise(h);
    if groups.len() <= qwc.len() {
        return groups;
    }
    let mut merged: Vec<Vec<PauliString>> = Vec::new();
    for block in qwc {
        let slot = merged.iter_mut().find(|g| {
            g.iter()
                .all(|q| block.iter().all(|p| q.commutes_unchecked(p)))
        });
        match slot {
            Some(g) => g.extend(block),
            None => merged.push(block),
        }
    }
    merged
}

pub fn group(h: &PauliSum, mode: GroupingMode) -> Vec<Vec<PauliString>> {
    match mode {
        GroupingMode::QubitWise => group_qubit_wise(h),
        GroupingMode::General => group_general(h),
    }
}

pub fn group_count(h: &PauliSum, mode: GroupingMode) -> usize {
    group(h, mode).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(terms: &[(&str, f64)]) -> PauliSum {
        let n = terms[0].0.len();
        let mut s = PauliSum::new(n);
        for (p, c) in terms {
            s.add_term(&p.parse().unwrap(), *c).unwrap();
        }
        s
    }

    #[test]
    fn qubit_wise_examples() {
        let h = sum(&[("YY", 1.0), ("YI", 0.5), ("IY", 0.3), ("II", 2.0)]);
        assert_eq!(group_qubit_wise(&h).len(), 1);
        let h = sum(&[("X", 1.0), ("Z", 1.0)]);
        assert_eq!(group_qubit_wise(&h).len(), 2);
    }

    #[test]
    fn general_examples() {
        let h = sum(&[("XX", 1.0), ("YY", 1.0), ("ZZ", 1.0)]);
        assert_eq!(group_general(&h).len(), 1);
        assert_eq!(group_qubit_wise(&h).len(), 3);
    }

    #[test]
    fn frame_check_matches_pairwise_check() {
        let h = sum(&[
            ("XZI", 0.9),
            ("XIZ", 0.8),
            ("IZZ", 0.7),
            ("YZI", 0.6),
            ("IIZ", 0.5),
            ("XZZ", 0.4),
        ]);
        let groups = group_qubit_wise(&h);
        for g in &groups {
            for a in g {
                for b in g {
                    assert!(a.qubit_wise_commutes_unchecked(b));
                }
            }
        }
        assert_eq!(groups.iter().map(Vec::len).sum::<usize>(), 6);
    }

    #[test]
    fn larger_coefficients_lead() {
        let h = sum(&[("ZI", 0.1), ("XI", 0.9)]);
        let g = group_qubit_wise(&h);
        assert_eq!(g[0][0].to_string(), "XI");
    }

    #[test]
    fn general_falls_back_to_merged_qubit_wise_groups() {
        // the term-by-term pass opens 4 groups here
        let h = sum(&[
            ("YZ", 0.9),
            ("ZY", 0.8),
            ("ZI", 0.7),
            ("IX", 0.6),
            ("IZ", 0.5),
            ("YX", 0.4),
        ]);
        assert_eq!(group_qubit_wise(&h).len(), 3);
        let general = group_general(&h);
        assert!(general.len() <= 3);
        for g in &general {
            for a in g {
                for b in g {
                    assert!(a.commutes_unchecked(b));
                }
            }
        }
    }

    #[test]
    fn mode_parse() {
        assert_eq!("qubit-wise".parse::<GroupingMode>().unwrap(), GroupingMode::QubitWise);
        assert_eq!("General".parse::<GroupingMode>().unwrap(), GroupingMode::General);
        assert!("x".parse::<GroupingMode>().is_err());
    }
}
