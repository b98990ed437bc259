//! Linear and von Neumann entropies of the one-particle reduced density
//! matrix, and the distance of each from its non-interacting limit.
//!
//! `S_L = 1 − Σ (2l+1) Λ²` and `S_vN = −Σ (2l+1) Λ log₂ Λ`, both summed over
//! the occupancies of an [`OccupancySet`]. Entropies are in bits.

mod analysis;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hylleraas::{HylleraasError, SpinSymmetry};
use crate::numerics::{NumericsError, Real};
use crate::partialwave::PartialWaveError;
use crate::rdm::{OccupancySet, RdmError};

pub use analysis::{analyze, analyze_truncations, projection_tier, Analysis, AnalysisOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntropyError {
    #[error("missing states: {0}")]
    MissingState(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error(transparent)]
    Hylleraas(#[from] HylleraasError),
    #[error(transparent)]
    PartialWave(#[from] PartialWaveError),
    #[error(transparent)]
    Rdm(#[from] RdmError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Non-interacting limits of the two entropies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reference {
    pub linear: f64,
    pub von_neumann: f64,
}

impl Reference {
    /// Product state: both entropies vanish.
    pub const GROUND: Reference = Reference {
        linear: 0.0,
        von_neumann: 0.0,
    };
    /// Symmetrized or antisymmetrized pair of distinct orbitals.
    pub const EXCITED: Reference = Reference {
        linear: 0.5,
        von_neumann: 1.0,
    };

    /// Limit for a `1sns` state: the ground state only for `n = 1`.
    pub fn for_state(n: usize) -> Reference {
        if n <= 1 {
            Reference::GROUND
        } else {
            Reference::EXCITED
        }
    }
}

/// `|S − S⁽⁰⁾|` for each entropy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Epsilon {
    pub linear: f64,
    pub von_neumann: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelEntropy {
    pub l: u32,
    /// `Σ_n (2l+1) Λ`.
    pub weight: f64,
    /// `Σ_n (2l+1) Λ (1 − Λ)`; the parts add up to `S_L` at unit trace.
    pub linear: f64,
    /// `−Σ_n (2l+1) Λ log₂ Λ`.
    pub von_neumann: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub s_linear: f64,
    pub s_von_neumann: f64,
    pub trace: f64,
    pub per_channel: Vec<ChannelEntropy>,
    pub reference: Option<Reference>,
    pub epsilon: Option<Epsilon>,
}

impl EntropyReport {
    pub fn from_occupancies<R: Real>(occ: &OccupancySet<R>) -> Self {
        let mut per: BTreeMap<u32, ChannelEntropy> = BTreeMap::new();
        for e in &occ.entries {
            let deg = e.degeneracy as f64;
            let lam = e.occupancy.to_f64();
            let ch = per.entry(e.l).or_insert(ChannelEntropy {
                l: e.l,
                weight: 0.0,
                linear: 0.0,
                von_neumann: 0.0,
            });
            ch.weight += deg * lam;
            ch.linear += deg * lam * (1.0 - lam);
            ch.von_neumann += plogp(lam) * deg;
        }
        EntropyReport {
            s_linear: linear_entropy(occ).to_f64(),
            s_von_neumann: von_neumann_entropy(occ).to_f64(),
            trace: occ.trace.to_f64(),
            per_channel: per.into_values().collect(),
            reference: None,
            epsilon: None,
        }
    }

    pub fn with_reference(mut self, reference: Reference) -> Self {
        self.epsilon = Some(Epsilon {
            linear: interaction_distance(self.s_linear, reference.linear),
            von_neumann: interaction_distance(self.s_von_neumann, reference.von_neumann),
        });
        self.reference = Some(reference);
        self
    }
}

fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

fn check_trace<R: Real>(occ: &OccupancySet<R>) {
    let t = occ.trace.to_f64();
    if !(0.99..=1.0 + 1e-6).contains(&t) {
        log::warn!("occupancy trace {t} outside [0.99, 1 + 1e-6]; entropies are not renormalized");
    }
}

pub fn linear_entropy<R: Real>(occ: &OccupancySet<R>) -> R {
    check_trace(occ);
    let mut purity = R::zero();
    for e in &occ.entries {
        purity += R::from_i64(e.degeneracy as i64) * &e.occupancy * &e.occupancy;
    }
    R::one() - purity
}

/// Base-2; zero occupancies contribute nothing.
pub fn von_neumann_entropy<R: Real>(occ: &OccupancySet<R>) -> R {
    check_trace(occ);
    let ln2 = R::from_i64(2).ln();
    let mut acc = R::zero();
    for e in &occ.entries {
        if e.occupancy > R::zero() {
            acc -= R::from_i64(e.degeneracy as i64) * &e.occupancy * e.occupancy.ln();
        }
    }
    acc / ln2
}

pub fn interaction_distance(s: f64, reference: f64) -> f64 {
    (s - reference).abs()
}

/// A `1sns` state of given spin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    pub spin: SpinSymmetry,
    pub n: usize,
}

impl fmt::Display for StateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1s{}s {}", self.n, self.spin)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Figure1Row {
    pub n: usize,
    pub spin: SpinSymmetry,
    pub epsilon_linear: f64,
    pub epsilon_von_neumann: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityWarning {
    pub spin: SpinSymmetry,
    /// The pair `(n, n')`, `n < n'`, with `ε(n') >= ε(n)`.
    pub between: (usize, usize),
    pub measure: &'static str,
}

impl fmt::Display for MonotonicityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} epsilon does not decrease from n={} to n={}",
            self.spin, self.measure, self.between.0, self.between.1
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Figure1 {
    pub rows: Vec<Figure1Row>,
    pub warnings: Vec<MonotonicityWarning>,
}

/// Interaction distances per state, ordered by spin then `n`. Every key in
/// `required` must be present. The reference is chosen from `n` unless the
/// report already carries one.
pub fn figure1_dataset(
    reports: &BTreeMap<StateKey, EntropyReport>,
    required: &[StateKey],
) -> Result<Figure1, EntropyError> {
    let missing: Vec<String> = required
        .iter()
        .filter(|k| !reports.contains_key(k))
        .map(|k| k.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(EntropyError::MissingState(missing.join(", ")));
    }
    let mut rows = Vec::with_capacity(reports.len());
    for (key, rep) in reports {
        let reference = rep.reference.unwrap_or(Reference::for_state(key.n));
        rows.push(Figure1Row {
            n: key.n,
            spin: key.spin,
            epsilon_linear: interaction_distance(rep.s_linear, reference.linear),
            epsilon_von_neumann: interaction_distance(rep.s_von_neumann, reference.von_neumann),
        });
    }
    let mut warnings = Vec::new();
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.spin != b.spin {
            continue;
        }
        if b.epsilon_linear >= a.epsilon_linear {
            warnings.push(MonotonicityWarning {
                spin: a.spin,
                between: (a.n, b.n),
                measure: "linear",
            });
        }
        if b.epsilon_von_neumann >= a.epsilon_von_neumann {
            warnings.push(MonotonicityWarning {
                spin: a.spin,
                between: (a.n, b.n),
                measure: "von Neumann",
            });
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Figure1 { rows, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdm::Occupancy;

    fn set(values: &[(u32, f64)]) -> OccupancySet<f64> {
        let entries: Vec<Occupancy<f64>> = values
            .iter()
            .enumerate()
            .map(|(n, &(l, v))| Occupancy {
                n,
                l,
                occupancy: v,
                degeneracy: 2 * l + 1,
            })
            .collect();
        let trace = entries
            .iter()
            .map(|e| e.degeneracy as f64 * e.occupancy)
            .sum();
        OccupancySet { entries, trace }
    }

    #[test]
    fn limits() {
        let pure = set(&[(0, 1.0)]);
        assert_eq!(linear_entropy(&pure), 0.0);
        assert_eq!(von_neumann_entropy(&pure), 0.0);
        let pair = set(&[(0, 0.5), (0, 0.5)]);
        assert!((linear_entropy(&pair) - 0.5).abs() < 1e-15);
        assert!((von_neumann_entropy(&pair) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degeneracy_counts() {
        // one p shell holding the remainder, split over 3 m values
        let occ = set(&[(0, 0.97), (1, 0.01)]);
        let s = von_neumann_entropy(&occ);
        let expect = -(0.97f64 * 0.97f64.log2()) - 3.0 * 0.01 * 0.01f64.log2();
        assert!((s - expect).abs() < 1e-14);
        let rep = EntropyReport::from_occupancies(&occ);
        let parts: f64 = rep.per_channel.iter().map(|c| c.linear).sum();
        assert!((parts - rep.s_linear).abs() < 1e-14);
        assert_eq!(rep.per_channel.len(), 2);
        assert!((rep.per_channel[1].weight - 0.03).abs() < 1e-15);
    }

    #[test]
    fn distances() {
        assert_eq!(interaction_distance(0.08489987, 0.0), 0.08489987);
        assert!((interaction_distance(1.00552680, 1.0) - 0.00552680).abs() < 1e-15);
        assert_eq!(interaction_distance(0.3, 0.3), 0.0);
        let rep = EntropyReport::from_occupancies(&set(&[(0, 0.5), (0, 0.5)]))
            .with_reference(Reference::EXCITED);
        let eps = rep.epsilon.unwrap();
        assert!(eps.linear < 1e-15 && eps.von_neumann < 1e-15);
    }

    fn report(s_linear: f64, s_von_neumann: f64) -> EntropyReport {
        EntropyReport {
            s_linear,
            s_von_neumann,
            trace: 1.0,
            per_channel: vec![],
            reference: None,
            epsilon: None,
        }
    }

    #[test]
    fn figure1_orders_and_flags() {
        let mut m = BTreeMap::new();
        let key = |spin, n| StateKey { spin, n };
        m.insert(key(SpinSymmetry::Singlet, 2), report(0.48874040, 0.97));
        m.insert(key(SpinSymmetry::Singlet, 3), report(0.49725195, 0.99));
        m.insert(key(SpinSymmetry::Triplet, 2), report(0.50037593, 1.0055));
        m.insert(key(SpinSymmetry::Triplet, 3), report(0.50040000, 1.0020));
        let fig = figure1_dataset(&m, &[]).unwrap();
        assert_eq!(fig.rows.len(), 4);
        assert!((fig.rows[0].epsilon_linear - 0.01125960).abs() < 1e-12);
        assert!((fig.rows[1].epsilon_linear - 0.00274805).abs() < 1e-12);
        assert_eq!(fig.warnings.len(), 1);
        assert_eq!(fig.warnings[0].spin, SpinSymmetry::Triplet);
        assert_eq!(fig.warnings[0].measure, "linear");

        let err = figure1_dataset(&m, &[key(SpinSymmetry::Singlet, 1)]).unwrap_err();
        assert!(matches!(err, EntropyError::MissingState(s) if s.contains("1s1s")));
    }
}
