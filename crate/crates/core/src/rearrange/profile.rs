use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::StepFunction;
use crate::{Error, Result};

/// Values closer than this (relative) are merged into one atom.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// One spectral value of `|A|` together with the trace of its spectral
/// projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub value: f64,
    pub weight: f64,
}

impl Atom {
    pub const fn new(value: f64, weight: f64) -> Self {
        Atom { value, weight }
    }
}

impl From<(f64, f64)> for Atom {
    fn from((value, weight): (f64, f64)) -> Self {
        Atom { value, weight }
    }
}

/// Spectral data of a positive operator `|A|` under a trace: a finite list of
/// atoms in canonical form (values strictly decreasing, no duplicates).
///
/// Unit weights model a matrix under the standard trace; arbitrary positive
/// weights model multiplication operators on a measure space.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct SpectralProfile {
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
struct RawProfile {
    atoms: Vec<Atom>,
}

impl TryFrom<RawProfile> for SpectralProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        SpectralProfile::new(raw.atoms)
    }
}

impl SpectralProfile {
    /// Validates and canonicalizes an arbitrary list of atoms.
    ///
    /// Atoms are sorted by decreasing value and values within
    /// [`MERGE_TOLERANCE`] of each other are merged; the merged value is the
    /// weight-averaged value, so `Σ λw` is preserved.
    pub fn new<I, A>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        A: Into<Atom>,
    {
        let mut raw: Vec<Atom> = Vec::new();
        for (index, atom) in atoms.into_iter().enumerate() {
            let atom = atom.into();
            if !(atom.value.is_finite() && atom.value >= 0.0) {
                return Err(Error::InvalidAtomValue {
                    index,
                    value: atom.value,
                });
            }
            if !(atom.weight.is_finite() && atom.weight > 0.0) {
                return Err(Error::InvalidAtomWeight {
                    index,
                    weight: atom.weight,
                });
            }
            raw.push(atom);
        }
        raw.sort_by(|a, b| b.value.total_cmp(&a.value));

        let mut atoms: Vec<Atom> = Vec::with_capacity(raw.len());
        let mut i = 0;
        while i < raw.len() {
            let anchor = raw[i].value;
            let mut weight = 0.0;
            let mut mass = 0.0;
            let mut uniform = true;
            let mut j = i;
            while j < raw.len() && anchor - raw[j].value <= MERGE_TOLERANCE * anchor {
                weight += raw[j].weight;
                mass += raw[j].value * raw[j].weight;
                uniform &= raw[j].value == anchor;
                j += 1;
            }
            let value = if uniform { anchor } else { mass / weight };
            atoms.push(Atom { value, weight });
            i = j;
        }
        Ok(SpectralProfile { atoms })
    }

    /// Builds a profile from atoms that are already canonical.
    pub(crate) fn from_canonical(atoms: Vec<Atom>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0].value > w[1].value));
        SpectralProfile { atoms }
    }

    pub fn empty() -> Self {
        SpectralProfile::default()
    }

    /// Atoms in canonical (strictly decreasing) order.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `τ(1)` restricted to the support model: `Σ wᵢ`.
    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Trace norm `Σ λᵢ wᵢ`.
    pub fn l1_norm(&self) -> f64 {
        self.atoms.iter().map(|a| a.value * a.weight).sum()
    }

    /// Operator norm, the largest spectral value (0 for the empty profile).
    pub fn max_value(&self) -> f64 {
        self.atoms.first().map_or(0.0, |a| a.value)
    }

    /// Multiplies every spectral value by `c > 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Domain {
                name: "scale factor",
                value: c,
            });
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.value * c, a.weight))
            .collect::<Vec<_>>();
        // Scaling is monotone but may collapse neighbours after rounding.
        SpectralProfile::new(atoms)
    }

    /// Distribution function `n(s) = τ(E(s, ∞))`: total weight of atoms with
    /// value strictly above `s`.
    pub fn distribution(&self, s: f64) -> f64 {
        let mut total = 0.0;
        for atom in &self.atoms {
            if atom.value > s {
                total += atom.weight;
            } else {
                break;
            }
        }
        total
    }

    /// Singular value function `μ(·, A)` as a step function.
    ///
    /// The value `λᵢ` sits on `[Wᵢ₋₁, Wᵢ)` with `Wᵢ` the cumulative weight;
    /// zero atoms contribute nothing.
    pub fn mu(&self) -> StepFunction {
        let mut breaks = Vec::with_capacity(self.atoms.len());
        let mut values = Vec::with_capacity(self.atoms.len());
        let mut cumulative = 0.0;
        for atom in &self.atoms {
            if atom.value <= 0.0 {
                break;
            }
            let next = cumulative + atom.weight;
            if next > cumulative {
                breaks.push(next);
                values.push(atom.value);
            }
            cumulative = next;
        }
        StepFunction::from_parts_unchecked(breaks, values)
    }

    /// `μ(t, A)` computed as the right-continuous generalized inverse of the
    /// distribution function, `inf{s ≥ 0 : n(s) ≤ t}`.
    ///
    /// Only the spectral values and 0 can be the infimum, and `n` is constant
    /// between them, so the candidates are scanned from the bottom up.
    pub fn mu_from_distribution(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || t.is_nan() {
            return Err(Error::Domain {
                name: "t",
                value: t,
            });
        }
        if self.distribution(0.0) <= t {
            return Ok(0.0);
        }
        for atom in self.atoms.iter().rev() {
            if self.distribution(atom.value) <= t {
                return Ok(atom.value);
            }
        }
        // n(λ₁) = 0 ≤ t always holds, so the loop returns for nonempty input.
        Ok(self.max_value())
    }

    /// Splits at a spectral level: `head` holds atoms with value `> v`,
    /// `tail` those with value `≤ v`. The two pieces have disjoint spectral
    /// supports and sum back to `self`.
    pub fn split_at_value(&self, v: f64) -> (SpectralProfile, SpectralProfile) {
        let cut = self.atoms.partition_point(|a| a.value > v);
        (
            SpectralProfile::from_canonical(self.atoms[..cut].to_vec()),
            SpectralProfile::from_canonical(self.atoms[cut..].to_vec()),
        )
    }

    /// Atoms sorted by distance from `x`, closest first; ties keep canonical
    /// order. Used by the maximal function.
    pub(crate) fn by_distance(&self, x: f64) -> Vec<(f64, Atom)> {
        let mut out: Vec<(f64, Atom)> = self.atoms.iter().map(|a| ((a.value - x).abs(), *a)).collect();
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        out
    }
}
