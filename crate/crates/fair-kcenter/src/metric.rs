//! Finite metric spaces stored as full distance matrices.

use crate::scalar::{fp, Scalar, F64};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("distance matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("metric space needs at least one point")]
    Empty,
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
}

/// Which norm to derive distances from when building a metric out of
/// coordinate vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "l2")]
    L2,
    #[serde(rename = "linf")]
    Linf,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Norm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::Linf),
            other => Err(format!("unknown norm {other:?}, expected l1, l2 or linf")),
        }
    }
}

/// An n-point metric space: a symmetric matrix of pairwise distances.
///
/// The constructor only enforces shape; use [`MetricSpace::validate`] to check
/// the metric axioms. Values are immutable after construction, so a space can
/// be shared freely across concurrent solver runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace<S> {
    n: usize,
    dist: Vec<S>,
}

/// One broken axiom together with the indices (and values) that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation<S> {
    NonzeroDiagonal {
        i: usize,
        value: S,
    },
    Asymmetric {
        i: usize,
        j: usize,
        forward: S,
        backward: S,
    },
    NonPositive {
        i: usize,
        j: usize,
        value: S,
    },
    /// `d(i,j) > d(i,l) + d(l,j)` beyond the allowed tolerance.
    Triangle {
        i: usize,
        j: usize,
        l: usize,
        direct: S,
        detour: S,
    },
}

impl<S: Scalar> fmt::Display for AxiomViolation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NonzeroDiagonal { i, value } => {
                write!(f, "diagonal entry ({i},{i}) is {value}, expected 0")
            }
            AxiomViolation::Asymmetric {
                i,
                j,
                forward,
                backward,
            } => write!(f, "asymmetric pair ({i},{j}): {forward} vs {backward}"),
            AxiomViolation::NonPositive { i, j, value } => {
                write!(f, "off-diagonal entry ({i},{j}) is {value}, expected > 0")
            }
            AxiomViolation::Triangle {
                i,
                j,
                l,
                direct,
                detour,
            } => write!(
                f,
                "triangle violated at ({i},{j}) via {l}: {direct} > {detour}"
            ),
        }
    }
}

/// Result of checking the four metric axioms; empty means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<S> {
    pub violations: Vec<AxiomViolation<S>>,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<S: Scalar> MetricSpace<S> {
    /// Builds a space from a full matrix. Only the shape is checked here.
    pub fn from_matrix(rows: Vec<Vec<S>>) -> Result<Self, MetricError> {
        let n = rows.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        let dist = rows.into_iter().flatten().collect();
        Ok(MetricSpace { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.dist[i * self.n + j]
    }

    /// Overwrites both `(i,j)` and `(j,i)`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: S) {
        self.dist[i * self.n + j] = value.clone();
        self.dist[j * self.n + i] = value;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Checks all four axioms with the backend's default triangle tolerance
    /// (exact for rationals, 1e-9 for floats).
    pub fn validate(&self) -> ValidationReport<S> {
        self.validate_with_tol(&S::triangle_tol())
    }

    /// Checks all four axioms, admitting `tol` of slack in the triangle
    /// inequality only. Every violation is reported, not just the first.
    pub fn validate_with_tol(&self, tol: &S) -> ValidationReport<S> {
        let mut violations = Vec::new();
        let n = self.n;
        for i in 0..n {
            let d = self.get(i, i);
            if !d.is_zero() {
                violations.push(AxiomViolation::NonzeroDiagonal {
                    i,
                    value: d.clone(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let forward = self.get(i, j);
                let backward = self.get(j, i);
                if forward != backward {
                    violations.push(AxiomViolation::Asymmetric {
                        i,
                        j,
                        forward: forward.clone(),
                        backward: backward.clone(),
                    });
                }
                if *forward <= S::zero() {
                    violations.push(AxiomViolation::NonPositive {
                        i,
                        j,
                        value: forward.clone(),
                    });
                }
            }
        }
        // Full O(n^3) scan; fine at the instance sizes this crate targets.
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let direct = self.get(i, j);
                for l in 0..n {
                    if l == i || l == j {
                        continue;
                    }
                    let detour = self.get(i, l).add(self.get(l, j));
                    if *direct > detour.add(tol) {
                        violations.push(AxiomViolation::Triangle {
                            i,
                            j,
                            l,
                            direct: direct.clone(),
                            detour,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Largest pairwise distance (zero for a single point).
    pub fn diameter(&self) -> S {
        let mut best = &self.dist[0];
        for d in &self.dist {
            if d > best {
                best = d;
            }
        }
        best.clone()
    }

    /// Smallest off-diagonal distance, or `None` when there is only one point.
    pub fn min_positive(&self) -> Option<S> {
        let mut best: Option<&S> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let d = self.get(i, j);
                if best.map_or(true, |b| d < b) {
                    best = Some(d);
                }
            }
        }
        best.cloned()
    }
}

impl MetricSpace<F64> {
    /// Derives a metric from coordinate vectors under the given norm.
    pub fn from_points(points: &[Vec<f64>], norm: Norm) -> Result<Self, MetricError> {
        if points.is_empty() {
            return Err(MetricError::Empty);
        }
        let dim = points[0].len();
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(MetricError::DimensionMismatch {
                    index,
                    found: p.len(),
                    expected: dim,
                });
            }
        }
        let n = points.len();
        let mut dist = vec![fp(0.0); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = fp(point_distance(&points[i], &points[j], norm));
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(MetricSpace { n, dist })
    }
}

fn point_distance(a: &[f64], b: &[f64], norm: Norm) -> f64 {
    match norm {
        Norm::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        Norm::L2 => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt(),
        Norm::Linf => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max),
    }
}

/// The line metric on `{0, 1, ..., n-1}` with `d(i,j) = |i-j|`, exact.
pub fn line_metric(n: usize) -> MetricSpace<crate::scalar::Rat> {
    use crate::scalar::rat_int;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rat_int((i as i64 - j as i64).abs()))
                .collect()
        })
        .collect();
    MetricSpace::from_matrix(rows).expect("square by construction")
}
