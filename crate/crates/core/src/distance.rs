//! Distance values and dense all-pairs matrices shared by every distance notion.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;

/// A pairwise distance: a finite value or unreachable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(f64),
    Unreachable,
}

impl Distance {
    pub fn value(self) -> Option<f64> {
        match self {
            Distance::Finite(v) => Some(v),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// `+inf` for unreachable pairs.
    pub fn as_f64(self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    /// Total order with `Unreachable` above every finite value.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }
}

impl From<Option<f64>> for Distance {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Distance::Unreachable, Distance::Finite)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => write!(f, "{v}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(v) => s.serialize_f64(*v),
            Distance::Unreachable => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Distance::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Distance::Unreachable),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("invalid distance `{s}`"))),
        }
    }
}

/// The four distance notions compared throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    /// Minimum hop count.
    Geodesic,
    /// Minimum total edge weight.
    Weighted,
    /// Minimum of hop count times widest edge.
    Bottleneck,
    /// Minimum over paths of the widest edge, ignoring length.
    MinimaxWidth,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 4] = [
        DistanceKind::Geodesic,
        DistanceKind::Weighted,
        DistanceKind::Bottleneck,
        DistanceKind::MinimaxWidth,
    ];

    /// The three path-length notions (excludes minimax width).
    pub const LENGTHS: [DistanceKind; 3] = [
        DistanceKind::Geodesic,
        DistanceKind::Weighted,
        DistanceKind::Bottleneck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DistanceKind::Geodesic => "geodesic",
            DistanceKind::Weighted => "weighted",
            DistanceKind::Bottleneck => "bottleneck",
            DistanceKind::MinimaxWidth => "minimax_width",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dense row-major `n x n` matrix of distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn new(n: usize) -> Self {
        let mut data = vec![Distance::Unreachable; n * n];
        for i in 0..n {
            data[i * n + i] = Distance::Finite(0.0);
        }
        Self { n, data }
    }

    /// Builds a matrix from per-source rows.
    pub fn from_rows(rows: Vec<Vec<Distance>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "distance rows must be square");
            data.extend(row);
        }
        Self { n, data }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, d: Distance) {
        self.data[i * self.n + j] = d;
    }

    pub fn row(&self, i: usize) -> &[Distance] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Values for unordered pairs `i < j`.
    pub fn upper_pairs(&self) -> impl Iterator<Item = (usize, usize, Distance)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.upper_pairs().all(|(i, j, d)| d == self.get(j, i))
    }

    /// CSV with node names as header row and first column; `inf` marks unreachable pairs.
    pub fn to_csv(&self, g: &WeightedGraph) -> String {
        assert_eq!(g.node_count(), self.n);
        let mut out = String::from("node");
        for name in g.names() {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for (i, name) in g.names().iter().enumerate() {
            out.push_str(name);
            for d in self.row(i) {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }
}
