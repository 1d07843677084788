//! Two-colorings of a host's canonical edge list.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

impl std::str::FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "red" => Ok(Color::Red),
            "b" | "blue" => Ok(Color::Blue),
            other => Err(Error::InvalidParameters(format!("unknown color {other:?}"))),
        }
    }
}

/// A total coloring, aligned with the host's canonical edge order.
/// Serializes as a JSON array of `"R"` / `"B"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(host: &Hypergraph, colors: Vec<Color>) -> Result<Self> {
        let c = EdgeColoring { colors };
        c.check(host)?;
        Ok(c)
    }

    /// Coloring not yet tied to a host; call [`EdgeColoring::check`] before use.
    pub fn from_colors(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn uniform(host: &Hypergraph, color: Color) -> Self {
        EdgeColoring {
            colors: vec![color; host.edge_count()],
        }
    }

    pub fn random<R: Rng>(host: &Hypergraph, rng: &mut R) -> Self {
        EdgeColoring {
            colors: (0..host.edge_count())
                .map(|_| if rng.gen_bool(0.5) { Color::Red } else { Color::Blue })
                .collect(),
        }
    }

    pub fn check(&self, host: &Hypergraph) -> Result<()> {
        if self.colors.len() != host.edge_count() {
            return Err(Error::ColoringLength {
                expected: host.edge_count(),
                got: self.colors.len(),
            });
        }
        Ok(())
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn get(&self, i: usize) -> Color {
        self.colors[i]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Edge mask of one color class.
    pub fn mask(&self, color: Color) -> Vec<bool> {
        self.colors.iter().map(|&c| c == color).collect()
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn swapped(&self) -> EdgeColoring {
        EdgeColoring {
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }

    /// The subhypergraph of one color, on the host's vertex set.
    pub fn class(&self, host: &Hypergraph, color: Color) -> Hypergraph {
        host.filter_edges(|i, _| self.colors[i] == color)
    }
}
