//! Cell labels shared by every complex in the crate.
//!
//! The derived `Ord` gives the total order used for all deterministic
//! tie-breaking (greedy collapses, exports, search orders).

use crate::cyclic::CyclicPartition;
use crate::subset::Subset;
use std::fmt;

/// Name of a cell in any of the complexes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellLabel {
    /// Face of a simplex or of a simplicial polytope, by vertex set.
    Plain(Subset),
    /// Cell of a dualizing subdivision, `min <= K <= max`.
    Dsd { min: Subset, max: Subset },
    /// Face `S_{I,J}` of the amoeba spine: coordinates in `eq` tie for the
    /// maximum, coordinates outside `support` vanish.
    SFace { eq: Subset, support: Subset },
    /// Face of the coamoeba skeleton, labeled by a cyclic partition.
    Sigma(CyclicPartition),
    /// Cell of a stratum lattice, a pair (partition, support).
    Stratum {
        sigma: CyclicPartition,
        support: Subset,
    },
    /// Cell of a ghost complex over the extended ground set.  `anchor`
    /// distinguishes the otherwise identical labels whose partition collapses
    /// to (ghost | everything); it records the boundary position where the
    /// necklace was broken.
    Ghost {
        sigma: CyclicPartition,
        support: Subset,
        anchor: Option<u32>,
    },
    /// Non-interlacing pair: marked edges (as ground-set elements) and marked
    /// vertices (as circle positions).
    NonInter { edges: Subset, verts: Subset },
    /// Product cell.
    Product(Box<CellLabel>, Box<CellLabel>),
    /// Free-form label.
    Opaque(String),
}

impl CellLabel {
    pub fn product(a: CellLabel, b: CellLabel) -> CellLabel {
        CellLabel::Product(Box::new(a), Box::new(b))
    }

    /// Canonical string form, used by the JSON/DOT exports.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

/// Renders a ghost-complex partition with element `ghost` printed as `g`.
fn fmt_ghost_partition(
    f: &mut fmt::Formatter<'_>,
    p: &CyclicPartition,
    ghost: u32,
) -> fmt::Result {
    write!(f, "<")?;
    for (i, part) in p.parts().iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{{")?;
        for (j, e) in part.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            if e == ghost {
                write!(f, "g")?;
            } else {
                write!(f, "{e}")?;
            }
        }
        write!(f, "}}")?;
    }
    write!(f, ">")
}

fn fmt_ghost_support(f: &mut fmt::Formatter<'_>, s: Subset, ghost: u32) -> fmt::Result {
    write!(f, "{{")?;
    for (j, e) in s.iter().enumerate() {
        if j > 0 {
            write!(f, ",")?;
        }
        if e == ghost {
            write!(f, "g")?;
        } else {
            write!(f, "{e}")?;
        }
    }
    write!(f, "}}")
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Plain(s) => write!(f, "F{s}"),
            CellLabel::Dsd { min, max } => write!(f, "dsd[{min},{max}]"),
            CellLabel::SFace { eq, support } => write!(f, "S[{eq},{support}]"),
            CellLabel::Sigma(p) => write!(f, "Sig[{p}]"),
            CellLabel::Stratum { sigma, support } => write!(f, "P[{sigma},{support}]"),
            CellLabel::Ghost {
                sigma,
                support,
                anchor,
            } => {
                let ghost = sigma.ground().max_elem().unwrap_or(0);
                write!(f, "N[")?;
                fmt_ghost_partition(f, sigma, ghost)?;
                write!(f, ",")?;
                fmt_ghost_support(f, *support, ghost)?;
                write!(f, "]")?;
                if let Some(v) = anchor {
                    write!(f, "@{v}")?;
                }
                Ok(())
            }
            CellLabel::NonInter { edges, verts } => write!(f, "L[I={edges},V={verts}]"),
            CellLabel::Product(a, b) => write!(f, "({a})x({b})"),
            CellLabel::Opaque(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let i: Subset = [0u32].into_iter().collect();
        let j: Subset = [0u32, 1].into_iter().collect();
        assert_eq!(CellLabel::Dsd { min: i, max: j }.to_string(), "dsd[{0},{0,1}]");
        let p = CyclicPartition::from_order(&[0, 1, 2]);
        assert_eq!(CellLabel::Sigma(p.clone()).to_string(), "Sig[<{0},{1},{2}>]");
        let prod = CellLabel::product(CellLabel::Plain(i), CellLabel::Sigma(p));
        assert_eq!(prod.to_string(), "(F{0})x(Sig[<{0},{1},{2}>])");
    }

    #[test]
    fn ghost_display_uses_g() {
        // ground {0,1,2,g} with g = 3
        let ground = Subset::full(4);
        let sigma = CyclicPartition::new(
            vec![
                Subset::singleton(3),
                Subset::singleton(0),
                [1u32, 2].into_iter().collect(),
            ],
            ground,
        )
        .unwrap();
        let label = CellLabel::Ghost {
            sigma,
            support: [0u32, 3].into_iter().collect(),
            anchor: None,
        };
        assert_eq!(label.to_string(), "N[<{0},{1,2},{g}>,{0,g}]");
    }

    #[test]
    fn label_order_is_total_and_stable() {
        let a = CellLabel::Plain(Subset::singleton(0));
        let b = CellLabel::Plain(Subset::singleton(1));
        assert!(a < b);
        let c = CellLabel::Opaque("x".into());
        assert!(a < c && b < c);
    }
}
