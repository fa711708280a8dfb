//! Exact Ehrhart theory toolkit for full-dimensional lattice polytopes:
//! facet enumeration, lattice-point counting, Ehrhart polynomials and
//! h*-vectors, series transforms, coefficient bounds and surface areas.

pub mod bounds;
pub mod ehrhart;
pub mod exact;
pub mod polytope;
pub mod report;
pub mod series;
pub mod surface;

pub use ehrhart::{analyze, ehrhart_poly, hstar_from_counts, EhrhartData, EhrhartPoly, HStar};
pub use exact::{Int, IntVec, Rat};
pub use polytope::{ConstructionExpr, HFacet, HRep, VPolytope};
pub use report::{BoundEntry, BoundReport, Verdict};
pub use surface::SqrtSum;
