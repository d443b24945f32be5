//! Counting, verification and search over red/blue edge colorings of complete
//! graphs, organised around monochromatic books `B_n^(k)`: `n` copies of
//! `K_{k+1}` glued along a shared `K_k` spine.
//!
//! Module map:
//!
//! - [`coloring`], [`vertex_set`], [`io`]: the coloring data model, density
//!   primitives and the two on-disk formats.
//! - [`constructions`]: random, Paley, blue-join and monochromatic colorings.
//! - [`books`]: monochromatic clique enumeration, extension histograms and the
//!   exact counting identities tying them together.
//! - [`quasi`]: cut-deviation (quasirandomness) measurement and the moment
//!   statistics built on extension counts and codegrees.
//! - [`regularity`]: exact subset-scan certification of regular pairs and
//!   executable checks of the lemmas that consume them.
//! - [`analytic`]: grid and local verification of the real-variable
//!   inequalities behind the book bounds.
//! - [`search`]: annealing and exhaustive search for book-free colorings.

pub mod analytic;
pub mod books;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod io;
pub mod quasi;
pub mod regularity;
pub mod search;
pub mod vertex_set;

pub(crate) mod bits;

pub use coloring::{density, common_neighborhood, Color, DensityReport, TwoColoring};
pub use error::{Error, Result};
pub use vertex_set::VertexSet;
