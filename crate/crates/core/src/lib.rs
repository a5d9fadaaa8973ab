//! Exact symbolic computation in finitely presented PBW-type algebras that
//! carry a candidate Hopf structure.
//!
//! The crate is organised bottom-up:
//!
//! - [`freealg`]: exact rationals, generator alphabets, words and the free
//!   associative algebra.
//! - [`pbw`]: presentations by straightening relations, PBW normal forms and
//!   diamond-lemma confluence certification.
//! - [`hopf`]: coproducts on the tensor square, the checks that make a
//!   bialgebra out of a presentation, primitives and the antipode.
//! - [`grading`]: Hilbert series, their factorisation into
//!   `∏ (1 - t^i)^(-n_i)`, GK dimension, associated graded presentations and
//!   "no Hopf structure" obstructions.
//! - [`subspace`]: exact sparse linear algebra over monomial windows, used for
//!   truncation quotients, centres, primitive spaces and coradical levels.
//! - [`cli`]: the presentation file format and the command-line front end.
//!
//! ```
//! use hopfkit::{builtins, pbw::Algebra};
//!
//! let l = Algebra::new(builtins::builtin("L").unwrap()).unwrap();
//! let ba = l.parse_free("b a").unwrap();
//! assert_eq!(l.render(&l.normal_form(&ba).unwrap()), "ab - c");
//! ```

pub mod builtins;
pub mod cli;
pub mod error;
pub mod freealg;
pub mod grading;
pub mod hopf;
pub mod linear;
pub mod parse;
pub mod pbw;
pub mod subspace;

pub use error::TermLimitExceeded;
pub use freealg::{Alphabet, FreeElement, Generator, Rational, Word};
pub use hopf::{CoproductData, Tensor3Element, TensorElement};
pub use pbw::{Algebra, Monomial, PbwElement, Presentation, Relation};
