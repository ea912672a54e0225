//! Compositional solving of mean payoff games presented as string diagrams.
//!
//! Leaf games with open ends are combined by sequential composition `;`,
//! sum `⊕` and trace. A diagram is solved by evaluating each leaf once into
//! a set of sets of play arrows (one inner set per ∃-strategy, one arrow per
//! ∀-response) and composing those denotations along the diagram; the
//! meager variant keeps only dominant strategies and responses.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagram;
pub mod eval;
pub mod fat;
pub mod game;
pub mod meager;
pub mod ops;
pub mod oracle;
pub mod play;
pub mod random;
pub mod traced;
pub mod weight;

pub use diagram::{ConstKind, InferredArity, SharedDag, Span, Term, TermKind};
pub use eval::{evaluate, flatten, IntArrow};
pub use fat::{FatDenotation, Semantics, Status};
pub use game::{Arity, OpenGame, Role};
pub use meager::MeagerDenotation;
pub use play::{Outcome, PlayArrow, TValue};
pub use weight::Weight;
