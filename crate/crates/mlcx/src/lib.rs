//! A small kernel for intensional Martin-Löf type theory with truncation
//! rules and adjoined reflexive globular sets, together with the derived-term
//! library, set/groupoid interpreters, a logical-predicates canonicalizer and
//! the verification harness driving them.

pub mod derived;
pub mod globular;
pub mod harness;
pub mod kernel;
pub mod monad;
pub mod relevance;
pub mod semantics;
pub mod syntax;
