//! Expression trees, alpha-canonical binder handling, substitution and the
//! raw-expression utilities shared by every other module.
//!
//! Binders use de Bruijn indices internally; surface names are kept only as
//! printing hints, which all comparisons ignore.  Context variables are
//! `Free` names, so substitution of closed-for-indices terms can never
//! capture.

mod expr;
mod parse;
mod print;

pub use expr::{
    abstract_frees, alpha_equal, instantiate, iterated_id_type, locally_closed, open1,
    replace_basic, shift, substitute, Context, Expr, Hint, Judgement, Name, RcExpr,
};
pub use parse::{parse_equation, parse_expression, parse_judgement_file, ParseError};
pub use print::print_expression;
