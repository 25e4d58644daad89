//! Surface syntax: terms, types, parsing, printing, typing and normal forms.

pub mod normalize;
pub mod parse;
pub mod print;
pub mod term;
pub mod typecheck;

pub use normalize::{is_normal, normalize, strip_binders};
pub use parse::{parse, parse_context, parse_type, ParseError};
pub use print::print;
pub use term::{fresh_name, term_size, BaseType, Context, Term, Type};
pub use typecheck::{typecheck, TypeError};
