//! File formats, command orchestration and reports for the `gorenstein-k` binary.

pub mod bimodule;
pub mod parse;
mod run;

pub use bimodule::{parse_bimodule, BimoduleFile};
pub use parse::{parse, AlgebraFile, ParsedRelation, ParsedTerm, DEFAULT_MAX_LEN};
pub use run::{load_algebra, load_file, main_from, run, Cli, Command, Flags, Outcome};
