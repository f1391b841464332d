//! Output records and renderers behind the `twobridge` command.

pub mod record;
pub mod render;

/// Output format of every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}
