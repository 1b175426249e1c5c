#![no_main]

use amphase_cli::{Cli, RunConfig};
use clap::Parser;
use libfuzzer_sys::fuzz_target;

// Only parsing and validation; running a subcommand could allocate
// arbitrarily large grids.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("amphase").chain(text.split_whitespace());
    if let Ok(cli) = Cli::try_parse_from(args) {
        if let Ok(config) = RunConfig::from_command(&cli.command) {
            let _ = config.validate();
        }
    }
});
