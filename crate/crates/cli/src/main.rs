// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

fn main() {
    let outcome = ptower_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(outcome.code);
}
