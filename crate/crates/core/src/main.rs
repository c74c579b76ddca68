// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(bidyck::cli::main_with_args(std::env::args_os()));
}
