// SPDX-License-Identifier: Apache-2.0

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = rmsp::cli::run(std::env::args().skip(1), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
