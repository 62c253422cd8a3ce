use std::io::{stderr, stdout};

fn main() {
    let mut out = stdout().lock();
    let mut err = stderr().lock();
    let code = costrata::cli::run(std::env::args(), &mut out, &mut err);
    std::process::exit(code);
}
