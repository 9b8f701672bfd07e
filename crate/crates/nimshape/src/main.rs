use std::io::{stderr, stdin, stdout};

fn main() {
    let mut input = stdin().lock();
    let mut out = stdout().lock();
    let mut err = stderr().lock();
    let code = nimshape::cli::run_from(std::env::args(), &mut input, &mut out, &mut err);
    std::process::exit(code);
}
