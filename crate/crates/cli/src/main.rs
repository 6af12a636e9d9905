use std::env;
use std::process;

fn main() {
    process::exit(modcycle::run(env::args()));
}
