fn main() {
    std::process::exit(assoclab::main_with_args(std::env::args_os()));
}
