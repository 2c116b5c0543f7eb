fn main() {
    std::process::exit(torus_gerbe::cli::main_with(std::env::args_os()));
}
