fn main() {
    std::process::exit(crgeom::cli::main_entry(std::env::args_os()));
}
