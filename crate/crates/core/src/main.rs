fn main() {
    std::process::exit(ortho_szego::cli::run(std::env::args_os()));
}
