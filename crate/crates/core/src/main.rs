fn main() {
    std::process::exit(symtrace::cli::run(std::env::args_os()));
}
