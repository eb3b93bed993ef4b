fn main() {
    std::process::exit(cyclic_ldpc::cli::main_with_args(std::env::args_os()));
}
