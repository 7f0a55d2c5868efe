fn main() -> std::process::ExitCode {
    schroeder_lab::cli::main()
}
