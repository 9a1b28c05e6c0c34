fn main() -> std::process::ExitCode {
    qalg::cli::main()
}
