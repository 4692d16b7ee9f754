fn main() -> std::process::ExitCode {
    arc_lab::cli::main()
}
