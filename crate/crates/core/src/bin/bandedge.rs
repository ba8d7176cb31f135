fn main() -> std::process::ExitCode {
    bandedge::cli::main()
}
