fn main() -> std::process::ExitCode {
    lagplabic::cli::run()
}
