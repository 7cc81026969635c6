fn main() -> std::process::ExitCode {
    lpsurf::cli::run()
}
