fn main() {
    let precision = std::env::var(sulva_cli::app::PRECISION_ENV).ok();
    let code = sulva_cli::app::run(
        std::env::args_os(),
        precision.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
