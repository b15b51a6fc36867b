use clap::Parser;

fn main() {
    let cli = diffseq_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let result = diffseq_cli::run(&cli.command, &mut stdout, &mut stderr);
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    std::process::exit(diffseq_cli::exit_code(&result));
}
