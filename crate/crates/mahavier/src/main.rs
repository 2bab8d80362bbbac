use clap::Parser;
use mahavier::cli::{run, Cli};

fn main() {
    // MAHAVIER_THREADS caps the internal parallelism.
    if let Ok(threads) = std::env::var("MAHAVIER_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
