use clap::Parser;
use projlen::cli::{run, JobConfig};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cfg = JobConfig::parse();
    if let Some(n) = std::env::var("PROJLEN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("PROJLEN_THREADS ignored: {e}");
        }
    }
    if let Err(e) = run(&cfg) {
        eprintln!("projlen: {e}");
        std::process::exit(e.exit_code());
    }
}
