use std::io::Write;
use std::process::ExitCode;

use gausslab_cli::{run, threads_from_env, THREADS_ENV};

fn main() -> ExitCode {
    let env = std::env::var(THREADS_ENV).ok();
    match threads_from_env(env.as_deref()) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("gausslab: cannot configure {n} threads: {e}");
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("gausslab: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    }
    let out = run(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
