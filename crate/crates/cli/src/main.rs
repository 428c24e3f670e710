use std::io::Write;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().filter("NONGAUSS_LOG")).init();
    let invocation = nongauss_cli::run(std::env::args());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(invocation.output.as_bytes());
    let _ = stdout.flush();
    std::process::exit(invocation.code);
}
