use std::io::Write;

fn main() {
    let env_threads = cpshift_cli::threads_from_env();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = cpshift_cli::main_with(std::env::args_os(), env_threads.as_deref(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
