use std::io;

fn main() {
    if let Err(e) = agband::cli::init_threads_from_env() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
    let code = agband::cli::run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
