fn main() {
    let (out, code) = frolicher::cli::main_with_args(std::env::args_os());
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
