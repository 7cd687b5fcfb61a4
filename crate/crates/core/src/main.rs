fn main() {
    let report = qperiod::cli::run(std::env::args_os());
    if report.code == 2 {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    std::process::exit(report.code);
}
