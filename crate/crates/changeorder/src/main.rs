fn main() {
    std::process::exit(changeorder::cli::main_entry());
}
