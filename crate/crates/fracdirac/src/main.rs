fn main() {
    fracdirac::init_thread_pool();
    std::process::exit(fracdirac::cli::run());
}
