fn main() {
    std::process::exit(otp_opuc::cli::main());
}
