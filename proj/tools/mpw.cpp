#include "cli_app.hpp"

int main(int argc, char** argv) { return mpw::cli::run_cli(argc, argv); }
