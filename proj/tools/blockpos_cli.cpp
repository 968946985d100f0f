#include "cli_app.hpp"

int main(int argc, char** argv) { return blockpos::cli::run(argc, argv); }
