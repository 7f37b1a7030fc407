#include "oseq/cli.hpp"

int main(int argc, char** argv) { return oseq::cli::main_entry(argc, argv); }
