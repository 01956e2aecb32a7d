#include "crdtlab/cli.hpp"

int main(int argc, char** argv) { return crdtlab::cli::main_entry(argc, argv); }
