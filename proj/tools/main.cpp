#include "cli.hpp"

int main(int argc, char** argv) { return oiglab::cli::run(argc, argv); }
