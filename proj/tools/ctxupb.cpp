#include "ctxupb/cli.hpp"

int main(int argc, char** argv) { return ctxupb::cli::run(argc, argv); }
