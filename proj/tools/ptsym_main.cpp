#include "ptsym/cli/app.hpp"

int main(int argc, char** argv) { return ptsym::cli::run(argc, argv); }
