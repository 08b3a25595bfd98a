#include "steiner_ladder/cli.hpp"

int main(int argc, char** argv) { return steiner_ladder::cli::run(argc, argv); }
