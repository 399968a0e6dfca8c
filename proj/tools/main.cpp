#include <rn/cli.hpp>

int main(int argc, char** argv) { return rn::cli::run(argc, argv); }
