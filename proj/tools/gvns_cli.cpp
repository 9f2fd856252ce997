#include "gvns/cli.hpp"

int main(int argc, char** argv) { return gvns::cli::dispatch(argc, argv); }
