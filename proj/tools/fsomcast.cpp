#include "fsomcast/cli.hpp"

int main(int argc, char** argv) { return fsomcast::run_cli(argc, argv); }
