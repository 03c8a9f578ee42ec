#include "edfn/cli.hpp"

int main(int argc, char** argv) { return edfn::run_cli(argc, argv); }
