#include "growwalk/cli.hpp"

int main(int argc, char** argv) { return growwalk::run_cli(argc, argv); }
