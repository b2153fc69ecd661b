#include "qpt/cli.hpp"

int main(int argc, char** argv) { return qpt::main_entry(argc, argv); }
