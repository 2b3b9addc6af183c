#include "rootcharts/harness.hpp"

int main(int argc, char** argv) { return rc::cli_main(argc, argv); }
