#include "curtangent/experiment.hpp"

int main(int argc, char** argv) { return curtangent::cli_main(argc, argv); }
