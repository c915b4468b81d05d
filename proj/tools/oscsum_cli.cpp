#include <iostream>

#include "oscsum/cli_driver.hpp"

int main(int argc, char** argv) { return oscsum::run_cli(argc, argv, std::cout, std::cerr); }
