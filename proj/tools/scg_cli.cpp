#include <iostream>

#include "scg/cli.hpp"

int main(int argc, char** argv) {
    return scg::runCli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
