#include <iostream>

#include "tubencr/cli.hpp"

int main(int argc, char** argv) {
    return tubencr::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
