#include <iostream>

#include <rainbow/cli.hpp>

int main(int argc, char** argv) {
    return rainbow::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
