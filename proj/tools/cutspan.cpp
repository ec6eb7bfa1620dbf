#include <iostream>

#include "cutspan/io.hpp"

int main(int argc, char** argv) {
    return cutspan::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
