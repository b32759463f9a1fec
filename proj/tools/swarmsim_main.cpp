#include <iostream>

#include "swarmsim/cli.hpp"

int main(int argc, char** argv)
{
    return swarmsim::cli::main(argc, argv, std::cout, std::cerr);
}
