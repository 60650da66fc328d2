#include "conductor/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return conductor::cli::run(argc, argv, std::cout, std::cerr);
}
