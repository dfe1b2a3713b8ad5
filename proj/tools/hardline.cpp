#include "hardline/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hardline::cli::main(argc, argv, std::cout, std::cerr);
}
