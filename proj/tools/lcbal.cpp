#include "lcbal/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return lcbal::run_cli(args, std::cout, std::cerr);
}
