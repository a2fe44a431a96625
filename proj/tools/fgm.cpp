#include <iostream>
#include <string>
#include <vector>

#include "fgm/harness/commands.hpp"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv, argv + argc);
    return fgm::harness::run_cli(args, std::cout, std::cerr);
}
