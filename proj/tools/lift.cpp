#include <iostream>

#include "lift/cli.hpp"

int main(int argc, char** argv)
{
    return lift::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
