#include "tcaudit/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return tcaudit::cli::run_cli(argc, argv, std::cout, std::cerr);
}
