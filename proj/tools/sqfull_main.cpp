#include <iostream>

#include "sqfull/cli.hpp"

int main(int argc, char** argv)
{
    return sqfull::cli::dispatch(argc, argv, std::cout, std::cerr);
}
