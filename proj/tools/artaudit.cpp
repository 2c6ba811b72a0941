#include <iostream>
#include <string>
#include <vector>

#include "artaudit/audit_cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return artaudit::run_cli(args, std::cout, std::cerr);
}
