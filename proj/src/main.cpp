#include <vector>

#include "cyclo/cli.hpp"

int main(int argc, char** argv) {
    return cyclo::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
