#include "cmaf/cli.hpp"

int main(int argc, char** argv) {
    return cmaf::cli::run(argc, argv);
}
