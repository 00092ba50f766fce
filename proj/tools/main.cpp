#include "mrsusp/cli.hpp"

int main(int argc, char** argv) {
    return mrsusp::cli_main(argc, argv);
}
