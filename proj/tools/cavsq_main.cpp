#include "cavsq/cli.hpp"

int main(int argc, char** argv)
{
    return cavsq::cli::run(argc, argv);
}
