#include <iostream>

#include "hodge/cli.hpp"

int main(int argc, char** argv) {
  return hodge::dispatch(argc, argv, std::cout, std::cerr);
}
