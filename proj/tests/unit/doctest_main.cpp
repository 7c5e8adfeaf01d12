#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "godelgen/stack.hpp"

int main(int argc, char** argv) {
  int rc = 0;
  godelgen::run_with_stack([&] {
    doctest::Context ctx(argc, argv);
    rc = ctx.run();
  });
  return rc;
}
