#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "effsim/stack.hpp"

int main(int argc, char** argv) {
  return effsim::with_big_stack([&] {
    doctest::Context ctx(argc, argv);
    return ctx.run();
  });
}
