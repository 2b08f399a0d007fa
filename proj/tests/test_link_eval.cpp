#include <doctest.h>

TEST_SUITE("link_eval") {}
