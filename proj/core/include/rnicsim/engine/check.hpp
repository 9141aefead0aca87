#pragma once

#include <cstdio>
#include <cstdlib>

// Fatal invariant check. Violations are programming errors in the caller
// (scheduling into the past, destroying an unknown QP) and terminate the
// simulation with a diagnostic instead of unwinding.
#define RNICSIM_CHECK(cond, msg)                                             \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::fprintf(stderr, "rnicsim fatal: %s (%s:%d): %s\n", #cond,         \
                   __FILE__, __LINE__, msg);                                 \
      std::abort();                                                          \
    }                                                                        \
  } while (0)
