#pragma once

#include <string>

#include "doctest.h"
#include "imprand/common.hpp"
#include "imprand/rational.hpp"

namespace imprand {

inline Rational R(const char* text) { return Rational::parse(text); }

inline doctest::String toString(const Rational& r) { return r.str().c_str(); }

}  // namespace imprand

#define CHECK_ERROR_KIND(expr, expected_kind)                         \
  do {                                                                \
    bool thrown_ = false;                                             \
    try {                                                             \
      (void)(expr);                                                   \
    } catch (const ::imprand::Error& e_) {                            \
      thrown_ = true;                                                 \
      CHECK(e_.kind() == (expected_kind));                            \
    }                                                                 \
    CHECK_MESSAGE(thrown_, "expected an imprand::Error from " #expr); \
  } while (false)
