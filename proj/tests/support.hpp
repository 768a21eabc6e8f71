#pragma once

#include <doctest.h>

#include "semifactor/error.hpp"

namespace testing {

// Runs fn and returns the kind of the Error it throws; fails the test when
// nothing is thrown.
template <class Fn>
semifactor::ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const semifactor::Error& e) {
    return e.kind();
  }
  FAIL("expected semifactor::Error");
  return semifactor::ErrorKind::InvalidArgument;
}

}  // namespace testing
