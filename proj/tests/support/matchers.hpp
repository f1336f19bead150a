#pragma once

#include <cmath>
#include <functional>
#include <string>

#include <doctest.h>

#include "iprctl/credal.hpp"
#include "iprctl/error.hpp"

namespace iprctl::testing {

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline void check_vectors_close(const ValueVector& a, const ValueVector& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        INFO("index " << i << ": " << a[i] << " vs " << b[i]);
        CHECK(close(a[i], b[i], tol));
    }
}

/// Runs `fn` and checks it throws iprctl::Error with `code`.
inline void check_error(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
        FAIL("expected error " << std::string(to_string(code)));
    } catch (const Error& e) {
        CHECK_MESSAGE(e.code() == code, "got " << std::string(to_string(e.code())) << ": " << e.what());
    }
}

}  // namespace iprctl::testing
