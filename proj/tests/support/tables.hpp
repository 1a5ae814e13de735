#pragma once

#include "primeorder/arithmetic.hpp"

namespace testsupport {

// shared across test files; built once
inline const primeorder::PrimeTable& table_1m() {
    static const primeorder::PrimeTable t(1'000'000);
    return t;
}

inline const primeorder::PrimeTable& table_10k() {
    static const primeorder::PrimeTable t(10'000);
    return t;
}

} // namespace testsupport
