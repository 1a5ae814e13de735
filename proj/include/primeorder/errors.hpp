#pragma once

#include <stdexcept>
#include <string>

namespace primeorder {

// Error taxonomy; the CLI maps these onto exit codes (domain=2, bounds=3,
// parse=4, io=5).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input was required to be prime and is not.
struct not_prime_error : domain_error {
    using domain_error::domain_error;
};

// The formal logarithm is partial: r+1 must be prime.
struct undefined_log_error : domain_error {
    using domain_error::domain_error;
};

struct bounds_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace primeorder
