#pragma once

// Umbrella header.

#include "primeorder/algebra.hpp"
#include "primeorder/analytic.hpp"
#include "primeorder/arithmetic.hpp"
#include "primeorder/certificates.hpp"
#include "primeorder/errors.hpp"
#include "primeorder/poset.hpp"
#include "primeorder/serialize.hpp"
#include "primeorder/trees.hpp"
